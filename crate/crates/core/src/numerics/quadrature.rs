//! Adaptive Gauss–Legendre quadrature.

use super::{BigReal, NumericsError, Precision};

const NODES: usize = 20;
const MAX_DEPTH: u32 = 48;

/// Gauss–Legendre nodes and weights on `[-1, 1]` at precision `p`.
pub fn gauss_legendre(n: usize, p: Precision) -> Vec<(BigReal, BigReal)> {
    let tol = p.tolerance(4);
    let one = BigReal::one(p);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = BigReal::from_f64(guess, p);
        let mut dp;
        loop {
            let (pn, pn1) = legendre_pair(n, &x);
            dp = (&x * &pn - &pn1) * (n as i64) / (&x * &x - &one);
            let dx = &pn / &dp;
            x -= &dx;
            if dx.abs() < tol {
                let (pn, pn1) = legendre_pair(n, &x);
                dp = (&x * &pn - &pn1) * (n as i64) / (&x * &x - &one);
                break;
            }
        }
        let w = BigReal::from_i64(2, p) / ((&one - &(&x * &x)) * &dp * &dp);
        out.push((x, w));
    }
    out
}

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence.
fn legendre_pair(n: usize, x: &BigReal) -> (BigReal, BigReal) {
    let mut prev = BigReal::one(x.precision()).with_precision(x.precision());
    let mut cur = x.clone();
    for k in 1..n {
        let k = k as i64;
        let next = (&(x * &cur) * (2 * k + 1) - &(&prev * k)) / (k + 1);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

fn panel<F: Fn(&BigReal) -> BigReal>(
    f: &F,
    rule: &[(BigReal, BigReal)],
    a: &BigReal,
    b: &BigReal,
) -> BigReal {
    let half = (b - a) / 2;
    let mid = (a + b) / 2;
    let mut acc = BigReal::zero(a.precision());
    for (x, w) in rule {
        acc += w * &f(&(&mid + &(&half * x)));
    }
    acc * &half
}

/// `∫_a^b f` to absolute accuracy `tol`, by recursive interval halving with a
/// 20-point Gauss–Legendre rule on each panel.
pub fn quadrature<F>(
    f: F,
    a: &BigReal,
    b: &BigReal,
    tol: &BigReal,
) -> Result<BigReal, NumericsError>
where
    F: Fn(&BigReal) -> BigReal,
{
    let p = a.precision().max(b.precision()).max(tol.precision());
    let rule = gauss_legendre(NODES, p);
    let whole = panel(&f, &rule, a, b);
    refine(&f, &rule, a, b, whole, tol.clone(), 0)
}

fn refine<F: Fn(&BigReal) -> BigReal>(
    f: &F,
    rule: &[(BigReal, BigReal)],
    a: &BigReal,
    b: &BigReal,
    whole: BigReal,
    tol: BigReal,
    depth: u32,
) -> Result<BigReal, NumericsError> {
    let mid = (a + b) / 2;
    let left = panel(f, rule, a, &mid);
    let right = panel(f, rule, &mid, b);
    let split = &left + &right;
    if (&split - &whole).abs() <= tol {
        return Ok(split);
    }
    if depth == MAX_DEPTH {
        return Err(NumericsError::ToleranceNotReached);
    }
    let half_tol = tol / 2;
    let l = refine(f, rule, a, &mid, left, half_tol.clone(), depth + 1)?;
    let r = refine(f, rule, &mid, b, right, half_tol, depth + 1)?;
    Ok(l + r)
}
