//! Two-parameter Gaussian variational treatment of the coupled oscillators.
//!
//! Trial function `exp(-α(q₁² + q₂²) - β(q₁ - q₂)²)`. Its Rayleigh quotient
//! `W(α, β)` is a rational function, and the stationarity conditions with
//! denominators cleared form a polynomial system solved here by Newton.

use crate::numerics::{BigReal, Precision};
use crate::oscillator_exact::{
    exact_eigenvalue, relative_frequency, OscillatorError, QuantumNumbers,
};

/// Restart points tried when the first Newton run fails or lands on a
/// stationary point that is not a minimum.
const RESTART_LATTICE: [(i64, i64, i64); 8] = [
    // (alpha_num, beta_num, den)
    (1, 0, 4),
    (1, 0, 2),
    (3, 0, 2),
    (3, 0, 1),
    (1, 1, 4),
    (1, 1, 2),
    (2, 1, 2),
    (3, 1, 1),
];
const MAX_NEWTON_STEPS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct VariationalPoint {
    pub alpha: BigReal,
    pub beta: BigReal,
}

impl VariationalPoint {
    pub fn new(alpha: BigReal, beta: BigReal) -> Self {
        VariationalPoint { alpha, beta }
    }

    /// The default starting point `(1, 0)`.
    pub fn default_init(p: Precision) -> Self {
        VariationalPoint::new(BigReal::one(p), BigReal::zero(p))
    }

    /// The Gaussian is square integrable iff `α > 0` and `α + 2β > 0`.
    pub fn is_normalizable(&self) -> bool {
        self.alpha.is_positive() && (&self.alpha + &(&self.beta * 2)).is_positive()
    }
}

/// `W(α, β) = [4α³ + 12α²β + α(8β² - λ + 1) + β] / [4α(α + 2β)]`.
pub fn variational_energy(
    p: &VariationalPoint,
    lambda: &BigReal,
) -> Result<BigReal, OscillatorError> {
    if !p.is_normalizable() {
        return Err(OscillatorError::NotNormalizable);
    }
    let (a, b) = (&p.alpha, &p.beta);
    let a2 = a * a;
    let num = &a2 * a * 4 + &a2 * b * 12 + a * &(b * b * 8 - lambda + 1) + b;
    let den = a * &(a + &(b * 2)) * 4;
    Ok(num / den)
}

/// The cleared-denominator stationarity conditions
/// `r₁ = 4α⁴ + 16α³β + α²(16β² + λ - 1) - 2αβ - 2β²` and
/// `r₂ = 4α² + 16αβ + 16β² + 2λ - 1`.
pub fn stationarity_residuals(p: &VariationalPoint, lambda: &BigReal) -> (BigReal, BigReal) {
    let (a, b) = (&p.alpha, &p.beta);
    let a2 = a * a;
    let b2 = b * b;
    let r1 =
        &a2 * &a2 * 4 + &a2 * a * b * 16 + &a2 * &(&b2 * 16 + lambda - 1) - a * b * 2 - &b2 * 2;
    let r2 = &a2 * 4 + a * b * 16 + &b2 * 16 + lambda * 2 - 1;
    (r1, r2)
}

/// Jacobian of [`stationarity_residuals`] with respect to `(α, β)`.
fn residual_jacobian(p: &VariationalPoint, lambda: &BigReal) -> [[BigReal; 2]; 2] {
    let (a, b) = (&p.alpha, &p.beta);
    let a2 = a * a;
    let b2 = b * b;
    let d1a = &a2 * a * 16 + &a2 * b * 48 + a * &(&b2 * 16 + lambda - 1) * 2 - b * 2;
    let d1b = &a2 * a * 16 + &a2 * b * 32 - a * 2 - b * 4;
    let d2a = a * 8 + b * 16;
    let d2b = a * 16 + b * 32;
    [[d1a, d1b], [d2a, d2b]]
}

/// Closed-form optimum `α = 1/2`, `β = (√(1 - 2λ) - 1)/4`.
pub fn optimal_point(lambda: &BigReal) -> Result<VariationalPoint, OscillatorError> {
    let s = relative_frequency(lambda)?;
    let p = lambda.precision();
    Ok(VariationalPoint::new(BigReal::ratio(1, 2, p), (s - 1) / 4))
}

/// Newton iteration on the stationarity system, from `init`, with steps
/// shortened whenever they would leave the normalizable region.
fn newton_2d(lambda: &BigReal, init: &VariationalPoint, tol: &BigReal) -> Option<VariationalPoint> {
    let mut x = init.clone();
    for _ in 0..MAX_NEWTON_STEPS {
        let (r1, r2) = stationarity_residuals(&x, lambda);
        let [[j11, j12], [j21, j22]] = residual_jacobian(&x, lambda);
        let det = &j11 * &j22 - &j12 * &j21;
        if det.is_zero() {
            return None;
        }
        let da = (&j22 * &r1 - &j12 * &r2) / &det;
        let db = (&j11 * &r2 - &j21 * &r1) / &det;
        let mut scale = lambda.int_like(1);
        let mut next = None;
        for _ in 0..60 {
            let cand = VariationalPoint::new(&x.alpha - &(&da * &scale), &x.beta - &(&db * &scale));
            if cand.is_normalizable() {
                next = Some(cand);
                break;
            }
            scale = scale / 2;
        }
        let next = next?;
        let step = (&next.alpha - &x.alpha)
            .abs()
            .max((&next.beta - &x.beta).abs());
        x = next;
        if step < *tol {
            return Some(x);
        }
    }
    None
}

/// Second differences of `W`; `true` when the Hessian is positive definite.
fn is_local_minimum(x: &VariationalPoint, lambda: &BigReal) -> bool {
    let p = lambda.precision();
    let h = BigReal::pow10(-(p.decimal_digits() as i32) / 4, p);
    let w = |da: i64, db: i64| {
        let pt = VariationalPoint::new(&x.alpha + &(&h * da), &x.beta + &(&h * db));
        variational_energy(&pt, lambda).ok()
    };
    let (Some(c), Some(ap), Some(am), Some(bp), Some(bm), Some(pp), Some(pm), Some(mp), Some(mm)) = (
        w(0, 0),
        w(1, 0),
        w(-1, 0),
        w(0, 1),
        w(0, -1),
        w(1, 1),
        w(1, -1),
        w(-1, 1),
        w(-1, -1),
    ) else {
        return false;
    };
    let h2 = &h * &h;
    let haa = (&ap - &(&c * 2) + &am) / &h2;
    let hbb = (&bp - &(&c * 2) + &bm) / &h2;
    let hab = (pp - pm - mp + mm) / (&h2 * 4);
    haa.is_positive() && (&haa * &hbb - &(&hab * &hab)).is_positive()
}

/// Numerical solution of the stationarity conditions.
///
/// The returned point is normalizable, has residual steps below `tol`, and
/// is a local minimum of `W` whose value does not exceed the exact ground
/// energy by more than `√tol`. Otherwise up to eight restarts are made from
/// a fixed lattice of starting points before giving up.
pub fn solve_stationarity(
    lambda: &BigReal,
    init: &VariationalPoint,
    tol: &BigReal,
) -> Result<VariationalPoint, OscillatorError> {
    let exact = exact_eigenvalue(QuantumNumbers::GROUND, lambda)?;
    if !init.is_normalizable() {
        return Err(OscillatorError::NotNormalizable);
    }
    let p = lambda.precision();
    let gap_tol = tol.sqrt();
    let mut saw_stationary = false;
    let restarts = RESTART_LATTICE
        .iter()
        .map(|&(a, b, d)| VariationalPoint::new(BigReal::ratio(a, d, p), BigReal::ratio(b, d, p)));
    for start in std::iter::once(init.clone()).chain(restarts) {
        let Some(x) = newton_2d(lambda, &start, tol) else {
            continue;
        };
        saw_stationary = true;
        let Ok(w) = variational_energy(&x, lambda) else {
            continue;
        };
        if is_local_minimum(&x, lambda) && (&w - &exact) <= gap_tol {
            return Ok(x);
        }
    }
    Err(if saw_stationary {
        OscillatorError::NonMinimum
    } else {
        OscillatorError::NoConvergence
    })
}
