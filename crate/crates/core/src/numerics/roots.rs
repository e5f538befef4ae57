//! Safeguarded Newton iteration.

use super::{BigReal, NumericsError};

pub const DEFAULT_MAX_ITER: usize = 200;

/// Newton's method on `f`, which returns `(f(x), f'(x))`.
///
/// Stops once a step is shorter than `tol`. With a bracket `[a, b]` on which
/// `f` changes sign, any step that would leave the current bracket (or meets
/// a vanishing derivative) is replaced by a bisection step, and the bracket
/// shrinks as iterates land on either side of the root.
pub fn newton_root<F>(
    f: F,
    x0: &BigReal,
    tol: &BigReal,
    bracket: Option<(BigReal, BigReal)>,
) -> Result<BigReal, NumericsError>
where
    F: FnMut(&BigReal) -> (BigReal, BigReal),
{
    newton_root_capped(f, x0, tol, bracket, DEFAULT_MAX_ITER)
}

pub fn newton_root_capped<F>(
    mut f: F,
    x0: &BigReal,
    tol: &BigReal,
    bracket: Option<(BigReal, BigReal)>,
    max_iter: usize,
) -> Result<BigReal, NumericsError>
where
    F: FnMut(&BigReal) -> (BigReal, BigReal),
{
    // (lo, hi, sign of f at lo)
    let mut br = match bracket {
        None => None,
        Some((a, b)) => {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let flo = f(&lo).0;
            if flo.is_zero() {
                return Ok(lo);
            }
            let fhi = f(&hi).0;
            if fhi.is_zero() {
                return Ok(hi);
            }
            if flo.signum() == fhi.signum() {
                return Err(NumericsError::NoSignChange);
            }
            Some((lo, hi, flo.signum()))
        }
    };

    let mut x = match &br {
        Some((lo, hi, _)) if !(lo < x0 && x0 < hi) => (lo + hi) / 2,
        _ => x0.clone(),
    };

    for _ in 0..max_iter {
        let (fx, dfx) = f(&x);
        if fx.is_zero() {
            return Ok(x);
        }
        if let Some((lo, hi, slo)) = br.as_mut() {
            if fx.signum() == *slo {
                *lo = x.clone();
            } else {
                *hi = x.clone();
            }
        }
        let newton = (!dfx.is_zero()).then(|| &x - &(&fx / &dfx));
        let next = match (&br, newton) {
            (Some((lo, hi, _)), Some(xn)) if lo < &xn && &xn < hi => xn,
            (Some((lo, hi, _)), _) => (lo + hi) / 2,
            (None, Some(xn)) => xn,
            (None, None) => {
                return Err(NumericsError::NoConvergence { iterations: 0 });
            }
        };
        if (&next - &x).abs() < *tol {
            return Ok(next);
        }
        if let Some((lo, hi, _)) = &br {
            if (hi - lo).abs() < *tol {
                return Ok((lo + hi) / 2);
            }
        }
        x = next;
    }
    Err(NumericsError::NoConvergence {
        iterations: max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Precision;

    const P: Precision = Precision::digits(50);

    #[test]
    fn sqrt_two() {
        let two = BigReal::from_i64(2, P);
        let r = newton_root(
            |x| (x * x - &two, x * 2),
            &BigReal::one(P),
            &P.tolerance(5),
            None,
        )
        .unwrap();
        assert!((&r - &two.sqrt()).abs() < P.tolerance(5));
    }

    #[test]
    fn identity_root() {
        let r = newton_root(
            |x| (x.clone(), BigReal::one(P)),
            &BigReal::from_i64(5, P),
            &P.tolerance(5),
            None,
        )
        .unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn bisection_fallback_on_flat_start() {
        // f'(0) = 0 and Newton from 0 would fail; the bracket rescues it
        let r = newton_root(
            |x| (x * x - 1, x * 2),
            &BigReal::zero(P),
            &P.tolerance(5),
            Some((BigReal::ratio(-1, 2, P), BigReal::from_i64(3, P))),
        )
        .unwrap();
        assert!((&r - 1).abs() < P.tolerance(5));
    }

    #[test]
    fn wild_newton_step_stays_in_bracket() {
        // arctan-like: Newton overshoots badly from x0 = 3
        let r = newton_root(
            |x| {
                let d = (x * x + 1).recip();
                (x / &(x * x + 1).sqrt(), &d * &d.sqrt())
            },
            &BigReal::from_i64(3, P),
            &P.tolerance(5),
            Some((BigReal::from_i64(-2, P), BigReal::from_i64(4, P))),
        )
        .unwrap();
        assert!(r.abs() < P.tolerance(5));
    }

    #[test]
    fn invalid_bracket() {
        let e = newton_root(
            |x| (x * x + 1, x * 2),
            &BigReal::zero(P),
            &P.tolerance(5),
            Some((BigReal::from_i64(-1, P), BigReal::from_i64(1, P))),
        );
        assert_eq!(e.unwrap_err(), NumericsError::NoSignChange);
    }

    #[test]
    fn iteration_cap() {
        // x^2 + 1 has no real root; Newton wanders forever
        let e = newton_root_capped(
            |x| (x * x + 1, x * 2),
            &BigReal::from_i64(3, P),
            &P.tolerance(5),
            None,
            50,
        );
        assert!(matches!(e, Err(NumericsError::NoConvergence { .. })));
    }
}
