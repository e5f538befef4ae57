//! Exact solution of the coupled-oscillator model.
//!
//! In dimensionless form
//! `H = -(∂²₁ + ∂²₂)/2 + (q₁² + q₂²)/2 - λ(q₁ - q₂)²/2`, which the orthogonal
//! change of variables `Q = (q₁+q₂)/√2`, `q = (q₁-q₂)/√2` splits into an
//! oscillator of spring constant 1 in `Q` and one of spring constant `1 - 2λ`
//! in `q`. Bound states exist only for `λ < 1/2`.

use thiserror::Error;

use crate::numerics::BigReal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscillatorError {
    #[error(
        "no bound states for λ ≥ 1/2 (the relative-mode spring constant 1 - 2λ must be positive)"
    )]
    Unbound,
    #[error("trial function is not normalizable (requires α > 0 and α + 2β > 0)")]
    NotNormalizable,
    #[error("stationarity iteration did not converge")]
    NoConvergence,
    #[error("stationary point found is not a minimum of the energy functional")]
    NonMinimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    /// Centre-of-mass mode.
    pub j: u32,
    /// Relative mode.
    pub n: u32,
}

impl QuantumNumbers {
    pub const GROUND: QuantumNumbers = QuantumNumbers { j: 0, n: 0 };

    pub fn new(j: u32, n: u32) -> Self {
        QuantumNumbers { j, n }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalModePoint {
    pub big_q: BigReal,
    pub q: BigReal,
}

/// `√(1 - 2λ)`, or `Unbound` when `λ ≥ 1/2`.
pub(crate) fn relative_frequency(lambda: &BigReal) -> Result<BigReal, OscillatorError> {
    let k_eff = lambda.int_like(1) - lambda * 2;
    if k_eff.is_positive() {
        Ok(k_eff.sqrt())
    } else {
        Err(OscillatorError::Unbound)
    }
}

/// `ε_jn(λ) = j + 1/2 + (n + 1/2) √(1 - 2λ)`.
pub fn exact_eigenvalue(qn: QuantumNumbers, lambda: &BigReal) -> Result<BigReal, OscillatorError> {
    let s = relative_frequency(lambda)?;
    let p = lambda.precision();
    let half = BigReal::ratio(1, 2, p);
    Ok(&half + i64::from(qn.j) + (&half + i64::from(qn.n)) * s)
}

pub fn normal_modes(q1: &BigReal, q2: &BigReal) -> NormalModePoint {
    let r = q1.int_like(2).sqrt().recip();
    NormalModePoint {
        big_q: (q1 + q2) * &r,
        q: (q1 - q2) * &r,
    }
}

impl NormalModePoint {
    /// Back to particle coordinates `(q₁, q₂)`.
    pub fn to_particles(&self) -> (BigReal, BigReal) {
        let r = self.q.int_like(2).sqrt().recip();
        ((&self.big_q + &self.q) * &r, (&self.big_q - &self.q) * &r)
    }
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: u32, x: &BigReal) -> BigReal {
    let mut prev = x.int_like(1);
    if n == 0 {
        return prev;
    }
    let mut cur = x * 2;
    for m in 1..n {
        let next = x * &cur * 2 - &prev * (2 * i64::from(m));
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized eigenfunction of `-½ d²/du² + (k/2) u²`:
/// `N_n H_n(k^(1/4) u) exp(-√k u²/2)`, `N_n = (k^(1/4) / (2ⁿ n! √π))^(1/2)`.
pub fn oscillator_eigenfunction(n: u32, spring: &BigReal, u: &BigReal) -> BigReal {
    let p = u.precision().max(spring.precision());
    let root_k = spring.sqrt();
    let quarter_k = root_k.sqrt();
    let mut denom = BigReal::pi(p).sqrt();
    for m in 1..=n {
        denom = denom * (2 * i64::from(m));
    }
    let norm = (&quarter_k / &denom).sqrt();
    let gauss = (-(&root_k * u * u) / 2).exp();
    norm * hermite(n, &(&quarter_k * u)) * gauss
}

/// `ψ_jn(q₁, q₂) = φ_j(1, Q) φ_n(1 - 2λ, q)`.
pub fn eigenfunction_value(
    qn: QuantumNumbers,
    lambda: &BigReal,
    q1: &BigReal,
    q2: &BigReal,
) -> Result<BigReal, OscillatorError> {
    relative_frequency(lambda)?;
    let modes = normal_modes(q1, q2);
    let k_eff = lambda.int_like(1) - lambda * 2;
    let one = lambda.int_like(1);
    Ok(oscillator_eigenfunction(qn.j, &one, &modes.big_q)
        * oscillator_eigenfunction(qn.n, &k_eff, &modes.q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Precision;

    const P: Precision = Precision::digits(50);

    fn r(s: &str) -> BigReal {
        BigReal::parse(s, P).unwrap()
    }

    fn close(a: &BigReal, b: &BigReal) -> bool {
        (a - b).abs() < P.tolerance(5)
    }

    #[test]
    fn spectrum_examples() {
        let e = |j, n, l: &str| exact_eigenvalue(QuantumNumbers::new(j, n), &r(l)).unwrap();
        assert!(close(&e(0, 0, "0"), &r("1")));
        assert!(close(&e(0, 0, "0.375"), &r("0.75")));
        assert!(close(&e(1, 2, "0.375"), &r("2.75")));
    }

    #[test]
    fn unbound_at_and_above_half() {
        for l in ["0.5", "0.75", "3"] {
            assert_eq!(
                exact_eigenvalue(QuantumNumbers::GROUND, &r(l)),
                Err(OscillatorError::Unbound)
            );
            assert_eq!(
                eigenfunction_value(QuantumNumbers::GROUND, &r(l), &r("0"), &r("0")),
                Err(OscillatorError::Unbound)
            );
        }
    }

    #[test]
    fn normal_mode_points() {
        let m = normal_modes(&r("1"), &r("1"));
        assert!(close(&m.big_q, &r("2").sqrt()) && m.q.is_zero());
        let m = normal_modes(&r("1"), &r("-1"));
        assert!(m.big_q.is_zero() && close(&m.q, &r("2").sqrt()));
    }

    #[test]
    fn eigenfunction_values() {
        let v = eigenfunction_value(QuantumNumbers::GROUND, &r("0"), &r("0"), &r("0")).unwrap();
        assert!(close(&v, &BigReal::pi(P).sqrt().recip()));
        assert_eq!(v.to_sig_string(10), "0.5641895835");
        // odd relative mode vanishes on q₁ = q₂
        let v =
            eigenfunction_value(QuantumNumbers::new(0, 1), &r("0"), &r("0.7"), &r("0.7")).unwrap();
        assert!(v.abs() < P.tolerance(5));
    }

    #[test]
    fn hermite_low_orders() {
        let x = r("0.3");
        assert!(close(&hermite(2, &x), &(&x * &x * 4 - 2)));
        assert!(close(&hermite(3, &x), &(&x * &x * &x * 8 - &x * 12)));
    }
}
