//! Rayleigh–Ritz upper bounds for the s-states of
//! `H_q = -∇² + q²/4 + λ/q`.
//!
//! The basis is `f_j(q) = q^j exp(-q²/4)`, `j = 0..N-1`. Every matrix element
//! reduces to the half-line Gaussian moments `M(n) = ∫₀^∞ qⁿ e^(-q²/2) dq`
//! (the radial measure `q² dq` is folded into the moment index):
//!
//! * overlap `S_ij = M(i+j+2)`
//! * kinetic `T_ij = ij M(i+j) - (i+j)/2 M(i+j+2) + M(i+j+4)/4`, from
//!   `∫ f_i' f_j' q² dq`
//! * potential `V_ij = M(i+j+4)/4 + λ M(i+j+1)`

use thiserror::Error;

use crate::harmonium_rpm::RadialProblem;
use crate::numerics::{
    cholesky, congruence_inverse, jacobi_eigen, BigReal, NumericsError, Precision, SymMatrix,
};

/// Largest basis the monomial Gram matrix is allowed to reach.
pub const MAX_BASIS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RrError {
    #[error("basis size must be between 1 and {MAX_BASIS}, got {0}")]
    InvalidBasisSize(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("basis-size sweep reached N = {MAX_BASIS} without {target} agreeing digits")]
    NoConvergence { target: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RrConfig {
    pub basis_size: usize,
    pub precision: Precision,
}

impl RrConfig {
    pub fn new(basis_size: usize, precision: Precision) -> Result<Self, RrError> {
        if (1..=MAX_BASIS).contains(&basis_size) {
            Ok(RrConfig {
                basis_size,
                precision,
            })
        } else {
            Err(RrError::InvalidBasisSize(basis_size))
        }
    }
}

/// `M(n) = ∫₀^∞ qⁿ e^(-q²/2) dq`: `M(0) = √(π/2)`, `M(1) = 1`,
/// `M(n) = (n-1) M(n-2)`.
pub fn gaussian_moment(n: usize, p: Precision) -> BigReal {
    MomentTable::new(n, p).get(n).clone()
}

#[derive(Debug, Clone)]
pub struct MomentTable {
    values: Vec<BigReal>,
}

impl MomentTable {
    pub fn new(n_max: usize, p: Precision) -> Self {
        let mut values = Vec::with_capacity(n_max + 1);
        values.push((BigReal::pi(p) / 2).sqrt());
        values.push(BigReal::one(p));
        for n in 2..=n_max {
            let v = &values[n - 2] * (n as i64 - 1);
            values.push(v);
        }
        values.truncate(n_max + 1);
        MomentTable { values }
    }

    pub fn get(&self, n: usize) -> &BigReal {
        &self.values[n]
    }
}

/// The three integrals making up one matrix entry.
#[derive(Debug, Clone)]
pub struct MatrixElements {
    pub overlap: BigReal,
    pub kinetic: BigReal,
    /// `q²/4 + λ/q`
    pub potential: BigReal,
}

pub fn matrix_elements(i: usize, j: usize, lambda: &BigReal, m: &MomentTable) -> MatrixElements {
    let s = i + j;
    let quarter_m4 = m.get(s + 4) / 4;
    let kinetic = if s >= 2 {
        m.get(s) * ((i * j) as i64)
    } else {
        BigReal::zero(lambda.precision())
    } - m.get(s + 2) * (s as i64) / 2
        + &quarter_m4;
    let potential = &quarter_m4 + &(lambda * m.get(s + 1));
    MatrixElements {
        overlap: m.get(s + 2).clone(),
        kinetic,
        potential,
    }
}

/// Overlap `S` and Hamiltonian `H = T + V` in the first `N` basis functions.
pub fn rr_matrices(problem: &RadialProblem, config: &RrConfig) -> (SymMatrix, SymMatrix) {
    let p = config.precision;
    let n = config.basis_size;
    let lambda = problem.lambda().with_precision(p);
    let moments = MomentTable::new(2 * n + 2, p);
    let mut s = SymMatrix::zeros(n, p);
    let mut h = SymMatrix::zeros(n, p);
    for i in 0..n {
        for j in 0..=i {
            let e = matrix_elements(i, j, &lambda, &moments);
            s.set(i, j, e.overlap);
            h.set(i, j, e.kinetic + e.potential);
        }
    }
    (s, h)
}

/// Ascending Ritz values of `H c = ε S c`.
pub fn rr_spectrum(problem: &RadialProblem, config: &RrConfig) -> Result<Vec<BigReal>, RrError> {
    let (s, h) = rr_matrices(problem, config);
    let l = cholesky(&s)?;
    let reduced = congruence_inverse(&l, &h);
    Ok(jacobi_eigen(&reduced)?)
}

/// Lowest Ritz value.
pub fn rr_ground(problem: &RadialProblem, config: &RrConfig) -> Result<BigReal, RrError> {
    Ok(rr_spectrum(problem, config)?.swap_remove(0))
}

/// One step of a basis-size sweep.
#[derive(Debug, Clone)]
pub struct RrStep {
    pub basis_size: usize,
    pub value: BigReal,
}

/// Lowest Ritz value with the basis grown in steps of two until two
/// consecutive steps change it by less than `10^-(target+2)` relative.
/// Returns the final value, its certified digit count and the sweep.
pub fn rr_ground_converged(
    problem: &RadialProblem,
    target_digits: u32,
    precision: Precision,
) -> Result<(BigReal, u32, Vec<RrStep>), RrError> {
    let threshold = BigReal::pow10(-(target_digits as i32) - 2, precision);
    let mut steps: Vec<RrStep> = Vec::new();
    let mut streak = 0;
    for n in (4..=MAX_BASIS).step_by(2) {
        let value = rr_ground(problem, &RrConfig::new(n, precision)?)?;
        if let Some(prev) = steps.last() {
            let rel = ((&value - &prev.value) / &value).abs();
            if rel < threshold {
                streak += 1;
            } else {
                streak = 0;
            }
            if streak >= 2 {
                let digits = crate::harmonium_rpm::certified_digits(&rel, precision);
                steps.push(RrStep {
                    basis_size: n,
                    value: value.clone(),
                });
                return Ok((value, digits, steps));
            }
        }
        steps.push(RrStep {
            basis_size: n,
            value,
        });
    }
    Err(RrError::NoConvergence {
        target: target_digits,
    })
}
