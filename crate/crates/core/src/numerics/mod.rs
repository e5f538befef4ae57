//! Arbitrary-precision scalars and the dense kernels the solvers share:
//! determinants, Cholesky, Jacobi eigenvalues, Newton roots and quadrature.

mod jacobi;
mod matrix;
mod quadrature;
mod real;
mod roots;

use thiserror::Error;

pub use jacobi::{jacobi_eigen, jacobi_eigen_vectors, SymEigen, DEFAULT_MAX_SWEEPS};
pub use matrix::{cholesky, congruence_inverse, det_lu, Matrix, SymMatrix};
pub use quadrature::{gauss_legendre, quadrature};
pub use real::{BigReal, ParseRealError, Precision};
pub use roots::{newton_root, newton_root_capped, DEFAULT_MAX_ITER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("matrix is not positive definite at working precision (pivot {index})")]
    NotPositiveDefinite { index: usize },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    IterationLimit { sweeps: usize },
    #[error("root iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("function does not change sign on the bracket")]
    NoSignChange,
    #[error("quadrature tolerance not reached within the subdivision limit")]
    ToleranceNotReached,
}
