//! Cyclic Jacobi eigenvalue iteration for symmetric matrices.

use super::{BigReal, Matrix, NumericsError, SymMatrix};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and, when requested, the matching orthonormal
/// eigenvectors stored as matrix columns.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: Vec<BigReal>,
    pub vectors: Option<Matrix>,
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn jacobi_eigen(m: &SymMatrix) -> Result<Vec<BigReal>, NumericsError> {
    jacobi(m, false, DEFAULT_MAX_SWEEPS).map(|e| e.values)
}

/// Eigenvalues and eigenvectors, with an explicit sweep cap.
pub fn jacobi_eigen_vectors(m: &SymMatrix, max_sweeps: usize) -> Result<SymEigen, NumericsError> {
    jacobi(m, true, max_sweeps)
}

fn off_diagonal_sq(a: &[Vec<BigReal>]) -> BigReal {
    let mut s = BigReal::zero(a[0][0].precision());
    for (i, row) in a.iter().enumerate() {
        for x in &row[i + 1..] {
            s += x * x;
        }
    }
    s * 2
}

fn jacobi(m: &SymMatrix, want_vectors: bool, max_sweeps: usize) -> Result<SymEigen, NumericsError> {
    let n = m.order();
    let p = m[(0, 0)].precision();
    let mut a: Vec<Vec<BigReal>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].clone()).collect())
        .collect();
    let mut v: Option<Vec<Vec<BigReal>>> = want_vectors.then(|| {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigReal::from_i64((i == j) as i64, p))
                    .collect()
            })
            .collect()
    });

    let norm = m.as_matrix().frobenius_norm();
    let tol = &p.tolerance(5) * &norm;
    let tol_sq = &tol * &tol;
    let one = BigReal::one(p);

    let trivial = n == 1 || norm.is_zero();
    let mut sweeps = 0;
    loop {
        if trivial || off_diagonal_sq(&a) <= tol_sq {
            break;
        }
        if sweeps == max_sweeps {
            return Err(NumericsError::IterationLimit { sweeps });
        }
        sweeps += 1;
        for ip in 0..n {
            for iq in ip + 1..n {
                if a[ip][iq].is_zero() {
                    continue;
                }
                let apq = a[ip][iq].clone();
                let theta = (&a[iq][iq] - &a[ip][ip]) / (&apq * 2);
                let t = {
                    let den = theta.abs() + (&theta * &theta + &one).sqrt();
                    let t = den.recip();
                    if theta.is_negative() {
                        -t
                    } else {
                        t
                    }
                };
                let c = (&t * &t + &one).sqrt().recip();
                let s = &t * &c;
                let tau = &s / &(&one + &c);
                let h = &t * &apq;
                a[ip][ip] -= &h;
                a[iq][iq] += &h;
                a[ip][iq] = BigReal::zero(p);
                a[iq][ip] = BigReal::zero(p);
                for r in 0..n {
                    if r == ip || r == iq {
                        continue;
                    }
                    let g = a[r][ip].clone();
                    let hh = a[r][iq].clone();
                    let new_rp = &g - &(&s * &(&hh + &(&g * &tau)));
                    let new_rq = &hh + &(&s * &(&g - &(&hh * &tau)));
                    a[ip][r] = new_rp.clone();
                    a[r][ip] = new_rp;
                    a[iq][r] = new_rq.clone();
                    a[r][iq] = new_rq;
                }
                if let Some(v) = v.as_mut() {
                    for row in v.iter_mut() {
                        let g = row[ip].clone();
                        let hh = row[iq].clone();
                        row[ip] = &g - &(&s * &(&hh + &(&g * &tau)));
                        row[iq] = &hh + &(&s * &(&g - &(&hh * &tau)));
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].partial_cmp(&a[y][y]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[i][i].clone()).collect();
    let vectors = v.map(|v| Matrix::from_fn(n, |i, j| v[i][order[j]].clone()));
    Ok(SymEigen { values, vectors })
}
