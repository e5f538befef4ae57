//! Small dense matrices over [`BigReal`].

use std::ops::{Index, IndexMut};

use super::{BigReal, NumericsError, Precision};

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    order: usize,
    entries: Vec<BigReal>,
}

impl Matrix {
    pub fn zeros(order: usize, p: Precision) -> Self {
        assert!(order > 0, "matrix order must be positive");
        Matrix {
            order,
            entries: vec![BigReal::zero(p); order * order],
        }
    }

    pub fn identity(order: usize, p: Precision) -> Self {
        let mut m = Self::zeros(order, p);
        for i in 0..order {
            m[(i, i)] = BigReal::one(p);
        }
        m
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigReal) -> Self {
        assert!(order > 0, "matrix order must be positive");
        let entries = (0..order * order)
            .map(|k| f(k / order, k % order))
            .collect();
        Matrix { order, entries }
    }

    /// Builds from rows of integers.
    pub fn from_i64_rows(rows: &[&[i64]], p: Precision) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square");
        Self::from_fn(n, |i, j| BigReal::from_i64(rows[i][j], p))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        Self::from_fn(n, |i, j| {
            let mut acc = &self[(i, 0)] * &rhs[(0, j)];
            for k in 1..n {
                acc += &self[(i, k)] * &rhs[(k, j)];
            }
            acc
        })
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> BigReal {
        self.entries
            .iter()
            .map(BigReal::abs)
            .reduce(BigReal::max)
            .expect("non-empty")
    }

    pub fn frobenius_norm(&self) -> BigReal {
        self.entries
            .iter()
            .map(|x| x * x)
            .reduce(|a, b| a + b)
            .expect("non-empty")
            .sqrt()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = BigReal;
    fn index(&self, (i, j): (usize, usize)) -> &BigReal {
        &self.entries[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigReal {
        &mut self.entries[i * self.order + j]
    }
}

/// Symmetric matrix. Writes go through [`SymMatrix::set`], which mirrors
/// them, so `m[(i, j)] == m[(j, i)]` always holds exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix(Matrix);

impl SymMatrix {
    pub fn zeros(order: usize, p: Precision) -> Self {
        SymMatrix(Matrix::zeros(order, p))
    }

    /// Builds from the lower triangle: `f(i, j)` is called for `j <= i` only.
    pub fn from_lower(order: usize, mut f: impl FnMut(usize, usize) -> BigReal) -> Self {
        let mut m = Matrix::from_fn(order, |_, _| BigReal::zero(Precision::digits(1)));
        for i in 0..order {
            for j in 0..=i {
                let v = f(i, j);
                m[(j, i)] = v.clone();
                m[(i, j)] = v;
            }
        }
        SymMatrix(m)
    }

    /// Symmetric part `(a + aᵀ)/2` of a general matrix.
    pub fn symmetrize(a: &Matrix) -> Self {
        Self::from_lower(a.order(), |i, j| {
            if i == j {
                a[(i, i)].clone()
            } else {
                (&a[(i, j)] + &a[(j, i)]) / 2
            }
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]], p: Precision) -> Option<Self> {
        let m = Matrix::from_i64_rows(rows, p);
        (m == m.transpose()).then_some(SymMatrix(m))
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigReal) {
        self.0[(j, i)] = v.clone();
        self.0[(i, j)] = v;
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn trace(&self) -> BigReal {
        (0..self.order())
            .map(|i| self[(i, i)].clone())
            .reduce(|a, b| a + b)
            .expect("non-empty")
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = BigReal;
    fn index(&self, ij: (usize, usize)) -> &BigReal {
        &self.0[ij]
    }
}

/// Determinant by Gaussian elimination with scaled partial pivoting.
///
/// Pivot rows are chosen by `|a_ik| / max_j |a_ij|`; the scale factors only
/// steer the pivot choice and do not enter the result. An exactly singular
/// input returns zero.
pub fn det_lu(m: &Matrix) -> BigReal {
    let n = m.order();
    let mut a = m.clone();
    let p = m[(0, 0)].precision();
    let scale: Vec<BigReal> = (0..n)
        .map(|i| {
            let s = (0..n)
                .map(|j| a[(i, j)].abs())
                .reduce(BigReal::max)
                .expect("non-empty");
            if s.is_zero() {
                BigReal::one(p)
            } else {
                s
            }
        })
        .collect();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut det = BigReal::one(p);
    for k in 0..n {
        let (best, best_val) = (k..n)
            .map(|r| (r, &a[(rows[r], k)].abs() / &scale[rows[r]]))
            .reduce(|x, y| if y.1 > x.1 { y } else { x })
            .expect("non-empty");
        if best_val.is_zero() {
            return BigReal::zero(p);
        }
        if best != k {
            rows.swap(best, k);
            det = -det;
        }
        let pr = rows[k];
        let pivot = a[(pr, k)].clone();
        det *= &pivot;
        let inv = pivot.recip();
        for &r in &rows[k + 1..] {
            if a[(r, k)].is_zero() {
                continue;
            }
            let factor = &a[(r, k)] * &inv;
            for c in k + 1..n {
                let t = &factor * &a[(pr, c)];
                a[(r, c)] -= t;
            }
        }
    }
    det
}

/// Cholesky factor `L` (lower triangular, positive diagonal) with `L Lᵀ = m`.
pub fn cholesky(m: &SymMatrix) -> Result<Matrix, NumericsError> {
    let n = m.order();
    let p = m[(0, 0)].precision();
    let mut l = Matrix::zeros(n, p);
    for j in 0..n {
        let mut d = m[(j, j)].clone();
        for k in 0..j {
            d -= &l[(j, k)] * &l[(j, k)];
        }
        if !d.is_positive() {
            return Err(NumericsError::NotPositiveDefinite { index: j });
        }
        let djj = d.sqrt();
        let inv = djj.recip();
        for i in j + 1..n {
            let mut s = m[(i, j)].clone();
            for k in 0..j {
                s -= &l[(i, k)] * &l[(j, k)];
            }
            l[(i, j)] = s * &inv;
        }
        l[(j, j)] = djj;
    }
    Ok(l)
}

/// `L⁻¹ A L⁻ᵀ` for lower-triangular `L`, by two triangular solves.
pub fn congruence_inverse(l: &Matrix, a: &SymMatrix) -> SymMatrix {
    let n = l.order();
    // X = L⁻¹ A, column by column
    let mut x = a.as_matrix().clone();
    for c in 0..n {
        for i in 0..n {
            let mut s = x[(i, c)].clone();
            for k in 0..i {
                s -= &l[(i, k)] * &x[(k, c)];
            }
            x[(i, c)] = s / &l[(i, i)];
        }
    }
    // Y = X L⁻ᵀ, i.e. solve L Yᵀ = Xᵀ row by row
    let mut y = x;
    for r in 0..n {
        for j in 0..n {
            let mut s = y[(r, j)].clone();
            for k in 0..j {
                s -= &l[(j, k)] * &y[(r, k)];
            }
            y[(r, j)] = s / &l[(j, j)];
        }
    }
    SymMatrix::symmetrize(&y)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Precision = Precision::digits(50);

    fn int(n: i64) -> BigReal {
        BigReal::from_i64(n, P)
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det_lu(&Matrix::identity(2, P)), int(1));
        assert_eq!(
            det_lu(&Matrix::from_i64_rows(&[&[2, 1], &[1, 2]], P)),
            int(3)
        );
        assert_eq!(
            det_lu(&Matrix::from_i64_rows(&[&[0, 1], &[1, 0]], P)),
            int(-1)
        );
        assert!(det_lu(&Matrix::from_i64_rows(&[&[1, 2], &[2, 4]], P)).is_zero());
    }

    #[test]
    fn cholesky_hand_cases() {
        let m = SymMatrix::from_i64_rows(&[&[4, 2], &[2, 5]], P).unwrap();
        let l = cholesky(&m).unwrap();
        assert_eq!(l, Matrix::from_i64_rows(&[&[2, 0], &[1, 2]], P));
        let id = SymMatrix::from_i64_rows(&[&[1, 0], &[0, 1]], P).unwrap();
        assert_eq!(cholesky(&id).unwrap(), Matrix::identity(2, P));
        let indefinite = SymMatrix::from_i64_rows(&[&[1, 2], &[2, 1]], P).unwrap();
        assert_eq!(
            cholesky(&indefinite),
            Err(NumericsError::NotPositiveDefinite { index: 1 })
        );
    }

    #[test]
    fn symmetric_set_mirrors() {
        let mut m = SymMatrix::zeros(3, P);
        m.set(2, 0, int(7));
        assert_eq!(m[(0, 2)], int(7));
        assert!(SymMatrix::from_i64_rows(&[&[1, 2], &[3, 1]], P).is_none());
    }

    #[test]
    fn congruence_matches_explicit_inverse() {
        let l = Matrix::from_i64_rows(&[&[2, 0], &[1, 3]], P);
        let a = SymMatrix::from_i64_rows(&[&[5, 1], &[1, 4]], P).unwrap();
        let r = congruence_inverse(&l, &a);
        // L⁻¹ = [[1/2, 0], [-1/6, 1/3]]
        let li = Matrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => BigReal::ratio(1, 2, P),
            (1, 0) => BigReal::ratio(-1, 6, P),
            (1, 1) => BigReal::ratio(1, 3, P),
            _ => int(0),
        });
        let expected = li.matmul(a.as_matrix()).matmul(&li.transpose());
        for i in 0..2 {
            for j in 0..2 {
                assert!((&r[(i, j)] - &expected[(i, j)]).abs() < P.tolerance(3));
            }
        }
    }
}
