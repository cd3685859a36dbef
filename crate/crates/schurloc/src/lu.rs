//! LU factorization with partial pivoting, used for inverses and resolvents.

use num_complex::Complex64;

use crate::matrix::{CMatrix, MatrixError};

/// LU factorization PA = LU, stored packed (L below the diagonal with unit
/// diagonal implied, U on and above it). `perm[k]` is the source row of
/// pivot row k.
struct LuFactors {
    n: usize,
    packed: Vec<Complex64>,
    perm: Vec<usize>,
}

/// Factors a square matrix. A pivot is accepted only if its magnitude
/// exceeds 1e-12 times the largest entry magnitude of the input; otherwise
/// the matrix is reported singular. A zero matrix is always singular.
fn factor(a: &CMatrix) -> Result<LuFactors, MatrixError> {
    let n = a.rows();
    let mut packed = a.row_major().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let threshold = 1e-12 * a.max_norm();

    for k in 0..n {
        // partial pivoting: largest magnitude in column k at or below row k
        let mut best_row = k;
        let mut best_mag = packed[k * n + k].norm();
        for r in (k + 1)..n {
            let mag = packed[r * n + k].norm();
            if mag > best_mag {
                best_mag = mag;
                best_row = r;
            }
        }
        if best_mag <= threshold {
            return Err(MatrixError::Singular);
        }
        if best_row != k {
            for j in 0..n {
                packed.swap(k * n + j, best_row * n + j);
            }
            perm.swap(k, best_row);
        }
        let pivot = packed[k * n + k];
        for r in (k + 1)..n {
            let m = packed[r * n + k] / pivot;
            packed[r * n + k] = m;
            for j in (k + 1)..n {
                let u = packed[k * n + j];
                packed[r * n + j] -= m * u;
            }
        }
    }
    Ok(LuFactors { n, packed, perm })
}

impl LuFactors {
    /// Solves A x = b in place given PA = LU.
    fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.n;
        // apply the row permutation
        let permuted: Vec<Complex64> = self.perm.iter().map(|&r| b[r]).collect();
        b.copy_from_slice(&permuted);
        // forward substitution with unit lower triangle
        for i in 1..n {
            let mut s = b[i];
            for j in 0..i {
                s -= self.packed[i * n + j] * b[j];
            }
            b[i] = s;
        }
        // back substitution
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in (i + 1)..n {
                s -= self.packed[i * n + j] * b[j];
            }
            b[i] = s / self.packed[i * n + i];
        }
    }
}

/// Inverse of a square matrix, column by column through the LU factors.
pub fn inverse(a: &CMatrix) -> Result<CMatrix, MatrixError> {
    let n = a.rows();
    let f = factor(a)?;
    let mut out = CMatrix::zeros(n, n);
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        col.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        col[j] = Complex64::new(1.0, 0.0);
        f.solve_in_place(&mut col);
        for i in 0..n {
            out.set(i, j, col[i]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_of_identity_is_identity() {
        let inv = inverse(&CMatrix::identity(3)).unwrap();
        assert_eq!(inv, CMatrix::identity(3));
    }

    #[test]
    fn rank_deficient_all_ones_is_singular() {
        let m = CMatrix::from_fn(2, 2, |_, _| c(1.0, 0.0));
        assert_eq!(inverse(&m).unwrap_err(), MatrixError::Singular);
    }

    #[test]
    fn zero_matrix_is_singular() {
        let m = CMatrix::zeros(3, 3);
        assert_eq!(inverse(&m).unwrap_err(), MatrixError::Singular);
    }

    #[test]
    fn near_singular_relative_to_scale_is_rejected() {
        // diag(1e8, 1e-8): pivot ratio 1e-16 is below the 1e-12 relative cutoff
        let m = CMatrix::new(2, 2, vec![c(1e8, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1e-8, 0.0)])
            .unwrap();
        assert_eq!(inverse(&m).unwrap_err(), MatrixError::Singular);
    }

    #[test]
    fn inverse_times_input_is_identity() {
        let m = CMatrix::new(
            3,
            3,
            vec![
                c(4.0, 1.0),
                c(-2.0, 0.5),
                c(0.0, 3.0),
                c(1.0, -1.0),
                c(5.0, 0.0),
                c(2.0, 2.0),
                c(-3.0, 0.0),
                c(0.5, -0.5),
                c(6.0, -1.0),
            ],
        )
        .unwrap();
        let inv = inverse(&m).unwrap();
        let prod = inv.mul(&m);
        let residual = prod.sub(&CMatrix::identity(3)).max_norm();
        assert!(residual < 1e-13, "residual {residual}");
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let m = CMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, m); // a transposition is its own inverse
    }
}
