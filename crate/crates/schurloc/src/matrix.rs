//! Dense complex matrices, block partitions, permutations, and spectra.
//!
//! Everything is stored row-major over `Complex64`. `CMatrix` handles
//! rectangular shapes (off-diagonal blocks are rectangular); operations that
//! only make sense on square matrices check squareness. All indices are
//! 0-based.

use num_complex::Complex64;
use thiserror::Error;

use crate::{eig, lu};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("index {index} out of range ({bound} available)")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Builds a matrix from row-major data, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::SizeMismatch {
                expected: 1,
                got: 0,
            });
        }
        if data.len() != rows * cols {
            return Err(MatrixError::SizeMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix by evaluating `f(row, col)`. No finiteness check.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0);
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row_major(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Returns `lambda*I - self`. Requires a square matrix.
    pub fn shifted(&self, lambda: Complex64) -> CMatrix {
        assert!(self.is_square(), "shifted() needs a square matrix");
        let mut out = CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| -z).collect(),
        };
        for i in 0..self.rows {
            let d = out.data[i * self.cols + i];
            out.data[i * self.cols + i] = d + lambda;
        }
        out
    }

    pub fn conj_transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced operator norm for l1 vector norms: the maximum absolute
    /// column sum. Exact up to the rounding of the sums themselves.
    pub fn l1_op_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.cols {
            let mut s = 0.0;
            for i in 0..self.rows {
                s += self.data[i * self.cols + j].norm();
            }
            best = best.max(s);
        }
        best
    }

    /// Checks `self == self^H` entrywise within `tol` on each component.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = self.get(i, j) - self.get(j, i).conj();
                if d.re.abs() > tol || d.im.abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse via LU with partial pivoting.
    ///
    /// Signals `Singular` when the smallest pivot magnitude falls below
    /// 1e-12 times the largest entry magnitude of the input; callers treat
    /// that as "the shift lies in the spectrum".
    pub fn lu_inverse(&self) -> Result<CMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        lu::inverse(self)
    }

    /// Eigenvalue multiset via balancing, Hessenberg reduction, and shifted
    /// complex QR iteration. Intended for desk-scale matrices (n <= 64).
    pub fn eigenvalues(&self) -> Result<Spectrum, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        assert!(self.rows <= 64, "eigensolver is limited to n <= 64");
        eig::eigenvalues(self).map(|values| Spectrum { values })
    }
}

/// Permutation of `{0, .., n-1}`, stored as the list of images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, MatrixError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(MatrixError::InvalidPermutation(format!(
                    "images must be a bijection on 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The transposition swapping `a` and `b` on `{0, .., n-1}`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, MatrixError> {
        if a >= n || b >= n {
            return Err(MatrixError::IndexOutOfRange {
                index: a.max(b),
                bound: n,
            });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// The scalar permutation matrix P for a given block partition: block
    /// column j carries an identity into block row `image(j)`. Conjugating a
    /// base matrix by P realizes the block permutation.
    pub fn block_matrix(&self, partition: &[usize]) -> CMatrix {
        assert_eq!(self.len(), partition.len());
        let total: usize = partition.iter().sum();
        let inv = self.inverse();
        // offsets of the permuted partition (d_{pi^-1(0)}, d_{pi^-1(1)}, ...)
        let mut perm_off = vec![0usize; partition.len() + 1];
        for i in 0..partition.len() {
            perm_off[i + 1] = perm_off[i] + partition[inv.image(i)];
        }
        let mut src_off = vec![0usize; partition.len() + 1];
        for i in 0..partition.len() {
            src_off[i + 1] = src_off[i] + partition[i];
        }
        let mut p = CMatrix::zeros(total, total);
        for j in 0..partition.len() {
            let tgt = self.image(j);
            for t in 0..partition[j] {
                p.set(perm_off[tgt] + t, src_off[j] + t, Complex64::new(1.0, 0.0));
            }
        }
        p
    }
}

/// Square matrix plus a block partition (d_1, .., d_n) with sum d_i = N.
/// Block (i, j) is the d_i x d_j sub-matrix in block position (i, j).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    base: CMatrix,
    partition: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockMatrix {
    pub fn new(base: CMatrix, partition: Vec<usize>) -> Result<Self, MatrixError> {
        if !base.is_square() {
            return Err(MatrixError::NotSquare {
                rows: base.rows,
                cols: base.cols,
            });
        }
        if partition.is_empty() || partition.iter().any(|&d| d == 0) {
            return Err(MatrixError::InvalidPartition(
                "block sizes must be positive".into(),
            ));
        }
        let total: usize = partition.iter().sum();
        if total != base.rows {
            return Err(MatrixError::InvalidPartition(format!(
                "partition sums to {total}, matrix dimension is {}",
                base.rows
            )));
        }
        let mut offsets = vec![0usize; partition.len() + 1];
        for (i, &d) in partition.iter().enumerate() {
            offsets[i + 1] = offsets[i] + d;
        }
        Ok(BlockMatrix {
            base,
            partition,
            offsets,
        })
    }

    /// All-ones partition: every block is a single scalar entry.
    pub fn scalar(base: CMatrix) -> Result<Self, MatrixError> {
        let n = base.rows;
        BlockMatrix::new(base, vec![1; n])
    }

    pub fn base(&self) -> &CMatrix {
        &self.base
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    pub fn block_count(&self) -> usize {
        self.partition.len()
    }

    pub fn block_dim(&self, i: usize) -> usize {
        self.partition[i]
    }

    pub fn block_offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    /// Copies out block (i, j).
    pub fn block(&self, i: usize, j: usize) -> Result<CMatrix, MatrixError> {
        let n = self.partition.len();
        if i >= n || j >= n {
            return Err(MatrixError::IndexOutOfRange {
                index: i.max(j),
                bound: n,
            });
        }
        let (ro, co) = (self.offsets[i], self.offsets[j]);
        Ok(CMatrix::from_fn(
            self.partition[i],
            self.partition[j],
            |r, c| self.base.get(ro + r, co + c),
        ))
    }

    /// Leading k x k block sub-matrix over the partition (d_1, .., d_k).
    /// `k` is a block count, 1 <= k <= n.
    pub fn upper_left(&self, k: usize) -> Result<BlockMatrix, MatrixError> {
        let n = self.partition.len();
        if k == 0 || k > n {
            return Err(MatrixError::IndexOutOfRange { index: k, bound: n });
        }
        let dim = self.offsets[k];
        let base = CMatrix::from_fn(dim, dim, |r, c| self.base.get(r, c));
        BlockMatrix::new(base, self.partition[..k].to_vec())
    }

    /// Simultaneous block row/column permutation: block (i, j) of the result
    /// is block (pi^-1(i), pi^-1(j)) of the input; the result partition is
    /// (d_{pi^-1(1)}, .., d_{pi^-1(n)}). The spectrum of the base matrix is
    /// unchanged.
    pub fn permute_blocks(&self, pi: &Permutation) -> Result<BlockMatrix, MatrixError> {
        let n = self.partition.len();
        if pi.len() != n {
            return Err(MatrixError::SizeMismatch {
                expected: n,
                got: pi.len(),
            });
        }
        let inv = pi.inverse();
        let new_partition: Vec<usize> = (0..n).map(|i| self.partition[inv.image(i)]).collect();
        let mut new_offsets = vec![0usize; n + 1];
        for i in 0..n {
            new_offsets[i + 1] = new_offsets[i] + new_partition[i];
        }
        let total = self.base.rows;
        let mut base = CMatrix::zeros(total, total);
        for bi in 0..n {
            let si = inv.image(bi);
            for bj in 0..n {
                let sj = inv.image(bj);
                for r in 0..self.partition[si] {
                    for c in 0..self.partition[sj] {
                        base.set(
                            new_offsets[bi] + r,
                            new_offsets[bj] + c,
                            self.base.get(self.offsets[si] + r, self.offsets[sj] + c),
                        );
                    }
                }
            }
        }
        BlockMatrix::new(base, new_partition)
    }
}

/// Eigenvalue multiset (algebraic multiplicity preserved by repetition).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn from_values(values: Vec<Complex64>) -> Self {
        Spectrum { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Greedy nearest-neighbor pairing distance against another multiset:
    /// repeatedly match the globally closest unmatched pair and report the
    /// largest matched distance. `None` if the lengths differ.
    pub fn pairing_gap(&self, other: &Spectrum) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        let n = self.len();
        let mut used_a = vec![false; n];
        let mut used_b = vec![false; n];
        let mut worst = 0.0f64;
        for _ in 0..n {
            let mut best = f64::INFINITY;
            let mut pick = (0, 0);
            for i in 0..n {
                if used_a[i] {
                    continue;
                }
                for j in 0..n {
                    if used_b[j] {
                        continue;
                    }
                    let d = (self.values[i] - other.values[j]).norm();
                    if d < best {
                        best = d;
                        pick = (i, j);
                    }
                }
            }
            used_a[pick.0] = true;
            used_b[pick.1] = true;
            worst = worst.max(best);
        }
        Some(worst)
    }

    /// Multiset equality within `tol` under greedy nearest-neighbor pairing.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        matches!(self.pairing_gap(other), Some(gap) if gap <= tol)
    }
}
