//! Dense complex eigensolver: balancing, Householder reduction to upper
//! Hessenberg form, then explicit single-shift QR with Givens rotations.
//!
//! Eigenvalues only (no vectors), tuned for the small matrices this crate
//! works with. The QR stage uses the Wilkinson shift with an occasional
//! exceptional shift so that cyclic patterns (for instance permutation
//! matrices, whose unshifted iteration is stationary) still deflate.

use num_complex::Complex64;

use crate::matrix::{CMatrix, MatrixError};

#[inline]
fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Diagonal similarity scaling by powers of 2 so row and column sums become
/// comparable; exact in floating point (scaling by the radix), eigenvalues
/// untouched.
fn balance(h: &mut Vec<Vec<Complex64>>) {
    let n = h.len();
    const RADIX: f64 = 2.0;
    const SQRDX: f64 = RADIX * RADIX;
    for _ in 0..32 {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    r += abs1(h[i][j]);
                    c += abs1(h[j][i]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0f64;
            let s = c + r;
            let mut cc = c;
            let mut g = r / RADIX;
            while cc < g {
                f *= RADIX;
                cc *= SQRDX;
            }
            g = r * RADIX;
            while cc > g {
                f /= RADIX;
                cc /= SQRDX;
            }
            if (cc + r) / f < 0.95 * s {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    h[i][j] *= ginv;
                }
                for row in h.iter_mut() {
                    row[i] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form (unitary similarity).
fn hessenberg(h: &mut Vec<Vec<Complex64>>) {
    let n = h.len();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        // reflect column k below the subdiagonal to zero
        let m = n - k - 1; // length of the working subcolumn
        let mut x = vec![Complex64::new(0.0, 0.0); m];
        for t in 0..m {
            x[t] = h[k + 1 + t][k];
        }
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0] == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let beta = -phase * norm;
        let mut v = x;
        v[0] -= beta;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // left: H <- (I - tau v v^H) H on rows k+1..n
        for j in k..n {
            let mut s = Complex64::new(0.0, 0.0);
            for t in 0..m {
                s += v[t].conj() * h[k + 1 + t][j];
            }
            s *= tau;
            for t in 0..m {
                h[k + 1 + t][j] -= s * v[t];
            }
        }
        // right: H <- H (I - tau v v^H) on columns k+1..n
        for row in h.iter_mut().take(n) {
            let mut s = Complex64::new(0.0, 0.0);
            for t in 0..m {
                s += row[k + 1 + t] * v[t];
            }
            s *= tau;
            for t in 0..m {
                row[k + 1 + t] -= s * v[t].conj();
            }
        }
        // the reflection maps the subcolumn to beta e1 exactly; record that
        h[k + 1][k] = beta;
        for t in 1..m {
            h[k + 1 + t][k] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Complex Givens rotation G = [[c, s], [-conj(s), c]] with real c >= 0 and
/// G (a, b)^T = (r, 0)^T.
#[inline]
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    if b == zero {
        return (1.0, zero, a);
    }
    if a == zero {
        let s = b.conj() / b.norm();
        return (0.0, s, Complex64::new(b.norm(), 0.0));
    }
    let rho = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let phase = a / a.norm();
    let c = a.norm() / rho;
    let s = phase * b.conj() / rho;
    let r = phase * rho;
    (c, s, r)
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to the
/// bottom-right entry.
fn wilkinson_shift(h: &[Vec<Complex64>], hi: usize) -> Complex64 {
    let m = hi - 1;
    let a = h[m][m];
    let b = h[m][hi];
    let c = h[hi][m];
    let d = h[hi][hi];
    let p = (a - d) * 0.5;
    let q = (p * p + b * c).sqrt();
    let half = (a + d) * 0.5;
    let r1 = half + q;
    let r2 = half - q;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// Eigenvalues of a square complex matrix. `NoConvergence` if some
/// eigenvalue fails to deflate within the iteration budget.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>, MatrixError> {
    let n = a.rows();
    let zero = Complex64::new(0.0, 0.0);
    let mut h: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    balance(&mut h);
    hessenberg(&mut h);

    let anorm: f64 = h.iter().flatten().map(|&z| abs1(z)).sum();
    let eps = f64::EPSILON;
    let max_iter = 100 * n.max(1);

    let mut values = Vec::with_capacity(n);
    let mut hi = n; // exclusive upper end of the active window
    while hi > 0 {
        let hi_idx = hi - 1;
        let mut iters = 0usize;
        loop {
            // look for a negligible subdiagonal entry, scanning upward
            let mut l = hi_idx;
            while l > 0 {
                let mut s = abs1(h[l - 1][l - 1]) + abs1(h[l][l]);
                if s == 0.0 {
                    s = anorm;
                }
                if abs1(h[l][l - 1]) <= eps * s {
                    h[l][l - 1] = zero;
                    break;
                }
                l -= 1;
            }
            if l == hi_idx {
                // 1x1 block deflated
                values.push(h[hi_idx][hi_idx]);
                hi -= 1;
                break;
            }
            if iters >= max_iter {
                return Err(MatrixError::NoConvergence);
            }
            iters += 1;

            let shift = if iters % 10 == 0 {
                // exceptional shift to break symmetric cycles
                h[hi_idx][hi_idx] + Complex64::new(0.75 * h[hi_idx][hi_idx - 1].norm(), 0.0)
            } else {
                wilkinson_shift(&h, hi_idx)
            };

            // explicit shifted QR step on the window [l, hi_idx]
            for t in l..=hi_idx {
                h[t][t] -= shift;
            }
            let mut rot = Vec::with_capacity(hi_idx - l);
            for k in l..hi_idx {
                let (c, s, r) = givens(h[k][k], h[k + 1][k]);
                h[k][k] = r;
                h[k + 1][k] = zero;
                for j in (k + 1)..=hi_idx {
                    let t1 = h[k][j];
                    let t2 = h[k + 1][j];
                    h[k][j] = c * t1 + s * t2;
                    h[k + 1][j] = -s.conj() * t1 + c * t2;
                }
                rot.push((c, s));
            }
            for (idx, &(c, s)) in rot.iter().enumerate() {
                let k = l + idx;
                for i in l..=hi_idx {
                    let t1 = h[i][k];
                    let t2 = h[i][k + 1];
                    h[i][k] = c * t1 + s.conj() * t2;
                    h[i][k + 1] = -s * t1 + c * t2;
                }
            }
            for t in l..=hi_idx {
                h[t][t] += shift;
            }
        }
    }
    Ok(values)
}
