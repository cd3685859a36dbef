//! Block-partitioned region machinery: Schur complement, resolvent assembly,
//! operator-norm region sums, and spectral-inclusion verification.
//!
//! All operator norms are the induced l1 norms (max column absolute sum),
//! so every quantity is a closed-form evaluation once the needed diagonal
//! resolvents exist. A singular diagonal resolvent means lambda sits in that
//! block's spectrum, which by definition places lambda inside the region:
//! the pair predicates treat it as membership, the margin bookkeeping as
//! infinite slack.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::jsonfmt;
use crate::matrix::{BlockMatrix, CMatrix, MatrixError, Permutation, Spectrum};
use crate::regions::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("lambda lies in the spectrum of the trailing diagonal block")]
    LambdaInSigmaD,
    #[error("the Schur complement is singular at lambda")]
    DeltaSingular,
    #[error("diagonal resolvent of block {block} is singular at lambda")]
    DiagonalResolventSingular { block: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// 2x2 coarsening of a block matrix at its last block: the base splits into
/// the leading principal part `a`, the couplings `b` (tall) and `c` (wide),
/// and the trailing diagonal block `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurSplit {
    pub a: CMatrix,
    pub b: CMatrix,
    pub c: CMatrix,
    pub d: CMatrix,
}

impl SchurSplit {
    pub fn new(a: CMatrix, b: CMatrix, c: CMatrix, d: CMatrix) -> Result<Self, BlockError> {
        if !a.is_square() {
            return Err(MatrixError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            }
            .into());
        }
        if !d.is_square() {
            return Err(MatrixError::NotSquare {
                rows: d.rows(),
                cols: d.cols(),
            }
            .into());
        }
        if b.rows() != a.rows() || b.cols() != d.cols() {
            return Err(MatrixError::SizeMismatch {
                expected: a.rows() * d.cols(),
                got: b.rows() * b.cols(),
            }
            .into());
        }
        if c.rows() != d.rows() || c.cols() != a.cols() {
            return Err(MatrixError::SizeMismatch {
                expected: d.rows() * a.cols(),
                got: c.rows() * c.cols(),
            }
            .into());
        }
        Ok(SchurSplit { a, b, c, d })
    }

    /// Splits a block matrix at its last block boundary. Needs at least two
    /// blocks.
    pub fn of_last_block(bm: &BlockMatrix) -> Result<Self, BlockError> {
        let nblocks = bm.block_count();
        if nblocks < 2 {
            return Err(MatrixError::InvalidPartition(
                "a split needs at least two blocks".into(),
            )
            .into());
        }
        let base = bm.base();
        let total = base.rows();
        let cut = bm.block_offset(nblocks - 1);
        let a = CMatrix::from_fn(cut, cut, |i, j| base.get(i, j));
        let b = CMatrix::from_fn(cut, total - cut, |i, j| base.get(i, cut + j));
        let c = CMatrix::from_fn(total - cut, cut, |i, j| base.get(cut + i, j));
        let d = CMatrix::from_fn(total - cut, total - cut, |i, j| base.get(cut + i, cut + j));
        Ok(SchurSplit { a, b, c, d })
    }

    /// Puts the four parts back together; inverse of `of_last_block`.
    pub fn assemble(&self) -> CMatrix {
        let cut = self.a.rows();
        let total = cut + self.d.rows();
        CMatrix::from_fn(total, total, |i, j| match (i < cut, j < cut) {
            (true, true) => self.a.get(i, j),
            (true, false) => self.b.get(i, j - cut),
            (false, true) => self.c.get(i - cut, j),
            (false, false) => self.d.get(i - cut, j - cut),
        })
    }
}

/// Schur complement `lambda*I - a - b (lambda*I - d)^-1 c`.
pub fn schur_complement(split: &SchurSplit, lambda: Complex64) -> Result<CMatrix, BlockError> {
    let rd = split
        .d
        .shifted(lambda)
        .lu_inverse()
        .map_err(|e| match e {
            MatrixError::Singular => BlockError::LambdaInSigmaD,
            other => other.into(),
        })?;
    let correction = split.b.mul(&rd).mul(&split.c);
    Ok(split.a.shifted(lambda).sub(&correction))
}

/// Resolvent of the assembled matrix through the Schur complement: the four
/// blocks are
///   top-left     delta^-1
///   top-right    delta^-1 b (lambda - d)^-1
///   bottom-left  (lambda - d)^-1 c delta^-1
///   bottom-right (lambda - d)^-1 (I + c delta^-1 b (lambda - d)^-1).
/// A singular delta means lambda belongs to the spectrum of the assembled
/// matrix even though it misses the spectrum of `d`.
pub fn resolvent_via_schur(split: &SchurSplit, lambda: Complex64) -> Result<CMatrix, BlockError> {
    let rd = split
        .d
        .shifted(lambda)
        .lu_inverse()
        .map_err(|e| match e {
            MatrixError::Singular => BlockError::LambdaInSigmaD,
            other => other.into(),
        })?;
    let delta = split.a.shifted(lambda).sub(&split.b.mul(&rd).mul(&split.c));
    let delta_inv = delta.lu_inverse().map_err(|e| match e {
        MatrixError::Singular => BlockError::DeltaSingular,
        other => other.into(),
    })?;
    let top_right = delta_inv.mul(&split.b).mul(&rd);
    let bottom_left = rd.mul(&split.c).mul(&delta_inv);
    let bottom_right = rd.add(&rd.mul(&split.c).mul(&top_right));
    let cut = split.a.rows();
    let total = cut + split.d.rows();
    Ok(CMatrix::from_fn(
        total,
        total,
        |i, j| match (i < cut, j < cut) {
            (true, true) => delta_inv.get(i, j),
            (true, false) => top_right.get(i, j - cut),
            (false, true) => bottom_left.get(i - cut, j),
            (false, false) => bottom_right.get(i - cut, j - cut),
        },
    ))
}

/// Which region sum a block evaluation computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RKind {
    /// sum_{i != k} || (A_ik (lambda-A_kk)^-1 A_kj + (1-delta_ij) A_ij)
    ///                 (lambda-A_jj)^-1 ||
    Schur,
    /// norms split term by term: sum_{i != k}
    ///   (||A_ik (lambda-A_kk)^-1 A_kj (lambda-A_jj)^-1||
    ///    + (1-delta_ij) ||A_ij (lambda-A_jj)^-1||)
    Modified,
}

fn diag_resolvent(bm: &BlockMatrix, idx: usize, lambda: Complex64) -> Result<CMatrix, BlockError> {
    let block = bm.block(idx, idx)?;
    block.shifted(lambda).lu_inverse().map_err(|e| match e {
        MatrixError::Singular => BlockError::DiagonalResolventSingular { block: idx },
        other => other.into(),
    })
}

/// The region sum for pivot k and partner j under l1 operator norms.
pub fn block_r_kj(
    bm: &BlockMatrix,
    k: usize,
    j: usize,
    lambda: Complex64,
    kind: RKind,
) -> Result<f64, BlockError> {
    assert!(k != j, "block region sums need pivot != partner");
    let rk = diag_resolvent(bm, k, lambda)?;
    let rj = diag_resolvent(bm, j, lambda)?;
    let n = bm.block_count();
    let a_kj = bm.block(k, j)?;
    let mut sum = 0.0;
    for i in 0..n {
        if i == k {
            continue;
        }
        let cross = bm.block(i, k)?.mul(&rk).mul(&a_kj);
        match kind {
            RKind::Schur => {
                let mut inner = cross;
                if i != j {
                    inner = inner.add(&bm.block(i, j)?);
                }
                sum += inner.mul(&rj).l1_op_norm();
            }
            RKind::Modified => {
                sum += cross.mul(&rj).l1_op_norm();
                if i != j {
                    sum += bm.block(i, j)?.mul(&rj).l1_op_norm();
                }
            }
        }
    }
    Ok(sum)
}

/// Pair membership with the diagonal-spectrum clause folded in: lambda in
/// sigma(A_kk) or sigma(A_jj) is a member, otherwise the sum reaching 1.
pub fn block_schur_member(bm: &BlockMatrix, k: usize, j: usize, lambda: Complex64) -> bool {
    match block_r_kj(bm, k, j, lambda, RKind::Schur) {
        Ok(r) => r >= 1.0,
        Err(BlockError::DiagonalResolventSingular { .. }) => true,
        Err(e) => panic!("unexpected failure in block region sum: {e}"),
    }
}

pub fn block_modified_schur_member(bm: &BlockMatrix, k: usize, j: usize, lambda: Complex64) -> bool {
    match block_r_kj(bm, k, j, lambda, RKind::Modified) {
        Ok(r) => r >= 1.0,
        Err(BlockError::DiagonalResolventSingular { .. }) => true,
        Err(e) => panic!("unexpected failure in block region sum: {e}"),
    }
}

/// Off-diagonal block norm sum of block column j.
fn block_col_radius(bm: &BlockMatrix, j: usize) -> f64 {
    let n = bm.block_count();
    let mut s = 0.0;
    for i in 0..n {
        if i != j {
            s += bm.block(i, j).expect("index checked").l1_op_norm();
        }
    }
    s
}

/// Block Gershgorin set of index j: lambda in sigma(A_jj), or the reciprocal
/// of the resolvent norm staying below the off-diagonal block norm sum.
pub fn block_gershgorin_member(bm: &BlockMatrix, j: usize, lambda: Complex64) -> bool {
    match diag_resolvent(bm, j, lambda) {
        Err(BlockError::DiagonalResolventSingular { .. }) => true,
        Err(e) => panic!("unexpected failure in diagonal resolvent: {e}"),
        Ok(inv) => 1.0 / inv.l1_op_norm() <= block_col_radius(bm, j),
    }
}

/// Block Cassini oval of the pair {i, j}: diagonal spectra, or the product
/// of the two resolvent-weighted column sums reaching 1.
pub fn block_cassini_member(bm: &BlockMatrix, i: usize, j: usize, lambda: Complex64) -> bool {
    assert!(i != j, "Cassini ovals need two distinct indices");
    let ri = match diag_resolvent(bm, i, lambda) {
        Err(BlockError::DiagonalResolventSingular { .. }) => return true,
        Err(e) => panic!("unexpected failure in diagonal resolvent: {e}"),
        Ok(inv) => inv,
    };
    let rj = match diag_resolvent(bm, j, lambda) {
        Err(BlockError::DiagonalResolventSingular { .. }) => return true,
        Err(e) => panic!("unexpected failure in diagonal resolvent: {e}"),
        Ok(inv) => inv,
    };
    let n = bm.block_count();
    let mut si = 0.0;
    let mut sj = 0.0;
    for l in 0..n {
        if l != i {
            si += bm.block(l, i).expect("index checked").mul(&ri).l1_op_norm();
        }
        if l != j {
            sj += bm.block(l, j).expect("index checked").mul(&rj).l1_op_norm();
        }
    }
    si * sj >= 1.0
}

/// Precomputed per-matrix state for evaluating combined block loci over many
/// probe points: blocks are copied out once, diagonal resolvents are shared
/// across families at each probe.
pub struct LocusEvaluator {
    blocks: Vec<Vec<CMatrix>>,
    norms: Vec<Vec<f64>>,
    n: usize,
}

struct ProbeResolvents {
    /// `None` marks a singular diagonal resolvent (lambda in that block's
    /// spectrum), which makes every locus a member.
    inv: Vec<Option<CMatrix>>,
}

impl LocusEvaluator {
    pub fn new(bm: &BlockMatrix) -> Self {
        let n = bm.block_count();
        let blocks: Vec<Vec<CMatrix>> = (0..n)
            .map(|i| (0..n).map(|j| bm.block(i, j).expect("in range")).collect())
            .collect();
        let norms = blocks
            .iter()
            .map(|row| row.iter().map(|b| b.l1_op_norm()).collect())
            .collect();
        LocusEvaluator { blocks, norms, n }
    }

    fn resolvents(&self, lambda: Complex64) -> ProbeResolvents {
        let inv = (0..self.n)
            .map(|i| match self.blocks[i][i].shifted(lambda).lu_inverse() {
                Ok(m) => Some(m),
                Err(MatrixError::Singular) => None,
                Err(e) => panic!("unexpected failure inverting a diagonal shift: {e}"),
            })
            .collect();
        ProbeResolvents { inv }
    }

    fn r_kj(&self, res: &ProbeResolvents, k: usize, j: usize, kind: RKind) -> Option<f64> {
        let rk = res.inv[k].as_ref()?;
        let rj = res.inv[j].as_ref()?;
        let a_kj = &self.blocks[k][j];
        let mut sum = 0.0;
        for i in 0..self.n {
            if i == k {
                continue;
            }
            let cross = self.blocks[i][k].mul(rk).mul(a_kj);
            match kind {
                RKind::Schur => {
                    let mut inner = cross;
                    if i != j {
                        inner = inner.add(&self.blocks[i][j]);
                    }
                    sum += inner.mul(rj).l1_op_norm();
                }
                RKind::Modified => {
                    sum += cross.mul(rj).l1_op_norm();
                    if i != j {
                        sum += self.blocks[i][j].mul(rj).l1_op_norm();
                    }
                }
            }
        }
        Some(sum)
    }

    /// Combined-locus membership of one family at one probe. The Schur
    /// families are evaluated directly as the intersection over pivots of
    /// unions over partners; a block transposition would relabel the sums
    /// without changing their values.
    pub fn member(&self, family: Family, lambda: Complex64) -> bool {
        let res = self.resolvents(lambda);
        if res.inv.iter().any(|r| r.is_none()) {
            // lambda in some diagonal spectrum: member of every family
            return true;
        }
        match family {
            Family::Gershgorin => (0..self.n).any(|j| {
                let inv = res.inv[j].as_ref().expect("checked above");
                let radius: f64 = (0..self.n).filter(|&i| i != j).map(|i| self.norms[i][j]).sum();
                1.0 / inv.l1_op_norm() <= radius
            }),
            Family::Cassini => {
                let sums: Vec<f64> = (0..self.n)
                    .map(|j| {
                        let rj = res.inv[j].as_ref().expect("checked above");
                        (0..self.n)
                            .filter(|&l| l != j)
                            .map(|l| self.blocks[l][j].mul(rj).l1_op_norm())
                            .sum()
                    })
                    .collect();
                (0..self.n)
                    .any(|i| ((i + 1)..self.n).any(|j| sums[i] * sums[j] >= 1.0))
            }
            Family::Schur => (0..self.n).all(|k| {
                (0..self.n).any(|j| {
                    j != k
                        && self
                            .r_kj(&res, k, j, RKind::Schur)
                            .map(|r| r >= 1.0)
                            .unwrap_or(true)
                })
            }),
            Family::ModifiedSchur => (0..self.n).all(|k| {
                (0..self.n).any(|j| {
                    j != k
                        && self
                            .r_kj(&res, k, j, RKind::Modified)
                            .map(|r| r >= 1.0)
                            .unwrap_or(true)
                })
            }),
        }
    }
}

/// Verdicts and margins for every eigenvalue of a block matrix against all
/// four region families.
#[derive(Debug, Clone)]
pub struct InclusionReport {
    pub eigenvalues: Spectrum,
    pub schur: Vec<bool>,
    pub cassini: Vec<bool>,
    pub modified_schur: Vec<bool>,
    pub gershgorin: Vec<bool>,
    /// Smallest slack seen across eigenvalues and families: nonnegative
    /// means every eigenvalue is inside every region. Slack is measured in
    /// the defining inequality of each family (dimensionless for the
    /// resolvent sums, an absolute norm gap for Gershgorin); memberships by
    /// the diagonal-spectrum clause count as the largest finite value.
    pub min_margin: f64,
}

impl InclusionReport {
    pub fn all_member(&self) -> bool {
        self.schur.iter().all(|&b| b)
            && self.cassini.iter().all(|&b| b)
            && self.modified_schur.iter().all(|&b| b)
            && self.gershgorin.iter().all(|&b| b)
    }

    /// Deterministic JSON: fixed key order, fixed float format.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"eigenvalues\":[");
        for (i, &z) in self.eigenvalues.values().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&jsonfmt::complex_pair(z));
        }
        out.push_str("],\"families\":{");
        let fam = |name: &str, flags: &[bool]| {
            let body: Vec<&str> = flags
                .iter()
                .map(|&b| if b { "true" } else { "false" })
                .collect();
            format!("\"{}\":[{}]", name, body.join(","))
        };
        out.push_str(&fam("schur", &self.schur));
        out.push(',');
        out.push_str(&fam("cassini", &self.cassini));
        out.push(',');
        out.push_str(&fam("modified_schur", &self.modified_schur));
        out.push(',');
        out.push_str(&fam("gershgorin", &self.gershgorin));
        out.push_str("},\"min_margin\":");
        out.push_str(&jsonfmt::f64_fmt(self.min_margin));
        out.push('}');
        out
    }
}

/// Margin of the pair region (pivot k, partner j): the sum minus 1, or
/// infinite when the diagonal-spectrum clause applies.
fn pair_margin(bm: &BlockMatrix, k: usize, j: usize, lambda: Complex64, kind: RKind) -> f64 {
    match block_r_kj(bm, k, j, lambda, kind) {
        Ok(r) => r - 1.0,
        Err(BlockError::DiagonalResolventSingular { .. }) => f64::INFINITY,
        Err(e) => panic!("unexpected failure in block region sum: {e}"),
    }
}

/// Margin of the Schur locus evaluated the way the underlying statement is
/// phrased: for each pivot m, move block m to the last place by the
/// transposition (m, n), evaluate the union of pair regions with the last
/// block as pivot, and intersect over m (min of the per-pivot maxima).
fn schur_locus_margin_by_transposition(bm: &BlockMatrix, lambda: Complex64) -> f64 {
    let n = bm.block_count();
    let mut worst = f64::INFINITY;
    for m in 0..n {
        let tau = Permutation::transposition(n, m, n - 1).expect("indices in range");
        let permuted = bm.permute_blocks(&tau).expect("length matches");
        let mut best = f64::NEG_INFINITY;
        for j in 0..(n - 1) {
            best = best.max(pair_margin(&permuted, n - 1, j, lambda, RKind::Schur));
        }
        worst = worst.min(best);
    }
    worst
}

fn modified_locus_margin(bm: &BlockMatrix, lambda: Complex64) -> f64 {
    let n = bm.block_count();
    let mut worst = f64::INFINITY;
    for k in 0..n {
        let mut best = f64::NEG_INFINITY;
        for j in 0..n {
            if j != k {
                best = best.max(pair_margin(bm, k, j, lambda, RKind::Modified));
            }
        }
        worst = worst.min(best);
    }
    worst
}

fn cassini_union_margin(bm: &BlockMatrix, lambda: Complex64) -> f64 {
    let n = bm.block_count();
    // resolvent-weighted column sums, shared by all pairs
    let mut sums = vec![f64::INFINITY; n]; // infinite marks a singular block
    for j in 0..n {
        if let Ok(inv) = diag_resolvent(bm, j, lambda) {
            let mut s = 0.0;
            for l in 0..n {
                if l != j {
                    s += bm.block(l, j).expect("index checked").mul(&inv).l1_op_norm();
                }
            }
            sums[j] = s;
        }
    }
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let margin = if sums[i].is_infinite() || sums[j].is_infinite() {
                f64::INFINITY
            } else {
                sums[i] * sums[j] - 1.0
            };
            best = best.max(margin);
        }
    }
    best
}

fn gershgorin_union_margin(bm: &BlockMatrix, lambda: Complex64) -> f64 {
    let n = bm.block_count();
    let mut best = f64::NEG_INFINITY;
    for j in 0..n {
        let margin = match diag_resolvent(bm, j, lambda) {
            Err(BlockError::DiagonalResolventSingular { .. }) => f64::INFINITY,
            Err(e) => panic!("unexpected failure in diagonal resolvent: {e}"),
            Ok(inv) => block_col_radius(bm, j) - 1.0 / inv.l1_op_norm(),
        };
        best = best.max(margin);
    }
    best
}

/// Computes the spectrum of the base matrix and tests every eigenvalue
/// against each family's combined locus. Eigenvalues can land exactly on
/// region boundaries, so each one is also probed nudged by 1e-9 along the
/// four axis directions and the best margin is kept; the verdict is
/// "margin >= 0". Infinite margins (diagonal-spectrum clause) are clamped
/// to the largest finite value for reporting.
pub fn verify_inclusion(bm: &BlockMatrix) -> Result<InclusionReport, BlockError> {
    let n = bm.block_count();
    assert!(n >= 2, "inclusion verification needs at least two blocks");
    assert!(bm.base().rows() <= 64, "eigensolver is limited to n <= 64");
    let eigenvalues = bm.base().eigenvalues()?;

    const NUDGE: f64 = 1e-9;
    let outcomes: Vec<[f64; 4]> = eigenvalues
        .values()
        .par_iter()
        .map(|&ev| {
            let probes = [
                ev,
                ev + Complex64::new(NUDGE, 0.0),
                ev - Complex64::new(NUDGE, 0.0),
                ev + Complex64::new(0.0, NUDGE),
                ev - Complex64::new(0.0, NUDGE),
            ];
            let mut margins = [f64::NEG_INFINITY; 4];
            for &p in &probes {
                margins[0] = margins[0].max(schur_locus_margin_by_transposition(bm, p));
                margins[1] = margins[1].max(cassini_union_margin(bm, p));
                margins[2] = margins[2].max(modified_locus_margin(bm, p));
                margins[3] = margins[3].max(gershgorin_union_margin(bm, p));
            }
            margins
        })
        .collect();

    let mut min_margin = f64::INFINITY;
    let mut schur = Vec::with_capacity(outcomes.len());
    let mut cassini = Vec::with_capacity(outcomes.len());
    let mut modified = Vec::with_capacity(outcomes.len());
    let mut gershgorin = Vec::with_capacity(outcomes.len());
    for m in &outcomes {
        schur.push(m[0] >= 0.0);
        cassini.push(m[1] >= 0.0);
        modified.push(m[2] >= 0.0);
        gershgorin.push(m[3] >= 0.0);
        for &v in m {
            min_margin = min_margin.min(v);
        }
    }
    if min_margin == f64::INFINITY {
        min_margin = f64::MAX;
    }
    Ok(InclusionReport {
        eigenvalues,
        schur,
        cassini,
        modified_schur: modified,
        gershgorin,
        min_margin,
    })
}
