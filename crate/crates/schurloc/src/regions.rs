//! Scalar region families: Gershgorin disks, Brauer-Cassini ovals, Schur
//! sets, and modified Schur sets.
//!
//! Every inequality is evaluated in multiplied-through form, so both sides
//! are polynomial in the distances |lambda - a_ll|: no resolvent
//! singularities, and diagonal entries are members automatically because the
//! right-hand side vanishes there. All sets are closed (ties are members).
//!
//! Index convention is 0-based. Sums over a column: the Gershgorin radius of
//! index j is the absolute column sum of column j without the diagonal.

use num_complex::Complex64;
use thiserror::Error;

use crate::matrix::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    One,
    Inf,
}

impl Default for NormMode {
    fn default() -> Self {
        NormMode::One
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Gershgorin,
    Cassini,
    Schur,
    ModifiedSchur,
}

/// Which region of a family a query addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionSelect {
    /// The family's combined locus: union for Gershgorin and Cassini,
    /// intersection over pivots of unions for the Schur families.
    Combined,
    /// Single index j: only meaningful for Gershgorin.
    Single(usize),
    /// Index pair: unordered {i, j} for Cassini (normalized to i < j),
    /// ordered (pivot k, partner j) with k != j for the Schur families.
    Pair(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionQuery {
    pub family: Family,
    pub select: RegionSelect,
    pub norm: NormMode,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("indices must be distinct, got ({0}, {1})")]
    EqualIndices(usize, usize),
    #[error("{0}")]
    SelectorUnsupported(&'static str),
    #[error("the infinity norm mode applies only to the Schur family")]
    NormModeUnsupported,
    #[error("combined loci need dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
}

impl RegionQuery {
    pub fn combined(family: Family) -> Self {
        RegionQuery {
            family,
            select: RegionSelect::Combined,
            norm: NormMode::One,
        }
    }

    /// Checks selector shape, index ranges, and norm-mode applicability
    /// against a concrete dimension.
    pub fn validate(&self, n: usize) -> Result<(), RegionError> {
        if self.norm == NormMode::Inf && self.family != Family::Schur {
            return Err(RegionError::NormModeUnsupported);
        }
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(RegionError::IndexOutOfRange { index: i, n })
            }
        };
        match (self.family, self.select) {
            (_, RegionSelect::Combined) => {
                if n < 2 {
                    return Err(RegionError::DimensionTooSmall(n));
                }
            }
            (Family::Gershgorin, RegionSelect::Single(j)) => check(j)?,
            (Family::Gershgorin, RegionSelect::Pair(..)) => {
                return Err(RegionError::SelectorUnsupported(
                    "Gershgorin regions take a single index",
                ))
            }
            (_, RegionSelect::Single(_)) => {
                return Err(RegionError::SelectorUnsupported(
                    "this family takes an index pair or the combined locus",
                ))
            }
            (_, RegionSelect::Pair(i, j)) => {
                check(i)?;
                check(j)?;
                if i == j {
                    return Err(RegionError::EqualIndices(i, j));
                }
            }
        }
        Ok(())
    }

    /// Membership of `lambda` in the selected region. Validates first.
    pub fn member(&self, a: &CMatrix, lambda: Complex64) -> Result<bool, RegionError> {
        self.validate(a.rows())?;
        Ok(match (self.family, self.select) {
            (Family::Gershgorin, RegionSelect::Single(j)) => gershgorin_member(a, j, lambda),
            (Family::Gershgorin, RegionSelect::Combined) => gershgorin_locus_member(a, lambda),
            (Family::Cassini, RegionSelect::Pair(i, j)) => cassini_member(a, i, j, lambda),
            (Family::Cassini, RegionSelect::Combined) => cassini_locus_member(a, lambda),
            (Family::Schur, RegionSelect::Pair(k, j)) => {
                schur_member(a, k, j, lambda, self.norm)
            }
            (Family::Schur, RegionSelect::Combined) => {
                schur_locus_member(a, lambda, self.norm)
            }
            (Family::ModifiedSchur, RegionSelect::Pair(k, j)) => {
                modified_schur_member(a, k, j, lambda)
            }
            (Family::ModifiedSchur, RegionSelect::Combined) => {
                modified_schur_locus_member(a, lambda)
            }
            _ => unreachable!("validate rejects remaining combinations"),
        })
    }
}

/// Number of scalar inequalities one membership probe of a combined locus
/// evaluates in the worst case; the cost model reported by the CLI.
pub fn inequalities_per_probe(family: Family, n: usize) -> u64 {
    let n = n as u64;
    match family {
        Family::Gershgorin => n,
        Family::Cassini => n * (n - 1) / 2,
        Family::Schur | Family::ModifiedSchur => n * (n - 1),
    }
}

/// Off-diagonal absolute column sum of column j.
pub fn col_radius(a: &CMatrix, j: usize) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        if i != j {
            s += a.get(i, j).norm();
        }
    }
    s
}

/// Gershgorin disk of index j (column form).
pub fn gershgorin_member(a: &CMatrix, j: usize, lambda: Complex64) -> bool {
    (lambda - a.get(j, j)).norm() <= col_radius(a, j)
}

pub fn gershgorin_locus_member(a: &CMatrix, lambda: Complex64) -> bool {
    (0..a.rows()).any(|j| gershgorin_member(a, j, lambda))
}

/// Brauer-Cassini oval of the pair {i, j}: the product of the two distances
/// stays below the product of the two Gershgorin radii.
pub fn cassini_member(a: &CMatrix, i: usize, j: usize, lambda: Complex64) -> bool {
    assert!(i != j, "Cassini ovals need two distinct indices");
    let lhs = (lambda - a.get(i, i)).norm() * (lambda - a.get(j, j)).norm();
    lhs <= col_radius(a, i) * col_radius(a, j)
}

pub fn cassini_locus_member(a: &CMatrix, lambda: Complex64) -> bool {
    let n = a.rows();
    assert!(n >= 2, "the Cassini locus needs dimension at least 2");
    for i in 0..n {
        for j in (i + 1)..n {
            if cassini_member(a, i, j, lambda) {
                return true;
            }
        }
    }
    false
}

/// Schur pair region with pivot k and partner j.
///
/// One-norm mode evaluates, in multiplied form,
///   sum_{i != k} |a_ik a_kj + (1 - delta_ij)(lambda - a_kk) a_ij|
///     >= |lambda - a_kk| |lambda - a_jj|.
/// Infinity mode exchanges the roles of the row and column grouping: the
/// second index fixes a row i, the sum runs over columns, and each term in
/// the underlying quotient carries its own |lambda - a_jj|, so multiplying
/// through uses products of all the distances but the excluded ones.
pub fn schur_member(
    a: &CMatrix,
    k: usize,
    j: usize,
    lambda: Complex64,
    norm: NormMode,
) -> bool {
    assert!(k != j, "Schur regions need pivot != partner");
    match norm {
        NormMode::One => {
            let n = a.rows();
            let dk = lambda - a.get(k, k);
            let rhs = dk.norm() * (lambda - a.get(j, j)).norm();
            let mut lhs = 0.0;
            for i in 0..n {
                if i == k {
                    continue;
                }
                let mut term = a.get(i, k) * a.get(k, j);
                if i != j {
                    term += dk * a.get(i, j);
                }
                lhs += term.norm();
            }
            lhs >= rhs
        }
        NormMode::Inf => schur_member_inf(a, k, j, lambda),
    }
}

/// Row-grouped variant: pivot k, fixed row i, sum over columns. Writing
/// m_l = |lambda - a_ll|, the quotient form
///   sum_{j != k} |a_ik a_kj + (1 - delta_ij)(lambda - a_kk) a_ij| / (m_k m_j) >= 1
/// is multiplied through by m_k prod_{l != k} m_l; the per-term factor
/// prod_{l != k, l != j} m_l comes from prefix/suffix products.
fn schur_member_inf(a: &CMatrix, k: usize, i: usize, lambda: Complex64) -> bool {
    let n = a.rows();
    let others: Vec<usize> = (0..n).filter(|&l| l != k).collect();
    let mods: Vec<f64> = others.iter().map(|&l| (lambda - a.get(l, l)).norm()).collect();
    let m = mods.len();
    let mut prefix = vec![1.0f64; m + 1];
    for t in 0..m {
        prefix[t + 1] = prefix[t] * mods[t];
    }
    let mut suffix = vec![1.0f64; m + 1];
    for t in (0..m).rev() {
        suffix[t] = suffix[t + 1] * mods[t];
    }
    let dk = lambda - a.get(k, k);
    let rhs = dk.norm() * prefix[m];
    let mut lhs = 0.0;
    for (pos, &j) in others.iter().enumerate() {
        let mut num = a.get(i, k) * a.get(k, j);
        if j != i {
            num += dk * a.get(i, j);
        }
        lhs += num.norm() * (prefix[pos] * suffix[pos + 1]);
    }
    lhs >= rhs
}

/// Union over partners of the pair regions with pivot k.
pub fn schur_set_member(a: &CMatrix, k: usize, lambda: Complex64, norm: NormMode) -> bool {
    (0..a.rows()).any(|j| j != k && schur_member(a, k, j, lambda, norm))
}

/// Intersection over pivots of the per-pivot unions.
pub fn schur_locus_member(a: &CMatrix, lambda: Complex64, norm: NormMode) -> bool {
    let n = a.rows();
    assert!(n >= 2, "the Schur locus needs dimension at least 2");
    (0..n).all(|k| schur_set_member(a, k, lambda, norm))
}

/// Modified Schur pair region: the norms are split term by term, which
/// enlarges the set but removes the pivot-resolvent factor from the cross
/// terms. Multiplied form:
///   sum_{i != k} (|a_ik| |a_kj| + (1 - delta_ij) |a_ij| |lambda - a_kk|)
///     >= |lambda - a_kk| |lambda - a_jj|.
pub fn modified_schur_member(a: &CMatrix, k: usize, j: usize, lambda: Complex64) -> bool {
    assert!(k != j, "Schur regions need pivot != partner");
    let n = a.rows();
    let mk = (lambda - a.get(k, k)).norm();
    let rhs = mk * (lambda - a.get(j, j)).norm();
    let mut lhs = 0.0;
    for i in 0..n {
        if i == k {
            continue;
        }
        lhs += a.get(i, k).norm() * a.get(k, j).norm();
        if i != j {
            lhs += a.get(i, j).norm() * mk;
        }
    }
    lhs >= rhs
}

pub fn modified_schur_set_member(a: &CMatrix, k: usize, lambda: Complex64) -> bool {
    (0..a.rows()).any(|j| j != k && modified_schur_member(a, k, j, lambda))
}

pub fn modified_schur_locus_member(a: &CMatrix, lambda: Complex64) -> bool {
    let n = a.rows();
    assert!(n >= 2, "the modified Schur locus needs dimension at least 2");
    (0..n).all(|k| modified_schur_set_member(a, k, lambda))
}

/// Combined-locus membership for one family; the CLI's method dispatch.
pub fn locus_member(
    a: &CMatrix,
    family: Family,
    lambda: Complex64,
    norm: NormMode,
) -> bool {
    match family {
        Family::Gershgorin => gershgorin_locus_member(a, lambda),
        Family::Cassini => cassini_locus_member(a, lambda),
        Family::Schur => schur_locus_member(a, lambda, norm),
        Family::ModifiedSchur => modified_schur_locus_member(a, lambda),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn all_ones(n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |_, _| c(1.0, 0.0))
    }

    fn diag(values: &[f64]) -> CMatrix {
        CMatrix::from_fn(values.len(), values.len(), |i, j| {
            if i == j {
                c(values[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
    }

    // --- Gershgorin ---

    #[test]
    fn gershgorin_boundary_point_is_member() {
        let a = all_ones(3);
        assert!(gershgorin_member(&a, 0, c(-1.0, 0.0))); // distance 2 = radius 2
        assert!(!gershgorin_member(&a, 0, c(3.1, 0.0)));
        assert!(gershgorin_locus_member(&a, c(-1.0, 0.0)));
        assert!(!gershgorin_locus_member(&a, c(3.1, 0.0)));
    }

    #[test]
    fn gershgorin_zero_radius_is_a_point() {
        let a = diag(&[1.0, 2.0]);
        assert!(gershgorin_member(&a, 0, c(1.0, 0.0)));
        assert!(!gershgorin_member(&a, 0, c(1.5, 0.0)));
    }

    // --- Cassini ---

    #[test]
    fn cassini_all_ones_boundary() {
        let a = all_ones(3);
        assert!(cassini_member(&a, 0, 1, c(-1.0, 0.0))); // 2*2 <= 2*2
        assert!(!cassini_member(&a, 0, 1, c(-1.05, 0.0)));
        assert!(cassini_locus_member(&a, c(-1.0, 0.0)));
        assert!(!cassini_locus_member(&a, c(-1.05, 0.0)));
    }

    #[test]
    fn cassini_of_diagonal_matrix_is_the_two_diagonal_points() {
        let a = diag(&[1.0, 5.0]);
        assert!(cassini_member(&a, 0, 1, c(1.0, 0.0)));
        assert!(cassini_member(&a, 0, 1, c(5.0, 0.0)));
        assert!(!cassini_member(&a, 0, 1, c(3.0, 0.0)));
    }

    #[test]
    fn cassini_is_symmetric_in_the_pair() {
        let a = CMatrix::from_fn(4, 4, |i, j| c((i + 2 * j) as f64, (i as f64) - (j as f64)));
        for t in 0..200 {
            let lam = c((t as f64) * 0.11 - 6.0, ((t * 7) % 13) as f64 - 6.0);
            assert_eq!(
                cassini_member(&a, 1, 3, lam),
                cassini_member(&a, 3, 1, lam)
            );
        }
    }

    // --- Schur ---

    #[test]
    fn schur_all_ones_matches_quadratic_inequality() {
        // for the all-ones 3x3 the pair inequality reduces to
        // |lambda| + 1 >= |lambda - 1|^2
        let a = all_ones(3);
        assert!(schur_member(&a, 0, 1, c(0.0, 0.0), NormMode::One)); // 1 >= 1
        assert!(schur_member(&a, 0, 1, c(1.0, 0.0), NormMode::One)); // diagonal
        assert!(!schur_member(&a, 0, 1, c(3.5, 0.0), NormMode::One)); // 4.5 < 6.25
    }

    #[test]
    fn schur_locus_all_ones_is_zero_to_three_on_the_real_axis() {
        let a = all_ones(3);
        assert!(schur_locus_member(&a, c(1.5, 0.0), NormMode::One));
        assert!(schur_locus_member(&a, c(0.0, 0.0), NormMode::One));
        assert!(schur_locus_member(&a, c(3.0, 0.0), NormMode::One));
        assert!(!schur_locus_member(&a, c(-0.5, 0.0), NormMode::One));
        assert!(!schur_locus_member(&a, c(3.1, 0.0), NormMode::One));
    }

    #[test]
    fn schur_locus_of_diagonal_matrix_is_the_diagonal_set() {
        let a = diag(&[4.0, -2.0]);
        for (lam, want) in [
            (c(4.0, 0.0), true),
            (c(-2.0, 0.0), true),
            (c(1.0, 0.0), false),
            (c(4.0, 0.1), false),
        ] {
            assert_eq!(schur_locus_member(&a, lam, NormMode::One), want, "{lam}");
        }
    }

    #[test]
    fn diagonal_entries_are_members_of_every_family() {
        let a = CMatrix::from_fn(4, 4, |i, j| {
            c(1.0 + (i * 4 + j) as f64, (i as f64) * 0.5 - (j as f64) * 0.25)
        });
        for k in 0..4 {
            let lam = a.get(k, k);
            assert!(gershgorin_locus_member(&a, lam));
            assert!(cassini_locus_member(&a, lam));
            assert!(schur_locus_member(&a, lam, NormMode::One));
            assert!(schur_locus_member(&a, lam, NormMode::Inf));
            assert!(modified_schur_locus_member(&a, lam));
        }
    }

    // --- modified Schur ---

    #[test]
    fn modified_schur_contains_plain_schur_points() {
        let a = all_ones(3);
        assert!(modified_schur_member(&a, 0, 1, c(0.0, 0.0)));
    }

    #[test]
    fn modified_schur_far_from_diagonal_of_diag_matrix_is_outside() {
        let a = diag(&[1.0, 2.0, 3.0]);
        assert!(!modified_schur_member(&a, 0, 1, c(50.0, 0.0)));
        assert!(!modified_schur_locus_member(&a, c(50.0, 0.0)));
    }

    // --- example comparison point ---

    #[test]
    fn all_ones_at_minus_one_separates_schur_from_cassini() {
        let a = all_ones(3);
        let lam = c(-1.0, 0.0);
        assert!(cassini_locus_member(&a, lam));
        assert!(gershgorin_locus_member(&a, lam));
        assert!(!schur_locus_member(&a, lam, NormMode::One));
    }

    // --- infinity norm mode ---

    #[test]
    fn inf_mode_contains_spectrum_of_all_ones() {
        let a = all_ones(3);
        // eigenvalues are 3, 0, 0
        assert!(schur_locus_member(&a, c(3.0, 0.0), NormMode::Inf));
        assert!(schur_locus_member(&a, c(0.0, 0.0), NormMode::Inf));
    }

    #[test]
    fn inf_mode_agrees_with_direct_quotient_evaluation() {
        let a = CMatrix::from_fn(3, 3, |i, j| {
            c(
                ((i * 3 + j) as f64 * 0.7).sin() * 2.0 + if i == j { 3.0 * i as f64 } else { 0.0 },
                ((i + 2 * j) as f64 * 0.3).cos(),
            )
        });
        for t in 0..500 {
            let lam = c(
                ((t * 13) % 101) as f64 * 0.15 - 7.0,
                ((t * 29) % 97) as f64 * 0.14 - 6.5,
            );
            // direct quotient form, valid away from diagonal singularities
            let far = (0..3).all(|l| (lam - a.get(l, l)).norm() > 1e-6);
            if !far {
                continue;
            }
            for k in 0..3 {
                for i in 0..3 {
                    if i == k {
                        continue;
                    }
                    let mk = (lam - a.get(k, k)).norm();
                    let mut r = 0.0;
                    for j in 0..3 {
                        if j == k {
                            continue;
                        }
                        let mut num = a.get(i, k) * a.get(k, j);
                        if j != i {
                            num += (lam - a.get(k, k)) * a.get(i, j);
                        }
                        r += num.norm() / (mk * (lam - a.get(j, j)).norm());
                    }
                    assert_eq!(
                        schur_member(&a, k, i, lam, NormMode::Inf),
                        r >= 1.0,
                        "k={k} i={i} lam={lam}"
                    );
                }
            }
        }
    }

    // --- query plumbing ---

    #[test]
    fn query_validation_rules() {
        let q = |family, select, norm| RegionQuery {
            family,
            select,
            norm,
        };
        let ok = |query: RegionQuery| query.validate(4).unwrap();
        let err = |query: RegionQuery| query.validate(4).unwrap_err();

        ok(q(Family::Gershgorin, RegionSelect::Single(3), NormMode::One));
        ok(q(Family::Cassini, RegionSelect::Pair(0, 2), NormMode::One));
        ok(q(Family::Schur, RegionSelect::Pair(2, 0), NormMode::Inf));
        ok(q(Family::ModifiedSchur, RegionSelect::Combined, NormMode::One));

        assert!(matches!(
            err(q(Family::Cassini, RegionSelect::Pair(1, 1), NormMode::One)),
            RegionError::EqualIndices(1, 1)
        ));
        assert!(matches!(
            err(q(Family::Gershgorin, RegionSelect::Single(4), NormMode::One)),
            RegionError::IndexOutOfRange { index: 4, n: 4 }
        ));
        assert!(matches!(
            err(q(Family::Cassini, RegionSelect::Combined, NormMode::Inf)),
            RegionError::NormModeUnsupported
        ));
        assert!(matches!(
            err(q(Family::Gershgorin, RegionSelect::Pair(0, 1), NormMode::One)),
            RegionError::SelectorUnsupported(_)
        ));
        assert!(matches!(
            err(q(Family::Schur, RegionSelect::Single(0), NormMode::One)),
            RegionError::SelectorUnsupported(_)
        ));

        let tiny = q(Family::Schur, RegionSelect::Combined, NormMode::One);
        assert!(matches!(
            tiny.validate(1),
            Err(RegionError::DimensionTooSmall(1))
        ));
    }

    #[test]
    fn query_member_dispatches_to_the_right_family() {
        let a = all_ones(3);
        let lam = c(-1.0, 0.0);
        let member = |family| {
            RegionQuery::combined(family)
                .member(&a, lam)
                .unwrap()
        };
        assert!(member(Family::Cassini));
        assert!(member(Family::Gershgorin));
        assert!(!member(Family::Schur));
    }

    #[test]
    fn inequality_counts_follow_the_cost_model() {
        assert_eq!(inequalities_per_probe(Family::Gershgorin, 5), 5);
        assert_eq!(inequalities_per_probe(Family::Cassini, 5), 10);
        assert_eq!(inequalities_per_probe(Family::Schur, 5), 20);
        assert_eq!(inequalities_per_probe(Family::ModifiedSchur, 5), 20);
    }
}
