#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schurloc::geometry::Window;
use schurloc::{BlockMatrix, CMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Uniform sample from the closed unit disk, by rejection.
pub fn unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = c(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, scale * unit_disk(rng));
        }
    }
    m
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, c(scale * rng.gen_range(-1.0..=1.0), 0.0));
        for j in (i + 1)..n {
            let z = scale * unit_disk(rng);
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    m
}

pub fn random_partition(rng: &mut ChaCha8Rng, blocks: usize, max_dim: usize) -> Vec<usize> {
    (0..blocks).map(|_| rng.gen_range(1..=max_dim)).collect()
}

pub fn random_block_matrix(
    rng: &mut ChaCha8Rng,
    blocks: usize,
    max_dim: usize,
    scale: f64,
) -> BlockMatrix {
    let partition = random_partition(rng, blocks, max_dim);
    let total: usize = partition.iter().sum();
    BlockMatrix::new(random_matrix(rng, total, scale), partition).expect("partition sums match")
}

pub fn random_hermitian_block_matrix(
    rng: &mut ChaCha8Rng,
    blocks: usize,
    max_dim: usize,
    scale: f64,
) -> BlockMatrix {
    let partition = random_partition(rng, blocks, max_dim);
    let total: usize = partition.iter().sum();
    BlockMatrix::new(random_hermitian(rng, total, scale), partition).expect("partition sums match")
}

/// Uniform sample from a window's bounding box.
pub fn random_probe(rng: &mut ChaCha8Rng, w: &Window) -> Complex64 {
    c(
        rng.gen_range(w.re_min..=w.re_max),
        rng.gen_range(w.im_min..=w.im_max),
    )
}

/// The probe together with four axis-aligned nudges of size `eps`. A point
/// counts as localized when any of the five lands inside the region, which
/// absorbs eigensolver noise at region boundaries.
pub fn nudges(z: Complex64, eps: f64) -> [Complex64; 5] {
    [
        z,
        z + c(eps, 0.0),
        z - c(eps, 0.0),
        z + c(0.0, eps),
        z - c(0.0, eps),
    ]
}

pub fn diag_distance(a: &CMatrix, lambda: Complex64) -> f64 {
    (0..a.rows())
        .map(|i| (lambda - a.get(i, i)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Literal quotient form of the column-convention Schur pair sum
///
///   R_kj = sum_{i != k} | a_ik a_kj / (lam - a_kk) + (1 - delta_ij) a_ij |
///                       / | lam - a_jj |
///
/// Only meaningful when lambda stays away from the diagonal entries; used
/// as an independent cross-check of the multiplied-through predicates.
pub fn quotient_schur_r(a: &CMatrix, k: usize, j: usize, lambda: Complex64) -> f64 {
    let n = a.rows();
    let dk = lambda - a.get(k, k);
    let dj = lambda - a.get(j, j);
    let mut sum = 0.0;
    for i in 0..n {
        if i == k {
            continue;
        }
        let aij = if i == j { c(0.0, 0.0) } else { a.get(i, j) };
        sum += ((a.get(i, k) * a.get(k, j) / dk + aij) / dj).norm();
    }
    sum
}

/// Quotient form of the modified pair sum, with the moduli pulled inside.
pub fn quotient_modified_r(a: &CMatrix, k: usize, j: usize, lambda: Complex64) -> f64 {
    let n = a.rows();
    let dk = (lambda - a.get(k, k)).norm();
    let dj = (lambda - a.get(j, j)).norm();
    let mut sum = 0.0;
    for i in 0..n {
        if i == k {
            continue;
        }
        let aij = if i == j { 0.0 } else { a.get(i, j).norm() };
        sum += (a.get(i, k).norm() * a.get(k, j).norm() / dk + aij) / dj;
    }
    sum
}

/// Quotient form of the Cassini pair test: product of off-diagonal column
/// radii over the product of distances to the two diagonal entries.
pub fn quotient_cassini_r(a: &CMatrix, i: usize, j: usize, lambda: Complex64) -> f64 {
    let ri = schurloc::regions::col_radius(a, i);
    let rj = schurloc::regions::col_radius(a, j);
    let di = (lambda - a.get(i, i)).norm();
    let dj = (lambda - a.get(j, j)).norm();
    ri * rj / (di * dj)
}

/// True when lambda sits within `eps` of the decision boundary of any
/// scalar pair or disk inequality, in the multiplied-through form
/// |LHS - RHS| <= eps (1 + LHS + RHS). Probes this close are redrawn by
/// tests that compare two evaluation orders booleanly: the region
/// definitions are exact set definitions, but two float evaluation orders
/// may disagree inside a band of rounding width around a boundary.
pub fn near_scalar_boundary(a: &CMatrix, lambda: Complex64, eps: f64) -> bool {
    let n = a.rows();
    let close = |lhs: f64, rhs: f64| (lhs - rhs).abs() <= eps * (1.0 + lhs + rhs);
    for j in 0..n {
        let lhs = (lambda - a.get(j, j)).norm();
        if close(lhs, schurloc::regions::col_radius(a, j)) {
            return true;
        }
    }
    for k in 0..n {
        for j in 0..n {
            if j == k {
                continue;
            }
            let rhs = (lambda - a.get(k, k)).norm() * (lambda - a.get(j, j)).norm();
            if k < j {
                let prod =
                    schurloc::regions::col_radius(a, k) * schurloc::regions::col_radius(a, j);
                if close(prod, rhs) {
                    return true;
                }
            }
            let dk = lambda - a.get(k, k);
            let mut schur_lhs = 0.0;
            let mut modified_lhs = 0.0;
            for i in 0..n {
                if i == k {
                    continue;
                }
                let aij = if i == j { c(0.0, 0.0) } else { a.get(i, j) };
                schur_lhs += (a.get(i, k) * a.get(k, j) + dk * aij).norm();
                modified_lhs += a.get(i, k).norm() * a.get(k, j).norm()
                    + if i == j { 0.0 } else { a.get(i, j).norm() * dk.norm() };
            }
            if close(schur_lhs, rhs) || close(modified_lhs, rhs) {
                return true;
            }
        }
    }
    false
}
