//! Eigenvalue localization for complex matrices.
//!
//! Four region families over the complex plane are supported, each of which
//! contains the spectrum of a square complex matrix:
//!
//! * Gershgorin disks (union over diagonal positions),
//! * Cassini ovals (union over index pairs),
//! * Schur sets built from Schur-complement resolvent sums (intersection over
//!   pivots of unions over partners),
//! * modified Schur sets, a term-wise enlargement of the Schur sets.
//!
//! The families are available both for plain scalar matrices ([`regions`])
//! and for block-partitioned matrices under the induced l1 operator norm
//! ([`block`]). The [`geometry`] module turns membership predicates into
//! grid masks, SVG contours, and real-axis interval unions; [`matrix`] holds
//! the dense types together with the LU and QR kernels that back everything.

pub mod block;
mod eig;
pub mod geometry;
pub mod io;
pub mod jsonfmt;
mod lu;
pub mod matrix;
pub mod regions;

pub use matrix::{BlockMatrix, CMatrix, MatrixError, Permutation, Spectrum};
