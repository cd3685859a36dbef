//! Matrix JSON input and output.
//!
//! Schema: `{"n": 3, "data": [[[re, im], ...], ...], "partition": [2, 1]}`.
//! `data` holds `n` rows of `n` entries, each entry a two-element
//! `[re, im]` array. `partition` is optional; when absent every block is a
//! single scalar entry.

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::jsonfmt;
use crate::matrix::{BlockMatrix, CMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid matrix: {0}")]
    Schema(String),
}

#[derive(Deserialize)]
struct RawMatrix {
    n: usize,
    data: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    partition: Option<Vec<usize>>,
}

pub fn matrix_from_json_str(s: &str) -> Result<BlockMatrix, ParseError> {
    let raw: RawMatrix = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
    if raw.n == 0 {
        return Err(ParseError::Schema("n must be at least 1".into()));
    }
    if raw.data.len() != raw.n {
        return Err(ParseError::Schema(format!(
            "expected {} rows, found {}",
            raw.n,
            raw.data.len()
        )));
    }
    let mut entries = Vec::with_capacity(raw.n * raw.n);
    for (i, row) in raw.data.iter().enumerate() {
        if row.len() != raw.n {
            return Err(ParseError::Schema(format!(
                "row {} has {} entries, expected {}",
                i,
                row.len(),
                raw.n
            )));
        }
        for &[re, im] in row {
            entries.push(Complex64::new(re, im));
        }
    }
    let base = CMatrix::new(raw.n, raw.n, entries)
        .map_err(|e| ParseError::Schema(e.to_string()))?;
    let partition = raw.partition.unwrap_or_else(|| vec![1; raw.n]);
    BlockMatrix::new(base, partition).map_err(|e| ParseError::Schema(e.to_string()))
}

/// Deterministic serialization: fixed key order, fixed float format, no
/// whitespace. The partition is always written out.
pub fn matrix_to_json_string(m: &BlockMatrix) -> String {
    let base = m.base();
    let n = base.rows();
    let mut out = String::new();
    out.push_str(&format!("{{\"n\":{n},\"data\":["));
    for i in 0..n {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for j in 0..n {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&jsonfmt::complex_pair(base.get(i, j)));
        }
        out.push(']');
    }
    out.push_str("],\"partition\":[");
    for (i, d) in m.partition().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&d.to_string());
    }
    out.push_str("]}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scalar_matrix_with_default_partition() {
        let m = matrix_from_json_str(
            r#"{"n": 2, "data": [[[1, 0], [0, -2]], [[0.5, 1], [3, 0]]]}"#,
        )
        .unwrap();
        assert_eq!(m.partition(), &[1, 1]);
        assert_eq!(m.base().get(1, 0), Complex64::new(0.5, 1.0));
    }

    #[test]
    fn parses_partitioned_matrix() {
        let m = matrix_from_json_str(
            r#"{"n": 3,
                "data": [[[1,0],[0,0],[0,0]],
                         [[0,0],[2,0],[0,0]],
                         [[0,0],[0,0],[3,0]]],
                "partition": [2, 1]}"#,
        )
        .unwrap();
        assert_eq!(m.block_count(), 2);
        assert_eq!(m.block_dim(0), 2);
    }

    #[test]
    fn rejects_bad_json() {
        assert!(matches!(
            matrix_from_json_str("{woops"),
            Err(ParseError::Json(_))
        ));
    }

    #[test]
    fn rejects_row_count_mismatch() {
        let err = matrix_from_json_str(r#"{"n": 2, "data": [[[1,0],[0,0]]]}"#).unwrap_err();
        assert!(matches!(err, ParseError::Schema(_)), "{err}");
    }

    #[test]
    fn rejects_row_length_mismatch() {
        let err =
            matrix_from_json_str(r#"{"n": 2, "data": [[[1,0],[0,0]], [[1,0]]]}"#).unwrap_err();
        assert!(matches!(err, ParseError::Schema(_)), "{err}");
    }

    #[test]
    fn rejects_entry_that_is_not_a_pair() {
        assert!(matrix_from_json_str(r#"{"n": 1, "data": [[[1, 0, 0]]]}"#).is_err());
        assert!(matrix_from_json_str(r#"{"n": 1, "data": [[1]]}"#).is_err());
    }

    #[test]
    fn rejects_partition_that_does_not_sum_to_n() {
        let err = matrix_from_json_str(
            r#"{"n": 2, "data": [[[1,0],[0,0]], [[0,0],[1,0]]], "partition": [3]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::Schema(_)), "{err}");
    }

    #[test]
    fn round_trips_through_serialization() {
        let src = r#"{"n": 2, "data": [[[1.5, -2], [0, 0.25]], [[3, 1e-3], [-0.125, 0]]], "partition": [1, 1]}"#;
        let m = matrix_from_json_str(src).unwrap();
        let text = matrix_to_json_string(&m);
        let back = matrix_from_json_str(&text).unwrap();
        assert_eq!(back, m);
        // serialization is deterministic
        assert_eq!(text, matrix_to_json_string(&back));
    }
}
