//! Deterministic JSON fragments: fixed float formatting and string escaping.
//!
//! All reports use `{:.16e}` for floats (17 significant digits), enough to
//! round-trip any f64 and byte-stable across runs and platforms.

use num_complex::Complex64;

pub fn f64_fmt(x: f64) -> String {
    format!("{:.16e}", x)
}

/// A complex number as a two-element JSON array `[re, im]`.
pub fn complex_pair(z: Complex64) -> String {
    format!("[{},{}]", f64_fmt(z.re), f64_fmt(z.im))
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            ch if (ch as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", ch as u32)),
            ch => out.push(ch),
        }
    }
    out
}
