//! Hand-rolled report JSON with a fixed key order, so identical runs
//! produce byte-identical output.

use num_complex::Complex64;
use schurloc::geometry::{GridMask, IntervalUnion, Window};
use schurloc::jsonfmt::{complex_pair, f64_fmt};
use schurloc::regions::{inequalities_per_probe, Family};

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::Schur => "schur",
        Family::Cassini => "cassini",
        Family::ModifiedSchur => "modified_schur",
        Family::Gershgorin => "gershgorin",
    }
}

fn usize_array(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(|v| v.to_string()).collect();
    format!("[{}]", inner.join(","))
}

fn meta(command: &str, n: usize, partition: &[usize], block_mode: bool) -> String {
    format!(
        "\"schema\":\"schurloc/1\",\"command\":\"{command}\",\"n\":{n},\
         \"partition\":{},\"block_mode\":{block_mode}",
        usize_array(partition)
    )
}

fn methods_array(methods: &[Family]) -> String {
    let inner: Vec<String> = methods
        .iter()
        .map(|&m| format!("\"{}\"", family_name(m)))
        .collect();
    format!("[{}]", inner.join(","))
}

fn eigenvalue_array(values: &[Complex64]) -> String {
    let inner: Vec<String> = values.iter().map(|&z| complex_pair(z)).collect();
    format!("[{}]", inner.join(","))
}

fn cost_object(methods: &[Family], n_positions: usize, probes: u64) -> String {
    let per: Vec<String> = methods
        .iter()
        .map(|&m| {
            format!(
                "\"{}\":{}",
                family_name(m),
                inequalities_per_probe(m, n_positions)
            )
        })
        .collect();
    let total: Vec<String> = methods
        .iter()
        .map(|&m| {
            format!(
                "\"{}\":{}",
                family_name(m),
                inequalities_per_probe(m, n_positions) * probes
            )
        })
        .collect();
    format!(
        "{{\"probes\":{probes},\"inequalities_per_probe\":{{{}}},\"total_inequalities\":{{{}}}}}",
        per.join(","),
        total.join(",")
    )
}

pub struct LocateReport<'a> {
    pub n: usize,
    pub partition: &'a [usize],
    pub block_mode: bool,
    pub norm: &'a str,
    pub window: Window,
    pub methods: &'a [Family],
    pub masks: &'a [GridMask],
    pub n_positions: usize,
}

pub fn locate_json(r: &LocateReport) -> String {
    let w = &r.window;
    let areas: Vec<String> = r
        .methods
        .iter()
        .zip(r.masks)
        .map(|(&m, mask)| format!("\"{}\":{}", family_name(m), f64_fmt(mask.area())))
        .collect();
    let counts: Vec<String> = r
        .methods
        .iter()
        .zip(r.masks)
        .map(|(&m, mask)| format!("\"{}\":{}", family_name(m), mask.count()))
        .collect();
    let mut subsets = Vec::new();
    for (i, &mi) in r.methods.iter().enumerate() {
        for (j, &mj) in r.methods.iter().enumerate() {
            if i == j {
                continue;
            }
            let holds = r.masks[i].subset_of(&r.masks[j]).expect("shared window");
            subsets.push(format!(
                "{{\"subset\":\"{}\",\"superset\":\"{}\",\"holds\":{holds}}}",
                family_name(mi),
                family_name(mj)
            ));
        }
    }
    format!(
        "{{{},\"norm\":\"{}\",\"window\":{{\"re_min\":{},\"re_max\":{},\"im_min\":{},\
         \"im_max\":{}}},\"resolution\":{},\"methods\":{},\"areas\":{{{}}},\
         \"pixel_counts\":{{{}}},\"subsets\":[{}],\"cost\":{}}}",
        meta("locate", r.n, r.partition, r.block_mode),
        r.norm,
        f64_fmt(w.re_min),
        f64_fmt(w.re_max),
        f64_fmt(w.im_min),
        f64_fmt(w.im_max),
        w.resolution,
        methods_array(r.methods),
        areas.join(","),
        counts.join(","),
        subsets.join(","),
        cost_object(r.methods, r.n_positions, (w.resolution * w.resolution) as u64),
    )
}

/// Wraps the inclusion verdicts (already serialized by the library with the
/// key order eigenvalues, families, min_margin) in the report envelope.
pub fn verify_json(
    n: usize,
    partition: &[usize],
    block_mode: bool,
    methods: &[Family],
    inclusion_json: &str,
) -> String {
    let inner = inclusion_json
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .expect("object-shaped inclusion report");
    format!(
        "{{{},\"methods\":{},{inner}}}",
        meta("verify", n, partition, block_mode),
        methods_array(methods)
    )
}

pub struct IntervalsReport<'a> {
    pub n: usize,
    pub partition: &'a [usize],
    pub block_mode: bool,
    pub norm: &'a str,
    pub tol: f64,
    pub samples: usize,
    pub range: (f64, f64),
    pub methods: &'a [Family],
    pub unions: &'a [IntervalUnion],
    pub eigenvalues: &'a [Complex64],
    /// per method, per eigenvalue: index of the containing interval, -1 if none
    pub containing: &'a [Vec<i64>],
    pub n_positions: usize,
}

pub fn intervals_json(r: &IntervalsReport) -> String {
    let unions: Vec<String> = r
        .methods
        .iter()
        .zip(r.unions)
        .map(|(&m, u)| {
            let ivs: Vec<String> = u
                .intervals()
                .iter()
                .map(|&(a, b)| format!("[{},{}]", f64_fmt(a), f64_fmt(b)))
                .collect();
            format!("\"{}\":[{}]", family_name(m), ivs.join(","))
        })
        .collect();
    let containing: Vec<String> = r
        .methods
        .iter()
        .zip(r.containing)
        .map(|(&m, idx)| {
            let inner: Vec<String> = idx.iter().map(|v| v.to_string()).collect();
            format!("\"{}\":[{}]", family_name(m), inner.join(","))
        })
        .collect();
    format!(
        "{{{},\"norm\":\"{}\",\"tol\":{},\"samples\":{},\"range\":[{},{}],\"methods\":{},\
         \"intervals\":{{{}}},\"eigenvalues\":{},\"containing\":{{{}}},\"cost\":{}}}",
        meta("intervals", r.n, r.partition, r.block_mode),
        r.norm,
        f64_fmt(r.tol),
        r.samples,
        f64_fmt(r.range.0),
        f64_fmt(r.range.1),
        methods_array(r.methods),
        unions.join(","),
        eigenvalue_array(r.eigenvalues),
        containing.join(","),
        cost_object(
            r.methods,
            r.n_positions,
            (r.samples + r.eigenvalues.len() + r.n) as u64
        ),
    )
}
