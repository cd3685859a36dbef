//! Region geometry artifacts: complex-plane windows, rasterized masks, mask
//! algebra, marching-squares contours as SVG, and real-axis interval
//! extraction for Hermitian inputs.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::jsonfmt;
use crate::matrix::{BlockMatrix, CMatrix};
use crate::regions::col_radius;

pub const DEFAULT_RESOLUTION: usize = 1024;
pub const DEFAULT_SAMPLES: usize = 4096;
pub const MIN_RESOLUTION: usize = 16;
pub const MAX_RESOLUTION: usize = 8192;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("resolution {0} outside [{MIN_RESOLUTION}, {MAX_RESOLUTION}]")]
    BadResolution(usize),
    #[error("window bounds must satisfy re_min < re_max and im_min < im_max")]
    BadBounds,
    #[error("masks live on different windows")]
    WindowMismatch,
    #[error("interval range is empty")]
    RangeEmpty,
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// Axis-aligned rectangle in the complex plane plus a square pixel grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub resolution: usize,
}

impl Window {
    pub fn new(
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
        resolution: usize,
    ) -> Result<Self, GeometryError> {
        if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
            return Err(GeometryError::BadResolution(resolution));
        }
        if !(re_min < re_max && im_min < im_max)
            || !re_min.is_finite()
            || !re_max.is_finite()
            || !im_min.is_finite()
            || !im_max.is_finite()
        {
            return Err(GeometryError::BadBounds);
        }
        Ok(Window {
            re_min,
            re_max,
            im_min,
            im_max,
            resolution,
        })
    }

    pub fn pitch_re(&self) -> f64 {
        (self.re_max - self.re_min) / self.resolution as f64
    }

    pub fn pitch_im(&self) -> f64 {
        (self.im_max - self.im_min) / self.resolution as f64
    }

    /// Center of pixel (row, col); row 0 is the top of the window.
    pub fn pixel_center(&self, row: usize, col: usize) -> Complex64 {
        Complex64::new(
            self.re_min + (col as f64 + 0.5) * self.pitch_re(),
            self.im_max - (row as f64 + 0.5) * self.pitch_im(),
        )
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }
}

/// Disk centers and radii whose union bounds the spectrum, then a bounding
/// box padded by a quarter of each width per side. A degenerate axis (all
/// disks at one point) widens to plus/minus 1 around it.
fn window_of_disks(disks: &[(Complex64, f64)], resolution: usize) -> Window {
    let mut re_min = f64::INFINITY;
    let mut re_max = f64::NEG_INFINITY;
    let mut im_min = f64::INFINITY;
    let mut im_max = f64::NEG_INFINITY;
    for &(center, radius) in disks {
        re_min = re_min.min(center.re - radius);
        re_max = re_max.max(center.re + radius);
        im_min = im_min.min(center.im - radius);
        im_max = im_max.max(center.im + radius);
    }
    let expand = |lo: &mut f64, hi: &mut f64| {
        if *hi > *lo {
            let pad = 0.25 * (*hi - *lo);
            *lo -= pad;
            *hi += pad;
        } else {
            *lo -= 1.0;
            *hi += 1.0;
        }
    };
    expand(&mut re_min, &mut re_max);
    expand(&mut im_min, &mut im_max);
    Window {
        re_min,
        re_max,
        im_min,
        im_max,
        resolution,
    }
}

/// Window from the scalar Gershgorin disks (column radii).
pub fn auto_window(a: &CMatrix, resolution: usize) -> Window {
    let disks: Vec<(Complex64, f64)> = (0..a.rows())
        .map(|j| (a.get(j, j), col_radius(a, j)))
        .collect();
    window_of_disks(&disks, resolution)
}

/// Window from block-level disk bounds: each block contributes the disk
/// centered at its mean diagonal value whose radius covers the spread of
/// the block around that mean plus the off-diagonal block norms. For the
/// all-ones partition this is exactly the scalar construction.
pub fn auto_window_block(bm: &BlockMatrix, resolution: usize) -> Window {
    let n = bm.block_count();
    let disks: Vec<(Complex64, f64)> = (0..n)
        .map(|j| {
            let d = bm.block_dim(j) as f64;
            let djj = bm.block(j, j).expect("in range");
            let center = djj.trace() / d;
            let mut radius = djj.shifted(center).l1_op_norm();
            for i in 0..n {
                if i != j {
                    radius += bm.block(i, j).expect("in range").l1_op_norm();
                }
            }
            (center, radius)
        })
        .collect();
    window_of_disks(&disks, resolution)
}

/// Boolean raster over a window, pixel-center sampled, row-major with row 0
/// at the top.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMask {
    window: Window,
    bits: Vec<bool>,
}

/// Evaluates the predicate at every pixel center, splitting rows across
/// threads. Deterministic: the output depends only on predicate values.
pub fn rasterize(window: &Window, pred: impl Fn(Complex64) -> bool + Sync) -> GridMask {
    let res = window.resolution;
    let rows: Vec<Vec<bool>> = (0..res)
        .into_par_iter()
        .map(|r| (0..res).map(|c| pred(window.pixel_center(r, c))).collect())
        .collect();
    GridMask {
        window: *window,
        bits: rows.concat(),
    }
}

impl GridMask {
    pub fn window(&self) -> &Window {
        &self.window
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.window.resolution + col]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Set-pixel count times pixel area.
    pub fn area(&self) -> f64 {
        self.count() as f64 * self.window.pitch_re() * self.window.pitch_im()
    }

    /// Bitwise implication: every set pixel of `self` is set in `other`.
    pub fn subset_of(&self, other: &GridMask) -> Result<bool, GeometryError> {
        if self.window != other.window {
            return Err(GeometryError::WindowMismatch);
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .all(|(&a, &b)| !a || b))
    }

    /// Morphological erosion with the full 8-neighborhood, `passes` times.
    /// Pixels outside the window count as unset, so the rim always erodes.
    pub fn erode(&self, passes: usize) -> GridMask {
        let res = self.window.resolution;
        let mut current = self.bits.clone();
        for _ in 0..passes {
            let prev = current.clone();
            let at = |r: isize, c: isize| -> bool {
                if r < 0 || c < 0 || r >= res as isize || c >= res as isize {
                    false
                } else {
                    prev[r as usize * res + c as usize]
                }
            };
            for r in 0..res as isize {
                for c in 0..res as isize {
                    let keep = at(r, c)
                        && at(r - 1, c - 1)
                        && at(r - 1, c)
                        && at(r - 1, c + 1)
                        && at(r, c - 1)
                        && at(r, c + 1)
                        && at(r + 1, c - 1)
                        && at(r + 1, c)
                        && at(r + 1, c + 1);
                    current[r as usize * res + c as usize] = keep;
                }
            }
        }
        GridMask {
            window: self.window,
            bits: current,
        }
    }

    /// Binary PBM (P4): header, then rows packed big-endian, 1 = set pixel.
    pub fn pbm_bytes(&self) -> Vec<u8> {
        let res = self.window.resolution;
        let mut out = format!("P4\n{res} {res}\n").into_bytes();
        for r in 0..res {
            let mut byte = 0u8;
            let mut filled = 0;
            for c in 0..res {
                byte <<= 1;
                if self.get(r, c) {
                    byte |= 1;
                }
                filled += 1;
                if filled == 8 {
                    out.push(byte);
                    byte = 0;
                    filled = 0;
                }
            }
            if filled > 0 {
                byte <<= 8 - filled;
                out.push(byte);
            }
        }
        out
    }

    /// JSON sidecar describing the window a PBM file was rasterized over.
    pub fn sidecar_json(&self) -> String {
        format!(
            "{{\"window\":{{\"re_min\":{},\"re_max\":{},\"im_min\":{},\"im_max\":{}}},\"resolution\":{}}}",
            jsonfmt::f64_fmt(self.window.re_min),
            jsonfmt::f64_fmt(self.window.re_max),
            jsonfmt::f64_fmt(self.window.im_min),
            jsonfmt::f64_fmt(self.window.im_max),
            self.window.resolution
        )
    }

    /// Closed boundary loops in pixel coordinates (x = column direction,
    /// y = row direction, one unit per pixel), from marching squares over
    /// the mask padded virtually with unset pixels. Loop vertices sit on
    /// half-integer coordinates; each loop is closed (first point = last).
    pub fn contours(&self) -> Vec<Vec<(f64, f64)>> {
        let res = self.window.resolution as isize;
        let at = |r: isize, c: isize| -> bool {
            if r < 0 || c < 0 || r >= res || c >= res {
                false
            } else {
                self.get(r as usize, c as usize)
            }
        };
        // segment endpoints as doubled coordinates (exact integers)
        type Key = (i64, i64);
        let mut segments: Vec<(Key, Key)> = Vec::new();
        for r in -1..res {
            for c in -1..res {
                let tl = at(r, c) as u8;
                let tr = at(r, c + 1) as u8;
                let br = at(r + 1, c + 1) as u8;
                let bl = at(r + 1, c) as u8;
                let case = tl | (tr << 1) | (br << 2) | (bl << 3);
                // pixel centers are at (col + 0.5, row + 0.5); edge midpoints
                // doubled: top (2c+2, 2r+1), right (2c+3, 2r+2),
                // bottom (2c+2, 2r+3), left (2c+1, 2r+2)
                let (x, y) = (2 * c as i64, 2 * r as i64);
                let top = (x + 2, y + 1);
                let right = (x + 3, y + 2);
                let bottom = (x + 2, y + 3);
                let left = (x + 1, y + 2);
                let mut push = |a: Key, b: Key| segments.push((a, b));
                match case {
                    1 => push(left, top),
                    2 => push(top, right),
                    3 => push(left, right),
                    4 => push(right, bottom),
                    // opposite corners: treat the cell center as outside,
                    // giving two separating segments
                    5 => {
                        push(left, top);
                        push(right, bottom);
                    }
                    6 => push(top, bottom),
                    7 => push(left, bottom),
                    8 => push(bottom, left),
                    9 => push(top, bottom),
                    10 => {
                        push(top, right);
                        push(bottom, left);
                    }
                    11 => push(bottom, right),
                    12 => push(right, left),
                    13 => push(top, right),
                    14 => push(top, left),
                    _ => {}
                }
            }
        }
        // every contour point touches exactly two segments; walk them into
        // closed loops, consuming segments in deterministic order
        let mut incident: HashMap<Key, Vec<usize>> = HashMap::new();
        for (idx, &(a, b)) in segments.iter().enumerate() {
            incident.entry(a).or_default().push(idx);
            incident.entry(b).or_default().push(idx);
        }
        let mut used = vec![false; segments.len()];
        let mut loops = Vec::new();
        for start in 0..segments.len() {
            if used[start] {
                continue;
            }
            used[start] = true;
            let (first, mut current) = segments[start];
            let mut points = vec![first, current];
            while current != first {
                let next_seg = incident[&current]
                    .iter()
                    .copied()
                    .find(|&s| !used[s])
                    .expect("contour endpoints pair up");
                used[next_seg] = true;
                let (a, b) = segments[next_seg];
                current = if a == current { b } else { a };
                points.push(current);
            }
            loops.push(
                points
                    .into_iter()
                    .map(|(x, y)| (x as f64 / 2.0, y as f64 / 2.0))
                    .collect(),
            );
        }
        loops
    }
}

const SVG_PALETTE: [&str; 6] = [
    "#1f6feb", "#d1242f", "#1a7f37", "#8250df", "#bf8700", "#0f748f",
];

/// One SVG document containing the boundary contours of several masks over
/// the same window, one color per layer, with window coordinates annotated
/// on the frame. Pixel units: the drawing is resolution x resolution.
pub fn svg_overlay(layers: &[(&GridMask, &str)]) -> Result<String, GeometryError> {
    let Some((first, _)) = layers.first() else {
        return Err(GeometryError::WindowMismatch);
    };
    let w = *first.window();
    if layers.iter().any(|(m, _)| *m.window() != w) {
        return Err(GeometryError::WindowMismatch);
    }
    let res = w.resolution;
    let margin = (res as f64 / 8.0).max(40.0);
    let total = res as f64 + 2.0 * margin;
    let font = (res as f64 / 48.0).max(10.0);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{m} {m} {r} {r}\" \
         width=\"{t}\" height=\"{t}\">\n",
        m = -margin,
        r = total,
        t = total,
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{res}\" height=\"{res}\" fill=\"none\" \
         stroke=\"#888\" stroke-width=\"1\"/>\n"
    ));
    // axis annotation: window coordinates at the frame corners
    let label = |x: f64, y: f64, anchor: &str, text: String| {
        format!(
            "<text x=\"{x}\" y=\"{y}\" font-size=\"{font}\" text-anchor=\"{anchor}\" \
             fill=\"#444\">{text}</text>\n"
        )
    };
    out.push_str(&label(
        0.0,
        res as f64 + font * 1.5,
        "start",
        format!("re = {}", w.re_min),
    ));
    out.push_str(&label(
        res as f64,
        res as f64 + font * 1.5,
        "end",
        format!("re = {}", w.re_max),
    ));
    out.push_str(&label(-font * 0.5, res as f64, "end", format!("im = {}", w.im_min)));
    out.push_str(&label(-font * 0.5, font, "end", format!("im = {}", w.im_max)));
    for (idx, (mask, name)) in layers.iter().enumerate() {
        let color = SVG_PALETTE[idx % SVG_PALETTE.len()];
        out.push_str(&format!(
            "<g stroke=\"{color}\" fill=\"none\" stroke-width=\"1.5\">\n"
        ));
        for contour in mask.contours() {
            let mut d = String::new();
            for (i, (x, y)) in contour.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                d.push_str(&format!("{cmd}{x} {y} "));
            }
            d.push('Z');
            out.push_str(&format!("<path d=\"{}\"/>\n", d.trim()));
        }
        out.push_str("</g>\n");
        let ly = -margin + font * (1.5 * idx as f64 + 1.5);
        out.push_str(&format!(
            "<text x=\"0\" y=\"{ly}\" font-size=\"{font}\" fill=\"{color}\">{}</text>\n",
            jsonfmt::json_escape(name)
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Boundary contours of a single mask as an SVG document.
pub fn svg_contours(mask: &GridMask, name: &str) -> String {
    svg_overlay(&[(mask, name)]).expect("single layer always shares its window")
}

/// Sorted disjoint closed intervals on the real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Membership with the intervals inflated by `slack` on both ends.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.intervals
            .iter()
            .any(|&(a, b)| x >= a - slack && x <= b + slack)
    }

    pub fn to_json(&self) -> String {
        let body: Vec<String> = self
            .intervals
            .iter()
            .map(|&(a, b)| format!("[{},{}]", jsonfmt::f64_fmt(a), jsonfmt::f64_fmt(b)))
            .collect();
        format!("{{\"intervals\":[{}]}}", body.join(","))
    }
}

/// Real sections of a region: scans `[lo, hi]` with `samples` uniform
/// points plus the given seed abscissas (deduplicated, clamped into range),
/// bisects every membership flip to width `tol`, and merges intervals whose
/// gap is below `tol`. Seeds matter for features thinner than the sample
/// spacing, like the point intervals of a diagonal matrix.
pub fn extract_real_intervals(
    pred: impl Fn(f64) -> bool,
    lo: f64,
    hi: f64,
    tol: f64,
    samples: usize,
    seeds: &[f64],
) -> Result<IntervalUnion, GeometryError> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(GeometryError::RangeEmpty);
    }
    if !(tol > 0.0) {
        return Err(GeometryError::BadTolerance);
    }
    let samples = samples.max(2);
    let mut xs: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    xs.extend(seeds.iter().copied().filter(|x| *x >= lo && *x <= hi));
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();

    let flags: Vec<bool> = xs.iter().map(|&x| pred(x)).collect();
    let bisect = |mut inside: f64, mut outside: f64| -> f64 {
        for _ in 0..60 {
            if (inside - outside).abs() <= tol {
                break;
            }
            let mid = 0.5 * (inside + outside);
            if pred(mid) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        0.5 * (inside + outside)
    };

    let mut raw: Vec<(f64, f64)> = Vec::new();
    let mut start: Option<f64> = None;
    for i in 0..xs.len() {
        if flags[i] && start.is_none() {
            start = Some(if i == 0 { xs[0] } else { bisect(xs[i], xs[i - 1]) });
        }
        if !flags[i] {
            if let Some(s) = start.take() {
                raw.push((s, bisect(xs[i - 1], xs[i])));
            }
        }
    }
    if let Some(s) = start {
        raw.push((s, hi));
    }

    // merge gaps below tol
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (a, b) in raw {
        match merged.last_mut() {
            Some(last) if a - last.1 < tol => last.1 = b.max(last.1),
            _ => merged.push((a, b)),
        }
    }
    Ok(IntervalUnion { intervals: merged })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn window_validation() {
        assert!(Window::new(0.0, 1.0, 0.0, 1.0, 64).is_ok());
        assert!(matches!(
            Window::new(0.0, 1.0, 0.0, 1.0, 15),
            Err(GeometryError::BadResolution(15))
        ));
        assert!(matches!(
            Window::new(0.0, 1.0, 0.0, 1.0, 8193),
            Err(GeometryError::BadResolution(8193))
        ));
        assert!(matches!(
            Window::new(1.0, 1.0, 0.0, 1.0, 64),
            Err(GeometryError::BadBounds)
        ));
    }

    #[test]
    fn auto_window_of_all_ones_pads_the_disk_box() {
        let a = CMatrix::from_fn(3, 3, |_, _| c(1.0, 0.0));
        let w = auto_window(&a, 256);
        // disks: center 1, radius 2 -> box [-1,3]x[-2,2], padded by a quarter
        assert_eq!(w.re_min, -2.0);
        assert_eq!(w.re_max, 4.0);
        assert_eq!(w.im_min, -3.0);
        assert_eq!(w.im_max, 3.0);
    }

    #[test]
    fn auto_window_degenerate_point_falls_back_to_unit_box() {
        let a = CMatrix::zeros(1, 1);
        let w = auto_window(&a, 64);
        assert_eq!(
            (w.re_min, w.re_max, w.im_min, w.im_max),
            (-1.0, 1.0, -1.0, 1.0)
        );
    }

    #[test]
    fn block_window_with_scalar_partition_equals_scalar_window() {
        let a = CMatrix::from_fn(4, 4, |i, j| c((i * 4 + j) as f64 * 0.3 - 2.0, (i + j) as f64));
        let bm = BlockMatrix::scalar(a.clone()).unwrap();
        assert_eq!(auto_window_block(&bm, 128), auto_window(&a, 128));
    }

    #[test]
    fn rasterize_constant_true_sets_every_pixel() {
        let w = Window::new(-1.0, 1.0, -1.0, 1.0, 16).unwrap();
        let mask = rasterize(&w, |_| true);
        assert_eq!(mask.count(), 256);
        assert!((mask.area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rasterize_zero_radius_point_hits_one_aligned_center() {
        // pitch 1, centers at half-integers; the point sits exactly on one
        let w = Window::new(0.0, 16.0, 0.0, 16.0, 16).unwrap();
        let target = c(3.5, 8.5);
        let mask = rasterize(&w, |z| z == target);
        assert_eq!(mask.count(), 1);
        assert!(mask.get(7, 3)); // row 7 center has im = 16 - 7.5 = 8.5
    }

    #[test]
    fn subset_and_window_mismatch() {
        let w = Window::new(-2.0, 2.0, -2.0, 2.0, 32).unwrap();
        let small = rasterize(&w, |z| z.norm() <= 1.0);
        let big = rasterize(&w, |z| z.norm() <= 1.5);
        assert!(small.subset_of(&big).unwrap());
        assert!(!big.subset_of(&small).unwrap());
        assert!(small.subset_of(&small).unwrap());
        let other = Window::new(-2.0, 2.0, -2.0, 2.0, 64).unwrap();
        let differently_sized = rasterize(&other, |_| true);
        assert_eq!(
            small.subset_of(&differently_sized),
            Err(GeometryError::WindowMismatch)
        );
    }

    #[test]
    fn erosion_shrinks_a_square_block() {
        let w = Window::new(0.0, 16.0, 0.0, 16.0, 16).unwrap();
        // 3x3 block of pixels: rows 5..8, cols 5..8
        let mask = rasterize(&w, |z| {
            (5.0..8.0).contains(&z.re) && (8.0..11.0).contains(&z.im)
        });
        assert_eq!(mask.count(), 9);
        let eroded = mask.erode(1);
        assert_eq!(eroded.count(), 1);
        assert_eq!(eroded.erode(1).count(), 0);
        // erosion never grows
        assert!(eroded.subset_of(&mask).unwrap());
    }

    #[test]
    fn pbm_bytes_have_header_and_packed_rows() {
        let w = Window::new(0.0, 16.0, 0.0, 16.0, 16).unwrap();
        let mask = rasterize(&w, |z| z.re < 8.0); // left half set
        let bytes = mask.pbm_bytes();
        let header = b"P4\n16 16\n";
        assert_eq!(&bytes[..header.len()], header);
        let body = &bytes[header.len()..];
        assert_eq!(body.len(), 16 * 2); // 16 rows, 2 bytes each
        for row in 0..16 {
            assert_eq!(body[row * 2], 0xFF, "left byte of row {row}");
            assert_eq!(body[row * 2 + 1], 0x00, "right byte of row {row}");
        }
    }

    #[test]
    fn sidecar_json_is_fixed_format() {
        let w = Window::new(-1.0, 1.0, -0.5, 0.5, 32).unwrap();
        let mask = rasterize(&w, |_| false);
        assert_eq!(
            mask.sidecar_json(),
            "{\"window\":{\"re_min\":-1.0000000000000000e0,\"re_max\":1.0000000000000000e0,\
             \"im_min\":-5.0000000000000000e-1,\"im_max\":5.0000000000000000e-1},\"resolution\":32}"
        );
    }

    #[test]
    fn contours_of_full_mask_form_one_rectangle() {
        let w = Window::new(0.0, 16.0, 0.0, 16.0, 16).unwrap();
        let mask = rasterize(&w, |_| true);
        let loops = mask.contours();
        assert_eq!(loops.len(), 1);
        let lp = &loops[0];
        assert_eq!(lp.first(), lp.last());
        // rectangle around all pixel centers: x and y span [0, 16]
        let xs: Vec<f64> = lp.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = lp.iter().map(|p| p.1).collect();
        let fmin = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
        let fmax = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(fmin(&xs), 0.0);
        assert_eq!(fmax(&xs), 16.0);
        assert_eq!(fmin(&ys), 0.0);
        assert_eq!(fmax(&ys), 16.0);
    }

    #[test]
    fn contours_of_two_disks_are_two_loops() {
        let w = Window::new(-4.0, 4.0, -4.0, 4.0, 64).unwrap();
        let mask = rasterize(&w, |z| {
            (z - c(-2.0, 0.0)).norm() <= 1.0 || (z - c(2.0, 0.0)).norm() <= 1.0
        });
        assert_eq!(mask.contours().len(), 2);
    }

    #[test]
    fn svg_has_paths_and_labels() {
        let w = Window::new(-2.0, 2.0, -2.0, 2.0, 32).unwrap();
        let mask = rasterize(&w, |z| z.norm() <= 1.0);
        let svg = svg_contours(&mask, "disk");
        assert!(svg.starts_with("<svg "));
        assert!(svg.contains("<path d=\"M"));
        assert!(svg.contains("re = -2"));
        assert!(svg.contains("disk"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn interval_extraction_finds_a_plain_interval() {
        let iv = extract_real_intervals(|x| (x - 1.0).abs() <= 0.5, -2.0, 4.0, 1e-9, 4096, &[])
            .unwrap();
        assert_eq!(iv.len(), 1);
        let (a, b) = iv.intervals()[0];
        assert!((a - 0.5).abs() < 1e-6, "left endpoint {a}");
        assert!((b - 1.5).abs() < 1e-6, "right endpoint {b}");
    }

    #[test]
    fn interval_extraction_needs_seeds_for_point_features() {
        let points = [1.0, 2.0, 3.0];
        let pred = |x: f64| points.iter().any(|&p| x == p);
        let iv = extract_real_intervals(pred, 0.0, 4.0, 1e-9, 4096, &points).unwrap();
        assert_eq!(iv.len(), 3);
        for (i, &(a, b)) in iv.intervals().iter().enumerate() {
            assert!(b - a <= 2e-9);
            assert!((0.5 * (a + b) - points[i]).abs() < 1e-6);
        }
    }

    #[test]
    fn intervals_split_by_a_gap_wider_than_tol_stay_split() {
        let pred = |x: f64| (0.0..=1.0).contains(&x) || (1.5..=2.0).contains(&x);
        let iv = extract_real_intervals(pred, -1.0, 3.0, 1e-9, 4096, &[]).unwrap();
        assert_eq!(iv.len(), 2);
    }

    #[test]
    fn hairline_gap_below_tol_merges() {
        // false only at a single point, found via a seed; the two bisected
        // endpoints land within tol of each other and merge back
        let pred = |x: f64| x != 1.0;
        let iv = extract_real_intervals(pred, 0.0, 2.0, 1e-6, 64, &[1.0]).unwrap();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv.intervals()[0], (0.0, 2.0));
    }

    #[test]
    fn interval_errors() {
        assert_eq!(
            extract_real_intervals(|_| true, 1.0, 1.0, 1e-9, 16, &[]).unwrap_err(),
            GeometryError::RangeEmpty
        );
        assert_eq!(
            extract_real_intervals(|_| true, 0.0, 1.0, 0.0, 16, &[]).unwrap_err(),
            GeometryError::BadTolerance
        );
    }

    #[test]
    fn interval_union_membership_and_json() {
        let iv = extract_real_intervals(|x| (0.0..=1.0).contains(&x), -1.0, 2.0, 1e-9, 512, &[])
            .unwrap();
        assert!(iv.contains(0.5, 0.0));
        assert!(!iv.contains(1.1, 0.0));
        assert!(iv.contains(1.1, 0.2));
        let json = iv.to_json();
        assert!(json.starts_with("{\"intervals\":[["));
        assert!(json.ends_with("]]}"));
    }
}
