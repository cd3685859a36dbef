use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use schurloc::block::{verify_inclusion, BlockError, LocusEvaluator};
use schurloc::geometry::{
    auto_window_block, extract_real_intervals, rasterize, GridMask, IntervalUnion, Window,
    DEFAULT_SAMPLES, MAX_RESOLUTION, MIN_RESOLUTION,
};
use schurloc::io::matrix_from_json_str;
use schurloc::regions::{locus_member, Family, NormMode};
use schurloc::{BlockMatrix, MatrixError};

use crate::report::{self, family_name};

/// Spectrum localization for complex matrices: Gershgorin disks, Cassini
/// ovals, and Schur-complement region families, for scalar and
/// block-partitioned inputs.
#[derive(Parser)]
#[command(name = "schurloc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Rasterize the requested region families over a shared window
    Locate(LocateArgs),
    /// Check that every eigenvalue sits inside the requested families
    Verify(VerifyArgs),
    /// Intersect the region families with the real axis (Hermitian input)
    Intervals(IntervalsArgs),
}

#[derive(Args)]
pub struct LocateArgs {
    /// Matrix JSON file ({"n":..,"data":[[[re,im],..],..],"partition":..})
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Comma list from schur, cassini, modified-schur, gershgorin
    #[arg(long, default_value = "schur,cassini,modified-schur,gershgorin")]
    pub methods: String,
    /// Off-diagonal aggregation for the Schur family: one or inf
    #[arg(long, default_value = "one")]
    pub norm: String,
    /// Grid resolution (pixels per side, 16..=8192)
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,
    /// auto, or explicit bounds re_min,re_max,im_min,im_max
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub window: String,
    /// Report destination (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Contour overlay of all requested methods
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Mask output; one <stem>.<method>.pbm plus JSON sidecar per method
    #[arg(long)]
    pub pbm: Option<PathBuf>,
    /// Require the input to be Hermitian to 1e-10
    #[arg(long)]
    pub hermitian: bool,
    /// Process every .json file under this directory instead of --input
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Matrix JSON file
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Families whose verdicts gate the exit code
    #[arg(long, default_value = "schur,cassini,modified-schur,gershgorin")]
    pub methods: String,
    /// Report destination (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Require the input to be Hermitian to 1e-10
    #[arg(long)]
    pub hermitian: bool,
    /// Process every .json file under this directory instead of --input
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Args)]
pub struct IntervalsArgs {
    /// Matrix JSON file; must be Hermitian to 1e-10
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Comma list from schur, cassini, modified-schur, gershgorin
    #[arg(long, default_value = "schur,cassini,modified-schur,gershgorin")]
    pub methods: String,
    /// Off-diagonal aggregation for the Schur family: one or inf
    #[arg(long, default_value = "one")]
    pub norm: String,
    /// Endpoint resolution for the interval bisection
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Report destination (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accepted for symmetry; intervals always run the Hermitian check
    #[arg(long)]
    pub hermitian: bool,
    /// Process every .json file under this directory instead of --input
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Debug)]
pub enum AppError {
    Parse(String),
    Config(String),
    Inclusion(String),
    NoConvergence(String),
    Hermitian(String),
}

impl AppError {
    pub fn code(&self) -> u8 {
        match self {
            AppError::Parse(_) => 2,
            AppError::Config(_) => 3,
            AppError::Inclusion(_) => 4,
            AppError::NoConvergence(_) => 5,
            AppError::Hermitian(_) => 6,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            AppError::Parse(_) => "ParseError",
            AppError::Config(_) => "ConfigError",
            AppError::Inclusion(_) => "InclusionFailed",
            AppError::NoConvergence(_) => "NoConvergence",
            AppError::Hermitian(_) => "HermitianCheckFailed",
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Parse(m)
            | AppError::Config(m)
            | AppError::Inclusion(m)
            | AppError::NoConvergence(m)
            | AppError::Hermitian(m) => m,
        }
    }

    pub fn line(&self) -> String {
        format!("error: {}: {}", self.label(), self.message())
    }

    /// Batch mode reports the most blocking failure class first.
    fn severity(&self) -> u8 {
        match self {
            AppError::Parse(_) => 5,
            AppError::Config(_) => 4,
            AppError::Hermitian(_) => 3,
            AppError::NoConvergence(_) => 2,
            AppError::Inclusion(_) => 1,
        }
    }

    fn same_class(&self, message: String) -> AppError {
        match self {
            AppError::Parse(_) => AppError::Parse(message),
            AppError::Config(_) => AppError::Config(message),
            AppError::Inclusion(_) => AppError::Inclusion(message),
            AppError::NoConvergence(_) => AppError::NoConvergence(message),
            AppError::Hermitian(_) => AppError::Hermitian(message),
        }
    }
}

fn config(msg: impl Into<String>) -> AppError {
    AppError::Config(msg.into())
}

pub fn run(cli: Cli) -> u8 {
    let outcome = match cli.command {
        Command::Locate(args) => run_locate(args),
        Command::Verify(args) => run_verify(args),
        Command::Intervals(args) => run_intervals(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.line());
            e.code()
        }
    }
}

fn parse_methods(list: &str) -> Result<Vec<Family>, AppError> {
    const CANON: [Family; 4] = [
        Family::Schur,
        Family::Cassini,
        Family::ModifiedSchur,
        Family::Gershgorin,
    ];
    let mut picked = [false; 4];
    for raw in list.split(',') {
        let idx = match raw.trim() {
            "schur" => 0,
            "cassini" => 1,
            "modified-schur" | "modified_schur" => 2,
            "gershgorin" => 3,
            other => {
                return Err(config(format!(
                    "unknown method {other:?}; choose from schur, cassini, modified-schur, gershgorin"
                )))
            }
        };
        picked[idx] = true;
    }
    Ok(CANON
        .iter()
        .enumerate()
        .filter(|&(i, _)| picked[i])
        .map(|(_, &f)| f)
        .collect())
}

fn parse_norm(name: &str) -> Result<NormMode, AppError> {
    match name {
        "one" => Ok(NormMode::One),
        "inf" => Ok(NormMode::Inf),
        other => Err(config(format!("unknown norm {other:?}; choose one or inf"))),
    }
}

fn norm_label(norm: NormMode) -> &'static str {
    match norm {
        NormMode::One => "one",
        NormMode::Inf => "inf",
    }
}

fn parse_window(spec: &str, grid: usize) -> Result<Option<Window>, AppError> {
    if spec == "auto" {
        return Ok(None);
    }
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 4 {
        return Err(config(
            "--window takes auto or four comma-separated bounds re_min,re_max,im_min,im_max",
        ));
    }
    let mut bounds = [0.0; 4];
    for (slot, part) in bounds.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|_| config(format!("window bound {part:?} is not a number")))?;
    }
    Window::new(bounds[0], bounds[1], bounds[2], bounds[3], grid)
        .map(Some)
        .map_err(|e| config(e.to_string()))
}

fn check_grid(grid: usize) -> Result<(), AppError> {
    if (MIN_RESOLUTION..=MAX_RESOLUTION).contains(&grid) {
        Ok(())
    } else {
        Err(config(format!(
            "--grid must lie in {MIN_RESOLUTION}..={MAX_RESOLUTION}, got {grid}"
        )))
    }
}

fn load(input: &Path) -> Result<(BlockMatrix, bool), AppError> {
    let text = fs::read_to_string(input)
        .map_err(|e| config(format!("cannot read {}: {e}", input.display())))?;
    let bm = matrix_from_json_str(&text)
        .map_err(|e| AppError::Parse(format!("{}: {e}", input.display())))?;
    let block_mode = bm.partition().iter().any(|&d| d > 1);
    Ok((bm, block_mode))
}

fn check_positions(bm: &BlockMatrix, input: &Path) -> Result<(), AppError> {
    if bm.block_count() < 2 {
        return Err(config(format!(
            "{}: localization needs at least two diagonal positions",
            input.display()
        )));
    }
    Ok(())
}

fn check_oracle_size(bm: &BlockMatrix, input: &Path) -> Result<(), AppError> {
    if bm.base().rows() > 64 {
        return Err(config(format!(
            "{}: the eigenvalue oracle is limited to n <= 64",
            input.display()
        )));
    }
    Ok(())
}

fn check_hermitian(bm: &BlockMatrix, input: &Path) -> Result<(), AppError> {
    if bm.base().is_hermitian(1e-10) {
        Ok(())
    } else {
        Err(AppError::Hermitian(format!(
            "{}: input is not Hermitian to 1e-10",
            input.display()
        )))
    }
}

fn check_norm_mode(block_mode: bool, norm: NormMode, input: &Path) -> Result<(), AppError> {
    if block_mode && norm == NormMode::Inf {
        Err(config(format!(
            "{}: --norm inf applies to scalar (all-ones partition) inputs only",
            input.display()
        )))
    } else {
        Ok(())
    }
}

fn eigens_of(bm: &BlockMatrix, input: &Path) -> Result<Vec<Complex64>, AppError> {
    match bm.base().eigenvalues() {
        Ok(s) => Ok(s.values().to_vec()),
        Err(MatrixError::NoConvergence) => Err(AppError::NoConvergence(format!(
            "{}: the QR iteration did not converge",
            input.display()
        ))),
        Err(e) => Err(config(format!("{}: {e}", input.display()))),
    }
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), AppError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let write = || -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(bytes)?;
        #[cfg(unix)]
        {
            use std::os::unix::fs::PermissionsExt;
            tmp.as_file().set_permissions(fs::Permissions::from_mode(0o644))?;
        }
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    };
    write().map_err(|e| config(format!("cannot write {}: {e}", path.display())))
}

fn emit_report(json: &str, out: Option<&Path>) -> Result<(), AppError> {
    match out {
        Some(path) => atomic_write(path, format!("{json}\n").as_bytes()),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn mask_path(base: &Path, tag: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("mask")
        .to_string();
    let ext = base
        .extension()
        .and_then(|s| s.to_str())
        .unwrap_or("pbm")
        .to_string();
    base.with_file_name(format!("{stem}.{tag}.{ext}"))
}

fn run_locate(args: LocateArgs) -> Result<(), AppError> {
    let methods = parse_methods(&args.methods)?;
    let norm = parse_norm(&args.norm)?;
    check_grid(args.grid)?;
    let window = parse_window(&args.window, args.grid)?;
    match (args.input.as_deref(), args.batch.as_deref()) {
        (Some(input), None) => locate_one(
            input,
            args.out.as_deref(),
            args.svg.as_deref(),
            args.pbm.as_deref(),
            &methods,
            norm,
            args.grid,
            window,
            args.hermitian,
        ),
        (None, Some(batch)) => {
            if args.svg.is_some() || args.pbm.is_some() {
                return Err(config("--svg and --pbm are not available with --batch"));
            }
            let out = args
                .out
                .as_deref()
                .ok_or_else(|| config("--batch needs --out DIR for the per-file reports"))?;
            run_batch(batch, out, |input, report| {
                locate_one(
                    input,
                    Some(report),
                    None,
                    None,
                    &methods,
                    norm,
                    args.grid,
                    window,
                    args.hermitian,
                )
            })
        }
        _ => Err(config("give exactly one of --input FILE or --batch DIR")),
    }
}

#[allow(clippy::too_many_arguments)]
fn locate_one(
    input: &Path,
    out: Option<&Path>,
    svg: Option<&Path>,
    pbm: Option<&Path>,
    methods: &[Family],
    norm: NormMode,
    grid: usize,
    window: Option<Window>,
    hermitian: bool,
) -> Result<(), AppError> {
    let (bm, block_mode) = load(input)?;
    check_positions(&bm, input)?;
    check_norm_mode(block_mode, norm, input)?;
    if hermitian {
        check_hermitian(&bm, input)?;
    }
    let w = window.unwrap_or_else(|| auto_window_block(&bm, grid));

    let masks: Vec<GridMask> = if block_mode {
        let eval = LocusEvaluator::new(&bm);
        methods
            .iter()
            .map(|&m| rasterize(&w, |z| eval.member(m, z)))
            .collect()
    } else {
        let a = bm.base();
        methods
            .iter()
            .map(|&m| rasterize(&w, |z| locus_member(a, m, z, norm)))
            .collect()
    };

    let json = report::locate_json(&report::LocateReport {
        n: bm.base().rows(),
        partition: bm.partition(),
        block_mode,
        norm: norm_label(norm),
        window: w,
        methods,
        masks: &masks,
        n_positions: bm.block_count(),
    });
    emit_report(&json, out)?;

    if let Some(svg_path) = svg {
        let layers: Vec<(&GridMask, &str)> = methods
            .iter()
            .zip(&masks)
            .map(|(&m, mask)| (mask, family_name(m)))
            .collect();
        let text = schurloc::geometry::svg_overlay(&layers).map_err(|e| config(e.to_string()))?;
        atomic_write(svg_path, text.as_bytes())?;
    }
    if let Some(pbm_base) = pbm {
        for (&m, mask) in methods.iter().zip(&masks) {
            let path = mask_path(pbm_base, family_name(m));
            atomic_write(&path, &mask.pbm_bytes())?;
            let sidecar = PathBuf::from(format!("{}.json", path.display()));
            atomic_write(&sidecar, format!("{}\n", mask.sidecar_json()).as_bytes())?;
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), AppError> {
    let methods = parse_methods(&args.methods)?;
    match (args.input.as_deref(), args.batch.as_deref()) {
        (Some(input), None) => verify_one(input, args.out.as_deref(), &methods, args.hermitian),
        (None, Some(batch)) => {
            let out = args
                .out
                .as_deref()
                .ok_or_else(|| config("--batch needs --out DIR for the per-file reports"))?;
            run_batch(batch, out, |input, report| {
                verify_one(input, Some(report), &methods, args.hermitian)
            })
        }
        _ => Err(config("give exactly one of --input FILE or --batch DIR")),
    }
}

fn verify_one(
    input: &Path,
    out: Option<&Path>,
    methods: &[Family],
    hermitian: bool,
) -> Result<(), AppError> {
    let (bm, block_mode) = load(input)?;
    check_positions(&bm, input)?;
    check_oracle_size(&bm, input)?;
    if hermitian {
        check_hermitian(&bm, input)?;
    }
    let report_data = verify_inclusion(&bm).map_err(|e| match e {
        BlockError::Matrix(MatrixError::NoConvergence) => AppError::NoConvergence(format!(
            "{}: the QR iteration did not converge",
            input.display()
        )),
        other => config(format!("{}: {other}", input.display())),
    })?;
    let json = report::verify_json(
        bm.base().rows(),
        bm.partition(),
        block_mode,
        methods,
        &report_data.to_json(),
    );
    emit_report(&json, out)?;

    let requested_ok = methods.iter().all(|&m| {
        let verdicts = match m {
            Family::Schur => &report_data.schur,
            Family::Cassini => &report_data.cassini,
            Family::ModifiedSchur => &report_data.modified_schur,
            Family::Gershgorin => &report_data.gershgorin,
        };
        verdicts.iter().all(|&b| b)
    });
    if requested_ok {
        Ok(())
    } else {
        Err(AppError::Inclusion(format!(
            "{}: an eigenvalue escaped a requested region family",
            input.display()
        )))
    }
}

fn run_intervals(args: IntervalsArgs) -> Result<(), AppError> {
    let methods = parse_methods(&args.methods)?;
    let norm = parse_norm(&args.norm)?;
    if !(args.tol > 0.0) || !args.tol.is_finite() {
        return Err(config(format!("--tol must be a positive number, got {}", args.tol)));
    }
    match (args.input.as_deref(), args.batch.as_deref()) {
        (Some(input), None) => intervals_one(input, args.out.as_deref(), &methods, norm, args.tol),
        (None, Some(batch)) => {
            let out = args
                .out
                .as_deref()
                .ok_or_else(|| config("--batch needs --out DIR for the per-file reports"))?;
            run_batch(batch, out, |input, report| {
                intervals_one(input, Some(report), &methods, norm, args.tol)
            })
        }
        _ => Err(config("give exactly one of --input FILE or --batch DIR")),
    }
}

fn intervals_one(
    input: &Path,
    out: Option<&Path>,
    methods: &[Family],
    norm: NormMode,
    tol: f64,
) -> Result<(), AppError> {
    let (bm, block_mode) = load(input)?;
    check_positions(&bm, input)?;
    check_oracle_size(&bm, input)?;
    check_norm_mode(block_mode, norm, input)?;
    check_hermitian(&bm, input)?;

    let eigenvalues = eigens_of(&bm, input)?;
    // point features of the loci sit at diagonal-block spectra, so those
    // real parts seed the scan alongside the full spectrum
    let mut seeds: Vec<f64> = Vec::new();
    for j in 0..bm.block_count() {
        let djj = bm.block(j, j).expect("in range");
        match djj.eigenvalues() {
            Ok(s) => seeds.extend(s.values().iter().map(|z| z.re)),
            Err(MatrixError::NoConvergence) => {
                return Err(AppError::NoConvergence(format!(
                    "{}: the QR iteration did not converge",
                    input.display()
                )))
            }
            Err(e) => return Err(config(format!("{}: {e}", input.display()))),
        }
    }
    seeds.extend(eigenvalues.iter().map(|z| z.re));

    let w = auto_window_block(&bm, MIN_RESOLUTION);
    let evaluator = if block_mode {
        Some(LocusEvaluator::new(&bm))
    } else {
        None
    };
    let member = |m: Family, x: f64| -> bool {
        let z = Complex64::new(x, 0.0);
        match &evaluator {
            Some(eval) => eval.member(m, z),
            None => locus_member(bm.base(), m, z, norm),
        }
    };

    let mut unions: Vec<IntervalUnion> = Vec::with_capacity(methods.len());
    for &m in methods {
        let union = extract_real_intervals(
            |x| member(m, x),
            w.re_min,
            w.re_max,
            tol,
            DEFAULT_SAMPLES,
            &seeds,
        )
        .map_err(|e| config(format!("{}: {e}", input.display())))?;
        unions.push(union);
    }

    let containing: Vec<Vec<i64>> = unions
        .iter()
        .map(|u| {
            eigenvalues
                .iter()
                .map(|ev| {
                    u.intervals()
                        .iter()
                        .position(|&(a, b)| a - tol <= ev.re && ev.re <= b + tol)
                        .map(|i| i as i64)
                        .unwrap_or(-1)
                })
                .collect()
        })
        .collect();

    let json = report::intervals_json(&report::IntervalsReport {
        n: bm.base().rows(),
        partition: bm.partition(),
        block_mode,
        norm: norm_label(norm),
        tol,
        samples: DEFAULT_SAMPLES,
        range: (w.re_min, w.re_max),
        methods,
        unions: &unions,
        eigenvalues: &eigenvalues,
        containing: &containing,
        n_positions: bm.block_count(),
    });
    emit_report(&json, out)
}

fn run_batch<F>(dir: &Path, out_dir: &Path, job: F) -> Result<(), AppError>
where
    F: Fn(&Path, &Path) -> Result<(), AppError> + Sync,
{
    let entries = fs::read_dir(dir)
        .map_err(|e| config(format!("cannot read batch directory {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|r| r.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map_or(false, |x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(config(format!("no .json inputs under {}", dir.display())));
    }
    fs::create_dir_all(out_dir)
        .map_err(|e| config(format!("cannot create {}: {e}", out_dir.display())))?;

    let failures: Vec<AppError> = files
        .par_iter()
        .filter_map(|input| {
            let stem = input
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("input");
            let report = out_dir.join(format!("{stem}.report.json"));
            job(input, &report).err()
        })
        .collect();

    for failure in &failures {
        eprintln!("{}", failure.line());
    }
    let total = files.len();
    let failed = failures.len();
    match failures.into_iter().max_by_key(|e| e.severity()) {
        None => Ok(()),
        Some(worst) => Err(worst.same_class(format!("batch: {failed} of {total} inputs failed"))),
    }
}
