//! Argument parsing and command execution for the `alpha-spectra` binary.
//!
//! Exit status contract: 0 on success, 1 when a verification suite reports
//! failures, 2 on input or usage errors.

use alpha_spectra::{
    alpha_spectrum, bound_report, closed_form_spectrum, emit_digraph, fmt_sig12, make_family,
    parse_digraph, verify, AlphaParam, BoundReport, Digraph, FamilySpec,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "alpha-spectra",
    about = "Alpha-matrix spectra, trace-norm bounds, and exhaustive verification for digraphs",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Family spec: path:n, cycle:n, kbip:r,s, symk:n, shrikhande, discrete:n
    #[arg(long)]
    pub family: Option<String>,
    /// Edge-list file ("n a" header, then "u v" lines; '#' comments)
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write output to this path instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singular values, trace norm, and spectral norm of the alpha matrix
    Spectrum {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated alphas in [0, 1), decimal or p/q
        #[arg(long, default_value = "0")]
        alpha: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bound report rows for each alpha
    Bounds {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit a family as an edge-list document
    Family {
        /// Family spec: path:n, cycle:n, kbip:r,s, symk:n, shrikhande, discrete:n
        #[arg(long)]
        family: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive per-digraph verification at one order
    Verify {
        /// Order to sweep (2..=5; 5 enumerates about one million digraphs
        /// and reports progress on stderr)
        #[arg(long)]
        n: usize,
        /// Comma-separated exact alphas (default 0,1/4,1/2,3/4)
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Oriented-tree minimum-trace-norm sweep for n = 2..=n_max
    Trees {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search (digraph, alpha) pairs attaining the arc-dense upper bound
    KmSearch {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Comma-separated alphas (default 0,1/4,1/2,3/4)
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug)]
pub enum RunError {
    Input(String),
    Io { path: String, error: std::io::Error },
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Input(msg) => write!(f, "{msg}"),
            RunError::Io { path, error } => write!(f, "{path}: {error}"),
        }
    }
}

impl std::error::Error for RunError {}

/// Parses argv into a validated command; clap renders usage errors.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

fn parse_alpha_list(text: &str) -> Result<Vec<AlphaParam>, RunError> {
    let mut alphas = Vec::new();
    for tok in text.split(',') {
        let alpha = AlphaParam::parse(tok)
            .map_err(|e| RunError::Input(format!("--alpha: {e}")))?;
        alphas.push(alpha);
    }
    if alphas.is_empty() {
        return Err(RunError::Input("--alpha: need at least one value".into()));
    }
    Ok(alphas)
}

fn parse_grid(text: Option<&str>) -> Result<Vec<AlphaParam>, RunError> {
    match text {
        None => Ok(verify::dyadic_grid()),
        Some(t) => {
            let mut grid = Vec::new();
            for tok in t.split(',') {
                grid.push(
                    AlphaParam::parse(tok)
                        .map_err(|e| RunError::Input(format!("--grid: {e}")))?,
                );
            }
            Ok(grid)
        }
    }
}

/// Resolves the one input source into a digraph and an optional family
/// spec (present when the source was a family).
fn load_source(source: &SourceArgs) -> Result<(Digraph, Option<FamilySpec>, String), RunError> {
    match (&source.family, &source.input) {
        (Some(_), Some(_)) => {
            Err(RunError::Input("--family and --input are mutually exclusive".into()))
        }
        (None, None) => Err(RunError::Input("one of --family or --input is required".into())),
        (Some(spec_text), None) => {
            let spec = FamilySpec::parse(spec_text)
                .map_err(|e| RunError::Input(format!("--family: {e}")))?;
            let g = make_family(&spec).map_err(|e| RunError::Input(format!("--family: {e}")))?;
            Ok((g, Some(spec), spec_text.clone()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|error| RunError::Io {
                path: path.display().to_string(),
                error,
            })?;
            let g = parse_digraph(&text)
                .map_err(|e| RunError::Input(format!("{}: {e}", path.display())))?;
            Ok((g, None, path.display().to_string()))
        }
    }
}

fn write_output(output: &OutputArgs, rendered: &str) -> Result<(), RunError> {
    match &output.out {
        None => {
            print!("{rendered}");
            Ok(())
        }
        Some(path) => std::fs::write(path, rendered).map_err(|error| RunError::Io {
            path: path.display().to_string(),
            error,
        }),
    }
}

/// Executes a parsed command and returns the process exit status.
pub fn execute(cli: Cli) -> Result<i32, RunError> {
    match cli.command {
        Command::Spectrum { source, alpha, output } => {
            let (g, spec, label) = load_source(&source)?;
            let alphas = parse_alpha_list(&alpha)?;
            let rendered = render_spectrum(&g, spec.as_ref(), &label, &alphas, output.format)?;
            write_output(&output, &rendered)?;
            Ok(0)
        }
        Command::Bounds { source, alpha, output } => {
            let (g, _, label) = load_source(&source)?;
            let alphas = parse_alpha_list(&alpha)?;
            let reports: Vec<BoundReport> =
                alphas.iter().map(|&a| bound_report(&g, a)).collect();
            let rendered = render_bounds(&label, &reports, output.format)?;
            write_output(&output, &rendered)?;
            Ok(0)
        }
        Command::Family { family, output } => {
            let spec = FamilySpec::parse(&family)
                .map_err(|e| RunError::Input(format!("--family: {e}")))?;
            let g = make_family(&spec).map_err(|e| RunError::Input(format!("--family: {e}")))?;
            write_output(&output, &emit_digraph(&g))?;
            Ok(0)
        }
        Command::Verify { n, grid, output } => {
            let grid = parse_grid(grid.as_deref())?;
            let summary = if n == 5 {
                verify::run_exhaustive_with_progress(n, &grid, |done, total| {
                    if done % (1 << 16) == 0 || done == total {
                        eprintln!("verify n=5: {done}/{total} digraphs");
                    }
                })
            } else {
                verify::run_exhaustive(n, &grid)
            }
            .map_err(|e| RunError::Input(format!("verify: {e}")))?;
            let rendered = render_summary(&summary, output.format)?;
            write_output(&output, &rendered)?;
            Ok(if summary.passed() { 0 } else { 1 })
        }
        Command::Trees { n_max, output } => {
            if !(2..=6).contains(&n_max) {
                return Err(RunError::Input("--n-max: tree sweep supports 2..=6".into()));
            }
            let mut summaries = Vec::new();
            for n in 2..=n_max {
                summaries.push(
                    verify::verify_tree_minimum(n)
                        .map_err(|e| RunError::Input(format!("trees: {e}")))?,
                );
            }
            let all_passed = summaries.iter().all(|s| s.passed());
            let rendered = render_tree_table(&summaries, output.format)?;
            write_output(&output, &rendered)?;
            Ok(if all_passed { 0 } else { 1 })
        }
        Command::KmSearch { n_max, grid, output } => {
            let grid = parse_grid(grid.as_deref())?;
            let candidates = verify::find_km_equality_candidates(n_max, &grid)
                .map_err(|e| RunError::Input(format!("km-search: {e}")))?;
            let rendered = render_candidates(&candidates, output.format)?;
            write_output(&output, &rendered)?;
            Ok(0)
        }
    }
}

fn render_spectrum(
    g: &Digraph,
    spec: Option<&FamilySpec>,
    label: &str,
    alphas: &[AlphaParam],
    format: OutputFormat,
) -> Result<String, RunError> {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("source,n,alpha,index,sigma,closed_form\n");
            for &alpha in alphas {
                let s = alpha_spectrum(g, alpha)
                    .map_err(|e| RunError::Input(format!("eigensolve: {e}")))?;
                let closed = spec.and_then(|f| closed_form_spectrum(f, alpha).ok());
                let closed_flat = closed.map(|c| c.flattened());
                for (i, v) in s.values().iter().enumerate() {
                    let cf = closed_flat
                        .as_ref()
                        .map(|c| fmt_sig12(c[i]))
                        .unwrap_or_default();
                    writeln!(
                        out,
                        "{label},{},{},{i},{},{cf}",
                        g.order(),
                        fmt_sig12(alpha.value()),
                        fmt_sig12(*v)
                    )
                    .expect("string write");
                }
            }
        }
        OutputFormat::Json => {
            let mut entries = Vec::new();
            for &alpha in alphas {
                let s = alpha_spectrum(g, alpha)
                    .map_err(|e| RunError::Input(format!("eigensolve: {e}")))?;
                let closed = spec.and_then(|f| closed_form_spectrum(f, alpha).ok());
                entries.push(serde_json::json!({
                    "alpha": alpha.value(),
                    "alpha_display": alpha.to_string(),
                    "values": s.values(),
                    "trace_norm": s.trace_norm(),
                    "spectral_norm": s.spectral_norm(),
                    "closed_form": closed.map(|c| c.flattened()),
                }));
            }
            let doc = serde_json::json!({
                "source": label,
                "n": g.order(),
                "a": g.arc_count(),
                "spectra": entries,
            });
            out = serde_json::to_string_pretty(&doc).expect("json serializes");
            out.push('\n');
        }
        OutputFormat::Text => {
            writeln!(out, "source: {label} (n = {}, a = {})", g.order(), g.arc_count())
                .expect("string write");
            for &alpha in alphas {
                let s = alpha_spectrum(g, alpha)
                    .map_err(|e| RunError::Input(format!("eigensolve: {e}")))?;
                let closed = spec.and_then(|f| closed_form_spectrum(f, alpha).ok());
                writeln!(out, "alpha = {alpha}").expect("string write");
                match closed {
                    Some(c) => {
                        writeln!(out, "  sigma (numeric | closed form):").expect("string write");
                        for (v, cf) in s.values().iter().zip(c.flattened()) {
                            writeln!(out, "    {:<18} | {}", trim12(*v), trim12(cf))
                                .expect("string write");
                        }
                    }
                    None => {
                        writeln!(out, "  sigma: {}", join12(s.values())).expect("string write");
                    }
                }
                writeln!(out, "  trace norm    = {}", trim12(s.trace_norm()))
                    .expect("string write");
                writeln!(out, "  spectral norm = {}", trim12(s.spectral_norm()))
                    .expect("string write");
            }
        }
    }
    Ok(out)
}

fn render_bounds(
    label: &str,
    reports: &[BoundReport],
    format: OutputFormat,
) -> Result<String, RunError> {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{}", BoundReport::CSV_HEADER).expect("string write");
            for r in reports {
                writeln!(out, "{}", r.to_csv_row()).expect("string write");
            }
        }
        OutputFormat::Json => {
            out = serde_json::to_string_pretty(reports).expect("reports serialize");
            out.push('\n');
        }
        OutputFormat::Text => {
            writeln!(out, "source: {label}").expect("string write");
            for r in reports {
                writeln!(out, "alpha = {}", trim12(r.alpha)).expect("string write");
                writeln!(out, "  n = {}, a = {}, sum d+^2 = {}", r.n, r.a, r.sum_sq_outdeg)
                    .expect("string write");
                writeln!(out, "  trace norm      = {}", trim12(r.trace_norm))
                    .expect("string write");
                writeln!(out, "  spectral norm   = {} (floor a/n = {})",
                         trim12(r.spectral_norm), trim12(r.spectral_floor))
                    .expect("string write");
                let opt = |v: Option<f64>| v.map(trim12).unwrap_or_else(|| "n/a".into());
                let eq = |flag: bool| if flag { "  [equality]" } else { "" };
                writeln!(out, "  lower (Frobenius)     = {}{}", opt(r.lower_basic), eq(r.eq_lower_basic)).expect("string write");
                writeln!(out, "  lower (determinant)   = {}{}", opt(r.lower_det), eq(r.eq_lower_det)).expect("string write");
                writeln!(out, "  upper (variance)      = {}{}", opt(r.upper_mcclelland), eq(r.eq_mcclelland)).expect("string write");
                if r.km_applicable {
                    writeln!(out, "  upper (arc-dense)     = {}{}", opt(r.upper_km), eq(r.eq_km)).expect("string write");
                } else {
                    writeln!(out, "  upper (arc-dense)     = n/a (hypothesis a >= n*beta fails, beta = {})",
                             trim12(r.km_beta)).expect("string write");
                }
            }
        }
    }
    Ok(out)
}

fn render_summary(
    summary: &verify::VerificationSummary,
    format: OutputFormat,
) -> Result<String, RunError> {
    match format {
        OutputFormat::Text => Ok(summary.to_text()),
        OutputFormat::Json => Ok(format!("{}\n", summary.to_json())),
        OutputFormat::Csv => {
            Err(RunError::Input("--format csv is not supported for verify output".into()))
        }
    }
}

fn render_tree_table(
    summaries: &[verify::VerificationSummary],
    format: OutputFormat,
) -> Result<String, RunError> {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            out = serde_json::to_string_pretty(summaries).expect("summaries serialize");
            out.push('\n');
        }
        OutputFormat::Csv => {
            return Err(RunError::Input("--format csv is not supported for trees output".into()));
        }
        OutputFormat::Text => {
            writeln!(out, "{:<6} {:<10} {:<10} minimum", "n", "trees", "result")
                .expect("string write");
            for s in summaries {
                writeln!(
                    out,
                    "{:<6} {:<10} {:<10} {}",
                    s.suite.trim_start_matches("oriented-trees-n"),
                    s.parameters.split("trees=").nth(1).unwrap_or("?"),
                    if s.passed() { "PASS" } else { "FAIL" },
                    s.notes.first().map(String::as_str).unwrap_or(""),
                )
                .expect("string write");
            }
        }
    }
    Ok(out)
}

fn render_candidates(
    candidates: &[verify::KmCandidate],
    format: OutputFormat,
) -> Result<String, RunError> {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            out = serde_json::to_string_pretty(candidates).expect("candidates serialize");
            out.push('\n');
        }
        OutputFormat::Csv => {
            writeln!(out, "n,encoding,alpha,trace_norm,upper_km").expect("string write");
            for c in candidates {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    c.n,
                    c.encoding,
                    c.alpha,
                    fmt_sig12(c.trace_norm),
                    fmt_sig12(c.upper_km)
                )
                .expect("string write");
            }
        }
        OutputFormat::Text => {
            writeln!(out, "{} candidate pair(s) attaining the arc-dense upper bound:", candidates.len())
                .expect("string write");
            for c in candidates {
                writeln!(
                    out,
                    "  n={} encoding={} alpha={} trace={} bound={}",
                    c.n,
                    c.encoding,
                    c.alpha,
                    trim12(c.trace_norm),
                    trim12(c.upper_km)
                )
                .expect("string write");
            }
        }
    }
    Ok(out)
}

/// 12 significant digits without the exponent notation, for human output.
fn trim12(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0');
    let s = s.trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn join12(values: &[f64]) -> String {
    values.iter().map(|&v| trim12(v)).collect::<Vec<_>>().join(", ")
}

/// Applies the ALPHA_SPECTRA_THREADS cap to the global thread pool.
/// Ignored when the pool is already built or the value is unparseable.
pub fn init_thread_pool_from_env() {
    if let Ok(text) = std::env::var("ALPHA_SPECTRA_THREADS") {
        if let Ok(threads) = text.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
            }
        }
    }
}
