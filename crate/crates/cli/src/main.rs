//! `pconst`: command-line front end for Ptolemy and uniformity constants.

mod output;
mod svg;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use pconst::domains::{parse_domain_spec, Domain};
use pconst::ptolemy::{estimate_ptolemy_constant, PtolemyConfig};
use pconst::qh::{j_metric, k_grid_path, k_value, GridSolverConfig, MetricSample, QhMethod};
use pconst::uniformity::{conjecture_report, estimate_uniformity, UniformityConfig};
use pconst::verify::{run_verify, VerifyOptions};
use pconst::Error;

use output::{envelope, Format};

#[derive(Parser)]
#[command(name = "pconst", version, about = "Ptolemy and uniformity constants of plane domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Drop timings so that repeated runs give identical output.
    #[arg(long)]
    no_meta: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the Ptolemy constant of a domain.
    Ptolemy {
        /// Domain spec: a JSON file path or inline JSON.
        #[arg(long)]
        domain: String,
        /// Boundary grid size per chart.
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Nelder-Mead iterations per start; 0 disables refinement.
        #[arg(long, default_value_t = 400)]
        refine: usize,
        #[arg(long, default_value_t = 16)]
        multistarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Estimate the uniformity constant of a domain.
    Uniformity {
        #[arg(long)]
        domain: String,
        /// Resolution of the quasihyperbolic grid solver.
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Random interior pairs.
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        method: QhMethod,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distance ratio metric and quasihyperbolic distance between two points.
    Qhdist {
        #[arg(long)]
        domain: String,
        /// First point as `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        from: Complex64,
        /// Second point as `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        to: Complex64,
        /// `auto` prefers a closed formula and falls back to the grid.
        #[arg(long, default_value = "auto")]
        method: QhMethod,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Also trace a grid geodesic polyline for `plot --geodesic`.
        #[arg(long)]
        geodesic: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the acceptance table.
    Verify {
        /// Comma-separated criterion ids, groups or name fragments.
        #[arg(long)]
        only: Option<String>,
        /// Multiplies every tolerance.
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
        /// Random cases per property suite.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare lower bounds for A_D with 1 + P(D).
    Conjecture {
        /// Single domain; defaults to a catalog of Jordan domains.
        #[arg(long)]
        domain: Option<String>,
        /// Ptolemy boundary grid size.
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Quasihyperbolic solver resolution.
        #[arg(long, default_value_t = 128)]
        resolution: usize,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Draw a domain as SVG with optional overlays.
    Plot {
        #[arg(long)]
        domain: String,
        /// Mark an extremal quadruple: a `ptolemy` output file, or run the
        /// estimator when no file is given.
        #[arg(long, num_args = 0..=1)]
        witness: Option<Option<PathBuf>>,
        /// Overlay the geodesic from a `qhdist --geodesic` output file.
        #[arg(long)]
        geodesic: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn spec(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Spec(_) | Error::InvalidDomain(_) | Error::DegeneratePolygon(_) => 2,
            Error::ExactUnavailable => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_point(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got `{s}`")),
    }
}

/// Reads a spec given inline or as a file path.
fn load_domain(arg: &str) -> CliResult<Domain> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::spec(format!("cannot read domain spec {arg}: {e}")))?
    };
    Ok(parse_domain_spec(&text)?)
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::spec(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::spec(format!("{} is not valid JSON: {e}", path.display())))
}

fn emit(text: &str, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure { code: 3, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_result(command: &str, result: Value, csv: impl FnOnce() -> String, args: &OutputArgs) -> CliResult<()> {
    let text = match args.format {
        Format::Json => envelope(command, result, args.no_meta),
        Format::Csv => csv(),
    };
    emit(&text, &args.out)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize to JSON")
}

fn cmd_ptolemy(domain: &str, cfg: PtolemyConfig, output: &OutputArgs) -> CliResult<()> {
    let domain = load_domain(domain)?;
    let est = estimate_ptolemy_constant(&domain, &cfg)?;
    write_result("ptolemy", to_value(&est), || output::ptolemy_csv(&est), output)
}

fn cmd_uniformity(domain: &str, cfg: UniformityConfig, output: &OutputArgs) -> CliResult<()> {
    let domain = load_domain(domain)?;
    let est = estimate_uniformity(&domain, &cfg)?;
    write_result("uniformity", to_value(&est), || output::uniformity_csv(&est), output)
}

fn cmd_qhdist(
    domain: &str,
    (x, y): (Complex64, Complex64),
    method: QhMethod,
    grid: GridSolverConfig,
    geodesic: bool,
    output: &OutputArgs,
) -> CliResult<()> {
    let domain = load_domain(domain)?;
    let j = j_metric(&domain, x, y)?;
    let (k, k_method) = k_value(&domain, x, y, method, &grid)?;
    let sample = MetricSample::new(x, y, j, k, k_method);
    let mut result = to_value(&sample);
    if geodesic {
        let path = k_grid_path(&domain, x, y, &grid)?;
        result["geodesic"] = json!({
            "k": path.k,
            "resolution": path.resolution,
            "path": path.path.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        });
    }
    write_result("qhdist", result, || output::samples_csv(&[("pair".into(), None, sample)]), output)
}

fn cmd_verify(opts: VerifyOptions, output: &OutputArgs) -> CliResult<bool> {
    let outcomes = run_verify(&opts, |o| println!("{o}"));
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    if output.out.is_some() {
        let result = json!({ "passed": passed == outcomes.len(), "criteria": to_value(&outcomes) });
        write_result("verify", result, || output::verify_csv(&outcomes), output)?;
    }
    Ok(passed == outcomes.len())
}

fn conjecture_catalog() -> Vec<Domain> {
    let ok = |d: pconst::Result<Domain>| d.expect("catalog parameters are valid");
    vec![
        Domain::unit_disk(),
        ok(Domain::ellipse(2.0, 1.0)),
        ok(Domain::triangle_from_angles(FRAC_PI_3, FRAC_PI_3)),
        ok(Domain::triangle_from_angles(FRAC_PI_6, FRAC_PI_3)),
        ok(Domain::rectangle(1.0, 1.0)),
        ok(Domain::rectangle(2.0, 1.0)),
        ok(Domain::rhombus(FRAC_PI_3)),
        ok(Domain::parallelogram(2.0, 1.0, FRAC_PI_3)),
        ok(Domain::parallelogram(1.5, 1.0, FRAC_PI_2 * 0.8)),
    ]
}

fn cmd_conjecture(
    domain: Option<&str>,
    pcfg: PtolemyConfig,
    ucfg: UniformityConfig,
    output: &OutputArgs,
) -> CliResult<()> {
    let domains = match domain {
        Some(d) => vec![load_domain(d)?],
        None => conjecture_catalog(),
    };
    let mut reports = Vec::new();
    println!("{:<48} {:>10} {:>10} {:>10}", "domain", "A lower", "1 + P", "margin");
    for d in &domains {
        let r = conjecture_report(d, &pcfg, &ucfg)?;
        println!("{:<48} {:>10.6} {:>10.6} {:>+10.6}", r.domain.to_string(), r.a_lower, r.one_plus_p_lower, r.margin + 0.0);
        reports.push(r);
    }
    if output.out.is_some() {
        write_result("conjecture", to_value(&reports), || output::conjecture_csv(&reports), output)?;
    }
    Ok(())
}

fn cmd_plot(domain: &str, witness: Option<Option<PathBuf>>, geodesic: Option<PathBuf>, out: &Option<PathBuf>) -> CliResult<()> {
    let domain = load_domain(domain)?;
    let witness = match witness {
        None => None,
        Some(None) => Some(estimate_ptolemy_constant(&domain, &PtolemyConfig::default())?.witness.points.to_vec()),
        Some(Some(path)) => Some(output::witness_points(&read_json(&path)?).map_err(Failure::spec)?),
    };
    let geodesic = match geodesic {
        None => None,
        Some(path) => Some(output::geodesic_points(&read_json(&path)?).map_err(Failure::spec)?),
    };
    let svg = svg::render(&domain, witness.as_deref(), geodesic.as_deref());
    emit(&svg, out)
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Ptolemy { domain, grid, refine, multistarts, seed, output } => {
            let cfg = PtolemyConfig { grid_n: grid, refine_iters: refine, multistarts, seed };
            cmd_ptolemy(&domain, cfg, &output)?;
        }
        Command::Uniformity { domain, grid, samples, seed, method, output } => {
            let grid = GridSolverConfig { resolution: grid, ..Default::default() };
            cmd_uniformity(&domain, UniformityConfig { samples, grid, method, seed }, &output)?;
        }
        Command::Qhdist { domain, from, to, method, grid, geodesic, output } => {
            let grid = GridSolverConfig { resolution: grid, ..Default::default() };
            cmd_qhdist(&domain, (from, to), method, grid, geodesic, &output)?;
        }
        Command::Verify { only, tol_scale, cases, output } => {
            if !(tol_scale > 0.0 && tol_scale.is_finite()) {
                return Err(Failure::spec(format!("--tol-scale must be positive, got {tol_scale}")));
            }
            return cmd_verify(VerifyOptions { only, tol_scale, property_cases: cases }, &output);
        }
        Command::Conjecture { domain, grid, resolution, samples, seed, output } => {
            let pcfg = PtolemyConfig { grid_n: grid, seed, ..Default::default() };
            let grid = GridSolverConfig { resolution, ..Default::default() };
            let ucfg = UniformityConfig { samples, grid, seed, ..Default::default() };
            cmd_conjecture(domain.as_deref(), pcfg, ucfg, &output)?;
        }
        Command::Plot { domain, witness, geodesic, out } => cmd_plot(&domain, witness, geodesic, &out)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message.lines().next().unwrap_or_default());
            ExitCode::from(f.code)
        }
    }
}
