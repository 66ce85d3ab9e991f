//! `g0bound`: growth-bound certificates, verification runs and zero tables.

mod output;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use g0bound_core::bound::{midpoint_rho, BoundEngine};
use g0bound_core::models::{default_fleet, Model, ModelParams, ModelSpec};
use g0bound_core::numerics::parse_complex;
use g0bound_core::special::{airy_squared_zeros, bessel_j_squared_zeros, k_order_zeros};
use g0bound_core::verify::{
    default_identity_rhos, run_all, run_identity_suite, sort_records, GridSpec, RhoChoice, Summary, Tolerances,
    VerifyOptions,
};
use g0bound_core::zeros::ZeroSequence;
use g0bound_core::Error;
use std::io::Write;
use std::process::ExitCode;

const EXIT_NUMERIC: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

const TOLERANCE_HELP: &str = "Tolerances are overridden with --tol.<name>=<value>. Names: identity, bessel_form, \
reality, head_sum, value_at_zero, finite_difference, chain_lower, chain_upper, tightness, optimized, angular, \
fuzz, monotone, jensen_convexity, jensen_gradient.";

/// Largest toy-square table `zeros` will print.
const TOY_MAX_COUNT: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "g0bound", version, about = "Half-plane growth bounds for entire functions with negative zeros")]
#[command(after_help = TOLERANCE_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the bound chain at one point.
    Bound(BoundArgs),
    /// Run every suite and print the records and a summary.
    #[command(after_help = TOLERANCE_HELP)]
    Verify(VerifyArgs),
    /// Print the first zeros and the running sum of their reciprocals.
    Zeros(ZerosArgs),
    /// Run the identity suite only.
    #[command(after_help = TOLERANCE_HELP)]
    Identity(IdentityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// toy-square, bessel-i, airy-pair, k-order, or custom (with --zeros).
    #[arg(long, default_value = "toy-square")]
    model: String,
    /// Bessel order.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Argument of K in the k-order model.
    #[arg(long)]
    a: Option<f64>,
    /// Number of explicitly computed zeros.
    #[arg(long)]
    head_count: Option<usize>,
    /// Airy evaluation cap on |z|.
    #[arg(long)]
    z_max: Option<f64>,
    /// JSON zero sequence for --model custom.
    #[arg(long)]
    zeros: Option<std::path::PathBuf>,
    /// f(0) for --model custom.
    #[arg(long)]
    f0: Option<f64>,
}

impl ModelArgs {
    fn params(&self) -> ModelParams {
        ModelParams { nu: self.nu, a: self.a, head_count: self.head_count, z_max: self.z_max }
    }

    fn spec(&self) -> anyhow::Result<ModelSpec> {
        if self.model == "custom" {
            let path = self.zeros.as_ref().ok_or_else(|| usage("--model custom needs --zeros FILE"))?;
            if self.nu.is_some() || self.a.is_some() || self.head_count.is_some() || self.z_max.is_some() {
                return Err(usage("model parameters do not apply to --model custom"));
            }
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let zeros: ZeroSequence = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid zero sequence in {}: {e}", path.display())))?;
            return Ok(ModelSpec::Custom { id: "custom".into(), zeros, f0: self.f0.unwrap_or(1.0) });
        }
        if self.zeros.is_some() || self.f0.is_some() {
            return Err(usage("--zeros and --f0 need --model custom"));
        }
        Ok(ModelSpec::from_selector(&self.model, self.params())?)
    }
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Point in the right half-plane, as RE+IMi.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// A value in (rho0, 1), or "opt"; the midpoint (rho0 + 1)/2 by default.
    #[arg(long)]
    rho: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Seed of the elementary-inequality fuzz.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Grid radii, comma separated.
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// Grid angles in radians, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    angles: Option<Vec<f64>>,
    /// Grid rho columns: numbers, "midpoint" or "opt", comma separated.
    #[arg(long, value_delimiter = ',')]
    rhos: Option<Vec<String>>,
    /// Number of fuzz points.
    #[arg(long)]
    fuzz_points: Option<usize>,
    /// Run models one after another instead of in parallel.
    #[arg(long)]
    serial: bool,
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
}

#[derive(Args, Debug)]
struct ZerosArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, value_enum, default_value = "text")]
    output: Format,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated values in (rho0, 1); the model's defaults if omitted.
    #[arg(long, value_delimiter = ',')]
    rho: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
}

/// A caller mistake, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<Error>() {
        Some(err) if err.is_domain() => EXIT_USAGE,
        _ => EXIT_NUMERIC,
    }
}

/// Pulls `--tol.<name>=<value>` (or `--tol.<name> <value>`) out of `args`.
fn split_tolerances(args: Vec<String>) -> anyhow::Result<(Vec<String>, Tolerances)> {
    let mut tol = Tolerances::default();
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        let Some(spec) = arg.strip_prefix("--tol.") else {
            rest.push(arg);
            continue;
        };
        let (name, value) = match spec.split_once('=') {
            Some((n, v)) => (n.to_string(), v.to_string()),
            None => (spec.to_string(), it.next().ok_or_else(|| usage(format!("--tol.{spec} needs a value")))?),
        };
        let v: f64 = value.parse().map_err(|_| usage(format!("--tol.{name}: invalid number {value:?}")))?;
        tol.set(&name, v)?;
    }
    Ok((rest, tol))
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (args, tol) = match split_tolerances(args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    let res = match cli.command {
        Command::Bound(a) => cmd_bound(a, &mut stdout),
        Command::Verify(a) => cmd_verify(a, tol, &mut stdout),
        Command::Zeros(a) => cmd_zeros(a, &mut stdout),
        Command::Identity(a) => cmd_identity(a, tol, &mut stdout),
    };
    let _ = stdout.flush();
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn cmd_bound(a: BoundArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let z = parse_complex(&a.z)?;
    let model = a.model.spec()?.build()?;
    let m = model.as_dyn();
    let engine = BoundEngine::new(m);
    let report = match a.rho.as_deref() {
        Some("opt") => engine.evaluate_optimized(z)?,
        Some(s) => {
            let rho: f64 = s.parse().map_err(|_| usage(format!("--rho: expected a number or \"opt\", got {s:?}")))?;
            engine.evaluate_chain(z, rho)?
        }
        None => engine.evaluate_chain(z, midpoint_rho(m))?,
    };
    output::write_report(out, &m.id(), &report, a.output)?;
    Ok(0)
}

fn parse_rho_choice(s: &str) -> anyhow::Result<RhoChoice> {
    Ok(match s {
        "midpoint" | "mid" => RhoChoice::Midpoint,
        "opt" | "optimized" => RhoChoice::Optimized,
        v => RhoChoice::Value(v.parse().map_err(|_| usage(format!("--rhos: invalid entry {v:?}")))?),
    })
}

fn cmd_verify(a: VerifyArgs, tol: Tolerances, out: &mut dyn Write) -> anyhow::Result<u8> {
    let specs = if a.model.model == "all" {
        let m = &a.model;
        if m.nu.is_some() || m.a.is_some() || m.head_count.is_some() || m.z_max.is_some() || m.zeros.is_some() {
            return Err(usage("model parameters do not apply to --model all"));
        }
        default_fleet()
    } else {
        let spec = a.model.spec()?;
        spec.build()?;
        vec![spec]
    };
    let mut grid = GridSpec::default();
    if let Some(r) = a.radii {
        grid.radii = r;
    }
    if let Some(t) = a.angles {
        grid.angles = t;
    }
    if let Some(r) = a.rhos {
        grid.rhos = r.iter().map(|s| parse_rho_choice(s)).collect::<anyhow::Result<_>>()?;
    }
    grid.validate()?;
    let mut opts = VerifyOptions { tolerances: tol, seed: a.seed, parallel: !a.serial, ..VerifyOptions::default() };
    if let Some(n) = a.fuzz_points {
        opts.fuzz_points = n;
    }
    let (records, summary) = run_all(&specs, &grid, &opts);
    output::write_records(out, &records, &summary, a.output)?;
    Ok(if summary.failed == 0 { 0 } else { EXIT_VERIFY_FAILED })
}

fn cmd_identity(a: IdentityArgs, tol: Tolerances, out: &mut dyn Write) -> anyhow::Result<u8> {
    let model: Model = a.model.spec()?.build()?;
    let m = model.as_dyn();
    let rhos = match a.rho {
        Some(r) => r,
        None => default_identity_rhos(&model),
    };
    let rho0 = m.order_rho0();
    if let Some(bad) = rhos.iter().find(|r| !(**r > rho0 && **r < 1.0)) {
        return Err(usage(format!("rho = {bad} outside ({rho0}, 1) for {}", m.id())));
    }
    let mut records = run_identity_suite(&model, &rhos, &tol);
    sort_records(&mut records);
    let summary = Summary::of(&records);
    output::write_records(out, &records, &summary, a.output)?;
    Ok(if summary.failed == 0 { 0 } else { EXIT_VERIFY_FAILED })
}

fn cmd_zeros(a: ZerosArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    if a.model.head_count.is_some() {
        return Err(usage("--head-count does not apply to zeros; use --count"));
    }
    let spec = a.model.spec()?;
    let count = a.count;
    if count == 0 {
        return Err(usage("--count must be positive"));
    }
    let zeros = match spec {
        ModelSpec::ToySquare { .. } => {
            if count > TOY_MAX_COUNT {
                return Err(usage(format!("--count must be at most {TOY_MAX_COUNT} for toy-square")));
            }
            (1..=count).map(|n| (n * n) as f64).collect()
        }
        ModelSpec::BesselI { nu, .. } => bessel_j_squared_zeros(nu, count)?,
        ModelSpec::AiryPair { .. } => airy_squared_zeros(count)?,
        ModelSpec::KOrder { a, .. } => k_order_zeros(a, count)?,
        ModelSpec::Custom { zeros, .. } => {
            if count > zeros.len() {
                return Err(usage(format!("--count {count} exceeds the {} zeros in the file", zeros.len())));
            }
            zeros.head()[..count].to_vec()
        }
    };
    output::write_zeros(out, &zeros, a.output)?;
    Ok(0)
}
