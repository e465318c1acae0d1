//! Command-line front end for the weighted group algebra library.
//!
//! All results go to stdout as JSON (pretty by default, compact with
//! `--json`); diagnostics go to stderr. Exit codes: 0 all checks passed,
//! 1 residual failure, 2 invalid input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use beurling::lemmas::{LemmaConfig, run_all};
use beurling::representations::{
    op_norm, random_unitary_rep, reconstruct, regular_rep, AlgebraRep,
};
use beurling::sampling;
use beurling::translation;
use beurling::{
    make_length_weight, relative_w1_error, verify_weight, AlgElement, Context, Element, GroupSpec,
    Weight, WeightForm, DEFAULT_TOLERANCE, TOL_FAST, TOL_RECONSTRUCT,
};

#[derive(Parser)]
#[command(
    name = "beurling",
    version,
    about = "Weighted group algebras on finite groups: convolution, Fourier \
             analysis, translation operators, representations, and identity \
             verification campaigns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity suite applicable to the (group, weight) context
    CheckLemmas(CheckLemmasArgs),
    /// Convolve two functions in the weighted algebra
    Convolve(ConvolveArgs),
    /// Weighted Fourier transform (cyclic products only)
    Fourier(FourierArgs),
    /// Apply a translation operator to a function
    Translate(TranslateArgs),
    /// Representation round trips and exports
    #[command(subcommand)]
    Rep(RepCommand),
    /// Time direct-sum vs FFT-backed convolution on cyclic groups
    Bench(BenchArgs),
    /// Check a candidate weight vector against a group
    VerifyWeight(VerifyWeightArgs),
}

#[derive(Args)]
struct ContextArgs {
    /// Group JSON file: {"type":"cyclic_product","moduli":[...]} or
    /// {"type":"cayley_table","table":[[...]]}
    #[arg(long, value_name = "FILE")]
    group: PathBuf,
    /// Weight JSON file: array of positive reals, one per group element
    #[arg(long, value_name = "FILE")]
    weight: PathBuf,
}

impl ContextArgs {
    fn load(&self) -> Result<Context, String> {
        let group: GroupSpec = read_json(&self.group, "group")?;
        let values: Vec<f64> = read_json(&self.weight, "weight")?;
        let weight = Weight::new(&group, values).map_err(|e| e.to_string())?;
        Context::new(group, weight).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct CheckLemmasArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    /// Relative tolerance for identity suites
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances per suite
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Also evaluate hypothesis-gated suites, reporting (not asserting)
    /// their residuals
    #[arg(long)]
    explore: bool,
    /// Compact single-line JSON (default pretty-prints)
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConvolveArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    /// Left factor: JSON array of [re, im] pairs
    #[arg(long, value_name = "FILE")]
    f: PathBuf,
    /// Right factor: JSON array of [re, im] pairs
    #[arg(long, value_name = "FILE")]
    g: PathBuf,
    /// Use the FFT-backed path (cyclic products only)
    #[arg(long)]
    fast: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FourierArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    /// Input function: JSON array of [re, im] pairs
    #[arg(long, value_name = "FILE")]
    f: PathBuf,
    /// Use the FFT instead of direct summation
    #[arg(long)]
    fast: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TranslateOp {
    /// Weighted left translation
    Gamma,
    /// Weighted right translation
    Theta,
    /// Classical left translation f(s^-1 t)
    L,
    /// Classical right translation f(t s)
    R,
}

#[derive(Args)]
struct TranslateArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    #[arg(long, value_enum, ignore_case = true)]
    op: TranslateOp,
    /// Element index to translate by
    #[arg(long)]
    s: usize,
    /// Input function: JSON array of [re, im] pairs
    #[arg(long, value_name = "FILE")]
    f: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum RepCommand {
    /// Integrate random unitary representations and reconstruct them back
    RoundTrip(RoundTripArgs),
    /// Export the regular representation (exact permutation matrices)
    Regular(RegularArgs),
}

#[derive(Args)]
struct RoundTripArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    /// Dimension of the random representations
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Tolerance for reconstruction and unitarity residuals
    #[arg(long, default_value_t = TOL_RECONSTRUCT)]
    tolerance: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RegularArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Cyclic group sizes to time
    #[arg(long, value_delimiter = ',', default_value = "256,1024,4096")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyWeightArgs {
    /// Group JSON file
    #[arg(long, value_name = "FILE")]
    group: PathBuf,
    /// Candidate weight JSON file (array of positive reals)
    #[arg(long, value_name = "FILE")]
    weight: PathBuf,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode, String> {
    match Cli::parse().command {
        Command::CheckLemmas(args) => cmd_check_lemmas(args),
        Command::Convolve(args) => cmd_convolve(args),
        Command::Fourier(args) => cmd_fourier(args),
        Command::Translate(args) => cmd_translate(args),
        Command::Rep(RepCommand::RoundTrip(args)) => cmd_round_trip(args),
        Command::Rep(RepCommand::Regular(args)) => cmd_regular(args),
        Command::Bench(args) => cmd_bench(args),
        Command::VerifyWeight(args) => cmd_verify_weight(args),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {what} file {}: {e}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| format!("invalid {what} JSON in {}: {e}", path.display()))
}

fn read_function(ctx: &Context, path: &Path) -> Result<AlgElement, String> {
    let pairs: Vec<[f64; 2]> = read_json(path, "function")?;
    AlgElement::from_pairs(ctx, &pairs).map_err(|e| e.to_string())
}

fn emit<T: Serialize>(value: &T, compact: bool) -> Result<(), String> {
    let text = if compact {
        serde_json::to_string(value)
    } else {
        serde_json::to_string_pretty(value)
    }
    .map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn cmd_check_lemmas(args: CheckLemmasArgs) -> Result<ExitCode, String> {
    let ctx = args.ctx.load()?;
    let cfg = LemmaConfig {
        tolerance: args.tolerance,
        seed: args.seed,
        trials: args.trials,
        explore: args.explore,
    };
    let report = run_all(&ctx, &cfg).map_err(|e| e.to_string())?;
    emit(&report, args.json)?;
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("one or more suites failed");
        Ok(ExitCode::from(1))
    }
}

fn cmd_convolve(args: ConvolveArgs) -> Result<ExitCode, String> {
    let ctx = args.ctx.load()?;
    let f = read_function(&ctx, &args.f)?;
    let g = read_function(&ctx, &args.g)?;
    let h = if args.fast {
        f.conv_w_fast(&g)
    } else {
        f.conv_w_naive(&g)
    }
    .map_err(|e| e.to_string())?;
    emit(&h.to_pairs(), args.json)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FourierOutput {
    characters: Vec<Vec<usize>>,
    values: Vec<[f64; 2]>,
}

fn cmd_fourier(args: FourierArgs) -> Result<ExitCode, String> {
    let ctx = args.ctx.load()?;
    let f = read_function(&ctx, &args.f)?;
    let values = if args.fast {
        beurling::fourier::fourier_w_fast(&f)
    } else {
        beurling::fourier::fourier_w(&f)
    }
    .map_err(|e| e.to_string())?;
    let characters = beurling::fourier::dual(ctx.group())
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|chi| chi.frequencies)
        .collect();
    let out = FourierOutput {
        characters,
        values: values.iter().map(|c| [c.re, c.im]).collect(),
    };
    emit(&out, args.json)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_translate(args: TranslateArgs) -> Result<ExitCode, String> {
    let ctx = args.ctx.load()?;
    let f = read_function(&ctx, &args.f)?;
    let s = Element(args.s);
    let out = match args.op {
        TranslateOp::Gamma => translation::gamma(s, &f),
        TranslateOp::Theta => translation::theta(s, &f),
        TranslateOp::L => translation::left_translate(s, &f),
        TranslateOp::R => translation::right_translate(s, &f),
    }
    .map_err(|e| e.to_string())?;
    emit(&out.to_pairs(), args.json)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct RoundTripReport {
    group_order: usize,
    dim: usize,
    trials: usize,
    tolerance: f64,
    max_matrix_error: f64,
    max_unitarity_residual: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<String>,
    ok: bool,
}

fn cmd_round_trip(args: RoundTripArgs) -> Result<ExitCode, String> {
    let ctx = args.ctx.load()?;
    if !(args.tolerance > 0.0) {
        return Err(format!("tolerance must be positive, got {}", args.tolerance));
    }
    let mut rng = sampling::rng_from_seed(args.seed);
    let mut max_matrix_error = 0.0f64;
    let mut max_unitarity_residual = 0.0f64;
    let mut failures = Vec::new();
    for trial in 0..args.trials {
        // A failure to build the random representation is an input problem
        // (non-cyclic group, dim 0); a failure to reconstruct is a residual
        // failure and lands in the report.
        let rep = random_unitary_rep(&ctx, args.dim, &mut rng).map_err(|e| e.to_string())?;
        let alg = AlgebraRep::from_unitary(&rep, &ctx).map_err(|e| e.to_string())?;
        match reconstruct(&alg, &ctx, args.tolerance) {
            Ok(back) => {
                for s in ctx.group().elements() {
                    let diff = op_norm(
                        &(rep.matrix(s).map_err(|e| e.to_string())?
                            - back.matrix(s).map_err(|e| e.to_string())?),
                    );
                    max_matrix_error = max_matrix_error.max(diff);
                }
                max_unitarity_residual = max_unitarity_residual.max(back.unitarity_residual());
            }
            Err(e) => failures.push(format!("trial {trial}: {e}")),
        }
    }
    let ok = failures.is_empty()
        && max_matrix_error <= args.tolerance
        && max_unitarity_residual <= args.tolerance;
    let report = RoundTripReport {
        group_order: ctx.order(),
        dim: args.dim,
        trials: args.trials,
        tolerance: args.tolerance,
        max_matrix_error,
        max_unitarity_residual,
        failures,
        ok,
    };
    emit(&report, args.json)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_regular(args: RegularArgs) -> Result<ExitCode, String> {
    let ctx = args.ctx.load()?;
    if !ctx.group().is_abelian() {
        eprintln!(
            "warning: non-abelian group; the regular representation is still \
             exact, but abelian-only identities will not hold"
        );
    }
    let rep = regular_rep(&ctx);
    emit(&rep.to_wire(), args.json)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BenchRow {
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    naive_ms: Option<f64>,
    fast_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_rel_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

/// Largest size the direct-sum path is timed at.
const NAIVE_LIMIT: usize = 1 << 16;

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, String> {
    let mut rows = Vec::new();
    let mut ok = true;
    for &size in &args.sizes {
        if size == 0 {
            return Err("bench sizes must be >= 1".into());
        }
        let group = if size == 1 {
            GroupSpec::trivial()
        } else {
            GroupSpec::cyclic(size).map_err(|e| e.to_string())?
        };
        let gens: Vec<Element> = match size {
            1 => vec![],
            2 => vec![Element(1)],
            _ => vec![Element(1), Element(size - 1)],
        };
        let weight = make_length_weight(&group, &gens, WeightForm::Polynomial { exponent: 1.0 })
            .map_err(|e| e.to_string())?;
        let ctx = Context::new(group, weight).map_err(|e| e.to_string())?;
        let mut rng = sampling::rng_from_seed(args.seed.wrapping_add(size as u64));
        let f = sampling::random_function(&ctx, &mut rng);
        let g = sampling::random_function(&ctx, &mut rng);

        let fast_start = Instant::now();
        let fast = f.conv_w_fast(&g).map_err(|e| e.to_string())?;
        let fast_ms = fast_start.elapsed().as_secs_f64() * 1e3;

        let (naive_ms, max_rel_deviation, note) = if size <= NAIVE_LIMIT {
            let naive_start = Instant::now();
            let naive = f.conv_w_naive(&g).map_err(|e| e.to_string())?;
            let naive_ms = naive_start.elapsed().as_secs_f64() * 1e3;
            let dev = relative_w1_error(&naive, &fast).map_err(|e| e.to_string())?;
            if dev >= TOL_FAST {
                ok = false;
            }
            (Some(naive_ms), Some(dev), None)
        } else {
            (
                None,
                None,
                Some(format!("naive skipped: size exceeds {NAIVE_LIMIT}")),
            )
        };
        rows.push(BenchRow {
            size,
            naive_ms,
            fast_ms,
            max_rel_deviation,
            note,
        });
    }
    emit(&rows, args.json)?;
    if ok {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("fast path deviated from the direct sum beyond {TOL_FAST:e}");
        Ok(ExitCode::from(1))
    }
}

fn cmd_verify_weight(args: VerifyWeightArgs) -> Result<ExitCode, String> {
    let group: GroupSpec = read_json(&args.group, "group")?;
    let values: Vec<f64> = read_json(&args.weight, "weight")?;
    let report = verify_weight(&group, &values).map_err(|e| e.to_string())?;
    emit(&report, args.json)?;
    if report.ok {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("invalid weight: fails verification (see report)");
        Ok(ExitCode::from(2))
    }
}
