mod checks;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rootstat::algebra::a006579;
use rootstat::census::{
    fq_pair_census, mv_census, pair_evaluations, rat_plain, rat_rounded, unlucky_sim, zn_root_census, CensusConfig,
    CensusResult, Cofactors, Mode, Stats, UnluckyConfig, DEFAULT_BUDGET,
};
use rootstat::incexc::SetSystem;
use rootstat::Error;

/// Runs estimated to take longer than this need --confirm-long.
const LONG_RUN_SECS: f64 = 60.0;

// Conservative single-worker throughputs for the runtime estimate.
const ZN_EVALS_PER_SEC: f64 = 5e7;
const TABLE_EVALS_PER_SEC: f64 = 1e8;
const SAMPLED_EVALS_PER_SEC: f64 = 2e6;
const UNLUCKY_SAMPLES_PER_SEC: f64 = 2e4;

#[derive(Parser)]
#[command(name = "rootstat", version, about = "Root counts and unlucky evaluation points over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distinct-root census of monic polynomials over Z_n.
    ZnRoots(ZnArgs),
    /// Unlucky-point census of monic bivariate pairs over GF(q).
    PairCensus(PairArgs),
    /// Unlucky-point census of monic pairs in several variables.
    MvCensus(MvArgs),
    /// Unlucky evaluation points of A = G*Â, B = G*B̂.
    Unlucky(UnluckyArgs),
    /// Inclusion-exclusion identities on set systems.
    IncexcCheck(IncexcArgs),
    /// Resultant properties on random shaped pairs.
    ResultantCheck(ResultantArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exhaustive,
    #[value(alias = "monte-carlo")]
    Montecarlo,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Montecarlo => Mode::MonteCarlo,
        }
    }
}

/// Inclusive range written `a..b`, `a..=b` or `a`.
#[derive(Clone, Copy, Debug, Serialize)]
struct Span {
    lo: u64,
    hi: u64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Span, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad bound '{t}': {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { lo, hi })
    }
}

/// `VAR=VALUE`, e.g. `x1=1` or `1=1`.
#[derive(Clone, Copy, Debug, Serialize)]
struct SliceArg {
    var: usize,
    value: u64,
}

impl FromStr for SliceArg {
    type Err = String;

    fn from_str(s: &str) -> Result<SliceArg, String> {
        let (var, value) = s.split_once('=').ok_or("expected VAR=VALUE")?;
        let var = var.trim().trim_start_matches('x');
        Ok(SliceArg {
            var: var.parse().map_err(|e| format!("bad variable: {e}"))?,
            value: value.trim().parse().map_err(|e| format!("bad value: {e}"))?,
        })
    }
}

#[derive(Args, Debug, Serialize)]
struct OutputArgs {
    /// Output directory.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct ExecArgs {
    #[arg(long, env = "ROOTSTAT_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Maximum number of gcd or root evaluations.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Allow runs estimated to take over a minute.
    #[arg(long)]
    confirm_long: bool,
}

#[derive(Args, Debug, Serialize)]
struct SamplingArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct ZnArgs {
    #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
    n: Option<u64>,
    #[arg(long, conflicts_with = "m_range", required_unless_present = "m_range")]
    m: Option<u64>,
    #[arg(long)]
    n_range: Option<Span>,
    #[arg(long)]
    m_range: Option<Span>,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Args, Debug, Serialize)]
struct PairArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    deg_f: usize,
    #[arg(long)]
    deg_g: usize,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Args, Debug, Serialize)]
struct MvArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    nvars: usize,
    #[arg(long)]
    deg_f: usize,
    #[arg(long)]
    deg_g: usize,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Args, Debug, Serialize)]
struct UnluckyArgs {
    /// Prime field size.
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 3)]
    nvars: usize,
    /// Fixed cofactor Â, e.g. "x0^2 + x2".
    #[arg(long, requires = "b")]
    a: Option<String>,
    /// Fixed cofactor B̂.
    #[arg(long, requires = "a")]
    b: Option<String>,
    /// Fixed common factor G (default 1).
    #[arg(long, requires = "a")]
    g: Option<String>,
    /// Degree of random G.
    #[arg(long, default_value_t = 1)]
    deg_g: usize,
    /// Degree of random Â.
    #[arg(long, default_value_t = 2)]
    deg_a: usize,
    /// Degree of random B̂.
    #[arg(long, default_value_t = 2)]
    deg_b: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also report the points with x_VAR = VALUE.
    #[arg(long)]
    slice: Option<SliceArg>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Args, Debug, Serialize)]
struct IncexcArgs {
    /// Set system file: header `UNIVERSE_SIZE SETS`, then one line of
    /// increasing indices per set.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    file: Option<PathBuf>,
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    max_sets: usize,
    #[arg(long, default_value_t = 50)]
    max_universe: usize,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct ResultantArgs {
    /// Field sizes to draw from.
    #[arg(long, value_delimiter = ',', default_value = "5,7,11")]
    fields: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    max_vars: usize,
    #[arg(long, default_value_t = 4)]
    max_deg: usize,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Module(Error),
    NeedsConfirm(f64),
    Io(PathBuf, std::io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Module(Error::BudgetExceeded { .. }) => 3,
            Failure::Module(_) => 4,
            Failure::NeedsConfirm(_) => 5,
            Failure::Io(..) => 6,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage: {msg}"),
            Failure::Module(e) => write!(f, "{e}"),
            Failure::NeedsConfirm(secs) => {
                write!(f, "estimated runtime {secs:.0} s exceeds {LONG_RUN_SECS} s; pass --confirm-long to run it")
            }
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Module(e)
    }
}

/// What a subcommand reports back for the manifest.
struct Report {
    passed: bool,
    seed: Option<u64>,
    workers: usize,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(dir.to_path_buf(), e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Failure::Io(path, e))
}

fn write_json(dir: &Path, name: &str, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    write_file(dir, name, &(text + "\n"))
}

fn write_result(output: &OutputArgs, stem: &str, res: &CensusResult) -> Result<(), Failure> {
    match output.format {
        Format::Json => write_json(&output.out, &format!("{stem}.json"), &res.to_json()),
        Format::Csv => write_file(&output.out, &format!("{stem}.csv"), &res.to_csv()),
    }
}

fn check_runtime(exec: &ExecArgs, work: f64, rate: f64) -> Result<(), Failure> {
    let secs = work / (rate * exec.workers.max(1) as f64);
    if secs > LONG_RUN_SECS && !exec.confirm_long {
        Err(Failure::NeedsConfirm(secs))
    } else {
        Ok(())
    }
}

fn census_config(sampling: Option<&SamplingArgs>, exec: &ExecArgs) -> CensusConfig {
    let mut cfg = CensusConfig { workers: exec.workers, budget: exec.budget, ..CensusConfig::default() };
    if let Some(s) = sampling {
        cfg.mode = s.mode.into();
        cfg.samples = s.samples;
        cfg.seed = s.seed;
    }
    cfg
}

fn stats_line(res: &CensusResult) -> String {
    let theory = format!("theory mean {}, variance {}", rat_plain(&res.theory_mean), rat_plain(&res.theory_var));
    match &res.stats {
        Stats::Exact { mean, variance } => {
            format!("mean {}, variance {} ({theory})", rat_plain(mean), rat_plain(variance))
        }
        Stats::Estimated(e) => format!(
            "mean {:.6} +- {:.6}, variance {:.6} +- {:.6} ({theory})",
            e.mean, e.stderr_mean, e.variance, e.stderr_variance
        ),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "agrees"
    } else {
        "DISAGREES"
    }
}

fn zn_roots(args: &ZnArgs) -> Result<Report, Failure> {
    let ns = args.n_range.unwrap_or_else(|| Span { lo: args.n.unwrap_or(0), hi: args.n.unwrap_or(0) });
    let ms = args.m_range.unwrap_or_else(|| Span { lo: args.m.unwrap_or(0), hi: args.m.unwrap_or(0) });
    if ns.lo < 2 {
        return Err(Failure::Usage("n must be at least 2".into()));
    }
    if ms.lo < 1 {
        return Err(Failure::Usage("m must be at least 1".into()));
    }
    let work: f64 = (ns.lo..=ns.hi)
        .flat_map(|n| (ms.lo..=ms.hi).map(move |m| (n as f64).powf(m as f64 + 1.0)))
        .sum();
    check_runtime(&args.exec, work, ZN_EVALS_PER_SEC)?;
    let cfg = census_config(None, &args.exec);
    let mut passed = true;
    println!("{:>4} {:>3} {:>6} {:>10} {:>8}  theory", "n", "m", "mean", "Var[X]", "a(n)");
    for n in ns.lo..=ns.hi {
        for m in ms.lo..=ms.hi {
            let res = zn_root_census(n, m as usize, &cfg)?;
            write_result(&args.output, &format!("zn-roots-n{n}-m{m}"), &res)?;
            let Stats::Exact { mean, variance } = &res.stats else { unreachable!("exhaustive") };
            let ok = res.theory_agrees();
            passed &= ok;
            println!(
                "{n:>4} {m:>3} {:>6} {:>10} {:>8}  {}",
                rat_plain(mean),
                rat_plain(variance),
                a006579(n),
                verdict(ok)
            );
        }
    }
    Ok(Report { passed, seed: None, workers: args.exec.workers })
}

fn print_census(res: &CensusResult) -> bool {
    println!("{:>4} {:>14} {:>14}", "k", "F_k", "B_k");
    for (k, f) in res.freq.iter().enumerate() {
        let b = res.binomial_ref.as_ref().map(|b| rat_rounded(&b[k]).to_string()).unwrap_or_default();
        println!("{k:>4} {f:>14} {b:>14}");
    }
    println!("population {}", res.population);
    let ok = res.theory_agrees();
    println!("{}: {}", stats_line(res), verdict(ok));
    let gap = res.resultant_gap_holds();
    if let Some(g) = gap {
        println!("no counts strictly between the resultant degree and q: {}", verdict(g));
    }
    ok && gap != Some(false)
}

fn run_pairs(
    exec: &ExecArgs,
    sampling: &SamplingArgs,
    (q, nvars, deg_f, deg_g): (u64, usize, usize, usize),
) -> Result<(CensusResult, Option<u64>), Failure> {
    let cfg = census_config(Some(sampling), exec);
    let evals = pair_evaluations(q, nvars, deg_f, deg_g, &cfg).map_or(f64::INFINITY, |e| e as f64);
    let rate = match cfg.mode {
        Mode::Exhaustive => TABLE_EVALS_PER_SEC,
        Mode::MonteCarlo => SAMPLED_EVALS_PER_SEC,
    };
    if evals as u128 <= cfg.budget {
        check_runtime(exec, evals, rate)?;
    }
    let res = if nvars == 2 { fq_pair_census(q, deg_f, deg_g, &cfg)? } else { mv_census(q, nvars, deg_f, deg_g, &cfg)? };
    let seed = (cfg.mode == Mode::MonteCarlo).then_some(cfg.seed);
    Ok((res, seed))
}

fn pair_census(args: &PairArgs) -> Result<Report, Failure> {
    let (res, seed) = run_pairs(&args.exec, &args.sampling, (args.q, 2, args.deg_f, args.deg_g))?;
    write_result(&args.output, &format!("pair-census-q{}-f{}-g{}", args.q, args.deg_f, args.deg_g), &res)?;
    let passed = print_census(&res);
    Ok(Report { passed, seed, workers: args.exec.workers })
}

fn mv_census_cmd(args: &MvArgs) -> Result<Report, Failure> {
    if args.nvars < 2 {
        return Err(Failure::Usage("nvars must be at least 2".into()));
    }
    let (res, seed) = run_pairs(&args.exec, &args.sampling, (args.q, args.nvars, args.deg_f, args.deg_g))?;
    let stem = format!("mv-census-q{}-v{}-f{}-g{}", args.q, args.nvars, args.deg_f, args.deg_g);
    write_result(&args.output, &stem, &res)?;
    let passed = print_census(&res);
    println!("per-point frequency {:.6} (1/q = {:.6})", res.per_point_frequency(), 1.0 / args.q as f64);
    Ok(Report { passed, seed, workers: args.exec.workers })
}

fn unlucky(args: &UnluckyArgs) -> Result<Report, Failure> {
    let cofactors = match (&args.a, &args.b) {
        (Some(a), Some(b)) => Cofactors::Fixed { a: a.clone(), b: b.clone(), g: args.g.clone() },
        _ => Cofactors::Random { deg_g: args.deg_g, deg_a: args.deg_a, deg_b: args.deg_b },
    };
    let rate = match cofactors {
        Cofactors::Fixed { .. } => UNLUCKY_SAMPLES_PER_SEC * 10.0,
        Cofactors::Random { .. } => UNLUCKY_SAMPLES_PER_SEC,
    };
    check_runtime(&args.exec, args.samples as f64, rate)?;
    let cfg = UnluckyConfig {
        p: args.p,
        nvars: args.nvars,
        cofactors,
        samples: args.samples,
        seed: args.seed,
        workers: args.exec.workers,
        slice: args.slice.map(|s| (s.var, s.value)),
    };
    let r = unlucky_sim(&cfg)?;
    write_json(&args.out, &format!("unlucky-p{}.json", args.p), &r.to_json())?;
    let bound = rat_plain(&r.bound);
    println!("samples {}, unlucky {}", args.samples, r.unlucky);
    println!("frequency {:.6} +- {:.6} (1/p = {:.6}, bound deg Â deg B̂ / p = {bound})", r.frequency, r.stderr, 1.0 / args.p as f64);
    if let Some(cf) = r.coprime_frequency() {
        println!("coprime cofactors: {} draws, frequency {cf:.6}", r.coprime_draws);
    }
    if let Some(s) = &r.slice {
        let f = s.frequency.map_or("n/a".to_string(), |f| format!("{f:.6}"));
        println!("slice x{} = {}: {} points, {} unlucky, frequency {f}", s.var, s.value, s.points, s.unlucky);
    }
    println!("image degree mismatches {}", r.image_mismatches);
    // Schwartz-Zippel: coprime cofactors are unlucky with probability at most the bound
    let bound_f = r.deg_a as f64 * r.deg_b as f64 / args.p as f64;
    let bound_ok = match r.coprime_frequency() {
        Some(cf) => {
            let se = (cf * (1.0 - cf) / r.coprime_draws as f64).sqrt();
            cf <= bound_f + 3.0 * se
        }
        None => true,
    };
    println!("Schwartz-Zippel bound on coprime draws: {}", verdict(bound_ok));
    Ok(Report { passed: bound_ok && r.image_mismatches == 0, seed: Some(args.seed), workers: args.exec.workers })
}

fn incexc_check(args: &IncexcArgs) -> Result<Report, Failure> {
    let (systems, seed) = match &args.file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.clone(), e))?;
            (vec![text.parse::<SetSystem>()?], None)
        }
        None => (checks::random_systems(args.trials, args.seed, args.max_sets, args.max_universe), Some(args.seed)),
    };
    let summary = checks::incexc_suite(systems);
    write_json(&args.out, "incexc-check.json", &json!(summary))?;
    println!("{} set systems, {} failures", summary.systems, summary.failures);
    if let Some(f) = &summary.first_failure {
        println!("first failure: {f}");
    }
    Ok(Report { passed: summary.failures == 0, seed, workers: 1 })
}

fn resultant_check(args: &ResultantArgs) -> Result<Report, Failure> {
    if args.max_vars < 2 || args.max_deg < 1 || args.fields.is_empty() {
        return Err(Failure::Usage("need --max-vars >= 2, --max-deg >= 1 and at least one field".into()));
    }
    let summary = checks::resultant_suite(&args.fields, args.max_vars, args.max_deg, args.trials, args.seed)?;
    write_json(&args.out, "resultant-check.json", &json!(summary))?;
    println!(
        "{} pairs, {} points: {} specialization, {} degree, {} gcd failures",
        summary.pairs, summary.points, summary.specialization_failures, summary.degree_failures, summary.gcd_failures
    );
    if let Some(f) = &summary.first_failure {
        println!("first failure: {f}");
    }
    Ok(Report { passed: summary.passed(), seed: Some(args.seed), workers: 1 })
}

fn dispatch(command: &Command) -> (&'static str, Value, &Path, Result<Report, Failure>) {
    match command {
        Command::ZnRoots(a) => ("zn-roots", json!(a), &a.output.out, zn_roots(a)),
        Command::PairCensus(a) => ("pair-census", json!(a), &a.output.out, pair_census(a)),
        Command::MvCensus(a) => ("mv-census", json!(a), &a.output.out, mv_census_cmd(a)),
        Command::Unlucky(a) => ("unlucky", json!(a), &a.out, unlucky(a)),
        Command::IncexcCheck(a) => ("incexc-check", json!(a), &a.out, incexc_check(a)),
        Command::ResultantCheck(a) => ("resultant-check", json!(a), &a.out, resultant_check(a)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, params, out, outcome) = dispatch(&cli.command);
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("rootstat {name}: {e}");
            return ExitCode::from(e.code());
        }
    };
    let manifest = json!({
        "subcommand": name,
        "params": params,
        "seed": report.seed.map(|s| s.to_string()),
        "workers": report.workers,
        "version": env!("CARGO_PKG_VERSION"),
        "duration_seconds": start.elapsed().as_secs_f64(),
        "passed": report.passed,
    });
    if let Err(e) = write_json(out, "manifest.json", &manifest) {
        eprintln!("rootstat {name}: {e}");
        return ExitCode::from(e.code());
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("rootstat {name}: theory check failed");
        ExitCode::from(1)
    }
}
