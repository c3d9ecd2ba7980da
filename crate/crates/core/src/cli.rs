//! Command-line front end. Every command builds its complete output in
//! memory before anything is written, so a rejected input never leaves a
//! partial file behind.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::io::{automaton_from_json, csv, fmt_float, markov_from_json, potential_from_json, read_file, write_output};
use crate::markov::MarkovMeasure;
use crate::multiplicative::{automaton_corpus, kps_report, psss_report};
use crate::riesz::{WalshRieszMeasure, walsh_average, walsh_spectrum};
use crate::symbolic::{PrefixAutomaton, SemigroupSpec};
use crate::telescopic::{TelescopicMeasure, running_averages};
use crate::thermo::{Potential, PressureCurve, markov_measure};
use crate::verify::{self, Options};
use crate::walks::{EvolutionMeasure, WalkLevel, WalkSystem, trajectory, walk_spectrum};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

impl Error {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence { .. } => EXIT_NONCONVERGENCE,
            _ => EXIT_CONFIG,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "multifractal", version, about = "Multifractal spectra, dimensions of invariant sets and oriented walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pressure and level-set spectrum of a potential along an s grid.
    Spectrum(SpectrumArgs),
    /// Hausdorff and box dimension of a multiplicatively invariant set.
    Dims(DimsArgs),
    /// Oriented-walk spectrum at a frequency, on a grid, or a sampled trajectory.
    Walk(WalkArgs),
    /// Sample a Riesz product on {-1,1}^N and report its Walsh average.
    Riesz(RieszArgs),
    /// Sample a telescopic product measure.
    Sample(SampleArgs),
    /// Run the cross-validation suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Potential JSON file.
    #[arg(long, conflicts_with = "builtin")]
    pub config: Option<PathBuf>,
    /// phi1, phi2, rademacher:q:d or constant:c.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Grid of s values, start:stop:count.
    #[arg(long, allow_hyphen_values = true, default_value = "-10:10:401")]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    /// Automaton JSON file.
    #[arg(long, conflicts_with = "builtin")]
    pub config: Option<PathBuf>,
    /// fibonacci, full:m, no-ones:r or a corpus name such as even-shift.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Scale of the geometric chains.
    #[arg(long, conflicts_with = "semigroup")]
    pub q: Option<usize>,
    /// Generators of the multiplicative semigroup, e.g. 2,3.
    #[arg(long)]
    pub semigroup: Option<String>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    /// Walk system JSON file.
    #[arg(long, visible_alias = "system", conflicts_with = "builtin")]
    pub config: Option<PathBuf>,
    /// case1 or case2.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Frequency vector, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["grid", "trajectory"])]
    pub alpha: Option<String>,
    /// Grid start:stop:count applied to every coordinate.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "trajectory")]
    pub grid: Option<String>,
    /// Sample a trajectory of this many steps from the measure at --s.
    #[arg(long)]
    pub trajectory: Option<usize>,
    /// Parameter of the sampling measure, comma separated; zero by default.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RieszArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    /// Length of the Walsh average; the sampled path has d n coordinates.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also report the spectrum on an alpha grid start:stop:count.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// File receiving the sampled path as one line of +1/-1.
    #[arg(long)]
    pub path_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// uniform, uniform:m, bernoulli:p0,p1,... or a Markov JSON file.
    #[arg(long, conflicts_with = "potential")]
    pub measure: Option<String>,
    /// Sample the equilibrium measure of this potential (builtin or file).
    #[arg(long)]
    pub potential: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub s: f64,
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit running multiple averages of the potential as CSV n,avg.
    #[arg(long, requires = "potential")]
    pub average: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run a single named check.
    #[arg(long)]
    pub only: Option<String>,
    /// Largest n for the exact count comparison.
    #[arg(long, default_value_t = 24)]
    pub n: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// List the available checks.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `start:stop:count` with `count ≥ 2`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(Error::invalid(format!("grid '{text}' is not start:stop:count")));
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::invalid(format!("grid bound '{s}' is not a finite number")))
    };
    let (a, b) = (num(a)?, num(b)?);
    let n: usize = n.trim().parse().map_err(|_| Error::invalid(format!("grid count '{n}' is not an integer")))?;
    if n < 2 {
        return Err(Error::invalid("grid count must be at least 2"));
    }
    Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::invalid(format!("'{s}' is not a finite number")))
        })
        .collect()
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("tolerance must be positive, got {tol}")))
    }
}

fn usize_field(text: &str, what: &str) -> Result<usize> {
    text.parse().map_err(|_| Error::invalid(format!("{what} '{text}' is not a non-negative integer")))
}

pub fn builtin_potential(name: &str) -> Result<Potential> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["phi1"] => Ok(Potential::phi1()),
        ["phi2"] => Ok(Potential::phi2()),
        ["rademacher", q, d] => Potential::rademacher_product(usize_field(q, "q")?, usize_field(d, "d")?),
        ["constant", c] => Potential::constant(2, 2, 2, parse_list(c)?[0]),
        _ => Err(Error::invalid(format!("unknown potential '{name}'"))),
    }
}

fn load_potential(config: Option<&PathBuf>, builtin: Option<&str>) -> Result<Potential> {
    match (config, builtin) {
        (Some(path), _) => potential_from_json(&read_file(path)?),
        (None, Some(name)) => builtin_potential(name),
        (None, None) => Err(Error::invalid("give a potential with --config or --builtin")),
    }
}

/// A potential named on the command line: a builtin name or a JSON file.
fn potential_argument(text: &str) -> Result<Potential> {
    builtin_potential(text).or_else(|_| potential_from_json(&read_file(std::path::Path::new(text))?))
}

pub fn builtin_automaton(name: &str) -> Result<PrefixAutomaton> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["fibonacci"] => Ok(PrefixAutomaton::golden_mean()),
        ["full", m] => PrefixAutomaton::full_shift(usize_field(m, "alphabet size")?),
        ["no-ones", r] => PrefixAutomaton::forbid_ones_run(usize_field(r, "run length")?),
        [other] => automaton_corpus()
            .into_iter()
            .find(|(n, _)| n == other)
            .map(|(_, a)| a)
            .ok_or_else(|| Error::invalid(format!("unknown automaton '{name}'"))),
        _ => Err(Error::invalid(format!("unknown automaton '{name}'"))),
    }
}

pub fn builtin_walk(name: &str) -> Result<WalkSystem> {
    match name {
        "case1" => Ok(WalkSystem::case1()),
        "case2" => Ok(WalkSystem::case2()),
        _ => Err(Error::invalid(format!("unknown walk system '{name}'"))),
    }
}

fn parse_measure(text: &str) -> Result<MarkovMeasure> {
    let (head, tail) = text.split_once(':').unwrap_or((text, ""));
    match head {
        "uniform" if tail.is_empty() => MarkovMeasure::uniform(2),
        "uniform" => MarkovMeasure::uniform(usize_field(tail, "alphabet size")?),
        "bernoulli" => MarkovMeasure::bernoulli(parse_list(tail)?),
        _ => markov_from_json(&read_file(std::path::Path::new(text))?),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// What a successful command produced, before anything is written.
struct Emission {
    files: Vec<(Option<PathBuf>, String)>,
    exit: i32,
}

impl Emission {
    fn one(out: &Option<PathBuf>, text: String) -> Self {
        Emission { files: vec![(out.clone(), text)], exit: 0 }
    }
}

/// Runs a parsed command and returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Spectrum(a) => spectrum(&a),
        Command::Dims(a) => dims(&a),
        Command::Walk(a) => walk(&a),
        Command::Riesz(a) => riesz(&a),
        Command::Sample(a) => sample(&a),
        Command::Verify(a) => verify_cmd(&a),
    };
    let emission = match result {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    for (path, text) in &emission.files {
        if let Err(e) = write_output(path.as_deref(), text) {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    }
    emission.exit
}

fn spectrum(args: &SpectrumArgs) -> Result<Emission> {
    let grid = parse_grid(&args.grid)?;
    let pot = load_potential(args.config.as_ref(), args.builtin.as_deref())?;
    // A constant potential has a single level: one point at s = 0.
    let grid = if pot.is_constant() { vec![0.0] } else { grid };
    let curve = PressureCurve::sample(&pot, &grid)?;
    let text = match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(
            &["s", "P", "dP", "alpha", "dim"],
            &curve
                .points
                .iter()
                .map(|p| [p.s, p.pressure, p.derivative, p.alpha, p.dim].map(fmt_float).to_vec())
                .collect::<Vec<_>>(),
        ),
        Format::Json => to_json(&json!({
            "points": curve.points.iter().map(|p| json!({
                "s": p.s, "P": p.pressure, "dP": p.derivative, "alpha": p.alpha, "dim": p.dim
            })).collect::<Vec<_>>()
        })),
    };
    Ok(Emission::one(&args.output.out, text))
}

fn dims(args: &DimsArgs) -> Result<Emission> {
    check_tol(args.tol)?;
    let automaton = match (&args.config, &args.builtin) {
        (Some(path), _) => automaton_from_json(&read_file(path)?)?,
        (None, Some(name)) => builtin_automaton(name)?,
        (None, None) => return Err(Error::invalid("give an automaton with --config or --builtin")),
    };
    let report = match &args.semigroup {
        Some(list) => {
            let primes = list
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|_| Error::invalid(format!("generator '{p}' is not an integer"))))
                .collect::<Result<Vec<_>>>()?;
            psss_report(&automaton, &SemigroupSpec::new(primes)?, args.tol)?
        }
        None => kps_report(&automaton, args.q.unwrap_or(2), args.tol)?,
    };
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => csv(
            &["dim_H", "dim_B", "symmetric", "residual"],
            &[vec![fmt_float(report.dim_h), fmt_float(report.dim_b), report.symmetric.to_string(), fmt_float(report.residual)]],
        ),
    };
    Ok(Emission::one(&args.output.out, text))
}

fn level_json(alpha: &[f64], level: &WalkLevel) -> serde_json::Value {
    match level {
        WalkLevel::Interior { dim, s } => json!({"alpha": alpha, "dim": dim, "level": "interior", "s": s}),
        WalkLevel::Extrapolated { dim, s } => json!({"alpha": alpha, "dim": dim, "level": "extrapolated", "s": s}),
        WalkLevel::OutOfDomain { residual } => {
            json!({"alpha": alpha, "dim": null, "level": "out-of-domain", "residual": residual})
        }
    }
}

fn walk(args: &WalkArgs) -> Result<Emission> {
    let system = match (&args.config, &args.builtin) {
        (Some(path), _) => serde_json::from_str::<WalkSystem>(&read_file(path)?)?,
        (None, Some(name)) => builtin_walk(name)?,
        (None, None) => return Err(Error::invalid("give a walk system with --config or --builtin")),
    };
    let dim = system.dimension();
    let check_len = |v: &[f64], what: &str| {
        if v.len() == dim {
            Ok(())
        } else {
            Err(Error::invalid(format!("{what} has {} coordinates, the walk lives in dimension {dim}", v.len())))
        }
    };
    let out = &args.output.out;
    if let Some(n) = args.trajectory {
        if n < 1 {
            return Err(Error::invalid("trajectory length must be at least 1"));
        }
        let s = match &args.s {
            Some(text) => parse_list(text)?,
            None => vec![0.0; dim],
        };
        check_len(&s, "--s")?;
        let mu = EvolutionMeasure::new(&system, &s)?;
        let x = mu.sample(n, args.seed, 0);
        let path = trajectory(&system, &x, n)?;
        let mut header = vec!["n".to_string()];
        header.extend((1..=dim).map(|i| format!("x{i}")));
        let rows = path
            .iter()
            .enumerate()
            .map(|(k, p)| std::iter::once((k + 1).to_string()).chain(p.iter().map(|&c| fmt_float(c))).collect())
            .collect::<Vec<Vec<String>>>();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        return Ok(Emission::one(out, csv(&header, &rows)));
    }
    if let Some(text) = &args.alpha {
        let alpha = parse_list(text)?;
        check_len(&alpha, "--alpha")?;
        let level = walk_spectrum(&system, &alpha)?;
        let text = match args.output.format.unwrap_or(Format::Json) {
            Format::Json => to_json(&level_json(&alpha, &level)),
            Format::Csv => walk_csv(dim, &[(alpha, level)]),
        };
        return Ok(Emission::one(out, text));
    }
    let axis = parse_grid(args.grid.as_deref().unwrap_or("-0.95:0.95:39"))?;
    let mut points: Vec<Vec<f64>> = vec![vec![]];
    for _ in 0..dim {
        points = points.into_iter().flat_map(|p| axis.iter().map(move |&a| [p.clone(), vec![a]].concat())).collect();
    }
    let levels = points
        .into_iter()
        .map(|a| {
            let l = walk_spectrum(&system, &a)?;
            Ok((a, l))
        })
        .collect::<Result<Vec<_>>>()?;
    let text = match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => walk_csv(dim, &levels),
        Format::Json => to_json(&levels.iter().map(|(a, l)| level_json(a, l)).collect::<Vec<_>>()),
    };
    Ok(Emission::one(out, text))
}

fn walk_csv(dim: usize, levels: &[(Vec<f64>, WalkLevel)]) -> String {
    let mut header: Vec<String> = (1..=dim).map(|i| format!("alpha{i}")).collect();
    header.push("dim".into());
    let rows = levels
        .iter()
        .map(|(a, l)| {
            a.iter()
                .map(|&c| fmt_float(c))
                .chain(std::iter::once(l.dim().map_or_else(|| "nan".to_string(), fmt_float)))
                .collect()
        })
        .collect::<Vec<Vec<String>>>();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv(&header, &rows)
}

fn riesz(args: &RieszArgs) -> Result<Emission> {
    let mu = WalshRieszMeasure::new(args.d, args.b)?;
    let len = args.d.checked_mul(args.n).filter(|&l| l >= 1).ok_or_else(|| Error::invalid("d n must be positive"))?;
    let spectrum = match &args.grid {
        Some(g) => parse_grid(g)?.into_iter().map(|a| Ok([a, walsh_spectrum(args.d, a)?])).collect::<Result<Vec<_>>>()?,
        None => vec![],
    };
    let path = mu.sample(len, args.seed)?;
    let average = walsh_average(&path, args.d, args.n)?;
    let summary = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&json!({
            "d": args.d, "b": args.b, "n": args.n, "seed": args.seed, "average": average, "spectrum": spectrum
        })),
        Format::Csv => csv(
            &["d", "b", "n", "seed", "average"],
            &[vec![args.d.to_string(), fmt_float(args.b), args.n.to_string(), args.seed.to_string(), fmt_float(average)]],
        ),
    };
    let mut files = Vec::new();
    if let Some(p) = &args.path_out {
        files.push((Some(p.clone()), format!("{path}\n")));
    }
    files.push((args.output.out.clone(), summary));
    Ok(Emission { files, exit: 0 })
}

fn sample(args: &SampleArgs) -> Result<Emission> {
    if args.n < 1 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let (base, potential) = match (&args.measure, &args.potential) {
        (_, Some(p)) => {
            let pot = potential_argument(p)?;
            (markov_measure(&pot, args.s)?, Some(pot))
        }
        (Some(m), None) => (parse_measure(m)?, None),
        (None, None) => (MarkovMeasure::uniform(2)?, None),
    };
    let q = potential.as_ref().map_or(args.q, Potential::q);
    let measure = TelescopicMeasure::new(base, q)?;
    let path = measure.sample(args.n, args.seed)?;
    let text = match (&potential, args.average) {
        (Some(pot), true) => {
            let span = pot.q().pow(pot.d() as u32 - 1);
            let horizon = args.n / span;
            if horizon < 1 {
                return Err(Error::invalid(format!("n must be at least {span} to average this potential")));
            }
            let rows = running_averages(&path.symbols, pot, &checkpoints(horizon))?
                .into_iter()
                .map(|(n, avg)| vec![n.to_string(), fmt_float(avg)])
                .collect::<Vec<_>>();
            csv(&["n", "avg"], &rows)
        }
        _ => match args.output.format.unwrap_or(Format::Csv) {
            Format::Csv => format!("{}\n", path.to_line()),
            Format::Json => to_json(&json!({"n": path.n, "seed": path.seed, "symbols": path.symbols})),
        },
    };
    Ok(Emission::one(&args.output.out, text))
}

/// `1, 2, 5, 10, 20, 50, ...` up to and including `horizon`.
fn checkpoints(horizon: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut scale = 1usize;
    'outer: loop {
        for k in [1, 2, 5] {
            match scale.checked_mul(k) {
                Some(c) if c < horizon => out.push(c),
                _ => break 'outer,
            }
        }
        scale = match scale.checked_mul(10) {
            Some(s) => s,
            None => break,
        };
    }
    out.push(horizon);
    out
}

fn verify_cmd(args: &VerifyArgs) -> Result<Emission> {
    if args.list {
        let names: String = verify::check_names().map(|n| format!("{n}\n")).collect();
        return Ok(Emission::one(&args.output.out, names));
    }
    if args.n < 1 {
        return Err(Error::invalid("--n must be at least 1"));
    }
    let opts = Options { count_n: args.n, seed: args.seed };
    let checks = match &args.only {
        Some(name) => vec![verify::run_check(name, &opts)?],
        None => verify::run_suite(&opts)?,
    };
    let passed = checks.iter().all(|c| c.passed);
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&json!({"passed": passed, "checks": checks})),
        Format::Csv => csv(
            &["name", "passed", "measured", "bound"],
            &checks
                .iter()
                .map(|c| vec![c.name.to_string(), c.passed.to_string(), fmt_float(c.measured), fmt_float(c.bound)])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Emission { files: vec![(args.output.out.clone(), text)], exit: if passed { 0 } else { EXIT_VERIFICATION } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert!(parse_grid("0:1:1").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:inf:4").is_err());
    }

    #[test]
    fn checkpoint_ladder() {
        assert_eq!(checkpoints(120), vec![1, 2, 5, 10, 20, 50, 100, 120]);
        assert_eq!(checkpoints(1), vec![1]);
        assert_eq!(checkpoints(5), vec![1, 2, 5]);
    }

    #[test]
    fn builtins_resolve() {
        assert_eq!(builtin_potential("rademacher:2:3").unwrap().d(), 3);
        assert!(builtin_potential("phi9").is_err());
        assert!(builtin_automaton("even-shift").is_ok());
        assert!(builtin_automaton("full:1").is_err());
        assert!(parse_measure("bernoulli:0.25,0.75").is_ok());
    }

    #[test]
    fn error_codes() {
        assert_eq!(Error::invalid("x").exit_code(), EXIT_CONFIG);
        assert_eq!(Error::NonConvergence { what: "x", iterations: 1, residual: 1.0 }.exit_code(), EXIT_NONCONVERGENCE);
    }
}
