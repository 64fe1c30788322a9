use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use densitymod::exact::GaussRat;
use densitymod::gk::{classify, ClassificationReport};
use densitymod::lorentz::{iwasawa, LorentzMatrix};
use densitymod::selftest::{self, SelftestConfig, SelftestReport};
use densitymod::theta::{verify_theorem1, Theorem1Config, Theorem1Report};
use densitymod::Error;
use serde::Serialize;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "densitymod", version, about = "Tensor densities on spheres as (g,K)-modules")]
struct Cli {
    /// Output format; csv is only available for matrix output (iwasawa).
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Submodules and unitarity for densities of degree λ on Sⁿ, compared with the reference table.
    Classify(ClassifyArgs),
    /// Residual chain for the equivalence with the spherical series at ν = nλ.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1(VerifyArgs),
    /// Iwasawa factors g = k·h(t)·n(a) of a Lorentz matrix read from CSV.
    Iwasawa(IwasawaArgs),
    /// Full invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Target {
    /// Sphere dimension.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
    n: u32,
    /// Degree λ as a Gaussian rational, e.g. -1/2 or 1/2+1/1*i.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_lambda)]
    lambda: GaussRat,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
    max_degree: u32,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: Target,
    /// Number of random θ-points.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    grid: u64,
    /// Number of polynomial probes.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    probes: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Run the main residuals at ν = nλ + offset.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_lambda)]
    force_nu_offset: Option<GaussRat>,
}

#[derive(Args)]
struct IwasawaArgs {
    /// Row-major CSV file with an (n+2)×(n+2) matrix; `-` reads stdin.
    matrix: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Reduced grid.
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Degree cap; defaults to 8, or 5 with --quick.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
    max_degree: Option<u32>,
}

fn parse_lambda(s: &str) -> Result<GaussRat, String> {
    s.parse::<GaussRat>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn emit<T: Serialize>(report: &T, format: Format, text: impl FnOnce(&T) -> String) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let s = serde_json::to_string_pretty(report).map_err(|e| Failure::Internal(e.to_string()))?;
            println!("{s}");
        }
        Format::Text => print!("{}", text(report)),
        Format::Csv => return Err(Failure::Usage("csv output is only available for iwasawa".into())),
    }
    Ok(())
}

fn classify_text(r: &ClassificationReport) -> String {
    let mut s = format!("n = {}, λ = {}, ν = {}, D = {}\n", r.n, r.lambda, r.nu, r.max_degree);
    s += &format!("simple: {}\n", r.simple);
    for set in &r.invariant_sets {
        let dim = set.dimension.map(|d| format!(", dimension {d}")).unwrap_or_default();
        s += &format!("invariant set {} ({}{dim})\n", set.description, if set.finite { "finite" } else { "infinite" });
    }
    for u in &r.unitarity {
        s += &format!("{}: unitary {} (form {:?})\n", u.label, u.unitary, u.form.kind);
    }
    for d in &r.discrepancies {
        s += &format!("{}: {} [{}] computed {:?}\n", d.kind, d.case, d.entry, d.computed);
        for reading in &d.readings {
            s += &format!("  reading: {reading}\n");
        }
    }
    s += &format!("agreement: {}\n", r.agreement);
    for d in &r.disagreements {
        s += &format!("  disagreement: {d}\n");
    }
    if r.discrepancy_documented {
        s += "discrepancy-documented\n";
    }
    s
}

fn verify_text(r: &Theorem1Report) -> String {
    let mut s = format!("n = {}, λ = {}, ν = {}, {} points × {} probes\n", r.n, r.lambda, r.nu, r.grid, r.probes);
    for g in &r.generators {
        s += &format!(
            "{} ↦ {}·{}: correspondence {:.3e}, intertwining {:.3e}, chain {:.3e}\n",
            g.generator, g.factor, g.group_generator, g.correspondence, g.intertwining, g.chain
        );
    }
    s += &format!(
        "control at ν = {}: intertwining {:.3e}, chain {:.3e} (threshold {:.0e})\n",
        r.control.nu, r.control.intertwining, r.control.chain, r.control.threshold
    );
    s += &format!("{}\n", if r.passed { "PASS" } else { "FAIL" });
    s
}

fn selftest_text(r: &SelftestReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        s += &format!("{} [{}] {}: {}\n", c.id, if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        for f in &c.failures {
            s += &format!("  {f}\n");
        }
    }
    s += &format!("{}\n", if r.passed { "PASS" } else { "FAIL" });
    s
}

#[derive(Serialize)]
struct IwasawaOutput {
    n: usize,
    k: Vec<Vec<f64>>,
    t: f64,
    a: Vec<f64>,
    residual: f64,
    tolerance: f64,
    passed: bool,
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn csv_row(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.17e}")).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Classify(a) => {
            let r = classify(a.target.n as usize, &a.target.lambda, a.max_degree)?;
            emit(&r, cli.format, classify_text)?;
            Ok(r.agreement)
        }
        Command::VerifyTheorem1(a) => {
            let mut cfg = Theorem1Config::new(a.target.n as usize, a.target.lambda);
            cfg.grid = a.grid as usize;
            cfg.probes = a.probes as usize;
            cfg.seed = a.seed;
            cfg.tolerance = a.tolerance;
            cfg.nu_offset = a.force_nu_offset;
            let r = verify_theorem1(&cfg)?;
            emit(&r, cli.format, verify_text)?;
            Ok(r.passed)
        }
        Command::Iwasawa(a) => {
            let g = LorentzMatrix::from_csv(&read_input(&a.matrix)?)?;
            let f = iwasawa(&g)?;
            let out = IwasawaOutput {
                n: g.n,
                passed: f.residual <= a.tolerance,
                k: f.k,
                t: f.t,
                a: f.a,
                residual: f.residual,
                tolerance: a.tolerance,
            };
            match cli.format {
                Format::Csv => {
                    println!("# k");
                    for row in &out.k {
                        println!("{}", csv_row(row));
                    }
                    println!("# t\n{}", csv_row(&[out.t]));
                    println!("# a\n{}", csv_row(&out.a));
                    println!("# residual\n{}", csv_row(&[out.residual]));
                }
                fmt => emit(&out, fmt, |o| {
                    let mut s = format!("t = {}\na = {:?}\nk =\n", o.t, o.a);
                    for row in &o.k {
                        s += &format!("  {row:?}\n");
                    }
                    s + &format!("residual = {:.3e}\n", o.residual)
                })?,
            }
            Ok(out.passed)
        }
        Command::Selftest(a) => {
            let mut cfg = if a.quick { SelftestConfig::quick(a.seed) } else { SelftestConfig::full(a.seed) };
            if let Some(d) = a.max_degree {
                cfg.max_degree = d;
            }
            let r = selftest::run(&cfg)?;
            emit(&r, cli.format, selftest_text)?;
            Ok(r.passed)
        }
    }
}

fn threads_from_env() -> Result<(), Failure> {
    let Ok(v) = std::env::var("DENSITYMOD_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("DENSITYMOD_THREADS must be a positive integer, got {v:?}")))?;
    densitymod::configure_threads(n).map_err(Failure::from)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = threads_from_env().and_then(|_| run(cli));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
