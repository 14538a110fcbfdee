//! `finfree` command-line front end. [`run`] parses arguments, runs one
//! subcommand, and returns the process exit code: 0 on success, 2 for
//! malformed input, 3 for mathematical domain errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finfree::freelimits::{free_atoms, AnalyticCDF, DiscreteMeasure};
use finfree::io::{measure_to_value, poly_from_json, poly_to_value, triplets_to_value};
use finfree::measures::{
    atom_triplets, empirical_cdf, interlacing_chain, quantile_poly, roots_with_multiplicity, DEFAULT_TOL,
};
use finfree::metrics::{kolmogorov, levy, Cdf, DistanceResult};
use finfree::rational::{format_rational, to_f64};
use finfree::rmt::{expected_charpoly_mc, spectral_cdf_mc};
use finfree::{convolve, ConvKind, Error, MonicPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "finfree", version, about = "Finite free convolutions of real-rooted polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Boxplus,
    Boxtimes,
}

impl From<Op> for ConvKind {
    fn from(op: Op) -> Self {
        match op {
            Op::Boxplus => ConvKind::Additive,
            Op::Boxtimes => ConvKind::Multiplicative,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    Kolmogorov,
    Levy,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convolve two polynomials given as JSON files.
    Convolve {
        #[arg(long, value_enum)]
        op: Op,
        /// Compute ⊠ through the differential-operator route instead.
        #[arg(long)]
        via_diffop: bool,
        p: PathBuf,
        q: PathBuf,
    },
    /// Roots with multiplicities, or the empirical CDF as CSV.
    Roots {
        p: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        cdf: bool,
    },
    /// Kolmogorov and/or Lévy distance between two polynomials, or between
    /// a polynomial and a reference law.
    Distance {
        p: PathBuf,
        q: Option<PathBuf>,
        /// Reference law, e.g. arcsine:-2:2.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value = "both")]
        metric: Metric,
    },
    /// Atom triplets of a convolution, or atoms of a free convolution of
    /// two discrete laws given with --mu and --nu.
    Atoms {
        #[arg(long, value_enum)]
        op: Op,
        p: Option<PathBuf>,
        q: Option<PathBuf>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
    },
    /// Interlacing chain from q up past p.
    Chain {
        #[arg(long)]
        l: usize,
        p: PathBuf,
        q: PathBuf,
    },
    /// Quantile polynomial of a reference law.
    Quantile {
        #[arg(long)]
        target: String,
        #[arg(long)]
        degree: usize,
    },
    /// Compare an exact convolution with the random-matrix expectation.
    McVerify {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance in standard errors.
        #[arg(long, default_value_t = 4.0)]
        sigmas: f64,
        p: PathBuf,
        q: PathBuf,
    },
    /// Convergence sweep over degrees, as CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    mu: String,
    #[arg(long)]
    nu: String,
    /// Reference law, or `mc` for a random-matrix target.
    #[arg(long)]
    target: String,
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<usize>,
    #[arg(long, value_enum, default_value = "boxplus")]
    op: Op,
    #[arg(long, default_value_t = 1000)]
    mc_dim: usize,
    #[arg(long, default_value_t = 20)]
    mc_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error surfaced to the user with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_parse() { EXIT_INPUT } else { EXIT_DOMAIN };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: EXIT_INPUT, message }
}

fn read_poly(path: &Path) -> Result<MonicPoly, Failure> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    poly_from_json(&s).map_err(|e| Failure { message: format!("{}: {e}", path.display()), ..e.into() })
}

fn parse_law(s: &str) -> Result<AnalyticCDF, Failure> {
    Ok(s.parse::<AnalyticCDF>()?)
}

fn parse_discrete(s: &str) -> Result<DiscreteMeasure, Failure> {
    parse_law(s)?
        .as_discrete()
        .cloned()
        .ok_or_else(|| input_error(format!("{s:?} is not a discrete law")))
}

fn distance_value(d: &DistanceResult) -> Value {
    json!({
        "value": d.value,
        "exact_value": d.rational.as_ref().map(format_rational),
        "exact": d.exact,
        "witness": d.witness,
    })
}

fn distances(f: &Cdf, g: &Cdf, metric: Metric) -> Result<Value, Failure> {
    let mut out = serde_json::Map::new();
    if matches!(metric, Metric::Kolmogorov | Metric::Both) {
        out.insert("kolmogorov".into(), distance_value(&kolmogorov(f, g)?));
    }
    if matches!(metric, Metric::Levy | Metric::Both) {
        out.insert("levy".into(), distance_value(&levy(f, g)?));
    }
    Ok(Value::Object(out))
}

/// One row of a convergence sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub degree: usize,
    pub d_k: f64,
    pub d_l: f64,
    pub runtime_ms: u128,
}

pub const SWEEP_HEADER: &str = "degree,d_K,d_L,runtime_ms";

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!("{},{:e},{:e},{}", self.degree, self.d_k, self.d_l, self.runtime_ms)
    }

    pub fn from_csv(line: &str) -> Option<SweepRow> {
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 4 {
            return None;
        }
        Some(SweepRow {
            degree: f[0].parse().ok()?,
            d_k: f[1].parse().ok()?,
            d_l: f[2].parse().ok()?,
            runtime_ms: f[3].parse().ok()?,
        })
    }
}

fn sweep(a: &SweepArgs) -> Result<Vec<SweepRow>, Failure> {
    let kind = ConvKind::from(a.op);
    let (mu, nu) = (parse_law(&a.mu)?, parse_law(&a.nu)?);
    let target = if a.target == "mc" {
        let (m, n) = (parse_discrete(&a.mu)?, parse_discrete(&a.nu)?);
        Cdf::Step(spectral_cdf_mc(&m, &n, kind, a.mc_dim, a.mc_samples, a.seed)?.cdf)
    } else {
        Cdf::Analytic(parse_law(&a.target)?)
    };
    let mut degrees = a.degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    let mut rows = Vec::with_capacity(degrees.len());
    for d in degrees {
        let start = Instant::now();
        let p = quantile_poly(&mu, d)?;
        let q = quantile_poly(&nu, d)?;
        let c = convolve(&p, &q, kind)?;
        let f = Cdf::Step(empirical_cdf(&c, DEFAULT_TOL)?);
        let d_k = kolmogorov(&f, &target)?.value;
        let d_l = levy(&f, &target)?.value;
        rows.push(SweepRow { degree: d, d_k, d_l, runtime_ms: start.elapsed().as_millis() });
    }
    Ok(rows)
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}").map_err(|e| input_error(e.to_string()))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let io_err = |e: std::io::Error| input_error(e.to_string());
    match cmd {
        Command::Convolve { op, via_diffop, p, q } => {
            let (p, q) = (read_poly(&p)?, read_poly(&q)?);
            let c = match (op, via_diffop) {
                (Op::Boxtimes, true) => finfree::convolve::boxtimes_via_diffop(&p, &q)?,
                _ => convolve(&p, &q, op.into())?,
            };
            emit(out, &poly_to_value(&c))
        }
        Command::Roots { p, tol, cdf } => {
            let p = read_poly(&p)?;
            if cdf {
                let f = empirical_cdf(&p, tol)?;
                return write!(out, "{}", f.to_csv()).map_err(io_err);
            }
            emit(out, &measure_to_value(&roots_with_multiplicity(&p, tol)?))
        }
        Command::Distance { p, q, target, metric } => {
            let f = Cdf::Step(empirical_cdf(&read_poly(&p)?, DEFAULT_TOL)?);
            let g = match (q, target) {
                (Some(q), None) => Cdf::Step(empirical_cdf(&read_poly(&q)?, DEFAULT_TOL)?),
                (None, Some(t)) => Cdf::Analytic(parse_law(&t)?),
                _ => return Err(input_error("give either a second polynomial or --target".into())),
            };
            emit(out, &distances(&f, &g, metric)?)
        }
        Command::Atoms { op, p, q, mu, nu } => match (p, q, mu, nu) {
            (Some(p), Some(q), None, None) => {
                let t = atom_triplets(&read_poly(&p)?, &read_poly(&q)?, op.into())?;
                emit(out, &triplets_to_value(&t))
            }
            (None, None, Some(mu), Some(nu)) => {
                let atoms = free_atoms(&parse_discrete(&mu)?, &parse_discrete(&nu)?, op.into())?;
                let v: Vec<Value> = atoms
                    .iter()
                    .map(|a| {
                        json!({
                            "location": format_rational(&a.location),
                            "mass": format_rational(&a.mass),
                            "cdf": a.cdf.as_ref().map(format_rational),
                        })
                    })
                    .collect();
                emit(out, &Value::Array(v))
            }
            _ => Err(input_error("give two polynomial files, or --mu and --nu".into())),
        },
        Command::Chain { l, p, q } => {
            let chain = interlacing_chain(&read_poly(&p)?, &read_poly(&q)?, l)?;
            emit(out, &Value::Array(chain.iter().map(poly_to_value).collect()))
        }
        Command::Quantile { target, degree } => emit(out, &poly_to_value(&quantile_poly(&parse_law(&target)?, degree)?)),
        Command::McVerify { op, samples, seed, sigmas, p, q } => {
            let (p, q) = (read_poly(&p)?, read_poly(&q)?);
            let roots = |m: &MonicPoly| -> Result<Vec<f64>, Failure> {
                let r = roots_with_multiplicity(m, DEFAULT_TOL)?;
                Ok(r.sorted_roots().iter().map(|x| x.to_f64()).collect())
            };
            let exact = convolve(&p, &q, op.into())?;
            let est = expected_charpoly_mc(&roots(&p)?, &roots(&q)?, op.into(), samples, seed)?;
            let mut ok = true;
            let rows: Vec<Value> = exact
                .coeffs()
                .iter()
                .zip(est.coeff_means.iter().zip(&est.coeff_stderrs))
                .map(|(e, (m, s))| {
                    let e = to_f64(e);
                    let within = (e - m).abs() <= sigmas * s + 1e-9 * e.abs().max(1.0);
                    ok &= within;
                    json!({ "exact": e, "mean": m, "stderr": s, "within": within })
                })
                .collect();
            emit(out, &json!({ "samples": samples, "seed": seed, "sigmas": sigmas, "coefficients": rows, "pass": ok }))
        }
        Command::Sweep(a) => {
            let rows = sweep(&a)?;
            let mut csv = String::from(SWEEP_HEADER);
            csv.push('\n');
            for r in &rows {
                let _ = writeln!(csv, "{}", r.to_csv());
            }
            match &a.out {
                Some(path) => std::fs::write(path, csv).map_err(io_err),
                None => write!(out, "{csv}").map_err(io_err),
            }
        }
    }
}

/// Runs the CLI on `args` (program name first), writing results to `out`
/// and diagnostics to `err`.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs on the process arguments with standard streams.
pub fn run() -> i32 {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
