//! Command dispatch for the `nss` binary.
//!
//! Every command writes to the supplied writer and returns a [`Failure`]
//! carrying a stable exit code on error, so the whole front end can be
//! driven from tests without spawning a process.

use std::fmt::Write as _;
use std::io::Write;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nss_core::{
    determinant_bareiss, determinant_cofactor, find_witness, lambda_family,
    phi_fast, phi_grid, vandermonde_matrix, verify_lambda_family, Certificate, Certifier, Domain,
    Error, EvaluationSet, ExactDiv, ExponentVector, GridSpec, Int, IntPoly, LambdaFamily,
    Polynomial, Record, SquareMatrix, Term, Value,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const INTERNAL: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const DUPLICATE: u8 = 3;
    pub const SIZE_HYPOTHESIS: u8 = 4;
    pub const CAP: u8 = 5;
}

/// Largest determinant order (and evaluation-set size) `bench` accepts.
pub const MAX_BENCH_ORDER: usize = 10;
/// Largest grid `bench` accepts.
pub const MAX_BENCH_GRID: u128 = 1_000_000;
/// Grids up to this size are also summed point by point in `phi`.
pub const PHI_GRID_LIMIT: u128 = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "nss",
    version,
    about = "Exact nonvanishing certificates on product grids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cofactor coefficient family of each evaluation set.
    Lambda(JobArgs),
    /// Φ(f) in product form, and by grid sum on small grids.
    Phi(JobArgs),
    /// Certify that f cannot vanish on the grid and locate a witness.
    Certify(JobArgs),
    /// First grid point (row-major) where f is nonzero.
    Witness(JobArgs),
    /// Time determinant and Φ algorithms against each other.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainKind {
    /// Arbitrary-precision integers.
    Int,
    /// Polynomials in t over the integers.
    Intpoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    #[arg(long, value_enum, default_value = "int")]
    pub domain: DomainKind,
    /// Polynomial in x1..xn, e.g. "(t+1)*x1^2*x2 - 3".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub poly: String,
    /// Evaluation sets, axes separated by ';' and elements by ','.
    #[arg(long, allow_hyphen_values = true)]
    pub sets: String,
    /// Exponents of the term to certify against, e.g. "2,1".
    #[arg(long)]
    pub term: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads for grid scans; 1 keeps everything on this thread.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Determinant order (at most 10).
    #[arg(long, default_value_t = 7)]
    pub order: usize,
    /// Grid shape such as "4x4x4" (at most 10^6 points, 10 per axis).
    #[arg(long, default_value = "4x4x4")]
    pub grid: String,
    /// Number of terms in the random benchmark polynomial.
    #[arg(long, default_value_t = 8)]
    pub terms: usize,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// An error with the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_)
            | Error::ArityMismatch { .. }
            | Error::EmptySet
            | Error::ZeroPolynomial
            | Error::TermNotMaximal { .. }
            | Error::ShapeMismatch { .. }
            | Error::Record(_) => exit::PARSE,
            Error::DuplicateElement { .. } => exit::DUPLICATE,
            Error::SizeHypothesis { .. } => exit::SIZE_HYPOTHESIS,
            Error::OrderTooLarge { .. } => exit::CAP,
            _ => exit::INTERNAL,
        };
        let message = e.to_string();
        Failure::new(code, message)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(exit::INTERNAL, format!("write failed: {e}"))
    }
}

/// A parsed and arity-checked job.
#[derive(Debug, Clone)]
pub struct JobSpec<D> {
    pub polynomial: Polynomial<D>,
    pub grid: GridSpec<D>,
    pub term: Option<ExponentVector>,
    pub format: Format,
    pub parallel: bool,
}

impl<D: Domain> JobSpec<D> {
    /// Parses the sets first; the polynomial is then read with exactly one
    /// variable per axis, so a stray `x3` on a two-axis grid is rejected.
    pub fn from_args(args: &JobArgs) -> Result<Self, Failure> {
        let grid = GridSpec::<D>::parse(&args.sets)?;
        let poly_text = if args.poly.trim().is_empty() { "0" } else { &args.poly };
        let polynomial = Polynomial::parse(poly_text, grid.arity()).map_err(Error::from)?;
        let term = args
            .term
            .as_deref()
            .map(|t| parse_exponents(t, grid.arity()))
            .transpose()?;
        Ok(Self {
            polynomial,
            grid,
            term,
            format: args.format,
            parallel: args.threads > 1,
        })
    }
}

fn parse_exponents(text: &str, arity: usize) -> Result<ExponentVector, Failure> {
    let exps = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Failure::new(exit::PARSE, format!("bad exponent `{}` in --term", p.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if exps.len() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: exps.len(),
        }
        .into());
    }
    Ok(ExponentVector::new(exps))
}

fn with_threads<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    if threads <= 1 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::new(exit::INTERNAL, format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// Runs one command, writing its output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let args = match &cli.command {
        Command::Bench(args) => {
            let comparisons = with_threads(args.threads, || run_bench(args))??;
            out.write_all(render_bench(args, &comparisons).as_bytes())?;
            return match comparisons.iter().find(|c| !c.equal) {
                Some(c) => Err(Failure::new(
                    exit::INTERNAL,
                    format!("algorithms disagree on {}", c.instance),
                )),
                None => Ok(()),
            };
        }
        Command::Lambda(args) | Command::Phi(args) | Command::Certify(args) | Command::Witness(args) => args,
    };
    let command = &cli.command;
    let text = with_threads(args.threads, || match args.domain {
        DomainKind::Int => dispatch::<Int>(command, args),
        DomainKind::Intpoly => dispatch::<IntPoly>(command, args),
    })??;
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn dispatch<D: Domain>(command: &Command, args: &JobArgs) -> Result<String, Failure> {
    match command {
        Command::Lambda(_) => cmd_lambda::<D>(args),
        Command::Phi(_) => cmd_phi(&JobSpec::<D>::from_args(args)?),
        Command::Certify(_) => cmd_certify(&JobSpec::<D>::from_args(args)?),
        Command::Witness(_) => cmd_witness(&JobSpec::<D>::from_args(args)?),
        Command::Bench(_) => unreachable!("bench is dispatched separately"),
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn render_term<D: Domain>(term: &Term<D>) -> String {
    let arity = term.exponents.arity();
    let single = Polynomial::from_terms(arity, [term.clone()]).expect("matching arity");
    single.to_string()
}

/// Families for every axis of `--sets`.
pub fn cmd_lambda<D: Domain>(args: &JobArgs) -> Result<String, Failure> {
    let grid = GridSpec::<D>::parse(&args.sets)?;
    let families = grid
        .axes()
        .iter()
        .map(lambda_family)
        .collect::<Result<Vec<LambdaFamily<D>>, _>>()?;
    let mut out = String::new();
    for (axis, fam) in families.iter().enumerate() {
        match args.format {
            Format::Structured => {
                if axis > 0 {
                    out.push('\n');
                }
                let mut record = Record::new();
                record.push("axis", Value::scalar(axis + 1));
                let mut text = record.render();
                text.push_str(&fam.to_record().render());
                out.push_str(&text);
            }
            Format::Text => {
                let report = verify_lambda_family(fam);
                let m = fam.set().len();
                let _ = writeln!(out, "axis {}: S = [{}] over {}", axis + 1, join(fam.set().points()), D::NAME);
                let _ = writeln!(
                    out,
                    "  lambda = [{}]  (cofactors of row {m} of the Vandermonde matrix)",
                    join(fam.coefficients())
                );
                let _ = writeln!(out, "  r = {}", fam.top_value());
                for check in &report.checks {
                    let _ = writeln!(
                        out,
                        "  sum lambda_j*s_j^{} = {}  (expected {}) {}",
                        check.exponent,
                        check.actual,
                        check.expected,
                        if check.passed() { "ok" } else { "FAILED" }
                    );
                }
                let _ = writeln!(out, "  verified: {}", if report.passed() { "yes" } else { "no" });
            }
        }
    }
    Ok(out)
}

fn phi_by_grid<D: Domain>(job: &JobSpec<D>, families: &[LambdaFamily<D>]) -> Result<D, Error> {
    if job.parallel {
        nss_core::phi_grid_parallel(&job.polynomial, families)
    } else {
        phi_grid(&job.polynomial, families)
    }
}

/// Φ(f) in product form, plus the literal grid sum when the grid is small.
pub fn cmd_phi<D: Domain>(job: &JobSpec<D>) -> Result<String, Failure> {
    let families = job
        .grid
        .axes()
        .iter()
        .map(lambda_family)
        .collect::<Result<Vec<_>, _>>()?;
    let fast = phi_fast(&job.polynomial, &families)?;
    let size = job.grid.size();
    let by_grid = if size <= PHI_GRID_LIMIT {
        Some(phi_by_grid(job, &families)?)
    } else {
        None
    };
    if let Some(g) = &by_grid {
        if *g != fast {
            return Err(Failure::new(
                exit::INTERNAL,
                format!("grid sum {g} disagrees with product form {fast}"),
            ));
        }
    }
    Ok(match job.format {
        Format::Structured => {
            let mut r = Record::new();
            r.push("kind", Value::scalar("phi"))
                .push("domain", Value::scalar(D::NAME))
                .push("polynomial", Value::scalar(&job.polynomial))
                .push("sets", sets_value(&job.grid))
                .push("grid_size", Value::scalar(size))
                .push("phi_fast", Value::scalar(&fast))
                .push(
                    "phi_grid",
                    Value::scalar(by_grid.as_ref().map_or("skipped".into(), D::to_string)),
                )
                .push("agree", Value::scalar(if by_grid.is_some() { "true" } else { "unchecked" }));
            r.render()
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "f = {} over {}", job.polynomial, D::NAME);
            let _ = writeln!(out, "grid: {} ({size} points)", job.grid);
            let _ = writeln!(out, "phi (product form) = {fast}");
            match &by_grid {
                Some(g) => {
                    let _ = writeln!(out, "phi (grid sum)     = {g}  [equal]");
                }
                None => {
                    let _ = writeln!(out, "phi (grid sum)     skipped: grid exceeds {PHI_GRID_LIMIT} points");
                }
            }
            out
        }
    })
}

fn sets_value<D: Domain>(grid: &GridSpec<D>) -> Value {
    let rows: Vec<Vec<D>> = grid.axes().iter().map(|s| s.points().to_vec()).collect();
    Value::nested(&rows)
}

/// Certificate for the job, or the error explaining why none exists.
pub fn cmd_certify<D: Domain>(job: &JobSpec<D>) -> Result<String, Failure> {
    let certifier = Certifier {
        parallel: job.parallel,
        ..Certifier::default()
    };
    let cert = certifier.certify(&job.polynomial, &job.grid, job.term.as_ref())?;
    Ok(match job.format {
        Format::Structured => cert.to_record().render(),
        Format::Text => render_certificate_text(&cert),
    })
}

fn render_certificate_text<D: Domain>(cert: &Certificate<D>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "f = {} over {}", cert.polynomial, D::NAME);
    let _ = writeln!(
        out,
        "chosen term: {}  exponents {}",
        render_term(&cert.term),
        cert.term.exponents
    );
    for (k, (set, (lambdas, r))) in cert
        .grid
        .axes()
        .iter()
        .zip(cert.lambdas.iter().zip(&cert.top_values))
        .enumerate()
    {
        let _ = writeln!(
            out,
            "axis {}: S = [{}]  lambda = [{}]  r = {r}",
            k + 1,
            join(set.points()),
            join(lambdas)
        );
    }
    let _ = writeln!(out, "phi (product form) = {}", cert.phi);
    match &cert.phi_grid {
        Some(g) => {
            let _ = writeln!(out, "phi (grid sum)     = {g}");
        }
        None => {
            let _ = writeln!(out, "phi (grid sum)     skipped");
        }
    }
    let _ = writeln!(out, "c * prod r_k       = {}", cert.predicted);
    let _ = writeln!(
        out,
        "witness: ({})  f = {}",
        join(&cert.witness),
        cert.witness_value
    );
    let _ = writeln!(out, "grid size: {}", cert.grid_size);
    let _ = writeln!(out, "certified: yes");
    out
}

/// Row-major scan for a nonzero value; absence is a valid answer.
pub fn cmd_witness<D: Domain>(job: &JobSpec<D>) -> Result<String, Failure> {
    let found = if job.parallel {
        nss_core::find_witness_parallel(&job.polynomial, &job.grid)?
    } else {
        find_witness(&job.polynomial, &job.grid)?
    };
    Ok(match job.format {
        Format::Structured => {
            let mut r = Record::new();
            r.push("kind", Value::scalar("witness"))
                .push("domain", Value::scalar(D::NAME))
                .push("polynomial", Value::scalar(&job.polynomial))
                .push("sets", sets_value(&job.grid))
                .push("grid_size", Value::scalar(job.grid.size()));
            match &found {
                Some(w) => {
                    r.push("found", Value::scalar(true))
                        .push("witness", Value::list(&w.point))
                        .push("witness_value", Value::scalar(&w.value));
                }
                None => {
                    r.push("found", Value::scalar(false));
                }
            }
            r.render()
        }
        Format::Text => match &found {
            Some(w) => format!("witness: ({})  f = {}\n", join(&w.point), w.value),
            None => format!(
                "no witness: f vanishes on all {} grid points\n",
                job.grid.size()
            ),
        },
    })
}

/// One timed comparison between two algorithms computing the same value.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub instance: String,
    pub algorithms: [(&'static str, Duration); 2],
    /// Ring operations (determinants) or evaluation counts (Φ), per algorithm.
    pub work: [u128; 2],
    pub equal: bool,
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

fn time<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut samples = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let value = f();
        samples.push(start.elapsed());
        last = Some(value);
    }
    (median(samples), last.expect("at least one repetition"))
}

fn compare_determinants<D: ExactDiv>(name: String, m: &SquareMatrix<D>, reps: usize) -> Result<Comparison, Failure> {
    let n = m.order() as u128;
    let (t_cof, cof) = time(reps, || determinant_cofactor(m));
    let (t_bar, bar) = time(reps, || determinant_bareiss(m));
    let bar = bar?;
    Ok(Comparison {
        instance: name,
        algorithms: [("cofactor", t_cof), ("bareiss", t_bar)],
        work: [n * (1u128 << n), n * n * n],
        equal: cof == bar,
    })
}

fn parse_shape(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(['x', 'X', ','])
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Failure::new(exit::PARSE, format!("bad grid dimension `{p}`")))
        })
        .collect()
}

pub fn run_bench(args: &BenchArgs) -> Result<Vec<Comparison>, Failure> {
    if args.order == 0 || args.order > MAX_BENCH_ORDER {
        return Err(Failure::new(
            exit::CAP,
            format!("--order must be between 1 and {MAX_BENCH_ORDER}, got {}", args.order),
        ));
    }
    let shape = parse_shape(&args.grid)?;
    let size = shape.iter().fold(1u128, |acc, &n| acc.saturating_mul(n as u128));
    if size > MAX_BENCH_GRID {
        return Err(Failure::new(
            exit::CAP,
            format!("grid {} has {size} points; the cap is {MAX_BENCH_GRID}", args.grid),
        ));
    }
    if let Some(&n) = shape.iter().find(|&&n| n > MAX_BENCH_ORDER) {
        return Err(Failure::new(
            exit::CAP,
            format!("grid axes hold at most {MAX_BENCH_ORDER} points, got {n}"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let order = args.order;
    let mut out = Vec::new();

    let points: Vec<Int> = (0..order as i64).map(|k| Int::from(k - order as i64 / 2)).collect();
    let vandermonde = vandermonde_matrix(&points)?;
    out.push(compare_determinants(format!("vandermonde({order}) int"), &vandermonde, args.reps)?);

    let entries = (0..order * order).map(|_| Int::from(rng.gen_range(-9..=9))).collect();
    let random = SquareMatrix::new(order, entries)?;
    out.push(compare_determinants(format!("random({order}) int"), &random, args.reps)?);

    let entries = (0..order * order)
        .map(|_| IntPoly::from_coeffs((0..3).map(|_| rng.gen_range(-5i64..=5))))
        .collect();
    let random_t: SquareMatrix<IntPoly> = SquareMatrix::new(order, entries)?;
    out.push(compare_determinants(format!("random({order}) intpoly"), &random_t, args.reps)?);

    let axes = shape
        .iter()
        .map(|&n| EvaluationSet::new((0..n as i64).map(|k| Int::from(k - n as i64 / 2)).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let grid = GridSpec::new(axes);
    let arity = shape.len();
    let terms = (0..args.terms).map(|_| {
        let exps: Vec<u32> = shape.iter().map(|&n| rng.gen_range(0..n as u32)).collect();
        Term::new(Int::from(rng.gen_range(-9..=9)), exps)
    });
    let f = Polynomial::from_terms(arity, terms)?;
    let families = grid
        .axes()
        .iter()
        .map(lambda_family)
        .collect::<Result<Vec<_>, _>>()?;
    let parallel = args.threads > 1;
    let (t_grid, by_grid) = time(args.reps, || {
        if parallel {
            nss_core::phi_grid_parallel(&f, &families)
        } else {
            phi_grid(&f, &families)
        }
    });
    let (t_fast, fast) = time(args.reps, || phi_fast(&f, &families));
    let power_sums: u128 = shape.iter().map(|&n| n as u128).sum();
    out.push(Comparison {
        instance: format!("phi grid {}", args.grid),
        algorithms: [("grid_sum", t_grid), ("product", t_fast)],
        work: [
            size * f.num_terms() as u128,
            f.num_terms() as u128 * power_sums,
        ],
        equal: by_grid? == fast?,
    });
    Ok(out)
}

pub fn render_bench(args: &BenchArgs, comparisons: &[Comparison]) -> String {
    let all_equal = comparisons.iter().all(|c| c.equal);
    match args.format {
        Format::Structured => {
            let mut r = Record::new();
            r.push("kind", Value::scalar("bench"))
                .push("reps", Value::scalar(args.reps.max(1)));
            for (k, c) in comparisons.iter().enumerate() {
                let key = |suffix: &str| format!("case{}.{suffix}", k + 1);
                r.push(&key("instance"), Value::scalar(&c.instance));
                for ((name, t), work) in c.algorithms.iter().zip(c.work) {
                    r.push(&key(&format!("{name}.median_ns")), Value::scalar(t.as_nanos()));
                    r.push(&key(&format!("{name}.work")), Value::scalar(work));
                }
                r.push(&key("equal"), Value::scalar(c.equal));
            }
            r.push("all_equal", Value::scalar(all_equal));
            r.render()
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:<28} {:<10} {:>14} {:>14}  equal",
                "instance", "algorithm", "median", "work"
            );
            for c in comparisons {
                for (k, ((name, t), work)) in c.algorithms.iter().zip(c.work).enumerate() {
                    let label = if k == 0 { c.instance.as_str() } else { "" };
                    let equal = if k == 1 { if c.equal { "yes" } else { "NO" } } else { "" };
                    let _ = writeln!(
                        out,
                        "{label:<28} {name:<10} {:>14} {work:>14}  {equal}",
                        format!("{t:.2?}")
                    );
                }
            }
            let _ = writeln!(out, "all outputs equal: {}", if all_equal { "yes" } else { "NO" });
            out
        }
    }
}

/// Runs `cli`, reporting any failure on `err`, and returns the exit code.
pub fn run_to_exit(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match run(cli, out) {
        Ok(()) => exit::SUCCESS,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
