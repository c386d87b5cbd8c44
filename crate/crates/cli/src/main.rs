//! `adjmat`: adjugates and determinants of matrix files.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use adjmat_core::format::{parse_matrix_file, AnyMatrix, ResultReport};
use adjmat_core::identities::{run_precondition_suite, run_suite, SuiteKind, SuiteReport};
use adjmat_core::oracle::{adj_cofactor, det_bareiss, COFACTOR_ADJ_LIMIT};
use adjmat_core::random::{random_matrix, seeded, RandomElement};
use adjmat_core::{
    adj_any, BigInt, Domain, Error, Matrix, Mode, Polynomial, PreconditionOptions, RunStats,
    TraceStep,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_RETRIES: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "adjmat", version, about = "Exact adjugates and determinants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the determinant and adjugate of a matrix file.
    Adj(RunArgs),
    /// Print the determinant of a matrix file.
    Det {
        #[command(flatten)]
        run: RunArgs,
        /// Use fraction-free elimination instead of the recursive algorithm.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the identity property suites.
    Selftest {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = DomainChoice::Both)]
        domain: DomainChoice,
    },
    /// Time sequential and parallel runs on random integer matrices.
    Bench {
        /// Comma-separated matrix orders.
        #[arg(long, value_delimiter = ',', default_values_t = [4, 8, 16, 32, 64])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Runs per mode; the fastest is reported.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Par)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    retries: usize,
    /// Append `key value` run statistics.
    #[arg(long)]
    stats: bool,
    /// Dump the intermediates of every recursive step.
    #[arg(long)]
    trace: bool,
    /// Check the result independently; exit 4 on mismatch.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Par,
    Seq,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Par => Mode::Parallel,
            ModeArg::Seq => Mode::Sequential,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainChoice {
    Int,
    Poly,
    Both,
}

/// An error message paired with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Syntax { .. } => EXIT_PARSE,
            Error::RetriesExhausted { .. } => EXIT_RETRIES,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Adj(args) => cmd_run(&args, true, false),
        Command::Det { run, oracle } => cmd_run(&run, false, oracle),
        Command::Selftest {
            cases,
            seed,
            domain,
        } => cmd_selftest(cases, seed, domain),
        Command::Bench {
            sizes,
            seed,
            repeats,
        } => cmd_bench(&sizes, seed, repeats.max(1)),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("adjmat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_matrix(path: &Path) -> Result<AnyMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    parse_matrix_file(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn cmd_run(args: &RunArgs, with_adj: bool, oracle: bool) -> Result<(), Failure> {
    match read_matrix(&args.input)? {
        AnyMatrix::Int(m) => run_typed(&m, args, with_adj, oracle),
        AnyMatrix::Poly(m) => run_typed(&m, args, with_adj, oracle),
    }
}

fn run_typed<D: Domain>(
    a: &Matrix<D>,
    args: &RunArgs,
    with_adj: bool,
    oracle: bool,
) -> Result<(), Failure> {
    let (report, trace) = compute(a, args, with_adj, oracle)?;
    if args.verify {
        verify(a, &report)?;
    }
    print!("{}", report.render_result());
    if args.stats {
        print!("{}", report.render_stats());
    }
    if args.trace {
        for step in &trace {
            print!("{}", render_trace(step));
        }
    }
    Ok(())
}

fn compute<D: Domain>(
    a: &Matrix<D>,
    args: &RunArgs,
    with_adj: bool,
    oracle: bool,
) -> Result<(ResultReport<D>, Vec<TraceStep<D>>), Failure> {
    let mode = Mode::from(args.mode);
    let start = Instant::now();
    let report = |determinant, adjugate, stats, attempts, method| ResultReport {
        determinant,
        adjugate,
        stats,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        mode,
        seed: args.seed,
        attempts,
        method,
    };
    if oracle {
        let det = det_bareiss(a)?;
        return Ok((report(det, None, RunStats::default(), 0, "oracle"), vec![]));
    }
    let opts = PreconditionOptions {
        seed: args.seed,
        max_retries: args.retries,
        mode,
        trace: args.trace,
        ..PreconditionOptions::default()
    };
    match adj_any(a, &opts) {
        Ok(out) => {
            let adj = with_adj.then_some(out.adj);
            let r = report(
                out.det,
                adj,
                out.run.stats,
                out.record.attempts,
                "recursive",
            );
            Ok((r, out.run.trace))
        }
        Err(Error::RetriesExhausted { attempts }) => {
            let det = det_bareiss(a)?;
            let adj = if !with_adj {
                None
            } else if a.rows() <= COFACTOR_ADJ_LIMIT {
                Some(adj_cofactor(a)?)
            } else {
                return Err(Error::RetriesExhausted { attempts }.into());
            };
            Ok((
                report(det, adj, RunStats::default(), attempts, "oracle"),
                vec![],
            ))
        }
        Err(e) => Err(e.into()),
    }
}

fn verify<D: Domain>(a: &Matrix<D>, report: &ResultReport<D>) -> Result<(), Failure> {
    let det = &report.determinant;
    let ok = match &report.adjugate {
        Some(adj) => {
            a.mul(adj)?.is_scalar_multiple_of_identity(det)
                && adj.mul(a)?.is_scalar_multiple_of_identity(det)
        }
        None => *det == det_bareiss(a)?,
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VERIFY, "verification failed"))
    }
}

fn render_trace<D: Domain>(t: &TraceStep<D>) -> String {
    let mut out = format!("trace {} level {} order {}\n", t.path, t.level, t.order);
    let scalars = [
        ("gamma", &t.gamma),
        ("alpha", &t.alpha),
        ("beta", &t.beta),
        ("phi", &t.phi),
        ("phi'", &t.phi_prime),
    ];
    for (name, v) in scalars {
        out.push_str(&format!("{name} {v}\n"));
    }
    let matrices = [
        ("input", &t.input),
        ("A*", &t.a_adj),
        ("B*", &t.b_adj),
        ("N", &t.n),
        ("M", &t.m),
        ("F", &t.f),
        ("F*", &t.f_adj),
        ("H", &t.h),
        ("L", &t.l),
        ("H'", &t.h_prime),
        ("L'", &t.l_prime),
    ];
    for (name, m) in matrices {
        out.push_str(&format!("{name}\n{m}\n"));
    }
    out
}

fn cmd_selftest(cases: usize, seed: u64, domain: DomainChoice) -> Result<(), Failure> {
    let mut reports = Vec::new();
    if domain != DomainChoice::Poly {
        reports.extend(suites::<BigInt>(cases, seed));
    }
    if domain != DomainChoice::Int {
        reports.extend(suites::<Polynomial>(cases, seed));
    }
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!(
        "selftest: {}/{} suites passed",
        reports.len() - failed,
        reports.len()
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_FAILURE,
            format!("{failed} suites failed"),
        ))
    }
}

fn suites<D: RandomElement>(cases: usize, seed: u64) -> Vec<SuiteReport> {
    let mut out: Vec<SuiteReport> = SuiteKind::ALL
        .iter()
        .map(|&k| run_suite::<D>(k, cases, seed))
        .collect();
    out.push(run_precondition_suite::<D>(cases, seed));
    out
}

fn cmd_bench(sizes: &[usize], seed: u64, repeats: usize) -> Result<(), Failure> {
    println!(
        "{:>5} {:>12} {:>12} {:>8} {:>8} {:>11} {:>7} {:>11}",
        "n", "seq_ms", "par_ms", "speedup", "matmul", "matmul_pred", "stages", "stages_pred"
    );
    for &n in sizes {
        if n == 0 {
            return Err(Failure::new(EXIT_FAILURE, "sizes must be positive"));
        }
        let a: Matrix<BigInt> = random_matrix(&mut seeded(seed ^ n as u64), n, n, 9);
        let (seq_ms, stats) = time_mode(&a, seed, Mode::Sequential, repeats)?;
        let (par_ms, _) = time_mode(&a, seed, Mode::Parallel, repeats)?;
        let padded = adjmat_core::precondition::padded_order(n);
        let pred = RunStats::predicted(padded).unwrap_or_default();
        println!(
            "{:>5} {:>12.3} {:>12.3} {:>8.2} {:>8} {:>11} {:>7} {:>11}",
            n,
            seq_ms,
            par_ms,
            seq_ms / par_ms.max(1e-9),
            stats.matmul_count,
            pred.matmul_count,
            stats.critical_path_stages,
            pred.critical_path_stages
        );
    }
    Ok(())
}

fn time_mode<D: RandomElement>(
    a: &Matrix<D>,
    seed: u64,
    mode: Mode,
    repeats: usize,
) -> Result<(f64, RunStats), Failure> {
    let opts = PreconditionOptions {
        seed,
        mode,
        ..PreconditionOptions::default()
    };
    let mut best = f64::INFINITY;
    let mut stats = RunStats::default();
    for _ in 0..repeats {
        let start = Instant::now();
        let out = adj_any(a, &opts)?;
        best = best.min(start.elapsed().as_secs_f64() * 1e3);
        stats = out.run.stats;
    }
    Ok((best, stats))
}
