use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ballmass::verify::{run_suite, Suite};
use ballmass::{
    gegenbauer, geometric_schedule, harmonic_basis_eval, run_sweep, sweep_converged, BallParams, BallPoint,
    ConvergenceRecord, JacobiParams, SweepConfig, SweepKind, UnitDirection, UvarovParams,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod number;

use number::g17;

/// Orthogonal polynomials and kernels on the unit ball with a sphere mass.
#[derive(Parser, Debug)]
#[command(name = "ballmass", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a univariate polynomial or a spherical harmonic.
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Evaluate a ball kernel at a pair of points.
    Kernel(KernelArgs),
    /// Christoffel function 1/K_n(x,x) at one or more points.
    Christoffel(ChristoffelArgs),
    /// Tabulate convergence toward a large-degree limit.
    Converge(ConvergeArgs),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum EvalCommand {
    /// P_n^{(alpha,beta)}(t).
    Jacobi {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Point-mass modified Jacobi polynomial q_n(t).
    Uvarov {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        mass: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Gegenbauer polynomial C_k^delta(s).
    Gegenbauer {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
    },
    /// Basis harmonic Y_nu^k at a unit vector (d = 2 or 3).
    Harmonic {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nu: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Vec<f64>,
    },
}

#[derive(Args, Debug)]
struct BallArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
}

impl BallArgs {
    fn params(&self) -> ballmass::Result<BallParams<f64>> {
        BallParams::new(self.d, self.mu, self.lambda)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KernelKind {
    Classical,
    Modified,
    Difference,
}

#[derive(Args, Debug)]
struct KernelArgs {
    #[command(flatten)]
    ball: BallArgs,
    #[arg(long)]
    n: usize,
    /// Cartesian coordinates, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    x: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    y: Vec<f64>,
    #[arg(long, value_enum, default_value_t = KernelKind::Modified)]
    kind: KernelKind,
}

#[derive(Args, Debug)]
struct ChristoffelArgs {
    #[command(flatten)]
    ball: BallArgs,
    #[arg(long)]
    n: usize,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "points",
        required_unless_present = "points"
    )]
    x: Vec<f64>,
    /// File with one point per line (coordinates separated by commas or spaces).
    #[arg(long)]
    points: Option<PathBuf>,
    /// Use the kernel without the sphere mass.
    #[arg(long)]
    classical: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Limit {
    Boundary,
    Interior,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(value_enum)]
    limit: Limit,
    #[command(flatten)]
    ball: BallArgs,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, default_value_t = 125)]
    nmin: usize,
    /// Radius of the interior point.
    #[arg(long, default_value_t = 0.5)]
    r: f64,
    /// Explicit degrees, overriding the halving schedule from --nmax.
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<usize>>,
    /// CSV output path; a table goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    tol: Option<f64>,
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<ballmass::Error> for Failure {
    fn from(e: ballmass::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval(e) => eval(e),
        Command::Kernel(a) => kernel(a),
        Command::Christoffel(a) => christoffel(a),
        Command::Converge(a) => converge(a),
        Command::Verify(a) => verify(a),
    }
}

fn eval(cmd: EvalCommand) -> Result<(), Failure> {
    let v = match cmd {
        EvalCommand::Jacobi { alpha, beta, n, t } => JacobiParams::new(alpha, beta)?.eval(n, t),
        EvalCommand::Uvarov { alpha, beta, mass, n, t } => {
            UvarovParams::new(JacobiParams::new(alpha, beta)?, mass)?.eval(n, t)
        }
        EvalCommand::Gegenbauer { delta, k, s } => gegenbauer(delta, k, s)?,
        EvalCommand::Harmonic { k, nu, xi } => harmonic_basis_eval(k, nu, &UnitDirection::new(xi)?)?,
    };
    println!("{}", g17(v));
    Ok(())
}

fn kernel(a: KernelArgs) -> Result<(), Failure> {
    let bp = a.ball.params()?;
    let x = BallPoint::from_cartesian(&a.x)?;
    let y = BallPoint::from_cartesian(&a.y)?;
    let v = match a.kind {
        KernelKind::Classical => bp.kernel(a.n, &x, &y)?,
        KernelKind::Modified => bp.kernel_modified(a.n, &x, &y)?,
        KernelKind::Difference => bp.kernel_difference(a.n, &x, &y)?,
    };
    println!("{}", g17(v));
    Ok(())
}

fn read_points(path: &Path) -> Result<Vec<Vec<f64>>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse::<f64>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| usage(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        out.push(coords);
    }
    Ok(out)
}

fn christoffel(a: ChristoffelArgs) -> Result<(), Failure> {
    let bp = a.ball.params()?;
    let points = match &a.points {
        Some(path) => read_points(path)?,
        None => vec![a.x.clone()],
    };
    let parsed = points.iter().map(|p| BallPoint::from_cartesian(p)).collect::<Result<Vec<_>, _>>()?;
    let mut stdout = io::stdout().lock();
    for (coords, p) in points.iter().zip(&parsed) {
        let v = bp.christoffel(a.n, p, !a.classical)?;
        let shown: Vec<String> = coords.iter().map(|c| g17(*c)).collect();
        if a.points.is_some() {
            writeln!(stdout, "{} {}", shown.join(","), g17(v)).map_err(|e| usage(e.to_string()))?;
        } else {
            writeln!(stdout, "{}", g17(v)).map_err(|e| usage(e.to_string()))?;
        }
    }
    Ok(())
}

const HEADER: [&str; 9] = ["n", "d", "mu", "lambda", "r", "ratio", "target", "abs_err", "rel_err"];

fn record_fields(r: &ConvergenceRecord<f64>) -> [String; 9] {
    [
        r.n.to_string(),
        r.d.to_string(),
        g17(r.mu),
        g17(r.lambda),
        g17(r.r),
        g17(r.ratio),
        g17(r.target),
        g17(r.abs_err),
        g17(r.rel_err),
    ]
}

fn write_csv(path: &Path, records: &[ConvergenceRecord<f64>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_failure(path, e))?;
    w.write_record(HEADER).map_err(|e| io_failure(path, e))?;
    for r in records {
        w.write_record(record_fields(r)).map_err(|e| io_failure(path, e))?;
    }
    w.flush().map_err(|e| io_failure(path, e))
}

fn print_table(records: &[ConvergenceRecord<f64>]) {
    let rows: Vec<[String; 9]> = records.iter().map(record_fields).collect();
    let widths: Vec<usize> =
        (0..9).map(|i| rows.iter().map(|r| r[i].len()).chain([HEADER[i].len()]).max().unwrap_or(0)).collect();
    let line =
        |cells: Vec<&str>| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
    println!("{}", line(HEADER.to_vec()));
    for r in &rows {
        println!("{}", line(r.iter().map(String::as_str).collect()));
    }
}

fn converge(a: ConvergeArgs) -> Result<(), Failure> {
    let bp = a.ball.params()?;
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(usage(format!("--tol must be positive, got {}", a.tol)));
    }
    let schedule = match (&a.schedule, a.nmax) {
        (Some(s), _) => s.clone(),
        (None, Some(nmax)) => geometric_schedule(a.nmin, nmax),
        (None, None) => return Err(usage("either --nmax or --schedule is required")),
    };
    if schedule.is_empty() {
        return Err(usage("the degree schedule is empty (is --nmax below --nmin?)"));
    }
    let kind = match a.limit {
        Limit::Boundary => SweepKind::Boundary,
        Limit::Interior => SweepKind::Interior { r: a.r },
    };
    let records = run_sweep(&SweepConfig { params: bp, kind, schedule })?;
    match &a.out {
        Some(path) => write_csv(path, &records)?,
        None => print_table(&records),
    }
    if sweep_converged(&records, a.tol) {
        Ok(())
    } else {
        let last = records.last().expect("non-empty schedule");
        Err(Failure {
            code: 1,
            message: format!(
                "not converged: rel_err {} at n = {} (tolerance {}, must also improve on the previous row)",
                g17(last.rel_err),
                last.n,
                g17(a.tol)
            ),
        })
    }
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = a.suite.parse()?;
    let outcomes = run_suite(suite, a.tol)?;
    let mut failed = 0;
    for c in &outcomes {
        let status = if c.passed() { "pass" } else { "FAIL" };
        println!("{status}  {:<12} {}  max_err={} tol={}", c.suite.name(), c.name, g17(c.max_error), g17(c.tolerance));
        if !c.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(Failure { code: 1, message: format!("{failed} of {} checks failed", outcomes.len()) });
    }
    println!("all {} checks passed", outcomes.len());
    Ok(())
}
