//! Batch front end: read polynomials, curves, and point sets from files;
//! run expansions, oracle checks, and certifications; emit expansions,
//! certificates, and schedules.
//!
//! Exit status: 0 on success (verdict holds / sides EQUAL), 1 when a
//! certified verdict is violated or the oracle check reports UNEQUAL, 2 on
//! any input error.

mod files;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rigidity_core::chainrule::{ChainRuleExpansion, DerivativeTensors};
use rigidity_core::exactpoly::{oracle_derivative, parse_rational, rational_string, Rational};
use rigidity_core::multiindex;
use rigidity_core::rigidity::{
    certify_main_inequality_with_grid, curve_rigidity_certificate, interval_schedule,
    one_dim_certificate, LIB_VERSION,
};

/// Default parameter envelope: keeps term counts and coefficient sizes
/// laptop-friendly. The library itself has no hard limit, so every command
/// accepts `--allow-large` to lift the cap.
const MAX_N: usize = 4;
const MAX_D_PLUS_1: usize = 8;
const MAX_J: usize = 64;

#[derive(Parser)]
#[command(
    name = "rigidity",
    version,
    about = "Exact chain-rule expansions and certified derivative-norm bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Lift the default parameter envelope (n <= 4, d+1 <= 8)
    #[arg(long)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical term table of the order-(d+1) derivative of
    /// f(omega(t))
    Expand {
        /// Number of variables of f
        #[arg(short = 'n', long = "dimension", value_name = "N")]
        n: usize,
        /// Order parameter: the expanded derivative has order d+1
        #[arg(short = 'd', long = "order", value_name = "D")]
        d: usize,
        /// Truncate to the terms surviving a curve of this degree and
        /// report the provable and empirical order thresholds
        #[arg(long = "degree", value_name = "S")]
        degree: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Evaluate the expansion against the symbolic oracle on file inputs
    OracleCheck {
        /// Polynomial file for f
        #[arg(short = 'f', long = "function")]
        function: PathBuf,
        /// Curve file for omega
        #[arg(short = 'c', long = "curve")]
        curve: PathBuf,
        /// Order parameter: the compared derivative has order d+1
        #[arg(short = 'd', long = "order", value_name = "D")]
        d: usize,
        /// Evaluation point, an exact rational like `1/2`
        #[arg(long)]
        t0: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Produce a rigidity certificate
    Certify {
        #[command(subcommand)]
        mode: CertifyMode,
    },
    /// Print the derivative-order interval schedule for a curve degree
    Schedule {
        /// Curve degree s
        #[arg(short = 's', long = "degree", value_name = "S")]
        s: usize,
        /// Number of schedule entries
        #[arg(short = 'j', long = "j-max", value_name = "J")]
        j_max: usize,
        /// Also print per-interval bounds for this dimension at m = 1
        #[arg(long, value_name = "N")]
        bounds_for_n: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum CertifyMode {
    /// Pointwise inequality between the derivative-norm sum of f along the
    /// curve and the composition's derivative
    MainInequality {
        #[arg(short = 'f', long = "function")]
        function: PathBuf,
        /// Curve file for omega
        #[arg(
            short = 'c',
            long = "curve",
            conflicts_with = "points",
            required_unless_present = "points"
        )]
        curve: Option<PathBuf>,
        /// Points file: omega is interpolated through these points (at the
        /// file's `params`, or near-Chebyshev nodes when omitted)
        #[arg(long = "points")]
        points: Option<PathBuf>,
        #[arg(short = 'd', long = "order", value_name = "D")]
        d: usize,
        /// Witness point, an exact rational
        #[arg(long)]
        t0: String,
        /// Sampling grid for the unit-ball check (the verdict is exact
        /// regardless; the grid only speeds up refutation)
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sharp and uniform one-dimensional bounds from a zero set and witness
    OneDim {
        /// Points file (n = 1) listing the prescribed zeros
        #[arg(short = 'p', long = "zeros")]
        zeros: PathBuf,
        /// Witness location, an exact rational
        #[arg(long)]
        z0: String,
        /// Witness value |g(z0)| = m > 0
        #[arg(long)]
        m: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The curve-rigidity constant for given parameters and witness max m
    CurveRigidity {
        #[arg(short = 'n', long = "dimension", value_name = "N")]
        n: usize,
        #[arg(short = 'd', long = "order", value_name = "D")]
        d: usize,
        #[arg(short = 's', long = "degree", value_name = "S")]
        s: usize,
        #[arg(long)]
        m: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn run(command: Command) -> CmdResult {
    match command {
        Command::Expand { n, d, degree, out } => cmd_expand(n, d, degree, &out),
        Command::OracleCheck {
            function,
            curve,
            d,
            t0,
            out,
        } => cmd_oracle_check(&function, &curve, d, &t0, &out),
        Command::Certify { mode } => match mode {
            CertifyMode::MainInequality {
                function,
                curve,
                points,
                d,
                t0,
                grid,
                out,
            } => cmd_certify_main(
                &function,
                curve.as_deref(),
                points.as_deref(),
                d,
                &t0,
                grid,
                &out,
            ),
            CertifyMode::OneDim { zeros, z0, m, out } => cmd_certify_one_dim(&zeros, &z0, &m, &out),
            CertifyMode::CurveRigidity { n, d, s, m, out } => {
                cmd_certify_curve_rigidity(n, d, s, &m, &out)
            }
        },
        Command::Schedule {
            s,
            j_max,
            bounds_for_n,
            out,
        } => cmd_schedule(s, j_max, bounds_for_n, &out),
    }
}

fn check_envelope(n: usize, d: usize, allow_large: bool) -> Result<(), String> {
    if n == 0 {
        return Err("dimension must be at least 1".to_string());
    }
    if allow_large {
        return Ok(());
    }
    if n > MAX_N || d + 1 > MAX_D_PLUS_1 {
        return Err(format!(
            "parameters n = {n}, d = {d} exceed the default envelope \
             (n <= {MAX_N}, d+1 <= {MAX_D_PLUS_1}); pass --allow-large to proceed"
        ));
    }
    Ok(())
}

fn emit(out: &OutputArgs, content: &str) -> Result<(), String> {
    match &out.output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn parse_rational_arg(s: &str, what: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("bad {what}: {e}"))
}

fn cmd_expand(n: usize, d: usize, degree: Option<usize>, out: &OutputArgs) -> CmdResult {
    check_envelope(n, d, out.allow_large)?;
    if degree == Some(0) {
        return Err("curve degree must be at least 1".to_string());
    }
    let expansion = ChainRuleExpansion::expand(n, d);
    let mut report = String::new();
    match degree {
        None => {
            let _ = writeln!(report, "# rigidity v{LIB_VERSION} expand n={n} d={d}");
            let _ = writeln!(report, "# terms: {}", expansion.terms().len());
            let _ = writeln!(report, "# coefficient-sum: {}", expansion.coefficient_sum());
            report.push_str(&expansion.dump());
        }
        Some(s) => {
            let truncated = expansion.truncate_for_degree(s);
            let eta = multiindex::eta(d, s).map_err(|e| e.to_string())?;
            let _ = writeln!(
                report,
                "# rigidity v{LIB_VERSION} expand n={n} d={d} degree={s}"
            );
            let _ = writeln!(report, "# terms: {}", truncated.terms().len());
            let _ = writeln!(report, "# eta: {eta}");
            let _ = writeln!(
                report,
                "# min-surviving-order: {}",
                expansion.min_surviving_order(s)
            );
            report.push_str(&truncated.dump());
        }
    }
    emit(out, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle_check(
    function: &Path,
    curve: &Path,
    d: usize,
    t0: &str,
    out: &OutputArgs,
) -> CmdResult {
    let f = files::parse_poly_file(&read_file(function)?)?;
    let omega = files::parse_curve_file(&read_file(curve)?)?;
    check_envelope(f.n(), d, out.allow_large)?;
    let t0 = parse_rational_arg(t0, "t0")?;

    let expansion = ChainRuleExpansion::expand(f.n(), d);
    let tensors =
        DerivativeTensors::from_poly_curve(&f, &omega, &t0, d).map_err(|e| e.to_string())?;
    let via_expansion = expansion.evaluate(&tensors).map_err(|e| e.to_string())?;
    let via_oracle = oracle_derivative(&f, &omega, d + 1, &t0).map_err(|e| e.to_string())?;
    let equal = via_expansion == via_oracle;

    let mut report = String::new();
    let _ = writeln!(
        report,
        "# rigidity v{LIB_VERSION} oracle-check n={} d={d} t0={}",
        f.n(),
        rational_string(&t0)
    );
    let _ = writeln!(report, "expansion: {}", rational_string(&via_expansion));
    let _ = writeln!(report, "oracle: {}", rational_string(&via_oracle));
    let _ = writeln!(
        report,
        "verdict: {}",
        if equal { "EQUAL" } else { "UNEQUAL" }
    );
    emit(out, &report)?;
    Ok(if equal {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_certify_main(
    function: &Path,
    curve: Option<&Path>,
    points: Option<&Path>,
    d: usize,
    t0: &str,
    grid: usize,
    out: &OutputArgs,
) -> CmdResult {
    if grid < 2 {
        return Err("grid must have at least 2 points".to_string());
    }
    let f = files::parse_poly_file(&read_file(function)?)?;
    let omega = match (curve, points) {
        (Some(path), None) => files::parse_curve_file(&read_file(path)?)?,
        (None, Some(path)) => {
            let pf = files::parse_points_file(&read_file(path)?)?;
            rigidity_core::curves::curve_through_points(&pf.points, pf.params.as_deref())
                .map_err(|e| e.to_string())?
        }
        _ => return Err("pass exactly one of --curve and --points".to_string()),
    };
    check_envelope(f.n(), d, out.allow_large)?;
    let t0 = parse_rational_arg(t0, "t0")?;
    let cert = certify_main_inequality_with_grid(&f, &omega, &t0, d, grid)
        .map_err(|e| e.to_string())?;
    emit(out, &cert.render())?;
    Ok(if cert.holds() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_certify_one_dim(zeros: &Path, z0: &str, m: &str, out: &OutputArgs) -> CmdResult {
    let pf = files::parse_points_file(&read_file(zeros)?)?;
    let zero_values: Vec<Rational> = pf
        .points
        .iter()
        .map(|p| {
            if p.len() == 1 {
                Ok(p[0].clone())
            } else {
                Err("one-dim mode needs a points file with n: 1".to_string())
            }
        })
        .collect::<Result<_, _>>()?;
    let z0 = parse_rational_arg(z0, "z0")?;
    let m = parse_rational_arg(m, "m")?;
    let cert = one_dim_certificate(&zero_values, &z0, &m).map_err(|e| e.to_string())?;
    emit(out, &cert.render())?;
    Ok(if cert.holds() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_certify_curve_rigidity(
    n: usize,
    d: usize,
    s: usize,
    m: &str,
    out: &OutputArgs,
) -> CmdResult {
    check_envelope(n, d, out.allow_large)?;
    let m = parse_rational_arg(m, "m")?;
    let cert = curve_rigidity_certificate(n, d, s, &m).map_err(|e| e.to_string())?;
    emit(out, &cert.render())?;
    Ok(if cert.holds() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_schedule(
    s: usize,
    j_max: usize,
    bounds_for_n: Option<usize>,
    out: &OutputArgs,
) -> CmdResult {
    if s == 0 {
        return Err("curve degree must be at least 1".to_string());
    }
    if j_max > MAX_J && !out.allow_large {
        return Err(format!(
            "j_max = {j_max} exceeds the default cap {MAX_J}; pass --allow-large to proceed"
        ));
    }
    if let Some(n) = bounds_for_n {
        if n == 0 {
            return Err("dimension must be at least 1".to_string());
        }
    }
    let schedule = interval_schedule(s, j_max);
    emit(out, &schedule.render(bounds_for_n))?;
    Ok(ExitCode::SUCCESS)
}
