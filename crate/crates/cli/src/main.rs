//! Command-line surface over the bound computations: theta bounds for
//! sphere graphs, the Euclidean chromatic bound table, Delsarte code
//! bounds, and the underlying special-function primitives.
//!
//! Output is a single JSON record on stdout (CSV for `table --format csv`)
//! and is byte-deterministic for fixed inputs; wall time goes to stderr.
//! Exit status: 0 on success, 1 when a result is uncertified and
//! `--allow-uncertified` was not passed (or on numeric failure), 2 on
//! input validation errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::time::Instant;

use spherebound::jacobi::JacobiFamily;
use spherebound::theta::{ScanOptions, SphereGraph};
use spherebound::{bessel, jacobi, limit, lp, theta, Error};

#[derive(Parser)]
#[command(
    name = "spherebound",
    version,
    about = "Certified chromatic lower bounds for spheres and Euclidean spaces, \
             and Delsarte upper bounds for spherical codes",
    after_help = "Environment: SPHEREBOUND_MAX_DEGREE and SPHEREBOUND_GRID override \
                  the --max-degree and --grid defaults; explicit flags win."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Exit 0 even when a result is only truncation-verified.
    #[arg(long, global = true)]
    allow_uncertified: bool,

    /// Output format (csv applies to `table`).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Float,
    Rational,
}

#[derive(Subcommand)]
enum Cmd {
    /// Theta function and chromatic lower bound for the graph G(n, t).
    Theta(ThetaArgs),
    /// Table of chromatic lower bounds for Euclidean spaces from the
    /// Bessel limit formula.
    Table(TableArgs),
    /// Delsarte LP upper bound for spherical codes with inner products
    /// in [-1, t].
    Delsarte(DelsarteArgs),
    /// Dual LP upper bound on theta for a multi-distance sphere graph.
    DualLp(DualLpArgs),
    /// Zeros of a normalized Jacobi polynomial.
    Zeros(ZerosArgs),
    /// First positive zero of the Bessel function J_nu.
    BesselZero(BesselZeroArgs),
    /// Convergence of the degree-k sphere bounds toward the Bessel limit.
    Convergence(ConvergenceArgs),
}

#[derive(Args)]
struct ThetaArgs {
    /// Dimension of the ambient space (sphere is S^{n-1}).
    #[arg(long)]
    n: u32,
    /// Forbidden inner product, in (-1, 1). The rational backend needs a
    /// decimal or a fraction like 9999/10000.
    #[arg(long)]
    t: String,
    #[arg(long, value_enum, default_value_t = Backend::Float)]
    backend: Backend,
    /// Cap on the scanned polynomial degree.
    #[arg(long, env = "SPHEREBOUND_MAX_DEGREE", default_value_t = 16_384)]
    max_degree: usize,
}

#[derive(Args)]
struct TableArgs {
    /// Dimension or inclusive range, e.g. 24 or 10..24.
    #[arg(long, default_value = "10..24")]
    n: String,
    /// Label the bound column for R^{n-1}: the same values are known to
    /// bound the measurable chromatic number one dimension lower.
    #[arg(long)]
    annotate_shift: bool,
}

#[derive(Args)]
struct DelsarteArgs {
    #[arg(long)]
    n: u32,
    /// Largest allowed pairwise inner product, in (-1, 1).
    #[arg(long)]
    t: f64,
    /// Polynomial degree cap K of the LP.
    #[arg(long)]
    degree: usize,
    /// Constraint grid size; defaults to 10 (K + 1).
    #[arg(long, env = "SPHEREBOUND_GRID")]
    grid: Option<usize>,
}

#[derive(Args)]
struct DualLpArgs {
    #[arg(long)]
    n: u32,
    /// Comma-separated forbidden inner products, e.g. 0,-0.5.
    #[arg(long, value_delimiter = ',')]
    t: Vec<f64>,
    /// Number of degree constraints K in the LP.
    #[arg(long)]
    degree: usize,
}

#[derive(Args)]
struct ZerosArgs {
    /// Dimension shortcut: alpha = beta = (n-3)/2.
    #[arg(long, conflicts_with_all = ["alpha", "beta"])]
    n: Option<u32>,
    #[arg(long, requires = "beta")]
    alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    beta: Option<f64>,
    /// Polynomial degree.
    #[arg(long, visible_alias = "k")]
    degree: usize,
}

#[derive(Args)]
struct BesselZeroArgs {
    #[arg(long)]
    nu: f64,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    n: u32,
    /// Comma-separated list of degrees to evaluate.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    degrees: Vec<usize>,
}

/// What a subcommand hands back before serialization.
struct CmdOutput {
    parameters: Value,
    results: Value,
    backend: &'static str,
    /// None when certification does not apply to the command.
    certified: Option<bool>,
    /// Pre-rendered CSV lines, for commands that support --format csv.
    csv: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, out) = match &cli.cmd {
        Cmd::Theta(a) => ("theta", cmd_theta(a)),
        Cmd::Table(a) => ("table", cmd_table(a)),
        Cmd::Delsarte(a) => ("delsarte", cmd_delsarte(a)),
        Cmd::DualLp(a) => ("dual-lp", cmd_dual_lp(a)),
        Cmd::Zeros(a) => ("zeros", cmd_zeros(a)),
        Cmd::BesselZero(a) => ("bessel-zero", cmd_bessel_zero(a)),
        Cmd::Convergence(a) => ("convergence", cmd_convergence(a)),
    };
    let out = match out {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };

    if cli.format == Format::Csv {
        match &out.csv {
            Some(csv) => print!("{csv}"),
            None => {
                eprintln!("error: csv output is only available for the table command");
                return ExitCode::from(2);
            }
        }
    } else {
        let record = json!({
            "command": name,
            "parameters": out.parameters,
            "backend": out.backend,
            "certified": out.certified,
            "results": out.results,
        });
        println!("{}", serde_json::to_string_pretty(&record).expect("serialize"));
    }
    // stderr only, so stdout stays byte-deterministic
    eprintln!("wall_time_ms: {:.3}", start.elapsed().as_secs_f64() * 1e3);

    if out.certified == Some(false) && !cli.allow_uncertified {
        eprintln!("result is not certified (pass --allow-uncertified to accept it)");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::JacobiParams { .. }
        | Error::OutOfRange { .. }
        | Error::BadInteger { .. }
        | Error::IrrationalInput(_)
        | Error::IncreaseDegree { .. }
        | Error::BracketUnavailable { .. } => 2,
        _ => 1,
    }
}

fn parse_float(s: &str, arg: &'static str) -> Result<f64, Error> {
    // accept fraction syntax everywhere so `--t 1/2` works in both backends
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|_| Error::IrrationalInput("fraction numerator"))?;
        let d: f64 = den.trim().parse().map_err(|_| Error::IrrationalInput("fraction denominator"))?;
        return Ok(n / d);
    }
    s.parse().map_err(|_| Error::OutOfRange {
        arg,
        value: f64::NAN,
        reason: "not a number",
    })
}

fn cmd_theta(a: &ThetaArgs) -> Result<CmdOutput, Error> {
    let opts = ScanOptions {
        max_degree: a.max_degree,
        ..ScanOptions::default()
    };
    let parameters = json!({ "n": a.n, "t": a.t, "max_degree": a.max_degree });
    match a.backend {
        Backend::Float => {
            let t = parse_float(&a.t, "t")?;
            let r = theta::theta_of_with(a.n, t, opts)?;
            Ok(CmdOutput {
                parameters,
                results: json!({
                    "alpha": r.alpha,
                    "m_value": r.m_value,
                    "k_star": r.k_star,
                    "theta": r.theta,
                    "theta_bar": r.theta_bar,
                    "chi_lower": r.chi_lower,
                    "tie": r.tie,
                    "scanned_k": r.scanned_k,
                    "m_bracket": r.m_bracket.map(|(lo, hi)| vec![lo, hi]),
                }),
                backend: "float",
                certified: Some(r.certified),
                csv: None,
            })
        }
        Backend::Rational => {
            let t_exact = jacobi::rational::parse_rational(&a.t)?;
            let t = jacobi::rational::rat_to_f64(&t_exact);
            // the float scan fixes the certified degree range; the exact
            // backend then re-derives the minimum over it without roundoff
            let r = theta::theta_of_with(a.n, t, opts)?;
            let (k_star, m_exact) = theta::m_scan_exact(a.n, &t_exact, r.scanned_k)?;
            let chi_lower = theta::chi_lower_exact(&m_exact)?;
            Ok(CmdOutput {
                parameters,
                results: json!({
                    "alpha": r.alpha,
                    "m_value": jacobi::rational::rat_to_f64(&m_exact),
                    "m_exact": m_exact.to_string(),
                    "k_star": k_star,
                    "chi_lower": chi_lower,
                    "scanned_k": r.scanned_k,
                }),
                backend: "rational",
                certified: Some(r.certified),
                csv: None,
            })
        }
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::IrrationalInput("dimension range (use N or A..B)");
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(Error::BadInteger {
                arg: "n",
                value: lo as i64,
                reason: "range start exceeds range end",
            });
        }
        Ok((lo, hi))
    } else {
        let n: u32 = s.trim().parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn cmd_table(a: &TableArgs) -> Result<CmdOutput, Error> {
    let (lo, hi) = parse_range(&a.n)?;
    let rows: Vec<limit::BoundTableRow> = (lo..=hi)
        .map(limit::chi_table_lower)
        .collect::<Result<_, _>>()?;
    let chi_label = if a.annotate_shift {
        "chi_m_lower_shifted"
    } else {
        "chi_m_lower"
    };
    let mut csv = format!("n,j_alpha_plus_1,limit_m,chi_real,{chi_label}\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.j_alpha_plus_1, r.limit_m, r.chi_bound_real, r.chi_bound_int
        ));
    }
    let results: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "alpha": r.alpha,
                "j_alpha_plus_1": r.j_alpha_plus_1,
                "limit_m": r.limit_m,
                "chi_real": r.chi_bound_real,
                chi_label: r.chi_bound_int,
            })
        })
        .collect();
    Ok(CmdOutput {
        parameters: json!({ "n": a.n, "annotate_shift": a.annotate_shift }),
        results: Value::Array(results),
        backend: "float",
        certified: None,
        csv: Some(csv),
    })
}

fn cmd_delsarte(a: &DelsarteArgs) -> Result<CmdOutput, Error> {
    let grid = a.grid.unwrap_or(10 * (a.degree + 1));
    let r = lp::delsarte_code_bound(a.n, a.t, a.degree, grid)?;
    Ok(CmdOutput {
        parameters: json!({ "n": a.n, "t": a.t, "degree": a.degree, "grid": grid }),
        results: json!({
            "bound": r.bound,
            "certified_bound": r.certified_bound,
            "max_violation": r.max_violation,
            "f": r.f,
        }),
        backend: "float",
        certified: Some(true),
        csv: None,
    })
}

fn cmd_dual_lp(a: &DualLpArgs) -> Result<CmdOutput, Error> {
    let graph = SphereGraph::new(a.n, a.t.clone())?;
    let r = lp::dual_theta_lp(&graph, a.degree)?;
    Ok(CmdOutput {
        parameters: json!({ "n": a.n, "t": a.t, "degree": a.degree }),
        results: json!({
            "bound_on_theta": r.bound_on_theta,
            "z": r.z,
            "chi_lower": r.chi_lower,
            "checked_to": r.checked_to,
        }),
        backend: "float",
        certified: Some(r.certified),
        csv: None,
    })
}

fn cmd_zeros(a: &ZerosArgs) -> Result<CmdOutput, Error> {
    let (alpha, beta) = match (a.n, a.alpha, a.beta) {
        (Some(n), None, None) => {
            let al = theta::alpha_for(n);
            (al, al)
        }
        (None, Some(al), Some(be)) => (al, be),
        _ => {
            return Err(Error::BadInteger {
                arg: "n",
                value: 0,
                reason: "pass either --n or both --alpha and --beta",
            })
        }
    };
    let fam = JacobiFamily::with_params(alpha, beta)?;
    let zeros = fam.zeros(a.degree)?;
    Ok(CmdOutput {
        parameters: json!({ "alpha": alpha, "beta": beta, "degree": a.degree }),
        results: json!({
            "zeros": zeros.iter().map(|z| z.value).collect::<Vec<_>>(),
            "bracket_widths": zeros.iter().map(|z| z.bracket_width).collect::<Vec<_>>(),
        }),
        backend: "float",
        certified: None,
        csv: None,
    })
}

fn cmd_bessel_zero(a: &BesselZeroArgs) -> Result<CmdOutput, Error> {
    let z = bessel::first_zero(a.nu)?;
    Ok(CmdOutput {
        parameters: json!({ "nu": a.nu }),
        results: json!({
            "order": z.order,
            "value": z.value,
            "residual": z.residual,
        }),
        backend: "float",
        certified: None,
        csv: None,
    })
}

fn cmd_convergence(a: &ConvergenceArgs) -> Result<CmdOutput, Error> {
    let steps = limit::convergence_check(a.n, &a.degrees)?;
    let lim = limit::limit_m(a.n)?;
    Ok(CmdOutput {
        parameters: json!({ "n": a.n, "degrees": a.degrees }),
        results: json!({
            "limit_m": lim,
            "steps": steps
                .iter()
                .map(|s| {
                    json!({
                        "k": s.k,
                        "t_k": s.t_k,
                        "m_k": s.m_k,
                        "limit_gap": s.limit_gap,
                    })
                })
                .collect::<Vec<_>>(),
        }),
        backend: "float",
        certified: None,
        csv: None,
    })
}
