//! Command-line surface: verification suites, particle-path simulation and
//! figure-data export.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports failures,
//! 2 for usage and configuration errors.

mod config;
mod suites;

use clap::{Args, Parser, Subcommand};
use config::{load_config, RunConfig};
use gassym_core::expr::{parse as parse_expr, Expr, FuncDef, Rat};
use gassym_core::gasdyn::{build_blowup_family, build_isochoric_family, FamilyParams};
use gassym_core::kinematics::{
    emit_figure_data, integrate_trajectory, world_line, Family, LagrangianLabel,
};
use gassym_core::report::VerificationReport;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gassym",
    version,
    about = "Verification suites and particle kinematics for the gas dynamics symmetry algebra"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Seed for every randomized check.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample and draw counts for randomized checks.
    #[arg(long, global = true)]
    samples: Option<u32>,
    /// JSON config file; explicit flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Integrate one particle path with the Runge-Kutta oracle and write
    /// CSV samples.
    Simulate(SimulateArgs),
    /// Export the CSV data behind one of the four figures.
    Figure {
        /// Figure number, 1 to 4.
        #[arg(long)]
        id: u8,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Recompute the structure constants and compare with the reference
    /// datum.
    Commutators,
    /// Check the Jacobi identity on all 220 basis triples.
    Jacobi,
    /// Check that every automorphism family preserves the structure
    /// constants.
    Automorphisms,
    /// Check closure, annihilation and independence of catalog entries.
    Subalgebras {
        /// Verify only entries whose id starts with this prefix
        /// (e.g. `4.73`).
        #[arg(long)]
        id: Option<String>,
        /// Alternative catalog file (defaults to the built-in one).
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Check that the invariant ansatz reproduces the reduced system.
    Reduction,
    /// Check the residuals of an exact solution family.
    Solution {
        /// `isochoric` or `blowup`.
        #[arg(long)]
        family: String,
        /// Pin the state-equation switch (0 or 1); symbolic when absent.
        #[arg(long)]
        gamma: Option<u8>,
        /// Concrete profile, an expression in `arg1, arg2`.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        /// Concrete state function, an expression in `arg1`.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
    },
}

#[derive(Args)]
struct SimulateArgs {
    /// `isochoric` or `blowup`.
    #[arg(long)]
    family: String,
    /// Lagrangian label as a comma triple: `x0,y0,z0` (isochoric) or
    /// `u0,y0,z0` (blowup). Rationals like `11/3` are exact.
    #[arg(long, allow_hyphen_values = true)]
    label: String,
    /// Defaults to the config value, then `4/5`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Defaults to the config value, then `3/5`.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Defaults to the config value, then `1`.
    #[arg(long, allow_hyphen_values = true)]
    rho0: Option<String>,
    /// Defaults to the config value, then `1`.
    #[arg(long)]
    gamma: Option<u8>,
    /// Profile expression in `arg1, arg2`; defaults to the config value,
    /// then `arg1 + arg2`.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// State function expression in `arg1`; defaults to the config value,
    /// then `0`.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t0: f64,
    #[arg(long, allow_hyphen_values = true)]
    t1: f64,
    #[arg(long)]
    step: f64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

enum CliError {
    Usage(String),
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerificationFailed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn effective_config(global: &GlobalArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &global.config {
        None => RunConfig::default(),
        Some(path) => load_config(path).map_err(|e| CliError::Usage(e.to_string()))?,
    };
    if let Some(seed) = global.seed {
        cfg.seed = seed;
    }
    if let Some(samples) = global.samples {
        if samples == 0 {
            return Err(CliError::Usage("samples must be at least 1".into()));
        }
        cfg.samples = samples;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = effective_config(&cli.global)?;
    match cli.command {
        Command::Verify { suite } => {
            let report = run_suite(&cfg, suite)?;
            emit_report(&report, cli.global.json);
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
        Command::Simulate(args) => simulate(&args, &cfg),
        Command::Figure { id, out } => {
            let files = emit_figure_data(id, &out).map_err(|e| CliError::Usage(e.to_string()))?;
            println!("wrote {} files to {}", files.len(), out.display());
            Ok(())
        }
    }
}

fn run_suite(cfg: &RunConfig, suite: VerifySuite) -> Result<VerificationReport, CliError> {
    match suite {
        VerifySuite::Commutators => Ok(suites::run_commutators(cfg)),
        VerifySuite::Jacobi => Ok(suites::run_jacobi(cfg)),
        VerifySuite::Automorphisms => Ok(suites::run_automorphisms(cfg)),
        VerifySuite::Subalgebras { id, catalog } => {
            suites::run_subalgebras(cfg, id.as_deref(), catalog.as_deref()).map_err(CliError::Usage)
        }
        VerifySuite::Reduction => Ok(suites::run_reduction(cfg)),
        VerifySuite::Solution {
            family,
            gamma,
            phi,
            f,
        } => {
            let args = suites::SolutionArgs {
                family,
                gamma,
                phi: phi.map(|t| parse_def(&t, 2)).transpose()?,
                f: f.map(|t| parse_def(&t, 1)).transpose()?,
            };
            suites::run_solution(cfg, &args).map_err(CliError::Usage)
        }
    }
}

fn emit_report(report: &VerificationReport, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    } else {
        print!("{}", suites::render_table(report));
    }
}

fn parse_def(text: &str, arity: usize) -> Result<FuncDef, CliError> {
    let body = parse_expr(text).map_err(|e| CliError::Usage(format!("'{text}': {e}")))?;
    for s in body.free_symbols() {
        if !s.starts_with("arg") {
            return Err(CliError::Usage(format!(
                "definition '{text}' may only use formal arguments (arg1..arg{arity}), found '{s}'"
            )));
        }
    }
    Ok(FuncDef::new(arity, body))
}

fn parse_rational(text: &str) -> Result<Rat, CliError> {
    parse_expr(text)
        .ok()
        .and_then(|e| e.as_rational().cloned())
        .ok_or_else(|| CliError::Usage(format!("'{text}' is not an exact rational")))
}

fn simulate(args: &SimulateArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let family = match args.family.as_str() {
        "isochoric" => Family::Isochoric,
        "blowup" => Family::Blowup,
        other => return Err(CliError::Usage(format!("unknown family '{other}'"))),
    };
    let pick = |flag: &Option<String>, config: &Option<String>, fallback: &str| -> String {
        flag.clone()
            .or_else(|| config.clone())
            .unwrap_or_else(|| fallback.to_string())
    };
    let a_text = pick(&args.a, &cfg.family.a, "4/5");
    let b_text = pick(&args.b, &cfg.family.b, "3/5");
    let rho0_text = pick(&args.rho0, &cfg.family.rho0, "1");
    let phi_text = pick(&args.phi, &cfg.family.phi, "arg1 + arg2");
    let f_text = args.f.clone().or_else(|| cfg.family.f.clone());
    let gamma_value = args.gamma.or(cfg.family.gamma).unwrap_or(1);
    let triple: Vec<Rat> = args
        .label
        .split(',')
        .map(|part| parse_rational(part.trim()))
        .collect::<Result<_, _>>()?;
    let triple: [Rat; 3] = triple
        .try_into()
        .map_err(|_| CliError::Usage("label must be a comma triple".into()))?;
    let label = LagrangianLabel::new(family, triple);

    let gamma = match gamma_value {
        0 => Expr::zero(),
        1 => Expr::one(),
        other => {
            return Err(CliError::Usage(format!(
                "gamma must be 0 or 1, got {other}"
            )))
        }
    };
    let params = FamilyParams::new(
        Expr::rational(parse_rational(&a_text)?),
        Expr::rational(parse_rational(&b_text)?),
        gamma,
        Expr::rational(parse_rational(&rho0_text)?),
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let phi = parse_def(&phi_text, 2)?;
    let f = match &f_text {
        Some(text) => parse_def(text, 1)?,
        None => FuncDef::new(1, Expr::zero()),
    };

    let fields = match family {
        Family::Isochoric => build_isochoric_family(&params, Some(&phi)),
        Family::Blowup => build_blowup_family(&params, Some(&phi), Some(&f)),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;

    let wl = world_line(&label, &params, Some(&phi));
    let start = wl
        .at_f64(args.t0)
        .map_err(|e| CliError::Usage(format!("cannot start at t0={}: {e}", args.t0)))?;
    let samples = integrate_trajectory(&fields, start, args.t0, args.t1, args.step)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    if let Some(dir) = args.out.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(e.to_string()))?;
        }
    }
    let mut out = std::fs::File::create(&args.out).map_err(|e| CliError::Usage(e.to_string()))?;
    let write = |out: &mut std::fs::File, line: &str| -> Result<(), CliError> {
        out.write_all(line.as_bytes())
            .and_then(|_| out.write_all(b"\n"))
            .map_err(|e| CliError::Usage(e.to_string()))
    };
    write(&mut out, "t,x,y,z,u,v,w,rho,P,S")?;
    for r in &samples.rows {
        let cells =
            [r.t, r.x, r.y, r.z, r.u, r.v, r.w, r.rho, r.p, r.s].map(|v| format!("{v:.16e}"));
        write(&mut out, &cells.join(","))?;
    }
    println!(
        "integrated {} steps (h = {:.6e}); wrote {} rows to {}",
        samples.rows.len() - 1,
        samples.step,
        samples.rows.len(),
        args.out.display()
    );
    Ok(())
}
