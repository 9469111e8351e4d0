//! Command-line front end of the `entpower` binary.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error, 3 I/O error,
//! 4 numeric failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::entanglement;
use crate::epower::{self, FamilyKind, SweepConfig};
use crate::error::Error;
use crate::gates::{parse_angle, CartanAngles};
use crate::output::{self, format_sig12, MemsRow};
use crate::states::{self, DensityMatrix4};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "entpower",
    version,
    about = "Entangling power of two-qubit gates on mixed states of fixed purity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entangling power versus purity, as CSV.
    Sweep(SweepArgs),
    /// Check the closed-form gate actions onto the MEMS frontier.
    Verify(VerifyArgs),
    /// MEMS frontier: γ, concurrence and EOF versus purity, as CSV.
    MemsCurve(MemsCurveArgs),
    /// Print matrix, spectrum and entanglement of a named state.
    StateInfo(StateInfoArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value = "0.3334", value_parser = parse_angle)]
    pub mu_min: f64,
    #[arg(long, default_value = "1.0", value_parser = parse_angle)]
    pub mu_max: f64,
    #[arg(long, default_value_t = epower::DEFAULT_MU_STEPS)]
    pub mu_steps: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_angle)]
    pub theta_x: f64,
    #[arg(long, value_parser = parse_angle)]
    pub theta_y: f64,
    #[arg(long, value_parser = parse_angle)]
    pub theta_z: f64,
    #[arg(long, default_value = "cc")]
    pub family: FamilyKind,
    /// Candidates per purity point [default: 1000 per basis pattern for cc,
    /// 1000000 for product]
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Add the closed-form frontier inputs to every candidate pool.
    #[arg(long)]
    pub inject_analytic: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output file [default: standard output]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (does not change the output).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct MemsCurveArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateFamily {
    Mems,
    Mdms,
    RhoDiag,
    RhoS,
    RhoC,
}

#[derive(Debug, Args)]
pub struct StateInfoArgs {
    #[arg(long, value_enum)]
    pub family: StateFamily,
    #[arg(long, value_parser = parse_angle)]
    pub gamma: Option<f64>,
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub phi: f64,
    #[arg(long, value_parser = parse_angle)]
    pub a: Option<f64>,
    #[arg(long, value_parser = parse_angle)]
    pub b: Option<f64>,
}

/// Failure of a subcommand, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
    Numeric(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AngleOutOfRange { .. }
            | Error::GammaOutOfRange(_)
            | Error::ParamOutOfRange { .. }
            | Error::PurityOutOfRange { .. }
            | Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
            Failure::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand, writing
/// reports to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => run_sweep(&a, stdout),
        Command::Verify(a) => run_verify(&a, stdout),
        Command::MemsCurve(a) => run_mems_curve(&a, stdout),
        Command::StateInfo(a) => run_state_info(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = match &f {
                Failure::Usage(m) => writeln!(stderr, "error: {m}"),
                Failure::Io(e) => writeln!(stderr, "I/O error: {e}"),
                Failure::Numeric(m) => writeln!(stderr, "numeric error: {m}"),
            };
            f.exit_code()
        }
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, body: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(body)?;
            w.flush()?;
        }
        None => stdout.write_all(body)?,
    }
    Ok(())
}

fn run_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let gate = CartanAngles::new(a.theta_x, a.theta_y, a.theta_z)?;
    let config = SweepConfig {
        gate,
        family: a.family,
        mu_min: a.grid.mu_min,
        mu_max: a.grid.mu_max,
        mu_steps: a.grid.mu_steps,
        samples_per_mu: a.samples.unwrap_or_else(|| a.family.default_samples()),
        seed: a.seed,
        inject_analytic: a.inject_analytic,
    };
    config.validate()?;
    if a.threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    if let Some(path) = &a.out {
        // Fail on an unwritable path before doing the work.
        File::create(path)?;
    }

    let curve = match a.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Numeric(e.to_string()))?
            .install(|| epower::sweep(&config))?,
        None => epower::sweep(&config)?,
    };
    let mut body = Vec::new();
    output::write_sweep_csv(&curve, &mut body)?;
    emit(&a.out, stdout, &body)?;
    Ok(EXIT_OK)
}

fn run_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let report = epower::verify_analytic(a.tolerance)?;
    for c in &report.checks {
        writeln!(
            stdout,
            "{} {:<28} cases={:<3} max_deviation={:.3e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.cases,
            c.max_deviation
        )?;
    }
    let passed = report.all_passed();
    writeln!(
        stdout,
        "{} at tolerance {:e}",
        if passed {
            "all checks passed"
        } else {
            "verification FAILED"
        },
        report.tolerance
    )?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn run_mems_curve(a: &MemsCurveArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let g = &a.grid;
    SweepConfig {
        mu_min: g.mu_min,
        mu_max: g.mu_max,
        mu_steps: g.mu_steps,
        ..SweepConfig::new(CartanAngles::IDENTITY, FamilyKind::Analytic)
    }
    .validate()?;
    let rows = epower::mu_grid(g.mu_min, g.mu_max, g.mu_steps)
        .into_iter()
        .map(|mu| {
            let mu = mu.clamp(states::ESD_PURITY, 1.0);
            let gamma = states::mems_gamma_for_purity(mu)?;
            let c = entanglement::concurrence(&states::mems(gamma, 0.0)?)?;
            Ok(MemsRow {
                mu,
                gamma,
                concurrence: c,
                eof: states::mems_eof_curve(mu)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut body = Vec::new();
    output::write_mems_curve_csv(&rows, &mut body)?;
    emit(&a.out, stdout, &body)?;
    Ok(EXIT_OK)
}

fn required(v: Option<f64>, flag: &str, family: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--family {family} needs --{flag}")))
}

fn build_state(a: &StateInfoArgs) -> Result<(String, DensityMatrix4), Failure> {
    let f = |x: f64| format_sig12(x);
    Ok(match a.family {
        StateFamily::Mems => {
            let g = required(a.gamma, "gamma", "mems")?;
            (
                format!("mems(gamma={};phi={})", f(g), f(a.phi)),
                states::mems(g, a.phi)?,
            )
        }
        StateFamily::Mdms => {
            let x = required(a.a, "a", "mdms")?;
            let y = a.b.unwrap_or(1.0 - x);
            (
                format!("mdms(a={};b={};phi={})", f(x), f(y), f(a.phi)),
                states::mdms(x, y, a.phi)?,
            )
        }
        StateFamily::RhoDiag => {
            let x = required(a.a, "a", "rho-diag")?;
            (format!("rho_diag(a={})", f(x)), states::rho_diag(x)?)
        }
        StateFamily::RhoS => {
            let g = required(a.gamma, "gamma", "rho-s")?;
            (format!("rho_s(gamma={})", f(g)), states::rho_s(g)?)
        }
        StateFamily::RhoC => {
            let g = required(a.gamma, "gamma", "rho-c")?;
            (format!("rho_c(gamma={})", f(g)), states::rho_c(g)?)
        }
    })
}

fn run_state_info(a: &StateInfoArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (name, rho) = build_state(a)?;
    let r = entanglement::report(&rho)?;
    let m = rho.matrix();
    writeln!(stdout, "state: {name}")?;
    writeln!(stdout, "matrix (re + i im):")?;
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| format!("{:>9.6}{:+.6}i", m[(i, j)].re, m[(i, j)].im))
            .collect();
        writeln!(stdout, "  {}", row.join("  "))?;
    }
    let ev = rho.eigenvalues().map(format_sig12).join(" ");
    writeln!(stdout, "purity: {}", format_sig12(rho.purity()))?;
    writeln!(stdout, "eigenvalues: {ev}")?;
    writeln!(stdout, "concurrence: {}", format_sig12(r.concurrence))?;
    writeln!(stdout, "tangle: {}", format_sig12(r.tangle))?;
    writeln!(stdout, "eof: {}", format_sig12(r.eof))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("entpower").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(call(&["verify"]).0, 0);
        let (code, out, _) = call(&["verify", "--tolerance", "1e-300"]);
        assert_eq!(code, 1);
        assert!(out.contains("max_deviation="));
        assert_eq!(call(&["verify", "--tolerance", "abc"]).0, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["verify", "--bogus"]).0, 2);
        assert_eq!(
            call(&["state-info", "--family", "rho-c", "--gamma", "0.9"]).0,
            2
        );
        assert_eq!(call(&["state-info", "--family", "werner"]).0, 2);
        assert_eq!(call(&["state-info", "--family", "mems"]).0, 2);
        assert_eq!(call(&["mems-curve", "--mu-min", "0.2"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn state_info_reports() {
        let (code, out, _) = call(&[
            "state-info",
            "--family",
            "mems",
            "--gamma",
            "0.8",
            "--phi",
            "pi/2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("concurrence: 0.8\n"), "{out}");
        assert!(out.contains("eof: 0.721928094887"), "{out}");

        let (code, out, _) = call(&["state-info", "--family", "rho-diag", "--a", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("purity: 1\n"));
        assert!(out.contains("eof: 0\n"));
    }

    #[test]
    fn mems_curve_rows() {
        let (code, out, _) = call(&[
            "mems-curve",
            "--mu-min",
            "5/9",
            "--mu-max",
            "1",
            "--mu-steps",
            "2",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "mu,gamma,concurrence,eof");
        assert!(lines[1].starts_with("0.555555555556,0.666666666667,0.666666666667,"));
        assert_eq!(lines[2], "1,1,1,1");
    }

    #[test]
    fn identity_sweep_is_zero() {
        let (code, out, _) = call(&[
            "sweep",
            "--theta-x",
            "0",
            "--theta-y",
            "0",
            "--theta-z",
            "0",
            "--family",
            "product",
            "--samples",
            "50",
            "--mu-steps",
            "4",
        ]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some(output::SWEEP_HEADER));
        for line in lines {
            assert_eq!(line.split(',').nth(1), Some("0"), "{line}");
        }
    }

    #[test]
    fn sweep_rejects_bad_gate_and_path() {
        let base = [
            "sweep",
            "--theta-x",
            "pi",
            "--theta-y",
            "0",
            "--theta-z",
            "0",
        ];
        assert_eq!(call(&base).0, 2);
        let (code, _, _) = call(&[
            "sweep",
            "--theta-x",
            "0",
            "--theta-y",
            "0",
            "--theta-z",
            "0",
            "--samples",
            "5",
            "--out",
            "/nonexistent-dir/x.csv",
        ]);
        assert_eq!(code, 3);
    }
}
