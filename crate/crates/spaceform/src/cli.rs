//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when at least one property
//! fails (or a projection is not unique), 2 for usage and input errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use spaceform_core::geometry::{distance, SpaceForm};
use spaceform_core::harness::{non_right_fraction, verify_vg, Dims, DEFAULT_N_PROBE};
use spaceform_core::projections::metrical_project;
use spaceform_core::tol::DEFAULT_TOL;

use crate::format::{
    parse_kind, write_report, DistanceInput, ErrorDto, FourPointInput, Header, ProjectInput,
    ProjectionDto, ReportLine, Seeds, MAX_N, REPORT_VERSION,
};
use crate::runner::{run_counterexample, run_verify, VerifyPlan};
use crate::{Error, Result};

/// Every check passed.
pub const EXIT_PASS: i32 = 0;
/// A property failed.
pub const EXIT_FAIL: i32 = 1;
/// Bad flags or input.
pub const EXIT_USAGE: i32 = 2;

/// Default non-right fraction the counterexample run must reach.
pub const NON_RIGHT_THRESHOLD: f64 = 0.99;

#[derive(Debug, Parser)]
#[command(
    name = "spaceform",
    version,
    about = "Space-form geometry kernel and verification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the three-perpendiculars suite and write a JSON-lines report.
    Verify(VerifyArgs),
    /// Metrical projection of a point onto a p-space ({"point", "pspace"}).
    Project(IoArgs),
    /// Distance between two points ({"x", "y"}).
    Distance(IoArgs),
    /// Spherical counterexample: the four triangles are not interchangeable.
    Counterexample(CounterexampleArgs),
    /// Four-point form on supplied points ({"x", "y", "z", "u"}).
    Gupta(GuptaArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Model: S, E or H.
    #[arg(long, value_parser = model_arg)]
    model: SpaceForm,
    /// Model dimension.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Dimension of Π; with --q, otherwise every admissible pair is cycled.
    #[arg(long, requires = "q")]
    p: Option<usize>,
    /// Dimension of Λ.
    #[arg(long, requires = "p")]
    q: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Probe points per trial.
    #[arg(long, default_value_t = DEFAULT_N_PROBE)]
    n_probe: usize,
    /// Report file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    parallelism: Option<usize>,
    /// Negative control: displace each foot this far along Λ.
    #[arg(long)]
    perturb: Option<f64>,
    /// Write per-trial wall time into the report (breaks byte equality).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct IoArgs {
    /// Input JSON; stdin when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CounterexampleArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    parallelism: Option<usize>,
    /// Required fraction of trials whose triangle yzu has no angle within
    /// 0.01 rad of a right angle.
    #[arg(long, default_value_t = NON_RIGHT_THRESHOLD)]
    min_non_right: f64,
}

#[derive(Debug, Args)]
struct GuptaArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

fn model_arg(s: &str) -> std::result::Result<SpaceForm, String> {
    parse_kind(s).map_err(|e| e.to_string())
}

/// Runs the CLI against the process's stdio and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        args,
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}

/// Runs the CLI with explicit streams.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Verify(a) => verify(a, stdout, stderr),
        Command::Project(a) => project(a, stdin, stdout),
        Command::Distance(a) => distance_cmd(a, stdin, stdout),
        Command::Counterexample(a) => counterexample(a, stdout, stderr),
        Command::Gupta(a) => gupta(a, stdin, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "spaceform: {e}");
            EXIT_USAGE
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!("--tol must be positive, got {tol}")))
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::Usage("--trials must be at least 1".into()));
    }
    Ok(())
}

fn threads(parallelism: Option<usize>) -> Result<usize> {
    match parallelism {
        Some(0) => Err(Error::Usage("--parallelism must be at least 1".into())),
        Some(k) => Ok(k),
        None => Ok(std::thread::available_parallelism().map_or(1, |k| k.get())),
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            File::open(p)?.read_to_string(&mut text)?;
        }
        None => {
            stdin.read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

/// Writes to `path`, or to `stdout` when no path is given.
fn emit(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            body(stdout)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    check_tol(a.tol)?;
    check_trials(a.trials)?;
    let parallelism = threads(a.parallelism)?;
    if a.n > MAX_N {
        return Err(Error::Usage(format!("--n must be at most {MAX_N}")));
    }
    if let Some(d) = a.perturb {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::Usage(format!("--perturb must be positive, got {d}")));
        }
    }
    let dims = match (a.p, a.q) {
        (Some(p), Some(q)) => vec![Dims::new(a.n, p, q).map_err(|_| {
            Error::Usage(format!(
                "need 0 < q < p < n with n >= 3, got n={} p={p} q={q}",
                a.n
            ))
        })?],
        _ => {
            let all = Dims::all_for(a.n);
            if all.is_empty() {
                return Err(Error::Usage(format!(
                    "no admissible (p, q) for n = {}",
                    a.n
                )));
            }
            all
        }
    };
    let plan = VerifyPlan {
        kind: a.model,
        dims,
        seed: a.seed,
        trials: a.trials,
        tol: a.tol,
        n_probe: a.n_probe,
        perturb: a.perturb,
        timing: a.timing,
    };
    let start = Instant::now();
    let reports = match run_verify(&plan, parallelism) {
        Ok(r) => r,
        Err(Error::Geometry(e)) => {
            writeln!(stderr, "spaceform: trial failed to run: {e}")?;
            return Ok(EXIT_FAIL);
        }
        Err(e) => return Err(e),
    };
    let header = Header {
        version: REPORT_VERSION,
        model: a.model.tag().to_string(),
        n: a.n,
        p: a.p,
        q: a.q,
        seeds: Seeds {
            base: a.seed,
            count: a.trials,
        },
        tol: a.tol,
    };
    emit(a.output.as_deref(), stdout, |w| {
        write_report(w, &header, &reports, a.timing)
    })?;

    let passed = reports.iter().filter(|r| r.pass).count();
    let worst = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
    writeln!(
        stderr,
        "verify {}: {passed}/{} passed, max residual {worst:e}",
        a.model.tag(),
        reports.len()
    )?;
    if a.timing {
        writeln!(stderr, "wall time {:.3} s", start.elapsed().as_secs_f64())?;
    }
    Ok(if passed == reports.len() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn project(a: IoArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32> {
    let input: ProjectInput = serde_json::from_str(&read_input(a.input.as_deref(), stdin)?)?;
    let x = input.point.to_point()?;
    let phi = input.pspace.to_pspace()?;
    match metrical_project(&phi, &x) {
        Ok(r) => {
            emit(a.output.as_deref(), stdout, |w| {
                json_line(w, &ProjectionDto::from(&r))
            })?;
            Ok(EXIT_PASS)
        }
        Err(e @ spaceform_core::Error::NonUniqueProjection) => {
            emit(a.output.as_deref(), stdout, |w| {
                json_line(w, &ErrorDto::from(&e))
            })?;
            Ok(EXIT_FAIL)
        }
        Err(e) => Err(e.into()),
    }
}

fn distance_cmd(a: IoArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32> {
    let input: DistanceInput = serde_json::from_str(&read_input(a.input.as_deref(), stdin)?)?;
    let d = distance(&input.x.to_point()?, &input.y.to_point()?)?;
    emit(a.output.as_deref(), stdout, |w| {
        writeln!(w, "{d:?}")?;
        Ok(())
    })?;
    Ok(EXIT_PASS)
}

fn counterexample(
    a: CounterexampleArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    check_trials(a.trials)?;
    if !(0.0..=1.0).contains(&a.min_non_right) {
        return Err(Error::Usage(format!(
            "--min-non-right must lie in [0, 1], got {}",
            a.min_non_right
        )));
    }
    let reports = run_counterexample(a.trials, a.seed, threads(a.parallelism)?)?;
    let header = Header {
        version: REPORT_VERSION,
        model: SpaceForm::Spherical.tag().to_string(),
        n: 3,
        p: Some(2),
        q: None,
        seeds: Seeds {
            base: a.seed,
            count: a.trials,
        },
        tol: reports.first().map_or(DEFAULT_TOL, |r| r.tol),
    };
    emit(a.output.as_deref(), stdout, |w| {
        write_report(w, &header, &reports, false)
    })?;
    let hypotheses_hold = reports.iter().all(|r| r.pass);
    let fraction = non_right_fraction(&reports);
    writeln!(
        stderr,
        "counterexample: hypotheses {} in all trials, yzu non-right in {:.2}% (required {:.2}%)",
        if hypotheses_hold {
            "hold"
        } else {
            "do NOT hold"
        },
        100.0 * fraction,
        100.0 * a.min_non_right
    )?;
    Ok(if hypotheses_hold && fraction >= a.min_non_right {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn gupta(a: GuptaArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32> {
    check_tol(a.tol)?;
    let input: FourPointInput = serde_json::from_str(&read_input(a.io.input.as_deref(), stdin)?)?;
    let [x, y, z, u] = [&input.x, &input.y, &input.z, &input.u].map(|p| p.to_point());
    let (x, y, z, u) = (x?, y?, z?, u?);
    match verify_vg(x.model(), &x, &y, &z, &u, a.tol) {
        Ok(r) => {
            emit(a.io.output.as_deref(), stdout, |w| {
                json_line(w, &ReportLine::new(&r, false))
            })?;
            Ok(if r.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Err(e @ spaceform_core::Error::HypothesisNotMet { .. }) => {
            emit(a.io.output.as_deref(), stdout, |w| {
                json_line(w, &ErrorDto::from(&e))
            })?;
            Ok(EXIT_FAIL)
        }
        Err(e) => Err(e.into()),
    }
}
