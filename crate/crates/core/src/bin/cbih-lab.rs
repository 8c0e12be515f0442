use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};

use cbih_lab::config::Settings;
use cbih_lab::ode::integrate;
use cbih_lab::sphere::{scan_grid, solve_with, IsoparametricFamily, SolveOptions, SCAN_SHRINK};
use cbih_lab::tables::table;
use cbih_lab::verify::{run_suite, VerifyOptions};
use cbih_lab::{Error, Result};

#[derive(Parser)]
#[command(name = "cbih-lab", version, about = "Checks for c-biharmonic hypersurfaces")]
struct Cli {
    /// key = value file overriding default tolerances and grid sizes
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct FamilyArgs {
    /// Number of distinct principal curvatures: 1, 2, 3, 4 or 6
    #[arg(long)]
    degree: u32,
    #[arg(long)]
    m1: u32,
    /// Required for degrees 2 and 4; defaults to m1 for degrees 3 and 6
    #[arg(long)]
    m2: Option<u32>,
}

impl FamilyArgs {
    fn family(&self) -> Result<IsoparametricFamily> {
        let m2 = match (self.degree, self.m2) {
            (_, Some(m2)) => m2,
            (1, None) => 0,
            (3 | 6, None) => self.m1,
            (d, None) => return Err(Error::Domain(format!("degree {d} needs --m2"))),
        };
        IsoparametricFamily::new(self.degree, self.m1, m2)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Residual on a uniform grid of the open parameter interval, as CSV
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All c-biharmonic parameters of a family, as JSON
    Solve {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exit 1 if any check fails
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include a Unix timestamp in the report
        #[arg(long)]
        stamp: bool,
        /// Corrupt the measured value of this check (fault injection)
        #[arg(long = "corrupt", value_name = "CHECK_ID")]
        corrupt: Vec<String>,
    },
    /// Reproduce a classification table: thm2, thm3, thm4, thm5-scal
    Table {
        theorem: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the rotational profile ODE, as CSV
    Ode {
        #[arg(long = "C", allow_negative_numbers = true)]
        c: f64,
        #[arg(long)]
        s_max: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Pass,
    ChecksFailed(Vec<String>),
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: serde::Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn settings(path: Option<&Path>) -> Result<Settings> {
    path.map_or_else(|| Ok(Settings::default()), Settings::from_file)
}

fn run(cli: Cli) -> Result<Outcome> {
    let cfg = settings(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Scan { family, samples, out } => {
            let fam = family.family()?;
            let mut w = sink(&out)?;
            writeln!(w, "s,residual")?;
            for s in scan_grid(&fam, samples.unwrap_or(cfg.scan_samples), SCAN_SHRINK) {
                writeln!(w, "{:.15e},{:.15e}", s, fam.residual(s)?)?;
            }
            w.flush()?;
        }
        Cmd::Solve { family, tol, out } => {
            let fam = family.family()?;
            let opts = SolveOptions {
                samples: cfg.solve_samples,
                tol: tol.unwrap_or(cfg.tol),
                ..SolveOptions::default()
            };
            write_json(&out, &solve_with(&fam, opts)?)?;
        }
        Cmd::Verify {
            suite,
            out,
            stamp,
            corrupt,
        } => {
            let timestamp = stamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
            let report = run_suite(&suite, &VerifyOptions { corrupt, timestamp })?;
            write_json(&out, &report)?;
            if !report.passed() {
                return Ok(Outcome::ChecksFailed(report.failures().map(|c| c.id.clone()).collect()));
            }
        }
        Cmd::Table { theorem, format, out } => {
            let t = table(&theorem)?;
            match format {
                Format::Json => write_json(&out, &t)?,
                Format::Text => {
                    let mut w = sink(&out)?;
                    w.write_all(t.to_text().as_bytes())?;
                    w.flush()?;
                }
            }
        }
        Cmd::Ode { c, s_max, step, out } => {
            let traj = integrate(c, s_max.unwrap_or(cfg.ode_s_max), step.unwrap_or(cfg.ode_step))?;
            let mut w = sink(&out)?;
            traj.write_csv(&mut w)?;
            w.flush()?;
        }
    }
    Ok(Outcome::Pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed(ids)) => {
            eprintln!("error: CHECK_FAILED: {}", ids.join(","));
            ExitCode::from(1)
        }
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), e);
            ExitCode::from(if matches!(e, Error::Io(_)) { 3 } else { 2 })
        }
    }
}
