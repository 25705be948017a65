//! Command-line interface for quaternionic frame analysis.
//!
//! Reports go to stdout as deterministic `key = value` records; diagnostics
//! go to stderr. Exit codes: 0 success or true verdict, 1 false verdict,
//! 2 usage error, 3 numeric or validation error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qframes::frames::{is_dual_pair, random_frame, recover_gauge, QuadFrame};
use qframes::io;
use qframes::kernels::{kernel_equivalent, unitary_equivalent, EquivalenceWitness, FrameKernel};
use qframes::linalg::QMatrix;
use qframes::report::Report;
use qframes::verify::verify_suite;
use qframes::{Error, Tol};

#[derive(Parser)]
#[command(
    name = "qframes",
    version,
    about = "Rank-n continuous frames on right quaternionic Hilbert spaces"
)]
struct Cli {
    /// Override one tolerance, repeatable: --tol name=value
    #[arg(long = "tol", value_name = "NAME=VALUE", global = true)]
    tol: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frame bounds, width, tight/self-dual flags, and the operator S-spectrum
    Analyze { frame: PathBuf },
    /// Write the dual frame
    Dual {
        frame: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Write the canonical tight frame
    Tight {
        frame: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Apply an operator from a matrix file to every frame vector
    Transform {
        frame: PathBuf,
        #[arg(long = "op")]
        op: PathBuf,
        /// Require the operator to be unitary
        #[arg(long)]
        unitary: bool,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Apply a per-point unitary gauge from a gauge file
    Gauge {
        frame: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Compute the frame kernel and export its blocks
    Kernel {
        frame: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Decide frame equivalence with a witness
    CheckEquiv {
        frame_a: PathBuf,
        frame_b: PathBuf,
        #[arg(long)]
        mode: Mode,
    },
    /// S-spectrum of a matrix file
    Spectrum { matrix: PathBuf },
    /// Generate a deterministic random frame
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run the invariant battery against a frame file or a generated frame
    Verify {
        frame: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Kernel,
    Gauge,
    Unitary,
    Dual,
}

enum Failure {
    Numeric(Error),
    False(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match build_tol(&cli.tol) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, &tol) {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::SUCCESS
        }
        Err(Failure::False(report)) => {
            print!("{}", report.render());
            ExitCode::from(1)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn build_tol(overrides: &[String]) -> Result<Tol, String> {
    let profile = std::env::var("QFRAME_TOL_PROFILE").unwrap_or_else(|_| "default".into());
    let mut tol = Tol::from_profile(&profile).map_err(|e| e.to_string())?;
    for item in overrides {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected NAME=VALUE, got '{item}'"))?;
        let value: f64 = value
            .parse()
            .map_err(|_| format!("'{value}' is not a number"))?;
        tol.set(name.trim(), value).map_err(|e| e.to_string())?;
    }
    Ok(tol)
}

fn load_frame_tracked(report: &mut Report, name: &str, path: &Path) -> Result<QuadFrame, Error> {
    let bytes = fs::read(path)?;
    report.push_input(name, &bytes);
    io::load_frame(path)
}

fn push_frame_metrics(report: &mut Report, prefix: &str, frame: &QuadFrame) {
    let (lo, hi) = frame.bounds();
    report.push_int(format!("{prefix}.d"), frame.dim() as i64);
    report.push_int(format!("{prefix}.n"), frame.rank_n() as i64);
    report.push_int(format!("{prefix}.points"), frame.num_points() as i64);
    report.push_float(format!("{prefix}.m"), lo);
    report.push_float(format!("{prefix}.M"), hi);
    report.push_float(format!("{prefix}.width"), frame.width());
}

fn push_spectrum(report: &mut Report, prefix: &str, matrix: &QMatrix) -> Result<(), Error> {
    let spectrum = matrix.s_spectrum()?;
    report.push_int(format!("{prefix}.spheres"), spectrum.spheres().len() as i64);
    for (k, s) in spectrum.spheres().iter().enumerate() {
        report.push_floats(format!("{prefix}.sphere.{k}"), vec![s.a, s.b]);
    }
    report.push_bool(format!("{prefix}.real"), spectrum.is_real());
    report.push_float(format!("{prefix}.radius"), spectrum.radius());
    Ok(())
}

fn push_matrix(report: &mut Report, prefix: &str, m: &QMatrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let q = m.entry(i, j);
            report.push_floats(format!("{prefix}.{i}.{j}"), vec![q.x0, q.x1, q.x2, q.x3]);
        }
    }
}

fn push_witness(report: &mut Report, witness: &EquivalenceWitness) {
    push_matrix(report, "witness.t", &witness.transform);
    for (m, u) in witness.gauge.iter().enumerate() {
        push_matrix(report, &format!("witness.u.{m}"), u);
    }
}

fn saved(report: &mut Report, frame: &QuadFrame, path: &Path) -> Result<(), Error> {
    io::save_frame(frame, path)?;
    report.push_text("output", path.display().to_string());
    Ok(())
}

fn run(command: Command, tol: &Tol) -> Result<Report, Failure> {
    match command {
        Command::Analyze { frame } => {
            let mut report = Report::new("analyze");
            let f = load_frame_tracked(&mut report, "frame", &frame)?;
            report.push_tolerances(tol);
            push_frame_metrics(&mut report, "frame", &f);
            report.push_bool("frame.tight", f.is_tight(tol.tight));
            report.push_bool("frame.self_dual", f.is_self_dual(tol.tight));
            push_spectrum(&mut report, "spectrum", f.frame_operator())?;
            Ok(report)
        }
        Command::Dual { frame, out } => {
            let mut report = Report::new("dual");
            let f = load_frame_tracked(&mut report, "frame", &frame)?;
            let dual = f.dual()?;
            push_frame_metrics(&mut report, "frame", &dual);
            saved(&mut report, &dual, &out)?;
            Ok(report)
        }
        Command::Tight { frame, out } => {
            let mut report = Report::new("tight");
            let f = load_frame_tracked(&mut report, "frame", &frame)?;
            let tight = f.canonical_tight()?;
            push_frame_metrics(&mut report, "frame", &tight);
            report.push_bool("frame.tight", tight.is_tight(tol.tight));
            report.push_bool("frame.self_dual", tight.is_self_dual(tol.tight));
            saved(&mut report, &tight, &out)?;
            Ok(report)
        }
        Command::Transform {
            frame,
            op,
            unitary,
            out,
        } => {
            let mut report = Report::new("transform");
            let f = load_frame_tracked(&mut report, "frame", &frame)?;
            let bytes = fs::read(&op).map_err(Error::from)?;
            report.push_input("op", &bytes);
            let t = io::load_matrix(&op)?;
            let g = if unitary {
                f.unitary_transform(&t)?
            } else {
                f.transform(&t)?
            };
            push_frame_metrics(&mut report, "frame", &g);
            saved(&mut report, &g, &out)?;
            Ok(report)
        }
        Command::Gauge { frame, gauge, out } => {
            let mut report = Report::new("gauge");
            let f = load_frame_tracked(&mut report, "frame", &frame)?;
            let bytes = fs::read(&gauge).map_err(Error::from)?;
            report.push_input("gauge", &bytes);
            let gauges = io::load_gauge(&gauge)?;
            let g = f.gauge_transform(&gauges)?;
            push_frame_metrics(&mut report, "frame", &g);
            saved(&mut report, &g, &out)?;
            Ok(report)
        }
        Command::Kernel { frame, out } => {
            let mut report = Report::new("kernel");
            let f = load_frame_tracked(&mut report, "frame", &frame)?;
            let kernel = FrameKernel::compute(&f)?;
            report.push_int("kernel.n", kernel.n() as i64);
            report.push_int("kernel.points", kernel.num_points() as i64);
            report.push_float("kernel.reproducing_residual", kernel.reproducing_residual());
            io::save_kernel(&kernel, &out)?;
            report.push_text("output", out.display().to_string());
            Ok(report)
        }
        Command::CheckEquiv {
            frame_a,
            frame_b,
            mode,
        } => {
            let mut report = Report::new("check-equiv");
            let f = load_frame_tracked(&mut report, "frame_a", &frame_a)?;
            let g = load_frame_tracked(&mut report, "frame_b", &frame_b)?;
            report.push_tolerances(tol);
            report.push_text("mode", format!("{mode:?}").to_lowercase());
            let verdict = match mode {
                Mode::Kernel => match kernel_equivalent(&f, &g)? {
                    Some(witness) => {
                        push_witness(&mut report, &witness);
                        true
                    }
                    None => false,
                },
                Mode::Gauge => match recover_gauge(&f, &g) {
                    Ok(gauges) => {
                        for (m, u) in gauges.iter().enumerate() {
                            push_matrix(&mut report, &format!("witness.u.{m}"), u);
                        }
                        true
                    }
                    Err(Error::NotGaugeRelated(why)) => {
                        report.push_text("reason", why);
                        false
                    }
                    Err(e) => return Err(e.into()),
                },
                Mode::Unitary => match unitary_equivalent(&f, &g)? {
                    Some(u) => {
                        push_matrix(&mut report, "witness.u_global", &u);
                        true
                    }
                    None => false,
                },
                Mode::Dual => is_dual_pair(&f, &g, tol.op_eq)?,
            };
            report.push_bool("verdict", verdict);
            if verdict {
                Ok(report)
            } else {
                Err(Failure::False(report))
            }
        }
        Command::Spectrum { matrix } => {
            let mut report = Report::new("spectrum");
            let bytes = fs::read(&matrix).map_err(Error::from)?;
            report.push_input("matrix", &bytes);
            let m = io::load_matrix(&matrix)?;
            report.push_int("matrix.rows", m.rows() as i64);
            report.push_int("matrix.cols", m.cols() as i64);
            push_spectrum(&mut report, "spectrum", &m)?;
            report.push_float("matrix.op_norm", m.op_norm());
            Ok(report)
        }
        Command::Random {
            dim,
            rank,
            points,
            seed,
            out,
        } => {
            let mut report = Report::new("random");
            let f = random_frame(dim, rank, points, seed)?;
            report.push_int("seed", seed as i64);
            push_frame_metrics(&mut report, "frame", &f);
            saved(&mut report, &f, &out)?;
            Ok(report)
        }
        Command::Verify {
            frame,
            seed,
            dim,
            rank,
            points,
        } => {
            let mut pre = Report::new("verify");
            let f = match frame {
                Some(path) => load_frame_tracked(&mut pre, "frame", &path)?,
                None => {
                    let (d, n, m) = match (dim, rank, points) {
                        (Some(d), Some(n), Some(m)) => (d, n, m),
                        _ => {
                            return Err(Error::Validation(
                                "verify needs a frame file or --dim, --rank, and --points".into(),
                            )
                            .into());
                        }
                    };
                    random_frame(d, n, m, seed)?
                }
            };
            let (mut report, _checks, pass) = verify_suite(&f, seed, tol);
            for (key, value) in pre.entries().iter().skip(1) {
                report.push(key.clone(), value.clone());
            }
            if pass {
                Ok(report)
            } else {
                Err(Failure::False(report))
            }
        }
    }
}
