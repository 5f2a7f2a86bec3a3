//! Command-line front end. Exit codes: 0 success, 2 input error, 3 I/O
//! error, 4 verification failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use hypernoise_core::channels::apply_channel;
use hypernoise_core::embed::{bit_flip_kraus, embed_single_qubit_kraus, QubitSite};
use hypernoise_core::state::fidelity_pure;
use hypernoise_core::verify::{default_hypergraphs, run_verification, GridSpec, NamedHypergraph};
use hypernoise_core::{ChannelFamily, Hypergraph, StateVector};

use crate::format::{fmt_g12, fmt_metric, read_hypergraph, write_density_csv, write_report_csv, write_state_csv, FormatError};
use crate::sweep::{run_sweep, write_sweep_csv, Metric, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hypernoise", version, about = "Qudit hypergraph states under noisy channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print n, N, the sign vector and the l1-coherence of a hypergraph state.
    State {
        #[arg(long)]
        hypergraph: PathBuf,
        /// Also write the state vector as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one channel parameter and emit closed-form and oracle values as CSV.
    Sweep {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long, value_parser = parse_channel)]
        channel: ChannelFamily,
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// NAME=VALUE for a parameter that is not swept. Repeatable.
        #[arg(long, value_parser = parse_fixed)]
        fixed: Vec<(String, f64)>,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Metric::Fidelity, Metric::Coherence])]
        metrics: Vec<Metric>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare every closed form against the dense oracle and write the report CSV.
    Verify {
        /// Replaces the default hypergraph set. Repeatable.
        #[arg(long)]
        hypergraph: Vec<PathBuf>,
        /// Restricts the grid to these channels. Repeatable.
        #[arg(long, value_parser = parse_channel)]
        channel: Vec<ChannelFamily>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a single-qubit bit flip at one site and print diagnostics.
    Embed {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        site: usize,
        #[arg(long)]
        p: f64,
        /// Also write the evolved density matrix as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_channel(s: &str) -> Result<ChannelFamily, String> {
    s.parse().map_err(|_| {
        let tags: Vec<&str> = ChannelFamily::ALL.iter().map(|f| f.tag()).collect();
        format!("expected one of {}", tags.join(", "))
    })
}

fn parse_fixed(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let value: f64 = value.trim().parse().map_err(|_| format!("{value:?} is not a number"))?;
    Ok((name.trim().to_owned(), value))
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Io(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Self::Input(_) => EXIT_INPUT,
            Self::Io(_) => EXIT_IO,
            Self::Verify(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Input(m) | Self::Io(m) | Self::Verify(m) => m,
        }
    }

    fn from_format(context: &Path, e: FormatError) -> Self {
        match e {
            FormatError::Io(e) => Self::Io(format!("{}: {e}", context.display())),
            FormatError::Csv(e) if e.is_io_error() => Self::Io(format!("{}: {e}", context.display())),
            other => Self::Input(format!("{}: {other}", context.display())),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::State { hypergraph, out } => cmd_state(&hypergraph, out.as_deref(), stdout),
        Command::Sweep {
            hypergraph,
            channel,
            param,
            from,
            to,
            steps,
            fixed,
            metrics,
            out,
        } => SweepSpec::new(channel, &param, from, to, steps, &fixed, &metrics)
            .map_err(|e| Failure::Input(e.to_string()))
            .and_then(|spec| cmd_sweep(&spec, &hypergraph, out.as_deref(), stdout)),
        Command::Verify { hypergraph, channel, out } => cmd_verify(&hypergraph, &channel, out.as_deref(), stdout, stderr),
        Command::Embed { hypergraph, site, p, out } => cmd_embed(&hypergraph, site, p, out.as_deref(), stdout),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message());
            failure.code()
        }
    }
}

fn load(path: &Path) -> Result<Hypergraph, Failure> {
    read_hypergraph(path).map_err(|e| Failure::from_format(path, e))
}

/// Sends `write` either to the file at `out` or to `stdout`.
fn emit(
    out: Option<&Path>,
    stdout: &mut dyn Write,
    write: impl FnOnce(&mut dyn Write) -> Result<(), FormatError>,
) -> Outcome {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(|e| Failure::from_format(path, e))?;
            w.flush().map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => write(stdout).map_err(|e| Failure::from_format(Path::new("<stdout>"), e)),
    }
}

fn stdout_io(e: io::Error) -> Failure {
    Failure::Io(format!("<stdout>: {e}"))
}

fn cmd_state(path: &Path, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let h = load(path)?;
    let psi = StateVector::hypergraph_state(&h);
    let signs: String = h.sign_vector().iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
    let coherence = psi.density().l1_coherence();
    (|| {
        writeln!(stdout, "n = {}", h.n())?;
        writeln!(stdout, "N = {}", h.dim())?;
        writeln!(stdout, "signs = {signs}")?;
        writeln!(stdout, "l1_coherence = {}", fmt_metric(coherence))
    })()
    .map_err(stdout_io)?;
    if let Some(path) = out {
        emit(Some(path), stdout, |w| write_state_csv(&psi, w))?;
    }
    Ok(())
}

fn cmd_sweep(spec: &SweepSpec, path: &Path, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let h = load(path)?;
    let rows = run_sweep(spec, &h).map_err(|e| Failure::Input(e.to_string()))?;
    emit(out, stdout, |w| write_sweep_csv(spec.metrics(), &rows, w))
}

fn cmd_verify(
    paths: &[PathBuf],
    channels: &[ChannelFamily],
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Outcome {
    let hypergraphs = if paths.is_empty() {
        default_hypergraphs()
    } else {
        paths
            .iter()
            .map(|p| {
                let id = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
                load(p).map(|h| NamedHypergraph::new(id, h))
            })
            .collect::<Result<_, _>>()?
    };
    let grid = if channels.is_empty() {
        GridSpec::default()
    } else {
        let mut families = Vec::new();
        for &c in channels {
            if !families.contains(&c) {
                families.push(c);
            }
        }
        GridSpec::only(&families)
    };
    let report = run_verification(&hypergraphs, &grid).map_err(|e| Failure::Input(e.to_string()))?;
    emit(out, stdout, |w| write_report_csv(&report, w))?;

    let failed: Vec<_> = report.failures().collect();
    let _ = writeln!(stderr, "{} rows, {} failed", report.rows.len(), failed.len());
    if failed.is_empty() {
        return Ok(());
    }
    for row in &failed {
        let _ = writeln!(
            stderr,
            "  {} {} {}: fidelity delta {}, coherence delta {}",
            row.channel,
            row.hypergraph,
            row.param_string(),
            fmt_g12(row.fidelity_delta),
            fmt_g12(row.coherence_delta)
        );
    }
    Err(Failure::Verify(format!("{} of {} rows failed", failed.len(), report.rows.len())))
}

fn cmd_embed(path: &Path, site: usize, p: f64, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let h = load(path)?;
    let input = |e: hypernoise_core::Error| Failure::Input(e.to_string());
    let site = QubitSite::new(site, h.n()).map_err(input)?;
    let kraus = embed_single_qubit_kraus(&bit_flip_kraus(p).map_err(input)?, site, h.n()).map_err(input)?;
    let g = StateVector::hypergraph_state(&h);
    let rho = apply_channel(&g.density(), &kraus).map_err(input)?;
    let fidelity = fidelity_pure(&g, &rho).map_err(input)?;
    (|| {
        writeln!(stdout, "site = {}", site.get())?;
        writeln!(stdout, "p = {}", fmt_g12(p))?;
        writeln!(stdout, "trace = {}", fmt_metric(rho.trace().re))?;
        writeln!(stdout, "l1_coherence = {}", fmt_metric(rho.l1_coherence()))?;
        writeln!(stdout, "fidelity = {}", fmt_metric(fidelity))
    })()
    .map_err(stdout_io)?;
    if let Some(path) = out {
        emit(Some(path), stdout, |w| write_density_csv(&rho, w))?;
    }
    Ok(())
}
