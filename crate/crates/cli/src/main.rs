use std::fs::File;
use std::io::{self, LineWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use mpqenum_cli::{
    canonize_cmd, children_cmd, enumerate_cmd, input_lines, interval_edges_cmd, isomorphic_cmd,
    parent_cmd, summary, CliError, EnumerateConfig, Format,
};

/// Enumerates non-isomorphic interval graphs and works with single graphs
/// given as string representations such as `1,2,1,3,2,3`.
#[derive(Parser)]
#[command(name = "mpqenum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Worker threads; enables parallel traversal with unordered output.
    #[arg(long, env = "MPQENUM_JOBS")]
    jobs: Option<usize>,
    /// Force the deterministic single-threaded traversal.
    #[arg(long)]
    sequential: bool,
    /// Report progress on standard error every this many seconds.
    #[arg(long, value_name = "SECS")]
    progress: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print every interval graph on n vertices, one per line.
    Enumerate {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write graphs to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count interval graphs on n vertices.
    Count {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the canonical string (reads lines from stdin if no argument).
    Canonize { graph: Option<String> },
    /// Print a string representation of the parent graph.
    Parent { graph: Option<String> },
    /// Print the canonical strings of all children.
    Children {
        graph: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List interval edges as `x,y case`.
    IntervalEdges { graph: Option<String> },
    /// Print `yes` if the two strings represent isomorphic graphs.
    Isomorphic { a: String, b: String },
}

impl RunArgs {
    fn config(&self, format: Format) -> Result<EnumerateConfig, CliError> {
        let progress = match self.progress {
            None => None,
            Some(s) if s > 0.0 && s.is_finite() => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(CliError::Input(format!("invalid --progress {s}"))),
        };
        let jobs = if self.sequential { None } else { self.jobs.filter(|&j| j != 1) };
        Ok(EnumerateConfig { n: self.n, format, jobs, progress })
    }
}

fn per_line(
    graph: Option<String>,
    out: &mut dyn Write,
    mut f: impl FnMut(&str, &mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    for line in input_lines(graph, io::stdin().lock())? {
        f(&line, out)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    // Not locked up front: parallel enumeration writes from worker threads.
    let mut out = LineWriter::new(io::stdout());
    match cli.command {
        Command::Enumerate { run, format, out: path } => {
            let config = run.config(format)?;
            let stats = match path {
                Some(p) => {
                    let mut file = LineWriter::new(File::create(p)?);
                    enumerate_cmd(&config, Some(&mut file))?
                }
                None => enumerate_cmd(&config, Some(&mut out))?,
            };
            eprintln!("{}", summary(&stats));
        }
        Command::Count { run } => {
            let stats = enumerate_cmd(&run.config(Format::String)?, None)?;
            writeln!(out, "{}", stats.count)?;
            eprintln!("{}", summary(&stats));
        }
        Command::Canonize { graph } => per_line(graph, &mut out, canonize_cmd)?,
        Command::Parent { graph } => per_line(graph, &mut out, parent_cmd)?,
        Command::Children { graph, format } => {
            per_line(graph, &mut out, |l, o| children_cmd(l, format, o))?
        }
        Command::IntervalEdges { graph } => per_line(graph, &mut out, interval_edges_cmd)?,
        Command::Isomorphic { a, b } => isomorphic_cmd(&a, &b, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mpqenum: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
