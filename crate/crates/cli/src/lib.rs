//! Output formats and command implementations behind the `mpqenum` binary.

pub mod graph6;

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use mpqenum_core::{
    children, enumerate, enumerate_parallel, isomorphic, list_interval_edges, parent_string,
    CanonicalString, Emission, EnumerateOptions, FamilyError, Graph, Stats, StringRep,
    TreeTables,
};

/// Failure of a command, mapped to the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit code 2.
    Input(String),
    /// Reading or writing failed; exit code 1.
    Io(io::Error),
    /// `parent` was asked for a complete graph; exit code 3.
    Complete,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 1,
            CliError::Complete => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Complete => f.write_str(&FamilyError::IsComplete.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    /// Canonical string, e.g. `1,2,2,1`.
    #[default]
    String,
    Graph6,
    /// `v:neighbours` for every vertex, space separated, e.g. `1:2 2:1`.
    Adjlist,
}

pub fn format_graph(c: &CanonicalString, format: Format) -> String {
    match format {
        Format::String => c.to_string(),
        Format::Graph6 => {
            let g = c.as_rep().graph();
            graph6::encode(g.n(), |u, v| g.has_edge(u as u32 + 1, v as u32 + 1))
        }
        Format::Adjlist => adjlist(&c.as_rep().graph()),
    }
}

fn adjlist(g: &Graph) -> String {
    let mut out = String::new();
    for v in 1..=g.n() as u32 {
        if v > 1 {
            out.push(' ');
        }
        let nb: Vec<String> = g.neighbors(v).map(|u| u.to_string()).collect();
        let _ = write!(out, "{v}:{}", nb.join(","));
    }
    out
}

pub fn parse_string(line: &str) -> Result<StringRep, CliError> {
    line.parse()
        .map_err(|e| CliError::Input(format!("invalid string representation {:?}: {e}", line.trim())))
}

/// The argument if given, otherwise every non-empty line of `input`.
pub fn input_lines(arg: Option<String>, input: impl BufRead) -> Result<Vec<String>, CliError> {
    match arg {
        Some(a) => Ok(vec![a]),
        None => {
            let mut out = Vec::new();
            for line in input.lines() {
                let line = line?;
                if !line.trim().is_empty() {
                    out.push(line);
                }
            }
            Ok(out)
        }
    }
}

pub fn canonize_cmd(line: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let c = CanonicalString::of(&parse_string(line)?);
    writeln!(out, "{c}")?;
    Ok(())
}

/// Prints a string representation of the parent graph, computed from the
/// canonical form of the input.
pub fn parent_cmd(line: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let c = CanonicalString::of(&parse_string(line)?);
    let p = parent_string(&c).map_err(|_| CliError::Complete)?;
    writeln!(out, "{p}")?;
    Ok(())
}

pub fn children_cmd(line: &str, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let c = CanonicalString::of(&parse_string(line)?);
    if c.as_rep().graph().edge_count() == 0 {
        return Ok(());
    }
    for kid in children(&c, true) {
        writeln!(out, "{}", format_graph(&kid, format))?;
    }
    Ok(())
}

/// Lists `x,y case` for every interval edge, in the labels of the input.
pub fn interval_edges_cmd(line: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let s = parse_string(line)?;
    let t = mpqenum_core::build_mpq(&s);
    let mut edges = list_interval_edges(&t, &TreeTables::new(&t));
    edges.sort_by_key(|e| e.key());
    for e in edges {
        let (x, y) = e.key();
        writeln!(out, "{x},{y} {:?}", e.case)?;
    }
    Ok(())
}

pub fn isomorphic_cmd(a: &str, b: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let same = isomorphic(&parse_string(a)?, &parse_string(b)?);
    writeln!(out, "{}", if same { "yes" } else { "no" })?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct EnumerateConfig {
    pub n: usize,
    pub format: Format,
    /// `Some` runs in parallel with that many workers (0: one per core).
    pub jobs: Option<usize>,
    pub progress: Option<Duration>,
}

struct Progress {
    every: Option<Duration>,
    start: Instant,
    next: Duration,
    count: u64,
}

impl Progress {
    fn new(every: Option<Duration>) -> Self {
        Progress { every, start: Instant::now(), next: every.unwrap_or_default(), count: 0 }
    }

    fn tick(&mut self) {
        self.count += 1;
        let Some(every) = self.every else { return };
        let elapsed = self.start.elapsed();
        if elapsed >= self.next {
            eprintln!("progress: count={} elapsed_s={:.1}", self.count, elapsed.as_secs_f64());
            self.next = elapsed + every;
        }
    }
}

/// Streams every graph on `n` vertices to `out`, one per line. With `out`
/// set to `None` the graphs are only counted.
pub fn enumerate_cmd(config: &EnumerateConfig, out: Option<&mut (dyn Write + Send)>) -> Result<Stats, CliError> {
    if config.n == 0 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    let options = EnumerateOptions { prune: true, jobs: config.jobs.unwrap_or(1) };
    let state = Mutex::new((out, None::<io::Error>, Progress::new(config.progress)));
    let sink = |e: &Emission| {
        let mut guard = state.lock().unwrap();
        let (out, err, progress) = &mut *guard;
        progress.tick();
        if err.is_some() {
            return;
        }
        if let Some(out) = out {
            if let Err(e) = writeln!(out, "{}", format_graph(e.graph, config.format)) {
                *err = Some(e);
            }
        }
    };
    let stats = match config.jobs {
        Some(_) => enumerate_parallel(config.n, &options, sink),
        None => enumerate(config.n, &options, sink),
    };
    let (out, err, _) = state.into_inner().unwrap();
    if let Some(e) = err {
        return Err(e.into());
    }
    if let Some(out) = out {
        out.flush()?;
    }
    Ok(stats)
}

pub fn summary(stats: &Stats) -> String {
    format!(
        "n={} count={} max_delay_ms={:.3} median_delay_ms={:.3} wall_time_s={:.3}",
        stats.n,
        stats.count,
        stats.max_delay.as_secs_f64() * 1e3,
        stats.median_delay.as_secs_f64() * 1e3,
        stats.wall_time.as_secs_f64()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: impl FnOnce(&mut Vec<u8>) -> Result<(), CliError>) -> String {
        let mut out = Vec::new();
        f(&mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn formats() {
        let c: CanonicalString = "1,2,1,3,3,2".parse().unwrap();
        assert_eq!(format_graph(&c, Format::String), c.to_string());
        assert_eq!(format_graph(&"1,2,2,1".parse().unwrap(), Format::Adjlist), "1:2 2:1");
        assert_eq!(format_graph(&"1,1,2,2".parse().unwrap(), Format::Adjlist), "1: 2:");
        let g6 = format_graph(&c, Format::Graph6);
        assert_eq!(graph6::decode(&g6).unwrap().1.len(), 2);
    }

    #[test]
    fn single_graph_commands() {
        assert_eq!(run(|o| canonize_cmd("2,2,1,1", o)), "1,1,2,2\n");
        assert_eq!(run(|o| children_cmd("1,2,2,1", Format::String, o)), "1,1,2,2\n");
        assert_eq!(run(|o| isomorphic_cmd("1,2,1,2", "2,1,1,2", o)), "yes\n");
        assert_eq!(run(|o| interval_edges_cmd("1,2,2,1", o)), "1,2 PLeaf\n");
        assert!(matches!(parent_cmd("1,2,2,1", &mut Vec::new()), Err(CliError::Complete)));
        assert!(matches!(canonize_cmd("1,2,2", &mut Vec::new()), Err(CliError::Input(_))));
    }

    #[test]
    fn enumerate_streams_lines() {
        let mut out: Vec<u8> = Vec::new();
        let config = EnumerateConfig { n: 3, format: Format::String, jobs: None, progress: None };
        let stats = enumerate_cmd(&config, Some(&mut out)).unwrap();
        assert_eq!(stats.count, 4);
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), 4);
    }
}
