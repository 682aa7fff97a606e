//! `kreeb`: realization words, Kronrod–Reeb graphs and orbit verification
//! from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage,
//! input or parse errors. Parse errors are printed as `line:col: message`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kreeb_core::graph::build_kr_graph;
use kreeb_core::orbit::{
    compute_group, edge_orbits, orbit_count_recursive, rotation_generators, verify_main_theorem,
};
use kreeb_core::tree::parse_tree;
use kreeb_core::word::{normalize, parse_realization, render};
use kreeb_core::{DecompositionTree, GroupExpr, ParseError, TreeGenParams, VerificationReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "kreeb", version, about = "Wreath-product groups and Kronrod–Reeb orbit counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `key: value` lines.
    Text,
    /// One tab-separated line per report.
    Record,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical rendering of a realization word.
    Parse { word: String },
    /// Print the number of Z symbols of a realization word.
    Beta1 { word: String },
    /// Print the normalized realization word.
    Normalize { word: String },
    /// Print the raw and normalized stabilizer group of a tree.
    Group { treefile: PathBuf },
    /// Print the internal-edge orbits of a tree, by closure and by recursion.
    Orbits { treefile: PathBuf },
    /// Check that both orbit counts equal β₁; exit 1 if not.
    Verify {
        treefile: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify many random trees; exit 1 if any fails.
    Fuzz {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_children: usize,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_m: u64,
        #[arg(long, default_value_t = kreeb_core::tree::DEFAULT_MAX_EDGES)]
        max_edges: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the Kronrod–Reeb graph of a tree in DOT format.
    Dot { treefile: PathBuf },
}

/// A message for stderr together with the exit code it implies.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure { code: EXIT_INPUT, message }
    }

    fn parse(source: &str, err: &ParseError) -> Self {
        let (line, col) = err.line_col(source);
        Failure::input(format!("{line}:{col}: {}", err.kind))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(format!("i/o error: {e}"))
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn execute(cmd: Command, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    match cmd {
        Command::Parse { word } => {
            writeln!(out, "{}", render(&word_arg(&word)?))?;
        }
        Command::Beta1 { word } => {
            writeln!(out, "{}", word_arg(&word)?.beta1())?;
        }
        Command::Normalize { word } => {
            writeln!(out, "{}", render(&normalize(&word_arg(&word)?)))?;
        }
        Command::Group { treefile } => {
            let tree = tree_arg(&treefile, stdin)?;
            let group = compute_group(&tree);
            writeln!(out, "raw: {}", render(&group))?;
            writeln!(out, "normalized: {}", render(&normalize(&group)))?;
            writeln!(out, "beta1: {}", group.beta1())?;
        }
        Command::Orbits { treefile } => {
            let tree = tree_arg(&treefile, stdin)?;
            let graph = build_kr_graph(&tree);
            let orbits = edge_orbits(&graph, &rotation_generators(&graph));
            writeln!(out, "internal edges: {}", graph.internal_edges().len())?;
            for (i, orbit) in orbits.iter().enumerate() {
                let edges: Vec<String> = orbit.iter().map(|e| format!("e{}", e.0)).collect();
                writeln!(out, "orbit {i}: {}", edges.join(" "))?;
            }
            writeln!(out, "orbits (closure): {}", orbits.len())?;
            writeln!(out, "orbits (recursive): {}", orbit_count_recursive(&tree))?;
        }
        Command::Verify { treefile, format } => {
            let tree = tree_arg(&treefile, stdin)?;
            let report = timed_verify(&tree);
            write_report(out, &report, format)?;
            if !report.pass {
                writeln!(err, "verification failed; reproducer: {}", report.tree)?;
                return Ok(EXIT_FAIL);
            }
        }
        Command::Fuzz { n, depth, seed, max_children, max_m, max_edges, format } => {
            let params = TreeGenParams {
                max_depth: depth as usize,
                max_children,
                max_m: max_m as usize,
                max_edges: max_edges.max(1),
            };
            return fuzz(&params, n, seed, format, out, err);
        }
        Command::Dot { treefile } => {
            let tree = tree_arg(&treefile, stdin)?;
            out.write_all(build_kr_graph(&tree).to_dot().as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn word_arg(word: &str) -> Result<GroupExpr, Failure> {
    parse_realization(word).map_err(|e| Failure::parse(word, &e))
}

/// Reads a tree from `path`, or from standard input when `path` is `-`.
fn tree_arg(path: &PathBuf, stdin: &mut dyn BufRead) -> Result<DecompositionTree, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
    };
    parse_tree(&text).map_err(|e| Failure::parse(&text, &e))
}

fn timed_verify(tree: &DecompositionTree) -> VerificationReport {
    let start = Instant::now();
    let report = verify_main_theorem(tree);
    report.with_elapsed(start.elapsed())
}

fn write_report(out: &mut dyn Write, report: &VerificationReport, format: Format) -> io::Result<()> {
    match format {
        Format::Text => write!(out, "{report}"),
        Format::Record => writeln!(out, "{}", report.to_record()),
    }
}

/// Tree `i` of a campaign is drawn from ChaCha8 seeded with `seed` on
/// stream `i`, so any single tree can be regenerated on its own.
pub fn fuzz_tree(params: &TreeGenParams, seed: u64, index: u64) -> DecompositionTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    params.sample(&mut rng)
}

fn fuzz(
    params: &TreeGenParams,
    n: usize,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, Failure> {
    let started = Instant::now();
    let reports: Vec<VerificationReport> = (0..n as u64)
        .into_par_iter()
        .map(|i| timed_verify(&fuzz_tree(params, seed, i)))
        .collect();
    let passed = reports.iter().filter(|r| r.pass).count();
    if format == Format::Record {
        for r in &reports {
            writeln!(out, "{}", r.to_record())?;
        }
    }
    for (i, r) in reports.iter().enumerate().filter(|(_, r)| !r.pass) {
        writeln!(err, "FAIL #{i} (seed {seed}): {}", r.tree)?;
        write!(err, "{r}")?;
    }
    let summary = format!("{passed}/{n} pass");
    match format {
        Format::Text => {
            writeln!(out, "{summary}")?;
            writeln!(err, "elapsed: {:?}", started.elapsed())?;
        }
        Format::Record => writeln!(err, "{summary}")?,
    }
    Ok(if passed == n { EXIT_OK } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (u8, String, String) {
        let mut stdin = io::Cursor::new(input.as_bytes().to_vec());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["kreeb"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut stdin, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn word_commands() {
        assert_eq!(run_str(&["beta1", "(1 wr_3 Z) x Z"], ""), (0, "2\n".into(), String::new()));
        assert_eq!(run_str(&["parse", "Z  wr_2 Z"], "").1, "Z wr_2 Z\n");
        assert_eq!(run_str(&["normalize", "(1 wr_3 Z) x Z"], "").1, "Z x Z\n");
    }

    #[test]
    fn word_errors_are_positioned() {
        let (code, out, err) = run_str(&["beta1", "Z wr_0 Z"], "");
        assert_eq!((code, out.as_str()), (2, ""));
        assert_eq!(err, "1:6: wreath arity must be ≥ 1\n");
    }

    #[test]
    fn tree_from_stdin() {
        let (code, out, _) = run_str(&["verify", "-"], "(disk (E))");
        assert_eq!(code, 0);
        assert!(out.contains("pass: true"), "{out}");
        let (code, _, err) = run_str(&["verify", "-"], "(disk\n (B))");
        assert_eq!(code, 2);
        assert_eq!(err, "2:3: B outside cylinder\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&[], "").0, 2);
        assert_eq!(run_str(&["fuzz", "--n", "3"], "").0, 2);
        assert_eq!(run_str(&["fuzz", "--n", "3", "--depth", "0", "--seed", "1"], "").0, 2);
        assert_eq!(run_str(&["--help"], "").0, 0);
    }

    #[test]
    fn fuzz_trees_are_reproducible_by_index() {
        let p = TreeGenParams::new(5, 3, 4);
        assert_eq!(fuzz_tree(&p, 7, 12), fuzz_tree(&p, 7, 12));
        assert_ne!(fuzz_tree(&p, 7, 12).to_string(), String::new());
    }
}
