//! Command-line front end. [`run`] never panics on bad input and never
//! touches the process streams; the binary forwards its [`Output`].
//!
//! Exit codes: 0 on success, 1 on domain failures (cycles, out-of-range
//! requests, failed verification or census counterexamples), 2 on usage,
//! IO and syntax errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use posetdim_core::census::{census_check, parse_checks};
use posetdim_core::constructions::{antichain, chain, cone, hypercube, suspension};
use posetdim_core::dimension::{
    canonical_embedding, contractible_embedding, lower_bound, two_dimension, two_dimension_with,
    SolverLimits, DEFAULT_SOLVER_LIMIT, MASK_LIMIT,
};
use posetdim_core::family::realize_certified;
use posetdim_core::homotopy::{beat_points, core};
use posetdim_core::Poset;
use thiserror::Error;

use crate::dot::to_dot;
use crate::format::{
    parse_embedding, parse_poset, write_certificate, write_embedding, write_poset, write_report,
    write_trace, FormatError,
};

#[derive(Parser, Debug)]
#[command(name = "posetdim", version, about = "Finite posets: cores, cube embeddings and exact 2-dimension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size, height, dimension bounds, beat points and contractibility.
    Info { file: PathBuf },
    /// Exact 2-dimension with a certificate; bounds only above --max-size.
    Dim {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SOLVER_LIMIT)]
        max_size: usize,
    },
    /// Print an embedding into a Boolean lattice.
    Embed {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Check an embedding (or certificate) file against a poset.
    Verify { file: PathBuf, embedding: PathBuf },
    /// Beat-point removals down to the core.
    Core { file: PathBuf },
    /// Build a poset.
    Make {
        /// Write the poset here instead of stdout.
        #[arg(short = 'o', long = "output", global = true)]
        output: Option<PathBuf>,
        #[command(subcommand)]
        what: Make,
    },
    /// Run property checks over every poset of one size.
    Census {
        #[arg(long)]
        size: usize,
        /// Enumerate up to isomorphism instead of labeled posets.
        #[arg(long)]
        unlabeled: bool,
        /// Comma-separated check names.
        #[arg(long)]
        check: String,
    },
    /// Graphviz source for the Hasse diagram.
    Dot { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Make {
    Chain { n: usize },
    Antichain { n: usize },
    Cube { n: usize },
    Cone { file: PathBuf },
    Susp {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        folds: usize,
    },
    /// An N-point poset of 2-dimension M; prints its certificate.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Canonical,
    Contractible,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Syntax { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Domain(#[from] posetdim_core::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io { .. } | CliError::Syntax { .. } => 2,
        }
    }
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            let code = err.exit_code();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut out = Output::default();
    match execute(cli.command, &mut out) {
        Ok(code) => out.code = code,
        Err(err) => {
            out.code = err.exit_code();
            writeln!(out.stderr, "error: {err}").unwrap();
        }
    }
    out
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<Poset, CliError> {
    parse_poset(&read(path)?).map_err(|err| match err {
        FormatError::Poset(e) => CliError::Domain(e),
        other => CliError::Syntax {
            path: path.to_path_buf(),
            source: other,
        },
    })
}

fn upper_bound(p: &Poset) -> usize {
    if p.len() > MASK_LIMIT {
        return p.len();
    }
    contractible_embedding(p)
        .map(|e| e.width())
        .unwrap_or(p.len())
        .min(p.len())
}

fn execute(command: Command, out: &mut Output) -> Result<i32, CliError> {
    let stdout = &mut out.stdout;
    match command {
        Command::Info { file } => {
            let p = load(&file)?;
            writeln!(stdout, "size {}", p.len()).unwrap();
            writeln!(stdout, "height {}", p.height()).unwrap();
            if p.is_empty() {
                return Ok(0);
            }
            writeln!(stdout, "lower_bound {}", lower_bound(&p)?).unwrap();
            writeln!(stdout, "upper_bound {}", upper_bound(&p)).unwrap();
            let trace = core(&p)?;
            writeln!(stdout, "contractible {}", trace.core.len() == 1).unwrap();
            writeln!(stdout, "core_size {}", trace.core.len()).unwrap();
            for w in beat_points(&p) {
                writeln!(stdout, "beat {} {} {}", w.point, w.kind, w.witness).unwrap();
            }
        }
        Command::Dim { file, max_size } => {
            let p = load(&file)?;
            if p.len() > max_size.min(MASK_LIMIT) {
                let lo = lower_bound(&p)?;
                writeln!(stdout, "bounds {}..{}", lo, upper_bound(&p)).unwrap();
            } else {
                let cert = two_dimension_with(&p, SolverLimits { max_size })?;
                stdout.push_str(&write_certificate(&cert));
            }
        }
        Command::Embed { file, method } => {
            let p = load(&file)?;
            let e = match method {
                Method::Exact => two_dimension(&p)?.witness,
                Method::Canonical => canonical_embedding(&p)?,
                Method::Contractible => contractible_embedding(&p)?,
            };
            stdout.push_str(&write_embedding(&e));
        }
        Command::Verify { file, embedding } => {
            let p = load(&file)?;
            let parsed = parse_embedding(&read(&embedding)?).map_err(|source| {
                CliError::Syntax {
                    path: embedding.clone(),
                    source,
                }
            })?;
            let claimed = parsed.value;
            let valid = match parsed.into_embedding(&p) {
                Ok(e) => e.verify() && claimed.is_none_or(|v| v == e.width()),
                Err(FormatError::Poset(err)) => {
                    writeln!(out.stderr, "{err}").unwrap();
                    false
                }
                Err(source) => {
                    return Err(CliError::Syntax {
                        path: embedding,
                        source,
                    })
                }
            };
            writeln!(stdout, "valid {valid}").unwrap();
            return Ok(if valid { 0 } else { 1 });
        }
        Command::Core { file } => {
            let p = load(&file)?;
            stdout.push_str(&write_trace(&core(&p)?));
        }
        Command::Make { output, what } => {
            let (p, cert) = match what {
                Make::Chain { n } => (chain(n), None),
                Make::Antichain { n } => (antichain(n), None),
                Make::Cube { n } => (hypercube(n)?, None),
                Make::Cone { file } => (cone(&load(&file)?), None),
                Make::Susp { file, folds } => (suspension(&load(&file)?, folds), None),
                Make::Family { n, m } => {
                    let (p, cert) = realize_certified(n, m)?;
                    (p, Some(cert))
                }
            };
            let text = write_poset(&p);
            match output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })?;
                    if let Some(cert) = cert {
                        stdout.push_str(&write_certificate(&cert));
                    }
                }
                None => {
                    stdout.push_str(&text);
                    // keep stdout a valid poset file
                    if let Some(cert) = cert {
                        for line in write_certificate(&cert).lines() {
                            writeln!(stdout, "# {line}").unwrap();
                        }
                    }
                }
            }
        }
        Command::Census {
            size,
            unlabeled,
            check,
        } => {
            let checks = parse_checks(&check)?;
            let report = census_check(size, unlabeled, &checks)?;
            stdout.push_str(&write_report(&report));
            return Ok(if report.is_clean() { 0 } else { 1 });
        }
        Command::Dot { file } => {
            let p = load(&file)?;
            stdout.push_str(&to_dot(&p));
        }
    }
    Ok(0)
}
