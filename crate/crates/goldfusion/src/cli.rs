use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use goldfusion_core::classify::{identify_ring, Family};
use goldfusion_core::constructors::{deligne_power, make_fib, make_tt3};
use goldfusion_core::ring::AssocStrategy;
use goldfusion_core::words::{
    check_presentation_consistency, derive_collapse, evaluate_word, word_end_dim, Assignment, DeriveBudget, Word,
};
use goldfusion_core::FusionRing;

use crate::json::{self, FormatError};
use crate::parallel::{classify_parallel, resolve_threads, verify_parallel};

/// Exit status for a run that completed and passed.
pub const EXIT_OK: i32 = 0;
/// A check failed: axioms, consistency or catalog invariants.
pub const EXIT_FAILED: i32 = 1;
/// Bad arguments or unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "goldfusion", version, about = "Exact fusion rings of golden dimension")]
pub struct Cli {
    /// Worker threads; falls back to GOLDFUSION_THREADS, then the core count.
    #[arg(long, global = true, env = "GOLDFUSION_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check unit, duality, associativity and Frobenius reciprocity.
    Verify {
        #[command(flatten)]
        ring: RingSource,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
    },
    /// Write a catalog or named ring as JSON.
    Build {
        /// Catalog family (fib-wreath or tt3-wreath).
        #[arg(long, required_unless_present = "ring", conflicts_with = "ring")]
        family: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Named ring instead of a family: fib, tt3, fib^k, tt3^k.
        #[arg(long)]
        ring: Option<String>,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and check every catalog entry up to the bounds.
    Classify {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
    },
    /// Evaluate a word, or check a presentation, under a generator assignment.
    Eval {
        #[command(flatten)]
        ring: RingSource,
        /// Generator images, e.g. `a=rho,b=mu`.
        #[arg(long, value_delimiter = ',', required = true)]
        map: Vec<String>,
        /// Word in the generators; `1` is the empty word.
        #[arg(long, required_unless_present = "presentation")]
        word: Option<String>,
        /// Check every relation of this presentation instead.
        #[arg(long, conflicts_with = "word")]
        presentation: Option<PathBuf>,
    },
    /// Search for a derivation that two generators coincide.
    Derive {
        #[arg(long)]
        presentation: PathBuf,
        /// Largest number of distinct equalities kept.
        #[arg(long, default_value_t = DeriveBudget::default().max_equalities)]
        budget: usize,
        /// Longest word kept; defaults to twice the longest relation plus four.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = DeriveBudget::default().max_terms)]
        max_terms: u64,
        /// Do not treat forbidden shifts as contradictions.
        #[arg(long)]
        no_shift_oracle: bool,
    },
    /// Name a ring up to isomorphism, or report `unknown`.
    Identify {
        #[command(flatten)]
        ring: RingSource,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RingSource {
    /// Ring JSON file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Named ring: fib, tt3, fib^k, tt3^k or a catalog entry like FibWreath(2,1).
    #[arg(long)]
    pub ring: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Auto,
    Exhaustive,
    Generators,
}

impl From<Strategy> for AssocStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Auto => AssocStrategy::Auto,
            Strategy::Exhaustive => AssocStrategy::Exhaustive,
            Strategy::Generators => AssocStrategy::GeneratorReduced,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

impl From<goldfusion_core::Error> for CliError {
    fn from(e: goldfusion_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and writes JSON to
/// `out`; diagnostics go to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "goldfusion: {e}");
            e.exit_code()
        }
    }
}

fn emit<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    out.write_all(json::to_pretty(value).as_bytes()).map_err(|source| CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Built-in rings by name.
pub fn named_ring(name: &str) -> Option<FusionRing> {
    let lower = name.trim().to_ascii_lowercase();
    let (base, power) = match lower.split_once('^') {
        Some((b, k)) => (b.to_string(), k.parse::<usize>().ok().filter(|&k| (1..=6).contains(&k))?),
        None => (lower.clone(), 1),
    };
    match base.as_str() {
        "fib" => return Some(deligne_power(&make_fib(), power)),
        "tt3" if power <= 3 => return Some(deligne_power(&make_tt3(), power)),
        _ => {}
    }
    // catalog entries such as FibWreath(2,1)
    let (family, rest) = name.trim().split_once('(')?;
    let (n, m) = rest.strip_suffix(')')?.split_once(',')?;
    let (n, m) = (n.trim().parse().ok()?, m.trim().parse().ok()?);
    let family = Family::parse(family)?;
    if n == 0 || m == 0 || family.rank(n, m) > 100_000 {
        return None;
    }
    family.ring(n, m).ok()
}

fn load_ring(src: &RingSource) -> Result<FusionRing, CliError> {
    match (&src.input, &src.ring) {
        (Some(path), _) => json::ring_from_json(&read(path)?).map_err(|source| CliError::Format {
            path: path.clone(),
            source,
        }),
        (None, Some(name)) => named_ring(name).ok_or_else(|| CliError::Usage(format!("unknown ring name {name:?}"))),
        (None, None) => Err(CliError::Usage("give --in or --ring".into())),
    }
}

/// `a=rho,b=mu` in any order; every generator up to the largest named one
/// must be assigned.
fn parse_map(ring: &FusionRing, tokens: &[String]) -> Result<Assignment, CliError> {
    let mut targets: Vec<Option<usize>> = Vec::new();
    for tok in tokens.iter().filter(|t| !t.trim().is_empty()) {
        let (g, label) = tok
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("map entry {tok:?} is not generator=label")))?;
        let g = g.trim();
        let letter = match g.as_bytes() {
            [c @ b'a'..=b'z'] => (c - b'a') as usize,
            _ => return Err(CliError::Usage(format!("generator {g:?} is not a single letter a-z"))),
        };
        if targets.len() <= letter {
            targets.resize(letter + 1, None);
        }
        if targets[letter].is_some() {
            return Err(CliError::Usage(format!("generator {g} assigned twice")));
        }
        targets[letter] = Some(ring.require(label.trim())?);
    }
    let targets: Vec<usize> = targets
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| CliError::Usage(format!("generator {} has no image", (b'a' + i as u8) as char))))
        .collect::<Result<_, _>>()?;
    Ok(Assignment::new(ring, targets)?)
}

#[derive(Serialize)]
struct EvalJson {
    word: String,
    image: std::collections::BTreeMap<String, u64>,
    end_dim: u64,
    simple: bool,
}

#[derive(Serialize)]
struct ConsistencyJson {
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<FailureJson>,
}

#[derive(Serialize)]
struct FailureJson {
    relation: usize,
    lhs: std::collections::BTreeMap<String, u64>,
    rhs: std::collections::BTreeMap<String, u64>,
}

#[derive(Serialize)]
struct BuildJson {
    name: String,
    rank: usize,
    out: String,
}

#[derive(Serialize)]
struct IdentifyJson {
    name: String,
    rank: usize,
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let threads = resolve_threads(cli.threads);
    match &cli.command {
        Command::Verify { ring, strategy } => {
            let ring = load_ring(ring)?;
            let report = verify_parallel(&ring, (*strategy).into(), threads);
            emit(out, &json::report_json(&ring, &report))?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Build { family, n, m, ring, out: path } => {
            let (name, built) = match (family, ring) {
                (Some(f), _) => {
                    let family = Family::parse(f).ok_or_else(|| CliError::Usage(format!("unknown family {f:?}")))?;
                    (family.entry_name(*n, *m), family.ring(*n, *m)?)
                }
                (None, Some(r)) => (
                    r.clone(),
                    named_ring(r).ok_or_else(|| CliError::Usage(format!("unknown ring name {r:?}")))?,
                ),
                (None, None) => return Err(CliError::Usage("give --family or --ring".into())),
            };
            let text = json::ring_to_json(&built);
            match path {
                Some(p) => {
                    std::fs::write(p, text).map_err(|source| CliError::Write { path: p.clone(), source })?;
                    emit(
                        out,
                        &BuildJson {
                            name,
                            rank: built.rank(),
                            out: p.display().to_string(),
                        },
                    )?;
                }
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|source| CliError::Write { path: "<stdout>".into(), source })?,
            }
            Ok(EXIT_OK)
        }
        Command::Classify { n_max, m_max } => {
            if *n_max == 0 || *m_max == 0 {
                return Err(CliError::Usage("bounds must be positive".into()));
            }
            let entries = classify_parallel(*n_max, *m_max, threads).map_err(|e| CliError::Failed(e.to_string()))?;
            let rows: Vec<json::EntryJson> = entries.iter().map(json::entry_json).collect();
            emit(out, &rows)?;
            Ok(EXIT_OK)
        }
        Command::Eval {
            ring,
            map,
            word,
            presentation,
        } => {
            let ring = load_ring(ring)?;
            let assign = parse_map(&ring, map)?;
            if let Some(path) = presentation {
                let p = json::presentation_from_json(&read(path)?).map_err(|source| CliError::Format {
                    path: path.clone(),
                    source,
                })?;
                let c = check_presentation_consistency(&p, &ring, &assign)?;
                emit(
                    out,
                    &ConsistencyJson {
                        consistent: c.consistent,
                        first_failure: c.first_failure.map(|(relation, l, r)| FailureJson {
                            relation,
                            lhs: json::object_json(&ring, &l),
                            rhs: json::object_json(&ring, &r),
                        }),
                    },
                )?;
                return Ok(if c.consistent { EXIT_OK } else { EXIT_FAILED });
            }
            let text = word.as_deref().unwrap_or("1");
            let w = Word::parse(text, assign.generators())?;
            let image = evaluate_word(&w, &ring, &assign)?;
            let end_dim = word_end_dim(&w, &ring, &assign)?;
            emit(
                out,
                &EvalJson {
                    word: w.to_string(),
                    image: json::object_json(&ring, &image),
                    end_dim,
                    simple: end_dim == 1,
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Derive {
            presentation,
            budget,
            max_len,
            max_terms,
            no_shift_oracle,
        } => {
            if *budget == 0 || *max_terms == 0 || *max_len == Some(0) {
                return Err(CliError::Usage("budget limits must be positive".into()));
            }
            let p = json::presentation_from_json(&read(presentation)?).map_err(|source| CliError::Format {
                path: presentation.clone(),
                source,
            })?;
            let budget = DeriveBudget {
                max_equalities: *budget,
                max_word_len: *max_len,
                max_terms: *max_terms,
                shift_oracle: !no_shift_oracle,
            };
            let outcome = derive_collapse(&p, &budget);
            emit(out, &json::derive_json(&outcome))?;
            Ok(EXIT_OK)
        }
        Command::Identify { ring } => {
            let ring = load_ring(ring)?;
            let name = identify_ring(&ring).unwrap_or_else(|| "unknown".into());
            emit(out, &IdentifyJson { name, rank: ring.rank() })?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_rings() {
        assert_eq!(named_ring("fib").unwrap().rank(), 2);
        assert_eq!(named_ring("TT3").unwrap().rank(), 6);
        assert_eq!(named_ring("fib^3").unwrap().rank(), 8);
        assert_eq!(named_ring("FibWreath(2,1)").unwrap().rank(), 8);
        assert!(named_ring("ising").is_none());
        assert!(named_ring("fib^0").is_none());
    }

    #[test]
    fn assignment_maps() {
        let tt3 = make_tt3();
        let a = parse_map(&tt3, &["b=mu".into(), "a=rho".into()]).unwrap();
        assert_eq!(a.targets(), &[2, 5]);
        assert!(parse_map(&tt3, &["b=mu".into()]).is_err());
        assert!(parse_map(&tt3, &["a=rho".into(), "a=mu".into()]).is_err());
        assert!(parse_map(&tt3, &["a=sigma".into()]).is_err());
    }
}
