//! `overlap`: inspect monoid presentations and decide word problems for C(4)
//! presentations.
//!
//! Output is line-oriented; every line starts with a `key:` prefix except
//! the `N/M agree` summary of `fuzz`. Exit codes:
//!
//! | code | meaning                                                     |
//! |------|-------------------------------------------------------------|
//! | 0    | YES / valid                                                 |
//! | 1    | NO / invalid (including "not C(4)" and oracle UNKNOWN)      |
//! | 2    | usage or input error                                        |
//! | 3    | internal failure: ambiguity, disagreement, bound violation  |

mod bench;
mod fuzz;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use overlap_core::{
    closure, condition_report, decompose, is_piece, max_piece_prefix, max_piece_suffix,
    parse_presentation, solve, Alphabet, ConditionReport, GeneratorId, OracleCaps, ParseErrorKind,
    PieceSet, Presentation, PresentationIndex, RelationDecomposition, SolverError, Word,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Yes = 0,
    No = 1,
    InputError = 2,
    Internal = 3,
}

impl ExitStatus {
    fn from_bool(b: bool) -> Self {
        if b {
            ExitStatus::Yes
        } else {
            ExitStatus::No
        }
    }
}

/// Failure paths, each mapped to its exit status.
#[derive(Debug)]
pub enum CliError {
    Input(anyhow::Error),
    NotC4(String),
    Internal(anyhow::Error),
}

impl CliError {
    fn status(&self) -> ExitStatus {
        match self {
            CliError::Input(_) => ExitStatus::InputError,
            CliError::NotC4(_) => ExitStatus::No,
            CliError::Internal(_) => ExitStatus::Internal,
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::PieceExpected => CliError::Input(anyhow!("the prefix is not a piece")),
            SolverError::Ambiguity(a) => CliError::Internal(anyhow!(a)),
        }
    }
}

pub type CliResult = Result<ExitStatus, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "overlap",
    version,
    about = "Word problems for C(4) small overlap monoid presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct WordArgs {
    /// Treat every character of a word as one generator token.
    #[arg(long)]
    compact: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report C(1)..C(4), the X/Y/Z decomposition, piece count, k and Lmax.
    Check { file: PathBuf },
    /// List pieces, or test whether WORD is a piece.
    Pieces {
        file: PathBuf,
        word: Option<String>,
        #[command(flatten)]
        words: WordArgs,
    },
    /// Print the X/Y/Z decomposition of every relation word.
    Decompose { file: PathBuf },
    /// Decide U ≡ V (and, with --prefix, that P is a possible prefix of U).
    Eq {
        file: PathBuf,
        u: String,
        v: String,
        /// A piece that must be a possible prefix of U.
        #[arg(long)]
        prefix: Option<String>,
        /// Print the branch taken at each iteration.
        #[arg(long)]
        trace: bool,
        /// Print the iteration count, its bound and a branch histogram.
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        words: WordArgs,
    },
    /// Decide U ≡ V by breadth-first rewriting.
    Oracle {
        file: PathBuf,
        u: String,
        v: String,
        /// Longest intermediate word explored [default: max(|U|,|V|) + Lmax].
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        #[command(flatten)]
        words: WordArgs,
    },
    /// Compare the solver against the oracle on random word pairs.
    Fuzz(fuzz::FuzzArgs),
    /// Time the solver on word pairs of geometrically increasing length.
    Bench(bench::BenchArgs),
}

pub fn load_presentation(path: &Path) -> Result<Presentation, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
    .map_err(CliError::Input)?;
    parse_presentation(&text).map_err(|e| CliError::Input(anyhow!("{}: {e}", path.display())))
}

/// Parse a command-line word. A single token naming no generator over a
/// single-character alphabet is read as a compact word, so `abab` works
/// without `--compact`.
pub fn parse_word(alphabet: &Alphabet, text: &str, compact: bool) -> Result<Word, CliError> {
    let parsed = if compact {
        alphabet.parse_compact(text)
    } else {
        match alphabet.parse_word(text) {
            Err(ParseErrorKind::UndeclaredGenerator(_))
                if alphabet.is_compact() && text.split_whitespace().count() == 1 =>
            {
                alphabet.parse_compact(text)
            }
            r => r,
        }
    };
    parsed.map_err(|e| CliError::Input(anyhow!("word {text:?}: {e}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// First line of `check`: the strongest condition that holds and, if C(4)
/// fails, the first failing condition with its certificate.
pub fn condition_summary(
    pres: &Presentation,
    report: &ConditionReport,
    k: Option<usize>,
) -> String {
    let strongest = report.strongest();
    if strongest == 4 {
        return match k {
            _ if pres.relations.is_empty() => "C(4): yes (vacuous)".to_string(),
            Some(k) => format!("C(4): yes; k={k}"),
            None => "C(4): yes".to_string(),
        };
    }
    let cert = report
        .certificate
        .as_ref()
        .map(|c| c.render(pres))
        .unwrap_or_default();
    let failed = format!("C({}): no ({cert})", strongest + 1);
    if strongest == 0 {
        failed
    } else {
        format!("C({strongest}): yes; {failed}")
    }
}

fn part(pres: &Presentation, w: &[GeneratorId]) -> String {
    if w.is_empty() {
        String::new()
    } else {
        pres.render(w)
    }
}

/// Validate C(4) and build the solver index; failure is a NO, not an error.
pub fn build_index(pres: Presentation) -> Result<PresentationIndex, CliError> {
    let report = condition_report(&pres);
    PresentationIndex::new(pres.clone())
        .map_err(|_| CliError::NotC4(condition_summary(&pres, &report, None)))
}

fn print_decomposition(pres: &Presentation, ds: &[RelationDecomposition], with_partner: bool) {
    for d in ds {
        let w = pres.relation_word(d.word);
        let mut line = format!(
            "decomposition: {}=({}|{}|{})",
            pres.render(w),
            part(pres, &w[..d.x_len]),
            part(pres, &w[d.x_len..d.xy_len()]),
            part(pres, &w[d.xy_len()..])
        );
        if with_partner {
            line.push_str(&format!(
                " partner={}",
                pres.render(pres.relation_word(d.partner))
            ));
        }
        println!("{line}");
    }
}

fn cmd_check(file: &Path) -> CliResult {
    let pres = load_presentation(file)?;
    let report = condition_report(&pres);
    let idx = PresentationIndex::new(pres.clone()).ok();
    println!(
        "{}",
        condition_summary(&pres, &report, idx.as_ref().map(|i| i.k()))
    );
    let conditions: Vec<String> = (1..=4)
        .map(|n| format!("C({n})={}", yes_no(report.satisfies(n))))
        .collect();
    println!("conditions: {}", conditions.join(" "));
    println!("pieces: {}", PieceSet::new(&pres).len());
    if let Some(idx) = &idx {
        println!("k: {}", idx.k());
        println!("Lmax: {}", idx.lmax());
        print_decomposition(&pres, idx.decompositions(), false);
    }
    Ok(ExitStatus::from_bool(report.satisfies(4)))
}

fn cmd_pieces(file: &Path, word: Option<&str>, compact: bool) -> CliResult {
    let pres = load_presentation(file)?;
    if let Some(text) = word {
        let w = parse_word(&pres.alphabet, text, compact)?;
        let piece = is_piece(&pres, &w);
        println!("piece: {}", yes_no(piece));
        println!("max-piece-prefix: {}", max_piece_prefix(&pres, &w));
        println!("max-piece-suffix: {}", max_piece_suffix(&pres, &w));
        return Ok(ExitStatus::from_bool(piece));
    }
    for (_, w) in pres.relation_words() {
        println!(
            "relation-word: {} max-piece-prefix={} max-piece-suffix={}",
            pres.render(w),
            max_piece_prefix(&pres, &w),
            max_piece_suffix(&pres, w)
        );
    }
    let mut pieces = PieceSet::new(&pres).pieces();
    pieces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for p in &pieces {
        println!("piece: {}", pres.render(p));
    }
    println!("pieces: {}", pieces.len());
    Ok(ExitStatus::Yes)
}

/// Needs only C(3); k and Lmax are printed alongside. Exit 0 iff C(3).
fn cmd_decompose(file: &Path) -> CliResult {
    let pres = load_presentation(file)?;
    let ds = match decompose(&pres) {
        Ok(ds) => ds,
        Err(_) => {
            let report = condition_report(&pres);
            return Err(CliError::NotC4(condition_summary(&pres, &report, None)));
        }
    };
    print_decomposition(&pres, &ds, true);
    println!("k: {}", ds.iter().map(|d| d.z_len).max().unwrap_or(0));
    println!("Lmax: {}", pres.max_relation_len());
    Ok(ExitStatus::Yes)
}

#[allow(clippy::too_many_arguments)]
fn cmd_eq(
    file: &Path,
    u: &str,
    v: &str,
    prefix: Option<&str>,
    trace: bool,
    stats: bool,
    compact: bool,
) -> CliResult {
    let pres = load_presentation(file)?;
    let a = &pres.alphabet;
    let u = parse_word(a, u, compact)?;
    let v = parse_word(a, v, compact)?;
    let p = prefix
        .map(|p| parse_word(a, p, compact))
        .transpose()?
        .unwrap_or_default();
    let idx = build_index(pres)?;
    let outcome = solve(&idx, &u, &v, &p, trace)?;
    let pres = idx.presentation();
    for step in outcome.trace.iter().flatten() {
        println!(
            "trace: {} |u|={} |v|={} p={}",
            step.line,
            step.u_len,
            step.v_len,
            pres.render(&step.p)
        );
    }
    println!("answer: {}", if outcome.answer { "YES" } else { "NO" });
    if stats {
        println!("calls: {}", outcome.stats.recursive_calls);
        println!("bound: {}", outcome.stats.bound);
        let hist: Vec<String> = outcome
            .stats
            .histogram()
            .into_iter()
            .map(|(l, c)| format!("{l}={c}"))
            .collect();
        println!("lines: {}", hist.join(" "));
    }
    if !outcome.stats.within_bound() {
        return Err(CliError::Internal(anyhow!(
            "{} calls exceed the bound {}",
            outcome.stats.recursive_calls,
            outcome.stats.bound
        )));
    }
    Ok(ExitStatus::from_bool(outcome.answer))
}

fn cmd_oracle(
    file: &Path,
    u: &str,
    v: &str,
    max_len: Option<usize>,
    max_states: usize,
    compact: bool,
) -> CliResult {
    let pres = load_presentation(file)?;
    let u = parse_word(&pres.alphabet, u, compact)?;
    let v = parse_word(&pres.alphabet, v, compact)?;
    let max_len = max_len.unwrap_or(u.len().max(v.len()) + pres.max_relation_len());
    let c = closure(&pres, &u, OracleCaps::new(max_len, max_states));
    let found = c.contains(&v);
    let verdict = match (found, c.complete) {
        (true, _) => "YES",
        (false, true) => "NO",
        (false, false) => "UNKNOWN",
    };
    println!("answer: {verdict}");
    println!("closure: {}", c.len());
    println!("complete: {}", yes_no(c.complete));
    if let Some(d) = c.depth(&v) {
        println!("depth: {d}");
    }
    Ok(ExitStatus::from_bool(found))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Check { file } => cmd_check(&file),
        Command::Pieces { file, word, words } => cmd_pieces(&file, word.as_deref(), words.compact),
        Command::Decompose { file } => cmd_decompose(&file),
        Command::Eq {
            file,
            u,
            v,
            prefix,
            trace,
            stats,
            words,
        } => cmd_eq(
            &file,
            &u,
            &v,
            prefix.as_deref(),
            trace,
            stats,
            words.compact,
        ),
        Command::Oracle {
            file,
            u,
            v,
            max_len,
            max_states,
            words,
        } => cmd_oracle(&file, &u, &v, max_len, max_states, words.compact),
        Command::Fuzz(args) => fuzz::run(&args),
        Command::Bench(args) => bench::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                ExitStatus::InputError as u8
            } else {
                0
            });
        }
    };
    let status = match run(cli) {
        Ok(status) => status,
        Err(e) => {
            match &e {
                CliError::Input(err) | CliError::Internal(err) => eprintln!("error: {err:#}"),
                CliError::NotC4(msg) => eprintln!("error: not C(4): {msg}"),
            }
            e.status()
        }
    };
    ExitCode::from(status as u8)
}
