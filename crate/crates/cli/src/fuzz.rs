//! Differential testing of the solver against the rewriting oracle.

use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use overlap_core::gen::{
    mutate_letter, random_c4_presentation, random_word, relation_rich_word, seeded,
    PresentationShape, SeededRng,
};
use overlap_core::oracle::possible_prefix_in;
use overlap_core::{
    closure, solve, OracleCaps, Presentation, PresentationIndex, SolverError, Word,
};
use rand::Rng;

use crate::{build_index, load_presentation, CliError, CliResult, ExitStatus};

#[derive(Args, Debug)]
pub struct FuzzArgs {
    /// Presentation file; omit with --random.
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    file: Option<PathBuf>,
    /// Draw random C(4) presentations instead of reading a file.
    #[arg(long)]
    random: bool,
    /// Number of random presentations with --random.
    #[arg(long, default_value_t = 1)]
    presentations: usize,
    /// Word pairs per presentation.
    #[arg(long, default_value_t = 1000)]
    pairs: usize,
    /// Maximum length of the first word of each pair.
    #[arg(long, default_value_t = 8)]
    len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oracle state cap per closure; pairs it cannot settle are skipped.
    #[arg(long, default_value_t = 200_000)]
    max_states: usize,
}

#[derive(Debug, Default)]
struct Tally {
    compared: usize,
    agreed: usize,
    skipped: usize,
    max_calls: usize,
}

#[derive(Debug, Clone)]
struct Query {
    u: Word,
    v: Word,
    p: Word,
}

enum Check {
    Agree { calls: usize },
    Unknown,
    Disagree { solver: bool, oracle: bool },
    BoundExceeded { calls: usize, bound: usize },
    Ambiguity(String),
}

/// Longest word the oracle may visit while settling `u ≡ v`.
fn oracle_len(pres: &Presentation, u: &Word, v: &Word) -> usize {
    u.len().max(v.len()) + 2 * pres.max_relation_len()
}

fn check(idx: &PresentationIndex, q: &Query, max_states: usize) -> Check {
    let pres = idx.presentation();
    let c = closure(
        pres,
        &q.u,
        OracleCaps::new(oracle_len(pres, &q.u, &q.v), max_states),
    );
    let expected = match (c.contains(&q.v), c.complete) {
        (false, false) => return Check::Unknown,
        (false, true) => false,
        (true, _) => match possible_prefix_in(&c, &q.p).as_bool() {
            Some(b) => b,
            None => return Check::Unknown,
        },
    };
    match solve(idx, &q.u, &q.v, &q.p, false) {
        Err(SolverError::Ambiguity(a)) => Check::Ambiguity(a.to_string()),
        Err(SolverError::PieceExpected) => unreachable!("fuzz prefixes are Z words"),
        Ok(o) if !o.stats.within_bound() => Check::BoundExceeded {
            calls: o.stats.recursive_calls,
            bound: o.stats.bound,
        },
        Ok(o) if o.answer != expected => Check::Disagree {
            solver: o.answer,
            oracle: expected,
        },
        Ok(o) => Check::Agree {
            calls: o.stats.recursive_calls,
        },
    }
}

fn is_failure(c: &Check) -> bool {
    !matches!(c, Check::Agree { .. } | Check::Unknown)
}

/// Greedily delete single letters from u and v while the query still fails.
fn minimise(idx: &PresentationIndex, q: &Query, max_states: usize) -> Query {
    let mut best = q.clone();
    loop {
        let mut shrunk = false;
        for side in 0..2 {
            let len = if side == 0 {
                best.u.len()
            } else {
                best.v.len()
            };
            for i in (0..len).rev() {
                let mut cand = best.clone();
                let w = if side == 0 { &mut cand.u } else { &mut cand.v };
                let mut letters = w.clone().into_vec();
                letters.remove(i);
                *w = letters.into();
                if is_failure(&check(idx, &cand, max_states)) {
                    best = cand;
                    shrunk = true;
                    break;
                }
            }
        }
        if !shrunk {
            return best;
        }
    }
}

fn pick_query(
    rng: &mut SeededRng,
    idx: &PresentationIndex,
    max_len: usize,
    max_states: usize,
) -> Query {
    let pres = idx.presentation();
    let n = pres.alphabet.len();
    let len = rng.gen_range(0..=max_len);
    let u = if rng.gen_bool(0.7) {
        relation_rich_word(rng, pres, len)
    } else {
        random_word(rng, n, len)
    };
    let v = match rng.gen_range(0..3) {
        0 => {
            let caps = OracleCaps::new(oracle_len(pres, &u, &u), max_states.min(10_000));
            let c = closure(pres, &u, caps);
            let mut members: Vec<&Word> = c.words().collect();
            members.sort();
            members[rng.gen_range(0..members.len())].clone()
        }
        1 => mutate_letter(rng, &u, n),
        _ => relation_rich_word(rng, pres, len),
    };
    let zs = idx.z_words();
    let p = if zs.is_empty() || rng.gen_bool(0.5) {
        Word::empty()
    } else {
        zs[rng.gen_range(0..zs.len())].into()
    };
    Query { u, v, p }
}

fn report_failure(
    idx: &PresentationIndex,
    q: &Query,
    failure: &Check,
    max_states: usize,
) -> CliError {
    let pres = idx.presentation();
    let reason = match failure {
        Check::Disagree { solver, oracle } => format!("solver={solver} oracle={oracle}"),
        Check::BoundExceeded { calls, bound } => format!("{calls} calls exceed bound {bound}"),
        Check::Ambiguity(a) => a.clone(),
        Check::Agree { .. } | Check::Unknown => unreachable!(),
    };
    println!("failure: {reason}");
    let m = minimise(idx, q, max_states);
    for line in pres.to_text().lines() {
        println!("reproducer: {line}");
    }
    let tokens = |w: &Word| {
        w.iter()
            .map(|&g| pres.alphabet.name(g))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!(
        "reproducer: eq u=\"{}\" v=\"{}\" prefix=\"{}\"",
        tokens(&m.u),
        tokens(&m.v),
        tokens(&m.p)
    );
    CliError::Internal(anyhow!("fuzz failure: {reason}"))
}

fn fuzz_presentation(
    idx: &PresentationIndex,
    rng: &mut SeededRng,
    args: &FuzzArgs,
    tally: &mut Tally,
) -> Result<(), CliError> {
    for _ in 0..args.pairs {
        let q = pick_query(rng, idx, args.len, args.max_states);
        match check(idx, &q, args.max_states) {
            Check::Unknown => tally.skipped += 1,
            Check::Agree { calls } => {
                tally.compared += 1;
                tally.agreed += 1;
                tally.max_calls = tally.max_calls.max(calls);
            }
            failure => {
                tally.compared += 1;
                return Err(report_failure(idx, &q, &failure, args.max_states));
            }
        }
    }
    Ok(())
}

pub fn run(args: &FuzzArgs) -> CliResult {
    let mut rng = seeded(args.seed);
    let mut tally = Tally::default();
    if args.random {
        for _ in 0..args.presentations {
            let shape = PresentationShape {
                alphabet: 2..=4,
                relations: 1..=3,
                word_len: 2..=5,
                length_preserving: rng.gen_bool(0.5),
            };
            let Some((pres, draws)) = random_c4_presentation(&mut rng, &shape, 1_000_000) else {
                return Err(CliError::Internal(anyhow!(
                    "no C(4) presentation in 1000000 draws"
                )));
            };
            let rejected = draws - 1;
            println!("presentation: {pres}");
            println!(
                "draws: {draws} (rejected {rejected}, {:.1}%)",
                100.0 * rejected as f64 / draws as f64
            );
            let idx = PresentationIndex::new(pres).expect("generator returns C(4) presentations");
            fuzz_presentation(&idx, &mut rng, args, &mut tally)?;
        }
    } else {
        let path = args
            .file
            .as_ref()
            .expect("clap requires a file without --random");
        let idx = build_index(load_presentation(path)?)?;
        fuzz_presentation(&idx, &mut rng, args, &mut tally)?;
    }
    println!("skipped: {}", tally.skipped);
    println!("max-calls: {}", tally.max_calls);
    println!("{}/{} agree", tally.agreed, tally.compared);
    Ok(ExitStatus::Yes)
}
