//! Wall-clock scaling of the solver on long word pairs.

use std::hint::black_box;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::anyhow;
use clap::Args;
use overlap_core::gen::{mutate_letter, relation_rich_word, rewrite_scan, seeded};
use overlap_core::{equivalent, solve, PresentationIndex, Word};

use crate::{build_index, load_presentation, CliError, CliResult, ExitStatus};

#[derive(Args, Debug)]
pub struct BenchArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 4096)]
    min_len: usize,
    #[arg(long, default_value_t = 65536)]
    max_len: usize,
    #[arg(long, default_value_t = 2.0)]
    growth_factor: f64,
    /// Timed samples per length; the median is reported.
    #[arg(long, default_value_t = 11)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Median per-call time, batching short calls so each sample spans at least
/// a few hundred thousand letters.
fn median_time(idx: &PresentationIndex, u: &Word, v: &Word, samples: usize) -> Duration {
    let iters = (1usize << 18) / u.len().max(v.len()).max(1);
    let iters = iters.max(1);
    let mut times: Vec<Duration> = (0..samples.max(1))
        .map(|_| {
            let t = Instant::now();
            for _ in 0..iters {
                black_box(equivalent(idx, black_box(u), black_box(v)).expect("C(4) index"));
            }
            t.elapsed() / iters as u32
        })
        .collect();
    times.sort();
    times[times.len() / 2]
}

fn micros(d: Duration) -> String {
    format!("{:.1}", d.as_secs_f64() * 1e6)
}

pub fn run(args: &BenchArgs) -> CliResult {
    if args.growth_factor <= 1.0 || args.min_len == 0 || args.min_len > args.max_len {
        return Err(CliError::Input(anyhow!(
            "need 0 < --min-len ≤ --max-len and --growth-factor > 1"
        )));
    }
    let idx = build_index(load_presentation(&args.file)?)?;
    let pres = idx.presentation();
    let mut rng = seeded(args.seed);

    let base = solve(&idx, &[], &[], &[], false).map_err(CliError::from)?;
    println!(
        "row: len=0 eq_us=- neq_us=- ratio=- calls={} bound={}",
        base.stats.recursive_calls, base.stats.bound
    );

    let mut lengths = vec![args.min_len];
    while let Some(next) = lengths
        .last()
        .map(|&l| ((l as f64) * args.growth_factor).ceil() as usize)
    {
        if next > args.max_len {
            break;
        }
        lengths.push(next);
    }

    let mut previous: Option<Duration> = None;
    let mut violations = 0;
    for len in lengths {
        let u = relation_rich_word(&mut rng, pres, len);
        let v = rewrite_scan(&mut rng, pres, &u, 0.5);
        let eq = solve(&idx, &u, &v, &[], false)?;
        if !eq.answer {
            return Err(CliError::Internal(anyhow!(
                "rewritten pair of length {len} judged inequivalent"
            )));
        }
        // One mutated letter usually breaks equivalence; confirm with the solver.
        let neq = (0..32)
            .map(|_| mutate_letter(&mut rng, &v, pres.alphabet.len()))
            .find(|w| !equivalent(&idx, &u, w).unwrap_or(true));

        let t_eq = median_time(&idx, &u, &v, args.samples);
        let t_neq = neq.as_ref().map(|w| median_time(&idx, &u, w, args.samples));
        let neq_calls = match &neq {
            Some(w) => solve(&idx, &u, w, &[], false)?.stats.recursive_calls,
            None => 0,
        };
        let calls = eq.stats.recursive_calls.max(neq_calls);
        let bound = idx.recursion_bound(u.len().min(v.len()));
        if calls > bound {
            violations += 1;
        }
        let ratio = previous.map_or("-".to_string(), |p| {
            format!("{:.2}", t_eq.as_secs_f64() / p.as_secs_f64())
        });
        println!(
            "row: len={len} eq_us={} neq_us={} ratio={ratio} calls={calls} bound={bound}",
            micros(t_eq),
            t_neq.map_or("-".to_string(), micros)
        );
        previous = Some(t_eq);
    }
    println!("bound-violations: {violations}");
    if violations > 0 {
        return Err(CliError::Internal(anyhow!(
            "recursion count exceeded its bound"
        )));
    }
    Ok(ExitStatus::Yes)
}
