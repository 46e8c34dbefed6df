//! Seeded generators for words, presentations and equivalent word pairs,
//! shared by the CLI fuzzer, the benchmarks and the test suites.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::oracle::rewrite_neighbors;
use crate::pieces::check_condition;
use crate::presentation::{Alphabet, Presentation, Relation};
use crate::word::{GeneratorId, Word};

pub use rand_chacha::ChaCha8Rng as SeededRng;

pub fn seeded(seed: u64) -> SeededRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Generator names `a`..`z`, then `g26`, `g27`, …
pub fn alphabet_of_size(n: usize) -> Alphabet {
    let names: Vec<String> = (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect();
    Alphabet::new(&names).expect("generated names are valid")
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet_len: usize, len: usize) -> Word {
    (0..len)
        .map(|_| GeneratorId(rng.gen_range(0..alphabet_len as u32)))
        .collect()
}

/// Shape of randomly generated presentations.
#[derive(Debug, Clone)]
pub struct PresentationShape {
    pub alphabet: RangeInclusive<usize>,
    pub relations: RangeInclusive<usize>,
    pub word_len: RangeInclusive<usize>,
    /// Give both sides of every relation the same length, so oracle
    /// closures are finite and exact.
    pub length_preserving: bool,
}

impl Default for PresentationShape {
    fn default() -> Self {
        PresentationShape {
            alphabet: 2..=4,
            relations: 1..=2,
            word_len: 1..=4,
            length_preserving: true,
        }
    }
}

/// A random presentation with no condition imposed (sides are distinct).
pub fn random_presentation<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &PresentationShape,
) -> Presentation {
    let n = rng.gen_range(shape.alphabet.clone());
    let m = rng.gen_range(shape.relations.clone());
    let relations = (0..m)
        .map(|_| loop {
            let l = rng.gen_range(shape.word_len.clone());
            let r = if shape.length_preserving {
                l
            } else {
                rng.gen_range(shape.word_len.clone())
            };
            let lhs = random_word(rng, n, l);
            let rhs = random_word(rng, n, r);
            if lhs != rhs {
                break Relation::new(lhs, rhs);
            }
        })
        .collect();
    Presentation::new(alphabet_of_size(n), relations)
}

/// Rejection-sample presentations until one satisfies C(4). Returns the
/// presentation and the number of draws it took.
pub fn random_c4_presentation<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &PresentationShape,
    max_draws: usize,
) -> Option<(Presentation, usize)> {
    (1..=max_draws).find_map(|draw| {
        let p = random_presentation(rng, shape);
        check_condition(&p, 4).then_some((p, draw))
    })
}

/// Apply up to `steps` random single rewrites to `w`. The result is
/// equivalent to `w` by construction.
pub fn random_rewrites<R: Rng + ?Sized>(
    rng: &mut R,
    pres: &Presentation,
    w: &Word,
    steps: usize,
) -> Word {
    let mut cur = w.clone();
    for _ in 0..steps {
        let mut next: Vec<Word> = rewrite_neighbors(pres, &cur).into_iter().collect();
        if next.is_empty() {
            break;
        }
        next.sort();
        cur = next.choose(rng).expect("non-empty").clone();
    }
    cur
}

/// A word of length `len` made by concatenating random relation words and
/// random letters, so that it contains many rewritable factors.
pub fn relation_rich_word<R: Rng + ?Sized>(rng: &mut R, pres: &Presentation, len: usize) -> Word {
    let words: Vec<&Word> = pres.relation_words().map(|(_, w)| w).collect();
    let mut out = Vec::with_capacity(len + pres.max_relation_len());
    while out.len() < len {
        if !words.is_empty() && rng.gen_bool(0.6) {
            out.extend_from_slice(words.choose(rng).expect("non-empty"));
        } else {
            out.push(GeneratorId(rng.gen_range(0..pres.alphabet.len() as u32)));
        }
    }
    out.truncate(len);
    out.into()
}

/// Rewrite roughly `density` of the relation-word occurrences in one left to
/// right pass. Linear in `|w|`; used to build long equivalent pairs.
pub fn rewrite_scan<R: Rng + ?Sized>(
    rng: &mut R,
    pres: &Presentation,
    w: &Word,
    density: f64,
) -> Word {
    let mut out = Vec::with_capacity(w.len() * 2);
    let mut i = 0;
    'outer: while i < w.len() {
        if rng.gen_bool(density) {
            for rel in &pres.relations {
                for (from, to) in [(&rel.lhs, &rel.rhs), (&rel.rhs, &rel.lhs)] {
                    if !from.is_empty() && w[i..].starts_with(from) {
                        out.extend_from_slice(to);
                        i += from.len();
                        continue 'outer;
                    }
                }
            }
        }
        out.push(w[i]);
        i += 1;
    }
    out.into()
}

/// Replace one random letter of `w` with a different generator.
pub fn mutate_letter<R: Rng + ?Sized>(rng: &mut R, w: &Word, alphabet_len: usize) -> Word {
    let mut v = w.clone().into_vec();
    if v.is_empty() || alphabet_len < 2 {
        return v.into();
    }
    let i = rng.gen_range(0..v.len());
    let shift = rng.gen_range(1..alphabet_len as u32);
    v[i] = GeneratorId((v[i].0 + shift) % alphabet_len as u32);
    v.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn seeded_generation_is_deterministic() {
        let shape = PresentationShape::default();
        let a = random_c4_presentation(&mut seeded(7), &shape, 10_000).unwrap();
        let b = random_c4_presentation(&mut seeded(7), &shape, 10_000).unwrap();
        assert_eq!(a, b);
        assert!(check_condition(&a.0, 4));
    }

    #[test]
    fn rewrite_scan_keeps_relations_aligned() {
        let p = presets::p2();
        let mut rng = seeded(1);
        let w = relation_rich_word(&mut rng, &p, 200);
        let v = rewrite_scan(&mut rng, &p, &w, 1.0);
        assert_eq!(v.len(), w.len());
        assert_ne!(v, w);
    }

    #[test]
    fn mutation_changes_exactly_one_letter() {
        let mut rng = seeded(3);
        let w = random_word(&mut rng, 4, 20);
        let m = mutate_letter(&mut rng, &w, 4);
        assert_eq!(w.iter().zip(m.iter()).filter(|(a, b)| a != b).count(), 1);
    }

    #[test]
    fn large_alphabet_names() {
        let a = alphabet_of_size(30);
        assert_eq!(a.name(GeneratorId(27)), "g27");
        assert!(!a.is_compact());
    }
}
