//! Fixtures shared by the criterion benches.

use overlap_core::gen::{
    mutate_letter, random_presentation, relation_rich_word, rewrite_scan, seeded, PresentationShape,
};
use overlap_core::{equivalent, Presentation, PresentationIndex, Word};

/// An equivalent pair of length `len` over `idx`, plus a one-letter mutation
/// of the second word that the solver confirms is not equivalent.
pub fn word_pairs(idx: &PresentationIndex, len: usize, seed: u64) -> (Word, Word, Option<Word>) {
    let pres = idx.presentation();
    let mut rng = seeded(seed);
    let u = relation_rich_word(&mut rng, pres, len);
    let v = rewrite_scan(&mut rng, pres, &u, 0.5);
    let neq = (0..32)
        .map(|_| mutate_letter(&mut rng, &v, pres.alphabet.len()))
        .find(|w| !equivalent(idx, &u, w).expect("C(4) index"));
    (u, v, neq)
}

/// Relations with sides of length 10 over a 1000-letter alphabet, so total
/// length is `20 * relations` and pieces stay rare.
pub fn wide_presentation(relations: usize, seed: u64) -> Presentation {
    let shape = PresentationShape {
        alphabet: 1000..=1000,
        relations: relations..=relations,
        word_len: 10..=10,
        length_preserving: true,
    };
    random_presentation(&mut seeded(seed), &shape)
}
