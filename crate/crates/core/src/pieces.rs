//! Pieces, small overlap conditions, and the brute-force factoriser used to
//! cross-check them.
//!
//! A piece is a word occurring as a factor at two distinct places among the
//! relation words (counting each side of each relation separately). The
//! empty word is always a piece.

use std::collections::HashMap;
use std::fmt;

use crate::presentation::{Presentation, RelationWordRef};
use crate::word::{common_prefix_len, GeneratorId, Letters, Word};

/// True iff `w` is a piece of `pres`. Runs in O(|w|·|R|).
pub fn is_piece(pres: &Presentation, w: &[GeneratorId]) -> bool {
    if w.is_empty() {
        return true;
    }
    let mut seen = 0;
    for (_, r) in pres.relation_words() {
        if r.len() < w.len() {
            continue;
        }
        for start in 0..=r.len() - w.len() {
            if r[start..start + w.len()] == *w {
                seen += 1;
                if seen >= 2 {
                    return true;
                }
            }
        }
    }
    false
}

/// Length of the longest prefix of `w` that is a piece.
///
/// For every suffix position of every relation word take the longest common
/// prefix with `w`; the answer is the largest value reached at two or more
/// positions. O(|w|·|R|).
pub fn max_piece_prefix<L: Letters + ?Sized>(pres: &Presentation, w: &L) -> usize {
    let mut best = 0;
    let mut second = 0;
    for (_, r) in pres.relation_words() {
        for start in 0..r.len() {
            let n = common_prefix_len(w, &r[start..]);
            if n > best {
                second = best;
                best = n;
            } else if n > second {
                second = n;
            }
        }
    }
    second
}

/// Length of the longest suffix of `w` that is a piece; mirror image of
/// [`max_piece_prefix`].
pub fn max_piece_suffix(pres: &Presentation, w: &[GeneratorId]) -> usize {
    let mut best = 0;
    let mut second = 0;
    for (_, r) in pres.relation_words() {
        for end in 1..=r.len() {
            let n = w
                .iter()
                .rev()
                .zip(r[..end].iter().rev())
                .take_while(|(a, b)| a == b)
                .count();
            if n > best {
                second = best;
                best = n;
            } else if n > second {
                second = n;
            }
        }
    }
    second
}

/// Length of the longest piece occurring anywhere inside `w`.
pub fn longest_piece_factor(pres: &Presentation, w: &[GeneratorId]) -> usize {
    (0..w.len())
        .map(|i| max_piece_prefix(pres, &w[i..]))
        .max()
        .unwrap_or(0)
}

/// Evidence that a relation word is a product of few pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub word: RelationWordRef,
    /// Non-empty pieces whose product is the relation word; empty when the
    /// relation word itself is ε.
    pub factors: Vec<Word>,
}

impl Certificate {
    pub fn render(&self, pres: &Presentation) -> String {
        let lhs = pres.render(pres.relation_word(self.word));
        if self.factors.is_empty() {
            return format!("{lhs} = ε");
        }
        let rhs: Vec<String> = self.factors.iter().map(|f| pres.render(f)).collect();
        format!("{lhs} = {}", rhs.join("·"))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .factors
            .iter()
            .map(|w| {
                w.iter()
                    .map(|g| g.0.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(
            f,
            "relation {} {:?} = [{}]",
            self.word.relation,
            self.word.side,
            factors.join("]·[")
        )
    }
}

/// Verdicts for C(1) through C(4), computed via maximal piece prefixes and
/// suffixes in O(|R|²).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// `holds[n-1]` is the verdict for C(n).
    pub holds: [bool; 4],
    /// First failure of the strongest condition that fails, if any.
    pub certificate: Option<Certificate>,
}

impl ConditionReport {
    pub fn satisfies(&self, n: usize) -> bool {
        n == 0 || self.holds[n - 1]
    }

    /// Largest n ≤ 4 for which C(n) holds.
    pub fn strongest(&self) -> usize {
        self.holds.iter().take_while(|&&h| h).count()
    }
}

/// Evaluate C(1)..C(4) with the prefix/suffix characterisation.
///
/// C(3) holds iff |X_R| + |Z_R| < |R| for every relation word R; C(4) iff
/// additionally no middle word Y_R is a piece.
pub fn condition_report(pres: &Presentation) -> ConditionReport {
    let mut holds = [true; 4];
    let mut certificate: Option<(usize, Certificate)> = None;
    let mut record = |level: usize, cert: Certificate, holds: &mut [bool; 4]| {
        for h in holds.iter_mut().skip(level - 1) {
            *h = false;
        }
        if certificate.as_ref().is_none_or(|(l, _)| level < *l) {
            certificate = Some((level, cert));
        }
    };

    for (r, w) in pres.relation_words() {
        if w.is_empty() {
            record(
                1,
                Certificate {
                    word: r,
                    factors: vec![],
                },
                &mut holds,
            );
            continue;
        }
        let x = max_piece_prefix(pres, w.letters());
        if x == w.len() {
            record(
                2,
                Certificate {
                    word: r,
                    factors: vec![w.clone()],
                },
                &mut holds,
            );
            continue;
        }
        let z = max_piece_suffix(pres, w);
        if x + z >= w.len() {
            record(
                3,
                Certificate {
                    word: r,
                    factors: vec![w[..x].into(), w[x..].into()],
                },
                &mut holds,
            );
            continue;
        }
        let y = &w[x..w.len() - z];
        if is_piece(pres, y) {
            let factors = [&w[..x], y, &w[w.len() - z..]]
                .into_iter()
                .filter(|f| !f.is_empty())
                .map(Word::from)
                .collect();
            record(4, Certificate { word: r, factors }, &mut holds);
        }
    }
    ConditionReport {
        holds,
        certificate: certificate.map(|(_, c)| c),
    }
}

/// Does the presentation satisfy C(n)? Uses [`condition_report`] for n ≤ 4
/// and the generic factoriser beyond that.
pub fn check_condition(pres: &Presentation, n: usize) -> bool {
    match n {
        0 => true,
        1..=4 => condition_report(pres).satisfies(n),
        _ => PieceSet::new(pres).check_condition(pres, n),
    }
}

/// A positive rational `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Ratio { num, den }
    }
}

impl std::str::FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        let r = match s.split_once('/') {
            Some((n, d)) => Ratio {
                num: parse(n)?,
                den: parse(d)?,
            },
            None => Ratio {
                num: parse(s)?,
                den: 1,
            },
        };
        if r.den == 0 || r.num == 0 || r.num > r.den {
            return Err(format!("{s:?} is not in (0, 1]"));
        }
        Ok(r)
    }
}

/// OL(x): every piece occurring in a relation word R is shorter than x·|R|.
pub fn check_ol(pres: &Presentation, x: Ratio) -> bool {
    pres.relation_words().all(|(_, w)| {
        let longest = longest_piece_factor(pres, w) as u64;
        longest * x.den < x.num * w.len() as u64
    })
}

/// Every non-empty piece of a presentation, found by enumerating all factor
/// occurrences. Quadratic in memory; meant for cross-checking the scans above.
#[derive(Debug, Clone)]
pub struct PieceSet {
    counts: HashMap<Word, usize>,
}

impl PieceSet {
    pub fn new(pres: &Presentation) -> Self {
        let mut counts: HashMap<Word, usize> = HashMap::new();
        for (_, r) in pres.relation_words() {
            for i in 0..r.len() {
                for j in i + 1..=r.len() {
                    *counts.entry(r[i..j].into()).or_default() += 1;
                }
            }
        }
        counts.retain(|_, c| *c >= 2);
        PieceSet { counts }
    }

    pub fn contains(&self, w: &[GeneratorId]) -> bool {
        w.is_empty() || self.counts.contains_key(w)
    }

    /// Non-empty pieces, shortest first then lexicographic.
    pub fn pieces(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.counts.keys().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// Fewest non-empty pieces whose product is `w` (0 for ε), with one
    /// optimal factorisation; `None` if `w` is not a product of pieces.
    pub fn min_factorisation(&self, w: &[GeneratorId]) -> Option<Vec<Word>> {
        let n = w.len();
        // best[i]: (pieces needed for w[..i], start of last piece)
        let mut best: Vec<Option<(usize, usize)>> = vec![None; n + 1];
        best[0] = Some((0, 0));
        for end in 1..=n {
            for start in 0..end {
                let Some((count, _)) = best[start] else {
                    continue;
                };
                if !self.contains(&w[start..end]) {
                    continue;
                }
                if best[end].is_none_or(|(c, _)| count + 1 < c) {
                    best[end] = Some((count + 1, start));
                }
            }
        }
        best[n]?;
        let mut factors = Vec::new();
        let mut end = n;
        while end > 0 {
            let (_, start) = best[end].unwrap();
            factors.push(Word::from(&w[start..end]));
            end = start;
        }
        factors.reverse();
        Some(factors)
    }

    /// C(n) by definition: no relation word is a product of fewer than n pieces.
    pub fn check_condition(&self, pres: &Presentation, n: usize) -> bool {
        pres.relation_words()
            .all(|(_, w)| self.min_factorisation(w).is_none_or(|f| f.len() >= n))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn word(p: &Presentation, s: &str) -> Word {
        p.alphabet.parse_compact(s).unwrap()
    }

    #[test]
    fn piece_queries_p2() {
        let p = presets::p2();
        assert!(is_piece(&p, &word(&p, "a")));
        assert!(is_piece(&p, &word(&p, "b")));
        assert!(!is_piece(&p, &word(&p, "e")));
        assert!(!is_piece(&p, &word(&p, "ae")));
        assert!(is_piece(&p, &Word::empty()));
    }

    #[test]
    fn max_piece_prefix_examples() {
        let p2 = presets::p2();
        assert_eq!(max_piece_prefix(&p2, &word(&p2, "aeb")), 1);
        assert_eq!(max_piece_prefix(&p2, &word(&p2, "eb")), 0);
        let p4 = presets::p4();
        assert_eq!(max_piece_prefix(&p4, &word(&p4, "abe")), 2);
        assert_eq!(max_piece_suffix(&p4, &word(&p4, "abe")), 0);
        assert_eq!(max_piece_suffix(&p4, &word(&p4, "fab")), 2);
        assert_eq!(max_piece_prefix(&p4, &word(&p4, "fab")), 0);
    }

    #[test]
    fn condition_examples() {
        let p2 = presets::p2();
        assert!(check_condition(&p2, 4));

        let bad = Presentation::from_compact("abcd", &[("abc", "dcd")]).unwrap();
        assert!(check_condition(&bad, 3));
        assert!(!check_condition(&bad, 4));
        let report = condition_report(&bad);
        assert_eq!(report.strongest(), 3);
        assert_eq!(report.certificate.unwrap().render(&bad), "dcd = d·c·d");

        let aa = Presentation::from_compact("a", &[("a", "aa")]).unwrap();
        assert!(!check_condition(&aa, 2));
        assert!(check_condition(&aa, 1));
    }

    #[test]
    fn empty_relation_word_fails_c1() {
        let p = Presentation::from_compact("ab", &[("ab", "1")]).unwrap();
        let r = condition_report(&p);
        assert_eq!(r.strongest(), 0);
        assert_eq!(r.certificate.unwrap().render(&p), "1 = ε");
    }

    #[test]
    fn no_relations_is_vacuously_c4() {
        let p = Presentation::from_compact("ab", &[]).unwrap();
        assert_eq!(condition_report(&p).strongest(), 4);
        assert!(check_condition(&p, 7));
        assert!(check_ol(&p, Ratio::new(1, 100)));
    }

    #[test]
    fn ol_examples() {
        let p2 = presets::p2();
        assert!(check_ol(&p2, Ratio::new(1, 2)));
        assert!(!check_ol(&p2, Ratio::new(1, 3)));
        assert!(check_ol(&presets::p1(), Ratio::new(1, 2)));
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!("1/2".parse::<Ratio>().unwrap(), Ratio::new(1, 2));
        assert_eq!("1".parse::<Ratio>().unwrap(), Ratio::new(1, 1));
        assert!("3/2".parse::<Ratio>().is_err());
        assert!("0/2".parse::<Ratio>().is_err());
        assert!("1/0".parse::<Ratio>().is_err());
    }

    #[test]
    fn generic_factoriser() {
        let bad = Presentation::from_compact("abcd", &[("abc", "dcd")]).unwrap();
        let set = PieceSet::new(&bad);
        assert_eq!(set.pieces(), vec![word(&bad, "c"), word(&bad, "d")]);
        assert_eq!(set.min_factorisation(&word(&bad, "dcd")).unwrap().len(), 3);
        assert!(set.min_factorisation(&word(&bad, "abc")).is_none());
        assert!(set.check_condition(&bad, 3));
        assert!(!set.check_condition(&bad, 4));
        // n ≥ 5 goes through the generic route.
        assert!(!check_condition(&bad, 5));
        assert!(check_condition(&presets::p2(), 5));
    }
}
