//! Relation-word decompositions `R = X_R·Y_R·Z_R` and the validated index the
//! solver runs against.

use thiserror::Error;

use crate::pieces::{
    condition_report, max_piece_prefix, max_piece_suffix, Certificate, ConditionReport,
};
use crate::presentation::{Presentation, RelationWordRef};
use crate::word::{GeneratorId, Letters};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("presentation is not C(3): {0}")]
    NotC3(Certificate),
    #[error("presentation is not C(4): {0}")]
    NotC4(Certificate),
}

impl IndexError {
    pub fn certificate(&self) -> &Certificate {
        match self {
            IndexError::NotC3(c) | IndexError::NotC4(c) => c,
        }
    }
}

/// Split of one relation word into maximal piece prefix X, middle word Y and
/// maximal piece suffix Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationDecomposition {
    pub word: RelationWordRef,
    pub x_len: usize,
    pub y_len: usize,
    pub z_len: usize,
    pub partner: RelationWordRef,
}

impl RelationDecomposition {
    pub fn len(&self) -> usize {
        self.x_len + self.y_len + self.z_len
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn xy_len(&self) -> usize {
        self.x_len + self.y_len
    }
}

/// Decompose every relation word. Requires C(3), so that X and Z never meet.
pub fn decompose(pres: &Presentation) -> Result<Vec<RelationDecomposition>, IndexError> {
    pres.relation_words()
        .map(|(r, w)| {
            let x = max_piece_prefix(pres, w.letters());
            let z = max_piece_suffix(pres, w);
            if x + z >= w.len() {
                let factors = if w.is_empty() {
                    vec![]
                } else if x == w.len() {
                    vec![w.clone()]
                } else {
                    vec![w[..x].into(), w[x..].into()]
                };
                return Err(IndexError::NotC3(Certificate { word: r, factors }));
            }
            Ok(RelationDecomposition {
                word: r,
                x_len: x,
                y_len: w.len() - x - z,
                z_len: z,
                partner: r.partner(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
struct TrieNode {
    children: Vec<(GeneratorId, u32)>,
    terminals: Vec<RelationWordRef>,
}

/// Trie over the words X_R·Y_R. Under C(4) no XY is a prefix of another, so
/// a walk from any position meets at most one terminal.
#[derive(Debug, Clone)]
struct XyTrie {
    nodes: Vec<TrieNode>,
}

impl XyTrie {
    fn new() -> Self {
        XyTrie {
            nodes: vec![TrieNode::default()],
        }
    }

    fn insert(&mut self, pattern: &[GeneratorId], r: RelationWordRef) {
        let mut node = 0usize;
        for &g in pattern {
            node = match self.child(node, g) {
                Some(n) => n,
                None => {
                    let id = self.nodes.len() as u32;
                    self.nodes.push(TrieNode::default());
                    let kids = &mut self.nodes[node].children;
                    let pos = kids.partition_point(|(h, _)| *h < g);
                    kids.insert(pos, (g, id));
                    id as usize
                }
            };
        }
        self.nodes[node].terminals.push(r);
    }

    fn child(&self, node: usize, g: GeneratorId) -> Option<usize> {
        let kids = &self.nodes[node].children;
        kids.binary_search_by_key(&g, |(h, _)| *h)
            .ok()
            .map(|i| kids[i].1 as usize)
    }

    /// Every relation word whose XY occurs in `w` at `start`.
    fn matches_at<L: Letters + ?Sized>(&self, w: &L, start: usize, out: &mut Vec<RelationWordRef>) {
        let mut node = 0usize;
        let mut i = start;
        loop {
            out.extend_from_slice(&self.nodes[node].terminals);
            if i >= w.len() {
                return;
            }
            match self.child(node, w.at(i)) {
                Some(n) => node = n,
                None => return,
            }
            i += 1;
        }
    }
}

/// A C(4)-validated presentation with everything the solver needs
/// precomputed. Immutable once built.
#[derive(Debug, Clone)]
pub struct PresentationIndex {
    pres: Presentation,
    decomps: Vec<RelationDecomposition>,
    conditions: ConditionReport,
    k: usize,
    lmax: usize,
    trie: XyTrie,
}

impl PresentationIndex {
    /// Validate C(4) and build the index in O(|R|²).
    pub fn new(pres: Presentation) -> Result<Self, IndexError> {
        let conditions = condition_report(&pres);
        if !conditions.satisfies(4) {
            let cert = conditions
                .certificate
                .clone()
                .expect("failing report carries a certificate");
            return Err(if conditions.satisfies(3) {
                IndexError::NotC4(cert)
            } else {
                IndexError::NotC3(cert)
            });
        }
        let decomps = decompose(&pres)?;

        // C(2) rules out repeated relation words and relations with equal sides.
        for (i, (_, a)) in pres.relation_words().enumerate() {
            for (_, b) in pres.relation_words().skip(i + 1) {
                assert_ne!(a, b, "relation word repeated in a C(2) presentation");
            }
        }

        let mut trie = XyTrie::new();
        for d in &decomps {
            let w = pres.relation_word(d.word);
            trie.insert(&w[..d.xy_len()], d.word);
        }
        let k = decomps.iter().map(|d| d.z_len).max().unwrap_or(0);
        let lmax = pres.max_relation_len();
        Ok(PresentationIndex {
            pres,
            decomps,
            conditions,
            k,
            lmax,
            trie,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn conditions(&self) -> &ConditionReport {
        &self.conditions
    }

    pub fn decompositions(&self) -> &[RelationDecomposition] {
        &self.decomps
    }

    pub fn decomposition(&self, r: RelationWordRef) -> &RelationDecomposition {
        &self.decomps[r.flat()]
    }

    /// Length of the longest maximal piece suffix.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Length of the longest relation word.
    pub fn lmax(&self) -> usize {
        self.lmax
    }

    /// Upper bound on solver iterations for a first argument of length `n`.
    pub fn recursion_bound(&self, n: usize) -> usize {
        (self.k + 2) * n + 1
    }

    pub fn word(&self, r: RelationWordRef) -> &[GeneratorId] {
        self.pres.relation_word(r)
    }

    pub fn x(&self, r: RelationWordRef) -> &[GeneratorId] {
        let d = self.decomposition(r);
        &self.word(r)[..d.x_len]
    }

    pub fn y(&self, r: RelationWordRef) -> &[GeneratorId] {
        let d = self.decomposition(r);
        &self.word(r)[d.x_len..d.xy_len()]
    }

    pub fn z(&self, r: RelationWordRef) -> &[GeneratorId] {
        let d = self.decomposition(r);
        &self.word(r)[d.xy_len()..]
    }

    pub fn xy(&self, r: RelationWordRef) -> &[GeneratorId] {
        let d = self.decomposition(r);
        &self.word(r)[..d.xy_len()]
    }

    pub(crate) fn xy_matches_at<L: Letters + ?Sized>(
        &self,
        w: &L,
        start: usize,
        out: &mut Vec<RelationWordRef>,
    ) {
        self.trie.matches_at(w, start, out)
    }

    /// Distinct maximal piece suffixes, including ε when some Z_R is empty.
    pub fn z_words(&self) -> Vec<&[GeneratorId]> {
        let mut zs: Vec<&[GeneratorId]> = self.decomps.iter().map(|d| self.z(d.word)).collect();
        zs.sort();
        zs.dedup();
        zs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieces::is_piece;
    use crate::presets;

    fn parts(idx: &PresentationIndex, i: usize) -> (String, String, String) {
        let r = RelationWordRef::from_flat(i);
        let p = idx.presentation();
        (p.render(idx.x(r)), p.render(idx.y(r)), p.render(idx.z(r)))
    }

    #[test]
    fn decomposes_p2() {
        let idx = PresentationIndex::new(presets::p2()).unwrap();
        assert_eq!(parts(&idx, 0), ("a".into(), "e".into(), "b".into()));
        assert_eq!(parts(&idx, 1), ("a".into(), "f".into(), "b".into()));
        assert_eq!(
            idx.decompositions()[0].partner,
            RelationWordRef::from_flat(1)
        );
        assert_eq!(idx.k(), 1);
        assert_eq!(idx.lmax(), 3);
    }

    #[test]
    fn decomposes_p4() {
        let idx = PresentationIndex::new(presets::p4()).unwrap();
        assert_eq!(parts(&idx, 0), ("ab".into(), "e".into(), "1".into()));
        assert_eq!(parts(&idx, 1), ("1".into(), "f".into(), "ab".into()));
        assert_eq!(idx.k(), 2);
    }

    #[test]
    fn decomposes_p1() {
        let idx = PresentationIndex::new(presets::p1()).unwrap();
        assert_eq!(parts(&idx, 0), ("1".into(), "ab".into(), "1".into()));
        assert_eq!(idx.k(), 0);
    }

    #[test]
    fn rejects_non_c4() {
        let err = PresentationIndex::new(presets::not_c4()).unwrap_err();
        assert!(matches!(err, IndexError::NotC4(_)));
        assert_eq!(err.certificate().render(&presets::not_c4()), "dcd = d·c·d");
        // decompose alone only needs C(3).
        assert_eq!(decompose(&presets::not_c4()).unwrap().len(), 2);
    }

    #[test]
    fn rejects_non_c3() {
        let p = crate::Presentation::from_compact("ab", &[("ab", "ba")]).unwrap();
        assert!(matches!(decompose(&p), Err(IndexError::NotC3(_))));
        assert!(matches!(
            PresentationIndex::new(p),
            Err(IndexError::NotC3(_))
        ));
    }

    #[test]
    fn empty_presentation_index() {
        let p = crate::Presentation::from_compact("ab", &[]).unwrap();
        let idx = PresentationIndex::new(p).unwrap();
        assert_eq!((idx.k(), idx.lmax()), (0, 0));
        assert!(idx.decompositions().is_empty());
    }

    #[test]
    fn decomposition_invariants_on_presets() {
        for p in [presets::p1(), presets::p2(), presets::p4()] {
            let idx = PresentationIndex::new(p.clone()).unwrap();
            for d in idx.decompositions() {
                let w = idx.word(d.word);
                assert_eq!(d.len(), w.len());
                assert!(d.y_len >= 1);
                assert!(is_piece(&p, idx.x(d.word)));
                assert!(!is_piece(&p, &w[..d.x_len + 1]));
                assert!(is_piece(&p, idx.z(d.word)));
                assert!(!is_piece(&p, &w[w.len() - d.z_len - 1..]));
                assert!(!is_piece(&p, idx.y(d.word)));
            }
        }
    }
}
