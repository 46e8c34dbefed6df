//! Relation prefixes, overlap prefixes, clean overlap prefixes and activity.
//!
//! Every scan here reads a bounded window from the front of the word: the
//! solver relies on each step costing O(Lmax) regardless of word length.
//! [`reference`] holds unbounded, trie-free versions for cross-checking.

use thiserror::Error;

use crate::index::PresentationIndex;
use crate::presentation::RelationWordRef;
use crate::word::{common_suffix_len, Concat, GeneratorId, Letters, Word};

/// Two relation words matched where C(4) says only one can. Reaching this
/// means the index was built from a presentation that is not really C(4).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ambiguous relation prefix ending at {end}: {first:?} vs {second:?}")]
pub struct AmbiguityViolation {
    pub end: usize,
    pub first: RelationWordRef,
    pub second: RelationWordRef,
}

/// An occurrence of X_R·Y_R in a word, occupying `[xy_start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationPrefixHit {
    pub xy_start: usize,
    pub word: RelationWordRef,
    pub end: usize,
}

/// The factorisation `b·X₁Y₁'·X₂Y₂'·…·XₙYₙ` of an overlap prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapChain {
    pub b_len: usize,
    /// `(relation word, letters of its Y used)`; only the last link uses all of Y.
    pub links: Vec<(RelationWordRef, usize)>,
}

impl OverlapChain {
    /// Start offsets of each link's X within the subject word.
    pub fn link_starts(&self, idx: &PresentationIndex) -> Vec<usize> {
        let mut pos = self.b_len;
        self.links
            .iter()
            .map(|&(r, y_used)| {
                let start = pos;
                pos += idx.decomposition(r).x_len + y_used;
                start
            })
            .collect()
    }

    /// Total length of the prefix the chain spans.
    pub fn span(&self, idx: &PresentationIndex) -> usize {
        self.b_len
            + self
                .links
                .iter()
                .map(|&(r, y)| idx.decomposition(r).x_len + y)
                .sum::<usize>()
    }
}

/// A word of the form `X_R·Y_R·u'` where `X_R·Y_R` is a clean overlap prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CleanXY {
    pub word: RelationWordRef,
    pub z_is_empty: bool,
}

/// `Z = z1·z` and `Zbar = z2·z` with `z` the longest common suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixSplit {
    pub z: Word,
    pub z1: Word,
    pub z2: Word,
}

fn collect_single(
    idx: &PresentationIndex,
    w: &(impl Letters + ?Sized),
    start: usize,
    buf: &mut Vec<RelationWordRef>,
) -> Result<Option<RelationPrefixHit>, AmbiguityViolation> {
    buf.clear();
    idx.xy_matches_at(w, start, buf);
    let hit = |r: RelationWordRef| RelationPrefixHit {
        xy_start: start,
        word: r,
        end: start + idx.decomposition(r).xy_len(),
    };
    match buf.as_slice() {
        [] => Ok(None),
        [r] => Ok(Some(hit(*r))),
        [a, b, ..] => Err(AmbiguityViolation {
            end: hit(*a).end,
            first: *a,
            second: *b,
        }),
    }
}

/// The relation word whose X·Y occurs in `w` at position `i`, if any.
pub fn xy_occurrence_at<L: Letters + ?Sized>(
    idx: &PresentationIndex,
    w: &L,
    i: usize,
) -> Result<Option<RelationPrefixHit>, AmbiguityViolation> {
    collect_single(idx, w, i, &mut Vec::new())
}

/// The relation prefix `a·X·Y` of `w` of least total length. With a
/// `window`, only prefixes of length ≤ window are considered.
pub fn shortest_relation_prefix<L: Letters + ?Sized>(
    idx: &PresentationIndex,
    w: &L,
    window: Option<usize>,
) -> Result<Option<RelationPrefixHit>, AmbiguityViolation> {
    let limit = window.unwrap_or(usize::MAX);
    let mut buf = Vec::new();
    let mut best: Option<RelationPrefixHit> = None;
    let mut start = 0;
    // Any hit starting at or after best.end ends strictly later.
    while start < w.len() && start < limit && best.is_none_or(|b| start < b.end) {
        if let Some(h) = collect_single(idx, w, start, &mut buf)? {
            if h.end <= limit {
                match best {
                    Some(b) if b.end == h.end => {
                        return Err(AmbiguityViolation {
                            end: h.end,
                            first: b.word,
                            second: h.word,
                        })
                    }
                    Some(b) if b.end < h.end => {}
                    _ => best = Some(h),
                }
            }
        }
        start += 1;
    }
    Ok(best)
}

/// If `w = X_R·Y_R·w'` with `X_R·Y_R` a clean overlap prefix, the R.
///
/// Reads at most `|X_R·Y_R| + Lmax` letters.
pub fn clean_overlap_prefix_xy<L: Letters + ?Sized>(
    idx: &PresentationIndex,
    w: &L,
) -> Result<Option<CleanXY>, AmbiguityViolation> {
    let mut buf = Vec::new();
    let Some(hit) = collect_single(idx, w, 0, &mut buf)? else {
        return Ok(None);
    };
    let d = idx.decomposition(hit.word);
    for j in d.x_len + 1..d.xy_len() {
        if collect_single(idx, w, j, &mut buf)?.is_some() {
            return Ok(None);
        }
    }
    Ok(Some(CleanXY {
        word: hit.word,
        z_is_empty: d.z_len == 0,
    }))
}

/// Whether `u` is `p`-active: the shortest relation prefix of `p·u` is not
/// `p` followed by the shortest relation prefix of `u`.
///
/// When neither `u` nor `p·u` has a relation prefix, `u` is `p`-inactive.
pub fn is_p_active<L: Letters + ?Sized>(
    idx: &PresentationIndex,
    u: &L,
    p: &[GeneratorId],
) -> Result<bool, AmbiguityViolation> {
    let pu = Concat::new(p, u);
    let mut buf = Vec::new();
    let mut overlap: Option<RelationPrefixHit> = None;
    for start in 0..p.len() {
        if let Some(h) = collect_single(idx, &pu, start, &mut buf)? {
            match overlap {
                Some(o) if o.end == h.end => {
                    return Err(AmbiguityViolation {
                        end: h.end,
                        first: o.word,
                        second: h.word,
                    })
                }
                Some(o) if o.end < h.end => {}
                _ => overlap = Some(h),
            }
        }
    }
    let Some(o) = overlap else {
        return Ok(false);
    };
    // o.end - |p| < Lmax, so this window stays bounded.
    let reach = o.end - p.len();
    match shortest_relation_prefix(idx, u, Some(reach))? {
        Some(h) if h.end == reach => Err(AmbiguityViolation {
            end: o.end,
            first: o.word,
            second: h.word,
        }),
        Some(_) => Ok(false),
        None => Ok(true),
    }
}

/// Split `z` and `zbar` around their longest common suffix.
pub fn maximal_common_suffix(z: &[GeneratorId], zbar: &[GeneratorId]) -> SuffixSplit {
    let n = common_suffix_len(z, zbar);
    SuffixSplit {
        z: z[z.len() - n..].into(),
        z1: z[..z.len() - n].into(),
        z2: zbar[..zbar.len() - n].into(),
    }
}

/// Factorise the shortest relation prefix of `w` as an overlap prefix and
/// extend it link by link until it is clean. `None` if `w` has no relation
/// prefix. Diagnostic only; the solver never builds chains.
pub fn overlap_chain<L: Letters + ?Sized>(
    idx: &PresentationIndex,
    w: &L,
) -> Result<Option<OverlapChain>, AmbiguityViolation> {
    let Some(first) = shortest_relation_prefix(idx, w, None)? else {
        return Ok(None);
    };
    let mut buf = Vec::new();
    let mut chain = OverlapChain {
        b_len: first.xy_start,
        links: vec![(first.word, idx.decomposition(first.word).y_len)],
    };
    let mut start = first.xy_start;
    loop {
        let (r, _) = *chain.links.last().unwrap();
        let d = idx.decomposition(r);
        let next = (start + d.x_len + 1..start + d.xy_len())
            .find_map(|j| collect_single(idx, w, j, &mut buf).transpose());
        match next {
            None => return Ok(Some(chain)),
            Some(Err(e)) => return Err(e),
            Some(Ok(h)) => {
                chain.links.last_mut().unwrap().1 = h.xy_start - start - d.x_len;
                chain.links.push((h.word, idx.decomposition(h.word).y_len));
                start = h.xy_start;
            }
        }
    }
}

/// Unbounded, trie-free counterparts of the scans above, matching every
/// relation word's XY letter by letter at every position.
pub mod reference {
    use super::*;

    fn naive_hits(
        idx: &PresentationIndex,
        w: &[GeneratorId],
        start: usize,
    ) -> Vec<RelationWordRef> {
        idx.decompositions()
            .iter()
            .filter(|d| w[start..].starts_with(idx.xy(d.word)))
            .map(|d| d.word)
            .collect()
    }

    fn all_hits(idx: &PresentationIndex, w: &[GeneratorId]) -> Vec<RelationPrefixHit> {
        (0..w.len())
            .flat_map(|s| {
                naive_hits(idx, w, s)
                    .into_iter()
                    .map(move |r| RelationPrefixHit {
                        xy_start: s,
                        word: r,
                        end: s + idx.xy(r).len(),
                    })
            })
            .collect()
    }

    pub fn shortest_relation_prefix(
        idx: &PresentationIndex,
        w: &[GeneratorId],
    ) -> Result<Option<RelationPrefixHit>, AmbiguityViolation> {
        let hits = all_hits(idx, w);
        let Some(min_end) = hits.iter().map(|h| h.end).min() else {
            return Ok(None);
        };
        let at_min: Vec<_> = hits.iter().filter(|h| h.end == min_end).collect();
        if at_min.len() > 1 {
            return Err(AmbiguityViolation {
                end: min_end,
                first: at_min[0].word,
                second: at_min[1].word,
            });
        }
        Ok(Some(*at_min[0]))
    }

    pub fn clean_overlap_prefix_xy(
        idx: &PresentationIndex,
        w: &[GeneratorId],
    ) -> Result<Option<CleanXY>, AmbiguityViolation> {
        let at0 = naive_hits(idx, w, 0);
        let r = match at0.as_slice() {
            [] => return Ok(None),
            [r] => *r,
            [a, b, ..] => {
                return Err(AmbiguityViolation {
                    end: idx.xy(*a).len(),
                    first: *a,
                    second: *b,
                })
            }
        };
        let x = idx.x(r).len();
        let xy = idx.xy(r).len();
        let dirty = all_hits(idx, w)
            .iter()
            .any(|h| h.xy_start > x && h.xy_start < xy);
        Ok((!dirty).then_some(CleanXY {
            word: r,
            z_is_empty: idx.z(r).is_empty(),
        }))
    }

    pub fn is_p_active(
        idx: &PresentationIndex,
        u: &[GeneratorId],
        p: &[GeneratorId],
    ) -> Result<bool, AmbiguityViolation> {
        let pu = Word::from(p).concat(u);
        let whole = shortest_relation_prefix(idx, &pu)?;
        let shifted = shortest_relation_prefix(idx, u)?.map(|h| RelationPrefixHit {
            xy_start: h.xy_start + p.len(),
            word: h.word,
            end: h.end + p.len(),
        });
        Ok(whole != shifted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn setup(p: crate::Presentation) -> PresentationIndex {
        PresentationIndex::new(p).unwrap()
    }

    fn w(idx: &PresentationIndex, s: &str) -> Word {
        idx.presentation().alphabet.parse_compact(s).unwrap()
    }

    fn rendered(idx: &PresentationIndex, r: RelationWordRef) -> String {
        idx.presentation().render(idx.word(r))
    }

    #[test]
    fn xy_occurrences() {
        let p2 = setup(presets::p2());
        let h = xy_occurrence_at(&p2, &w(&p2, "aeb"), 0).unwrap().unwrap();
        assert_eq!(rendered(&p2, h.word), "aeb");
        assert_eq!(h.end, 2);
        assert!(xy_occurrence_at(&p2, &w(&p2, "baeb"), 0).unwrap().is_none());

        let p4 = setup(presets::p4());
        let h = xy_occurrence_at(&p4, &w(&p4, "bfab"), 1).unwrap().unwrap();
        assert_eq!(rendered(&p4, h.word), "fab");
        assert_eq!(h.end, 2);
    }

    #[test]
    fn shortest_relation_prefixes() {
        let p2 = setup(presets::p2());
        let h = shortest_relation_prefix(&p2, &w(&p2, "baeb"), None)
            .unwrap()
            .unwrap();
        assert_eq!((h.xy_start, h.end), (1, 3));
        assert!(shortest_relation_prefix(&p2, &w(&p2, "bb"), None)
            .unwrap()
            .is_none());
        assert!(shortest_relation_prefix(&p2, &w(&p2, "baeb"), Some(2))
            .unwrap()
            .is_none());

        let p4 = setup(presets::p4());
        let h = shortest_relation_prefix(&p4, &w(&p4, "aabe"), None)
            .unwrap()
            .unwrap();
        assert_eq!((h.xy_start, h.end), (1, 4));
        assert_eq!(rendered(&p4, h.word), "abe");
    }

    #[test]
    fn clean_prefixes() {
        let p2 = setup(presets::p2());
        let c = clean_overlap_prefix_xy(&p2, &w(&p2, "aeb"))
            .unwrap()
            .unwrap();
        assert_eq!(rendered(&p2, c.word), "aeb");
        assert!(!c.z_is_empty);
        assert!(clean_overlap_prefix_xy(&p2, &w(&p2, "eab"))
            .unwrap()
            .is_none());

        let p4 = setup(presets::p4());
        let c = clean_overlap_prefix_xy(&p4, &w(&p4, "abe"))
            .unwrap()
            .unwrap();
        assert_eq!(rendered(&p4, c.word), "abe");
        assert!(c.z_is_empty);
    }

    /// ⟨… | abcd = stuv, bcxy = pqrw, dzk = mno⟩: X·Y of "bcxy" can start
    /// one letter into Y = "abc" of "abcd".
    fn overlapping() -> PresentationIndex {
        setup(
            crate::Presentation::from_compact(
                "abcdxystuvpqrwzkmno",
                &[("abcd", "stuv"), ("bcxy", "pqrw"), ("dzk", "mno")],
            )
            .unwrap(),
        )
    }

    #[test]
    fn unclean_prefix() {
        let idx = overlapping();
        let u = w(&idx, "abcxy");
        assert!(clean_overlap_prefix_xy(&idx, &u).unwrap().is_none());
        assert!(reference::clean_overlap_prefix_xy(&idx, &u)
            .unwrap()
            .is_none());
        // Without the overlapping continuation the same prefix is clean.
        let c = clean_overlap_prefix_xy(&idx, &w(&idx, "abcd"))
            .unwrap()
            .unwrap();
        assert_eq!(rendered(&idx, c.word), "abcd");
    }

    #[test]
    fn activity_examples() {
        let p4 = setup(presets::p4());
        assert!(is_p_active(&p4, &w(&p4, "e"), &w(&p4, "ab")).unwrap());

        let p2 = setup(presets::p2());
        assert!(!is_p_active(&p2, &w(&p2, "eb"), &w(&p2, "b")).unwrap());
        assert!(!is_p_active(&p2, &w(&p2, "aeb"), &w(&p2, "b")).unwrap());
        assert!(!is_p_active(&p2, &w(&p2, "aeb"), &[]).unwrap());
    }

    #[test]
    fn suffix_splits() {
        let p2 = setup(presets::p2());
        let s = maximal_common_suffix(&w(&p2, "b"), &w(&p2, "b"));
        assert_eq!(
            (s.z, s.z1, s.z2),
            (w(&p2, "b"), Word::empty(), Word::empty())
        );
        let s = maximal_common_suffix(&w(&p2, "ab"), &w(&p2, "b"));
        assert_eq!((s.z, s.z1, s.z2), (w(&p2, "b"), w(&p2, "a"), Word::empty()));
        let s = maximal_common_suffix(&w(&p2, "a"), &w(&p2, "b"));
        assert_eq!((s.z, s.z1, s.z2), (Word::empty(), w(&p2, "a"), w(&p2, "b")));
    }

    #[test]
    fn chains() {
        let p2 = setup(presets::p2());
        let c = overlap_chain(&p2, &w(&p2, "baeb")).unwrap().unwrap();
        assert_eq!(c.b_len, 1);
        assert_eq!(c.links.len(), 1);
        assert_eq!(rendered(&p2, c.links[0].0), "aeb");
        assert_eq!(c.links[0].1, 1);
        assert!(overlap_chain(&p2, &w(&p2, "bb")).unwrap().is_none());

        let p1 = setup(presets::p1());
        let c = overlap_chain(&p1, &w(&p1, "abab")).unwrap().unwrap();
        assert_eq!(c.b_len, 0);
        assert_eq!(c.links.len(), 1);
        assert_eq!(rendered(&p1, c.links[0].0), "ab");
        assert_eq!(c.links[0].1, 2);
    }

    #[test]
    fn chain_extends_through_unclean_prefix() {
        let idx = overlapping();
        let c = overlap_chain(&idx, &w(&idx, "abcxyd")).unwrap().unwrap();
        let links: Vec<(String, usize)> = c
            .links
            .iter()
            .map(|&(r, y)| (rendered(&idx, r), y))
            .collect();
        assert_eq!(
            links,
            vec![("abcd".to_string(), 1), ("bcxy".to_string(), 2)]
        );
        assert_eq!(c.b_len, 0);
        assert_eq!(c.span(&idx), 5);
        assert_eq!(c.link_starts(&idx), vec![0, 1]);
    }
}
