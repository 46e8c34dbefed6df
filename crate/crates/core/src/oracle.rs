//! Brute-force ground truth: breadth-first closure of a word under single
//! relation rewrites.
//!
//! Exact whenever the closure completes without hitting a cap, which is
//! always the case for length-preserving presentations given enough states.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::presentation::Presentation;
use crate::word::{GeneratorId, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_word_len: usize,
    pub max_states: usize,
    pub max_depth: Option<usize>,
}

impl OracleCaps {
    pub fn new(max_word_len: usize, max_states: usize) -> Self {
        OracleCaps {
            max_word_len,
            max_states: max_states.max(1),
            max_depth: None,
        }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.max_depth = Some(depth);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleClosure {
    /// Every word reached, with its BFS depth (minimal number of rewrites).
    pub depths: HashMap<Word, usize>,
    /// True iff no cap pruned anything.
    pub complete: bool,
    /// Greatest depth reached.
    pub frontier_depth: usize,
}

impl OracleClosure {
    pub fn contains(&self, w: &[GeneratorId]) -> bool {
        self.depths.contains_key(w)
    }

    pub fn len(&self) -> usize {
        self.depths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depths.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.depths.keys()
    }

    pub fn depth(&self, w: &[GeneratorId]) -> Option<usize> {
        self.depths.get(w).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }
}

fn replace_occurrences(
    w: &[GeneratorId],
    from: &[GeneratorId],
    to: &[GeneratorId],
    out: &mut HashSet<Word>,
) {
    if from.len() > w.len() {
        return;
    }
    for start in 0..=w.len() - from.len() {
        if w[start..start + from.len()] == *from {
            let mut next = Vec::with_capacity(w.len() - from.len() + to.len());
            next.extend_from_slice(&w[..start]);
            next.extend_from_slice(to);
            next.extend_from_slice(&w[start + from.len()..]);
            out.insert(next.into());
        }
    }
}

/// Every word obtained from `w` by replacing one occurrence of one side of a
/// relation with the other side.
pub fn rewrite_neighbors(pres: &Presentation, w: &[GeneratorId]) -> HashSet<Word> {
    let mut out = HashSet::new();
    for rel in &pres.relations {
        replace_occurrences(w, &rel.lhs, &rel.rhs, &mut out);
        replace_occurrences(w, &rel.rhs, &rel.lhs, &mut out);
    }
    out
}

/// BFS from `w` under [`rewrite_neighbors`], within `caps`.
pub fn closure(pres: &Presentation, w: &[GeneratorId], caps: OracleCaps) -> OracleClosure {
    let mut depths: HashMap<Word, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut complete = w.len() <= caps.max_word_len;
    let mut frontier_depth = 0;
    depths.insert(w.into(), 0);
    queue.push_back(Word::from(w));

    while let Some(cur) = queue.pop_front() {
        let d = depths[&cur];
        frontier_depth = frontier_depth.max(d);
        let neighbours = rewrite_neighbors(pres, &cur);
        if caps.max_depth.is_some_and(|m| d >= m) {
            if neighbours.iter().any(|n| !depths.contains_key(n)) {
                complete = false;
            }
            continue;
        }
        for n in neighbours {
            if depths.contains_key(&n) {
                continue;
            }
            if n.len() > caps.max_word_len || depths.len() >= caps.max_states {
                complete = false;
                continue;
            }
            depths.insert(n.clone(), d + 1);
            queue.push_back(n);
        }
    }
    OracleClosure {
        depths,
        complete,
        frontier_depth,
    }
}

pub fn oracle_equivalent(
    pres: &Presentation,
    u: &[GeneratorId],
    v: &[GeneratorId],
    caps: OracleCaps,
) -> Verdict {
    let c = closure(pres, u, caps);
    verdict(c.contains(v), c.complete)
}

/// Is `p·w ≡ u` for some `w`? Equivalently, does some word in the class of
/// `u` literally start with `p`.
pub fn oracle_possible_prefix(
    pres: &Presentation,
    u: &[GeneratorId],
    p: &[GeneratorId],
    caps: OracleCaps,
) -> Verdict {
    let c = closure(pres, u, caps);
    possible_prefix_in(&c, p)
}

/// [`oracle_possible_prefix`] against an already computed closure.
pub fn possible_prefix_in(c: &OracleClosure, p: &[GeneratorId]) -> Verdict {
    verdict(c.words().any(|w| w.starts_with(p)), c.complete)
}

fn verdict(found: bool, complete: bool) -> Verdict {
    match (found, complete) {
        (true, _) => Verdict::Yes,
        (false, true) => Verdict::No,
        (false, false) => Verdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn w(p: &Presentation, s: &str) -> Word {
        p.alphabet.parse_compact(s).unwrap()
    }

    fn set(p: &Presentation, words: &[&str]) -> HashSet<Word> {
        words.iter().map(|s| w(p, s)).collect()
    }

    #[test]
    fn neighbours() {
        let p1 = presets::p1();
        assert_eq!(
            rewrite_neighbors(&p1, &w(&p1, "abab")),
            set(&p1, &["cdab", "abcd"])
        );
        let p2 = presets::p2();
        assert_eq!(rewrite_neighbors(&p2, &w(&p2, "aeb")), set(&p2, &["afb"]));
        assert!(rewrite_neighbors(&p2, &w(&p2, "bb")).is_empty());
    }

    #[test]
    fn closures() {
        let p1 = presets::p1();
        let c = closure(&p1, &w(&p1, "ab"), OracleCaps::new(4, 100));
        assert!(c.complete);
        assert_eq!(
            c.words().cloned().collect::<HashSet<_>>(),
            set(&p1, &["ab", "cd"])
        );

        let c = closure(&p1, &w(&p1, "abab"), OracleCaps::new(4, 100));
        assert!(c.complete);
        assert_eq!(
            c.words().cloned().collect::<HashSet<_>>(),
            set(&p1, &["abab", "cdab", "abcd", "cdcd"])
        );
        assert_eq!(c.depth(&w(&p1, "cdcd")), Some(2));
        assert_eq!(c.frontier_depth, 2);

        let p2 = presets::p2();
        let c = closure(&p2, &w(&p2, "ae"), OracleCaps::new(4, 100));
        assert!(c.complete);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn verdicts() {
        let p1 = presets::p1();
        let caps = OracleCaps::new(8, 1000);
        assert_eq!(
            oracle_equivalent(&p1, &w(&p1, "abab"), &w(&p1, "cdcd"), caps),
            Verdict::Yes
        );
        let p2 = presets::p2();
        assert_eq!(
            oracle_equivalent(&p2, &w(&p2, "ae"), &w(&p2, "af"), caps),
            Verdict::No
        );

        assert_eq!(
            oracle_possible_prefix(&p1, &w(&p1, "ab"), &w(&p1, "c"), caps),
            Verdict::Yes
        );
        assert_eq!(
            oracle_possible_prefix(&p2, &w(&p2, "aeb"), &w(&p2, "b"), caps),
            Verdict::No
        );
        assert_eq!(
            oracle_possible_prefix(&p2, &w(&p2, "aeb"), &[], caps),
            Verdict::Yes
        );
    }

    #[test]
    fn caps_make_growing_presentations_unknown() {
        let p = Presentation::from_compact("ab", &[("ab", "aabb")]).unwrap();
        let caps = OracleCaps::new(6, 1000);
        assert_eq!(
            oracle_equivalent(&p, &w(&p, "ab"), &w(&p, "ba"), caps),
            Verdict::Unknown
        );
        let c = closure(&p, &w(&p, "ab"), caps);
        assert!(!c.complete);
        assert!(c.contains(&w(&p, "aabb")));

        let c = closure(&p, &w(&p, "ab"), OracleCaps::new(100, 1000).with_depth(1));
        assert!(!c.complete);
        assert_eq!(c.len(), 2);

        let c = closure(&p, &w(&p, "ab"), OracleCaps::new(100, 2));
        assert!(!c.complete);
        assert_eq!(c.len(), 2);
    }
}
