//! Generators, words, and read-only letter views.

use std::fmt;

/// Index of a generator in its presentation's alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(pub u32);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word in the free monoid on the alphabet. The empty word is `Word::empty()`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<GeneratorId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        Word(ids.into_iter().map(GeneratorId).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.0
    }

    pub fn concat(&self, other: &[GeneratorId]) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(other);
        Word(out)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn into_vec(self) -> Vec<GeneratorId> {
        self.0
    }
}

impl From<Vec<GeneratorId>> for Word {
    fn from(v: Vec<GeneratorId>) -> Self {
        Word(v)
    }
}

impl From<&[GeneratorId]> for Word {
    fn from(v: &[GeneratorId]) -> Self {
        Word(v.to_vec())
    }
}

impl std::ops::Deref for Word {
    type Target = [GeneratorId];

    fn deref(&self) -> &[GeneratorId] {
        &self.0
    }
}

impl std::borrow::Borrow<[GeneratorId]> for Word {
    fn borrow(&self) -> &[GeneratorId] {
        &self.0
    }
}

impl FromIterator<GeneratorId> for Word {
    fn from_iter<T: IntoIterator<Item = GeneratorId>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Random-access read view over a sequence of letters.
///
/// Lets the prefix scans run unchanged over plain slices, the solver's
/// mutable word cursors, and virtual concatenations like `p·u`.
pub trait Letters {
    fn len(&self) -> usize;

    fn at(&self, i: usize) -> GeneratorId;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True iff `pat` occurs in `self` starting at `start`.
    fn matches_at(&self, start: usize, pat: &[GeneratorId]) -> bool {
        if start + pat.len() > self.len() {
            return false;
        }
        pat.iter()
            .enumerate()
            .all(|(j, &g)| self.at(start + j) == g)
    }

    fn starts_with(&self, pat: &[GeneratorId]) -> bool {
        self.matches_at(0, pat)
    }

    fn to_word(&self) -> Word {
        (0..self.len()).map(|i| self.at(i)).collect()
    }
}

impl Letters for [GeneratorId] {
    fn len(&self) -> usize {
        <[GeneratorId]>::len(self)
    }

    fn at(&self, i: usize) -> GeneratorId {
        self[i]
    }
}

impl Letters for Word {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn at(&self, i: usize) -> GeneratorId {
        self.0[i]
    }
}

impl<L: Letters + ?Sized> Letters for &L {
    fn len(&self) -> usize {
        (**self).len()
    }

    fn at(&self, i: usize) -> GeneratorId {
        (**self).at(i)
    }
}

/// The virtual concatenation `head·tail`, without copying either side.
#[derive(Clone, Copy)]
pub struct Concat<'a, A: ?Sized, B: ?Sized> {
    pub head: &'a A,
    pub tail: &'a B,
}

impl<'a, A: Letters + ?Sized, B: Letters + ?Sized> Concat<'a, A, B> {
    pub fn new(head: &'a A, tail: &'a B) -> Self {
        Concat { head, tail }
    }
}

impl<A: Letters + ?Sized, B: Letters + ?Sized> Letters for Concat<'_, A, B> {
    fn len(&self) -> usize {
        self.head.len() + self.tail.len()
    }

    fn at(&self, i: usize) -> GeneratorId {
        let h = self.head.len();
        if i < h {
            self.head.at(i)
        } else {
            self.tail.at(i - h)
        }
    }
}

/// A word that supports O(1) amortised removal of its first letters and
/// prepending of short words, while borrowing its original body.
///
/// Letters prepended so far live in `head`, stored back to front; the
/// untouched remainder of the original word is `tail`.
#[derive(Debug, Clone)]
pub struct WordCursor<'a> {
    head: Vec<GeneratorId>,
    tail: &'a [GeneratorId],
}

impl<'a> WordCursor<'a> {
    pub fn new(word: &'a [GeneratorId]) -> Self {
        WordCursor {
            head: Vec::new(),
            tail: word,
        }
    }

    /// Remove the first `n` letters. Panics if `n > self.len()`.
    pub fn drop_prefix(&mut self, n: usize) {
        assert!(n <= Letters::len(self), "drop_prefix past end of word");
        let from_head = n.min(self.head.len());
        self.head.truncate(self.head.len() - from_head);
        self.tail = &self.tail[n - from_head..];
    }

    pub fn prepend(&mut self, w: &[GeneratorId]) {
        self.head.extend(w.iter().rev());
    }
}

impl Letters for WordCursor<'_> {
    fn len(&self) -> usize {
        self.head.len() + self.tail.len()
    }

    fn at(&self, i: usize) -> GeneratorId {
        let h = self.head.len();
        if i < h {
            self.head[h - 1 - i]
        } else {
            self.tail[i - h]
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// Length of the longest common suffix of `a` and `b`.
pub fn common_suffix_len(a: &[GeneratorId], b: &[GeneratorId]) -> usize {
    a.iter()
        .rev()
        .zip(b.iter().rev())
        .take_while(|(x, y)| x == y)
        .count()
}

/// Length of the longest common prefix of `a` and `b`.
pub fn common_prefix_len<A: Letters + ?Sized>(a: &A, b: &[GeneratorId]) -> usize {
    let n = a.len().min(b.len());
    (0..n).take_while(|&i| a.at(i) == b[i]).count()
}
