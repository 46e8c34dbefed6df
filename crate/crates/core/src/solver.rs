//! The WP-Prefix decision procedure: given words `u`, `v` and a piece `p`,
//! decide whether `u ≡ v` and `p` is a possible prefix of `u`.
//!
//! Every recursive call in the procedure is a tail call, so it runs as a
//! loop over two [`WordCursor`]s. Each iteration reads and rewrites only a
//! prefix of length O(Lmax), which gives time linear in the shorter word.

use std::fmt;

use thiserror::Error;

use crate::index::{IndexError, PresentationIndex};
use crate::pieces::is_piece;
use crate::prefix::{clean_overlap_prefix_xy, is_p_active, AmbiguityViolation};
use crate::presentation::{parse_presentation, ParseError, ParseErrorKind};
use crate::word::{common_suffix_len, GeneratorId, Letters, Word, WordCursor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("prefix argument is not a piece")]
    PieceExpected,
    #[error(transparent)]
    Ambiguity(#[from] AmbiguityViolation),
}

/// Which branch of the procedure an iteration took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    /// `u = v = p = ε`: YES.
    AllEmpty,
    /// Exactly one of `u`, `v` is ε, or both are but `p` is not: NO.
    SomeEmpty,
    /// No clean XY prefix; first letters agree, strip them.
    B,
    /// No clean XY prefix and `u`, `v` start with different letters: NO.
    BLettersDiffer,
    /// No clean XY prefix and `u`, `p` start with different letters: NO.
    BPrefixDiffers,
    /// Clean XY prefix but `p` is a prefix of neither X nor X̄: NO.
    PNotPrefix,
    /// Clean XY prefix but `v` starts with neither XY nor X̄Ȳ: NO.
    VStartsWrong,
    C1a,
    C1b,
    C2a,
    C2b,
    C3a,
    C3b,
    C4,
    C5,
    C6,
    /// Case 6 shape but `u'`/`v'` do not start with `z₁`/`z₂`: NO.
    C6No,
}

impl Line {
    pub const ALL: [Line; 17] = [
        Line::AllEmpty,
        Line::SomeEmpty,
        Line::B,
        Line::BLettersDiffer,
        Line::BPrefixDiffers,
        Line::PNotPrefix,
        Line::VStartsWrong,
        Line::C1a,
        Line::C1b,
        Line::C2a,
        Line::C2b,
        Line::C3a,
        Line::C3b,
        Line::C4,
        Line::C5,
        Line::C6,
        Line::C6No,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Line::AllEmpty => "A:yes",
            Line::SomeEmpty => "A:no",
            Line::B => "B",
            Line::BLettersDiffer => "B:uv-differ",
            Line::BPrefixDiffers => "B:up-differ",
            Line::PNotPrefix => "C:p-not-prefix",
            Line::VStartsWrong => "C:v-starts-wrong",
            Line::C1a => "C1a",
            Line::C1b => "C1b",
            Line::C2a => "C2a",
            Line::C2b => "C2b",
            Line::C3a => "C3a",
            Line::C3b => "C3b",
            Line::C4 => "C4",
            Line::C5 => "C5",
            Line::C6 => "C6",
            Line::C6No => "C6:no",
        }
    }

    pub fn is_terminal(self) -> bool {
        matches!(
            self,
            Line::AllEmpty
                | Line::SomeEmpty
                | Line::BLettersDiffer
                | Line::BPrefixDiffers
                | Line::PNotPrefix
                | Line::VStartsWrong
                | Line::C6No
        )
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpQuery {
    pub u: Word,
    pub v: Word,
    pub p: Word,
}

impl WpQuery {
    pub fn new(u: Word, v: Word, p: Word) -> Self {
        WpQuery { u, v, p }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Invocations of the procedure, counting the initial one.
    pub recursive_calls: usize,
    /// `(k+2)·|u₀|+1` for the first argument after the initial swap.
    pub bound: usize,
    histogram: [usize; Line::ALL.len()],
}

impl SolveStats {
    pub fn count(&self, line: Line) -> usize {
        self.histogram[line as usize]
    }

    /// Non-zero histogram entries in declaration order.
    pub fn histogram(&self) -> Vec<(Line, usize)> {
        Line::ALL
            .iter()
            .map(|&l| (l, self.count(l)))
            .filter(|&(_, c)| c > 0)
            .collect()
    }

    pub fn within_bound(&self) -> bool {
        self.recursive_calls <= self.bound
    }
}

/// State on entry to one iteration, and the branch it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub line: Line,
    pub u_len: usize,
    pub v_len: usize,
    pub p: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpOutcome {
    pub answer: bool,
    pub stats: SolveStats,
    pub trace: Option<Vec<TraceStep>>,
}

/// Decide `q.u ≡ q.v` and `q.p` is a possible prefix of `q.u`.
pub fn wp_prefix(idx: &PresentationIndex, q: &WpQuery) -> Result<WpOutcome, SolverError> {
    solve(idx, &q.u, &q.v, &q.p, false)
}

/// As [`wp_prefix`], recording a [`TraceStep`] per iteration.
pub fn wp_prefix_traced(idx: &PresentationIndex, q: &WpQuery) -> Result<WpOutcome, SolverError> {
    solve(idx, &q.u, &q.v, &q.p, true)
}

/// The word problem: `u ≡ v`?
pub fn equivalent(
    idx: &PresentationIndex,
    u: &[GeneratorId],
    v: &[GeneratorId],
) -> Result<bool, SolverError> {
    Ok(solve(idx, u, v, &[], false)?.answer)
}

/// Core loop. Swaps the words first so that `u` is the shorter; the answer
/// is unchanged because `p` is a possible prefix of `u` iff it is one of
/// any word equivalent to `u`.
pub fn solve<'a>(
    idx: &'a PresentationIndex,
    u: &'a [GeneratorId],
    v: &'a [GeneratorId],
    p: &'a [GeneratorId],
    trace: bool,
) -> Result<WpOutcome, SolverError> {
    if !is_piece(idx.presentation(), p) {
        return Err(SolverError::PieceExpected);
    }
    let (u, v) = if v.len() < u.len() { (v, u) } else { (u, v) };
    let mut stats = SolveStats {
        bound: idx.recursion_bound(u.len()),
        ..SolveStats::default()
    };
    let mut steps = trace.then(Vec::new);
    let mut u = WordCursor::new(u);
    let mut v = WordCursor::new(v);
    let mut p: &'a [GeneratorId] = p;

    let answer = loop {
        stats.recursive_calls += 1;
        let line = step(idx, &mut u, &mut v, &mut p, steps.as_mut())?;
        stats.histogram[line as usize] += 1;
        if line.is_terminal() {
            break line == Line::AllEmpty;
        }
    };
    Ok(WpOutcome {
        answer,
        stats,
        trace: steps,
    })
}

/// One iteration: inspect bounded prefixes, then either finish or rewrite
/// `(u, v, p)` in place for the next round.
fn step<'a>(
    idx: &'a PresentationIndex,
    u: &mut WordCursor<'a>,
    v: &mut WordCursor<'a>,
    p: &mut &'a [GeneratorId],
    trace: Option<&mut Vec<TraceStep>>,
) -> Result<Line, SolverError> {
    let entry = trace.map(|t| (t, u.len(), v.len(), Word::from(*p)));
    let line = step_inner(idx, u, v, p)?;
    if let Some((t, u_len, v_len, p)) = entry {
        t.push(TraceStep {
            line,
            u_len,
            v_len,
            p,
        });
    }
    Ok(line)
}

fn step_inner<'a>(
    idx: &'a PresentationIndex,
    u: &mut WordCursor<'a>,
    v: &mut WordCursor<'a>,
    p: &mut &'a [GeneratorId],
) -> Result<Line, SolverError> {
    if u.is_empty() || v.is_empty() {
        return Ok(if u.is_empty() && v.is_empty() && p.is_empty() {
            Line::AllEmpty
        } else {
            Line::SomeEmpty
        });
    }

    let Some(clean) = clean_overlap_prefix_xy(idx, u)? else {
        let first = u.at(0);
        if first != v.at(0) {
            return Ok(Line::BLettersDiffer);
        }
        if p.first().is_some_and(|&g| g != first) {
            return Ok(Line::BPrefixDiffers);
        }
        u.drop_prefix(1);
        v.drop_prefix(1);
        if !p.is_empty() {
            *p = &p[1..];
        }
        return Ok(Line::B);
    };

    let r = clean.word;
    let rb = r.partner();
    let (x, xy, z) = (idx.x(r), idx.xy(r), idx.z(r));
    let (xb, xyb, zb) = (idx.x(rb), idx.xy(rb), idx.z(rb));

    if !x.starts_with(p) && !xb.starts_with(p) {
        return Ok(Line::PNotPrefix);
    }
    let v_xy = v.starts_with(xy);
    if !v_xy && !v.starts_with(xyb) {
        return Ok(Line::VStartsWrong);
    }
    let u_xyz = u.matches_at(xy.len(), z);

    let line = if v_xy {
        if u_xyz && v.matches_at(xy.len(), z) {
            // u = XYZu'', v = XYZv''
            u.drop_prefix(xy.len() + z.len());
            v.drop_prefix(xy.len() + z.len());
            *p = &[];
            if is_p_active(idx, u, zb)? {
                u.prepend(zb);
                v.prepend(zb);
                Line::C1a
            } else {
                u.prepend(z);
                v.prepend(z);
                Line::C1b
            }
        } else {
            // u = XYu', v = XYv', Z not a prefix of both
            u.drop_prefix(xy.len());
            v.drop_prefix(xy.len());
            if x.starts_with(p) {
                *p = &[];
                Line::C2a
            } else {
                *p = z;
                Line::C2b
            }
        }
    } else {
        let v_full = v.matches_at(xyb.len(), zb);
        match (u_xyz, v_full) {
            (true, true) => {
                // u = XYZu'', v = X̄ȲZ̄v''; recurse on Z̄u'', Z̄v'' or Zu'', Zv''
                u.drop_prefix(xy.len() + z.len());
                v.drop_prefix(xyb.len() + zb.len());
                *p = &[];
                if is_p_active(idx, u, zb)? {
                    u.prepend(zb);
                    v.prepend(zb);
                    Line::C3a
                } else {
                    u.prepend(z);
                    v.prepend(z);
                    Line::C3b
                }
            }
            (false, true) => {
                // u = XYu', v = X̄ȲZ̄v''; recurse on u', Zv''
                u.drop_prefix(xy.len());
                v.drop_prefix(xyb.len() + zb.len());
                v.prepend(z);
                *p = &[];
                Line::C4
            }
            (true, false) => {
                // u = XYZu'', v = X̄Ȳv'; recurse on Z̄u'', v'
                u.drop_prefix(xy.len() + z.len());
                u.prepend(zb);
                v.drop_prefix(xyb.len());
                *p = &[];
                Line::C5
            }
            (false, false) => {
                // u = XYu', v = X̄Ȳv'; Z = z₁z, Z̄ = z₂z
                let common = common_suffix_len(z, zb);
                let z1 = &z[..z.len() - common];
                let z2 = &zb[..zb.len() - common];
                u.drop_prefix(xy.len());
                v.drop_prefix(xyb.len());
                if !u.starts_with(z1) || !v.starts_with(z2) {
                    return Ok(Line::C6No);
                }
                u.drop_prefix(z1.len());
                v.drop_prefix(z2.len());
                *p = &z[z.len() - common..];
                Line::C6
            }
        }
    };
    Ok(line)
}

#[derive(Debug, Error)]
pub enum UniformError {
    #[error("presentation: {0}")]
    Parse(#[from] ParseError),
    #[error("word: {0}")]
    Word(ParseErrorKind),
    #[error("{0}")]
    NotC4(#[from] IndexError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Uniform word problem: parse and validate the presentation, build the
/// index, then decide `u ≡ v`. O(|R|²·min(|u|,|v|)).
pub fn uniform_solve(text: &str, u_text: &str, v_text: &str) -> Result<bool, UniformError> {
    let pres = parse_presentation(text)?;
    let u = pres
        .alphabet
        .parse_word(u_text)
        .map_err(UniformError::Word)?;
    let v = pres
        .alphabet
        .parse_word(v_text)
        .map_err(UniformError::Word)?;
    let idx = PresentationIndex::new(pres)?;
    Ok(equivalent(&idx, &u, &v)?)
}
