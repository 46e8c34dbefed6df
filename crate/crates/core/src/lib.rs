//! Decision procedures for monoids given by finite presentations that satisfy
//! the small overlap condition C(4).
//!
//! The central entry point is [`equivalent`], which decides the word problem
//! in time linear in the shorter input word, and its generalisation
//! [`wp_prefix`], which also decides whether a given piece is a possible
//! prefix. Supporting modules compute pieces and the `X·Y·Z` decomposition of
//! relation words ([`pieces`], [`index`]), scan words for clean overlap
//! prefixes ([`prefix`]), and provide a brute-force rewriting oracle
//! ([`oracle`]) for differential testing.
//!
//! ```
//! use overlap_core::{equivalent, presets, PresentationIndex};
//!
//! let idx = PresentationIndex::new(presets::p2()).unwrap();
//! let a = &idx.presentation().alphabet;
//! let u = a.parse_word("a e b b").unwrap();
//! let v = a.parse_word("a f b b").unwrap();
//! assert!(equivalent(&idx, &u, &v).unwrap());
//! ```

pub mod gen;
pub mod index;
pub mod oracle;
pub mod pieces;
pub mod prefix;
pub mod presentation;
pub mod presets;
pub mod solver;
pub mod word;

pub use index::{decompose, IndexError, PresentationIndex, RelationDecomposition};
pub use oracle::{
    closure, oracle_equivalent, oracle_possible_prefix, rewrite_neighbors, OracleCaps,
    OracleClosure, Verdict,
};
pub use pieces::{
    check_condition, check_ol, condition_report, is_piece, max_piece_prefix, max_piece_suffix,
    Certificate, ConditionReport, PieceSet, Ratio,
};
pub use prefix::{
    clean_overlap_prefix_xy, is_p_active, maximal_common_suffix, overlap_chain,
    shortest_relation_prefix, xy_occurrence_at, AmbiguityViolation, CleanXY, OverlapChain,
    RelationPrefixHit, SuffixSplit,
};
pub use presentation::{
    parse_presentation, Alphabet, ParseError, ParseErrorKind, Presentation, Relation,
    RelationWordRef, Side,
};
pub use solver::{
    equivalent, solve, uniform_solve, wp_prefix, wp_prefix_traced, Line, SolveStats, SolverError,
    TraceStep, UniformError, WpOutcome, WpQuery,
};
pub use word::{GeneratorId, Letters, Word, WordCursor};
