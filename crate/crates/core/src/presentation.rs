//! Finite monoid presentations and their text format.
//!
//! Grammar, one directive per line:
//!
//! ```text
//! file       := line*
//! line       := blank | comment | generators | relation
//! comment    := '#' any*
//! generators := 'generators:' token*
//! relation   := 'relation:' word '=' word
//! word       := '1' | token+
//! token      := any run of non-whitespace chars excluding '=', '#', ','
//! ```
//!
//! Exactly one `generators:` line must precede every `relation:` line. A
//! `#` anywhere starts a comment running to end of line. The token `1` is
//! reserved for the empty word and must stand alone on its side.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::word::{GeneratorId, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("duplicate generator \"{0}\"")]
    DuplicateGenerator(String),
    #[error("undeclared generator \"{0}\"")]
    UndeclaredGenerator(String),
    #[error("invalid generator name \"{0}\"")]
    InvalidGeneratorName(String),
    #[error("missing generators line")]
    MissingGenerators,
}

/// The generating alphabet: dense ids `0..len` with distinct display names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, GeneratorId>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '=' | '#' | ','))
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, ParseErrorKind> {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.push(name.as_ref())?;
        }
        Ok(alphabet)
    }

    fn push(&mut self, name: &str) -> Result<GeneratorId, ParseErrorKind> {
        if !valid_name(name) {
            return Err(ParseErrorKind::InvalidGeneratorName(name.to_string()));
        }
        if self.lookup.contains_key(name) {
            return Err(ParseErrorKind::DuplicateGenerator(name.to_string()));
        }
        let id = GeneratorId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<GeneratorId> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, id: GeneratorId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// True when every generator name is a single character, so words can be
    /// written without separators.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parse whitespace-separated tokens. An empty string or a lone `1` is ε.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseErrorKind> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        self.word_from_tokens(&tokens)
    }

    /// Parse a word in which every character is one generator token.
    pub fn parse_compact(&self, text: &str) -> Result<Word, ParseErrorKind> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(Word::empty());
        }
        trimmed
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                let s = c.to_string();
                self.id(&s).ok_or(ParseErrorKind::UndeclaredGenerator(s))
            })
            .collect()
    }

    fn word_from_tokens(&self, tokens: &[&str]) -> Result<Word, ParseErrorKind> {
        match tokens {
            [] | ["1"] => Ok(Word::empty()),
            _ if tokens.contains(&"1") => Err(ParseErrorKind::Syntax(
                "`1` denotes the empty word and must stand alone".into(),
            )),
            _ => tokens
                .iter()
                .map(|t| {
                    self.id(t)
                        .ok_or_else(|| ParseErrorKind::UndeclaredGenerator(t.to_string()))
                })
                .collect(),
        }
    }

    /// Render a word: concatenated for single-character alphabets, space
    /// separated otherwise; ε is written `1`.
    pub fn render(&self, w: &[GeneratorId]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let sep = if self.is_compact() { "" } else { " " };
        w.iter()
            .map(|&g| self.name(g))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs }
    }

    pub fn side(&self, side: Side) -> &Word {
        match side {
            Side::Lhs => &self.lhs,
            Side::Rhs => &self.rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Lhs => Side::Rhs,
            Side::Rhs => Side::Lhs,
        }
    }
}

/// One side of one relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationWordRef {
    pub relation: usize,
    pub side: Side,
}

impl RelationWordRef {
    pub fn partner(self) -> Self {
        RelationWordRef {
            relation: self.relation,
            side: self.side.other(),
        }
    }

    /// Dense index `2·relation + side`, matching `Presentation::relation_words`.
    pub fn flat(self) -> usize {
        2 * self.relation + usize::from(self.side == Side::Rhs)
    }

    pub fn from_flat(i: usize) -> Self {
        RelationWordRef {
            relation: i / 2,
            side: if i.is_multiple_of(2) {
                Side::Lhs
            } else {
                Side::Rhs
            },
        }
    }
}

/// A finite presentation `⟨A | R⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relations: Vec<Relation>) -> Self {
        Presentation {
            alphabet,
            relations,
        }
    }

    /// Build from single-character generator names and compact relation
    /// strings, e.g. `from_compact("abef", &[("aeb", "afb")])`.
    pub fn from_compact(
        generators: &str,
        relations: &[(&str, &str)],
    ) -> Result<Self, ParseErrorKind> {
        let names: Vec<String> = generators.chars().map(|c| c.to_string()).collect();
        let alphabet = Alphabet::new(&names)?;
        let relations = relations
            .iter()
            .map(|(l, r)| {
                Ok(Relation::new(
                    alphabet.parse_compact(l)?,
                    alphabet.parse_compact(r)?,
                ))
            })
            .collect::<Result<Vec<_>, ParseErrorKind>>()?;
        Ok(Presentation::new(alphabet, relations))
    }

    /// Sum of the lengths of all relation words.
    pub fn total_length(&self) -> usize {
        self.relations
            .iter()
            .map(|r| r.lhs.len() + r.rhs.len())
            .sum()
    }

    pub fn relation_word(&self, r: RelationWordRef) -> &Word {
        self.relations[r.relation].side(r.side)
    }

    /// All relation words in flat order: lhs₀, rhs₀, lhs₁, rhs₁, …
    pub fn relation_words(&self) -> impl Iterator<Item = (RelationWordRef, &Word)> + '_ {
        (0..2 * self.relations.len()).map(move |i| {
            let r = RelationWordRef::from_flat(i);
            (r, self.relation_word(r))
        })
    }

    pub fn relation_word_count(&self) -> usize {
        2 * self.relations.len()
    }

    pub fn max_relation_len(&self) -> usize {
        self.relation_words()
            .map(|(_, w)| w.len())
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self, w: &[GeneratorId]) -> String {
        self.alphabet.render(w)
    }

    /// Serialise back into the text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("generators: {}\n", self.alphabet.names().join(" "));
        for rel in &self.relations {
            out.push_str(&format!(
                "relation: {} = {}\n",
                self.word_tokens(&rel.lhs),
                self.word_tokens(&rel.rhs)
            ));
        }
        out
    }

    fn word_tokens(&self, w: &[GeneratorId]) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter()
                .map(|&g| self.alphabet.name(g))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} | ", self.alphabet.names().join(","))?;
        for (i, rel) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", self.render(&rel.lhs), self.render(&rel.rhs))?;
        }
        write!(f, "⟩")
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Column (1-based, in chars) at which `sub` starts inside `line`.
fn column_of(line: &str, sub: &str) -> usize {
    let offset = sub.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

/// Parse a presentation from the text format described in the module docs.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut relations = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = strip_comment(raw);
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let err = |at: &str, kind| ParseError {
            line,
            column: column_of(raw, at),
            kind,
        };
        if let Some(rest) = body.strip_prefix("generators:") {
            if alphabet.is_some() {
                return Err(err(
                    body,
                    ParseErrorKind::Syntax("second generators line".into()),
                ));
            }
            let mut a = Alphabet::default();
            for tok in rest.split_whitespace() {
                a.push(tok).map_err(|k| err(tok, k))?;
            }
            alphabet = Some(a);
        } else if let Some(rest) = body.strip_prefix("relation:") {
            let a = alphabet
                .as_ref()
                .ok_or_else(|| err(body, ParseErrorKind::MissingGenerators))?;
            let Some((lhs, rhs)) = rest.split_once('=') else {
                return Err(err(rest, ParseErrorKind::Syntax("expected `=`".into())));
            };
            if rhs.contains('=') {
                return Err(err(rhs, ParseErrorKind::Syntax("more than one `=`".into())));
            }
            let side = |s: &str| -> Result<Word, ParseError> {
                let tokens: Vec<&str> = s.split_whitespace().collect();
                if tokens.is_empty() {
                    return Err(err(
                        s,
                        ParseErrorKind::Syntax("empty side; write `1` for ε".into()),
                    ));
                }
                for tok in &tokens {
                    if *tok != "1" && a.id(tok).is_none() {
                        return Err(err(
                            tok,
                            ParseErrorKind::UndeclaredGenerator(tok.to_string()),
                        ));
                    }
                }
                a.word_from_tokens(&tokens).map_err(|k| err(s, k))
            };
            relations.push(Relation::new(side(lhs)?, side(rhs)?));
        } else {
            return Err(err(
                body,
                ParseErrorKind::Syntax("expected `generators:` or `relation:`".into()),
            ));
        }
    }

    let alphabet = alphabet.ok_or(ParseError {
        line: text.lines().count().max(1),
        column: 1,
        kind: ParseErrorKind::MissingGenerators,
    })?;
    Ok(Presentation::new(alphabet, relations))
}
