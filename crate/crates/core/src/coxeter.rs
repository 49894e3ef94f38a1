//! Right-angled Coxeter systems and their word problem.
//!
//! A right-angled system is a finite generating set `S` in which every
//! generator is an involution and two distinct generators either commute or
//! satisfy no relation at all. Every group element has a unique ShortLex
//! normal form: among its reduced expressions (which form a single
//! commutation class), the lexicographically least under the declaration
//! order of the generators.
//!
//! Normal forms are computed by letter insertion: each letter is pushed onto
//! an already-normal word, cancelling against the rightmost equal letter
//! that can be moved to the end, and otherwise inserted at the least
//! position inside the maximal commuting suffix. The test suite checks this
//! against an exhaustive rewriting-closure oracle rather than trusting the
//! derivation.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A generator, identified by its position in declaration order.
///
/// Words are sequences of these small indices; generator names exist only
/// at the I/O boundary.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen(pub u16);

impl Gen {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Entry of the Coxeter matrix. The diagonal is `One`; off-diagonal
/// entries are `Two` (the pair commutes) or `Infinity` (no relation).
/// Unbounded order is a distinguished value, never a large integer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoxeterOrder {
    One,
    Two,
    Infinity,
}

/// How the subgroup generated by `s⊥` (the generators commuting with `s`)
/// sits inside the system.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerpClass {
    /// `s⊥` is empty.
    Trivial,
    /// `s⊥` is nonempty and its members pairwise commute, so it generates
    /// a finite elementary abelian 2-group.
    FiniteNontrivial,
    /// Some pair in `s⊥` satisfies no relation, so `⟨s⊥⟩` is infinite.
    Infinite,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("generator list is empty")]
    NoGenerators,
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("invalid generator name `{0}`: use ASCII letters, digits and `_`, not starting with a digit")]
    InvalidName(String),
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("generator `{0}` declared as commuting with itself")]
    SelfPair(String),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

/// A right-angled Coxeter system `(W, S)`: named generators plus the
/// symmetric matrix recording which pairs commute. Immutable once built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterSystem {
    names: Vec<String>,
    m: Vec<CoxeterOrder>, // rank × rank, row-major
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl CoxeterSystem {
    /// Builds a system from generator names (declaration order is the
    /// ShortLex order) and the list of commuting pairs. Pairs not listed
    /// satisfy no relation.
    ///
    /// Names must be unique and parseable (`[A-Za-z_][A-Za-z0-9_]*`) so the
    /// text form of elements stays unambiguous.
    pub fn new<S: AsRef<str>>(
        names: &[S],
        commuting: &[(S, S)],
    ) -> Result<CoxeterSystem, CoxeterError> {
        if names.is_empty() {
            return Err(CoxeterError::NoGenerators);
        }
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_owned()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(CoxeterError::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(CoxeterError::DuplicateName(n.clone()));
            }
        }
        let rank = names.len();
        let mut m = vec![CoxeterOrder::Infinity; rank * rank];
        for i in 0..rank {
            m[i * rank + i] = CoxeterOrder::One;
        }
        for (a, b) in commuting {
            let a = a.as_ref();
            let b = b.as_ref();
            let ia = names
                .iter()
                .position(|n| n == a)
                .ok_or_else(|| CoxeterError::UnknownName(a.to_owned()))?;
            let ib = names
                .iter()
                .position(|n| n == b)
                .ok_or_else(|| CoxeterError::UnknownName(b.to_owned()))?;
            if ia == ib {
                return Err(CoxeterError::SelfPair(a.to_owned()));
            }
            m[ia * rank + ib] = CoxeterOrder::Two;
            m[ib * rank + ia] = CoxeterOrder::Two;
        }
        Ok(CoxeterSystem { names, m })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.rank() as u16).map(Gen)
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.idx()]
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| Gen(i as u16))
    }

    /// Coxeter matrix entry for a pair of generators.
    pub fn order(&self, a: Gen, b: Gen) -> CoxeterOrder {
        self.m[a.idx() * self.rank() + b.idx()]
    }

    #[inline]
    pub fn commutes(&self, a: Gen, b: Gen) -> bool {
        self.m[a.idx() * self.rank() + b.idx()] == CoxeterOrder::Two
    }

    fn check_word(&self, word: &[Gen]) -> Result<(), CoxeterError> {
        let rank = self.rank();
        for &g in word {
            if g.idx() >= rank {
                return Err(CoxeterError::IndexOutOfRange { index: g.idx(), rank });
            }
        }
        Ok(())
    }

    /// Pushes one letter onto a ShortLex-normal word, keeping it normal.
    ///
    /// Scanning the suffix right to left: an equal letter found before any
    /// non-commuting letter can be moved to the end and cancels; otherwise
    /// the scan stops at the first blocker and the letter is inserted at
    /// the least position within the commuting suffix.
    pub(crate) fn push_letter(&self, word: &mut Vec<Gen>, x: Gen) {
        let mut j = word.len();
        while j > 0 {
            let y = word[j - 1];
            if y == x {
                word.remove(j - 1);
                return;
            }
            if !self.commutes(x, y) {
                break;
            }
            j -= 1;
        }
        // word[j..] commutes with x and contains no x; pick the least slot.
        let mut pos = j;
        while pos < word.len() && word[pos] < x {
            pos += 1;
        }
        word.insert(pos, x);
    }

    pub(crate) fn normalize(&self, word: &[Gen]) -> Vec<Gen> {
        let mut out = Vec::with_capacity(word.len());
        for &x in word {
            self.push_letter(&mut out, x);
        }
        out
    }

    /// ShortLex normal form of an arbitrary word.
    pub fn reduce(&self, word: &[Gen]) -> Result<WeylWord, CoxeterError> {
        self.check_word(word)?;
        Ok(WeylWord { letters: self.normalize(word) })
    }

    /// Length of the group element a word represents.
    pub fn length(&self, word: &[Gen]) -> Result<usize, CoxeterError> {
        Ok(self.reduce(word)?.len())
    }

    /// Whether two words represent the same group element.
    pub fn words_equal(&self, a: &[Gen], b: &[Gen]) -> Result<bool, CoxeterError> {
        Ok(self.reduce(a)? == self.reduce(b)?)
    }

    /// The generators distinct from `s` that commute with `s`, in
    /// declaration order.
    pub fn s_perp(&self, s: Gen) -> Vec<Gen> {
        self.gens().filter(|&t| t != s && self.commutes(s, t)).collect()
    }

    /// Classifies `⟨s⊥⟩`: trivial, finite nontrivial, or infinite.
    pub fn classify_perp(&self, s: Gen) -> PerpClass {
        let perp = self.s_perp(s);
        if perp.is_empty() {
            return PerpClass::Trivial;
        }
        for (i, &a) in perp.iter().enumerate() {
            for &b in &perp[i + 1..] {
                if !self.commutes(a, b) {
                    return PerpClass::Infinite;
                }
            }
        }
        PerpClass::FiniteNontrivial
    }

    /// If `l(w·s) < l(w)`, returns a reduced expression for `w` whose last
    /// letter is `s` (in general *not* the ShortLex form), else `None`.
    pub fn reduced_expression_ending_in(&self, w: &WeylWord, s: Gen) -> Option<Vec<Gen>> {
        let letters = w.letters();
        let mut j = letters.len();
        while j > 0 {
            let y = letters[j - 1];
            if y == s {
                let mut out = letters.to_vec();
                out.remove(j - 1);
                out.push(s);
                return Some(out);
            }
            if !self.commutes(s, y) {
                return None;
            }
            j -= 1;
        }
        None
    }

    /// Renders a word using generator names, space separated. The empty
    /// word renders as `e`.
    pub fn word_string(&self, word: &[Gen]) -> String {
        if word.is_empty() {
            return "e".to_owned();
        }
        word.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join(" ")
    }

    /// Parses a whitespace-separated word of generator names. Blank input
    /// (or the literal `e`) is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Gen>, CoxeterError> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Ok(Vec::new());
        }
        trimmed
            .split_whitespace()
            .map(|tok| {
                self.gen_by_name(tok)
                    .ok_or_else(|| CoxeterError::UnknownName(tok.to_owned()))
            })
            .collect()
    }
}

/// A word in ShortLex normal form. Constructed only through
/// [`CoxeterSystem::reduce`], so the invariant (reduced, lexicographically
/// least in its commutation class) holds by construction and is checked
/// against an exhaustive oracle in the test suite.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylWord {
    letters: Vec<Gen>,
}

impl WeylWord {
    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Identity element (the empty word).
    pub fn identity() -> WeylWord {
        WeylWord { letters: Vec::new() }
    }

    /// Wraps letters already known to be in normal form (used by modules
    /// that maintain the invariant themselves; debug builds re-check).
    pub(crate) fn from_normal(sys: &CoxeterSystem, letters: Vec<Gen>) -> WeylWord {
        debug_assert_eq!(sys.normalize(&letters), letters);
        let _ = sys;
        WeylWord { letters }
    }
}

/// ShortLex: length first, then lexicographic on letters.
impl Ord for WeylWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for WeylWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
