//! Graph products of finite groups in syllable normal form.
//!
//! Over a right-angled Coxeter system, attach to each generator `s` a
//! finite group `H_s` of order `q_s ≥ 2`. The graph product is the free
//! product of the `H_s` modulo commutation of `H_s` and `H_t` whenever `s`
//! and `t` commute. Elements are held as syllable sequences
//! `(s₁,h₁)(s₂,h₂)…` with every `hᵢ` nontrivial; the normal form is the
//! one whose generator sequence is the ShortLex normal form of the
//! corresponding Coxeter word, which pins the syllable order uniquely.
//!
//! Local group elements are indices `0..q_s` with `0` reserved for the
//! identity, so a syllable index is never `0`.

use std::fmt;

use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterSystem, Gen, WeylWord};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("local order for `{name}` must be at least 2, got {order}")]
    OrderTooSmall { name: String, order: u16 },
    #[error("missing local order for generator `{0}`")]
    MissingOrder(String),
    #[error("invalid multiplication table for `{name}`: {reason}")]
    BadTable { name: String, reason: String },
    #[error("local index {elt} out of range 1..{order} for generator `{name}`")]
    BadSyllable { name: String, elt: u16, order: u16 },
    #[error("chamber text: {0}")]
    Parse(#[from] ElementParseError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// Parse failure for the text form of an element, with the byte position
/// and what was expected there.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("at byte {position}: expected {expected}, found {found}")]
pub struct ElementParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

/// A finite group on indices `0..order`, with `0` the identity.
#[derive(Clone, Debug)]
pub struct LocalGroup {
    order: u16,
    mul: Vec<u16>, // row-major order×order
    inv: Vec<u16>,
}

impl LocalGroup {
    /// The cyclic group of the given order (addition mod `order`).
    pub fn cyclic(order: u16) -> LocalGroup {
        let n = order as usize;
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u16;
            }
        }
        let inv = (0..order).map(|a| (order - a) % order).collect();
        LocalGroup { order, mul, inv }
    }

    /// A group given by an explicit table `table[a][b] = a·b`. Checks the
    /// identity at index 0, closure, inverses, and associativity
    /// (exhaustively up to order 8, on a deterministic stride above).
    pub fn from_table(table: &[Vec<u16>]) -> Result<LocalGroup, String> {
        let n = table.len();
        if n == 0 || n > u16::MAX as usize {
            return Err("table size out of range".into());
        }
        let order = n as u16;
        let mut mul = vec![0u16; n * n];
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(format!("row {a} has length {}, expected {n}", row.len()));
            }
            for (b, &v) in row.iter().enumerate() {
                if v as usize >= n {
                    return Err(format!("entry ({a},{b}) = {v} not an element"));
                }
                mul[a * n + b] = v;
            }
        }
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err("index 0 is not a two-sided identity".into());
            }
        }
        let mut inv = vec![u16::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    if mul[b * n + a] != 0 {
                        return Err(format!("one-sided inverse at {a}"));
                    }
                    inv[a] = b as u16;
                }
            }
            if inv[a] == u16::MAX {
                return Err(format!("element {a} has no inverse"));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            mul[mul[a * n + b] as usize * n + c] == mul[a * n + mul[b * n + c] as usize]
        };
        if n <= 8 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            // deterministic strided sample
            for a in (0..n).step_by(3) {
                for b in (0..n).step_by(2) {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        }
        Ok(LocalGroup { order, mul, inv })
    }

    pub fn order(&self) -> u16 {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order as usize + b as usize]
    }

    #[inline]
    pub fn inverse(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }
}

/// One syllable: a generator and a nontrivial element of its local group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Syllable {
    pub gen: Gen,
    pub elt: u16,
}

/// An element of the graph product, held in syllable normal form.
/// Constructed only through [`GraphProduct`] operations; the identity is
/// the empty sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GroupElement {
    syl: Vec<Syllable>,
}

impl GroupElement {
    pub fn identity() -> GroupElement {
        GroupElement { syl: Vec::new() }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syl
    }

    /// Syllable length (the gallery distance from the identity chamber).
    pub fn len(&self) -> usize {
        self.syl.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syl.is_empty()
    }
}

/// ShortLex: syllable count first, then lexicographic on
/// (generator index, local index) pairs.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.syl
            .len()
            .cmp(&other.syl.len())
            .then_with(|| self.syl.cmp(&other.syl))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A graph product of finite groups over a right-angled Coxeter system.
#[derive(Clone, Debug)]
pub struct GraphProduct {
    sys: CoxeterSystem,
    locals: Vec<LocalGroup>,
}

impl GraphProduct {
    /// Attaches cyclic groups of the given orders (declaration order) to
    /// the system's generators.
    pub fn cyclic(sys: CoxeterSystem, orders: &[u16]) -> Result<GraphProduct, GroupError> {
        if orders.len() != sys.rank() {
            let missing = sys.gens().nth(orders.len()).expect("rank checked");
            return Err(GroupError::MissingOrder(sys.name(missing).to_owned()));
        }
        let locals = orders.iter().map(|&q| LocalGroup::cyclic(q)).collect();
        GraphProduct::with_locals(sys, locals)
    }

    /// Attaches explicit local groups (declaration order) to the system's
    /// generators. Orders below 2 are rejected.
    pub fn with_locals(
        sys: CoxeterSystem,
        locals: Vec<LocalGroup>,
    ) -> Result<GraphProduct, GroupError> {
        if locals.len() != sys.rank() {
            let missing = sys.gens().nth(locals.len()).expect("rank checked");
            return Err(GroupError::MissingOrder(sys.name(missing).to_owned()));
        }
        for (i, lg) in locals.iter().enumerate() {
            if lg.order() < 2 {
                return Err(GroupError::OrderTooSmall {
                    name: sys.name(Gen(i as u16)).to_owned(),
                    order: lg.order(),
                });
            }
        }
        Ok(GraphProduct { sys, locals })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn local(&self, s: Gen) -> &LocalGroup {
        &self.locals[s.idx()]
    }

    /// Order `q_s` of the local group at `s`.
    pub fn order_of(&self, s: Gen) -> u16 {
        self.locals[s.idx()].order()
    }

    fn check_syllable(&self, gen: Gen, elt: u16) -> Result<(), GroupError> {
        if gen.idx() >= self.sys.rank() {
            return Err(CoxeterError::IndexOutOfRange {
                index: gen.idx(),
                rank: self.sys.rank(),
            }
            .into());
        }
        let order = self.order_of(gen);
        if elt == 0 || elt >= order {
            return Err(GroupError::BadSyllable {
                name: self.sys.name(gen).to_owned(),
                elt,
                order,
            });
        }
        Ok(())
    }

    /// Multiplies a normal word by one syllable on the right, keeping it
    /// normal: merge into the rightmost movable syllable of the same
    /// generator (dropping it if the product is trivial), else insert at
    /// the least position inside the commuting suffix.
    pub(crate) fn push_syllable(&self, word: &mut Vec<Syllable>, gen: Gen, elt: u16) {
        debug_assert!(elt != 0 && elt < self.order_of(gen));
        let mut j = word.len();
        while j > 0 {
            let y = word[j - 1];
            if y.gen == gen {
                let prod = self.locals[gen.idx()].mul(y.elt, elt);
                if prod == 0 {
                    word.remove(j - 1);
                } else {
                    word[j - 1].elt = prod;
                }
                return;
            }
            if !self.sys.commutes(gen, y.gen) {
                break;
            }
            j -= 1;
        }
        let mut pos = j;
        while pos < word.len() && word[pos].gen < gen {
            pos += 1;
        }
        word.insert(pos, Syllable { gen, elt });
    }

    /// Normal form of an arbitrary syllable sequence. Rejects out-of-range
    /// generators and local indices (including the reserved identity 0).
    pub fn normal_form(&self, syllables: &[(Gen, u16)]) -> Result<GroupElement, GroupError> {
        for &(gen, elt) in syllables {
            self.check_syllable(gen, elt)?;
        }
        let mut syl = Vec::with_capacity(syllables.len());
        for &(gen, elt) in syllables {
            self.push_syllable(&mut syl, gen, elt);
        }
        Ok(GroupElement { syl })
    }

    /// Wraps syllables already known to be in normal form (for modules
    /// that maintain the invariant themselves; debug builds re-check).
    pub(crate) fn element_from_normal(&self, syl: Vec<Syllable>) -> GroupElement {
        debug_assert!({
            let raw: Vec<(Gen, u16)> = syl.iter().map(|s| (s.gen, s.elt)).collect();
            self.normal_form(&raw).expect("valid syllables").syl == syl
        });
        GroupElement { syl }
    }

    /// Product `a·b` in normal form.
    pub fn mult(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut syl = a.syl.clone();
        syl.reserve(b.syl.len());
        for &s in &b.syl {
            self.push_syllable(&mut syl, s.gen, s.elt);
        }
        GroupElement { syl }
    }

    /// Right product by a single syllable.
    pub fn mult_syllable(&self, a: &GroupElement, gen: Gen, elt: u16) -> GroupElement {
        debug_assert!(elt != 0);
        let mut syl = a.syl.clone();
        self.push_syllable(&mut syl, gen, elt);
        GroupElement { syl }
    }

    /// Inverse: reverse the syllables and invert each local element, then
    /// renormalize (no cancellation occurs, only reordering).
    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        let mut syl = Vec::with_capacity(a.syl.len());
        for s in a.syl.iter().rev() {
            self.push_syllable(&mut syl, s.gen, self.locals[s.gen.idx()].inverse(s.elt));
        }
        debug_assert_eq!(syl.len(), a.syl.len());
        GroupElement { syl }
    }

    /// The Coxeter word underlying an element: each syllable maps to its
    /// generator. For a normal-form element the image is already reduced.
    pub fn type_map(&self, a: &GroupElement) -> WeylWord {
        let letters: Vec<Gen> = a.syl.iter().map(|s| s.gen).collect();
        let normal = self.sys.normalize(&letters);
        debug_assert_eq!(normal, letters, "normal form should have a reduced type word");
        WeylWord::from_normal(&self.sys, normal)
    }

    /// Text form: `gen:index` syllables joined by `.`; the identity is the
    /// empty string.
    pub fn format_element(&self, a: &GroupElement) -> String {
        let mut out = String::new();
        for (i, s) in a.syl.iter().enumerate() {
            if i > 0 {
                out.push('.');
            }
            out.push_str(self.sys.name(s.gen));
            out.push(':');
            out.push_str(&s.elt.to_string());
        }
        out
    }

    /// Parses the text form. Errors carry the byte position and the token
    /// that was expected there.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, GroupError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(GroupElement::identity());
        }
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut raw: Vec<(Gen, u16)> = Vec::new();
        loop {
            // generator name
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b':' && bytes[pos] != b'.' {
                pos += 1;
            }
            let name = &text[start..pos];
            if name.is_empty() {
                return Err(ElementParseError {
                    position: start,
                    expected: "generator name".into(),
                    found: preview(text, start),
                }
                .into());
            }
            let gen = self.sys.gen_by_name(name).ok_or_else(|| ElementParseError {
                position: start,
                expected: "known generator name".into(),
                found: format!("`{name}`"),
            })?;
            if pos >= bytes.len() || bytes[pos] != b':' {
                return Err(ElementParseError {
                    position: pos,
                    expected: "`:`".into(),
                    found: preview(text, pos),
                }
                .into());
            }
            pos += 1;
            let num_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == num_start {
                return Err(ElementParseError {
                    position: num_start,
                    expected: "local index (digits)".into(),
                    found: preview(text, num_start),
                }
                .into());
            }
            let elt: u16 = text[num_start..pos].parse().map_err(|_| ElementParseError {
                position: num_start,
                expected: "local index below 65536".into(),
                found: format!("`{}`", &text[num_start..pos]),
            })?;
            self.check_syllable(gen, elt)?;
            raw.push((gen, elt));
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'.' {
                return Err(ElementParseError {
                    position: pos,
                    expected: "`.` or end of input".into(),
                    found: preview(text, pos),
                }
                .into());
            }
            pos += 1;
        }
        self.normal_form(&raw)
    }
}

fn preview(text: &str, pos: usize) -> String {
    match text[pos.min(text.len())..].chars().next() {
        Some(c) => format!("`{c}`"),
        None => "end of input".into(),
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.gen, self.elt)
    }
}
