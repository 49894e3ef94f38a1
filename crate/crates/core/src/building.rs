//! The chamber system of a graph product.
//!
//! Chambers are the elements of the graph product `H`; two chambers are
//! `s`-adjacent when they differ by one nontrivial syllable of type `s` on
//! the right. The `s`-panel of a chamber is its coset `φ·H_s`, which holds
//! exactly `q_s` chambers, so the chamber system is a regular right-angled
//! building with parameters `(q_s)`.
//!
//! The Weyl distance `δ_W(φ, φ′)` is the ShortLex word of `φ⁻¹φ′` and the
//! gallery distance is its length. Apartments are images of the Coxeter
//! group under a section that picks one fixed nontrivial element per
//! generator; retractions onto an apartment replay `δ_W` from its base.
//!
//! Balls are enumerated by normal-form extension (append a syllable, keep
//! the element when its syllable count grows). The independent graph BFS
//! lives in the test suite as the oracle for these enumerations.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::coxeter::{Gen, WeylWord};
use crate::graph_product::{GraphProduct, GroupElement, GroupError, Syllable};

#[derive(Debug, Error)]
pub enum BuildingError {
    #[error("residue over non-commuting types is infinite; a truncation bound is required")]
    UnboundedResidue,
    #[error("section element {elt} out of range 1..{order} for generator `{name}`")]
    BadSection { name: String, elt: u16, order: u16 },
    #[error("section must assign one element per generator ({rank} expected, {got} given)")]
    SectionLength { rank: usize, got: usize },
    #[error("chambers at positions {0} and {1} are not adjacent")]
    NotAGallery(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A chamber of the building: an element of the graph product.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Chamber(pub GroupElement);

impl Chamber {
    pub fn element(&self) -> &GroupElement {
        &self.0
    }
}

/// An `s`-panel, named by its canonical coset representative: the unique
/// chamber of `φ·H_s` whose normal form has no movable trailing
/// `s`-syllable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Panel {
    ty: Gen,
    rep: GroupElement,
}

impl Panel {
    pub fn ty(&self) -> Gen {
        self.ty
    }

    /// The representative chamber (local index 0 slot).
    pub fn rep(&self) -> Chamber {
        Chamber(self.rep.clone())
    }
}

/// A gallery: a chamber path together with the panel type of each step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gallery {
    chambers: Vec<Chamber>,
    types: Vec<Gen>,
}

impl Gallery {
    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn types(&self) -> &[Gen] {
        &self.types
    }

    /// Number of steps (one less than the number of chambers).
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Result of a residue enumeration. `truncated` is set when the residue is
/// infinite and only the part within the requested bound is returned.
#[derive(Clone, Debug)]
pub struct Residue {
    pub chambers: Vec<Chamber>,
    pub truncated: bool,
}

/// A standard apartment: a base chamber plus a section `σ` assigning one
/// fixed nontrivial element of `H_s` to every generator `s`. The chamber
/// over `w ∈ W` is `base · σ(s₁)⋯σ(sₙ)` for any reduced word of `w`;
/// this is well defined because section elements of commuting generators
/// commute in `H`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Apartment {
    base: Chamber,
    section: Vec<u16>, // by generator index, each in 1..q_s
}

impl Apartment {
    pub fn base(&self) -> &Chamber {
        &self.base
    }

    pub fn section(&self) -> &[u16] {
        &self.section
    }
}

/// The chamber system of a graph product, with its combinatorial
/// operations. Pure and immutable; chambers are plain values.
#[derive(Clone, Debug)]
pub struct Building {
    gp: GraphProduct,
}

impl Building {
    pub fn new(gp: GraphProduct) -> Building {
        Building { gp }
    }

    pub fn product(&self) -> &GraphProduct {
        &self.gp
    }

    /// The chamber of the identity element.
    pub fn base_chamber(&self) -> Chamber {
        Chamber(GroupElement::identity())
    }

    pub fn chamber(&self, el: GroupElement) -> Chamber {
        Chamber(el)
    }

    /// Relative position `φ⁻¹φ′` of two chambers.
    fn relative(&self, a: &Chamber, b: &Chamber) -> GroupElement {
        self.gp.mult(&self.gp.inv(&a.0), &b.0)
    }

    /// Whether two chambers are `s`-adjacent (distinct, same `s`-panel).
    pub fn adjacent(&self, a: &Chamber, b: &Chamber, s: Gen) -> bool {
        self.adjacency_type(a, b) == Some(s)
    }

    /// The panel type joining two chambers, if they are adjacent.
    pub fn adjacency_type(&self, a: &Chamber, b: &Chamber) -> Option<Gen> {
        let rel = self.relative(a, b);
        match rel.syllables() {
            [single] => Some(single.gen),
            _ => None,
        }
    }

    /// Weyl distance: the ShortLex word of `φ⁻¹φ′`.
    pub fn delta_w(&self, a: &Chamber, b: &Chamber) -> WeylWord {
        self.gp.type_map(&self.relative(a, b))
    }

    /// Gallery distance `d_W = l_S ∘ δ_W`.
    pub fn gallery_distance(&self, a: &Chamber, b: &Chamber) -> usize {
        self.relative(a, b).len()
    }

    /// All chambers adjacent to `c`, with the step syllable, in canonical
    /// (generator, local index) order.
    pub fn neighbors(&self, c: &Chamber) -> Vec<(Gen, u16, Chamber)> {
        let mut out = Vec::new();
        for s in self.gp.system().gens() {
            for h in 1..self.gp.order_of(s) {
                out.push((s, h, Chamber(self.gp.mult_syllable(&c.0, s, h))));
            }
        }
        out
    }

    /// A minimal gallery from `a` to `b`: one chamber per syllable of the
    /// relative position, so the type sequence reads off `δ_W(a, b)`.
    pub fn minimal_gallery(&self, a: &Chamber, b: &Chamber) -> Gallery {
        let rel = self.relative(a, b);
        let mut chambers = Vec::with_capacity(rel.len() + 1);
        let mut types = Vec::with_capacity(rel.len());
        chambers.push(a.clone());
        let mut cur = a.0.clone();
        for &Syllable { gen, elt } in rel.syllables() {
            cur = self.gp.mult_syllable(&cur, gen, elt);
            chambers.push(Chamber(cur.clone()));
            types.push(gen);
        }
        debug_assert_eq!(chambers.last(), Some(b));
        Gallery { chambers, types }
    }

    /// Packs an explicit chamber path into a gallery, validating that each
    /// step is an adjacency and recording its type.
    pub fn gallery_from_chambers(&self, chambers: Vec<Chamber>) -> Result<Gallery, BuildingError> {
        let mut types = Vec::with_capacity(chambers.len().saturating_sub(1));
        for i in 1..chambers.len() {
            match self.adjacency_type(&chambers[i - 1], &chambers[i]) {
                Some(t) => types.push(t),
                None => return Err(BuildingError::NotAGallery(i - 1, i)),
            }
        }
        Ok(Gallery { chambers, types })
    }

    /// Enumerates the elements of `H` with at most `radius` syllables whose
    /// types lie in `types` (`None` = all generators), by normal-form
    /// extension: a length-`k` form is kept when appending a syllable
    /// yields length `k+1`.
    fn enumerate_relative(
        &self,
        types: Option<&[Gen]>,
        radius: usize,
    ) -> Vec<GroupElement> {
        let gens: Vec<Gen> = match types {
            Some(ts) => ts.to_vec(),
            None => self.gp.system().gens().collect(),
        };
        let mut all = vec![GroupElement::identity()];
        let mut seen: HashSet<GroupElement> = all.iter().cloned().collect();
        let mut frontier = all.clone();
        for k in 0..radius {
            let mut next = Vec::new();
            for el in &frontier {
                for &s in &gens {
                    for h in 1..self.gp.order_of(s) {
                        let ext = self.gp.mult_syllable(el, s, h);
                        if ext.len() == k + 1 && seen.insert(ext.clone()) {
                            next.push(ext);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// The ball of chambers within gallery distance `radius` of `center`,
    /// sorted in ShortLex order.
    pub fn ball(&self, center: &Chamber, radius: usize) -> Vec<Chamber> {
        let mut out: Vec<Chamber> = self
            .enumerate_relative(None, radius)
            .into_iter()
            .map(|g| Chamber(self.gp.mult(&center.0, &g)))
            .collect();
        out.sort();
        out
    }

    /// The `J`-residue of a chamber: all chambers reachable through panels
    /// whose types lie in `J`. Finite residues (all pairs in `J` commute)
    /// are enumerated in full; infinite ones require a bound and come back
    /// flagged as truncated.
    pub fn residue(
        &self,
        center: &Chamber,
        types: &[Gen],
        bound: Option<usize>,
    ) -> Result<Residue, BuildingError> {
        let mut ts: Vec<Gen> = types.to_vec();
        ts.sort();
        ts.dedup();
        let finite = ts
            .iter()
            .enumerate()
            .all(|(i, &a)| ts[i + 1..].iter().all(|&b| self.gp.system().commutes(a, b)));
        let radius = match (finite, bound) {
            // a finite residue has one syllable per type at most
            (true, _) => ts.len(),
            (false, Some(b)) => b,
            (false, None) => return Err(BuildingError::UnboundedResidue),
        };
        let mut chambers: Vec<Chamber> = self
            .enumerate_relative(Some(&ts), radius)
            .into_iter()
            .map(|g| Chamber(self.gp.mult(&center.0, &g)))
            .collect();
        chambers.sort();
        Ok(Residue { chambers, truncated: !finite })
    }

    /// The `s`-panel of a chamber.
    pub fn panel(&self, c: &Chamber, s: Gen) -> Panel {
        let syl = c.0.syllables();
        let mut j = syl.len();
        let mut rep = None;
        while j > 0 {
            let y = syl[j - 1];
            if y.gen == s {
                let mut v = syl.to_vec();
                v.remove(j - 1);
                rep = Some(self.gp.element_from_normal(v));
                break;
            }
            if !self.gp.system().commutes(s, y.gen) {
                break;
            }
            j -= 1;
        }
        Panel { ty: s, rep: rep.unwrap_or_else(|| c.0.clone()) }
    }

    /// The `q_s` chambers of a panel, in local-index order (the
    /// representative first).
    pub fn panel_chambers(&self, p: &Panel) -> Vec<Chamber> {
        let mut out = Vec::with_capacity(self.gp.order_of(p.ty) as usize);
        out.push(Chamber(p.rep.clone()));
        for h in 1..self.gp.order_of(p.ty) {
            out.push(Chamber(self.gp.mult_syllable(&p.rep, p.ty, h)));
        }
        out
    }

    /// The unique chamber of a panel nearest to `from` (its gate). A tie
    /// would contradict the gate property of panels, so it panics.
    pub fn project_to_panel(&self, from: &Chamber, p: &Panel) -> Chamber {
        let mut best: Option<(usize, Chamber)> = None;
        let mut unique = true;
        for ch in self.panel_chambers(p) {
            let d = self.gallery_distance(from, &ch);
            match &best {
                Some((bd, _)) if d == *bd => unique = false,
                Some((bd, _)) if d < *bd => {
                    best = Some((d, ch));
                    unique = true;
                }
                None => best = Some((d, ch)),
                _ => {}
            }
        }
        let (_, gate) = best.expect("panel has at least two chambers");
        assert!(
            unique,
            "panel projection found two nearest chambers; gate uniqueness is violated — this is a bug"
        );
        gate
    }

    /// The minimal representative of the `J`-coset of `c`: strips movable
    /// trailing syllables with types in `J` until none remains. Canonical
    /// for the `J`-residue of `c` (two chambers share their residue iff
    /// they strip to the same chamber).
    pub fn residue_representative(&self, c: &Chamber, types: &[Gen]) -> Chamber {
        let rank = self.gp.system().rank();
        let mut in_j = vec![false; rank];
        for &t in types {
            in_j[t.idx()] = true;
        }
        let mut syl = c.0.syllables().to_vec();
        loop {
            let mut removed = false;
            'scan: for i in (0..syl.len()).rev() {
                if !in_j[syl[i].gen.idx()] {
                    continue;
                }
                for later in &syl[i + 1..] {
                    if !self.gp.system().commutes(syl[i].gen, later.gen) {
                        continue 'scan;
                    }
                }
                syl.remove(i);
                removed = true;
                break;
            }
            if !removed {
                break;
            }
        }
        Chamber(self.gp.element_from_normal(syl))
    }

    /// An apartment with an explicit section (one element index per
    /// generator, each in `1..q_s`).
    pub fn apartment(&self, base: Chamber, section: Vec<u16>) -> Result<Apartment, BuildingError> {
        let rank = self.gp.system().rank();
        if section.len() != rank {
            return Err(BuildingError::SectionLength { rank, got: section.len() });
        }
        for (i, &h) in section.iter().enumerate() {
            let s = Gen(i as u16);
            let order = self.gp.order_of(s);
            if h == 0 || h >= order {
                return Err(BuildingError::BadSection {
                    name: self.gp.system().name(s).to_owned(),
                    elt: h,
                    order,
                });
            }
        }
        Ok(Apartment { base, section })
    }

    /// The apartment at `base` with the default section (index 1
    /// everywhere).
    pub fn default_apartment(&self, base: Chamber) -> Apartment {
        let section = vec![1u16; self.gp.system().rank()];
        Apartment { base, section }
    }

    /// The chamber of an apartment over a Weyl group element.
    pub fn apartment_chamber(&self, a: &Apartment, w: &WeylWord) -> Chamber {
        let mut cur = a.base.0.clone();
        for &g in w.letters() {
            cur = self.gp.mult_syllable(&cur, g, a.section[g.idx()]);
        }
        Chamber(cur)
    }

    /// Whether a chamber lies in the apartment; if so, its Weyl
    /// coordinate relative to the base.
    pub fn apartment_coordinate(&self, a: &Apartment, c: &Chamber) -> Option<WeylWord> {
        let w = self.delta_w(&a.base, c);
        if self.apartment_chamber(a, &w) == *c {
            Some(w)
        } else {
            None
        }
    }

    /// Retraction onto an apartment centered at its base: replay the Weyl
    /// distance from the base inside the apartment. Fixes the apartment
    /// pointwise and preserves Weyl distances from the base.
    pub fn retraction(&self, a: &Apartment, c: &Chamber) -> Chamber {
        let w = self.delta_w(&a.base, c);
        self.apartment_chamber(a, &w)
    }

    /// Text form of a chamber, rendering the base chamber as `e`.
    pub fn chamber_label(&self, c: &Chamber) -> String {
        if c.0.is_identity() {
            "e".to_owned()
        } else {
            self.gp.format_element(&c.0)
        }
    }

    /// Edges within a chamber set (indices into the slice), sorted.
    fn edges_within(&self, chambers: &[Chamber]) -> Vec<(usize, usize, Gen)> {
        let index: HashMap<&Chamber, usize> =
            chambers.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut edges = Vec::new();
        for (i, c) in chambers.iter().enumerate() {
            for (s, _, nb) in self.neighbors(c) {
                if let Some(&j) = index.get(&nb) {
                    if i < j {
                        edges.push((i, j, s));
                    }
                }
            }
        }
        edges.sort();
        edges.dedup();
        edges
    }

    /// GraphViz rendering of a chamber set with typed adjacency edges.
    /// Output is deterministic: nodes and edges are emitted in sorted
    /// order.
    pub fn ball_to_dot(&self, chambers: &[Chamber]) -> String {
        let mut out = String::from("graph ball {\n");
        for (i, c) in chambers.iter().enumerate() {
            out.push_str(&format!("  c{} [label=\"{}\"];\n", i, self.chamber_label(c)));
        }
        for (i, j, s) in self.edges_within(chambers) {
            out.push_str(&format!(
                "  c{} -- c{} [label=\"{}\"];\n",
                i,
                j,
                self.gp.system().name(s)
            ));
        }
        out.push_str("}\n");
        out
    }

    /// JSON rendering of a chamber set: text-form chambers plus typed
    /// edges by index. Deterministic for a sorted input slice.
    pub fn ball_to_json(&self, chambers: &[Chamber]) -> Value {
        let nodes: Vec<String> = chambers.iter().map(|c| self.chamber_label(c)).collect();
        let edges: Vec<Value> = self
            .edges_within(chambers)
            .into_iter()
            .map(|(i, j, s)| {
                json!({"a": i, "b": j, "type": self.gp.system().name(s)})
            })
            .collect();
        json!({"chambers": nodes, "edges": edges})
    }
}
