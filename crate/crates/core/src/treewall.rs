//! Tree-walls and the components they cut a building into.
//!
//! The tree-wall of type `s` through a chamber is realized combinatorially
//! as the `({s} ∪ s⊥)`-residue of that chamber, named by the residue's
//! minimal coset representative. A chamber is *epicormic* at a tree-wall
//! when its own `s`-panel lies on the wall, i.e. when it belongs to that
//! residue. The test suite validates this residue realization against an
//! apartment-based oracle (walls of standard apartments, chained through
//! common panels) on small windows of the standard examples.
//!
//! A gallery *crosses* the wall when some step of type `s` joins two
//! epicormic chambers. Removing the wall separates the building into
//! `q_s` pieces; every chamber is labelled by the chamber of one fixed
//! base panel its panel projection lands on, and a windowed breadth-first
//! search certifies that gallery components refine those labels.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::building::{Building, Chamber, Gallery, Panel, Residue};
use crate::coxeter::{Gen, PerpClass};

/// Trichotomy for tree-walls, decided by `⟨s⊥⟩`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallClass {
    /// `s⊥` is empty: the wall is a single panel.
    Vertex,
    /// `⟨s⊥⟩` is finite nontrivial: finitely many panels.
    Finite,
    /// `⟨s⊥⟩` is infinite: infinitely many panels.
    Infinite,
}

/// A tree-wall, named canonically by the minimal representative of its
/// defining residue. Two chambers yield the same wall (for a type) exactly
/// when they share the residue, so equality of these values is equality of
/// walls.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeWall {
    ty: Gen,
    wall_types: Vec<Gen>, // {s} ∪ s⊥, sorted
    residue_rep: Chamber,
    class: WallClass,
}

/// Which chamber over the wall's base panel a given chamber is nearest to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentLabel {
    /// Local index in `0..q_s` of the gate over the base panel.
    pub index: u16,
    /// The base panel the label refers to.
    pub panel: Panel,
}

/// One representative chamber per component label found in a window.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SeparationWitness {
    pub label: u16,
    pub chamber: String,
}

/// Windowed separation check: removing the wall from a ball around its
/// representative must split the chambers into `q_s` label classes that
/// the gallery components refine.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SeparationReport {
    /// Panel type of the wall.
    #[serde(rename = "type")]
    pub wall_type: String,
    /// Number of chambers per panel of this type; the expected label count.
    pub q: u16,
    /// Ball radius around the wall representative that was examined.
    pub window: usize,
    /// Set when the window is too small (< 2) to say anything.
    pub inconclusive: bool,
    /// Chambers examined.
    pub ball_size: usize,
    /// Gallery components of the ball with wall-crossing steps removed.
    pub gallery_classes: usize,
    /// Distinct component labels seen in the window.
    pub labels_found: usize,
    /// Every gallery class carries a single label.
    pub refines: bool,
    /// The `q` chambers over the base panel lie in pairwise distinct
    /// gallery classes.
    pub panel_separated: bool,
    /// Conjunction of the three checks above (labels_found = q, refines,
    /// panel_separated); false when inconclusive.
    pub pass: bool,
    pub witnesses: Vec<SeparationWitness>,
}

impl TreeWall {
    /// The tree-wall of type `s` through a chamber.
    pub fn of(b: &Building, c: &Chamber, s: Gen) -> TreeWall {
        let sys = b.product().system();
        let mut wall_types = sys.s_perp(s);
        wall_types.push(s);
        wall_types.sort();
        let residue_rep = b.residue_representative(c, &wall_types);
        let class = match sys.classify_perp(s) {
            PerpClass::Trivial => WallClass::Vertex,
            PerpClass::FiniteNontrivial => WallClass::Finite,
            PerpClass::Infinite => WallClass::Infinite,
        };
        TreeWall { ty: s, wall_types, residue_rep, class }
    }

    pub fn ty(&self) -> Gen {
        self.ty
    }

    pub fn class(&self) -> WallClass {
        self.class
    }

    /// The minimal chamber of the wall's residue (ShortLex-least).
    pub fn residue_rep(&self) -> &Chamber {
        &self.residue_rep
    }

    /// Whether a chamber's `s`-panel lies on this wall.
    pub fn epicormic(&self, b: &Building, psi: &Chamber) -> bool {
        b.residue_representative(psi, &self.wall_types) == self.residue_rep
    }

    /// Whether a gallery crosses the wall: a step of the wall's type
    /// between two epicormic chambers.
    pub fn crosses(&self, b: &Building, gallery: &Gallery) -> bool {
        let chambers = gallery.chambers();
        gallery.types().iter().enumerate().any(|(i, &t)| {
            t == self.ty
                && self.epicormic(b, &chambers[i])
                && self.epicormic(b, &chambers[i + 1])
        })
    }

    /// The globally fixed panel used for component labels: the `s`-panel
    /// of the residue representative.
    pub fn base_panel(&self, b: &Building) -> Panel {
        let p = b.panel(&self.residue_rep, self.ty);
        debug_assert_eq!(p.rep(), self.residue_rep, "representative carries no trailing wall syllable");
        p
    }

    /// The component label of a chamber: the local index of its gate over
    /// the base panel. Invariant under the choice of defining chamber,
    /// since the base panel is named by the canonical representative.
    pub fn component_label(&self, b: &Building, psi: &Chamber) -> ComponentLabel {
        let panel = self.base_panel(b);
        let gate = b.project_to_panel(psi, &panel);
        let rel = b
            .product()
            .mult(&b.product().inv(self.residue_rep.element()), gate.element());
        let index = match rel.syllables() {
            [] => 0,
            [syl] if syl.gen == self.ty => syl.elt,
            other => unreachable!("gate lies over the base panel, got {other:?}"),
        };
        ComponentLabel { index, panel }
    }

    /// The epicormic chambers within gallery distance `bound` of the
    /// representative. Exact (`truncated = false`) when the full set fits
    /// inside the bound, which holds for vertex and finite walls once the
    /// bound reaches the residue diameter.
    pub fn epicormic_chambers(&self, b: &Building, bound: usize) -> Residue {
        let res = match self.class {
            WallClass::Infinite => b
                .residue(&self.residue_rep, &self.wall_types, Some(bound))
                .expect("bounded enumeration"),
            _ => b
                .residue(&self.residue_rep, &self.wall_types, None)
                .expect("finite residue"),
        };
        let total = res.chambers.len();
        let chambers: Vec<Chamber> = res
            .chambers
            .into_iter()
            .filter(|c| b.gallery_distance(&self.residue_rep, c) <= bound)
            .collect();
        let truncated = res.truncated || chambers.len() < total;
        Residue { chambers, truncated }
    }

    /// Separation check on the ball of the given radius around the wall
    /// representative; see [`SeparationReport`].
    pub fn separation_report(&self, b: &Building, window: usize) -> SeparationReport {
        let gp = b.product();
        let q = gp.order_of(self.ty);
        let mut report = SeparationReport {
            wall_type: gp.system().name(self.ty).to_owned(),
            q,
            window,
            inconclusive: window < 2,
            ball_size: 0,
            gallery_classes: 0,
            labels_found: 0,
            refines: false,
            panel_separated: false,
            pass: false,
            witnesses: Vec::new(),
        };
        if report.inconclusive {
            return report;
        }

        let ball = b.ball(&self.residue_rep, window);
        report.ball_size = ball.len();
        let index: HashMap<&Chamber, usize> =
            ball.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let epic: Vec<bool> = ball.iter().map(|c| self.epicormic(b, c)).collect();

        // gallery components, wall-crossing steps removed
        let mut comp = vec![usize::MAX; ball.len()];
        let mut classes = 0usize;
        for start in 0..ball.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = classes;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for (s, _, nb) in b.neighbors(&ball[i]) {
                    let Some(&j) = index.get(&nb) else { continue };
                    if s == self.ty && epic[i] && epic[j] {
                        continue; // crossing step
                    }
                    if comp[j] == usize::MAX {
                        comp[j] = classes;
                        queue.push_back(j);
                    }
                }
            }
            classes += 1;
        }
        report.gallery_classes = classes;

        let labels: Vec<u16> = ball
            .iter()
            .map(|c| self.component_label(b, c).index)
            .collect();

        // distinct labels, with the least chamber per label as witness
        let mut by_label: BTreeMap<u16, &Chamber> = BTreeMap::new();
        for (c, &l) in ball.iter().zip(&labels) {
            by_label.entry(l).or_insert(c); // ball is sorted, first is least
        }
        report.labels_found = by_label.len();
        report.witnesses = by_label
            .iter()
            .map(|(&label, c)| SeparationWitness {
                label,
                chamber: b.chamber_label(c),
            })
            .collect();

        // every gallery class carries one label
        let mut class_label: Vec<Option<u16>> = vec![None; classes];
        report.refines = true;
        for (i, &l) in labels.iter().enumerate() {
            match class_label[comp[i]] {
                None => class_label[comp[i]] = Some(l),
                Some(prev) if prev == l => {}
                Some(_) => {
                    report.refines = false;
                    break;
                }
            }
        }

        // the q chambers over the base panel are pairwise separated
        let panel_chambers = b.panel_chambers(&self.base_panel(b));
        let mut panel_classes = Vec::new();
        let mut all_present = true;
        for c in &panel_chambers {
            match index.get(c) {
                Some(&i) => panel_classes.push(comp[i]),
                None => all_present = false,
            }
        }
        panel_classes.sort_unstable();
        let distinct = panel_classes.windows(2).all(|w| w[0] != w[1]);
        report.panel_separated = all_present && distinct;

        report.pass = report.labels_found == q as usize
            && report.refines
            && report.panel_separated;
        report
    }
}
