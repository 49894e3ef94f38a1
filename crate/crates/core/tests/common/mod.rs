//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles deliberately avoid the library's normal-form machinery:
//! words are reduced by exhaustive rewriting closure (single adjacent
//! swaps and deletions/merges, restarting whenever the word shortens),
//! and distances, components and orbit separations are recomputed by
//! breadth-first search over locally generated neighbors. Agreement with
//! these oracles, not internal consistency, is what the test suite
//! certifies.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rabuild_core::building::{Building, Chamber, Gallery, Panel};
use rabuild_core::coxeter::{CoxeterSystem, Gen, WeylWord};
use rabuild_core::graph_product::GraphProduct;
use rabuild_core::treewall::TreeWall;

// ---------------------------------------------------------------------
// fixtures

/// Infinite dihedral: two free generators.
pub fn w1() -> CoxeterSystem {
    CoxeterSystem::new(&["s", "t"], &[]).unwrap()
}

/// (C₂×C₂)∗C₂: r and s commute, t is free.
pub fn w2() -> CoxeterSystem {
    CoxeterSystem::new(&["r", "s", "t"], &[("r", "s")]).unwrap()
}

/// Reflections in the sides of a right-angled p-gon, p ≥ 5.
pub fn w3(p: usize) -> CoxeterSystem {
    let names: Vec<String> = (1..=p).map(|i| format!("s{i}")).collect();
    let pairs: Vec<(String, String)> = (0..p)
        .map(|i| (names[i].clone(), names[(i + 1) % p].clone()))
        .collect();
    CoxeterSystem::new(&names, &pairs).unwrap()
}

/// Four generators on a square: a–b–c–d–a commute, diagonals are free.
/// Isomorphic to D_∞ × D_∞; rounds out the rank ≤ 4 sweep.
pub fn w4_square() -> CoxeterSystem {
    CoxeterSystem::new(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
    )
    .unwrap()
}

/// The (q_s,q_t)-biregular tree as a building: chambers are edges.
pub fn x1(qs: u16, qt: u16) -> Building {
    Building::new(GraphProduct::cyclic(w1(), &[qs, qt]).unwrap())
}

/// The building over W₂ with panel sizes (q_r, q_s, q_t).
pub fn x2(qr: u16, qs: u16, qt: u16) -> Building {
    Building::new(GraphProduct::cyclic(w2(), &[qr, qs, qt]).unwrap())
}

/// Bourdon-type building over the p-gon system, all panels of size q.
pub fn x3(p: usize, q: u16) -> Building {
    let orders = vec![q; p];
    Building::new(GraphProduct::cyclic(w3(p), &orders).unwrap())
}

// ---------------------------------------------------------------------
// word enumeration

/// Every letter string over the generators with length in `0..=max_len`.
pub fn all_letter_words(sys: &CoxeterSystem, max_len: usize) -> Vec<Vec<Gen>> {
    let rank = sys.rank();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Gen>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * rank);
        for w in &layer {
            for g in 0..rank {
                let mut ext = w.clone();
                ext.push(Gen(g as u16));
                next.push(ext);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All Weyl group elements of length ≤ radius, as normal forms, found by
/// breadth-first extension and deduplication (not by the normal-form
/// shortcut the library uses for balls).
pub fn weyl_ball(sys: &CoxeterSystem, radius: usize) -> Vec<WeylWord> {
    let mut seen: HashSet<WeylWord> = HashSet::new();
    let id = sys.reduce(&[]).unwrap();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let mut out: Vec<WeylWord> = seen.iter().cloned().collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in sys.gens() {
                let mut letters = w.letters().to_vec();
                letters.push(g);
                let ext = sys.reduce(&letters).unwrap();
                if ext.len() == w.len() + 1 && seen.insert(ext.clone()) {
                    out.push(ext.clone());
                    next.push(ext);
                }
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------
// rewriting-closure oracles

/// Normal form by exhaustive rewriting: breadth-first closure under
/// adjacent commuting swaps; any adjacent equal pair is deleted and the
/// search restarts from the shorter word. When the closure is exhausted
/// without a deletion the word is reduced, and the normal form is the
/// least word of the closure.
pub fn oracle_reduce(sys: &CoxeterSystem, word: &[Gen]) -> Vec<Gen> {
    let mut current: Vec<Gen> = word.to_vec();
    'restart: loop {
        let mut seen: HashSet<Vec<Gen>> = HashSet::new();
        seen.insert(current.clone());
        let mut queue: VecDeque<Vec<Gen>> = VecDeque::new();
        queue.push_back(current.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                if w[i] == w[i + 1] {
                    let mut shorter = w;
                    shorter.drain(i..=i + 1);
                    current = shorter;
                    continue 'restart;
                }
                if sys.commutes(w[i], w[i + 1]) {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    if seen.insert(swapped.clone()) {
                        queue.push_back(swapped);
                    }
                }
            }
        }
        return seen.into_iter().min().expect("closure is nonempty");
    }
}

/// Syllable normal form by exhaustive rewriting: closure under adjacent
/// commuting swaps; adjacent equal-generator syllables are merged in the
/// local group (restarting), which strictly reduces the syllable count.
pub fn oracle_normal_form(gp: &GraphProduct, syllables: &[(Gen, u16)]) -> Vec<(Gen, u16)> {
    let sys = gp.system();
    let mut current: Vec<(Gen, u16)> = syllables.iter().copied().filter(|&(_, e)| e != 0).collect();
    'restart: loop {
        let mut seen: HashSet<Vec<(Gen, u16)>> = HashSet::new();
        seen.insert(current.clone());
        let mut queue: VecDeque<Vec<(Gen, u16)>> = VecDeque::new();
        queue.push_back(current.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                let (g1, e1) = w[i];
                let (g2, e2) = w[i + 1];
                if g1 == g2 {
                    let merged = gp.local(g1).mul(e1, e2);
                    let mut shorter = w;
                    if merged == 0 {
                        shorter.drain(i..=i + 1);
                    } else {
                        shorter[i] = (g1, merged);
                        shorter.remove(i + 1);
                    }
                    current = shorter;
                    continue 'restart;
                }
                if sys.commutes(g1, g2) {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    if seen.insert(swapped.clone()) {
                        queue.push_back(swapped);
                    }
                }
            }
        }
        return seen.into_iter().min().expect("closure is nonempty");
    }
}

// ---------------------------------------------------------------------
// breadth-first search oracles over the chamber graph

/// Distances from a center, following the building's neighbor generation
/// step by step instead of the normal-form ball enumeration.
pub fn bfs_distances(b: &Building, center: &Chamber, radius: usize) -> BTreeMap<Chamber, usize> {
    let mut dist: BTreeMap<Chamber, usize> = BTreeMap::new();
    dist.insert(center.clone(), 0);
    let mut queue = VecDeque::from([center.clone()]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        if d == radius {
            continue;
        }
        for (_, _, nb) in b.neighbors(&c) {
            if !dist.contains_key(&nb) {
                dist.insert(nb.clone(), d + 1);
                queue.push_back(nb);
            }
        }
    }
    dist
}

/// Connected components of a chamber set under building adjacency,
/// keeping only edges that pass `edge_ok`. Returns, per chamber, the
/// least chamber of its component.
pub fn bfs_components(
    b: &Building,
    chambers: &[Chamber],
    mut edge_ok: impl FnMut(&Chamber, &Chamber) -> bool,
) -> BTreeMap<Chamber, Chamber> {
    let in_set: HashSet<&Chamber> = chambers.iter().collect();
    let mut root: BTreeMap<Chamber, Chamber> = BTreeMap::new();
    for start in chambers {
        if root.contains_key(start) {
            continue;
        }
        let mut members = vec![start.clone()];
        let mut seen: HashSet<Chamber> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(c) = queue.pop_front() {
            for (_, _, nb) in b.neighbors(&c) {
                if !in_set.contains(&nb) || seen.contains(&nb) || !edge_ok(&c, &nb) {
                    continue;
                }
                seen.insert(nb.clone());
                members.push(nb.clone());
                queue.push_back(nb);
            }
        }
        let least = members.iter().min().expect("component nonempty").clone();
        for m in members {
            root.insert(m, least.clone());
        }
    }
    root
}

/// Visits every gallery from `from` to `to` of positive length at most
/// `max_len`, by depth-first search pruned with the gallery distance
/// still to bridge. Galleries may leave any window and revisit chambers.
/// The callback receives the chamber sequence and the step types.
pub fn for_each_gallery(
    b: &Building,
    from: &Chamber,
    to: &Chamber,
    max_len: usize,
    f: &mut impl FnMut(&[Chamber], &[Gen]),
) {
    let mut chambers = vec![from.clone()];
    let mut types: Vec<Gen> = Vec::new();
    // the DFS revisits chambers across branches, so memoize distances
    let mut dist: HashMap<Chamber, usize> = HashMap::new();
    gallery_dfs(b, to, max_len, &mut chambers, &mut types, &mut dist, f);
}

fn gallery_dfs(
    b: &Building,
    to: &Chamber,
    max_len: usize,
    chambers: &mut Vec<Chamber>,
    types: &mut Vec<Gen>,
    dist: &mut HashMap<Chamber, usize>,
    f: &mut impl FnMut(&[Chamber], &[Gen]),
) {
    let current = chambers.last().expect("path is nonempty").clone();
    if !types.is_empty() && current == *to {
        f(chambers, types);
    }
    let remaining = *dist
        .entry(current.clone())
        .or_insert_with(|| b.gallery_distance(&current, to));
    // a longer gallery must still bridge the remaining distance
    if types.len() >= max_len || types.len() + remaining > max_len {
        return;
    }
    for (g, _, nb) in b.neighbors(&current) {
        chambers.push(nb);
        types.push(g);
        gallery_dfs(b, to, max_len, chambers, types, dist, f);
        chambers.pop();
        types.pop();
    }
}

/// Collecting wrapper around [`for_each_gallery`].
pub fn galleries_up_to(b: &Building, from: &Chamber, to: &Chamber, max_len: usize) -> Vec<Gallery> {
    let mut out = Vec::new();
    for_each_gallery(b, from, to, max_len, &mut |chambers, _| {
        out.push(
            b.gallery_from_chambers(chambers.to_vec())
                .expect("steps are adjacent by construction"),
        );
    });
    out
}

// ---------------------------------------------------------------------
// apartment-definition oracle for tree-walls

/// Plain union-find over `0..n`.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new() -> UnionFind {
        UnionFind { parent: Vec::new() }
    }

    pub fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Groups s-panels into tree-walls straight from the definition: two
/// s-panels are equivalent when some apartment has both in a common wall
/// (the fixed panels of one reflection). Sweeps every section-apartment
/// based in `ball(base, base_radius)` and every apartment coordinate of
/// length ≤ `word_radius`, keying panels by the reflection `w s w⁻¹`,
/// and closes transitively. Returns each encountered panel's class root.
pub fn apartment_wall_partition(
    b: &Building,
    s: Gen,
    base_radius: usize,
    word_radius: usize,
) -> BTreeMap<Panel, usize> {
    let sys = b.product().system();
    let mut uf = UnionFind::new();
    let mut panel_ids: BTreeMap<Panel, usize> = BTreeMap::new();
    let words = weyl_ball(sys, word_radius);
    let sections = all_sections(b);
    for base in b.ball(&b.base_chamber(), base_radius) {
        for section in &sections {
            let apt = b.apartment(base.clone(), section.clone()).unwrap();
            // reflection word → id of the first panel seen in its wall
            let mut reflections: BTreeMap<WeylWord, usize> = BTreeMap::new();
            for w in &words {
                let chamber = b.apartment_chamber(&apt, w);
                let panel = b.panel(&chamber, s);
                let id = *panel_ids.entry(panel).or_insert_with(|| uf.make());
                let mut conj = w.letters().to_vec();
                conj.push(s);
                conj.extend(w.letters().iter().rev());
                let reflection = sys.reduce(&conj).unwrap();
                match reflections.get(&reflection) {
                    Some(&first) => uf.union(first, id),
                    None => {
                        reflections.insert(reflection, id);
                    }
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (panel, id) in panel_ids {
        let root = uf.find(id);
        out.insert(panel, root);
    }
    out
}

/// Every constant section: one non-identity local element per generator.
pub fn all_sections(b: &Building) -> Vec<Vec<u16>> {
    let gp = b.product();
    let sys = gp.system();
    let mut sections: Vec<Vec<u16>> = vec![Vec::new()];
    for g in sys.gens() {
        let q = gp.order_of(g);
        let mut next = Vec::new();
        for partial in &sections {
            for h in 1..q {
                let mut ext = partial.clone();
                ext.push(h);
                next.push(ext);
            }
        }
        sections = next;
    }
    sections
}

/// The tree-walls a gallery crosses, one entry per crossing step.
pub fn crossed_walls(b: &Building, gallery: &Gallery) -> Vec<TreeWall> {
    let mut out = Vec::new();
    for (i, &ty) in gallery.types().iter().enumerate() {
        let wall = TreeWall::of(b, &gallery.chambers()[i], ty);
        if !out.contains(&wall) {
            out.push(wall);
        }
    }
    out
}
