//! Tree-wall semantics checked from the definition: wall equivalence via
//! apartment walls (reflection fixed-panel sets), epicormic sets, gallery
//! crossings, retraction preimages and separation.

mod common;

use std::collections::BTreeSet;

use common::{
    apartment_wall_partition, bfs_components, crossed_walls, galleries_up_to, weyl_ball, x1, x2,
    x3,
};
use rabuild_core::building::Building;
use rabuild_core::coxeter::PerpClass;
use rabuild_core::treewall::{TreeWall, WallClass};

/// The library's wall identity must induce the same partition of
/// s-panels as the definition: equivalence through common apartment
/// walls, transitively closed over a window of section-apartments.
fn assert_partitions_agree(b: &Building, window: usize, base_radius: usize, word_radius: usize) {
    let sys = b.product().system().clone();
    for s in sys.gens() {
        let oracle = apartment_wall_partition(b, s, base_radius, word_radius);
        let chambers = b.ball(&b.base_chamber(), window);
        for c in &chambers {
            for d in &chambers {
                let same_lib = TreeWall::of(b, c, s) == TreeWall::of(b, d, s);
                let pc = b.panel(c, s);
                let pd = b.panel(d, s);
                let same_oracle = oracle[&pc] == oracle[&pd];
                assert_eq!(
                    same_lib,
                    same_oracle,
                    "wall identity disagrees for type {} panels of {} and {}",
                    sys.name(s),
                    b.product().format_element(c.element()),
                    b.product().format_element(d.element()),
                );
            }
        }
    }
}

#[test]
fn wall_partition_matches_the_apartment_definition_on_x2() {
    assert_partitions_agree(&x2(2, 2, 3), 2, 4, 4);
}

#[test]
fn wall_partition_matches_the_apartment_definition_on_x3() {
    assert_partitions_agree(&x3(5, 2), 2, 4, 4);
}

#[test]
fn wall_partition_matches_the_apartment_definition_on_the_tree() {
    assert_partitions_agree(&x1(2, 3), 3, 5, 5);
}

#[test]
fn trichotomy_matches_wall_sizes_on_windows() {
    // vertex wall: exactly one panel in its class within any window
    let tree = x1(2, 3);
    let sys = tree.product().system().clone();
    for s in sys.gens() {
        let wall = TreeWall::of(&tree, &tree.base_chamber(), s);
        assert_eq!(wall.class(), WallClass::Vertex);
        let epic = wall.epicormic_chambers(&tree, 6);
        assert!(!epic.truncated);
        assert_eq!(epic.chambers.len(), tree.product().order_of(s) as usize);
    }
    // finite wall: |⟨s⊥⟩| panels; X₂ r-wall has q_r·q_s chambers
    let b = x2(2, 2, 3);
    let r = b.product().system().gen_by_name("r").unwrap();
    let wall = TreeWall::of(&b, &b.base_chamber(), r);
    assert_eq!(wall.class(), WallClass::Finite);
    let epic = wall.epicormic_chambers(&b, 10);
    assert!(!epic.truncated);
    assert_eq!(epic.chambers.len(), 4);
    // infinite wall: strictly growing epicormic windows
    let bourdon = x3(5, 2);
    let s1 = bourdon.product().system().gen_by_name("s1").unwrap();
    let wall = TreeWall::of(&bourdon, &bourdon.base_chamber(), s1);
    assert_eq!(wall.class(), WallClass::Infinite);
    let small = wall.epicormic_chambers(&bourdon, 2);
    let large = wall.epicormic_chambers(&bourdon, 4);
    assert!(small.truncated && large.truncated);
    assert!(small.chambers.len() < large.chambers.len());
}

#[test]
fn epicormic_sets_match_brute_force_over_windows() {
    for b in [x2(2, 2, 3), x3(5, 2)] {
        let sys = b.product().system().clone();
        let base = b.base_chamber();
        for s in sys.gens() {
            let wall = TreeWall::of(&b, &base, s);
            let window = b.ball(&base, 3);
            let brute: BTreeSet<_> = window
                .iter()
                .filter(|c| wall.epicormic(&b, c))
                .cloned()
                .collect();
            // a chamber is epicormic iff its s-panel's wall is this wall
            let by_definition: BTreeSet<_> = window
                .iter()
                .filter(|c| TreeWall::of(&b, c, s) == wall)
                .cloned()
                .collect();
            assert_eq!(brute, by_definition);
            // the base is always epicormic at its own wall
            assert!(brute.contains(&base));
        }
    }
}

#[test]
fn epicormic_chambers_in_an_apartment_biject_with_s_perp() {
    // every epicormic chamber of the default apartment on the base's side
    // corresponds to an element of ⟨s⊥⟩, and vice versa
    for b in [x2(2, 2, 3), x3(5, 2)] {
        let sys = b.product().system().clone();
        let base = b.base_chamber();
        let apt = b.default_apartment(base.clone());
        for s in sys.gens() {
            let wall = TreeWall::of(&b, &base, s);
            let radius = 4;
            let mut same_side_epicormic = BTreeSet::new();
            for w in weyl_ball(&sys, radius) {
                let c = b.apartment_chamber(&apt, &w);
                if !wall.epicormic(&b, &c) {
                    continue;
                }
                let gallery = b.minimal_gallery(&base, &c);
                if !wall.crosses(&b, &gallery) {
                    same_side_epicormic.insert(c);
                }
            }
            let mut expected = BTreeSet::new();
            let perp = sys.s_perp(s);
            for w in weyl_ball(&sys, radius) {
                if w.letters().iter().all(|g| perp.contains(g)) {
                    expected.insert(b.apartment_chamber(&apt, &w));
                }
            }
            assert_eq!(same_side_epicormic, expected);
        }
    }
}

#[test]
fn retraction_preimage_of_the_wall_is_the_wall() {
    // ρ⁻¹(T ∩ A) = T on a window: a chamber's image is epicormic exactly
    // when the chamber is
    for b in [x2(2, 2, 3), x3(5, 2)] {
        let sys = b.product().system().clone();
        let base = b.base_chamber();
        let apt = b.default_apartment(base.clone());
        for s in sys.gens() {
            let wall = TreeWall::of(&b, &base, s);
            for psi in b.ball(&base, 3) {
                let image = b.retraction(&apt, &psi);
                assert_eq!(
                    wall.epicormic(&b, &image),
                    wall.epicormic(&b, &psi),
                    "retraction moved a chamber across the type-{} wall",
                    sys.name(s)
                );
            }
        }
    }
}

#[test]
fn minimal_galleries_cross_each_wall_at_most_once() {
    let b = x2(2, 2, 3);
    let base = b.base_chamber();
    for c in b.ball(&base, 4) {
        let g = b.minimal_gallery(&base, &c);
        let mut seen = Vec::new();
        for (i, &ty) in g.types().iter().enumerate() {
            let wall = TreeWall::of(&b, &g.chambers()[i], ty);
            assert!(
                !seen.contains(&wall),
                "minimal gallery to {} crosses a wall twice",
                b.product().format_element(c.element())
            );
            seen.push(wall);
        }
    }
}

#[test]
fn every_gallery_crosses_what_a_minimal_gallery_crosses() {
    // small-scale version of the crossing lemma, with collected galleries
    let b = x2(2, 2, 3);
    let ball = b.ball(&b.base_chamber(), 2);
    for c in &ball {
        for d in &ball {
            if c >= d {
                continue;
            }
            let alpha = b.minimal_gallery(c, d);
            let walls = crossed_walls(&b, &alpha);
            let dist = b.gallery_distance(c, d);
            for beta in galleries_up_to(&b, c, d, dist + 2) {
                for wall in &walls {
                    assert!(wall.crosses(&b, &beta));
                }
            }
        }
    }
}

#[test]
fn separation_reports_pass_on_small_windows() {
    let b = x2(2, 2, 3);
    let t = b.product().system().gen_by_name("t").unwrap();
    let wall = TreeWall::of(&b, &b.base_chamber(), t);
    let report = wall.separation_report(&b, 4);
    assert!(!report.inconclusive);
    assert!(report.pass);
    assert_eq!(report.labels_found, 3);
    assert_eq!(report.witnesses.len(), 3);

    let bourdon = x3(5, 2);
    let s1 = bourdon.product().system().gen_by_name("s1").unwrap();
    let wall = TreeWall::of(&bourdon, &bourdon.base_chamber(), s1);
    let report = wall.separation_report(&bourdon, 3);
    assert!(!report.inconclusive);
    assert!(report.pass);
    assert_eq!(report.labels_found, 2);
}

#[test]
fn component_labels_agree_with_bfs_components_off_the_wall() {
    let b = x2(2, 2, 3);
    let t = b.product().system().gen_by_name("t").unwrap();
    let wall = TreeWall::of(&b, &b.base_chamber(), t);
    let window = b.ball(&b.base_chamber(), 4);
    // BFS components of the window with crossing edges removed
    let roots = bfs_components(&b, &window, |a, c| {
        !(b.adjacency_type(a, c) == Some(t) && wall.epicormic(&b, a) && wall.epicormic(&b, c))
    });
    for c in &window {
        for d in &window {
            if roots[c] == roots[d] {
                assert_eq!(
                    wall.component_label(&b, c).index,
                    wall.component_label(&b, d).index,
                    "BFS-connected chambers got different labels"
                );
            }
        }
    }
    // the q_t chambers over the base panel land in q_t distinct labels
    let panel = wall.base_panel(&b);
    let labels: BTreeSet<u16> = b
        .panel_chambers(&panel)
        .iter()
        .map(|c| wall.component_label(&b, c).index)
        .collect();
    assert_eq!(labels.len(), 3);
}

#[test]
fn perp_classification_matches_hand_worked_systems() {
    let w1 = x1(2, 3);
    let sys1 = w1.product().system();
    for s in sys1.gens() {
        assert_eq!(sys1.classify_perp(s), PerpClass::Trivial);
    }
    let b2 = x2(2, 2, 3);
    let sys2 = b2.product().system();
    let g = |n: &str| sys2.gen_by_name(n).unwrap();
    assert_eq!(sys2.classify_perp(g("r")), PerpClass::FiniteNontrivial);
    assert_eq!(sys2.classify_perp(g("s")), PerpClass::FiniteNontrivial);
    assert_eq!(sys2.classify_perp(g("t")), PerpClass::Trivial);
    let b3 = x3(5, 2);
    let sys3 = b3.product().system();
    for s in sys3.gens() {
        assert_eq!(sys3.classify_perp(s), PerpClass::Infinite);
    }
}
