//! Word-problem checks against the exhaustive rewriting-closure oracle.

mod common;

use common::{all_letter_words, oracle_reduce, w1, w2, w3, w4_square, weyl_ball};
use proptest::prelude::*;
use rabuild_core::coxeter::{CoxeterSystem, Gen};

fn assert_matches_oracle(sys: &CoxeterSystem, word: &[Gen]) {
    let lib = sys.reduce(word).unwrap();
    let oracle = oracle_reduce(sys, word);
    assert_eq!(
        lib.letters(),
        &oracle[..],
        "normal forms disagree on {:?}",
        sys.word_string(word)
    );
}

#[test]
fn exhaustive_small_words_match_oracle() {
    for word in all_letter_words(&w1(), 7) {
        assert_matches_oracle(&w1(), &word);
    }
    for word in all_letter_words(&w2(), 6) {
        assert_matches_oracle(&w2(), &word);
    }
    for word in all_letter_words(&w4_square(), 5) {
        assert_matches_oracle(&w4_square(), &word);
    }
    for word in all_letter_words(&w3(5), 4) {
        assert_matches_oracle(&w3(5), &word);
    }
}

#[test]
fn hand_worked_words_reduce_as_stated() {
    let sys = w2();
    let r = sys.gen_by_name("r").unwrap();
    let s = sys.gen_by_name("s").unwrap();
    let t = sys.gen_by_name("t").unwrap();
    // rsr = s because (rs)² = 1
    assert_eq!(sys.reduce(&[r, s, r]).unwrap().letters(), &[s]);
    assert_eq!(sys.length(&[r, s, r]).unwrap(), 1);
    // ss = identity
    assert!(sys.reduce(&[s, s]).unwrap().is_empty());
    // rs and sr are the same element, st and ts are not
    assert!(sys.words_equal(&[r, s], &[s, r]).unwrap());
    assert!(!sys.words_equal(&[s, t], &[t, s]).unwrap());
    // in W₁ nothing cancels: stst is reduced
    let free = w1();
    let fs = free.gen_by_name("s").unwrap();
    let ft = free.gen_by_name("t").unwrap();
    assert_eq!(free.length(&[fs, ft, fs, ft]).unwrap(), 4);
}

#[test]
fn equality_decisions_match_oracle_on_word_pairs() {
    let sys = w2();
    let words = all_letter_words(&sys, 4);
    for a in &words {
        for b in &words {
            let lib = sys.words_equal(a, b).unwrap();
            let oracle = oracle_reduce(&sys, a) == oracle_reduce(&sys, b);
            assert_eq!(lib, oracle);
        }
    }
}

#[test]
fn reduced_expressions_ending_in_a_letter_agree_with_descent() {
    // w has a reduced expression ending in s exactly when l(ws) < l(w)
    for sys in [w2(), w4_square()] {
        for w in weyl_ball(&sys, 5) {
            for s in sys.gens() {
                let mut extended = w.letters().to_vec();
                extended.push(s);
                let descends = oracle_reduce(&sys, &extended).len() < w.len();
                match sys.reduced_expression_ending_in(&w, s) {
                    Some(expr) => {
                        assert!(descends, "spurious descent for {}", sys.word_string(w.letters()));
                        assert_eq!(expr.len(), w.len());
                        assert_eq!(*expr.last().unwrap(), s);
                        assert!(sys.words_equal(&expr, w.letters()).unwrap());
                    }
                    None => assert!(!descends, "missed descent for {}", sys.word_string(w.letters())),
                }
            }
        }
    }
}

#[test]
fn word_text_roundtrips() {
    let sys = w3(5);
    for w in weyl_ball(&sys, 4) {
        let text = sys.word_string(w.letters());
        let back = sys.parse_word(&text).unwrap();
        assert_eq!(&back[..], w.letters());
    }
    assert_eq!(sys.word_string(&[]), "e");
    assert!(sys.parse_word("e").unwrap().is_empty());
    assert!(sys.parse_word("  ").unwrap().is_empty());
}

proptest! {
    #[test]
    fn random_words_match_oracle_on_w2(raw in prop::collection::vec(0u16..3, 0..12)) {
        let sys = w2();
        let word: Vec<Gen> = raw.into_iter().map(Gen).collect();
        let lib = sys.reduce(&word).unwrap();
        prop_assert_eq!(lib.letters(), &oracle_reduce(&sys, &word)[..]);
    }

    #[test]
    fn random_words_match_oracle_on_the_square(raw in prop::collection::vec(0u16..4, 0..10)) {
        let sys = w4_square();
        let word: Vec<Gen> = raw.into_iter().map(Gen).collect();
        let lib = sys.reduce(&word).unwrap();
        prop_assert_eq!(lib.letters(), &oracle_reduce(&sys, &word)[..]);
    }

    #[test]
    fn reduction_is_idempotent_and_length_monotone(raw in prop::collection::vec(0u16..5, 0..14)) {
        let sys = w3(5);
        let word: Vec<Gen> = raw.into_iter().map(Gen).collect();
        let once = sys.reduce(&word).unwrap();
        let twice = sys.reduce(once.letters()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.len() <= word.len());
    }
}
