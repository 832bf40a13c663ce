use proptest::prelude::*;
use sfs_fillings::dualgraph::DualGraph;
use sfs_fillings::homology::{configuration_of, enumerate_reps};
use sfs_fillings::monodromy::search::neighbours;
use sfs_fillings::monodromy::word::{disjoint, gen};
use sfs_fillings::monodromy::*;

fn word(s: &str, k: usize) -> TwistWord {
    TwistWord::parse(s, k).unwrap()
}

fn line_dual(n: &[i64]) -> DualGraph {
    DualGraph::from_arms(n.iter().map(|&x| vec![-x]).collect()).unwrap()
}

fn random_word(k: usize) -> impl Strategy<Value = TwistWord> {
    let letter = (prop::collection::btree_set(1..=k, 1..=k), 1i64..=2);
    prop::collection::vec(letter, 1..=8).prop_map(move |ls| {
        let mut w = TwistWord::empty(k);
        for (holes, e) in ls {
            w.push(TwistGen::new(holes).unwrap(), e);
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// 100 walks of 100 moves each; every step is replayed and checked.
    #[test]
    fn random_walks_preserve_degrees(start in random_word(5), picks in prop::collection::vec(any::<u32>(), 100)) {
        let mut w = start;
        let deg = hole_degree(&w);
        let pairs = pair_degree(&w);
        for p in picks {
            let nb = neighbours(&w, true);
            let (next, moves) = if nb.is_empty() {
                // commutations only: take any legal swap
                let (nf, m) = normal_form(&w);
                (nf, m)
            } else {
                nb[p as usize % nb.len()].clone()
            };
            let t = ProofTrace::new(moves);
            prop_assert_eq!(&t.replay(&w).unwrap(), &next);
            let lanterns = (t.count("lantern_forward") + t.count("lantern_backward")) as i64;
            let net = t.count("lantern_backward") as i64 - t.count("lantern_forward") as i64;
            if lanterns > 0 && t.count("lemma52_forward") + t.count("lemma52_backward") == 0 {
                prop_assert_eq!(next.len() as i64 - w.len() as i64, net);
            }
            prop_assert_eq!(hole_degree(&next), deg.clone());
            prop_assert_eq!(pair_degree(&next), pairs.clone());
            w = next;
        }
    }

    #[test]
    fn single_moves_preserve_hole_degree(w in random_word(4), i in 0usize..16) {
        let deg = hole_degree(&w);
        if let Ok(x) = apply_move(&w, &Move::Commute { pos: i }) {
            prop_assert_eq!(hole_degree(&x), deg.clone());
        }
        for dir in [Direction::Forward, Direction::Backward] {
            if let Ok(x) = moves::apply_lantern(&w, i, dir, None) {
                prop_assert_eq!(hole_degree(&x), deg.clone());
                prop_assert_eq!((x.len() as i64 - w.len() as i64).abs(), 1);
            }
        }
    }

    #[test]
    fn verdicts_are_symmetric(a in random_word(3), b in random_word(3)) {
        let x = prove_equivalent(&a, &b, 2_000);
        let y = prove_equivalent(&b, &a, 2_000);
        match (&x, &y) {
            (Verdict::Proven { trace }, Verdict::Proven { trace: back }) => {
                prop_assert_eq!(&trace.replay(&a).unwrap(), &b);
                prop_assert_eq!(&back.replay(&b).unwrap(), &a);
            }
            (Verdict::Disproven { .. }, Verdict::Disproven { .. }) => {}
            (Verdict::Unknown { .. }, Verdict::Unknown { .. }) => {}
            _ => prop_assert!(false, "asymmetric: {:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn rep_words_have_the_right_degrees(n in prop::collection::vec(1i64..=4, 3..=5)) {
        let dg = line_dual(&n);
        for rep in enumerate_reps(&dg, false) {
            let w = rep_to_word(&dg, &rep).unwrap();
            let want: Vec<i64> = n.iter().map(|x| x + 1).collect();
            prop_assert_eq!(hole_degree(&w), want);
        }
    }
}

use sfs_fillings::monodromy::moves;

#[test]
fn all_common_rep_gives_the_canonical_word() {
    for n in
        [vec![2, 3, 4], vec![1, 1, 2], vec![2, 2, 2, 2], vec![3, 1, 2, 5], vec![3; 5], vec![1, 2, 3, 4, 5]]
    {
        let k = n.len();
        let dg = line_dual(&n);
        let reps = enumerate_reps(&dg, true);
        let common = reps
            .iter()
            .find(|r| configuration_of(&dg, r).multipoints == vec![(1..=k).collect::<Vec<_>>()])
            .unwrap_or_else(|| panic!("{n:?}"));
        assert_eq!(rep_to_word(&dg, common).unwrap(), canonical_word(k, &n).unwrap());
    }
}

#[test]
fn case_b_word_for_three_lines() {
    let n = [3, 4, 2];
    let dg = line_dual(&n);
    let reps = enumerate_reps(&dg, true);
    let case_b = reps.iter().find(|r| configuration_of(&dg, r).multipoints.is_empty()).unwrap();
    let w = rep_to_word(&dg, case_b).unwrap();
    assert_eq!(w.to_string(), "D{2,3} D{1,3} D{1,2} D{1}^2 D{2}^3 D{3}");
    // one lantern away from the canonical word
    let Verdict::Proven { trace } = prove_equivalent(&w, &canonical_word(3, &n).unwrap(), 1_000) else {
        panic!()
    };
    assert_eq!(trace.count("lantern_forward") + trace.count("lantern_backward"), 1);
}

#[test]
fn generic_rep_matches_the_displayed_word() {
    let n = [2, 3, 4, 5];
    let dg = line_dual(&n);
    let generic = enumerate_reps(&dg, true)
        .into_iter()
        .find(|r| configuration_of(&dg, r).multipoints.is_empty())
        .unwrap();
    let w = rep_to_word(&dg, &generic).unwrap();
    assert_eq!(normal_form(&w).0, normal_form(&LineWord::Generic.word(&n)).0);
    let w4c = rep_to_word(&dg, &enumerate_reps(&dg, true).into_iter().last().unwrap()).unwrap();
    assert!(w4c.len() <= w.len());
}

#[test]
fn every_four_line_candidate_is_the_same_monodromy() {
    for n in [vec![2, 2, 2, 2], vec![2, 3, 2, 4], vec![1, 2, 3, 4]] {
        let dg = line_dual(&n);
        let target = canonical_word(4, &n).unwrap();
        for rep in enumerate_reps(&dg, false) {
            let w = rep_to_word(&dg, &rep).unwrap();
            match prove_equivalent(&w, &target, DEFAULT_BUDGET) {
                Verdict::Proven { trace } => assert_eq!(trace.replay(&w).unwrap(), target),
                v => panic!("{w}: {v:?}"),
            }
        }
    }
}

#[test]
fn five_line_words_come_from_labeled_reps() {
    let n = [3; 5];
    let dg = line_dual(&n);
    let words: Vec<TwistWord> =
        enumerate_reps(&dg, false).iter().map(|r| normal_form(&rep_to_word(&dg, r).unwrap()).0).collect();
    let target = canonical_word(5, &n).unwrap();
    for lw in LineWord::all(5) {
        let w = lw.word(&n);
        assert!(words.contains(&normal_form(&w).0), "{lw:?}");
        assert!(prove_equivalent(&w, &target, DEFAULT_BUDGET).is_proven(), "{lw:?}");
    }
}

#[test]
fn scripted_chains_replay() {
    for (k, n) in [(4, vec![2; 4]), (5, vec![3; 5]), (4, vec![2, 5, 3, 4]), (5, vec![3, 4, 5, 6, 7])] {
        let ws = LineWord::all(k);
        for pair in ws.windows(2) {
            let (a, b) = (pair[0].word(&n), pair[1].word(&n));
            let trace = prove_with_hints(&a, &b, &line_hints(k, pair[0], pair[1])).unwrap();
            assert_eq!(trace.replay(&a).unwrap(), b);
            let flat = expand_macros(&trace).unwrap();
            assert_eq!(flat.count("lemma52_forward") + flat.count("lemma52_backward"), 0);
            assert_eq!(flat.replay(&a).unwrap(), b);
        }
    }
}

#[test]
fn macro_expansion_uses_m_minus_one_lanterns() {
    for m in 2..=5usize {
        let blocks: Vec<TwistGen> = (1..=m + 1).rev().map(|h| gen(&[h])).collect();
        let (left, right, t) = lemma52_expand(&blocks).unwrap();
        assert_eq!(t.count("lantern_forward") + t.count("lantern_backward"), m - 1);
        assert_eq!(left.len(), 2 * m - 1);
        assert_eq!(right.len(), m + 2);
    }
}

#[test]
fn paper_examples() {
    assert!(disjoint(&gen(&[3, 4]), &gen(&[2, 5])));
    assert!(!disjoint(&gen(&[1, 3]), &gen(&[2, 4])));
    assert!(disjoint(&gen(&[1]), &gen(&[1, 2, 3])));
    let m5b = LineWord::Triple.word(&[3; 5]);
    // D{3,4} sits at position 2, D{2,5} right after it
    assert_eq!(m5b.letters[2].gen, gen(&[3, 4]));
    let swapped = moves::apply_commutation(&m5b, 2).unwrap();
    assert_eq!(hole_degree(&swapped), hole_degree(&m5b));
    let v = prove_equivalent(&word("D{1}", 2), &word("D{2}", 2), 10);
    assert!(matches!(v, Verdict::Disproven { .. }));
    let v = prove_equivalent(&word("D{1}D{2}D{3}D{1,2,3}", 3), &word("D{1,2}D{2,3}D{1,3}", 3), 10);
    assert!(v.is_proven());
}

#[test]
fn blind_search_finds_the_four_line_equivalences() {
    let n = [2; 4];
    for (a, b) in [
        (LineWord::Generic, LineWord::Triple),
        (LineWord::Triple, LineWord::AllCommon),
        (LineWord::Generic, LineWord::AllCommon),
    ] {
        let (wa, wb) = (a.word(&n), b.word(&n));
        let Verdict::Proven { trace } = prove_equivalent(&wa, &wb, DEFAULT_BUDGET) else {
            panic!("{a:?} {b:?}")
        };
        assert_eq!(trace.replay(&wa).unwrap(), wb);
    }
}
