mod common;

use std::collections::BTreeSet;

use common::{brute_force_reps, classes_from_columns, quotient_key, rep_key, small_duals, vertex_symmetries};
use sfs_fillings::dualgraph::DualGraph;
use sfs_fillings::homology::{canonical_form, check_rep, enumerate_reps, vertex_automorphisms, HomRep};

#[test]
fn enumerator_matches_brute_force() {
    let duals = small_duals(6, 8);
    assert!(duals.len() > 50, "{}", duals.len());
    for dg in &duals {
        let oracle = brute_force_reps(dg);
        let reps = enumerate_reps(dg, false);
        let got: BTreeSet<_> = reps.iter().map(rep_key).collect();
        assert_eq!(got.len(), reps.len(), "duplicates for {:?}", dg.arms);
        assert_eq!(got, oracle, "raw enumeration differs for {:?}", dg.arms);

        let syms = vertex_symmetries(&dg.arms);
        let want_q: BTreeSet<_> =
            oracle.iter().map(|cols| quotient_key(&classes_from_columns(dg, cols), &syms)).collect();
        let q = enumerate_reps(dg, true);
        let got_q: BTreeSet<_> = q.iter().map(|r| quotient_key(&r.classes, &syms)).collect();
        assert_eq!(got_q.len(), q.len(), "quotient duplicates for {:?}", dg.arms);
        assert_eq!(got_q, want_q, "quotient differs for {:?}", dg.arms);
    }
}

#[test]
fn every_rep_is_valid_and_pairwise_share_one() {
    for dg in small_duals(6, 8) {
        let adj = dg.center_adjacent();
        for rep in enumerate_reps(&dg, true) {
            assert!(check_rep(&dg, &rep).unwrap().ok());
            for (x, &a) in adj.iter().enumerate() {
                for &b in &adj[x + 1..] {
                    let shared = (1..=rep.basis_size)
                        .filter(|&i| rep.classes[a][i] == -1 && rep.classes[b][i] == -1)
                        .count();
                    assert_eq!(shared, 1);
                }
            }
        }
    }
}

#[test]
fn canonical_form_is_idempotent_and_label_free() {
    for dg in small_duals(5, 7) {
        let auts = vertex_automorphisms(&dg);
        for rep in enumerate_reps(&dg, false) {
            let c = canonical_form(&rep, &auts);
            assert_eq!(canonical_form(&c, &auts), c);
            let m = rep.basis_size;
            let rev: Vec<usize> = (0..m).rev().collect();
            let scrambled: HomRep = rep.permute_basis(&rev);
            assert_eq!(canonical_form(&scrambled, &auts), c);
        }
    }
}

#[test]
fn short_arm_duals_follow_the_catalog() {
    use sfs_fillings::homology::{short_arm_shape, ShortArmShape};
    // d = k + 1 and d > k + 1 with long arms [-3], [-4]
    for arms in [
        vec![vec![-3], vec![-3], vec![-1]],
        vec![vec![-3], vec![-4], vec![-3], vec![-1]],
        vec![vec![-4], vec![-4], vec![-1], vec![-1]],
        vec![vec![-4], vec![-3], vec![-1], vec![-1], vec![-1]],
    ] {
        let dg = DualGraph::from_arms(arms.clone()).unwrap();
        let extra = arms.iter().filter(|a| **a == [-1]).count();
        let reps = enumerate_reps(&dg, false);
        assert!(!reps.is_empty());
        for rep in reps {
            let shape = short_arm_shape(&dg, &rep);
            assert!(shape.is_some(), "{arms:?}\n{rep}");
            if extra > 1 {
                assert!(matches!(shape, Some(ShortArmShape::Common | ShortArmShape::AllButOne)), "{arms:?}");
            }
        }
    }
}
