//! Known families with closed-form filling counts, used as census fixtures.
//!
//! Each family predicts a candidate count and a χ multiset from its
//! parameters alone; `match_known_family` compares these with a census.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::census::CensusReport;
use crate::dualgraph::arm_automorphisms;
use crate::plumbing::StarGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureExpectation {
    pub count: usize,
    /// χ values, descending
    pub chis: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureVerdict {
    pub family: String,
    pub expected: FixtureExpectation,
    pub got: FixtureExpectation,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// e0 = -4, three arms of -2's; n_j = arm length + 1
    ThreeChains { n: [i64; 3] },
    /// e0 = -4, three single vertices of weight <= -5
    ThreeSingletons { n: [i64; 3] },
    /// e0 <= -k-3, arms of -2's
    DeepCenter { e0: i64, n: Vec<i64> },
    /// e0 = -k-1 with k in {4,5}, arms of -2's
    Lines { n: Vec<i64> },
    /// (-4; [(-2)^q, -(p+3)], [(-2)^p, -(r+3)], [(-2)^r, -(q+3)])
    Wpqr { p: i64, q: i64, r: i64 },
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::ThreeChains { .. } => "e0=-4 three (-2)-chains".into(),
            Family::ThreeSingletons { .. } => "e0=-4 three single vertices <= -5".into(),
            Family::DeepCenter { .. } => "e0<=-k-3 (-2)-chains".into(),
            Family::Lines { n } => format!("e0=-k-1 (-2)-chains, k={}", n.len()),
            Family::Wpqr { p, q, r } => format!("W({p},{q},{r})"),
        }
    }
}

fn chain_lengths(g: &StarGraph) -> Option<Vec<i64>> {
    g.arms.iter().map(|a| a.iter().all(|&b| b == -2).then_some(a.len() as i64 + 1)).collect()
}

/// Arm of the form [(-2)^a, -(b+3)], returned as (a, b).
fn w_arm(arm: &[i64]) -> Option<(i64, i64)> {
    let (&last, rest) = arm.split_last()?;
    (last <= -3 && rest.iter().all(|&x| x == -2)).then(|| (rest.len() as i64, -last - 3))
}

pub fn detect_family(g: &StarGraph) -> Option<Family> {
    let k = g.arm_count() as i64;
    let e0 = g.central_weight;
    if k == 3 && e0 == -4 {
        if let Some(n) = chain_lengths(g) {
            return Some(Family::ThreeChains { n: [n[0], n[1], n[2]] });
        }
        if g.arms.iter().all(|a| a.len() == 1 && a[0] <= -5) {
            let n = [-g.arms[0][0], -g.arms[1][0], -g.arms[2][0]];
            return Some(Family::ThreeSingletons { n });
        }
        let ab: Option<Vec<(i64, i64)>> = g.arms.iter().map(|a| w_arm(a)).collect();
        if let Some(ab) = ab {
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let [(a1, b1), (a2, b2), (a3, b3)] = perm.map(|i| ab[i]);
                if b1 == a2 && b2 == a3 && b3 == a1 {
                    return Some(Family::Wpqr { p: b1, q: a1, r: b2 });
                }
            }
        }
        return None;
    }
    let n = chain_lengths(g)?;
    if k >= 1 && e0 <= -k - 3 {
        return Some(Family::DeepCenter { e0, n });
    }
    if (k == 4 || k == 5) && e0 == -k - 1 {
        return Some(Family::Lines { n });
    }
    None
}

fn sorted_desc(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

pub fn expectation(f: &Family) -> FixtureExpectation {
    let chis = match f {
        Family::ThreeChains { n } => {
            let s: i64 = n.iter().sum();
            vec![s - 1, s - 2]
        }
        Family::ThreeSingletons { .. } => vec![5, 4],
        Family::DeepCenter { e0, n } => {
            let k = n.len() as i64;
            let s: i64 = n.iter().sum();
            // one blow-down per distinct long enough arm length
            let classes: BTreeSet<i64> = n.iter().copied().filter(|&x| x >= -e0 - 3).collect();
            let mut chis = vec![s - k + 2];
            chis.extend(classes.iter().map(|_| s - k + 5 + e0));
            chis
        }
        Family::Lines { n } => line_pattern_chis(n),
        Family::Wpqr { p, q, r } => wpqr_chis(*p, *q, *r),
    };
    FixtureExpectation { count: chis.len(), chis: sorted_desc(chis) }
}

/// Labeled multipoint patterns on k lines, for k in {4,5}.
fn line_patterns(k: usize) -> Vec<Vec<Vec<usize>>> {
    let shapes: Vec<Vec<Vec<usize>>> = match k {
        4 => vec![vec![], vec![vec![0, 1, 2]], vec![vec![0, 1, 2, 3]]],
        5 => vec![
            vec![],
            vec![vec![0, 1, 2]],
            vec![vec![0, 1, 2, 3]],
            vec![vec![0, 1, 2], vec![2, 3, 4]],
            vec![vec![0, 1, 2, 3, 4]],
        ],
        _ => return Vec::new(),
    };
    let mut out: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for perm in permutations(k) {
        for shape in &shapes {
            let mut mps: Vec<Vec<usize>> = shape
                .iter()
                .map(|mp| {
                    let mut m: Vec<usize> = mp.iter().map(|&i| perm[i]).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            mps.sort();
            out.insert(mps);
        }
    }
    out.into_iter().collect()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let arms: Vec<Vec<i64>> = vec![vec![0]; k];
    arm_automorphisms(&arms)
}

/// Basis elements line j needs: one per multipoint through it and one per
/// line it meets in a double point.
fn line_demand(k: usize, mps: &[Vec<usize>], j: usize) -> usize {
    let through = mps.iter().filter(|m| m.contains(&j)).count();
    let double = (0..k).filter(|&i| i != j && !mps.iter().any(|m| m.contains(&i) && m.contains(&j))).count();
    through + double
}

fn line_pattern_chi(n: &[i64], mps: &[Vec<usize>]) -> i64 {
    let k = n.len();
    let mut overlap: i64 = mps.iter().map(|m| m.len() as i64 - 1).sum();
    for a in 0..k {
        for b in a + 1..k {
            if !mps.iter().any(|m| m.contains(&a) && m.contains(&b)) {
                overlap += 1;
            }
        }
    }
    let big_m: i64 = n.iter().map(|x| x + 1).sum::<i64>() - overlap;
    big_m - k as i64 + 1
}

fn line_pattern_chis(n: &[i64]) -> Vec<i64> {
    let k = n.len();
    let autos = arm_automorphisms(&n.iter().map(|&x| vec![x]).collect::<Vec<_>>());
    let realizable: Vec<Vec<Vec<usize>>> = line_patterns(k)
        .into_iter()
        .filter(|mps| (0..k).all(|j| line_demand(k, mps, j) as i64 <= n[j] + 1))
        .collect();
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut chis = Vec::new();
    for mps in realizable {
        let orbit_rep = autos
            .iter()
            .map(|perm| {
                let mut img: Vec<Vec<usize>> = mps
                    .iter()
                    .map(|m| {
                        let mut x: Vec<usize> = m.iter().map(|&i| perm[i]).collect();
                        x.sort_unstable();
                        x
                    })
                    .collect();
                img.sort();
                img
            })
            .min()
            .unwrap_or_else(|| mps.clone());
        if seen.insert(orbit_rep) {
            chis.push(line_pattern_chi(n, &mps));
        }
    }
    chis
}

/// Filling types of W(p,q,r): the plumbing, blow-down of the -4 sphere,
/// blow-downs of arm subchains, their admissible combinations, and the
/// rational ball. Counted up to graph automorphisms.
fn wpqr_chis(p: i64, q: i64, r: i64) -> Vec<i64> {
    // arm j's subchain: (length, plain condition, condition next to the -4 blow-down)
    let sub = [
        (p, p >= 1 && p - 1 <= q, p >= 1 && p <= q),
        (r, r >= 1 && r - 1 <= p, r >= 1 && r <= p),
        (q, q >= 1 && q - 1 <= r, q >= 1 && q <= r),
    ];
    let base = p + q + r + 5;
    // a type = (central blown down?, subset of arms) or the rational ball
    let mut types: Vec<(bool, [bool; 3])> = vec![(false, [false; 3]), (true, [false; 3])];
    for mask in 1u8..8 {
        let set = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
        if (0..3).all(|j| !set[j] || sub[j].1) {
            types.push((false, set));
        }
        if (0..3).all(|j| !set[j] || sub[j].2) {
            types.push((true, set));
        }
    }
    let g = wpqr_graph(p, q, r);
    let autos = arm_automorphisms(&g.arms);
    let mut seen = BTreeSet::new();
    let mut chis = vec![1];
    for (center, set) in types {
        let key = autos
            .iter()
            .map(|perm| {
                let mut img = [false; 3];
                for (new, &old) in perm.iter().enumerate() {
                    img[new] = set[old];
                }
                (center, img)
            })
            .min()
            .expect("identity is always present");
        if seen.insert(key) {
            let lost: i64 = (0..3).filter(|&j| set[j]).map(|j| sub[j].0).sum();
            chis.push(base - i64::from(center) - lost);
        }
    }
    chis
}

pub fn wpqr_graph(p: i64, q: i64, r: i64) -> StarGraph {
    let arm = |twos: i64, end: i64| {
        let mut a = vec![-2; twos as usize];
        a.push(-(end + 3));
        a
    };
    StarGraph { central_weight: -4, arms: vec![arm(q, p), arm(p, r), arm(r, q)] }
}

pub fn match_known_family(g: &StarGraph, report: &CensusReport) -> Vec<FixtureVerdict> {
    let Some(family) = detect_family(g) else {
        return Vec::new();
    };
    let expected = expectation(&family);
    let got = FixtureExpectation { count: report.candidates.len(), chis: sorted_desc(report.chis()) };
    vec![FixtureVerdict { family: family.name(), pass: expected == got, expected, got }]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detection() {
        let g = StarGraph::new(-4, vec![vec![-3]; 3]).unwrap();
        assert_eq!(detect_family(&g), Some(Family::Wpqr { p: 0, q: 0, r: 0 }));
        assert_eq!(detect_family(&wpqr_graph(1, 2, 1)), Some(Family::Wpqr { p: 1, q: 2, r: 1 }));
        let g = StarGraph::new(-7, vec![vec![-2]; 4]).unwrap();
        assert!(matches!(detect_family(&g), Some(Family::DeepCenter { .. })));
        let g = StarGraph::new(-5, vec![vec![-2]; 4]).unwrap();
        assert!(matches!(detect_family(&g), Some(Family::Lines { .. })));
        let g = StarGraph::new(-6, vec![vec![-2]; 4]).unwrap();
        assert_eq!(detect_family(&g), None);
    }

    #[test]
    fn wpqr_counts() {
        assert_eq!(wpqr_chis(0, 0, 0).len(), 3);
        assert_eq!(wpqr_chis(1, 1, 1).len(), 9);
        assert_eq!(wpqr_chis(1, 2, 1).len(), 13);
    }

    #[test]
    fn line_counts() {
        assert_eq!(expectation(&Family::Lines { n: vec![2; 4] }).chis, vec![6, 4, 3]);
        assert_eq!(expectation(&Family::Lines { n: vec![3; 5] }).chis, vec![12, 9, 8, 7, 6]);
        assert_eq!(line_patterns(4).len(), 1 + 4 + 1);
        assert_eq!(line_patterns(5).len(), 1 + 10 + 5 + 15 + 1);
    }
}
