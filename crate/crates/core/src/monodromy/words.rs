//! Words attached to representations of duals with length-one arms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::word::{gen, TwistGen, TwistWord};
use crate::dualgraph::DualGraph;
use crate::homology::HomRep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordsError {
    #[error("dual graph has an arm longer than one vertex")]
    UnsupportedShape,
    #[error("need at least 3 holes, got {0}")]
    TooFewHoles(usize),
    #[error("expected {expected} twist counts, got {got}")]
    Arity { expected: usize, got: usize },
}

/// D_{1..k} D_1^{n_1} .. D_k^{n_k}.
pub fn canonical_word(k: usize, n: &[i64]) -> Result<TwistWord, WordsError> {
    if k < 3 {
        return Err(WordsError::TooFewHoles(k));
    }
    if n.len() != k {
        return Err(WordsError::Arity { expected: k, got: n.len() });
    }
    let mut w = TwistWord::empty(k);
    w.push(TwistGen::new(1..=k).expect("k >= 3"), 1);
    for (j, &e) in n.iter().enumerate() {
        w.push(gen(&[j + 1]), e);
    }
    Ok(w)
}

/// Sort key: multi-hole letters first, by their holes read from the top
/// down in decreasing order; then single holes in increasing order.
fn letter_key(g: &TwistGen) -> (bool, std::cmp::Reverse<Vec<usize>>, usize) {
    if g.len() == 1 {
        return (true, std::cmp::Reverse(Vec::new()), g.holes()[0]);
    }
    let mut desc = g.holes().to_vec();
    desc.reverse();
    (false, std::cmp::Reverse(desc), 0)
}

/// One letter per basis element e, on the holes j whose class contains -e.
pub fn rep_to_word(dg: &DualGraph, rep: &HomRep) -> Result<TwistWord, WordsError> {
    if dg.arms.iter().any(|a| a.len() != 1) {
        return Err(WordsError::UnsupportedShape);
    }
    let k = dg.arm_count();
    let mut count: BTreeMap<TwistGen, i64> = BTreeMap::new();
    for i in 1..=rep.basis_size {
        let holes: Vec<usize> = (1..=k).filter(|&j| rep.classes[j][i] == -1).collect();
        if let Ok(g) = TwistGen::new(holes) {
            *count.entry(g).or_insert(0) += 1;
        }
    }
    let mut letters: Vec<(TwistGen, i64)> = count.into_iter().collect();
    letters.sort_by_key(|(g, _)| letter_key(g));
    let mut w = TwistWord::empty(k);
    for (g, e) in letters {
        w.push(g, e);
    }
    Ok(w)
}

/// The factorizations attached to each multipoint pattern of k lines, all
/// twists about hole j totalling n_j + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineWord {
    /// every pair of lines meets in its own point
    Generic,
    /// lines 1,2,3 through one point
    Triple,
    /// lines 1..4 through one point (k = 5)
    Quadruple,
    /// {1,2,3} and {3,4,5} are both multipoints (k = 5)
    TwoTriples,
    /// all lines through one point
    AllCommon,
}

impl LineWord {
    pub fn all(k: usize) -> &'static [LineWord] {
        match k {
            4 => &[LineWord::Generic, LineWord::Triple, LineWord::AllCommon],
            5 => &[
                LineWord::Generic,
                LineWord::Triple,
                LineWord::Quadruple,
                LineWord::TwoTriples,
                LineWord::AllCommon,
            ],
            _ => &[],
        }
    }

    /// The word for k lines with twist counts n, in the order the
    /// Lefschetz fibrations list their vanishing cycles.
    pub fn word(self, n: &[i64]) -> TwistWord {
        let k = n.len();
        let pairs = |list: &[[usize; 2]]| -> Vec<Vec<usize>> { list.iter().map(|p| p.to_vec()).collect() };
        let (multi, less): (Vec<Vec<usize>>, Vec<i64>) = match (k, self) {
            (4, LineWord::Generic) => {
                (pairs(&[[3, 4], [2, 4], [1, 4], [2, 3], [1, 3], [1, 2]]), vec![2, 2, 2, 2])
            }
            (4, LineWord::Triple) => {
                let mut m = pairs(&[[3, 4], [2, 4], [1, 4]]);
                m.push(vec![1, 2, 3]);
                (m, vec![1, 1, 1, 2])
            }
            (5, LineWord::Generic) => (
                pairs(&[[4, 5], [3, 5], [3, 4], [2, 5], [1, 5], [2, 4], [1, 4], [2, 3], [1, 3], [1, 2]]),
                vec![3, 3, 3, 3, 3],
            ),
            (5, LineWord::Triple) => {
                let mut m = pairs(&[[4, 5], [3, 5], [3, 4], [2, 5], [1, 5], [2, 4], [1, 4]]);
                m.push(vec![1, 2, 3]);
                (m, vec![2, 2, 2, 3, 3])
            }
            (5, LineWord::Quadruple) => {
                let mut m = pairs(&[[4, 5], [3, 5], [2, 5], [1, 5]]);
                m.push(vec![1, 2, 3, 4]);
                (m, vec![1, 1, 1, 1, 3])
            }
            (5, LineWord::TwoTriples) => {
                let mut m = vec![vec![3, 4, 5]];
                m.extend(pairs(&[[2, 5], [1, 5], [2, 4], [1, 4]]));
                m.push(vec![1, 2, 3]);
                (m, vec![2, 2, 1, 2, 2])
            }
            (_, LineWord::AllCommon) => (vec![(1..=k).collect()], vec![0; k]),
            _ => (Vec::new(), vec![0; k]),
        };
        let mut w = TwistWord::empty(k);
        for holes in multi {
            w.push(gen(&holes), 1);
        }
        for j in 0..k {
            w.push(gen(&[j + 1]), n[j] - less[j]);
        }
        w
    }
}
