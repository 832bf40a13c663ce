//! Rewriting moves on twist words and replayable proof traces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::word::{Twist, TwistGen, TwistWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("position {0} out of range")]
    OutOfRange(usize),
    #[error("letters at {0} and {} do not commute", .0 + 1)]
    NotDisjoint(usize),
    #[error("pattern mismatch at {pos}: {msg}")]
    PatternMismatch { pos: usize, msg: String },
    #[error("blocks are not pairwise disjoint and nonempty")]
    BadBlocks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

/// One step of a proof. Positions index the expanded word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// swap letters pos and pos+1
    Commute { pos: usize },
    /// D_A D_B D_C D_{A∪B∪C} -> D_{A∪B} D_{B∪C} D_{A∪C}
    LanternForward { pos: usize, a: TwistGen, b: TwistGen, c: TwistGen },
    /// D_{A∪B} D_{B∪C} D_{A∪C} -> D_A D_B D_C D_{A∪B∪C}
    LanternBackward { pos: usize, a: TwistGen, b: TwistGen, c: TwistGen },
    /// D_{B0}^{m-1} D_{B1}..D_{Bm} D_U -> D_{B0∪B1}..D_{B0∪Bm} D_{B1∪..∪Bm},
    /// the right side rotated left by `rotation` letters
    Lemma52Forward {
        pos: usize,
        blocks: Vec<TwistGen>,
        #[serde(default, skip_serializing_if = "is_zero")]
        rotation: usize,
    },
    /// inverse of `Lemma52Forward`
    Lemma52Backward {
        pos: usize,
        blocks: Vec<TwistGen>,
        #[serde(default, skip_serializing_if = "is_zero")]
        rotation: usize,
    },
    /// insert D_S D_S^-1 (or D_S^-1 D_S when `inverse_first`)
    FreeInsert { pos: usize, holes: TwistGen, inverse_first: bool },
    /// remove such a pair
    FreeCancel { pos: usize, holes: TwistGen, inverse_first: bool },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::Commute { .. } => "commute",
            Move::LanternForward { .. } => "lantern_forward",
            Move::LanternBackward { .. } => "lantern_backward",
            Move::Lemma52Forward { .. } => "lemma52_forward",
            Move::Lemma52Backward { .. } => "lemma52_backward",
            Move::FreeInsert { .. } => "free_insert",
            Move::FreeCancel { .. } => "free_cancel",
        }
    }

    pub fn pos(&self) -> usize {
        match self {
            Move::Commute { pos }
            | Move::LanternForward { pos, .. }
            | Move::LanternBackward { pos, .. }
            | Move::Lemma52Forward { pos, .. }
            | Move::Lemma52Backward { pos, .. }
            | Move::FreeInsert { pos, .. }
            | Move::FreeCancel { pos, .. } => *pos,
        }
    }

    pub fn shifted(&self, by: usize) -> Move {
        let mut m = self.clone();
        match &mut m {
            Move::Commute { pos }
            | Move::LanternForward { pos, .. }
            | Move::LanternBackward { pos, .. }
            | Move::Lemma52Forward { pos, .. }
            | Move::Lemma52Backward { pos, .. }
            | Move::FreeInsert { pos, .. }
            | Move::FreeCancel { pos, .. } => *pos += by,
        }
        m
    }

    /// The move undoing this one.
    pub fn inverse(&self) -> Move {
        match self.clone() {
            Move::Commute { pos } => Move::Commute { pos },
            Move::LanternForward { pos, a, b, c } => Move::LanternBackward { pos, a, b, c },
            Move::LanternBackward { pos, a, b, c } => Move::LanternForward { pos, a, b, c },
            Move::Lemma52Forward { pos, blocks, rotation } => Move::Lemma52Backward { pos, blocks, rotation },
            Move::Lemma52Backward { pos, blocks, rotation } => Move::Lemma52Forward { pos, blocks, rotation },
            Move::FreeInsert { pos, holes, inverse_first } => Move::FreeCancel { pos, holes, inverse_first },
            Move::FreeCancel { pos, holes, inverse_first } => Move::FreeInsert { pos, holes, inverse_first },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ProofTrace {
    pub moves: Vec<Move>,
}

impl ProofTrace {
    pub fn new(moves: Vec<Move>) -> Self {
        Self { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn extend(&mut self, other: ProofTrace) {
        self.moves.extend(other.moves);
    }

    pub fn inverse(&self) -> ProofTrace {
        ProofTrace { moves: self.moves.iter().rev().map(Move::inverse).collect() }
    }

    pub fn replay(&self, w: &TwistWord) -> Result<TwistWord, MoveError> {
        self.moves.iter().try_fold(w.clone(), |w, m| apply_move(&w, m))
    }

    pub fn count(&self, name: &str) -> usize {
        self.moves.iter().filter(|m| m.name() == name).count()
    }
}

fn pairwise_disjoint(sets: &[&TwistGen]) -> bool {
    sets.iter().enumerate().all(|(i, a)| sets[i + 1..].iter().all(|b| !a.meets(b)))
}

fn expect_block(w: &TwistWord, pos: usize, want: &[Twist]) -> Result<(), MoveError> {
    let got = w.letters.get(pos..pos + want.len()).ok_or(MoveError::OutOfRange(pos + want.len()))?;
    if got != want {
        let show = |ts: &[Twist]| {
            let mut x = TwistWord::empty(w.page_holes);
            x.letters = ts.to_vec();
            x.to_string()
        };
        return Err(MoveError::PatternMismatch {
            pos,
            msg: format!("found {} where {} was expected", show(got), show(want)),
        });
    }
    Ok(())
}

fn splice(w: &TwistWord, pos: usize, remove: usize, insert: Vec<Twist>) -> TwistWord {
    let mut letters = w.letters[..pos].to_vec();
    letters.extend(insert);
    letters.extend_from_slice(&w.letters[pos + remove..]);
    TwistWord { page_holes: w.page_holes, letters }
}

pub fn lantern_sides(a: &TwistGen, b: &TwistGen, c: &TwistGen) -> (Vec<Twist>, Vec<Twist>) {
    let abc = a.union(b).union(c);
    let left = vec![Twist::pos(a.clone()), Twist::pos(b.clone()), Twist::pos(c.clone()), Twist::pos(abc)];
    let right = vec![Twist::pos(a.union(b)), Twist::pos(b.union(c)), Twist::pos(a.union(c))];
    (left, right)
}

/// Left and right sides of the macro move for blocks B0..Bm.
pub fn lemma52_sides(blocks: &[TwistGen]) -> Result<(Vec<Twist>, Vec<Twist>), MoveError> {
    let refs: Vec<&TwistGen> = blocks.iter().collect();
    if blocks.len() < 3 || !pairwise_disjoint(&refs) {
        return Err(MoveError::BadBlocks);
    }
    let m = blocks.len() - 1;
    let b0 = &blocks[0];
    let mut left = vec![Twist::pos(b0.clone()); m - 1];
    left.extend(blocks[1..].iter().map(|b| Twist::pos(b.clone())));
    let rest = blocks[2..].iter().fold(blocks[1].clone(), |u, b| u.union(b));
    left.push(Twist::pos(rest.union(b0)));
    let mut right: Vec<Twist> = blocks[1..].iter().map(|b| Twist::pos(b0.union(b))).collect();
    right.push(Twist::pos(rest));
    Ok((left, right))
}

/// The left side is a product of boundary twists of the sub-surface, so a
/// rotation of the right side is still a relation. Only rotations whose moved
/// letters commute with the whole left side are accepted; those expand into
/// commutations and free pairs.
pub fn lemma52_sides_rotated(
    blocks: &[TwistGen],
    rotation: usize,
) -> Result<(Vec<Twist>, Vec<Twist>), MoveError> {
    let (l, mut r) = lemma52_sides(blocks)?;
    if rotation >= r.len() {
        return Err(MoveError::BadBlocks);
    }
    if r[..rotation].iter().any(|t| l.iter().any(|x| !t.commutes(x))) {
        return Err(MoveError::PatternMismatch { pos: 0, msg: "rotated letters do not commute".into() });
    }
    r.rotate_left(rotation);
    Ok((l, r))
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

pub fn apply_move(w: &TwistWord, m: &Move) -> Result<TwistWord, MoveError> {
    match m {
        Move::Commute { pos } => apply_commutation(w, *pos),
        Move::LanternForward { pos, a, b, c } => apply_lantern(w, *pos, Direction::Forward, Some((a, b, c))),
        Move::LanternBackward { pos, a, b, c } => {
            apply_lantern(w, *pos, Direction::Backward, Some((a, b, c)))
        }
        Move::Lemma52Forward { pos, blocks, rotation } => {
            let (l, r) = lemma52_sides_rotated(blocks, *rotation)?;
            expect_block(w, *pos, &l)?;
            Ok(splice(w, *pos, l.len(), r))
        }
        Move::Lemma52Backward { pos, blocks, rotation } => {
            let (l, r) = lemma52_sides_rotated(blocks, *rotation)?;
            expect_block(w, *pos, &r)?;
            Ok(splice(w, *pos, r.len(), l))
        }
        Move::FreeInsert { pos, holes, inverse_first } => {
            if *pos > w.len() {
                return Err(MoveError::OutOfRange(*pos));
            }
            Ok(splice(w, *pos, 0, free_pair(holes, *inverse_first)))
        }
        Move::FreeCancel { pos, holes, inverse_first } => {
            expect_block(w, *pos, &free_pair(holes, *inverse_first))?;
            Ok(splice(w, *pos, 2, Vec::new()))
        }
    }
}

fn free_pair(holes: &TwistGen, inverse_first: bool) -> Vec<Twist> {
    let (p, n) = (Twist::pos(holes.clone()), Twist::neg(holes.clone()));
    if inverse_first {
        vec![n, p]
    } else {
        vec![p, n]
    }
}

pub fn apply_commutation(w: &TwistWord, i: usize) -> Result<TwistWord, MoveError> {
    if i + 1 >= w.len() {
        return Err(MoveError::OutOfRange(i + 1));
    }
    if !w.letters[i].commutes(&w.letters[i + 1]) {
        return Err(MoveError::NotDisjoint(i));
    }
    let mut out = w.clone();
    out.letters.swap(i, i + 1);
    Ok(out)
}

/// Forward parameters are read off the word when `params` is None; backward
/// ones are derived as B = X∩Y, A = X∖B, C = Y∖B.
pub fn apply_lantern(
    w: &TwistWord,
    i: usize,
    dir: Direction,
    params: Option<(&TwistGen, &TwistGen, &TwistGen)>,
) -> Result<TwistWord, MoveError> {
    let mismatch = |msg: &str| MoveError::PatternMismatch { pos: i, msg: msg.to_string() };
    let (a, b, c) = match params {
        Some((a, b, c)) => (a.clone(), b.clone(), c.clone()),
        None => match dir {
            Direction::Forward => {
                let l = w.letters.get(i..i + 3).ok_or(MoveError::OutOfRange(i + 3))?;
                (l[0].gen.clone(), l[1].gen.clone(), l[2].gen.clone())
            }
            Direction::Backward => {
                let l = w.letters.get(i..i + 2).ok_or(MoveError::OutOfRange(i + 2))?;
                let b = l[0].gen.intersection(&l[1].gen).ok_or_else(|| mismatch("X∩Y is empty"))?;
                let a = l[0].gen.difference(&b).ok_or_else(|| mismatch("X∖Y is empty"))?;
                let c = l[1].gen.difference(&b).ok_or_else(|| mismatch("Y∖X is empty"))?;
                (a, b, c)
            }
        },
    };
    if !pairwise_disjoint(&[&a, &b, &c]) {
        return Err(mismatch("A, B, C are not pairwise disjoint"));
    }
    let (left, right) = lantern_sides(&a, &b, &c);
    match dir {
        Direction::Forward => {
            expect_block(w, i, &left)?;
            Ok(splice(w, i, 4, right))
        }
        Direction::Backward => {
            expect_block(w, i, &right)?;
            Ok(splice(w, i, 3, left))
        }
    }
}

/// Adjacent swaps turning `w` into the arrangement `order` (new position p
/// holds old letter order[p]). Every swapped pair must commute.
pub fn reorder(w: &TwistWord, order: &[usize]) -> Option<(TwistWord, Vec<Move>)> {
    let mut rank = vec![0; order.len()];
    for (p, &o) in order.iter().enumerate() {
        rank[o] = p;
    }
    // insertion sort on target rank, recording swaps
    let mut cur: Vec<usize> = (0..w.len()).collect();
    let mut letters = w.letters.clone();
    let mut moves = Vec::new();
    for i in 1..cur.len() {
        let mut j = i;
        while j > 0 && rank[cur[j - 1]] > rank[cur[j]] {
            if !letters[j - 1].commutes(&letters[j]) {
                return None;
            }
            cur.swap(j - 1, j);
            letters.swap(j - 1, j);
            moves.push(Move::Commute { pos: j - 1 });
            j -= 1;
        }
    }
    Some((TwistWord { page_holes: w.page_holes, letters }, moves))
}

/// Brings the letters at `picks` together, in the given order, using only
/// commutations. Returns the rewritten word, the swaps, and where the block
/// starts.
pub fn gather(w: &TwistWord, picks: &[usize]) -> Option<(TwistWord, Vec<Move>, usize)> {
    let n = w.len();
    let mut selected = vec![false; n];
    for &p in picks {
        if p >= n || selected[p] {
            return None;
        }
        selected[p] = true;
    }
    let lo = *picks.iter().min()?;
    let hi = *picks.iter().max()?;
    // after[p]: p depends on some selected letter to its left
    let mut after = vec![false; n];
    for p in lo..=hi {
        after[p] = (lo..p).any(|q| (selected[q] || after[q]) && !w.letters[q].commutes(&w.letters[p]));
    }
    let mut before = vec![false; n];
    for p in (lo..=hi).rev() {
        before[p] = (p + 1..=hi).any(|q| (selected[q] || before[q]) && !w.letters[p].commutes(&w.letters[q]));
    }
    if (lo..=hi).any(|p| !selected[p] && after[p] && before[p]) {
        return None;
    }
    let mut order: Vec<usize> = (0..lo).collect();
    order.extend((lo..=hi).filter(|&p| !selected[p] && !after[p]));
    let start = order.len();
    order.extend(picks);
    order.extend((lo..=hi).filter(|&p| !selected[p] && after[p]));
    order.extend(hi + 1..n);
    let (w2, moves) = reorder(w, &order)?;
    Some((w2, moves, start))
}

#[cfg(test)]
mod tests {
    use super::super::word::{gen, hole_degree};
    use super::*;

    fn word(s: &str, k: usize) -> TwistWord {
        TwistWord::parse(s, k).unwrap()
    }

    #[test]
    fn lantern_both_ways() {
        let w = word("D{1}D{2}D{3}D{1,2,3}", 3);
        let r = apply_lantern(&w, 0, Direction::Forward, None).unwrap();
        assert_eq!(r, word("D{1,2}D{2,3}D{1,3}", 3));
        let back =
            apply_lantern(&r, 0, Direction::Backward, Some((&gen(&[1]), &gen(&[2]), &gen(&[3])))).unwrap();
        assert_eq!(back, w);
        assert_eq!(apply_lantern(&r, 0, Direction::Backward, None).unwrap(), w);
        let bad = word("D{1}D{1}D{2}D{1,2}", 2);
        assert!(matches!(
            apply_lantern(&bad, 0, Direction::Forward, None),
            Err(MoveError::PatternMismatch { .. })
        ));
    }

    #[test]
    fn commutation() {
        let w = word("D{3,4} D{2,5}", 5);
        assert_eq!(apply_commutation(&w, 0).unwrap(), word("D{2,5} D{3,4}", 5));
        let w = word("D{1,3} D{2,4}", 4);
        assert_eq!(apply_commutation(&w, 0), Err(MoveError::NotDisjoint(0)));
        let w = word("D{1}^2", 1);
        assert_eq!(apply_commutation(&w, 0).unwrap(), w);
    }

    #[test]
    fn macro_sides() {
        let blocks = vec![gen(&[4]), gen(&[3]), gen(&[2]), gen(&[1])];
        let (l, r) = lemma52_sides(&blocks).unwrap();
        let lw = TwistWord { page_holes: 4, letters: l };
        let rw = TwistWord { page_holes: 4, letters: r };
        assert_eq!(lw.to_string(), "D{4}^2 D{3} D{2} D{1} D{1,2,3,4}");
        assert_eq!(rw.to_string(), "D{3,4} D{2,4} D{1,4} D{1,2,3}");
        assert_eq!(hole_degree(&lw), hole_degree(&rw));
        assert!(lemma52_sides(&[gen(&[1]), gen(&[1, 2]), gen(&[3])]).is_err());
    }

    #[test]
    fn gather_blocks() {
        let w = word("D{1} D{2,3} D{4} D{1,2}", 4);
        // D{2,3} overlaps D{1,2}, so it is pushed in front of the block
        let (g, moves, start) = gather(&w, &[0, 2, 3]).unwrap();
        assert_eq!(
            &g.letters[start..start + 3],
            &[w.letters[0].clone(), w.letters[2].clone(), w.letters[3].clone()]
        );
        assert_eq!(ProofTrace::new(moves).replay(&w).unwrap(), g);
        // D{2,3} must stay between D{1,2} and D{3,4}
        let w = word("D{1,2} D{2,3} D{3,4}", 4);
        assert!(gather(&w, &[0, 2]).is_none());
    }

    #[test]
    fn trace_inverse() {
        let w = word("D{1}D{2}D{3}D{1,2,3}", 3);
        let t = ProofTrace::new(vec![
            Move::FreeInsert { pos: 4, holes: gen(&[1]), inverse_first: false },
            Move::LanternForward { pos: 0, a: gen(&[1]), b: gen(&[2]), c: gen(&[3]) },
            Move::Commute { pos: 2 },
        ]);
        let out = t.replay(&w).unwrap();
        assert_eq!(t.inverse().replay(&out).unwrap(), w);
    }
}
