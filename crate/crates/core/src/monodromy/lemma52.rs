//! The chained-lantern macro D_{B0}^{m-1} D_{B1}..D_{Bm} = D_{B0∪B1}..D_{B0∪Bm}
//! D_{B1∪..∪Bm} D_U^-1 and its expansion into elementary moves.

use super::moves::{apply_move, lemma52_sides, reorder, Move, MoveError, ProofTrace};
use super::word::TwistWord as Word;
use super::word::{Twist, TwistGen, TwistWord};

fn union_of(sets: &[TwistGen]) -> TwistGen {
    sets[1..].iter().fold(sets[0].clone(), |u, s| u.union(s))
}

struct Builder {
    word: TwistWord,
    trace: ProofTrace,
}

impl Builder {
    fn push(&mut self, m: Move) -> Result<(), MoveError> {
        self.word = apply_move(&self.word, &m)?;
        self.trace.moves.push(m);
        Ok(())
    }
}

/// Returns (left, right, trace) where `left` is D_{B0}^{m-1} D_{B1}..D_{Bm},
/// `right` is D_{B0∪B1}..D_{B0∪Bm} D_{B1∪..∪Bm} D_U^-1, and the trace turns
/// left·D_U into right·D_U with the inverse cancelled. The trace uses m-1
/// lanterns plus commutations and free insertions/cancellations.
pub fn lemma52_expand(blocks: &[TwistGen]) -> Result<(TwistWord, TwistWord, ProofTrace), MoveError> {
    let (left_u, right_core) = lemma52_sides(blocks)?;
    let u = union_of(blocks);
    let k = u.max_hole();
    let m = blocks.len() - 1;
    let b0 = &blocks[0];
    // U_j = B0 ∪ .. ∪ Bj, A_j = B1 ∪ .. ∪ Bj
    let u_j = |j: usize| union_of(&blocks[..=j]);
    let a_j = |j: usize| union_of(&blocks[1..=j]);

    let mut left = TwistWord { page_holes: k, letters: left_u.clone() };
    left.letters.pop();
    let mut right = TwistWord { page_holes: k, letters: right_core };
    right.letters.push(Twist::neg(u));

    let mut b = Builder { word: TwistWord { page_holes: k, letters: left_u }, trace: ProofTrace::default() };

    // interleave to B1 B0 B2 B0 B3 ... B0 Bm U
    let mut order = vec![m - 1];
    for i in 2..=m {
        order.push(i - 2);
        order.push(m - 2 + i);
    }
    order.push(2 * m - 1);
    let (w, swaps) = reorder(&b.word, &order)
        .ok_or(MoveError::PatternMismatch { pos: 0, msg: "blocks do not commute with B0".into() })?;
    b.word = w;
    b.trace.moves.extend(swaps);

    // B_j sits at 2j-2; put D_{U_j} D_{U_j}^-1 right after it (j = m-1 .. 2)
    for j in (2..m).rev() {
        b.push(Move::FreeInsert { pos: 2 * j - 1, holes: u_j(j), inverse_first: false })?;
    }

    // loop invariant: A_j B0 B_{j+1} U_{j+1} start at pos, and U_j^-1 sits at
    // pos-1 when j > 1
    let mut pos = 0;
    for j in 1..m {
        b.push(Move::LanternForward { pos, a: a_j(j), b: b0.clone(), c: blocks[j + 1].clone() })?;
        // U_j, B0∪B_{j+1}, A_{j+1}, [U_{j+1}^-1] from pos
        let a_pos = if j > 1 {
            b.push(Move::FreeCancel { pos: pos - 1, holes: u_j(j), inverse_first: true })?;
            pos
        } else {
            pos + 2
        };
        if j + 1 < m {
            b.push(Move::Commute { pos: a_pos })?;
            pos = a_pos + 1;
        }
    }
    Ok((left, right, b.trace))
}

/// Elementary moves taking the rotated right side S T (T = first `r` letters
/// of the plain right side) to the left side: insert T^-1 T, use the plain
/// relation on T S, commute T back through the boundary twists, cancel.
fn rotated_backward(blocks: &[TwistGen], r: usize) -> Result<ProofTrace, MoveError> {
    let (_, _, plain) = lemma52_expand(blocks)?;
    let mut moves = Vec::new();
    let (left, right) = lemma52_sides(blocks)?;
    let t: Vec<TwistGen> = right[..r].iter().map(|x| x.gen.clone()).collect();
    for j in (0..r).rev() {
        moves.push(Move::FreeInsert { pos: r - 1 - j, holes: t[j].clone(), inverse_first: true });
    }
    moves.extend(plain.inverse().moves.iter().map(|x| x.shifted(r)));
    let n = left.len();
    for i in 0..r {
        let cur = r + n + i;
        moves.extend((0..n).map(|s| Move::Commute { pos: cur - 1 - s }));
    }
    for (j, g) in t.iter().enumerate() {
        moves.push(Move::FreeCancel { pos: r - 1 - j, holes: g.clone(), inverse_first: true });
    }
    let trace = ProofTrace::new(moves);
    // sanity: the expansion must replay on its own pattern
    let (l, rr) = super::moves::lemma52_sides_rotated(blocks, r)?;
    let k = l.iter().chain(&rr).map(|x| x.gen.max_hole()).max().unwrap_or(0);
    let out = trace.replay(&Word { page_holes: k, letters: rr })?;
    debug_assert_eq!(out.letters, l);
    Ok(trace)
}

/// Rewrites every macro step of `trace` into elementary moves.
pub fn expand_macros(trace: &ProofTrace) -> Result<ProofTrace, MoveError> {
    let mut out = Vec::new();
    for m in &trace.moves {
        match m {
            Move::Lemma52Forward { pos, blocks, rotation } => {
                let t = rotated_backward(blocks, *rotation)?.inverse();
                out.extend(t.moves.iter().map(|x| x.shifted(*pos)));
            }
            Move::Lemma52Backward { pos, blocks, rotation } => {
                let t = rotated_backward(blocks, *rotation)?;
                out.extend(t.moves.iter().map(|x| x.shifted(*pos)));
            }
            other => out.push(other.clone()),
        }
    }
    Ok(ProofTrace::new(out))
}
