//! Equivalence search over twist words.
//!
//! States are commutation classes, represented by their lexicographic normal
//! form. Lantern and macro moves are matched modulo commutation: the chosen
//! letters are first gathered into a block by explicit swaps, so every proof
//! replays letter for letter.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::moves::{apply_move, gather, lantern_sides, lemma52_sides, reorder, Direction, Move, ProofTrace};
use super::word::{gen, hole_degree, pair_degree, Twist, TwistGen, TwistWord};
use super::words::LineWord;

pub const DEFAULT_BUDGET: usize = 100_000;

/// Lexicographically least word in the commutation class, with the swaps.
pub fn normal_form(w: &TwistWord) -> (TwistWord, Vec<Move>) {
    let n = w.len();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if used[i] {
                continue;
            }
            // available if every earlier unused letter commutes with it
            let free = (0..i).all(|j| used[j] || w.letters[j].commutes(&w.letters[i]));
            if free && best.is_none_or(|b| w.letters[i] < w.letters[b]) {
                best = Some(i);
            }
        }
        let b = best.expect("some letter is always available");
        used[b] = true;
        order.push(b);
    }
    reorder(w, &order).expect("normal form is a linear extension")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Invariant {
    HoleDegree { left: Vec<i64>, right: Vec<i64> },
    PairDegree { holes: (usize, usize), left: i64, right: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Proven { trace: ProofTrace },
    Disproven { reason: Invariant },
    Unknown { explored: usize },
}

impl Verdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: usize,
    /// allow the chained-lantern macro as a single step
    pub macros: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, macros: true }
    }
}

fn on_common_page(w1: &TwistWord, w2: &TwistWord) -> (TwistWord, TwistWord) {
    let k = w1.page_holes.max(w2.page_holes);
    let lift = |w: &TwistWord| TwistWord { page_holes: k, letters: w.letters.clone() };
    (lift(w1), lift(w2))
}

/// An invariant separating the words, if any.
pub fn separating_invariant(w1: &TwistWord, w2: &TwistWord) -> Option<Invariant> {
    let (a, b) = on_common_page(w1, w2);
    let (h1, h2) = (hole_degree(&a), hole_degree(&b));
    if h1 != h2 {
        return Some(Invariant::HoleDegree { left: h1, right: h2 });
    }
    let (p1, p2) = (pair_degree(&a), pair_degree(&b));
    p1.iter().find(|(key, v)| p2.get(key) != Some(v)).map(|(&holes, &left)| Invariant::PairDegree {
        holes,
        left,
        right: p2[&holes],
    })
}

pub fn prove_equivalent(w1: &TwistWord, w2: &TwistWord, budget: usize) -> Verdict {
    prove_equivalent_with(w1, w2, &SearchOptions { budget, ..Default::default() })
}

/// Bidirectional breadth-first search between the two commutation classes.
pub fn prove_equivalent_with(w1: &TwistWord, w2: &TwistWord, opts: &SearchOptions) -> Verdict {
    if let Some(reason) = separating_invariant(w1, w2) {
        return Verdict::Disproven { reason };
    }
    let (w1, w2) = on_common_page(w1, w2);
    let (n1, t1) = normal_form(&w1);
    let (n2, t2) = normal_form(&w2);
    let mut sides = [Side::new(n1, t1), Side::new(n2, t2)];
    if sides[0].nodes.contains_key(&sides[1].root) {
        return Verdict::Proven { trace: join(&sides, &sides[1].root.clone()) };
    }
    let mut explored = 2;
    loop {
        if sides[0].queue.is_empty() && sides[1].queue.is_empty() {
            return Verdict::Unknown { explored };
        }
        let s = if sides[1].queue.is_empty()
            || (!sides[0].queue.is_empty() && sides[0].queue.len() <= sides[1].queue.len())
        {
            0
        } else {
            1
        };
        // expand one full level of side s
        let level: Vec<Vec<Twist>> = sides[s].queue.drain(..).collect();
        for key in level {
            let w = TwistWord { page_holes: w1.page_holes, letters: key.clone() };
            for (next, seg) in neighbours(&w, opts.macros) {
                if sides[s].nodes.contains_key(&next.letters) {
                    continue;
                }
                sides[s].nodes.insert(next.letters.clone(), (Some(key.clone()), seg));
                sides[s].queue.push_back(next.letters.clone());
                explored += 1;
                if sides[1 - s].nodes.contains_key(&next.letters) {
                    return Verdict::Proven { trace: join(&sides, &next.letters) };
                }
                if explored >= opts.budget {
                    return Verdict::Unknown { explored };
                }
            }
        }
    }
}

/// state -> (parent, moves from parent to state)
type Visited = HashMap<Vec<Twist>, (Option<Vec<Twist>>, Vec<Move>)>;

struct Side {
    root: Vec<Twist>,
    nodes: Visited,
    queue: VecDeque<Vec<Twist>>,
}

impl Side {
    fn new(root: TwistWord, to_root: Vec<Move>) -> Self {
        let mut nodes = HashMap::new();
        nodes.insert(root.letters.clone(), (None, to_root));
        Self { root: root.letters.clone(), nodes, queue: VecDeque::from([root.letters]) }
    }

    /// Moves from the original word to `key`.
    fn path(&self, key: &[Twist]) -> ProofTrace {
        let mut segs = Vec::new();
        let mut cur = Some(key.to_vec());
        while let Some(k) = cur {
            let (parent, seg) = &self.nodes[&k];
            segs.push(seg.clone());
            cur = parent.clone();
        }
        ProofTrace::new(segs.into_iter().rev().flatten().collect())
    }
}

fn join(sides: &[Side; 2], meet: &[Twist]) -> ProofTrace {
    let mut t = sides[0].path(meet);
    t.extend(sides[1].path(meet).inverse());
    t
}

fn finish(w: &TwistWord, mut pre: Vec<Move>, m: Move) -> Option<(TwistWord, Vec<Move>)> {
    let w = apply_move(w, &m).ok()?;
    pre.push(m);
    let (nf, tail) = normal_form(&w);
    pre.extend(tail);
    Some((nf, pre))
}

fn positive(w: &TwistWord) -> Vec<usize> {
    (0..w.len()).filter(|&i| !w.letters[i].inverse).collect()
}

/// All states one move away, each normalized, with the connecting moves.
pub fn neighbours(w: &TwistWord, macros: bool) -> Vec<(TwistWord, Vec<Move>)> {
    let mut out = Vec::new();
    let pos = positive(w);
    let g = |i: usize| &w.letters[i].gen;

    // lantern forward: D_A D_B D_C D_{A∪B∪C}
    for &l in &pos {
        let u = g(l);
        if u.len() < 3 {
            continue;
        }
        let subs: Vec<usize> =
            pos.iter().copied().filter(|&p| p != l && g(p).is_subset(u) && g(p) != u).collect();
        for (x, &i) in subs.iter().enumerate() {
            for (y, &j) in subs.iter().enumerate().skip(x + 1) {
                if g(i).meets(g(j)) {
                    continue;
                }
                for &k in &subs[y + 1..] {
                    if g(k).meets(g(i)) || g(k).meets(g(j)) {
                        continue;
                    }
                    if g(i).len() + g(j).len() + g(k).len() != u.len() {
                        continue;
                    }
                    if let Some((w2, pre, at)) = gather(w, &[i, j, k, l]) {
                        let m = Move::LanternForward {
                            pos: at,
                            a: g(i).clone(),
                            b: g(j).clone(),
                            c: g(k).clone(),
                        };
                        out.extend(finish(&w2, pre, m));
                    }
                }
            }
        }
    }

    // lantern backward: D_{A∪B} D_{B∪C} D_{A∪C}
    for (x, &i) in pos.iter().enumerate() {
        for &j in &pos[x + 1..] {
            let Some(b) = g(i).intersection(g(j)) else { continue };
            let (Some(a), Some(c)) = (g(i).difference(&b), g(j).difference(&b)) else { continue };
            let z = a.union(&c);
            for &l in pos.iter().filter(|&&l| l > j && *g(l) == z) {
                if let Some((w2, pre, at)) = gather(w, &[i, j, l]) {
                    let m = Move::LanternBackward { pos: at, a: a.clone(), b: b.clone(), c: c.clone() };
                    out.extend(finish(&w2, pre, m));
                }
            }
        }
    }

    if macros {
        macro_forward(w, &pos, &mut out);
        macro_backward(w, &pos, &mut out);
    }
    out
}

/// Exact covers of `target` by generators from `cands` (position, gen),
/// at most one letter per distinct generator.
fn exact_covers(target: &TwistGen, cands: &[(usize, TwistGen)]) -> Vec<Vec<usize>> {
    fn rec(
        rest: &[usize],
        cands: &[(usize, TwistGen)],
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        // the candidate covering the smallest uncovered hole
        let h = rest[0];
        for (ci, (_, g)) in cands.iter().enumerate().skip(start.min(cands.len())) {
            let _ = ci;
            if !g.contains(h) || !g.holes().iter().all(|x| rest.contains(x)) {
                continue;
            }
            let rest2: Vec<usize> = rest.iter().copied().filter(|x| !g.contains(*x)).collect();
            cur.push(ci);
            rec(&rest2, cands, 0, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(target.holes(), cands, 0, &mut Vec::new(), &mut out);
    out
}

/// Latest occurrence before `l` of each distinct generator passing `keep`.
fn latest_before(
    w: &TwistWord,
    pos: &[usize],
    l: usize,
    keep: impl Fn(&TwistGen) -> bool,
) -> Vec<(usize, TwistGen)> {
    let mut seen: HashMap<&TwistGen, usize> = HashMap::new();
    for &p in pos.iter().filter(|&&p| p < l) {
        if keep(&w.letters[p].gen) {
            seen.insert(&w.letters[p].gen, p);
        }
    }
    let mut v: Vec<(usize, TwistGen)> = seen.into_iter().map(|(g, p)| (p, g.clone())).collect();
    v.sort();
    v
}

fn earliest_after(
    w: &TwistWord,
    pos: &[usize],
    l: usize,
    keep: impl Fn(&TwistGen) -> bool,
) -> Vec<(usize, TwistGen)> {
    let mut seen: HashMap<&TwistGen, usize> = HashMap::new();
    for &p in pos.iter().rev().filter(|&&p| p > l) {
        if keep(&w.letters[p].gen) {
            seen.insert(&w.letters[p].gen, p);
        }
    }
    let mut v: Vec<(usize, TwistGen)> = seen.into_iter().map(|(g, p)| (p, g.clone())).collect();
    v.sort();
    v
}

fn macro_forward(w: &TwistWord, pos: &[usize], out: &mut Vec<(TwistWord, Vec<Move>)>) {
    for &l in pos {
        let u = &w.letters[l].gen;
        if u.len() < 4 {
            continue;
        }
        let b0s = latest_before(w, pos, l, |g| g.is_subset(u) && g != u);
        for (_, b0) in &b0s {
            let copies: Vec<usize> =
                pos.iter().copied().filter(|&p| p < l && w.letters[p].gen == *b0).collect();
            let Some(rest) = u.difference(b0) else { continue };
            let cands = latest_before(w, pos, l, |g| g.is_subset(&rest));
            for cover in exact_covers(&rest, &cands) {
                let m = cover.len();
                if m < 3 || copies.len() < m - 1 {
                    continue;
                }
                let mut bis: Vec<(usize, TwistGen)> = cover.iter().map(|&c| cands[c].clone()).collect();
                bis.sort();
                let mut picks: Vec<usize> = copies[copies.len() - (m - 1)..].to_vec();
                picks.extend(bis.iter().map(|(p, _)| *p));
                picks.push(l);
                let mut blocks = vec![b0.clone()];
                blocks.extend(bis.into_iter().map(|(_, g)| g));
                if let Some((w2, pre, at)) = gather(w, &picks) {
                    out.extend(finish(&w2, pre, Move::Lemma52Forward { pos: at, blocks, rotation: 0 }));
                }
            }
        }
    }
}

fn macro_backward(w: &TwistWord, pos: &[usize], out: &mut Vec<(TwistWord, Vec<Move>)>) {
    for &l in pos {
        let top = &w.letters[l].gen;
        if top.len() < 3 {
            continue;
        }
        // pair letters after the union letter form the rotated prefix
        let keep = |g: &TwistGen| g.meets(top) && !g.is_subset(top);
        let mut cands = latest_before(w, pos, l, keep);
        cands.extend(earliest_after(w, pos, l, keep));
        let mut b0s: Vec<TwistGen> = cands.iter().filter_map(|(_, g)| g.difference(top)).collect();
        b0s.sort();
        b0s.dedup();
        for b0 in b0s {
            let group: Vec<(usize, TwistGen)> = cands
                .iter()
                .filter(|(_, g)| g.difference(top).as_ref() == Some(&b0))
                .map(|(p, g)| (*p, g.intersection(top).expect("meets")))
                .collect();
            for cover in exact_covers(top, &group) {
                if cover.len() < 3 {
                    continue;
                }
                let mut bis: Vec<(usize, TwistGen)> = cover.iter().map(|&c| group[c].clone()).collect();
                bis.sort();
                let (before, after): (Vec<_>, Vec<_>) = bis.into_iter().partition(|(p, _)| *p < l);
                let mut picks: Vec<usize> = before.iter().map(|(p, _)| *p).collect();
                picks.push(l);
                picks.extend(after.iter().map(|(p, _)| *p));
                let rotation = after.len();
                let mut blocks = vec![b0.clone()];
                blocks.extend(after.into_iter().chain(before).map(|(_, g)| g));
                if let Some((w2, pre, at)) = gather(w, &picks) {
                    out.extend(finish(&w2, pre, Move::Lemma52Backward { pos: at, blocks, rotation }));
                }
            }
        }
    }
}

/// A scripted step: which relation to use, located anywhere in the word
/// modulo commutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "hint", rename_all = "snake_case")]
pub enum Hint {
    Lantern { dir: Direction, a: TwistGen, b: TwistGen, c: TwistGen },
    Lemma52 { dir: Direction, blocks: Vec<TwistGen> },
}

impl Hint {
    pub fn inverse(&self) -> Hint {
        let flip = |d: &Direction| match d {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        };
        match self {
            Hint::Lantern { dir, a, b, c } => {
                Hint::Lantern { dir: flip(dir), a: a.clone(), b: b.clone(), c: c.clone() }
            }
            Hint::Lemma52 { dir, blocks } => Hint::Lemma52 { dir: flip(dir), blocks: blocks.clone() },
        }
    }

    fn pattern(&self) -> Option<Vec<Twist>> {
        Some(match self {
            Hint::Lantern { dir, a, b, c } => {
                let (l, r) = lantern_sides(a, b, c);
                if *dir == Direction::Forward {
                    l
                } else {
                    r
                }
            }
            Hint::Lemma52 { dir, blocks } => {
                let (l, r) = lemma52_sides(blocks).ok()?;
                if *dir == Direction::Forward {
                    l
                } else {
                    r
                }
            }
        })
    }

    fn at(&self, pos: usize) -> Move {
        match self.clone() {
            Hint::Lantern { dir: Direction::Forward, a, b, c } => Move::LanternForward { pos, a, b, c },
            Hint::Lantern { dir: Direction::Backward, a, b, c } => Move::LanternBackward { pos, a, b, c },
            Hint::Lemma52 { dir: Direction::Forward, blocks } => {
                Move::Lemma52Forward { pos, blocks, rotation: 0 }
            }
            Hint::Lemma52 { dir: Direction::Backward, blocks } => {
                Move::Lemma52Backward { pos, blocks, rotation: 0 }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HintError {
    #[error("step {0}: pattern not found modulo commutation")]
    NotFound(usize),
    #[error("scripted steps end in a different commutation class")]
    WrongTarget,
}

/// Finds the hint's pattern in `w` modulo commutation and applies it.
pub fn apply_hint(w: &TwistWord, hint: &Hint) -> Option<(TwistWord, Vec<Move>)> {
    let pat = hint.pattern()?;
    let occ: Vec<Vec<usize>> =
        pat.iter().map(|t| (0..w.len()).filter(|&i| w.letters[i] == *t).collect()).collect();
    let mut picks = Vec::with_capacity(pat.len());
    let mut tries = 0usize;
    fn rec(
        w: &TwistWord,
        occ: &[Vec<usize>],
        picks: &mut Vec<usize>,
        tries: &mut usize,
        hint: &Hint,
    ) -> Option<(TwistWord, Vec<Move>)> {
        if picks.len() == occ.len() {
            *tries += 1;
            let (w2, mut pre, at) = gather(w, picks)?;
            let m = hint.at(at);
            let w3 = apply_move(&w2, &m).ok()?;
            pre.push(m);
            return Some((w3, pre));
        }
        for &p in &occ[picks.len()] {
            if *tries > 10_000 {
                return None;
            }
            if picks.contains(&p) {
                continue;
            }
            picks.push(p);
            if let Some(r) = rec(w, occ, picks, tries, hint) {
                return Some(r);
            }
            picks.pop();
        }
        None
    }
    rec(w, &occ, &mut picks, &mut tries, hint)
}

/// Applies the hints in order from `w1`, then commutes into `w2`.
pub fn prove_with_hints(w1: &TwistWord, w2: &TwistWord, hints: &[Hint]) -> Result<ProofTrace, HintError> {
    let (w1, w2) = on_common_page(w1, w2);
    let mut cur = w1;
    let mut trace = ProofTrace::default();
    for (i, h) in hints.iter().enumerate() {
        let (next, moves) = apply_hint(&cur, h).ok_or(HintError::NotFound(i))?;
        cur = next;
        trace.moves.extend(moves);
    }
    let (n1, t1) = normal_form(&cur);
    let (n2, t2) = normal_form(&w2);
    if n1 != n2 {
        return Err(HintError::WrongTarget);
    }
    trace.moves.extend(t1);
    trace.extend(ProofTrace::new(t2).inverse());
    Ok(trace)
}

/// Tries the scripted hints first and falls back to blind search.
pub fn prove_equivalent_hinted(w1: &TwistWord, w2: &TwistWord, hints: &[Hint], budget: usize) -> Verdict {
    if let Some(reason) = separating_invariant(w1, w2) {
        return Verdict::Disproven { reason };
    }
    match prove_with_hints(w1, w2, hints) {
        Ok(trace) => Verdict::Proven { trace },
        Err(_) => prove_equivalent(w1, w2, budget),
    }
}

fn lantern_back(a: usize, b: usize, c: usize) -> Hint {
    Hint::Lantern { dir: Direction::Backward, a: gen(&[a]), b: gen(&[b]), c: gen(&[c]) }
}

fn chain_back(b0: usize, rest: &[usize]) -> Hint {
    let mut blocks = vec![gen(&[b0])];
    blocks.extend(rest.iter().map(|&h| gen(&[h])));
    Hint::Lemma52 { dir: Direction::Backward, blocks }
}

/// Scripted steps from the generic factorization to `to`.
fn from_generic(k: usize, to: LineWord) -> Vec<Hint> {
    let triple = lantern_back(2, 3, 1);
    match (k, to) {
        (_, LineWord::Generic) => vec![],
        (_, LineWord::Triple) => vec![triple],
        (4, LineWord::AllCommon) => vec![triple, chain_back(4, &[3, 2, 1])],
        (5, LineWord::Quadruple) => vec![triple, chain_back(4, &[3, 2, 1])],
        (5, LineWord::TwoTriples) => vec![triple, lantern_back(4, 5, 3)],
        (5, LineWord::AllCommon) => {
            vec![triple, chain_back(4, &[3, 2, 1]), chain_back(5, &[4, 3, 2, 1])]
        }
        _ => vec![],
    }
}

/// Scripted steps between two of the line factorizations.
pub fn line_hints(k: usize, from: LineWord, to: LineWord) -> Vec<Hint> {
    let a = from_generic(k, from);
    let b = from_generic(k, to);
    let common = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    let mut out: Vec<Hint> = a[common..].iter().rev().map(Hint::inverse).collect();
    out.extend(b[common..].iter().cloned());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, k: usize) -> TwistWord {
        TwistWord::parse(s, k).unwrap()
    }

    #[test]
    fn normal_form_is_class_invariant() {
        let w = word("D{3,4} D{1,2} D{1} D{2,5}", 5);
        let (nf, moves) = normal_form(&w);
        assert_eq!(ProofTrace::new(moves).replay(&w).unwrap(), nf);
        let w2 = apply_move(&w, &Move::Commute { pos: 0 }).unwrap();
        assert_eq!(normal_form(&w2).0, nf);
    }

    #[test]
    fn trivial_cases() {
        let w = word("D{1,2} D{1}", 2);
        match prove_equivalent(&w, &w, 10) {
            Verdict::Proven { trace } => assert_eq!(trace.replay(&w).unwrap(), w),
            v => panic!("{v:?}"),
        }
        let v = prove_equivalent(&word("D{1}", 2), &word("D{2}", 2), 10);
        assert!(matches!(v, Verdict::Disproven { reason: Invariant::HoleDegree { .. } }));
    }

    #[test]
    fn single_lantern() {
        let a = word("D{1}D{2}D{3}D{1,2,3}", 3);
        let b = word("D{1,2}D{2,3}D{1,3}", 3);
        let Verdict::Proven { trace } = prove_equivalent(&a, &b, 1000) else { panic!() };
        assert_eq!(trace.replay(&a).unwrap(), b);
        let Verdict::Proven { trace } = prove_equivalent(&b, &a, 1000) else { panic!() };
        assert_eq!(trace.replay(&b).unwrap(), a);
    }

    #[test]
    fn pair_degree_separates() {
        // same hole degrees, different pair structure
        let a = word("D{1,2} D{3}", 3);
        let b = word("D{1} D{2,3}", 3);
        assert!(matches!(separating_invariant(&a, &b), Some(Invariant::PairDegree { .. })));
        let a = word("D{1,2} D{3,4}", 4);
        let b = word("D{1,3} D{2,4}", 4);
        assert!(matches!(separating_invariant(&a, &b), Some(Invariant::PairDegree { .. })));
    }

    #[test]
    fn hints_compose() {
        let h = line_hints(5, LineWord::Triple, LineWord::TwoTriples);
        assert_eq!(h, vec![lantern_back(4, 5, 3)]);
        let h = line_hints(4, LineWord::AllCommon, LineWord::Generic);
        assert_eq!(h.len(), 2);
    }
}
