//! Homology representations of dual-graph spheres in CP^2 # M(-CP^2).
//!
//! A class is a vector (ℓ-coefficient, e_1, ..., e_M) with ℓ² = 1, e_i² = -1.
//! Classes are indexed by dual vertex in the global order (center, then arms
//! outward).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualgraph::DualGraph;
use crate::plumbing::StarGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("rep has {got} classes for {expected} vertices")]
    VertexCount { expected: usize, got: usize },
    #[error("class {vertex} has length {got}, expected {expected}")]
    DimensionMismatch { vertex: usize, expected: usize, got: usize },
    #[error("dual graph central weight is {0}, not +1")]
    NotPlusOne(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomRep {
    pub basis_size: usize,
    pub classes: Vec<Vec<i64>>,
}

pub fn product(a: &[i64], b: &[i64]) -> i64 {
    let l = a.first().copied().unwrap_or(0) * b.first().copied().unwrap_or(0);
    l - a.iter().skip(1).zip(b.iter().skip(1)).map(|(x, y)| x * y).sum::<i64>()
}

impl HomRep {
    /// Column i (0 = ℓ) read down the vertices.
    pub fn column(&self, i: usize) -> Vec<i64> {
        self.classes.iter().map(|c| c[i]).collect()
    }

    pub fn e_columns(&self) -> Vec<Vec<i64>> {
        (1..=self.basis_size).map(|i| self.column(i)).collect()
    }

    pub fn from_columns(l: Vec<i64>, cols: &[Vec<i64>]) -> Self {
        let classes =
            (0..l.len()).map(|v| std::iter::once(l[v]).chain(cols.iter().map(|c| c[v])).collect()).collect();
        HomRep { basis_size: cols.len(), classes }
    }

    /// Relabel vertices: new vertex v takes the class of old vertex perm[v].
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        HomRep {
            basis_size: self.basis_size,
            classes: perm.iter().map(|&p| self.classes[p].clone()).collect(),
        }
    }

    /// Relabel basis elements: new e_{i+1} is old e_{perm[i]+1}.
    pub fn permute_basis(&self, perm: &[usize]) -> Self {
        let cols = self.e_columns();
        let cols: Vec<Vec<i64>> = perm.iter().map(|&p| cols[p].clone()).collect();
        HomRep::from_columns(self.column(0), &cols)
    }
}

fn fmt_class(c: &[i64]) -> String {
    let mut s = String::new();
    let mut term = |coef: i64, name: String| {
        if coef == 0 {
            return;
        }
        let sign = if coef < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = if coef.abs() == 1 { String::new() } else { coef.abs().to_string() };
        s.push_str(&format!("{sign}{mag}{name}"));
    };
    term(c[0], "l".into());
    for (i, &x) in c.iter().enumerate().skip(1) {
        term(x, format!("e{i}"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for HomRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in self.classes.iter().enumerate() {
            writeln!(f, "[C{v}] = {}", fmt_class(c))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RepCheck {
    pub violations: Vec<String>,
}

impl RepCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_rep(dg: &DualGraph, rep: &HomRep) -> Result<RepCheck, HomologyError> {
    let weights = dg.weights();
    if rep.classes.len() != weights.len() {
        return Err(HomologyError::VertexCount { expected: weights.len(), got: rep.classes.len() });
    }
    for (v, c) in rep.classes.iter().enumerate() {
        if c.len() != rep.basis_size + 1 {
            return Err(HomologyError::DimensionMismatch {
                vertex: v,
                expected: rep.basis_size + 1,
                got: c.len(),
            });
        }
    }
    let parents = dg.parents();
    let mut out = Vec::new();
    let count = |c: &[i64], x: i64| c[1..].iter().filter(|&&y| y == x).count();
    for (v, c) in rep.classes.iter().enumerate() {
        let n = -weights[v];
        match parents[v] {
            None => {
                if c[0] != 1 || c[1..].iter().any(|&x| x != 0) {
                    out.push(format!("C{v}: central class must be l"));
                }
            }
            Some(0) => {
                let ok =
                    c[0] == 1 && count(c, -1) as i64 == n + 1 && c[1..].iter().all(|&x| x == 0 || x == -1);
                if !ok {
                    out.push(format!("C{v}: expected l minus {} distinct e's", n + 1));
                }
            }
            Some(_) => {
                let ok = c[0] == 0
                    && count(c, 1) == 1
                    && count(c, -1) as i64 == n - 1
                    && c[1..].iter().all(|&x| (-1..=1).contains(&x));
                if !ok {
                    out.push(format!("C{v}: expected one +e and {} -e's", n - 1));
                }
            }
        }
        if product(c, c) != weights[v] {
            out.push(format!("C{v}: square {} != {}", product(c, c), weights[v]));
        }
    }
    for a in 0..rep.classes.len() {
        for b in a + 1..rep.classes.len() {
            let adjacent = parents[b] == Some(a) || parents[a] == Some(b);
            let want = i64::from(adjacent);
            let got = product(&rep.classes[a], &rep.classes[b]);
            if got != want {
                out.push(format!("C{a}.C{b} = {got}, expected {want}"));
            }
        }
    }
    for i in 1..=rep.basis_size {
        if rep.classes.iter().all(|c| c[i] == 0) {
            out.push(format!("e{i} unused"));
        }
    }
    Ok(RepCheck { violations: out })
}

/// Lex-min over basis permutations and the given vertex permutations.
pub fn canonical_form(rep: &HomRep, vertex_perms: &[Vec<usize>]) -> HomRep {
    let sorted = |r: &HomRep| {
        let mut cols = r.e_columns();
        cols.sort();
        HomRep::from_columns(r.column(0), &cols)
    };
    let mut best = sorted(rep);
    for perm in vertex_perms {
        let cand = sorted(&rep.permute_vertices(perm));
        if cand.e_columns() < best.e_columns() {
            best = cand;
        }
    }
    best
}

/// Vertex permutations of `dg` induced by its arm automorphisms.
pub fn vertex_automorphisms(dg: &DualGraph) -> Vec<Vec<usize>> {
    dg.automorphisms().iter().map(|p| dg.vertex_permutation(p)).collect()
}

/// Search order: center, center-adjacent vertices, then each arm outward.
fn search_order(dg: &DualGraph) -> Vec<usize> {
    let adj = dg.center_adjacent();
    let mut order = vec![0];
    order.extend(&adj);
    for (a, &start) in adj.iter().enumerate() {
        order.extend(start + 1..start + dg.arms[a].len());
    }
    order
}

struct Search<'a> {
    weights: Vec<i64>,
    parents: Vec<Option<usize>>,
    order: &'a [usize],
    /// placed[v] = coefficients of e_1.. for vertex v (grows with columns)
    placed: Vec<Vec<i8>>,
    lcoef: Vec<i64>,
    columns: usize,
    out: Vec<HomRep>,
}

struct ColumnClass {
    cols: Vec<usize>,
    /// coefficient of this column in each already placed vertex (by order pos)
    sig: Vec<i64>,
}

impl Search<'_> {
    fn rep(&self) -> HomRep {
        let classes = (0..self.weights.len())
            .map(|v| {
                std::iter::once(self.lcoef[v]).chain(self.placed[v].iter().map(|&x| i64::from(x))).collect()
            })
            .collect();
        HomRep { basis_size: self.columns, classes }
    }

    fn go(&mut self, pos: usize) {
        if pos == self.order.len() {
            let rep = self.rep();
            self.out.push(rep);
            return;
        }
        let v = self.order[pos];
        let n = -self.weights[v];
        let prev: Vec<usize> = self.order[..pos].to_vec();
        let (lv, plus, minus) = if self.parents[v] == Some(0) {
            (1i64, 0usize, (n + 1) as usize)
        } else {
            (0, 1, (n - 1) as usize)
        };
        self.lcoef[v] = lv;
        // required e-part of the product with each placed vertex u:
        // l_v l_u - sum_c v_c u_c = target  =>  sum_c v_c u_c = l_v l_u - target
        let need: Vec<i64> = prev
            .iter()
            .map(|&u| {
                let target = i64::from(self.parents[v] == Some(u) || self.parents[u] == Some(v));
                lv * self.lcoef[u] - target
            })
            .collect();
        // group identical existing columns
        let mut classes: Vec<ColumnClass> = Vec::new();
        for c in 0..self.columns {
            let sig: Vec<i64> = prev.iter().map(|&u| i64::from(self.placed[u][c])).collect();
            match classes.iter_mut().find(|k| k.sig == sig) {
                Some(k) => k.cols.push(c),
                None => classes.push(ColumnClass { cols: vec![c], sig }),
            }
        }
        // suffix bounds on what remaining classes can add per unit of +1/-1
        let np = prev.len();
        let mut max_pos = vec![vec![0i64; np]; classes.len() + 1];
        let mut max_neg = vec![vec![0i64; np]; classes.len() + 1];
        for j in (0..classes.len()).rev() {
            for u in 0..np {
                let s = classes[j].sig[u];
                max_pos[j][u] = max_pos[j + 1][u].max(s);
                max_neg[j][u] = max_neg[j + 1][u].max(-s);
            }
        }
        let mut choice = vec![(0usize, 0usize); classes.len()];
        let mut partial = vec![0i64; np];
        let ctx = ClassCtx { classes: &classes, max_pos: &max_pos, max_neg: &max_neg, need: &need };
        let mut found = Vec::new();
        choose(&ctx, 0, plus, minus, &mut partial, &mut choice, &mut found);
        for assignment in found {
            self.apply(v, &classes, &assignment, plus, minus, pos);
        }
    }

    fn apply(
        &mut self,
        v: usize,
        classes: &[ColumnClass],
        assignment: &[(usize, usize)],
        plus: usize,
        minus: usize,
        pos: usize,
    ) {
        let saved_cols = self.columns;
        let mut row = vec![0i8; self.columns];
        let (mut used_p, mut used_m) = (0, 0);
        for (k, &(p, m)) in classes.iter().zip(assignment) {
            for &c in &k.cols[..p] {
                row[c] = 1;
            }
            for &c in &k.cols[p..p + m] {
                row[c] = -1;
            }
            used_p += p;
            used_m += m;
        }
        let fresh_p = plus - used_p;
        let fresh_m = minus - used_m;
        row.extend(std::iter::repeat_n(1, fresh_p));
        row.extend(std::iter::repeat_n(-1, fresh_m));
        let added = fresh_p + fresh_m;
        self.columns += added;
        for u in 0..self.placed.len() {
            if u != v {
                self.placed[u].extend(std::iter::repeat_n(0, added));
            }
        }
        self.placed[v] = row;
        self.go(pos + 1);
        self.columns = saved_cols;
        for u in 0..self.placed.len() {
            self.placed[u].truncate(saved_cols);
        }
        self.placed[v] = vec![0; saved_cols];
    }
}

struct ClassCtx<'a> {
    classes: &'a [ColumnClass],
    max_pos: &'a [Vec<i64>],
    max_neg: &'a [Vec<i64>],
    need: &'a [i64],
}

/// Choose (#plus, #minus) per column class so that sum_c v_c u_c hits `need`.
#[allow(clippy::needless_range_loop)]
fn choose(
    ctx: &ClassCtx<'_>,
    j: usize,
    rem_p: usize,
    rem_m: usize,
    partial: &mut [i64],
    choice: &mut [(usize, usize)],
    found: &mut Vec<Vec<(usize, usize)>>,
) {
    // feasibility: remaining units can move each product within [lo, hi]
    for u in 0..partial.len() {
        let gap = ctx.need[u] - partial[u];
        let hi = rem_p as i64 * ctx.max_pos[j][u] + rem_m as i64 * ctx.max_neg[j][u];
        let lo = -(rem_p as i64 * ctx.max_neg[j][u] + rem_m as i64 * ctx.max_pos[j][u]);
        if gap > hi || gap < lo {
            return;
        }
    }
    if j == ctx.classes.len() {
        if partial.iter().zip(ctx.need).all(|(a, b)| a == b) {
            found.push(choice.to_vec());
        }
        return;
    }
    let size = ctx.classes[j].cols.len();
    let sig = &ctx.classes[j].sig;
    for p in 0..=rem_p.min(size) {
        for m in 0..=rem_m.min(size - p) {
            let delta = p as i64 - m as i64;
            for (x, s) in partial.iter_mut().zip(sig) {
                *x += delta * s;
            }
            choice[j] = (p, m);
            choose(ctx, j + 1, rem_p - p, rem_m - m, partial, choice, found);
            for (x, s) in partial.iter_mut().zip(sig) {
                *x -= delta * s;
            }
        }
    }
    choice[j] = (0, 0);
}

/// Every representation of `dg`, up to relabeling the basis (and up to graph
/// automorphisms when `quotient` is set), sorted by canonical form.
pub fn enumerate_reps(dg: &DualGraph, quotient: bool) -> Vec<HomRep> {
    if dg.central_weight != 1 {
        return Vec::new();
    }
    let weights = dg.weights();
    if weights[1..].iter().any(|&w| w > -1) {
        return Vec::new();
    }
    let order = search_order(dg);
    let nv = weights.len();
    let mut s = Search {
        weights,
        parents: dg.parents(),
        order: &order,
        placed: vec![Vec::new(); nv],
        lcoef: vec![0; nv],
        columns: 0,
        out: Vec::new(),
    };
    s.lcoef[0] = 1;
    s.go(1);
    let perms = if quotient { vertex_automorphisms(dg) } else { Vec::new() };
    let set: BTreeSet<(Vec<Vec<i64>>, HomRep)> = s
        .out
        .iter()
        .map(|r| {
            let c = canonical_form(r, &perms);
            (c.e_columns(), c)
        })
        .collect();
    set.into_iter().map(|(_, r)| r).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntersectionConfiguration {
    pub line_count: usize,
    /// Each multipoint lists line indices (1-based, line 0 is [C0]).
    pub multipoints: Vec<Vec<usize>>,
    pub name: Option<String>,
}

/// Multipoints among the lines through [C0]'s neighbours.
pub fn configuration_of(dg: &DualGraph, rep: &HomRep) -> IntersectionConfiguration {
    let lines = dg.center_adjacent();
    let d = lines.len();
    let mut mps: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 1..=rep.basis_size {
        let through: Vec<usize> =
            lines.iter().enumerate().filter(|(_, &v)| rep.classes[v][i] == -1).map(|(j, _)| j + 1).collect();
        if through.len() >= 3 {
            mps.insert(through);
        }
    }
    let multipoints: Vec<Vec<usize>> = mps.into_iter().collect();
    let name = if d >= 3 && multipoints.len() == 1 && multipoints[0].len() == d {
        Some(format!("I_1^{d}"))
    } else if (d >= 4 && multipoints.len() == 1 && multipoints[0].len() == d - 1)
        || (d == 3 && multipoints.is_empty())
    {
        Some(format!("I_2^{d}"))
    } else {
        None
    };
    IntersectionConfiguration { line_count: d + 1, multipoints, name }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniqueness {
    Guaranteed,
    UpperBoundOnly,
}

pub fn uniqueness_guarantee(g: &StarGraph, _rep: &HomRep) -> Uniqueness {
    let k = g.arm_count() as i64;
    if (3..=5).contains(&k) || g.central_weight <= -k - 3 {
        Uniqueness::Guaranteed
    } else {
        Uniqueness::UpperBoundOnly
    }
}

/// Shapes of the center-adjacent classes when the dual has short arms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShortArmShape {
    /// one basis element shared by every line
    Common,
    /// one line (long) misses the element common to all others
    AllButOne,
    /// single short arm meets the two groups' common elements
    Split { first_group: usize },
}

/// Matches the catalog for duals with at least one [-1] arm.
pub fn short_arm_shape(dg: &DualGraph, rep: &HomRep) -> Option<ShortArmShape> {
    let lines = dg.center_adjacent();
    let d = lines.len();
    let short: Vec<usize> = (0..d).filter(|&a| dg.is_short_arm(a)).collect();
    if short.is_empty() {
        return None;
    }
    let through =
        |i: usize| -> BTreeSet<usize> { (0..d).filter(|&j| rep.classes[lines[j]][i] == -1).collect() };
    let sets: Vec<BTreeSet<usize>> = (1..=rep.basis_size).map(through).collect();
    if sets.iter().any(|s| s.len() == d) {
        return Some(ShortArmShape::Common);
    }
    let all_but_long =
        |s: &BTreeSet<usize>| s.len() + 1 == d && (0..d).any(|j| !s.contains(&j) && !dg.is_short_arm(j));
    if d >= 3 && sets.iter().any(all_but_long) {
        return Some(ShortArmShape::AllButOne);
    }
    if short.len() == 1 {
        let sa = short[0];
        // the short class is l - e_a - e_b; the two groups partition the rest
        let cols: Vec<&BTreeSet<usize>> = sets.iter().filter(|s| s.contains(&sa)).collect();
        if cols.len() == 2 {
            let mut union: BTreeSet<usize> = cols[0] | cols[1];
            union.remove(&sa);
            let (a, b) = (cols[0].len() - 1, cols[1].len() - 1);
            if union.len() == d - 1 && a >= 2 && b >= 2 {
                return Some(ShortArmShape::Split { first_group: a.min(b) });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual(arms: Vec<Vec<i64>>) -> DualGraph {
        DualGraph::from_arms(arms).unwrap()
    }

    /// Case A / Case B for (+1; [-n1],[-n2],[-n3]).
    fn case_a(n: [usize; 3]) -> HomRep {
        let m = 1 + n.iter().sum::<usize>();
        let mut classes = vec![vec![0i64; m + 1]; 4];
        classes[0][0] = 1;
        let mut next = 2;
        for j in 0..3 {
            classes[j + 1][0] = 1;
            classes[j + 1][1] = -1;
            for _ in 0..n[j] {
                classes[j + 1][next] = -1;
                next += 1;
            }
        }
        HomRep { basis_size: m, classes }
    }

    fn case_b(n: [usize; 3]) -> HomRep {
        let m = n.iter().sum::<usize>();
        let mut classes = vec![vec![0i64; m + 1]; 4];
        classes[0][0] = 1;
        for (j, pair) in [(1usize, [1usize, 2]), (2, [1, 3]), (3, [2, 3])] {
            classes[j][0] = 1;
            for e in pair {
                classes[j][e] = -1;
            }
        }
        let mut next = 4;
        for j in 0..3 {
            for _ in 0..n[j] - 1 {
                classes[j + 1][next] = -1;
                next += 1;
            }
        }
        HomRep { basis_size: m, classes }
    }

    #[test]
    fn case_a_and_b_check() {
        let dg = dual(vec![vec![-3], vec![-4], vec![-2]]);
        assert!(check_rep(&dg, &case_a([3, 4, 2])).unwrap().ok());
        assert!(check_rep(&dg, &case_b([3, 4, 2])).unwrap().ok());
        let mut bad = case_a([3, 4, 2]);
        // move line 3 off the shared element onto a fresh one
        for c in bad.classes.iter_mut() {
            c.push(0);
        }
        bad.basis_size += 1;
        bad.classes[3][1] = 0;
        let last = bad.basis_size;
        bad.classes[3][last] = -1;
        assert!(!check_rep(&dg, &bad).unwrap().ok());
    }

    #[test]
    fn dimension_errors() {
        let dg = dual(vec![vec![-2]]);
        let rep = HomRep { basis_size: 2, classes: vec![vec![1, 0, 0], vec![1, -1]] };
        assert!(matches!(check_rep(&dg, &rep), Err(HomologyError::DimensionMismatch { .. })));
    }

    #[test]
    fn three_lines_two_reps() {
        for n in [[2, 2, 2], [3, 4, 5], [2, 5, 3]] {
            let dg = dual(n.iter().map(|&x| vec![-(x as i64)]).collect());
            let reps = enumerate_reps(&dg, true);
            assert_eq!(reps.len(), 2, "{n:?}");
            let ms: BTreeSet<usize> = reps.iter().map(|r| r.basis_size).collect();
            let s: usize = n.iter().sum();
            assert_eq!(ms, BTreeSet::from([s, s + 1]));
        }
    }

    #[test]
    fn single_arm() {
        let reps = enumerate_reps(&dual(vec![vec![-4]]), true);
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn canonical_is_idempotent_and_relabel_invariant() {
        let dg = dual(vec![vec![-2], vec![-2], vec![-3]]);
        let rep = case_b([2, 2, 3]);
        let perms = vertex_automorphisms(&dg);
        let c = canonical_form(&rep, &perms);
        assert_eq!(canonical_form(&c, &perms), c);
        let scrambled = rep.permute_basis(&[5, 2, 0, 6, 1, 3, 4]);
        assert_eq!(canonical_form(&scrambled, &perms), c);
        let swapped = rep.permute_vertices(&[0, 2, 1, 3]);
        assert_eq!(canonical_form(&swapped, &perms), c);
    }

    #[test]
    fn configurations() {
        let dg = dual(vec![vec![-2]; 3]);
        let a = configuration_of(&dg, &case_a([2, 2, 2]));
        assert_eq!(a.multipoints, vec![vec![1, 2, 3]]);
        assert_eq!(a.name.as_deref(), Some("I_1^3"));
        let b = configuration_of(&dg, &case_b([2, 2, 2]));
        assert!(b.multipoints.is_empty());
    }

    #[test]
    fn uniqueness() {
        let rep = HomRep { basis_size: 0, classes: vec![] };
        let g = |e0, k| StarGraph::new(e0, vec![vec![-2]; k]).unwrap();
        assert_eq!(uniqueness_guarantee(&g(-4, 3), &rep), Uniqueness::Guaranteed);
        assert_eq!(uniqueness_guarantee(&g(-10, 7), &rep), Uniqueness::Guaranteed);
        assert_eq!(uniqueness_guarantee(&g(-8, 7), &rep), Uniqueness::UpperBoundOnly);
    }

    #[test]
    fn display_class() {
        assert_eq!(fmt_class(&[1, -1, 0, -1]), "l-e1-e3");
        assert_eq!(fmt_class(&[0, 1, -1]), "e1-e2");
    }
}
