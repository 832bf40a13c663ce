//! Independent oracles shared by the integration tests and the acceptance
//! runner. Nothing here calls into the enumerator, the blow-up schedule, or
//! the family fixtures of the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use sfs_fillings::dualgraph::DualGraph;
use sfs_fillings::homology::HomRep;
use sfs_fillings::plumbing::StarGraph;

/// Dual chain from the Riemenschneider point diagram: row i holds a_i - 1
/// dots and starts in the column where row i-1 ended.
pub fn riemenschneider_dual(arm: &[i64]) -> Vec<i64> {
    let mut cols: Vec<i64> = Vec::new();
    let mut start = 0usize;
    for &w in arm {
        let dots = (-w - 1) as usize;
        for c in start..start + dots {
            if cols.len() <= c {
                cols.push(0);
            }
            cols[c] += 1;
        }
        start += dots - 1;
    }
    cols.iter().map(|&d| -(d + 1)).collect()
}

/// Expected dual: one dual chain per arm, then -e0-1-k arms [-1].
pub fn expected_dual_arms(g: &StarGraph) -> Vec<Vec<i64>> {
    let d = (-g.central_weight - 1) as usize;
    let mut arms: Vec<Vec<i64>> = g.arms.iter().map(|a| riemenschneider_dual(a)).collect();
    arms.resize(d, vec![-1]);
    arms
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
}

/// Columns (one per e_i, listed over all vertices) sorted: the
/// lexicographically least relabeling of the basis.
pub fn sorted_columns(classes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = classes.first().map_or(0, |c| c.len() - 1);
    let mut cols: Vec<Vec<i64>> = (1..=m).map(|i| classes.iter().map(|c| c[i]).collect()).collect();
    cols.sort();
    cols
}

pub fn rep_key(rep: &HomRep) -> Vec<Vec<i64>> {
    sorted_columns(&rep.classes)
}

/// Vertex lists for every arm permutation preserving weights.
pub fn vertex_symmetries(arms: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let mut starts = Vec::new();
    let mut next = 1;
    for a in arms {
        starts.push(next);
        next += a.len();
    }
    let mut out = Vec::new();
    let k = arms.len();
    let mut perm: Vec<usize> = (0..k).collect();
    // Heap's algorithm over all arm orders, filtered
    fn heap(n: usize, p: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if n <= 1 {
            f(p);
            return;
        }
        for i in 0..n - 1 {
            heap(n - 1, p, f);
            if n.is_multiple_of(2) {
                p.swap(i, n - 1);
            } else {
                p.swap(0, n - 1);
            }
        }
        heap(n - 1, p, f);
    }
    heap(k, &mut perm, &mut |p: &[usize]| {
        if p.iter().enumerate().all(|(i, &j)| arms[i] == arms[j]) {
            let mut v = vec![0];
            for &j in p {
                v.extend(starts[j]..starts[j] + arms[j].len());
            }
            out.push(v);
        }
    });
    out.sort();
    out.dedup();
    out
}

pub fn quotient_key(classes: &[Vec<i64>], syms: &[Vec<usize>]) -> Vec<Vec<i64>> {
    syms.iter()
        .map(|p| {
            let permuted: Vec<Vec<i64>> = p.iter().map(|&v| classes[v].clone()).collect();
            sorted_columns(&permuted)
        })
        .min()
        .expect("identity present")
}

/// Every assignment of coefficient vectors in {-1,0,1}^M (M = 0..=bound)
/// meeting squares, adjunction, pairwise products and basis minimality,
/// keyed by sorted columns.
pub fn brute_force_reps(dg: &DualGraph) -> BTreeSet<Vec<Vec<i64>>> {
    let weights = dg.weights();
    let nv = weights.len();
    let mut adj = vec![vec![false; nv]; nv];
    for (a, b) in dg.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut found = BTreeSet::new();
    for m in 0..=dg.basis_bound() {
        // all vectors of length m over {-1,0,1}
        let total = 3usize.pow(m as u32);
        let all: Vec<Vec<i64>> = (0..total)
            .map(|mut x| {
                (0..m)
                    .map(|_| {
                        let d = (x % 3) as i64 - 1;
                        x /= 3;
                        d
                    })
                    .collect()
            })
            .collect();
        let mut center = vec![0i64; m + 1];
        center[0] = 1;
        // candidates per vertex: square and adjunction only
        let cands: Vec<Vec<Vec<i64>>> = (1..nv)
            .map(|v| {
                let a0 = i64::from(adj[0][v]);
                all.iter()
                    .map(|e| {
                        let mut c = vec![a0];
                        c.extend(e);
                        c
                    })
                    .filter(|c| {
                        let sq = dot(c, c);
                        let c1 = 3 * c[0] + c[1..].iter().sum::<i64>();
                        sq == weights[v] && c1 == sq + 2 && dot(c, &center) == a0
                    })
                    .collect()
            })
            .collect();
        let mut chosen: Vec<Vec<i64>> = vec![center.clone()];
        fn rec(
            v: usize,
            nv: usize,
            adj: &[Vec<bool>],
            cands: &[Vec<Vec<i64>>],
            chosen: &mut Vec<Vec<i64>>,
            found: &mut BTreeSet<Vec<Vec<i64>>>,
        ) {
            if v == nv {
                let m = chosen[0].len() - 1;
                if (1..=m).all(|i| chosen.iter().any(|c| c[i] != 0)) {
                    found.insert(sorted_columns(chosen));
                }
                return;
            }
            for c in &cands[v - 1] {
                // WLOG the first vertex's e-part is ascending
                if v == 1 && c[1..].windows(2).any(|w| w[0] > w[1]) {
                    continue;
                }
                if (1..v).all(|u| dot(c, &chosen[u]) == i64::from(adj[u][v])) {
                    chosen.push(c.clone());
                    rec(v + 1, nv, adj, cands, chosen, found);
                    chosen.pop();
                }
            }
        }
        rec(1, nv, &adj, &cands, &mut chosen, &mut found);
    }
    found
}

/// Star duals (+1 center) with at most `max_vertices` vertices and basis
/// bound at most `max_bound`, one per isomorphism class.
pub fn small_duals(max_vertices: usize, max_bound: usize) -> Vec<DualGraph> {
    // candidate arms: weight sequences with sum(|w|+1) <= max_bound
    let mut arms: Vec<Vec<i64>> = Vec::new();
    fn grow(cur: &mut Vec<i64>, left_v: usize, left_b: usize, out: &mut Vec<Vec<i64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left_v == 0 {
            return;
        }
        for w in 1..=(left_b as i64 - 1) {
            cur.push(-w);
            grow(cur, left_v - 1, left_b - (w as usize + 1), out);
            cur.pop();
        }
    }
    grow(&mut Vec::new(), max_vertices - 1, max_bound, &mut arms);
    arms.sort();
    let mut out = Vec::new();
    fn pick(
        arms: &[Vec<i64>],
        from: usize,
        cur: &mut Vec<Vec<i64>>,
        left_v: usize,
        left_b: usize,
        out: &mut Vec<DualGraph>,
    ) {
        if !cur.is_empty() {
            out.push(DualGraph::from_arms(cur.clone()).expect("valid arms"));
        }
        for i in from..arms.len() {
            let a = &arms[i];
            let b: usize = a.iter().map(|&w| (-w + 1) as usize).sum();
            if a.len() <= left_v && b <= left_b {
                cur.push(a.clone());
                pick(arms, i, cur, left_v - a.len(), left_b - b, out);
                cur.pop();
            }
        }
    }
    pick(&arms, 0, &mut Vec::new(), max_vertices - 1, max_bound, &mut out);
    out
}

/// Count for e0 <= -k-3 and (-2)-chain arms of lengths n_j - 1: the plumbing,
/// plus one blow-down for each distinct n_j with n_j >= -e0-3.
pub fn deep_center_chis(e0: i64, n: &[i64]) -> Vec<i64> {
    let s: i64 = n.iter().sum();
    let k = n.len() as i64;
    let mut classes: Vec<i64> = n.iter().copied().filter(|&x| x + e0 + 3 >= 0).collect();
    classes.sort_unstable();
    classes.dedup();
    let mut chis = vec![s - k + 2];
    for _ in &classes {
        chis.push(s - k + 5 + e0);
    }
    chis.sort_unstable_by(|a, b| b.cmp(a));
    chis
}

/// The W(p,q,r) list: plumbing; central blow-down; arm blow-downs under
/// p-1<=q, r-1<=p, q-1<=r; combinations; combinations with the central one
/// under p<=q, r<=p, q<=r; the rational ball. Arm choices related by a
/// symmetry of the weighted graph count once.
pub fn wpqr_items(p: i64, q: i64, r: i64) -> Vec<i64> {
    let lens = [p, r, q];
    let plain = [p >= 1 && p - 1 <= q, r >= 1 && r - 1 <= p, q >= 1 && q - 1 <= r];
    let strong = [p >= 1 && p <= q, r >= 1 && r <= p, q >= 1 && q <= r];
    let g = wpqr_star(p, q, r);
    let syms = vertex_symmetries(&g.arms);
    // an arm permutation from a vertex symmetry: where each arm's first vertex goes
    let starts: Vec<usize> = {
        let mut s = Vec::new();
        let mut next = 1;
        for a in &g.arms {
            s.push(next);
            next += a.len();
        }
        s
    };
    let arm_perms: Vec<Vec<usize>> = syms
        .iter()
        .map(|vp| starts.iter().map(|&st| starts.iter().position(|&x| x == vp[st]).unwrap()).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut chis = vec![1];
    for center in [false, true] {
        for mask in 0u32..8 {
            let ok = (0..3).all(|j| mask & (1 << j) == 0 || if center { strong[j] } else { plain[j] });
            if !ok {
                continue;
            }
            let orbit = arm_perms
                .iter()
                .map(|ap| (0..3).filter(|&j| mask & (1 << ap[j]) != 0).fold(0u32, |m, j| m | (1 << j)))
                .min()
                .unwrap();
            if seen.insert((center, orbit)) {
                let lost: i64 = (0..3).filter(|&j| mask & (1 << j) != 0).map(|j| lens[j]).sum();
                chis.push(p + q + r + 5 - i64::from(center) - lost);
            }
        }
    }
    chis.sort_unstable_by(|a, b| b.cmp(a));
    chis
}

pub fn wpqr_star(p: i64, q: i64, r: i64) -> StarGraph {
    let arm = |twos: i64, end: i64| {
        let mut a = vec![-2; twos as usize];
        a.push(-(end + 3));
        a
    };
    StarGraph::new(-4, vec![arm(q, p), arm(p, r), arm(r, q)]).unwrap()
}

pub fn chain(n: i64) -> Vec<i64> {
    vec![-2; (n - 1) as usize]
}

pub fn chains(e0: i64, n: &[i64]) -> StarGraph {
    StarGraph::new(e0, n.iter().map(|&x| chain(x)).collect()).unwrap()
}

/// Exponent deficits read off the displayed factorizations: the word for a
/// pattern uses D_j^{n_j - less_j}, so it needs n_j >= less_j. Paired with
/// the χ offset from Σn and the multipoints on lines 1..k.
pub fn line_catalog(k: usize) -> Vec<(Vec<i64>, i64, Vec<Vec<usize>>)> {
    match k {
        4 => vec![
            (vec![2, 2, 2, 2], -5, vec![]),
            (vec![1, 1, 1, 2], -4, vec![vec![1, 2, 3]]),
            (vec![0, 0, 0, 0], -2, vec![vec![1, 2, 3, 4]]),
        ],
        5 => vec![
            (vec![3, 3, 3, 3, 3], -9, vec![]),
            (vec![2, 2, 2, 3, 3], -8, vec![vec![1, 2, 3]]),
            (vec![1, 1, 1, 1, 3], -6, vec![vec![1, 2, 3, 4]]),
            (vec![2, 2, 1, 2, 2], -7, vec![vec![1, 2, 3], vec![3, 4, 5]]),
            (vec![0, 0, 0, 0, 0], -3, vec![vec![1, 2, 3, 4, 5]]),
        ],
        _ => vec![],
    }
}

/// χ values of the realizable labeled line patterns for twist counts n,
/// one per orbit under permutations of equal n_j.
pub fn line_chis(n: &[i64]) -> Vec<i64> {
    let k = n.len();
    let s: i64 = n.iter().sum();
    let perms = all_perms(k);
    let mut seen = BTreeSet::new();
    let mut chis = Vec::new();
    for (less, offset, mps) in line_catalog(k) {
        for p in &perms {
            // line j of the pattern becomes line p[j]
            if !(0..k).all(|j| n[p[j]] >= less[j]) {
                continue;
            }
            let label = |mps: &[Vec<usize>], q: &[usize]| {
                let mut v: Vec<Vec<usize>> = mps
                    .iter()
                    .map(|m| {
                        let mut x: Vec<usize> = m.iter().map(|&h| q[p[h - 1]]).collect();
                        x.sort_unstable();
                        x
                    })
                    .collect();
                v.sort();
                v
            };
            let key = perms
                .iter()
                .filter(|q| (0..k).all(|i| n[q[i]] == n[i]))
                .map(|q| label(&mps, q))
                .min()
                .unwrap();
            if seen.insert((offset, key)) {
                chis.push(s + offset);
            }
        }
    }
    chis.sort_unstable_by(|a, b| b.cmp(a));
    chis
}

pub fn all_perms(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Nondecreasing tuples of length k from `vals`.
pub fn multisets(vals: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        for mut rest in multisets(&vals[i..], k - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// Classes back from a column key; entry 0 is the line coefficient.
pub fn classes_from_columns(dg: &DualGraph, cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..dg.vertex_count())
        .map(|v| {
            let mut c = vec![i64::from(v == 0 || dg.center_adjacent().contains(&v))];
            c.extend(cols.iter().map(|col| col[v]));
            c
        })
        .collect()
}
