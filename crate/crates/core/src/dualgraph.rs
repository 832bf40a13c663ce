//! Dual graph construction by replaying blow-ups of the sphere bundle.
//!
//! Start with zero section (-1), infinity section (+1) and d = -e0-1 fibers
//! (0). Each fiber is blown up at its zero-section point, then the newest
//! exceptional curve is blown up against a neighbour until the chain on the
//! zero-section side spells the arm of the input graph. The last exceptional
//! curve in each fiber is the cut curve; everything on the infinity side is
//! the dual graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plumbing::{star_edges, StarGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualGraphError {
    #[error("curves {0:?} do not share an available intersection point")]
    NoSuchIntersection(Vec<usize>),
    #[error("unknown curve id {0}")]
    UnknownCurve(usize),
    #[error("empty blow-up point")]
    EmptyPoint,
    #[error("graph {0} is not dually positive")]
    NotDuallyPositive(String),
    #[error("dual arms must be nonempty with weights <= -1")]
    BadArm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveTag {
    ZeroSection,
    InfinitySection,
    Fiber(usize),
    Exceptional(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub id: usize,
    pub self_intersection: i64,
    pub tag: CurveTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub curves: Vec<Curve>,
    /// Unordered pair (low id, high id) -> number of intersection points.
    #[serde(with = "incidence_list")]
    pub incidences: BTreeMap<(usize, usize), u32>,
    pub blowup_log: Vec<Vec<usize>>,
}

/// JSON keys must be strings, so the map travels as `[a, b, multiplicity]`.
mod incidence_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, usize), u32>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(usize, usize, u32)> = m.iter().map(|(&(a, b), &k)| (a, b, k)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, usize), u32>, D::Error> {
        let v = Vec::<(usize, usize, u32)>::deserialize(d)?;
        Ok(v.into_iter().map(|(a, b, k)| ((a.min(b), a.max(b)), k)).collect())
    }
}

fn pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

pub const ZERO_SECTION: usize = 0;
pub const INFINITY_SECTION: usize = 1;

impl CurveConfig {
    /// Ids: 0 zero section, 1 infinity section, 2.. fibers.
    pub fn initial(fibers: usize) -> Self {
        let mut curves = vec![
            Curve { id: ZERO_SECTION, self_intersection: -1, tag: CurveTag::ZeroSection },
            Curve { id: INFINITY_SECTION, self_intersection: 1, tag: CurveTag::InfinitySection },
        ];
        let mut incidences = BTreeMap::new();
        for j in 0..fibers {
            let id = 2 + j;
            curves.push(Curve { id, self_intersection: 0, tag: CurveTag::Fiber(j) });
            incidences.insert(pair(ZERO_SECTION, id), 1);
            incidences.insert(pair(INFINITY_SECTION, id), 1);
        }
        Self { curves, incidences, blowup_log: Vec::new() }
    }

    pub fn fiber_id(j: usize) -> usize {
        2 + j
    }

    pub fn meets(&self, a: usize, b: usize) -> u32 {
        self.incidences.get(&pair(a, b)).copied().unwrap_or(0)
    }

    pub fn weight(&self, id: usize) -> i64 {
        self.curves[id].self_intersection
    }

    pub fn steps(&self) -> usize {
        self.blowup_log.len()
    }

    /// Blow up a point lying on exactly the listed curves. Returns the new
    /// configuration; the exceptional curve gets the next id.
    pub fn blowup(&self, point: &[usize]) -> Result<CurveConfig, DualGraphError> {
        let mut ids = point.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.is_empty() {
            return Err(DualGraphError::EmptyPoint);
        }
        if let Some(&bad) = ids.iter().find(|&&i| i >= self.curves.len()) {
            return Err(DualGraphError::UnknownCurve(bad));
        }
        for (x, &a) in ids.iter().enumerate() {
            for &b in &ids[x + 1..] {
                if self.meets(a, b) == 0 {
                    return Err(DualGraphError::NoSuchIntersection(ids.clone()));
                }
            }
        }
        let mut next = self.clone();
        for (x, &a) in ids.iter().enumerate() {
            for &b in &ids[x + 1..] {
                let m = next.incidences.get_mut(&pair(a, b)).expect("checked above");
                *m -= 1;
                if *m == 0 {
                    next.incidences.remove(&pair(a, b));
                }
            }
        }
        let e = next.curves.len();
        for &a in &ids {
            next.curves[a].self_intersection -= 1;
            next.incidences.insert(pair(a, e), 1);
        }
        let step = next.blowup_log.len();
        next.curves.push(Curve { id: e, self_intersection: -1, tag: CurveTag::Exceptional(step) });
        next.blowup_log.push(ids);
        Ok(next)
    }
}

/// Curve ids of one star: center plus arms from the center outward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarLayout {
    pub center: usize,
    pub arms: Vec<Vec<usize>>,
}

impl StarLayout {
    pub fn ids(&self) -> Vec<usize> {
        let mut v = vec![self.center];
        v.extend(self.arms.iter().flatten());
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualOrigin {
    pub config: CurveConfig,
    pub gamma: StarLayout,
    pub gamma_prime: StarLayout,
    pub cuts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub central_weight: i64,
    pub arms: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<DualOrigin>,
}

impl DualGraph {
    /// A bare dual graph with central weight +1 and no blow-up log.
    pub fn from_arms(arms: Vec<Vec<i64>>) -> Result<Self, DualGraphError> {
        if arms.iter().any(|a| a.is_empty() || a.iter().any(|&w| w > -1)) {
            return Err(DualGraphError::BadArm);
        }
        Ok(Self { central_weight: 1, arms, origin: None })
    }

    pub fn arm_count(&self) -> usize {
        self.arms.len()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.arms.iter().map(Vec::len).sum::<usize>()
    }

    pub fn weights(&self) -> Vec<i64> {
        let mut w = vec![self.central_weight];
        for arm in &self.arms {
            w.extend_from_slice(arm);
        }
        w
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        star_edges(self.arms.iter().map(Vec::len))
    }

    /// Parent of each vertex (None for the center).
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.vertex_count()];
        for (a, b) in self.edges() {
            p[b] = Some(a);
        }
        p
    }

    /// Vertex ids adjacent to the center, one per arm.
    pub fn center_adjacent(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut next = 1;
        for arm in &self.arms {
            out.push(next);
            next += arm.len();
        }
        out
    }

    pub fn is_short_arm(&self, arm: usize) -> bool {
        self.arms[arm] == [-1]
    }

    /// Sum of (|w|+1) over non-central vertices.
    pub fn basis_bound(&self) -> usize {
        self.arms.iter().flatten().map(|&w| (-w + 1) as usize).sum()
    }

    /// Arm permutations preserving the weighted graph, identity first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        arm_automorphisms(&self.arms)
    }

    /// Vertex permutation induced by an arm permutation: new vertex v holds
    /// old vertex perm_v[v].
    pub fn vertex_permutation(&self, arm_perm: &[usize]) -> Vec<usize> {
        let starts: Vec<usize> = self.center_adjacent();
        let mut out = vec![0];
        for &a in arm_perm {
            out.extend(starts[a]..starts[a] + self.arms[a].len());
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dual {\n  node [shape=circle];\n");
        for (v, w) in self.weights().into_iter().enumerate() {
            let _ = writeln!(s, "  v{v} [label=\"w={w}\"];");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// All permutations of arms that map each arm to an identical arm.
pub fn arm_automorphisms(arms: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = arms.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(arms: &[Vec<i64>], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == arms.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..arms.len() {
            if !used[j] && arms[j] == arms[i] {
                used[j] = true;
                cur.push(j);
                rec(arms, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    rec(arms, &mut cur, &mut used, &mut out);
    out
}

/// Runs the blow-up schedule for a dually positive graph.
pub fn build_dual(g: &StarGraph) -> Result<DualGraph, DualGraphError> {
    if !g.is_dually_positive() {
        return Err(DualGraphError::NotDuallyPositive(g.to_string()));
    }
    let d = (-g.central_weight - 1) as usize;
    let k = g.arm_count();
    let mut cfg = CurveConfig::initial(d);
    let mut gamma_arms = Vec::with_capacity(k);
    let mut dual_arms = Vec::with_capacity(d);
    let mut cuts = Vec::with_capacity(d);

    let blow = |cfg: &mut CurveConfig, point: &[usize]| -> usize {
        assert!(!point.contains(&INFINITY_SECTION), "schedule touched the infinity section");
        *cfg = cfg.blowup(point).expect("schedule only blows up existing intersections");
        cfg.curves.len() - 1
    };

    for j in 0..d {
        let fiber = CurveConfig::fiber_id(j);
        let mut cut = blow(&mut cfg, &[ZERO_SECTION, fiber]);
        let mut right = fiber;
        let mut gamma_ids = Vec::new();
        let mut dual_ids = vec![fiber];
        if let Some(arm) = g.arms.get(j) {
            for &b in arm {
                // the cut curve moves to the zero-section side as the next -2
                let e = blow(&mut cfg, &[cut, right]);
                let gi = cut;
                gamma_ids.push(gi);
                cut = e;
                while cfg.weight(gi) > b {
                    let e = blow(&mut cfg, &[cut, gi]);
                    // the old cut joins the infinity side
                    dual_ids.push(cut);
                    right = cut;
                    cut = e;
                }
            }
            gamma_arms.push(gamma_ids);
        }
        dual_arms.push(dual_ids);
        cuts.push(cut);
    }

    let arms = dual_arms.iter().map(|ids| ids.iter().map(|&i| cfg.weight(i)).collect()).collect();
    Ok(DualGraph {
        central_weight: cfg.weight(INFINITY_SECTION),
        arms,
        origin: Some(DualOrigin {
            config: cfg,
            gamma: StarLayout { center: ZERO_SECTION, arms: gamma_arms },
            gamma_prime: StarLayout { center: INFINITY_SECTION, arms: dual_arms },
            cuts,
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub ok: bool,
    pub steps: usize,
    pub diagnostics: Vec<String>,
}

/// Re-reads the blow-up log and checks it against `g`.
pub fn verify_duality(dg: &DualGraph, g: &StarGraph) -> DualityCheck {
    let mut diag = Vec::new();
    let Some(origin) = &dg.origin else {
        return DualityCheck { ok: false, steps: 0, diagnostics: vec!["no blow-up log".into()] };
    };
    let cfg = &origin.config;
    let w = |id: usize| cfg.curves.get(id).map(|c| c.self_intersection);

    // (a) zero-section side spells g
    if w(origin.gamma.center) != Some(g.central_weight) {
        diag.push(format!("center weight {:?} != {}", w(origin.gamma.center), g.central_weight));
    }
    if origin.gamma.arms.len() != g.arm_count() {
        diag.push(format!("{} gamma arms, expected {}", origin.gamma.arms.len(), g.arm_count()));
    }
    for (j, (ids, arm)) in origin.gamma.arms.iter().zip(&g.arms).enumerate() {
        let got: Vec<Option<i64>> = ids.iter().map(|&i| w(i)).collect();
        let want: Vec<Option<i64>> = arm.iter().map(|&b| Some(b)).collect();
        if got != want {
            diag.push(format!("gamma arm {j}: {got:?} != {arm:?}"));
        }
    }
    // (b) vertex count against the number of blow-ups
    let nv = origin.gamma.ids().len() + origin.gamma_prime.ids().len();
    if nv != cfg.steps() + 2 {
        diag.push(format!("|V| = {nv} but steps + 2 = {}", cfg.steps() + 2));
    }
    // (c) cut curves are -1
    for &c in &origin.cuts {
        if w(c) != Some(-1) {
            diag.push(format!("cut curve {c} has square {:?}", w(c)));
        }
    }
    // recorded dual weights agree with the log
    if w(origin.gamma_prime.center) != Some(dg.central_weight) {
        diag.push("dual center weight disagrees with log".into());
    }
    let logged: Vec<Vec<Option<i64>>> =
        origin.gamma_prime.arms.iter().map(|ids| ids.iter().map(|&i| w(i)).collect()).collect();
    let recorded: Vec<Vec<Option<i64>>> =
        dg.arms.iter().map(|a| a.iter().map(|&x| Some(x)).collect()).collect();
    if logged != recorded {
        diag.push(format!("dual arms {recorded:?} disagree with log {logged:?}"));
    }
    // the two sides meet only through cut curves
    let gamma_ids = origin.gamma.ids();
    let prime_ids = origin.gamma_prime.ids();
    for &a in &gamma_ids {
        for &b in &prime_ids {
            if cfg.meets(a, b) > 0 {
                diag.push(format!("curves {a} and {b} meet across the cut"));
            }
        }
    }
    DualityCheck { ok: diag.is_empty(), steps: cfg.steps(), diagnostics: diag }
}

/// DOT for the whole blown-up configuration, colored by side.
pub fn config_to_dot(dg: &DualGraph) -> Option<String> {
    let origin = dg.origin.as_ref()?;
    let gamma = origin.gamma.ids();
    let prime = origin.gamma_prime.ids();
    let mut s = String::from("graph blowup {\n  node [shape=circle];\n");
    for c in &origin.config.curves {
        let color = if gamma.contains(&c.id) {
            "blue"
        } else if prime.contains(&c.id) {
            "red"
        } else if origin.cuts.contains(&c.id) {
            "black"
        } else {
            "gray"
        };
        let _ = writeln!(s, "  c{} [label=\"w={}\", color={color}];", c.id, c.self_intersection);
    }
    for (&(a, b), &m) in &origin.config.incidences {
        for _ in 0..m {
            let _ = writeln!(s, "  c{a} -- c{b};");
        }
    }
    s.push_str("}\n");
    Some(s)
}
