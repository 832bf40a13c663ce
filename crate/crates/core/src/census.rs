//! Filling candidates, their numerical invariants, and the census report.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualgraph::{build_dual, DualGraph, DualGraphError};
use crate::families::{match_known_family, FixtureVerdict};
use crate::homology::{
    configuration_of, enumerate_reps, uniqueness_guarantee, HomRep, IntersectionConfiguration, Uniqueness,
};
use crate::plumbing::{seifert_from_graph, PlumbingError, SeifertData, StarGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error(transparent)]
    Dual(#[from] DualGraphError),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Annotation {
    #[serde(rename = "matches original plumbing χ")]
    MatchesPlumbing,
    #[serde(rename = "rational-homology-ball χ")]
    RationalBall,
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Annotation::MatchesPlumbing => "matches original plumbing χ",
            Annotation::RationalBall => "rational-homology-ball χ",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingCandidate {
    #[serde(rename = "chi")]
    pub euler: i64,
    #[serde(rename = "sigma_bound")]
    pub sigma_abs_bound: i64,
    #[serde(rename = "M")]
    pub basis_size: usize,
    pub m_plus_1: usize,
    #[serde(rename = "N")]
    pub basis_bound: usize,
    pub b1_bound: usize,
    #[serde(rename = "config")]
    pub configuration: IntersectionConfiguration,
    pub uniqueness: Uniqueness,
    pub annotation: Option<Annotation>,
    pub rep: HomRep,
}

impl FillingCandidate {
    pub fn within_bounds(&self) -> bool {
        self.euler <= self.basis_bound as i64
            && self.sigma_abs_bound <= (self.basis_bound + self.b1_bound) as i64
    }
}

pub fn candidate_metrics(g: &StarGraph, dg: &DualGraph, rep: &HomRep) -> FillingCandidate {
    let m_plus_1 = dg.vertex_count();
    let big_m = rep.basis_size as i64;
    let b1 = g.homology_of_boundary().free_rank;
    let euler = big_m - m_plus_1 as i64 + 2;
    let annotation = if euler == 1 + g.vertex_count() as i64 {
        Some(Annotation::MatchesPlumbing)
    } else if euler == 1 {
        Some(Annotation::RationalBall)
    } else {
        None
    };
    FillingCandidate {
        euler,
        sigma_abs_bound: big_m - (m_plus_1 as i64 - 1) + b1 as i64,
        basis_size: rep.basis_size,
        m_plus_1,
        basis_bound: dg.basis_bound(),
        b1_bound: b1,
        configuration: configuration_of(dg, rep),
        uniqueness: uniqueness_guarantee(g, rep),
        annotation,
        rep: rep.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub symmetry_quotient: bool,
    pub fixtures: bool,
    pub timing: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { symmetry_quotient: true, fixtures: true, timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub input: StarGraph,
    pub seifert: SeifertData,
    pub dual_graph: DualGraph,
    pub candidates: Vec<FillingCandidate>,
    pub fixtures: Vec<FixtureVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl CensusReport {
    pub fn chis(&self) -> Vec<i64> {
        self.candidates.iter().map(|c| c.euler).collect()
    }
}

pub fn build_census(g: &StarGraph) -> Result<CensusReport, CensusError> {
    build_census_with(g, &CensusOptions::default())
}

pub fn build_census_with(g: &StarGraph, opts: &CensusOptions) -> Result<CensusReport, CensusError> {
    let start = Instant::now();
    let dg = build_dual(g)?;
    let seifert = seifert_from_graph(g)?;
    let reps = enumerate_reps(&dg, opts.symmetry_quotient);
    let mut candidates: Vec<FillingCandidate> = reps.iter().map(|r| candidate_metrics(g, &dg, r)).collect();
    candidates.sort_by(|a, b| b.euler.cmp(&a.euler).then_with(|| a.rep.e_columns().cmp(&b.rep.e_columns())));
    let mut report = CensusReport {
        input: g.clone(),
        seifert,
        dual_graph: DualGraph { origin: None, ..dg },
        candidates,
        fixtures: Vec::new(),
        timing: None,
    };
    if opts.fixtures && opts.symmetry_quotient {
        report.fixtures = match_known_family(g, &report);
    }
    if opts.timing {
        report.timing = Some(Timing { elapsed_ms: start.elapsed().as_millis() as u64 });
    }
    Ok(report)
}
