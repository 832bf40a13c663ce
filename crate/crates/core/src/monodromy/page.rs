//! Abstract page data for the open book of a plumbing with s_j <= 0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plumbing::StarGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PageError {
    #[error("vertex {vertex} has s = {s} > 0")]
    BadVertex { vertex: usize, s: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageSummary {
    /// weight + valence per vertex, global vertex order
    pub s: Vec<i64>,
    pub neck_curves: usize,
    pub genus: usize,
    pub boundary_components: usize,
}

pub fn gay_mark_page(g: &StarGraph) -> Result<PageSummary, PageError> {
    let weights = g.weights();
    let mut valence = vec![0i64; weights.len()];
    let edges = g.edges();
    for &(a, b) in &edges {
        valence[a] += 1;
        valence[b] += 1;
    }
    let s: Vec<i64> = weights.iter().zip(&valence).map(|(w, v)| w + v).collect();
    if let Some((vertex, &bad)) = s.iter().enumerate().find(|(_, &x)| x > 0) {
        return Err(PageError::BadVertex { vertex, s: bad });
    }
    let holes: usize = s.iter().map(|x| x.unsigned_abs() as usize).sum();
    Ok(PageSummary { s, neck_curves: edges.len() + holes, genus: 0, boundary_components: holes })
}
