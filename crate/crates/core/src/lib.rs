//! Symplectic fillings of small Seifert fibered spaces through dual
//! plumbing graphs, homological data, and monodromy words.

pub mod census;
pub mod dualgraph;
pub mod families;
pub mod homology;
pub mod monodromy;
pub mod plumbing;
mod snf;

pub use census::{build_census, build_census_with, CensusOptions, CensusReport, FillingCandidate};
pub use dualgraph::{build_dual, verify_duality, DualGraph};
pub use homology::{enumerate_reps, HomRep};
pub use plumbing::{SeifertData, StarGraph};
