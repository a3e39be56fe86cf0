//! Matroids over abelian groups and their matchability.
//!
//! The crate builds matroids whose ground sets are finite subsets of `Z^k` or
//! of a finite product of cyclic groups (uniform, panhandle `P_{n,s,m}(a)`,
//! Schubert `SM_m(a, S)`, duals, direct sums), decides whether one matroid is
//! matched to another, and runs exhaustive or sampled verification campaigns
//! for the known matchability characterizations.

pub mod bipartite;
pub mod error;
pub mod group;
pub mod intersection;
pub mod io;
pub mod matching;
pub mod matroid;
pub mod suite;

pub use error::{Error, Result};
pub use group::{GroupCtx, GroupElement, OrderedSubset, PValue};
pub use matching::{
    basis_matched_into, basis_pair_matched, group_matching, matroid_matched, Engine, MatchReport,
    MatchWitness,
};
pub use matroid::{is_uniform_schubert, IndexSet, Matroid, PanhandleParams, SchubertParams};
