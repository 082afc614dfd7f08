//! Automorphisms of finite induced subgraphs: a refinement-based
//! backtracking search, ball-restricted stabilizers, and subgroup chains.

mod chain;
mod permutation;
mod search;
mod stabilizer;

pub use chain::{chain_length_bound, chain_length_oracle, subgroup_count};
pub use permutation::{motion_of, Permutation, PermutationRecord};
pub use search::{
    search_automorphisms, search_cap, set_search_cap, Engine, SearchConstraints, SearchResult, DEFAULT_NODE_LIMIT, DEFAULT_SEARCH_CAP,
};
pub use stabilizer::{stabilizer_restriction, stabilizer_restriction_capped, StabilizerRestriction};
