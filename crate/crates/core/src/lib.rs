//! Zero-density 2-distinguishing colorings of locally finite infinite graphs,
//! constructed and verified on finite ball truncations.
//!
//! The crate is organised around a lazy neighbor oracle ([`graph::Graph`]):
//! balls are materialized on demand, finite induced subgraphs are handed to
//! an exact automorphism search, and colorings are built and verified on
//! top of that.

pub mod automorphism;
pub mod coloring;
pub mod config;
pub mod dsc;
pub mod error;
pub mod export;
pub mod generators;
pub mod graph;
pub mod rational;

pub use error::{Error, Result};
pub use generators::FamilySpec;
pub use graph::{ball, distance, sphere, BallView, FiniteGraph, Graph, GraphHandle, VertexId};
pub use rational::Ratio;
