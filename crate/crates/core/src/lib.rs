//! Random labelings of graphs conditioned on a small number of peaks.
//!
//! The crate covers exact single- and twin-peak probabilities on trees, exhaustive
//! enumeration over all labelings of small graphs, conditioned samplers (rejection
//! and constrained-swap MCMC), Eden-model growth, and the level-set, gradient-path
//! and twin-peak statistics built on them.

pub mod cli;
pub mod cluster;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod gradient;
pub mod labeling;
pub mod mcmc;
pub mod oracle;
pub mod rng;
pub mod samplers;
pub mod tree;
pub mod tree_exact;

pub use error::{Error, Result};
