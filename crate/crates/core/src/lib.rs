//! Discrete-time Altafini opinion dynamics on time-varying signed digraphs.
//!
//! Agents update `x(t+1) = A(t) x(t)` where off-diagonal weights may be
//! negative. The crate provides:
//!
//! - [`graph`]: signed digraphs, connectivity, structural balance and
//!   negative-cycle certificates.
//! - [`weight`]: validated weight matrices, their signed graphs, gauge
//!   transforms and switching signals.
//! - [`lifting`]: the `z = [x; -x]` expansion to a nonnegative consensus
//!   process on `2n` states and the structure of its graph.
//! - [`dynamics`]: simulation, state transition matrices, limit detection
//!   and classification of periodic signals into limit regimes.
//! - [`rate`]: absolute probability sequences and convergence-rate bounds.
//! - [`spectral`]: eigenstructure of time-invariant rooted signed graphs.
//! - [`io`]: graph, matrix, signal and trajectory file formats.
//!
//! Vertices are 0-based in the Rust API. Everything that is serialized
//! (reports, graph files) uses 1-based vertex ids.

pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod lifting;
pub mod rate;
pub mod spectral;
pub mod weight;

pub use dynamics::{
    classify_sequence, detect_limit, exceptional_set_probe, simulate, transition_matrix,
    LimitVerdict, Prediction, SequenceBalance, SequenceClassification, Trajectory,
};
pub use error::{Error, Result};
pub use graph::{
    check_balance, classify_class, find_negative_directed_cycle, union, verify_balance,
    BalanceVerdict, Clustering, Condensation, Digraph, GraphClass, NegativeCycleCertificate,
    Sign, SignedDigraph,
};
pub use lifting::{analyze_lifted_structure, lift, lifted_graph, LiftedGraphStructure, LiftedMatrix};
pub use rate::{AbsoluteProbabilitySequence, RateBound, RateKind};
pub use spectral::{analyze_spectrum, root_class, SpectralReport, SpectralVerdict};
pub use weight::{gauge_transform, validate, SwitchingSignal, WeightMatrix};

/// Dense matrix type used throughout the crate.
pub type Matrix = nalgebra::DMatrix<f64>;
/// Dense column vector type used throughout the crate.
pub type Vector = nalgebra::DVector<f64>;
