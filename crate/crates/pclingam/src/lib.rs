//! Causal discovery of linear acyclic models with mixed Gaussian and
//! non-Gaussian disturbances.
//!
//! The crate combines constraint-based structure search with an ICA-style
//! non-Gaussianity score: the PC algorithm estimates the
//! d-separation-equivalence pattern, every DAG in the class is scored by how
//! non-Gaussian its least-squares residuals are, and a normality test on the
//! winner's residuals yields the distribution-equivalence pattern, which can
//! direct edges a conditional-independence method alone must leave undirected.
//!
//! Modules:
//! - [`graph`]: DAGs, mixed graphs, d-separation, CPDAG construction, Meek
//!   rules, equivalence-class enumeration, ngDAG patterns.
//! - [`scm`]: linear acyclic structural causal models, disturbance families,
//!   sampling, reduced form, covariance-preserving reparametrization.
//! - [`stats`]: partial correlations, Fisher-z independence test, OLS
//!   residuals, the non-Gaussianity objective, Anderson-Darling normality.
//! - [`discovery`]: the PClingam pipeline.
//! - [`bench`]: randomized experiments and edge-mark confusion matrices.

pub mod bench;
pub mod data;
pub mod discovery;
pub mod error;
pub mod graph;
pub mod json;
pub mod scm;
pub mod stats;

pub use error::{Error, Result};
