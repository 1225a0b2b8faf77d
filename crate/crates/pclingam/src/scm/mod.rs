//! Linear acyclic structural causal models: parametrization, disturbance
//! families, sampling, reduced form, and equivalence-preserving
//! reparametrization.

mod disturbance;
mod model;
mod random;
mod reparam;

pub use disturbance::{DisturbanceFamily, DisturbanceSpec};
pub use model::ScmModel;
pub use random::{default_edge_prob, random_instance, random_model, random_ngdag};
pub use reparam::match_parametrization;
