//! The PClingam pipeline: pattern estimation, per-DAG non-Gaussianity
//! scoring, normality labeling, and the final ngDAG pattern.

mod pc;
mod select;

pub use pc::{pc_from_ci, pc_pattern, pc_pattern_with_repairs};
pub use select::{ng_vector, ng_vector_from_p_values, residual_p_values, select_best_dag, DagScore};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::graph::{meek_closure, ngdag_pattern, Dag, MixedGraph, NgDag, NgPattern};
use crate::stats::ols_residuals;

/// Tunable parameters of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscoveryConfig {
    /// Significance level of the conditional-independence tests in the PC
    /// step.
    pub ci_alpha: f64,
    /// Significance level for rejecting residual normality.
    pub ng_alpha: f64,
    /// Cap on the number of DAGs enumerated from the estimated pattern.
    pub max_class_size: usize,
    /// Cap on PC conditioning-set size; `None` means `n - 2`.
    pub max_cond_size: Option<usize>,
}

impl Default for DiscoveryConfig {
    fn default() -> Self {
        Self { ci_alpha: 0.01, ng_alpha: 0.01, max_class_size: 10_000, max_cond_size: None }
    }
}

impl DiscoveryConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, alpha) in [("ci_alpha", self.ci_alpha), ("ng_alpha", self.ng_alpha)] {
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::InvalidArgument(format!("{name} must lie in (0, 1), got {alpha}")));
            }
        }
        if self.max_class_size == 0 {
            return Err(Error::InvalidArgument("max_class_size must be positive".into()));
        }
        Ok(())
    }
}

/// Everything the pipeline produced for one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscoveryReport {
    /// The estimated distribution-equivalence pattern.
    pub pattern: NgPattern,
    /// The highest-scoring DAG of the estimated class.
    pub best_dag: Dag,
    /// Every enumerated DAG with its objective value, in enumeration order.
    pub dag_scores: Vec<DagScore>,
    /// Anderson-Darling p-value per residual of `best_dag`.
    pub residual_p_values: Vec<f64>,
    /// Edges un-oriented to repair finite-sample conflicts in the PC step
    /// (always 0 when a pattern was supplied).
    pub step1_repairs: usize,
    pub config_used: DiscoveryConfig,
}

/// Runs the three pipeline steps on `data`.
///
/// With `oracle_pattern` supplied, step 1 is skipped and the given
/// d-separation-equivalence pattern is used instead (it is validated and
/// closed, never repaired). Steps 2-3 never add or remove adjacencies, so the
/// output skeleton equals the oracle's skeleton.
pub fn pclingam(
    data: &Dataset,
    config: &DiscoveryConfig,
    oracle_pattern: Option<&MixedGraph>,
) -> Result<DiscoveryReport> {
    config.validate()?;
    let (pattern, step1_repairs) = match oracle_pattern {
        Some(oracle) => {
            if oracle.node_count() != data.n_vars() {
                return Err(Error::InvalidArgument(format!(
                    "oracle pattern has {} nodes, data has {} variables",
                    oracle.node_count(),
                    data.n_vars()
                )));
            }
            if !oracle.is_chain_graph() {
                return Err(Error::InvalidArgument(
                    "oracle pattern contains a semi-directed cycle".into(),
                ));
            }
            (meek_closure(oracle)?, 0)
        }
        None => pc_pattern_with_repairs(data, config)?,
    };
    let (best_dag, dag_scores) = select_best_dag(data, &pattern, config)?;
    let residuals = ols_residuals(data, &best_dag)?;
    let residual_p_values = residual_p_values(&residuals)?;
    let ng = ng_vector_from_p_values(&residual_p_values, config.ng_alpha);
    let ngdag = NgDag::new(best_dag.clone(), ng).expect("lengths match");
    Ok(DiscoveryReport {
        pattern: ngdag_pattern(&ngdag),
        best_dag,
        dag_scores,
        residual_p_values,
        step1_repairs,
        config_used: *config,
    })
}
