//! Scoring every DAG in the class and picking the winner.

use crate::data::Dataset;
use crate::discovery::DiscoveryConfig;
use crate::error::{Error, Result};
use crate::graph::{enumerate_dags_capped, Dag, MixedGraph};
use crate::stats::{anderson_darling, nongaussianity_score, ols_residuals, ScoreConfig};

/// One enumerated DAG with its non-Gaussianity objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct DagScore {
    pub dag: Dag,
    pub score: f64,
}

/// Enumerates the DAGs represented by `pattern`, scores each by the
/// non-Gaussianity of its standardized OLS residuals, and returns the
/// highest-scoring DAG. Ties go to the earliest DAG in enumeration order.
pub fn select_best_dag(
    data: &Dataset,
    pattern: &MixedGraph,
    config: &DiscoveryConfig,
) -> Result<(Dag, Vec<DagScore>)> {
    config.validate()?;
    if pattern.node_count() != data.n_vars() {
        return Err(Error::InvalidArgument(format!(
            "pattern has {} nodes, data has {} variables",
            pattern.node_count(),
            data.n_vars()
        )));
    }
    let dags = enumerate_dags_capped(pattern, config.max_class_size)?;
    if dags.is_empty() {
        return Err(Error::DegenerateData(
            "the pattern admits no DAG; its equivalence class is empty".into(),
        ));
    }
    let score_config = ScoreConfig::default();
    let mut scores = Vec::with_capacity(dags.len());
    for dag in dags {
        let residuals = ols_residuals(data, &dag)?;
        let score = nongaussianity_score(&residuals, &score_config)?;
        scores.push(DagScore { dag, score });
    }
    let best = scores
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.score.partial_cmp(&b.score).unwrap().then(ib.cmp(ia)) // first index wins ties
        })
        .map(|(_, s)| s.dag.clone())
        .expect("non-empty class");
    Ok((best, scores))
}

/// Anderson-Darling p-value per residual row.
pub fn residual_p_values(residuals: &Dataset) -> Result<Vec<f64>> {
    (0..residuals.n_vars())
        .map(|i| {
            let row: Vec<f64> = residuals.variable(i).iter().copied().collect();
            anderson_darling(&row).map(|r| r.p_value)
        })
        .collect()
}

/// Non-Gaussianity flags from normality p-values: `true` where `p < alpha`.
pub fn ng_vector_from_p_values(p_values: &[f64], ng_alpha: f64) -> Vec<bool> {
    p_values.iter().map(|&p| p < ng_alpha).collect()
}

/// Tests each residual row for normality and flags those rejected at
/// `ng_alpha`.
pub fn ng_vector(residuals: &Dataset, ng_alpha: f64) -> Result<Vec<bool>> {
    Ok(ng_vector_from_p_values(&residual_p_values(residuals)?, ng_alpha))
}
