//! JSON wire formats for patterns, models, and discovery reports.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::discovery::{DiscoveryConfig, DiscoveryReport};
use crate::error::{Error, Result};
use crate::graph::{Dag, MixedGraph, NgPattern};
use crate::scm::{DisturbanceSpec, ScmModel};

/// Version stamped on every top-level document this crate writes.
pub const FORMAT_VERSION: u32 = 1;

/// Pattern document: node names plus index pairs into them. Undirected pairs
/// are stored with the smaller index first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternJson {
    pub nodes: Vec<String>,
    pub directed: Vec<[usize; 2]>,
    pub undirected: Vec<[usize; 2]>,
    pub ng: Vec<bool>,
}

impl PatternJson {
    pub fn from_pattern(pattern: &NgPattern, names: &[String]) -> Result<Self> {
        if names.len() != pattern.node_count() {
            return Err(Error::InvalidArgument(format!(
                "{} names for {} nodes",
                names.len(),
                pattern.node_count()
            )));
        }
        Ok(Self {
            nodes: names.to_vec(),
            directed: pattern.graph().directed_edges().map(|(a, b)| [a, b]).collect(),
            undirected: pattern.graph().undirected_edges().map(|(a, b)| [a, b]).collect(),
            ng: pattern.ng().to_vec(),
        })
    }

    /// Validates the document and rebuilds the pattern it describes.
    pub fn into_pattern(self) -> Result<(NgPattern, Vec<String>)> {
        let n = self.nodes.len();
        for &[a, b] in &self.undirected {
            if a >= b {
                return Err(Error::Input(format!(
                    "undirected pair [{a}, {b}] must satisfy i < j"
                )));
            }
        }
        let graph = MixedGraph::new(
            n,
            self.directed.iter().map(|&[a, b]| (a, b)),
            self.undirected.iter().map(|&[a, b]| (a, b)),
        )
        .map_err(|e| Error::Input(e.to_string()))?;
        let pattern = NgPattern::new(graph, self.ng).map_err(|e| Error::Input(e.to_string()))?;
        Ok((pattern, self.nodes))
    }
}

/// Model document: causal order, dense row-major coefficient matrix,
/// constants, and one disturbance spec per node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelJson {
    pub order: Vec<usize>,
    pub b: Vec<Vec<f64>>,
    pub c: Vec<f64>,
    pub disturbances: Vec<DisturbanceSpec>,
}

impl ModelJson {
    pub fn from_model(model: &ScmModel) -> Self {
        let n = model.n();
        let b = (0..n)
            .map(|i| (0..n).map(|j| model.coefficient(i, j)).collect())
            .collect();
        Self {
            order: model.order().to_vec(),
            b,
            c: model.constants().to_vec(),
            disturbances: model.disturbances().to_vec(),
        }
    }

    pub fn into_model(self) -> Result<ScmModel> {
        let n = self.order.len();
        if self.b.len() != n || self.b.iter().any(|row| row.len() != n) {
            return Err(Error::Input(format!("coefficient matrix is not {n}x{n}")));
        }
        let b = DMatrix::from_fn(n, n, |i, j| self.b[i][j]);
        ScmModel::new(self.order, b, self.c, self.disturbances)
            .map_err(|e| Error::Input(e.to_string()))
    }
}

/// What `simulate` writes next to the data: the generating model and its
/// true pattern, for later scoring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationJson {
    pub format_version: u32,
    pub model: ModelJson,
    pub pattern: PatternJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DagScoreJson {
    pub edges: Vec<[usize; 2]>,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub ci_alpha: f64,
    pub ng_alpha: f64,
    pub max_class_size: usize,
    pub max_cond_size: Option<usize>,
}

impl From<DiscoveryConfig> for ConfigJson {
    fn from(c: DiscoveryConfig) -> Self {
        Self {
            ci_alpha: c.ci_alpha,
            ng_alpha: c.ng_alpha,
            max_class_size: c.max_class_size,
            max_cond_size: c.max_cond_size,
        }
    }
}

impl From<ConfigJson> for DiscoveryConfig {
    fn from(c: ConfigJson) -> Self {
        Self {
            ci_alpha: c.ci_alpha,
            ng_alpha: c.ng_alpha,
            max_class_size: c.max_class_size,
            max_cond_size: c.max_cond_size,
        }
    }
}

/// Full discovery report document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub format_version: u32,
    pub pattern: PatternJson,
    pub best_dag: Vec<[usize; 2]>,
    pub dag_scores: Vec<DagScoreJson>,
    pub residual_p_values: Vec<f64>,
    pub step1_repairs: usize,
    pub config: ConfigJson,
}

impl ReportJson {
    pub fn from_report(report: &DiscoveryReport, names: &[String]) -> Result<Self> {
        Ok(Self {
            format_version: FORMAT_VERSION,
            pattern: PatternJson::from_pattern(&report.pattern, names)?,
            best_dag: dag_edges(&report.best_dag),
            dag_scores: report
                .dag_scores
                .iter()
                .map(|s| DagScoreJson { edges: dag_edges(&s.dag), score: s.score })
                .collect(),
            residual_p_values: report.residual_p_values.clone(),
            step1_repairs: report.step1_repairs,
            config: report.config_used.into(),
        })
    }
}

fn dag_edges(dag: &Dag) -> Vec<[usize; 2]> {
    dag.edges().map(|(a, b)| [a, b]).collect()
}

/// Parses and validates a pattern document.
pub fn parse_pattern(text: &str) -> Result<(NgPattern, Vec<String>)> {
    let doc: PatternJson =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad pattern JSON: {e}")))?;
    doc.into_pattern()
}

/// Parses and validates a model document, accepting either a bare model
/// object or a full simulation document.
pub fn parse_model(text: &str) -> Result<ScmModel> {
    if let Ok(doc) = serde_json::from_str::<SimulationJson>(text) {
        return doc.model.into_model();
    }
    let doc: ModelJson =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad model JSON: {e}")))?;
    doc.into_model()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ngdag_pattern, NgDag};
    use crate::scm::random_model;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn pattern_round_trip() {
        let dag = Dag::new(3, [(0, 1), (1, 2)]).unwrap();
        let pattern = ngdag_pattern(&NgDag::new(dag, vec![false, false, true]).unwrap());
        let doc = PatternJson::from_pattern(&pattern, &names(3)).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let (back, back_names) = parse_pattern(&text).unwrap();
        assert_eq!(back, pattern);
        assert_eq!(back_names, names(3));
    }

    #[test]
    fn pattern_rejects_bad_undirected_order() {
        let text = r#"{"nodes":["a","b"],"directed":[],"undirected":[[1,0]],"ng":[false,false]}"#;
        assert!(matches!(parse_pattern(text), Err(Error::Input(_))));
    }

    #[test]
    fn pattern_rejects_out_of_range_index() {
        let text = r#"{"nodes":["a","b"],"directed":[[0,5]],"undirected":[],"ng":[false,false]}"#;
        assert!(parse_pattern(text).is_err());
    }

    #[test]
    fn pattern_rejects_ng_incident_undirected_edge() {
        let text = r#"{"nodes":["a","b"],"directed":[],"undirected":[[0,1]],"ng":[true,false]}"#;
        assert!(parse_pattern(text).is_err());
    }

    #[test]
    fn model_round_trip() {
        let model = random_model(5, 0.5, 0.5, 99).unwrap();
        let text = serde_json::to_string(&ModelJson::from_model(&model)).unwrap();
        let back = parse_model(&text).unwrap();
        assert_eq!(back, model);
    }

    #[test]
    fn model_rejects_inconsistent_order() {
        let text = r#"{"order":[0,0],"b":[[0,0],[1,0]],"c":[0,0],
            "disturbances":[{"family":"gaussian","variance":1.0},{"family":"gaussian","variance":1.0}]}"#;
        assert!(parse_model(text).is_err());
    }

    #[test]
    fn model_rejects_order_violating_support() {
        let text = r#"{"order":[1,0],"b":[[0,0],[1,0]],"c":[0,0],
            "disturbances":[{"family":"gaussian","variance":1.0},{"family":"gaussian","variance":1.0}]}"#;
        assert!(parse_model(text).is_err());
    }

    #[test]
    fn simulation_document_parses_as_model() {
        let model = random_model(3, 0.5, 0.5, 7).unwrap();
        let pattern = ngdag_pattern(&model.ngdag());
        let doc = SimulationJson {
            format_version: FORMAT_VERSION,
            model: ModelJson::from_model(&model),
            pattern: PatternJson::from_pattern(&pattern, &names(3)).unwrap(),
        };
        let text = serde_json::to_string_pretty(&doc).unwrap();
        assert_eq!(parse_model(&text).unwrap(), model);
    }
}
