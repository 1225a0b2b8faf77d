//! Experiment harness: randomized trials and edge-mark confusion matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::discovery::{pclingam, DiscoveryConfig, DiscoveryReport};
use crate::error::{Error, Result};
use crate::graph::{cpdag_from_dag, ngdag_pattern, EdgeMark, MixedGraph, NgPattern};
use crate::scm::{default_edge_prob, random_instance, random_ngdag};

/// 4x4 tally of true vs estimated edge marks over canonical node pairs,
/// rows and columns ordered *, --, ->, <-.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 4]; 4],
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn diagonal(&self) -> u64 {
        (0..4).map(|k| self.counts[k][k]).sum()
    }

    pub fn diagonal_fraction(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            self.diagonal() as f64 / total as f64
        }
    }

    pub fn add(&mut self, other: &ConfusionMatrix) {
        for r in 0..4 {
            for c in 0..4 {
                self.counts[r][c] += other.counts[r][c];
            }
        }
    }

    /// Aligned text table, rows = true marks, columns = estimated marks.
    pub fn to_text(&self) -> String {
        let header: Vec<String> = EdgeMark::ALL.iter().map(|m| m.glyph().to_string()).collect();
        let mut out = format!("{:>6} {:>6} {:>6} {:>6} {:>6}\n", "", header[0], header[1], header[2], header[3]);
        for (r, mark) in EdgeMark::ALL.iter().enumerate() {
            out.push_str(&format!(
                "{:>6} {:>6} {:>6} {:>6} {:>6}\n",
                mark.glyph(),
                self.counts[r][0],
                self.counts[r][1],
                self.counts[r][2],
                self.counts[r][3]
            ));
        }
        out
    }
}

/// The mark on each canonical pair `(i, j)`, `i < j`, in lexicographic pair
/// order.
pub fn edge_marks(pattern: &MixedGraph, n: usize) -> Vec<EdgeMark> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let mark = if pattern.has_undirected(i, j) {
                EdgeMark::Undirected
            } else if pattern.has_directed(i, j) {
                EdgeMark::Forward
            } else if pattern.has_directed(j, i) {
                EdgeMark::Backward
            } else {
                EdgeMark::Absent
            };
            out.push(mark);
        }
    }
    out
}

/// Tallies true vs estimated marks over all canonical pairs.
pub fn confusion_matrix(truth: &NgPattern, estimate: &NgPattern) -> Result<ConfusionMatrix> {
    if truth.node_count() != estimate.node_count() {
        return Err(Error::InvalidArgument(format!(
            "node counts differ: {} vs {}",
            truth.node_count(),
            estimate.node_count()
        )));
    }
    let n = truth.node_count();
    let mut matrix = ConfusionMatrix::default();
    for (t, e) in edge_marks(truth.graph(), n).into_iter().zip(edge_marks(estimate.graph(), n)) {
        matrix.counts[t.index()][e.index()] += 1;
    }
    Ok(matrix)
}

/// Which method provides step 1 of the pipeline in an experiment run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step1 {
    /// Feed the true d-separation-equivalence pattern to the pipeline.
    Oracle,
    /// Estimate the pattern with the PC algorithm.
    Pc,
}

/// Parameters of a randomized experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentParams {
    pub n_runs: usize,
    pub node_count: usize,
    pub n_samples: usize,
    pub step1: Step1,
    pub config: DiscoveryConfig,
    /// Per-pair edge probability of the random models; `None` gives an
    /// expected edge count of about `node_count`.
    pub edge_prob: Option<f64>,
    /// Probability that a node's disturbance is non-Gaussian.
    pub ng_prob: f64,
    pub seed: u64,
}

impl ExperimentParams {
    pub fn new(n_runs: usize, node_count: usize, n_samples: usize, step1: Step1, seed: u64) -> Self {
        Self {
            n_runs,
            node_count,
            n_samples,
            step1,
            config: DiscoveryConfig::default(),
            edge_prob: None,
            ng_prob: 0.5,
            seed,
        }
    }
}

/// Outcome of one run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub run: usize,
    pub truth: NgPattern,
    pub outcome: std::result::Result<DiscoveryReport, String>,
}

/// Accumulated experiment output. Failed runs contribute nothing to the
/// matrix; they are counted and kept in `runs`.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub matrix: ConfusionMatrix,
    pub runs: Vec<RunRecord>,
    pub failures: usize,
}

/// Repeats: draw a random model, sample it, run the pipeline with the chosen
/// step 1, and tally true vs estimated pattern marks. Reproducible from
/// `seed`; per-run seeds are derived independently so runs can be revisited.
pub fn run_experiment(params: &ExperimentParams) -> Result<ExperimentResult> {
    params.config.validate()?;
    if params.node_count < 2 {
        return Err(Error::InvalidArgument("experiments need at least 2 nodes".into()));
    }
    if !(0.0..=1.0).contains(&params.ng_prob) {
        return Err(Error::InvalidArgument(format!("ng_prob {} outside [0, 1]", params.ng_prob)));
    }
    let edge_prob = params.edge_prob.unwrap_or_else(|| default_edge_prob(params.node_count));
    let mut seeder = ChaCha8Rng::seed_from_u64(params.seed);
    let mut matrix = ConfusionMatrix::default();
    let mut runs = Vec::with_capacity(params.n_runs);
    let mut failures = 0usize;
    for run in 0..params.n_runs {
        let model_seed: u64 = seeder.gen();
        let sample_seed: u64 = seeder.gen();
        let mut model_rng = ChaCha8Rng::seed_from_u64(model_seed);
        let ngdag = random_ngdag(params.node_count, edge_prob, params.ng_prob, &mut model_rng)?;
        let model = random_instance(&ngdag, &mut model_rng);
        let truth = ngdag_pattern(&ngdag);
        let data = model.sample(params.n_samples, sample_seed)?;
        let oracle = cpdag_from_dag(&ngdag.dag);
        let oracle_ref = match params.step1 {
            Step1::Oracle => Some(&oracle),
            Step1::Pc => None,
        };
        let outcome = match pclingam(&data, &params.config, oracle_ref) {
            Ok(report) => {
                matrix.add(&confusion_matrix(&truth, &report.pattern)?);
                Ok(report)
            }
            Err(err) => {
                failures += 1;
                Err(err.to_string())
            }
        };
        runs.push(RunRecord { run, truth, outcome });
    }
    Ok(ExperimentResult { matrix, runs, failures })
}
