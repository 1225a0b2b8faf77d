//! Random model generation for simulations.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Dag, NgDag};
use crate::scm::{DisturbanceFamily, DisturbanceSpec, ScmModel};

/// Edge probability giving an expected edge count of about `n` (sparse).
pub fn default_edge_prob(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        (2.0 / (n as f64 - 1.0)).min(1.0)
    }
}

/// A random DAG over a uniformly drawn causal order, each order-compatible
/// pair carrying an edge with probability `edge_prob`, plus a random
/// non-Gaussianity flag per node (`true` with probability `ng_prob`).
pub fn random_ngdag<R: Rng + ?Sized>(
    n: usize,
    edge_prob: f64,
    ng_prob: f64,
    rng: &mut R,
) -> Result<NgDag> {
    for p in [edge_prob, ng_prob] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for p in 0..n {
        for q in (p + 1)..n {
            if rng.gen_bool(edge_prob) {
                edges.push((order[p], order[q]));
            }
        }
    }
    let dag = Dag::new(n, edges)?;
    let ng = (0..n).map(|_| rng.gen_bool(ng_prob)).collect();
    NgDag::new(dag, ng)
}

/// Random parameters for a fixed ngDAG: coefficient magnitudes uniform on
/// [0.5, 1.5] with random sign (bounded away from zero to protect
/// faithfulness), disturbance variances uniform on [1.0, 3.0], Gaussian
/// family where `ng` is false and a uniformly chosen non-Gaussian family
/// where it is true. Constants are zero.
pub fn random_instance<R: Rng + ?Sized>(ngdag: &NgDag, rng: &mut R) -> ScmModel {
    let n = ngdag.node_count();
    let order = ngdag.dag.topological_order().expect("dag is acyclic");
    let mut b = DMatrix::<f64>::zeros(n, n);
    for (parent, child) in ngdag.dag.edges() {
        let magnitude = rng.gen_range(0.5..=1.5);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        b[(child, parent)] = sign * magnitude;
    }
    let disturbances = ngdag
        .ng
        .iter()
        .map(|&non_gaussian| {
            let family = if non_gaussian {
                *DisturbanceFamily::NON_GAUSSIAN.choose(rng).unwrap()
            } else {
                DisturbanceFamily::Gaussian
            };
            DisturbanceSpec::new(family, rng.gen_range(1.0..=3.0)).unwrap()
        })
        .collect();
    ScmModel::new(order, b, vec![0.0; n], disturbances).expect("construction respects the order")
}

/// A fully random model; deterministic in `seed`.
pub fn random_model(n: usize, edge_prob: f64, ng_prob: f64, seed: u64) -> Result<ScmModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ngdag = random_ngdag(n, edge_prob, ng_prob, &mut rng)?;
    Ok(random_instance(&ngdag, &mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_edge_prob_gives_empty_coefficients() {
        let m = random_model(5, 0.0, 0.5, 1).unwrap();
        assert!(m.coefficients().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn fixed_seed_reproduces_model() {
        assert_eq!(random_model(6, 0.4, 0.5, 42).unwrap(), random_model(6, 0.4, 0.5, 42).unwrap());
    }

    #[test]
    fn coefficients_bounded_away_from_zero() {
        for seed in 0..20 {
            let m = random_model(6, 0.5, 0.5, seed).unwrap();
            for &v in m.coefficients().iter() {
                assert!(v == 0.0 || (0.5..=1.5).contains(&v.abs()), "coefficient {v}");
            }
        }
    }

    #[test]
    fn ng_frequency_matches_probability() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 10_000;
        let ng_prob = 0.3;
        let mut count = 0usize;
        for _ in 0..trials {
            let d = random_ngdag(6, 0.4, ng_prob, &mut rng).unwrap();
            count += d.ng.iter().filter(|&&b| b).count();
        }
        let freq = count as f64 / (trials * 6) as f64;
        assert!((freq - ng_prob).abs() < 0.02, "freq {freq}");
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(random_model(3, 1.5, 0.5, 0).is_err());
        assert!(random_model(3, 0.5, -0.1, 0).is_err());
    }
}
