//! Linear acyclic structural causal models.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::graph::{Dag, NgDag};
use crate::scm::DisturbanceSpec;

/// A linear acyclic causal model: each variable is a linear function of its
/// causal predecessors plus an independent disturbance and a constant,
///
/// `x_i = sum_{k(j) < k(i)} b[i][j] x_j + e_i + c_i`.
///
/// `order[p]` is the variable generated at causal position `p`, so `b[i][j]`
/// may be nonzero only when `j` precedes `i` in `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScmModel {
    order: Vec<usize>,
    b: DMatrix<f64>,
    c: Vec<f64>,
    disturbances: Vec<DisturbanceSpec>,
}

impl ScmModel {
    pub fn new(
        order: Vec<usize>,
        b: DMatrix<f64>,
        c: Vec<f64>,
        disturbances: Vec<DisturbanceSpec>,
    ) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "order {order:?} is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        if b.nrows() != n || b.ncols() != n {
            return Err(Error::InvalidArgument(format!(
                "coefficient matrix is {}x{}, expected {n}x{n}",
                b.nrows(),
                b.ncols()
            )));
        }
        if c.len() != n || disturbances.len() != n {
            return Err(Error::InvalidArgument(
                "constants and disturbances must have one entry per node".into(),
            ));
        }
        if b.iter().any(|v| !v.is_finite()) || c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite parameter".into()));
        }
        let model = Self { order, b, c, disturbances };
        let pos = model.positions();
        for i in 0..n {
            for j in 0..n {
                if model.b[(i, j)] != 0.0 && pos[j] >= pos[i] {
                    return Err(Error::InvalidArgument(format!(
                        "b[{i}][{j}] is nonzero but {j} does not precede {i} in the causal order"
                    )));
                }
            }
        }
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn coefficients(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn coefficient(&self, child: usize, parent: usize) -> f64 {
        self.b[(child, parent)]
    }

    pub fn constants(&self) -> &[f64] {
        &self.c
    }

    pub fn disturbances(&self) -> &[DisturbanceSpec] {
        &self.disturbances
    }

    /// `pos[i]` = causal position `k(i)` of variable `i`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.n()];
        for (p, &v) in self.order.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    /// The support of the coefficient matrix as a DAG.
    pub fn dag(&self) -> Dag {
        let n = self.n();
        let edges = (0..n)
            .flat_map(|i| (0..n).map(move |j| (j, i)))
            .filter(|&(j, i)| self.b[(i, j)] != 0.0);
        Dag::new(n, edges).expect("order-respecting support is acyclic")
    }

    /// The model's ngDAG: coefficient support plus the per-node flag of
    /// whether the disturbance family is non-Gaussian.
    pub fn ngdag(&self) -> NgDag {
        let ng = self.disturbances.iter().map(|d| !d.is_gaussian()).collect();
        NgDag::new(self.dag(), ng).expect("lengths match")
    }

    /// Target variance per disturbance (nominal for `StudentT2`).
    pub fn disturbance_variances(&self) -> DVector<f64> {
        DVector::from_iterator(self.n(), self.disturbances.iter().map(|d| d.target_variance))
    }

    /// The reduced-form matrix `A = (I - B)^{-1}`, mapping disturbances to
    /// observed variables. Computed by substitution in causal order, so `A`
    /// is exactly unit-diagonal and lower triangular under the order.
    pub fn reduced_form(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut a = DMatrix::<f64>::zeros(n, n);
        for &i in &self.order {
            a[(i, i)] = 1.0;
            for j in 0..n {
                let w = self.b[(i, j)];
                if w != 0.0 {
                    // row_i += w * row_j; j precedes i, so row_j is final
                    let row_j = a.row(j).clone_owned();
                    let mut row_i = a.row_mut(i);
                    row_i += row_j * w;
                }
            }
        }
        a
    }

    /// The observed covariance the model implies: `A diag(var) A^T`
    /// (nominal for `StudentT2` disturbances).
    pub fn implied_covariance(&self) -> DMatrix<f64> {
        let a = self.reduced_form();
        let d = DMatrix::from_diagonal(&self.disturbance_variances());
        &a * d * a.transpose()
    }

    /// The mean vector the model implies: `A c`.
    pub fn implied_mean(&self) -> DVector<f64> {
        self.reduced_form() * DVector::from_column_slice(&self.c)
    }

    /// Draws `n_samples` data vectors; deterministic in `seed`.
    pub fn sample(&self, n_samples: usize, seed: u64) -> Result<Dataset> {
        if n_samples == 0 {
            return Err(Error::InvalidArgument("n_samples must be at least 1".into()));
        }
        let n = self.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values = DMatrix::<f64>::zeros(n, n_samples);
        let parents: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| self.b[(i, j)] != 0.0).collect())
            .collect();
        for s in 0..n_samples {
            for &i in &self.order {
                let mut x = self.disturbances[i].draw(&mut rng) + self.c[i];
                for &j in &parents[i] {
                    x += self.b[(i, j)] * values[(j, s)];
                }
                values[(i, s)] = x;
            }
        }
        Dataset::with_default_names(values)
    }
}
