//! Ordinary least squares and standardized residuals.

use nalgebra::{DMatrix, DVector};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::graph::Dag;

/// Regresses every variable (with intercept) on its parents in `dag` and
/// returns the residuals, standardized per node to sample mean 0 and
/// population variance 1. A parentless node yields its standardized
/// observations.
pub fn ols_residuals(data: &Dataset, dag: &Dag) -> Result<Dataset> {
    if dag.node_count() != data.n_vars() {
        return Err(Error::InvalidArgument(format!(
            "dag has {} nodes, data has {} variables",
            dag.node_count(),
            data.n_vars()
        )));
    }
    let n_samples = data.n_samples();
    let mut residuals = DMatrix::<f64>::zeros(data.n_vars(), n_samples);
    for node in 0..data.n_vars() {
        let parents = dag.parents(node);
        let needed = parents.len() + 2;
        if n_samples < needed {
            return Err(Error::InsufficientData { needed, got: n_samples });
        }
        let y = data.variable(node);
        let resid = if parents.is_empty() {
            y
        } else {
            let mut x = DMatrix::<f64>::zeros(n_samples, parents.len() + 1);
            x.column_mut(0).fill(1.0);
            for (k, &p) in parents.iter().enumerate() {
                x.column_mut(k + 1).copy_from(&data.variable(p));
            }
            let beta = solve_least_squares(&x, &y)?;
            y - x * beta
        };
        let standardized = standardize(resid).ok_or_else(|| {
            Error::DegenerateData(format!("residual of variable {node} has zero variance"))
        })?;
        residuals.row_mut(node).copy_from(&standardized.transpose());
    }
    Dataset::new(data.names().to_vec(), residuals)
}

/// Estimated coefficients (intercept first) of an OLS fit via the normal
/// equations.
pub fn solve_least_squares(x: &DMatrix<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
    let xtx = x.transpose() * x;
    let xty = x.transpose() * y;
    // Cholesky alone misses near-singular Gram matrices
    let singular_values = xtx.clone().svd(false, false).singular_values;
    let s_max = singular_values.max();
    let s_min = singular_values.min();
    if !(s_min > s_max * 1e-12) {
        return Err(Error::DegenerateData("rank-deficient regressors".into()));
    }
    let beta = xtx
        .cholesky()
        .map(|ch| ch.solve(&xty))
        .ok_or_else(|| Error::DegenerateData("rank-deficient regressors".into()))?;
    if beta.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateData("rank-deficient regressors".into()));
    }
    Ok(beta)
}

fn standardize(mut v: DVector<f64>) -> Option<DVector<f64>> {
    let n = v.len() as f64;
    let mean = v.mean();
    v.add_scalar_mut(-mean);
    let var = v.iter().map(|x| x * x).sum::<f64>() / n;
    if var <= f64::EPSILON {
        return None;
    }
    Some(v / var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scm::{DisturbanceFamily, DisturbanceSpec, ScmModel};

    #[test]
    fn edgeless_dag_standardizes_variables() {
        let values = DMatrix::from_row_slice(1, 4, &[2.0, 4.0, 6.0, 8.0]);
        let data = Dataset::with_default_names(values).unwrap();
        let res = ols_residuals(&data, &Dag::empty(1)).unwrap();
        let row = res.variable(0);
        assert!((row.mean()).abs() < 1e-12);
        let var = row.iter().map(|x| x * x).sum::<f64>() / 4.0;
        assert!((var - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recovers_chain_coefficient_and_disturbance() {
        let mut b = DMatrix::zeros(3, 3);
        b[(1, 0)] = 3.0;
        b[(2, 1)] = -2.0;
        let m = ScmModel::new(
            vec![0, 1, 2],
            b,
            vec![0.0; 3],
            vec![
                DisturbanceSpec::gaussian(1.0).unwrap(),
                DisturbanceSpec::gaussian(1.0).unwrap(),
                DisturbanceSpec::new(DisturbanceFamily::Uniform, 1.0).unwrap(),
            ],
        )
        .unwrap();
        let data = m.sample(100_000, 8).unwrap();
        let dag = m.dag();

        // coefficient estimate
        let n = data.n_samples();
        let mut x = DMatrix::<f64>::zeros(n, 2);
        x.column_mut(0).fill(1.0);
        x.column_mut(1).copy_from(&data.variable(0));
        let beta = solve_least_squares(&x, &data.variable(1)).unwrap();
        assert!((beta[1] - 3.0).abs() < 0.03, "b_yx = {}", beta[1]);

        // the y-residual tracks the true disturbance e_y = y - 3x
        let res = ols_residuals(&data, &dag).unwrap();
        let e_y_true = data.variable(1) - data.variable(0) * 3.0;
        let e_y_true = {
            let m = e_y_true.mean();
            let centered = e_y_true.add_scalar(-m);
            let sd = (centered.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
            centered / sd
        };
        let corr = res.variable(1).dot(&e_y_true) / n as f64;
        assert!(corr >= 0.999, "corr = {corr}");
    }

    #[test]
    fn exact_fit_is_degenerate() {
        // y = x + 1 exactly: residuals are identically zero
        let values = DMatrix::from_row_slice(2, 3, &[0.0, 1.0, 2.0, 1.0, 2.0, 3.0]);
        let data = Dataset::with_default_names(values).unwrap();
        let dag = Dag::new(2, [(0, 1)]).unwrap();
        assert!(matches!(ols_residuals(&data, &dag), Err(Error::DegenerateData(_))));
    }

    #[test]
    fn collinear_parents_are_degenerate() {
        let mut values = DMatrix::zeros(3, 50);
        for s in 0..50 {
            values[(0, s)] = s as f64;
            values[(1, s)] = 2.0 * s as f64; // collinear with variable 0
            values[(2, s)] = s as f64 * 0.5 + if s % 2 == 0 { 1.0 } else { -1.0 };
        }
        let data = Dataset::with_default_names(values).unwrap();
        let dag = Dag::new(3, [(0, 2), (1, 2)]).unwrap();
        assert!(matches!(ols_residuals(&data, &dag), Err(Error::DegenerateData(_))));
    }

    #[test]
    fn too_few_samples_rejected() {
        let values = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let data = Dataset::with_default_names(values).unwrap();
        let dag = Dag::new(2, [(0, 1)]).unwrap();
        assert!(matches!(
            ols_residuals(&data, &dag),
            Err(Error::InsufficientData { .. })
        ));
    }
}
