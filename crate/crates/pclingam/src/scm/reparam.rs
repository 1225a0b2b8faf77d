//! Equivalence-preserving reparametrization across chain components.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{distribution_equivalent, ngdag_pattern, NgDag};
use crate::scm::{DisturbanceSpec, ScmModel};

/// Rewrites `m1` onto the DAG of `d2`, preserving the implied observed
/// distribution.
///
/// The two structures may only differ inside all-Gaussian chain components of
/// their shared pattern. Per component, the conditional covariance given the
/// component's parents is `A1 D1 A1^T` (within-component reduced form times
/// disturbance variances); the new structure is parametrized so its `A2`,
/// `D2` reproduce that covariance exactly, and every parent weight vector is
/// mapped by `w2 = A2^{-1} A1 w1`, which also preserves conditional means.
/// Constants are carried through the same map.
pub fn match_parametrization(m1: &ScmModel, d2: &NgDag) -> Result<ScmModel> {
    let d1 = m1.ngdag();
    if d1.node_count() != d2.node_count() {
        return Err(Error::InvalidArgument(format!(
            "node counts differ: {} vs {}",
            d1.node_count(),
            d2.node_count()
        )));
    }
    if !distribution_equivalent(&d1, d2)? {
        return Err(Error::NotEquivalent);
    }
    if d1.dag == d2.dag {
        return Ok(m1.clone());
    }

    let n = m1.n();
    let pattern = ngdag_pattern(&d1);
    let mut b2 = m1.coefficients().clone();
    let mut c2 = DVector::from_column_slice(m1.constants());
    let mut disturbances = m1.disturbances().to_vec();

    for component in pattern.graph().chain_components() {
        if component.len() < 2 {
            continue;
        }
        let k = component.len();
        let local = |node: usize| component.iter().position(|&v| v == node).unwrap();

        // conditional covariance of the component given its parents, under m1
        let mut b1_cc = DMatrix::<f64>::zeros(k, k);
        for (li, &i) in component.iter().enumerate() {
            for (lj, &j) in component.iter().enumerate() {
                b1_cc[(li, lj)] = m1.coefficient(i, j);
            }
        }
        let a1 = reduced_form_local(&b1_cc);
        let d1_var = DMatrix::from_diagonal(&DVector::from_iterator(
            k,
            component.iter().map(|&i| m1.disturbances()[i].target_variance),
        ));
        let sigma = &a1 * &d1_var * a1.transpose();

        // regression parametrization of sigma along the new within-component DAG
        let mut b2_cc = DMatrix::<f64>::zeros(k, k);
        let mut var2 = vec![0.0; k];
        for &i in &component {
            let li = local(i);
            let parents: Vec<usize> = d2
                .dag
                .parents(i)
                .into_iter()
                .filter(|p| component.contains(p))
                .map(local)
                .collect();
            if parents.is_empty() {
                var2[li] = sigma[(li, li)];
                continue;
            }
            let spp = DMatrix::from_fn(parents.len(), parents.len(), |r, c| {
                sigma[(parents[r], parents[c])]
            });
            let spi = DVector::from_fn(parents.len(), |r, _| sigma[(parents[r], li)]);
            let beta = spp
                .clone()
                .lu()
                .solve(&spi)
                .ok_or_else(|| Error::DegenerateData("singular component covariance".into()))?;
            var2[li] = sigma[(li, li)] - spi.dot(&beta);
            for (r, &lp) in parents.iter().enumerate() {
                b2_cc[(li, lp)] = beta[r];
            }
        }

        let a2 = reduced_form_local(&b2_cc);
        let a2_lu = a2.clone().lu();
        // every external parent of the component points into all its members
        let mut externals: Vec<usize> = (0..n)
            .filter(|p| !component.contains(p))
            .filter(|&p| component.iter().any(|&i| m1.coefficient(i, p) != 0.0))
            .collect();
        externals.sort_unstable();
        for p in externals {
            let w1 = DVector::from_iterator(k, component.iter().map(|&i| m1.coefficient(i, p)));
            let w2 = a2_lu.solve(&(&a1 * w1)).expect("reduced form is unit triangular");
            for (li, &i) in component.iter().enumerate() {
                b2[(i, p)] = w2[li];
            }
        }
        let c1_local = DVector::from_iterator(k, component.iter().map(|&i| m1.constants()[i]));
        let c2_local = a2_lu.solve(&(&a1 * c1_local)).expect("reduced form is unit triangular");

        for (li, &i) in component.iter().enumerate() {
            for (lj, &j) in component.iter().enumerate() {
                b2[(i, j)] = b2_cc[(li, lj)];
            }
            c2[i] = c2_local[li];
            disturbances[i] = DisturbanceSpec::gaussian(var2[li])?;
        }
    }

    let order = d2.dag.topological_order().expect("dag is acyclic");
    ScmModel::new(order, b2, c2.iter().copied().collect(), disturbances)
}

/// `(I - B)^{-1}` for a local coefficient block, by substitution.
fn reduced_form_local(b: &DMatrix<f64>) -> DMatrix<f64> {
    let k = b.nrows();
    let mut remaining: Vec<usize> = (0..k).collect();
    let mut a = DMatrix::<f64>::zeros(k, k);
    let mut done = vec![false; k];
    while !remaining.is_empty() {
        let before = remaining.len();
        remaining.retain(|&i| {
            let ready = (0..k).all(|j| b[(i, j)] == 0.0 || done[j]);
            if ready {
                a[(i, i)] = 1.0;
                for j in 0..k {
                    if b[(i, j)] != 0.0 {
                        let row_j = a.row(j).clone_owned();
                        let mut row_i = a.row_mut(i);
                        row_i += row_j * b[(i, j)];
                    }
                }
                done[i] = true;
            }
            !ready
        });
        assert!(remaining.len() < before, "coefficient block has a cycle");
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Dag;
    use crate::scm::DisturbanceFamily;
    use approx::assert_relative_eq;

    fn two_node_forward() -> ScmModel {
        let mut b = DMatrix::zeros(2, 2);
        b[(1, 0)] = 2.0;
        ScmModel::new(
            vec![0, 1],
            b,
            vec![0.0; 2],
            vec![DisturbanceSpec::gaussian(1.0).unwrap(), DisturbanceSpec::gaussian(1.0).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn two_node_reversal() {
        let m1 = two_node_forward();
        let d2 = NgDag::new(Dag::new(2, [(1, 0)]).unwrap(), vec![false, false]).unwrap();
        let m2 = match_parametrization(&m1, &d2).unwrap();
        assert_relative_eq!(m2.coefficient(0, 1), 0.4, epsilon = 1e-12);
        assert_relative_eq!(m2.disturbances()[1].target_variance, 5.0, epsilon = 1e-12);
        assert_relative_eq!(m2.disturbances()[0].target_variance, 0.2, epsilon = 1e-12);
        assert_relative_eq!(m2.implied_covariance(), m1.implied_covariance(), epsilon = 1e-12);
        assert_eq!(
            m1.implied_covariance(),
            DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 5.0])
        );
    }

    #[test]
    fn identical_structure_returned_unchanged() {
        let m1 = two_node_forward();
        let d2 = m1.ngdag();
        assert_eq!(match_parametrization(&m1, &d2).unwrap(), m1);
    }

    #[test]
    fn non_equivalent_input_rejected() {
        let mut b = DMatrix::zeros(2, 2);
        b[(1, 0)] = 2.0;
        let m1 = ScmModel::new(
            vec![0, 1],
            b,
            vec![0.0; 2],
            vec![
                DisturbanceSpec::new(DisturbanceFamily::Uniform, 1.0).unwrap(),
                DisturbanceSpec::gaussian(1.0).unwrap(),
            ],
        )
        .unwrap();
        let d2 = NgDag::new(Dag::new(2, [(1, 0)]).unwrap(), vec![false, true]).unwrap();
        assert!(matches!(match_parametrization(&m1, &d2), Err(Error::NotEquivalent)));
    }

    #[test]
    fn chain_component_with_external_parent() {
        // 3 -> {0, 1, 2}, component chain 0 -- 1 -- 2 reoriented
        let mut b = DMatrix::zeros(4, 4);
        b[(0, 3)] = 1.0;
        b[(1, 3)] = -0.7;
        b[(2, 3)] = 0.9;
        b[(1, 0)] = 1.2;
        b[(2, 1)] = -0.8;
        let specs = vec![
            DisturbanceSpec::gaussian(1.5).unwrap(),
            DisturbanceSpec::gaussian(1.0).unwrap(),
            DisturbanceSpec::gaussian(2.0).unwrap(),
            DisturbanceSpec::new(DisturbanceFamily::Uniform, 1.0).unwrap(),
        ];
        let m1 = ScmModel::new(vec![3, 0, 1, 2], b, vec![0.0; 4], specs).unwrap();

        // reverse the chain: 2 -> 1 -> 0
        let d2 = NgDag::new(
            Dag::new(4, [(3, 0), (3, 1), (3, 2), (2, 1), (1, 0)]).unwrap(),
            vec![false, false, false, true],
        )
        .unwrap();
        let m2 = match_parametrization(&m1, &d2).unwrap();
        assert_eq!(m2.dag(), d2.dag);
        assert_relative_eq!(m2.implied_covariance(), m1.implied_covariance(), epsilon = 1e-9);
    }

    #[test]
    fn constants_preserved_through_reparametrization() {
        let mut b = DMatrix::zeros(2, 2);
        b[(1, 0)] = 2.0;
        let m1 = ScmModel::new(
            vec![0, 1],
            b,
            vec![0.5, -1.0],
            vec![DisturbanceSpec::gaussian(1.0).unwrap(), DisturbanceSpec::gaussian(1.0).unwrap()],
        )
        .unwrap();
        let d2 = NgDag::new(Dag::new(2, [(1, 0)]).unwrap(), vec![false, false]).unwrap();
        let m2 = match_parametrization(&m1, &d2).unwrap();
        assert_relative_eq!(m2.implied_mean(), m1.implied_mean(), epsilon = 1e-12);
    }
}
