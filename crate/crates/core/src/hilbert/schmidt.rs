use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{SiteId, StateVector};
use crate::error::{Error, Result};

/// Coefficients above this count toward the Schmidt rank.
pub const SCHMIDT_RANK_TOL: f64 = 1e-9;

/// Reshapes the amplitudes into a `dim(A) × dim(B)` matrix, each side
/// indexed in mixed radix over its group in the given order.
pub fn bipartite_matrix(state: &StateVector, group_a: &[SiteId], group_b: &[SiteId]) -> Result<DMatrix<Complex64>> {
    let space = state.space();
    let mut seen = vec![false; space.len()];
    let mut positions = |group: &[SiteId]| -> Result<Vec<usize>> {
        group
            .iter()
            .map(|&s| {
                let p = space.position(s)?;
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::DuplicateSite(s));
                }
                Ok(p)
            })
            .collect()
    };
    let pa = positions(group_a)?;
    let pb = positions(group_b)?;
    if let Some(missing) = seen.iter().position(|&x| !x) {
        return Err(Error::InvalidArgument(format!(
            "partition misses site {}",
            space.sites()[missing]
        )));
    }
    let dims = space.dims();
    let da: usize = pa.iter().map(|&p| dims[p]).product();
    let db: usize = pb.iter().map(|&p| dims[p]).product();
    let idx = space.indexer();
    let mut m = DMatrix::zeros(da, db);
    for (i, amp) in state.support() {
        let a = pa.iter().fold(0, |acc, &p| acc * dims[p] + idx.digit(i, p));
        let b = pb.iter().fold(0, |acc, &p| acc * dims[p] + idx.digit(i, p));
        m[(a, b)] = amp;
    }
    Ok(m)
}

/// Singular values of the reshaped amplitude matrix, descending. Their
/// squares sum to `‖ψ‖²`.
pub fn schmidt_coefficients(state: &StateVector, group_a: &[SiteId], group_b: &[SiteId]) -> Result<Vec<f64>> {
    let m = bipartite_matrix(state, group_a, group_b)?;
    let mut values: Vec<f64> = m.singular_values().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

pub fn schmidt_rank(coefficients: &[f64]) -> usize {
    coefficients.iter().filter(|&&c| c > SCHMIDT_RANK_TOL).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::SiteSpace;

    #[test]
    fn product_and_bell() {
        let space = SiteSpace::uniform(2, 2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus =
            StateVector::from_amplitudes(space.clone(), vec![h.into(), h.into(), 0.0.into(), 0.0.into()]).unwrap();
        let c = schmidt_coefficients(&plus, &[SiteId(0)], &[SiteId(1)]).unwrap();
        assert_eq!(schmidt_rank(&c), 1);
        let bell = StateVector::from_amplitudes(space, vec![h.into(), 0.0.into(), 0.0.into(), h.into()]).unwrap();
        let c = schmidt_coefficients(&bell, &[SiteId(0)], &[SiteId(1)]).unwrap();
        assert_eq!(schmidt_rank(&c), 2);
        assert!((c[0] - h).abs() < 1e-12 && (c[1] - h).abs() < 1e-12);
    }

    #[test]
    fn invalid_partitions() {
        let s = StateVector::zeros(SiteSpace::uniform(3, 2).unwrap());
        assert!(schmidt_coefficients(&s, &[SiteId(0)], &[SiteId(1)]).is_err());
        assert!(schmidt_coefficients(&s, &[SiteId(0), SiteId(1)], &[SiteId(1), SiteId(2)]).is_err());
        assert!(schmidt_coefficients(&s, &[SiteId(0), SiteId(9)], &[SiteId(1), SiteId(2)]).is_err());
    }
}
