//! Standard single- and two-site operators.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{LocalOperator, OperatorKind, SiteId};
use crate::error::{Error, Result};

/// Weyl cyclic shift `|s⟩ ↦ |s + 1 mod m⟩`.
pub fn weyl_shift(site: SiteId, m: usize) -> Result<LocalOperator> {
    LocalOperator::permutation(vec![site], vec![m], (0..m).map(|s| (s + 1) % m).collect())
}

/// `U^k` for the Weyl shift, `|s⟩ ↦ |s + k mod m⟩`.
pub fn weyl_power(site: SiteId, m: usize, k: usize) -> Result<LocalOperator> {
    LocalOperator::permutation(vec![site], vec![m], (0..m).map(|s| (s + k) % m).collect())
}

/// Rank-one projector `|s⟩⟨s|` (dense, not unitary).
pub fn projector(site: SiteId, s: usize, m: usize) -> Result<LocalOperator> {
    if s >= m {
        return Err(Error::SymbolOutOfRange { symbol: s, m });
    }
    let mut p = DMatrix::zeros(m, m);
    p[(s, s)] = Complex64::new(1.0, 0.0);
    LocalOperator::dense(vec![site], vec![m], p)
}

pub fn pauli_x(site: SiteId) -> LocalOperator {
    weyl_shift(site, 2).expect("qubit shift")
}

pub fn pauli_z(site: SiteId) -> LocalOperator {
    LocalOperator::phased_permutation(
        vec![site],
        vec![2],
        vec![0, 1],
        vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
    )
    .expect("unit phases")
}

pub fn hadamard(site: SiteId) -> LocalOperator {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    LocalOperator::dense_unitary(vec![site], vec![2], DMatrix::from_row_slice(2, 2, &[h, h, h, -h]))
        .expect("Hadamard is unitary")
}

/// Exchanges two sites of equal dimension.
pub fn swap(a: SiteId, b: SiteId, m: usize) -> Result<LocalOperator> {
    let targets = (0..m * m).map(|j| (j % m) * m + j / m).collect();
    LocalOperator::permutation(vec![a, b], vec![m, m], targets)
}

/// Quantum Fourier matrix `Ω_{jk} = e^{2πi jk/m} / √m`.
pub fn dft_matrix(m: usize) -> DMatrix<Complex64> {
    let norm = 1.0 / (m as f64).sqrt();
    DMatrix::from_fn(m, m, |j, k| {
        Complex64::from_polar(norm, 2.0 * PI * ((j * k) % m) as f64 / m as f64)
    })
}

pub fn dft(site: SiteId, m: usize) -> Result<LocalOperator> {
    LocalOperator::dense(vec![site], vec![m], dft_matrix(m))
}

/// `op^τ` for an operator that is a single `n`-cycle over its support
/// basis, by spectral calculus.
///
/// Relabelling the cycle as `0 → 1 → … → n-1 → 0` turns `op` into the
/// Weyl shift `U`, whose eigenvectors are the columns of `Ω†` with
/// eigenphases `θ_k = 2πk/n`, so `U^τ = Ω† diag(e^{iθ_k τ}) Ω`.
pub fn fractional_power(op: &LocalOperator, tau: f64) -> Result<LocalOperator> {
    let OperatorKind::PhasedPermutation { targets, phases } = op.kind() else {
        return Err(Error::NotSingleCycle);
    };
    if phases
        .as_ref()
        .is_some_and(|p| p.iter().any(|z| *z != Complex64::new(1.0, 0.0)))
    {
        return Err(Error::NotSingleCycle);
    }
    let n = targets.len();
    let mut cycle = Vec::with_capacity(n);
    let mut s = 0;
    loop {
        cycle.push(s);
        s = targets[s];
        if s == 0 {
            break;
        }
    }
    if cycle.len() != n {
        return Err(Error::NotSingleCycle);
    }
    let omega = dft_matrix(n);
    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |k, _| {
        Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64 * tau)
    }));
    let in_cycle_basis = omega.adjoint() * diag * &omega;
    let mut m = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            m[(cycle[a], cycle[b])] = in_cycle_basis[(a, b)];
        }
    }
    LocalOperator::dense(op.support().to_vec(), op.dims().to_vec(), m)
}
