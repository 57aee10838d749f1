//! Seeded random states and unitaries.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{SiteSpace, StateVector};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Normalized complex Gaussian state.
pub fn random_state<R: Rng + ?Sized>(space: SiteSpace, rng: &mut R) -> StateVector {
    let amps = (0..space.dim()).map(|_| gaussian(rng)).collect();
    StateVector::from_amplitudes(space, amps)
        .expect("length matches")
        .normalized()
}

/// Unitary from modified Gram–Schmidt on the columns of a complex Gaussian
/// matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    for c in 0..n {
        for prev in 0..c {
            let proj: Complex64 = (0..n).map(|r| m[(r, prev)].conj() * m[(r, c)]).sum();
            for r in 0..n {
                let v = m[(r, prev)];
                m[(r, c)] -= proj * v;
            }
        }
        let norm = (0..n).map(|r| m[(r, c)].norm_sqr()).sum::<f64>().sqrt();
        for r in 0..n {
            m[(r, c)] /= norm;
        }
    }
    m
}

/// Uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
