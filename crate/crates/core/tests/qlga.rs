mod common;

use itertools::Itertools;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use common::{c, wedge_coefficient};
use histqca::hilbert::random::{random_state, seeded_rng};
use histqca::hilbert::{compose, schmidt_coefficients, schmidt_rank, LocalOperator, SiteId, SiteSpace, StateVector};
use histqca::qlga::{
    basis_clone_overlap, coined_walk_step, continuous_qubot, erasure_map, fock_space, ket_label, qca_space,
    qca_to_qlga, qlga_to_qca, qubot_step, run_walk, symmetric_product, tensor_product, trivial_history_state, wedge,
    Coin, FockState, QubotSpace, Statistics,
};
use histqca::Error;

fn mode_space(n: usize) -> SiteSpace {
    SiteSpace::uniform(1, n).unwrap()
}

fn random_factors(n_modes: usize, count: usize, rng: &mut impl Rng) -> Vec<StateVector> {
    (0..count).map(|_| random_state(mode_space(n_modes), rng)).collect()
}

fn key_of(modes: &[usize], n: usize) -> Vec<u16> {
    let mut k = vec![0; n];
    modes.iter().for_each(|&m| k[m] = 1);
    k
}

fn max_diff(a: &FockState, b: &FockState) -> f64 {
    a.amplitudes()
        .keys()
        .chain(b.amplitudes().keys())
        .map(|k| (a.amplitude(k) - b.amplitude(k)).norm())
        .fold(0.0, f64::max)
}

#[test]
fn pauli_exclusion() {
    let mut rng = seeded_rng(51);
    for n in 2..=6 {
        let psi = random_state(mode_space(n), &mut rng);
        let other = random_state(mode_space(n), &mut rng);
        assert!(wedge(&[psi.clone(), psi.clone()]).unwrap().norm() < 1e-12);
        assert!(wedge(&[psi.clone(), other, psi.clone()]).unwrap().norm() < 1e-12);
        let once = FockState::vacuum(n, Statistics::Fermionic).unwrap().create(1).unwrap();
        assert_eq!(once.create(1).unwrap().norm(), 0.0);
    }
}

#[test]
fn bosonic_products() {
    let e0 = StateVector::basis_index(mode_space(3), 0).unwrap();
    let e2 = StateVector::basis_index(mode_space(3), 2).unwrap();
    let twice = symmetric_product(&[e0.clone(), e0.clone()], Some(4)).unwrap();
    assert!((twice.amplitude(&[2, 0, 0]) - c(2f64.sqrt(), 0.0)).norm() < 1e-12);
    let mixed = symmetric_product(&[e0.clone(), e2.clone()], Some(4)).unwrap();
    let swapped = symmetric_product(&[e2.clone(), e0.clone()], Some(4)).unwrap();
    assert_eq!(max_diff(&mixed, &swapped), 0.0);
    assert!(matches!(
        symmetric_product(&[e0.clone(), e0.clone(), e0.clone()], Some(2)),
        Err(Error::TruncationOverflow {
            occupation: 3,
            n_max: 2
        })
    ));
    let ordered = tensor_product(&[e0.clone(), e2.clone()]).unwrap();
    assert_eq!(ordered.amplitude(&[0, 2]), c(1.0, 0.0));
    assert_eq!(ordered.amplitude(&[2, 0]), c(0.0, 0.0));
    // cutoff 2 on 2 modes: occupations (a, b) with a, b ≤ 2
    let dims: Vec<usize> = fock_space(2, Statistics::Bosonic { n_max: Some(2) })
        .unwrap()
        .iter()
        .map(Vec::len)
        .collect();
    assert_eq!(dims, [1, 2, 3, 2, 1]);
}

#[test]
fn identification_round_trip_and_isometry() {
    let mut rng = seeded_rng(52);
    for (n_l, n_s, n_t) in [(1, 2, 2), (2, 2, 2), (3, 1, 2), (2, 3, 1)] {
        let sp = QubotSpace::with_time(n_l, n_s, n_t).unwrap();
        let lattice = qca_space(&sp).unwrap();
        assert_eq!(lattice.dim(), 1 << sp.mode_count());
        let a = random_state(lattice.clone(), &mut rng);
        let b = random_state(lattice, &mut rng);
        let (fa, fb) = (qca_to_qlga(&sp, &a).unwrap(), qca_to_qlga(&sp, &b).unwrap());
        assert!((fa.inner(&fb).unwrap() - a.inner(&b).unwrap()).norm() < 1e-12);
        assert!(qlga_to_qca(&sp, &fa).unwrap().max_abs_diff(&a).unwrap() < 1e-15);
    }
}

#[test]
fn trivial_history_one_step() {
    let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
    let (sp, fock) = trivial_history_state(&[alpha, beta], 1).unwrap();
    let v = qlga_to_qca(&sp, &fock).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // |↓,∅⟩ = 8, |↑,∅⟩ = 4, |∅,↓⟩ = 2, |∅,↑⟩ = 1
    let mut want = vec![Complex64::new(0.0, 0.0); 16];
    want[8] = alpha * h;
    want[4] = beta * h;
    want[2] = alpha * h;
    want[1] = beta * h;
    assert!(v.amplitudes().iter().zip(&want).all(|(a, b)| (a - b).norm() < 1e-15));
    assert_eq!(ket_label(&sp, &[1, 0, 0, 0]), "|↓,∅⟩");
    assert_eq!(ket_label(&sp, &[0, 0, 0, 1]), "|∅,↑⟩");
}

#[test]
fn erasure_moves_state_forward() {
    let mut rng = seeded_rng(53);
    for (d, slots) in [(2, 2), (3, 3), (4, 4)] {
        let psi = random_state(SiteSpace::new(vec![SiteId(0)], vec![d]).unwrap(), &mut rng);
        let rest = SiteSpace::new((1..slots).map(SiteId).collect(), vec![d; slots - 1]).unwrap();
        let init = psi.tensor(&StateVector::basis_index(rest, 0).unwrap()).unwrap();
        let out = erasure_map(d).unwrap().apply(&init).unwrap();
        let tail = slots - 2;
        let stride = d.pow(tail as u32);
        for (j, a) in psi.amplitudes().iter().enumerate() {
            assert_eq!(out.amplitudes()[j * stride], *a);
        }
        assert!((out.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn basis_cloning_fails_off_basis() {
    let mut rng = seeded_rng(54);
    assert!((basis_clone_overlap(c(1.0, 0.0), c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
    assert!((basis_clone_overlap(c(0.0, 0.0), c(0.0, -1.0)).unwrap() - 1.0).abs() < 1e-15);
    for _ in 0..20 {
        let (a, b) = (
            c(rng.random_range(0.1..1.0), rng.random_range(-1.0..1.0)),
            c(rng.random_range(0.1..1.0), 0.3),
        );
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / n, b / n);
        let want = (a.conj() * a.norm_sqr() + b.conj() * b.norm_sqr()).norm();
        let got = basis_clone_overlap(a, b).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!(got < 1.0 - 1e-6);
    }
}

#[test]
fn walks() {
    let sp = QubotSpace::new(11, 2).unwrap();
    let p = run_walk(&sp, Coin::Identity, 3, 17).unwrap();
    assert_eq!(p[(3 + 17) % 11], 1.0);
    let p = run_walk(&sp, Coin::Hadamard, 0, 40).unwrap();
    assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    // a Hadamard walk spreads: more than two cells are occupied
    assert!(p.iter().filter(|&&x| x > 1e-6).count() > 2);
    // undoing the coin recovers the bare conditional shift
    let step = coined_walk_step(&sp, Coin::Hadamard).unwrap();
    let bare = compose(&[step, Coin::Hadamard.operator(sp.internal_site()).unwrap().adjoint()])
        .unwrap()
        .to_dense()
        .unwrap();
    assert!((bare - qubot_step(&sp).unwrap().to_dense().unwrap()).norm() < 1e-12);
}

#[test]
fn counter_propagating_pair_stays_antisymmetric() {
    // one qubot at x = 0 moving right, one at x = 3 moving left
    let sp = QubotSpace::new(6, 2).unwrap();
    let n = sp.mode_count();
    let right = StateVector::basis_index(mode_space(n), sp.mode(0, 0, 0)).unwrap();
    let left = StateVector::basis_index(mode_space(n), sp.mode(0, 3, 1)).unwrap();
    let e = qubot_step(&sp).unwrap().to_dense().unwrap();
    let ee = compose(&[
        LocalOperator::dense(vec![SiteId(0)], vec![n], e.clone()).unwrap(),
        LocalOperator::dense(vec![SiteId(1)], vec![n], e.clone()).unwrap(),
    ])
    .unwrap();
    let evolve = |s: &StateVector| {
        let v = &e * nalgebra::DVector::from_column_slice(s.amplitudes());
        StateVector::from_amplitudes(mode_space(n), v.as_slice().to_vec()).unwrap()
    };
    let (mut r, mut l) = (right, left);
    let mut pair = wedge(&[r.clone(), l.clone()]).unwrap().to_first_quantized().unwrap();
    for _ in 0..5 {
        let coeffs = schmidt_coefficients(&pair, &[SiteId(0)], &[SiteId(1)]).unwrap();
        assert_eq!(schmidt_rank(&coeffs), 2);
        assert!(coeffs
            .iter()
            .filter(|&&x| x > 1e-12)
            .all(|&x| (x - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12));
        pair = ee.apply(&pair).unwrap();
        r = evolve(&r);
        l = evolve(&l);
        let direct = wedge(&[r.clone(), l.clone()]).unwrap().to_first_quantized().unwrap();
        assert!(direct.max_abs_diff(&pair).unwrap() < 1e-12);
    }
}

#[test]
fn continuous_qubot_composes() {
    let sp = QubotSpace::new(7, 2).unwrap();
    let at = |t: f64| continuous_qubot(&sp, t).unwrap().to_dense().unwrap();
    assert!((at(0.3) * at(0.45) - at(0.75)).norm() < 1e-10);
    let e = qubot_step(&sp).unwrap().to_dense().unwrap();
    assert!((at(3.0) - &e * &e * &e).norm() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_matches_determinants(n_modes in 2usize..=6, count in 1usize..=4, seed in any::<u64>()) {
        prop_assume!(count <= n_modes);
        let psis = random_factors(n_modes, count, &mut seeded_rng(seed));
        let w = wedge(&psis).unwrap();
        let raw: Vec<Vec<Complex64>> = psis.iter().map(|p| p.amplitudes().to_vec()).collect();
        let mut seen = 0;
        for modes in (0..n_modes).combinations(count) {
            let want = wedge_coefficient(&raw, &modes);
            prop_assert!((w.amplitude(&key_of(&modes, n_modes)) - want).norm() <= 1e-12);
            seen += 1;
        }
        prop_assert!(w.amplitudes().len() <= seen);
        prop_assert_eq!(w.particle_numbers().into_iter().collect::<Vec<_>>(), vec![count]);
    }

    #[test]
    fn wedge_alternates_and_is_linear(seed in any::<u64>(), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let mut rng = seeded_rng(seed);
        let psis = random_factors(5, 3, &mut rng);
        let mut swapped = psis.clone();
        swapped.swap(i, j);
        let w = wedge(&psis).unwrap();
        prop_assert!(max_diff(&wedge(&swapped).unwrap(), &w.scaled(c(-1.0, 0.0))) <= 1e-12);

        let extra = random_state(mode_space(5), &mut rng);
        let (a, b) = (c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)), c(0.7, -0.2));
        let mixed = psis[0].scaled(a).add_scaled(b, &extra).unwrap();
        let lhs = wedge(&[mixed, psis[1].clone(), psis[2].clone()]).unwrap();
        let rhs = w.scaled(a).add(&wedge(&[extra, psis[1].clone(), psis[2].clone()]).unwrap().scaled(b)).unwrap();
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn first_quantization_preserves_norm(n_modes in 2usize..=5, count in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(count <= n_modes);
        let mut rng = seeded_rng(seed);
        let psis = random_factors(n_modes, count, &mut rng);
        for fock in [
            wedge(&psis).unwrap(),
            symmetric_product(&psis, Some(4)).unwrap(),
            tensor_product(&psis).unwrap(),
        ] {
            let fq = fock.to_first_quantized().unwrap();
            prop_assert!((fq.norm() - fock.norm()).abs() <= 1e-12);
        }
    }
}
