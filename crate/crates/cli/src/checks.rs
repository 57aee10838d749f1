//! Named verification checks. Each returns one or more report rows.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use anyhow::Result;
use clap::ValueEnum;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use histqca::hilbert::gates::{fractional_power, weyl_shift};
use histqca::hilbert::random::{random_permutation, random_state, random_unitary, seeded_rng};
use histqca::hilbert::{
    commutator_defect, commutes_up_to_phase, schmidt_coefficients, schmidt_rank, LocalOperator, SiteId, SiteSpace,
    StateVector, NORM_TOL,
};
use histqca::history::{
    disentangler, global_step, local_transitions, max_pairwise_defect, run_history, GlobalClassicalMap, HistorySpace,
};
use histqca::lattice::{
    apply_rule, elementary_rule, game_of_life, lift_reversible, run_second_order, CellAlphabet, Configuration,
    LatticeGeometry, SubtractKind,
};
use histqca::partition::{
    basis_change_q, basis_change_q_conjugate, build_super_f, build_super_f_with, clone_gate, margolus_step,
    BlockUnitary,
};
use histqca::qlga::{
    basis_clone_overlap, continuous_qubot, erasure_map, grade_dims, qca_space, qca_to_qlga, qlga_to_qca, qubot_step,
    run_walk, wedge, wedge_tables, Coin, QubotSpace, Statistics,
};

use crate::report::CheckResult;

const GOLDEN_TABLES: &str = include_str!("../../core/tests/golden/wedge_tables.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Alphabet,
    Lift,
    SecondOrder,
    ShiftBijection,
    Norm,
    Embedding,
    Indexing,
    Schmidt,
    Phase,
    Commute,
    Unitarity,
    Entangle,
    Disentangle,
    Orbit,
    Margolus,
    Superf,
    Covariance,
    Clone,
    WedgeTable,
    Pauli,
    BellLike,
    FockDims,
    NoCloning,
    Identification,
    Qubot,
    Walk,
    All,
}

/// Shared knobs; `None` picks the per-check default.
#[derive(Debug, Clone, Serialize)]
pub struct Params {
    pub seed: u64,
    pub ring: Option<usize>,
    pub rules: Vec<u32>,
    pub cases: Option<usize>,
    pub tolerance: Option<f64>,
    pub conjugate: bool,
}

impl Params {
    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn ring(&self, default: usize) -> usize {
        self.ring.unwrap_or(default)
    }

    fn cases(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }
}

impl Check {
    pub fn every() -> Vec<Check> {
        Check::value_variants()
            .iter()
            .copied()
            .filter(|&c| c != Check::All)
            .collect()
    }

    pub fn run(self, p: &Params) -> Result<Vec<CheckResult>> {
        match self {
            Check::Alphabet => alphabet(p),
            Check::Lift => lift(p),
            Check::SecondOrder => second_order(p),
            Check::ShiftBijection => shift_bijection(p),
            Check::Norm => norm(p),
            Check::Embedding => embedding(p),
            Check::Indexing => indexing(),
            Check::Schmidt => schmidt(p),
            Check::Phase => phase(p),
            Check::Commute => commute(p),
            Check::Unitarity => unitarity(p),
            Check::Entangle => entangle(p),
            Check::Disentangle => disentangle(p),
            Check::Orbit => orbit(p),
            Check::Margolus => margolus(p),
            Check::Superf => superf(p),
            Check::Covariance => covariance(p),
            Check::Clone => clone(),
            Check::WedgeTable => wedge_table(),
            Check::Pauli => pauli(p),
            Check::BellLike => bell_like(p),
            Check::FockDims => fock_dims(),
            Check::NoCloning => no_cloning(p),
            Check::Identification => identification(p),
            Check::Qubot => qubot(p),
            Check::Walk => walk(p),
            Check::All => {
                let parts: Vec<Result<Vec<CheckResult>>> = Check::every().par_iter().map(|c| c.run(p)).collect();
                let mut out = Vec::new();
                for part in parts {
                    out.extend(part?);
                }
                Ok(out)
            }
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ring_space(l: usize, layers: usize) -> Result<HistorySpace> {
    Ok(HistorySpace::new(
        LatticeGeometry::ring(l)?,
        CellAlphabet::binary(),
        layers,
    )?)
}

fn ring_config(l: usize, index: usize) -> Result<Configuration> {
    Ok(Configuration::from_index(
        LatticeGeometry::ring(l)?,
        CellAlphabet::binary(),
        index,
    ))
}

fn is_bijection(targets: &[usize]) -> bool {
    let mut hit = vec![false; targets.len()];
    targets.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
}

fn alphabet(p: &Params) -> Result<Vec<CheckResult>> {
    let mut failures = 0;
    let mut alphabets = (2..=6)
        .map(CellAlphabet::modular)
        .collect::<histqca::Result<Vec<_>>>()?;
    for m in [2, 4, 8] {
        alphabets.push(CellAlphabet::new(m, SubtractKind::XorBits)?);
    }
    for a in alphabets {
        let m = a.size() as u8;
        for x in 0..m {
            failures += usize::from(a.subtract(x, x) != 0);
            for y in 0..m {
                failures += usize::from(a.subtract(x, a.subtract(x, y)) != y);
            }
        }
    }
    let _ = p;
    Ok(vec![CheckResult::count(
        "subtraction-involution",
        "lattice.subtraction",
        failures,
    )])
}

fn lift(p: &Params) -> Result<Vec<CheckResult>> {
    let mut failures = 0;
    for &n in &p.rules {
        let lifted = lift_reversible(&elementary_rule(n)?);
        failures += (0..16)
            .filter(|&i| lifted.apply_index(lifted.apply_index(i)) != i)
            .count();
    }
    Ok(vec![CheckResult::count("lift-involution", "lattice.lift", failures)])
}

fn second_order(p: &Params) -> Result<Vec<CheckResult>> {
    let l = p.ring(8);
    let geometry = LatticeGeometry::ring(l)?;
    let mut rng = seeded_rng(p.seed);
    let mut failures = 0;
    for &n in &p.rules {
        let rule = elementary_rule(n)?;
        let mut random = || {
            Configuration::new(
                geometry.clone(),
                CellAlphabet::binary(),
                (0..l).map(|_| rng.random_range(0..2u8)).collect(),
            )
        };
        let (p0, c0) = (random()?, random()?);
        let (pn, cn) = run_second_order(&p0, &c0, &rule, 20)?;
        let (back_p, back_c) = run_second_order(&cn, &pn, &rule, 20)?;
        failures += usize::from(back_c != p0 || back_p != c0);
    }
    Ok(vec![CheckResult::count(
        "second-order-reversal",
        "lattice.second-order",
        failures,
    )])
}

fn shift_bijection(p: &Params) -> Result<Vec<CheckResult>> {
    let rule = elementary_rule(170)?;
    let mut failures = 0;
    for l in 3..=p.ring(10) {
        let map = GlobalClassicalMap::new(&rule, &LatticeGeometry::ring(l)?)?;
        failures += usize::from(!map.is_bijective());
        for k in 0..1usize << l {
            let config = ring_config(l, k)?;
            let mut rotated = config.cells().to_vec();
            rotated.rotate_left(1);
            failures += usize::from(map.apply(&config).cells() != rotated.as_slice());
        }
    }
    Ok(vec![CheckResult::count(
        "shift-bijection",
        "lattice.shift-bijection",
        failures,
    )])
}

fn random_local_op(n_sites: usize, k: usize, rng: &mut impl Rng) -> Result<LocalOperator> {
    let mut sites = random_permutation(n_sites, rng);
    sites.truncate(k);
    let support = sites.into_iter().map(SiteId).collect();
    Ok(LocalOperator::dense_unitary(
        support,
        vec![2; k],
        random_unitary(1 << k, rng),
    )?)
}

fn norm(p: &Params) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(p.seed);
    let space = SiteSpace::uniform(6, 2)?;
    let mut worst: f64 = 0.0;
    for _ in 0..p.cases(20) {
        let op = random_local_op(6, 3, &mut rng)?;
        let psi = random_state(space.clone(), &mut rng);
        worst = worst.max((op.apply(&psi)?.norm() - 1.0).abs());
    }
    Ok(vec![CheckResult::within(
        "norm-preservation",
        "hilbert.norm",
        worst,
        p.tol(NORM_TOL),
    )])
}

fn embedding(p: &Params) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(p.seed);
    let space = SiteSpace::uniform(5, 2)?;
    let mut worst: f64 = 0.0;
    for case in 0..p.cases(20) {
        let op = random_local_op(5, 1 + case % 3, &mut rng)?;
        let psi = random_state(space.clone(), &mut rng);
        let full = op.embed(space.sites(), space.dims())?.to_dense()?;
        let want = full * DVector::from_column_slice(psi.amplitudes());
        let got = op.apply(&psi)?;
        let err = got
            .amplitudes()
            .iter()
            .zip(want.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        worst = worst.max(err);
    }
    Ok(vec![CheckResult::within(
        "embedding-vs-dense",
        "hilbert.embedding",
        worst,
        p.tol(1e-12),
    )])
}

fn indexing() -> Result<Vec<CheckResult>> {
    let mut failures = 0;
    for dims in [vec![2; 16], vec![3, 5, 7, 11, 13], vec![4; 8]] {
        let space = SiteSpace::new((0..dims.len()).map(SiteId).collect(), dims)?;
        let idx = space.indexer();
        for i in 0..space.dim() {
            failures += usize::from(idx.encode(&idx.decode(i)?)? != i);
        }
    }
    Ok(vec![CheckResult::count("encode-decode", "hilbert.indexing", failures)])
}

fn schmidt(p: &Params) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(p.seed);
    let a: Vec<SiteId> = (0..3).map(SiteId).collect();
    let b: Vec<SiteId> = (3..6).map(SiteId).collect();
    let sa = SiteSpace::new(a.clone(), vec![2; 3])?;
    let sb = SiteSpace::new(b.clone(), vec![2; 3])?;
    let (mut worst, mut rank_failures): (f64, usize) = (0.0, 0);
    for case in 0..p.cases(20) {
        let r = 1 + case % 4;
        let mut psi = random_state(sa.clone(), &mut rng).tensor(&random_state(sb.clone(), &mut rng))?;
        for _ in 1..r {
            let t = random_state(sa.clone(), &mut rng).tensor(&random_state(sb.clone(), &mut rng))?;
            psi = psi.add_scaled(c(1.0, 0.0), &t)?;
        }
        let psi = psi.normalized();
        let coeffs = schmidt_coefficients(&psi, &a, &b)?;
        worst = worst.max((coeffs.iter().map(|x| x * x).sum::<f64>() - psi.norm_sqr()).abs());
        let local = LocalOperator::dense_unitary(a.clone(), vec![2; 3], random_unitary(8, &mut rng))?;
        let moved = schmidt_rank(&schmidt_coefficients(&local.apply(&psi)?, &a, &b)?);
        rank_failures += usize::from(schmidt_rank(&coeffs) != r || moved != r);
    }
    Ok(vec![
        CheckResult::within("schmidt-weights", "hilbert.schmidt", worst, p.tol(1e-10)),
        CheckResult::count("schmidt-rank-local-invariance", "hilbert.schmidt", rank_failures),
    ])
}

fn phase(p: &Params) -> Result<Vec<CheckResult>> {
    let (mut defect, mut omega_err): (f64, f64) = (0.0, 0.0);
    for m in 2..=6 {
        let x = weyl_shift(SiteId(0), m)?;
        let phases = (0..m)
            .map(|s| Complex64::from_polar(1.0, 2.0 * PI * s as f64 / m as f64))
            .collect();
        let z = LocalOperator::phased_permutation(vec![SiteId(0)], vec![m], (0..m).collect(), phases)?;
        let (d, omega) = commutes_up_to_phase(&x, &z)?;
        defect = defect.max(d);
        omega_err = omega_err.max((omega.norm() - 1.0).abs());
    }
    Ok(vec![
        CheckResult::within("weyl-phase-commutation", "hilbert.phase-commute", defect, p.tol(1e-12)),
        CheckResult::within("weyl-phase-modulus", "hilbert.phase-commute", omega_err, p.tol(1e-12)),
    ])
}

fn commute(p: &Params) -> Result<Vec<CheckResult>> {
    let space = ring_space(p.ring(5), 2)?;
    let defects: Vec<f64> = p
        .rules
        .par_iter()
        .map(|&n| max_pairwise_defect(&local_transitions(&elementary_rule(n)?, &space, 0)?))
        .collect::<histqca::Result<_>>()?;
    let worst = defects.into_iter().fold(0.0, f64::max);
    Ok(vec![CheckResult::within(
        "local-transitions-commute",
        "history.commute",
        worst,
        p.tol(0.0),
    )])
}

fn unitarity(p: &Params) -> Result<Vec<CheckResult>> {
    let space = ring_space(p.ring(5), 2)?;
    let mut failures = 0;
    for &n in &p.rules {
        let g = global_step(&elementary_rule(n)?, &space, 0)?;
        failures += usize::from(!g.targets().is_some_and(is_bijection));
    }
    let torus = HistorySpace::new(LatticeGeometry::torus(3, 3)?, CellAlphabet::binary(), 2)?;
    let life = global_step(&game_of_life(), &torus, 0)?;
    let life_failures = usize::from(!life.targets().is_some_and(is_bijection));
    Ok(vec![
        CheckResult::count("global-step-permutation", "history.unitarity", failures),
        CheckResult::count("life-3x3-permutation", "history.unitarity", life_failures),
    ])
}

fn entangle(p: &Params) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(p.seed);
    let mut failures = 0;
    for _ in 0..p.cases(100) {
        let l = rng.random_range(3..=5);
        let n = *p.rules.choose(&mut rng).unwrap_or(&110);
        let k1 = rng.random_range(0..1usize << l);
        let k2 = (k1 + rng.random_range(1..1usize << l)) % (1 << l);
        let space = ring_space(l, 2)?;
        let rule = elementary_rule(n)?;
        let (a, b) = (
            c(rng.random_range(0.2..1.0), rng.random_range(-1.0..1.0)),
            c(rng.random_range(0.2..1.0), 0.0),
        );
        let (x1, x2) = (ring_config(l, k1)?, ring_config(l, k2)?);
        let differ = apply_rule(&x1, &rule)? != apply_rule(&x2, &rule)?;
        let init = space.initial_superposition(&[(a, x1), (b, x2)])?.normalized();
        let out = global_step(&rule, &space, 0)?.apply(&init)?;
        let rank = schmidt_rank(&schmidt_coefficients(
            &out,
            &space.layer_sites(0),
            &space.layer_sites(1),
        )?);
        failures += usize::from(rank != if differ { 2 } else { 1 });
    }
    Ok(vec![CheckResult::count(
        "entanglement-dichotomy",
        "history.entangle",
        failures,
    )])
}

fn disentangle(p: &Params) -> Result<Vec<CheckResult>> {
    let rule = elementary_rule(170)?;
    let mut rng = seeded_rng(p.seed);
    let mut worst: f64 = 0.0;
    for case in 0..p.cases(50) {
        let l = 3 + case % 4;
        let space = ring_space(l, 2)?;
        let fe = GlobalClassicalMap::new(&rule, space.geometry())?;
        let psi = random_state(space.layer_space(0)?, &mut rng);
        let init = space.initial_state(&psi)?;
        let out = disentangler(&fe, &space, 0)?.apply(&global_step(&rule, &space, 0)?.apply(&init)?)?;
        let mut want = vec![c(0.0, 0.0); space.dim()];
        for (k, &a) in psi.amplitudes().iter().enumerate() {
            want[fe.forward_index(k)] = a;
        }
        let want = StateVector::from_amplitudes(space.space().clone(), want)?;
        worst = worst.max(out.max_abs_diff(&want)?);
    }
    Ok(vec![CheckResult::within(
        "disentangler-erases-copy",
        "history.disentangle",
        worst,
        p.tol(1e-12),
    )])
}

fn orbit(p: &Params) -> Result<Vec<CheckResult>> {
    let l = p.ring(4);
    let space = ring_space(l, 4)?;
    let failures: Vec<usize> = p
        .rules
        .par_iter()
        .map(|&n| -> Result<usize> {
            let rule = elementary_rule(n)?;
            let mut bad = 0;
            for k in 0..1usize << l {
                let mut layers = vec![ring_config(l, k)?];
                for _ in 1..4 {
                    let next = apply_rule(layers.last().expect("non-empty"), &rule)?;
                    layers.push(next);
                }
                let out = run_history(&rule, &space, &space.initial_basis(&layers[0])?)?;
                let want = space.index_of(&layers)?;
                bad += usize::from(!out.as_basis().is_some_and(|(i, a)| i == want && a == c(1.0, 0.0)));
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(vec![CheckResult::count(
        "history-orbit",
        "history.orbit",
        failures.iter().sum(),
    )])
}

fn sweep_bits(cells: &[usize], perm: &[usize], offset: usize) -> Vec<usize> {
    let n = cells.len();
    let mut out = cells.to_vec();
    for i in 0..n / 2 {
        let (a, b) = ((2 * i + offset) % n, (2 * i + 1 + offset) % n);
        let t = perm[cells[a] * 2 + cells[b]];
        out[a] = t / 2;
        out[b] = t % 2;
    }
    out
}

fn margolus(p: &Params) -> Result<Vec<CheckResult>> {
    let l = p.ring(8);
    let space = SiteSpace::uniform(l, 2)?;
    let idx = space.indexer();
    let mut rng = seeded_rng(p.seed);
    let mut failures = 0;
    for _ in 0..p.cases(6) {
        let mut perm: Vec<usize> = (0..4).collect();
        perm.shuffle(&mut rng);
        let q = BlockUnitary::from_permutation(2, &perm)?;
        for k in 0..space.dim() {
            let cells = idx.decode(k)?;
            let want = idx.encode(&sweep_bits(&sweep_bits(&cells, &perm, 0), &perm, 1))?;
            let out = margolus_step(&q, &StateVector::basis_index(space.clone(), k)?)?;
            failures += usize::from(out.as_basis().map(|(i, _)| i) != Some(want));
        }
    }
    Ok(vec![CheckResult::count(
        "margolus-vs-classical",
        "partition.margolus",
        failures,
    )])
}

fn superf(p: &Params) -> Result<Vec<CheckResult>> {
    let space = ring_space(p.ring(8), 2)?;
    let blocks = space.cells() / 2;
    let (mut comm, mut unit): (f64, f64) = (0.0, 0.0);
    for s in 0..p.cases(5) as u64 {
        let q = BlockUnitary::random(2, &mut seeded_rng(p.seed + s))?;
        let ops = (0..blocks)
            .map(|i| build_super_f(&q, &space, i))
            .collect::<histqca::Result<Vec<_>>>()?;
        unit = ops.iter().map(LocalOperator::unitarity_defect).fold(unit, f64::max);
        let pairs: Vec<(usize, usize)> = (0..blocks).flat_map(|i| (i + 1..blocks).map(move |j| (i, j))).collect();
        let defects = pairs
            .par_iter()
            .map(|&(i, j)| commutator_defect(&ops[i], &ops[j]))
            .collect::<histqca::Result<Vec<_>>>()?;
        comm = defects.into_iter().fold(comm, f64::max);
    }
    Ok(vec![
        CheckResult::within("super-f-commute", "partition.superf", comm, p.tol(1e-10)),
        CheckResult::within("super-f-unitary", "partition.superf", unit, p.tol(1e-10)),
    ])
}

fn covariance(p: &Params) -> Result<Vec<CheckResult>> {
    let space = ring_space(p.ring(8), 2)?;
    let clone = clone_gate(&space, (0, 1), 0)?;
    let mut worst: f64 = 0.0;
    for s in 0..p.cases(5) as u64 {
        let mut rng = seeded_rng(p.seed + s);
        let q = BlockUnitary::random(2, &mut rng)?;
        let b = random_unitary(2, &mut rng);
        let q2 = if p.conjugate {
            basis_change_q_conjugate(&q, &b)?
        } else {
            basis_change_q(&q, &b)?
        };
        let c2 = clone.conjugate_sitewise(&b)?;
        for i in 0..space.cells() / 2 {
            let lhs = build_super_f_with(&q2, &space, i, &c2)?.to_dense()?;
            let rhs = build_super_f(&q, &space, i)?.conjugate_sitewise(&b)?.to_dense()?;
            worst = worst.max((lhs - rhs).norm());
        }
    }
    let name = if p.conjugate {
        "basis-covariance-conjugate"
    } else {
        "basis-covariance"
    };
    Ok(vec![CheckResult::within(
        name,
        "partition.covariance",
        worst,
        p.tol(1e-10),
    )])
}

fn clone() -> Result<Vec<CheckResult>> {
    let space = ring_space(4, 2)?;
    let g = clone_gate(&space, (0, 1), 0)?;
    let mut failures = usize::from(!g.targets().is_some_and(is_bijection));
    if let Some(t) = g.targets() {
        failures += t.iter().take(4).enumerate().filter(|&(s, &to)| to != s * 4 + s).count();
    }
    let zero = ring_config(4, 0)?;
    let one = zero.with_cells(vec![1, 0, 0, 0])?;
    let init = space.initial_superposition(&[(c(FRAC_1_SQRT_2, 0.0), zero), (c(FRAC_1_SQRT_2, 0.0), one)])?;
    let out = g.apply(&init)?;
    let rank = schmidt_rank(&schmidt_coefficients(
        &out,
        &space.layer_sites(0),
        &space.layer_sites(1),
    )?);
    failures += usize::from(rank < 2);
    Ok(vec![CheckResult::count("clone-gate", "partition.clone", failures)])
}

fn wedge_table() -> Result<Vec<CheckResult>> {
    let generated = wedge_tables()?;
    let gold: Vec<&str> = GOLDEN_TABLES.lines().collect();
    let ours: Vec<&str> = generated.lines().collect();
    let differing = ours.iter().zip(&gold).filter(|(a, b)| a != b).count() + ours.len().abs_diff(gold.len());
    let byte_mismatch = usize::from(generated != GOLDEN_TABLES);
    Ok(vec![CheckResult::count(
        "wedge-tables-golden",
        "qlga.wedge-table",
        differing.max(byte_mismatch),
    )])
}

fn pauli(p: &Params) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(p.seed);
    let mut worst: f64 = 0.0;
    for case in 0..p.cases(20) {
        let psi = random_state(SiteSpace::uniform(1, 4 + case % 5)?, &mut rng);
        worst = worst.max(wedge(&[psi.clone(), psi])?.norm());
    }
    Ok(vec![CheckResult::within(
        "pauli-exclusion",
        "qlga.pauli",
        worst,
        p.tol(1e-12),
    )])
}

fn two_qubot_state(space: &QubotSpace, alpha: Complex64, beta: Complex64) -> Result<StateVector> {
    let mut v = vec![c(0.0, 0.0); space.mode_count()];
    for t in 0..2 {
        v[space.mode(t, 0, 0)] = alpha;
        v[space.mode(t, 0, 1)] = beta;
    }
    Ok(StateVector::from_amplitudes(space.single_particle_space(), v)?)
}

fn bell_like(p: &Params) -> Result<Vec<CheckResult>> {
    let space = QubotSpace::with_time(1, 2, 2)?;
    let lattice = qca_space(&space)?;
    let mut bell = vec![c(0.0, 0.0); lattice.dim()];
    // site symbols: ∅ = 0, ↑ = 1, ↓ = 2, ↕ = 3
    bell[3 * 4] = c(0.5, 0.0);
    bell[3] = c(0.5, 0.0);
    bell[2 * 4 + 1] = c(0.5, 0.0);
    bell[4 + 2] = c(-0.5, 0.0);
    let bell = StateVector::from_amplitudes(lattice, bell)?;
    let mut rng = seeded_rng(p.seed);
    let (mut overlap, mut prefactor): (f64, f64) = (0.0, 0.0);
    for _ in 0..p.cases(20) {
        let mut coef = || c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let (a1, b1, a2, b2) = (coef(), coef(), coef(), coef());
        let w = wedge(&[two_qubot_state(&space, a1, b1)?, two_qubot_state(&space, a2, b2)?])?;
        prefactor = prefactor.max((w.amplitude(&[1, 1, 0, 0]) - (a1 * b2 - a2 * b1)).norm());
        overlap = overlap.max(1.0 - bell.inner(&qlga_to_qca(&space, &w.normalized())?)?.norm());
    }
    let same = two_qubot_state(&space, c(0.3, 0.4), c(-0.1, 0.8))?;
    let zero = wedge(&[same.clone(), same])?.norm();
    Ok(vec![
        CheckResult::within("bell-like-overlap", "qlga.bell-like", overlap, p.tol(1e-10)),
        CheckResult::within("bell-like-prefactor", "qlga.bell-like", prefactor, p.tol(1e-12)),
        CheckResult::within("equal-qubots-vanish", "qlga.bell-like", zero, p.tol(1e-12)),
    ])
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn fock_dims() -> Result<Vec<CheckResult>> {
    let mut failures = 0;
    for n in 0..=16usize {
        let dims = grade_dims(n, Statistics::Fermionic)?;
        let want: Vec<u128> = (0..=n as u128).map(|k| binomial(n as u128, k)).collect();
        failures += usize::from(dims != want || dims.iter().sum::<u128>() != 1 << n);
    }
    for (n_l, n_s, n_t) in [(1, 2, 2), (2, 2, 2), (3, 3, 1), (8, 2, 1)] {
        let sp = QubotSpace::with_time(n_l, n_s, n_t)?;
        failures += usize::from(qca_space(&sp)?.dim() != 1 << sp.mode_count());
    }
    Ok(vec![CheckResult::count("fock-dimensions", "qlga.fock-dims", failures)])
}

fn no_cloning(p: &Params) -> Result<Vec<CheckResult>> {
    let h = c(FRAC_1_SQRT_2, 0.0);
    let overlap = basis_clone_overlap(h, h)?;
    let mut rng = seeded_rng(p.seed);
    let mut erase: f64 = 0.0;
    for d in 2..=4 {
        let psi = random_state(SiteSpace::new(vec![SiteId(0)], vec![d])?, &mut rng);
        let blank = StateVector::basis_index(SiteSpace::new(vec![SiteId(1)], vec![d])?, 0)?;
        let out = erasure_map(d)?.apply(&psi.tensor(&blank)?)?;
        let moved = StateVector::from_amplitudes(SiteSpace::new(vec![SiteId(1)], vec![d])?, psi.amplitudes().to_vec())?;
        let want = StateVector::basis_index(SiteSpace::new(vec![SiteId(0)], vec![d])?, 0)?.tensor(&moved)?;
        erase = erase.max(out.max_abs_diff(&want)?);
    }
    Ok(vec![
        CheckResult::within(
            "basis-clone-overlap",
            "qlga.no-cloning",
            (overlap - FRAC_1_SQRT_2).abs(),
            p.tol(1e-12),
        ),
        CheckResult::within("erasure-moves-state", "qlga.no-cloning", erase, p.tol(1e-12)),
    ])
}

fn identification(p: &Params) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(p.seed);
    let mut worst: f64 = 0.0;
    for (n_l, n_s, n_t) in [(1, 2, 2), (2, 2, 2), (3, 1, 2), (2, 3, 1)] {
        let sp = QubotSpace::with_time(n_l, n_s, n_t)?;
        let lattice = qca_space(&sp)?;
        let a = random_state(lattice.clone(), &mut rng);
        let b = random_state(lattice, &mut rng);
        let (fa, fb) = (qca_to_qlga(&sp, &a)?, qca_to_qlga(&sp, &b)?);
        worst = worst.max((fa.inner(&fb)? - a.inner(&b)?).norm());
        worst = worst.max(qlga_to_qca(&sp, &fa)?.max_abs_diff(&a)?);
    }
    Ok(vec![CheckResult::within(
        "identification-isometry",
        "qlga.identification",
        worst,
        p.tol(1e-12),
    )])
}

fn qubot(p: &Params) -> Result<Vec<CheckResult>> {
    let n = p.ring(8);
    let sp = QubotSpace::new(n, 2)?;
    let e = qubot_step(&sp)?.to_dense()?;
    let power = (0..n).fold(DMatrix::identity(2 * n, 2 * n), |acc, _| &e * acc);
    let cyclic = (power - DMatrix::<Complex64>::identity(2 * n, 2 * n)).norm();
    let mut rng = seeded_rng(p.seed);
    let mut frac: f64 = 0.0;
    for _ in 0..p.cases(10) {
        let (t1, t2): (f64, f64) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let a = continuous_qubot(&sp, t1)?.to_dense()?;
        let b = continuous_qubot(&sp, t2)?.to_dense()?;
        frac = frac.max((a * b - continuous_qubot(&sp, t1 + t2)?.to_dense()?).norm());
    }
    let shift = weyl_shift(SiteId(0), n)?;
    let one = (fractional_power(&shift, 1.0)?.to_dense()? - shift.to_dense()?).norm();
    Ok(vec![
        CheckResult::within("qubot-cycle-identity", "qlga.qubot", cyclic, p.tol(1e-12)),
        CheckResult::within("qubot-fractional-composition", "qlga.qubot", frac, p.tol(1e-10)),
        CheckResult::within("qubot-integer-power", "qlga.qubot", one, p.tol(1e-10)),
    ])
}

fn walk(p: &Params) -> Result<Vec<CheckResult>> {
    let n = p.ring(8);
    let sp = QubotSpace::new(n, 2)?;
    let mut sum: f64 = 0.0;
    for steps in 0..=20 {
        for coin in [Coin::Hadamard, Coin::Identity] {
            sum = sum.max((run_walk(&sp, coin, 0, steps)?.iter().sum::<f64>() - 1.0).abs());
        }
    }
    let one = run_walk(&QubotSpace::new(8, 2)?, Coin::Hadamard, 0, 1)?;
    let mut want = [0.0; 8];
    want[1] = 0.5;
    want[7] = 0.5;
    let first = one.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(vec![
        CheckResult::within("walk-probability-sum", "qlga.walk", sum, p.tol(1e-12)),
        CheckResult::within("walk-first-step", "qlga.walk", first, p.tol(1e-12)),
    ])
}
