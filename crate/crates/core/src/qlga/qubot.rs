use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::gates::{fractional_power, hadamard, weyl_shift};
use crate::hilbert::{compose, LocalOperator, SiteId, SiteSpace, StateVector};

/// Single-excitation space `H_ℓ ⊗ H_S` on a cycle of `n_ℓ` cells, with an
/// optional time factor of `n_t` slots.
///
/// The state space has sites time, position and internal, in that order,
/// so the flat basis index of `(t, x, s)` is the mode index used by
/// [`FockState`](super::FockState).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubotSpace {
    n_l: usize,
    n_s: usize,
    n_t: usize,
}

impl QubotSpace {
    pub fn new(n_l: usize, n_s: usize) -> Result<Self> {
        Self::with_time(n_l, n_s, 1)
    }

    pub fn with_time(n_l: usize, n_s: usize, n_t: usize) -> Result<Self> {
        if n_l == 0 || n_s == 0 || n_t == 0 {
            return Err(Error::InvalidArgument("qubot space dimensions must be positive".into()));
        }
        Ok(Self { n_l, n_s, n_t })
    }

    pub fn lattice_dim(&self) -> usize {
        self.n_l
    }

    pub fn internal_dim(&self) -> usize {
        self.n_s
    }

    pub fn time_dim(&self) -> usize {
        self.n_t
    }

    /// `n_ℓ · n_t · n_S`.
    pub fn mode_count(&self) -> usize {
        self.n_l * self.n_t * self.n_s
    }

    pub fn mode(&self, t: usize, cell: usize, internal: usize) -> usize {
        (t * self.n_l + cell) * self.n_s + internal
    }

    /// `(t, cell, internal)` of a mode index.
    pub fn mode_coords(&self, mode: usize) -> (usize, usize, usize) {
        (
            mode / (self.n_l * self.n_s),
            (mode / self.n_s) % self.n_l,
            mode % self.n_s,
        )
    }

    pub fn time_site(&self) -> SiteId {
        SiteId(0)
    }

    pub fn position_site(&self) -> SiteId {
        SiteId(1)
    }

    pub fn internal_site(&self) -> SiteId {
        SiteId(2)
    }

    pub fn single_particle_space(&self) -> SiteSpace {
        SiteSpace::new(
            vec![self.time_site(), self.position_site(), self.internal_site()],
            vec![self.n_t, self.n_l, self.n_s],
        )
        .expect("three distinct sites")
    }

    /// `|t, x, s⟩`.
    pub fn basis_state(&self, t: usize, cell: usize, internal: usize) -> Result<StateVector> {
        StateVector::basis(self.single_particle_space(), &[t, cell, internal])
    }

    fn require_qubit(&self) -> Result<()> {
        if self.n_s != 2 {
            return Err(Error::DimensionMismatch(format!(
                "internal space must be two-dimensional, got {}",
                self.n_s
            )));
        }
        Ok(())
    }
}

/// Conditional shift `U ⊗ |0⟩⟨0| + U† ⊗ |1⟩⟨1|`: internal 0 moves to
/// `x + 1`, internal 1 to `x − 1`.
pub fn qubot_step(space: &QubotSpace) -> Result<LocalOperator> {
    space.require_qubit()?;
    let n = space.lattice_dim();
    let targets = (0..2 * n)
        .map(|j| {
            let (x, s) = (j / 2, j % 2);
            let y = if s == 0 { (x + 1) % n } else { (x + n - 1) % n };
            y * 2 + s
        })
        .collect();
    LocalOperator::permutation(vec![space.position_site(), space.internal_site()], vec![n, 2], targets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coin {
    Hadamard,
    Identity,
}

impl Coin {
    pub fn operator(self, site: SiteId) -> Result<LocalOperator> {
        match self {
            Coin::Hadamard => Ok(hadamard(site)),
            Coin::Identity => LocalOperator::identity(vec![site], vec![2]),
        }
    }
}

/// `Ê ∘ (1 ⊗ coin)`.
pub fn coined_walk_step(space: &QubotSpace, coin: Coin) -> Result<LocalOperator> {
    compose(&[qubot_step(space)?, coin.operator(space.internal_site())?])
}

/// Position probabilities after `steps` walk steps from `|x₀⟩ ⊗ |0⟩`.
pub fn run_walk(space: &QubotSpace, coin: Coin, start: usize, steps: usize) -> Result<Vec<f64>> {
    let step = coined_walk_step(space, coin)?;
    let mut state = space.basis_state(0, start, 0)?;
    for _ in 0..steps {
        state = step.apply(&state)?;
    }
    Ok(position_distribution(space, &state))
}

/// Probability of each cell, summed over time slots and internal states.
pub fn position_distribution(space: &QubotSpace, state: &StateVector) -> Vec<f64> {
    let mut p = vec![0.0; space.lattice_dim()];
    for (j, a) in state.amplitudes().iter().enumerate() {
        p[space.mode_coords(j).1] += a.norm_sqr();
    }
    p
}

/// `Ê^τ = U^τ ⊗ |0⟩⟨0| + (U†)^τ ⊗ |1⟩⟨1|`.
pub fn continuous_qubot(space: &QubotSpace, tau: f64) -> Result<LocalOperator> {
    space.require_qubit()?;
    let n = space.lattice_dim();
    let pos = space.position_site();
    let shift = weyl_shift(pos, n)?;
    let forward = fractional_power(&shift, tau)?.to_dense()?;
    let backward = fractional_power(&shift.adjoint(), tau)?.to_dense()?;
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for (s, u) in [forward, backward].iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                m[(r * 2 + s, c * 2 + s)] = u[(r, c)];
            }
        }
    }
    LocalOperator::dense(vec![pos, space.internal_site()], vec![n, 2], m)
}

/// One row of an amplitude/phase series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRow {
    pub tau: f64,
    pub site: usize,
    pub internal: usize,
    pub magnitude: f64,
    pub phase: f64,
}

/// Rows for `Ê^τ |x₀, s₀⟩` at `τ = k / per_unit` for `k = 0 … count-1`.
pub fn qubot_snapshots(
    space: &QubotSpace,
    start: (usize, usize),
    per_unit: usize,
    count: usize,
) -> Result<Vec<SnapshotRow>> {
    if per_unit == 0 {
        return Err(Error::InvalidArgument("snapshot resolution must be positive".into()));
    }
    let init = space.basis_state(0, start.0, start.1)?;
    let mut rows = Vec::new();
    for k in 0..count {
        let tau = k as f64 / per_unit as f64;
        let state = continuous_qubot(space, tau)?.apply(&init)?;
        for (j, a) in state.amplitudes().iter().enumerate() {
            let (_, site, internal) = space.mode_coords(j);
            rows.push(SnapshotRow {
                tau,
                site,
                internal,
                magnitude: a.norm(),
                phase: if a.norm() > 1e-15 { a.arg() } else { 0.0 },
            });
        }
    }
    Ok(rows)
}
