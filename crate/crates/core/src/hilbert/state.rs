use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{SiteId, SiteSpace};
use crate::error::{Error, Result};

/// Normalization tolerance for states flagged normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Dense complex amplitudes over a tensor-product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: SiteSpace,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(space: SiteSpace) -> Self {
        let amps = vec![Complex64::new(0.0, 0.0); space.dim()];
        Self { space, amps }
    }

    pub fn basis(space: SiteSpace, digits: &[usize]) -> Result<Self> {
        let index = space.indexer().encode(digits)?;
        Self::basis_index(space, index)
    }

    pub fn basis_index(space: SiteSpace, index: usize) -> Result<Self> {
        if index >= space.dim() {
            return Err(Error::IndexOutOfRange {
                index,
                dim: space.dim(),
            });
        }
        let mut s = Self::zeros(space);
        s.amps[index] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn from_amplitudes(space: SiteSpace, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for a space of dimension {}",
                amps.len(),
                space.dim()
            )));
        }
        Ok(Self { space, amps })
    }

    pub fn space(&self) -> &SiteSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<Complex64> {
        Ok(self.amps[self.space.indexer().encode(digits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    /// Returns the state scaled to unit norm; a zero vector stays zero.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / n, 0.0))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            space: self.space.clone(),
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch("states live in different spaces".into()));
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: Complex64, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            space: self.space.clone(),
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + c * b).collect(),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_space(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest element-wise amplitude difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_space(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Tensor product `self ⊗ other` over the concatenated site lists.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut sites = self.space.sites().to_vec();
        sites.extend_from_slice(other.space.sites());
        let mut dims = self.space.dims().to_vec();
        dims.extend_from_slice(other.space.dims());
        let space = SiteSpace::new(sites, dims)?;
        let mut amps = Vec::with_capacity(space.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { space, amps })
    }

    /// Indices and amplitudes of the nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
            .map(|(i, &a)| (i, a))
    }

    /// If the state is a single basis vector, its index and amplitude.
    pub fn as_basis(&self) -> Option<(usize, Complex64)> {
        let mut it = self.support();
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    pub fn snapshot(&self) -> StateSnapshot {
        let idx = self.space.indexer();
        StateSnapshot {
            sites: self.space.sites().iter().map(|s| s.0).collect(),
            dims: self.space.dims().to_vec(),
            amplitudes: self
                .support()
                .map(|(index, a)| SnapshotAmplitude {
                    index,
                    digits: idx.decode_unchecked(index),
                    re: a.re,
                    im: a.im,
                })
                .collect(),
        }
    }

    pub fn from_snapshot(snapshot: &StateSnapshot) -> Result<Self> {
        let space = SiteSpace::new(
            snapshot.sites.iter().map(|&s| SiteId(s)).collect(),
            snapshot.dims.clone(),
        )?;
        let mut state = Self::zeros(space);
        for a in &snapshot.amplitudes {
            let index = state.space.indexer().encode(&a.digits)?;
            if index != a.index {
                return Err(Error::InvalidArgument(format!(
                    "snapshot index {} disagrees with digits {:?}",
                    a.index, a.digits
                )));
            }
            state.amps[index] = Complex64::new(a.re, a.im);
        }
        Ok(state)
    }
}

/// JSON snapshot of a state; zero amplitudes are omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSnapshot {
    pub sites: Vec<usize>,
    pub dims: Vec<usize>,
    pub amplitudes: Vec<SnapshotAmplitude>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotAmplitude {
    pub index: usize,
    pub digits: Vec<usize>,
    pub re: f64,
    pub im: f64,
}
