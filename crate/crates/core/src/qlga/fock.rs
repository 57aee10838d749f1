use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{SiteSpace, StateVector};

/// Default bosonic occupation cutoff.
pub const DEFAULT_N_MAX: u16 = 4;

/// Exchange statistics of a multi-particle state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Statistics {
    Fermionic,
    /// `n_max = None` leaves occupations unbounded.
    Bosonic {
        n_max: Option<u16>,
    },
    Distinguishable,
}

impl Statistics {
    pub fn bosonic() -> Self {
        Statistics::Bosonic {
            n_max: Some(DEFAULT_N_MAX),
        }
    }
}

/// A sparse multi-particle state over `n_modes` single-particle modes.
///
/// Keys are occupation numbers per mode, except for distinguishable
/// particles where a key lists the mode of each particle in order.
/// Fermionic basis keys stand for the wedge of their occupied modes in
/// ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    n_modes: usize,
    statistics: Statistics,
    amps: BTreeMap<Vec<u16>, Complex64>,
}

fn check_modes(n_modes: usize) -> Result<()> {
    if n_modes > u16::MAX as usize {
        return Err(Error::CapExceeded {
            what: "mode count",
            dim: n_modes as u128,
            cap: u16::MAX as u128,
        });
    }
    Ok(())
}

impl FockState {
    pub fn zero(n_modes: usize, statistics: Statistics) -> Result<Self> {
        check_modes(n_modes)?;
        Ok(Self {
            n_modes,
            statistics,
            amps: BTreeMap::new(),
        })
    }

    pub fn vacuum(n_modes: usize, statistics: Statistics) -> Result<Self> {
        let key = match statistics {
            Statistics::Distinguishable => Vec::new(),
            _ => vec![0; n_modes],
        };
        let mut s = Self::zero(n_modes, statistics)?;
        s.amps.insert(key, Complex64::new(1.0, 0.0));
        Ok(s)
    }

    /// Basis state with the given key.
    pub fn basis(n_modes: usize, statistics: Statistics, key: &[u16]) -> Result<Self> {
        let mut s = Self::zero(n_modes, statistics)?;
        s.check_key(key)?;
        s.amps.insert(key.to_vec(), Complex64::new(1.0, 0.0));
        Ok(s)
    }

    /// Fermionic basis state with the listed modes occupied.
    pub fn occupied(n_modes: usize, modes: &[usize]) -> Result<Self> {
        let mut key = vec![0u16; n_modes];
        for &m in modes {
            if m >= n_modes {
                return Err(Error::IndexOutOfRange { index: m, dim: n_modes });
            }
            key[m] = 1;
        }
        Self::basis(n_modes, Statistics::Fermionic, &key)
    }

    fn check_key(&self, key: &[u16]) -> Result<()> {
        match self.statistics {
            Statistics::Distinguishable => {
                if let Some(&m) = key.iter().find(|&&m| m as usize >= self.n_modes) {
                    return Err(Error::IndexOutOfRange {
                        index: m as usize,
                        dim: self.n_modes,
                    });
                }
            }
            _ => {
                if key.len() != self.n_modes {
                    return Err(Error::DimensionMismatch(format!(
                        "occupation key has {} entries for {} modes",
                        key.len(),
                        self.n_modes
                    )));
                }
                let cap = match self.statistics {
                    Statistics::Fermionic => Some(1),
                    Statistics::Bosonic { n_max } => n_max,
                    Statistics::Distinguishable => unreachable!(),
                };
                if let Some(cap) = cap {
                    if let Some(&n) = key.iter().find(|&&n| n > cap) {
                        return Err(Error::TruncationOverflow {
                            occupation: n,
                            n_max: cap,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn amplitudes(&self) -> &BTreeMap<Vec<u16>, Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, key: &[u16]) -> Complex64 {
        self.amps.get(key).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(Complex64::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Unit-norm copy; the zero state is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / n, 0.0))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.amps.values_mut().for_each(|a| *a *= c);
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n_modes != other.n_modes || self.statistics != other.statistics {
            return Err(Error::DimensionMismatch("Fock states over different mode sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, a) in &other.amps {
            *out.amps.entry(k.clone()).or_default() += a;
        }
        out.amps.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        Ok(out)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self
            .amps
            .iter()
            .filter_map(|(k, a)| other.amps.get(k).map(|b| a.conj() * b))
            .sum())
    }

    /// Distinct particle numbers present.
    pub fn particle_numbers(&self) -> BTreeSet<usize> {
        self.amps.keys().map(|k| self.particles_in(k)).collect()
    }

    fn particles_in(&self, key: &[u16]) -> usize {
        match self.statistics {
            Statistics::Distinguishable => key.len(),
            _ => key.iter().map(|&n| n as usize).sum(),
        }
    }

    /// Adds one particle in `mode` on the right of every term.
    ///
    /// Fermions pick up `(−1)^k` with `k` the number of occupied modes above
    /// `mode`; bosons pick up `√(n + 1)`.
    pub fn create(&self, mode: usize) -> Result<Self> {
        self.append(&unit(self.n_modes, mode)?)
    }

    /// Adds one particle in the single-particle state `psi` on the right.
    pub fn append(&self, psi: &[Complex64]) -> Result<Self> {
        if psi.len() != self.n_modes {
            return Err(Error::DimensionMismatch(format!(
                "single-particle state has {} amplitudes for {} modes",
                psi.len(),
                self.n_modes
            )));
        }
        let mut out = BTreeMap::new();
        for (key, &a) in &self.amps {
            for (j, &c) in psi.iter().enumerate() {
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let Some((k, f)) = self.add_particle(key, j)? else {
                    continue;
                };
                *out.entry(k).or_insert(Complex64::new(0.0, 0.0)) += a * c * f;
            }
        }
        out.retain(|_, a: &mut Complex64| *a != Complex64::new(0.0, 0.0));
        Ok(Self {
            n_modes: self.n_modes,
            statistics: self.statistics,
            amps: out,
        })
    }

    fn add_particle(&self, key: &[u16], j: usize) -> Result<Option<(Vec<u16>, f64)>> {
        let mut k = key.to_vec();
        match self.statistics {
            Statistics::Fermionic => {
                if k[j] == 1 {
                    return Ok(None);
                }
                k[j] = 1;
                let above = key[j + 1..].iter().filter(|&&n| n == 1).count();
                Ok(Some((k, if above % 2 == 0 { 1.0 } else { -1.0 })))
            }
            Statistics::Bosonic { n_max } => {
                let n = k[j] + 1;
                if let Some(cap) = n_max.filter(|&c| n > c) {
                    return Err(Error::TruncationOverflow {
                        occupation: n,
                        n_max: cap,
                    });
                }
                k[j] = n;
                Ok(Some((k, (n as f64).sqrt())))
            }
            Statistics::Distinguishable => {
                k.push(j as u16);
                Ok(Some((k, 1.0)))
            }
        }
    }

    /// Mode labels of a key, one per particle, ascending for
    /// indistinguishable statistics.
    pub fn mode_list(&self, key: &[u16]) -> Vec<usize> {
        match self.statistics {
            Statistics::Distinguishable => key.iter().map(|&m| m as usize).collect(),
            _ => key
                .iter()
                .enumerate()
                .flat_map(|(m, &n)| std::iter::repeat_n(m, n as usize))
                .collect(),
        }
    }

    /// The state as an `N`-particle wavefunction on `N` copies of the mode
    /// space, (anti)symmetrized and normalized so that norms agree.
    pub fn to_first_quantized(&self) -> Result<StateVector> {
        let grades = self.particle_numbers();
        if grades.len() > 1 {
            return Err(Error::InvalidArgument("state mixes particle numbers".into()));
        }
        let n = grades.into_iter().next().unwrap_or(0);
        let space = SiteSpace::uniform(n, self.n_modes)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); space.dim()];
        let index = |labels: &[usize]| labels.iter().fold(0, |acc, &m| acc * self.n_modes + m);
        for (key, &a) in &self.amps {
            let labels = self.mode_list(key);
            if self.statistics == Statistics::Distinguishable {
                amps[index(&labels)] += a;
                continue;
            }
            let repeats: f64 = key.iter().map(|&k| factorial(k as usize)).product();
            let scale = a / (factorial(n) * repeats).sqrt();
            for perm in (0..n).permutations(n) {
                let sign = if self.statistics == Statistics::Fermionic && parity(&perm) {
                    -1.0
                } else {
                    1.0
                };
                let placed: Vec<usize> = perm.iter().map(|&p| labels[p]).collect();
                amps[index(&placed)] += scale * sign;
            }
        }
        StateVector::from_amplitudes(space, amps)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn parity(perm: &[usize]) -> bool {
    let inversions = perm.iter().tuple_combinations().filter(|(a, b)| a > b).count();
    inversions % 2 == 1
}

fn unit(n: usize, j: usize) -> Result<Vec<Complex64>> {
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, dim: n });
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[j] = Complex64::new(1.0, 0.0);
    Ok(v)
}

fn product(states: &[StateVector], statistics: Statistics) -> Result<FockState> {
    let Some(first) = states.first() else {
        return Err(Error::InvalidArgument("empty product".into()));
    };
    if let Some(bad) = states.iter().find(|s| s.space() != first.space()) {
        return Err(Error::DimensionMismatch(format!(
            "factor lives on a space of dimension {}, expected {}",
            bad.dim(),
            first.dim()
        )));
    }
    let mut acc = FockState::vacuum(first.dim(), statistics)?;
    for s in states {
        acc = acc.append(s.amplitudes())?;
    }
    Ok(acc)
}

/// `ψ₁ ∧ ψ₂ ∧ … ∧ ψ_n`, unnormalized.
pub fn wedge(states: &[StateVector]) -> Result<FockState> {
    product(states, Statistics::Fermionic)
}

/// Bosonic product built by successive creation, unnormalized.
pub fn symmetric_product(states: &[StateVector], n_max: Option<u16>) -> Result<FockState> {
    product(states, Statistics::Bosonic { n_max })
}

/// Ordered product without exchange symmetry.
pub fn tensor_product(states: &[StateVector]) -> Result<FockState> {
    product(states, Statistics::Distinguishable)
}

/// Basis keys of the Fock space graded by particle number; grade `k` lists
/// its keys in lexicographic order of their mode lists.
pub fn fock_space(n_modes: usize, statistics: Statistics) -> Result<Vec<Vec<Vec<u16>>>> {
    check_modes(n_modes)?;
    let to_key = |modes: Vec<usize>| {
        let mut k = vec![0u16; n_modes];
        modes.into_iter().for_each(|m| k[m] += 1);
        k
    };
    match statistics {
        Statistics::Fermionic => Ok((0..=n_modes)
            .map(|k| (0..n_modes).combinations(k).map(to_key).collect())
            .collect()),
        Statistics::Bosonic { n_max: Some(cap) } => {
            let top = n_modes * cap as usize;
            Ok((0..=top)
                .map(|k| {
                    (0..n_modes)
                        .combinations_with_replacement(k)
                        .map(to_key)
                        .filter(|key| key.iter().all(|&n| n <= cap))
                        .collect()
                })
                .collect())
        }
        Statistics::Bosonic { n_max: None } => Err(Error::InvalidArgument(
            "bosonic Fock space needs an occupation cutoff".into(),
        )),
        Statistics::Distinguishable => Err(Error::InvalidArgument(
            "distinguishable particles have no occupation grading".into(),
        )),
    }
}

/// Dimension of each particle-number sector.
pub fn grade_dims(n_modes: usize, statistics: Statistics) -> Result<Vec<u128>> {
    Ok(fock_space(n_modes, statistics)?
        .iter()
        .map(|g| g.len() as u128)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, j: usize) -> StateVector {
        StateVector::basis_index(SiteSpace::uniform(1, n).unwrap(), j).unwrap()
    }

    #[test]
    fn exchange_sign() {
        let ab = wedge(&[e(4, 0), e(4, 1)]).unwrap();
        let ba = wedge(&[e(4, 1), e(4, 0)]).unwrap();
        assert_eq!(ab.amplitude(&[1, 1, 0, 0]), Complex64::new(1.0, 0.0));
        assert_eq!(ba.amplitude(&[1, 1, 0, 0]), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn self_wedge_vanishes_symmetric_does_not() {
        let h = Complex64::new(0.6, 0.0);
        let psi = StateVector::from_amplitudes(
            SiteSpace::uniform(1, 3).unwrap(),
            vec![h, Complex64::new(0.0, 0.8), Complex64::new(0.0, 0.0)],
        )
        .unwrap();
        assert!(wedge(&[psi.clone(), psi.clone()]).unwrap().norm() < 1e-12);
        assert!(symmetric_product(&[psi.clone(), psi], None).unwrap().norm() > 0.5);
    }

    #[test]
    fn boson_cutoff() {
        let s = symmetric_product(&[e(2, 0), e(2, 0), e(2, 0)], Some(2));
        assert!(matches!(
            s,
            Err(Error::TruncationOverflow {
                occupation: 3,
                n_max: 2
            })
        ));
    }

    #[test]
    fn tensor_of_basis_is_single_pattern() {
        let t = tensor_product(&[e(3, 2), e(3, 0)]).unwrap();
        assert_eq!(t.amplitudes().len(), 1);
        assert_eq!(t.amplitude(&[2, 0]), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn grades() {
        assert_eq!(grade_dims(4, Statistics::Fermionic).unwrap(), vec![1, 4, 6, 4, 1]);
        assert_eq!(grade_dims(0, Statistics::Fermionic).unwrap(), vec![1]);
        assert_eq!(
            grade_dims(2, Statistics::Bosonic { n_max: Some(1) }).unwrap(),
            vec![1, 2, 1]
        );
        assert!(fock_space(2, Statistics::Bosonic { n_max: None }).is_err());
    }

    #[test]
    fn first_quantized_norms_match() {
        let f = wedge(&[e(3, 2), e(3, 0)]).unwrap();
        let v = f.to_first_quantized().unwrap();
        assert!((v.norm() - f.norm()).abs() < 1e-14);
        let b = symmetric_product(&[e(3, 1), e(3, 1)], None).unwrap();
        assert!((b.to_first_quantized().unwrap().norm() - b.norm()).abs() < 1e-14);
    }
}
