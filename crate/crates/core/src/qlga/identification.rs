use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{gates, LocalOperator, SiteId, SiteSpace, StateVector};
use crate::partition::basis_cloner;

use super::{FockState, QubotSpace, Statistics};

/// Site labels for a two-mode site: empty, up, down, both.
pub const SITE_LABELS: [&str; 4] = ["∅", "↑", "↓", "↕"];

/// Lattice of `n_t · n_ℓ` sites, time-major, each holding the
/// `2^{n_S}` occupation patterns of its internal modes.
pub fn qca_space(space: &QubotSpace) -> Result<SiteSpace> {
    let sites = space.time_dim() * space.lattice_dim();
    let d = 1usize
        .checked_shl(space.internal_dim() as u32)
        .ok_or_else(|| Error::InvalidArgument("internal space too large".into()))?;
    SiteSpace::new((0..sites).map(SiteId).collect(), vec![d; sites])
}

/// Site symbol of an occupation pattern, internal mode 0 as the most
/// significant bit. With two internal modes (`0 = ↓`, `1 = ↑`) this gives
/// `∅ = 0`, `↑ = 1`, `↓ = 2`, `↕ = 3`.
pub fn site_symbol(bits: &[u16]) -> usize {
    bits.iter().fold(0, |acc, &b| acc * 2 + b as usize)
}

fn check_fermionic(space: &QubotSpace, fock: &FockState) -> Result<()> {
    if fock.statistics() != Statistics::Fermionic {
        return Err(Error::InvalidArgument(
            "identification needs fermionic statistics".into(),
        ));
    }
    if fock.n_modes() != space.mode_count() {
        return Err(Error::DimensionMismatch(format!(
            "state has {} modes, qubot space has {}",
            fock.n_modes(),
            space.mode_count()
        )));
    }
    Ok(())
}

/// Relabels occupation patterns of the space-time modes as basis states of
/// the site lattice. Because modes are ordered `(t, cell, internal)`, the
/// flat index is the occupation bit string read with mode 0 first.
pub fn qlga_to_qca(space: &QubotSpace, fock: &FockState) -> Result<StateVector> {
    check_fermionic(space, fock)?;
    let target = qca_space(space)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); target.dim()];
    for (key, &a) in fock.amplitudes() {
        amps[site_symbol(key)] = a;
    }
    StateVector::from_amplitudes(target, amps)
}

/// Inverse of [`qlga_to_qca`].
pub fn qca_to_qlga(space: &QubotSpace, state: &StateVector) -> Result<FockState> {
    let expected = qca_space(space)?;
    if state.space() != &expected {
        return Err(Error::DimensionMismatch(
            "state is not on the site lattice of this qubot space".into(),
        ));
    }
    let n = space.mode_count();
    let mut out = FockState::zero(n, Statistics::Fermionic)?;
    for (index, a) in state.support() {
        let key: Vec<u16> = (0..n).map(|k| ((index >> (n - 1 - k)) & 1) as u16).collect();
        out = out.add(&FockState::basis(n, Statistics::Fermionic, &key)?.scaled(a))?;
    }
    Ok(out)
}

/// Ket label such as `|↓,∅⟩`, one symbol per site in time-major order.
pub fn ket_label(space: &QubotSpace, key: &[u16]) -> String {
    let n_s = space.internal_dim();
    let symbols: Vec<String> = key
        .chunks(n_s)
        .map(|bits| {
            let s = site_symbol(bits);
            if n_s == 2 {
                SITE_LABELS[s].to_string()
            } else {
                s.to_string()
            }
        })
        .collect();
    format!("|{}⟩", symbols.join(","))
}

/// One qubot on a single spatial site, held still for `steps` steps:
/// `Σ_t ψ at slot t`, normalized by `√(steps + 1)`.
pub fn trivial_history_state(psi: &[Complex64], steps: usize) -> Result<(QubotSpace, FockState)> {
    let space = QubotSpace::with_time(1, psi.len(), steps + 1)?;
    let n = space.mode_count();
    let mut amps = vec![Complex64::new(0.0, 0.0); n];
    for t in 0..=steps {
        for (s, &c) in psi.iter().enumerate() {
            amps[space.mode(t, 0, s)] = c;
        }
    }
    let scale = Complex64::new(1.0 / ((steps + 1) as f64).sqrt(), 0.0);
    let fock = FockState::vacuum(n, Statistics::Fermionic)?
        .append(&amps)?
        .scaled(scale);
    Ok((space, fock))
}

/// `|ψ⟩|0⟩^{T} ↦ |0⟩|ψ⟩|0⟩^{T-1}` on slots of dimension `d`: the swap of
/// slots 0 and 1.
pub fn erasure_map(d: usize) -> Result<LocalOperator> {
    gates::swap(SiteId(0), SiteId(1), d)
}

/// `|⟨ψ ⊗ ψ | C (ψ ⊗ 0)⟩|` for `ψ = α|0⟩ + β|1⟩` and the linear basis
/// cloner `C`; equals 1 only when `αβ = 0`.
pub fn basis_clone_overlap(alpha: Complex64, beta: Complex64) -> Result<f64> {
    let slot = SiteSpace::new(vec![SiteId(0)], vec![2])?;
    let psi = StateVector::from_amplitudes(slot.clone(), vec![alpha, beta])?.normalized();
    let blank = StateVector::basis(SiteSpace::new(vec![SiteId(1)], vec![2])?, &[0])?;
    let copy = StateVector::from_amplitudes(SiteSpace::new(vec![SiteId(1)], vec![2])?, psi.amplitudes().to_vec())?;
    let cloned = basis_cloner(SiteId(1), SiteId(0), 2)?.apply(&psi.tensor(&blank)?)?;
    Ok(psi.tensor(&copy)?.inner(&cloned)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn up_at_first_slot() {
        let space = QubotSpace::with_time(1, 2, 2).unwrap();
        let f = FockState::occupied(4, &[space.mode(0, 0, 1)]).unwrap();
        let v = qlga_to_qca(&space, &f).unwrap();
        assert_eq!(v.as_basis().unwrap().0, 4);
        assert_eq!(ket_label(&space, f.amplitudes().keys().next().unwrap()), "|↑,∅⟩");
    }

    #[test]
    fn vacuum_is_empty_sites() {
        let space = QubotSpace::with_time(1, 2, 2).unwrap();
        let v = qlga_to_qca(&space, &FockState::vacuum(4, Statistics::Fermionic).unwrap()).unwrap();
        assert_eq!(v.as_basis().unwrap().0, 0);
    }

    #[test]
    fn round_trip() {
        let space = QubotSpace::with_time(2, 2, 2).unwrap();
        let f = FockState::occupied(8, &[1, 4, 6])
            .unwrap()
            .scaled(Complex64::new(0.0, 1.0));
        let back = qca_to_qlga(&space, &qlga_to_qca(&space, &f).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn clone_overlap_equal_weights() {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let o = basis_clone_overlap(h, h).unwrap();
        assert!((o - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((basis_clone_overlap(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
    }
}
