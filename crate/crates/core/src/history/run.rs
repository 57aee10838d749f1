use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{StateVector, NORM_TOL};
use crate::lattice::{apply_rule, Configuration, LocalRule};

use super::transition::global_step;
use super::{GlobalClassicalMap, HistorySpace, GLOBAL_MAP_CAP};

fn check_input(space: &HistorySpace, initial: &StateVector) -> Result<()> {
    if initial.space() != space.space() {
        return Err(Error::DimensionMismatch(
            "initial state does not live on the history space".into(),
        ));
    }
    if (initial.norm() - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidArgument(format!(
            "initial state has norm {}",
            initial.norm()
        )));
    }
    Ok(())
}

/// Applies the global step for every layer pair `t = 0 … T-2`.
///
/// Each step permutes basis states, so amplitudes are moved along a
/// tabulated classical map when one fits; otherwise the operators are
/// built and applied.
pub fn run_history(rule: &LocalRule, space: &HistorySpace, initial: &StateVector) -> Result<StateVector> {
    check_input(space, initial)?;
    if space.layer_dim() > GLOBAL_MAP_CAP {
        return run_history_dense(rule, space, initial);
    }
    let map = GlobalClassicalMap::new(rule, space.geometry())?;
    let ld = space.layer_dim();
    let layers = space.layers();
    let mut out = vec![Complex64::new(0.0, 0.0); space.dim()];
    let mut digits = vec![0usize; layers];
    for (index, a) in initial.support() {
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = rest % ld;
            rest /= ld;
        }
        for t in 0..layers - 1 {
            digits[t + 1] = map.subtract_index(map.forward_index(digits[t]), digits[t + 1]);
        }
        let target = digits.iter().fold(0, |acc, &d| acc * ld + d);
        out[target] += a;
    }
    StateVector::from_amplitudes(space.space().clone(), out)
}

/// Classical fast path for a basis input `|K⟩ ⊗ |0…0⟩`: the layer
/// configurations of the output basis state, which is the orbit of `K`.
pub fn run_history_basis(
    rule: &LocalRule,
    space: &HistorySpace,
    initial: &Configuration,
) -> Result<Vec<Configuration>> {
    if initial.geometry() != space.geometry() || initial.alphabet() != space.alphabet() {
        return Err(Error::GeometryMismatch(
            "layer configuration does not fit the history".into(),
        ));
    }
    let mut layers = vec![initial.clone()];
    for _ in 1..space.layers() {
        let next = apply_rule(layers.last().expect("non-empty"), rule)?;
        layers.push(next);
    }
    Ok(layers)
}

/// Reference runner that builds every global step operator.
pub fn run_history_dense(rule: &LocalRule, space: &HistorySpace, initial: &StateVector) -> Result<StateVector> {
    check_input(space, initial)?;
    let mut state = initial.clone();
    for t in 0..space.layers() - 1 {
        state = global_step(rule, space, t)?.apply(&state)?;
    }
    Ok(state)
}
