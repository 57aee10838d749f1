use crate::error::{Error, Result};
use crate::hilbert::{compose, LocalOperator};
use crate::lattice::LocalRule;

use super::transition::{local_transition_between, product_of_commuting, two_layer_support};
use super::{GlobalClassicalMap, HistorySpace};

fn check_map(fe: &GlobalClassicalMap, space: &HistorySpace) -> Result<()> {
    if fe.geometry() != space.geometry() || fe.alphabet() != space.alphabet() {
        return Err(Error::GeometryMismatch(
            "global map does not match the history space".into(),
        ));
    }
    if !fe.is_bijective() {
        return Err(Error::NotBijective);
    }
    Ok(())
}

fn pair_operator(
    space: &HistorySpace,
    t: usize,
    map: impl Fn(usize, usize) -> (usize, usize),
) -> Result<LocalOperator> {
    space.check_layer(t)?;
    space.check_layer(t + 1)?;
    let ld = space.layer_dim();
    let support = two_layer_support(space, t, t + 1);
    let dims = vec![space.alphabet().size(); support.len()];
    let targets = (0..ld * ld)
        .map(|j| {
            let (a, b) = map(j / ld, j % ld);
            a * ld + b
        })
        .collect();
    LocalOperator::permutation(support, dims, targets)
}

/// `|K⟩|R⟩ ↦ |R⟩|F_e(K)⟩` on layers `t, t+1`.
pub fn swap_scheme_step(fe: &GlobalClassicalMap, space: &HistorySpace, t: usize) -> Result<LocalOperator> {
    check_map(fe, space)?;
    pair_operator(space, t, |k, r| (r, fe.forward_index(k)))
}

/// `|K⟩|R⟩ ↦ |F⁻¹(R) ⊖ K⟩|R⟩`; undoes the copy left in layer `t` by the
/// global step.
pub fn disentangler(fe: &GlobalClassicalMap, space: &HistorySpace, t: usize) -> Result<LocalOperator> {
    check_map(fe, space)?;
    pair_operator(space, t, |k, r| {
        let inv = fe.inverse_index(r).expect("bijective map");
        (fe.subtract_index(inv, k), r)
    })
}

/// Exchanges layers `t` and `t+1`.
pub fn layer_swap(space: &HistorySpace, t: usize) -> Result<LocalOperator> {
    pair_operator(space, t, |a, b| (b, a))
}

/// One step of the second-order scheme on a two-layer space holding
/// `(previous, current)`: `(P, C) ↦ (C, F(C) ⊖ P)`.
///
/// Built from cell-local writers that read layer 1 and write layer 0,
/// followed by the layer swap.
pub fn cyclic_time_step(rule: &LocalRule, space: &HistorySpace) -> Result<LocalOperator> {
    if space.layers() != 2 {
        return Err(Error::InvalidArgument(format!(
            "cyclic step needs two layers, got {}",
            space.layers()
        )));
    }
    let writers = (0..space.cells())
        .map(|c| local_transition_between(rule, space, c, 1, 0))
        .collect::<Result<Vec<_>>>()?;
    let write = product_of_commuting(&writers)?;
    let support = two_layer_support(space, 0, 1);
    let dims = vec![space.alphabet().size(); support.len()];
    compose(&[layer_swap(space, 0)?, write.embed(&support, &dims)?])
}
