use crate::error::{Error, Result};
use crate::hilbert::{commutator_defect, compose, LocalOperator, SiteId};
use crate::lattice::{decode_env, LocalRule, Symbol};

use super::HistorySpace;

/// Controlled-`F` gate that reads a cell's environment on `read_layer` and
/// writes `F(env) ⊖ r` into the cell's slot `r` on `write_layer`.
///
/// Support: the written site first, then the distinct environment sites in
/// offset order. Environment offsets that wrap onto the same cell share
/// one site.
pub fn local_transition_between(
    rule: &LocalRule,
    space: &HistorySpace,
    cell: usize,
    read_layer: usize,
    write_layer: usize,
) -> Result<LocalOperator> {
    space.check_layer(read_layer)?;
    space.check_layer(write_layer)?;
    if read_layer == write_layer {
        return Err(Error::InvalidArgument("read and write layers must differ".into()));
    }
    if rule.alphabet() != space.alphabet() {
        return Err(Error::AlphabetMismatch {
            expected: space.alphabet().size(),
            found: rule.alphabet().size(),
        });
    }
    if cell >= space.cells() {
        return Err(Error::IndexOutOfRange {
            index: cell,
            dim: space.cells(),
        });
    }
    let hood = rule.neighborhoods(space.geometry())?.swap_remove(cell);
    let mut env_cells: Vec<usize> = Vec::new();
    let slot_of: Vec<usize> = hood
        .iter()
        .map(|&c| match env_cells.iter().position(|&e| e == c) {
            Some(p) => p,
            None => {
                env_cells.push(c);
                env_cells.len() - 1
            }
        })
        .collect();

    let m = space.alphabet().size();
    let alphabet = space.alphabet();
    let mut support = vec![space.site(cell, write_layer)];
    support.extend(env_cells.iter().map(|&c| space.site(c, read_layer)));
    let dims = vec![m; support.len()];
    let env_dim = m.pow(env_cells.len() as u32);

    let mut distinct = vec![0 as Symbol; env_cells.len()];
    let mut env = vec![0 as Symbol; hood.len()];
    let mut images = Vec::with_capacity(env_dim);
    for e in 0..env_dim {
        decode_env(e, m, &mut distinct);
        for (slot, &p) in env.iter_mut().zip(&slot_of) {
            *slot = distinct[p];
        }
        images.push(rule.eval(&env));
    }
    let targets = (0..m * env_dim)
        .map(|j| {
            let r = (j / env_dim) as Symbol;
            let e = j % env_dim;
            alphabet.subtract(images[e], r) as usize * env_dim + e
        })
        .collect();
    LocalOperator::permutation(support, dims, targets)
}

/// `F̂_i^(t|t+1)`: writes `F(env_i at t) ⊖ r` into `(i, t+1)`.
pub fn build_local_transition(
    rule: &LocalRule,
    space: &HistorySpace,
    cell: usize,
    layer: usize,
) -> Result<LocalOperator> {
    if layer + 1 >= space.layers() {
        return Err(Error::LayerOutOfRange {
            layer: layer + 1,
            layers: space.layers(),
        });
    }
    local_transition_between(rule, space, cell, layer, layer + 1)
}

/// Local transitions of every cell, ascending cell order.
pub fn local_transitions(rule: &LocalRule, space: &HistorySpace, layer: usize) -> Result<Vec<LocalOperator>> {
    (0..space.cells())
        .map(|c| build_local_transition(rule, space, c, layer))
        .collect()
}

/// Largest pairwise commutator defect among a family of operators.
pub fn max_pairwise_defect(ops: &[LocalOperator]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            worst = worst.max(commutator_defect(a, b)?);
        }
    }
    Ok(worst)
}

pub(crate) fn product_of_commuting(ops: &[LocalOperator]) -> Result<LocalOperator> {
    let defect = max_pairwise_defect(ops)?;
    if defect != 0.0 {
        return Err(Error::CommutationFailure { defect });
    }
    compose(ops)
}

/// Global history step `∏_i F̂_i` between layers `t` and `t+1`, supported
/// on those two layers.
///
/// On basis states it is `|K⟩|R⟩ ↦ |K⟩|F(K) ⊖ R⟩`, a permutation for every
/// rule. Pairwise commutation of the factors is verified exactly before
/// the product is formed.
pub fn global_step(rule: &LocalRule, space: &HistorySpace, layer: usize) -> Result<LocalOperator> {
    let ops = local_transitions(rule, space, layer)?;
    let product = product_of_commuting(&ops)?;
    let support = two_layer_support(space, layer, layer + 1);
    let dims = vec![space.alphabet().size(); support.len()];
    product.embed(&support, &dims)
}

/// Sites of layer `a` followed by those of layer `b`.
pub(crate) fn two_layer_support(space: &HistorySpace, a: usize, b: usize) -> Vec<SiteId> {
    let mut s = space.layer_sites(a);
    s.extend(space.layer_sites(b));
    s
}
