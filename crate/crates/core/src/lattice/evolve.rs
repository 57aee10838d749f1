use super::{Configuration, LocalRule, Symbol};
use crate::error::{Error, Result};

fn check_rule(config: &Configuration, rule: &LocalRule) -> Result<Vec<Vec<usize>>> {
    if config.alphabet() != rule.alphabet() {
        return Err(Error::AlphabetMismatch {
            expected: rule.alphabet().size(),
            found: config.alphabet().size(),
        });
    }
    rule.neighborhoods(config.geometry())
}

fn images(config: &Configuration, rule: &LocalRule, hoods: &[Vec<usize>]) -> Vec<Symbol> {
    let mut env = vec![0; rule.arity()];
    hoods
        .iter()
        .map(|hood| {
            for (slot, &c) in env.iter_mut().zip(hood) {
                *slot = config.get(c);
            }
            rule.eval(&env)
        })
        .collect()
}

/// Synchronous update `s_i' = F(env_i(s))` of every cell.
pub fn apply_rule(config: &Configuration, rule: &LocalRule) -> Result<Configuration> {
    let hoods = check_rule(config, rule)?;
    config.with_cells(images(config, rule, &hoods))
}

/// Second-order step: `next_i = F(env_i(curr)) ⊖ prev_i`.
///
/// The pair map `(prev, curr) ↦ (curr, next)` is a bijection for any `F`;
/// feeding `(next, curr)` back in walks the orbit backwards.
pub fn second_order_step(prev: &Configuration, curr: &Configuration, rule: &LocalRule) -> Result<Configuration> {
    prev.ensure_compatible(curr)?;
    let hoods = check_rule(curr, rule)?;
    let f = images(curr, rule, &hoods);
    curr.with_cells(rule.alphabet().subtract_cells(&f, prev.cells()))
}

/// Runs `steps` second-order updates, returning the final `(prev, curr)`.
pub fn run_second_order(
    prev: &Configuration,
    curr: &Configuration,
    rule: &LocalRule,
    steps: usize,
) -> Result<(Configuration, Configuration)> {
    let mut pair = (prev.clone(), curr.clone());
    for _ in 0..steps {
        let next = second_order_step(&pair.0, &pair.1, rule)?;
        pair = (pair.1, next);
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{elementary_rule, game_of_life, CellAlphabet, LatticeGeometry};

    fn ring(bits: &str) -> Configuration {
        let cells = bits.bytes().map(|b| b - b'0').collect::<Vec<_>>();
        Configuration::new(
            LatticeGeometry::ring(cells.len()).unwrap(),
            CellAlphabet::binary(),
            cells,
        )
        .unwrap()
    }

    #[test]
    fn blinker_flips() {
        let g = LatticeGeometry::torus(5, 5).unwrap();
        let vertical =
            Configuration::with_live_cells(g.clone(), &[g.cell_at(&[1, 2]), g.cell_at(&[2, 2]), g.cell_at(&[3, 2])])
                .unwrap();
        let next = apply_rule(&vertical, &game_of_life()).unwrap();
        let horizontal = vec![g.cell_at(&[2, 1]), g.cell_at(&[2, 2]), g.cell_at(&[2, 3])];
        assert_eq!(next.live_cells(), horizontal);
        assert_eq!(vertical.live_cells().len(), 3, "input untouched");
    }

    #[test]
    fn constant_rule_zeroes() {
        let c = ring("10111");
        let next = apply_rule(&c, &elementary_rule(0).unwrap()).unwrap();
        assert_eq!(next.cells(), &[0, 0, 0, 0, 0]);
    }

    #[test]
    fn rule_110_on_ring_of_five() {
        let next = apply_rule(&ring("00010"), &elementary_rule(110).unwrap()).unwrap();
        assert_eq!(next, ring("00110"));
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let c = Configuration::zeros(LatticeGeometry::ring(3).unwrap(), CellAlphabet::modular(3).unwrap());
        assert!(matches!(
            apply_rule(&c, &elementary_rule(1).unwrap()),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn second_order_from_zero_prev_is_plain_step() {
        let rule = elementary_rule(110).unwrap();
        let curr = ring("01101");
        let prev = ring("00000");
        assert_eq!(
            second_order_step(&prev, &curr, &rule).unwrap(),
            apply_rule(&curr, &rule).unwrap()
        );
    }

    #[test]
    fn second_order_time_reversal() {
        let rule = elementary_rule(30).unwrap();
        let (p0, c0) = (ring("1001011"), ring("0110010"));
        let (p, c) = run_second_order(&p0, &c0, &rule, 17).unwrap();
        let (p_back, c_back) = run_second_order(&c, &p, &rule, 17).unwrap();
        assert_eq!((p_back, c_back), (c0, p0));
    }
}
