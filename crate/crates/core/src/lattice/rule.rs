use serde::{Deserialize, Serialize};

use super::{CellAlphabet, LatticeGeometry, Symbol};
use crate::error::{Error, Result};

/// A classical local transition function `F: S^k -> S` together with the
/// relative offsets of the neighborhood it reads.
///
/// The table is flat and indexed in mixed radix over the environment
/// symbols, offsets in declaration order with the last offset varying
/// fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalRule {
    alphabet: CellAlphabet,
    offsets: Vec<Vec<i64>>,
    table: Vec<Symbol>,
}

impl LocalRule {
    pub fn new(alphabet: CellAlphabet, offsets: Vec<Vec<i64>>, table: Vec<Symbol>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::InvalidArgument("a rule needs at least one offset".into()));
        }
        let rank = offsets[0].len();
        if rank == 0 || offsets.iter().any(|o| o.len() != rank) {
            return Err(Error::GeometryMismatch(
                "all offsets must share one nonzero rank".into(),
            ));
        }
        let expected = table_len(alphabet.size(), offsets.len())?;
        if table.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "rule table has {} entries, expected m^k = {expected}",
                table.len()
            )));
        }
        for &s in &table {
            alphabet.check(s)?;
        }
        Ok(Self {
            alphabet,
            offsets,
            table,
        })
    }

    /// Builds the table by evaluating `f` on every environment.
    pub fn from_fn(alphabet: CellAlphabet, offsets: Vec<Vec<i64>>, f: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        let k = offsets.len();
        let len = table_len(alphabet.size(), k)?;
        let mut env = vec![0; k];
        let table = (0..len)
            .map(|idx| {
                decode_env(idx, alphabet.size(), &mut env);
                f(&env)
            })
            .collect();
        Self::new(alphabet, offsets, table)
    }

    pub fn alphabet(&self) -> CellAlphabet {
        self.alphabet
    }

    /// Neighborhood size `k`.
    pub fn arity(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[Vec<i64>] {
        &self.offsets
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    pub fn env_index(&self, env: &[Symbol]) -> usize {
        let m = self.alphabet.size();
        env.iter().fold(0, |acc, &s| acc * m + s as usize)
    }

    /// `F(s_1, .., s_k)`.
    #[inline]
    pub fn eval(&self, env: &[Symbol]) -> Symbol {
        self.table[self.env_index(env)]
    }

    pub fn eval_index(&self, index: usize) -> Symbol {
        self.table[index]
    }

    /// For every cell, the wrapped cells of its environment in offset
    /// order.
    pub fn neighborhoods(&self, geometry: &LatticeGeometry) -> Result<Vec<Vec<usize>>> {
        if geometry.rank() != self.offsets[0].len() {
            return Err(Error::GeometryMismatch(format!(
                "rule offsets have rank {}, lattice has rank {}",
                self.offsets[0].len(),
                geometry.rank()
            )));
        }
        Ok((0..geometry.cell_count())
            .map(|cell| self.offsets.iter().map(|o| geometry.neighbor(cell, o)).collect())
            .collect())
    }

    /// Whether every output is zero.
    pub fn is_constant_zero(&self) -> bool {
        self.table.iter().all(|&s| s == 0)
    }
}

fn table_len(m: usize, k: usize) -> Result<usize> {
    let len = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    const CAP: u128 = 1 << 24;
    if len > CAP {
        return Err(Error::CapExceeded {
            what: "rule table",
            dim: len,
            cap: CAP,
        });
    }
    Ok(len as usize)
}

pub(crate) fn decode_env(mut index: usize, m: usize, env: &mut [Symbol]) {
    for slot in env.iter_mut().rev() {
        *slot = (index % m) as Symbol;
        index /= m;
    }
}

/// Wolfram-numbered elementary rule on a ring: `m = 2`, offsets
/// `(-1, 0, +1)`, `F(a, b, c)` is bit `4a + 2b + c` of the number.
pub fn elementary_rule(number: u32) -> Result<LocalRule> {
    if number > 255 {
        return Err(Error::RuleNumberOutOfRange(number));
    }
    let table = (0..8).map(|i| ((number >> i) & 1) as Symbol).collect();
    LocalRule::new(CellAlphabet::binary(), vec![vec![-1], vec![0], vec![1]], table)
}

/// Moore neighborhood offsets on a 2D torus, row-major, center at index 4.
pub fn moore_offsets() -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(9);
    for dr in -1..=1 {
        for dc in -1..=1 {
            out.push(vec![dr, dc]);
        }
    }
    out
}

/// Conway's Game of Life (B3/S23) as a 9-cell Moore rule.
pub fn game_of_life() -> LocalRule {
    LocalRule::from_fn(CellAlphabet::binary(), moore_offsets(), |env| {
        let center = env[4];
        let others: u32 = env
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != 4)
            .map(|(_, &s)| s as u32)
            .sum();
        match (center, others) {
            (_, 3) => 1,
            (1, 2) => 1,
            _ => 0,
        }
    })
    .expect("Moore table is well formed")
}

/// The self-inverse lifting `(y, env) ↦ (F(env) ⊖ y, env)` of a rule onto
/// `S^{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversibleRule {
    base: LocalRule,
}

impl ReversibleRule {
    pub fn base(&self) -> &LocalRule {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.base.arity() + 1
    }

    /// Maps `(y, env)`; input slice is `[y, s_1, .., s_k]`.
    pub fn apply(&self, input: &[Symbol]) -> Result<Vec<Symbol>> {
        if input.len() != self.arity() {
            return Err(Error::DimensionMismatch(format!(
                "lifted rule takes {} symbols, got {}",
                self.arity(),
                input.len()
            )));
        }
        let alphabet = self.base.alphabet();
        for &s in input {
            alphabet.check(s)?;
        }
        let mut out = input.to_vec();
        out[0] = alphabet.subtract(self.base.eval(&input[1..]), input[0]);
        Ok(out)
    }

    /// Applies the map to a flat index of `S^{k+1}` (`y` most significant).
    pub fn apply_index(&self, index: usize) -> usize {
        let m = self.base.alphabet().size();
        let env_len = self.base.table().len();
        let y = (index / env_len) as Symbol;
        let env = index % env_len;
        let f = self.base.eval_index(env);
        let y2 = self.base.alphabet().subtract(f, y) as usize;
        debug_assert!(y2 < m);
        y2 * env_len + env
    }
}

pub fn lift_reversible(rule: &LocalRule) -> ReversibleRule {
    ReversibleRule { base: rule.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_tables() {
        let r170 = elementary_rule(170).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    assert_eq!(r170.eval(&[a, b, c]), c);
                }
            }
        }
        assert!(elementary_rule(0).unwrap().is_constant_zero());
        let r110 = elementary_rule(110).unwrap();
        assert_eq!(r110.eval(&[1, 1, 1]), 0);
        assert_eq!(r110.eval(&[1, 1, 0]), 1);
        assert_eq!(r110.table(), &[0, 1, 1, 1, 0, 1, 1, 0]);
        assert_eq!(elementary_rule(256), Err(Error::RuleNumberOutOfRange(256)));
    }

    #[test]
    fn lifted_rule_examples() {
        let lifted = lift_reversible(&elementary_rule(110).unwrap());
        assert_eq!(lifted.apply(&[1, 1, 1, 0]).unwrap(), vec![0, 1, 1, 0]);
        let f = elementary_rule(30).unwrap();
        let lifted = lift_reversible(&f);
        for env in 0..8usize {
            let e = [(env >> 2) as u8 & 1, (env >> 1) as u8 & 1, env as u8 & 1];
            let out = lifted.apply(&[0, e[0], e[1], e[2]]).unwrap();
            assert_eq!(out, vec![f.eval(&e), e[0], e[1], e[2]]);
        }
    }

    #[test]
    fn lifted_rule_is_involution_exhaustively() {
        for number in 0..=255 {
            let lifted = lift_reversible(&elementary_rule(number).unwrap());
            for idx in 0..16 {
                assert_eq!(lifted.apply_index(lifted.apply_index(idx)), idx);
            }
        }
        let life = lift_reversible(&game_of_life());
        for idx in 0..(1 << 10) {
            assert_eq!(life.apply_index(life.apply_index(idx)), idx);
        }
        // m = 3, k = 3 with a nontrivial table; 3^4 inputs
        let alphabet = CellAlphabet::modular(3).unwrap();
        let rule = LocalRule::from_fn(alphabet, vec![vec![-1], vec![0], vec![1]], |e| {
            ((e[0] as usize * 2 + e[1] as usize + e[2] as usize * e[0] as usize) % 3) as Symbol
        })
        .unwrap();
        let lifted = lift_reversible(&rule);
        for idx in 0..81 {
            assert_eq!(lifted.apply_index(lifted.apply_index(idx)), idx);
        }
    }

    #[test]
    fn life_table_semantics() {
        let life = game_of_life();
        let mut env = [0u8; 9];
        env[0] = 1;
        env[1] = 1;
        env[2] = 1;
        assert_eq!(life.eval(&env), 1, "birth with three neighbors");
        env[4] = 1;
        assert_eq!(life.eval(&env), 1, "survival with three");
        env[0] = 0;
        assert_eq!(life.eval(&env), 1, "survival with two");
        env[1] = 0;
        assert_eq!(life.eval(&env), 0, "dies with one");
    }

    #[test]
    fn table_size_checked() {
        let alphabet = CellAlphabet::binary();
        assert!(LocalRule::new(alphabet, vec![vec![0]], vec![0, 1, 0]).is_err());
        assert!(LocalRule::new(alphabet, vec![vec![0]], vec![0, 2]).is_err());
    }
}
