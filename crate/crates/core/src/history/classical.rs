use crate::error::{Error, Result};
use crate::lattice::{apply_rule, CellAlphabet, Configuration, LatticeGeometry, LocalRule};

/// Largest configuration count that is tabulated.
pub const GLOBAL_MAP_CAP: usize = 1 << 20;

/// The induced global function `S^l → S^l` of a local rule, tabulated over
/// every configuration, with its inverse when it is a bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalClassicalMap {
    geometry: LatticeGeometry,
    alphabet: CellAlphabet,
    forward: Vec<u32>,
    inverse: Option<Vec<u32>>,
}

impl GlobalClassicalMap {
    pub fn new(rule: &LocalRule, geometry: &LatticeGeometry) -> Result<Self> {
        let alphabet = rule.alphabet();
        let n = (alphabet.size() as u128).saturating_pow(geometry.cell_count() as u32);
        if n > GLOBAL_MAP_CAP as u128 {
            return Err(Error::CapExceeded {
                what: "global map table",
                dim: n,
                cap: GLOBAL_MAP_CAP as u128,
            });
        }
        let hoods = rule.neighborhoods(geometry)?;
        let mut env = vec![0; rule.arity()];
        let forward: Vec<u32> = (0..n as usize)
            .map(|i| {
                let k = Configuration::from_index(geometry.clone(), alphabet, i);
                let m = alphabet.size();
                hoods.iter().fold(0u32, |acc, hood| {
                    for (slot, &c) in env.iter_mut().zip(hood) {
                        *slot = k.get(c);
                    }
                    acc * m as u32 + rule.eval(&env) as u32
                })
            })
            .collect();
        Ok(Self::from_table(geometry.clone(), alphabet, forward))
    }

    fn from_table(geometry: LatticeGeometry, alphabet: CellAlphabet, forward: Vec<u32>) -> Self {
        let mut inverse = vec![u32::MAX; forward.len()];
        let mut bijective = true;
        for (i, &f) in forward.iter().enumerate() {
            if inverse[f as usize] != u32::MAX {
                bijective = false;
                break;
            }
            inverse[f as usize] = i as u32;
        }
        Self {
            geometry,
            alphabet,
            forward,
            inverse: bijective.then_some(inverse),
        }
    }

    pub fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    pub fn alphabet(&self) -> CellAlphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn forward_index(&self, index: usize) -> usize {
        self.forward[index] as usize
    }

    pub fn inverse_index(&self, index: usize) -> Option<usize> {
        self.inverse.as_ref().map(|inv| inv[index] as usize)
    }

    pub fn apply(&self, config: &Configuration) -> Configuration {
        Configuration::from_index(self.geometry.clone(), self.alphabet, self.forward_index(config.index()))
    }

    pub fn invert(&self, config: &Configuration) -> Result<Configuration> {
        let idx = self.inverse_index(config.index()).ok_or(Error::NotBijective)?;
        Ok(Configuration::from_index(self.geometry.clone(), self.alphabet, idx))
    }

    /// Cellwise `a ⊖ b` on configuration indices.
    pub fn subtract_index(&self, a: usize, b: usize) -> usize {
        let l = self.geometry.cell_count();
        let ca = Configuration::from_index(self.geometry.clone(), self.alphabet, a);
        let cb = Configuration::from_index(self.geometry.clone(), self.alphabet, b);
        let cells = self.alphabet.subtract_cells(ca.cells(), cb.cells());
        debug_assert_eq!(cells.len(), l);
        cells.iter().fold(0, |acc, &s| acc * self.alphabet.size() + s as usize)
    }

    /// Cross-checks one entry against direct rule application.
    pub fn agrees_with_rule(&self, rule: &LocalRule, config: &Configuration) -> Result<bool> {
        Ok(apply_rule(config, rule)? == self.apply(config))
    }
}
