use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single cell symbol. Alphabets are capped at 256 states.
pub type Symbol = u8;

/// How the "subtracting" operation `a ⊖ b` is realized on the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubtractKind {
    /// `a ⊖ b = (a - b) mod m`.
    ModM,
    /// `a ⊖ b = a XOR b`; only for power-of-two alphabets.
    XorBits,
}

/// The state set `S = {0, .., m-1}` of a cell together with its `⊖`.
///
/// Both kinds satisfy `a ⊖ 0 = a` and `a ⊖ (a ⊖ b) = b`, which is all the
/// reversible lifting needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellAlphabet {
    m: usize,
    kind: SubtractKind,
}

impl CellAlphabet {
    pub fn new(m: usize, kind: SubtractKind) -> Result<Self> {
        if m == 0 || m > 256 {
            return Err(Error::InvalidAlphabet(format!(
                "alphabet size must be in 1..=256, got {m}"
            )));
        }
        if kind == SubtractKind::XorBits && !m.is_power_of_two() {
            return Err(Error::InvalidAlphabet(format!(
                "XOR subtraction needs a power-of-two alphabet, got {m}"
            )));
        }
        Ok(Self { m, kind })
    }

    /// Alphabet of size `m` with modular subtraction.
    pub fn modular(m: usize) -> Result<Self> {
        Self::new(m, SubtractKind::ModM)
    }

    pub fn binary() -> Self {
        Self {
            m: 2,
            kind: SubtractKind::ModM,
        }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> SubtractKind {
        self.kind
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.m
    }

    pub fn check(&self, s: Symbol) -> Result<Symbol> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                m: self.m,
            })
        }
    }

    /// `a ⊖ b`. Inputs must already lie in the alphabet.
    #[inline]
    pub fn subtract(&self, a: Symbol, b: Symbol) -> Symbol {
        match self.kind {
            SubtractKind::ModM => ((a as usize + self.m - b as usize) % self.m) as Symbol,
            SubtractKind::XorBits => a ^ b,
        }
    }

    /// Cellwise `⊖` over two configurations' symbol vectors.
    pub fn subtract_cells(&self, a: &[Symbol], b: &[Symbol]) -> Vec<Symbol> {
        a.iter().zip(b).map(|(&x, &y)| self.subtract(x, y)).collect()
    }
}

impl Default for CellAlphabet {
    fn default() -> Self {
        Self::binary()
    }
}
