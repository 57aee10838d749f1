use serde::{Deserialize, Serialize};

use super::{CellAlphabet, LatticeGeometry, Symbol};
use crate::error::{Error, Result};

/// One time slice of a cellular automaton: a symbol for every cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    geometry: LatticeGeometry,
    alphabet: CellAlphabet,
    cells: Vec<Symbol>,
}

impl Configuration {
    pub fn new(geometry: LatticeGeometry, alphabet: CellAlphabet, cells: Vec<Symbol>) -> Result<Self> {
        if cells.len() != geometry.cell_count() {
            return Err(Error::GeometryMismatch(format!(
                "{} cells given for a lattice of {}",
                cells.len(),
                geometry.cell_count()
            )));
        }
        for &s in &cells {
            alphabet.check(s)?;
        }
        Ok(Self {
            geometry,
            alphabet,
            cells,
        })
    }

    pub fn zeros(geometry: LatticeGeometry, alphabet: CellAlphabet) -> Self {
        let cells = vec![0; geometry.cell_count()];
        Self {
            geometry,
            alphabet,
            cells,
        }
    }

    /// Binary configuration with the listed cells set to 1.
    pub fn with_live_cells(geometry: LatticeGeometry, live: &[usize]) -> Result<Self> {
        let mut cells = vec![0; geometry.cell_count()];
        for &c in live {
            let slot = cells.get_mut(c).ok_or(Error::IndexOutOfRange {
                index: c,
                dim: geometry.cell_count(),
            })?;
            *slot = 1;
        }
        Self::new(geometry, CellAlphabet::binary(), cells)
    }

    /// Decodes a flat configuration index (cell 0 most significant).
    pub fn from_index(geometry: LatticeGeometry, alphabet: CellAlphabet, mut index: usize) -> Self {
        let m = alphabet.size();
        let mut cells = vec![0; geometry.cell_count()];
        for c in cells.iter_mut().rev() {
            *c = (index % m) as Symbol;
            index /= m;
        }
        Self {
            geometry,
            alphabet,
            cells,
        }
    }

    /// Flat index with cell 0 most significant, matching the layer block
    /// ordering of history spaces.
    pub fn index(&self) -> usize {
        let m = self.alphabet.size();
        self.cells.iter().fold(0, |acc, &s| acc * m + s as usize)
    }

    pub fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    pub fn alphabet(&self) -> CellAlphabet {
        self.alphabet
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn get(&self, cell: usize) -> Symbol {
        self.cells[cell]
    }

    pub fn with_cells(&self, cells: Vec<Symbol>) -> Result<Self> {
        Self::new(self.geometry.clone(), self.alphabet, cells)
    }

    pub(crate) fn ensure_compatible(&self, other: &Configuration) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.size(),
                found: other.alphabet.size(),
            });
        }
        if self.geometry != other.geometry {
            return Err(Error::GeometryMismatch(format!(
                "{:?} vs {:?}",
                self.geometry.dims(),
                other.geometry.dims()
            )));
        }
        Ok(())
    }

    /// Cells holding a nonzero symbol.
    pub fn live_cells(&self) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, _)| i)
            .collect()
    }
}
