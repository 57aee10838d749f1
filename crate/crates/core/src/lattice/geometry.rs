use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite periodic lattice (torus). Cells are numbered in mixed radix
/// over `dims` with the last dimension fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeGeometry {
    dims: Vec<usize>,
}

impl LatticeGeometry {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::GeometryMismatch(format!(
                "lattice sides must be positive and at least one dimension is needed, got {dims:?}"
            )));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::GeometryMismatch("cell count overflows".into()))?;
        Ok(Self { dims })
    }

    pub fn ring(l: usize) -> Result<Self> {
        Self::new(vec![l])
    }

    pub fn torus(rows: usize, cols: usize) -> Result<Self> {
        Self::new(vec![rows, cols])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    /// Number of cells `l`.
    pub fn cell_count(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn coords(&self, mut cell: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = cell % d;
            cell /= d;
        }
        out
    }

    pub fn cell_at(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.dims).fold(0, |acc, (&c, &d)| acc * d + c % d)
    }

    /// The cell reached from `cell` by a relative offset, wrapping around
    /// every side.
    pub fn neighbor(&self, cell: usize, offset: &[i64]) -> usize {
        let coords = self.coords(cell);
        let wrapped: Vec<usize> = coords
            .iter()
            .zip(offset)
            .zip(&self.dims)
            .map(|((&c, &o), &d)| (c as i64 + o).rem_euclid(d as i64) as usize)
            .collect();
        self.cell_at(&wrapped)
    }
}
