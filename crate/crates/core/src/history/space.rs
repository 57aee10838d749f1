use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{SiteId, SiteSpace, StateVector};
use crate::lattice::{CellAlphabet, Configuration, LatticeGeometry};

/// The space-time tensor product `⊗_t H_L^(t)` over `T` time layers.
///
/// Sites are ordered time-major: site `(cell, t)` has id `t * l + cell`, so
/// every layer is a contiguous block of digits with cell 0 most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistorySpace {
    geometry: LatticeGeometry,
    alphabet: CellAlphabet,
    layers: usize,
    space: SiteSpace,
}

impl HistorySpace {
    pub fn new(geometry: LatticeGeometry, alphabet: CellAlphabet, layers: usize) -> Result<Self> {
        if layers == 0 {
            return Err(Error::InvalidArgument("a history needs at least one layer".into()));
        }
        let n = geometry.cell_count() * layers;
        let space = SiteSpace::new((0..n).map(SiteId).collect(), vec![alphabet.size(); n])?;
        Ok(Self {
            geometry,
            alphabet,
            layers,
            space,
        })
    }

    pub fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    pub fn alphabet(&self) -> CellAlphabet {
        self.alphabet
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn cells(&self) -> usize {
        self.geometry.cell_count()
    }

    pub fn space(&self) -> &SiteSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Number of basis states of one layer, `m^l`.
    pub fn layer_dim(&self) -> usize {
        self.alphabet.size().pow(self.cells() as u32)
    }

    pub fn site(&self, cell: usize, layer: usize) -> SiteId {
        SiteId(layer * self.cells() + cell)
    }

    pub fn check_layer(&self, layer: usize) -> Result<()> {
        if layer >= self.layers {
            return Err(Error::LayerOutOfRange {
                layer,
                layers: self.layers,
            });
        }
        Ok(())
    }

    pub fn layer_sites(&self, layer: usize) -> Vec<SiteId> {
        (0..self.cells()).map(|c| self.site(c, layer)).collect()
    }

    /// Space of a single layer with that layer's site ids.
    pub fn layer_space(&self, layer: usize) -> Result<SiteSpace> {
        self.check_layer(layer)?;
        SiteSpace::new(self.layer_sites(layer), vec![self.alphabet.size(); self.cells()])
    }

    /// Flat index of a basis state given one configuration per layer.
    pub fn index_of(&self, layers: &[Configuration]) -> Result<usize> {
        if layers.len() != self.layers {
            return Err(Error::DimensionMismatch(format!(
                "{} layers given, space has {}",
                layers.len(),
                self.layers
            )));
        }
        let ld = self.layer_dim();
        layers.iter().try_fold(0usize, |acc, c| {
            if c.geometry() != &self.geometry || c.alphabet() != self.alphabet {
                return Err(Error::GeometryMismatch(
                    "layer configuration does not fit the history".into(),
                ));
            }
            Ok(acc * ld + c.index())
        })
    }

    /// Splits a flat index into per-layer configurations.
    pub fn configurations_of(&self, mut index: usize) -> Vec<Configuration> {
        let ld = self.layer_dim();
        let mut out = Vec::with_capacity(self.layers);
        for _ in 0..self.layers {
            out.push(index % ld);
            index /= ld;
        }
        out.reverse();
        out.into_iter()
            .map(|i| Configuration::from_index(self.geometry.clone(), self.alphabet, i))
            .collect()
    }

    /// `|K⟩ ⊗ |0⟩ ⊗ … ⊗ |0⟩`.
    pub fn initial_basis(&self, config: &Configuration) -> Result<StateVector> {
        let mut layers = vec![Configuration::zeros(self.geometry.clone(), self.alphabet); self.layers];
        layers[0] = config.clone();
        StateVector::basis_index(self.space.clone(), self.index_of(&layers)?)
    }

    /// `Σ_K c_K |K⟩ ⊗ |0⟩ ⊗ … ⊗ |0⟩` from a superposition of first-layer
    /// configurations.
    pub fn initial_superposition(&self, terms: &[(Complex64, Configuration)]) -> Result<StateVector> {
        let mut state = StateVector::zeros(self.space.clone());
        let stride = self.dim() / self.layer_dim();
        for (c, k) in terms {
            if k.geometry() != &self.geometry || k.alphabet() != self.alphabet {
                return Err(Error::GeometryMismatch(
                    "layer configuration does not fit the history".into(),
                ));
            }
            state.amplitudes_mut()[k.index() * stride] += c;
        }
        Ok(state)
    }

    /// `|ψ⟩ ⊗ |0…0⟩` for a state on the first layer.
    pub fn initial_state(&self, first_layer: &StateVector) -> Result<StateVector> {
        if first_layer.dim() != self.layer_dim() {
            return Err(Error::DimensionMismatch(format!(
                "first-layer state has dimension {}, layer has {}",
                first_layer.dim(),
                self.layer_dim()
            )));
        }
        let stride = self.dim() / self.layer_dim();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (i, a) in first_layer.support() {
            amps[i * stride] = a;
        }
        StateVector::from_amplitudes(self.space.clone(), amps)
    }
}
