use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Global state dimension cap.
pub const STATE_DIM_CAP: usize = 1 << 22;

/// Opaque label of a tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SiteId(pub usize);

impl fmt::Display for SiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An ordered list of sites with a local dimension each; the state space
/// is their tensor product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SiteSpace {
    sites: Vec<SiteId>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl SiteSpace {
    pub fn new(sites: Vec<SiteId>, dims: Vec<usize>) -> Result<Self> {
        Self::with_cap(sites, dims, STATE_DIM_CAP)
    }

    pub(crate) fn with_cap(sites: Vec<SiteId>, dims: Vec<usize>, cap: usize) -> Result<Self> {
        if sites.len() != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} sites but {} dimensions",
                sites.len(),
                dims.len()
            )));
        }
        for (i, s) in sites.iter().enumerate() {
            if sites[..i].contains(s) {
                return Err(Error::DuplicateSite(*s));
            }
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::DimensionMismatch(format!("site {} has dimension 0", sites[pos])));
        }
        let total = dims.iter().try_fold(1u128, |acc, &d| {
            let next = acc * d as u128;
            (next <= cap as u128).then_some(next)
        });
        let total = total.ok_or_else(|| Error::CapExceeded {
            what: "state",
            dim: dims.iter().fold(1u128, |a, &d| a.saturating_mul(d as u128)),
            cap: cap as u128,
        })? as usize;
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Ok(Self {
            sites,
            dims,
            strides,
            total,
        })
    }

    /// `n` sites labelled `0..n`, each of dimension `m`.
    pub fn uniform(n: usize, m: usize) -> Result<Self> {
        Self::new((0..n).map(SiteId).collect(), vec![m; n])
    }

    pub fn sites(&self) -> &[SiteId] {
        &self.sites
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn position(&self, site: SiteId) -> Result<usize> {
        self.sites
            .iter()
            .position(|&s| s == site)
            .ok_or(Error::UnknownSite(site))
    }

    pub fn site_dim(&self, site: SiteId) -> Result<usize> {
        Ok(self.dims[self.position(site)?])
    }

    pub fn indexer(&self) -> BasisIndexer<'_> {
        BasisIndexer { space: self }
    }
}

/// Mixed-radix bijection between per-site digits and flat basis indices,
/// last site fastest.
#[derive(Debug, Clone, Copy)]
pub struct BasisIndexer<'a> {
    space: &'a SiteSpace,
}

impl BasisIndexer<'_> {
    pub fn encode(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.space.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} digits for {} sites",
                digits.len(),
                self.space.len()
            )));
        }
        let mut index = 0;
        for (pos, (&d, &dim)) in digits.iter().zip(&self.space.dims).enumerate() {
            if d >= dim {
                return Err(Error::DigitOutOfRange {
                    site: self.space.sites[pos].0,
                    digit: d,
                    dim,
                });
            }
            index = index * dim + d;
        }
        Ok(index)
    }

    pub fn decode(&self, index: usize) -> Result<Vec<usize>> {
        if index >= self.space.total {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.space.total,
            });
        }
        Ok(self.decode_unchecked(index))
    }

    pub(crate) fn decode_unchecked(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.space.len()];
        for (slot, &dim) in digits.iter_mut().zip(&self.space.dims).rev() {
            *slot = index % dim;
            index /= dim;
        }
        digits
    }

    /// The digit of one site inside a flat index.
    pub fn digit(&self, index: usize, position: usize) -> usize {
        (index / self.space.strides[position]) % self.space.dims[position]
    }
}

/// Offsets of an ordered sub-support inside an ordered space, together with
/// the flat indices where every support digit is zero.
///
/// Every basis index of the space is uniquely `base + offsets[j]` with `j`
/// the local index over the support (declared order, last fastest).
#[derive(Debug, Clone)]
pub(crate) struct Embedding {
    pub offsets: Vec<usize>,
    pub bases: Vec<usize>,
}

impl Embedding {
    pub fn new(space: &SiteSpace, support: &[SiteId], support_dims: &[usize]) -> Result<Self> {
        let mut positions = Vec::with_capacity(support.len());
        for (&site, &dim) in support.iter().zip(support_dims) {
            let pos = space.position(site)?;
            if space.dims[pos] != dim {
                return Err(Error::DimensionMismatch(format!(
                    "site {site} has dimension {} in the space but {dim} in the operator",
                    space.dims[pos]
                )));
            }
            if positions.contains(&pos) {
                return Err(Error::DuplicateSite(site));
            }
            positions.push(pos);
        }
        let offsets = radix_offsets(positions.iter().map(|&p| (space.dims[p], space.strides[p])));
        let complement: Vec<usize> = (0..space.len()).filter(|p| !positions.contains(p)).collect();
        let bases = radix_offsets(complement.iter().map(|&p| (space.dims[p], space.strides[p])));
        Ok(Self { offsets, bases })
    }
}

/// All sums `Σ d_i * stride_i` with digits enumerated in mixed radix, the
/// last factor fastest.
fn radix_offsets(factors: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut out = vec![0usize];
    for (dim, stride) in factors {
        let mut next = Vec::with_capacity(out.len() * dim);
        for &o in &out {
            for d in 0..dim {
                next.push(o + d * stride);
            }
        }
        out = next;
    }
    out
}
