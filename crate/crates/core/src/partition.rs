//! Partitioned automata: two-cell block unitaries applied on alternating
//! Margolus partitions, and the six-site operator that realizes such a
//! step as a commuting family on a two-layer history.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert::random::random_unitary;
use crate::hilbert::{compose, LocalOperator, SiteId, StateVector, UNITARY_TOL};
use crate::history::HistorySpace;

/// A unitary `Q` on two cells of size `m`, stored as an `m² × m²` matrix
/// with the first cell as the more significant digit.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockUnitary {
    m: usize,
    q: DMatrix<Complex64>,
}

fn unitarity_defect(q: &DMatrix<Complex64>) -> f64 {
    (q.adjoint() * q - DMatrix::identity(q.nrows(), q.ncols())).norm()
}

impl BlockUnitary {
    pub fn new(m: usize, q: DMatrix<Complex64>) -> Result<Self> {
        if m < 2 || q.nrows() != m * m || q.ncols() != m * m {
            return Err(Error::DimensionMismatch(format!(
                "block matrix is {}x{}, expected {}x{}",
                q.nrows(),
                q.ncols(),
                m * m,
                m * m
            )));
        }
        let defect = unitarity_defect(&q);
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { m, q })
    }

    pub fn identity(m: usize) -> Result<Self> {
        Self::new(m, DMatrix::identity(m * m, m * m))
    }

    /// `|a, b⟩ ↦ |b, a⟩`.
    pub fn swap(m: usize) -> Result<Self> {
        Self::from_permutation(m, &(0..m * m).map(|j| (j % m) * m + j / m).collect::<Vec<_>>())
    }

    /// Classical block rule `|j⟩ ↦ |perm[j]⟩`.
    pub fn from_permutation(m: usize, perm: &[usize]) -> Result<Self> {
        let n = m * m;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::NotBijective);
        }
        let mut q = DMatrix::zeros(n, n);
        for (j, &p) in perm.iter().enumerate() {
            q[(p, j)] = Complex64::new(1.0, 0.0);
        }
        Self::new(m, q)
    }

    /// Diagonal block `|j⟩ ↦ e^{iθ_j}|j⟩`.
    pub fn diagonal_phases(m: usize, angles: &[f64]) -> Result<Self> {
        if angles.len() != m * m {
            return Err(Error::DimensionMismatch(format!(
                "{} phases for {} states",
                angles.len(),
                m * m
            )));
        }
        let d = angles.iter().map(|&a| Complex64::from_polar(1.0, a));
        Self::new(m, DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(m * m, d)))
    }

    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<Self> {
        Self::new(m, random_unitary(m * m, rng))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.q
    }

    /// The block rule as a permutation when every column holds a single 1.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.q.ncols();
        (0..n)
            .map(|c| {
                let col = self.q.column(c);
                let hit = (0..n)
                    .filter(|&r| col[r] != Complex64::new(0.0, 0.0))
                    .collect::<Vec<_>>();
                (hit.len() == 1 && col[hit[0]] == Complex64::new(1.0, 0.0)).then(|| hit[0])
            })
            .collect()
    }

    /// `Q` acting on the ordered pair of sites `(a, b)`.
    pub fn on(&self, a: SiteId, b: SiteId) -> Result<LocalOperator> {
        let support = vec![a, b];
        let dims = vec![self.m; 2];
        match self.as_permutation() {
            Some(p) => LocalOperator::permutation(support, dims, p),
            None => LocalOperator::dense_unitary(support, dims, self.q.clone()),
        }
    }
}

/// Applies `q` to the disjoint blocks `(2i+offset, 2i+1+offset)` of a ring
/// whose cells are the state's sites in order.
pub fn margolus_sweep(q: &BlockUnitary, state: &StateVector, offset: usize) -> Result<StateVector> {
    let sites = state.space().sites();
    let n = sites.len();
    if n % 2 == 1 {
        return Err(Error::OddRing(n));
    }
    if offset > 1 {
        return Err(Error::InvalidArgument(format!(
            "sweep offset must be 0 or 1, got {offset}"
        )));
    }
    if state.space().dims().iter().any(|&d| d != q.m()) {
        return Err(Error::AlphabetMismatch {
            expected: q.m(),
            found: state.space().dims()[0],
        });
    }
    let mut out = state.clone();
    for i in 0..n / 2 {
        let a = sites[(2 * i + offset) % n];
        let b = sites[(2 * i + 1 + offset) % n];
        out = q.on(a, b)?.apply(&out)?;
    }
    Ok(out)
}

/// Even sweep followed by odd sweep.
pub fn margolus_step(q: &BlockUnitary, state: &StateVector) -> Result<StateVector> {
    margolus_sweep(q, &margolus_sweep(q, state, 0)?, 1)
}

/// `|r⟩|s⟩ ↦ |r + s mod m⟩|s⟩` with `target` holding `r`.
pub fn basis_cloner(target: SiteId, source: SiteId, m: usize) -> Result<LocalOperator> {
    let targets = (0..m * m)
        .map(|j| {
            let (r, s) = (j / m, j % m);
            ((r + s) % m) * m + s
        })
        .collect();
    LocalOperator::permutation(vec![target, source], vec![m, m], targets)
}

/// Copies the block `(a, b)` of layer `t` into layer `t+1` by modular
/// addition: `(r₁, r₂; s₁, s₂) ↦ (r₁+s₁, r₂+s₂; s₁, s₂)`.
///
/// Support order: `(a, t+1), (b, t+1), (a, t), (b, t)`.
pub fn clone_gate(space: &HistorySpace, cells: (usize, usize), t: usize) -> Result<LocalOperator> {
    space.check_layer(t + 1)?;
    let m = space.alphabet().size();
    let (a, b) = cells;
    if a == b || a >= space.cells() || b >= space.cells() {
        return Err(Error::InvalidArgument(format!("invalid clone block ({a}, {b})")));
    }
    let support = vec![
        space.site(a, t + 1),
        space.site(b, t + 1),
        space.site(a, t),
        space.site(b, t),
    ];
    compose(&[
        basis_cloner(support[0], support[2], m)?,
        basis_cloner(support[1], support[3], m)?,
    ])?
    .embed(&support, &[m; 4])
}

fn super_f_cells(space: &HistorySpace, i: usize) -> Result<[usize; 4]> {
    let l = space.cells();
    if space.geometry().rank() != 1 || l % 2 == 1 {
        return Err(Error::OddRing(l));
    }
    if l < 4 {
        return Err(Error::InvalidArgument(format!(
            "ring of {l} cells is too short for six-site blocks"
        )));
    }
    if i >= l / 2 {
        return Err(Error::IndexOutOfRange { index: i, dim: l / 2 });
    }
    Ok([(2 * i + l - 1) % l, 2 * i, 2 * i + 1, (2 * i + 2) % l])
}

/// Six-site operator `(Q ⊗ Q)⁻¹ Q^{(t+1)} C (Q ⊗ Q)` for even block `i`
/// between layers 0 and 1, with the two outer `Q`s on the odd blocks
/// `(2i−1, 2i)` and `(2i+1, 2i+2)` of layer 0.
///
/// Acting on `|K⟩|0⟩` the product over all `i` leaves `K` in layer 0 and
/// writes the odd sweep followed by the even sweep of `K` into layer 1.
pub fn build_super_f(q: &BlockUnitary, space: &HistorySpace, i: usize) -> Result<LocalOperator> {
    let clone = clone_gate(space, (0, 1), 0)?;
    build_super_f_with(q, space, i, &clone)
}

/// [`build_super_f`] with a caller-supplied four-site clone gate. Only its
/// matrix is used; it is placed on `(2i, 2i+1 | 1)` and `(2i, 2i+1 | 0)`.
pub fn build_super_f_with(
    q: &BlockUnitary,
    space: &HistorySpace,
    i: usize,
    clone: &LocalOperator,
) -> Result<LocalOperator> {
    let m = space.alphabet().size();
    if q.m() != m {
        return Err(Error::AlphabetMismatch {
            expected: m,
            found: q.m(),
        });
    }
    if space.layers() < 2 {
        return Err(Error::LayerOutOfRange {
            layer: 1,
            layers: space.layers(),
        });
    }
    if clone.dims() != [m; 4] {
        return Err(Error::DimensionMismatch("clone gate must act on four cells".into()));
    }
    let [w, a, b, e] = super_f_cells(space, i)?;
    let now = |c| space.site(c, 0);
    let next = |c| space.site(c, 1);
    let outer = compose(&[q.on(now(w), now(a))?, q.on(now(b), now(e))?])?;
    let clone = clone.relabel(vec![next(a), next(b), now(a), now(b)])?;
    let inner = q.on(next(a), next(b))?;
    let f = compose(&[outer.inverse()?, inner, clone, outer])?;
    let support = vec![now(w), now(a), now(b), now(e), next(a), next(b)];
    f.embed(&support, &[m; 6])
}

/// `(B ⊗ B) Q (B† ⊗ B†)`.
pub fn basis_change_q(q: &BlockUnitary, b: &DMatrix<Complex64>) -> Result<BlockUnitary> {
    let bb = checked_pair(q, b)?;
    BlockUnitary::new(q.m(), &bb * q.matrix() * bb.adjoint())
}

/// `(B ⊗ B) Q (B̄ ⊗ B̄)` with entrywise conjugation on the right.
pub fn basis_change_q_conjugate(q: &BlockUnitary, b: &DMatrix<Complex64>) -> Result<BlockUnitary> {
    let bb = checked_pair(q, b)?;
    BlockUnitary::new(q.m(), &bb * q.matrix() * bb.conjugate())
}

fn checked_pair(q: &BlockUnitary, b: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    if b.nrows() != q.m() || b.ncols() != q.m() {
        return Err(Error::DimensionMismatch(format!("basis change must be {0}x{0}", q.m())));
    }
    let defect = unitarity_defect(b);
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary { defect });
    }
    Ok(b.kronecker(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::random::{random_state, seeded_rng};
    use crate::hilbert::SiteSpace;
    use crate::lattice::{CellAlphabet, LatticeGeometry};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn swap_margolus_moves_evens_forward_by_two() {
        let space = SiteSpace::uniform(4, 2).unwrap();
        let q = BlockUnitary::swap(2).unwrap();
        let s = StateVector::basis(space.clone(), &[1, 0, 0, 0]).unwrap();
        let out = margolus_step(&q, &s).unwrap();
        assert_eq!(out, StateVector::basis(space.clone(), &[0, 0, 1, 0]).unwrap());
        let s = StateVector::basis(space.clone(), &[0, 1, 0, 0]).unwrap();
        let out = margolus_step(&q, &s).unwrap();
        assert_eq!(out, StateVector::basis(space, &[0, 0, 0, 1]).unwrap());
    }

    #[test]
    fn odd_ring_rejected() {
        let s = StateVector::basis(SiteSpace::uniform(3, 2).unwrap(), &[0, 0, 0]).unwrap();
        assert!(matches!(
            margolus_sweep(&BlockUnitary::identity(2).unwrap(), &s, 0),
            Err(Error::OddRing(3))
        ));
    }

    #[test]
    fn random_block_preserves_norm() {
        let mut rng = seeded_rng(3);
        let q = BlockUnitary::random(2, &mut rng).unwrap();
        let s = random_state(SiteSpace::uniform(6, 2).unwrap(), &mut rng);
        assert!((margolus_step(&q, &s).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clone_gate_copies_basis_states() {
        let ring = LatticeGeometry::ring(4).unwrap();
        let space = HistorySpace::new(ring, CellAlphabet::modular(3).unwrap(), 2).unwrap();
        let g = clone_gate(&space, (1, 2), 0).unwrap();
        let t = g.targets().unwrap();
        for s1 in 0..3 {
            for s2 in 0..3 {
                assert_eq!(t[s1 * 3 + s2], ((s1 * 3 + s2) * 9) + s1 * 3 + s2);
            }
        }
    }

    #[test]
    fn identity_q_gives_clone_gate() {
        let ring = LatticeGeometry::ring(6).unwrap();
        let space = HistorySpace::new(ring, CellAlphabet::binary(), 2).unwrap();
        let f = build_super_f(&BlockUnitary::identity(2).unwrap(), &space, 1).unwrap();
        let g = clone_gate(&space, (2, 3), 0)
            .unwrap()
            .embed(f.support(), f.dims())
            .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn sigma_x_permutes_diagonal_phases() {
        let q = BlockUnitary::diagonal_phases(2, &[0.1, 0.2, 0.3, 0.4]).unwrap();
        let x = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let qp = basis_change_q(&q, &x).unwrap();
        let want = BlockUnitary::diagonal_phases(2, &[0.4, 0.3, 0.2, 0.1]).unwrap();
        assert!((qp.matrix() - want.matrix()).norm() < 1e-14);
    }

    #[test]
    fn non_unitary_basis_rejected() {
        let q = BlockUnitary::identity(2).unwrap();
        let b = DMatrix::from_element(2, 2, c(1.0));
        assert!(matches!(basis_change_q(&q, &b), Err(Error::NotUnitary { .. })));
    }
}
