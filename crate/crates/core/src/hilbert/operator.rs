use nalgebra::DMatrix;
use num_complex::Complex64;

use super::space::Embedding;
use super::{SiteId, SiteSpace, StateVector, STATE_DIM_CAP};
use crate::error::{Error, Result};

/// Largest support dimension for dense operators and dense compositions.
pub const DENSE_SUPPORT_CAP: usize = 1 << 12;
/// Frobenius tolerance for unitarity and commutator checks.
pub const UNITARY_TOL: f64 = 1e-10;
const PHASE_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    /// `|j⟩ ↦ phase[j] |targets[j]⟩`; `phases == None` means all ones.
    PhasedPermutation {
        targets: Vec<usize>,
        phases: Option<Vec<Complex64>>,
    },
    /// Matrix on the support basis; `unitary` records whether it passed the
    /// unitarity check at construction.
    Dense { matrix: DMatrix<Complex64>, unitary: bool },
}

/// An operator acting on an explicit, ordered list of sites and as the
/// identity everywhere else.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    support: Vec<SiteId>,
    dims: Vec<usize>,
    kind: OperatorKind,
}

fn support_dim(support: &[SiteId], dims: &[usize], cap: usize) -> Result<usize> {
    if support.is_empty() {
        return Err(Error::InvalidArgument("operator support is empty".into()));
    }
    Ok(SiteSpace::with_cap(support.to_vec(), dims.to_vec(), cap)?.dim())
}

fn frobenius_unitarity_defect(m: &DMatrix<Complex64>) -> f64 {
    let g = m.adjoint() * m;
    let n = g.nrows();
    let mut acc = 0.0;
    for c in 0..n {
        for r in 0..n {
            let e = if r == c { g[(r, c)] - ONE } else { g[(r, c)] };
            acc += e.norm_sqr();
        }
    }
    acc.sqrt()
}

impl LocalOperator {
    pub fn permutation(support: Vec<SiteId>, dims: Vec<usize>, targets: Vec<usize>) -> Result<Self> {
        Self::build_permutation(support, dims, targets, None)
    }

    pub fn phased_permutation(
        support: Vec<SiteId>,
        dims: Vec<usize>,
        targets: Vec<usize>,
        phases: Vec<Complex64>,
    ) -> Result<Self> {
        if let Some(bad) = phases.iter().find(|p| (p.norm() - 1.0).abs() > PHASE_TOL) {
            return Err(Error::NotUnitary {
                defect: (bad.norm() - 1.0).abs(),
            });
        }
        Self::build_permutation(support, dims, targets, Some(phases))
    }

    fn build_permutation(
        support: Vec<SiteId>,
        dims: Vec<usize>,
        targets: Vec<usize>,
        phases: Option<Vec<Complex64>>,
    ) -> Result<Self> {
        let n = support_dim(&support, &dims, STATE_DIM_CAP)?;
        if targets.len() != n || phases.as_ref().is_some_and(|p| p.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "permutation over a support of dimension {n} has {} entries",
                targets.len()
            )));
        }
        let mut hit = vec![false; n];
        for &t in &targets {
            if t >= n || std::mem::replace(&mut hit[t], true) {
                return Err(Error::NotBijective);
            }
        }
        Ok(Self {
            support,
            dims,
            kind: OperatorKind::PhasedPermutation { targets, phases },
        })
    }

    /// Dense operator; flagged unitary when `‖M†M − 1‖_F ≤ 1e-10`.
    pub fn dense(support: Vec<SiteId>, dims: Vec<usize>, matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = support_dim(&support, &dims, DENSE_SUPPORT_CAP)?;
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a support of dimension {n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let unitary = frobenius_unitarity_defect(&matrix) <= UNITARY_TOL;
        Ok(Self {
            support,
            dims,
            kind: OperatorKind::Dense { matrix, unitary },
        })
    }

    /// Dense operator that must be unitary.
    pub fn dense_unitary(support: Vec<SiteId>, dims: Vec<usize>, matrix: DMatrix<Complex64>) -> Result<Self> {
        let op = Self::dense(support, dims, matrix)?;
        if !op.is_unitary() {
            return Err(Error::NotUnitary {
                defect: op.unitarity_defect(),
            });
        }
        Ok(op)
    }

    pub fn identity(support: Vec<SiteId>, dims: Vec<usize>) -> Result<Self> {
        let n = support_dim(&support, &dims, STATE_DIM_CAP)?;
        Self::permutation(support, dims, (0..n).collect())
    }

    pub fn support(&self) -> &[SiteId] {
        &self.support
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn support_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn support_space(&self) -> SiteSpace {
        SiteSpace::with_cap(self.support.clone(), self.dims.clone(), usize::MAX)
            .expect("support validated at construction")
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self.kind, OperatorKind::PhasedPermutation { .. })
    }

    /// Permutation targets, if this is a (phased) permutation.
    pub fn targets(&self) -> Option<&[usize]> {
        match &self.kind {
            OperatorKind::PhasedPermutation { targets, .. } => Some(targets),
            OperatorKind::Dense { .. } => None,
        }
    }

    pub fn is_unitary(&self) -> bool {
        match &self.kind {
            OperatorKind::PhasedPermutation { .. } => true,
            OperatorKind::Dense { unitary, .. } => *unitary,
        }
    }

    /// `‖M†M − 1‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        match &self.kind {
            OperatorKind::PhasedPermutation { phases, .. } => phases
                .as_ref()
                .map(|p| p.iter().map(|z| (z.norm_sqr() - 1.0).powi(2)).sum::<f64>().sqrt())
                .unwrap_or(0.0),
            OperatorKind::Dense { matrix, .. } => frobenius_unitarity_defect(matrix),
        }
    }

    /// Matrix on the support basis.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        match &self.kind {
            OperatorKind::Dense { matrix, .. } => Ok(matrix.clone()),
            OperatorKind::PhasedPermutation { targets, phases } => {
                let n = targets.len();
                if n > DENSE_SUPPORT_CAP {
                    return Err(Error::CapExceeded {
                        what: "dense operator",
                        dim: n as u128,
                        cap: DENSE_SUPPORT_CAP as u128,
                    });
                }
                let mut m = DMatrix::zeros(n, n);
                for (j, &t) in targets.iter().enumerate() {
                    m[(t, j)] = phases.as_ref().map_or(ONE, |p| p[j]);
                }
                Ok(m)
            }
        }
    }

    pub fn adjoint(&self) -> Self {
        let kind = match &self.kind {
            OperatorKind::PhasedPermutation { targets, phases } => {
                let mut inv = vec![0; targets.len()];
                let mut inv_ph = phases.as_ref().map(|p| vec![ZERO; p.len()]);
                for (j, &t) in targets.iter().enumerate() {
                    inv[t] = j;
                    if let (Some(out), Some(p)) = (inv_ph.as_mut(), phases.as_ref()) {
                        out[t] = p[j].conj();
                    }
                }
                OperatorKind::PhasedPermutation {
                    targets: inv,
                    phases: inv_ph,
                }
            }
            OperatorKind::Dense { matrix, unitary } => OperatorKind::Dense {
                matrix: matrix.adjoint(),
                unitary: *unitary,
            },
        };
        Self {
            support: self.support.clone(),
            dims: self.dims.clone(),
            kind,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match &self.kind {
            OperatorKind::PhasedPermutation { .. } => Ok(self.adjoint()),
            OperatorKind::Dense { unitary: true, .. } => Ok(self.adjoint()),
            OperatorKind::Dense { matrix, .. } => {
                let inv = matrix.clone().try_inverse().ok_or(Error::NotInvertible)?;
                Self::dense(self.support.clone(), self.dims.clone(), inv)
            }
        }
    }

    /// Same matrix placed on different sites, position for position.
    pub fn relabel(&self, support: Vec<SiteId>) -> Result<Self> {
        if support.len() != self.support.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} sites given for an operator on {}",
                support.len(),
                self.support.len()
            )));
        }
        SiteSpace::with_cap(support.clone(), self.dims.clone(), usize::MAX)?;
        Ok(Self {
            support,
            dims: self.dims.clone(),
            kind: self.kind.clone(),
        })
    }

    /// `(b ⊗ … ⊗ b) · self · (b ⊗ … ⊗ b)†` with the single-site matrix `b`
    /// on every support site. Always dense.
    pub fn conjugate_sitewise(&self, b: &DMatrix<Complex64>) -> Result<Self> {
        if self.dims.iter().any(|&d| d != b.nrows() || d != b.ncols()) {
            return Err(Error::DimensionMismatch(
                "site matrix does not fit every support site".into(),
            ));
        }
        let space = SiteSpace::with_cap(self.support.clone(), self.dims.clone(), DENSE_SUPPORT_CAP)?;
        let sites: Vec<Self> = self
            .support
            .iter()
            .map(|&s| Self::dense(vec![s], vec![b.nrows()], b.clone()))
            .collect::<Result<_>>()?;
        let mut m = self.to_dense()?;
        for op in &sites {
            m = op.apply_to_columns(&space, &m)?;
        }
        m = m.adjoint();
        for op in &sites {
            m = op.apply_to_columns(&space, &m)?;
        }
        Self::dense(self.support.clone(), self.dims.clone(), m.adjoint())
    }

    /// Same operator viewed on a larger ordered support (identity on the
    /// added sites).
    pub fn embed(&self, support: &[SiteId], dims: &[usize]) -> Result<Self> {
        let space = SiteSpace::with_cap(support.to_vec(), dims.to_vec(), STATE_DIM_CAP)?;
        let emb = Embedding::new(&space, &self.support, &self.dims)?;
        let n = space.dim();
        let kind = match &self.kind {
            OperatorKind::PhasedPermutation { targets, phases } => {
                let mut t = vec![0; n];
                let mut ph = phases.as_ref().map(|_| vec![ONE; n]);
                for &base in &emb.bases {
                    for (j, &off) in emb.offsets.iter().enumerate() {
                        t[base + off] = base + emb.offsets[targets[j]];
                        if let (Some(out), Some(p)) = (ph.as_mut(), phases.as_ref()) {
                            out[base + off] = p[j];
                        }
                    }
                }
                OperatorKind::PhasedPermutation { targets: t, phases: ph }
            }
            OperatorKind::Dense { matrix, unitary } => {
                check_dense_cap(n)?;
                let mut m = DMatrix::zeros(n, n);
                for &base in &emb.bases {
                    for (c, &oc) in emb.offsets.iter().enumerate() {
                        for (r, &or) in emb.offsets.iter().enumerate() {
                            m[(base + or, base + oc)] = matrix[(r, c)];
                        }
                    }
                }
                OperatorKind::Dense {
                    matrix: m,
                    unitary: *unitary,
                }
            }
        };
        Ok(Self {
            support: support.to_vec(),
            dims: dims.to_vec(),
            kind,
        })
    }

    /// Acts as `op ⊗ 1` on a state; the input is untouched.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        let emb = Embedding::new(state.space(), &self.support, &self.dims)?;
        let mut out = vec![ZERO; state.dim()];
        self.apply_slice(&emb, state.amplitudes(), &mut out);
        StateVector::from_amplitudes(state.space().clone(), out)
    }

    fn apply_slice(&self, emb: &Embedding, input: &[Complex64], out: &mut [Complex64]) {
        match &self.kind {
            OperatorKind::PhasedPermutation { targets, phases } => {
                let to: Vec<usize> = targets.iter().map(|&t| emb.offsets[t]).collect();
                for &base in &emb.bases {
                    match phases {
                        None => {
                            for (&from, &to) in emb.offsets.iter().zip(&to) {
                                out[base + to] = input[base + from];
                            }
                        }
                        Some(p) => {
                            for ((&from, &to), ph) in emb.offsets.iter().zip(&to).zip(p) {
                                out[base + to] = ph * input[base + from];
                            }
                        }
                    }
                }
            }
            OperatorKind::Dense { matrix, .. } => {
                let n = emb.offsets.len();
                let mut local = vec![ZERO; n];
                for &base in &emb.bases {
                    for (slot, &o) in local.iter_mut().zip(&emb.offsets) {
                        *slot = input[base + o];
                    }
                    for (r, &or) in emb.offsets.iter().enumerate() {
                        let mut acc = ZERO;
                        for (c, x) in local.iter().enumerate() {
                            acc += matrix[(r, c)] * x;
                        }
                        out[base + or] = acc;
                    }
                }
            }
        }
    }

    /// `op · X` for a dense matrix `X` over `space`, column by column.
    fn apply_to_columns(&self, space: &SiteSpace, x: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
        let emb = Embedding::new(space, &self.support, &self.dims)?;
        let n = space.dim();
        let mut out = DMatrix::zeros(n, n);
        for c in 0..n {
            let src = &x.as_slice()[c * n..(c + 1) * n];
            let dst = &mut out.as_mut_slice()[c * n..(c + 1) * n];
            self.apply_slice(&emb, src, dst);
        }
        Ok(out)
    }
}

fn check_dense_cap(n: usize) -> Result<()> {
    if n > DENSE_SUPPORT_CAP {
        return Err(Error::CapExceeded {
            what: "dense operator",
            dim: n as u128,
            cap: DENSE_SUPPORT_CAP as u128,
        });
    }
    Ok(())
}

/// Free-function form of [`LocalOperator::apply`].
pub fn apply_local(op: &LocalOperator, state: &StateVector) -> Result<StateVector> {
    op.apply(state)
}

/// Union of the supports, sorted by site id, with consistent dimensions.
pub fn union_support<'a>(ops: impl IntoIterator<Item = &'a LocalOperator>) -> Result<(Vec<SiteId>, Vec<usize>)> {
    let mut pairs: Vec<(SiteId, usize)> = Vec::new();
    for op in ops {
        for (&s, &d) in op.support.iter().zip(&op.dims) {
            match pairs.iter().find(|(t, _)| *t == s) {
                Some(&(_, d0)) if d0 != d => {
                    return Err(Error::DimensionMismatch(format!(
                        "site {s} has dimensions {d0} and {d}"
                    )))
                }
                Some(_) => {}
                None => pairs.push((s, d)),
            }
        }
    }
    pairs.sort();
    Ok(pairs.into_iter().unzip())
}

fn compose_permutations(a: &LocalOperator, b: &LocalOperator) -> LocalOperator {
    // a · b on a shared support
    let (
        OperatorKind::PhasedPermutation {
            targets: ta,
            phases: pa,
        },
        OperatorKind::PhasedPermutation {
            targets: tb,
            phases: pb,
        },
    ) = (&a.kind, &b.kind)
    else {
        unreachable!("both factors are permutations");
    };
    let targets = tb.iter().map(|&t| ta[t]).collect();
    let phases = match (pa, pb) {
        (None, None) => None,
        _ => Some(
            tb.iter()
                .enumerate()
                .map(|(j, &t)| pa.as_ref().map_or(ONE, |p| p[t]) * pb.as_ref().map_or(ONE, |p| p[j]))
                .collect(),
        ),
    };
    LocalOperator {
        support: a.support.clone(),
        dims: a.dims.clone(),
        kind: OperatorKind::PhasedPermutation { targets, phases },
    }
}

/// Product `ops[0] · ops[1] · … · ops[n-1]` (the last factor acts first) on
/// the union of the supports. Permutations compose to a permutation; any
/// dense factor forces a dense product capped at [`DENSE_SUPPORT_CAP`].
pub fn compose(ops: &[LocalOperator]) -> Result<LocalOperator> {
    let (support, dims) = union_support(ops)?;
    if ops.is_empty() {
        return Err(Error::InvalidArgument("nothing to compose".into()));
    }
    if ops.iter().all(LocalOperator::is_permutation) {
        let mut acc = ops[ops.len() - 1].embed(&support, &dims)?;
        for op in ops[..ops.len() - 1].iter().rev() {
            acc = compose_permutations(&op.embed(&support, &dims)?, &acc);
        }
        return Ok(acc);
    }
    let space = SiteSpace::with_cap(support.clone(), dims.clone(), DENSE_SUPPORT_CAP)?;
    let mut acc = ops[ops.len() - 1].embed(&support, &dims)?.to_dense()?;
    for op in ops[..ops.len() - 1].iter().rev() {
        acc = op.apply_to_columns(&space, &acc)?;
    }
    LocalOperator::dense(support, dims, acc)
}

fn disjoint(a: &LocalOperator, b: &LocalOperator) -> bool {
    a.support.iter().all(|s| !b.support.contains(s))
}

fn frobenius_diff(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> f64 {
    x.iter()
        .zip(y.iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `‖AB − BA‖_F` on the union support. Operators on disjoint supports
/// commute exactly; two permutations are compared as permutations without
/// a dimension cap.
pub fn commutator_defect(a: &LocalOperator, b: &LocalOperator) -> Result<f64> {
    if disjoint(a, b) {
        return Ok(0.0);
    }
    let (support, dims) = union_support([a, b])?;
    if a.is_permutation() && b.is_permutation() {
        let ae = a.embed(&support, &dims)?;
        let be = b.embed(&support, &dims)?;
        let ab = compose_permutations(&ae, &be);
        let ba = compose_permutations(&be, &ae);
        return Ok(permutation_distance(&ab, &ba));
    }
    let space = SiteSpace::with_cap(support.clone(), dims.clone(), DENSE_SUPPORT_CAP)?;
    let ad = a.embed(&support, &dims)?.to_dense()?;
    let bd = b.embed(&support, &dims)?.to_dense()?;
    let ab = a.apply_to_columns(&space, &bd)?;
    let ba = b.apply_to_columns(&space, &ad)?;
    Ok(frobenius_diff(&ab, &ba))
}

/// Frobenius distance between two phased permutations on one support.
fn permutation_distance(x: &LocalOperator, y: &LocalOperator) -> f64 {
    let (
        OperatorKind::PhasedPermutation {
            targets: tx,
            phases: px,
        },
        OperatorKind::PhasedPermutation {
            targets: ty,
            phases: py,
        },
    ) = (&x.kind, &y.kind)
    else {
        unreachable!("both arguments are permutations");
    };
    let mut acc = 0.0;
    for j in 0..tx.len() {
        let a = px.as_ref().map_or(ONE, |p| p[j]);
        let b = py.as_ref().map_or(ONE, |p| p[j]);
        acc += if tx[j] == ty[j] {
            (a - b).norm_sqr()
        } else {
            a.norm_sqr() + b.norm_sqr()
        };
    }
    acc.sqrt()
}

/// Tests `AB = ω BA` for a unit phase `ω`: forms the group commutator
/// `C = A B A⁻¹ B⁻¹`, takes `ω` as the phase of `tr C` and returns
/// `(‖AB − ω BA‖_F, ω)`.
pub fn commutes_up_to_phase(a: &LocalOperator, b: &LocalOperator) -> Result<(f64, Complex64)> {
    let (support, dims) = union_support([a, b])?;
    let space = SiteSpace::with_cap(support.clone(), dims.clone(), DENSE_SUPPORT_CAP)?;
    let a_inv = a.inverse()?;
    let b_inv = b.inverse()?;
    let n = space.dim();
    let mut c = b_inv.embed(&support, &dims)?.to_dense()?;
    for op in [&a_inv, b, a] {
        c = op.apply_to_columns(&space, &c)?;
    }
    let tr: Complex64 = (0..n).map(|i| c[(i, i)]).sum();
    let omega = if tr.norm() > 1e-12 { tr / tr.norm() } else { ONE };
    let ad = a.embed(&support, &dims)?.to_dense()?;
    let bd = b.embed(&support, &dims)?.to_dense()?;
    let ab = a.apply_to_columns(&space, &bd)?;
    let ba = b.apply_to_columns(&space, &ad)?.map(|z| z * omega);
    Ok((frobenius_diff(&ab, &ba), omega))
}
