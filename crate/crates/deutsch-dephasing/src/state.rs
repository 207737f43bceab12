//! Density matrices over a list of subsystem factors, with unitary and
//! Kraus-map application and exact branch-enumerating measurement.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, embed, ComplexMatrix, HERM_TOL, UNITARY_TOL};

/// Branch probabilities below this are carried without a post-state.
pub const P_FLOOR: f64 = 1e-12;

const TRACE_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-9;

/// A physical state: Hermitian, unit trace, positive semidefinite, together
/// with the subsystem dimensions of the space it lives on.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validating constructor.
    pub fn new(mat: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let state = Self::trusted(mat, dims)?;
        state.validate()?;
        Ok(state)
    }

    /// Checks only shape consistency; used internally by operations that
    /// preserve physicality. `validate` runs the full (eigenvalue) check.
    pub(crate) fn trusted(mat: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || total != mat.dim() {
            return Err(Error::validation(format!(
                "subsystem dims {:?} do not match matrix dimension {}",
                dims,
                mat.dim()
            )));
        }
        Ok(Self { mat, dims })
    }

    /// Full physicality check: Hermitian, trace one, positive semidefinite.
    /// Eigenvalues in [-1e-9, 0) are accepted as rounding noise.
    pub fn validate(&self) -> Result<()> {
        if !self.mat.is_hermitian(HERM_TOL) {
            return Err(Error::validation(format!(
                "state is not Hermitian (error {:.3e})",
                self.mat.hermiticity_error()
            )));
        }
        let tr = self.mat.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::validation(format!(
                "state trace is {tr}, expected 1"
            )));
        }
        let (eigs, _) = linalg::eigh(&self.mat)?;
        if let Some(&min) = eigs.first() {
            if min < -PSD_TOL {
                return Err(Error::validation(format!(
                    "state has negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// Pure basis state |k><k| on a single factor of the given dimension.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::validation(format!(
                "basis index {k} out of range for dim {dim}"
            )));
        }
        Self::trusted(ComplexMatrix::basis_projector(dim, k), vec![dim])
    }

    /// Maximally mixed state on a single factor.
    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self {
            mat: m,
            dims: vec![dim],
        }
    }

    /// Product state of two states; factor lists concatenate.
    pub fn product(a: &Self, b: &Self) -> Result<Self> {
        let mat = linalg::tensor(&a.mat, &b.mat)?;
        let mut dims = a.dims.clone();
        dims.extend_from_slice(&b.dims);
        Self::trusted(mat, dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Reduced state over the kept factors.
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let mat = linalg::partial_trace(&self.mat, &self.dims, keep)?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let dims = keep.iter().map(|&k| self.dims[k]).collect();
        Self::trusted(mat, dims)
    }
}

/// One outcome branch of an exact projective measurement.
#[derive(Clone, Debug)]
pub struct MeasurementBranch {
    pub outcome: u8,
    pub probability: f64,
    /// Renormalized post-measurement state; absent when the branch
    /// probability is below `P_FLOOR`.
    pub post_state: Option<DensityMatrix>,
}

/// rho -> U rho U† with `u` acting on the listed target factors.
pub fn apply_unitary(
    state: &DensityMatrix,
    u: &ComplexMatrix,
    targets: &[usize],
) -> Result<DensityMatrix> {
    if !u.is_unitary(UNITARY_TOL) {
        return Err(Error::validation(format!(
            "operator is not unitary (error {:.3e})",
            u.unitarity_error()
        )));
    }
    let full = embed(u, state.dims(), targets)?;
    let mat = full.mul(state.matrix()).mul(&full.adjoint());
    DensityMatrix::trusted(mat, state.dims().to_vec())
}

/// Operator-sum map rho -> sum_k K rho K† with the Kraus set acting on the
/// listed target factors.
pub fn apply_kraus(
    state: &DensityMatrix,
    ops: &[ComplexMatrix],
    targets: &[usize],
) -> Result<DensityMatrix> {
    if ops.is_empty() {
        return Err(Error::validation("Kraus set is empty"));
    }
    let kdim = ops[0].dim();
    if ops.iter().any(|k| k.dim() != kdim) {
        return Err(Error::validation("Kraus operators must share a dimension"));
    }
    let mut sum = ComplexMatrix::zeros(kdim);
    for k in ops {
        sum = sum.add(&k.adjoint().mul(k));
    }
    let err = sum.max_abs_diff(&ComplexMatrix::identity(kdim));
    if err > UNITARY_TOL {
        return Err(Error::validation(format!(
            "Kraus set is not trace preserving (error {err:.3e})"
        )));
    }
    let mut out = ComplexMatrix::zeros(state.dim());
    for k in ops {
        let full = embed(k, state.dims(), targets)?;
        out = out.add(&full.mul(state.matrix()).mul(&full.adjoint()));
    }
    DensityMatrix::trusted(out, state.dims().to_vec())
}

/// Exact projective measurement of a dimension-2 factor in the computational
/// basis. Post-states keep every factor, including possibly correlated
/// environments; nothing is traced out.
pub fn measure_qubit(state: &DensityMatrix, target: usize) -> Result<Vec<MeasurementBranch>> {
    if target >= state.dims().len() || state.dims()[target] != 2 {
        return Err(Error::validation(format!(
            "measurement target {target} is not a dimension-2 factor of {:?}",
            state.dims()
        )));
    }
    let mut branches = Vec::with_capacity(2);
    for outcome in 0..2u8 {
        let proj = embed(
            &ComplexMatrix::basis_projector(2, outcome as usize),
            state.dims(),
            &[target],
        )?;
        let sandwiched = proj.mul(state.matrix()).mul(&proj);
        let p = sandwiched.trace().re.max(0.0);
        let post_state = if p < P_FLOOR {
            None
        } else {
            let renorm = sandwiched.scale(Complex64::new(1.0 / p, 0.0));
            Some(DensityMatrix::trusted(renorm, state.dims().to_vec())?)
        };
        branches.push(MeasurementBranch {
            outcome,
            probability: p,
            post_state,
        });
    }
    Ok(branches)
}
