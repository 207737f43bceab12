//! The two noise representations: phase-damping Kraus sets on the qubit
//! alone, and the joint conditional-propagator unitary over qubit and
//! environment, together with the scalar decoherence factors c and d².

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, UNITARY_TOL};
use crate::state::DensityMatrix;

/// Environment evolution operators conditioned on the two qubit pointer
/// states, at a fixed dephasing duration.
#[derive(Clone, Debug)]
pub struct ConditionalPropagators {
    w0: ComplexMatrix,
    w1: ComplexMatrix,
    /// Dephasing duration in microseconds.
    pub time: f64,
}

impl ConditionalPropagators {
    pub fn new(w0: ComplexMatrix, w1: ComplexMatrix, time: f64) -> Result<Self> {
        if w0.dim() != w1.dim() {
            return Err(Error::validation(
                "conditional propagators must share a dimension",
            ));
        }
        for (name, w) in [("w0", &w0), ("w1", &w1)] {
            if !w.is_unitary(UNITARY_TOL) {
                return Err(Error::validation(format!(
                    "{name} is not unitary (error {:.3e})",
                    w.unitarity_error()
                )));
            }
        }
        Ok(Self { w0, w1, time })
    }

    /// Trivial propagators (no interaction) on an environment of the given
    /// dimension.
    pub fn identity(env_dim: usize, time: f64) -> Self {
        Self {
            w0: ComplexMatrix::identity(env_dim),
            w1: ComplexMatrix::identity(env_dim),
            time,
        }
    }

    pub fn w0(&self) -> &ComplexMatrix {
        &self.w0
    }

    pub fn w1(&self) -> &ComplexMatrix {
        &self.w1
    }

    pub fn env_dim(&self) -> usize {
        self.w0.dim()
    }

    /// Propagators for the process run twice back to back. For the
    /// time-independent generators used here this is the 2t evolution.
    pub fn doubled(&self) -> Self {
        Self {
            w0: self.w0.mul(&self.w0),
            w1: self.w1.mul(&self.w1),
            time: 2.0 * self.time,
        }
    }
}

/// Scalar decoherence data at one time: the single-process factor c and the
/// two-process factor whose real part is d².
#[derive(Clone, Copy, Debug)]
pub struct DephasingFactors {
    pub c: Complex64,
    pub d2_factor: Complex64,
    /// Time in microseconds.
    pub time: f64,
}

impl DephasingFactors {
    /// d² as it enters the two-cycle expressions.
    pub fn d2(&self) -> f64 {
        self.d2_factor.re
    }
}

/// Phase-damping Kraus pair E0 = diag(1, c), E1 = diag(0, sqrt(1 - c²)).
pub fn phase_damping_kraus(c: f64) -> Result<Vec<ComplexMatrix>> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::validation(format!(
            "phase damping requires c in [0, 1], got {c}"
        )));
    }
    let e0 = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, c]])?;
    let e1 = ComplexMatrix::from_real_rows(&[vec![0.0, 0.0], vec![0.0, (1.0 - c * c).sqrt()]])?;
    Ok(vec![e0, e1])
}

/// The joint evolution over qubitA (x) qubitB (x) envA (x) envB:
/// sum over pointer states ij of |ij><ij| (x) w_i^A (x) w_j^B.
pub fn joint_dephasing_unitary(
    props_a: &ConditionalPropagators,
    props_b: &ConditionalPropagators,
) -> Result<ComplexMatrix> {
    let (da, db) = (props_a.env_dim(), props_b.env_dim());
    let dim = 4 * da * db;
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..2 {
        for j in 0..2 {
            let proj = ComplexMatrix::basis_projector(4, 2 * i + j);
            let wa = if i == 0 { props_a.w0() } else { props_a.w1() };
            let wb = if j == 0 { props_b.w0() } else { props_b.w1() };
            let envs = linalg::tensor(wa, wb)?;
            out = out.add(&linalg::tensor(&proj, &envs)?);
        }
    }
    Ok(out)
}

/// c = Tr[rho w1† w0], the single-process decoherence factor.
pub fn factor_c(props: &ConditionalPropagators, env_state: &DensityMatrix) -> Result<Complex64> {
    if env_state.dim() != props.env_dim() {
        return Err(Error::validation(format!(
            "environment state dimension {} does not match propagators of dimension {}",
            env_state.dim(),
            props.env_dim()
        )));
    }
    let prod = props.w1().adjoint().mul(props.w0());
    Ok(env_state.matrix().mul(&prod).trace())
}

/// The identical-process two-cycle factor Tr[rho w1(2t)† w0(2t)]; d² is the
/// real part of this value.
pub fn factor_d2(props: &ConditionalPropagators, env_state: &DensityMatrix) -> Result<Complex64> {
    factor_c(&props.doubled(), env_state)
}

/// Both factors at once.
pub fn factors(
    props: &ConditionalPropagators,
    env_state: &DensityMatrix,
) -> Result<DephasingFactors> {
    Ok(DephasingFactors {
        c: factor_c(props, env_state)?,
        d2_factor: factor_d2(props, env_state)?,
        time: props.time,
    })
}
