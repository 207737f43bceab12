//! The four function gates, the one- and two-cycle circuits, the closed-form
//! probability expressions for classical and quantum dephasing, and the two
//! numeric engines that execute the circuit on density matrices.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::dephasing::{joint_dephasing_unitary, phase_damping_kraus, ConditionalPropagators};
use crate::error::{Error, Result};
use crate::linalg::{tensor, ComplexMatrix};
use crate::state::{apply_kraus, apply_unitary, measure_qubit, DensityMatrix, P_FLOOR};

/// One of the four one-bit boolean functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionId {
    F0,
    F1,
    F2,
    F3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionKind {
    Constant,
    Balanced,
}

impl FunctionId {
    pub const ALL: [FunctionId; 4] = [Self::F0, Self::F1, Self::F2, Self::F3];

    pub fn from_index(n: u8) -> Result<Self> {
        match n {
            0 => Ok(Self::F0),
            1 => Ok(Self::F1),
            2 => Ok(Self::F2),
            3 => Ok(Self::F3),
            _ => Err(Error::validation(format!(
                "function index must be 0..=3, got {n}"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::F0 => 0,
            Self::F1 => 1,
            Self::F2 => 2,
            Self::F3 => 3,
        }
    }

    /// f0 and f3 are constant, f1 and f2 balanced.
    pub fn kind(self) -> FunctionKind {
        match self {
            Self::F0 | Self::F3 => FunctionKind::Constant,
            Self::F1 | Self::F2 => FunctionKind::Balanced,
        }
    }
}

impl std::fmt::Display for FunctionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f{}", self.index())
    }
}

/// Outcome probabilities over one or two cycles for one function and engine.
#[derive(Clone, Debug)]
pub struct ProbabilityTable {
    /// First-measurement probabilities (p0, p1).
    pub p_first: [f64; 2],
    /// Second-cycle data; absent for single-cycle runs.
    pub second: Option<TwoCycle>,
}

/// Conditional and joint probabilities of the second measurement.
#[derive(Clone, Debug)]
pub struct TwoCycle {
    /// cond[i] = (p_{i0}, p_{i1}); `None` marks a row whose conditioning
    /// outcome has probability below `P_FLOOR` (the 0/0 case).
    pub cond: [Option<[f64; 2]>; 2],
    /// joint[i][j] = p_i * p_{ij}; zero on undefined rows.
    pub joint: [[f64; 2]; 2],
}

impl ProbabilityTable {
    /// Builds a two-cycle table from the first-cycle probabilities and the
    /// repeat-outcome conditionals p00 and p11, flagging rows whose
    /// conditioning probability vanishes.
    pub fn from_repeat_conditionals(p0: f64, p00: f64, p11: f64) -> Self {
        let p_first = [p0, 1.0 - p0];
        let rows = [[p00, 1.0 - p00], [1.0 - p11, p11]];
        let mut cond = [None, None];
        let mut joint = [[0.0; 2]; 2];
        for i in 0..2 {
            if p_first[i] >= P_FLOOR {
                cond[i] = Some(rows[i]);
                for j in 0..2 {
                    joint[i][j] = p_first[i] * rows[i][j];
                }
            }
        }
        Self {
            p_first,
            second: Some(TwoCycle { cond, joint }),
        }
    }

    pub fn single_cycle(p0: f64) -> Self {
        Self {
            p_first: [p0, 1.0 - p0],
            second: None,
        }
    }

    /// Checks normalization of every defined row; returns the largest
    /// deviation seen.
    pub fn normalization_error(&self) -> f64 {
        let mut err = (self.p_first[0] + self.p_first[1] - 1.0).abs();
        if let Some(tc) = &self.second {
            let mut joint_sum = 0.0;
            for i in 0..2 {
                if let Some(row) = tc.cond[i] {
                    err = err.max((row[0] + row[1] - 1.0).abs());
                    joint_sum += tc.joint[i][0] + tc.joint[i][1];
                } else {
                    // undefined rows must carry no joint weight
                    err = err.max(self.p_first[i]);
                }
            }
            let defined_first: f64 = (0..2)
                .filter(|&i| tc.cond[i].is_some())
                .map(|i| self.p_first[i])
                .sum();
            err = err.max((joint_sum - defined_first).abs());
        }
        err
    }

    /// Largest entrywise difference to another table. Rows that are
    /// undefined on one side but defined with nonnegligible conditioning
    /// probability on the other count as a unit difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut err = 0.0f64;
        for i in 0..2 {
            err = err.max((self.p_first[i] - other.p_first[i]).abs());
        }
        match (&self.second, &other.second) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                for i in 0..2 {
                    match (a.cond[i], b.cond[i]) {
                        (Some(ra), Some(rb)) => {
                            for j in 0..2 {
                                err = err.max((ra[j] - rb[j]).abs());
                            }
                        }
                        (None, None) => {}
                        _ => {
                            // only meaningful if the conditioning probability
                            // is non-negligible on the defined side
                            let p = self.p_first[i].max(other.p_first[i]);
                            if p > 10.0 * P_FLOOR {
                                err = err.max(1.0);
                            }
                        }
                    }
                    for j in 0..2 {
                        err = err.max((a.joint[i][j] - b.joint[i][j]).abs());
                    }
                }
            }
            _ => err = err.max(1.0),
        }
        err
    }
}

fn hadamard() -> ComplexMatrix {
    let s = 1.0 / 2f64.sqrt();
    ComplexMatrix::from_real_rows(&[vec![s, s], vec![s, -s]]).unwrap()
}

fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
        vec![0.0, 0.0, 1.0, 0.0],
    ])
    .unwrap()
}

/// The 4x4 gate implementing |a>|b> -> |a>|f_n(a) xor b>.
pub fn u_fn(f: FunctionId) -> ComplexMatrix {
    match f {
        FunctionId::F0 => ComplexMatrix::identity(4),
        FunctionId::F1 => cnot(),
        FunctionId::F2 => {
            let xi = tensor(&ComplexMatrix::pauli_x(), &ComplexMatrix::identity(2)).unwrap();
            xi.mul(&cnot()).mul(&xi)
        }
        FunctionId::F3 => tensor(&ComplexMatrix::identity(2), &ComplexMatrix::pauli_x()).unwrap(),
    }
}

/// First-measurement probabilities (p0, p1). Outcome 0 is correct for
/// constant functions and incorrect for balanced ones.
pub fn single_cycle_probs_analytic(f: FunctionId, c_a: f64, c_b: f64) -> (f64, f64) {
    let p0 = match f.kind() {
        FunctionKind::Constant => (1.0 + c_a) / 2.0,
        FunctionKind::Balanced => (1.0 - c_a * c_b) / 2.0,
    };
    (p0, 1.0 - p0)
}

/// Two-cycle table under phase-damping (memoryless) modeling.
pub fn two_cycle_probs_classical(f: FunctionId, c_a: f64, c_b: f64) -> ProbabilityTable {
    let (p0, _) = single_cycle_probs_analytic(f, c_a, c_b);
    let (p00, p11) = match f.kind() {
        FunctionKind::Constant => (0.5 + c_a / 2.0, 0.5 - c_a / 2.0),
        FunctionKind::Balanced => {
            let cc = c_a * c_b;
            (
                0.5 + cc * (c_a - c_b) / (2.0 * (1.0 - cc)),
                0.5 + cc * (c_a + c_b) / (2.0 * (1.0 + cc)),
            )
        }
    };
    ProbabilityTable::from_repeat_conditionals(p0, p00, p11)
}

/// Two-cycle table with a persistent quantum environment, in terms of the
/// single-process factors c and the two-process factors d².
pub fn two_cycle_probs_quantum(
    f: FunctionId,
    c_a: f64,
    c_b: f64,
    d2_a: f64,
    d2_b: f64,
) -> ProbabilityTable {
    let (p0, _) = single_cycle_probs_analytic(f, c_a, c_b);
    let (p00, p11) = match f.kind() {
        FunctionKind::Constant => (
            (3.0 + 4.0 * c_a + d2_a) / (4.0 * (1.0 + c_a)),
            (3.0 - 4.0 * c_a + d2_a) / (4.0 * (1.0 - c_a)),
        ),
        FunctionKind::Balanced => {
            let cc = c_a * c_b;
            (
                (2.0 - 2.0 * cc - c_a + c_b - c_a * d2_b + d2_a * c_b) / (4.0 * (1.0 - cc)),
                (2.0 + 2.0 * cc + c_a + c_b + c_a * d2_b + d2_a * c_b) / (4.0 * (1.0 + cc)),
            )
        }
    };
    ProbabilityTable::from_repeat_conditionals(p0, p00, p11)
}

/// The simplified two-cycle quantum expressions under d² = c²
/// (exponential, memoryless dephasing).
pub fn two_cycle_probs_exponential(f: FunctionId, c_a: f64, c_b: f64) -> ProbabilityTable {
    let (p0, _) = single_cycle_probs_analytic(f, c_a, c_b);
    let (p00, p11) = match f.kind() {
        FunctionKind::Constant => (0.5 + (1.0 + c_a) / 4.0, 0.5 + (1.0 - c_a) / 4.0),
        FunctionKind::Balanced => (0.5 - (c_a - c_b) / 4.0, 0.5 + (c_a + c_b) / 4.0),
    };
    ProbabilityTable::from_repeat_conditionals(p0, p00, p11)
}

/// Number of cycles an engine runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cycles {
    One,
    Two,
}

/// Runs the circuit generically: the qubits are always factors 0 (A) and
/// 1 (B); `dephase` applies one dephasing step to the full state.
fn run_circuit(
    f: FunctionId,
    init: DensityMatrix,
    dephase: &dyn Fn(&DensityMatrix) -> Result<DensityMatrix>,
    cycles: Cycles,
) -> Result<ProbabilityTable> {
    let h = hadamard();
    let x = ComplexMatrix::pauli_x();
    let gate = u_fn(f);

    // Cycle 1: H on both qubits, dephasing, U_fn, H on A, measure A.
    let mut state = apply_unitary(&init, &h, &[0])?;
    state = apply_unitary(&state, &h, &[1])?;
    state = dephase(&state)?;
    state = apply_unitary(&state, &gate, &[0, 1])?;
    state = apply_unitary(&state, &h, &[0])?;
    let branches = measure_qubit(&state, 0)?;
    let p_first = [branches[0].probability, branches[1].probability];

    if cycles == Cycles::One {
        return Ok(ProbabilityTable::single_cycle(p_first[0]));
    }

    // Cycle 2: outcome-conditioned X on A, H on A only, dephasing, U_fn,
    // H on A, measure A. Environment factors persist untouched.
    let mut cond = [None, None];
    let mut joint = [[0.0; 2]; 2];
    for branch in &branches {
        let i = branch.outcome as usize;
        let Some(post) = &branch.post_state else {
            continue;
        };
        let mut s = post.clone();
        if branch.outcome == 1 {
            s = apply_unitary(&s, &x, &[0])?;
        }
        s = apply_unitary(&s, &h, &[0])?;
        s = dephase(&s)?;
        s = apply_unitary(&s, &gate, &[0, 1])?;
        s = apply_unitary(&s, &h, &[0])?;
        let second = measure_qubit(&s, 0)?;
        let row = [second[0].probability, second[1].probability];
        cond[i] = Some(row);
        for j in 0..2 {
            joint[i][j] = p_first[i] * row[j];
        }
    }
    Ok(ProbabilityTable {
        p_first,
        second: Some(TwoCycle { cond, joint }),
    })
}

/// Numeric two-qubit execution with phase-damping channels; per-cycle noise
/// is one channel application on each qubit right before the function gate.
pub fn run_cycles_kraus(
    f: FunctionId,
    c_a: f64,
    c_b: f64,
    cycles: Cycles,
) -> Result<ProbabilityTable> {
    let ops_a = phase_damping_kraus(c_a)?;
    let ops_b = phase_damping_kraus(c_b)?;
    // Product set (E_i^A (x) E_j^B) on both qubits.
    let mut ops = Vec::with_capacity(4);
    for ka in &ops_a {
        for kb in &ops_b {
            ops.push(tensor(ka, kb)?);
        }
    }
    let init = DensityMatrix::product(
        &DensityMatrix::basis_state(2, 0)?,
        &DensityMatrix::basis_state(2, 1)?,
    )?;
    let dephase = move |s: &DensityMatrix| apply_kraus(s, &ops, &[0, 1]);
    run_circuit(f, init, &dephase, cycles)
}

/// Numeric execution on the full qubitA (x) qubitB (x) envA (x) envB space.
/// The environments are never traced or reset; correlations built in the
/// first cycle carry into the second.
pub fn run_cycles_joint(
    f: FunctionId,
    env_a: (&ConditionalPropagators, &DensityMatrix),
    env_b: (&ConditionalPropagators, &DensityMatrix),
    cycles: Cycles,
) -> Result<ProbabilityTable> {
    let (props_a, state_a) = env_a;
    let (props_b, state_b) = env_b;
    for (name, props, state) in [("A", props_a, state_a), ("B", props_b, state_b)] {
        if props.env_dim() != state.dim() {
            return Err(Error::validation(format!(
                "environment {name}: state dimension {} does not match propagators of dimension {}",
                state.dim(),
                props.env_dim()
            )));
        }
    }
    let u = joint_dephasing_unitary(props_a, props_b)?;
    let qubits = DensityMatrix::product(
        &DensityMatrix::basis_state(2, 0)?,
        &DensityMatrix::basis_state(2, 1)?,
    )?;
    // Each environment is one factor here regardless of its internal
    // structure; the circuit only ever addresses it as a whole.
    let mat = tensor(
        &tensor(qubits.matrix(), state_a.matrix())?,
        state_b.matrix(),
    )?;
    let init = DensityMatrix::trusted(mat, vec![2, 2, state_a.dim(), state_b.dim()])?;
    let dephase = move |s: &DensityMatrix| apply_unitary(s, &u, &[0, 1, 2, 3]);
    run_circuit(f, init, &dephase, cycles)
}

/// Samples two-cycle outcome pairs from a table's exact probabilities with a
/// seeded ChaCha8 generator; counts[i][j] is the number of (first, second)
/// outcome pairs observed.
pub fn sample_outcomes(table: &ProbabilityTable, shots: u64, seed: u64) -> Result<[[u64; 2]; 2]> {
    let Some(tc) = &table.second else {
        return Err(Error::validation("sampling requires a two-cycle table"));
    };
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [[0u64; 2]; 2];
    for _ in 0..shots {
        let i = usize::from(rng.gen::<f64>() >= table.p_first[0]);
        let row = tc.cond[i].ok_or_else(|| {
            Error::validation("sampled an outcome whose conditional row is undefined")
        })?;
        let j = usize::from(rng.gen::<f64>() >= row[0]);
        counts[i][j] += 1;
    }
    Ok(counts)
}
