//! Cross-engine and algebraic consistency checks, runnable from the CLI and
//! reused by the integration tests. Each check reports the largest error it
//! observed against a fixed threshold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dephasing::{factor_c, factor_d2, ConditionalPropagators};
use crate::deutsch::{
    run_cycles_joint, run_cycles_kraus, two_cycle_probs_classical, two_cycle_probs_exponential,
    two_cycle_probs_quantum, Cycles, FunctionId,
};
use crate::env::{
    bath_factors, spin_conditional_propagators, spin_initial_state, NuclearSpin, SpinBathSpec,
};
use crate::error::Result;
use crate::linalg;
use crate::state::DensityMatrix;

/// Outcome of one named consistency check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub max_err: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_err <= self.tol
    }
}

/// Kraus-numeric engine vs the classical closed forms on an 11x11 grid of
/// (c_A, c_B), all four functions.
pub fn check_kraus_vs_classical() -> Result<Check> {
    let mut max_err = 0.0f64;
    for f in FunctionId::ALL {
        for ia in 0..=10 {
            for ib in 0..=10 {
                let (ca, cb) = (ia as f64 / 10.0, ib as f64 / 10.0);
                let engine = run_cycles_kraus(f, ca, cb, Cycles::Two)?;
                let formula = two_cycle_probs_classical(f, ca, cb);
                max_err = max_err.max(engine.max_abs_diff(&formula));
            }
        }
    }
    Ok(Check {
        name: "kraus engine vs classical closed form",
        max_err,
        tol: 1e-12,
    })
}

fn z_env(a_z: f64, t: f64) -> Result<(ConditionalPropagators, DensityMatrix)> {
    let spin = NuclearSpin {
        coupling: [0.0, 0.0, a_z],
        polarization: 0.0,
        label: 0,
    };
    Ok((
        spin_conditional_propagators(&spin, 0.0, t)?,
        spin_initial_state(&spin)?,
    ))
}

fn two_spin_env(a1: f64, a2: f64, t: f64) -> Result<(ConditionalPropagators, DensityMatrix)> {
    let (p1, s1) = z_env(a1, t)?;
    let (p2, s2) = z_env(a2, t)?;
    let props = ConditionalPropagators::new(
        linalg::tensor(p1.w0(), p2.w0())?,
        linalg::tensor(p1.w1(), p2.w1())?,
        t,
    )?;
    Ok((props, DensityMatrix::product(&s1, &s2)?))
}

/// Joint-numeric engine vs the quantum closed forms, single- and two-spin
/// phase-free environments over a time grid, all four functions.
pub fn check_joint_vs_quantum(points: usize) -> Result<Check> {
    let mut max_err = 0.0f64;
    let (a1, a2) = (1.3, 0.7);
    for k in 0..points {
        let t = 0.05 + 4.0 * k as f64 / points as f64;
        for two_spins in [false, true] {
            let (props, state) = if two_spins {
                two_spin_env(a1, a2, t)?
            } else {
                z_env(a1, t)?
            };
            let c = factor_c(&props, &state)?.re;
            let d2 = factor_d2(&props, &state)?.re;
            for f in FunctionId::ALL {
                let engine = run_cycles_joint(f, (&props, &state), (&props, &state), Cycles::Two)?;
                let formula = two_cycle_probs_quantum(f, c, c, d2, d2);
                max_err = max_err.max(engine.max_abs_diff(&formula));
            }
        }
    }
    Ok(Check {
        name: "joint engine vs quantum closed form",
        max_err,
        tol: 1e-10,
    })
}

/// First-measurement agreement between the joint and Kraus engines. The time
/// grid stays in the window where the (real) factor is nonnegative, so it
/// feeds the phase-damping channel directly.
pub fn check_one_cycle_agreement(points: usize) -> Result<Check> {
    let mut max_err = 0.0f64;
    let (a1, a2) = (1.3, 0.7);
    for k in 0..points {
        let t = 0.05 + 2.2 * k as f64 / points as f64;
        for two_spins in [false, true] {
            let (props, state) = if two_spins {
                two_spin_env(a1, a2, t)?
            } else {
                z_env(a1, t)?
            };
            let c = factor_c(&props, &state)?.re;
            for f in FunctionId::ALL {
                let joint = run_cycles_joint(f, (&props, &state), (&props, &state), Cycles::One)?;
                let kraus = run_cycles_kraus(f, c, c, Cycles::One)?;
                max_err = max_err.max((joint.p_first[0] - kraus.p_first[0]).abs());
            }
        }
    }
    Ok(Check {
        name: "one-cycle joint vs kraus agreement",
        max_err,
        tol: 1e-10,
    })
}

/// Quantum closed forms at d² = c² vs the simplified exponential forms on a
/// dense grid.
pub fn check_exponential_identity() -> Result<Check> {
    let mut max_err = 0.0f64;
    for f in FunctionId::ALL {
        for ia in 0..=50 {
            for ib in 0..=50 {
                let (ca, cb) = (ia as f64 / 50.0, ib as f64 / 50.0);
                let q = two_cycle_probs_quantum(f, ca, cb, ca * ca, cb * cb);
                let e = two_cycle_probs_exponential(f, ca, cb);
                max_err = max_err.max(q.max_abs_diff(&e));
            }
        }
    }
    Ok(Check {
        name: "quantum(d2 = c2) vs exponential identity",
        max_err,
        tol: 1e-12,
    })
}

/// Product-form bath factors vs brute-force joint-environment computation on
/// random 3-spin baths.
pub fn check_bath_factorization(sets: usize) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut max_err = 0.0f64;
    for _ in 0..sets {
        for &p in &[0.0, 0.1, 1.0] {
            let spins: Vec<NuclearSpin> = (0..3)
                .map(|k| NuclearSpin {
                    coupling: [
                        rng.gen_range(-2.0..2.0),
                        rng.gen_range(-2.0..2.0),
                        rng.gen_range(-2.0..2.0),
                    ],
                    polarization: p,
                    label: k,
                })
                .collect();
            let zeeman = rng.gen_range(-1.0..1.0);
            let t = rng.gen_range(0.0..4.0);
            let bath = SpinBathSpec::new(spins.clone(), zeeman)?;
            let fast = bath_factors(&bath, t)?;

            // 8-dimensional joint environment.
            let mut w0 = linalg::ComplexMatrix::identity(1);
            let mut w1 = w0.clone();
            let mut state: Option<DensityMatrix> = None;
            for spin in &spins {
                let props = spin_conditional_propagators(spin, zeeman, t)?;
                w0 = linalg::tensor(&w0, props.w0())?;
                w1 = linalg::tensor(&w1, props.w1())?;
                let s = spin_initial_state(spin)?;
                state = Some(match state {
                    None => s,
                    Some(acc) => DensityMatrix::product(&acc, &s)?,
                });
            }
            let joint = ConditionalPropagators::new(w0, w1, t)?;
            let state = state.unwrap();
            let c_brute = factor_c(&joint, &state)?;
            let d2_brute = factor_d2(&joint, &state)?;
            max_err = max_err.max((fast.c - c_brute).norm());
            max_err = max_err.max((fast.d2_factor - d2_brute).norm());
        }
    }
    Ok(Check {
        name: "bath factorization vs brute force",
        max_err,
        tol: 1e-10,
    })
}

/// Runs every check at its standard size.
pub fn run_all() -> Result<Vec<Check>> {
    Ok(vec![
        check_kraus_vs_classical()?,
        check_joint_vs_quantum(25)?,
        check_one_cycle_agreement(25)?,
        check_exponential_identity()?,
        check_bath_factorization(20)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for check in run_all().unwrap() {
            assert!(
                check.passed(),
                "{} failed: max error {:.3e} > tol {:.1e}",
                check.name,
                check.max_err,
                check.tol
            );
        }
    }
}
