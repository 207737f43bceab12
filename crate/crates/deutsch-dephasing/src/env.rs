//! Concrete environment models: the exponential stand-in, single nuclear
//! spins, and the NV-center spin bath with product-form factor computation.
//!
//! Units: Hamiltonian coefficients are angular frequencies in rad/us, times
//! in us (hbar = 1). Spin operators are sigma/2.

use num_complex::Complex64;

use crate::dephasing::{ConditionalPropagators, DephasingFactors};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::state::DensityMatrix;

/// Electron gyromagnetic ratio in MHz/T.
pub const GAMMA_E_MHZ_PER_T: f64 = 28.08e3;

/// 13C nuclear gyromagnetic ratio in MHz/T.
pub const GAMMA_N_MHZ_PER_T: f64 = 10.71;

/// Folds mu0/(4 pi), hbar, and unit conversions for the dipolar coupling:
/// inputs in MHz/T and nm, output in rad/us. Pinned by test against a
/// step-by-step SI evaluation.
pub const DIPOLAR_PREFACTOR: f64 =
    4.0 * std::f64::consts::PI * std::f64::consts::PI * 1.054571817e-8;

/// The bundled 32-spin NV coupling table.
pub const NV32_TABLE: &str = include_str!("../data/nv32_couplings.csv");

/// One environmental nuclear spin: its coupling vector to the qubit, its
/// initial polarization, and a label.
#[derive(Clone, Copy, Debug)]
pub struct NuclearSpin {
    /// (A^{z,x}, A^{z,y}, A^{z,z}) in rad/us.
    pub coupling: [f64; 3],
    /// Initial z polarization in [-1, 1].
    pub polarization: f64,
    pub label: u32,
}

/// A full spin-bath environment for one qubit.
#[derive(Clone, Debug)]
pub struct SpinBathSpec {
    pub spins: Vec<NuclearSpin>,
    /// Common Zeeman angular frequency gamma_n * B_z in rad/us.
    pub zeeman: f64,
    /// Optional per-spin distances from the qubit in nm.
    pub distances_nm: Option<Vec<f64>>,
}

impl SpinBathSpec {
    pub fn new(spins: Vec<NuclearSpin>, zeeman: f64) -> Result<Self> {
        if spins.is_empty() {
            return Err(Error::validation(
                "spin bath must contain at least one spin",
            ));
        }
        Ok(Self {
            spins,
            zeeman,
            distances_nm: None,
        })
    }
}

/// Exponential-dephasing stand-in: c(t) = exp(-rate t), d² = c² by
/// construction (memoryless noise).
#[derive(Clone, Copy, Debug)]
pub struct ExponentialModel {
    /// Decay rate in 1/us, nonnegative.
    pub rate: f64,
}

impl ExponentialModel {
    pub fn new(rate: f64) -> Result<Self> {
        if rate < 0.0 || !rate.is_finite() {
            return Err(Error::validation(format!(
                "rate must be finite and >= 0, got {rate}"
            )));
        }
        Ok(Self { rate })
    }

    pub fn factors(&self, t: f64) -> DephasingFactors {
        let c = (-self.rate * t).exp();
        DephasingFactors {
            c: Complex64::new(c, 0.0),
            d2_factor: Complex64::new(c * c, 0.0),
            time: t,
        }
    }
}

/// exp(-i t (v . sigma) / 2) in closed form.
fn pauli_rotation(v: [f64; 3], t: f64) -> ComplexMatrix {
    let omega = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let theta = omega * t;
    if theta == 0.0 {
        return ComplexMatrix::identity(2);
    }
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let n = [v[0] / omega, v[1] / omega, v[2] / omega];
    // cos(theta/2) I - i sin(theta/2) (n . sigma)
    let m = [
        [
            Complex64::new(c, -s * n[2]),
            Complex64::new(-s * n[1], -s * n[0]),
        ],
        [
            Complex64::new(s * n[1], -s * n[0]),
            Complex64::new(c, s * n[2]),
        ],
    ];
    ComplexMatrix::from_rows(&[m[0].to_vec(), m[1].to_vec()]).unwrap()
}

/// Conditional propagators for one spin: the qubit pointer state 0 sees only
/// the Zeeman term, pointer state 1 additionally sees the coupling vector.
pub fn spin_conditional_propagators(
    spin: &NuclearSpin,
    zeeman: f64,
    t: f64,
) -> Result<ConditionalPropagators> {
    if t < 0.0 {
        return Err(Error::validation(format!("time must be >= 0, got {t}")));
    }
    let w0 = pauli_rotation([0.0, 0.0, zeeman], t);
    let w1 = pauli_rotation(
        [
            spin.coupling[0],
            spin.coupling[1],
            zeeman + spin.coupling[2],
        ],
        t,
    );
    ConditionalPropagators::new(w0, w1, t)
}

/// Initial per-spin state diag(1/2 + p/4, 1/2 - p/4).
pub fn spin_initial_state(spin: &NuclearSpin) -> Result<DensityMatrix> {
    let p = spin.polarization;
    if p.abs() > 1.0 {
        return Err(Error::validation(format!(
            "polarization must be in [-1, 1], got {p}"
        )));
    }
    let m = ComplexMatrix::from_real_rows(&[vec![0.5 + p / 4.0, 0.0], vec![0.0, 0.5 - p / 4.0]])?;
    DensityMatrix::new(m, vec![2])
}

fn per_spin_factor(spin: &NuclearSpin, zeeman: f64, t: f64) -> Complex64 {
    let props = spin_conditional_propagators(spin, zeeman, t).expect("t >= 0 checked by caller");
    let prod = props.w1().adjoint().mul(props.w0());
    let p = spin.polarization;
    // Initial state is diagonal, so only the diagonal of w1† w0 contributes.
    (0.5 + p / 4.0) * prod.get(0, 0) + (0.5 - p / 4.0) * prod.get(1, 1)
}

/// Product-form decoherence factors of the whole bath; cost is linear in the
/// number of spins.
pub fn bath_factors(bath: &SpinBathSpec, t: f64) -> Result<DephasingFactors> {
    if t < 0.0 {
        return Err(Error::validation(format!("time must be >= 0, got {t}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut c = one;
    let mut d2 = one;
    for spin in &bath.spins {
        c *= per_spin_factor(spin, bath.zeeman, t);
        d2 *= per_spin_factor(spin, bath.zeeman, 2.0 * t);
    }
    Ok(DephasingFactors {
        c,
        d2_factor: d2,
        time: t,
    })
}

/// Coupling vector from a nuclear position via the secular dipolar tensor:
/// component i carries 1 - 3 (r.i)(r.z)/r².
pub fn dipolar_coupling(position_nm: [f64; 3], gamma_e: f64, gamma_n: f64) -> Result<[f64; 3]> {
    let r2: f64 = position_nm.iter().map(|x| x * x).sum();
    if r2 == 0.0 {
        return Err(Error::validation("nuclear position must be nonzero"));
    }
    let r = r2.sqrt();
    let base = DIPOLAR_PREFACTOR * gamma_e * gamma_n / (r * r * r);
    let rz = position_nm[2];
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = base * (1.0 - 3.0 * position_nm[i] * rz / r2);
    }
    Ok(out)
}

/// Parses a bath table: '#' comments, a header row, then rows of
/// (k, r_nm, Ax, Ay, Az) separated by commas or whitespace. Polarization and
/// Zeeman frequency come from the caller.
pub fn load_bath_table(source: &str, polarization: f64, zeeman: f64) -> Result<SpinBathSpec> {
    if polarization.abs() > 1.0 {
        return Err(Error::validation(format!(
            "polarization must be in [-1, 1], got {polarization}"
        )));
    }
    let mut spins = Vec::new();
    let mut distances = Vec::new();
    let mut header_seen = false;
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if !header_seen {
            header_seen = true;
            if fields[0].parse::<f64>().is_err() {
                continue; // header row
            }
        }
        if fields.len() != 5 {
            return Err(Error::Parse {
                line,
                msg: format!(
                    "expected 5 columns (k, r_nm, Ax, Ay, Az), got {}",
                    fields.len()
                ),
            });
        }
        let label: u32 = fields[0].parse().map_err(|_| Error::Parse {
            line,
            msg: format!("spin index '{}' is not an integer", fields[0]),
        })?;
        let mut nums = [0.0f64; 4];
        for (slot, field) in nums.iter_mut().zip(&fields[1..]) {
            *slot = field.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("field '{field}' is not numeric"),
            })?;
        }
        distances.push(nums[0]);
        spins.push(NuclearSpin {
            coupling: [nums[1], nums[2], nums[3]],
            polarization,
            label,
        });
    }
    if spins.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no data rows found".into(),
        });
    }
    let mut bath = SpinBathSpec::new(spins, zeeman)?;
    bath.distances_nm = Some(distances);
    Ok(bath)
}

/// Zeeman angular frequency in rad/us for a field in tesla. With
/// `angular` set (the default convention) the cyclic gamma_n is converted
/// with a factor 2 pi.
pub fn zeeman_frequency(field_t: f64, angular: bool) -> f64 {
    let cycles_per_us = GAMMA_N_MHZ_PER_T * field_t;
    if angular {
        2.0 * std::f64::consts::PI * cycles_per_us
    } else {
        cycles_per_us
    }
}

/// The bundled 32-spin NV bath.
pub fn nv32_bath(polarization: f64, zeeman: f64) -> Result<SpinBathSpec> {
    load_bath_table(NV32_TABLE, polarization, zeeman)
}
