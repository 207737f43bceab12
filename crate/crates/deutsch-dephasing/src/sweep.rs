//! Parameter sweeps and CSV emission: coherence-parameter curves and
//! NV-bath time series, plus the single-point table report.

use rayon::prelude::*;

use crate::dephasing::DephasingFactors;
use crate::deutsch::{
    sample_outcomes, two_cycle_probs_classical, two_cycle_probs_exponential,
    two_cycle_probs_quantum, FunctionId, ProbabilityTable,
};
use crate::env::{bath_factors, SpinBathSpec};
use crate::error::{Error, Result};

/// Sentinel emitted for conditionals whose conditioning probability is zero.
pub const UNDEF: &str = "undef";

/// Closed-form engines available for coherence sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepEngine {
    Classical,
    QuantumExponential,
}

impl SweepEngine {
    pub fn label(self) -> &'static str {
        match self {
            Self::Classical => "classical",
            Self::QuantumExponential => "quantum-exponential",
        }
    }
}

/// Evenly spaced evaluation grid.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::validation(format!(
                "grid count must be >= 2, got {count}"
            )));
        }
        if start.partial_cmp(&stop) != Some(std::cmp::Ordering::Less) {
            return Err(Error::validation(format!(
                "grid start must be below stop, got {start}..{stop}"
            )));
        }
        Ok(Self { start, stop, count })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| self.start + step * k as f64)
            .collect()
    }
}

/// 15 significant digits, '.' decimal separator.
fn fmt15(x: f64) -> String {
    format!("{x:.14e}")
}

fn push_table(fields: &mut Vec<String>, table: &ProbabilityTable) {
    let tc = table.second.as_ref().expect("two-cycle table");
    for i in 0..2 {
        match tc.cond[i] {
            Some(row) => {
                fields.push(fmt15(row[0]));
                fields.push(fmt15(row[1]));
            }
            None => {
                fields.push(UNDEF.into());
                fields.push(UNDEF.into());
            }
        }
    }
    for row in &tc.joint {
        for &p in row {
            fields.push(fmt15(p));
        }
    }
}

const TABLE_COLUMNS: &str = "p00,p01,p10,p11,P00,P01,P10,P11";

/// Two-cycle curves as a function of the shared coherence parameter
/// c = c_A = c_B, one CSV row per (function, engine, c).
pub fn sweep_c(
    functions: &[FunctionId],
    engines: &[SweepEngine],
    grid: &GridSpec,
) -> Result<String> {
    let points = grid.points();
    if let Some(&bad) = points.iter().find(|c| !(0.0..=1.0).contains(*c)) {
        return Err(Error::validation(format!(
            "coherence grid value {bad} outside [0, 1]"
        )));
    }
    let mut out = String::new();
    out.push_str("function,engine,c,");
    out.push_str(TABLE_COLUMNS);
    out.push('\n');

    let mut jobs = Vec::new();
    for &f in functions {
        for &engine in engines {
            for &c in &points {
                jobs.push((f, engine, c));
            }
        }
    }
    let rows: Vec<String> = jobs
        .par_iter()
        .map(|&(f, engine, c)| {
            let table = match engine {
                SweepEngine::Classical => two_cycle_probs_classical(f, c, c),
                SweepEngine::QuantumExponential => two_cycle_probs_exponential(f, c, c),
            };
            let mut fields = vec![f.to_string(), engine.label().into(), fmt15(c)];
            push_table(&mut fields, &table);
            fields.join(",")
        })
        .collect();
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

/// One row of an NV time sweep: the raw factors and both closed-form tables.
pub struct NvPoint {
    pub t: f64,
    pub factors_a: DephasingFactors,
    pub factors_b: DephasingFactors,
    pub classical: ProbabilityTable,
    pub quantum: ProbabilityTable,
}

/// Evaluates bath factors and both probability tables over a time grid.
/// Formulas take the real parts of the (generally complex) factors.
pub fn nv_points(
    f: FunctionId,
    bath_a: &SpinBathSpec,
    bath_b: &SpinBathSpec,
    grid: &GridSpec,
) -> Result<Vec<NvPoint>> {
    grid.points()
        .par_iter()
        .map(|&t| {
            let fa = bath_factors(bath_a, t)?;
            let fb = bath_factors(bath_b, t)?;
            let (ca, cb) = (fa.c.re, fb.c.re);
            Ok(NvPoint {
                t,
                factors_a: fa,
                factors_b: fb,
                classical: two_cycle_probs_classical(f, ca, cb),
                quantum: two_cycle_probs_quantum(f, ca, cb, fa.d2(), fb.d2()),
            })
        })
        .collect()
}

/// NV time-series CSV: one row per (function, engine, t), with the raw
/// factors repeated on each row.
pub fn nv_sweep(
    functions: &[FunctionId],
    bath_a: &SpinBathSpec,
    bath_b: &SpinBathSpec,
    grid: &GridSpec,
) -> Result<String> {
    let mut out = String::new();
    out.push_str("function,engine,t_us,cA_re,cA_im,cA_abs,d2A,cB_re,cB_im,cB_abs,d2B,");
    out.push_str(TABLE_COLUMNS);
    out.push('\n');
    for &f in functions {
        let points = nv_points(f, bath_a, bath_b, grid)?;
        for p in &points {
            for (engine, table) in [("classical", &p.classical), ("quantum", &p.quantum)] {
                let mut fields = vec![
                    f.to_string(),
                    engine.to_string(),
                    fmt15(p.t),
                    fmt15(p.factors_a.c.re),
                    fmt15(p.factors_a.c.im),
                    fmt15(p.factors_a.c.norm()),
                    fmt15(p.factors_a.d2()),
                    fmt15(p.factors_b.c.re),
                    fmt15(p.factors_b.c.im),
                    fmt15(p.factors_b.c.norm()),
                    fmt15(p.factors_b.d2()),
                ];
                push_table(&mut fields, table);
                out.push_str(&fields.join(","));
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// Text report of the closed-form tables at one parameter point, with
/// optional sampled counts from the classical table.
pub fn table_report(
    f: FunctionId,
    c_a: f64,
    c_b: f64,
    d2_a: f64,
    d2_b: f64,
    shots: Option<(u64, u64)>,
) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!(
        "{f} ({:?}), c_A = {c_a}, c_B = {c_b}, d2_A = {d2_a}, d2_B = {d2_b}\n",
        f.kind()
    ));
    let named: [(&str, ProbabilityTable); 3] = [
        ("classical", two_cycle_probs_classical(f, c_a, c_b)),
        ("quantum", two_cycle_probs_quantum(f, c_a, c_b, d2_a, d2_b)),
        (
            "exponential (d2 = c2)",
            two_cycle_probs_exponential(f, c_a, c_b),
        ),
    ];
    for (name, table) in &named {
        out.push_str(&format!("\n[{name}]\n"));
        out.push_str(&format!(
            "  first measurement: p0 = {:.6}, p1 = {:.6}\n",
            table.p_first[0], table.p_first[1]
        ));
        let tc = table.second.as_ref().unwrap();
        for i in 0..2 {
            match tc.cond[i] {
                Some(row) => out.push_str(&format!(
                    "  p{i}0 = {:.6}  p{i}1 = {:.6}   P{i}0 = {:.6}  P{i}1 = {:.6}\n",
                    row[0], row[1], tc.joint[i][0], tc.joint[i][1]
                )),
                None => out.push_str(&format!(
                    "  p{i}0 = {UNDEF}  p{i}1 = {UNDEF}   P{i}0 = 0  P{i}1 = 0\n"
                )),
            }
        }
    }
    if let Some((shots, seed)) = shots {
        let counts = sample_outcomes(&named[0].1, shots, seed)?;
        out.push_str(&format!(
            "\n[sampled counts, classical table, {shots} shots, seed {seed}]\n"
        ));
        for (i, row) in counts.iter().enumerate() {
            for (j, n) in row.iter().enumerate() {
                out.push_str(&format!("  n{i}{j} = {n}\n"));
            }
        }
    }
    Ok(out)
}
