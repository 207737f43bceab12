//! Runs the full density-matrix simulation with phase-damping Kraus
//! operators and checks it against the classical closed forms.
//!
//! Run with: cargo run --example kraus_engine

use deutsch_dephasing::deutsch::{run_cycles_kraus, two_cycle_probs_classical, Cycles, FunctionId};
use deutsch_dephasing::Result;

fn main() -> Result<()> {
    let (c_a, c_b) = (0.8, 0.4);
    println!("Kraus-channel engine at c_A = {c_a}, c_B = {c_b}\n");
    for f in FunctionId::ALL {
        let engine = run_cycles_kraus(f, c_a, c_b, Cycles::Two)?;
        let formula = two_cycle_probs_classical(f, c_a, c_b);
        let tc = engine.second.as_ref().unwrap();
        println!("{f} ({:?})", f.kind());
        println!(
            "  first cycle:  p0 = {:.6}, p1 = {:.6}",
            engine.p_first[0], engine.p_first[1]
        );
        for i in 0..2 {
            if let Some(row) = tc.cond[i] {
                println!(
                    "  after {i}:      p{i}0 = {:.6}, p{i}1 = {:.6}",
                    row[0], row[1]
                );
            }
        }
        println!(
            "  max deviation from closed form: {:.2e}\n",
            engine.max_abs_diff(&formula)
        );
    }
    Ok(())
}
