//! Draws finite-shot outcome counts from a two-cycle probability table with
//! a seeded generator, as an experiment would record them.
//!
//! Run with: cargo run --example sampled_counts

use deutsch_dephasing::deutsch::{sample_outcomes, two_cycle_probs_classical, FunctionId};
use deutsch_dephasing::Result;

fn main() -> Result<()> {
    let c = 0.6;
    let table = two_cycle_probs_classical(FunctionId::F1, c, c);
    let shots = 20_000;
    let counts = sample_outcomes(&table, shots, 42)?;

    println!("f1 (balanced), classical channel, c = {c}, {shots} shots, seed 42\n");
    println!(
        "{:>8} {:>10} {:>12} {:>12}",
        "outcome", "count", "empirical", "exact"
    );
    let tc = table.second.as_ref().unwrap();
    for (i, row) in counts.iter().enumerate() {
        for (j, &n) in row.iter().enumerate() {
            let exact = tc.joint[i][j];
            println!(
                "{:>8} {n:>10} {:>12.5} {exact:>12.5}",
                format!("{i}{j}"),
                n as f64 / shots as f64
            );
        }
    }
    Ok(())
}
