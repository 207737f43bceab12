//! Builds a spin bath two ways: from dipolar couplings computed at given
//! lattice positions, and from a CSV coupling table.
//!
//! Run with: cargo run --example custom_bath

use deutsch_dephasing::env::{
    bath_factors, dipolar_coupling, load_bath_table, NuclearSpin, SpinBathSpec, GAMMA_E_MHZ_PER_T,
    GAMMA_N_MHZ_PER_T,
};
use deutsch_dephasing::Result;

fn main() -> Result<()> {
    // Three nuclei at hand-picked positions (nm) around the electron spin.
    let positions = [[0.3, 0.1, 0.4], [-0.5, 0.2, 0.1], [0.2, -0.6, -0.3]];
    let spins: Vec<NuclearSpin> = positions
        .iter()
        .enumerate()
        .map(|(k, &pos)| {
            let coupling = dipolar_coupling(pos, GAMMA_E_MHZ_PER_T, GAMMA_N_MHZ_PER_T)?;
            Ok(NuclearSpin {
                coupling,
                polarization: 0.0,
                label: k as u32,
            })
        })
        .collect::<Result<_>>()?;

    println!("dipolar couplings (rad/us):");
    for s in &spins {
        println!(
            "  spin {}: A = [{:+.4}, {:+.4}, {:+.4}]",
            s.label, s.coupling[0], s.coupling[1], s.coupling[2]
        );
    }

    let bath = SpinBathSpec::new(spins, 0.0)?;
    println!("\n{:>6} {:>9} {:>10}", "t/us", "|c(t)|", "d2(t)");
    for k in 0..=6 {
        let t = 2.0 * k as f64;
        let factors = bath_factors(&bath, t)?;
        println!("{t:>6.1} {:>9.5} {:>10.5}", factors.c.norm(), factors.d2());
    }

    // The same bath could come from a CSV table (columns k, r_nm, Ax, Ay, Az).
    let csv = "\
# index, distance (nm), couplings (rad/us)
k,r_nm,Ax,Ay,Az
1,0.5,0.61,-0.12,0.33
2,0.7,-0.05,0.20,-0.41
";
    let parsed = load_bath_table(csv, 0.1, 0.0)?;
    println!(
        "\nparsed {} spins from inline CSV, first A_z = {}",
        parsed.spins.len(),
        parsed.spins[0].coupling[2]
    );
    Ok(())
}
