//! Solve the bound-state spectrum of the symmetric double-delta well.
//!
//! Sweeps the dimensionless coupling `a = hbar^2/(2 m alpha L)` across the
//! two-state/one-state threshold at `a = 1`, then repeats one case starting
//! from physical parameters to show the unit reduction.
//!
//! Run with: `cargo run --example spectrum`

use double_delta::model::{Coupling, EnergyScale, PhysicalParams};
use double_delta::quantize::{spectrum, SolverSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let solver = SolverSpec::default();

    println!("spectrum vs coupling (canonical units, E = -xi^2)");
    println!("{:>8}  {:>6}  {:>7}  {:>20}  {:>20}", "a", "states", "parity", "xi", "energy");
    for a in [0.1, 0.25, 0.5, 0.9, 1.0, 1.5, 4.0, -1.0] {
        let spec = spectrum(Coupling::new(a)?, EnergyScale::canonical(), &solver)?;
        if spec.states.is_empty() {
            println!("{a:>8}  {:>6}  (repulsive or too weak: nothing bound)", 0);
            continue;
        }
        for (i, s) in spec.states.iter().enumerate() {
            let label = if i == 0 { format!("{a:>8}  {:>6}", spec.count()) } else { " ".repeat(16) };
            println!(
                "{label}  {:>7}  {:>20.16}  {:>20.16}",
                format!("{:?}", s.parity()).to_lowercase(),
                s.xi(),
                s.energy()
            );
        }
    }

    // The same physics from laboratory-style inputs: alpha = 4, m = 1/2,
    // hbar = L = 1 reduces to a = 1/4 with energy scale e0 = 1.
    let params = PhysicalParams::new(1.0, 0.5, 4.0, 1.0)?;
    let spec = spectrum(params.coupling(), params.energy_scale(), &solver)?;
    println!();
    println!(
        "physical route: alpha = 4, m = 1/2  ->  a = {}, e0 = {}",
        params.coupling().value(),
        params.energy_scale().e0()
    );
    for s in &spec.states {
        println!(
            "  {:?}: xi = {:.16}, E = {:.16}, quantization residual = {:.2e}",
            s.parity(),
            s.xi(),
            s.energy(),
            s.quantization_residual().abs()
        );
    }
    Ok(())
}
