//! The deep-well limit: even and odd states collapse into a degenerate pair.
//!
//! As the coupling parameter a -> 0 both decay parameters approach 1/(2a)
//! and the splitting xi_even - xi_odd dies like e^{-1/a}/a. Evaluating the
//! two Lambert-W closed forms and subtracting would lose everything to
//! cancellation, so the gap comes from a series in the exponentially small
//! parameter. The table shows the collapse; the last rows underflow f64
//! entirely even though both levels are still distinct real numbers.
//!
//! Run with: `cargo run --example degenerate_limit`

use double_delta::model::{Coupling, EnergyScale};
use double_delta::quantize::{degeneracy_gap, spectrum, SolverSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let solver = SolverSpec::default();
    println!(
        "{:>8}  {:>22}  {:>22}  {:>13}",
        "a", "xi_even", "xi_odd", "gap"
    );
    for &a in &[0.5, 0.25, 0.1, 0.05, 0.02, 0.01, 0.005, 0.001] {
        let spec = spectrum(Coupling::new(a)?, EnergyScale::canonical(), &solver)?;
        let even = spec.even().expect("even state always exists");
        let odd = spec.odd().expect("two states for a < 1");
        println!(
            "{a:>8}  {:>22.16}  {:>22.16}  {:>13.6e}",
            even.xi(),
            odd.xi(),
            degeneracy_gap(a)?
        );
    }
    println!();
    println!("asymptotics: xi_even/odd -> 1/(2a) ± e^(-1/a)/(2a), E -> -1/(4a^2)");
    println!("the gap at a = 0.001 underflows to zero in double precision, yet");
    println!("the ordering gap(0.001) < gap(0.01) still certifies the collapse.");
    Ok(())
}
