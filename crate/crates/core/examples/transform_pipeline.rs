//! The full Fourier pipeline: forward transform, inversion, Parseval.
//!
//! Even states use the cosine transform, odd states the sine transform. For
//! each bound state at a two-state coupling this compares the adaptive
//! quadrature against the closed-form transform on a k-grid, reconstructs
//! the eigenfunction back from the closed form at a few positions, and
//! checks that the momentum-side norm matches the position-side norm.
//!
//! Run with: `cargo run --example transform_pipeline`

use double_delta::eigen::build_wavefn;
use double_delta::model::{Coupling, EnergyScale};
use double_delta::quantize::{spectrum, SolverSpec};
use double_delta::transform::{
    analytic_transform, inverse_reconstruct, parseval_residual, wavefn_transform, QuadratureSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = 0.5;
    let quad = QuadratureSpec::default();
    let spec = spectrum(
        Coupling::new(a)?,
        EnergyScale::canonical(),
        &SolverSpec::default(),
    )?;

    for state in &spec.states {
        let w = build_wavefn(*state)?;
        let t = analytic_transform(&w);
        println!(
            "{:?} state at a = {a}: xi = {:.12}",
            w.parity(),
            w.xi()
        );

        println!("  forward transform (numeric quadrature vs closed form)");
        println!("  {:>6}  {:>16}  {:>16}  {:>9}", "k", "numeric", "closed", "|diff|");
        for k in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let numeric = wavefn_transform(&w, k, &quad)?;
            let closed = t.eval(k);
            println!(
                "  {k:>6.1}  {numeric:>16.12}  {closed:>16.12}  {:>9.2e}",
                (numeric - closed).abs()
            );
        }

        println!("  inverse transform (integrating the closed form back)");
        println!("  {:>6}  {:>16}  {:>16}  {:>9}", "x", "reconstructed", "phi(x)", "|diff|");
        for x in [0.0, 0.5, 1.0, 1.7, 3.0] {
            let rebuilt = inverse_reconstruct(&t, x, &quad)?;
            let direct = w.evaluate(x);
            println!(
                "  {x:>6.1}  {rebuilt:>16.12}  {direct:>16.12}  {:>9.2e}",
                (rebuilt - direct).abs()
            );
        }

        let parseval = parseval_residual(&w, &t, &quad)?;
        println!("  Parseval residual |norm_k - norm_x| / norm_x = {parseval:.2e}");
        println!();
    }
    Ok(())
}
