//! The graphical picture behind the quantization conditions.
//!
//! Bound states sit where the line `2 a xi` crosses `1 + e^{-2 xi}` (even) or
//! `1 - e^{-2 xi}` (odd). This renders a coarse text plot of the three curves
//! for a two-state and a one-state coupling, then marks the crossings found
//! by the solver. The even curve starts at 2 so the line always crosses it
//! once; the odd curve starts at 0 with slope 2, so its crossing exists only
//! when the line is flatter, i.e. a < 1.
//!
//! Run with: `cargo run --example graphical_solution`

use double_delta::model::{Coupling, EnergyScale};
use double_delta::quantize::{quantization_curves, spectrum, SolverSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let couplings = [0.4, 1.5];
    let table = quantization_curves(3.0, 61, &couplings)?;

    const ROWS: usize = 18;
    const Y_MAX: f64 = 4.0;
    let mut canvas = vec![vec![' '; table.xi.len()]; ROWS];
    let mut paint = |xs: &[f64], ys: &[f64], glyph: char| {
        for (j, (&_x, &y)) in xs.iter().zip(ys).enumerate() {
            if !(0.0..=Y_MAX).contains(&y) {
                continue;
            }
            let row = ((Y_MAX - y) / Y_MAX * (ROWS - 1) as f64).round() as usize;
            if canvas[row][j] == ' ' {
                canvas[row][j] = glyph;
            }
        }
    };
    paint(&table.xi, &table.even_rhs, 'E');
    paint(&table.xi, &table.odd_rhs, 'O');
    for (a, line) in &table.lines {
        let glyph = if *a < 1.0 { '/' } else { '\\' };
        paint(&table.xi, line, glyph);
    }

    println!("E: 1+e^(-2xi)   O: 1-e^(-2xi)   /: 2(0.4)xi   \\: 2(1.5)xi");
    println!();
    for (i, row) in canvas.iter().enumerate() {
        let y = Y_MAX * (ROWS - 1 - i) as f64 / (ROWS - 1) as f64;
        println!("{y:>4.1} |{}", row.iter().collect::<String>());
    }
    println!("     +{}", "-".repeat(table.xi.len()));
    println!("      xi = 0 .. 3");
    println!();

    let solver = SolverSpec::default();
    for a in couplings {
        let spec = spectrum(Coupling::new(a)?, EnergyScale::canonical(), &solver)?;
        print!("a = {a}: crossings at");
        if spec.states.is_empty() {
            print!(" (none)");
        }
        for s in &spec.states {
            print!("  xi_{:?} = {:.12}", s.parity(), s.xi());
        }
        println!("  ({} bound state{})", spec.count(), if spec.count() == 1 { "" } else { "s" });
    }
    Ok(())
}
