//! Repeated aggregation with a unit box, forward and backward.
//!
//! `cargo run --example unit_chain -- 2,1 4`

use lattice_agg::chains::{n_step_probability, unit_box_evolve};
use lattice_agg::distributions::unit_mean_directions;
use lattice_agg::rational::to_decimal;
use lattice_agg::BoxDims;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let x: BoxDims = args.next().as_deref().unwrap_or("2,1").parse()?;
    let steps: usize = args.next().as_deref().unwrap_or("4").parse()?;

    println!("mean growing sides from {x}: {}", to_decimal(&unit_mean_directions(&x), 4));
    let d = unit_box_evolve(&x, steps);
    println!("{} states after {steps} steps", d.len());
    for (z, p) in d.iter_canonical().take(10) {
        let back = n_step_probability(&x, z, steps)?;
        assert_eq!(&back, p);
        println!("  {z:<10} {p}");
    }
    Ok(())
}
