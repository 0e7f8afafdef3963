//! Seeded sampling against the exact law.
//!
//! `cargo run --release --example monte_carlo -- 4,2 3,1 1000000 7`

use lattice_agg::distributions::box_distribution;
use lattice_agg::montecarlo::{estimate_distribution, SampleConfig};
use lattice_agg::rational::to_f64;
use lattice_agg::BoxDims;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let x: BoxDims = args.next().as_deref().unwrap_or("4,2").parse()?;
    let y: BoxDims = args.next().as_deref().unwrap_or("3,1").parse()?;
    let trials: u64 = args.next().as_deref().unwrap_or("1000000").parse()?;
    let seed: u64 = args.next().as_deref().unwrap_or("7").parse()?;

    let exact = box_distribution(&x, &y)?;
    let est = estimate_distribution(&x, &y, &SampleConfig::new(trials, seed)?)?;
    for (z, p) in exact.iter_canonical() {
        println!("  {z:<10} exact {:.5}  sampled {:.5}", to_f64(p), est.frequency(z));
    }
    println!("total variation: {:.5}", est.total_variation(&exact));
    Ok(())
}
