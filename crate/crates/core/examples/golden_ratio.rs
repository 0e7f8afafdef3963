//! Planar self-aggregation settles into a Fibonacci step.
//!
//! `cargo run --example golden_ratio -- 10,6 12`

use lattice_agg::chains::{fibonacci_limit_report, golden_limit_probability};
use lattice_agg::rational::{to_decimal, to_fraction};
use lattice_agg::Partition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let lam: Partition = args.next().as_deref().unwrap_or("10,6").parse()?;
    let steps: usize = args.next().as_deref().unwrap_or("12").parse()?;

    for row in fibonacci_limit_report(&lam, steps)? {
        let prob = row
            .probability
            .as_ref()
            .map(|p| format!("{} ~ {}", to_fraction(p), to_decimal(p, 4)))
            .unwrap_or_else(|| "-".into());
        println!("{:>3} {:<14} {}  {prob}", row.step, row.state.to_string(), to_decimal(&row.ratios[0], 4));
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    println!("limits: ratio {phi:.4}, probability {:.4}", golden_limit_probability());
    Ok(())
}
