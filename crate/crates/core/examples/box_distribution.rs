//! Exact result distribution for two boxes, and the planar closed form.
//!
//! `cargo run --example box_distribution -- 1,3 1,2`

use lattice_agg::distributions::{box_distribution, box_distribution_2d};
use lattice_agg::geometry::attachment_count;
use lattice_agg::rational::{to_decimal, to_fraction};
use lattice_agg::BoxDims;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let x: BoxDims = args.next().as_deref().unwrap_or("1,3").parse()?;
    let y: BoxDims = args.next().as_deref().unwrap_or("1,2").parse()?;

    let d = box_distribution(&x, &y)?;
    println!("{x} + {y}: {} attachments", attachment_count(&x, &y)?);
    for (z, p) in d.iter_canonical() {
        println!("  {z:<10} {:>8}  {}", to_fraction(p), to_decimal(p, 4));
    }
    if x.dim() == 2 {
        assert_eq!(box_distribution_2d(&x, &y)?, d);
        println!("closed form agrees");
    }
    Ok(())
}
