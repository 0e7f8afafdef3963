//! Number of growing sides: probability mass and moments.
//!
//! `cargo run --example growth_moments -- 5,4,3 2,2,1`

use lattice_agg::distributions::{growth_count_pmf, moment, normalize_pair};
use lattice_agg::rational::to_decimal;
use lattice_agg::symfunc::moment_polynomial;
use lattice_agg::BoxDims;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let x: BoxDims = args.next().as_deref().unwrap_or("5,4,3").parse()?;
    let y: BoxDims = args.next().as_deref().unwrap_or("2,2,1").parse()?;
    let (x, y) = normalize_pair(&x, &y)?;

    let pmf = growth_count_pmf(&x, &y)?;
    for (k, p) in pmf.probs().iter().enumerate() {
        println!("P(X = {k}) = {p} ~ {}", to_decimal(p, 4));
    }
    for p in 1..=3 {
        let m = moment(&x, &y, p)?;
        println!("E[X^{p}] = {m} ~ {}", to_decimal(&m, 4));
    }
    let poly = moment_polynomial(&x, &y)?;
    let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
    println!("M(u) coefficients: [{}]", coeffs.join(", "));
    Ok(())
}
