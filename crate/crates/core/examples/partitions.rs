//! Aggregation of partitions through both constructions.
//!
//! `cargo run --example partitions -- 4,2 4,1`

use lattice_agg::partitions::{
    partition_distribution, partition_distribution_combinatorial, rotations,
};
use lattice_agg::rational::to_fraction;
use lattice_agg::Partition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let lam: Partition = args.next().as_deref().unwrap_or("4,2").parse()?;
    let mu: Partition = args.next().as_deref().unwrap_or("4,1").parse()?;

    let shown: Vec<String> = rotations(&mu).iter().map(|r| r.to_string()).collect();
    println!("rotations of {mu}: {}", shown.join(" "));

    let d = partition_distribution(&lam, &mu)?;
    assert_eq!(d, partition_distribution_combinatorial(&lam, &mu)?);
    println!("{lam} + {mu}: {} attachments", d.total_attachments());
    for (nu, p) in d.iter_canonical() {
        println!("  {nu:<10} {}", to_fraction(p));
    }
    if let Some((p, winners)) = d.argmax() {
        let w: Vec<String> = winners.iter().map(|n| n.to_string()).collect();
        println!("most frequent: {} at {}", w.join(", "), to_fraction(&p));
    }
    Ok(())
}
