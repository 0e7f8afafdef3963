//! Follow the most frequent self-aggregations of a partition, keeping ties.
//!
//! `cargo run --release --example self_aggregation_trace -- 7,5,3 5`

use lattice_agg::chains::{most_frequent_trace, DEFAULT_EXPAND_LIMIT};
use lattice_agg::rational::to_decimal;
use lattice_agg::Partition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let lam: Partition = args.next().as_deref().unwrap_or("3,1,1").parse()?;
    let steps: usize = args.next().as_deref().unwrap_or("4").parse()?;

    let tree = most_frequent_trace(&lam, steps, DEFAULT_EXPAND_LIMIT);
    for (level, lv) in tree.levels.iter().enumerate() {
        for br in &lv.branches {
            let shown: Vec<String> = br.results.iter().take(4).map(|r| r.to_string()).collect();
            let more = if br.results.len() > 4 { " ..." } else { "" };
            println!(
                "{}: {} -> {}{more}  ({} at {}{})",
                level + 1,
                br.parent,
                shown.join(" "),
                br.results.len(),
                to_decimal(&br.probability, 4),
                if br.expanded { "" } else { ", not expanded" },
            );
        }
    }
    Ok(())
}
