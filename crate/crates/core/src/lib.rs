//! Exact distributions for aggregating axis-parallel lattice boxes and
//! integer partitions, the unit-box Markov chain, self-aggregation traces,
//! and a seeded Monte Carlo cross-check.
//!
//! ```
//! use lattice_agg::{box_distribution, BoxDims};
//!
//! let x: BoxDims = "1,3".parse().unwrap();
//! let y: BoxDims = "1,2".parse().unwrap();
//! let d = box_distribution(&x, &y).unwrap();
//! assert_eq!(d.total_attachments().to_string(), "14");
//! ```

pub mod chains;
pub mod cli;
pub mod distributions;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod output;
pub mod partitions;
pub mod rational;
pub mod symfunc;

pub use chains::{
    fibonacci_limit_report, most_frequent_trace, n_step_probability, self_agg_distribution,
    unit_box_evolve, unit_box_step, StateDistribution, TraceTree,
};
pub use distributions::{
    box_distribution, growth_count_pmf, moment, normalize_pair, unit_box_distribution,
    Distribution,
};
pub use error::{AggError, Result};
pub use geometry::{aggregate_at, attachment_count, parameter_set, AttachmentParam, BoxDims};
pub use partitions::{partition_distribution, Partition};
pub use rational::Rational;
