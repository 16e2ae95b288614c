//! Time incremental updates against rescan-and-rebuild and print medians.
//!
//! cargo run --release --example bench [small]

use cantree::bench::{run_bench, BenchConfig, Phase, Strategy};
use cantree::MinSupport;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = if std::env::args().nth(1).as_deref() == Some("small") {
        BenchConfig {
            base_sizes: vec![1_000, 10_000],
            increment_size: 100,
            minsup: MinSupport::percent(2)?,
            ..BenchConfig::default()
        }
    } else {
        BenchConfig::default()
    };
    let report = run_bench(&config)?;

    println!(
        "median milliseconds over {} repetitions",
        config.repetitions
    );
    println!(
        "{:<20} {:>9} {:>16} {:>16} {:>10}",
        "strategy", "base", "initial-build", "increment-apply", "mine"
    );
    for strategy in Strategy::ALL {
        for &base in &config.base_sizes {
            let m = |phase| report.median(strategy, base, phase).unwrap_or(f64::NAN);
            println!(
                "{:<20} {:>9} {:>16.2} {:>16.2} {:>10.2}",
                strategy.as_str(),
                base,
                m(Phase::InitialBuild),
                m(Phase::IncrementApply),
                m(Phase::Mine)
            );
        }
    }
    Ok(())
}
