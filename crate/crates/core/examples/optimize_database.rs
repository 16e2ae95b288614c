//! Project a usage database onto its frequent items.
//!
//! cargo run --example optimize_database [path/to/db.csv] [minsup]

use cantree::{optimize_database, parse_database, MinSupport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("../data/v2.csv").to_string(),
    };
    let ms: MinSupport = args.next().as_deref().unwrap_or("50%").parse()?;
    let db = parse_database(&text)?;
    let optimized = optimize_database(&db, ms)?;

    let before: usize = db.iter().map(|t| t.items().len()).sum();
    let after: usize = optimized.iter().map(|t| t.items().len()).sum();
    print!("{}", optimized.to_csv());
    eprintln!("{before} item occurrences -> {after}");
    Ok(())
}
