//! Compare the frequent members of two versions of an API and suggest what
//! to learn first in the new one.

use cantree::recommend::recommendations_csv;
use cantree::{diff_versions, parse_database, recommend_items, MinSupport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let old = parse_database(include_str!("../data/v2.csv"))?;
    let new = parse_database(include_str!("../data/v3.csv"))?;
    let report = diff_versions(&old, &new, MinSupport::percent(50)?)?;

    print!("{}", report.to_text());
    println!();
    print!("{}", report.to_csv());
    println!();
    print!("{}", recommendations_csv(&recommend_items(&report, 3)));
    Ok(())
}
