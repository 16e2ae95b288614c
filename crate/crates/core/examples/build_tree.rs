//! Build a tree from a transaction CSV and inspect it.
//!
//! cargo run --example build_tree [path/to/db.csv]

use cantree::{parse_database, CanTree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("../data/v2.csv").to_string(),
    };
    let db = parse_database(&text)?;
    let tree = CanTree::from_database(&db)?;

    println!(
        "{} transactions, {} nodes",
        tree.transaction_count(),
        tree.node_count()
    );
    println!("\nstructure (depth item count):");
    print!("{}", tree.structural_digest());
    println!("\nitem supports:");
    for (item, support) in tree.item_supports() {
        println!("  {item:<14} {support}");
    }
    Ok(())
}
