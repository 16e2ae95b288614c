//! Persist a tree, reload it later and keep updating it without the
//! original database.

use cantree::{
    mine_frequent_itemsets, parse_database, snapshot_read, snapshot_write, CanTree, MinSupport,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v2 = parse_database(include_str!("../data/v2.csv"))?;
    let tree = CanTree::from_database(&v2)?;
    let text = snapshot_write(&tree);
    print!("{text}");

    let path = std::env::temp_dir().join(format!("cantree-example-{}.snap", std::process::id()));
    std::fs::write(&path, &text)?;
    let mut loaded = snapshot_read(&std::fs::read_to_string(&path)?)?;
    std::fs::remove_file(&path)?;
    assert_eq!(loaded, tree);

    let ms = MinSupport::percent(50)?;
    assert_eq!(
        mine_frequent_itemsets(&loaded, ms)?,
        mine_frequent_itemsets(&tree, ms)?
    );

    let v3 = parse_database(include_str!("../data/v3.csv"))?;
    loaded.insert_batch(&v3)?;
    println!(
        "\nreloaded and extended: {} transactions, {} nodes",
        loaded.transaction_count(),
        loaded.node_count()
    );
    Ok(())
}
