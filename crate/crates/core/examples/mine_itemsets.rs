//! Mine frequent itemsets and cross-check them against the brute-force and
//! rebuild miners.
//!
//! cargo run --example mine_itemsets [minsup]   (default 50%)

use cantree::{
    apriori_bruteforce, conditional_tree, frequent_items, mine_frequent_itemsets, parse_database,
    rebuild_baseline_mine, CanTree, Item, MinSupport,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ms: MinSupport = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("50%")
        .parse()?;
    let db = parse_database(include_str!("../data/v3.csv"))?;
    let tree = CanTree::from_database(&db)?;

    let result = mine_frequent_itemsets(&tree, ms)?;
    println!("minsup {ms} resolves to {}", result.minsup_resolved);
    println!("frequent items:");
    for (item, support) in frequent_items(&tree, ms)? {
        println!("  {item} {support}");
    }
    println!("{} frequent itemsets, largest first:", result.len());
    let mut sets: Vec<_> = result.iter().collect();
    sets.sort_by_key(|s| std::cmp::Reverse(s.items.len()));
    for set in sets.iter().take(5) {
        let names: Vec<&str> = set.items.iter().map(Item::as_str).collect();
        println!("  {{{}}} {}", names.join(", "), set.support);
    }

    assert_eq!(result, apriori_bruteforce(&db, ms)?);
    assert_eq!(result, rebuild_baseline_mine(&db, ms)?);
    println!("brute force and rebuild baseline agree");

    let visible = Item::new("visible")?;
    let cond = conditional_tree(&tree, &visible, result.minsup_resolved)?;
    println!("conditional tree of {visible}:");
    print!("{}", cond.structural_digest());
    Ok(())
}
