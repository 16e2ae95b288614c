//! Grow and shrink a tree one transaction at a time, then check it against
//! a tree built from scratch.

use cantree::{parse_database, CanTree, Transaction, TransactionDatabase};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let db = parse_database(include_str!("../data/v2.csv"))?;
    let (first, rest) = db.transactions().split_at(2);

    let mut tree = CanTree::new();
    for t in first {
        tree.insert_transaction(t)?;
    }
    println!("after 2 rows: {} nodes", tree.node_count());
    for t in rest {
        tree.insert_transaction(t)?;
        println!("insert {:<6} -> {} nodes", t.id(), tree.node_count());
    }
    assert_eq!(tree, CanTree::from_database(&db)?);
    println!("matches a full build");

    let extra = Transaction::of("Item5", &["getBounds()", "mouseover", "setMap()"])?;
    let before = tree.structural_digest();
    tree.insert_transaction(&extra)?;
    println!("insert Item5 -> {} nodes", tree.node_count());
    tree.delete_transaction(&extra)?;
    assert_eq!(tree.structural_digest(), before);
    println!(
        "delete Item5 -> {} nodes, digest restored",
        tree.node_count()
    );

    let absent = Transaction::of("Item9", &["zoom"])?;
    match tree.delete_transaction(&absent) {
        Err(e) => println!("delete Item9 rejected: {e}"),
        Ok(()) => unreachable!(),
    }

    for t in &db {
        tree.delete_transaction(t)?;
    }
    assert!(tree.is_empty());
    assert_eq!(
        tree,
        CanTree::from_database(&TransactionDatabase::default())?
    );
    println!("all rows deleted, tree empty");
    Ok(())
}
