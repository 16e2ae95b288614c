//! Incremental frequent-pattern mining over a canonical-order tree.
//!
//! Transactions are stored in a prefix tree whose item order is fixed
//! (byte-lexicographic on item names) rather than derived from item
//! frequencies. Adding or removing transactions therefore only touches
//! their own paths: there is no rescan of earlier data and no
//! restructuring, yet the tree can be mined at any point.
//!
//! On top of the tree the crate provides:
//!
//! - frequent item and itemset mining by pattern growth ([`miner`]),
//!   checked against a brute-force Apriori oracle and a frequency-ordered
//!   rescan-and-rebuild baseline;
//! - projection of an API-usage database onto its frequent members and
//!   cross-version diffs with member recommendations ([`recommend`]);
//! - text snapshots so a tree can be updated across process runs;
//! - a benchmark harness comparing incremental updates against rebuilding
//!   ([`bench`]) and the `cantree` command-line front end ([`cli`]).
//!
//! ```
//! use cantree::{mine_frequent_itemsets, parse_database, CanTree, MinSupport};
//!
//! let db = parse_database("t1,Map,getBounds();mouseover\nt2,Polyline,mouseover\n").unwrap();
//! let tree = CanTree::from_database(&db).unwrap();
//! let result = mine_frequent_itemsets(&tree, "50%".parse::<MinSupport>().unwrap()).unwrap();
//! assert_eq!(result.to_csv(), "items,support\nmouseover,2\ngetBounds(),1\ngetBounds();mouseover,1\n");
//! ```

pub mod bench;
pub mod cli;
pub mod miner;
pub mod recommend;
pub mod tree;
pub mod txndb;

pub use miner::{
    apriori_bruteforce, conditional_tree, frequent_items, mine_frequent_itemsets,
    rebuild_baseline_mine, FrequencyTree, ItemsetWithSupport, MineError, MiningResult,
};
pub use recommend::{
    diff_versions, optimize_database, recommend_items, ItemChange, RecommendationReport,
};
pub use tree::{snapshot_read, snapshot_write, CanTree, TreeError};
pub use txndb::{
    canonical_compare, canonicalize, parse_database, resolve_min_support, Item, MinSupport,
    Transaction, TransactionDatabase, TxnError,
};
