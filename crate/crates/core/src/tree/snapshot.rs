//! Text snapshots of a tree.
//!
//! ```text
//! cantree-snapshot v1
//! txns <transaction_count>
//! <depth> <item> <count>
//! ...
//! ```
//!
//! Node lines follow the same pre-order as the structural digest. Item names
//! may contain inner spaces, so the reader takes the first and last
//! space-separated tokens as depth and count.

use super::{CanTree, TreeError};
use crate::txndb::Item;

pub const SNAPSHOT_HEADER: &str = "cantree-snapshot v1";

pub fn snapshot_write(tree: &CanTree) -> String {
    let mut out = format!("{SNAPSHOT_HEADER}\ntxns {}\n", tree.transaction_count());
    out.push_str(&tree.structural_digest());
    out
}

pub fn snapshot_read(text: &str) -> Result<CanTree, TreeError> {
    let err = |line: usize, message: String| TreeError::SnapshotFormat { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));

    match lines.next() {
        Some((_, SNAPSHOT_HEADER)) => {}
        Some((n, other)) => return Err(err(n, format!("unsupported header {other:?}"))),
        None => return Err(err(1, "missing header".into())),
    }
    let txns = match lines.next() {
        Some((n, line)) => line
            .strip_prefix("txns ")
            .and_then(|v| v.parse::<u64>().ok())
            .ok_or_else(|| err(n, format!("expected `txns <count>`, got {line:?}")))?,
        None => return Err(err(2, "missing txns line".into())),
    };

    let mut tree = CanTree::new();
    // stack[d] is the most recent node at depth d; stack[0] is the root
    let mut stack = vec![CanTree::root()];
    let mut last_line = 2;
    for (n, line) in lines {
        last_line = n;
        if line.is_empty() {
            continue;
        }
        let (depth, rest) = line
            .split_once(' ')
            .ok_or_else(|| err(n, "expected `<depth> <item> <count>`".into()))?;
        let (name, count) = rest
            .rsplit_once(' ')
            .ok_or_else(|| err(n, "expected `<depth> <item> <count>`".into()))?;
        let depth: usize = depth
            .parse()
            .map_err(|_| err(n, format!("bad depth {depth:?}")))?;
        let count: u64 = count
            .parse()
            .map_err(|_| err(n, format!("bad count {count:?}")))?;
        let item = Item::new(name).map_err(|e| err(n, e.to_string()))?;
        if depth == 0 || depth > stack.len() {
            return Err(err(
                n,
                format!("depth {depth} does not follow the previous node"),
            ));
        }
        if count == 0 {
            return Err(err(n, "node count must be at least 1".into()));
        }
        stack.truncate(depth);
        let parent = *stack.last().expect("root is never popped");
        if let Some(parent_item) = tree.node_item(parent) {
            if *parent_item >= item {
                return Err(err(
                    n,
                    format!("{item} is not after its parent {parent_item}"),
                ));
            }
        }
        if let Some(sibling) = tree.last_child_item(parent) {
            if *sibling >= item {
                return Err(err(n, format!("{item} is not after its sibling {sibling}")));
            }
        }
        let node = tree.push_child_unchecked(parent, &item, count);
        stack.push(node);
    }

    tree.set_transaction_count(txns);
    tree.check_invariants()
        .map_err(|message| err(last_line, message))?;
    Ok(tree)
}
