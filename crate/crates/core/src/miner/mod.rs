//! Frequent-item and frequent-itemset mining.
//!
//! [`mine_frequent_itemsets`] reads a [`CanTree`] in one pass, projecting it
//! onto its frequent items, and runs pattern growth (recursive
//! conditional-tree projection) on the result. [`apriori_bruteforce`] and
//! [`rebuild_baseline_mine`] compute the same result by independent routes.

mod apriori;
mod baseline;
mod growth;

use std::cmp::Ordering;
use std::fmt::Write as _;

use thiserror::Error;

use crate::tree::{CanTree, NodeId, TreeError};
use crate::txndb::{Item, MinSupport, TxnError};
use growth::{Code, Growth, PatternTree};

pub use apriori::{apriori_bruteforce, APRIORI_MAX_ITEMS};
pub use baseline::{rebuild_baseline_mine, FrequencyTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MineError {
    #[error(transparent)]
    Txn(#[from] TxnError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("{distinct} distinct items exceed the brute-force limit of {limit}")]
    AlphabetTooLarge { distinct: usize, limit: usize },
}

/// A frequent itemset: items in canonical order and the number of
/// transactions containing all of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemsetWithSupport {
    pub items: Vec<Item>,
    pub support: u64,
}

/// Mining output, sorted by support (descending) then by item sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningResult {
    pub minsup_resolved: u64,
    pub itemsets: Vec<ItemsetWithSupport>,
}

fn by_support_then_items(a: &ItemsetWithSupport, b: &ItemsetWithSupport) -> Ordering {
    b.support
        .cmp(&a.support)
        .then_with(|| a.items.cmp(&b.items))
}

impl MiningResult {
    pub(crate) fn new(minsup_resolved: u64, mut itemsets: Vec<ItemsetWithSupport>) -> Self {
        itemsets.sort_by(by_support_then_items);
        MiningResult {
            minsup_resolved,
            itemsets,
        }
    }

    pub fn len(&self) -> usize {
        self.itemsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ItemsetWithSupport> {
        self.itemsets.iter()
    }

    /// Support of exactly this itemset, if it was found frequent. `items`
    /// must be in canonical order.
    pub fn support_of(&self, items: &[Item]) -> Option<u64> {
        self.itemsets
            .iter()
            .find(|s| s.items == items)
            .map(|s| s.support)
    }

    /// `items,support` CSV, items joined with `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("items,support\n");
        for set in &self.itemsets {
            let names: Vec<&str> = set.items.iter().map(Item::as_str).collect();
            let _ = writeln!(out, "{},{}", names.join(";"), set.support);
        }
        out
    }
}

impl<'a> IntoIterator for &'a MiningResult {
    type Item = &'a ItemsetWithSupport;
    type IntoIter = std::slice::Iter<'a, ItemsetWithSupport>;

    fn into_iter(self) -> Self::IntoIter {
        self.itemsets.iter()
    }
}

/// Items whose support reaches the resolved minimum, by support descending
/// then canonical order.
pub fn frequent_items(tree: &CanTree, ms: MinSupport) -> Result<Vec<(Item, u64)>, MineError> {
    let minsup = ms.resolve(tree.transaction_count())?;
    let mut items: Vec<(Item, u64)> = tree
        .item_supports()
        .into_iter()
        .filter(|&(_, s)| s >= minsup)
        .collect();
    items.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(items)
}

/// Same `items,support` CSV as [`MiningResult::to_csv`], one item per row.
pub fn frequent_items_csv(items: &[(Item, u64)]) -> String {
    let mut out = String::from("items,support\n");
    for (item, support) in items {
        let _ = writeln!(out, "{item},{support}");
    }
    out
}

/// The conditional tree of `item`: its weighted prefix paths inserted into a
/// fresh canonical-order tree, keeping only items whose support within those
/// paths reaches `minsup_resolved`.
pub fn conditional_tree(
    tree: &CanTree,
    item: &Item,
    minsup_resolved: u64,
) -> Result<CanTree, MineError> {
    let paths = tree.prefix_paths(item)?;
    let mut local: std::collections::HashMap<&Item, u64> = std::collections::HashMap::new();
    for (path, weight) in &paths {
        for i in path {
            *local.entry(i).or_default() += weight;
        }
    }
    let mut cond = CanTree::new();
    for (path, weight) in &paths {
        let kept: Vec<Item> = path
            .iter()
            .filter(|i| local[i] >= minsup_resolved)
            .cloned()
            .collect();
        if !kept.is_empty() {
            cond.insert_path(&kept, *weight);
        }
    }
    Ok(cond)
}

/// All itemsets with support at or above the resolved minimum.
///
/// The tree is projected once onto its frequent items, ordered by support
/// (ties canonical), into a transient prefix tree that pattern growth then
/// mines. The projection is a single pass over the stored tree; the stored
/// tree itself is never reordered.
pub fn mine_frequent_itemsets(tree: &CanTree, ms: MinSupport) -> Result<MiningResult, MineError> {
    let minsup = ms.resolve(tree.transaction_count())?;

    let supports = tree.symbol_supports();
    let mut frequent: Vec<(u32, &Item, u64)> = (0..tree.symbol_count() as u32)
        .map(|s| (s, tree.symbol_item(s), supports[s as usize]))
        .filter(|&(_, _, support)| support >= minsup)
        .collect();
    frequent.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| a.1.cmp(b.1)));
    let mut code_of = vec![None; tree.symbol_count()];
    for (code, &(s, _, _)) in frequent.iter().enumerate() {
        code_of[s as usize] = Some(code as Code);
    }

    // Every node whose count exceeds its children's total ends that many
    // transactions; re-insert each such path, restricted to frequent items.
    let mut projected = PatternTree::identity(frequent.len());
    let mut path: Vec<Code> = Vec::new();
    let mut sorted: Vec<Code> = Vec::new();
    // children are pushed in reverse so nodes pop in pre-order, which is
    // arena order after `CanTree::compact`
    let mut stack: Vec<(NodeId, usize)> = tree
        .children_of(CanTree::root())
        .iter()
        .rev()
        .map(|&c| (c, 0))
        .collect();
    while let Some((node, depth)) = stack.pop() {
        path.truncate(depth);
        if let Some(code) = code_of[tree.symbol_at(node) as usize] {
            path.push(code);
        }
        let children = tree.children_of(node);
        let ending = tree.count_of(node) - children.iter().map(|&c| tree.count_of(c)).sum::<u64>();
        if ending > 0 && !path.is_empty() {
            sorted.clear();
            sorted.extend_from_slice(&path);
            sorted.sort_unstable();
            projected.insert(&sorted, ending);
        }
        let depth = path.len();
        stack.extend(children.iter().rev().map(|&c| (c, depth)));
    }

    let mut growth = Growth::new(frequent.len(), minsup);
    growth.mine(&projected);
    let itemsets = growth
        .found
        .into_iter()
        .map(|(codes, support)| {
            let mut items: Vec<Item> = codes
                .iter()
                .map(|&c| frequent[c as usize].1.clone())
                .collect();
            items.sort();
            ItemsetWithSupport { items, support }
        })
        .collect();
    Ok(MiningResult::new(minsup, itemsets))
}
