//! Rescan-and-rebuild baseline: a classic frequency-ordered FP-tree.
//!
//! The item order depends on supports over the whole database, so any
//! change to the database may reorder items and the tree has to be rebuilt
//! from a full rescan. This is the cost profile the canonical-order tree
//! avoids.

use std::collections::HashMap;

use super::growth::{Code, Growth, PatternTree};
use super::{ItemsetWithSupport, MineError, MiningResult};
use crate::txndb::{Item, MinSupport, Transaction, TransactionDatabase};

/// FP-tree built from a full scan, with items ordered by descending support
/// (ties in canonical order) and infrequent items pruned.
#[derive(Debug, Clone)]
pub struct FrequencyTree {
    tree: PatternTree,
    /// code -> item, most frequent first
    items: Vec<Item>,
    supports: Vec<u64>,
    minsup: u64,
    transaction_count: u64,
}

impl FrequencyTree {
    pub fn build(db: &TransactionDatabase, ms: MinSupport) -> Result<Self, MineError> {
        Self::build_from(db.transactions(), ms)
    }

    /// Builds from any transaction sequence. It is scanned twice: once to
    /// count supports, once to insert.
    pub fn build_from<'a, I>(transactions: I, ms: MinSupport) -> Result<Self, MineError>
    where
        I: IntoIterator<Item = &'a Transaction>,
        I::IntoIter: Clone,
    {
        let transactions = transactions.into_iter();
        let mut counts: HashMap<&Item, u64> = HashMap::new();
        let mut n = 0u64;
        for t in transactions.clone() {
            n += 1;
            for item in t.items() {
                *counts.entry(item).or_default() += 1;
            }
        }
        let minsup = ms.resolve(n)?;

        let mut ranked: Vec<(&Item, u64)> =
            counts.into_iter().filter(|&(_, s)| s >= minsup).collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        let code_of: HashMap<&Item, Code> = ranked
            .iter()
            .enumerate()
            .map(|(code, &(item, _))| (item, code as Code))
            .collect();

        let mut tree = PatternTree::identity(ranked.len());
        let mut path = Vec::new();
        for t in transactions {
            path.clear();
            path.extend(
                t.items()
                    .iter()
                    .filter_map(|item| code_of.get(item).copied()),
            );
            if !path.is_empty() {
                path.sort_unstable();
                tree.insert(&path, 1);
            }
        }

        Ok(FrequencyTree {
            tree,
            items: ranked.iter().map(|&(item, _)| item.clone()).collect(),
            supports: ranked.iter().map(|&(_, s)| s).collect(),
            minsup,
            transaction_count: n,
        })
    }

    pub fn minsup(&self) -> u64 {
        self.minsup
    }

    pub fn transaction_count(&self) -> u64 {
        self.transaction_count
    }

    pub fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    /// Frequent items, most frequent first.
    pub fn frequent_items(&self) -> impl Iterator<Item = (&Item, u64)> {
        self.items.iter().zip(self.supports.iter().copied())
    }

    pub fn mine(&self) -> MiningResult {
        let mut growth = Growth::new(self.items.len(), self.minsup);
        growth.mine(&self.tree);
        let itemsets = growth
            .found
            .into_iter()
            .map(|(codes, support)| {
                let mut items: Vec<Item> = codes
                    .iter()
                    .map(|&c| self.items[c as usize].clone())
                    .collect();
                items.sort();
                ItemsetWithSupport { items, support }
            })
            .collect();
        MiningResult::new(self.minsup, itemsets)
    }
}

/// Rescans `db`, rebuilds a frequency-ordered tree and mines it.
pub fn rebuild_baseline_mine(
    db: &TransactionDatabase,
    ms: MinSupport,
) -> Result<MiningResult, MineError> {
    Ok(FrequencyTree::build(db, ms)?.mine())
}
