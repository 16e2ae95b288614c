//! Database optimization and cross-version recommendations.
//!
//! Optimizing a database projects each transaction onto the items that are
//! frequent in that database, keeping the original item order. Diffing two
//! versions partitions their frequent items into retained, dropped and
//! newly frequent members.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::miner::MineError;
use crate::tree::CanTree;
use crate::txndb::{Item, MinSupport, TransactionDatabase};

/// Projects every transaction of `db` onto its frequent items.
///
/// All transactions are kept, even those left without items, so rows keep
/// their correspondence with the source.
pub fn optimize_database(
    db: &TransactionDatabase,
    ms: MinSupport,
) -> Result<TransactionDatabase, MineError> {
    let (_, _, frequent) = frequent_set(db, ms)?;
    let transactions = db
        .iter()
        .map(|t| {
            let kept = t
                .items()
                .iter()
                .filter(|i| frequent.contains(*i))
                .cloned()
                .collect();
            t.with_items(kept)
        })
        .collect();
    Ok(TransactionDatabase::new(transactions)?)
}

/// Tree over the non-empty rows of `db`, the minimum support resolved
/// against every row, and the items reaching it. Rows emptied by an earlier
/// projection still count towards the database size.
fn frequent_set(
    db: &TransactionDatabase,
    ms: MinSupport,
) -> Result<(CanTree, u64, BTreeSet<Item>), MineError> {
    let minsup = ms.resolve(db.len() as u64)?;
    let mut tree = CanTree::new();
    for t in db.iter().filter(|t| !t.items().is_empty()) {
        tree.insert_transaction(t)?;
    }
    let frequent = tree
        .item_supports()
        .into_iter()
        .filter(|&(_, support)| support >= minsup)
        .map(|(item, _)| item)
        .collect();
    Ok((tree, minsup, frequent))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Retained,
    Dropped,
    Added,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Retained => "retained",
            Status::Dropped => "dropped",
            Status::Added => "added",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One item of a version diff with its support in both databases (0 where
/// the item does not occur).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemChange {
    pub item: Item,
    pub old_support: u64,
    pub new_support: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecommendationReport {
    /// Frequent in both versions, by new support descending.
    pub retained: Vec<ItemChange>,
    /// Frequent only in the old version, by old support descending.
    pub dropped: Vec<ItemChange>,
    /// Frequent only in the new version, by new support descending.
    pub added: Vec<ItemChange>,
    pub old_minsup: u64,
    pub new_minsup: u64,
}

/// Compares the frequent items of two versions. Fractional minimum supports
/// resolve against each database's own size.
pub fn diff_versions(
    old_db: &TransactionDatabase,
    new_db: &TransactionDatabase,
    ms: MinSupport,
) -> Result<RecommendationReport, MineError> {
    let (old_tree, old_minsup, old_frequent) = frequent_set(old_db, ms)?;
    let (new_tree, new_minsup, new_frequent) = frequent_set(new_db, ms)?;

    let change = |item: &Item| ItemChange {
        item: item.clone(),
        old_support: old_tree.item_support(item),
        new_support: new_tree.item_support(item),
    };
    let mut retained: Vec<ItemChange> = old_frequent
        .intersection(&new_frequent)
        .map(change)
        .collect();
    let mut dropped: Vec<ItemChange> = old_frequent.difference(&new_frequent).map(change).collect();
    let mut added: Vec<ItemChange> = new_frequent.difference(&old_frequent).map(change).collect();
    // BTreeSet iteration is canonical, so a stable sort keeps ties canonical
    retained.sort_by_key(|c| Reverse(c.new_support));
    added.sort_by_key(|c| Reverse(c.new_support));
    dropped.sort_by_key(|c| Reverse(c.old_support));

    Ok(RecommendationReport {
        retained,
        dropped,
        added,
        old_minsup,
        new_minsup,
    })
}

impl RecommendationReport {
    /// Three-section plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = format!("minsup old={} new={}\n", self.old_minsup, self.new_minsup);
        for (title, rows) in [
            ("retained", &self.retained),
            ("dropped", &self.dropped),
            ("added", &self.added),
        ] {
            let _ = writeln!(out, "{title} ({}):", rows.len());
            for c in rows {
                let _ = writeln!(out, "  {} {} -> {}", c.item, c.old_support, c.new_support);
            }
        }
        out
    }

    /// `item,status,old_support,new_support` CSV, sections in the order
    /// retained, dropped, added.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("item,status,old_support,new_support\n");
        for (status, rows) in [
            (Status::Retained, &self.retained),
            (Status::Dropped, &self.dropped),
            (Status::Added, &self.added),
        ] {
            for c in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    c.item, status, c.old_support, c.new_support
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Annotation {
    Retained,
    NewInVersion,
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Annotation::Retained => "retained",
            Annotation::NewInVersion => "new-in-version",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recommendation {
    pub item: Item,
    pub annotation: Annotation,
    pub support: u64,
}

/// Up to `k` items frequent in the new version, ranked by new support with
/// ties in canonical order.
pub fn recommend_items(report: &RecommendationReport, k: usize) -> Vec<Recommendation> {
    let mut all: Vec<Recommendation> = report
        .retained
        .iter()
        .map(|c| (c, Annotation::Retained))
        .chain(report.added.iter().map(|c| (c, Annotation::NewInVersion)))
        .map(|(c, annotation)| Recommendation {
            item: c.item.clone(),
            annotation,
            support: c.new_support,
        })
        .collect();
    all.sort_by(|a, b| b.support.cmp(&a.support).then_with(|| a.item.cmp(&b.item)));
    all.truncate(k);
    all
}

pub fn recommendations_csv(recs: &[Recommendation]) -> String {
    let mut out = String::from("rank,item,annotation,support\n");
    for (rank, r) in recs.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            rank + 1,
            r.item,
            r.annotation,
            r.support
        );
    }
    out
}
