//! Level-wise Apriori over bitmask-encoded transactions. Slow and
//! exhaustive; used as the reference the tree miners are checked against.

use std::collections::{HashMap, HashSet};

use super::{ItemsetWithSupport, MineError, MiningResult};
use crate::txndb::{MinSupport, TransactionDatabase};

/// Largest alphabet the oracle will enumerate.
pub const APRIORI_MAX_ITEMS: usize = 20;

pub fn apriori_bruteforce(
    db: &TransactionDatabase,
    ms: MinSupport,
) -> Result<MiningResult, MineError> {
    let minsup = ms.resolve(db.len() as u64)?;
    let alphabet = db.alphabet();
    if alphabet.len() > APRIORI_MAX_ITEMS {
        return Err(MineError::AlphabetTooLarge {
            distinct: alphabet.len(),
            limit: APRIORI_MAX_ITEMS,
        });
    }
    let bit: HashMap<_, u32> = alphabet
        .iter()
        .enumerate()
        .map(|(i, item)| (item, 1u32 << i))
        .collect();
    let rows: Vec<u32> = db
        .iter()
        .map(|t| t.items().iter().fold(0, |m, item| m | bit[item]))
        .collect();
    let support = |set: u32| rows.iter().filter(|&&r| r & set == set).count() as u64;

    let mut found: Vec<(u32, u64)> = Vec::new();
    let mut level: Vec<u32> = (0..alphabet.len())
        .map(|i| 1u32 << i)
        .filter(|&s| support(s) >= minsup)
        .collect();
    level.sort_unstable();
    while !level.is_empty() {
        found.extend(level.iter().map(|&s| (s, support(s))));
        let frequent: HashSet<u32> = level.iter().copied().collect();
        let mut next = HashSet::new();
        for (i, &a) in level.iter().enumerate() {
            for &b in &level[i + 1..] {
                let joined = a | b;
                if joined.count_ones() != a.count_ones() + 1 {
                    continue;
                }
                // every subset one item smaller must already be frequent
                let closed = (0..alphabet.len())
                    .map(|k| 1u32 << k)
                    .filter(|&k| joined & k != 0)
                    .all(|k| frequent.contains(&(joined & !k)));
                if closed && support(joined) >= minsup {
                    next.insert(joined);
                }
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }

    let itemsets = found
        .into_iter()
        .map(|(set, support)| ItemsetWithSupport {
            items: (0..alphabet.len())
                .filter(|&i| set & (1 << i) != 0)
                .map(|i| alphabet[i].clone())
                .collect(),
            support,
        })
        .collect();
    Ok(MiningResult::new(minsup, itemsets))
}
