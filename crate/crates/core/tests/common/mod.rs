//! Shared generators for the integration tests.
#![allow(dead_code)]

use cantree::{Item, Transaction, TransactionDatabase};
use proptest::prelude::*;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Mixed-case, non-ASCII and space-containing names so ordering and parsing
/// corner cases show up in random runs.
pub const NAMES: &[&str] = &[
    "a",
    "b",
    "c",
    "B",
    "Z",
    "a1",
    "a10",
    "a2",
    "getBounds()",
    "getMap()",
    "mouse over",
    "é",
    "中",
    "zIndex",
];

pub fn item(name: &str) -> Item {
    Item::new(name).unwrap()
}

pub fn db_from(rows: &[Vec<usize>]) -> TransactionDatabase {
    let txns = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let items = row.iter().map(|&k| item(NAMES[k % NAMES.len()]));
            Transaction::new(format!("t{i}"), "", items).unwrap()
        })
        .collect();
    TransactionDatabase::new(txns).unwrap()
}

/// Rows of item indices: `txns` rows over the first `alphabet` names, each
/// holding 1..=`width` items.
pub fn rows(
    alphabet: usize,
    txns: std::ops::RangeInclusive<usize>,
    width: usize,
) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(0..alphabet, 1..=width), txns)
}

pub fn database(
    alphabet: usize,
    txns: std::ops::RangeInclusive<usize>,
    width: usize,
) -> impl Strategy<Value = TransactionDatabase> {
    rows(alphabet, txns, width).prop_map(|r| db_from(&r))
}

/// Seeded random database, for loops that do not go through proptest.
pub fn random_db(seed: u64, max_txns: usize, alphabet: usize, width: usize) -> TransactionDatabase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_txns);
    let pool: Vec<usize> = (0..alphabet.min(NAMES.len())).collect();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let k = rng.random_range(1..=width.min(pool.len()));
            pool.choose_multiple(&mut rng, k).copied().collect()
        })
        .collect();
    db_from(&rows)
}

pub fn shuffled(db: &TransactionDatabase, seed: u64) -> TransactionDatabase {
    let mut txns = db.transactions().to_vec();
    txns.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    TransactionDatabase::new(txns).unwrap()
}

pub fn slice(db: &TransactionDatabase, range: std::ops::Range<usize>) -> TransactionDatabase {
    TransactionDatabase::new(db.transactions()[range].to_vec()).unwrap()
}
