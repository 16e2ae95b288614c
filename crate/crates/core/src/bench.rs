//! Incremental-update benchmark: canonical-order tree vs. rescan-and-rebuild.
//!
//! For every base size a seeded synthetic workload (base database plus one
//! increment of fresh transactions) is generated. Each strategy is timed
//! over three phases, per repetition:
//!
//! | strategy              | initial-build       | increment-apply              | mine          |
//! |-----------------------|---------------------|------------------------------|---------------|
//! | `cantree-incremental` | insert base         | insert the increment         | pattern growth |
//! | `rebuild-baseline`    | scan + build base   | rescan base+increment, rebuild | pattern growth |
//!
//! Transaction lengths are uniform in `items_per_transaction`; items follow
//! a Zipf law with exponent 1.0 over the alphabet. Item names are assigned
//! to Zipf ranks through a seeded shuffle, so canonical order and frequency
//! order are unrelated.

use std::fmt::{self, Write as _};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::miner::{mine_frequent_itemsets, FrequencyTree, MineError};
use crate::tree::{CanTree, TreeError};
use crate::txndb::{Item, MinSupport, Transaction};

pub const ZIPF_EXPONENT: f64 = 1.0;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid bench config: {0}")]
    Config(String),
    #[error(transparent)]
    Mine(#[from] MineError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("strategies disagree on the mined itemsets for base size {0}")]
    Mismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub base_sizes: Vec<usize>,
    pub increment_size: usize,
    pub alphabet_size: usize,
    pub items_per_transaction: (usize, usize),
    pub minsup: MinSupport,
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            base_sizes: vec![10_000, 100_000],
            increment_size: 1_000,
            alphabet_size: 200,
            items_per_transaction: (4, 12),
            minsup: MinSupport::percent(1).expect("1% is valid"),
            repetitions: 3,
            seed: 42,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: &str| Err(BenchError::Config(msg.to_string()));
        let (min, max) = self.items_per_transaction;
        if self.base_sizes.is_empty() || self.base_sizes.contains(&0) {
            return bad("base_sizes must be a non-empty list of counts >= 1");
        }
        if self.increment_size == 0 || self.alphabet_size == 0 {
            return bad("increment_size and alphabet_size must be >= 1");
        }
        if min == 0 || min > max || max > self.alphabet_size {
            return bad("items_per_transaction must satisfy 1 <= min <= max <= alphabet_size");
        }
        if self.repetitions < 3 {
            return bad("repetitions must be >= 3");
        }
        Ok(())
    }

    /// Parses `key = value` lines. Unset keys keep their defaults; `#`
    /// starts a comment line.
    ///
    /// ```text
    /// base_sizes = 10000,100000
    /// increment_size = 1000
    /// alphabet_size = 200
    /// items_per_transaction = 4..12
    /// minsup = 1%
    /// repetitions = 3
    /// seed = 42
    /// ```
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut config = BenchConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fail = |msg: String| BenchError::Config(format!("line {}: {msg}", n + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| fail(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let count = |v: &str| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| fail(format!("{key}: {v:?} is not a count")))
            };
            match key {
                "base_sizes" => {
                    config.base_sizes = value.split(',').map(count).collect::<Result<_, _>>()?
                }
                "increment_size" => config.increment_size = count(value)?,
                "alphabet_size" => config.alphabet_size = count(value)?,
                "items_per_transaction" => {
                    let (lo, hi) = value
                        .split_once("..")
                        .ok_or_else(|| fail(format!("{key}: expected min..max")))?;
                    config.items_per_transaction = (count(lo)?, count(hi)?);
                }
                "minsup" => config.minsup = value.parse().map_err(|e| fail(format!("{e}")))?,
                "repetitions" => config.repetitions = count(value)?,
                "seed" => {
                    config.seed = value
                        .parse()
                        .map_err(|_| fail(format!("seed: {value:?} is not a u64")))?
                }
                other => return Err(fail(format!("unknown key {other:?}"))),
            }
        }
        config.validate()?;
        Ok(config)
    }
}

/// A generated base database and the increment applied on top of it.
#[derive(Debug, Clone)]
pub struct Workload {
    pub base: Vec<Transaction>,
    pub increment: Vec<Transaction>,
    /// First 16 hex digits of SHA-256 over the ids and items of every
    /// transaction, base first.
    pub checksum: String,
}

impl Workload {
    pub fn generate(config: &BenchConfig, base_size: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (base_size as u64).rotate_left(32));
        let width = config.alphabet_size.to_string().len();
        let mut names: Vec<Item> = (0..config.alphabet_size)
            .map(|i| Item::new(format!("api{i:0width$}")).expect("generated names are valid"))
            .collect();
        names.shuffle(&mut rng);
        let zipf = Zipf::new(config.alphabet_size as f64, ZIPF_EXPONENT)
            .expect("alphabet_size >= 1 and exponent > 0");
        let (min, max) = config.items_per_transaction;

        let draw = |id: String, rng: &mut ChaCha8Rng| {
            let len = rng.random_range(min..=max);
            let mut picked: Vec<usize> = Vec::with_capacity(len);
            while picked.len() < len {
                let rank = zipf.sample(rng) as usize - 1;
                if !picked.contains(&rank) {
                    picked.push(rank);
                }
            }
            Transaction::new(id, "", picked.into_iter().map(|r| names[r].clone()))
                .expect("generated ids are valid")
        };
        let base: Vec<Transaction> = (0..base_size)
            .map(|i| draw(format!("b{i}"), &mut rng))
            .collect();
        let increment: Vec<Transaction> = (0..config.increment_size)
            .map(|i| draw(format!("n{i}"), &mut rng))
            .collect();

        let mut hasher = Sha256::new();
        for t in base.iter().chain(&increment) {
            hasher.update(t.id().as_bytes());
            for item in t.items() {
                hasher.update(b",");
                hasher.update(item.as_str().as_bytes());
            }
            hasher.update(b"\n");
        }
        let checksum = hasher
            .finalize()
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect();
        Workload {
            base,
            increment,
            checksum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    CanTreeIncremental,
    RebuildBaseline,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::CanTreeIncremental, Strategy::RebuildBaseline];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::CanTreeIncremental => "cantree-incremental",
            Strategy::RebuildBaseline => "rebuild-baseline",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    InitialBuild,
    IncrementApply,
    Mine,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::InitialBuild, Phase::IncrementApply, Phase::Mine];

    pub fn as_str(self) -> &'static str {
        match self {
            Phase::InitialBuild => "initial-build",
            Phase::IncrementApply => "increment-apply",
            Phase::Mine => "mine",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub strategy: Strategy,
    pub base_size: usize,
    pub phase: Phase,
    pub repetition: usize,
    pub elapsed_ms: f64,
    pub workload_checksum: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("strategy,base_size,phase,repetition,elapsed_ms,workload_checksum\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{:.3},{}",
                r.strategy, r.base_size, r.phase, r.repetition, r.elapsed_ms, r.workload_checksum
            );
        }
        out
    }

    pub fn timings(&self, strategy: Strategy, base_size: usize, phase: Phase) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.strategy == strategy && r.base_size == base_size && r.phase == phase)
            .map(|r| r.elapsed_ms)
            .collect()
    }

    /// Median over repetitions, `None` when there are no matching rows.
    pub fn median(&self, strategy: Strategy, base_size: usize, phase: Phase) -> Option<f64> {
        let mut v = self.timings(strategy, base_size, phase);
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let mid = v.len() / 2;
        Some(if v.len() % 2 == 1 {
            v[mid]
        } else {
            (v[mid - 1] + v[mid]) / 2.0
        })
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed().as_secs_f64() * 1e3)
}

/// Runs every base size, repetition, strategy and phase, sequentially.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    config.validate()?;
    let mut report = BenchReport::default();
    for &base_size in &config.base_sizes {
        let workload = Workload::generate(config, base_size);
        for repetition in 0..config.repetitions {
            let mut push = |strategy, phase, elapsed_ms| {
                report.rows.push(BenchRow {
                    strategy,
                    base_size,
                    phase,
                    repetition,
                    elapsed_ms,
                    workload_checksum: workload.checksum.clone(),
                })
            };

            let (tree, build_ms) = timed(|| -> Result<CanTree, TreeError> {
                let mut tree = CanTree::new();
                for t in &workload.base {
                    tree.insert_transaction(t)?;
                }
                tree.compact();
                Ok(tree)
            });
            let mut tree = tree?;
            let (applied, apply_ms) = timed(|| -> Result<(), TreeError> {
                for t in &workload.increment {
                    tree.insert_transaction(t)?;
                }
                Ok(())
            });
            applied?;
            let (incremental, mine_ms) = timed(|| mine_frequent_itemsets(&tree, config.minsup));
            let incremental = incremental?;
            push(Strategy::CanTreeIncremental, Phase::InitialBuild, build_ms);
            push(
                Strategy::CanTreeIncremental,
                Phase::IncrementApply,
                apply_ms,
            );
            push(Strategy::CanTreeIncremental, Phase::Mine, mine_ms);
            drop(tree);

            let (fp, build_ms) = timed(|| FrequencyTree::build_from(&workload.base, config.minsup));
            drop(fp?);
            let (fp, apply_ms) = timed(|| {
                FrequencyTree::build_from(
                    workload.base.iter().chain(&workload.increment),
                    config.minsup,
                )
            });
            let fp = fp?;
            let (rebuilt, mine_ms) = timed(|| fp.mine());
            push(Strategy::RebuildBaseline, Phase::InitialBuild, build_ms);
            push(Strategy::RebuildBaseline, Phase::IncrementApply, apply_ms);
            push(Strategy::RebuildBaseline, Phase::Mine, mine_ms);

            if rebuilt != incremental {
                return Err(BenchError::Mismatch(base_size));
            }
        }
    }
    Ok(report)
}
