//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Runs without the libtest harness so the criteria execute in order
//! and the timing criterion has the machine to itself.

mod common;

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cantree::bench::{run_bench, BenchConfig, Phase, Strategy};
use cantree::*;
use common::{item, random_db, shuffled, slice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn load(name: &str) -> TransactionDatabase {
    parse_database(&std::fs::read_to_string(format!("{DATA}/{name}")).unwrap()).unwrap()
}

fn time_limit(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn golden_optimize(version: &str) -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_cantree"))
        .args(["optimize", "--input"])
        .arg(format!("{DATA}/{version}.csv"))
        .args(["--minsup", "50%"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(out.status.success(), || format!("exit {:?}", out.status))?;
    let golden = std::fs::read(format!("{DATA}/{version}_optimized.csv")).unwrap();
    check(out.stdout == golden, || {
        format!("output differs:\n{}", String::from_utf8_lossy(&out.stdout))
    })?;
    time_limit(elapsed, Duration::from_secs(1))?;
    Ok(format!("byte-identical, {elapsed:.1?}"))
}

fn frequent_lists() -> Outcome {
    let half = MinSupport::percent(50).unwrap();
    let expected: [(&str, &[(&str, u64)]); 2] = [
        (
            "v2.csv",
            &[
                ("mouseover", 4),
                ("getBounds()", 3),
                ("mouseout", 2),
                ("clickable", 2),
            ],
        ),
        (
            "v3.csv",
            &[
                ("mouseover", 4),
                ("getMap()", 3),
                ("getBounds()", 2),
                ("visible", 2),
                ("rightclick", 2),
                ("clickable", 2),
            ],
        ),
    ];
    for (file, want) in expected {
        let tree = CanTree::from_database(&load(file)).unwrap();
        let got: BTreeMap<Item, u64> = frequent_items(&tree, half).unwrap().into_iter().collect();
        let want: BTreeMap<Item, u64> = want.iter().map(|&(n, s)| (item(n), s)).collect();
        check(got == want, || format!("{file}: got {got:?}"))?;
    }
    Ok("both lists exact".into())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cases = 240;
    for case in 0..cases {
        let db = random_db(rng.random(), 12, 10, 6);
        let minsup = rng.random_range(1..=4);
        let ms = MinSupport::absolute(minsup).unwrap();
        let tree = CanTree::from_database(&db).unwrap();
        let mined = mine_frequent_itemsets(&tree, ms).unwrap();
        let oracle = apriori_bruteforce(&db, ms).unwrap();
        let baseline = rebuild_baseline_mine(&db, ms).unwrap();
        check(mined == oracle && baseline == oracle, || {
            format!(
                "case {case} (minsup {minsup}) disagrees on\n{}",
                db.to_csv()
            )
        })?;
    }
    time_limit(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "{cases} databases, 0 discrepancies, {:.1?}",
        start.elapsed()
    ))
}

fn incremental_equals_batch() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = 150;
    for case in 0..cases {
        let db = random_db(rng.random(), 40, 14, 7);
        let cut = rng.random_range(0..=db.len());
        let mut tree = CanTree::from_database(&slice(&db, 0..cut)).unwrap();
        tree.insert_batch(&slice(&db, cut..db.len())).unwrap();
        let whole = CanTree::from_database(&db).unwrap();
        check(
            tree.structural_digest() == whole.structural_digest(),
            || format!("case {case}: digests differ"),
        )?;
        let ms = MinSupport::absolute(rng.random_range(1..=4)).unwrap();
        check(
            mine_frequent_itemsets(&tree, ms).unwrap()
                == mine_frequent_itemsets(&whole, ms).unwrap(),
            || format!("case {case}: mining differs"),
        )?;
    }
    Ok(format!("{cases} splits, 0 discrepancies"))
}

fn inverse_and_permutation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases = 150;
    for case in 0..cases {
        let db = random_db(rng.random(), 30, 14, 7);
        let mut tree = CanTree::from_database(&db).unwrap();
        let digest = tree.structural_digest();

        // random interleaving of inserts and deletes of the inserted ones
        let mut live: Vec<&Transaction> = Vec::new();
        for _ in 0..rng.random_range(0..60) {
            if live.is_empty() || rng.random_bool(0.6) {
                let t = &db.transactions()[rng.random_range(0..db.len())];
                tree.insert_transaction(t).unwrap();
                live.push(t);
            } else {
                let t = live.swap_remove(rng.random_range(0..live.len()));
                tree.delete_transaction(t).unwrap();
            }
        }
        for t in live {
            tree.delete_transaction(t).unwrap();
        }
        check(tree.structural_digest() == digest, || {
            format!("case {case}: script did not restore the digest")
        })?;
        check(tree.check_invariants().is_ok(), || {
            format!("case {case}: invariants")
        })?;

        for p in 0..4 {
            let permuted = CanTree::from_database(&shuffled(&db, rng.random())).unwrap();
            check(permuted.structural_digest() == digest, || {
                format!("case {case}: permutation {p} differs")
            })?;
        }
    }
    Ok(format!(
        "{cases} scripts and {} permutations, 0 discrepancies",
        cases * 4
    ))
}

fn bench_scaling() -> Outcome {
    let config = BenchConfig::default();
    let start = Instant::now();
    let report = run_bench(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let (small, large) = (config.base_sizes[0], config.base_sizes[1]);
    let med = |s, b, p| report.median(s, b, p).unwrap();

    let can = Strategy::CanTreeIncremental;
    let base = Strategy::RebuildBaseline;
    let can_ratio = med(can, large, Phase::IncrementApply) / med(can, small, Phase::IncrementApply);
    let base_ratio =
        med(base, large, Phase::IncrementApply) / med(base, small, Phase::IncrementApply);
    let can_total = med(can, large, Phase::IncrementApply) + med(can, large, Phase::Mine);
    let base_total = med(base, large, Phase::IncrementApply) + med(base, large, Phase::Mine);
    let summary = format!(
        "increment ratio {can_ratio:.2}x vs rebuild {base_ratio:.2}x; \
         total at {large}: {can_total:.1} ms vs {base_total:.1} ms; run {elapsed:.1?}"
    );

    check(can_ratio <= 3.0, || {
        format!("incremental ratio above 3x: {summary}")
    })?;
    check(base_ratio >= 5.0, || {
        format!("rebuild ratio below 5x: {summary}")
    })?;
    check(can_total < base_total, || {
        format!("incremental total not lower: {summary}")
    })?;
    time_limit(elapsed, Duration::from_secs(120))?;
    Ok(summary)
}

fn snapshot_round_trip() -> Outcome {
    let mut dbs: Vec<(String, TransactionDatabase)> =
        ["v2.csv", "v3.csv", "v2_optimized.csv", "v3_optimized.csv"]
            .iter()
            .map(|f| (f.to_string(), load(f)))
            .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..50 {
        dbs.push((format!("random #{i}"), random_db(rng.random(), 40, 14, 7)));
    }
    for (name, db) in &dbs {
        let tree = CanTree::from_database(db).unwrap();
        let loaded = snapshot_read(&snapshot_write(&tree)).map_err(|e| format!("{name}: {e}"))?;
        for ms in [
            MinSupport::absolute(1).unwrap(),
            MinSupport::percent(50).unwrap(),
        ] {
            check(
                mine_frequent_itemsets(&loaded, ms).unwrap()
                    == mine_frequent_itemsets(&tree, ms).unwrap(),
                || format!("{name}: mining after reload differs"),
            )?;
        }
    }
    Ok(format!("{} databases, 0 discrepancies", dbs.len()))
}

fn version_diff() -> Outcome {
    let report = diff_versions(
        &load("v2.csv"),
        &load("v3.csv"),
        MinSupport::percent(50).unwrap(),
    )
    .unwrap();
    let names = |rows: &[ItemChange]| -> Vec<String> {
        let mut v: Vec<String> = rows.iter().map(|c| c.item.to_string()).collect();
        v.sort();
        v
    };
    let got = (
        names(&report.dropped),
        names(&report.added),
        names(&report.retained),
    );
    let want = (
        vec!["mouseout".to_string()],
        vec!["getMap()".into(), "rightclick".into(), "visible".into()],
        vec!["clickable".into(), "getBounds()".into(), "mouseover".into()],
    );
    check(got == want, || format!("got {got:?}"))?;
    Ok("dropped, added and retained exact".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("optimized v2 matches golden", || golden_optimize("v2")),
        ("optimized v3 matches golden", || golden_optimize("v3")),
        ("frequent-item lists", frequent_lists),
        ("oracle equivalence", oracle_equivalence),
        ("incremental equals batch", incremental_equals_batch),
        (
            "insert/delete inverse, permutation invariance",
            inverse_and_permutation,
        ),
        ("no-rescan scaling", bench_scaling),
        ("snapshot round-trip", snapshot_round_trip),
        ("version diff", version_diff),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
