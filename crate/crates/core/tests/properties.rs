mod common;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use cantree::*;
use common::{database, db_from, item, rows, shuffled, slice, NAMES};
use proptest::prelude::*;

fn item_name() -> impl Strategy<Value = Item> {
    prop_oneof![
        prop::sample::select(NAMES).prop_map(item),
        "[a-zA-Z0-9()_. é中]{1,6}".prop_filter_map("invalid item", |s| Item::new(s).ok()),
    ]
}

fn itemset_supports(result: &MiningResult) -> HashMap<Vec<Item>, u64> {
    result
        .iter()
        .map(|s| (s.items.clone(), s.support))
        .collect()
}

fn naive_support(db: &TransactionDatabase, items: &[Item]) -> u64 {
    db.iter()
        .filter(|t| items.iter().all(|i| t.contains(i)))
        .count() as u64
}

fn apply_script(tree: &mut CanTree, db: &TransactionDatabase, script: &[(bool, usize)]) {
    for &(insert, k) in script {
        let t = &db.transactions()[k % db.len()];
        if insert {
            tree.insert_transaction(t).unwrap();
        } else {
            // absent transactions must leave the tree alone
            let before = tree.structural_digest();
            if tree.delete_transaction(t).is_err() {
                assert_eq!(tree.structural_digest(), before);
            }
        }
    }
}

proptest! {
    #[test]
    fn canonical_order_is_total(a in item_name(), b in item_name(), c in item_name()) {
        prop_assert_eq!(canonical_compare(&a, &b), canonical_compare(&b, &a).reverse());
        prop_assert_eq!(canonical_compare(&a, &b) == Ordering::Equal, a == b);
        if canonical_compare(&a, &b) != Ordering::Greater
            && canonical_compare(&b, &c) != Ordering::Greater
        {
            prop_assert_ne!(canonical_compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn canonicalize_is_sorted_and_idempotent(items in prop::collection::vec(item_name(), 0..8)) {
        let t = Transaction::new("t", "", items.clone()).unwrap();
        let once = canonicalize(&t);
        prop_assert!(once.windows(2).all(|w| canonical_compare(&w[0], &w[1]) == Ordering::Less));
        let again = canonicalize(&Transaction::new("t", "", once.clone()).unwrap());
        prop_assert_eq!(&again, &once);
        let distinct: BTreeSet<_> = items.into_iter().collect();
        prop_assert_eq!(once.len(), distinct.len());
    }

    #[test]
    fn fractional_minsup_is_monotone(num in 1u64..=100, den in 1u64..=100, n in 0u64..10_000) {
        prop_assume!(num <= den);
        let ms = MinSupport::fraction(num, den).unwrap();
        let here = ms.resolve(n).unwrap();
        prop_assert!(here >= 1);
        prop_assert!(ms.resolve(n + 1).unwrap() >= here);
        if num < den {
            let higher = MinSupport::fraction(num + 1, den).unwrap();
            prop_assert!(higher.resolve(n).unwrap() >= here);
        }
        // smallest count that is at least the exact share
        prop_assert!(here as u128 * den as u128 >= num as u128 * n as u128);
        if here > 1 {
            prop_assert!(((here - 1) as u128 * den as u128) < num as u128 * n as u128);
        }
    }

    #[test]
    fn csv_round_trip(r in rows(14, 1..=12, 5), labels in prop::collection::vec("[a-zA-Z]{0,4}", 12)) {
        let db = db_from(&r);
        let relabeled: Vec<Transaction> = db
            .iter()
            .zip(&labels)
            .map(|(t, l)| Transaction::new(t.id(), l.as_str(), t.items().to_vec()).unwrap())
            .collect();
        let db = TransactionDatabase::new(relabeled).unwrap();
        let back = parse_database(&db.to_csv()).unwrap();
        prop_assert_eq!(back, db);
    }

    #[test]
    fn permutation_invariance(db in database(10, 1..=15, 5), seed in any::<u64>()) {
        let a = CanTree::from_database(&db).unwrap();
        let b = CanTree::from_database(&shuffled(&db, seed)).unwrap();
        prop_assert_eq!(a.structural_digest(), b.structural_digest());
    }

    #[test]
    fn incremental_equals_batch(db in database(10, 1..=20, 5), cut in 0usize..=20) {
        let cut = cut.min(db.len());
        let mut tree = CanTree::from_database(&slice(&db, 0..cut)).unwrap();
        tree.insert_batch(&slice(&db, cut..db.len())).unwrap();
        let whole = CanTree::from_database(&db).unwrap();
        prop_assert_eq!(tree.structural_digest(), whole.structural_digest());
        prop_assert_eq!(tree.transaction_count(), whole.transaction_count());
        tree.check_invariants().unwrap();
    }

    #[test]
    fn insert_delete_inverse(
        db in database(10, 1..=10, 5),
        script in prop::collection::vec((any::<bool>(), 0usize..10), 0..30),
    ) {
        let mut tree = CanTree::from_database(&db).unwrap();
        let digest = tree.structural_digest();
        let mut extra = Vec::new();
        for &(insert, k) in &script {
            if insert {
                let t = &db.transactions()[k % db.len()];
                tree.insert_transaction(t).unwrap();
                extra.push(t.clone());
            }
        }
        for t in extra.iter().rev() {
            tree.delete_transaction(t).unwrap();
        }
        prop_assert_eq!(tree.structural_digest(), digest);
        tree.check_invariants().unwrap();

        for t in &db {
            tree.delete_transaction(t).unwrap();
        }
        prop_assert!(tree.is_empty());
        prop_assert_eq!(tree.structural_digest(), "");
    }

    #[test]
    fn random_scripts_keep_invariants(
        db in database(10, 1..=8, 4),
        script in prop::collection::vec((any::<bool>(), 0usize..8), 0..40),
    ) {
        let mut tree = CanTree::new();
        apply_script(&mut tree, &db, &script);
        tree.check_invariants().unwrap();
    }

    #[test]
    fn header_support_matches_recount(db in database(14, 1..=20, 6)) {
        let tree = CanTree::from_database(&db).unwrap();
        for name in db.alphabet() {
            prop_assert_eq!(tree.item_support(&name), db.support(&name));
        }
        let occurrences: usize = db.iter().map(|t| t.items().len()).sum();
        prop_assert!(tree.node_count() <= occurrences);
    }

    #[test]
    fn snapshot_round_trip(db in database(14, 1..=15, 6)) {
        let tree = CanTree::from_database(&db).unwrap();
        let back = snapshot_read(&snapshot_write(&tree)).unwrap();
        prop_assert_eq!(&back, &tree);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn miners_agree_with_bruteforce(db in database(10, 1..=12, 6), minsup in 1u64..=4) {
        let ms = MinSupport::absolute(minsup).unwrap();
        let tree = CanTree::from_database(&db).unwrap();
        let mined = mine_frequent_itemsets(&tree, ms).unwrap();
        let oracle = apriori_bruteforce(&db, ms).unwrap();
        let baseline = rebuild_baseline_mine(&db, ms).unwrap();
        prop_assert_eq!(&mined, &oracle);
        prop_assert_eq!(&baseline, &oracle);
    }
}

proptest! {
    #[test]
    fn mining_is_downward_closed(db in database(10, 1..=12, 6), minsup in 1u64..=4) {
        let tree = CanTree::from_database(&db).unwrap();
        let result = mine_frequent_itemsets(&tree, MinSupport::absolute(minsup).unwrap()).unwrap();
        let supports = itemset_supports(&result);
        for set in result.iter() {
            prop_assert!(set.support >= minsup);
            prop_assert_eq!(set.support, naive_support(&db, &set.items));
            for skip in 0..set.items.len() {
                let mut sub = set.items.clone();
                sub.remove(skip);
                if !sub.is_empty() {
                    let s = supports.get(&sub).copied();
                    prop_assert!(s.is_some_and(|s| s >= set.support));
                }
            }
        }
    }

    #[test]
    fn raising_minsup_shrinks_result(db in database(10, 1..=12, 6), low in 1u64..=3, step in 1u64..=3) {
        let tree = CanTree::from_database(&db).unwrap();
        let lo = mine_frequent_itemsets(&tree, MinSupport::absolute(low).unwrap()).unwrap();
        let hi = mine_frequent_itemsets(&tree, MinSupport::absolute(low + step).unwrap()).unwrap();
        let lo = itemset_supports(&lo);
        for set in hi.iter() {
            prop_assert_eq!(lo.get(&set.items), Some(&set.support));
        }
    }

    #[test]
    fn singletons_match_frequent_items(db in database(14, 1..=15, 6), pct in 1u64..=100) {
        let ms = MinSupport::percent(pct).unwrap();
        let tree = CanTree::from_database(&db).unwrap();
        let result = mine_frequent_itemsets(&tree, ms).unwrap();
        let mut singles: Vec<(Item, u64)> = result
            .iter()
            .filter(|s| s.items.len() == 1)
            .map(|s| (s.items[0].clone(), s.support))
            .collect();
        let mut items = frequent_items(&tree, ms).unwrap();
        singles.sort();
        items.sort();
        prop_assert_eq!(singles, items);
    }

    #[test]
    fn conditional_trees_hold_frequent_pairs(db in database(10, 1..=12, 6), minsup in 1u64..=3) {
        let tree = CanTree::from_database(&db).unwrap();
        for x in db.alphabet() {
            let cond = conditional_tree(&tree, &x, minsup).unwrap();
            cond.check_invariants().unwrap();
            for other in db.alphabet() {
                let pair = naive_support(&db, &[x.clone(), other.clone()]);
                let expect = if other < x && pair >= minsup { pair } else { 0 };
                prop_assert_eq!(cond.item_support(&other), expect);
            }
        }
    }

    #[test]
    fn optimize_is_idempotent_and_support_preserving(db in database(14, 1..=15, 6), pct in 1u64..=100) {
        let ms = MinSupport::percent(pct).unwrap();
        let once = optimize_database(&db, ms).unwrap();
        prop_assert_eq!(once.len(), db.len());
        let frequent = frequent_items(&CanTree::from_database(&db).unwrap(), ms).unwrap();
        for (i, support) in &frequent {
            prop_assert_eq!(once.support(i), *support);
        }
        let kept: BTreeSet<Item> = frequent.into_iter().map(|(i, _)| i).collect();
        prop_assert!(once.alphabet().iter().all(|i| kept.contains(i)));
        prop_assert_eq!(optimize_database(&once, ms).unwrap(), once);
    }

    #[test]
    fn diff_partitions_frequent_items(
        old in database(14, 1..=12, 6),
        new in database(14, 1..=12, 6),
        pct in 1u64..=100,
    ) {
        let ms = MinSupport::percent(pct).unwrap();
        let report = diff_versions(&old, &new, ms).unwrap();
        let names = |rows: &[ItemChange]| -> BTreeSet<Item> {
            rows.iter().map(|c| c.item.clone()).collect()
        };
        let freq = |db: &TransactionDatabase| -> BTreeSet<Item> {
            frequent_items(&CanTree::from_database(db).unwrap(), ms)
                .unwrap()
                .into_iter()
                .map(|(i, _)| i)
                .collect()
        };
        let (retained, dropped, added) =
            (names(&report.retained), names(&report.dropped), names(&report.added));
        prop_assert!(retained.is_disjoint(&dropped));
        prop_assert!(retained.is_disjoint(&added));
        prop_assert!(dropped.is_disjoint(&added));
        prop_assert_eq!(&retained | &dropped, freq(&old));
        prop_assert_eq!(&retained | &added, freq(&new));
    }
}
