//! The canonical-order tree.
//!
//! Every transaction is inserted along the path of its items sorted in
//! canonical order. Since that order never depends on item frequencies, the
//! shape of the tree is a function of the multiset of stored transactions
//! alone: inserting or deleting one transaction touches exactly one
//! root-to-node path and never restructures anything else.
//!
//! Nodes live in an arena. Item names are interned once per tree; node
//! children are kept sorted by item name and searched by bisection.

mod snapshot;

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::txndb::{canonicalize, Item, Transaction, TransactionDatabase};

pub use snapshot::{snapshot_read, snapshot_write, SNAPSHOT_HEADER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("transaction {0:?} has no items")]
    EmptyTransaction(String),
    #[error("transaction {0:?} is not present in the tree")]
    NotPresent(String),
    #[error("item {0:?} is not present in the tree")]
    UnknownItem(String),
    #[error("snapshot line {line}: {message}")]
    SnapshotFormat { line: usize, message: String },
}

pub(crate) type NodeId = usize;
pub(crate) type SymbolId = u32;

const ROOT: NodeId = 0;
const NO_SYMBOL: SymbolId = SymbolId::MAX;

#[derive(Debug, Clone)]
struct Node {
    symbol: SymbolId,
    count: u64,
    parent: NodeId,
    children: Vec<NodeId>,
}

/// Prefix tree over canonically ordered transactions, with per-node counts
/// and a header table of per-item node chains.
#[derive(Debug, Clone)]
pub struct CanTree {
    nodes: Vec<Node>,
    free: Vec<NodeId>,
    live_nodes: usize,
    symbols: Vec<Item>,
    symbol_ids: HashMap<Item, SymbolId>,
    /// Header table: all live nodes carrying each symbol, in creation order.
    chains: Vec<Vec<NodeId>>,
    transaction_count: u64,
}

impl Default for CanTree {
    fn default() -> Self {
        CanTree::new()
    }
}

impl CanTree {
    pub fn new() -> Self {
        CanTree {
            nodes: vec![Node {
                symbol: NO_SYMBOL,
                count: 0,
                parent: ROOT,
                children: Vec::new(),
            }],
            free: Vec::new(),
            live_nodes: 0,
            symbols: Vec::new(),
            symbol_ids: HashMap::new(),
            chains: Vec::new(),
            transaction_count: 0,
        }
    }

    /// Builds a tree from every transaction of `db`.
    pub fn from_database(db: &TransactionDatabase) -> Result<Self, TreeError> {
        let mut tree = CanTree::new();
        tree.insert_batch(db)?;
        tree.compact();
        Ok(tree)
    }

    pub fn transaction_count(&self) -> u64 {
        self.transaction_count
    }

    /// Number of nodes below the root.
    pub fn node_count(&self) -> usize {
        self.live_nodes
    }

    pub fn is_empty(&self) -> bool {
        self.live_nodes == 0
    }

    /// Inserts one transaction along its canonical path.
    pub fn insert_transaction(&mut self, t: &Transaction) -> Result<(), TreeError> {
        let path = canonicalize(t);
        if path.is_empty() {
            return Err(TreeError::EmptyTransaction(t.id().to_string()));
        }
        self.insert_path(&path, 1);
        Ok(())
    }

    /// Inserts every transaction of `db` in order. Nothing already stored in
    /// the tree is revisited.
    pub fn insert_batch(&mut self, db: &TransactionDatabase) -> Result<(), TreeError> {
        for t in db {
            self.insert_transaction(t)?;
        }
        Ok(())
    }

    /// Adds `weight` transactions whose canonical form is `path`.
    /// `path` must be strictly increasing and non-empty.
    pub(crate) fn insert_path(&mut self, path: &[Item], weight: u64) {
        debug_assert!(!path.is_empty() && weight > 0);
        debug_assert!(path.windows(2).all(|w| w[0] < w[1]));
        let mut cur = ROOT;
        for item in path {
            cur = match self.find_child(cur, item) {
                Ok(pos) => {
                    let child = self.nodes[cur].children[pos];
                    self.nodes[child].count += weight;
                    child
                }
                Err(pos) => {
                    let symbol = self.intern(item);
                    self.new_node(cur, pos, symbol, weight)
                }
            };
        }
        self.transaction_count += weight;
    }

    /// Removes one occurrence of `t`. The tree is left untouched when `t`'s
    /// canonical path does not end at a node that stores at least one
    /// transaction.
    pub fn delete_transaction(&mut self, t: &Transaction) -> Result<(), TreeError> {
        let not_present = || TreeError::NotPresent(t.id().to_string());
        let items = canonicalize(t);
        if items.is_empty() {
            return Err(not_present());
        }
        let mut path = Vec::with_capacity(items.len());
        let mut cur = ROOT;
        for item in &items {
            let pos = self.find_child(cur, item).map_err(|_| not_present())?;
            cur = self.nodes[cur].children[pos];
            path.push(cur);
        }
        if self.terminal_count(cur) == 0 {
            return Err(not_present());
        }

        for &node in &path {
            self.nodes[node].count -= 1;
        }
        self.transaction_count -= 1;
        if let Some(first_dead) = path.iter().position(|&n| self.nodes[n].count == 0) {
            let head = path[first_dead];
            let parent = self.nodes[head].parent;
            self.nodes[parent].children.retain(|&c| c != head);
            for &node in &path[first_dead..] {
                debug_assert_eq!(self.nodes[node].count, 0);
                let symbol = self.nodes[node].symbol as usize;
                self.chains[symbol].retain(|&n| n != node);
                self.nodes[node].children.clear();
                self.free.push(node);
                self.live_nodes -= 1;
            }
        }
        Ok(())
    }

    /// Number of stored transactions containing `item`.
    pub fn item_support(&self, item: &Item) -> u64 {
        match self.symbol_ids.get(item) {
            Some(&s) => self.symbol_support(s),
            None => 0,
        }
    }

    /// Items currently present in the tree with their supports, in
    /// canonical order.
    pub fn item_supports(&self) -> Vec<(Item, u64)> {
        let mut out: Vec<(Item, u64)> = self
            .symbols
            .iter()
            .cloned()
            .zip(self.symbol_supports())
            .filter(|(_, support)| *support > 0)
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The conditional pattern base of `item`: for each node carrying it,
    /// the items on the path above that node (canonical order) weighted by
    /// the node's count. Paths are listed in header-chain order.
    pub fn prefix_paths(&self, item: &Item) -> Result<Vec<(Vec<Item>, u64)>, TreeError> {
        let symbol = match self.symbol_ids.get(item) {
            Some(&s) if !self.chains[s as usize].is_empty() => s,
            _ => return Err(TreeError::UnknownItem(item.to_string())),
        };
        Ok(self.chains[symbol as usize]
            .iter()
            .map(|&node| {
                let mut prefix: Vec<Item> = self
                    .ancestors(node)
                    .map(|n| self.symbols[self.nodes[n].symbol as usize].clone())
                    .collect();
                prefix.reverse();
                (prefix, self.nodes[node].count)
            })
            .collect())
    }

    /// Depth-first rendering, children in canonical order, one
    /// `<depth> <item> <count>` line per node. Equal digests mean equal
    /// trees.
    pub fn structural_digest(&self) -> String {
        let mut out = String::new();
        self.walk(|depth, item, count| {
            let _ = writeln!(out, "{depth} {item} {count}");
        });
        out
    }

    /// Checks every structural invariant, returning a description of the
    /// first violation found.
    pub fn check_invariants(&self) -> Result<(), String> {
        let root_sum: u64 = self.nodes[ROOT]
            .children
            .iter()
            .map(|&c| self.nodes[c].count)
            .sum();
        if root_sum != self.transaction_count {
            return Err(format!(
                "transaction_count {} != sum of root children {}",
                self.transaction_count, root_sum
            ));
        }

        let mut seen = 0usize;
        let mut stack = vec![ROOT];
        while let Some(node) = stack.pop() {
            let n = &self.nodes[node];
            if node != ROOT {
                seen += 1;
                if n.count == 0 {
                    return Err(format!("node {} has count 0", self.node_label(node)));
                }
                let parent = &self.nodes[n.parent];
                if parent.symbol != NO_SYMBOL
                    && self.symbols[parent.symbol as usize] >= self.symbols[n.symbol as usize]
                {
                    return Err(format!("path order broken at {}", self.node_label(node)));
                }
                if !self.chains[n.symbol as usize].contains(&node) {
                    return Err(format!("{} missing from header", self.node_label(node)));
                }
            }
            let child_sum: u64 = n.children.iter().map(|&c| self.nodes[c].count).sum();
            if node != ROOT && child_sum > n.count {
                return Err(format!(
                    "children of {} sum to {} > {}",
                    self.node_label(node),
                    child_sum,
                    n.count
                ));
            }
            for pair in n.children.windows(2) {
                let (a, b) = (&self.nodes[pair[0]], &self.nodes[pair[1]]);
                if self.symbols[a.symbol as usize] >= self.symbols[b.symbol as usize] {
                    return Err(format!("siblings out of order under node {node}"));
                }
            }
            for &c in &n.children {
                if self.nodes[c].parent != node {
                    return Err(format!("bad parent link at {}", self.node_label(c)));
                }
                stack.push(c);
            }
        }
        if seen != self.live_nodes {
            return Err(format!(
                "{} reachable nodes, {} recorded",
                seen, self.live_nodes
            ));
        }
        let chained: usize = self.chains.iter().map(Vec::len).sum();
        if chained != seen {
            return Err(format!("header holds {chained} entries for {seen} nodes"));
        }
        for (s, chain) in self.chains.iter().enumerate() {
            for &node in chain {
                if self.free.contains(&node) || self.nodes[node].symbol as usize != s {
                    return Err(format!("dangling header entry {node} for symbol {s}"));
                }
            }
        }
        Ok(())
    }

    /// Renumbers live nodes in pre-order and drops freed slots. The tree's
    /// content is unchanged; full traversals afterwards touch memory mostly
    /// sequentially. Costs one pass over the tree.
    pub fn compact(&mut self) {
        let mut order = Vec::with_capacity(self.live_nodes + 1);
        let mut stack = vec![ROOT];
        while let Some(node) = stack.pop() {
            order.push(node);
            stack.extend(self.nodes[node].children.iter().rev());
        }
        let mut new_id = vec![NodeId::MAX; self.nodes.len()];
        for (i, &old) in order.iter().enumerate() {
            new_id[old] = i;
        }
        let mut nodes = Vec::with_capacity(self.nodes.capacity());
        nodes.extend(order.iter().map(|&old| {
            let n = &self.nodes[old];
            Node {
                symbol: n.symbol,
                count: n.count,
                parent: new_id[n.parent],
                children: n.children.iter().map(|&c| new_id[c]).collect(),
            }
        }));
        self.nodes = nodes;
        self.free.clear();
        for chain in &mut self.chains {
            for node in chain.iter_mut() {
                *node = new_id[*node];
            }
        }
    }

    // Crate-internal access for the miner and snapshot code.

    pub(crate) fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub(crate) fn symbol_item(&self, s: SymbolId) -> &Item {
        &self.symbols[s as usize]
    }

    pub(crate) fn children_of(&self, node: NodeId) -> &[NodeId] {
        &self.nodes[node].children
    }

    pub(crate) fn symbol_support(&self, s: SymbolId) -> u64 {
        self.chains[s as usize]
            .iter()
            .map(|&n| self.nodes[n].count)
            .sum()
    }

    /// Support of every symbol, from one sequential pass over the arena.
    /// Freed slots hold count 0 and add nothing.
    pub(crate) fn symbol_supports(&self) -> Vec<u64> {
        let mut supports = vec![0; self.symbols.len()];
        for n in &self.nodes[1..] {
            supports[n.symbol as usize] += n.count;
        }
        supports
    }

    pub(crate) fn count_of(&self, node: NodeId) -> u64 {
        self.nodes[node].count
    }

    pub(crate) fn symbol_at(&self, node: NodeId) -> SymbolId {
        self.nodes[node].symbol
    }

    /// Strict ancestors of `node`, nearest first, excluding the root.
    pub(crate) fn ancestors(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let mut cur = self.nodes[node].parent;
        std::iter::from_fn(move || {
            if cur == ROOT {
                None
            } else {
                let n = cur;
                cur = self.nodes[cur].parent;
                Some(n)
            }
        })
    }

    /// Pre-order traversal with children in canonical order.
    pub(crate) fn walk(&self, mut visit: impl FnMut(usize, &Item, u64)) {
        let mut stack: Vec<(NodeId, usize)> = self.nodes[ROOT]
            .children
            .iter()
            .rev()
            .map(|&c| (c, 1))
            .collect();
        while let Some((node, depth)) = stack.pop() {
            let n = &self.nodes[node];
            visit(depth, &self.symbols[n.symbol as usize], n.count);
            stack.extend(n.children.iter().rev().map(|&c| (c, depth + 1)));
        }
    }

    /// Appends a node as the last child of `parent` without any checks.
    /// Used by the snapshot reader, which validates ordering itself.
    pub(crate) fn push_child_unchecked(
        &mut self,
        parent: NodeId,
        item: &Item,
        count: u64,
    ) -> NodeId {
        let symbol = self.intern(item);
        let pos = self.nodes[parent].children.len();
        self.new_node(parent, pos, symbol, count)
    }

    pub(crate) fn root() -> NodeId {
        ROOT
    }

    pub(crate) fn set_transaction_count(&mut self, count: u64) {
        self.transaction_count = count;
    }

    pub(crate) fn last_child_item(&self, node: NodeId) -> Option<&Item> {
        self.nodes[node]
            .children
            .last()
            .map(|&c| &self.symbols[self.nodes[c].symbol as usize])
    }

    pub(crate) fn node_item(&self, node: NodeId) -> Option<&Item> {
        let s = self.nodes[node].symbol;
        (s != NO_SYMBOL).then(|| &self.symbols[s as usize])
    }

    fn terminal_count(&self, node: NodeId) -> u64 {
        let n = &self.nodes[node];
        n.count - n.children.iter().map(|&c| self.nodes[c].count).sum::<u64>()
    }

    fn find_child(&self, parent: NodeId, item: &Item) -> Result<usize, usize> {
        self.nodes[parent]
            .children
            .binary_search_by(|&c| self.symbols[self.nodes[c].symbol as usize].cmp(item))
    }

    fn intern(&mut self, item: &Item) -> SymbolId {
        if let Some(&s) = self.symbol_ids.get(item) {
            return s;
        }
        let s = self.symbols.len() as SymbolId;
        self.symbols.push(item.clone());
        self.symbol_ids.insert(item.clone(), s);
        self.chains.push(Vec::new());
        s
    }

    fn new_node(&mut self, parent: NodeId, pos: usize, symbol: SymbolId, count: u64) -> NodeId {
        let node = Node {
            symbol,
            count,
            parent,
            children: Vec::new(),
        };
        let id = match self.free.pop() {
            Some(id) => {
                self.nodes[id] = node;
                id
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() - 1
            }
        };
        self.nodes[parent].children.insert(pos, id);
        self.chains[symbol as usize].push(id);
        self.live_nodes += 1;
        id
    }

    fn node_label(&self, node: NodeId) -> String {
        match self.node_item(node) {
            Some(item) => format!("{node}:{item}"),
            None => "root".into(),
        }
    }
}

/// Structural equality: same nodes, same counts, same transaction count.
impl PartialEq for CanTree {
    fn eq(&self, other: &Self) -> bool {
        self.transaction_count == other.transaction_count
            && self.structural_digest() == other.structural_digest()
    }
}

impl Eq for CanTree {}
