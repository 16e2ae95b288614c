//! Pattern-growth recursion shared by the CanTree miner and the rebuild
//! baseline.
//!
//! Items are dense `u32` codes. Each tree carries `labels`, mapping its
//! local codes (numeric order = tree order) back to the caller's global
//! codes, which is what ends up in emitted itemsets. Conditional trees order
//! their items by support within the conditional pattern base, most
//! frequent nearest the root.

pub(crate) type Code = u32;

const ROOT: u32 = 0;
const UNMAPPED: Code = Code::MAX;

/// Compact prefix tree over coded items. Root children are indexed by code;
/// deeper nodes keep their children sorted by code.
#[derive(Debug, Clone)]
pub(crate) struct PatternTree {
    code: Vec<Code>,
    count: Vec<u64>,
    parent: Vec<u32>,
    children: Vec<Vec<(Code, u32)>>,
    root_children: Vec<u32>,
    header: Vec<Vec<u32>>,
    labels: Vec<Code>,
}

const NIL: u32 = u32::MAX;

impl PatternTree {
    /// Empty tree over local codes `0..labels.len()`; local code `c` stands
    /// for global code `labels[c]`.
    pub(crate) fn new(labels: Vec<Code>) -> Self {
        PatternTree {
            code: vec![Code::MAX],
            count: vec![0],
            parent: vec![ROOT],
            children: vec![Vec::new()],
            root_children: vec![NIL; labels.len()],
            header: vec![Vec::new(); labels.len()],
            labels,
        }
    }

    /// Tree whose local codes are the global codes `0..n`.
    pub(crate) fn identity(n: usize) -> Self {
        PatternTree::new((0..n as Code).collect())
    }

    fn push_node(&mut self, c: Code, weight: u64, parent: u32) -> u32 {
        let node = self.code.len() as u32;
        self.code.push(c);
        self.count.push(weight);
        self.parent.push(parent);
        self.children.push(Vec::new());
        self.header[c as usize].push(node);
        node
    }

    /// `path` must be strictly increasing.
    pub(crate) fn insert(&mut self, path: &[Code], weight: u64) {
        debug_assert!(path.windows(2).all(|w| w[0] < w[1]));
        let Some((&first, rest)) = path.split_first() else {
            return;
        };
        let mut cur = self.root_children[first as usize];
        if cur == NIL {
            cur = self.push_node(first, weight, ROOT);
            self.root_children[first as usize] = cur;
        } else {
            self.count[cur as usize] += weight;
        }
        for &c in rest {
            let kids = &self.children[cur as usize];
            cur = match kids.binary_search_by_key(&c, |&(k, _)| k) {
                Ok(i) => {
                    let child = kids[i].1;
                    self.count[child as usize] += weight;
                    child
                }
                Err(i) => {
                    let child = self.push_node(c, weight, cur);
                    self.children[cur as usize].insert(i, (c, child));
                    child
                }
            };
        }
    }

    pub(crate) fn node_count(&self) -> usize {
        self.code.len() - 1
    }

    #[cfg(test)]
    fn global_codes(&self) -> usize {
        self.labels
            .iter()
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    fn support(&self, c: Code) -> u64 {
        self.header[c as usize]
            .iter()
            .map(|&n| self.count[n as usize])
            .sum()
    }
}

/// A conditional pattern base: weighted paths of global codes stored back
/// to back.
#[derive(Debug, Default)]
pub(crate) struct PatternBase {
    codes: Vec<Code>,
    spans: Vec<(usize, usize, u64)>,
}

impl PatternBase {
    #[cfg(test)]
    fn push(&mut self, path: impl IntoIterator<Item = Code>, weight: u64) {
        let start = self.codes.len();
        self.codes.extend(path);
        if self.codes.len() > start {
            self.spans.push((start, self.codes.len(), weight));
        }
    }

    fn paths(&self) -> impl Iterator<Item = (&[Code], u64)> + '_ {
        self.spans.iter().map(|&(s, e, w)| (&self.codes[s..e], w))
    }
}

/// Recursion state: output buffer and the current suffix, in global codes.
pub(crate) struct Growth {
    global_codes: usize,
    minsup: u64,
    suffix: Vec<Code>,
    pub(crate) found: Vec<(Vec<Code>, u64)>,
}

impl Growth {
    pub(crate) fn new(global_codes: usize, minsup: u64) -> Self {
        Growth {
            global_codes,
            minsup,
            suffix: Vec::new(),
            found: Vec::new(),
        }
    }

    /// Records `code` (global) with `support`, then mines its conditional
    /// pattern base extended by it.
    pub(crate) fn extend(&mut self, code: Code, support: u64, base: &PatternBase) {
        self.suffix.push(code);
        self.found.push((self.suffix.clone(), support));
        self.grow(base);
        self.suffix.pop();
    }

    /// Every itemset of `tree` (extended by the current suffix) reaching
    /// `minsup`.
    pub(crate) fn mine(&mut self, tree: &PatternTree) {
        for c in (0..tree.header.len() as Code).rev() {
            let support = tree.support(c);
            if support < self.minsup {
                continue;
            }
            let mut base = PatternBase::default();
            for &node in &tree.header[c as usize] {
                let mut cur = tree.parent[node as usize];
                let start = base.codes.len();
                while cur != ROOT {
                    base.codes
                        .push(tree.labels[tree.code[cur as usize] as usize]);
                    cur = tree.parent[cur as usize];
                }
                if base.codes.len() > start {
                    base.spans
                        .push((start, base.codes.len(), tree.count[node as usize]));
                }
            }
            self.extend(tree.labels[c as usize], support, &base);
        }
    }

    fn grow(&mut self, base: &PatternBase) {
        if base.spans.is_empty() {
            return;
        }
        let mut support = vec![0u64; self.global_codes];
        for (path, weight) in base.paths() {
            for &c in path {
                support[c as usize] += weight;
            }
        }
        let mut frequent: Vec<Code> = (0..self.global_codes as Code)
            .filter(|&c| support[c as usize] >= self.minsup)
            .collect();
        if frequent.is_empty() {
            return;
        }
        frequent.sort_by(|&a, &b| {
            support[b as usize]
                .cmp(&support[a as usize])
                .then(a.cmp(&b))
        });
        let mut local = vec![UNMAPPED; self.global_codes];
        for (i, &c) in frequent.iter().enumerate() {
            local[c as usize] = i as Code;
        }

        let mut cond = PatternTree::new(frequent);
        let mut kept = Vec::new();
        for (path, weight) in base.paths() {
            kept.clear();
            kept.extend(
                path.iter()
                    .map(|&c| local[c as usize])
                    .filter(|&l| l != UNMAPPED),
            );
            if !kept.is_empty() {
                kept.sort_unstable();
                cond.insert(&kept, weight);
            }
        }
        self.mine(&cond);
    }
}
