//! Transaction databases: items, transactions, minimum support and the
//! line-oriented CSV format used for API-usage tables.
//!
//! A line has three comma-separated fields, `<id>,<label>,<item1;item2;...>`.
//! Blank lines and lines starting with `#` are skipped. There is no quoting,
//! so item names may not contain `,` or `;`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TxnError {
    #[error("invalid item name {0:?}")]
    InvalidItem(String),
    #[error("invalid transaction id {0:?}")]
    InvalidId(String),
    #[error("invalid minimum support: {0}")]
    InvalidMinSupport(String),
    #[error("line {line}: expected 3 fields `<id>,<label>,<items>`, found {found}")]
    Malformed { line: usize, found: usize },
    #[error("line {line}: {source}")]
    BadField {
        line: usize,
        #[source]
        source: Box<TxnError>,
    },
    #[error("duplicate transaction id {id:?}")]
    DuplicateId { id: String, line: Option<usize> },
    #[error("line {line}: transaction {id:?} has no items")]
    EmptyTransaction { id: String, line: usize },
}

/// A single API member name, e.g. `getBounds()` or `mouseover`.
///
/// Ordering is byte-lexicographic on the UTF-8 name, which is the same as
/// comparing Unicode code points. This is the canonical order of the tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Item(String);

impl Item {
    pub fn new(name: impl Into<String>) -> Result<Self, TxnError> {
        let name = name.into();
        let bad = name.is_empty() || name.trim() != name || name.contains([',', ';', '\n', '\r']);
        if bad {
            return Err(TxnError::InvalidItem(name));
        }
        Ok(Item(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.0)
    }
}

impl FromStr for Item {
    type Err = TxnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Item::new(s)
    }
}

impl AsRef<str> for Item {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Total order used everywhere items are sorted.
pub fn canonical_compare(a: &Item, b: &Item) -> Ordering {
    a.0.as_bytes().cmp(b.0.as_bytes())
}

/// One row of an API-usage table: a class (label) and the members it uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    id: String,
    label: String,
    items: Vec<Item>,
}

impl Transaction {
    /// Builds a transaction, dropping repeated items (first occurrence wins).
    /// An empty item list is allowed here; the parser rejects it.
    pub fn new(
        id: impl Into<String>,
        label: impl Into<String>,
        items: impl IntoIterator<Item = Item>,
    ) -> Result<Self, TxnError> {
        let id = id.into();
        let label = label.into();
        if id.is_empty() || id.trim() != id || id.contains([',', '\n', '\r']) {
            return Err(TxnError::InvalidId(id));
        }
        if label.trim() != label || label.contains([',', '\n', '\r']) {
            return Err(TxnError::InvalidId(label));
        }
        let mut seen = HashSet::new();
        let items = items
            .into_iter()
            .filter(|item| seen.insert(item.clone()))
            .collect();
        Ok(Transaction { id, label, items })
    }

    /// Shorthand for tests and examples: `Transaction::of("t1", &["a", "b"])`.
    pub fn of(id: &str, items: &[&str]) -> Result<Self, TxnError> {
        let items = items
            .iter()
            .map(|name| Item::new(*name))
            .collect::<Result<Vec<_>, _>>()?;
        Transaction::new(id, "", items)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Items in input order.
    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn contains(&self, item: &Item) -> bool {
        self.items.contains(item)
    }

    /// Same id and label, different items. Used by database projection.
    pub(crate) fn with_items(&self, items: Vec<Item>) -> Transaction {
        Transaction {
            id: self.id.clone(),
            label: self.label.clone(),
            items,
        }
    }
}

/// Items of `t`, deduplicated and sorted in canonical order.
pub fn canonicalize(t: &Transaction) -> Vec<Item> {
    let mut items = t.items.clone();
    items.sort_by(canonical_compare);
    items.dedup();
    items
}

/// An ordered collection of transactions with distinct ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransactionDatabase {
    transactions: Vec<Transaction>,
}

impl TransactionDatabase {
    pub fn new(transactions: Vec<Transaction>) -> Result<Self, TxnError> {
        let mut ids = HashSet::new();
        for t in &transactions {
            if !ids.insert(t.id.as_str()) {
                return Err(TxnError::DuplicateId {
                    id: t.id.clone(),
                    line: None,
                });
            }
        }
        Ok(TransactionDatabase { transactions })
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Transaction> {
        self.transactions.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Transaction> {
        self.transactions.iter().find(|t| t.id == id)
    }

    /// Number of transactions containing `item`.
    pub fn support(&self, item: &Item) -> u64 {
        self.transactions
            .iter()
            .filter(|t| t.contains(item))
            .count() as u64
    }

    /// Distinct items across all transactions, in canonical order.
    pub fn alphabet(&self) -> Vec<Item> {
        let mut items: Vec<Item> = self
            .transactions
            .iter()
            .flat_map(|t| t.items.iter().cloned())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        items.sort_by(canonical_compare);
        items
    }

    /// Renders the database in the transaction CSV format, LF line endings.
    /// Transactions with no items produce an empty third field.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for t in &self.transactions {
            out.push_str(&t.id);
            out.push(',');
            out.push_str(&t.label);
            out.push(',');
            for (i, item) in t.items.iter().enumerate() {
                if i > 0 {
                    out.push(';');
                }
                out.push_str(item.as_str());
            }
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a TransactionDatabase {
    type Item = &'a Transaction;
    type IntoIter = std::slice::Iter<'a, Transaction>;

    fn into_iter(self) -> Self::IntoIter {
        self.transactions.iter()
    }
}

/// Parses the transaction CSV format. Accepts LF or CRLF line endings.
pub fn parse_database(text: &str) -> Result<TransactionDatabase, TxnError> {
    let mut transactions = Vec::new();
    let mut ids: HashSet<String> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(TxnError::Malformed {
                line: line_no,
                found: fields.len(),
            });
        }
        let at_line = |source: TxnError| TxnError::BadField {
            line: line_no,
            source: Box::new(source),
        };
        let items = fields[2]
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Item::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(at_line)?;
        let t = Transaction::new(fields[0], fields[1], items).map_err(at_line)?;
        if t.items.is_empty() {
            return Err(TxnError::EmptyTransaction {
                id: t.id,
                line: line_no,
            });
        }
        if !ids.insert(t.id.clone()) {
            return Err(TxnError::DuplicateId {
                id: t.id,
                line: Some(line_no),
            });
        }
        transactions.push(t);
    }
    Ok(TransactionDatabase { transactions })
}

/// Minimum support, either as a transaction count or as a share of the
/// database. Fractions are kept as exact rationals so `50%` of 5 is 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinSupport {
    Absolute(u64),
    Fraction { numerator: u64, denominator: u64 },
}

impl MinSupport {
    pub fn absolute(count: u64) -> Result<Self, TxnError> {
        let ms = MinSupport::Absolute(count);
        ms.validate()?;
        Ok(ms)
    }

    pub fn fraction(numerator: u64, denominator: u64) -> Result<Self, TxnError> {
        let ms = MinSupport::Fraction {
            numerator,
            denominator,
        };
        ms.validate()?;
        Ok(ms)
    }

    pub fn percent(p: u64) -> Result<Self, TxnError> {
        MinSupport::fraction(p, 100)
    }

    fn validate(&self) -> Result<(), TxnError> {
        match *self {
            MinSupport::Absolute(0) => Err(TxnError::InvalidMinSupport(
                "absolute minimum support must be at least 1".into(),
            )),
            MinSupport::Absolute(_) => Ok(()),
            MinSupport::Fraction {
                numerator,
                denominator,
            } => {
                if denominator == 0 || numerator == 0 || numerator > denominator {
                    Err(TxnError::InvalidMinSupport(format!(
                        "fraction {numerator}/{denominator} is outside (0, 1]"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Resolves to a transaction count for a database of `db_size`
    /// transactions. Fractions round up and never resolve below 1.
    pub fn resolve(&self, db_size: u64) -> Result<u64, TxnError> {
        self.validate()?;
        Ok(match *self {
            MinSupport::Absolute(n) => n,
            MinSupport::Fraction {
                numerator,
                denominator,
            } => {
                let scaled = numerator as u128 * db_size as u128;
                let ceil = scaled.div_ceil(denominator as u128);
                (ceil as u64).max(1)
            }
        })
    }
}

pub fn resolve_min_support(ms: MinSupport, db_size: u64) -> Result<u64, TxnError> {
    ms.resolve(db_size)
}

impl fmt::Display for MinSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MinSupport::Absolute(n) => write!(f, "{n}"),
            MinSupport::Fraction {
                numerator,
                denominator: 100,
            } => write!(f, "{numerator}%"),
            MinSupport::Fraction {
                numerator,
                denominator,
            } => write!(f, "{numerator}/{denominator}"),
        }
    }
}

/// Accepts `N` (absolute count) or `P%` where `P` may carry decimals
/// (`1.5%`).
impl FromStr for MinSupport {
    type Err = TxnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let invalid = || TxnError::InvalidMinSupport(format!("cannot parse {s:?}"));
        if let Some(pct) = s.strip_suffix('%') {
            let pct = pct.trim();
            let (whole, frac) = pct.split_once('.').unwrap_or((pct, ""));
            let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
            if (whole.is_empty() && frac.is_empty()) || !digits_ok(whole) || !digits_ok(frac) {
                return Err(invalid());
            }
            if frac.len() > 12 {
                return Err(invalid());
            }
            let scale = 10u64.pow(frac.len() as u32);
            let numerator: u64 = format!("{whole}{frac}").parse().map_err(|_| invalid())?;
            MinSupport::fraction(numerator, 100 * scale)
        } else {
            let n: u64 = s.parse().map_err(|_| invalid())?;
            MinSupport::absolute(n)
        }
    }
}
