//! Chen symbols `<s; u>`: a composition over distinct positive labels, and the
//! locality algebra they span.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::free_algebra::composition::write_int_list;
use crate::free_algebra::lincomb::{json_int_array, JsonBasis, LinComb, Monomial};
use crate::free_algebra::Basis;
use crate::shuffle::{with_thread_shuffler, Shuffler};
use crate::text::{Cursor, TextBasis};
use crate::Composition;

/// Variable labels are positive integers.
pub type Label = u32;

pub type SymbolLinComb = LinComb<ChenSymbol>;

/// A two-row symbol: exponents on top, pairwise distinct labels below. The
/// unit has both rows empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ChenSymbol {
    exponents: Composition,
    labels: Vec<Label>,
}

pub(crate) fn validate_rows(exponents: &Composition, labels: &[Label]) -> Result<()> {
    if exponents.depth() != labels.len() {
        return Err(Error::RowLengthMismatch {
            exponents: exponents.depth(),
            labels: labels.len(),
        });
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for &l in labels {
        if l == 0 {
            return Err(Error::ZeroLabel);
        }
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l));
        }
    }
    Ok(())
}

impl ChenSymbol {
    pub fn new(exponents: impl Into<Composition>, labels: Vec<Label>) -> Result<Self> {
        let exponents = exponents.into();
        validate_rows(&exponents, &labels)?;
        Ok(ChenSymbol { exponents, labels })
    }

    pub fn unit() -> Self {
        Self::default()
    }

    /// `<s; 1, ..., k>`.
    pub fn with_default_labels(exponents: impl Into<Composition>) -> Self {
        Self::with_labels_from(exponents, 1)
    }

    /// `<s; first, first+1, ...>`.
    pub fn with_labels_from(exponents: impl Into<Composition>, first: Label) -> Self {
        let exponents = exponents.into();
        let labels = (first..).take(exponents.depth()).collect();
        ChenSymbol { exponents, labels }
    }

    pub fn exponents(&self) -> &Composition {
        &self.exponents
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn depth(&self) -> usize {
        self.labels.len()
    }

    /// The locality relation: disjoint label sets.
    pub fn independent(&self, other: &ChenSymbol) -> bool {
        self.shared_label(other).is_none()
    }

    fn shared_label(&self, other: &ChenSymbol) -> Option<Label> {
        other.labels.iter().copied().find(|l| self.labels.contains(l))
    }

    /// `other` with its labels replaced, in order, by fresh labels above every
    /// label of `self`.
    pub fn relabel_fresh(&self, other: &ChenSymbol) -> ChenSymbol {
        let start = self.labels.iter().copied().max().unwrap_or(0) + 1;
        ChenSymbol::with_labels_from(other.exponents.clone(), start)
    }
}

// Labels first, then exponents.
impl Ord for ChenSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.labels
            .cmp(&other.labels)
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for ChenSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Basis for ChenSymbol {
    fn unit() -> Self {
        ChenSymbol::unit()
    }

    fn depth(&self) -> usize {
        self.labels.len()
    }

    fn lead(&self) -> Option<i64> {
        self.exponents.first()
    }

    fn shift_lead(&self, delta: i64) -> Self {
        ChenSymbol {
            exponents: self.exponents.shift_lead(delta),
            labels: self.labels.clone(),
        }
    }

    fn split_head(&self) -> Option<(Self, Self)> {
        let (head, tail) = self.exponents.split_head()?;
        Some((
            ChenSymbol {
                exponents: head,
                labels: self.labels[..1].to_vec(),
            },
            ChenSymbol {
                exponents: tail,
                labels: self.labels[1..].to_vec(),
            },
        ))
    }

    fn concat(head: &Self, tail: &Self) -> Self {
        let mut labels = head.labels.clone();
        labels.extend_from_slice(&tail.labels);
        ChenSymbol {
            exponents: Composition::concat(&head.exponents, &tail.exponents),
            labels,
        }
    }
}

thread_local! {
    static SYMBOL_SHUFFLER: RefCell<Shuffler<ChenSymbol>> = RefCell::new(Shuffler::new());
}

/// The locality product of two independent symbols. The extended shuffle
/// recursion runs on the top row while labels travel with their exponents, so
/// every output label row is an interleaving of the two input rows.
pub fn symbol_product(a: &ChenSymbol, b: &ChenSymbol) -> Result<SymbolLinComb> {
    if let Some(l) = a.shared_label(b) {
        return Err(Error::NotIndependent(l));
    }
    Ok(with_thread_shuffler(&SYMBOL_SHUFFLER, |s| s.product(a, b)))
}

/// Bilinear extension; every pair of terms must be independent.
pub fn symbol_product_lin(x: &SymbolLinComb, y: &SymbolLinComb) -> Result<SymbolLinComb> {
    let mut out = LinComb::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_scaled(&symbol_product(a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// Forgets the label row.
pub fn phi_project(x: &SymbolLinComb) -> LinComb<Composition> {
    x.map_basis(|s| s.exponents.clone())
}

impl Monomial for ChenSymbol {
    fn is_one(&self) -> bool {
        self.labels.is_empty()
    }
}

/// `<[s1,...,sk];[u1,...,uk]>`, or `1`.
impl fmt::Display for ChenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return f.write_str("1");
        }
        f.write_str("<")?;
        write_int_list(f, self.exponents.entries())?;
        f.write_str(";")?;
        write_int_list(f, &self.labels)?;
        f.write_str(">")
    }
}

impl TextBasis for ChenSymbol {
    fn unit() -> Self {
        ChenSymbol::unit()
    }

    fn starts_basis(c: char) -> bool {
        c == '<'
    }

    fn parse_basis(cur: &mut Cursor) -> Result<Self> {
        cur.expect('<')?;
        let exponents = Composition::new(cur.int_list()?);
        cur.expect(';')?;
        let labels = cur.label_list()?;
        let column = cur.column();
        cur.expect('>')?;
        ChenSymbol::new(exponents, labels).map_err(|e| Error::Parse {
            column,
            message: e.to_string(),
        })
    }
}

impl std::str::FromStr for ChenSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        let sym = if cur.peek() == Some('<') {
            Self::parse_basis(&mut cur)?
        } else {
            cur.expect('1')?;
            ChenSymbol::unit()
        };
        cur.finish()?;
        Ok(sym)
    }
}

impl JsonBasis for ChenSymbol {
    fn write_fields(&self, obj: &mut Map<String, Value>) {
        obj.insert("comp".into(), self.exponents.entries().to_vec().into());
        obj.insert("labels".into(), self.labels.clone().into());
    }

    fn read_fields(obj: &Map<String, Value>) -> Result<Self> {
        ChenSymbol::new(
            Composition::new(json_int_array(obj, "comp")?),
            json_int_array(obj, "labels")?,
        )
    }
}
