//! Exact sparse row reduction over a growing set of monomial columns.
//!
//! Columns are interned lazily as monomials appear, rows live in reduced
//! echelon form, and every row can carry the combination of inserted source
//! vectors that produced it, so span membership can be turned into an
//! explicit, independently checkable linear combination.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{AlgebraElement, BasisIndex};
use crate::rational::Rational;
use crate::text::render_key;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpanError {
    #[error("vector term {term} lies outside the declared ambient basis")]
    SupportOutsideAmbient { term: String },
}

/// Assigns stable ids to basis monomials in order of first appearance.
#[derive(Debug, Default)]
pub struct ColumnSpace {
    keys: Vec<BasisIndex>,
    ids: HashMap<BasisIndex, u32>,
}

impl ColumnSpace {
    pub fn new() -> Self {
        ColumnSpace::default()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn intern(&mut self, key: &BasisIndex) -> u32 {
        if let Some(&id) = self.ids.get(key) {
            return id;
        }
        let id = self.keys.len() as u32;
        self.keys.push(key.clone());
        self.ids.insert(key.clone(), id);
        id
    }

    pub fn id(&self, key: &BasisIndex) -> Option<u32> {
        self.ids.get(key).copied()
    }

    pub fn key(&self, id: u32) -> &BasisIndex {
        &self.keys[id as usize]
    }

    /// Converts an element into a sparse row sorted by column id, interning
    /// any columns not seen before.
    pub fn row_of(&mut self, el: &AlgebraElement) -> SparseRow {
        let mut row: Vec<(u32, Rational)> = el
            .terms()
            .map(|(k, c)| (self.intern(k), c.clone()))
            .collect();
        row.sort_by_key(|(id, _)| *id);
        row
    }

    /// Converts an element using only already-interned columns; `None` when
    /// some term lies outside the recorded column set.
    pub fn row_of_existing(&self, el: &AlgebraElement) -> Option<SparseRow> {
        let mut row = Vec::with_capacity(el.term_count());
        for (k, c) in el.terms() {
            row.push((self.id(k)?, c.clone()));
        }
        row.sort_by_key(|(id, _)| *id);
        Some(row)
    }

    /// Converts a sparse row back into an element.
    pub fn element_of(&self, row: &SparseRow) -> AlgebraElement {
        let mut el = AlgebraElement::zero();
        for (id, c) in row {
            el.add_term(self.key(*id).clone(), c.clone());
        }
        el
    }
}

/// Sparse vector sorted by column id; no zero entries.
pub type SparseRow = Vec<(u32, Rational)>;

/// Combination over source ids, sorted; no zero entries.
pub type Combination = Vec<(u32, Rational)>;

/// `a - factor * b` for sorted sparse vectors.
fn sub_scaled(a: &[(u32, Rational)], factor: &Rational, b: &[(u32, Rational)]) -> Vec<(u32, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va - factor * vb;
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                let v = -(factor * vb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                let v = -(factor * vb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

#[derive(Debug)]
struct TrackedRow {
    cols: SparseRow,
    combo: Combination,
}

/// Result of a rank-growing insertion.
#[derive(Debug)]
pub struct InsertOutcome {
    /// Pivot column of the new row.
    pub pivot: u32,
    /// The normalized reduced row as stored.
    pub row: SparseRow,
    /// Pivots of pre-existing rows changed by back-substitution.
    pub touched: Vec<u32>,
}

/// A basis of a rational span in reduced echelon form, keyed by pivot
/// column. In tracked mode each row also knows the combination of inserted
/// source vectors it equals.
#[derive(Debug)]
pub struct SpanBasis {
    rows: BTreeMap<u32, TrackedRow>,
    tracked: bool,
}

impl Default for SpanBasis {
    fn default() -> Self {
        SpanBasis::new()
    }
}

impl SpanBasis {
    /// A basis that records source combinations for every row.
    pub fn new() -> Self {
        SpanBasis { rows: BTreeMap::new(), tracked: true }
    }

    /// A basis without combination bookkeeping; `express` is unavailable.
    pub fn untracked() -> Self {
        SpanBasis { rows: BTreeMap::new(), tracked: false }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }

    /// The stored reduced row with the given pivot column.
    pub fn row(&self, pivot: u32) -> Option<&SparseRow> {
        self.rows.get(&pivot).map(|r| &r.cols)
    }

    fn reduce_tracked(&self, mut cols: SparseRow, mut combo: Combination) -> (SparseRow, Combination) {
        loop {
            let hit = cols
                .iter()
                .find_map(|(c, v)| self.rows.contains_key(c).then(|| (*c, v.clone())));
            let Some((pivot, factor)) = hit else {
                return (cols, combo);
            };
            let row = &self.rows[&pivot];
            cols = sub_scaled(&cols, &factor, &row.cols);
            if self.tracked {
                combo = sub_scaled(&combo, &factor, &row.combo);
            }
        }
    }

    fn reduce_cols(&self, mut cols: SparseRow) -> SparseRow {
        loop {
            let hit = cols
                .iter()
                .find_map(|(c, v)| self.rows.contains_key(c).then(|| (*c, v.clone())));
            let Some((pivot, factor)) = hit else {
                return cols;
            };
            cols = sub_scaled(&cols, &factor, &self.rows[&pivot].cols);
        }
    }

    /// True when the vector lies in the span.
    pub fn contains(&self, cols: &SparseRow) -> bool {
        self.reduce_cols(cols.clone()).is_empty()
    }

    /// Whether the single column vector `x_col` lies in the span. In a fully
    /// back-substituted echelon basis this holds exactly when the row pivoted
    /// at `col` has singleton support, so the check is constant time.
    pub fn contains_column(&self, col: u32) -> bool {
        self.rows.get(&col).is_some_and(|r| r.cols.len() == 1)
    }

    /// Expresses a span member as a combination of inserted sources.
    /// `None` when the vector is outside the span or tracking is off.
    pub fn express(&self, cols: &SparseRow) -> Option<Combination> {
        if !self.tracked {
            return None;
        }
        let (rest, combo) = self.reduce_tracked(cols.clone(), Vec::new());
        if !rest.is_empty() {
            return None;
        }
        // rest = cols - sum(f_i row_i) with combo = -sum(f_i combo_i), so the
        // expression of cols over sources is the negated accumulator.
        Some(combo.into_iter().map(|(s, c)| (s, -c)).collect())
    }

    /// Inserts a vector attributed to `source`. Returns `None` when the
    /// vector was already in the span.
    pub fn insert(&mut self, cols: SparseRow, source: u32) -> Option<InsertOutcome> {
        let seed = if self.tracked {
            vec![(source, Rational::one())]
        } else {
            Vec::new()
        };
        let (mut cols, mut combo) = self.reduce_tracked(cols, seed);
        if cols.is_empty() {
            return None;
        }
        let pivot = cols[0].0;
        let inv = cols[0].1.clone().recip();
        if !inv.is_one() {
            for (_, v) in cols.iter_mut() {
                let nv = &*v * &inv;
                *v = nv;
            }
            for (_, v) in combo.iter_mut() {
                let nv = &*v * &inv;
                *v = nv;
            }
        }
        // Back-substitute the new pivot out of every existing row.
        let touched: Vec<u32> = self
            .rows
            .iter()
            .filter(|(_, row)| row.cols.binary_search_by_key(&pivot, |(c, _)| *c).is_ok())
            .map(|(p, _)| *p)
            .collect();
        for p in &touched {
            let factor = {
                let row = &self.rows[p];
                let at = row
                    .cols
                    .binary_search_by_key(&pivot, |(c, _)| *c)
                    .expect("pivot entry located above");
                row.cols[at].1.clone()
            };
            let row = self.rows.get_mut(p).expect("row listed as touched");
            row.cols = sub_scaled(&row.cols, &factor, &cols);
            if self.tracked {
                row.combo = sub_scaled(&row.combo, &factor, &combo);
            }
        }
        let snapshot = cols.clone();
        self.rows.insert(pivot, TrackedRow { cols, combo });
        Some(InsertOutcome { pivot, row: snapshot, touched })
    }
}

/// A reduced span bundled with its column interner.
#[derive(Debug)]
pub struct ReducedSpan {
    pub columns: ColumnSpace,
    pub basis: SpanBasis,
}

impl ReducedSpan {
    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }

    pub fn contains(&self, el: &AlgebraElement) -> bool {
        match self.columns.row_of_existing(el) {
            Some(row) => self.basis.contains(&row),
            None => false,
        }
    }

    /// Combination of input vectors equal to `el`, by input position.
    pub fn express(&self, el: &AlgebraElement) -> Option<Combination> {
        self.basis.express(&self.columns.row_of_existing(el)?)
    }
}

/// Row-reduces the vectors over an explicitly ordered ambient basis.
/// Positional pivoting follows the ambient order; a vector supported
/// outside the ambient is an error, never silently dropped.
pub fn rref_exact(vectors: &[AlgebraElement], ambient: &[BasisIndex]) -> Result<ReducedSpan, SpanError> {
    let mut columns = ColumnSpace::new();
    for key in ambient {
        columns.intern(key);
    }
    let mut basis = SpanBasis::new();
    for (pos, v) in vectors.iter().enumerate() {
        for (key, _) in v.terms() {
            if columns.id(key).is_none() {
                return Err(SpanError::SupportOutsideAmbient { term: render_key(key) });
            }
        }
        let row = columns
            .row_of_existing(v)
            .expect("support verified against ambient above");
        basis.insert(row, pos as u32);
    }
    Ok(ReducedSpan { columns, basis })
}
