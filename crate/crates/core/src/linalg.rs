//! Sparse exact linear algebra over the rationals.
//!
//! Rows are sorted `(column, value)` lists without stored zeros. A
//! [`Subspace`] keeps its basis in canonical reduced row echelon form: pivots
//! strictly increase, every pivot is 1 and pivot columns vanish in all other
//! rows. Two subspaces are equal exactly when their bases agree row for row.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseRow {
    dim: usize,
    entries: Vec<(usize, Rational)>,
}

impl SparseRow {
    pub fn zero(dim: usize) -> Self {
        SparseRow { dim, entries: Vec::new() }
    }

    /// Builds a row from arbitrary `(column, value)` pairs. Duplicate
    /// columns are summed and zeros dropped.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let mut entries: Vec<(usize, Rational)> = entries.into_iter().collect();
        if let Some(&(c, _)) = entries.iter().find(|(c, _)| *c >= dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: c + 1 });
        }
        entries.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        Ok(SparseRow { dim, entries: merged })
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        SparseRow { dim: values.len(), entries }
    }

    /// Caller guarantees sorted, in-range, nonzero entries.
    pub(crate) fn from_sorted_unchecked(dim: usize, entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(c, v)| *c < dim && !v.is_zero()));
        SparseRow { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return SparseRow::zero(self.dim);
        }
        SparseRow {
            dim: self.dim,
            entries: self.entries.iter().map(|(c, v)| (*c, v * k)).collect(),
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &Rational, other: &SparseRow) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        Ok(SparseRow { dim: self.dim, entries: merge_scaled(&self.entries, k, &other.entries) })
    }

    pub fn add(&self, other: &SparseRow) -> Result<Self> {
        self.add_scaled(&Rational::one(), other)
    }
}

impl fmt::Debug for SparseRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[dim {}:", self.dim)?;
        for (c, v) in &self.entries {
            write!(f, " {}:{}", c, format_rational(v))?;
        }
        write!(f, "]")
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn merge_scaled(
    a: &[(usize, Rational)],
    k: &Rational,
    b: &[(usize, Rational)],
) -> Vec<(usize, Rational)> {
    if k.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * k));
            j += 1;
        } else {
            let v = &a[i].1 + &b[j].1 * k;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A subspace of `Q^dim` held as a canonical reduced row echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("dim", &self.rows.len())
            .field("rows", &self.rows)
            .finish()
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.rows.len());
        let mut p = self.pivots.iter().peekable();
        for c in 0..self.ambient {
            if p.peek() == Some(&&c) {
                p.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    fn pivot_row(&self, col: usize) -> Option<&SparseRow> {
        self.pivots.binary_search(&col).ok().map(|i| &self.rows[i])
    }

    /// Remainder of `v` after reduction by the basis. Zero iff `v` is a member.
    pub fn reduce(&self, v: &SparseRow) -> Result<SparseRow> {
        check_dim(self.ambient, v.dim)?;
        let mut acc = Accumulator::new(self.ambient);
        acc.add_row(&Rational::one(), v.entries());
        for (c, coef) in v.entries() {
            if let Some(row) = self.pivot_row(*c) {
                acc.add_row(&-coef.clone(), row.entries());
            }
        }
        Ok(acc.drain(self.ambient))
    }

    pub fn contains(&self, v: &SparseRow) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        check_dim(other.ambient, self.ambient)?;
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        let mut b = EchelonBuilder::new(self.ambient);
        for r in self.rows.iter().chain(other.rows.iter()) {
            b.insert(r)?;
        }
        Ok(b.finish())
    }
}

/// Row-reduces `rows` into the canonical basis of their span.
pub fn rref(ambient: usize, rows: &[SparseRow]) -> Result<Subspace> {
    let mut b = EchelonBuilder::new(ambient);
    for r in rows {
        b.insert(r)?;
    }
    Ok(b.finish())
}

pub fn member(s: &Subspace, v: &SparseRow) -> Result<bool> {
    s.contains(v)
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    check_dim(a.ambient, b.ambient)?;
    Ok(a.rows == b.rows)
}

/// Solves `sum c_i g_i = target`. Only generators that enlarge the span of
/// their predecessors receive nonzero coefficients, so the answer is unique.
pub fn express(target: &SparseRow, generators: &[SparseRow]) -> Result<Option<Vec<Rational>>> {
    let dim = target.dim();
    let mut b = EchelonBuilder::with_tracking(dim);
    for g in generators {
        b.insert(g)?;
    }
    b.express(target, generators.len())
}

/// Dense scratch accumulator with a touched-column list.
pub(crate) struct Accumulator {
    slots: Vec<Option<Rational>>,
    touched: Vec<usize>,
}

impl Accumulator {
    pub(crate) fn new(dim: usize) -> Self {
        Accumulator { slots: vec![None; dim], touched: Vec::new() }
    }

    pub(crate) fn add(&mut self, col: usize, v: Rational) {
        match &mut self.slots[col] {
            Some(x) => *x += v,
            slot @ None => {
                *slot = Some(v);
                self.touched.push(col);
            }
        }
    }

    pub(crate) fn add_row(&mut self, k: &Rational, entries: &[(usize, Rational)]) {
        for (c, v) in entries {
            self.add(*c, v * k);
        }
    }

    pub(crate) fn drain(&mut self, dim: usize) -> SparseRow {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for c in self.touched.drain(..) {
            if let Some(v) = self.slots[c].take() {
                if !v.is_zero() {
                    entries.push((c, v));
                }
            }
        }
        SparseRow::from_sorted_unchecked(dim, entries)
    }
}

/// Incremental reduced row echelon form.
///
/// Stored rows are kept fully reduced against each other after every
/// insertion, so reducing a new vector needs one pass over its pivot-column
/// entries. With tracking enabled each row also remembers its expression in
/// terms of the inserted generators.
pub struct EchelonBuilder {
    dim: usize,
    rows: Vec<SparseRow>,
    combos: Option<Vec<Vec<(usize, Rational)>>>,
    pivot_of: HashMap<usize, usize>,
    inserted: usize,
    acc: Accumulator,
}

impl EchelonBuilder {
    pub fn new(dim: usize) -> Self {
        EchelonBuilder {
            dim,
            rows: Vec::new(),
            combos: None,
            pivot_of: HashMap::new(),
            inserted: 0,
            acc: Accumulator::new(dim),
        }
    }

    pub fn with_tracking(dim: usize) -> Self {
        let mut b = Self::new(dim);
        b.combos = Some(Vec::new());
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce_into_acc(&mut self, v: &SparseRow) -> Vec<(usize, Rational)> {
        // Returns the multipliers used, for combination tracking.
        let mut used = Vec::new();
        self.acc.add_row(&Rational::one(), v.entries());
        for (c, coef) in v.entries() {
            if let Some(&ri) = self.pivot_of.get(c) {
                self.acc.add_row(&-coef.clone(), self.rows[ri].entries());
                used.push((ri, coef.clone()));
            }
        }
        used
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseRow) -> Result<bool> {
        check_dim(self.dim, v.dim())?;
        let gen_index = self.inserted;
        self.inserted += 1;
        let used = self.reduce_into_acc(v);
        let reduced = self.acc.drain(self.dim);
        let Some((pivot, lead)) = reduced.leading() else {
            return Ok(false);
        };
        let inv = lead.recip();
        let new_row = reduced.scaled(&inv);

        let new_combo = self.combos.as_ref().map(|combos| {
            let mut acc: Vec<(usize, Rational)> = vec![(gen_index, Rational::one())];
            for (ri, coef) in &used {
                acc = merge_scaled(&acc, &-coef.clone(), &combos[*ri]);
            }
            acc.into_iter().map(|(g, c)| (g, c * &inv)).collect::<Vec<_>>()
        });

        for ri in 0..self.rows.len() {
            let Some(f) = self.rows[ri].get(pivot).cloned() else {
                continue;
            };
            let neg = -f;
            self.rows[ri] = SparseRow {
                dim: self.dim,
                entries: merge_scaled(self.rows[ri].entries(), &neg, new_row.entries()),
            };
            if let (Some(combos), Some(nc)) = (self.combos.as_mut(), new_combo.as_ref()) {
                combos[ri] = merge_scaled(&combos[ri], &neg, nc);
            }
        }
        self.pivot_of.insert(pivot, self.rows.len());
        self.rows.push(new_row);
        if let (Some(combos), Some(nc)) = (self.combos.as_mut(), new_combo) {
            combos.push(nc);
        }
        Ok(true)
    }

    pub fn contains(&mut self, v: &SparseRow) -> Result<bool> {
        check_dim(self.dim, v.dim())?;
        self.reduce_into_acc(v);
        Ok(self.acc.drain(self.dim).is_zero())
    }

    fn express(&mut self, target: &SparseRow, n_generators: usize) -> Result<Option<Vec<Rational>>> {
        check_dim(self.dim, target.dim())?;
        let used = self.reduce_into_acc(target);
        if !self.acc.drain(self.dim).is_zero() {
            return Ok(None);
        }
        let combos = self.combos.as_ref().expect("tracking enabled");
        let mut coeffs = vec![Rational::zero(); n_generators];
        for (ri, coef) in used {
            for (g, c) in &combos[ri] {
                coeffs[*g] += coef.clone() * c;
            }
        }
        Ok(Some(coeffs))
    }

    pub fn finish(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().map(|(c, _)| c));
        let pivots = rows.iter().map(|r| r.leading().expect("nonzero row").0).collect();
        Subspace { ambient: self.dim, rows, pivots }
    }
}
