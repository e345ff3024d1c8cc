//! Degree-3 normal forms modulo a relation span.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rref, Subspace};
use crate::magma::{enumerate_monomials, MLPoly, MagmaTree, MonomialIndex};
use crate::rational::Rational;

use super::RelationSet;

/// Normal monomials used for the weak Leibniz relations, with `a, b, c`
/// standing for `1, 2, 3`.
pub const NORMAL_BASIS: [&str; 6] = ["(3 (1 2))", "((2 3) 1)", "((3 1) 2)", "((1 3) 2)", "((2 1) 3)", "((1 2) 3)"];

/// Rewrites every monomial of one arity into a fixed set of normal
/// monomials modulo a relation span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewriter {
    arity: usize,
    basis: Vec<MagmaTree>,
    table: BTreeMap<MagmaTree, MLPoly>,
}

impl Rewriter {
    /// Uses the given monomials as normal ones. They must be independent
    /// modulo `span` and complementary to it.
    pub fn with_basis(span: &Subspace, basis: &[MagmaTree]) -> Result<Self> {
        let arity = basis
            .first()
            .map(MagmaTree::arity)
            .ok_or_else(|| Error::SpanDimension { expected: span.ambient_dim(), found: span.dim() })?;
        let idx = enumerate_monomials(arity)?;
        if idx.len() != span.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: idx.len(), found: span.ambient_dim() });
        }
        let mut basis_cols = Vec::with_capacity(basis.len());
        for m in basis {
            basis_cols.push(idx.try_position(m)?);
        }
        let expected = idx.len() - basis.len();
        if span.dim() != expected {
            return Err(Error::SpanDimension { expected, found: span.dim() });
        }
        let others: Vec<usize> = (0..idx.len()).filter(|c| !basis_cols.contains(c)).collect();

        // Reorder columns so the rewritten monomials come first.
        let order: Vec<usize> = others.iter().chain(basis_cols.iter()).copied().collect();
        let mut new_pos = vec![0usize; idx.len()];
        for (i, c) in order.iter().enumerate() {
            new_pos[*c] = i;
        }
        let rows = span
            .basis()
            .iter()
            .map(|r| {
                crate::linalg::SparseRow::new(idx.len(), r.entries().iter().map(|(c, v)| (new_pos[*c], v.clone())))
            })
            .collect::<Result<Vec<_>>>()?;
        let reordered = rref(idx.len(), &rows)?;
        let bad: Vec<String> = reordered
            .pivots()
            .iter()
            .filter(|p| **p >= others.len())
            .map(|p| idx.get(order[*p]).to_letters())
            .collect();
        if !bad.is_empty() {
            return Err(Error::DependentBasis(bad.join(", ")));
        }

        let mut table = BTreeMap::new();
        for (p, row) in reordered.pivots().iter().zip(reordered.basis()) {
            let m = idx.get(order[*p]).clone();
            let terms = row.entries().iter().skip(1).map(|(c, v)| (idx.get(order[*c]).clone(), -v.clone()));
            table.insert(m, MLPoly::from_terms(arity, terms)?);
        }
        Ok(Rewriter { arity, basis: basis.to_vec(), table })
    }

    /// Normal monomials are the columns without a pivot in the canonical
    /// row echelon form of `span`.
    pub fn canonical(span: &Subspace, idx: &MonomialIndex) -> Result<Self> {
        let basis: Vec<MagmaTree> = span.free_columns().iter().map(|c| idx.get(*c).clone()).collect();
        if basis.is_empty() {
            let table = idx
                .monomials()
                .iter()
                .map(|m| (m.clone(), MLPoly::zero(idx.arity())))
                .collect();
            return Ok(Rewriter { arity: idx.arity(), basis, table });
        }
        Self::with_basis(span, &basis)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn basis(&self) -> &[MagmaTree] {
        &self.basis
    }

    /// Rewritten monomials with their normal forms, in canonical order.
    pub fn table(&self) -> impl Iterator<Item = (&MagmaTree, &MLPoly)> {
        self.table.iter()
    }

    pub fn rewrite(&self, m: &MagmaTree) -> Result<MLPoly> {
        if self.basis.contains(m) {
            return MLPoly::monomial(m.clone());
        }
        self.table
            .get(m)
            .cloned()
            .ok_or_else(|| Error::NotMultilinear(format!("{m} is not a monomial of arity {}", self.arity)))
    }

    pub fn reduce(&self, p: &MLPoly) -> Result<MLPoly> {
        let mut out = MLPoly::zero(self.arity);
        for (m, c) in p.terms() {
            out = out.add_scaled(c, &self.rewrite(m)?)?;
        }
        Ok(out)
    }

    /// Coordinates of the normal form of `p` on [`Rewriter::basis`].
    pub fn coordinates(&self, p: &MLPoly) -> Result<Vec<Rational>> {
        let r = self.reduce(p)?;
        Ok(self.basis.iter().map(|b| r.coeff(b)).collect())
    }

    pub fn is_zero_mod(&self, p: &MLPoly) -> Result<bool> {
        Ok(self.coordinates(p)?.iter().all(Zero::is_zero))
    }
}

pub fn normal_basis() -> Vec<MagmaTree> {
    NORMAL_BASIS.iter().map(|s| s.parse().expect("valid tree")).collect()
}

/// Degree-3 normal form over the six monomials
/// `c(ab), (bc)a, (ca)b, (ac)b, (ba)c, (ab)c`.
pub fn normal_form(rels: &RelationSet) -> Result<Rewriter> {
    let span = rels.orbit_span(3)?;
    Rewriter::with_basis(&span, &normal_basis())
}
