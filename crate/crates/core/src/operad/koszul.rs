//! Koszul dual of a binary quadratic operad through the Jacobi identity of
//! the tensor product bracket.
//!
//! For `A` in the operad and `U` in its dual, the bracket
//! `[x⊗p, y⊗q] = (xy)⊗(pq) - (yx)⊗(qp)` on `A⊗U` must satisfy Jacobi. The
//! Jacobiator of the formal generators `a⊗u, b⊗v, c⊗w` is rewritten on the
//! normal monomials of `A`; the `U`-coefficients are the dual relations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::magma::{enumerate_monomials, permutations, MLPoly, MagmaTree};
use crate::rational::{format_abs, Rational};

use super::rewrite::Rewriter;
use super::RelationSet;

/// Linear combination of pairs `(A-monomial, U-monomial)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPoly {
    terms: BTreeMap<(MagmaTree, MagmaTree), Rational>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The generator `x_i ⊗ p_i`.
    pub fn generator(i: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((MagmaTree::Leaf(i), MagmaTree::Leaf(i)), Rational::one());
        TensorPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<(MagmaTree, MagmaTree), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (MagmaTree, MagmaTree), c: Rational) {
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn bracket(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((x, p), c) in &self.terms {
            for ((y, q), d) in &other.terms {
                let cd = c * d;
                let fwd = (MagmaTree::node(x.clone(), y.clone()), MagmaTree::node(p.clone(), q.clone()));
                let bwd = (MagmaTree::node(y.clone(), x.clone()), MagmaTree::node(q.clone(), p.clone()));
                out.add_term(fwd, cd.clone());
                out.add_term(bwd, -cd);
            }
        }
        out
    }

    /// Collects `U`-coefficients after rewriting every `A`-monomial.
    pub fn rewrite_left(&self, rw: &Rewriter) -> Result<BTreeMap<MagmaTree, MLPoly>> {
        let mut out: BTreeMap<MagmaTree, MLPoly> =
            rw.basis().iter().map(|b| (b.clone(), MLPoly::zero(rw.arity()))).collect();
        for ((x, p), c) in &self.terms {
            let u = MLPoly::monomial(p.clone())?;
            for (b, d) in rw.rewrite(x)?.terms() {
                let slot = out.get_mut(b).expect("rewrites land on basis monomials");
                *slot = slot.add_scaled(&(c * d), &u)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((x, p), c)) in self.terms.iter().enumerate() {
            let neg = *c < Rational::zero();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !c.abs().is_one() {
                write!(f, "{} ", format_abs(c))?;
            }
            write!(f, "{}⊗{}", x.to_letters(), uvw(p))?;
        }
        Ok(())
    }
}

fn uvw(t: &MagmaTree) -> String {
    t.to_letters().chars().map(|ch| match ch { 'a' => 'u', 'b' => 'v', 'c' => 'w', o => o }).collect()
}

/// `[[a⊗u,b⊗v],c⊗w] + [[b⊗v,c⊗w],a⊗u] + [[c⊗w,a⊗u],b⊗v]`.
pub fn jacobiator() -> TensorPoly {
    let g = [TensorPoly::generator(1), TensorPoly::generator(2), TensorPoly::generator(3)];
    let mut out = TensorPoly::zero();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        out = out.add(&g[i].bracket(&g[j]).bracket(&g[k]));
    }
    out
}

/// Pairs each normal monomial of `rw` with its `U`-coefficient in the
/// rewritten Jacobiator.
pub fn jacobiator_coefficients(rw: &Rewriter) -> Result<Vec<(MagmaTree, MLPoly)>> {
    let map = jacobiator().rewrite_left(rw)?;
    Ok(rw.basis().iter().map(|b| (b.clone(), map[b].clone())).collect())
}

/// Koszul dual relation set, named `<name>!`, with relations the reduced
/// row echelon basis of the dual relation span.
pub fn koszul_dual(rels: &RelationSet) -> Result<RelationSet> {
    if let Some(bad) = rels.relations.iter().find(|r| r.arity() != 3) {
        return Err(Error::NotQuadratic(bad.arity()));
    }
    let idx = enumerate_monomials(3)?;
    let span = rels.orbit_span(3)?;
    let rw = Rewriter::canonical(&span, &idx)?;
    let perms = permutations(3);
    let mut rows = Vec::new();
    for (_, p) in jacobiator_coefficients(&rw)? {
        for s in &perms {
            rows.push(p.apply_permutation(s)?.to_row(&idx)?);
        }
    }
    let dual = rref(idx.len(), &rows)?;
    let expected = idx.len() - span.dim();
    if dual.dim() != expected {
        return Err(Error::SpanDimension { expected, found: dual.dim() });
    }
    let relations = dual.basis().iter().map(|r| MLPoly::from_row(r, &idx)).collect::<Result<Vec<_>>>()?;
    Ok(RelationSet { name: format!("{}!", rels.name), relations })
}
