//! Concrete algebras on a basis `e_i`, `i ∈ ℤ`, with exact window checks.
//!
//! Products are never truncated: a window `[-K, K]` only restricts which
//! basis tuples are tested.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::magma::{MLPoly, MagmaTree};
use crate::rational::{format_abs, int, Rational};

/// Finitely supported element `sum c_i e_i`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanElement {
    terms: BTreeMap<i64, Rational>,
}

impl SpanElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: i64) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: i64, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(i, c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut s = Self::zero();
        for (i, c) in terms {
            s.add_term(i, c);
        }
        s
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn coeff(&self, i: i64) -> Rational {
        self.terms.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, k: &Rational, other: &SpanElement) {
        for (i, c) in &other.terms {
            self.add_term(*i, k * c);
        }
    }

    pub fn scale(&self, k: &Rational) -> SpanElement {
        let mut out = Self::zero();
        out.add_scaled(k, self);
        out
    }

    pub fn plus(&self, other: &SpanElement) -> SpanElement {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn minus(&self, other: &SpanElement) -> SpanElement {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }
}

impl fmt::Display for SpanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !c.abs().is_one() {
                write!(f, "{}*", format_abs(c))?;
            }
            write!(f, "e_{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

type Rule = Arc<dyn Fn(i64, i64) -> SpanElement + Send + Sync>;

/// Bilinear product given on basis pairs.
#[derive(Clone)]
pub struct SpanAlgebra {
    name: String,
    rule: Rule,
}

impl fmt::Debug for SpanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpanAlgebra").field("name", &self.name).finish()
    }
}

impl SpanAlgebra {
    pub fn new(name: impl Into<String>, rule: impl Fn(i64, i64) -> SpanElement + Send + Sync + 'static) -> Self {
        SpanAlgebra { name: name.into(), rule: Arc::new(rule) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis_product(&self, i: i64, j: i64) -> SpanElement {
        (self.rule)(i, j)
    }

    pub fn mul(&self, x: &SpanElement, y: &SpanElement) -> SpanElement {
        let mut out = SpanElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                out.add_scaled(&(a * b), &self.basis_product(*i, *j));
            }
        }
        out
    }

    /// Value of a monomial with leaf `k` replaced by `args[k - 1]`.
    pub fn eval_tree(&self, t: &MagmaTree, args: &[SpanElement]) -> SpanElement {
        match t {
            MagmaTree::Leaf(k) => args[*k as usize - 1].clone(),
            MagmaTree::Node(l, r) => self.mul(&self.eval_tree(l, args), &self.eval_tree(r, args)),
        }
    }

    pub fn eval(&self, p: &MLPoly, args: &[SpanElement]) -> SpanElement {
        let mut out = SpanElement::zero();
        for (t, c) in p.terms() {
            out.add_scaled(c, &self.eval_tree(t, args));
        }
        out
    }
}

/// Two products on one basis. For Novikov–Poisson pairs `circ` holds the
/// Novikov product `·`.
#[derive(Clone, Debug)]
pub struct BiAlgebra {
    pub name: String,
    pub circ: SpanAlgebra,
    pub bullet: SpanAlgebra,
}

/// `e_i × e_j = (j - i) e_{i+j} + sum_s eps_s e_{i+j+s}`.
#[allow(non_snake_case)]
pub fn make_aS(shifts: &[i64], eps: &[Rational]) -> Result<SpanAlgebra> {
    if shifts.len() != eps.len() {
        return Err(Error::LengthMismatch(format!("{} shifts but {} coefficients", shifts.len(), eps.len())));
    }
    let pairs: Vec<(i64, Rational)> = shifts.iter().copied().zip(eps.iter().cloned()).collect();
    let name = format!(
        "A(S) S=[{}] eps=[{}]",
        shifts.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
        eps.iter().map(crate::rational::format_rational).collect::<Vec<_>>().join(",")
    );
    Ok(SpanAlgebra::new(name, move |i, j| {
        let mut out = SpanElement::term(i + j, int(j - i));
        for (s, e) in &pairs {
            out.add_term(i + j + s, e.clone());
        }
        out
    }))
}

/// `a × b = u (a ∂b - b ∂a) + v a b` on Laurent monomials `e_i = x^i` with
/// `∂ = d/dx`.
pub fn make_derivation_algebra(u: &SpanElement, v: &SpanElement) -> SpanAlgebra {
    let (u, v) = (u.clone(), v.clone());
    let name = format!("derivation u={u} v={v}");
    SpanAlgebra::new(name, move |i, j| {
        let mut out = SpanElement::zero();
        let d = int(j - i);
        if !d.is_zero() {
            for (k, c) in u.terms() {
                out.add_term(i + j - 1 + k, c * &d);
            }
        }
        for (k, c) in v.terms() {
            out.add_term(i + j + k, c.clone());
        }
        out
    })
}

/// `e_i · e_j = j e_{i+j}` and `e_i • e_j = e_{i+j}`.
pub fn make_witt_np() -> BiAlgebra {
    BiAlgebra {
        name: "witt-np".into(),
        circ: SpanAlgebra::new("e_i·e_j = j e_{i+j}", |i, j| SpanElement::term(i + j, int(j))),
        bullet: SpanAlgebra::new("e_i•e_j = e_{i+j}", |i, j| SpanElement::basis(i + j)),
    }
}

/// `a ∘_u b = u • (a·b - b·a)` and `a •_v b = v • (a • b)`.
pub fn localize(np: &BiAlgebra, u: &SpanElement, v: &SpanElement) -> BiAlgebra {
    let (dot, bullet) = (np.circ.clone(), np.bullet.clone());
    let (b1, b2) = (bullet.clone(), bullet);
    let (u, v) = (u.clone(), v.clone());
    let name = format!("{} localized u={u} v={v}", np.name);
    let circ = SpanAlgebra::new(format!("∘_u, u={u}"), move |i, j| {
        let comm = dot.basis_product(i, j).minus(&dot.basis_product(j, i));
        b1.mul(&u, &comm)
    });
    let bullet = SpanAlgebra::new(format!("•_v, v={v}"), move |i, j| b2.mul(&v, &b2.basis_product(i, j)));
    BiAlgebra { name, circ, bullet }
}

/// [`localize`] with `u = e_{u_index}` and `v = e_{v_index}`.
pub fn localize_at(np: &BiAlgebra, u_index: i64, v_index: i64) -> BiAlgebra {
    localize(np, &SpanElement::basis(u_index), &SpanElement::basis(v_index))
}

/// `a ∘ b = ½(a×b - b×a)`, `a • b = ½(a×b + b×a)`.
pub fn polarize(a: &SpanAlgebra) -> BiAlgebra {
    let half = Rational::new(1.into(), 2.into());
    let (a1, a2) = (a.clone(), a.clone());
    let (h1, h2) = (half.clone(), half);
    BiAlgebra {
        name: format!("polarization of {}", a.name),
        circ: SpanAlgebra::new("∘", move |i, j| a1.basis_product(i, j).minus(&a1.basis_product(j, i)).scale(&h1)),
        bullet: SpanAlgebra::new("•", move |i, j| a2.basis_product(i, j).plus(&a2.basis_product(j, i)).scale(&h2)),
    }
}

/// `a × b = a ∘ b + a • b`.
pub fn depolarize(b: &BiAlgebra) -> SpanAlgebra {
    depolarize_scaled(b, Rational::one())
}

/// `a b = ½(a ∘ b + a • b)`.
pub fn depolarize_half(b: &BiAlgebra) -> SpanAlgebra {
    depolarize_scaled(b, Rational::new(1.into(), 2.into()))
}

fn depolarize_scaled(b: &BiAlgebra, k: Rational) -> SpanAlgebra {
    let (c, d) = (b.circ.clone(), b.bullet.clone());
    SpanAlgebra::new(format!("depolarization of {}", b.name), move |i, j| {
        c.basis_product(i, j).plus(&d.basis_product(i, j)).scale(&k)
    })
}

/// `[a, b] = ½(a×b - b×a)`.
pub fn commutator_algebra(a: &SpanAlgebra) -> SpanAlgebra {
    let inner = a.clone();
    let half = Rational::new(1.into(), 2.into());
    SpanAlgebra::new(format!("commutator of {}", a.name), move |i, j| {
        inner.basis_product(i, j).minus(&inner.basis_product(j, i)).scale(&half)
    })
}

/// A basis tuple on which an identity or axiom fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub axiom: String,
    pub indices: Vec<i64>,
    pub lhs: SpanElement,
    pub rhs: SpanElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from_witness(witness: Option<Witness>) -> Self {
        Verdict { passed: witness.is_none(), witness }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "pass"),
            Some(w) => {
                let idx = w.indices.iter().map(|i| format!("e_{i}")).collect::<Vec<_>>().join(", ");
                write!(f, "fail: {} at ({idx}): lhs = {}, rhs = {}", w.axiom, w.lhs, w.rhs)
            }
        }
    }
}

/// Basis tuples of length `arity` over `[-k, k]` in lexicographic order.
fn tuple(arity: usize, k: i64, mut n: usize) -> Vec<i64> {
    let side = (2 * k + 1) as usize;
    let mut out = vec![0i64; arity];
    for slot in out.iter_mut().rev() {
        *slot = (n % side) as i64 - k;
        n /= side;
    }
    out
}

/// First tuple in lexicographic order where `lhs != rhs`.
fn sweep<F>(name: &str, arity: usize, k: i64, eval: F) -> Option<Witness>
where
    F: Fn(&[SpanElement]) -> (SpanElement, SpanElement) + Sync,
{
    let side = (2 * k + 1) as usize;
    let total = side.pow(arity as u32);
    (0..total).into_par_iter().find_map_first(|n| {
        let indices = tuple(arity, k, n);
        let args: Vec<SpanElement> = indices.iter().map(|i| SpanElement::basis(*i)).collect();
        let (lhs, rhs) = eval(&args);
        (lhs != rhs).then(|| Witness { axiom: name.to_string(), indices, lhs, rhs })
    })
}

/// Checks `p = 0` on all basis tuples with indices in `[-k, k]`.
pub fn check_identity(a: &SpanAlgebra, p: &MLPoly, k: i64) -> Verdict {
    check_named_identity(a, &p.to_string(), p, k)
}

pub fn check_named_identity(a: &SpanAlgebra, name: &str, p: &MLPoly, k: i64) -> Verdict {
    Verdict::from_witness(sweep(name, p.arity(), k, |args| (a.eval(p, args), SpanElement::zero())))
}

/// Checks the identities in order and reports the first failing one.
pub fn check_identities(a: &SpanAlgebra, ids: &[(String, MLPoly)], k: i64) -> Verdict {
    for (name, p) in ids {
        let v = check_named_identity(a, name, p, k);
        if !v.passed {
            return v;
        }
    }
    Verdict { passed: true, witness: None }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomSet {
    TransposedPoisson,
    NovikovPoisson,
    Poisson,
}

impl AxiomSet {
    pub const ALL: [AxiomSet; 3] = [AxiomSet::TransposedPoisson, AxiomSet::NovikovPoisson, AxiomSet::Poisson];

    pub fn name(self) -> &'static str {
        match self {
            AxiomSet::TransposedPoisson => "transposed_poisson",
            AxiomSet::NovikovPoisson => "novikov_poisson",
            AxiomSet::Poisson => "poisson",
        }
    }

    /// Axioms in the order they are checked.
    pub fn axioms(self) -> Vec<Axiom> {
        use Axiom::*;
        match self {
            AxiomSet::TransposedPoisson => {
                vec![CircAnticomm, CircJacobi, BulletComm, BulletAssoc, TransposedLeibniz]
            }
            AxiomSet::NovikovPoisson => {
                vec![BulletComm, BulletAssoc, LeftSymmetric, RightCommutative, BulletDotAssoc, DotBulletLeibniz]
            }
            AxiomSet::Poisson => vec![CircAnticomm, CircJacobi, BulletComm, BulletAssoc, PoissonLeibniz],
        }
    }
}

impl FromStr for AxiomSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AxiomSet::ALL
            .into_iter()
            .find(|a| a.name() == s || a.name().replace('_', "-") == s)
            .ok_or_else(|| Error::UnknownAxiomSet(s.to_string()))
    }
}

impl fmt::Display for AxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One axiom `lhs = rhs` on a [`BiAlgebra`]; `·` is read from `circ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `a∘b = -b∘a`
    CircAnticomm,
    /// `(a∘b)∘c + (b∘c)∘a + (c∘a)∘b = 0`
    CircJacobi,
    /// `a•b = b•a`
    BulletComm,
    /// `(a•b)•c = a•(b•c)`
    BulletAssoc,
    /// `2a•(b∘c) = (a•b)∘c + b∘(a•c)`
    TransposedLeibniz,
    /// `a∘(b•c) = (a∘b)•c + b•(a∘c)`
    PoissonLeibniz,
    /// `(a·b - b·a)·c = a·(b·c) - b·(a·c)`
    LeftSymmetric,
    /// `(a·b)·c = (a·c)·b`
    RightCommutative,
    /// `a•(b·c) = (a•b)·c`
    BulletDotAssoc,
    /// `a·(b•c) = (a·b)•c + b•(a·c)`
    DotBulletLeibniz,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::CircAnticomm => "a∘b = -b∘a",
            Axiom::CircJacobi => "(a∘b)∘c + (b∘c)∘a + (c∘a)∘b = 0",
            Axiom::BulletComm => "a•b = b•a",
            Axiom::BulletAssoc => "(a•b)•c = a•(b•c)",
            Axiom::TransposedLeibniz => "2a•(b∘c) = (a•b)∘c + b∘(a•c)",
            Axiom::PoissonLeibniz => "a∘(b•c) = (a∘b)•c + b•(a∘c)",
            Axiom::LeftSymmetric => "(a·b - b·a)·c = a·(b·c) - b·(a·c)",
            Axiom::RightCommutative => "(a·b)·c = (a·c)·b",
            Axiom::BulletDotAssoc => "a•(b·c) = (a•b)·c",
            Axiom::DotBulletLeibniz => "a·(b•c) = (a·b)•c + b•(a·c)",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Axiom::CircAnticomm | Axiom::BulletComm => 2,
            _ => 3,
        }
    }

    pub fn sides(self, bi: &BiAlgebra, x: &[SpanElement]) -> (SpanElement, SpanElement) {
        let c = |p: &SpanElement, q: &SpanElement| bi.circ.mul(p, q);
        let b = |p: &SpanElement, q: &SpanElement| bi.bullet.mul(p, q);
        let two = int(2);
        match self {
            Axiom::CircAnticomm => (c(&x[0], &x[1]), c(&x[1], &x[0]).scale(&-Rational::one())),
            Axiom::BulletComm => (b(&x[0], &x[1]), b(&x[1], &x[0])),
            Axiom::CircJacobi => {
                let s = c(&c(&x[0], &x[1]), &x[2]).plus(&c(&c(&x[1], &x[2]), &x[0])).plus(&c(&c(&x[2], &x[0]), &x[1]));
                (s, SpanElement::zero())
            }
            Axiom::BulletAssoc => (b(&b(&x[0], &x[1]), &x[2]), b(&x[0], &b(&x[1], &x[2]))),
            Axiom::TransposedLeibniz => (
                b(&x[0], &c(&x[1], &x[2])).scale(&two),
                c(&b(&x[0], &x[1]), &x[2]).plus(&c(&x[1], &b(&x[0], &x[2]))),
            ),
            Axiom::PoissonLeibniz => {
                (c(&x[0], &b(&x[1], &x[2])), b(&c(&x[0], &x[1]), &x[2]).plus(&b(&x[1], &c(&x[0], &x[2]))))
            }
            Axiom::LeftSymmetric => (
                c(&c(&x[0], &x[1]).minus(&c(&x[1], &x[0])), &x[2]),
                c(&x[0], &c(&x[1], &x[2])).minus(&c(&x[1], &c(&x[0], &x[2]))),
            ),
            Axiom::RightCommutative => (c(&c(&x[0], &x[1]), &x[2]), c(&c(&x[0], &x[2]), &x[1])),
            Axiom::BulletDotAssoc => (b(&x[0], &c(&x[1], &x[2])), c(&b(&x[0], &x[1]), &x[2])),
            Axiom::DotBulletLeibniz => {
                (c(&x[0], &b(&x[1], &x[2])), b(&c(&x[0], &x[1]), &x[2]).plus(&b(&x[1], &c(&x[0], &x[2]))))
            }
        }
    }
}

/// Checks every axiom of `set` in order on the window `[-k, k]`.
pub fn check_axioms(bi: &BiAlgebra, set: AxiomSet, k: i64) -> Verdict {
    for ax in set.axioms() {
        if let Some(w) = sweep(ax.name(), ax.arity(), k, |args| ax.sides(bi, args)) {
            return Verdict::from_witness(Some(w));
        }
    }
    Verdict { passed: true, witness: None }
}

impl Witness {
    /// Re-evaluates an identity witness; true when it is a genuine failure.
    pub fn revalidate_identity(&self, a: &SpanAlgebra, p: &MLPoly) -> bool {
        let args: Vec<SpanElement> = self.indices.iter().map(|i| SpanElement::basis(*i)).collect();
        args.len() == p.arity() && !a.eval(p, &args).is_zero()
    }

    /// Re-evaluates an axiom witness; true when it is a genuine failure.
    pub fn revalidate_axiom(&self, bi: &BiAlgebra, set: AxiomSet) -> bool {
        let Some(ax) = set.axioms().into_iter().find(|a| a.name() == self.axiom) else {
            return false;
        };
        let args: Vec<SpanElement> = self.indices.iter().map(|i| SpanElement::basis(*i)).collect();
        if args.len() != ax.arity() {
            return false;
        }
        let (l, r) = ax.sides(bi, &args);
        l != r
    }
}
