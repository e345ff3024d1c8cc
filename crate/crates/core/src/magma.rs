//! Multilinear magmatic monomials and polynomials.
//!
//! A monomial of arity `n` is a planar binary tree whose leaves carry the
//! labels `1..=n`, each exactly once. Monomials are totally ordered: by arity,
//! then by shape (larger left subtree first, recursively), then by the leaf
//! labels read left to right. That order is the column order of every row
//! produced by [`MLPoly::to_row`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::SparseRow;
use crate::rational::{format_abs, parse_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum MagmaTree {
    Leaf(u32),
    Node(Box<MagmaTree>, Box<MagmaTree>),
}

impl MagmaTree {
    pub fn leaf(i: u32) -> Self {
        MagmaTree::Leaf(i)
    }

    pub fn node(left: MagmaTree, right: MagmaTree) -> Self {
        MagmaTree::Node(Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self {
            MagmaTree::Leaf(_) => 1,
            MagmaTree::Node(l, r) => l.arity() + r.arity(),
        }
    }

    /// Leaf labels read left to right.
    pub fn labels(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(8);
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<u32>) {
        match self {
            MagmaTree::Leaf(i) => out.push(*i),
            MagmaTree::Node(l, r) => {
                l.collect_labels(out);
                r.collect_labels(out);
            }
        }
    }

    /// True if the labels are exactly `1..=arity` in some order.
    pub fn is_multilinear(&self) -> bool {
        let labels = self.labels();
        let n = labels.len();
        let mut seen = vec![false; n + 1];
        for l in labels {
            let l = l as usize;
            if l == 0 || l > n || seen[l] {
                return false;
            }
            seen[l] = true;
        }
        true
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> MagmaTree {
        match self {
            MagmaTree::Leaf(i) => MagmaTree::Leaf(f(*i)),
            MagmaTree::Node(l, r) => MagmaTree::node(l.relabel(f), r.relabel(f)),
        }
    }

    /// Replaces every leaf by the tree `f` returns for its label.
    pub fn graft(&self, f: &impl Fn(u32) -> MagmaTree) -> MagmaTree {
        match self {
            MagmaTree::Leaf(i) => f(*i),
            MagmaTree::Node(l, r) => MagmaTree::node(l.graft(f), r.graft(f)),
        }
    }

    /// The same shape with leaves labelled `1..=n` left to right.
    pub fn shape(&self) -> MagmaTree {
        fn go(t: &MagmaTree, next: &mut u32) -> MagmaTree {
            match t {
                MagmaTree::Leaf(_) => {
                    *next += 1;
                    MagmaTree::Leaf(*next)
                }
                MagmaTree::Node(l, r) => {
                    let l = go(l, next);
                    MagmaTree::node(l, go(r, next))
                }
            }
        }
        go(self, &mut 0)
    }

    fn shape_cmp(&self, other: &MagmaTree) -> Ordering {
        match (self, other) {
            (MagmaTree::Leaf(_), MagmaTree::Leaf(_)) => Ordering::Equal,
            (MagmaTree::Leaf(_), MagmaTree::Node(..)) => Ordering::Less,
            (MagmaTree::Node(..), MagmaTree::Leaf(_)) => Ordering::Greater,
            (MagmaTree::Node(al, ar), MagmaTree::Node(bl, br)) => bl
                .arity()
                .cmp(&al.arity())
                .then_with(|| al.shape_cmp(bl))
                .then_with(|| ar.shape_cmp(br)),
        }
    }

    /// Letter notation with the outermost parentheses dropped: `(ab)c`.
    /// Labels beyond 26 fall back to `t<i>`.
    pub fn to_letters(&self) -> String {
        fn letter(i: u32) -> String {
            if (1..=26).contains(&i) {
                char::from(b'a' + (i - 1) as u8).to_string()
            } else {
                format!("t{i}")
            }
        }
        fn go(t: &MagmaTree, top: bool) -> String {
            match t {
                MagmaTree::Leaf(i) => letter(*i),
                MagmaTree::Node(l, r) => {
                    let s = format!("{}{}", go(l, false), go(r, false));
                    if top {
                        s
                    } else {
                        format!("({s})")
                    }
                }
            }
        }
        go(self, true)
    }
}

impl Ord for MagmaTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity()
            .cmp(&other.arity())
            .then_with(|| self.shape_cmp(other))
            .then_with(|| self.labels().cmp(&other.labels()))
    }
}

impl PartialOrd for MagmaTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MagmaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagmaTree::Leaf(i) => write!(f, "{i}"),
            MagmaTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl fmt::Debug for MagmaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MagmaTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let t = p.tree()?;
        p.expect_end()?;
        Ok(t)
    }
}

/// Which side of the substituted variable the new variable goes on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstPattern {
    /// `t_i -> (t_i t_new)`
    VarNew,
    /// `t_i -> (t_new t_i)`
    NewVar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `t_new * p`
    Left,
    /// `p * t_new`
    Right,
}

/// A rational combination of multilinear monomials of one arity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MLPoly {
    arity: usize,
    terms: BTreeMap<MagmaTree, Rational>,
}

impl MLPoly {
    pub fn zero(arity: usize) -> Self {
        MLPoly { arity, terms: BTreeMap::new() }
    }

    pub fn monomial(tree: MagmaTree) -> Result<Self> {
        let arity = tree.arity();
        Self::from_terms(arity, [(tree, Rational::one())])
    }

    /// Sums the given terms; every tree must be multilinear of `arity`.
    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (MagmaTree, Rational)>,
    ) -> Result<Self> {
        let mut out = MLPoly::zero(arity);
        for (t, c) in terms {
            if t.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: t.arity() });
            }
            if !t.is_multilinear() {
                return Err(Error::NotMultilinear(t.to_string()));
            }
            out.add_term(t, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, t: MagmaTree, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MagmaTree, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &MagmaTree) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> MLPoly {
        if k.is_zero() {
            return MLPoly::zero(self.arity);
        }
        MLPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect(),
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &Rational, other: &MLPoly) -> Result<MLPoly> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c * k);
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &MLPoly) -> Result<MLPoly> {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn try_sub(&self, other: &MLPoly) -> Result<MLPoly> {
        self.add_scaled(&-Rational::one(), other)
    }

    /// Relabels leaf `i` as `sigma[i - 1]`.
    ///
    /// Writing `sigma = [3, 1, 2]` turns `f(t_1, t_2, t_3)` into
    /// `f(t_3, t_1, t_2)`.
    pub fn apply_permutation(&self, sigma: &[u32]) -> Result<MLPoly> {
        check_permutation(self.arity, sigma)?;
        Ok(self.relabel_unchecked(sigma))
    }

    fn relabel_unchecked(&self, sigma: &[u32]) -> MLPoly {
        let f = |i: u32| sigma[(i - 1) as usize];
        MLPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(t, c)| (t.relabel(&f), c.clone())).collect(),
        }
    }

    /// Replaces the leaf labelled `i` by a product with the new variable
    /// `t_{n+1}`.
    pub fn substitute(&self, i: u32, pattern: SubstPattern) -> Result<MLPoly> {
        if i == 0 || i as usize > self.arity {
            return Err(Error::VariableOutOfRange { index: i, arity: self.arity });
        }
        let new = self.arity as u32 + 1;
        let f = |j: u32| {
            if j != i {
                MagmaTree::Leaf(j)
            } else {
                match pattern {
                    SubstPattern::VarNew => MagmaTree::node(MagmaTree::Leaf(i), MagmaTree::Leaf(new)),
                    SubstPattern::NewVar => MagmaTree::node(MagmaTree::Leaf(new), MagmaTree::Leaf(i)),
                }
            }
        };
        Ok(MLPoly {
            arity: self.arity + 1,
            terms: self.terms.iter().map(|(t, c)| (t.graft(&f), c.clone())).collect(),
        })
    }

    /// Multiplies by the new variable `t_{n+1}` on the given side.
    pub fn mul_new(&self, side: Side) -> MLPoly {
        let new = MagmaTree::Leaf(self.arity as u32 + 1);
        MLPoly {
            arity: self.arity + 1,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| {
                    let t = match side {
                        Side::Left => MagmaTree::node(new.clone(), t.clone()),
                        Side::Right => MagmaTree::node(t.clone(), new.clone()),
                    };
                    (t, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes polynomials for the variables; `args[i - 1]` replaces
    /// `t_i`. The argument arities must sum to the result arity and their
    /// labels are shifted into consecutive blocks.
    pub fn compose(&self, args: &[MLPoly]) -> Result<MLPoly> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        let mut offsets = Vec::with_capacity(args.len());
        let mut total = 0u32;
        for a in args {
            offsets.push(total);
            total += a.arity as u32;
        }
        let mut out = MLPoly::zero(total as usize);
        for (t, c) in &self.terms {
            let mut choices: Vec<(Vec<&MagmaTree>, Rational)> = vec![(Vec::new(), c.clone())];
            for a in args {
                choices = choices
                    .iter()
                    .flat_map(|(picked, pc)| {
                        a.terms.iter().map(move |(at, ac)| {
                            let mut picked = picked.clone();
                            picked.push(at);
                            (picked, pc * ac)
                        })
                    })
                    .collect();
            }
            for (picked, coef) in choices {
                let grafted = t.graft(&|j| {
                    let k = (j - 1) as usize;
                    picked[k].relabel(&|x| x + offsets[k])
                });
                out.add_term(grafted, coef);
            }
        }
        Ok(out)
    }

    pub fn to_row(&self, idx: &MonomialIndex) -> Result<SparseRow> {
        if idx.arity != self.arity {
            return Err(Error::ArityMismatch { expected: idx.arity, found: self.arity });
        }
        let entries: Vec<_> = self.terms.iter().map(|(t, c)| (idx.position(t), c.clone())).collect();
        // BTreeMap order is the canonical order, so positions are increasing.
        Ok(SparseRow::from_sorted_unchecked(idx.len(), entries))
    }

    pub fn from_row(row: &SparseRow, idx: &MonomialIndex) -> Result<MLPoly> {
        if row.dim() != idx.len() {
            return Err(Error::DimensionMismatch { expected: idx.len(), found: row.dim() });
        }
        Ok(MLPoly {
            arity: idx.arity,
            terms: row.entries().iter().map(|(c, v)| (idx.monomials[*c].clone(), v.clone())).collect(),
        })
    }

    /// Parses the textual grammar, e.g. `((1 2) 3) - 2*(1 (2 3))`. The
    /// arity is the largest label that occurs, or `arity` when given.
    pub fn parse(s: &str, arity: Option<usize>) -> Result<MLPoly> {
        let mut p = Parser::new(s);
        let terms = p.poly()?;
        p.expect_end()?;
        let n = arity.unwrap_or_else(|| terms.iter().map(|(t, _)| t.arity()).max().unwrap_or(0));
        MLPoly::from_terms(n, terms)
    }
}

impl std::ops::Add<&MLPoly> for &MLPoly {
    type Output = MLPoly;

    /// Panics on arity mismatch; see [`MLPoly::try_add`].
    fn add(self, rhs: &MLPoly) -> MLPoly {
        self.try_add(rhs).expect("arity mismatch in MLPoly addition")
    }
}

impl std::ops::Sub<&MLPoly> for &MLPoly {
    type Output = MLPoly;

    fn sub(self, rhs: &MLPoly) -> MLPoly {
        self.try_sub(rhs).expect("arity mismatch in MLPoly subtraction")
    }
}

impl std::ops::Neg for &MLPoly {
    type Output = MLPoly;

    fn neg(self) -> MLPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |t| t.to_string(), "*")
    }
}

impl fmt::Debug for MLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl MLPoly {
    /// Letter rendering, e.g. `c(ab) + 1/2 (ac)b - 1/2 (ca)b`.
    pub fn to_letters(&self) -> String {
        struct L<'a>(&'a MLPoly);
        impl fmt::Display for L<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_terms(f, self.0.terms.iter(), |t| t.to_letters(), " ")
            }
        }
        L(self).to_string()
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a MagmaTree, &'a Rational)>,
    render: impl Fn(&MagmaTree) -> String,
    times: &str,
) -> fmt::Result {
    let mut first = true;
    for (t, c) in terms {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if c.abs().is_one() {
            write!(f, "{}", render(t))?;
        } else {
            write!(f, "{}{}{}", format_abs(c), times, render(t))?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub fn check_permutation(n: usize, sigma: &[u32]) -> Result<()> {
    let bad = || Error::NotAPermutation(n, sigma.to_vec());
    if sigma.len() != n {
        return Err(bad());
    }
    let mut seen = vec![false; n + 1];
    for &s in sigma {
        let s = s as usize;
        if s == 0 || s > n || seen[s] {
            return Err(bad());
        }
        seen[s] = true;
    }
    Ok(())
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Catalan number `C_m`; `catalan(n - 1)` shapes have `n` leaves.
pub fn catalan(m: usize) -> usize {
    let mut c = vec![1usize; m + 1];
    for i in 1..=m {
        c[i] = (0..i).map(|k| c[k] * c[i - 1 - k]).sum();
    }
    c[m]
}

/// Number of multilinear monomials of arity `n`.
pub fn monomial_count(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        catalan(n - 1) * factorial(n)
    }
}

/// Tree shapes with `n` leaves (labelled left to right) in canonical order.
pub fn shapes(n: usize) -> Vec<MagmaTree> {
    fn go(n: usize) -> Vec<MagmaTree> {
        if n == 1 {
            return vec![MagmaTree::Leaf(0)];
        }
        let mut out = Vec::new();
        for k in (1..n).rev() {
            let lefts = go(k);
            let rights = go(n - k);
            for l in &lefts {
                for r in &rights {
                    out.push(MagmaTree::node(l.clone(), r.clone()));
                }
            }
        }
        out
    }
    if n == 0 {
        return Vec::new();
    }
    go(n).into_iter().map(|t| t.shape()).collect()
}

fn shape_rank(t: &MagmaTree) -> usize {
    match t {
        MagmaTree::Leaf(_) => 0,
        MagmaTree::Node(l, r) => {
            let n = t.arity();
            let k = l.arity();
            let offset: usize = ((k + 1)..n).map(|j| catalan(j - 1) * catalan(n - j - 1)).sum();
            offset + shape_rank(l) * catalan(n - k - 1) + shape_rank(r)
        }
    }
}

fn perm_rank(labels: &[u32]) -> usize {
    let n = labels.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = labels[i + 1..].iter().filter(|&&x| x < labels[i]).count();
        rank += smaller * factorial(n - 1 - i);
    }
    rank
}

/// All multilinear monomials of one arity in canonical order.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    arity: usize,
    monomials: Vec<MagmaTree>,
}

impl MonomialIndex {
    pub fn new(n: usize) -> Result<Self> {
        enumerate_monomials(n)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[MagmaTree] {
        &self.monomials
    }

    pub fn get(&self, pos: usize) -> &MagmaTree {
        &self.monomials[pos]
    }

    /// Column of a multilinear monomial of this arity.
    pub fn position(&self, t: &MagmaTree) -> usize {
        debug_assert_eq!(t.arity(), self.arity);
        shape_rank(t) * factorial(self.arity) + perm_rank(&t.labels())
    }

    pub fn try_position(&self, t: &MagmaTree) -> Result<usize> {
        if t.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: t.arity() });
        }
        if !t.is_multilinear() {
            return Err(Error::NotMultilinear(t.to_string()));
        }
        Ok(self.position(t))
    }
}

pub fn enumerate_monomials(n: usize) -> Result<MonomialIndex> {
    if n == 0 {
        return Err(Error::ZeroArity);
    }
    let perms = permutations(n);
    let mut monomials = Vec::with_capacity(monomial_count(n));
    for s in shapes(n) {
        for p in &perms {
            monomials.push(s.relabel(&|pos| p[(pos - 1) as usize]));
        }
    }
    Ok(MonomialIndex { arity: n, monomials })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek_raw() {
            self.pos += c.len_utf8();
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.err("trailing input")),
        }
    }

    fn integer(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn tree(&mut self) -> Result<MagmaTree> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let l = self.tree()?;
                let r = self.tree()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(MagmaTree::node(l, r))
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.integer()?;
                let i: u32 = s.parse().map_err(|_| self.err("label too large"))?;
                if i == 0 {
                    return Err(self.err("labels start at 1"));
                }
                Ok(MagmaTree::Leaf(i))
            }
            _ => Err(self.err("expected tree")),
        }
    }

    fn coefficient(&mut self) -> Result<Option<Rational>> {
        // A bare integer followed by `*`, `/` or `(` is a coefficient;
        // otherwise it is a leaf and the term is that single variable.
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok(None);
        }
        let save = self.pos;
        let num = self.integer()?;
        let mut text = num.to_string();
        if self.peek() == Some('/') {
            self.bump();
            let den = self.integer()?;
            text = format!("{num}/{den}");
        }
        match self.peek() {
            Some('*') => {
                self.bump();
                Ok(Some(parse_rational(&text)?))
            }
            Some('(') => Ok(Some(parse_rational(&text)?)),
            _ if text.contains('/') => Err(self.err("coefficient without monomial")),
            _ => {
                self.pos = save;
                Ok(None)
            }
        }
    }

    fn term(&mut self) -> Result<(MagmaTree, Rational)> {
        let c = self.coefficient()?.unwrap_or_else(Rational::one);
        let t = self.tree()?;
        Ok((t, c))
    }

    fn poly(&mut self) -> Result<Vec<(MagmaTree, Rational)>> {
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        match self.peek() {
            Some('-') => {
                self.bump();
                sign = -sign;
            }
            Some('+') => self.bump(),
            Some('0') => {
                let save = self.pos;
                self.bump();
                if self.peek().is_none() {
                    return Ok(terms);
                }
                self.pos = save;
            }
            _ => {}
        }
        loop {
            let (t, c) = self.term()?;
            terms.push((t, c * &sign));
            match self.peek() {
                Some('+') => {
                    self.bump();
                    sign = Rational::one();
                }
                Some('-') => {
                    self.bump();
                    sign = -Rational::one();
                }
                _ => break,
            }
        }
        Ok(terms)
    }
}

impl FromStr for MLPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MLPoly::parse(s, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn t(s: &str) -> MagmaTree {
        s.parse().unwrap()
    }

    fn p(s: &str) -> MLPoly {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert!(enumerate_monomials(0).is_err());
        assert_eq!(enumerate_monomials(1).unwrap().len(), 1);
        assert_eq!(enumerate_monomials(3).unwrap().len(), 12);
        assert_eq!(shapes(4).len(), 5);
        assert_eq!(enumerate_monomials(4).unwrap().len(), 120);
    }

    #[test]
    fn four_leaf_shapes_in_left_comb_first_order() {
        let names: Vec<String> = shapes(4).iter().map(|s| s.to_letters()).collect();
        assert_eq!(names, ["((ab)c)d", "(a(bc))d", "(ab)(cd)", "a((bc)d)", "a(b(cd))"]);
    }

    #[test]
    fn positions_match_enumeration() {
        for n in 1..=5 {
            let idx = enumerate_monomials(n).unwrap();
            for (i, m) in idx.monomials().iter().enumerate() {
                assert_eq!(idx.position(m), i);
            }
            assert!(idx.monomials().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn tree_roundtrip_and_letters() {
        let m = t("((1 2) 3)");
        assert_eq!(m.to_string(), "((1 2) 3)");
        assert_eq!(m.to_letters(), "(ab)c");
        assert_eq!(t("(3 (1 2))").to_letters(), "c(ab)");
        assert!("(1 2".parse::<MagmaTree>().is_err());
        assert!("(0 1)".parse::<MagmaTree>().is_err());
    }

    #[test]
    fn polynomial_parsing() {
        let q = p("((1 2) 3) - 2*(1 (2 3)) + 1/2 ((1 3) 2)");
        assert_eq!(q.arity(), 3);
        assert_eq!(q.coeff(&t("(1 (2 3))")), int(-2));
        assert_eq!(q.coeff(&t("((1 3) 2)")), frac(1, 2));
        assert_eq!(p("-(1 2) + (2 1)").coeff(&t("(1 2)")), int(-1));
        assert_eq!(p("1").arity(), 1);
        assert!(p("0").is_zero());
        assert_eq!(q.to_string().parse::<MLPoly>().unwrap(), q);
        assert!("(1 1)".parse::<MLPoly>().is_err());
        assert!("((1 2) 3) + (1 2)".parse::<MLPoly>().is_err());
    }

    #[test]
    fn permutation_action() {
        let q = p("((1 2) 3) - 2*(1 (2 3))");
        assert_eq!(q.apply_permutation(&[1, 2, 3]).unwrap(), q);
        assert_eq!(q.apply_permutation(&[3, 1, 2]).unwrap(), p("((3 1) 2) - 2*(3 (1 2))"));
        assert!(q.apply_permutation(&[1, 1, 2]).is_err());
        assert!(q.apply_permutation(&[1, 2]).is_err());
    }

    #[test]
    fn substitution_and_multiplication() {
        let x = p("1");
        assert_eq!(x.substitute(1, SubstPattern::VarNew).unwrap(), p("(1 2)"));
        assert_eq!(p("(1 2)").substitute(2, SubstPattern::VarNew).unwrap(), p("(1 (2 3))"));
        assert_eq!(p("(1 2)").substitute(1, SubstPattern::NewVar).unwrap(), p("((3 1) 2)"));
        assert!(x.substitute(2, SubstPattern::VarNew).is_err());
        assert_eq!(x.mul_new(Side::Right), p("(1 2)"));
        assert_eq!(x.mul_new(Side::Left), p("(2 1)"));
        assert!(MLPoly::zero(3).mul_new(Side::Left).is_zero());
    }

    #[test]
    fn rows_roundtrip() {
        let idx = enumerate_monomials(3).unwrap();
        let q = p("((1 2) 3) - 2*(1 (2 3)) + (3 (2 1))");
        let r = q.to_row(&idx).unwrap();
        assert_eq!(r.nnz(), 3);
        assert_eq!(MLPoly::from_row(&r, &idx).unwrap(), q);
        assert!(MLPoly::zero(3).to_row(&idx).unwrap().is_zero());
        assert!(p("(1 2)").to_row(&idx).is_err());
    }

    #[test]
    fn composition_shifts_blocks() {
        let f = p("(1 2)");
        let g = f.compose(&[p("(1 2)"), p("1")]).unwrap();
        assert_eq!(g, p("((1 2) 3)"));
        let h = f.compose(&[p("1"), p("(1 2) - (2 1)")]).unwrap();
        assert_eq!(h, p("(1 (2 3)) - (1 (3 2))"));
    }

    #[test]
    fn lexicographic_permutations() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps[0], vec![1, 2, 3]);
        assert_eq!(ps[1], vec![1, 3, 2]);
        assert_eq!(ps[5], vec![3, 2, 1]);
    }
}
