//! Component dimensions on quotient coordinates.
//!
//! Every monomial of arity `n` is a product `X * Y` of two smaller monomials
//! on complementary label sets. Modulo consequences sitting inside `X` or
//! `Y`, the arity-`n` component is therefore a quotient of
//! `sum_{S} P(|S|) (x) P(n - |S|)`, where `S` runs over the left label sets
//! and `P(k)` is the already computed quotient in arity `k`. What remains to
//! divide out are relations applied at the root, `r(A, B, ...)`, with each
//! argument a normal monomial on its own block of labels. Since the relation
//! span of each arity is closed under relabeling, it is enough to take the
//! blocks ordered by their smallest label.
//!
//! The quotient of arity `n` is read off the reduced row echelon form of those
//! root relations: columns without a pivot are the normal monomials, and
//! every other column rewrites into them. Arity 6 has 2808 such coordinates
//! for the weak Leibniz relations instead of 30240 monomials.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{rref, Accumulator, SparseRow, Subspace};
use crate::magma::{MLPoly, MagmaTree};
use crate::rational::Rational;

use super::RelationSet;

/// Root product coordinate: the left factor lives on the labels in
/// `left_mask` (bit `i` for label `i + 1`), the right one on the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct SplitKey {
    left_mask: u32,
    left: u32,
    right: u32,
}

#[derive(Debug)]
pub struct ArityQuotient {
    arity: usize,
    columns: Vec<SplitKey>,
    col_of: HashMap<SplitKey, usize>,
    /// Normal monomials with labels `1..=arity`.
    normal: Vec<MagmaTree>,
    /// Normal form of each column in normal-monomial coordinates.
    nf: Vec<Vec<(u32, Rational)>>,
    relations_rank: usize,
}

impl ArityQuotient {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal_monomials(&self) -> &[MagmaTree] {
        &self.normal
    }

    /// Number of root-product coordinates before dividing out root relations.
    pub fn coordinates(&self) -> usize {
        self.columns.len()
    }

    pub fn relations_rank(&self) -> usize {
        self.relations_rank
    }
}

/// Quotients `P(1), ..., P(n)` of the free magmatic operad by a relation set.
#[derive(Debug)]
pub struct QuotientTower {
    levels: Vec<ArityQuotient>,
    root_relations: Vec<(usize, Vec<MLPoly>)>,
}

fn bits(mask: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Positions of the bits of `sub` inside `sup`, packed into a mask of
/// width `popcount(sup)`.
fn compress(sub: u32, sup: u32) -> u32 {
    let mut out = 0;
    for (k, b) in bits(sup).enumerate() {
        if sub & (1 << b) != 0 {
            out |= 1 << k;
        }
    }
    out
}

/// Relabels a tree on labels `1..=k` onto the labels of `mask`, in order.
fn spread(t: &MagmaTree, mask: u32) -> MagmaTree {
    let labels: Vec<u32> = bits(mask).map(|b| b + 1).collect();
    t.relabel(&|i| labels[(i - 1) as usize])
}

/// Ordered set partitions of `full` into `k` nonempty blocks with
/// increasing minima.
fn block_partitions(full: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, k: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            if rest == 0 {
                out.push(acc.clone());
            }
            return;
        }
        if rest == 0 {
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        // Every subset of `others` joined with the lowest remaining label.
        let mut sub = others;
        loop {
            let block = low | sub;
            acc.push(block);
            go(rest & !block, k - 1, acc, out);
            acc.pop();
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    go(full, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl QuotientTower {
    pub fn new(rels: &RelationSet) -> Result<Self> {
        if rels.relations.iter().any(|r| !(2..=3).contains(&r.arity())) {
            return Err(Error::Unsupported("relations must have arity 2 or 3".into()));
        }
        let mut root_relations = Vec::new();
        for k in 2..=3 {
            let span = rels.orbit_span(k)?;
            if span.dim() > 0 {
                let idx = crate::magma::enumerate_monomials(k)?;
                let basis = span
                    .basis()
                    .iter()
                    .map(|r| MLPoly::from_row(r, &idx))
                    .collect::<Result<Vec<_>>>()?;
                root_relations.push((k, basis));
            }
        }
        let leaf = ArityQuotient {
            arity: 1,
            columns: Vec::new(),
            col_of: HashMap::new(),
            normal: vec![MagmaTree::leaf(1)],
            nf: Vec::new(),
            relations_rank: 0,
        };
        Ok(QuotientTower { levels: vec![leaf], root_relations })
    }

    pub fn level(&self, n: usize) -> Option<&ArityQuotient> {
        self.levels.get(n.checked_sub(1)?)
    }

    pub fn computed(&self) -> usize {
        self.levels.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(ArityQuotient::dim).collect()
    }

    /// Extends the tower up to arity `n`.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.levels.len() < n {
            let next = self.build(self.levels.len() + 1)?;
            self.levels.push(next);
        }
        Ok(())
    }

    /// Normal form of `X * Y` where `X` is normal monomial `x` on the labels
    /// of `lmask` and `Y` normal monomial `y` on `rmask`. The result is in
    /// normal-monomial coordinates of arity `|lmask| + |rmask|` on the union.
    fn product_nf(&self, lmask: u32, x: u32, rmask: u32, y: u32) -> &[(u32, Rational)] {
        let union = lmask | rmask;
        let level = &self.levels[union.count_ones() as usize - 1];
        let key = SplitKey { left_mask: compress(lmask, union), left: x, right: y };
        &level.nf[level.col_of[&key]]
    }

    /// Evaluates a relation monomial with normal monomials plugged in. Inner
    /// nodes are reduced to normal form; the root is left as a coordinate of
    /// the arity-`n` product space and accumulated into `acc`.
    fn eval_root(
        &self,
        term: &MagmaTree,
        coef: &Rational,
        blocks: &[u32],
        args: &[u32],
        cols: &HashMap<SplitKey, usize>,
        full: u32,
        acc: &mut Accumulator,
    ) {
        let MagmaTree::Node(l, r) = term else {
            unreachable!("relations have arity >= 2")
        };
        let (lmask, lvec) = self.eval_inner(l, blocks, args);
        let (rmask, rvec) = self.eval_inner(r, blocks, args);
        debug_assert_eq!(lmask | rmask, full);
        let left_mask = compress(lmask, full);
        for (x, cx) in &lvec {
            let cx = cx * coef;
            for (y, cy) in &rvec {
                let key = SplitKey { left_mask, left: *x, right: *y };
                acc.add(cols[&key], &cx * cy);
            }
        }
    }

    fn eval_inner(&self, t: &MagmaTree, blocks: &[u32], args: &[u32]) -> (u32, Vec<(u32, Rational)>) {
        match t {
            MagmaTree::Leaf(i) => {
                let k = (*i - 1) as usize;
                (blocks[k], vec![(args[k], Rational::one())])
            }
            MagmaTree::Node(l, r) => {
                let (lmask, lvec) = self.eval_inner(l, blocks, args);
                let (rmask, rvec) = self.eval_inner(r, blocks, args);
                let width = (lmask | rmask).count_ones() as usize;
                let mut acc: Vec<Option<Rational>> = vec![None; self.levels[width - 1].dim()];
                for (x, cx) in &lvec {
                    for (y, cy) in &rvec {
                        let c = cx * cy;
                        for (z, cz) in self.product_nf(lmask, *x, rmask, *y) {
                            let v = &c * cz;
                            match &mut acc[*z as usize] {
                                Some(s) => *s += v,
                                slot => *slot = Some(v),
                            }
                        }
                    }
                }
                let out = acc
                    .into_iter()
                    .enumerate()
                    .filter_map(|(z, v)| v.filter(|v| !v.is_zero()).map(|v| (z as u32, v)))
                    .collect();
                (lmask | rmask, out)
            }
        }
    }

    fn build(&self, n: usize) -> Result<ArityQuotient> {
        if n > 31 {
            return Err(Error::Unsupported(format!("arity {n}")));
        }
        let full: u32 = (1u32 << n) - 1;

        // Product coordinates, sorted by the monomial they stand for.
        let mut keyed: Vec<(MagmaTree, SplitKey)> = Vec::new();
        for left_mask in 1..full {
            let a = left_mask.count_ones() as usize;
            let (lq, rq) = (&self.levels[a - 1], &self.levels[n - a - 1]);
            for (x, xt) in lq.normal.iter().enumerate() {
                let xt = spread(xt, left_mask);
                for (y, yt) in rq.normal.iter().enumerate() {
                    let tree = MagmaTree::node(xt.clone(), spread(yt, full & !left_mask));
                    keyed.push((tree, SplitKey { left_mask, left: x as u32, right: y as u32 }));
                }
            }
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let (trees, columns): (Vec<MagmaTree>, Vec<SplitKey>) = keyed.into_iter().unzip();
        let col_of: HashMap<SplitKey, usize> = columns.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let ncols = columns.len();

        // Root relations r(A_1, ..., A_k).
        let mut tasks: Vec<(&MLPoly, Vec<u32>, Vec<u32>)> = Vec::new();
        for (k, basis) in &self.root_relations {
            if *k > n {
                continue;
            }
            for blocks in block_partitions(full, *k) {
                let dims: Vec<usize> =
                    blocks.iter().map(|b| self.levels[b.count_ones() as usize - 1].dim()).collect();
                if dims.contains(&0) {
                    continue;
                }
                let mut choice = vec![0u32; *k];
                'tuples: loop {
                    for r in basis {
                        tasks.push((r, blocks.clone(), choice.clone()));
                    }
                    let mut i = *k;
                    loop {
                        if i == 0 {
                            break 'tuples;
                        }
                        i -= 1;
                        choice[i] += 1;
                        if (choice[i] as usize) < dims[i] {
                            break;
                        }
                        choice[i] = 0;
                    }
                }
            }
        }

        let rows: Vec<SparseRow> = tasks
            .par_iter()
            .map(|(rel, blocks, args)| {
                let mut acc = Accumulator::new(ncols);
                for (term, coef) in rel.terms() {
                    self.eval_root(term, coef, blocks, args, &col_of, full, &mut acc);
                }
                acc.drain(ncols)
            })
            .collect();
        let span: Subspace = rref(ncols, &rows)?;

        let free = span.free_columns();
        let mut normal_of_col: Vec<Option<u32>> = vec![None; ncols];
        for (i, c) in free.iter().enumerate() {
            normal_of_col[*c] = Some(i as u32);
        }
        let mut nf: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); ncols];
        for (c, slot) in normal_of_col.iter().enumerate() {
            if let Some(i) = slot {
                nf[c] = vec![(*i, Rational::one())];
            }
        }
        for (p, row) in span.pivots().iter().zip(span.basis()) {
            nf[*p] = row
                .entries()
                .iter()
                .skip(1)
                .map(|(c, v)| (normal_of_col[*c].expect("non-pivot"), -v.clone()))
                .collect();
        }
        let normal = free.iter().map(|c| trees[*c].clone()).collect();
        Ok(ArityQuotient { arity: n, columns, col_of, normal, nf, relations_rank: span.dim() })
    }
}

/// Component dimensions `d_1, ..., d_{n_max}`.
pub fn operad_dims(rels: &RelationSet, n_max: usize) -> Result<Vec<usize>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let mut tower = QuotientTower::new(rels)?;
    tower.extend_to(n_max)?;
    Ok(tower.dims())
}

impl RelationSet {
    /// Shorthand for [`operad_dims`].
    pub fn dims(&self, n_max: usize) -> Result<Vec<usize>> {
        operad_dims(self, n_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::{factorial, monomial_count};

    #[test]
    fn compress_and_spread() {
        assert_eq!(compress(0b0101, 0b1101), 0b011);
        assert_eq!(spread(&"(2 1)".parse().unwrap(), 0b1010).to_string(), "(4 2)");
    }

    #[test]
    fn block_partition_counts() {
        // Stirling numbers of the second kind.
        assert_eq!(block_partitions(0b1111, 2).len(), 7);
        assert_eq!(block_partitions(0b11111, 3).len(), 25);
        assert_eq!(block_partitions(0b111, 3), vec![vec![1, 2, 4]]);
        assert!(block_partitions(0b11, 3).is_empty());
    }

    #[test]
    fn free_dims_are_monomial_counts() {
        let dims = operad_dims(&RelationSet::free(), 5).unwrap();
        let expected: Vec<usize> = (1..=5).map(monomial_count).collect();
        assert_eq!(dims, expected);
    }

    #[test]
    fn associative_dims_are_factorials() {
        let dims = operad_dims(&RelationSet::assoc(), 5).unwrap();
        assert_eq!(dims, (1..=5).map(factorial).collect::<Vec<_>>());
    }

    #[test]
    fn lie_and_commutative() {
        assert_eq!(operad_dims(&RelationSet::named("lie").unwrap(), 5).unwrap(), vec![1, 1, 2, 6, 24]);
        assert_eq!(operad_dims(&RelationSet::named("comm-assoc").unwrap(), 5).unwrap(), vec![1; 5]);
    }

    #[test]
    fn weak_leibniz_through_five() {
        assert_eq!(operad_dims(&RelationSet::wlei(), 5).unwrap(), vec![1, 2, 6, 20, 74]);
    }

    #[test]
    fn full_relations_kill_arity_three_and_up() {
        assert_eq!(operad_dims(&RelationSet::full(), 4).unwrap(), vec![1, 2, 0, 0]);
    }

    #[test]
    fn normal_monomials_are_sorted_and_counted() {
        let mut t = QuotientTower::new(&RelationSet::wlei()).unwrap();
        t.extend_to(4).unwrap();
        let l3 = t.level(3).unwrap();
        assert_eq!(l3.dim(), 6);
        assert_eq!(l3.coordinates(), 12);
        assert!(l3.normal_monomials().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(t.level(4).unwrap().dim(), 20);
    }
}
