//! Multilinear T-ideal closure in the full monomial space.
//!
//! The arity-`m+1` component is spanned by `t_new * f`, `f * t_new` and the
//! substitutions `t_i -> (t_i t_new)` applied to a spanning set of the
//! arity-`m` component, closed under all relabelings. Because the arity-`m`
//! component is already closed under `S_m`, relabeling by one representative
//! per coset of `S_m` in `S_{m+1}` suffices: the new variable is sent to each
//! label `y` and the old labels keep their relative order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, Subspace};
use crate::magma::{enumerate_monomials, permutations, MLPoly, Side, SubstPattern};

use super::RelationSet;

/// Relabeling of `1..=m` that sends `m` to `y` and keeps the others in order.
fn coset_rep(m: usize, y: u32) -> Vec<u32> {
    (1..=m as u32)
        .map(|j| if j == m as u32 { y } else if j < y { j } else { j + 1 })
        .collect()
}

fn lift(f: &MLPoly) -> Vec<MLPoly> {
    let m = f.arity();
    let n = m + 1;
    let mut raw = vec![f.mul_new(Side::Left), f.mul_new(Side::Right)];
    for i in 1..=m as u32 {
        raw.push(f.substitute(i, SubstPattern::VarNew).expect("index in range"));
    }
    let mut out = Vec::with_capacity(raw.len() * n);
    for g in &raw {
        for y in 1..=n as u32 {
            out.push(g.apply_permutation(&coset_rep(n, y)).expect("valid permutation"));
        }
    }
    out
}

/// One arity of the closure: the row-reduced span plus a spanning set of
/// sparse generators that were independent when inserted.
struct Level {
    span: Subspace,
    generators: Vec<MLPoly>,
}

fn next_level(prev: Option<&Level>, relations: &[MLPoly], n: usize) -> Result<Level> {
    let idx = enumerate_monomials(n)?;
    let mut candidates: Vec<MLPoly> = match prev {
        Some(level) => level.generators.par_iter().flat_map_iter(lift).collect(),
        None => Vec::new(),
    };
    let perms = permutations(n);
    for r in relations {
        for s in &perms {
            candidates.push(r.apply_permutation(s)?);
        }
    }
    let mut builder = EchelonBuilder::new(idx.len());
    let mut generators = Vec::new();
    for c in candidates {
        if builder.insert(&c.to_row(&idx)?)? {
            generators.push(c);
        }
    }
    Ok(Level { span: builder.finish(), generators })
}

/// Arity-`n` component of the T-ideal generated by `rels`, as a subspace of
/// the `catalan(n-1) * n!` dimensional monomial space.
pub fn consequence_space(rels: &RelationSet, n: usize) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::ZeroArity);
    }
    let mut level: Option<Level> = None;
    for m in 1..=n {
        let rel_m = rels.of_arity(m);
        let cur = next_level(level.as_ref(), &rel_m, m)?;
        level = Some(cur);
    }
    Ok(level.expect("n >= 1").span)
}

/// Dimensions `catalan(n-1) * n! - dim consequence_space(rels, n)` for
/// `n = 1..=n_max`, computed in one pass.
pub fn dims_by_closure(rels: &RelationSet, n_max: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(n_max);
    let mut level: Option<Level> = None;
    for m in 1..=n_max {
        let cur = next_level(level.as_ref(), &rels.of_arity(m), m)?;
        out.push(cur.span.ambient_dim() - cur.span.dim());
        level = Some(cur);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rref;
    use crate::magma::MonomialIndex;

    #[test]
    fn coset_representatives() {
        assert_eq!(coset_rep(3, 3), vec![1, 2, 3]);
        assert_eq!(coset_rep(3, 1), vec![2, 3, 1]);
        assert_eq!(coset_rep(3, 2), vec![1, 3, 2]);
    }

    #[test]
    fn free_has_no_consequences() {
        for n in 1..=4 {
            assert_eq!(consequence_space(&RelationSet::free(), n).unwrap().dim(), 0);
        }
    }

    #[test]
    fn wlei_low_arities() {
        let w = RelationSet::wlei();
        assert_eq!(consequence_space(&w, 3).unwrap().dim(), 6);
        assert_eq!(consequence_space(&w, 4).unwrap().dim(), 100);
        assert_eq!(consequence_space(&w, 2).unwrap().dim(), 0);
    }

    // Closing every generator under the whole symmetric group must give the
    // same span as the coset shortcut.
    #[test]
    fn coset_shortcut_matches_full_closure() {
        let w = RelationSet::wlei();
        let s3 = consequence_space(&w, 3).unwrap();
        let idx3 = MonomialIndex::new(3).unwrap();
        let idx4 = MonomialIndex::new(4).unwrap();
        let mut rows = Vec::new();
        for r in s3.basis() {
            let f = MLPoly::from_row(r, &idx3).unwrap();
            let mut raw = vec![f.mul_new(Side::Left), f.mul_new(Side::Right)];
            for i in 1..=3 {
                raw.push(f.substitute(i, SubstPattern::VarNew).unwrap());
                raw.push(f.substitute(i, SubstPattern::NewVar).unwrap());
            }
            for g in raw {
                for s in permutations(4) {
                    rows.push(g.apply_permutation(&s).unwrap().to_row(&idx4).unwrap());
                }
            }
        }
        let full = rref(idx4.len(), &rows).unwrap();
        assert_eq!(full, consequence_space(&w, 4).unwrap());
    }

    #[test]
    fn dims_in_one_pass() {
        assert_eq!(dims_by_closure(&RelationSet::wlei(), 4).unwrap(), vec![1, 2, 6, 20]);
        assert_eq!(dims_by_closure(&RelationSet::assoc(), 4).unwrap(), vec![1, 2, 6, 24]);
    }
}
