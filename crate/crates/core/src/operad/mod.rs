//! Operads presented by multilinear relations.
//!
//! * [`closure`] builds the arity-`n` part of the T-ideal generated by a
//!   relation set inside the full monomial space.
//! * [`tower`] computes component dimensions arity by arity on quotient
//!   coordinates, which keeps arity 6 cheap.
//! * [`rewrite`] gives degree-3 normal forms, [`koszul`] the Koszul dual and
//!   [`series`] the generating-series test.

pub mod closure;
pub mod koszul;
pub mod rewrite;
pub mod series;
pub mod tower;

use std::fmt;

use crate::error::{Error, Result};
use crate::identities::{orbit_span, Builtin};
use crate::linalg::Subspace;
use crate::magma::{enumerate_monomials, MLPoly};

pub use closure::consequence_space;
pub use koszul::{jacobiator, jacobiator_coefficients, koszul_dual, TensorPoly};
pub use rewrite::{normal_form, Rewriter, NORMAL_BASIS};
pub use series::{compose_series, gen_series, koszulity_residual, KoszulityReport, PowerSeries};
pub use tower::{operad_dims, QuotientTower};

/// Largest arity computed without an explicit opt-in.
pub const DEFAULT_MAX_ARITY: usize = 5;
/// Largest arity supported at all.
pub const HARD_MAX_ARITY: usize = 6;

#[derive(Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub name: String,
    pub relations: Vec<MLPoly>,
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelationSet")
            .field("name", &self.name)
            .field("relations", &self.relations.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

/// Named relation sets understood by [`RelationSet::named`].
pub const NAMED_SETS: [(&str, &str); 7] = [
    ("wlei", "weak Leibniz: lwlei, rwlei"),
    ("assoc", "associative"),
    ("free", "no relations (free magmatic)"),
    ("full", "every degree-3 monomial"),
    ("leibniz", "two-sided Leibniz: lleib, rleib"),
    ("lie", "anticomm, jacobi"),
    ("comm-assoc", "comm, assoc"),
];

impl RelationSet {
    pub fn new(name: impl Into<String>, relations: Vec<MLPoly>) -> Result<Self> {
        for r in &relations {
            if !(2..=3).contains(&r.arity()) {
                return Err(Error::Unsupported(format!(
                    "relations must have arity 2 or 3, found {}",
                    r.arity()
                )));
            }
        }
        Ok(RelationSet { name: name.into(), relations })
    }

    pub fn free() -> Self {
        RelationSet { name: "free".into(), relations: Vec::new() }
    }

    pub fn from_builtins(name: &str, names: &[Builtin]) -> Self {
        RelationSet { name: name.into(), relations: names.iter().map(|b| b.poly()).collect() }
    }

    pub fn wlei() -> Self {
        Self::from_builtins("wlei", &[Builtin::Lwlei, Builtin::Rwlei])
    }

    pub fn assoc() -> Self {
        Self::from_builtins("assoc", &[Builtin::Assoc])
    }

    /// Every degree-3 monomial is a relation.
    pub fn full() -> Self {
        let idx = enumerate_monomials(3).expect("arity 3");
        let relations = idx
            .monomials()
            .iter()
            .map(|m| MLPoly::monomial(m.clone()).expect("multilinear"))
            .collect();
        RelationSet { name: "full".into(), relations }
    }

    /// Resolves a set name or a comma-separated list of builtin polynomials.
    pub fn named(arg: &str) -> Result<Self> {
        let arg = arg.trim();
        Ok(match arg {
            "wlei" => Self::wlei(),
            "assoc" => Self::assoc(),
            "free" | "empty" => Self::free(),
            "full" => Self::full(),
            "leibniz" => Self::from_builtins("leibniz", &[Builtin::Lleib, Builtin::Rleib]),
            "lie" => Self::from_builtins("lie", &[Builtin::Anticomm, Builtin::Jacobi]),
            "comm-assoc" => Self::from_builtins("comm-assoc", &[Builtin::Comm, Builtin::Assoc]),
            _ => {
                let names: Result<Vec<Builtin>> = arg.split(',').map(|s| s.parse()).collect();
                match names {
                    Ok(names) => Self::from_builtins(arg, &names),
                    Err(_) => return Err(Error::UnknownRelationSet(arg.to_string())),
                }
            }
        })
    }

    /// Reads the text format: comment lines start with `#`, the first other
    /// line is `name: <name>`, every following nonblank line is one
    /// polynomial in the tree grammar.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty relation file".into()))?;
        let name = header
            .strip_prefix("name:")
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .ok_or_else(|| Error::Parse(format!("expected `name: <name>` header, found `{header}`")))?;
        let relations = lines.map(|l| MLPoly::parse(l, None)).collect::<Result<Vec<_>>>()?;
        Self::new(name, relations)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("name: {}\n", self.name);
        for r in &self.relations {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    pub fn of_arity(&self, k: usize) -> Vec<MLPoly> {
        self.relations.iter().filter(|r| r.arity() == k).cloned().collect()
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(MLPoly::arity).max().unwrap_or(0)
    }

    /// Span of all relabelings of the arity-`k` relations.
    pub fn orbit_span(&self, k: usize) -> Result<Subspace> {
        orbit_span(&self.of_arity(k), k)
    }

    pub fn is_binary_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.arity() == 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_sets_resolve() {
        for (name, _) in NAMED_SETS {
            RelationSet::named(name).unwrap();
        }
        assert_eq!(RelationSet::named("lwlei,rwlei").unwrap().relations, RelationSet::wlei().relations);
        assert!(RelationSet::named("bogus").is_err());
        assert_eq!(RelationSet::full().relations.len(), 12);
    }

    #[test]
    fn text_roundtrip() {
        let w = RelationSet::wlei();
        let back = RelationSet::parse_text(&w.to_text()).unwrap();
        assert_eq!(back, w);
        let with_comments = "# weak Leibniz\n\nname: w\n((1 2) 3) - ((2 1) 3) - 2*(1 (2 3)) + 2*(2 (1 3))\n";
        let parsed = RelationSet::parse_text(with_comments).unwrap();
        assert_eq!(parsed.name, "w");
        assert_eq!(parsed.relations, vec![Builtin::Lwlei.poly()]);
        assert!(RelationSet::parse_text("((1 2) 3)\n").is_err());
        assert!(RelationSet::parse_text("name: x\n(((1 2) 3) 4)\n").is_err());
    }
}
