//! Named degree-3 identities and implication certificates between them.
//!
//! A set of identities `F` implies `g` in degree 3 exactly when `g` lies in
//! the span of all relabelings of the members of `F`. When it does, the
//! explicit combination is returned as a [`Certificate`] and re-expanded
//! before it is handed out.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{express, rref, Subspace};
use crate::magma::{enumerate_monomials, permutations, MLPoly, MagmaTree};
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    Lwlei,
    Rwlei,
    Lieadm,
    Assadm,
    Alder,
    Lalia,
    Ralia,
    Lleib,
    Rleib,
    Assoc,
    Jacobi,
    Anticomm,
    Comm,
    Pder,
}

impl Builtin {
    pub const ALL: [Builtin; 14] = [
        Builtin::Lwlei,
        Builtin::Rwlei,
        Builtin::Lieadm,
        Builtin::Assadm,
        Builtin::Alder,
        Builtin::Lalia,
        Builtin::Ralia,
        Builtin::Lleib,
        Builtin::Rleib,
        Builtin::Assoc,
        Builtin::Jacobi,
        Builtin::Anticomm,
        Builtin::Comm,
        Builtin::Pder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Lwlei => "lwlei",
            Builtin::Rwlei => "rwlei",
            Builtin::Lieadm => "lieadm",
            Builtin::Assadm => "assadm",
            Builtin::Alder => "alder",
            Builtin::Lalia => "lalia",
            Builtin::Ralia => "ralia",
            Builtin::Lleib => "lleib",
            Builtin::Rleib => "rleib",
            Builtin::Assoc => "assoc",
            Builtin::Jacobi => "jacobi",
            Builtin::Anticomm => "anticomm",
            Builtin::Comm => "comm",
            Builtin::Pder => "pder",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::Anticomm | Builtin::Comm => 2,
            _ => 3,
        }
    }

    pub fn poly(self) -> MLPoly {
        let (a, b, c) = (var(1), var(2), var(3));
        let expr = match self {
            // [t1,t2]t3 - 2 t1(t2t3) + 2 t2(t1t3)
            Builtin::Lwlei => br(&a, &b)
                .mul(&c)
                .sub(&a.mul(&b.mul(&c)).scale(2))
                .add(&b.mul(&a.mul(&c)).scale(2)),
            // t1[t2,t3] - 2(t1t2)t3 + 2(t1t3)t2
            Builtin::Rwlei => a
                .mul(&br(&b, &c))
                .sub(&a.mul(&b).mul(&c).scale(2))
                .add(&a.mul(&c).mul(&b).scale(2)),
            Builtin::Lieadm => br(&br(&a, &b), &c).add(&br(&br(&b, &c), &a)).add(&br(&br(&c, &a), &b)),
            Builtin::Assadm => acomm(&a, &acomm(&b, &c)).sub(&acomm(&acomm(&a, &b), &c)),
            Builtin::Alder => acomm(&br(&a, &b), &c)
                .scale(2)
                .sub(&br(&a, &acomm(&b, &c)))
                .sub(&br(&acomm(&a, &c), &b)),
            Builtin::Lalia => br(&a, &b).mul(&c).add(&br(&b, &c).mul(&a)).add(&br(&c, &a).mul(&b)),
            Builtin::Ralia => a.mul(&br(&b, &c)).add(&b.mul(&br(&c, &a))).add(&c.mul(&br(&a, &b))),
            // (ab)c = a(bc) - b(ac)
            Builtin::Lleib => a.mul(&b).mul(&c).sub(&a.mul(&b.mul(&c))).add(&b.mul(&a.mul(&c))),
            // a(bc) = (ab)c - (ac)b
            Builtin::Rleib => a.mul(&b.mul(&c)).sub(&a.mul(&b).mul(&c)).add(&a.mul(&c).mul(&b)),
            Builtin::Assoc => a.mul(&b).mul(&c).sub(&a.mul(&b.mul(&c))),
            Builtin::Jacobi => a.mul(&b).mul(&c).add(&b.mul(&c).mul(&a)).add(&c.mul(&a).mul(&b)),
            Builtin::Anticomm => acomm(&a, &b),
            Builtin::Comm => br(&a, &b),
            // [t1,{t2,t3}] - {[t1,t2],t3} - {t2,[t1,t3]}
            Builtin::Pder => br(&a, &acomm(&b, &c))
                .sub(&acomm(&br(&a, &b), &c))
                .sub(&acomm(&b, &br(&a, &c))),
        };
        MLPoly::from_terms(self.arity(), expr.0).expect("builtin polynomials are multilinear")
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s.trim())
            .ok_or_else(|| Error::UnknownPolynomial(s.trim().to_string()))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn builtin(name: &str) -> Result<MLPoly> {
    Ok(name.parse::<Builtin>()?.poly())
}

// Scratch polynomials over partial variable sets, used only to spell out
// the builtin definitions.
#[derive(Clone)]
struct Expr(Vec<(MagmaTree, Rational)>);

fn var(i: u32) -> Expr {
    Expr(vec![(MagmaTree::leaf(i), Rational::one())])
}

impl Expr {
    fn mul(&self, other: &Expr) -> Expr {
        let mut out = Vec::new();
        for (s, a) in &self.0 {
            for (t, b) in &other.0 {
                out.push((MagmaTree::node(s.clone(), t.clone()), a * b));
            }
        }
        Expr(out)
    }

    fn add(&self, other: &Expr) -> Expr {
        Expr(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    fn scale(&self, k: i64) -> Expr {
        Expr(self.0.iter().map(|(t, c)| (t.clone(), c * int(k))).collect())
    }

    fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.scale(-1))
    }
}

fn br(a: &Expr, b: &Expr) -> Expr {
    a.mul(b).sub(&b.mul(a))
}

fn acomm(a: &Expr, b: &Expr) -> Expr {
    a.mul(b).add(&b.mul(a))
}

/// `coeff * generator(t_{perm[0]}, t_{perm[1]}, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm {
    pub coeff: Rational,
    pub generator: Builtin,
    pub perm: Vec<u32>,
}

impl CertTerm {
    pub fn new(coeff: Rational, generator: Builtin, perm: &[u32]) -> Self {
        CertTerm { coeff, generator, perm: perm.to_vec() }
    }
}

/// Expands `sum coeff * generator(perm)`.
pub fn expand_combination(arity: usize, terms: &[CertTerm]) -> Result<MLPoly> {
    let mut out = MLPoly::zero(arity);
    for t in terms {
        let p = t.generator.poly().apply_permutation(&t.perm)?;
        out = out.add_scaled(&t.coeff, &p)?;
    }
    Ok(out)
}

/// Evidence that `target(perm)` is a combination of relabeled generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: Builtin,
    pub target_perm: Vec<u32>,
    pub combination: Vec<CertTerm>,
}

impl Certificate {
    /// True iff the combination expands exactly to the target.
    pub fn verify(&self) -> Result<bool> {
        let lhs = self.target.poly().apply_permutation(&self.target_perm)?;
        let rhs = expand_combination(lhs.arity(), &self.combination)?;
        Ok(lhs == rhs)
    }
}

fn fmt_args(perm: &[u32]) -> String {
    let args: Vec<String> = perm.iter().map(|i| format!("t_{i}")).collect();
    args.join(",")
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}) =", self.target, fmt_args(&self.target_perm))?;
        if self.combination.is_empty() {
            return write!(f, " 0");
        }
        for (i, t) in self.combination.iter().enumerate() {
            let neg = t.coeff < Rational::zero();
            let abs = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            let sign = match (i, neg) {
                (0, true) => " -",
                (0, false) => "",
                (_, true) => " -",
                (_, false) => " +",
            };
            let k = if abs.is_one() { String::new() } else { format!("{} ", format_rational(&abs)) };
            write!(f, "{sign} {k}{}({})", t.generator, fmt_args(&t.perm))?;
        }
        Ok(())
    }
}

/// Span of every relabeling of `polys` inside the arity-`n` monomial space.
pub fn orbit_span(polys: &[MLPoly], n: usize) -> Result<Subspace> {
    let idx = enumerate_monomials(n)?;
    let perms = permutations(n);
    let mut rows = Vec::with_capacity(polys.len() * perms.len());
    for p in polys {
        if p.arity() != n {
            return Err(Error::ArityMismatch { expected: n, found: p.arity() });
        }
        for s in &perms {
            rows.push(p.apply_permutation(s)?.to_row(&idx)?);
        }
    }
    rref(idx.len(), &rows)
}

fn parse_names(names: &[&str]) -> Result<Vec<Builtin>> {
    names.iter().map(|n| n.parse()).collect()
}

fn check_degree3(names: &[Builtin]) -> Result<()> {
    match names.iter().find(|b| b.arity() != 3) {
        Some(b) => Err(Error::ArityMismatch { expected: 3, found: b.arity() }),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub holds: bool,
    pub certificate: Option<Certificate>,
}

/// Decides `F => g` in degree 3. Generators are tried name by name, each
/// with its relabelings in lexicographic order; earlier generators are
/// preferred in the certificate.
pub fn implies3(from: &[&str], to: &str) -> Result<Implication> {
    let from = parse_names(from)?;
    let target: Builtin = to.parse()?;
    check_degree3(&from)?;
    check_degree3(&[target])?;

    let idx = enumerate_monomials(3)?;
    let perms = permutations(3);
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for g in &from {
        let p = g.poly();
        for s in &perms {
            rows.push(p.apply_permutation(s)?.to_row(&idx)?);
            labels.push((*g, s.clone()));
        }
    }
    let identity: Vec<u32> = vec![1, 2, 3];
    let target_row = target.poly().to_row(&idx)?;
    let Some(coeffs) = express(&target_row, &rows)? else {
        return Ok(Implication { holds: false, certificate: None });
    };
    let combination = coeffs
        .into_iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, (g, s))| CertTerm { coeff: c, generator: g, perm: s })
        .collect();
    let cert = Certificate { target, target_perm: identity, combination };
    if !cert.verify()? {
        return Err(Error::BadCertificate);
    }
    Ok(Implication { holds: true, certificate: Some(cert) })
}

pub fn span_of_names(names: &[&str]) -> Result<Subspace> {
    let names = parse_names(names)?;
    check_degree3(&names)?;
    let polys: Vec<MLPoly> = names.iter().map(|b| b.poly()).collect();
    orbit_span(&polys, 3)
}

pub fn equiv3(left: &[&str], right: &[&str]) -> Result<bool> {
    let a = span_of_names(left)?;
    let b = span_of_names(right)?;
    Ok(a == b)
}

/// The four-term relation between assadm, lieadm, lwlei and rwlei.
pub fn four_term_combination() -> Vec<CertTerm> {
    vec![
        CertTerm::new(int(1), Builtin::Assadm, &[1, 2, 3]),
        CertTerm::new(int(1), Builtin::Lieadm, &[1, 2, 3]),
        CertTerm::new(int(-1), Builtin::Lwlei, &[3, 1, 2]),
        CertTerm::new(int(1), Builtin::Rwlei, &[2, 3, 1]),
    ]
}

pub fn verify_four_term() -> bool {
    expand_combination(3, &four_term_combination()).map(|p| p.is_zero()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p(s: &str) -> MLPoly {
        s.parse().unwrap()
    }

    #[test]
    fn lwlei_expansion() {
        let expected = p("((1 2) 3) - ((2 1) 3) - 2*(1 (2 3)) + 2*(2 (1 3))");
        assert_eq!(Builtin::Lwlei.poly(), expected);
        assert_eq!(Builtin::Lwlei.poly().len(), 4);
    }

    #[test]
    fn rwlei_expansion() {
        let expected = p("(1 (2 3)) - (1 (3 2)) - 2*((1 2) 3) + 2*((1 3) 2)");
        assert_eq!(Builtin::Rwlei.poly(), expected);
    }

    #[test]
    fn lieadm_is_lalia_minus_ralia() {
        let diff = &Builtin::Lalia.poly() - &Builtin::Ralia.poly();
        assert_eq!(Builtin::Lieadm.poly(), diff);
    }

    #[test]
    fn anticomm_has_two_terms() {
        assert_eq!(Builtin::Anticomm.poly(), p("(1 2) + (2 1)"));
    }

    #[test]
    fn builtins_have_small_integer_coefficients() {
        for b in Builtin::ALL {
            let poly = b.poly();
            assert!(!poly.is_zero(), "{b}");
            for (_, c) in poly.terms() {
                assert!(c.is_integer() && *c <= int(2) && *c >= int(-2), "{b}");
            }
        }
    }

    #[test]
    fn skew_symmetries() {
        let l = Builtin::Lwlei.poly();
        assert_eq!(l.apply_permutation(&[2, 1, 3]).unwrap(), -&l);
        let r = Builtin::Rwlei.poly();
        assert_eq!(r.apply_permutation(&[1, 3, 2]).unwrap(), -&r);
    }

    #[test]
    fn unknown_name() {
        assert!(builtin("nope").is_err());
        assert!(implies3(&["lwlei"], "nope").is_err());
        assert!(implies3(&["comm"], "lwlei").is_err());
    }

    #[test]
    fn orbit_spans() {
        assert_eq!(orbit_span(&[], 3).unwrap().dim(), 0);
        let w = orbit_span(&[Builtin::Lwlei.poly(), Builtin::Rwlei.poly()], 3).unwrap();
        assert_eq!(w.dim(), 6);
        assert!(orbit_span(&[Builtin::Comm.poly()], 3).is_err());
    }

    #[test]
    fn alder_certificate_matches_known_combination() {
        let imp = implies3(&["lwlei", "rwlei"], "alder").unwrap();
        assert!(imp.holds);
        let cert = imp.certificate.unwrap();
        let expected = vec![
            CertTerm::new(int(1), Builtin::Lwlei, &[1, 3, 2]),
            CertTerm::new(int(-1), Builtin::Lwlei, &[2, 3, 1]),
            CertTerm::new(int(-1), Builtin::Rwlei, &[1, 2, 3]),
            CertTerm::new(int(1), Builtin::Rwlei, &[2, 1, 3]),
        ];
        assert_eq!(cert.combination, expected);
        assert_eq!(
            cert.to_string(),
            "alder(t_1,t_2,t_3) = lwlei(t_1,t_3,t_2) - lwlei(t_2,t_3,t_1) - rwlei(t_1,t_2,t_3) + rwlei(t_2,t_1,t_3)"
        );
    }

    #[test]
    fn lieadm_certificate_has_thirds() {
        let cert = implies3(&["lwlei", "rwlei"], "lieadm").unwrap().certificate.unwrap();
        assert_eq!(cert.combination.len(), 6);
        for t in &cert.combination {
            assert!(t.coeff == frac(1, 3) || t.coeff == frac(-1, 3));
        }
    }

    #[test]
    fn pder_not_implied() {
        let imp = implies3(&["lwlei", "rwlei"], "pder").unwrap();
        assert!(!imp.holds);
        assert!(imp.certificate.is_none());
    }

    #[test]
    fn four_term_relation() {
        assert!(verify_four_term());
        let mut unpermuted = four_term_combination();
        unpermuted[2].perm = vec![1, 2, 3];
        assert!(!expand_combination(3, &unpermuted).unwrap().is_zero());
        let scaled: Vec<CertTerm> = four_term_combination()
            .into_iter()
            .map(|mut t| {
                t.coeff *= int(5);
                t
            })
            .collect();
        assert!(expand_combination(3, &scaled).unwrap().is_zero());
    }

    #[test]
    fn equivalences() {
        assert!(equiv3(&["lwlei", "rwlei"], &["lwlei", "alder"]).unwrap());
        assert!(equiv3(&["lwlei", "rwlei"], &["rwlei", "alder"]).unwrap());
        assert!(equiv3(&["lwlei", "rwlei"], &["lieadm", "assadm", "alder"]).unwrap());
        assert!(!equiv3(&["lwlei"], &["rwlei"]).unwrap());
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let mut cert = implies3(&["lwlei", "rwlei"], "alder").unwrap().certificate.unwrap();
        cert.combination[0].coeff = int(2);
        assert!(!cert.verify().unwrap());
    }
}
