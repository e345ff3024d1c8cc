use operadlab::linalg::member;
use operadlab::magma::{enumerate_monomials, MagmaTree};
use operadlab::operad::{jacobiator_coefficients, koszul_dual, normal_form};
use operadlab::{MLPoly, RelationSet};

// a = 1, b = 2, c = 3.
const REDUCTIONS: [(&str, &str); 6] = [
    ("(1 (3 2))", "(3 (1 2)) + 1/2*((1 3) 2) - 1/2*((3 1) 2)"),
    ("(1 (2 3))", "(3 (1 2)) + 2*((1 2) 3) - 3/2*((1 3) 2) - 1/2*((3 1) 2)"),
    (
        "(2 (3 1))",
        "(3 (1 2)) + 3/2*((1 2) 3) - 3/2*((1 3) 2) - 3/2*((2 1) 3) + 2*((2 3) 1) - 1/2*((3 1) 2)",
    ),
    ("(2 (1 3))", "(3 (1 2)) + 3/2*((1 2) 3) - 3/2*((1 3) 2) + 1/2*((2 1) 3) - 1/2*((3 1) 2)"),
    ("(3 (2 1))", "(3 (1 2)) + 2*((1 2) 3) - 2*((1 3) 2) - 2*((2 1) 3) + 2*((2 3) 1)"),
    ("((3 2) 1)", "((1 2) 3) - ((1 3) 2) - ((2 1) 3) + ((2 3) 1) + ((3 1) 2)"),
];

// U-coefficients of the Jacobiator with u = 1, v = 2, w = 3.
const DUAL_COEFFICIENTS: [&str; 6] = [
    "-(1 (2 3)) + (1 (3 2)) + (2 (1 3)) - (2 (3 1)) - (3 (1 2)) + (3 (2 1))",
    "-2*(2 (3 1)) + 2*(3 (2 1)) + ((2 3) 1) - ((3 2) 1)",
    "(1 (2 3)) - (1 (3 2)) - (2 (1 3)) + (2 (3 1)) + 2*((3 1) 2) - 2*((3 2) 1)",
    "3*(1 (2 3)) + (1 (3 2)) - 3*(2 (1 3)) + 3*(2 (3 1)) - 4*(3 (2 1)) - 2*((1 3) 2) + 2*((3 2) 1)",
    "(2 (1 3)) + 3*(2 (3 1)) - 4*(3 (2 1)) - 2*((2 1) 3) + 2*((3 2) 1)",
    "-4*(1 (2 3)) + 3*(2 (1 3)) - 3*(2 (3 1)) + 4*(3 (2 1)) + 2*((1 2) 3) - 2*((3 2) 1)",
];

#[test]
fn six_reductions_match() {
    let nf = normal_form(&RelationSet::wlei()).unwrap();
    assert_eq!(nf.table().count(), 6);
    for (lhs, rhs) in REDUCTIONS {
        let m: MagmaTree = lhs.parse().unwrap();
        assert_eq!(nf.rewrite(&m).unwrap(), MLPoly::parse(rhs, Some(3)).unwrap(), "{lhs}");
    }
}

#[test]
fn rewriting_is_idempotent_and_sound() {
    let w = RelationSet::wlei();
    let nf = normal_form(&w).unwrap();
    let span = w.orbit_span(3).unwrap();
    let idx = enumerate_monomials(3).unwrap();
    for m in idx.monomials() {
        let r = nf.rewrite(m).unwrap();
        assert_eq!(nf.reduce(&r).unwrap(), r);
        let diff = MLPoly::monomial(m.clone()).unwrap().try_sub(&r).unwrap();
        assert!(member(&span, &diff.to_row(&idx).unwrap()).unwrap());
    }
}

// The printed coefficients have unbalanced parentheses; each one read as
// above must still lie in the dual relation span.
#[test]
fn printed_dual_coefficients_lie_in_the_dual() {
    let dual = koszul_dual(&RelationSet::wlei()).unwrap().orbit_span(3).unwrap();
    let idx = enumerate_monomials(3).unwrap();
    for p in DUAL_COEFFICIENTS {
        let row = MLPoly::parse(p, Some(3)).unwrap().to_row(&idx).unwrap();
        assert!(member(&dual, &row).unwrap(), "{p}");
    }
}

#[test]
fn engine_coefficients_lie_in_the_wlei_span() {
    let w = RelationSet::wlei();
    let span = w.orbit_span(3).unwrap();
    let idx = enumerate_monomials(3).unwrap();
    for (_, p) in jacobiator_coefficients(&normal_form(&w).unwrap()).unwrap() {
        assert!(member(&span, &p.to_row(&idx).unwrap()).unwrap());
    }
}
