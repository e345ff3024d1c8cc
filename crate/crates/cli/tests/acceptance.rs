//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Arithmetic is exact throughout, so every comparison is equality.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use operadlab::identities::{
    equiv3, expand_combination, implies3, span_of_names, verify_four_term, Builtin, CertTerm, Certificate,
};
use operadlab::linalg::{member, subspace_equal};
use operadlab::magma::enumerate_monomials;
use operadlab::models::{
    check_axioms, check_identities, check_identity, commutator_algebra, depolarize, depolarize_half, localize_at,
    make_aS, make_derivation_algebra, make_witt_np, polarize, AxiomSet, SpanElement,
};
use operadlab::operad::closure::dims_by_closure;
use operadlab::operad::{koszul_dual, normal_form, RelationSet};
use operadlab::rational::{frac, int};
use operadlab::{parse_rational, MLPoly, MagmaTree, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_operadlab");
const WINDOW: i64 = 4;

type Outcome = Result<String, String>;

fn operadlab(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("OPERADLAB_THREADS", t),
        None => cmd.env_remove("OPERADLAB_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, budget: Duration, what: &str) -> Result<(), String> {
    ensure(t.elapsed() < budget, format!("{what} took {:?}, budget {budget:?}", t.elapsed()))
}

fn json_file(tag: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("operadlab-acceptance-{}-{tag}.json", std::process::id()))
}

fn read_json(path: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("report written")).expect("valid json")
}

/// Parses the printed letter notation, e.g. `c(ab)+1/2(ac)b-1/2(ca)b`,
/// with `a, b, c` as variables 1, 2, 3.
fn letters(s: &str) -> MLPoly {
    fn tree(chars: &[char], pos: &mut usize) -> MagmaTree {
        let atom = |chars: &[char], pos: &mut usize| -> MagmaTree {
            let c = chars[*pos];
            *pos += 1;
            if c == '(' {
                let l = tree(chars, pos);
                assert_eq!(chars[*pos], ')');
                *pos += 1;
                l
            } else {
                MagmaTree::leaf(c as u32 - 'a' as u32 + 1)
            }
        };
        let left = atom(chars, pos);
        if *pos < chars.len() && (chars[*pos] == '(' || chars[*pos].is_ascii_lowercase()) {
            let right = atom(chars, pos);
            MagmaTree::node(left, right)
        } else {
            left
        }
    }
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let mut terms = Vec::new();
    while pos < chars.len() {
        let mut sign = 1;
        if chars[pos] == '+' || chars[pos] == '-' {
            sign = if chars[pos] == '-' { -1 } else { 1 };
            pos += 1;
        }
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
            pos += 1;
        }
        let coeff: Rational = if pos > start {
            parse_rational(&chars[start..pos].iter().collect::<String>()).unwrap()
        } else {
            int(1)
        };
        terms.push((tree(&chars, &mut pos), coeff * int(sign)));
    }
    MLPoly::from_terms(3, terms).unwrap()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let path = json_file("dims5");
    let o = operadlab(&["dims", "--relations", "wlei", "--max-arity", "5", "--json", path.to_str().unwrap()], None);
    within(t, Duration::from_secs(30), "arity 5")?;
    ensure(o.status.code() == Some(0), "dims exited nonzero")?;
    ensure(stdout(&o).contains("dims: [1, 2, 6, 20, 74]"), stdout(&o))?;
    ensure(read_json(&path)["results"]["dims"] == serde_json::json!([1, 2, 6, 20, 74]), "json dims")?;
    // Independent route: closure in the full monomial space.
    ensure(dims_by_closure(&RelationSet::wlei(), 5).unwrap() == [1, 2, 6, 20, 74], "closure route disagrees")?;

    let t6 = Instant::now();
    let o = operadlab(&["dims", "--relations", "wlei", "--max-arity", "6", "--allow-arity-6"], None);
    within(t6, Duration::from_secs(15 * 60), "arity 6")?;
    ensure(stdout(&o).contains("d_6 = 301"), format!("arity 6: {}", stdout(&o)))?;
    Ok(format!("[1, 2, 6, 20, 74, 301]; arity 6 in {:.0?}", t6.elapsed()))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let w = RelationSet::wlei();
    let d = koszul_dual(&w).unwrap();
    let (span, dual) = (w.orbit_span(3).unwrap(), d.orbit_span(3).unwrap());
    ensure(subspace_equal(&span, &dual).unwrap(), "dual span differs")?;
    ensure(dual.dim() == 6 && 12 - span.dim() == 6, format!("dual dimension {}", dual.dim()))?;
    // The printed dual identities are the weak Leibniz ones read in u, v, w.
    let idx = enumerate_monomials(3).unwrap();
    for p in ["a(bc)-a(cb)-2(ab)c+2(ac)b", "(ab)c-(ba)c-2a(bc)+2b(ac)"] {
        ensure(member(&dual, &letters(p).to_row(&idx).unwrap()).unwrap(), p)?;
    }
    within(t, Duration::from_secs(5), "self-duality")?;
    Ok("dual span = wlei span, dim 6".into())
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let path = json_file("koszul");
    let o = operadlab(&["koszul-test", "--relations", "wlei", "--degree", "5", "--json", path.to_str().unwrap()], None);
    ensure(o.status.code() == Some(1), "a nonzero residual must exit 1")?;
    let out = stdout(&o);
    ensure(out.contains("f(x)      = -x + x^2 - x^3 + 5/6 x^4 - 37/60 x^5"), out.clone())?;
    ensure(out.contains("residual  = 7/30 x^5"), out.clone())?;
    let report = read_json(&path);
    let coeffs: Vec<Rational> = report["results"]["residual"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| parse_rational(v.as_str().unwrap()).unwrap())
        .collect();
    ensure(coeffs == [int(0), int(0), int(0), int(0), int(0), frac(7, 30)], "json residual")?;
    // Oracle: compose the printed series by hand.
    let f = [int(0), int(-1), int(1), int(-1), frac(5, 6), frac(-37, 60)];
    let mul = |p: &[Rational], q: &[Rational]| {
        let mut r = vec![int(0); 6];
        for i in 0..6 {
            for j in 0..6 - i {
                r[i + j] += &p[i] * &q[j];
            }
        }
        r
    };
    let mut comp = vec![int(0); 6];
    let mut pow = vec![int(1), int(0), int(0), int(0), int(0), int(0)];
    for c in &f {
        for k in 0..6 {
            comp[k] += c * &pow[k];
        }
        pow = mul(&pow, &f);
    }
    ensure(comp == [int(0), int(1), int(0), int(0), int(0), frac(7, 30)], "hand composition")?;
    Ok(format!("residual 7/30 x^5 ({:.1?})", t.elapsed()))
}

const REDUCTIONS: [(&str, &str); 6] = [
    ("a(cb)", "c(ab)+1/2(ac)b-1/2(ca)b"),
    ("a(bc)", "c(ab)+2(ab)c-3/2(ac)b-1/2(ca)b"),
    ("b(ca)", "c(ab)+3/2(ab)c-3/2(ac)b-3/2(ba)c+2(bc)a-1/2(ca)b"),
    ("b(ac)", "c(ab)+3/2(ab)c-3/2(ac)b+1/2(ba)c-1/2(ca)b"),
    ("c(ba)", "c(ab)+2(ab)c-2(ac)b-2(ba)c+2(bc)a"),
    ("(cb)a", "(ab)c-(ac)b-(ba)c+(bc)a+(ca)b"),
];

fn criterion_4() -> Outcome {
    let nf = normal_form(&RelationSet::wlei()).unwrap();
    let basis: Vec<String> = nf.basis().iter().map(MagmaTree::to_letters).collect();
    ensure(basis == ["c(ab)", "(bc)a", "(ca)b", "(ac)b", "(ba)c", "(ab)c"], format!("basis {basis:?}"))?;
    for (lhs, rhs) in REDUCTIONS {
        let m = letters(lhs).terms().next().unwrap().0.clone();
        ensure(nf.rewrite(&m).unwrap() == letters(rhs), format!("{lhs} = {}", nf.rewrite(&m).unwrap().to_letters()))?;
    }
    Ok("6/6 reductions coefficient-exact".into())
}

fn certificate_from_json(v: &Value) -> Certificate {
    let perm = |p: &Value| p.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect::<Vec<_>>();
    Certificate {
        target: v["target"].as_str().unwrap().parse().unwrap(),
        target_perm: perm(&v["target_perm"]),
        combination: v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| CertTerm {
                coeff: parse_rational(t["coeff"].as_str().unwrap()).unwrap(),
                generator: t["generator"].as_str().unwrap().parse().unwrap(),
                perm: perm(&t["perm"]),
            })
            .collect(),
    }
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let wl = ["lwlei", "rwlei"];
    ensure(verify_four_term(), "four-term combination is not zero")?;
    let four = vec![
        CertTerm::new(int(1), Builtin::Assadm, &[1, 2, 3]),
        CertTerm::new(int(1), Builtin::Lieadm, &[1, 2, 3]),
        CertTerm::new(int(-1), Builtin::Lwlei, &[3, 1, 2]),
        CertTerm::new(int(1), Builtin::Rwlei, &[2, 3, 1]),
    ];
    ensure(expand_combination(3, &four).unwrap().is_zero(), "four-term expansion")?;
    ensure(equiv3(&wl, &["lwlei", "alder"]).unwrap(), "lwlei+alder")?;
    ensure(equiv3(&wl, &["rwlei", "alder"]).unwrap(), "rwlei+alder")?;
    let lie = implies3(&wl, "lieadm").unwrap();
    let cert = lie.certificate.ok_or("no lieadm certificate")?;
    ensure(cert.combination.iter().all(|t| t.coeff == frac(1, 3) || t.coeff == frac(-1, 3)), cert.to_string())?;
    ensure(implies3(&wl, "assadm").unwrap().holds, "assadm")?;
    ensure(equiv3(&wl, &["lieadm", "assadm", "alder"]).unwrap(), "lieadm+assadm+alder")?;

    let path = json_file("implies");
    let o = operadlab(&["implies", "--from", "lwlei,rwlei", "--to", "alder", "--json", path.to_str().unwrap()], None);
    ensure(o.status.code() == Some(0), "implies exited nonzero")?;
    let expected = "alder(t_1,t_2,t_3) = lwlei(t_1,t_3,t_2) - lwlei(t_2,t_3,t_1) - rwlei(t_1,t_2,t_3) + rwlei(t_2,t_1,t_3)";
    ensure(stdout(&o).contains(expected), stdout(&o))?;
    let back = certificate_from_json(&read_json(&path)["results"]["certificate"]);
    ensure(back.combination.len() == 4 && back.verify().unwrap(), "json certificate does not re-verify")?;
    within(t, Duration::from_secs(1), "lemma suite")?;
    Ok(format!("7/7, certificate round-trips ({:.0?})", t.elapsed()))
}

fn criterion_6() -> Outcome {
    let span = span_of_names(&["lwlei", "rwlei"]).unwrap();
    let idx = enumerate_monomials(3).unwrap();
    let inside = |b: Builtin| member(&span, &b.poly().to_row(&idx).unwrap()).unwrap();
    for b in [Builtin::Lalia, Builtin::Ralia, Builtin::Assadm] {
        ensure(inside(b), format!("{b} not implied"))?;
    }
    ensure(!inside(Builtin::Pder), "pder implied")?;
    Ok("lalia, ralia, assadm in span; pder not".into())
}

fn criterion_7() -> Outcome {
    let fact: Vec<usize> = (1..=5).scan(1, |acc, n| {
        *acc *= n;
        Some(*acc)
    }).collect();
    let assoc = RelationSet::assoc().dims(5).unwrap();
    ensure(assoc == fact, format!("assoc {assoc:?}"))?;
    for r in [RelationSet::wlei(), RelationSet::assoc(), RelationSet::free(), RelationSet::full()] {
        let d = koszul_dual(&r).unwrap().orbit_span(3).unwrap().dim();
        ensure(d + r.orbit_span(3).unwrap().dim() == 12, format!("{} dual dimension {d}", r.name))?;
    }
    let w = RelationSet::wlei();
    let dd = koszul_dual(&koszul_dual(&w).unwrap()).unwrap();
    ensure(subspace_equal(&dd.orbit_span(3).unwrap(), &w.orbit_span(3).unwrap()).unwrap(), "double dual")?;
    Ok(format!("assoc {assoc:?}; dual dims complementary; double dual"))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let wlei: Vec<(String, MLPoly)> =
        [Builtin::Lwlei, Builtin::Rwlei].iter().map(|b| (b.name().to_string(), b.poly())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    for _ in 0..5 {
        let len = rng.gen_range(1..=3);
        let shifts: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        let eps: Vec<Rational> = (0..len).map(|_| frac(rng.gen_range(-6..=6), rng.gen_range(1..=5))).collect();
        let a = make_aS(&shifts, &eps).unwrap();
        ensure(check_identities(&a, &wlei, WINDOW).passed, format!("{} wlei", a.name()))?;
        let comm = commutator_algebra(&a);
        ensure(check_identity(&comm, &Builtin::Jacobi.poly(), WINDOW).passed, format!("{} jacobi", a.name()))?;
        // Weak Leibniz exactly when the polarization is transposed Poisson.
        ensure(check_axioms(&polarize(&a), AxiomSet::TransposedPoisson, WINDOW).passed, "coherence")?;
        let back = depolarize(&polarize(&a));
        for i in -WINDOW..=WINDOW {
            for j in -WINDOW..=WINDOW {
                ensure(back.basis_product(i, j) == a.basis_product(i, j), "depolarize o polarize")?;
            }
        }
    }
    let der = make_derivation_algebra(&SpanElement::basis(2), &SpanElement::basis(0));
    ensure(check_identities(&der, &wlei, WINDOW).passed, "derivation wlei")?;
    let lleib = Builtin::Lleib.poly();
    let v = check_identity(&der, &lleib, WINDOW);
    let w = v.witness.ok_or("derivation algebra passed lleib")?;
    // Re-evaluate the witness by hand, outside the sweep.
    let args: Vec<SpanElement> = w.indices.iter().map(|i| SpanElement::basis(*i)).collect();
    let (x, y, z) = (&args[0], &args[1], &args[2]);
    let lhs = der.mul(&der.mul(x, y), z);
    let rhs = der.mul(x, &der.mul(y, z)).minus(&der.mul(y, &der.mul(x, z)));
    ensure(lhs != rhs && w.revalidate_identity(&der, &lleib), "witness does not reproduce")?;
    ensure(!check_axioms(&polarize(&der), AxiomSet::Poisson, WINDOW).passed, "polarized derivation is Poisson")?;

    ensure(check_axioms(&make_witt_np(), AxiomSet::NovikovPoisson, 5).passed, "witt-np")?;
    for u in -2..=2 {
        for v in -2..=2 {
            let l = localize_at(&make_witt_np(), u, v);
            ensure(check_axioms(&l, AxiomSet::TransposedPoisson, WINDOW).passed, format!("localized {u},{v}"))?;
            let full = check_identities(&depolarize(&l), &wlei, WINDOW).passed;
            let half = check_identities(&depolarize_half(&l), &wlei, WINDOW).passed;
            ensure(full && half, format!("localized {u},{v} depolarized"))?;
        }
    }
    within(t, Duration::from_secs(60), "model suite")?;
    Ok(format!("all model checks ({:.1?})", t.elapsed()))
}

fn strip_duration(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("duration_ms");
    v
}

fn criterion_9() -> Outcome {
    let mut texts = Vec::new();
    let mut reports = Vec::new();
    for (i, threads) in [None, Some("1"), Some("4")].into_iter().enumerate() {
        let path = json_file(&format!("repro{i}"));
        let o = operadlab(&["reproduce-paper", "--json", path.to_str().unwrap()], threads);
        ensure(o.status.code() == Some(0), format!("reproduce-paper failed:\n{}", stdout(&o)))?;
        texts.push(o.stdout);
        reports.push(strip_duration(read_json(&path)));
    }
    ensure(texts.windows(2).all(|w| w[0] == w[1]), "stdout differs between runs")?;
    ensure(reports.windows(2).all(|w| w[0] == w[1]), "json differs between runs")?;
    Ok("3 runs (default, 1 and 4 threads) byte-identical".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("dimension table", criterion_1),
        ("self-duality", criterion_2),
        ("non-Koszulity residual", criterion_3),
        ("normal form", criterion_4),
        ("lemma suite", criterion_5),
        ("remark checks", criterion_6),
        ("oracle equivalence", criterion_7),
        ("model suite", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] {} {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
