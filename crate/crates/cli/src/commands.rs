use std::fmt::Write as _;
use std::path::Path;

use operadlab::identities::{equiv3, implies3};
use operadlab::linalg::subspace_equal;
use operadlab::models::{
    check_axioms, check_identities, commutator_algebra, depolarize, depolarize_half, polarize, AxiomSet, Verdict,
};
use operadlab::operad::closure::dims_by_closure;
use operadlab::operad::{koszul_dual, koszulity_residual, normal_form, RelationSet, DEFAULT_MAX_ARITY, HARD_MAX_ARITY};
use operadlab::{Error, MLPoly, Result};
use serde_json::{json, Value};

use crate::params::{self, Model, ModelKind};
use crate::report;

/// Text for standard output plus the JSON fields of the report.
pub struct Outcome {
    pub text: String,
    pub inputs: Value,
    pub results: Value,
    /// False when a mathematical check failed.
    pub ok: bool,
}

/// A relation-set name, a comma list of builtin identities, or a file in the
/// relation text format.
pub fn load_relations(arg: &str) -> Result<RelationSet> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        return RelationSet::parse_text(&text);
    }
    RelationSet::named(arg)
}

fn names(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Tower,
    Closure,
}

pub fn dims(relations: &str, max_arity: usize, allow_6: bool, method: Method) -> Result<Outcome> {
    if max_arity == 0 {
        return Err(Error::Unsupported("--max-arity must be at least 1".into()));
    }
    if max_arity > HARD_MAX_ARITY {
        return Err(Error::Unsupported(format!("arity {max_arity} exceeds the supported maximum {HARD_MAX_ARITY}")));
    }
    if max_arity > DEFAULT_MAX_ARITY && !allow_6 {
        return Err(Error::Unsupported(format!("arity {max_arity} needs --allow-arity-6")));
    }
    let rels = load_relations(relations)?;
    let dims = match method {
        Method::Tower => rels.dims(max_arity)?,
        Method::Closure => dims_by_closure(&rels, max_arity)?,
    };
    let mut text = format!("relations: {}\n", rels.name);
    for (n, d) in dims.iter().enumerate() {
        writeln!(text, "d_{} = {d}", n + 1).unwrap();
    }
    writeln!(text, "dims: {dims:?}").unwrap();
    Ok(Outcome {
        text,
        inputs: json!({ "relations": relations, "max_arity": max_arity, "method": format!("{method:?}").to_lowercase() }),
        results: json!({ "name": rels.name, "dims": dims }),
        ok: true,
    })
}

pub fn dual(relations: &str) -> Result<Outcome> {
    let rels = load_relations(relations)?;
    let d = koszul_dual(&rels)?;
    let span = rels.orbit_span(3)?;
    let dual_span = d.orbit_span(3)?;
    let self_dual = subspace_equal(&span, &dual_span)?;
    let mut text = format!("relations: {} (span dimension {})\n", rels.name, span.dim());
    writeln!(text, "dual: {} (span dimension {})", d.name, dual_span.dim()).unwrap();
    for r in &d.relations {
        writeln!(text, "  {} = 0", r.to_letters()).unwrap();
    }
    writeln!(text, "self-dual: {self_dual}").unwrap();
    Ok(Outcome {
        text,
        inputs: json!({ "relations": relations }),
        results: json!({
            "span_dim": span.dim(),
            "dual_dim": dual_span.dim(),
            "dual_relations": d.relations.iter().map(MLPoly::to_string).collect::<Vec<_>>(),
            "self_dual": self_dual,
        }),
        ok: true,
    })
}

pub fn koszul_test(relations: &str, degree: usize, allow_6: bool) -> Result<Outcome> {
    if degree > HARD_MAX_ARITY || (degree > DEFAULT_MAX_ARITY && !allow_6) {
        return Err(Error::Unsupported(format!("degree {degree} is above the arity limit")));
    }
    let rels = load_relations(relations)?;
    let r = koszulity_residual(&rels, degree)?;
    let mut text = String::new();
    writeln!(text, "dims:       {:?}", r.dims).unwrap();
    writeln!(text, "dual dims:  {:?}", r.dual_dims).unwrap();
    writeln!(text, "f(x)      = {}", r.f).unwrap();
    writeln!(text, "f!(x)     = {}", r.f_dual).unwrap();
    writeln!(text, "f(f!(x))  = {}", r.composition).unwrap();
    writeln!(text, "residual  = {}", r.residual).unwrap();
    let verdict = if r.passes() { "holds" } else { "fails: not Koszul" };
    writeln!(text, "necessary condition through degree {degree}: {verdict}").unwrap();
    Ok(Outcome {
        text,
        inputs: json!({ "relations": relations, "degree": degree }),
        results: json!({
            "dims": r.dims,
            "dual_dims": r.dual_dims,
            "f": report::series(&r.f),
            "f_dual": report::series(&r.f_dual),
            "composition": report::series(&r.composition),
            "residual": report::series(&r.residual),
            "necessary_condition_holds": r.passes(),
        }),
        ok: r.passes(),
    })
}

pub fn implies(from: &str, to: &str) -> Result<Outcome> {
    let imp = implies3(&names(from), to)?;
    let text = match &imp.certificate {
        Some(c) => format!("{{{from}}} => {to}\n{c}\n"),
        None => format!("{{{from}}} does not imply {to}\n"),
    };
    Ok(Outcome {
        text,
        inputs: json!({ "from": names(from), "to": to }),
        results: json!({ "holds": imp.holds, "certificate": imp.certificate.as_ref().map(report::certificate) }),
        ok: imp.holds,
    })
}

pub fn equiv(left: &str, right: &str) -> Result<Outcome> {
    let eq = equiv3(&names(left), &names(right))?;
    let word = if eq { "<=>" } else { "<=/=>" };
    Ok(Outcome {
        text: format!("{{{left}}} {word} {{{right}}}\n"),
        inputs: json!({ "left": names(left), "right": names(right) }),
        results: json!({ "equivalent": eq }),
        ok: eq,
    })
}

pub fn normal_form_cmd(relations: &str) -> Result<Outcome> {
    let rels = load_relations(relations)?;
    let nf = normal_form(&rels)?;
    let basis: Vec<String> = nf.basis().iter().map(|b| b.to_letters()).collect();
    let mut text = format!("basis: {{{}}}\n", basis.join(", "));
    let mut table = serde_json::Map::new();
    for (m, p) in nf.table() {
        writeln!(text, "{} = {}", m.to_letters(), p.to_letters()).unwrap();
        table.insert(m.to_letters(), Value::String(p.to_letters()));
    }
    Ok(Outcome {
        text,
        inputs: json!({ "relations": relations }),
        results: json!({ "basis": basis, "reductions": table }),
        ok: true,
    })
}

pub struct ModelCheck<'a> {
    pub model: ModelKind,
    pub params: &'a str,
    pub identity: Option<&'a str>,
    pub axioms: Option<&'a str>,
    pub window: i64,
    pub commutator: bool,
    pub half: bool,
}

pub fn model_check(args: &ModelCheck<'_>) -> Result<Outcome> {
    if args.window < 1 {
        return Err(Error::Unsupported("--window must be at least 1".into()));
    }
    let model = params::build(args.model, args.params)?;
    let (target, verdict): (String, Verdict) = match (args.identity, args.axioms) {
        (Some(id), None) => {
            let rels = load_relations(id)?;
            let alg = match &model {
                Model::Single(a) if args.commutator => commutator_algebra(a),
                Model::Single(a) => a.clone(),
                Model::Pair(b) if args.half => depolarize_half(b),
                Model::Pair(b) => depolarize(b),
            };
            let ids: Vec<(String, MLPoly)> = rels.relations.iter().map(|p| (p.to_string(), p.clone())).collect();
            (format!("identity {}", rels.name), check_identities(&alg, &ids, args.window))
        }
        (None, Some(set)) => {
            let set: AxiomSet = set.parse()?;
            let bi = match &model {
                Model::Single(a) => polarize(a),
                Model::Pair(b) => b.clone(),
            };
            (format!("axioms {set}"), check_axioms(&bi, set, args.window))
        }
        _ => return Err(Error::Unsupported("give exactly one of --identity or --axioms".into())),
    };
    let text = format!("{target} on window [-{w}, {w}]: {verdict}\n", w = args.window);
    Ok(Outcome {
        text,
        inputs: json!({
            "model": clap::ValueEnum::to_possible_value(&args.model).map(|v| v.get_name().to_string()),
            "params": args.params,
            "identity": args.identity,
            "axioms": args.axioms,
            "window": args.window,
            "commutator": args.commutator,
            "half": args.half,
        }),
        results: report::verdict(&verdict),
        ok: verdict.passed,
    })
}
