//! Model names and `key=value` parameter strings.

use std::collections::BTreeMap;

use operadlab::models::{
    make_aS, make_derivation_algebra, make_witt_np, localize, BiAlgebra, SpanAlgebra, SpanElement,
};
use operadlab::{parse_rational, Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelKind {
    #[value(name = "aS")]
    AS,
    Derivation,
    WittNp,
    Localized,
}

pub enum Model {
    Single(SpanAlgebra),
    Pair(BiAlgebra),
}

/// Splits `"S=1,-2 eps=1/2,3"` into keys and raw values.
fn split(params: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in params.split_whitespace() {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, found `{item}`")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::Parse(format!("duplicate parameter `{k}`")));
        }
    }
    Ok(out)
}

fn list<T>(raw: Option<&String>, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    match raw {
        None => Ok(Vec::new()),
        Some(s) if s.is_empty() => Ok(Vec::new()),
        Some(s) => s.split(',').map(|x| f(x.trim())).collect(),
    }
}

fn index(s: &str) -> Result<i64> {
    s.parse().map_err(|_| Error::Parse(format!("bad basis index `{s}`")))
}

/// `2` is `e_2`; `3/2:1,-1:0` is `3/2 e_1 - e_0`.
fn span_element(raw: Option<&String>, key: &str) -> Result<SpanElement> {
    let raw = raw.ok_or_else(|| Error::Parse(format!("missing parameter `{key}`")))?;
    let terms = list(Some(raw), |t| match t.split_once(':') {
        Some((c, i)) => Ok((index(i)?, parse_rational(c)?)),
        None => Ok((index(t)?, Rational::from_integer(1.into()))),
    })?;
    Ok(SpanElement::from_terms(terms))
}

fn reject_unknown(map: &BTreeMap<String, String>, allowed: &[&str]) -> Result<()> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::Parse(format!("unknown parameter `{k}`"))),
        None => Ok(()),
    }
}

pub fn build(kind: ModelKind, params: &str) -> Result<Model> {
    let map = split(params)?;
    match kind {
        ModelKind::AS => {
            reject_unknown(&map, &["S", "eps"])?;
            let shifts = list(map.get("S"), index)?;
            let eps = list(map.get("eps"), parse_rational)?;
            Ok(Model::Single(make_aS(&shifts, &eps)?))
        }
        ModelKind::Derivation => {
            reject_unknown(&map, &["u", "v"])?;
            let u = span_element(map.get("u"), "u")?;
            let v = span_element(map.get("v"), "v")?;
            Ok(Model::Single(make_derivation_algebra(&u, &v)))
        }
        ModelKind::WittNp => {
            reject_unknown(&map, &[])?;
            Ok(Model::Pair(make_witt_np()))
        }
        ModelKind::Localized => {
            reject_unknown(&map, &["u", "v"])?;
            let u = span_element(map.get("u"), "u")?;
            let v = span_element(map.get("v"), "v")?;
            Ok(Model::Pair(localize(&make_witt_np(), &u, &v)))
        }
    }
}
