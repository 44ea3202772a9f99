//! Canonical JSON encodings. Objects are `serde_json::Map`s, which keep
//! keys sorted, so equal values serialize to identical bytes.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactmath::rational::{parse, to_canonical};
use crate::exactmath::{Polynomial, RatFun, Rational, SparseMatrix};
use crate::glmn::GlModule;
use crate::superalgebra::element::{expand_factors, group_factors, Factor};
use crate::superalgebra::{AlgebraElement, GradingContext, RawElement};
use crate::weights::{DrinfeldData, FdVerdict, FundamentalFactor, HighestWeight};
use crate::yangian::{InducedModule, Provenance, RelationReport, YModule};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field \"{key}\"")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| perr(format!("{what} must be a non-negative integer")))
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(to_canonical(x))
}

/// Accepts `"p/q"`, `"p"` or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| perr(format!("{n} is not an integer; write rationals as \"p/q\""))),
        _ => Err(perr("rational must be a string \"p/q\" or an integer")),
    }
}

pub fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    as_array(v, "rational list")?.iter().map(rational_from_json).collect()
}

pub fn rationals_to_json(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational_to_json).collect())
}

/// `{"var": var, "coeffs": [c_0, c_1, ...]}`, ascending powers.
pub fn poly_to_json(p: &Polynomial, var: &str) -> Value {
    json!({"var": var, "coeffs": rationals_to_json(p.coeffs())})
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial> {
    Ok(Polynomial::new(rationals_from_json(field(v, "coeffs")?)?))
}

pub fn ratfun_to_json(f: &RatFun, var: &str) -> Value {
    json!({"num": poly_to_json(f.num(), var), "den": poly_to_json(f.den(), var)})
}

pub fn ratfun_from_json(v: &Value) -> Result<RatFun> {
    RatFun::normalize(poly_from_json(field(v, "num")?)?, poly_from_json(field(v, "den")?)?)
}

pub fn ctx_to_json(ctx: &GradingContext) -> Value {
    json!({"M": ctx.m(), "N": ctx.n()})
}

pub fn ctx_from_json(v: &Value) -> Result<GradingContext> {
    GradingContext::new(as_usize(field(v, "M")?, "M")?, as_usize(field(v, "N")?, "N")?)
}

fn factor_to_json(f: &Factor) -> Value {
    json!({"a": f.a, "b": f.b, "n": f.n, "k": f.k})
}

fn factor_from_json(ctx: &GradingContext, v: &Value) -> Result<Factor> {
    let f = Factor {
        a: as_usize(field(v, "a")?, "a")?,
        b: as_usize(field(v, "b")?, "b")?,
        n: as_usize(field(v, "n")?, "n")?,
        k: v.get("k").map_or(Ok(1), |k| as_usize(k, "k"))?,
    };
    ctx.check_index(f.a)?;
    ctx.check_index(f.b)?;
    if f.n == 0 {
        return Err(Error::InvalidLevel("generator levels start at 1".into()));
    }
    Ok(f)
}

pub fn element_to_json(ctx: &GradingContext, e: &AlgebraElement) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(w, c)| {
            let mono: Vec<Value> = group_factors(w).iter().map(factor_to_json).collect();
            json!({"coeff": rational_to_json(c), "monomial": mono})
        })
        .collect();
    json!({"ctx": ctx_to_json(ctx), "terms": terms})
}

/// Parses an element whose monomials need not be ordered.
pub fn element_from_json(v: &Value) -> Result<(GradingContext, RawElement)> {
    let ctx = ctx_from_json(field(v, "ctx")?)?;
    let mut raw = Vec::new();
    for t in as_array(field(v, "terms")?, "terms")? {
        let c = rational_from_json(field(t, "coeff")?)?;
        let factors = as_array(field(t, "monomial")?, "monomial")?
            .iter()
            .map(|f| factor_from_json(&ctx, f))
            .collect::<Result<Vec<_>>>()?;
        raw.push((c, expand_factors(&factors)));
    }
    Ok((ctx, raw))
}

fn sparse_to_json<T: crate::exactmath::sparse::Entry>(m: &SparseMatrix<T>, entry: impl Fn(&T) -> Value) -> Value {
    Value::Array(m.iter().map(|(&(i, j), x)| json!([i, j, entry(x)])).collect())
}

fn sparse_from_json<T: crate::exactmath::sparse::Entry>(
    v: &Value,
    dim: usize,
    entry: impl Fn(&Value) -> Result<T>,
) -> Result<SparseMatrix<T>> {
    let mut m = SparseMatrix::new(dim, dim);
    for e in as_array(v, "sparse matrix")? {
        let e = as_array(e, "sparse entry")?;
        if e.len() != 3 {
            return Err(perr("sparse entries are [row, col, value]"));
        }
        let (i, j) = (as_usize(&e[0], "row")?, as_usize(&e[1], "col")?);
        if i >= dim || j >= dim {
            return Err(Error::IndexOutOfRange(format!("entry ({i},{j}) in dimension {dim}")));
        }
        m.set(i, j, entry(&e[2])?);
    }
    Ok(m)
}

fn pair_key(a: usize, b: usize) -> String {
    format!("{a},{b}")
}

fn parse_pair_key(k: &str) -> Result<(usize, usize)> {
    let (a, b) = k.split_once(',').ok_or_else(|| perr(format!("action key \"{k}\" is not \"a,b\"")))?;
    let p = |s: &str| s.trim().parse::<usize>().map_err(|_| perr(format!("action key \"{k}\"")));
    Ok((p(a)?, p(b)?))
}

fn parity_from_json(v: &Value) -> Result<Vec<u8>> {
    as_array(v, "parity")?
        .iter()
        .map(|p| match p.as_u64() {
            Some(0) => Ok(0),
            Some(1) => Ok(1),
            _ => Err(perr("parity bits must be 0 or 1")),
        })
        .collect()
}

fn weights_to_json(ws: &[Vec<Rational>]) -> Value {
    Value::Array(ws.iter().map(|w| rationals_to_json(w)).collect())
}

pub fn gl_module_to_json(g: &GlModule) -> Value {
    let action: Map<String, Value> = g
        .actions()
        .filter(|(_, m)| !m.is_zero())
        .map(|(&(a, b), m)| (pair_key(a, b), sparse_to_json(m, rational_to_json)))
        .collect();
    json!({
        "ctx": ctx_to_json(g.ctx()),
        "dim": g.dim(),
        "parity": g.parity(),
        "weights": weights_to_json(g.weights()),
        "action": action,
    })
}

pub fn gl_module_from_json(v: &Value) -> Result<GlModule> {
    let ctx = ctx_from_json(field(v, "ctx")?)?;
    let parity = parity_from_json(field(v, "parity")?)?;
    let dim = parity.len();
    let mut action = BTreeMap::new();
    for (k, m) in field(v, "action")?.as_object().ok_or_else(|| perr("action must be an object"))? {
        action.insert(parse_pair_key(k)?, sparse_from_json(m, dim, rational_from_json)?);
    }
    GlModule::from_parts(ctx, parity, action)
}

pub fn provenance_to_json(p: &Provenance) -> Value {
    match p {
        Provenance::Explicit => json!({"kind": "explicit"}),
        Provenance::Evaluation => json!({"kind": "evaluation"}),
        Provenance::Tensor { alphas, factors } => json!({
            "kind": "tensor",
            "alphas": rationals_to_json(alphas),
            "factors": factors.iter().map(provenance_to_json).collect::<Vec<_>>(),
        }),
        Provenance::Submodule { of } => json!({"kind": "submodule", "of": provenance_to_json(of)}),
        Provenance::Quotient {
            of,
            span_dim,
            maximal_dim,
        } => json!({
            "kind": "quotient",
            "of": provenance_to_json(of),
            "span_dim": span_dim,
            "maximal_dim": maximal_dim,
        }),
        Provenance::Induced { cutoff } => json!({"kind": "induced", "cutoff": cutoff, "experimental": true}),
    }
}

pub fn provenance_from_json(v: &Value) -> Result<Provenance> {
    let kind = field(v, "kind")?.as_str().ok_or_else(|| perr("provenance kind must be a string"))?;
    let of = || -> Result<Box<Provenance>> { Ok(Box::new(provenance_from_json(field(v, "of")?)?)) };
    Ok(match kind {
        "explicit" => Provenance::Explicit,
        "evaluation" => Provenance::Evaluation,
        "tensor" => Provenance::Tensor {
            alphas: rationals_from_json(field(v, "alphas")?)?,
            factors: as_array(field(v, "factors")?, "factors")?
                .iter()
                .map(provenance_from_json)
                .collect::<Result<_>>()?,
        },
        "submodule" => Provenance::Submodule { of: of()? },
        "quotient" => Provenance::Quotient {
            of: of()?,
            span_dim: as_usize(field(v, "span_dim")?, "span_dim")?,
            maximal_dim: as_usize(field(v, "maximal_dim")?, "maximal_dim")?,
        },
        "induced" => Provenance::Induced {
            cutoff: as_usize(field(v, "cutoff")?, "cutoff")?,
        },
        other => return Err(perr(format!("unknown provenance kind \"{other}\""))),
    })
}

/// Action entries are rational functions in `u`.
pub fn ymodule_to_json(w: &YModule) -> Value {
    let action: Map<String, Value> = w
        .actions()
        .filter(|(_, m)| !m.is_zero())
        .map(|(&(a, b), m)| (pair_key(a, b), sparse_to_json(m, |f| ratfun_to_json(f, "u"))))
        .collect();
    json!({
        "ctx": ctx_to_json(w.ctx()),
        "dim": w.dim(),
        "parity": w.parity(),
        "weights": w.gl_weights().map_or(Value::Null, |ws| weights_to_json(&ws)),
        "action": action,
        "provenance": provenance_to_json(w.provenance()),
        "alphas": w.alphas().map_or(Value::Null, rationals_to_json),
    })
}

/// Missing diagonal pairs default to the constant `(−1)^{[a]}`, missing
/// off-diagonal pairs to zero; the constant-term invariant is enforced.
pub fn ymodule_from_json(v: &Value) -> Result<YModule> {
    let ctx = ctx_from_json(field(v, "ctx")?)?;
    let parity = parity_from_json(field(v, "parity")?)?;
    let dim = parity.len();
    if let Some(d) = v.get("dim") {
        if as_usize(d, "dim")? != dim {
            return Err(Error::DimensionMismatch(format!("dim field disagrees with {dim} parity bits")));
        }
    }
    let mut action = BTreeMap::new();
    for (k, m) in field(v, "action")?.as_object().ok_or_else(|| perr("action must be an object"))? {
        action.insert(parse_pair_key(k)?, sparse_from_json(m, dim, ratfun_from_json)?);
    }
    let provenance = match v.get("provenance") {
        Some(p) if !p.is_null() => provenance_from_json(p)?,
        _ => Provenance::Explicit,
    };
    YModule::from_parts(ctx, parity, action, provenance)
}

/// Components are rational functions in `x`.
pub fn highest_weight_to_json(l: &HighestWeight) -> Value {
    json!({
        "ctx": ctx_to_json(l.ctx()),
        "components": l.components().iter().map(|f| ratfun_to_json(f, "x")).collect::<Vec<_>>(),
    })
}

pub fn highest_weight_from_json(v: &Value) -> Result<HighestWeight> {
    let ctx = ctx_from_json(field(v, "ctx")?)?;
    let comps = as_array(field(v, "components")?, "components")?
        .iter()
        .map(ratfun_from_json)
        .collect::<Result<Vec<_>>>()?;
    if comps.len() != ctx.size() {
        return Err(Error::DimensionMismatch(format!("{} components for M+N = {}", comps.len(), ctx.size())));
    }
    HighestWeight::new(ctx, comps)
}

pub fn drinfeld_to_json(d: &DrinfeldData) -> Value {
    let p: Map<String, Value> = d.p.iter().map(|(a, q)| (a.to_string(), poly_to_json(q, "x"))).collect();
    json!({
        "P": p,
        "QtildeM": poly_to_json(&d.qtilde_m, "x"),
        "QM": poly_to_json(&d.q_m, "x"),
        "K_M": d.k_m,
        "r1": rationals_to_json(&d.r1),
        "r2": rationals_to_json(&d.r2),
    })
}

pub fn verdict_to_json(v: &FdVerdict) -> Value {
    match v {
        FdVerdict::FiniteDimensional(d) => json!({"status": v.status(), "witness": Value::Null, "data": drinfeld_to_json(d)}),
        FdVerdict::NotFiniteDimensional { index, reason } | FdVerdict::Unsupported { index, reason } => {
            json!({"status": v.status(), "witness": {"index": index, "reason": reason}, "data": Value::Null})
        }
    }
}

pub fn factors_to_json(f: &RatFun, factors: &[FundamentalFactor]) -> Value {
    json!({
        "twist": ratfun_to_json(f, "x"),
        "factors": factors
            .iter()
            .map(|x| json!({"t": x.t, "i": x.i, "weight": highest_weight_to_json(&x.weight)}))
            .collect::<Vec<_>>(),
    })
}

pub fn relation_report_to_json(r: &RelationReport) -> Value {
    json!({
        "passed": r.passed(),
        "checked": r.checked,
        "counterexample": r.counterexample.as_ref().map_or(Value::Null, |c| json!({
            "a1": c.a1, "b1": c.b1, "m": c.m, "a2": c.a2, "b2": c.b2, "n": c.n, "detail": c.detail,
        })),
    })
}

pub fn induced_to_json(ind: &InducedModule) -> Value {
    let words: Vec<Value> = ind
        .words
        .iter()
        .map(|w| Value::Array(group_factors(w).iter().map(factor_to_json).collect()))
        .collect();
    json!({
        "experimental": true,
        "cutoff": ind.cutoff,
        "lowering_words": words,
        "truncated_dim": ind.truncated_dim,
        "quotient_dim": ind.quotient_dim,
        "previous_dim": ind.previous_dim,
        "stabilized": ind.stabilized,
        "status": if ind.stabilized { "stabilized" } else { "not-stabilized" },
        "issue": ind.issue,
        "highest_weight": ind.highest_weight.as_ref().map_or(Value::Null, highest_weight_to_json),
        "module": ind.module.as_ref().map_or(Value::Null, ymodule_to_json),
    })
}

/// Pretty, key-sorted text with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
