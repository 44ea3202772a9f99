//! Batch verification suites behind `syang verify`: straightening, module
//! relations, Hopf structure and the two-factor `gl(1|1)` oracle scan.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::codec::{rational_to_json, relation_report_to_json};
use crate::error::Result;
use crate::exactmath::rational::{q, qf, sign};
use crate::exactmath::{Rational, Vector};
use crate::glmn::{cyclic_subquotient, gl_highest_weight_vectors, tensor, vector_rep};
use crate::par::{self, Exec};
use crate::superalgebra::hopf::{check_antipode_laws, check_coassociativity, check_counit_laws};
use crate::superalgebra::{Gen, GradingContext, Rewriter, Word};
use crate::yangian::{
    cyclic_span, evaluation_rep, irreducible_quotient, maximal_space_dim, shifted_tensor, submodule,
    verify_defining_relations_with, YModule,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Counterexample or summary payload.
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

fn word_json(w: &[Gen]) -> Value {
    Value::Array(w.iter().map(|g| json!([g.a, g.b, g.n])).collect())
}

fn random_word(rng: &mut ChaCha8Rng, ctx: &GradingContext, max_len: usize, level_max: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            Gen::new(
                rng.gen_range(1..=ctx.size()),
                rng.gen_range(1..=ctx.size()),
                rng.gen_range(1..=level_max),
            )
        })
        .collect()
}

/// Idempotence on random words of length ≤ 4, the associativity diamond on
/// random triples, and exhaustive closure of the mode relation.
pub fn pbw_suite(ctx: &GradingContext, level_max: usize, seed: u64, samples: usize, exec: Exec) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Word> = (0..samples).map(|_| random_word(&mut rng, ctx, 4, level_max)).collect();
    let triples: Vec<[Word; 3]> = (0..samples)
        .map(|_| std::array::from_fn(|_| random_word(&mut rng, ctx, 2, level_max)))
        .collect();
    let c = *ctx;

    let idem = par::map_init(exec, &words, || Rewriter::new(c), |rw, w| {
        let e = rw.normal_word(w);
        (e.all_ordered(&c) && rw.renormalize(&e) == e).then_some(()).ok_or_else(|| word_json(w))
    });
    let assoc = par::map_init(exec, &triples, || Rewriter::new(c), |rw, [x, y, z]| {
        let (ex, ey, ez) = (rw.normal_word(x), rw.normal_word(y), rw.normal_word(z));
        let xy = rw.multiply(&ex, &ey);
        let yz = rw.multiply(&ey, &ez);
        (rw.multiply(&xy, &ez) == rw.multiply(&ex, &yz))
            .then_some(())
            .ok_or_else(|| json!([word_json(x), word_json(y), word_json(z)]))
    });
    let gens: Vec<Gen> = ctx
        .pairs()
        .flat_map(|(a, b)| (1..=level_max).map(move |n| Gen::new(a, b, n)))
        .collect();
    let closure = par::map_init(exec, &gens, || Rewriter::new(c), |rw, &x| {
        for &y in &gens {
            let xy = rw.normal_word(&[x, y]);
            let yx = rw.normal_word(&[y, x]);
            let lhs = xy.sub(&yx.scaled(&sign(x.parity(&c) * y.parity(&c))));
            if lhs != rw.commutator_rhs(x, y) {
                return Err(json!({"x": word_json(&[x]), "y": word_json(&[y])}));
            }
        }
        Ok(())
    });

    let summarize = |name: &str, results: Vec<std::result::Result<(), Value>>| {
        let total = results.len();
        let first = results.into_iter().find_map(|r| r.err());
        Check {
            name: name.to_string(),
            passed: first.is_none(),
            detail: json!({"cases": total, "counterexample": first}),
        }
    };
    SuiteReport {
        suite: "pbw".into(),
        checks: vec![
            summarize("straighten-idempotent", idem),
            summarize("associativity-diamond", assoc),
            summarize("relation-closure", closure),
        ],
    }
}

fn module_check(name: String, w: &YModule, level_max: usize, exec: Exec) -> Check {
    let rep = verify_defining_relations_with(w, level_max, exec);
    Check {
        name,
        passed: rep.passed(),
        detail: json!({"dim": w.dim(), "report": relation_report_to_json(&rep)}),
    }
}

/// The vector evaluation module and every `V ⊗ V` highest-weight subquotient.
pub fn standard_modules(ctx: &GradingContext) -> Result<Vec<(String, YModule)>> {
    let v = vector_rep(ctx);
    let mut out = vec![("evaluation(V)".to_string(), evaluation_rep(&v))];
    let vv = tensor(&v, &v)?;
    for (weight, hv) in gl_highest_weight_vectors(&vv) {
        let sub = cyclic_subquotient(&vv, &hv)?;
        let label: Vec<String> = weight.iter().map(|x| x.to_string()).collect();
        out.push((format!("evaluation(V⊗V at [{}])", label.join(",")), evaluation_rep(&sub)));
    }
    Ok(out)
}

pub fn relations_suite(ctx: &GradingContext, level_max: usize, exec: Exec) -> Result<SuiteReport> {
    let checks = standard_modules(ctx)?
        .into_iter()
        .map(|(name, w)| module_check(name, &w, level_max, exec))
        .collect();
    Ok(SuiteReport {
        suite: "relations".into(),
        checks,
    })
}

/// Relation check of a single supplied module.
pub fn module_relations_suite(w: &YModule, level_max: usize, exec: Exec) -> SuiteReport {
    SuiteReport {
        suite: "relations".into(),
        checks: vec![module_check("input-module".into(), w, level_max, exec)],
    }
}

fn random_shift(rng: &mut ChaCha8Rng) -> Rational {
    qf(rng.gen_range(-40..=40), rng.gen_range(1..=7))
}

/// Coassociativity (three factors, to `u^{-3}`), counit laws and the
/// antipode laws (to `u^{-2}`) for every generator series.
pub fn hopf_suite(ctx: &GradingContext, seed: u64, exec: Exec) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a2, a3, a) = (random_shift(&mut rng), random_shift(&mut rng), random_shift(&mut rng));
    let pairs: Vec<(usize, usize)> = ctx.pairs().collect();
    let coassoc = par::map(exec, &pairs, |&(x, y)| check_coassociativity(ctx, x, y, 3, &a2, &a3));
    let counit = par::map(exec, &pairs, |&(x, y)| check_counit_laws(ctx, x, y, 3, &a));
    let mut checks = Vec::new();
    for (name, results) in [("coassociativity", coassoc), ("counit", counit)] {
        let mut first = None;
        for ((x, y), r) in pairs.iter().zip(results) {
            if let Some(w) = r? {
                first.get_or_insert(json!({"a": x, "b": y, "witness": w}));
            }
        }
        checks.push(Check {
            name: name.into(),
            passed: first.is_none(),
            detail: json!({"shifts": [rational_to_json(&a2), rational_to_json(&a3)], "counterexample": first}),
        });
    }
    let anti = check_antipode_laws(ctx, 2)?;
    checks.push(Check {
        name: "antipode".into(),
        passed: anti.is_none(),
        detail: json!({"order": 2, "counterexample": anti}),
    });
    Ok(SuiteReport {
        suite: "hopf".into(),
        checks,
    })
}

/// Shifts `p/q` with `p, q ∈ [−4, 4]`, `q ≠ 0`, deduplicated and sorted.
pub fn small_shifts() -> Vec<Rational> {
    let set: BTreeSet<Rational> = (-4..=4)
        .flat_map(|p| (-4..=4).filter(|&d| d != 0).map(move |d| qf(p, d)))
        .collect();
    set.into_iter().collect()
}

/// Outcome of the two-factor `gl(1|1)` scan at one shift.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanPoint {
    pub alpha: Rational,
    pub span_dim: usize,
    pub quotient_dim: usize,
    pub maximal_dim: usize,
    pub quotient_relations: bool,
}

fn top_vector(dim: usize) -> Vector {
    let mut v = vec![q(0); dim];
    v[0] = q(1);
    v
}

/// `V(0) ⊗ V(α)` for the `gl(1|1)` vector evaluation module.
pub fn two_factor(alpha: &Rational) -> Result<YModule> {
    let ctx = GradingContext::new(1, 1)?;
    let v = evaluation_rep(&vector_rep(&ctx));
    shifted_tensor(&[v.clone(), v], &[q(0), alpha.clone()])
}

pub fn scan_point(alpha: &Rational, level_max: usize) -> Result<ScanPoint> {
    let w = two_factor(alpha)?;
    let qr = irreducible_quotient(&w, &top_vector(w.dim()))?;
    let ok = verify_defining_relations_with(&qr.module, level_max, Exec::Sequential).passed();
    Ok(ScanPoint {
        alpha: alpha.clone(),
        span_dim: qr.span_dim,
        quotient_dim: qr.module.dim(),
        maximal_dim: qr.maximal_dim,
        quotient_relations: ok,
    })
}

/// Maximal-vector count of the cyclic submodule generated by the top vector.
pub fn cyclic_maximal_dim(alpha: &Rational) -> Result<usize> {
    let w = two_factor(alpha)?;
    let span = cyclic_span(&w, &top_vector(w.dim()))?;
    maximal_space_dim(&submodule(&w, &span)?)
}

/// Degeneracy scan over [`small_shifts`] plus the one-dimensional
/// maximal-vector certificate at seeded generic shifts.
pub fn oracle_suite(seed: u64, exec: Exec) -> Result<SuiteReport> {
    let shifts = small_shifts();
    let points = par::map(exec, &shifts, |a| scan_point(a, 4)).into_iter().collect::<Result<Vec<_>>>()?;
    let degenerate: Vec<&ScanPoint> = points.iter().filter(|p| p.quotient_dim < 4).collect();
    let consistent = degenerate
        .iter()
        .all(|p| p.quotient_dim + p.maximal_dim == p.span_dim && p.quotient_relations);
    let bad: BTreeSet<Rational> = degenerate.iter().map(|p| p.alpha.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut generic = Vec::new();
    while generic.len() < 10 {
        let a = qf(rng.gen_range(-97..=97), rng.gen_range(5..=13));
        if !bad.contains(&a) && !generic.contains(&a) {
            generic.push(a);
        }
    }
    let certs = par::map(exec, &generic, |a| -> Result<(usize, usize)> {
        Ok((cyclic_maximal_dim(a)?, scan_point(a, 2)?.quotient_dim))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let cert_fail = generic
        .iter()
        .zip(&certs)
        .find(|(_, &(m, d))| m != 1 || d != 4)
        .map(|(a, &(m, d))| json!({"alpha": rational_to_json(a), "maximal_dim": m, "quotient_dim": d}));
    Ok(SuiteReport {
        suite: "oracle".into(),
        checks: vec![
            Check {
                name: "degeneracy-scan".into(),
                passed: !degenerate.is_empty() && consistent,
                detail: json!({
                    "scanned": shifts.len(),
                    "degenerate": degenerate.iter().map(|p| json!({
                        "alpha": rational_to_json(&p.alpha),
                        "span_dim": p.span_dim,
                        "quotient_dim": p.quotient_dim,
                        "maximal_dim": p.maximal_dim,
                        "quotient_relations": p.quotient_relations,
                    })).collect::<Vec<_>>(),
                }),
            },
            Check {
                name: "generic-maximal-vectors".into(),
                passed: cert_fail.is_none(),
                detail: json!({"alphas": generic.iter().map(rational_to_json).collect::<Vec<_>>(), "counterexample": cert_fail}),
            },
        ],
    })
}
