//! Command bodies. Each is a pure function of its manifest, so a cached
//! record can stand in for a recomputation.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use syang_core::codec::{
    element_from_json, element_to_json, factors_to_json, gl_module_from_json, highest_weight_from_json,
    highest_weight_to_json, induced_to_json, rational_from_json, rational_to_json, verdict_to_json,
    ymodule_from_json, ymodule_to_json,
};
use syang_core::exactmath::{Rational, Vector};
use syang_core::glmn::{build_irrep, tensor_word, vector_rep, IrrepSpec};
use syang_core::par::Exec;
use syang_core::suites::{hopf_suite, module_relations_suite, oracle_suite, pbw_suite, relations_suite};
use syang_core::superalgebra::{straighten, GradingContext};
use syang_core::weights::{check_finite_dim, factor_into_fundamentals, FdVerdict, HighestWeight};
use syang_core::yangian::{
    evaluation_rep, induced_module_truncated, irreducible_quotient, maximal_vectors, shifted_tensor, AuxData,
    YModule,
};

use crate::cache::JobManifest;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: Value,
    pub exit_code: i32,
}

fn pass(output: Value) -> Outcome {
    Outcome {
        output,
        exit_code: EXIT_PASS,
    }
}

fn context(m: &JobManifest, default: (usize, usize)) -> Result<GradingContext> {
    let (a, b) = m.ctx.unwrap_or(default);
    Ok(GradingContext::new(a, b)?)
}

fn input<'a>(m: &'a JobManifest, key: &str) -> Option<&'a Value> {
    m.inputs.get(key).filter(|v| !v.is_null())
}

fn rationals(m: &JobManifest, key: &str) -> Result<Option<Vec<Rational>>> {
    input(m, key)
        .map(|v| {
            v.as_array()
                .ok_or_else(|| anyhow!("{key} must be a list"))?
                .iter()
                .map(|x| Ok(rational_from_json(x)?))
                .collect()
        })
        .transpose()
}

fn usize_input(m: &JobManifest, key: &str, default: usize) -> usize {
    input(m, key).and_then(Value::as_u64).map_or(default, |x| x as usize)
}

fn same_ctx(m: &JobManifest, found: &GradingContext) -> Result<()> {
    if let Some((a, b)) = m.ctx {
        if (a, b) != (found.m(), found.n()) {
            bail!(syang_core::Error::ContextMismatch(format!(
                "--ctx {a},{b} but the input is over gl({}|{})",
                found.m(),
                found.n()
            )));
        }
    }
    Ok(())
}

fn module_input(m: &JobManifest, key: &str) -> Result<Option<YModule>> {
    input(m, key)
        .map(|v| {
            let w = ymodule_from_json(v).with_context(|| format!("reading {key}"))?;
            same_ctx(m, w.ctx())?;
            Ok(w)
        })
        .transpose()
}

fn top_vector(dim: usize) -> Vector {
    let mut v = vec![Rational::from_integer(0.into()); dim];
    v[0] = Rational::from_integer(1.into());
    v
}

pub fn run(m: &JobManifest) -> Result<Outcome> {
    match m.command.as_str() {
        "straighten" => {
            let (ctx, raw) = element_from_json(input(m, "element").ok_or_else(|| anyhow!("missing element"))?)?;
            same_ctx(m, &ctx)?;
            Ok(pass(element_to_json(&ctx, &straighten(&ctx, &raw))))
        }
        "eval-rep" => {
            let gamma = match input(m, "gl") {
                Some(v) => {
                    let g = gl_module_from_json(v)?;
                    same_ctx(m, g.ctx())?;
                    g
                }
                None => {
                    let ctx = context(m, (1, 1))?;
                    let spec = IrrepSpec {
                        copies: usize_input(m, "copies", 1),
                        twist: input(m, "twist").map(rational_from_json).transpose()?.unwrap_or_default(),
                    };
                    match rationals(m, "weight")? {
                        Some(mu) => build_irrep(&ctx, &spec, &mu)?,
                        None if spec == IrrepSpec { copies: 1, twist: Rational::default() } => vector_rep(&ctx),
                        None => tensor_word(&ctx, &spec)?,
                    }
                }
            };
            Ok(pass(ymodule_to_json(&evaluation_rep(&gamma))))
        }
        "tensor" => {
            let alphas = rationals(m, "alphas")?.ok_or_else(|| anyhow!("tensor needs --alphas"))?;
            let factors = factor_modules(m, alphas.len())?;
            Ok(pass(ymodule_to_json(&shifted_tensor(&factors, &alphas)?)))
        }
        "irrep" => {
            let w = match module_input(m, "module")? {
                Some(w) => w,
                None => {
                    let alphas = rationals(m, "alphas")?.unwrap_or_else(|| vec![Rational::default()]);
                    let factors = factor_modules(m, alphas.len())?;
                    shifted_tensor(&factors, &alphas)?
                }
            };
            let hv = maximal_vectors(&w)?
                .into_iter()
                .next()
                .map(|v| v.vector)
                .unwrap_or_else(|| top_vector(w.dim()));
            let qr = irreducible_quotient(&w, &hv)?;
            Ok(pass(ymodule_to_json(&qr.module)))
        }
        "hw" => {
            let w = module_input(m, "module")?.ok_or_else(|| anyhow!("missing module"))?;
            let mv = maximal_vectors(&w)?;
            let list: Vec<Value> = mv
                .iter()
                .map(|v| {
                    json!({
                        "vector": v.vector.iter().map(rational_to_json).collect::<Vec<_>>(),
                        "weight": highest_weight_to_json(&v.weight),
                    })
                })
                .collect();
            Ok(pass(json!({"count": mv.len(), "maximal_vectors": list})))
        }
        "check-fd" => {
            let l = weight_input(m)?.ok_or_else(|| anyhow!("missing weight"))?;
            let verdict = check_finite_dim(&l);
            let factorization = match verdict.data() {
                Some(d) => {
                    let (f, fs) = factor_into_fundamentals(&l, d)?;
                    factors_to_json(&f, &fs)
                }
                None => Value::Null,
            };
            let exit_code = if matches!(verdict, FdVerdict::Unsupported { .. }) { EXIT_UNSUPPORTED } else { EXIT_PASS };
            Ok(Outcome {
                output: json!({"verdict": verdict_to_json(&verdict), "factorization": factorization}),
                exit_code,
            })
        }
        "induced" => {
            let ctx = context(m, (1, 1))?;
            let l = match weight_input(m)? {
                Some(l) => l,
                None => HighestWeight::evaluation(&ctx, &vector_rep(&ctx).weights()[0])?,
            };
            let cutoff = usize_input(m, "cutoff", 3);
            let ind = induced_module_truncated(&AuxData::scalar(&l)?, cutoff)?;
            Ok(pass(induced_to_json(&ind)))
        }
        "verify" => verify(m),
        other => bail!("unknown command {other}"),
    }
}

fn weight_input(m: &JobManifest) -> Result<Option<HighestWeight>> {
    input(m, "weight")
        .map(|v| {
            let l = highest_weight_from_json(v)?;
            same_ctx(m, l.ctx())?;
            Ok(l)
        })
        .transpose()
}

/// Module files from the inputs, or copies of the vector evaluation module.
fn factor_modules(m: &JobManifest, count: usize) -> Result<Vec<YModule>> {
    match input(m, "modules").and_then(Value::as_array) {
        Some(list) if !list.is_empty() => {
            let ws = list
                .iter()
                .map(|v| {
                    let w = ymodule_from_json(v)?;
                    same_ctx(m, w.ctx())?;
                    Ok(w)
                })
                .collect::<Result<Vec<_>>>()?;
            if ws.len() != count {
                bail!(syang_core::Error::InvalidAlphas(format!("{} modules but {count} shifts", ws.len())));
            }
            Ok(ws)
        }
        _ => {
            let ctx = context(m, (1, 1))?;
            Ok(vec![evaluation_rep(&vector_rep(&ctx)); count])
        }
    }
}

fn verify(m: &JobManifest) -> Result<Outcome> {
    let suite = input(m, "suite").and_then(Value::as_str).unwrap_or_default();
    let exec = Exec::default();
    let report = match suite {
        "pbw" => pbw_suite(
            &context(m, (1, 1))?,
            usize_input(m, "level_max", 3),
            m.seed,
            usize_input(m, "samples", 500),
            exec,
        ),
        "relations" => match module_input(m, "module")? {
            Some(w) => module_relations_suite(&w, usize_input(m, "level_max", 4), exec),
            None => relations_suite(&context(m, (1, 1))?, usize_input(m, "level_max", 4), exec)?,
        },
        "hopf" => hopf_suite(&context(m, (1, 1))?, m.seed, exec)?,
        "oracle" => {
            if context(m, (1, 1))? != GradingContext::new(1, 1)? {
                bail!("the oracle suite is defined for gl(1|1) only");
            }
            oracle_suite(m.seed, exec)?
        }
        other => bail!("unknown suite \"{other}\" (expected pbw, relations, hopf or oracle)"),
    };
    Ok(Outcome {
        exit_code: if report.passed() { EXIT_PASS } else { EXIT_FAILURE },
        output: report.to_json(),
    })
}
