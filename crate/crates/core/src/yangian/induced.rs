//! Degree-truncated induced modules over `Y(gl(M|N))`.
//!
//! `V0` is a module over the even subalgebra `Y(gl(M)) ∔ Y(gl(N))`, extended
//! by letting every odd raising generator `t^i_μ[n]` act by zero. The induced
//! space has basis `y ⊗ v` with `y` an ordered product of distinct odd
//! lowering generators `t^μ_i[n]`. Its irreducible quotient is detected by
//! the pairing `(x, y ⊗ v) ↦ V0-part of x·(y ⊗ v)` over odd raising words
//! `x`: the maximal submodule is exactly the kernel of that pairing. Both
//! sides are cut at total level `Σ n ≤ D`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::highest::maximal_vectors;
use super::module::{evaluation_rep, verify_relations_where, Provenance, RatMatrix, YModule};
use crate::error::{Error, Result};
use crate::exactmath::rational::sign;
use crate::exactmath::{DenseMatrix, Polynomial, RatFun, Rational, SparseMatrix, Vector};
use crate::glmn::GlModule;
use crate::par::{self, Exec};
use crate::superalgebra::{AlgebraElement, Block, Gen, GradingContext, PairClass, Rewriter, Word};
use crate::weights::HighestWeight;

/// Levels checked when validating auxiliary data.
const AUX_CHECK_LEVELS: usize = 3;

/// A finite-dimensional `Y(gl(M)) ∔ Y(gl(N))` module in the conventions of
/// the ambient superalgebra: `t^i_j(u) ↦ φ^i_j(u)`, `t^μ_ν(u) ↦ ψ^μ_ν(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxData {
    // odd pairs act by zero
    module: YModule,
}

impl AuxData {
    /// Validates the constant terms, that both blocks commute and that each
    /// block satisfies its own mode relations up to a fixed level.
    pub fn new(ctx: GradingContext, parity: Vec<u8>, action: BTreeMap<(usize, usize), RatMatrix>) -> Result<Self> {
        if let Some((a, b)) = action.keys().find(|(a, b)| ctx.pair_parity(*a, *b) == 1) {
            return Err(Error::Invalid(format!("auxiliary data assigns the odd generator t^{a}_{b}")));
        }
        let module = YModule::from_parts(ctx, parity, action, Provenance::Explicit)?;
        let even = |p: (usize, usize)| ctx.pair_parity(p.0, p.1) == 0;
        let cross = verify_relations_where(&module, AUX_CHECK_LEVELS, Exec::Sequential, |p, q| {
            even(p) && even(q) && ctx.grade(p.0) != ctx.grade(q.0)
        });
        if let Some(ce) = cross.counterexample {
            return Err(Error::NoncommutingAux(format!(
                "t^{}_{}[{}] and t^{}_{}[{}] do not commute on V0",
                ce.a1, ce.b1, ce.m, ce.a2, ce.b2, ce.n
            )));
        }
        let inner = verify_relations_where(&module, AUX_CHECK_LEVELS, Exec::Sequential, |p, q| {
            even(p) && even(q) && ctx.grade(p.0) == ctx.grade(q.0)
        });
        if let Some(ce) = inner.counterexample {
            return Err(Error::Invalid(format!(
                "V0 breaks the relation for t^{}_{}[{}], t^{}_{}[{}]",
                ce.a1, ce.b1, ce.m, ce.a2, ce.b2, ce.n
            )));
        }
        Ok(AuxData { module })
    }

    /// One-dimensional `V0` on which `t^a_a(u)` acts by `λ_a(u)`.
    pub fn scalar(weight: &HighestWeight) -> Result<Self> {
        let ctx = *weight.ctx();
        let action = ctx
            .indices()
            .map(|a| {
                let mut m = SparseMatrix::new(1, 1);
                m.set(0, 0, weight.component(a).clone());
                ((a, a), m)
            })
            .collect();
        AuxData::new(ctx, vec![0], action)
    }

    /// Evaluation data `t^a_b(u) ↦ (−1)^{[b]} δ^a_b + E^a_b u^{-1}` restricted
    /// to the even subalgebra of a `gl(M|N)` module.
    pub fn evaluation(gamma: &GlModule) -> Result<Self> {
        let w = evaluation_rep(gamma);
        let ctx = *w.ctx();
        let action = w
            .actions()
            .filter(|((a, b), _)| ctx.pair_parity(*a, *b) == 0)
            .map(|(k, m)| (*k, m.clone()))
            .collect();
        AuxData::new(ctx, gamma.parity().to_vec(), action)
    }

    pub fn ctx(&self) -> &GradingContext {
        self.module.ctx()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn parity(&self) -> &[u8] {
        self.module.parity()
    }

    /// `t^a_b(u)` on `V0`.
    pub fn action(&self, a: usize, b: usize) -> &RatMatrix {
        self.module.action(a, b)
    }
}

/// Result of [`induced_module_truncated`].
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub cutoff: usize,
    /// Lowering words spanning the truncated space, shortest first.
    pub words: Vec<Word>,
    /// `words.len() · dim V0`.
    pub truncated_dim: usize,
    /// Rank of the truncated pairing.
    pub quotient_dim: usize,
    /// The quotient with reconstructed rational action, when the truncated
    /// action closes up; otherwise `None` and `issue` says why.
    pub module: Option<YModule>,
    pub highest_weight: Option<HighestWeight>,
    pub issue: Option<String>,
    /// Quotient dimension at cutoff `D − 1`.
    pub previous_dim: usize,
    /// Dimension and highest weight agree at `D − 1` and `D`, and both
    /// truncations close up.
    pub stabilized: bool,
}

/// Ordered products of distinct odd generators in `Φ_−^{(1)}` (or `Φ_+^{(1)}`
/// when `raising`), total level at most `d`, sorted by level then key.
pub fn odd_words(ctx: &GradingContext, raising: bool, d: usize) -> Vec<Word> {
    let want = if raising { PairClass::Positive(1) } else { PairClass::Negative(1) };
    let mut gens: Vec<Gen> = ctx
        .pairs()
        .filter(|&(a, b)| ctx.classify(a, b) == want)
        .flat_map(|(a, b)| (1..=d).map(move |n| Gen::new(a, b, n)))
        .collect();
    gens.sort_by_key(|g| g.key(ctx));
    let mut out = Vec::new();
    fn rec(gens: &[Gen], start: usize, left: usize, cur: &mut Word, out: &mut Vec<Word>) {
        out.push(cur.clone());
        for i in start..gens.len() {
            if gens[i].n <= left {
                cur.push(gens[i]);
                rec(gens, i + 1, left - gens[i].n, cur, out);
                cur.pop();
            }
        }
    }
    rec(&gens, 0, d, &mut Vec::new(), &mut out);
    out.sort_by_key(|w| (w.iter().map(|g| g.n).sum::<usize>(), w.iter().map(|g| g.key(ctx)).collect::<Vec<_>>()));
    out
}

/// Element of the induced space: lowering word ↦ vector in `V0`.
type Elem = BTreeMap<Word, Vector>;

/// Per-worker straightening and `V0` mode cache.
struct Engine<'a> {
    aux: &'a AuxData,
    rw: Rewriter,
    modes: HashMap<(usize, usize, usize), DenseMatrix>,
}

impl<'a> Engine<'a> {
    fn new(aux: &'a AuxData) -> Self {
        Engine {
            aux,
            rw: Rewriter::new(*aux.ctx()),
            modes: HashMap::new(),
        }
    }

    fn mode(&mut self, g: Gen) -> &DenseMatrix {
        let aux = self.aux;
        self.modes.entry((g.a, g.b, g.n)).or_insert_with(|| {
            aux.module
                .action_mode(g.a, g.b, g.n)
                .expect("valid mode index")
                .to_dense()
        })
    }

    fn act(&mut self, g: Gen, x: &Elem) -> Elem {
        let ctx = *self.aux.ctx();
        let lhs = AlgebraElement::generator(g);
        let mut out: Elem = BTreeMap::new();
        for (y, v) in x {
            let prod = self.rw.multiply(&lhs, &AlgebraElement::monomial(y.clone(), Rational::one()));
            for (w, c) in prod.terms() {
                let k = w.iter().position(|h| h.key(&ctx).0 != Block::NegativeOdd).unwrap_or(w.len());
                let rest = &w[k..];
                if rest.iter().any(|h| h.key(&ctx).0 == Block::PositiveOdd) {
                    continue;
                }
                let mut vec: Vector = v.iter().map(|e| e * c).collect();
                for h in rest.iter().rev() {
                    vec = self.mode(*h).apply(&vec);
                }
                let slot = out.entry(w[..k].to_vec()).or_insert_with(|| vec![Rational::zero(); v.len()]);
                for (s, e) in slot.iter_mut().zip(vec) {
                    *s += e;
                }
            }
        }
        out.retain(|_, v| v.iter().any(|e| !e.is_zero()));
        out
    }

    /// `V0`-components of `x · e` for every raising word `x`, concatenated.
    fn pairing(&mut self, raising: &[Word], e: &Elem) -> Vector {
        let dim = self.aux.dim();
        let mut out = Vec::with_capacity(raising.len() * dim);
        for x in raising {
            let mut cur = e.clone();
            for g in x.iter().rev() {
                if cur.is_empty() {
                    break;
                }
                cur = self.act(*g, &cur);
            }
            match cur.get(&Vec::new()) {
                Some(v) => out.extend(v.iter().cloned()),
                None => out.extend(std::iter::repeat_n(Rational::zero(), dim)),
            }
        }
        out
    }
}

fn basis_elem(word: &Word, v: usize, dim: usize) -> Elem {
    let mut e = vec![Rational::zero(); dim];
    e[v] = Rational::one();
    BTreeMap::from([(word.clone(), e)])
}

/// Truncated quotient at one cutoff.
struct Level {
    words: Vec<Word>,
    truncated_dim: usize,
    rank: usize,
    module: std::result::Result<YModule, String>,
}

fn build_level(aux: &AuxData, d: usize, levels: Option<usize>, exec: Exec) -> Level {
    let ctx = *aux.ctx();
    let dim0 = aux.dim();
    let words = odd_words(&ctx, false, d);
    let raising = odd_words(&ctx, true, d);
    let basis: Vec<(usize, usize)> = (0..words.len()).flat_map(|w| (0..dim0).map(move |v| (w, v))).collect();
    let cols = par::map_init(exec, &basis, || Engine::new(aux), |eng, &(w, v)| {
        eng.pairing(&raising, &basis_elem(&words[w], v, dim0))
    });
    let pmat = DenseMatrix::from_columns(raising.len() * dim0, &cols);
    let pivots = pmat.clone().rref();
    let rank = pivots.len();
    let truncated_dim = basis.len();
    let module = (|| {
        let level_max = levels.unwrap_or(2 * rank + 1).max(1);
        let kernel = pmat.nullspace();
        let pj = DenseMatrix::from_columns(pmat.rows(), &pivots.iter().map(|&j| cols[j].clone()).collect::<Vec<_>>());
        let gens: Vec<Gen> = ctx
            .pairs()
            .flat_map(|(a, b)| (1..=level_max).map(move |n| Gen::new(a, b, n)))
            .collect();
        let images = par::map_init(exec, &gens, || Engine::new(aux), |eng, g| {
            basis
                .iter()
                .map(|&(w, v)| {
                    let img = eng.act(*g, &basis_elem(&words[w], v, dim0));
                    eng.pairing(&raising, &img)
                })
                .collect::<Vec<Vector>>()
        });
        let mut modes: BTreeMap<(usize, usize), Vec<DenseMatrix>> = BTreeMap::new();
        for (g, img) in gens.iter().zip(&images) {
            let gmat = DenseMatrix::from_columns(pmat.rows(), img);
            if kernel.iter().any(|k| gmat.apply(k).iter().any(|e| !e.is_zero())) {
                return Err(format!("{g} does not preserve the truncated kernel"));
            }
            let mut x = DenseMatrix::zeros(rank, rank);
            for (c, &j) in pivots.iter().enumerate() {
                let sol = pj.solve(&img[j]).ok_or_else(|| format!("{g} leaves the truncated quotient"))?;
                for (r, s) in sol.into_iter().enumerate() {
                    x[(r, c)] = s;
                }
            }
            modes.entry((g.a, g.b)).or_default().push(x);
        }
        let action = reconstruct(&ctx, rank, &modes)?;
        let parity = pivots
            .iter()
            .map(|&j| {
                let (w, v) = basis[j];
                ((words[w].len() as u8) + aux.parity()[v]) % 2
            })
            .collect();
        YModule::from_parts(ctx, parity, action, Provenance::Induced { cutoff: d }).map_err(|e| e.to_string())
    })();
    Level {
        words,
        truncated_dim,
        rank,
        module,
    }
}

/// Rational action from modes `t[1..=L]`: the shortest monic `d(u)` with
/// `Σ_j d_j t[n+j] = 0` for every available `n`, then `T(u) = N(u)/d(u)`.
fn reconstruct(
    ctx: &GradingContext,
    dim: usize,
    modes: &BTreeMap<(usize, usize), Vec<DenseMatrix>>,
) -> std::result::Result<BTreeMap<(usize, usize), RatMatrix>, String> {
    let l = modes.values().next().map_or(0, Vec::len);
    let t = |key: &(usize, usize), n: usize| &modes[key][n - 1];
    for k in 0..=(l.saturating_sub(1) / 2) {
        // unknowns d_0..d_{k-1}; one equation per (pair, n, entry)
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for key in modes.keys() {
            for n in 1..=l - k {
                for i in 0..dim {
                    for j in 0..dim {
                        rows.push((0..k).map(|q| t(key, n + q)[(i, j)].clone()).collect::<Vector>());
                        rhs.push(-t(key, n + k)[(i, j)].clone());
                    }
                }
            }
        }
        let sol = if k == 0 {
            rhs.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            DenseMatrix::from_rows(&rows).solve(&rhs)
        };
        let Some(mut d) = sol else { continue };
        d.push(Rational::one());
        let den = Polynomial::new(d.clone());
        let mut out = BTreeMap::new();
        for key in modes.keys() {
            let mut m = SparseMatrix::new(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    let num: Vec<Rational> = (0..k)
                        .map(|p| (1..=k - p).map(|n| &d[p + n] * &t(key, n)[(i, j)]).sum())
                        .collect();
                    let mut f = RatFun::normalize(Polynomial::new(num), den.clone()).map_err(|e| e.to_string())?;
                    if key.0 == key.1 && i == j {
                        f = &f + &RatFun::constant(sign(ctx.grade(key.1)));
                    }
                    if !f.is_zero() {
                        m.set(i, j, f);
                    }
                }
            }
            out.insert(*key, m);
        }
        return Ok(out);
    }
    Err(format!("no rational recurrence of degree ≤ {} fits levels 1..={l}", l.saturating_sub(1) / 2))
}

/// Builds the truncated induced module at cutoff `d` and at `d − 1`.
pub fn induced_module_truncated(aux: &AuxData, cutoff: usize) -> Result<InducedModule> {
    induced_module_truncated_with(aux, cutoff, None, Exec::default())
}

/// As [`induced_module_truncated`], with an explicit number of mode levels
/// used for the rational reconstruction (default `2·dim + 1`).
pub fn induced_module_truncated_with(aux: &AuxData, cutoff: usize, levels: Option<usize>, exec: Exec) -> Result<InducedModule> {
    if cutoff < 1 {
        return Err(Error::InvalidCutoff(format!("cutoff must be at least 1, got {cutoff}")));
    }
    let prev = build_level(aux, cutoff - 1, levels, exec);
    let cur = build_level(aux, cutoff, levels, exec);
    let weight = |m: &YModule| -> Option<HighestWeight> { maximal_vectors(m).ok()?.into_iter().next().map(|v| v.weight) };
    let (module, issue) = match cur.module {
        Ok(m) => (Some(m), None),
        Err(e) => (None, Some(e)),
    };
    let highest_weight = module.as_ref().and_then(weight);
    let prev_weight = prev.module.as_ref().ok().and_then(weight);
    let stabilized = module.is_some() && highest_weight.is_some() && prev.rank == cur.rank && prev_weight == highest_weight;
    Ok(InducedModule {
        cutoff,
        words: cur.words,
        truncated_dim: cur.truncated_dim,
        quotient_dim: cur.rank,
        module,
        highest_weight,
        issue,
        previous_dim: prev.rank,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{q, qf};
    use crate::glmn::vector_rep;
    use crate::weights::star_product;
    use crate::yangian::module::verify_defining_relations;

    fn ctx(m: usize, n: usize) -> GradingContext {
        GradingContext::new(m, n).unwrap()
    }

    #[test]
    fn lowering_words_at_cutoff_one() {
        let c = ctx(1, 1);
        assert_eq!(odd_words(&c, false, 1), vec![vec![], vec![Gen::new(2, 1, 1)]]);
        let aux = AuxData::scalar(&HighestWeight::evaluation(&c, &[q(2), q(1)]).unwrap()).unwrap();
        let ind = induced_module_truncated(&aux, 1).unwrap();
        assert_eq!(ind.truncated_dim, 2 * aux.dim());
        assert!(induced_module_truncated(&aux, 0).is_err());
    }

    #[test]
    fn trivial_aux_gives_trivial_quotient() {
        let c = ctx(1, 1);
        let aux = AuxData::scalar(&HighestWeight::epsilon(&c)).unwrap();
        let ind = induced_module_truncated(&aux, 3).unwrap();
        assert_eq!(ind.quotient_dim, 1);
        assert!(ind.stabilized);
        assert_eq!(ind.highest_weight, Some(HighestWeight::epsilon(&c)));
    }

    #[test]
    fn evaluation_weight_matches_vector_module() {
        let c = ctx(1, 1);
        let lam = HighestWeight::evaluation(&c, &[q(1), q(0)]).unwrap();
        let ind = induced_module_truncated(&AuxData::scalar(&lam).unwrap(), 2).unwrap();
        assert!(ind.stabilized, "{:?}", ind.issue);
        assert_eq!(ind.quotient_dim, 2);
        assert_eq!(ind.highest_weight.as_ref(), Some(&lam));
        assert!(verify_defining_relations(ind.module.as_ref().unwrap(), 3).passed());
    }

    #[test]
    fn two_factor_weight() {
        let c = ctx(1, 1);
        let lam = HighestWeight::evaluation(&c, &[q(1), q(0)]).unwrap();
        let target = star_product(&lam, &lam.shift(&qf(1, 3))).unwrap();
        let ind = induced_module_truncated(&AuxData::scalar(&target).unwrap(), 4).unwrap();
        assert!(ind.stabilized, "{:?}", ind.issue);
        assert_eq!(ind.quotient_dim, 4);
        assert_eq!(ind.highest_weight.as_ref(), Some(&target));
        assert!(verify_defining_relations(ind.module.as_ref().unwrap(), 3).passed());
    }

    #[test]
    fn aux_validation() {
        let c = ctx(1, 1);
        let gamma = vector_rep(&c);
        assert_eq!(AuxData::evaluation(&gamma).unwrap().dim(), 2);
        let mut odd = BTreeMap::new();
        odd.insert((1, 2), SparseMatrix::new(1, 1));
        assert!(AuxData::new(c, vec![0], odd).is_err());
    }
}
