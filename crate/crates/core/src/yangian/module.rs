//! Finite-dimensional `Y(gl(M|N))` modules with rational action
//! `t^a_b(u) ↦ L^{ab}(u)`, evaluation modules, shifted tensor products and
//! the exhaustive mode-relation check.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::rational::sign;
use crate::exactmath::{DenseMatrix, Polynomial, RatFun, Rational, SparseMatrix};
use crate::glmn::GlModule;
use crate::par::{self, Exec};
use crate::superalgebra::hopf::chain_sign;
use crate::superalgebra::GradingContext;

/// How a module was built; serialized alongside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Explicit,
    Evaluation,
    Tensor {
        alphas: Vec<Rational>,
        factors: Vec<Provenance>,
    },
    Submodule {
        of: Box<Provenance>,
    },
    Quotient {
        of: Box<Provenance>,
        span_dim: usize,
        maximal_dim: usize,
    },
    Induced {
        cutoff: usize,
    },
}

pub type RatMatrix = SparseMatrix<RatFun>;

/// Basis indices sharing a gl weight and a parity.
pub type WeightBlock = ((Vec<Rational>, u8), Vec<usize>);

#[derive(Clone, Debug, PartialEq)]
pub struct YModule {
    ctx: GradingContext,
    parity: Vec<u8>,
    action: BTreeMap<(usize, usize), RatMatrix>,
    provenance: Provenance,
}

impl YModule {
    /// Validates shapes and the constant-term invariant
    /// `L^{ab}(∞) = (−1)^{[b]} δ^a_b I`.
    pub fn from_parts(
        ctx: GradingContext,
        parity: Vec<u8>,
        action: BTreeMap<(usize, usize), RatMatrix>,
        provenance: Provenance,
    ) -> Result<Self> {
        let dim = parity.len();
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::Invalid("parity bits must be 0 or 1".into()));
        }
        for key in action.keys() {
            if ctx.check_index(key.0).is_err() || ctx.check_index(key.1).is_err() {
                return Err(Error::IndexOutOfRange(format!("action key {key:?}")));
            }
        }
        let mut full = BTreeMap::new();
        for (a, b) in ctx.pairs() {
            let m = match action.get(&(a, b)) {
                Some(m) => m.clone(),
                None if a == b => {
                    let mut m = SparseMatrix::new(dim, dim);
                    for i in 0..dim {
                        m.set(i, i, RatFun::constant(sign(ctx.grade(b))));
                    }
                    m
                }
                None => SparseMatrix::new(dim, dim),
            };
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "t^{a}_{b}(u) is {}x{}, module has dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            let diag = sign(ctx.grade(b));
            for i in 0..dim {
                for j in 0..dim {
                    let v = m.get(i, j).map_or(Some(Rational::zero()), |f| f.value_at_infinity());
                    let want = if a == b && i == j { diag.clone() } else { Rational::zero() };
                    if v.as_ref() != Some(&want) {
                        return Err(Error::Invalid(format!(
                            "t^{a}_{b}(u) entry ({i},{j}) does not tend to {want} at u = ∞"
                        )));
                    }
                }
            }
            full.insert((a, b), m);
        }
        Ok(YModule {
            ctx,
            parity,
            action: full,
            provenance,
        })
    }

    pub fn ctx(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Shift parameters when the module is a shifted tensor product.
    pub fn alphas(&self) -> Option<&[Rational]> {
        match &self.provenance {
            Provenance::Tensor { alphas, .. } => Some(alphas),
            _ => None,
        }
    }

    pub fn action(&self, a: usize, b: usize) -> &RatMatrix {
        &self.action[&(a, b)]
    }

    pub fn actions(&self) -> impl Iterator<Item = (&(usize, usize), &RatMatrix)> {
        self.action.iter()
    }

    /// Replaces one action matrix without validation (negative controls).
    pub fn with_action_unchecked(&self, a: usize, b: usize, m: RatMatrix) -> Self {
        let mut out = self.clone();
        out.action.insert((a, b), m);
        out
    }

    /// Monic lcm of every entry denominator.
    pub fn common_denominator(&self) -> Polynomial {
        let mut l = Polynomial::one();
        for m in self.action.values() {
            for (_, f) in m.iter() {
                let g = Polynomial::gcd(&l, f.den());
                l = (&l * f.den()).exact_div(&g).expect("gcd divides");
            }
        }
        l
    }

    /// Number of modes that generate all others: the degree of the common
    /// denominator (at least 1).
    pub fn generation_levels(&self) -> usize {
        self.common_denominator().degree().unwrap_or(0).max(1)
    }

    /// `t^a_b[n]`, the coefficient of `u^{-n}`.
    pub fn action_mode(&self, a: usize, b: usize, n: usize) -> Result<SparseMatrix<Rational>> {
        if n == 0 {
            return Err(Error::InvalidLevel("modes start at level 1".into()));
        }
        self.ctx.check_index(a)?;
        self.ctx.check_index(b)?;
        let m = self.action(a, b);
        let mut out = SparseMatrix::new(self.dim(), self.dim());
        for (&(i, j), f) in m.iter() {
            out.set(i, j, f.series_expand(n)?.pop().expect("order n series"));
        }
        Ok(out)
    }

    /// Dense modes `0..=max_level` of every action matrix; index 0 is the constant term.
    pub fn mode_table(&self, max_level: usize) -> ModeTable {
        let dim = self.dim();
        let mut table = BTreeMap::new();
        for (&key, m) in &self.action {
            let mut modes = vec![DenseMatrix::zeros(dim, dim); max_level + 1];
            for (&(i, j), f) in m.iter() {
                let cs = f.series_expand(max_level).expect("action entries are regular at infinity");
                for (n, c) in cs.into_iter().enumerate() {
                    modes[n][(i, j)] = c;
                }
            }
            table.insert(key, modes);
        }
        ModeTable { table }
    }

    /// All mode matrices at levels `1..=generation_levels()`.
    pub fn generating_modes(&self) -> Vec<DenseMatrix> {
        let k = self.generation_levels();
        let t = self.mode_table(k);
        t.table.values().flat_map(|ms| ms[1..].iter().cloned()).collect()
    }

    /// `t^a_a[1]` diagonal entries as gl weights per basis vector, if all are diagonal.
    pub fn gl_weights(&self) -> Option<Vec<Vec<Rational>>> {
        let t = self.mode_table(1);
        let mut out = vec![Vec::with_capacity(self.ctx.size()); self.dim()];
        for a in self.ctx.indices() {
            let m = &t.table[&(a, a)][1];
            for i in 0..self.dim() {
                for j in 0..self.dim() {
                    if i != j && !m[(i, j)].is_zero() {
                        return None;
                    }
                }
                out[i].push(m[(i, i)].clone());
            }
        }
        Some(out)
    }

    /// Basis indices grouped by `(gl weight, parity)` in order of first appearance.
    pub fn blocks(&self) -> Result<Vec<WeightBlock>> {
        let w = self
            .gl_weights()
            .ok_or_else(|| Error::Invalid("t^a_a[1] is not diagonal in the stored basis".into()))?;
        let mut out: Vec<WeightBlock> = Vec::new();
        for (i, wi) in w.into_iter().enumerate() {
            let key = (wi, self.parity[i]);
            match out.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(i),
                None => out.push((key, vec![i])),
            }
        }
        Ok(out)
    }
}

/// Dense mode matrices per `(a, b)`, index = level.
#[derive(Clone, Debug)]
pub struct ModeTable {
    table: BTreeMap<(usize, usize), Vec<DenseMatrix>>,
}

impl ModeTable {
    pub fn get(&self, a: usize, b: usize, n: usize) -> &DenseMatrix {
        &self.table[&(a, b)][n]
    }

    pub fn max_level(&self) -> usize {
        self.table.values().next().map_or(0, |v| v.len() - 1)
    }
}

/// `t^a_b(u) ↦ (−1)^{[b]} δ^a_b + γ(E^a_b) u^{-1}`.
pub fn evaluation_rep(gamma: &GlModule) -> YModule {
    let ctx = *gamma.ctx();
    let dim = gamma.dim();
    let inv_u = RatFun::affine_inverse(Rational::zero(), Rational::from_integer(1.into()));
    let mut action = BTreeMap::new();
    for (a, b) in ctx.pairs() {
        let mut m = SparseMatrix::new(dim, dim);
        for (&(i, j), c) in gamma.action(a, b).iter() {
            m.set(i, j, inv_u.scale(c));
        }
        if a == b {
            let s = RatFun::constant(sign(ctx.grade(b)));
            for i in 0..dim {
                let v = m.get(i, i).cloned().unwrap_or_else(RatFun::zero);
                m.set(i, i, &v + &s);
            }
        }
        action.insert((a, b), m);
    }
    YModule::from_parts(ctx, gamma.parity().to_vec(), action, Provenance::Evaluation)
        .expect("evaluation module is well formed")
}

fn check_tensor_args(factors: &[YModule], alphas: &[Rational]) -> Result<GradingContext> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Invalid("tensor product of no factors".into()))?;
    if alphas.len() != factors.len() {
        return Err(Error::InvalidAlphas(format!(
            "{} shifts for {} factors",
            alphas.len(),
            factors.len()
        )));
    }
    if !alphas[0].is_zero() {
        return Err(Error::InvalidAlphas(format!("first shift must be 0, got {}", alphas[0])));
    }
    if factors.iter().any(|f| f.ctx != first.ctx) {
        return Err(Error::ContextMismatch("tensor factors differ in (M, N)".into()));
    }
    Ok(first.ctx)
}

/// Partial product over a prefix of tensor factors: sparse entries keyed by
/// `(row, col)` in mixed radix, plus the column parity so far.
type Partial = BTreeMap<(usize, usize), (RatFun, u8)>;

/// `Δ^{(k-1)}_α` on `A_1 ⊗ ... ⊗ A_k` by the explicit chain formula, with the
/// graded rule `(x ⊗ y)(v ⊗ w) = (−1)^{[y][v]} xv ⊗ yw`.
pub fn shifted_tensor(factors: &[YModule], alphas: &[Rational]) -> Result<YModule> {
    shifted_tensor_with(factors, alphas, Exec::default())
}

pub fn shifted_tensor_with(factors: &[YModule], alphas: &[Rational], exec: Exec) -> Result<YModule> {
    let ctx = check_tensor_args(factors, alphas)?;
    let k = factors.len();
    let n = ctx.size();
    let shifted: Vec<BTreeMap<(usize, usize), RatMatrix>> = factors
        .iter()
        .zip(alphas)
        .map(|(f, al)| {
            f.action
                .iter()
                .map(|(key, m)| (*key, m.map(|x| x.shift(al))))
                .collect()
        })
        .collect();
    let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let total: usize = dims.iter().product();
    let parity = tensor_parity(factors);
    let pairs: Vec<(usize, usize)> = ctx.pairs().collect();
    let mats = par::map(exec, &pairs, |&(a, b)| {
        let mut acc: BTreeMap<(usize, usize), RatFun> = BTreeMap::new();
        let mut chain = vec![b; k + 1];
        chain[k] = a;
        for idx in 0..n.pow((k - 1) as u32) {
            let mut rest = idx;
            for slot in chain.iter_mut().take(k).skip(1) {
                *slot = rest % n + 1;
                rest /= n;
            }
            let s = sign(chain_sign(&ctx, &chain));
            let mut partial: Partial = BTreeMap::new();
            partial.insert((0, 0), (RatFun::constant(s), 0));
            for i in 0..k {
                let (lo, hi) = (chain[i], chain[i + 1]);
                let px = ctx.pair_parity(hi, lo);
                let m = &shifted[i][&(hi, lo)];
                let fp = factors[i].parity();
                let mut next: Partial = BTreeMap::new();
                for (&(r0, c0), (v0, pcol)) in &partial {
                    for (&(r1, c1), v1) in m.iter() {
                        let mut v = v0 * v1;
                        if px * pcol % 2 == 1 {
                            v = -&v;
                        }
                        let key = (r0 * dims[i] + r1, c0 * dims[i] + c1);
                        let np = (pcol + fp[c1]) % 2;
                        match next.get_mut(&key) {
                            Some((x, _)) => *x = &*x + &v,
                            None => {
                                next.insert(key, (v, np));
                            }
                        }
                    }
                }
                partial = next;
            }
            for ((r, c), (v, _)) in partial {
                let e = acc.entry((r, c)).or_insert_with(RatFun::zero);
                *e = &*e + &v;
            }
        }
        let mut m = SparseMatrix::new(total, total);
        for ((r, c), v) in acc {
            m.set(r, c, v);
        }
        m
    });
    let action = pairs.into_iter().zip(mats).collect();
    YModule::from_parts(
        ctx,
        parity,
        action,
        Provenance::Tensor {
            alphas: alphas.to_vec(),
            factors: factors.iter().map(|f| f.provenance.clone()).collect(),
        },
    )
}

fn tensor_parity(factors: &[YModule]) -> Vec<u8> {
    let mut parity = vec![0u8];
    for f in factors {
        parity = parity
            .iter()
            .flat_map(|&p| f.parity.iter().map(move |&q| (p + q) % 2))
            .collect();
    }
    parity
}

/// Two-factor `Δ_α`: `Σ_c sign · L_A^{cb}(u) ⊗ L_B^{ac}(u + α)`.
pub fn tensor_pair(x: &YModule, y: &YModule, alpha: &Rational) -> Result<YModule> {
    shifted_tensor(&[x.clone(), y.clone()], &[Rational::zero(), alpha.clone()])
}

/// Iterated binary form `(...((A_1 ⊗_{α_2} A_2) ⊗_{α_3} A_3) ...)`, equal to
/// [`shifted_tensor`] by coassociativity.
pub fn shifted_tensor_iterated(factors: &[YModule], alphas: &[Rational]) -> Result<YModule> {
    check_tensor_args(factors, alphas)?;
    let mut acc = factors[0].clone();
    for (f, al) in factors[1..].iter().zip(&alphas[1..]) {
        acc = tensor_pair(&acc, f, al)?;
    }
    acc.provenance = Provenance::Tensor {
        alphas: alphas.to_vec(),
        factors: factors.iter().map(|f| f.provenance.clone()).collect(),
    };
    Ok(acc)
}

/// A failing instance of the mode relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub a1: usize,
    pub b1: usize,
    pub m: usize,
    pub a2: usize,
    pub b2: usize,
    pub n: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks every mode relation `[t^{a1}_{b1}[m], t^{a2}_{b2}[n]} = RHS` for
/// `m, n ≤ level_max` as matrix identities, plus parity homogeneity of every
/// action matrix. Reports the first failure in lexicographic order.
pub fn verify_defining_relations(w: &YModule, level_max: usize) -> RelationReport {
    verify_defining_relations_with(w, level_max, Exec::default())
}

pub fn verify_defining_relations_with(w: &YModule, level_max: usize, exec: Exec) -> RelationReport {
    verify_relations_where(w, level_max, exec, |_, _| true)
}

/// The relation sweep restricted to pairs of generators accepted by `keep`.
pub(crate) fn verify_relations_where(
    w: &YModule,
    level_max: usize,
    exec: Exec,
    keep: impl Fn((usize, usize), (usize, usize)) -> bool,
) -> RelationReport {
    let ctx = w.ctx;
    for (&(a, b), m) in &w.action {
        let p = ctx.pair_parity(a, b);
        if let Some((&(r, c), _)) = m.iter().find(|(&(r, c), _)| (w.parity[r] + w.parity[c]) % 2 != p) {
            return RelationReport {
                checked: 0,
                counterexample: Some(Counterexample {
                    a1: a,
                    b1: b,
                    m: 0,
                    a2: a,
                    b2: b,
                    n: 0,
                    detail: format!("t^{a}_{b}(u) entry ({r},{c}) breaks parity"),
                }),
            };
        }
    }
    let top = (2 * level_max).saturating_sub(1).max(1);
    let t = w.mode_table(top);
    let quads: Vec<(usize, usize, usize, usize)> = ctx
        .pairs()
        .flat_map(|(a1, b1)| ctx.pairs().map(move |(a2, b2)| (a1, b1, a2, b2)))
        .filter(|&(a1, b1, a2, b2)| keep((a1, b1), (a2, b2)))
        .collect();
    let results = par::map(exec, &quads, |&(a1, b1, a2, b2)| {
        let mut count = 0;
        for m in 1..=level_max {
            for n in 1..=level_max {
                count += 1;
                let x = t.get(a1, b1, m);
                let y = t.get(a2, b2, n);
                let s = sign(ctx.pair_parity(a1, b1) * ctx.pair_parity(a2, b2));
                let lhs = x.mul(y).sub(&y.mul(x).scale(&s));
                let eta = sign(ctx.eta(a1, b1, a2, b2));
                let top = m + n - 1;
                let mut rhs = DenseMatrix::zeros(w.dim(), w.dim());
                for r in 0..m.min(n) {
                    let p1 = t.get(a2, b1, r).mul(t.get(a1, b2, top - r));
                    let p2 = t.get(a2, b1, top - r).mul(t.get(a1, b2, r));
                    rhs = rhs.add(&p1.sub(&p2));
                }
                let rhs = rhs.scale(&eta);
                if lhs != rhs {
                    return (
                        count,
                        Some(Counterexample {
                            a1,
                            b1,
                            m,
                            a2,
                            b2,
                            n,
                            detail: "graded commutator differs from the relation right-hand side".into(),
                        }),
                    );
                }
            }
        }
        (count, None)
    });
    let mut checked = 0;
    for (c, fail) in results {
        checked += c;
        if fail.is_some() {
            return RelationReport {
                checked,
                counterexample: fail,
            };
        }
    }
    RelationReport {
        checked,
        counterexample: None,
    }
}

/// `L(u) ↦ π L(u) R` for constant `π` (`q × n`) and `R` (`n × q`).
pub(crate) fn conjugate_action(m: &RatMatrix, proj: &DenseMatrix, reps: &DenseMatrix) -> RatMatrix {
    let q = proj.rows();
    let n = proj.cols();
    // (L R) as rows of rational-function combinations
    let mut lr: Vec<Vec<RatFun>> = vec![vec![RatFun::zero(); q]; n];
    for (&(i, j), f) in m.iter() {
        for c in 0..q {
            let r = &reps[(j, c)];
            if !r.is_zero() {
                lr[i][c] = &lr[i][c] + &f.scale(r);
            }
        }
    }
    let mut out = SparseMatrix::new(q, q);
    for r in 0..q {
        for c in 0..q {
            let mut acc = RatFun::zero();
            for (i, row) in lr.iter().enumerate() {
                let p = &proj[(r, i)];
                if !p.is_zero() && !row[c].is_zero() {
                    acc = &acc + &row[c].scale(p);
                }
            }
            out.set(r, c, acc);
        }
    }
    out
}

impl YModule {
    pub(crate) fn conjugated(&self, proj: &DenseMatrix, reps: &DenseMatrix, parity: Vec<u8>, provenance: Provenance) -> Result<YModule> {
        let action = self
            .action
            .iter()
            .map(|(k, m)| (*k, conjugate_action(m, proj, reps)))
            .collect();
        YModule::from_parts(self.ctx, parity, action, provenance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{q, qf};
    use crate::glmn::{one_dim_rep, tensor, vector_rep};

    fn ctx(m: usize, n: usize) -> GradingContext {
        GradingContext::new(m, n).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let c = ctx(1, 1);
        let w = evaluation_rep(&vector_rep(&c));
        assert_eq!(w.action(1, 1).get(0, 0), Some(&RatFun::affine_inverse(q(1), q(1))));
        assert_eq!(w.action(2, 2).get(1, 1), Some(&RatFun::affine_inverse(q(-1), q(1))));
        assert_eq!(w.action_mode(1, 2, 1).unwrap(), vector_rep(&c).action(1, 2).clone());
        assert!(w.action_mode(1, 2, 2).unwrap().is_zero());
        assert!(verify_defining_relations(&w, 4).passed());
        let counit = evaluation_rep(&one_dim_rep(&c, &q(0)));
        for (a, b) in c.pairs() {
            for n in 1..=3 {
                assert!(counit.action_mode(a, b, n).unwrap().is_zero());
            }
        }
        let c21 = ctx(2, 1);
        assert!(verify_defining_relations(&evaluation_rep(&vector_rep(&c21)), 4).passed());
    }

    #[test]
    fn tensor_examples() {
        let c = ctx(1, 1);
        let v = evaluation_rep(&vector_rep(&c));
        let single = shifted_tensor(std::slice::from_ref(&v), &[q(0)]).unwrap();
        assert_eq!(single.action, v.action);
        let al = qf(1, 2);
        let vv = shifted_tensor(&[v.clone(), v.clone()], &[q(0), al.clone()]).unwrap();
        assert_eq!(vv.dim(), 4);
        let want = &RatFun::affine_inverse(q(1), q(1)) * &RatFun::affine_inverse(q(1), q(1)).shift(&al);
        assert_eq!(vv.action(1, 1).get(0, 0), Some(&want));
        assert!(verify_defining_relations(&vv, 4).passed());
        let it = shifted_tensor_iterated(&[v.clone(), v.clone(), v.clone()], &[q(0), al.clone(), q(2)]).unwrap();
        let ex = shifted_tensor(&[v.clone(), v.clone(), v.clone()], &[q(0), al, q(2)]).unwrap();
        assert_eq!(it, ex);
        assert!(verify_defining_relations(&ex, 3).passed());
        assert!(shifted_tensor(&[v.clone(), v.clone()], &[q(1), q(0)]).is_err());
        assert!(shifted_tensor(&[v.clone(), v], &[q(0)]).is_err());
    }

    #[test]
    fn corrupted_module_fails() {
        let c = ctx(1, 1);
        let g = tensor(&vector_rep(&c), &vector_rep(&c)).unwrap();
        let w = evaluation_rep(&g);
        let mut bad = w.action(1, 2).clone();
        let f = bad.get(0, 1).cloned().unwrap();
        bad.set(0, 1, f.scale(&q(2)));
        let broken = w.with_action_unchecked(1, 2, bad);
        let rep = verify_defining_relations(&broken, 2);
        assert!(!rep.passed());
        let ce = rep.counterexample.unwrap();
        assert!((ce.a1, ce.b1) == (1, 2) || (ce.a2, ce.b2) == (1, 2));
    }

    #[test]
    fn mode_recurrence() {
        let c = ctx(1, 1);
        let v = evaluation_rep(&vector_rep(&c));
        let vv = shifted_tensor(&[v.clone(), v], &[q(0), q(3)]).unwrap();
        let k = vv.generation_levels();
        assert_eq!(k, 2);
        let t = vv.mode_table(2 * k);
        for (a, b) in c.pairs() {
            let lower: Vec<Vec<Rational>> = (0..=k)
                .map(|n| flatten(t.get(a, b, n)))
                .collect();
            let span = crate::exactmath::Subspace::span(16, &lower);
            for n in k + 1..=2 * k {
                assert!(span.contains(&flatten(t.get(a, b, n))));
            }
        }
    }

    fn flatten(m: &DenseMatrix) -> Vec<Rational> {
        (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
    }
}
