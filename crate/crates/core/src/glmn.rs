//! The Lie superalgebra `gl(M|N)` and its finite-dimensional modules:
//! vector representation, graded tensor products, one-dimensional twists,
//! highest-weight vectors and irreducible cyclic subquotients.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::rational::{is_nonneg_integer, sign};
use crate::exactmath::{closure, largest_invariant_subspace, quotient, DenseMatrix, Rational, SparseMatrix, Subspace, Vector};
use crate::superalgebra::GradingContext;

/// A linear combination of the matrix units `E^a_b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GlElement {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl GlElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(a: usize, b: usize) -> Self {
        let mut e = Self::zero();
        e.add(a, b, Rational::from_integer(1.into()));
        e
    }

    pub fn add(&mut self, a: usize, b: usize, c: Rational) {
        let v = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: usize, b: usize) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `[E^a_b, E^c_d} = δ^c_b E^a_d − (−1)^{([a]+[b])([c]+[d])} δ^a_d E^c_b`, bilinearly.
pub fn gl_bracket(ctx: &GradingContext, x: &GlElement, y: &GlElement) -> GlElement {
    let mut out = GlElement::zero();
    for (&(a, b), cx) in x.terms() {
        for (&(c, d), cy) in y.terms() {
            let k = cx * cy;
            if c == b {
                out.add(a, d, k.clone());
            }
            if a == d {
                let s = sign(ctx.pair_parity(a, b) * ctx.pair_parity(c, d));
                out.add(c, b, -(s * k));
            }
        }
    }
    out
}

pub type GlWeight = Vec<Rational>;

/// A finite-dimensional `gl(M|N)` module on a parity-graded basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GlModule {
    ctx: GradingContext,
    parity: Vec<u8>,
    action: BTreeMap<(usize, usize), SparseMatrix<Rational>>,
    weights: Vec<GlWeight>,
}

impl GlModule {
    /// Validates shapes and that each `E^a_a` is diagonal with the listed weights.
    pub fn from_parts(
        ctx: GradingContext,
        parity: Vec<u8>,
        action: BTreeMap<(usize, usize), SparseMatrix<Rational>>,
    ) -> Result<Self> {
        let dim = parity.len();
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::Invalid("parity bits must be 0 or 1".into()));
        }
        let mut full = BTreeMap::new();
        for (a, b) in ctx.pairs() {
            let m = action.get(&(a, b)).cloned().unwrap_or_else(|| SparseMatrix::new(dim, dim));
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "E^{a}_{b} is {}x{}, module has dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            full.insert((a, b), m);
        }
        for key in action.keys() {
            if !full.contains_key(key) {
                return Err(Error::IndexOutOfRange(format!("action key {key:?}")));
            }
        }
        let mut weights = vec![Vec::with_capacity(ctx.size()); dim];
        for a in ctx.indices() {
            let m = &full[&(a, a)];
            if m.iter().any(|(&(r, c), _)| r != c) {
                return Err(Error::Invalid(format!("E^{a}_{a} is not diagonal")));
            }
            for (i, w) in weights.iter_mut().enumerate() {
                w.push(m.get(i, i).cloned().unwrap_or_else(Rational::zero));
            }
        }
        Ok(GlModule {
            ctx,
            parity,
            action: full,
            weights,
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

    pub fn weights(&self) -> &[GlWeight] {
        &self.weights
    }

    pub fn action(&self, a: usize, b: usize) -> &SparseMatrix<Rational> {
        &self.action[&(a, b)]
    }

    pub fn actions(&self) -> impl Iterator<Item = (&(usize, usize), &SparseMatrix<Rational>)> {
        self.action.iter()
    }

    pub fn dense(&self, a: usize, b: usize) -> DenseMatrix {
        self.action(a, b).to_dense()
    }

    fn all_dense(&self) -> Vec<DenseMatrix> {
        self.action.values().map(|m| m.to_dense()).collect()
    }

    /// Exhaustive graded-commutator check against the bracket on every pair of
    /// matrix units; also checks every action matrix is parity-homogeneous.
    /// Returns the first failure.
    pub fn check_relations(&self) -> Option<String> {
        let ctx = self.ctx;
        for (&(a, b), m) in &self.action {
            let p = ctx.pair_parity(a, b);
            if let Some((&(r, c), _)) = m.iter().find(|(&(r, c), _)| (self.parity[r] + self.parity[c]) % 2 != p) {
                return Some(format!("E^{a}_{b} entry ({r},{c}) breaks parity"));
            }
        }
        let dense: BTreeMap<(usize, usize), DenseMatrix> =
            self.action.iter().map(|(k, m)| (*k, m.to_dense())).collect();
        for (&(a, b), x) in &dense {
            for (&(c, d), y) in &dense {
                let s = sign(ctx.pair_parity(a, b) * ctx.pair_parity(c, d));
                let lhs = x.mul(y).sub(&y.mul(x).scale(&s));
                let br = gl_bracket(&ctx, &GlElement::unit(a, b), &GlElement::unit(c, d));
                let mut rhs = DenseMatrix::zeros(self.dim(), self.dim());
                for (&(e, f), k) in br.terms() {
                    rhs = rhs.add(&dense[&(e, f)].scale(k));
                }
                if lhs != rhs {
                    return Some(format!("[E^{a}_{b}, E^{c}_{d}}} mismatch"));
                }
            }
        }
        None
    }

    /// The raising operators `E^a_b`, `a < b`.
    pub fn raising(&self) -> Vec<DenseMatrix> {
        self.ctx
            .pairs()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| self.dense(a, b))
            .collect()
    }

    /// Basis indices grouped by `(weight, parity)`, in order of first appearance.
    pub fn blocks(&self) -> Vec<((GlWeight, u8), Vec<usize>)> {
        let mut out: Vec<((GlWeight, u8), Vec<usize>)> = Vec::new();
        for i in 0..self.dim() {
            let key = (self.weights[i].clone(), self.parity[i]);
            match out.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(i),
                None => out.push((key, vec![i])),
            }
        }
        out
    }
}

/// `E^a_b v^c = δ^c_b v^a`, parity of `v^a` is `[a]`.
pub fn vector_rep(ctx: &GradingContext) -> GlModule {
    let n = ctx.size();
    let mut action = BTreeMap::new();
    for (a, b) in ctx.pairs() {
        let mut m = SparseMatrix::new(n, n);
        m.set(a - 1, b - 1, Rational::from_integer(1.into()));
        action.insert((a, b), m);
    }
    let parity = ctx.indices().map(|a| ctx.grade(a)).collect();
    GlModule::from_parts(*ctx, parity, action).expect("vector representation is well formed")
}

/// `E^a_b ↦ 0` off the diagonal, `E^a_a ↦ c (−1)^{[a]}`.
pub fn one_dim_rep(ctx: &GradingContext, c: &Rational) -> GlModule {
    let mut action = BTreeMap::new();
    for a in ctx.indices() {
        let mut m = SparseMatrix::new(1, 1);
        m.set(0, 0, c * sign(ctx.grade(a)));
        action.insert((a, a), m);
    }
    GlModule::from_parts(*ctx, vec![0], action).expect("one-dimensional module is well formed")
}

/// `x ↦ x ⊗ 1 + 1 ⊗ x` with `(1 ⊗ x)(v ⊗ w) = (−1)^{[x][v]} v ⊗ xw`;
/// basis `v_i ⊗ w_j` at index `i · dim B + j`.
pub fn tensor(a_mod: &GlModule, b_mod: &GlModule) -> Result<GlModule> {
    if a_mod.ctx != b_mod.ctx {
        return Err(Error::ContextMismatch("tensor factors differ in (M, N)".into()));
    }
    let ctx = a_mod.ctx;
    let (da, db) = (a_mod.dim(), b_mod.dim());
    let n = da * db;
    let mut parity = Vec::with_capacity(n);
    for i in 0..da {
        for j in 0..db {
            parity.push((a_mod.parity[i] + b_mod.parity[j]) % 2);
        }
    }
    let mut action = BTreeMap::new();
    for (a, b) in ctx.pairs() {
        let px = ctx.pair_parity(a, b);
        let mut m = SparseMatrix::new(n, n);
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(r, c), v) in a_mod.action(a, b).iter() {
            for j in 0..db {
                *acc.entry((r * db + j, c * db + j)).or_insert_with(Rational::zero) += v;
            }
        }
        for (&(r, c), v) in b_mod.action(a, b).iter() {
            for i in 0..da {
                let s = sign(px * a_mod.parity[i]);
                *acc.entry((i * db + r, i * db + c)).or_insert_with(Rational::zero) += s * v;
            }
        }
        for ((r, c), v) in acc {
            m.set(r, c, v);
        }
        action.insert((a, b), m);
    }
    GlModule::from_parts(ctx, parity, action)
}

/// Joint kernel of the raising operators, organized by weight.
pub fn gl_highest_weight_vectors(w: &GlModule) -> Vec<(GlWeight, Vector)> {
    let raising = w.raising();
    let mut out = Vec::new();
    for ((weight, _), idx) in w.blocks() {
        let mut system = DenseMatrix::zeros(0, idx.len());
        for r in &raising {
            let mut sub = DenseMatrix::zeros(w.dim(), idx.len());
            for (j, &c) in idx.iter().enumerate() {
                for i in 0..w.dim() {
                    sub[(i, j)] = r[(i, c)].clone();
                }
            }
            system = system.vstack(&sub);
        }
        for coeffs in system.nullspace() {
            let mut v = vec![Rational::zero(); w.dim()];
            for (j, &c) in idx.iter().enumerate() {
                v[c] = coeffs[j].clone();
            }
            out.push((weight.clone(), v));
        }
    }
    out
}

/// Coordinate subspace on the given basis indices.
pub(crate) fn coordinate_subspace(n: usize, idx: &[usize]) -> Subspace {
    let vecs: Vec<Vector> = idx
        .iter()
        .map(|&i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::from_integer(1.into());
            e
        })
        .collect();
    Subspace::span(n, &vecs)
}

/// The irreducible quotient of `U(gl)·v` for a highest-weight vector `v`:
/// closure, then the largest invariant subspace avoiding the top line,
/// then the quotient on homogeneous coset representatives (top vector first).
pub fn cyclic_subquotient(w: &GlModule, v: &[Rational]) -> Result<GlModule> {
    let n = w.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {n}", v.len())));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let ops = w.all_dense();
    let blocks = w.blocks();
    let top = blocks
        .iter()
        .position(|(_, idx)| coordinate_subspace(n, idx).contains(v))
        .ok_or_else(|| Error::Invalid("vector is not weight- and parity-homogeneous".into()))?;
    for r in w.raising() {
        if r.apply(v).iter().any(|x| !x.is_zero()) {
            return Err(Error::NotMaximal("raising operator does not annihilate the vector".into()));
        }
    }
    let span = closure(n, &[v.to_vec()], &ops);
    let mut pieces: Vec<(usize, Subspace)> = blocks
        .iter()
        .enumerate()
        .map(|(i, (_, idx))| (i, span.intersect(&coordinate_subspace(n, idx))))
        .filter(|(_, s)| s.dim() > 0)
        .collect();
    pieces.sort_by_key(|(i, _)| usize::from(*i != top));
    let below: Vec<Vector> = pieces[1..].iter().flat_map(|(_, s)| s.basis().to_vec()).collect();
    let maximal = largest_invariant_subspace(&Subspace::span(n, &below), &ops)?;
    let mut parts = vec![(Subspace::span(n, &[v.to_vec()]), Subspace::zero(n))];
    for (i, s) in &pieces[1..] {
        parts.push((s.clone(), maximal.intersect(&coordinate_subspace(n, &blocks[*i].1))));
    }
    let qt = quotient(n, &parts);
    let mut parity = Vec::with_capacity(qt.dim());
    for &p in &qt.piece {
        let bi = if p == 0 { top } else { pieces[p].0 };
        parity.push(blocks[bi].0 .1);
    }
    let mut action = BTreeMap::new();
    for (key, m) in &w.action {
        action.insert(*key, SparseMatrix::from_dense(&qt.induced(&m.to_dense())));
    }
    GlModule::from_parts(w.ctx, parity, action)
}

/// `μ_a − μ_{a+1} ∈ Z_{≥0}` for every `a ≠ M`.
pub fn is_dominant(ctx: &GradingContext, mu: &[Rational]) -> bool {
    mu.len() == ctx.size()
        && (1..ctx.size())
            .filter(|&a| a != ctx.m())
            .all(|a| is_nonneg_integer(&(&mu[a - 1] - &mu[a])))
}

/// A covariant tensor word `V^{⊗copies}` twisted by the character of `twist`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepSpec {
    pub copies: usize,
    pub twist: Rational,
}

pub fn tensor_word(ctx: &GradingContext, spec: &IrrepSpec) -> Result<GlModule> {
    let mut m = one_dim_rep(ctx, &spec.twist);
    let v = vector_rep(ctx);
    for _ in 0..spec.copies {
        m = tensor(&m, &v)?;
    }
    Ok(m)
}

/// The irreducible subquotient of the tensor word generated by its first
/// highest-weight vector of weight `target`.
pub fn build_irrep(ctx: &GradingContext, spec: &IrrepSpec, target: &[Rational]) -> Result<GlModule> {
    if !is_dominant(ctx, target) {
        return Err(Error::NotDominant(format!("{target:?}")));
    }
    let w = tensor_word(ctx, spec)?;
    let (_, v) = gl_highest_weight_vectors(&w)
        .into_iter()
        .find(|(mu, _)| mu.as_slice() == target)
        .ok_or_else(|| Error::WeightNotRealized(format!("no highest-weight vector of weight {target:?}")))?;
    cyclic_subquotient(&w, &v)
}
