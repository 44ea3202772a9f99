//! Maximal vectors, highest weights, cyclic spans and irreducible quotients.

use num_traits::Zero;

use super::module::{Provenance, YModule};
use crate::error::{Error, Result};
use crate::exactmath::{closure, largest_invariant_subspace, quotient, DenseMatrix, RatFun, Rational, Subspace, Vector};
use crate::glmn::coordinate_subspace;
use crate::weights::HighestWeight;

/// One maximal vector together with its highest weight.
#[derive(Clone, Debug, PartialEq)]
pub struct MaximalVector {
    pub vector: Vector,
    pub weight: HighestWeight,
}

/// Stacked coefficient matrices of the numerators `d(u) L^{ab}(u)` over
/// every raising pair `a < b`; its kernel is `{v : t^a_b(u) v = 0}`.
fn raising_system(w: &YModule) -> DenseMatrix {
    let dim = w.dim();
    let mut system = DenseMatrix::zeros(0, dim);
    for (a, b) in w.ctx().pairs().filter(|(a, b)| a < b) {
        let m = w.action(a, b);
        if m.is_zero() {
            continue;
        }
        let mut d = crate::exactmath::Polynomial::one();
        for (_, f) in m.iter() {
            let g = crate::exactmath::Polynomial::gcd(&d, f.den());
            d = (&d * f.den()).exact_div(&g).expect("gcd divides");
        }
        let mut numer: Vec<Vec<(usize, usize, Rational)>> = Vec::new();
        for (&(i, j), f) in m.iter() {
            let scaled = (f.num() * &d.exact_div(f.den()).expect("denominator divides lcm")).clone();
            for (k, c) in scaled.coeffs().iter().enumerate() {
                if numer.len() <= k {
                    numer.resize(k + 1, Vec::new());
                }
                numer[k].push((i, j, c.clone()));
            }
        }
        for block in numer {
            let mut mat = DenseMatrix::zeros(dim, dim);
            for (i, j, c) in block {
                mat[(i, j)] = c;
            }
            system = system.vstack(&mat);
        }
    }
    system
}

fn is_killed_by_raising(w: &YModule, v: &[Rational]) -> bool {
    raising_system(w).apply(v).iter().all(Zero::is_zero)
}

/// Applies a rational-function matrix to a constant vector.
fn apply_ratfun(w: &YModule, a: usize, b: usize, v: &[Rational]) -> Vec<RatFun> {
    let mut out = vec![RatFun::zero(); w.dim()];
    for (&(i, j), f) in w.action(a, b).iter() {
        if !v[j].is_zero() {
            out[i] = &out[i] + &f.scale(&v[j]);
        }
    }
    out
}

/// `λ_a(u)` with `L^{aa}(u) v = λ_a(u) v`, as exact rational functions.
pub fn highest_weight_of(w: &YModule, v: &[Rational]) -> Result<HighestWeight> {
    if v.len() != w.dim() {
        return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), w.dim())));
    }
    let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
        return Err(Error::ZeroVector);
    };
    if !is_killed_by_raising(w, v) {
        return Err(Error::NotMaximal("some t^a_b(u), a < b, does not annihilate the vector".into()));
    }
    let mut comps = Vec::with_capacity(w.ctx().size());
    for a in w.ctx().indices() {
        let img = apply_ratfun(w, a, a, v);
        let lambda = img[pivot].scale(&v[pivot].recip());
        for (x, c) in img.iter().zip(v) {
            if *x != lambda.scale(c) {
                return Err(Error::NotEigenvector(format!("t^{a}_{a}(u) does not act by a scalar")));
            }
        }
        comps.push(lambda);
    }
    HighestWeight::new(*w.ctx(), comps)
}

/// Matrix of `op` restricted to an `op`-invariant subspace, in its echelon basis.
fn restricted(op: &DenseMatrix, s: &Subspace) -> DenseMatrix {
    let d = s.dim();
    let mut m = DenseMatrix::zeros(d, d);
    for (j, b) in s.basis().iter().enumerate() {
        let img = op.apply(b);
        let c = s.coordinates(&img).expect("subspace is invariant");
        for (i, x) in c.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    m
}

/// Joint eigenspaces with rational eigenvalues of `ops` inside `start`.
fn joint_eigenspaces(start: Subspace, ops: &[DenseMatrix]) -> Result<Vec<Subspace>> {
    let n = start.ambient();
    let mut spaces = vec![start];
    for op in ops {
        let mut next = Vec::new();
        for s in spaces {
            let s = largest_invariant_subspace(&s, std::slice::from_ref(op))?;
            if s.dim() == 0 {
                continue;
            }
            let r = restricted(op, &s);
            let (roots, _) = r.charpoly().rational_roots();
            let mut distinct = roots;
            distinct.dedup();
            let basis = DenseMatrix::from_columns(n, s.basis());
            for lambda in distinct {
                let mut shifted = r.clone();
                for i in 0..shifted.rows() {
                    shifted[(i, i)] -= &lambda;
                }
                let vecs: Vec<Vector> = shifted.nullspace().iter().map(|c| basis.apply(c)).collect();
                next.push(Subspace::span(n, &vecs));
            }
        }
        spaces = next;
    }
    Ok(spaces)
}

/// Diagonal mode matrices `t^a_a[n]`, `n = 1..=k`.
fn diagonal_modes(w: &YModule) -> Vec<DenseMatrix> {
    let k = w.generation_levels();
    let t = w.mode_table(k);
    w.ctx()
        .indices()
        .flat_map(|a| (1..=k).map(move |n| (a, n)))
        .map(|(a, n)| t.get(a, a, n).clone())
        .collect()
}

/// Maximal vectors: the kernel of the raising numerators, split into joint
/// eigenspaces of the diagonal modes (levels up to the denominator degree
/// generate every level). One entry per basis vector of each eigenspace.
pub fn maximal_vectors(w: &YModule) -> Result<Vec<MaximalVector>> {
    let kernel = Subspace::span(w.dim(), &raising_system(w).nullspace());
    let mut out = Vec::new();
    for space in joint_eigenspaces(kernel, &diagonal_modes(w))? {
        for v in space.basis() {
            out.push(MaximalVector {
                vector: v.clone(),
                weight: highest_weight_of(w, v)?,
            });
        }
    }
    Ok(out)
}

/// Dimension of the space of maximal vectors.
pub fn maximal_space_dim(w: &YModule) -> Result<usize> {
    Ok(maximal_vectors(w)?.len())
}

/// The submodule generated by `v`: closure under every mode at levels
/// `1..=k`, which generate all levels by the denominator recurrence.
pub fn cyclic_span(w: &YModule, v: &[Rational]) -> Result<Subspace> {
    if v.len() != w.dim() {
        return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), w.dim())));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    Ok(closure(w.dim(), &[v.to_vec()], &w.generating_modes()))
}

/// Invariant subspace `s` as a module on a homogeneous basis, split by
/// `(gl weight, parity)` blocks.
pub fn submodule(w: &YModule, s: &Subspace) -> Result<YModule> {
    let n = w.dim();
    let blocks = w.blocks()?;
    let pieces: Vec<(Subspace, Subspace)> = blocks
        .iter()
        .map(|(_, idx)| (s.intersect(&coordinate_subspace(n, idx)), Subspace::zero(n)))
        .filter(|(p, _)| p.dim() > 0)
        .collect();
    let covered: usize = pieces.iter().map(|(p, _)| p.dim()).sum();
    if covered != s.dim() {
        return Err(Error::Invalid("subspace is not spanned by homogeneous weight vectors".into()));
    }
    let qt = quotient(n, &pieces);
    let parity = qt.reps.iter().map(|r| parity_of(w, r)).collect();
    let reps = DenseMatrix::from_columns(n, &qt.reps);
    w.conjugated(
        &qt.proj,
        &reps,
        parity,
        Provenance::Submodule {
            of: Box::new(w.provenance().clone()),
        },
    )
}

fn parity_of(w: &YModule, v: &[Rational]) -> u8 {
    let i = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    w.parity()[i]
}

/// Output of [`irreducible_quotient`].
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub module: YModule,
    pub span_dim: usize,
    pub maximal_dim: usize,
    /// Echelon basis of the maximal submodule, in the ambient coordinates.
    pub maximal: Subspace,
}

/// `C / M` for `C` the cyclic span of `hv` and `M` the largest invariant
/// subspace of `C` avoiding the top weight line; `hv` comes first.
pub fn irreducible_quotient(w: &YModule, hv: &[Rational]) -> Result<QuotientResult> {
    highest_weight_of(w, hv)?;
    let n = w.dim();
    let blocks = w.blocks()?;
    let top = blocks
        .iter()
        .position(|(_, idx)| coordinate_subspace(n, idx).contains(hv))
        .ok_or_else(|| Error::Invalid("maximal vector is not weight- and parity-homogeneous".into()))?;
    let ops = w.generating_modes();
    let span = closure(n, &[hv.to_vec()], &ops);
    let mut pieces: Vec<(usize, Subspace)> = blocks
        .iter()
        .enumerate()
        .map(|(i, (_, idx))| (i, span.intersect(&coordinate_subspace(n, idx))))
        .filter(|(_, s)| s.dim() > 0)
        .collect();
    pieces.sort_by_key(|(i, _)| usize::from(*i != top));
    if pieces[0].1.dim() != 1 {
        return Err(Error::Invalid("top weight space of the cyclic span is not one-dimensional".into()));
    }
    let below: Vec<Vector> = pieces[1..].iter().flat_map(|(_, s)| s.basis().to_vec()).collect();
    let maximal = largest_invariant_subspace(&Subspace::span(n, &below), &ops)?;
    let mut parts = vec![(Subspace::span(n, &[hv.to_vec()]), Subspace::zero(n))];
    for (i, s) in &pieces[1..] {
        parts.push((s.clone(), maximal.intersect(&coordinate_subspace(n, &blocks[*i].1))));
    }
    let qt = quotient(n, &parts);
    let parity = qt.reps.iter().map(|r| parity_of(w, r)).collect();
    let reps = DenseMatrix::from_columns(n, &qt.reps);
    let module = w.conjugated(
        &qt.proj,
        &reps,
        parity,
        Provenance::Quotient {
            of: Box::new(w.provenance().clone()),
            span_dim: span.dim(),
            maximal_dim: maximal.dim(),
        },
    )?;
    Ok(QuotientResult {
        module,
        span_dim: span.dim(),
        maximal_dim: maximal.dim(),
        maximal,
    })
}
