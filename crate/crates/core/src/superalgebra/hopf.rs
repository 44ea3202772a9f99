//! Counit, the automorphism `t(x) ↦ f(x) t(x)`, the antipode to finite order
//! and the symbolic shifted coproduct.
//!
//! Series are truncated in `u^{-1}`: index `r` of a series holds the
//! coefficient of `u^{-r}`. Level zero is always the constant
//! `t^a_b[0] = (-1)^{[b]} δ^a_b`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::element::{AlgebraElement, Gen, Word};
use super::grading::GradingContext;
use super::straighten::{mode, Mode, Rewriter};
use crate::error::{Error, Result};
use crate::exactmath::rational::sign;
use crate::exactmath::Rational;

/// `ε(x)`: every generator of positive level maps to zero.
pub fn counit(_ctx: &GradingContext, x: &AlgebraElement) -> Rational {
    x.constant_term()
}

/// The mode `t^a_b[n]` as an algebra element, constants included.
pub fn mode_element(ctx: &GradingContext, a: usize, b: usize, n: usize) -> AlgebraElement {
    match mode(ctx, a, b, n) {
        Mode::Gen(g) => AlgebraElement::generator(g),
        Mode::Scalar(c) => AlgebraElement::scalar(c),
    }
}

/// Image of a generator under `t(x) ↦ f(x) t(x)`,
/// `f = 1 + f_1 x^{-1} + ... + f_K x^{-K}`.
pub fn automorphism_image(ctx: &GradingContext, f: &[Rational], g: Gen) -> AlgebraElement {
    let mut out = AlgebraElement::generator(g);
    for (k, fk) in f.iter().enumerate().map(|(i, c)| (i + 1, c)) {
        if k > g.n {
            break;
        }
        out.add_scaled(&mode_element(ctx, g.a, g.b, g.n - k), fk);
    }
    out
}

pub fn apply_automorphism(ctx: &GradingContext, f: &[Rational], x: &AlgebraElement) -> AlgebraElement {
    let mut rw = Rewriter::new(*ctx);
    apply_automorphism_with(&mut rw, f, x)
}

pub fn apply_automorphism_with(rw: &mut Rewriter, f: &[Rational], x: &AlgebraElement) -> AlgebraElement {
    let ctx = *rw.ctx();
    let mut out = AlgebraElement::zero();
    for (w, c) in x.terms() {
        let mut img = AlgebraElement::unit();
        for &g in w {
            img = rw.multiply(&img, &automorphism_image(&ctx, f, g));
        }
        out.add_scaled(&img, c);
    }
    out
}

/// Coefficient of `u^{-(q+j)}` in `(u + α)^{-q}`: `(-1)^j C(q+j-1, j) α^j`.
fn shifted_power_coeff(q: usize, j: usize, alpha: &Rational) -> Rational {
    if q == 0 {
        return if j == 0 { Rational::one() } else { Rational::zero() };
    }
    let mut binom = Rational::one();
    for i in 0..j {
        binom = binom * Rational::from_integer((q + i).into()) / Rational::from_integer((i + 1).into());
    }
    let mut out = binom;
    for _ in 0..j {
        out *= alpha;
    }
    if j % 2 == 1 {
        -out
    } else {
        out
    }
}

/// `t^a_b(u + α)` to order `u^{-order}`: index `r` lists `(coefficient, mode)`
/// pairs with `None` standing for the unit.
pub fn shifted_mode_series(
    ctx: &GradingContext,
    a: usize,
    b: usize,
    order: usize,
    alpha: &Rational,
) -> Vec<Vec<(Rational, Option<Gen>)>> {
    let mut out = vec![Vec::new(); order + 1];
    if a == b {
        out[0].push((sign(ctx.grade(b)), None));
    }
    for q in 1..=order {
        for (j, slot) in out.iter_mut().enumerate().skip(q) {
            let c = shifted_power_coeff(q, j - q, alpha);
            if !c.is_zero() {
                slot.push((c, Some(Gen::new(a, b, q))));
            }
        }
    }
    out
}

/// One tensor-slot assignment: slot `i` holds a PBW word (empty = unit).
pub type TensorMonomial = Vec<Word>;

/// A truncated series in `u^{-1}` with coefficients in a `k`-fold tensor power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSeries {
    slots: usize,
    orders: Vec<BTreeMap<TensorMonomial, Rational>>,
}

impl TensorSeries {
    pub fn zero(slots: usize, order: usize) -> Self {
        TensorSeries {
            slots,
            orders: vec![BTreeMap::new(); order + 1],
        }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn order(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn add_term(&mut self, r: usize, m: TensorMonomial, c: Rational) {
        debug_assert_eq!(m.len(), self.slots);
        if c.is_zero() || r >= self.orders.len() {
            return;
        }
        match self.orders[r].entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms at order `u^{-r}`.
    pub fn at(&self, r: usize) -> &BTreeMap<TensorMonomial, Rational> {
        &self.orders[r]
    }

    pub fn is_zero(&self) -> bool {
        self.orders.iter().all(|o| o.is_empty())
    }

    pub fn term_count(&self) -> usize {
        self.orders.iter().map(|o| o.len()).sum()
    }

    /// One-slot series as algebra elements per order.
    pub fn as_elements(&self) -> Result<Vec<AlgebraElement>> {
        if self.slots != 1 {
            return Err(Error::Invalid(format!(
                "expected one tensor slot, found {}",
                self.slots
            )));
        }
        Ok(self
            .orders
            .iter()
            .map(|o| {
                let mut e = AlgebraElement::zero();
                for (m, c) in o {
                    e.add_term(m[0].clone(), c.clone());
                }
                e
            })
            .collect())
    }
}

/// Sign of the intermediate chain `a_0 = b, a_1, ..., a_k = a`:
/// `Σ_{i=1}^{k-1} [a_i] + ([a_0] + [a_i])([a_i] + [a_{i+1}])`.
pub fn chain_sign(ctx: &GradingContext, chain: &[usize]) -> u8 {
    let g = |i: usize| ctx.grade(chain[i]);
    let k = chain.len() - 1;
    let mut e = 0u8;
    for i in 1..k {
        e += g(i) + (g(0) + g(i)) * (g(i) + g(i + 1));
    }
    e % 2
}

fn check_alphas(alphas: &[Rational]) -> Result<()> {
    match alphas.first() {
        None => Err(Error::InvalidAlphas("empty shift list".into())),
        Some(a) if !a.is_zero() => Err(Error::InvalidAlphas(format!(
            "first shift must be 0, got {a}"
        ))),
        _ => Ok(()),
    }
}

/// `Δ^{(k-1)}_α(t^a_b(u))` to order `u^{-order}` by the explicit chain formula:
/// `Σ sign · t^{a_1}_b(u) ⊗ t^{a_2}_{a_1}(u+α_2) ⊗ ... ⊗ t^a_{a_{k-1}}(u+α_k)`.
pub fn coproduct_symbolic(
    ctx: &GradingContext,
    a: usize,
    b: usize,
    order: usize,
    alphas: &[Rational],
) -> Result<TensorSeries> {
    ctx.check_index(a)?;
    ctx.check_index(b)?;
    check_alphas(alphas)?;
    let k = alphas.len();
    let mut out = TensorSeries::zero(k, order);
    let n = ctx.size();
    let mut chain = vec![b; k + 1];
    chain[k] = a;
    let total = n.pow((k - 1) as u32);
    for idx in 0..total {
        let mut rest = idx;
        for slot in chain.iter_mut().take(k).skip(1) {
            *slot = rest % n + 1;
            rest /= n;
        }
        let s = sign(chain_sign(ctx, &chain));
        // partial products, slot by slot
        let mut acc: Vec<Vec<(Rational, TensorMonomial)>> = vec![Vec::new(); order + 1];
        acc[0].push((s, Vec::new()));
        for i in 0..k {
            let series = shifted_mode_series(ctx, chain[i + 1], chain[i], order, &alphas[i]);
            let mut next: Vec<Vec<(Rational, TensorMonomial)>> = vec![Vec::new(); order + 1];
            for (r0, terms) in acc.iter().enumerate() {
                for (c0, m0) in terms {
                    for (r1, modes) in series.iter().enumerate().take(order + 1 - r0) {
                        for (c1, g) in modes {
                            let mut m = m0.clone();
                            m.push(g.map(|g| vec![g]).unwrap_or_default());
                            next[r0 + r1].push((c0 * c1, m));
                        }
                    }
                }
            }
            acc = next;
        }
        for (r, terms) in acc.into_iter().enumerate() {
            for (c, m) in terms {
                out.add_term(r, m, c);
            }
        }
    }
    Ok(out)
}

/// Applies `Δ_β` (shift `β` on the right factor) to tensor slot `slot`.
/// Slot contents must be the unit or a single generator.
pub fn apply_coproduct_to_slot(
    ctx: &GradingContext,
    ts: &TensorSeries,
    slot: usize,
    beta: &Rational,
) -> Result<TensorSeries> {
    if slot >= ts.slots {
        return Err(Error::IndexOutOfRange(format!("slot {slot}")));
    }
    let mut out = TensorSeries::zero(ts.slots + 1, ts.order());
    let mut cache: HashMap<Gen, Vec<(Rational, Word, Word)>> = HashMap::new();
    for (r, terms) in ts.orders.iter().enumerate() {
        for (m, c) in terms {
            let pieces: Vec<(Rational, Word, Word)> = match m[slot].as_slice() {
                [] => vec![(Rational::one(), Vec::new(), Vec::new())],
                [g] => cache
                    .entry(*g)
                    .or_insert_with(|| generator_coproduct(ctx, *g, beta))
                    .clone(),
                _ => {
                    return Err(Error::Invalid(
                        "coproduct of a slot holding a product is not supported".into(),
                    ))
                }
            };
            for (c1, l, rr) in pieces {
                let mut nm = Vec::with_capacity(m.len() + 1);
                nm.extend_from_slice(&m[..slot]);
                nm.push(l);
                nm.push(rr);
                nm.extend_from_slice(&m[slot + 1..]);
                out.add_term(r, nm, c * c1);
            }
        }
    }
    Ok(out)
}

/// `Δ_β(t^x_y[m]) = Σ_c sign Σ_p t^c_y[p] ⊗ [u^{-(m-p)}] t^x_c(u+β)`.
fn generator_coproduct(ctx: &GradingContext, g: Gen, beta: &Rational) -> Vec<(Rational, Word, Word)> {
    let mut out = Vec::new();
    for c in ctx.indices() {
        let s = sign(chain_sign(ctx, &[g.b, c, g.a]));
        let right = shifted_mode_series(ctx, g.a, c, g.n, beta);
        for p in 0..=g.n {
            let (lc, lw) = match mode(ctx, c, g.b, p) {
                Mode::Gen(x) => (Rational::one(), vec![x]),
                Mode::Scalar(k) => (k, Vec::new()),
            };
            if lc.is_zero() {
                continue;
            }
            for (rc, rg) in &right[g.n - p] {
                let rw = rg.map(|x| vec![x]).unwrap_or_default();
                out.push((&s * &lc * rc, lw.clone(), rw));
            }
        }
    }
    out
}

/// Applies the counit to tensor slot `slot`, removing it.
pub fn apply_counit_to_slot(ts: &TensorSeries, slot: usize) -> Result<TensorSeries> {
    if slot >= ts.slots {
        return Err(Error::IndexOutOfRange(format!("slot {slot}")));
    }
    let mut out = TensorSeries::zero(ts.slots - 1, ts.order());
    for (r, terms) in ts.orders.iter().enumerate() {
        for (m, c) in terms {
            if m[slot].is_empty() {
                let mut nm = m.clone();
                nm.remove(slot);
                out.add_term(r, nm, c.clone());
            }
        }
    }
    Ok(out)
}

/// `t^a_b(u + α)` as a one-slot series.
pub fn generator_series(ctx: &GradingContext, a: usize, b: usize, order: usize, alpha: &Rational) -> TensorSeries {
    let mut out = TensorSeries::zero(1, order);
    for (r, modes) in shifted_mode_series(ctx, a, b, order, alpha).into_iter().enumerate() {
        for (c, g) in modes {
            out.add_term(r, vec![g.map(|g| vec![g]).unwrap_or_default()], c);
        }
    }
    out
}

/// Truncated series matrix with algebra-element entries, `[row][col][order]`.
type SeriesMatrix = Vec<Vec<Vec<AlgebraElement>>>;

/// Graded matrix product truncated at `order`:
/// `(XY)(b, a') = Σ_a (-1)^{([b]+[a])([a]+[a'])} X(b, a) Y(a, a')`.
fn graded_series_product(rw: &mut Rewriter, x: &SeriesMatrix, y: &SeriesMatrix, order: usize) -> SeriesMatrix {
    let ctx = *rw.ctx();
    let n = ctx.size();
    let mut out = vec![vec![vec![AlgebraElement::zero(); order + 1]; n]; n];
    for (bi, row) in out.iter_mut().enumerate() {
        for (ai2, entry) in row.iter_mut().enumerate() {
            for ai in 0..n {
                let (gb, ga, ga2) = (ctx.grade(bi + 1), ctx.grade(ai + 1), ctx.grade(ai2 + 1));
                let s = sign(((gb + ga) % 2) * ((ga + ga2) % 2));
                for p in 0..=order {
                    if x[bi][ai][p].is_zero() {
                        continue;
                    }
                    for qq in 0..=(order - p) {
                        if y[ai][ai2][qq].is_zero() {
                            continue;
                        }
                        let prod = rw.multiply(&x[bi][ai][p], &y[ai][ai2][qq]);
                        entry[p + qq].add_scaled(&prod, &s);
                    }
                }
            }
        }
    }
    out
}

/// `S(t^a_b[n])` for `n = 1..=order`, from `L(u)^{-1} = Σ_j (-T(u))^j` where
/// `L(b, a) = (-1)^{[b]} t^a_b(u) = δ + T(b, a)`.
pub fn antipode_images(ctx: &GradingContext, order: usize) -> Result<BTreeMap<(usize, usize, usize), AlgebraElement>> {
    let mut rw = Rewriter::new(*ctx);
    antipode_images_with(&mut rw, order)
}

pub fn antipode_images_with(
    rw: &mut Rewriter,
    order: usize,
) -> Result<BTreeMap<(usize, usize, usize), AlgebraElement>> {
    if order == 0 {
        return Err(Error::InvalidLevel("antipode order must be at least 1".into()));
    }
    let ctx = *rw.ctx();
    let n = ctx.size();
    let mut neg_t: SeriesMatrix = vec![vec![vec![AlgebraElement::zero(); order + 1]; n]; n];
    for b in 1..=n {
        for a in 1..=n {
            for lvl in 1..=order {
                let s = -sign(ctx.grade(b));
                neg_t[b - 1][a - 1][lvl] = AlgebraElement::monomial(vec![Gen::new(a, b, lvl)], s);
            }
        }
    }
    let mut inv = neg_t.clone();
    for (i, row) in inv.iter_mut().enumerate() {
        row[i][0] = AlgebraElement::unit();
    }
    let mut power = neg_t.clone();
    for _ in 2..=order {
        power = graded_series_product(rw, &power, &neg_t, order);
        for (irow, prow) in inv.iter_mut().zip(&power) {
            for (ie, pe) in irow.iter_mut().zip(prow) {
                for (ix, px) in ie.iter_mut().zip(pe) {
                    *ix = ix.add(px);
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for a in 1..=n {
        for b in 1..=n {
            for lvl in 1..=order {
                let e = inv[b - 1][a - 1][lvl].scaled(&sign(ctx.grade(b)));
                out.insert((a, b, lvl), e);
            }
        }
    }
    Ok(out)
}

fn antipode_of_mode(
    ctx: &GradingContext,
    table: &BTreeMap<(usize, usize, usize), AlgebraElement>,
    a: usize,
    b: usize,
    n: usize,
) -> AlgebraElement {
    if n == 0 {
        mode_element(ctx, a, b, 0)
    } else {
        table[&(a, b, n)].clone()
    }
}

/// Outcome of one Hopf-axiom check: `None` on success, else a description
/// of the first failing coefficient.
pub type Witness = Option<String>;

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ = Δ^{(2)}` with shifts `(0, α_2, α_3)`, to `u^{-order}`.
pub fn check_coassociativity(
    ctx: &GradingContext,
    a: usize,
    b: usize,
    order: usize,
    alpha2: &Rational,
    alpha3: &Rational,
) -> Result<Witness> {
    let zero = Rational::zero();
    let triple = coproduct_symbolic(ctx, a, b, order, &[zero.clone(), alpha2.clone(), alpha3.clone()])?;
    let outer_left = coproduct_symbolic(ctx, a, b, order, &[zero.clone(), alpha3.clone()])?;
    let left = apply_coproduct_to_slot(ctx, &outer_left, 0, alpha2)?;
    let outer_right = coproduct_symbolic(ctx, a, b, order, &[zero, alpha2.clone()])?;
    let right = apply_coproduct_to_slot(ctx, &outer_right, 1, &(alpha3 - alpha2))?;
    Ok(first_difference(&triple, &left, "(Δ⊗id)Δ").or_else(|| first_difference(&triple, &right, "(id⊗Δ)Δ")))
}

/// `(ε ⊗ id)Δ_α(t(u)) = t(u + α)` and `(id ⊗ ε)Δ_α(t(u)) = t(u)`.
pub fn check_counit_laws(ctx: &GradingContext, a: usize, b: usize, order: usize, alpha: &Rational) -> Result<Witness> {
    let zero = Rational::zero();
    let delta = coproduct_symbolic(ctx, a, b, order, &[zero.clone(), alpha.clone()])?;
    let left = apply_counit_to_slot(&delta, 0)?;
    let right = apply_counit_to_slot(&delta, 1)?;
    let shifted = generator_series(ctx, a, b, order, alpha);
    let plain = generator_series(ctx, a, b, order, &zero);
    Ok(first_difference(&shifted, &left, "(ε⊗id)Δ").or_else(|| first_difference(&plain, &right, "(id⊗ε)Δ")))
}

/// `m(S ⊗ id)Δ = m(id ⊗ S)Δ = ε` on `t^a_b(u)` to `u^{-order}`.
pub fn check_antipode_laws(ctx: &GradingContext, order: usize) -> Result<Witness> {
    let mut rw = Rewriter::new(*ctx);
    let table = antipode_images_with(&mut rw, order)?;
    for a in ctx.indices() {
        for b in ctx.indices() {
            for r in 0..=order {
                let mut left = AlgebraElement::zero();
                let mut right = AlgebraElement::zero();
                for c in ctx.indices() {
                    let s = sign(chain_sign(ctx, &[b, c, a]));
                    for p in 0..=r {
                        let x = mode_element(ctx, c, b, p);
                        let y = mode_element(ctx, a, c, r - p);
                        if x.is_zero() || y.is_zero() {
                            continue;
                        }
                        let sx = antipode_of_mode(ctx, &table, c, b, p);
                        let sy = antipode_of_mode(ctx, &table, a, c, r - p);
                        left.add_scaled(&rw.multiply(&sx, &y), &s);
                        right.add_scaled(&rw.multiply(&x, &sy), &s);
                    }
                }
                let expected = if r == 0 && a == b {
                    AlgebraElement::scalar(sign(ctx.grade(b)))
                } else {
                    AlgebraElement::zero()
                };
                if left != expected {
                    return Ok(Some(format!("m(S⊗id)Δ(t^{a}_{b}) at u^-{r}: {left}")));
                }
                if right != expected {
                    return Ok(Some(format!("m(id⊗S)Δ(t^{a}_{b}) at u^-{r}: {right}")));
                }
            }
        }
    }
    Ok(None)
}

fn first_difference(expected: &TensorSeries, got: &TensorSeries, label: &str) -> Witness {
    if expected.slots != got.slots {
        return Some(format!("{label}: slot count {} vs {}", got.slots, expected.slots));
    }
    for r in 0..=expected.order().min(got.order()) {
        if expected.orders[r] != got.orders[r] {
            return Some(format!("{label}: mismatch at u^-{r}"));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{q, qf};

    fn ctx(m: usize, n: usize) -> GradingContext {
        GradingContext::new(m, n).unwrap()
    }

    #[test]
    fn counit_examples() {
        let c = ctx(1, 1);
        assert_eq!(counit(&c, &AlgebraElement::unit()), q(1));
        assert_eq!(counit(&c, &AlgebraElement::generator(Gen::new(1, 2, 3))), q(0));
        let mut x = AlgebraElement::scalar(q(3));
        x.add_term(vec![Gen::new(1, 1, 2)], q(1));
        assert_eq!(counit(&c, &x), q(3));
    }

    #[test]
    fn automorphism_examples() {
        let c = ctx(1, 1);
        let off = AlgebraElement::generator(Gen::new(1, 2, 1));
        assert_eq!(apply_automorphism(&c, &[], &off), off);
        assert_eq!(apply_automorphism(&c, &[q(5)], &off), off);
        for a in 1..=2 {
            let d = AlgebraElement::generator(Gen::new(a, a, 1));
            let mut want = d.clone();
            want.add_term(Vec::new(), q(5) * sign(c.grade(a)));
            assert_eq!(apply_automorphism(&c, &[q(5)], &d), want);
        }
    }

    #[test]
    fn coproduct_low_orders() {
        let c = ctx(1, 1);
        let one = coproduct_symbolic(&c, 1, 2, 2, &[q(0)]).unwrap();
        assert_eq!(one, generator_series(&c, 1, 2, 2, &q(0)));
        for (a, b) in c.pairs() {
            let d = coproduct_symbolic(&c, a, b, 1, &[q(0), qf(1, 2)]).unwrap();
            let lead = d.at(0);
            if a == b {
                assert_eq!(lead.len(), 1);
                assert_eq!(lead[&vec![vec![], vec![]]], sign(c.grade(b)));
            } else {
                assert!(lead.is_empty());
            }
        }
        assert!(coproduct_symbolic(&c, 1, 1, 1, &[q(1), q(0)]).is_err());
    }

    #[test]
    fn hopf_axioms_hold() {
        for c in [ctx(1, 1), ctx(2, 1)] {
            for (a, b) in c.pairs() {
                assert_eq!(check_coassociativity(&c, a, b, 3, &qf(1, 2), &q(-2)).unwrap(), None);
                assert_eq!(check_counit_laws(&c, a, b, 3, &qf(3, 4)).unwrap(), None);
            }
            assert_eq!(check_antipode_laws(&c, 2).unwrap(), None);
        }
    }

    #[test]
    fn antipode_first_order_is_negation() {
        let c = ctx(1, 1);
        let s = antipode_images(&c, 1).unwrap();
        for ((a, b, n), img) in s {
            assert_eq!(img, AlgebraElement::monomial(vec![Gen::new(a, b, n)], q(-1)));
        }
    }
}
