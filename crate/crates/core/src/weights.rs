//! Highest-weight calculus: the ⋆-product, twists by `f(x)`, the
//! finite-dimensionality decision procedure and the factorization into
//! fundamental weights.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::sign;
use crate::exactmath::{Polynomial, RatFun, Rational};
use crate::superalgebra::GradingContext;

/// `Λ(x) = (λ_1(x), ..., λ_{M+N}(x))` with `λ_a(∞) = (−1)^{[a]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    ctx: GradingContext,
    comps: Vec<RatFun>,
}

impl HighestWeight {
    pub fn new(ctx: GradingContext, comps: Vec<RatFun>) -> Result<Self> {
        if comps.len() != ctx.size() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for M+N = {}",
                comps.len(),
                ctx.size()
            )));
        }
        for (i, c) in comps.iter().enumerate() {
            let a = i + 1;
            if c.value_at_infinity() != Some(sign(ctx.grade(a))) {
                return Err(Error::Invalid(format!(
                    "λ_{a}(∞) must be {}, got {c}",
                    sign(ctx.grade(a))
                )));
            }
        }
        Ok(HighestWeight { ctx, comps })
    }

    /// The counit weight `((−1)^{[a]})_a`.
    pub fn epsilon(ctx: &GradingContext) -> Self {
        let comps = ctx.indices().map(|a| RatFun::constant(sign(ctx.grade(a)))).collect();
        HighestWeight { ctx: *ctx, comps }
    }

    /// The evaluation weight `λ_a(x) = (−1)^{[a]} + μ_a x^{-1}`.
    pub fn evaluation(ctx: &GradingContext, mu: &[Rational]) -> Result<Self> {
        if mu.len() != ctx.size() {
            return Err(Error::DimensionMismatch(format!("weight of length {}", mu.len())));
        }
        let comps = ctx
            .indices()
            .map(|a| RatFun::affine_inverse(sign(ctx.grade(a)), mu[a - 1].clone()))
            .collect();
        HighestWeight::new(*ctx, comps)
    }

    pub fn ctx(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn components(&self) -> &[RatFun] {
        &self.comps
    }

    /// `λ_a`, 1-based.
    pub fn component(&self, a: usize) -> &RatFun {
        &self.comps[a - 1]
    }

    /// `λ_a(x + α)` componentwise.
    pub fn shift(&self, alpha: &Rational) -> Self {
        HighestWeight {
            ctx: self.ctx,
            comps: self.comps.iter().map(|c| c.shift(alpha)).collect(),
        }
    }

    /// `λ_a / λ_{a+1}`, 1-based `a < M+N`.
    pub fn ratio(&self, a: usize) -> RatFun {
        &self.comps[a - 1] / &self.comps[a]
    }
}

/// `(μ ⋆ ν)_a = (−1)^{[a]} μ_a ν_a`.
pub fn star_product(mu: &HighestWeight, nu: &HighestWeight) -> Result<HighestWeight> {
    if mu.ctx != nu.ctx {
        return Err(Error::ContextMismatch("⋆-product of weights over different (M, N)".into()));
    }
    let ctx = mu.ctx;
    let comps = mu
        .comps
        .iter()
        .zip(&nu.comps)
        .enumerate()
        .map(|(i, (x, y))| (x * y).scale(&sign(ctx.grade(i + 1))))
        .collect();
    Ok(HighestWeight { ctx, comps })
}

/// ⋆-product of a list; the empty product is the counit weight.
pub fn star_all(ctx: &GradingContext, ws: &[HighestWeight]) -> Result<HighestWeight> {
    let mut acc = HighestWeight::epsilon(ctx);
    for w in ws {
        acc = star_product(&acc, w)?;
    }
    Ok(acc)
}

/// `Λ(x) ↦ f(x) Λ(x)` for `f(∞) = 1`.
pub fn twist(f: &RatFun, l: &HighestWeight) -> Result<HighestWeight> {
    if f.value_at_infinity() != Some(Rational::one()) {
        return Err(Error::InvalidTwist(format!("f(∞) must be 1, got f = {f}")));
    }
    Ok(HighestWeight {
        ctx: l.ctx,
        comps: l.comps.iter().map(|c| c * f).collect(),
    })
}

/// `1 + f_1 x^{-1} + ... + f_K x^{-K}`.
pub fn twist_series(f: &[Rational]) -> RatFun {
    let mut cs = vec![Rational::one()];
    cs.extend_from_slice(f);
    RatFun::from_inverse_series(&cs)
}

/// Outcome of [`solve_shift_polynomial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftSolution {
    Found(Polynomial),
    None(String),
    Unsupported(String),
}

/// Offsets `c` of a monic polynomial split as `Π (x + c)`, or the
/// irreducible leftover.
fn split_offsets(p: &Polynomial) -> std::result::Result<Vec<Rational>, Polynomial> {
    let (roots, rest) = p.rational_roots();
    if rest.degree().unwrap_or(0) > 0 {
        return Err(rest);
    }
    let mut offs: Vec<Rational> = roots.into_iter().map(|r| -r).collect();
    offs.sort();
    Ok(offs)
}

/// Fractional part in `[0, 1)`, the residue class of an offset mod `Z`.
fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Monic `P` with `P(x + shift) / P(x) = f`, built from arithmetic chains:
/// a chain `(x+b)(x+b+s)...(x+b+(L−1)s)` contributes `(x+b+Ls)/(x+b)`.
pub fn solve_shift_polynomial(f: &RatFun, shift: i8) -> ShiftSolution {
    assert!(shift == 1 || shift == -1, "shift must be ±1");
    let s = Rational::from_integer(shift.into());
    if f.is_zero() {
        return ShiftSolution::None("f is zero".into());
    }
    let (dn, dd) = (f.num().degree().unwrap(), f.den().degree().unwrap());
    if dn != dd {
        return ShiftSolution::None(format!("numerator degree {dn} differs from denominator degree {dd}"));
    }
    if f.value_at_infinity() != Some(Rational::one()) {
        return ShiftSolution::None(format!("f(∞) ≠ 1 for f = {f}"));
    }
    let tops = match split_offsets(f.num()) {
        Ok(v) => v,
        Err(rest) => return ShiftSolution::Unsupported(format!("numerator factor {rest} has no rational root")),
    };
    let bottoms = match split_offsets(f.den()) {
        Ok(v) => v,
        Err(rest) => return ShiftSolution::Unsupported(format!("denominator factor {rest} has no rational root")),
    };
    let mut classes: BTreeMap<Rational, (Vec<Rational>, Vec<Rational>)> = BTreeMap::new();
    for a in tops {
        classes.entry(frac(&a)).or_default().0.push(a);
    }
    for b in bottoms {
        classes.entry(frac(&b)).or_default().1.push(b);
    }
    let mut p = Polynomial::one();
    for (_, (mut tops, mut bottoms)) in classes {
        if tops.len() != bottoms.len() {
            return ShiftSolution::None("numerator and denominator offsets do not pair up mod 1".into());
        }
        tops.sort();
        bottoms.sort();
        for (a, b) in tops.iter().zip(&bottoms) {
            // a = b + L s with L ≥ 1
            let l = (a - b) * &s;
            if !l.is_positive() {
                return ShiftSolution::None(format!("offset {a} is not reached from {b} by steps of {shift}"));
            }
            let l = l.to_integer();
            let mut j = num_bigint::BigInt::zero();
            while j < l {
                let c = b + &s * Rational::from_integer(j.clone());
                p = &p * &Polynomial::linear(c);
                j += 1;
            }
        }
    }
    ShiftSolution::Found(p)
}

/// Drinfeld data: `P_a` for `a ≠ M`; for `a = M` the cleared forms
/// `x^K Q̃_M(x) = Π (x + r_1)` and `x^K Q_M(x) = −Π (x + r_2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldData {
    pub p: BTreeMap<usize, Polynomial>,
    pub qtilde_m: Polynomial,
    pub q_m: Polynomial,
    pub k_m: usize,
    pub r1: Vec<Rational>,
    pub r2: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FdVerdict {
    FiniteDimensional(DrinfeldData),
    NotFiniteDimensional { index: usize, reason: String },
    Unsupported { index: usize, reason: String },
}

impl FdVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            FdVerdict::FiniteDimensional(_) => "finite-dimensional",
            FdVerdict::NotFiniteDimensional { .. } => "not-finite-dimensional",
            FdVerdict::Unsupported { .. } => "unsupported-factorization",
        }
    }

    pub fn data(&self) -> Option<&DrinfeldData> {
        match self {
            FdVerdict::FiniteDimensional(d) => Some(d),
            _ => None,
        }
    }
}

pub fn check_finite_dim(l: &HighestWeight) -> FdVerdict {
    let ctx = l.ctx;
    let m = ctx.m();
    let mut p = BTreeMap::new();
    for a in (1..ctx.size()).filter(|&a| a != m) {
        let shift = if ctx.grade(a) == 0 { 1 } else { -1 };
        match solve_shift_polynomial(&l.ratio(a), shift) {
            ShiftSolution::Found(poly) => {
                p.insert(a, poly);
            }
            ShiftSolution::None(reason) => return FdVerdict::NotFiniteDimensional { index: a, reason },
            ShiftSolution::Unsupported(reason) => return FdVerdict::Unsupported { index: a, reason },
        }
    }
    // λ_M/λ_{M+1} = −n/d with n, d monic and coprime, deg n = deg d = K
    let rho = l.ratio(m);
    let n = -rho.num();
    let d = rho.den().clone();
    if !n.is_monic() || n.degree() != d.degree() {
        return FdVerdict::NotFiniteDimensional {
            index: m,
            reason: format!("λ_M/λ_(M+1) = {rho} does not tend to −1"),
        };
    }
    let r1 = match split_offsets(&n) {
        Ok(v) => v,
        Err(rest) => {
            return FdVerdict::Unsupported {
                index: m,
                reason: format!("factor {rest} of the numerator of λ_M/λ_(M+1) has no rational root"),
            }
        }
    };
    let r2 = match split_offsets(&d) {
        Ok(v) => v,
        Err(rest) => {
            return FdVerdict::Unsupported {
                index: m,
                reason: format!("factor {rest} of the denominator of λ_M/λ_(M+1) has no rational root"),
            }
        }
    };
    FdVerdict::FiniteDimensional(DrinfeldData {
        p,
        k_m: r1.len(),
        qtilde_m: n,
        q_m: -&d,
        r1,
        r2,
    })
}

/// One factor `μ^{(t,i)}`; `t` is the row index `1..M+N−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalFactor {
    pub t: usize,
    pub i: usize,
    pub weight: HighestWeight,
}

/// Fundamental factors of the data `D`, normalized so each is an evaluation
/// weight: for `t ≠ M` and each offset `p` of `P_t`,
/// `μ_a = (−1)^{[a]}(1 + (p + (−1)^{[t]})/x)` for `a ≤ t` and
/// `(−1)^{[a]}(1 + p/x)` for `a > t`; for `t = M`, `μ_a = 1 + r_1/x` for
/// `a ≤ M` and `−(1 + r_2/x)` for `a > M`.
pub fn fundamental_factors(ctx: &GradingContext, d: &DrinfeldData) -> Result<Vec<FundamentalFactor>> {
    let mut out = Vec::new();
    for t in 1..ctx.size() {
        let offsets: Vec<(Rational, Rational)> = if t == ctx.m() {
            d.r1.iter().cloned().zip(d.r2.iter().cloned()).collect()
        } else {
            let poly = d
                .p
                .get(&t)
                .ok_or_else(|| Error::InconsistentDrinfeld(format!("missing P_{t}")))?;
            let offs = split_offsets(poly)
                .map_err(|r| Error::InconsistentDrinfeld(format!("P_{t} has irreducible factor {r}")))?;
            let st = sign(ctx.grade(t));
            offs.into_iter().map(|p| (&p + &st, p)).collect()
        };
        for (i, (upper, lower)) in offsets.into_iter().enumerate() {
            let mu: Vec<Rational> = ctx
                .indices()
                .map(|a| {
                    let s = sign(ctx.grade(a));
                    if a <= t {
                        s * &upper
                    } else {
                        s * &lower
                    }
                })
                .collect();
            out.push(FundamentalFactor {
                t,
                i: i + 1,
                weight: HighestWeight::evaluation(ctx, &mu)?,
            });
        }
    }
    Ok(out)
}

/// `(f, factors)` with `twist(f, ⋆ factors) = L`, verified exactly.
pub fn factor_into_fundamentals(l: &HighestWeight, d: &DrinfeldData) -> Result<(RatFun, Vec<FundamentalFactor>)> {
    let ctx = l.ctx;
    let factors = fundamental_factors(&ctx, d)?;
    let ws: Vec<HighestWeight> = factors.iter().map(|f| f.weight.clone()).collect();
    let prod = star_all(&ctx, &ws)?;
    let f = l.component(1) / prod.component(1);
    let back = twist(&f, &prod).map_err(|e| Error::InconsistentDrinfeld(e.to_string()))?;
    if &back != l {
        return Err(Error::InconsistentDrinfeld(
            "the ⋆-product of the fundamental factors does not reproduce the weight up to a twist".into(),
        ));
    }
    Ok((f, factors))
}
