//! Normal ordering into the PBW basis.
//!
//! Rewriting rule for an adjacent out-of-order pair `x y`:
//! `x y = (-1)^{[x][y]} y x + [x, y}`, with `[x, y}` the mode relation
//! right-hand side, and `x x = ½ [x, x}` for odd `x`. The leftmost violation
//! is always rewritten first. Every correction term has strictly smaller
//! filtration degree and every swap removes an inversion, so the process
//! terminates.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::element::{is_ordered, AlgebraElement, Gen, RawElement, Word};
use super::grading::GradingContext;
use crate::error::Result;
use crate::exactmath::rational::{qf, sign};
use crate::exactmath::Rational;

/// A mode `t^a_b[n]` with `n >= 0`; level zero is the scalar `(-1)^{[b]} δ^a_b`.
pub enum Mode {
    Gen(Gen),
    Scalar(Rational),
}

pub fn mode(ctx: &GradingContext, a: usize, b: usize, n: usize) -> Mode {
    if n > 0 {
        Mode::Gen(Gen::new(a, b, n))
    } else if a == b {
        Mode::Scalar(sign(ctx.grade(b)))
    } else {
        Mode::Scalar(Rational::zero())
    }
}

/// Right-hand side of `[t^{a1}_{b1}[m], t^{a2}_{b2}[n]}` as raw words:
/// `(-1)^η Σ_{r=0}^{min(m,n)-1} (t^{a2}_{b1}[r] t^{a1}_{b2}[m+n-1-r] - t^{a2}_{b1}[m+n-1-r] t^{a1}_{b2}[r])`
/// with level-zero modes read as constants; the `r = 0` terms are exactly
/// the two Kronecker-delta terms.
pub fn commutator_words(ctx: &GradingContext, x: Gen, y: Gen) -> RawElement {
    let (a1, b1, m) = (x.a, x.b, x.n);
    let (a2, b2, n) = (y.a, y.b, y.n);
    let eta = sign(ctx.eta(a1, b1, a2, b2));
    let mut acc: HashMap<Word, Rational> = HashMap::new();
    let mut push = |c: Rational, l: (usize, usize, usize), r: (usize, usize, usize)| {
        let mut coeff = c;
        let mut word = Vec::with_capacity(2);
        for (a, b, lvl) in [l, r] {
            match mode(ctx, a, b, lvl) {
                Mode::Gen(g) => word.push(g),
                Mode::Scalar(k) => coeff *= k,
            }
        }
        if !coeff.is_zero() {
            *acc.entry(word).or_insert_with(Rational::zero) += coeff;
        }
    };
    let top = m + n - 1;
    for r in 0..m.min(n) {
        push(eta.clone(), (a2, b1, r), (a1, b2, top - r));
        push(-eta.clone(), (a2, b1, top - r), (a1, b2, r));
    }
    let mut out: RawElement = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect();
    out.sort_by(|l, r| l.1.cmp(&r.1));
    out
}

/// Memoizing normal-ordering engine for one grading context.
#[derive(Debug)]
pub struct Rewriter {
    ctx: GradingContext,
    memo: HashMap<Word, AlgebraElement>,
}

impl Rewriter {
    pub fn new(ctx: GradingContext) -> Self {
        Rewriter {
            ctx,
            memo: HashMap::new(),
        }
    }

    pub fn ctx(&self) -> &GradingContext {
        &self.ctx
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    /// PBW expansion of a single word.
    pub fn normal_word(&mut self, word: &[Gen]) -> AlgebraElement {
        if let Some(e) = self.memo.get(word) {
            return e.clone();
        }
        let ctx = self.ctx;
        let violation = word.windows(2).position(|w| {
            let (k0, k1) = (w[0].key(&ctx), w[1].key(&ctx));
            k0 > k1 || (k0 == k1 && w[0].is_odd(&ctx))
        });
        let Some(i) = violation else {
            return AlgebraElement::monomial(word.to_vec(), Rational::one());
        };
        let (x, y) = (word[i], word[i + 1]);
        let splice = |mid: &[Gen]| -> Word {
            let mut w = Vec::with_capacity(word.len() + mid.len());
            w.extend_from_slice(&word[..i]);
            w.extend_from_slice(mid);
            w.extend_from_slice(&word[i + 2..]);
            w
        };
        let mut result = AlgebraElement::zero();
        let corrections = if x == y {
            // odd square: x x = ½ [x, x}
            let half = qf(1, 2);
            commutator_words(&ctx, x, x)
                .into_iter()
                .map(|(c, w)| (c * &half, w))
                .collect()
        } else {
            let s = sign(x.parity(&ctx) * y.parity(&ctx));
            let swapped = self.normal_word(&splice(&[y, x]));
            result.add_scaled(&swapped, &s);
            commutator_words(&ctx, x, y)
        };
        for (c, mid) in corrections {
            let e = self.normal_word(&splice(&mid));
            result.add_scaled(&e, &c);
        }
        self.memo.insert(word.to_vec(), result.clone());
        result
    }

    pub fn straighten(&mut self, raw: &RawElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (c, w) in raw {
            let e = self.normal_word(w);
            out.add_scaled(&e, c);
        }
        out
    }

    /// Normal form of an element whose terms may be unordered.
    pub fn renormalize(&mut self, x: &AlgebraElement) -> AlgebraElement {
        if x.all_ordered(&self.ctx) {
            return x.clone();
        }
        let raw: RawElement = x.terms().map(|(w, c)| (c.clone(), w.clone())).collect();
        self.straighten(&raw)
    }

    pub fn multiply(&mut self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (wx, cx) in x.terms() {
            for (wy, cy) in y.terms() {
                let mut w = wx.clone();
                w.extend_from_slice(wy);
                let e = if is_ordered(&self.ctx, &w) {
                    AlgebraElement::monomial(w, Rational::one())
                } else {
                    self.normal_word(&w)
                };
                out.add_scaled(&e, &(cx * cy));
            }
        }
        out
    }

    /// `[x, y}` for homogeneous generators, straightened.
    pub fn commutator_rhs(&mut self, x: Gen, y: Gen) -> AlgebraElement {
        let raw = commutator_words(&self.ctx, x, y);
        self.straighten(&raw)
    }
}

/// One-shot straightening of a raw element.
pub fn straighten(ctx: &GradingContext, raw: &RawElement) -> AlgebraElement {
    Rewriter::new(*ctx).straighten(raw)
}

/// One-shot product.
pub fn multiply(ctx: &GradingContext, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    Rewriter::new(*ctx).multiply(x, y)
}

/// One-shot right-hand side of the mode relation, with index validation.
pub fn commutator_rhs(
    ctx: &GradingContext,
    a1: usize,
    b1: usize,
    m: usize,
    a2: usize,
    b2: usize,
    n: usize,
) -> Result<AlgebraElement> {
    let x = Gen::checked(ctx, a1, b1, m)?;
    let y = Gen::checked(ctx, a2, b2, n)?;
    Ok(Rewriter::new(*ctx).commutator_rhs(x, y))
}
