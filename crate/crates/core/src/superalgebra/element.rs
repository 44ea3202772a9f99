//! Generators, PBW monomials and algebra elements.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::grading::{Block, GradingContext};
use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// The generator `t^a_b[n]`, `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

impl Gen {
    pub fn new(a: usize, b: usize, n: usize) -> Self {
        Gen { a, b, n }
    }

    pub fn checked(ctx: &GradingContext, a: usize, b: usize, n: usize) -> Result<Self> {
        ctx.check_index(a)?;
        ctx.check_index(b)?;
        if n == 0 {
            return Err(Error::InvalidLevel(format!(
                "t^{a}_{b}[0] is a constant, not a generator"
            )));
        }
        Ok(Gen { a, b, n })
    }

    pub fn parity(&self, ctx: &GradingContext) -> u8 {
        ctx.pair_parity(self.a, self.b)
    }

    pub fn is_odd(&self, ctx: &GradingContext) -> bool {
        self.parity(ctx) == 1
    }

    /// Total-order key: block, position within the block by `≻`, then level.
    pub fn key(&self, ctx: &GradingContext) -> (Block, i64, i64, usize) {
        let (blk, k1, k2) = ctx.pair_key(self.a, self.b);
        (blk, k1, k2, self.n)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}_{}[{}]", self.a, self.b, self.n)
    }
}

/// One grouped factor `(t^a_b[n])^k` of a PBW monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub k: usize,
}

/// A word in the generators, in the order written. A PBW monomial is a word
/// whose keys are non-decreasing with no repeated odd generator.
pub type Word = Vec<Gen>;

pub fn is_ordered(ctx: &GradingContext, word: &[Gen]) -> bool {
    word.windows(2).all(|w| {
        let (k0, k1) = (w[0].key(ctx), w[1].key(ctx));
        k0 < k1 || (k0 == k1 && !w[0].is_odd(ctx))
    })
}

/// Groups repeated generators into `(a, b, n, k)` factors.
pub fn group_factors(word: &[Gen]) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::new();
    for g in word {
        match out.last_mut() {
            Some(f) if (f.a, f.b, f.n) == (g.a, g.b, g.n) => f.k += 1,
            _ => out.push(Factor {
                a: g.a,
                b: g.b,
                n: g.n,
                k: 1,
            }),
        }
    }
    out
}

pub fn expand_factors(factors: &[Factor]) -> Word {
    factors
        .iter()
        .flat_map(|f| std::iter::repeat_n(Gen::new(f.a, f.b, f.n), f.k))
        .collect()
}

/// Filtration degree `sum n_i`.
pub fn degree(word: &[Gen]) -> usize {
    word.iter().map(|g| g.n).sum()
}

/// Exact linear combination of PBW monomials. The empty monomial is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(Vec::new(), c);
        e
    }

    pub fn generator(g: Gen) -> Self {
        Self::monomial(vec![g], Rational::one())
    }

    /// Caller guarantees `word` is ordered.
    pub fn monomial(word: Word, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(word, c);
        e
    }

    pub fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> AlgebraElement {
        let mut e = Self::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut e = self.clone();
        e.add_scaled(other, &-Rational::one());
        e
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut e = self.clone();
        e.add_scaled(other, &Rational::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[Gen]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&[])
    }

    /// Maximum filtration degree of the terms; 0 for scalars, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| degree(w)).max()
    }

    pub fn all_ordered(&self, ctx: &GradingContext) -> bool {
        self.terms.keys().all(|w| is_ordered(ctx, w))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let cs = crate::exactmath::rational::to_canonical(c);
                if w.is_empty() {
                    cs
                } else {
                    let ws: Vec<String> = group_factors(w)
                        .iter()
                        .map(|fa| {
                            if fa.k == 1 {
                                format!("t^{}_{}[{}]", fa.a, fa.b, fa.n)
                            } else {
                                format!("t^{}_{}[{}]^{}", fa.a, fa.b, fa.n, fa.k)
                            }
                        })
                        .collect();
                    format!("{cs}*{}", ws.join(" "))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// An unnormalized linear combination of words.
pub type RawElement = Vec<(Rational, Word)>;
