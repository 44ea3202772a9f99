//! Gradation, sign rules and the PBW ordering of generator index pairs.

use crate::error::{Error, Result};

/// The superalgebra `gl(M|N)` index data: `[a] = 0` for `a <= M`, `1` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradingContext {
    m: usize,
    n: usize,
}

impl GradingContext {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Invalid(format!(
                "gl(M|N) requires M >= 1 and N >= 1, got ({m}, {n})"
            )));
        }
        Ok(GradingContext { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `M + N`.
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    /// Indices `1..=M+N`.
    pub fn indices(&self) -> impl Iterator<Item = usize> + Clone {
        1..=self.size()
    }

    /// All ordered index pairs `(a, b)`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.indices()
            .flat_map(move |a| self.indices().map(move |b| (a, b)))
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.size() {
            return Err(Error::IndexOutOfRange(format!(
                "index {a} outside 1..={}",
                self.size()
            )));
        }
        Ok(())
    }

    /// The gradation `[a]`.
    pub fn grade(&self, a: usize) -> u8 {
        debug_assert!(a >= 1 && a <= self.size());
        u8::from(a > self.m)
    }

    /// Parity of `E^a_b` / `t^a_b[n]`: `[a] + [b] mod 2`.
    pub fn pair_parity(&self, a: usize, b: usize) -> u8 {
        (self.grade(a) + self.grade(b)) % 2
    }

    /// `η(a1, b1; a2, b2) = [a1][a2] + [b1]([a1] + [a2]) mod 2`.
    pub fn eta(&self, a1: usize, b1: usize, a2: usize, _b2: usize) -> u8 {
        let (ga1, gb1, ga2) = (self.grade(a1), self.grade(b1), self.grade(a2));
        (ga1 * ga2 + gb1 * (ga1 + ga2)) % 2
    }

    /// The ordering key of a pair: block first, then position inside the block.
    ///
    /// Within a block keys ascend with `≻`, so sorting by key places a factor
    /// for `p` to the right of one for `p'` exactly when `p ≻ p'`.
    pub fn pair_key(&self, a: usize, b: usize) -> (Block, i64, i64) {
        let (a, b) = (a as i64, b as i64);
        let class = self.classify(a as usize, b as usize);
        match class {
            PairClass::Diagonal => (Block::Diagonal, -a, 0),
            PairClass::Positive(_) => (Block::from_class(class), -a, b),
            PairClass::Negative(_) => (Block::from_class(class), b, -a),
        }
    }

    pub fn classify(&self, a: usize, b: usize) -> PairClass {
        let theta = self.pair_parity(a, b);
        match a.cmp(&b) {
            std::cmp::Ordering::Less => PairClass::Positive(theta),
            std::cmp::Ordering::Equal => PairClass::Diagonal,
            std::cmp::Ordering::Greater => PairClass::Negative(theta),
        }
    }
}

/// Free-function form of [`GradingContext::eta`] with range checks.
pub fn eta_sign(ctx: &GradingContext, a1: usize, b1: usize, a2: usize, b2: usize) -> Result<u8> {
    for i in [a1, b1, a2, b2] {
        ctx.check_index(i)?;
    }
    Ok(ctx.eta(a1, b1, a2, b2))
}

/// Membership in `Φ_+^{(θ)}`, `Φ_0` or `Φ_-^{(θ)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClass {
    Positive(u8),
    Diagonal,
    Negative(u8),
}

/// The five blocks of an ordered PBW monomial, left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    NegativeOdd,
    NegativeEven,
    Diagonal,
    PositiveEven,
    PositiveOdd,
}

impl Block {
    fn from_class(c: PairClass) -> Block {
        match c {
            PairClass::Negative(1) => Block::NegativeOdd,
            PairClass::Negative(_) => Block::NegativeEven,
            PairClass::Diagonal => Block::Diagonal,
            PairClass::Positive(0) => Block::PositiveEven,
            PairClass::Positive(_) => Block::PositiveOdd,
        }
    }
}

/// The total order `≻` on index pairs, straight from its definition:
/// `Φ_+ ≻ Φ_0 ≻ Φ_-`; inside `Φ_+`, `(a,b) ≻ (c,d)` iff `a < c` or
/// (`a = c` and `b > d`); inside `Φ_-`, `p ≻ q` iff `p̄ ≺ q̄`; and
/// `(a,a) ≻ (b,b)` iff `a < b`.
pub fn pair_succ(p: (usize, usize), q: (usize, usize)) -> bool {
    fn rank(p: (usize, usize)) -> u8 {
        match p.0.cmp(&p.1) {
            std::cmp::Ordering::Less => 2,
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => 0,
        }
    }
    let (rp, rq) = (rank(p), rank(q));
    if rp != rq {
        return rp > rq;
    }
    match rp {
        2 => p.0 < q.0 || (p.0 == q.0 && p.1 > q.1),
        1 => p.0 < q.0,
        _ => pair_succ((q.1, q.0), (p.1, p.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_examples() {
        let c11 = GradingContext::new(1, 1).unwrap();
        assert_eq!(eta_sign(&c11, 1, 2, 2, 1).unwrap(), 1);
        assert_eq!(eta_sign(&c11, 1, 1, 2, 2).unwrap(), 0);
        let c31 = GradingContext::new(3, 1).unwrap();
        for a1 in 1..=3 {
            for b1 in 1..=3 {
                for a2 in 1..=3 {
                    for b2 in 1..=3 {
                        assert_eq!(c31.eta(a1, b1, a2, b2), 0);
                    }
                }
            }
        }
        assert!(eta_sign(&c11, 0, 1, 1, 1).is_err());
        assert!(eta_sign(&c11, 1, 3, 1, 1).is_err());
    }

    #[test]
    fn keys_agree_with_succ_inside_blocks() {
        let ctx = GradingContext::new(2, 2).unwrap();
        let pairs: Vec<_> = ctx.pairs().collect();
        for &p in &pairs {
            for &q in &pairs {
                let (kp, kq) = (ctx.pair_key(p.0, p.1), ctx.pair_key(q.0, q.1));
                if kp.0 == kq.0 && p != q {
                    assert_eq!(kp > kq, pair_succ(p, q), "{p:?} vs {q:?}");
                }
            }
        }
        // succ is a strict total order
        for &p in &pairs {
            assert!(!pair_succ(p, p));
            for &q in &pairs {
                if p != q {
                    assert_ne!(pair_succ(p, q), pair_succ(q, p));
                }
            }
        }
    }

    #[test]
    fn rejects_degenerate_context() {
        assert!(GradingContext::new(0, 1).is_err());
        assert!(GradingContext::new(1, 0).is_err());
    }
}
