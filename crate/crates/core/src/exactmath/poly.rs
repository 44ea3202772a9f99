//! Dense univariate polynomials over `Q`, ascending coefficient order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{q, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(q(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![q(0), q(1)])
    }

    /// `x + c`.
    pub fn linear(c: Rational) -> Self {
        Self::new(vec![c, q(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(x + a)`, computed by Horner's rule over polynomials.
    pub fn shift(&self, a: &Rational) -> Self {
        let lin = Polynomial::linear(a.clone());
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.lead().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (qt, r) = self.div_rem(d);
        r.is_zero().then_some(qt)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of `x` as a factor, i.e. the index of the first nonzero coefficient.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Primitive integer polynomial proportional to `self`.
    fn integer_primitive(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Splits off every rational root (with multiplicity).
    ///
    /// Returns the roots, sorted, and the monic cofactor that has no rational
    /// root. Candidates come from the rational root theorem applied to the
    /// primitive integer form.
    pub fn rational_roots(&self) -> (Vec<Rational>, Polynomial) {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let mut roots = Vec::new();
        let mut rest = self.monic();
        let z = rest.low_order();
        for _ in 0..z {
            roots.push(Rational::zero());
        }
        rest = Polynomial::new(rest.coeffs[z..].to_vec());
        loop {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let ints = rest.integer_primitive();
            let c0 = ints[0].abs();
            let cn = ints.last().unwrap().abs();
            let mut found = None;
            'search: for p in divisors(&c0) {
                for qd in divisors(&cn) {
                    for s in [1i64, -1] {
                        let r = Rational::new(&p * BigInt::from(s), qd.clone());
                        if rest.eval(&r).is_zero() {
                            found = Some(r);
                            break 'search;
                        }
                    }
                }
            }
            match found {
                Some(r) => {
                    rest = rest
                        .exact_div(&Polynomial::linear(-r.clone()))
                        .expect("root divides");
                    roots.push(r);
                }
                None => break,
            }
        }
        roots.sort();
        (roots, rest.monic())
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::one(), |acc, r| &acc * &Polynomial::linear(-r.clone()))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = super::rational::to_canonical(c);
            parts.push(match i {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if c.is_one() => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Checks a polynomial is monic, for inputs that must be.
pub fn require_monic(p: &Polynomial, what: &str) -> Result<()> {
    if p.is_monic() {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{what} must be monic, got {p}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::qf;

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[-1, 1]); // x - 1
        assert_eq!(a.exact_div(&b).unwrap(), p(&[1, 1]));
        assert_eq!(Polynomial::gcd(&a, &p(&[1, 1]).scale(&q(3))), p(&[1, 1]));
        assert_eq!(Polynomial::gcd(&p(&[1, 1]), &p(&[2, 1])), Polynomial::one());
        assert!(a.exact_div(&p(&[2, 1])).is_none());
    }

    #[test]
    fn shift_is_taylor() {
        let a = p(&[0, 0, 1]); // x^2
        assert_eq!(a.shift(&q(1)), p(&[1, 2, 1]));
        assert_eq!(a.shift(&q(1)).shift(&q(-1)), a);
    }

    #[test]
    fn rational_roots_split() {
        // (x - 1/2)(x + 3)^2 (x^2 + 1)
        let f = &(&(&Polynomial::linear(qf(-1, 2)) * &p(&[3, 1]).pow(2)) * &p(&[1, 0, 1]))
            .scale(&q(6));
        let (roots, rest) = f.rational_roots();
        assert_eq!(roots, vec![q(-3), q(-3), qf(1, 2)]);
        assert_eq!(rest, p(&[1, 0, 1]));
        let (r0, rest0) = p(&[0, 0, 5]).rational_roots();
        assert_eq!(r0, vec![q(0), q(0)]);
        assert_eq!(rest0, Polynomial::one());
    }
}
