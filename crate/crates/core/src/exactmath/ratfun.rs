//! Rational functions over `Q` in one variable, kept in lowest terms with a
//! monic denominator so that equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::{q, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Polynomial,
    den: Polynomial,
}

impl RatFun {
    /// Reduces `num/den`: cancels the gcd and makes the denominator monic.
    pub fn normalize(num: Polynomial, den: Polynomial) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = Polynomial::gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let l = den.lead().recip();
        Ok(RatFun {
            num: num.scale(&l),
            den: den.scale(&l),
        })
    }

    fn new_unchecked(num: Polynomial, den: Polynomial) -> RatFun {
        RatFun::normalize(num, den).expect("nonzero denominator")
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun::constant(q(1))
    }

    pub fn constant(c: Rational) -> RatFun {
        RatFun {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    pub fn from_poly(p: Polynomial) -> RatFun {
        RatFun {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// `sum_k c_k x^{-k}` for a finite coefficient list `c_0, c_1, ...`.
    pub fn from_inverse_series(cs: &[Rational]) -> RatFun {
        if cs.is_empty() {
            return RatFun::zero();
        }
        let k = cs.len() - 1;
        let num = Polynomial::new(cs.iter().rev().cloned().collect());
        let den = Polynomial::x().pow(k);
        RatFun::new_unchecked(num, den)
    }

    /// `c + d/x`.
    pub fn affine_inverse(c: Rational, d: Rational) -> RatFun {
        RatFun::from_inverse_series(&[c, d])
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.den.degree() == Some(0) && self.num.degree().unwrap_or(0) == 0
    }

    /// Finite value at infinity, or `None` for a pole there.
    pub fn value_at_infinity(&self) -> Option<Rational> {
        let dn = self.num.degree();
        let dd = self.den.degree().unwrap();
        match dn {
            None => Some(Rational::zero()),
            Some(d) if d < dd => Some(Rational::zero()),
            Some(d) if d == dd => Some(self.num.lead()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::normalize(self.den.clone(), self.num.clone())
    }

    /// `f(x + a)`.
    pub fn shift(&self, a: &Rational) -> RatFun {
        if a.is_zero() {
            return self.clone();
        }
        RatFun::new_unchecked(self.num.shift(a), self.den.shift(a))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Coefficients `c_0..=c_order` of the expansion `f = sum c_k x^{-k}` at infinity.
    pub fn series_expand(&self, order: usize) -> Result<Vec<Rational>> {
        let dd = self.den.degree().unwrap();
        let mut out = vec![Rational::zero(); order + 1];
        let Some(dn) = self.num.degree() else {
            return Ok(out);
        };
        if dn > dd {
            return Err(Error::PoleAtInfinity);
        }
        // In y = 1/x: f = y^(dd-dn) * N~(y) / D~(y) with the reversed
        // coefficient lists; D~(0) = 1 since the denominator is monic.
        let offset = dd - dn;
        let nrev: Vec<Rational> = self.num.coeffs().iter().rev().cloned().collect();
        let drev: Vec<Rational> = self.den.coeffs().iter().rev().cloned().collect();
        let need = order + 1 - offset.min(order + 1);
        let mut s: Vec<Rational> = Vec::with_capacity(need);
        for k in 0..need {
            let mut c = nrev.get(k).cloned().unwrap_or_else(Rational::zero);
            for j in 1..=k.min(drev.len() - 1) {
                c -= &drev[j] * &s[k - j];
            }
            s.push(c);
        }
        for (k, c) in s.into_iter().enumerate() {
            out[k + offset] = c;
        }
        Ok(out)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.degree() == Some(0) {
            return self.num.fmt_var(var);
        }
        format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
    }
}

/// Free-function form of [`RatFun::normalize`].
pub fn ratfun_normalize(num: Polynomial, den: Polynomial) -> Result<RatFun> {
    RatFun::normalize(num, den)
}

/// Free-function form of [`RatFun::series_expand`].
pub fn series_expand(f: &RatFun, order: usize) -> Result<Vec<Rational>> {
    f.series_expand(order)
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::new_unchecked(&self.num + &o.num, self.den.clone());
        }
        RatFun::new_unchecked(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        RatFun::new_unchecked(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        assert!(!o.is_zero(), "division by the zero rational function");
        RatFun::new_unchecked(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
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
    fn normalize_examples() {
        let f = RatFun::normalize(p(&[2, 2]), p(&[0, 2])).unwrap();
        assert_eq!((f.num(), f.den()), (&p(&[1, 1]), &p(&[0, 1])));
        let f = RatFun::normalize(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!((f.num(), f.den()), (&p(&[1, 1]), &p(&[1])));
        let f = RatFun::normalize(Polynomial::zero(), p(&[3, 1])).unwrap();
        assert_eq!((f.num(), f.den()), (&Polynomial::zero(), &p(&[1])));
        assert!(matches!(
            RatFun::normalize(p(&[1]), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn series_examples() {
        let f = RatFun::normalize(p(&[1, 1]), p(&[0, 1])).unwrap();
        assert_eq!(f.series_expand(2).unwrap(), vec![q(1), q(1), q(0)]);
        // 1/(x+1) = x^-1 - x^-2 + x^-3 - ...
        let f = RatFun::normalize(p(&[1]), p(&[1, 1])).unwrap();
        assert_eq!(f.series_expand(3).unwrap(), vec![q(0), q(1), q(-1), q(1)]);
        assert_eq!(
            RatFun::constant(q(-1)).series_expand(2).unwrap(),
            vec![q(-1), q(0), q(0)]
        );
        assert!(matches!(
            RatFun::from_poly(p(&[0, 1])).series_expand(1),
            Err(Error::PoleAtInfinity)
        ));
    }

    #[test]
    fn field_ops() {
        let f = RatFun::normalize(p(&[1, 3]), p(&[2, 0, 1])).unwrap();
        let g = RatFun::normalize(p(&[-1, 1]), p(&[5, 1])).unwrap();
        assert_eq!(&(&f * &g) / &g, f);
        assert_eq!(&(&f + &g) - &g, f);
        assert_eq!(f.shift(&qf(1, 3)).shift(&qf(-1, 3)), f);
        assert_eq!(
            RatFun::from_inverse_series(&[q(1), q(2)]),
            RatFun::normalize(p(&[2, 1]), p(&[0, 1])).unwrap()
        );
    }
}
