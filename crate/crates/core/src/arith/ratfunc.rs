//! Rational functions in `t` over a finite field.

use std::fmt;

use super::{Field, FqConfig, FqElem, Poly, Ring};

/// `num/den` with `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: Poly<FqElem>,
    den: Poly<FqElem>,
}

impl RatFunc {
    /// Panics if `den` is zero.
    pub fn new(num: Poly<FqElem>, den: Poly<FqElem>) -> RatFunc {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero(den.zero_elem().config());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lc = den.lc().inverse().expect("nonzero");
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(num: Poly<FqElem>) -> RatFunc {
        let one = Poly::one(num.zero_elem());
        RatFunc { num, den: one }
    }

    pub fn zero(cfg: &FqConfig) -> RatFunc {
        RatFunc { num: Poly::zero(&cfg.zero()), den: Poly::one(&cfg.zero()) }
    }

    pub fn constant(a: FqElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(a))
    }

    /// The variable `t`.
    pub fn t(cfg: &FqConfig) -> RatFunc {
        RatFunc::from_poly(Poly::x(&cfg.zero()))
    }

    pub fn config(&self) -> &FqConfig {
        self.num.zero_elem().config()
    }

    pub fn num(&self) -> &Poly<FqElem> {
        &self.num
    }

    pub fn den(&self) -> &Poly<FqElem> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Coefficient-wise `c -> c^(p^e)`; fixes `t`.
    pub fn frobenius(&self, e: usize) -> RatFunc {
        let z = self.num.zero_elem().clone();
        RatFunc {
            num: self.num.map(&z, |c| c.frobenius(e)),
            den: self.den.map(&z, |c| c.frobenius(e)),
        }
    }

    pub fn map_coeffs(&self, cfg: &FqConfig, f: impl Fn(&FqElem) -> FqElem) -> RatFunc {
        let z = cfg.zero();
        RatFunc::new(self.num.map(&z, &f), self.den.map(&z, &f))
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> RatFunc {
        RatFunc::zero(self.config())
    }

    fn one_like(&self) -> RatFunc {
        RatFunc::constant(self.config().one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn plus(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.plus(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.times(&o.den).plus(&o.num.times(&self.den)), self.den.times(&o.den))
    }

    fn minus(&self, o: &RatFunc) -> RatFunc {
        self.plus(&o.negate())
    }

    fn times(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        RatFunc::new(self.num.times(&o.num), self.den.times(&o.den))
    }

    fn negate(&self) -> RatFunc {
        RatFunc { num: self.num.negate(), den: self.den.clone() }
    }

    fn from_i64_like(&self, n: i64) -> RatFunc {
        RatFunc::constant(self.config().from_i64(n))
    }
}

impl Field for RatFunc {
    fn inverse(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        let f = FqConfig::new(3, 1);
        let t = RatFunc::t(&f);
        let one = t.one_like();
        let x = t.times(&t).plus(&one).divide(&t.times(&t).plus(&one)).unwrap();
        assert!(x.is_one());
        let y = t.plus(&one).inverse().unwrap().times(&t.plus(&one));
        assert!(y.is_one());
        let two_t = t.from_i64_like(2).times(&t);
        let h = one.divide(&two_t).unwrap();
        assert!(h.den().is_monic());
    }
}
