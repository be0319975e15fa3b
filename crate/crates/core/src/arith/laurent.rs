//! Laurent polynomials `sum_{i} c_i π^i` with finitely many nonzero terms.

use std::fmt;

use super::{FqElem, Ring};

/// `coeffs[j]` is the coefficient of `π^(min_deg + j)`. Normalized so that the
/// first and last coefficients are nonzero; zero has no coefficients and
/// `min_deg == 0`.
#[derive(Clone, PartialEq)]
pub struct Laurent<R> {
    zero: R,
    min_deg: i64,
    coeffs: Vec<R>,
}

impl<R: Ring> Laurent<R> {
    pub fn new(zero: R, min_deg: i64, coeffs: Vec<R>) -> Laurent<R> {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let Some(lead) = lead else {
            return Laurent::zero(&zero);
        };
        let tail = coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero exists");
        Laurent {
            zero: zero.zero_like(),
            min_deg: min_deg + lead as i64,
            coeffs: coeffs[lead..=tail].to_vec(),
        }
    }

    pub fn zero(like: &R) -> Laurent<R> {
        Laurent { zero: like.zero_like(), min_deg: 0, coeffs: Vec::new() }
    }

    pub fn constant(a: R) -> Laurent<R> {
        Laurent::monomial(a, 0)
    }

    /// `a * π^d`.
    pub fn monomial(a: R, d: i64) -> Laurent<R> {
        let z = a.zero_like();
        Laurent::new(z, d, vec![a])
    }

    /// `π^d`.
    pub fn pi_pow(like: &R, d: i64) -> Laurent<R> {
        Laurent::monomial(like.one_like(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `ord_π`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_deg)
    }

    /// Largest exponent with nonzero coefficient.
    pub fn max_deg(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_deg + self.coeffs.len() as i64 - 1)
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, d: i64) -> R {
        let j = d - self.min_deg;
        if j < 0 {
            return self.zero.clone();
        }
        self.coeffs.get(j as usize).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (self.min_deg + j as i64, c))
    }

    /// A nonzero monomial `c π^d`, returned as `(c, d)`.
    pub fn as_monomial(&self) -> Option<(R, i64)> {
        (self.coeffs.len() == 1).then(|| (self.coeffs[0].clone(), self.min_deg))
    }

    pub fn map_coeffs<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> Laurent<S> {
        Laurent::new(zero.zero_like(), self.min_deg, self.coeffs.iter().map(f).collect())
    }

    /// Multiply by `π^d`.
    pub fn shift(&self, d: i64) -> Laurent<R> {
        let mut r = self.clone();
        if !r.is_zero() {
            r.min_deg += d;
        }
        r
    }

    fn combine(&self, o: &Laurent<R>, f: impl Fn(&R, &R) -> R) -> Laurent<R> {
        if self.is_zero() && o.is_zero() {
            return self.clone();
        }
        let lo = match (self.valuation(), o.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let hi = self.max_deg().unwrap_or(lo).max(o.max_deg().unwrap_or(lo));
        let c = (lo..=hi).map(|d| f(&self.coeff(d), &o.coeff(d))).collect();
        Laurent::new(self.zero.clone(), lo, c)
    }
}

impl Laurent<FqElem> {
    /// Coefficient-wise Frobenius `c -> c^(p^e)`; fixes `π`.
    pub fn frobenius(&self, e: usize) -> Laurent<FqElem> {
        self.map_coeffs(&self.zero, |c| c.frobenius(e))
    }
}

impl<R: Ring> Ring for Laurent<R> {
    fn zero_like(&self) -> Laurent<R> {
        Laurent::zero(&self.zero)
    }

    fn one_like(&self) -> Laurent<R> {
        Laurent::constant(self.zero.one_like())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, o: &Laurent<R>) -> Laurent<R> {
        self.combine(o, |a, b| a.plus(b))
    }

    fn minus(&self, o: &Laurent<R>) -> Laurent<R> {
        self.combine(o, |a, b| a.minus(b))
    }

    fn times(&self, o: &Laurent<R>) -> Laurent<R> {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero(&self.zero);
        }
        let mut c = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        Laurent::new(self.zero.clone(), self.min_deg + o.min_deg, c)
    }

    fn negate(&self) -> Laurent<R> {
        self.map_coeffs(&self.zero, |c| c.negate())
    }

    fn from_i64_like(&self, n: i64) -> Laurent<R> {
        Laurent::constant(self.zero.from_i64_like(n))
    }
}

impl<R: Ring> fmt::Debug for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let t: Vec<String> = self.terms().map(|(d, c)| format!("({c:?})π^{d}")).collect();
        write!(f, "{}", t.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FqConfig;

    #[test]
    fn normalization_and_arithmetic() {
        let f = FqConfig::new(3, 1);
        let a = Laurent::new(f.zero(), -2, vec![f.zero(), f.one(), f.from_u64(2), f.zero()]);
        assert_eq!(a.valuation(), Some(-1));
        assert_eq!(a.max_deg(), Some(0));
        let b = Laurent::pi_pow(&f.zero(), 1);
        let ab = a.times(&b);
        assert_eq!(ab.valuation(), Some(0));
        assert!(a.minus(&a).is_zero());
        assert_eq!(a.plus(&a.negate()), Laurent::zero(&f.zero()));
    }
}
