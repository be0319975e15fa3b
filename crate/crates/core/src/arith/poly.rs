//! Dense univariate polynomials over a [`Ring`], coefficients low degree first.

use std::fmt;

use super::{Field, Ring};

pub use super::factor::{factor, factor_with_seed, is_irreducible, squarefree_decomposition, Factorization};

/// A polynomial with no trailing zero coefficients. `zero` carries the
/// coefficient ring's runtime configuration.
#[derive(Clone, PartialEq)]
pub struct Poly<R> {
    zero: R,
    c: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(zero: R, mut c: Vec<R>) -> Poly<R> {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { zero: zero.zero_like(), c }
    }

    pub fn zero(like: &R) -> Poly<R> {
        Poly { zero: like.zero_like(), c: Vec::new() }
    }

    pub fn one(like: &R) -> Poly<R> {
        Poly::constant(like.one_like())
    }

    pub fn constant(a: R) -> Poly<R> {
        let z = a.zero_like();
        Poly::new(z, vec![a])
    }

    /// `a * x^d`.
    pub fn monomial(a: R, d: usize) -> Poly<R> {
        let z = a.zero_like();
        let mut c = vec![z.clone(); d];
        c.push(a);
        Poly::new(z, c)
    }

    pub fn x(like: &R) -> Poly<R> {
        Poly::monomial(like.one_like(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`, convenient for comparisons.
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn plus(&self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect();
        Poly::new(self.zero.clone(), c)
    }

    pub fn minus(&self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect();
        Poly::new(self.zero.clone(), c)
    }

    pub fn negate(&self) -> Poly<R> {
        Poly::new(self.zero.clone(), self.c.iter().map(|x| x.negate()).collect())
    }

    pub fn times(&self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut c = vec![self.zero.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        Poly::new(self.zero.clone(), c)
    }

    pub fn scale(&self, a: &R) -> Poly<R> {
        Poly::new(self.zero.clone(), self.c.iter().map(|x| x.times(a)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Poly<R> {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.zero.clone(); n];
        c.extend(self.c.iter().cloned());
        Poly::new(self.zero.clone(), c)
    }

    pub fn derivative(&self) -> Poly<R> {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.times(&a.from_i64_like(i as i64)))
            .collect();
        Poly::new(self.zero.clone(), c)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        self.c
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, a| acc.times(x).plus(a))
    }

    pub fn pow(&self, mut e: u64) -> Poly<R> {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.zero);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    pub fn map<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(zero.zero_like(), self.c.iter().map(f).collect())
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division. Panics on division by zero.
    pub fn divrem(&self, d: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.lc().inverse().expect("leading coefficient invertible");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(&self.zero), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let a = r[i].times(&inv);
            if a.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[i - dd + j] = r[i - dd + j].minus(&a.times(b));
            }
            q[i - dd] = a;
        }
        r.truncate(dd);
        (Poly::new(self.zero.clone(), q), Poly::new(self.zero.clone(), r))
    }

    pub fn rem(&self, d: &Poly<F>) -> Poly<F> {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Poly<F>) -> Option<Poly<F>> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly<F> {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inverse().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly<F>) -> Poly<F> {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
        let z = &self.zero;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(z), Poly::zero(z));
        let (mut t0, mut t1) = (Poly::zero(z), Poly::one(z));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.minus(&q.times(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.minus(&q.times(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inverse().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly<F>) -> Poly<F> {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.zero).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base).rem(m);
            }
        }
        acc
    }

    pub fn mulmod(&self, o: &Poly<F>, m: &Poly<F>) -> Poly<F> {
        self.times(o).rem(m)
    }
}

impl<R: Ring + Eq> Eq for Poly<R> {}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("({a:?})x^{i}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
