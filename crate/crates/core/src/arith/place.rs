//! Places of `F_q(t)`, valuations, and residue fields.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::factor::{factor, is_irreducible, sort_key};
use super::{pow, FiniteField, Field, FqConfig, FqElem, Poly, RatFunc, Ring};

/// A place of `F_q(t)`: the degree-one place at infinity or a monic
/// irreducible polynomial.
#[derive(Clone, PartialEq, Eq)]
pub enum PlaceId {
    Infinity,
    Finite(Poly<FqElem>),
}

impl PlaceId {
    /// `None` unless `p` is monic irreducible.
    pub fn finite(p: Poly<FqElem>) -> Option<PlaceId> {
        (p.is_monic() && is_irreducible(&p)).then_some(PlaceId::Finite(p))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PlaceId::Infinity)
    }

    /// Degree of the residue field over `F_q`.
    pub fn degree(&self) -> usize {
        match self {
            PlaceId::Infinity => 1,
            PlaceId::Finite(p) => p.degree().expect("nonzero"),
        }
    }

    /// Normalized valuation; `None` for zero.
    pub fn valuation(&self, f: &RatFunc) -> Option<i64> {
        if f.num().is_zero() {
            return None;
        }
        Some(match self {
            PlaceId::Infinity => f.den().deg_i() - f.num().deg_i(),
            PlaceId::Finite(p) => poly_valuation(f.num(), p) as i64 - poly_valuation(f.den(), p) as i64,
        })
    }

    /// Residue field modulus: `P` itself, or `t` at infinity (residue field `F_q`).
    pub fn residue_modulus(&self, cfg: &FqConfig) -> Poly<FqElem> {
        match self {
            PlaceId::Infinity => Poly::x(&cfg.zero()),
            PlaceId::Finite(p) => p.clone(),
        }
    }

    /// Residue of `f / ϖ^shift` where `ϖ` is the uniformizer (`P`, or `1/t`).
    /// Zero when `v(f) > shift`; `None` when `v(f) < shift`.
    pub fn residue(&self, f: &RatFunc, shift: i64) -> Option<Residue> {
        let cfg = f.config();
        let field = Arc::new(self.residue_modulus(cfg));
        let v = match self.valuation(f) {
            None => return Some(Residue::zero_in(&field)),
            Some(v) => v,
        };
        if v < shift {
            return None;
        }
        if v > shift {
            return Some(Residue::zero_in(&field));
        }
        match self {
            PlaceId::Infinity => {
                let c = f.num().lc().divide(&f.den().lc()).expect("nonzero");
                Some(Residue::new(&field, Poly::constant(c)))
            }
            PlaceId::Finite(p) => {
                let strip = |g: &Poly<FqElem>| {
                    let mut g = g.clone();
                    while let Some(q) = g.div_exact(p) {
                        g = q;
                    }
                    g
                };
                let n = Residue::new(&field, strip(f.num()));
                let d = Residue::new(&field, strip(f.den()));
                Some(n.times(&d.inverse().expect("unit at P")))
            }
        }
    }

    /// Finite places where `f` has nonzero valuation, in canonical order.
    pub fn support_finite(f: &RatFunc) -> Vec<PlaceId> {
        let mut out: Vec<PlaceId> = Vec::new();
        for g in [f.num(), f.den()] {
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            for (h, _) in factor(g).factors {
                let pl = PlaceId::Finite(h);
                if !out.contains(&pl) {
                    out.push(pl);
                }
            }
        }
        out.sort();
        out
    }
}

fn poly_valuation(g: &Poly<FqElem>, p: &Poly<FqElem>) -> usize {
    let mut g = g.clone();
    let mut v = 0;
    while let Some(q) = g.div_exact(p) {
        g = q;
        v += 1;
    }
    v
}

impl Ord for PlaceId {
    fn cmp(&self, o: &PlaceId) -> Ordering {
        match (self, o) {
            (PlaceId::Infinity, PlaceId::Infinity) => Ordering::Equal,
            (PlaceId::Infinity, _) => Ordering::Less,
            (_, PlaceId::Infinity) => Ordering::Greater,
            (PlaceId::Finite(a), PlaceId::Finite(b)) => sort_key(a).cmp(&sort_key(b)),
        }
    }
}

impl PartialOrd for PlaceId {
    fn partial_cmp(&self, o: &PlaceId) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for PlaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceId::Infinity => write!(f, "inf"),
            PlaceId::Finite(p) => write!(f, "({p:?})"),
        }
    }
}

/// An element of a residue field `F_q[t]/(P)`.
#[derive(Clone)]
pub struct Residue {
    modulus: Arc<Poly<FqElem>>,
    value: Poly<FqElem>,
}

impl PartialEq for Residue {
    fn eq(&self, o: &Residue) -> bool {
        self.value == o.value
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]", self.value)
    }
}

impl Residue {
    pub fn new(modulus: &Arc<Poly<FqElem>>, value: Poly<FqElem>) -> Residue {
        Residue { modulus: modulus.clone(), value: value.rem(modulus) }
    }

    pub fn zero_in(modulus: &Arc<Poly<FqElem>>) -> Residue {
        Residue { modulus: modulus.clone(), value: Poly::zero(modulus.zero_elem()) }
    }

    pub fn value(&self) -> &Poly<FqElem> {
        &self.value
    }

    fn base(&self) -> &FqElem {
        self.modulus.zero_elem()
    }

    fn degree(&self) -> usize {
        self.modulus.degree().expect("nonzero modulus")
    }
}

impl Ring for Residue {
    fn zero_like(&self) -> Residue {
        Residue::zero_in(&self.modulus)
    }

    fn one_like(&self) -> Residue {
        Residue::new(&self.modulus, Poly::one(self.base()))
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn plus(&self, o: &Residue) -> Residue {
        Residue { modulus: self.modulus.clone(), value: self.value.plus(&o.value) }
    }

    fn minus(&self, o: &Residue) -> Residue {
        Residue { modulus: self.modulus.clone(), value: self.value.minus(&o.value) }
    }

    fn times(&self, o: &Residue) -> Residue {
        Residue::new(&self.modulus, self.value.times(&o.value))
    }

    fn negate(&self) -> Residue {
        Residue { modulus: self.modulus.clone(), value: self.value.negate() }
    }

    fn from_i64_like(&self, n: i64) -> Residue {
        Residue::new(&self.modulus, Poly::constant(self.base().from_i64_like(n)))
    }
}

impl Field for Residue {
    fn inverse(&self) -> Option<Residue> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.value.ext_gcd(&self.modulus);
        (g.degree() == Some(0)).then(|| Residue::new(&self.modulus, s))
    }
}

impl FiniteField for Residue {
    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn order(&self) -> u128 {
        self.base().order().pow(self.degree() as u32)
    }

    fn from_index(&self, mut idx: u128) -> Residue {
        let q = self.base().order();
        let c = (0..self.degree())
            .map(|_| {
                let e = self.base().from_index(idx % q);
                idx /= q;
                e
            })
            .collect();
        Residue::new(&self.modulus, Poly::new(self.base().clone(), c))
    }

    fn index(&self) -> u128 {
        let q = self.base().order();
        (0..self.degree()).rev().fold(0u128, |acc, i| acc * q + self.value.coeff(i).index())
    }

    fn pth_root(&self) -> Residue {
        pow(self, self.order() / self.characteristic() as u128)
    }
}
