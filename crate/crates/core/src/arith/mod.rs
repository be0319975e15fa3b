//! Exact arithmetic: finite fields, polynomials and their factorization,
//! rational functions in `t`, Laurent polynomials in `π`, rationals and
//! `Q/Z`, places of `F_q(t)`, Newton polygons and dense linear algebra.
//!
//! Elements of runtime-configured rings carry their configuration, so the
//! ring traits build constants from an existing element (`zero_like`).

use std::fmt::Debug;

pub mod factor;
pub mod fp_linalg;
pub mod fq;
pub mod intmat;
pub mod laurent;
pub mod matrix;
pub mod newton;
pub mod place;
pub mod poly;
pub mod rat;
pub mod ratfunc;

pub use fq::{FqConfig, FqElem, FqEmbedding};
pub use laurent::Laurent;
pub use matrix::Matrix;
pub use newton::{newton_polygon, newton_segments, NewtonSegment, SlopeDatum};
pub use place::{PlaceId, Residue};
pub use poly::{factor, Factorization, Poly};
pub use intmat::{smith_normal_form, IntMatrix, Smith};
pub use rat::{common_denominator, qmodz, QmodZ, Rat};
pub use ratfunc::RatFunc;

/// Commutative ring with unit.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Image of an integer under `Z -> R`.
    fn from_i64_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;

    fn divide(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|i| self.times(&i))
    }
}

/// A finite field with an enumeration of its elements.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    /// Number of elements.
    fn order(&self) -> u128;
    /// Bijection `0..order -> field`; index 0 is zero.
    fn from_index(&self, idx: u128) -> Self;
    /// Inverse of [`FiniteField::from_index`].
    fn index(&self) -> u128;
    /// The unique `y` with `y^p = self`.
    fn pth_root(&self) -> Self;
}

pub(crate) fn pow<R: Ring>(x: &R, mut e: u128) -> R {
    let mut base = x.clone();
    let mut acc = x.one_like();
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
