//! Isocrystals over `F_q((π))` modelled as `σ`-semilinear operators
//! `v -> A·σ(v)` with `A` a matrix of Laurent polynomials over `F_{q^n}`.
//!
//! `σ` is the `q`-power Frobenius on coefficients and fixes `π`. The
//! coefficient field `F_{q^n}` is `F_{p^{kn}}` with its deterministic modulus;
//! `n` is the *level*. Since `σ^n` is the identity on `F_{q^n}`, the `n`-th
//! power of the operator is the linear map `A σ(A) ... σ^{n-1}(A)`, whose
//! Newton polygon divided by `n` gives the slopes.

use num_integer::Integer;
use rand::Rng;

use crate::arith::{newton_polygon, FqConfig, FqElem, FqEmbedding, Laurent, Matrix, QmodZ, Rat, Ring, SlopeDatum};
use crate::{Error, Result};

mod decompose;
mod hom;
mod rep;

pub use decompose::{decompose_isoclinic, IsoclinicBlock, IsoclinicDecomposition};
pub use hom::{hom_closed_form, hom_space_dim, HomDim};
pub use rep::{rep_to_isocrystal, validate_representation, KottwitzRep, RepCheck, RepViolation};

pub type LMatrix = Matrix<Laurent<FqElem>>;

/// A `σ`-semilinear operator on `F_{q^n}((π))^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemilinearOp {
    base: FqConfig,
    level: usize,
    field: FqConfig,
    matrix: LMatrix,
}

/// `F_{q^n}` for `q = p^k`.
pub fn level_field(base: &FqConfig, level: usize) -> FqConfig {
    FqConfig::new(base.p(), base.k() * level)
}

impl SemilinearOp {
    /// Checks shape, coefficient field and invertibility.
    pub fn new(base: &FqConfig, level: usize, matrix: LMatrix) -> Result<SemilinearOp> {
        if level == 0 {
            return Err(Error::invalid("level must be positive"));
        }
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::invalid("operator matrix must be square and nonempty"));
        }
        let field = level_field(base, level);
        let ok = matrix.entries().iter().all(|e| e.coeffs().iter().all(|c| *c.config() == field));
        if !ok || *matrix.zero_elem().coeffs().first().map_or(&field, |c| c.config()) != field {
            return Err(Error::invalid("matrix coefficients must lie in the level field"));
        }
        let op = SemilinearOp { base: base.clone(), level, field, matrix };
        if op.matrix.det().is_zero() {
            return Err(Error::invalid("operator matrix is not invertible"));
        }
        Ok(op)
    }

    pub(crate) fn new_unchecked(base: &FqConfig, level: usize, matrix: LMatrix) -> SemilinearOp {
        SemilinearOp { base: base.clone(), level, field: level_field(base, level), matrix }
    }

    /// The one-dimensional unit object `v -> σ(v)`.
    pub fn unit(base: &FqConfig) -> SemilinearOp {
        let f = level_field(base, 1);
        SemilinearOp::new_unchecked(base, 1, Matrix::identity(&Laurent::zero(&f.zero()), 1))
    }

    pub fn base(&self) -> &FqConfig {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The coefficient field `F_{q^n}`.
    pub fn field(&self) -> &FqConfig {
        &self.field
    }

    pub fn matrix(&self) -> &LMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `σ^e` applied to a Laurent polynomial.
    pub fn sigma_pow(&self, x: &Laurent<FqElem>, e: usize) -> Laurent<FqElem> {
        x.frobenius(self.base.k() * e)
    }

    pub fn sigma_matrix(&self, m: &LMatrix, e: usize) -> LMatrix {
        m.map(m.zero_elem(), |x| self.sigma_pow(x, e))
    }

    /// `Φ(v) = A σ(v)`.
    pub fn apply(&self, v: &[Laurent<FqElem>]) -> Vec<Laurent<FqElem>> {
        let sv: Vec<_> = v.iter().map(|x| self.sigma_pow(x, 1)).collect();
        self.matrix.apply(&sv)
    }

    /// `A σ(A) ... σ^{n-1}(A)`, the matrix of the `n`-th power.
    pub fn linearize(&self) -> LMatrix {
        let mut acc = self.matrix.clone();
        for i in 1..self.level {
            acc = acc.times(&self.sigma_matrix(&self.matrix, i));
        }
        acc
    }

    /// Same operator with coefficients pushed into `F_{q^{level}}`.
    pub fn embed(&self, level: usize) -> Result<SemilinearOp> {
        if level % self.level != 0 {
            return Err(Error::invalid(format!("level {} does not divide {level}", self.level)));
        }
        if level == self.level {
            return Ok(self.clone());
        }
        let target = level_field(&self.base, level);
        let emb = FqEmbedding::new(&self.field, &target);
        let z = Laurent::zero(&target.zero());
        let m = self.matrix.map(&z, |x| x.map_coeffs(&target.zero(), |c| emb.apply(c)));
        Ok(SemilinearOp { base: self.base.clone(), level, field: target, matrix: m })
    }

    /// Direct sum; both sides are first brought to a common level.
    pub fn direct_sum(&self, o: &SemilinearOp) -> Result<SemilinearOp> {
        let (a, b) = common_level(self, o)?;
        let level = a.level;
        Ok(SemilinearOp { base: a.base.clone(), level, field: a.field.clone(), matrix: a.matrix.direct_sum(&b.matrix) })
    }

    /// Transport along `v' = T v`: the new matrix is `T A σ(T)^{-1}`.
    /// `T` must have a monomial determinant so that its inverse is Laurent.
    pub fn conjugate(&self, t: &LMatrix) -> Result<SemilinearOp> {
        let tinv = laurent_inverse(t).ok_or_else(|| Error::invalid("conjugating matrix has non-monomial determinant"))?;
        let m = t.times(&self.matrix).times(&self.sigma_matrix(&tinv, 1));
        Ok(SemilinearOp { matrix: m, ..self.clone() })
    }
}

fn common_level(a: &SemilinearOp, b: &SemilinearOp) -> Result<(SemilinearOp, SemilinearOp)> {
    if a.base != b.base {
        return Err(Error::invalid("operators over different base fields"));
    }
    let n = a.level.lcm(&b.level);
    Ok((a.embed(n)?, b.embed(n)?))
}

/// Inverse over the Laurent ring when the determinant is a monomial, via
/// Cayley–Hamilton.
pub fn laurent_inverse(t: &LMatrix) -> Option<LMatrix> {
    let n = t.rows();
    let cp = t.charpoly();
    let (c, d) = cp.coeff(0).as_monomial()?;
    let c0_inv = Laurent::monomial(crate::arith::Field::inverse(&c)?, -d);
    // A^{-1} = -(A^{n-1} + c_{n-1} A^{n-2} + ... + c_1) / c_0
    let z = t.zero_elem();
    let mut acc = Matrix::zeros(z, n, n);
    for k in (1..=n).rev() {
        acc = acc.times(t).plus(&Matrix::identity(z, n).scale(&cp.coeff(k)));
    }
    Some(acc.scale(&c0_inv.negate()))
}

/// Newton slopes: Newton polygon of the characteristic polynomial of the
/// linearization, divided by the level.
pub fn newton_slopes(op: &SemilinearOp) -> SlopeDatum {
    let cp = op.linearize().charpoly();
    let pts: Vec<(i64, Option<i64>)> =
        cp.coeffs().iter().enumerate().map(|(i, c)| (i as i64, c.valuation())).collect();
    newton_polygon(&pts).expect("characteristic polynomial is monic").scaled_down(op.level as i64)
}

/// `E_{s/r}`: ones on the subdiagonal and `π^s` in the top-right corner,
/// at level `r`. Requires `r >= 1` and `gcd(s, r) = 1`.
pub fn standard_simple(base: &FqConfig, s: i64, r: usize) -> Result<SemilinearOp> {
    if r == 0 {
        return Err(Error::invalid("denominator must be positive"));
    }
    if s.gcd(&(r as i64)) != 1 {
        return Err(Error::invalid(format!("slope {s}/{r} is not in lowest terms")));
    }
    Ok(companion_block(base, s, r, r))
}

/// The cyclic operator with `Φ^r e_0 = π^s e_0`, at the given level.
pub(crate) fn companion_block(base: &FqConfig, s: i64, r: usize, level: usize) -> SemilinearOp {
    let f = level_field(base, level);
    let z = Laurent::zero(&f.zero());
    let m = Matrix::from_fn(&z, r, r, |i, j| {
        if j + 1 == r && i == 0 {
            Laurent::pi_pow(&f.zero(), s)
        } else if i == j + 1 {
            Laurent::pi_pow(&f.zero(), 0)
        } else {
            z.clone()
        }
    });
    SemilinearOp::new_unchecked(base, level, m)
}

/// Invariant of the endomorphism algebra of an isoclinic piece: `-slope mod Z`.
pub fn end_invariant(slope: Rat) -> QmodZ {
    QmodZ::new(-slope)
}

/// Kronecker product of the matrices, over a common level.
pub fn tensor(a: &SemilinearOp, b: &SemilinearOp) -> Result<SemilinearOp> {
    let (a, b) = common_level(a, b)?;
    let m = a.matrix.kron(&b.matrix);
    Ok(SemilinearOp { matrix: m, ..a })
}

/// A random matrix with monomial determinant: a product of elementary
/// matrices with small random Laurent entries and a monomial diagonal.
pub fn random_invertible<G: Rng>(field: &FqConfig, dim: usize, rng: &mut G) -> LMatrix {
    let z = Laurent::zero(&field.zero());
    let q = field.q() as u128;
    let rand_elem = |rng: &mut G| crate::arith::FiniteField::from_index(&field.zero(), rng.gen_range(0..q));
    let rand_laurent = |rng: &mut G| {
        let lo = rng.gen_range(-1..=1);
        let len = rng.gen_range(1..=2);
        Laurent::new(field.zero(), lo, (0..len).map(|_| rand_elem(rng)).collect())
    };
    let diag: Vec<Laurent<FqElem>> = (0..dim)
        .map(|_| {
            let mut c = rand_elem(rng);
            while c.is_zero() {
                c = rand_elem(rng);
            }
            Laurent::monomial(c, rng.gen_range(-1..=1))
        })
        .collect();
    let mut t = Matrix::diagonal(&z, &diag);
    if dim > 1 {
        for _ in 0..2 * dim {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim);
            while j == i {
                j = rng.gen_range(0..dim);
            }
            let mut e = Matrix::identity(&z, dim);
            e.set(i, j, rand_laurent(rng));
            t = e.times(&t);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn f2() -> FqConfig {
        FqConfig::new(2, 1)
    }

    #[test]
    fn simple_slopes() {
        let e = standard_simple(&f2(), 1, 2).unwrap();
        assert_eq!(newton_slopes(&e).pairs(), vec![(Rat::new(1, 2), 2)]);
        let u = SemilinearOp::unit(&f2());
        assert_eq!(newton_slopes(&u).pairs(), vec![(Rat::zero(), 1)]);
        assert!(standard_simple(&f2(), 2, 4).is_err());
    }

    #[test]
    fn end_invariant_examples() {
        assert_eq!(end_invariant(Rat::zero()).rep(), Rat::zero());
        assert_eq!(end_invariant(Rat::new(1, 2)).rep(), Rat::new(1, 2));
        assert_eq!(end_invariant(Rat::new(2, 3)).rep(), Rat::new(1, 3));
    }

    #[test]
    fn tensor_examples() {
        let h = standard_simple(&f2(), 1, 2).unwrap();
        let t = standard_simple(&f2(), 1, 3).unwrap();
        assert_eq!(newton_slopes(&tensor(&h, &h).unwrap()).pairs(), vec![(Rat::one(), 4)]);
        assert_eq!(newton_slopes(&tensor(&h, &t).unwrap()).pairs(), vec![(Rat::new(5, 6), 6)]);
        let u = SemilinearOp::unit(&f2());
        assert_eq!(newton_slopes(&tensor(&h, &u).unwrap()), newton_slopes(&h));
    }

    #[test]
    fn determinant_law_and_conjugation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = FqConfig::new(3, 1);
        let e = standard_simple(&base, -2, 3).unwrap().direct_sum(&standard_simple(&base, 1, 1).unwrap()).unwrap();
        let slopes = newton_slopes(&e);
        let det = e.linearize().det();
        assert_eq!(slopes.weighted_sum(), Rat::new(det.valuation().unwrap(), e.level() as i64));
        for _ in 0..5 {
            let t = random_invertible(e.field(), e.dim(), &mut rng);
            let inv = laurent_inverse(&t).unwrap();
            assert_eq!(inv.times(&t), Matrix::identity(t.zero_elem(), e.dim()));
            assert_eq!(newton_slopes(&e.conjugate(&t).unwrap()), slopes);
        }
    }
}
