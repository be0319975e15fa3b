//! Graded complex spaces `V = ⊕ V^m` with a conjugate-linear `α` preserving
//! the grading and satisfying `α² = (-1)^m` on `V^m`.
//!
//! Everything is exact over the Gaussian rationals `Q(i)`. On `V^m`, `α` is
//! stored as a matrix `M` with `α(v) = M · conj(v)`, so `α² = M · conj(M)`.
//! Even degrees decompose into `α`-fixed lines, odd degrees into planes
//! `⟨v, α v⟩` on which `α` acts as `(a, b) -> (-conj b, conj a)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{Field, Matrix, Rat, Ring};
use crate::{Error, Result};

/// `re + i·im` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> GaussRat {
        GaussRat { re, im }
    }

    pub fn from_rats(re: Rat, im: Rat) -> GaussRat {
        let big = |r: Rat| BigRational::new(BigInt::from(r.numer()), BigInt::from(r.denom()));
        GaussRat { re: big(re), im: big(im) }
    }

    pub fn int(re: i64, im: i64) -> GaussRat {
        GaussRat { re: BigRational::from_integer(re.into()), im: BigRational::from_integer(im.into()) }
    }

    pub fn zero() -> GaussRat {
        GaussRat::int(0, 0)
    }

    pub fn one() -> GaussRat {
        GaussRat::int(1, 0)
    }

    pub fn i() -> GaussRat {
        GaussRat::int(0, 1)
    }

    pub fn conj(&self) -> GaussRat {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

impl Ring for GaussRat {
    fn zero_like(&self) -> GaussRat {
        GaussRat::zero()
    }
    fn one_like(&self) -> GaussRat {
        GaussRat::one()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn minus(&self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn times(&self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn negate(&self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn from_i64_like(&self, n: i64) -> GaussRat {
        GaussRat::int(n, 0)
    }
}

impl Field for GaussRat {
    fn inverse(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }
}

pub type GMatrix = Matrix<GaussRat>;

fn conj_matrix(m: &GMatrix) -> GMatrix {
    m.map(&GaussRat::zero(), |x| x.conj())
}

/// `α(v) = M conj(v)` on each graded piece.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GradedSpace {
    components: BTreeMap<i64, GMatrix>,
}

impl GradedSpace {
    pub fn new() -> GradedSpace {
        GradedSpace::default()
    }

    /// Adds (or direct-sums into) the degree-`m` piece. `alpha` must be square.
    pub fn with_component(mut self, m: i64, alpha: GMatrix) -> Result<GradedSpace> {
        if !alpha.is_square() || alpha.rows() == 0 {
            return Err(Error::invalid(format!("α on degree {m} must be a nonempty square matrix")));
        }
        let merged = match self.components.remove(&m) {
            Some(old) => old.direct_sum(&alpha),
            None => alpha,
        };
        self.components.insert(m, merged);
        Ok(self)
    }

    pub fn components(&self) -> &BTreeMap<i64, GMatrix> {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.values().map(|m| m.rows()).sum()
    }
}

/// Why a graded space fails validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedCheck {
    Valid,
    /// `α²` differs from `(-1)^m` on degree `m`.
    WrongSquare { degree: i64 },
}

pub fn validate_graded(space: &GradedSpace) -> GradedCheck {
    for (&m, a) in &space.components {
        let sq = a.times(&conj_matrix(a));
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        let expected = Matrix::identity(&GaussRat::zero(), a.rows()).scale(&GaussRat::int(sign, 0));
        if sq != expected {
            return GradedCheck::WrongSquare { degree: m };
        }
    }
    GradedCheck::Valid
}

/// Class of a nonzero rational in `H^2 = R^× / N(C^×) = {±1}`: its sign.
pub fn h2_real_class(x: Rat) -> Result<i8> {
    if x.is_zero() {
        return Err(Error::invalid("h2 class of zero"));
    }
    Ok(if x > Rat::zero() { 1 } else { -1 })
}

/// Degrees add and `α = α_1 ⊗ α_2`.
pub fn tensor_graded(a: &GradedSpace, b: &GradedSpace) -> GradedSpace {
    let mut out = GradedSpace::new();
    for (&m1, a1) in &a.components {
        for (&m2, a2) in &b.components {
            out = out.with_component(m1 + m2, a1.kron(a2)).expect("kronecker of square is square");
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummandKind {
    /// `⟨v⟩` with `α v = v`.
    Line,
    /// `⟨v, α v⟩` with `α² = -1`.
    Plane,
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub degree: i64,
    pub kind: SummandKind,
    /// Basis vectors in the coordinates of the degree-`m` piece.
    pub vectors: Vec<Vec<GaussRat>>,
}

#[derive(Clone, Debug)]
pub struct GradedDecomposition {
    pub summands: Vec<Summand>,
    /// Per degree: `M conj(P) = P D` with `D` the standard block form and
    /// `P` invertible.
    pub verified: bool,
}

fn standard_block(kind: SummandKind) -> GMatrix {
    match kind {
        SummandKind::Line => Matrix::identity(&GaussRat::zero(), 1),
        SummandKind::Plane => Matrix::from_rows(vec![
            vec![GaussRat::zero(), GaussRat::int(-1, 0)],
            vec![GaussRat::one(), GaussRat::zero()],
        ]),
    }
}

/// Splits a valid graded space into lines (even degrees) and planes (odd).
pub fn decompose_graded(space: &GradedSpace) -> Result<GradedDecomposition> {
    if let GradedCheck::WrongSquare { degree } = validate_graded(space) {
        return Err(Error::invalid(format!("α² ≠ (-1)^m on degree {degree}")));
    }
    let mut summands = Vec::new();
    for (&m, a) in &space.components {
        let d = a.rows();
        let pieces = if m.rem_euclid(2) == 0 { fixed_lines(a)? } else { quaternionic_planes(a)? };
        let cols: Vec<Vec<GaussRat>> = pieces.iter().flat_map(|s| s.vectors.clone()).collect();
        let p = Matrix::from_fn(&GaussRat::zero(), d, d, |i, j| cols[j][i].clone());
        let dm = pieces
            .iter()
            .map(|s| standard_block(s.kind))
            .reduce(|x, y| x.direct_sum(&y))
            .expect("nonempty piece");
        if a.times(&conj_matrix(&p)) != p.times(&dm) || p.rank() != d {
            return Err(Error::internal(format!("decomposition of degree {m} failed verification")));
        }
        summands.extend(pieces.into_iter().map(|s| Summand { degree: m, ..s }));
    }
    Ok(GradedDecomposition { summands, verified: true })
}

/// Basis of the `α`-fixed vectors: solve `M conj(v) = v` over `Q` in real
/// and imaginary parts.
fn fixed_lines(a: &GMatrix) -> Result<Vec<Summand>> {
    let d = a.rows();
    // v = x + i y; M conj v = (P + iQ)(x - iy) = (Px + Qy) + i(Qx - Py).
    let sys = Matrix::from_fn(&BigQ::zero(), 2 * d, 2 * d, |i, j| {
        let (bi, ii) = (i / d, i % d);
        let (bj, jj) = (j / d, j % d);
        let e = a.get(ii, jj);
        let delta = if ii == jj { BigQ::one() } else { BigQ::zero() };
        let v = match (bi, bj) {
            (0, 0) => &e.re - delta.0,
            (0, 1) | (1, 0) => e.im.clone(),
            _ => -&e.re - delta.0,
        };
        BigQ(v)
    });
    let ker = sys.kernel();
    if ker.len() != d {
        return Err(Error::internal("fixed space has wrong real dimension"));
    }
    Ok(ker
        .into_iter()
        .map(|k| {
            let v = (0..d).map(|i| GaussRat::new(k[i].0.clone(), k[d + i].0.clone())).collect();
            Summand { degree: 0, kind: SummandKind::Line, vectors: vec![v] }
        })
        .collect())
}

/// Greedy `⟨e_j, α e_j⟩` over standard basis vectors outside the span so far.
fn quaternionic_planes(a: &GMatrix) -> Result<Vec<Summand>> {
    let d = a.rows();
    let mut chosen: Vec<Vec<GaussRat>> = Vec::new();
    let mut out = Vec::new();
    for j in 0..d {
        if chosen.len() == d {
            break;
        }
        let mut e = vec![GaussRat::zero(); d];
        e[j] = GaussRat::one();
        let ae = a.col(j);
        let mut trial = chosen.clone();
        trial.push(e.clone());
        trial.push(ae.clone());
        let rank = Matrix::from_rows(trial.clone()).rank();
        if rank == chosen.len() + 2 {
            chosen = trial;
            out.push(Summand { degree: 0, kind: SummandKind::Plane, vectors: vec![e, ae] });
        }
    }
    if chosen.len() != d {
        return Err(Error::internal("planes do not span the odd-degree piece"));
    }
    Ok(out)
}

/// Rationals with arbitrary-size parts, as a field for kernel computations.
#[derive(Clone, PartialEq, Debug)]
struct BigQ(BigRational);

impl BigQ {
    fn zero() -> BigQ {
        BigQ(BigRational::zero())
    }
    fn one() -> BigQ {
        BigQ(BigRational::one())
    }
}

impl Ring for BigQ {
    fn zero_like(&self) -> BigQ {
        BigQ::zero()
    }
    fn one_like(&self) -> BigQ {
        BigQ::one()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, o: &BigQ) -> BigQ {
        BigQ(&self.0 + &o.0)
    }
    fn minus(&self, o: &BigQ) -> BigQ {
        BigQ(&self.0 - &o.0)
    }
    fn times(&self, o: &BigQ) -> BigQ {
        BigQ(&self.0 * &o.0)
    }
    fn negate(&self) -> BigQ {
        BigQ(-self.0.clone())
    }
    fn from_i64_like(&self, n: i64) -> BigQ {
        BigQ(BigRational::from_integer(n.into()))
    }
}

impl Field for BigQ {
    fn inverse(&self) -> Option<BigQ> {
        (!self.0.is_zero()).then(|| BigQ(self.0.recip()))
    }
}

/// A valid structure of the given dimension in degree `m`: the standard
/// form transported by a random invertible Gaussian-integer matrix.
/// Panics if `m` is odd and `dim` is odd.
pub fn random_valid_alpha<G: Rng>(m: i64, dim: usize, rng: &mut G) -> GMatrix {
    let odd = m.rem_euclid(2) == 1;
    assert!(!odd || dim % 2 == 0, "odd degree needs even dimension");
    let kind = if odd { SummandKind::Plane } else { SummandKind::Line };
    let std = (0..dim / if odd { 2 } else { 1 })
        .map(|_| standard_block(kind))
        .reduce(|x, y| x.direct_sum(&y))
        .expect("positive dimension");
    loop {
        let entries: Vec<GaussRat> =
            (0..dim * dim).map(|_| GaussRat::int(rng.gen_range(-2..=2), rng.gen_range(-2..=2))).collect();
        let p = Matrix::from_fn(&GaussRat::zero(), dim, dim, |i, j| entries[i * dim + j].clone());
        if let Some(pinv) = conj_matrix(&p).inverse() {
            return p.times(&std).times(&pinv);
        }
    }
}

/// Parity-breaking mutations of a valid space: each returned space must be
/// rejected by [`validate_graded`].
pub fn parity_mutations(space: &GradedSpace) -> Vec<GradedSpace> {
    let mut out = Vec::new();
    for (&m, a) in &space.components {
        let mut shifted = space.components.clone();
        shifted.remove(&m);
        // Move to the opposite parity, choosing a degree not already present.
        let target = (1..).map(|k| m + 2 * k - 1).find(|t| !shifted.contains_key(t)).expect("unbounded");
        shifted.insert(target, a.clone());
        out.push(GradedSpace { components: shifted });
        let mut scaled = space.components.clone();
        scaled.insert(m, a.scale(&GaussRat::int(2, 0)));
        out.push(GradedSpace { components: scaled });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::int(re, im)
    }

    #[test]
    fn examples() {
        let quat = Matrix::from_rows(vec![vec![g(0, 0), g(-1, 0)], vec![g(1, 0), g(0, 0)]]);
        let v = GradedSpace::new().with_component(3, quat).unwrap();
        assert_eq!(validate_graded(&v), GradedCheck::Valid);
        let conj = Matrix::identity(&GaussRat::zero(), 1);
        let w = GradedSpace::new().with_component(1, conj.clone()).unwrap();
        assert_eq!(validate_graded(&w), GradedCheck::WrongSquare { degree: 1 });
        assert_eq!(h2_real_class(Rat::int(4)).unwrap(), 1);
        assert_eq!(h2_real_class(Rat::int(-1)).unwrap(), -1);
        assert_eq!(h2_real_class(Rat::int(-9)).unwrap(), -1);
        assert!(h2_real_class(Rat::zero()).is_err());
    }

    #[test]
    fn tensor_of_odd_pieces_is_even() {
        let quat = Matrix::from_rows(vec![vec![g(0, 0), g(-1, 0)], vec![g(1, 0), g(0, 0)]]);
        let v = GradedSpace::new().with_component(1, quat).unwrap();
        let t = tensor_graded(&v, &v);
        assert_eq!(t.components().keys().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(validate_graded(&t), GradedCheck::Valid);
        let dec = decompose_graded(&t).unwrap();
        assert_eq!(dec.summands.len(), 4);
        assert!(dec.summands.iter().all(|s| s.kind == SummandKind::Line));
    }

    #[test]
    fn swap_structure_in_degree_two() {
        let swap = Matrix::from_rows(vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]]);
        let v = GradedSpace::new().with_component(2, swap).unwrap();
        let dec = decompose_graded(&v).unwrap();
        assert_eq!(dec.summands.len(), 2);
    }

    #[test]
    fn random_spaces_decompose() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let v = GradedSpace::new()
                .with_component(0, random_valid_alpha(0, 2, &mut rng))
                .unwrap()
                .with_component(-1, random_valid_alpha(-1, 4, &mut rng))
                .unwrap();
            assert_eq!(validate_graded(&v), GradedCheck::Valid);
            let dec = decompose_graded(&v).unwrap();
            let dims: Vec<usize> = dec.summands.iter().map(|s| s.vectors.len()).collect();
            assert_eq!(dims, vec![2, 2, 1, 1]);
            for m in parity_mutations(&v) {
                assert_ne!(validate_graded(&m), GradedCheck::Valid);
            }
        }
    }
}
