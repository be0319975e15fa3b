//! From a φ-space given by a matrix to its φ-pair.
//!
//! `Π = A σ(A) ⋯ σ^{n-1}(A)` is linear over `F_{q^n}(t)` and commutes with
//! `φ`. `L_N = F[Π^N]` has dimension `deg minpoly(Π^N)` and shrinks along
//! divisibility, so `L = L_{N*}` for the least `N*` whose multiples within
//! the search bound all give the same dimension. Each irreducible factor
//! `ψ` of the minimal polynomial of `Π^{N*}` is a field component, and its
//! places over `u` are read from the Newton polygon of `ψ` at `u` and the
//! factorizations of the residual polynomials of its segments.

use super::ftfactor::{factor_over_ft, is_squarefree, FtPoly};
use super::{PhiComponent, PhiPairData, PhiPlace};
use crate::arith::{
    factor, newton_segments, FqConfig, FqEmbedding, Matrix, PlaceId, Poly, Rat, RatFunc, Residue, Ring,
};
use crate::semilinear::level_field;
use crate::{Error, Result};

/// `v ↦ A·σ(v)` on `F_{q^n}(t)^d`, `σ` the `q`-power on constants.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiSpaceMatrix {
    base: FqConfig,
    level: usize,
    matrix: Matrix<RatFunc>,
}

impl PhiSpaceMatrix {
    pub fn new(base: &FqConfig, level: usize, matrix: Matrix<RatFunc>) -> Result<PhiSpaceMatrix> {
        if level == 0 {
            return Err(Error::invalid("level must be positive"));
        }
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::invalid("φ-space matrix must be square and nonempty"));
        }
        let field = level_field(base, level);
        if matrix.entries().iter().any(|e| e.config() != &field) {
            return Err(Error::invalid("matrix entries must lie in F_{q^n}(t)"));
        }
        if matrix.det().is_zero() {
            return Err(Error::invalid("φ-space matrix is not invertible"));
        }
        Ok(PhiSpaceMatrix { base: base.clone(), level, matrix })
    }

    pub fn base(&self) -> &FqConfig {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> FqConfig {
        level_field(&self.base, self.level)
    }

    pub fn sigma_matrix(&self, m: &Matrix<RatFunc>, e: usize) -> Matrix<RatFunc> {
        let k = self.base.k() * e;
        m.map(&RatFunc::zero(&self.field()), |x| x.frobenius(k))
    }

    /// `Π = φ^n`.
    pub fn linearization(&self) -> Matrix<RatFunc> {
        (1..self.level).fold(self.matrix.clone(), |acc, i| acc.times(&self.sigma_matrix(&self.matrix, i)))
    }

    /// The same φ-space with constants extended to level `level`.
    pub fn embed(&self, level: usize) -> Result<PhiSpaceMatrix> {
        if level % self.level != 0 {
            return Err(Error::invalid(format!("level {} does not divide {level}", self.level)));
        }
        let target = level_field(&self.base, level);
        let emb = FqEmbedding::new(&self.field(), &target);
        let m = self.matrix.map(&RatFunc::zero(&target), |x| x.map_coeffs(&target, |c| emb.apply(c)));
        PhiSpaceMatrix::new(&self.base, level, m)
    }

    pub fn tensor(&self, o: &PhiSpaceMatrix) -> Result<PhiSpaceMatrix> {
        if self.base != o.base {
            return Err(Error::invalid("tensor factors over different constant fields"));
        }
        let level = num_integer::lcm(self.level, o.level);
        let (a, b) = (self.embed(level)?, o.embed(level)?);
        PhiSpaceMatrix::new(&self.base, level, a.matrix.kron(&b.matrix))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiPairResult {
    pub pair: PhiPairData,
    /// `N*`.
    pub stable_n: usize,
    /// `dim L_N` for `N = 1..=max_n`.
    pub dims: Vec<usize>,
    /// Minimal polynomial of `Π^{N*}` over `F_q(t)`.
    pub min_poly: FtPoly,
}

/// Least `N` attaining the smallest observed dimension, provided `2N ≤ max_n`
/// so that at least one multiple confirms it. `dim F[Π^{kN}] ≤ dim F[Π^N]`,
/// so a merely locally constant run (e.g. `N = 3` for `x⁵ - c`) is skipped.
fn stable_index(dims: &[usize]) -> Option<usize> {
    let max_n = dims.len();
    let least = *dims.iter().min()?;
    let n = dims.iter().position(|&d| d == least)? + 1;
    (2 * n <= max_n && (2..).map(|k| k * n).take_while(|&m| m <= max_n).all(|m| dims[m - 1] == least)).then_some(n)
}

fn descend(f: &RatFunc, emb: &FqEmbedding) -> Option<RatFunc> {
    let base = emb.source();
    let pull = |p: &Poly<crate::arith::FqElem>| -> Option<Poly<crate::arith::FqElem>> {
        let c = p.coeffs().iter().map(|c| emb.preimage(c)).collect::<Option<Vec<_>>>()?;
        Some(Poly::new(base.zero(), c))
    };
    Some(RatFunc::new(pull(f.num())?, pull(f.den())?))
}

pub fn phi_pair_of(v: &PhiSpaceMatrix, max_n: usize) -> Result<PhiPairResult> {
    if max_n < 2 {
        return Err(Error::invalid("max N must be at least 2"));
    }
    let pi = v.linearization();
    let mut dims = Vec::with_capacity(max_n);
    let mut power = pi.clone();
    for n in 1..=max_n {
        if n > 1 {
            power = power.times(&pi);
        }
        dims.push(power.minimal_polynomial().degree().expect("nonzero"));
    }
    let stable_n = stable_index(&dims)
        .ok_or_else(|| Error::out_of_scope(format!("F[Π^N] does not stabilize within N ≤ {max_n}")))?;
    let big = pi.pow(stable_n as u64).minimal_polynomial();
    let emb = FqEmbedding::new(v.base(), &v.field());
    let coeffs = big
        .coeffs()
        .iter()
        .map(|c| descend(c, &emb))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::internal("minimal polynomial of Π^N is not defined over F_q(t)"))?;
    let min_poly = Poly::new(RatFunc::zero(v.base()), coeffs);
    if !is_squarefree(&min_poly) {
        return Err(Error::out_of_scope("minimal polynomial of Π^N is not separable and square-free"));
    }
    let scale = (v.level() * stable_n) as i64;
    let mut components = factor_over_ft(&min_poly)?
        .into_iter()
        .map(|psi| {
            let places = component_places(&psi, scale)?;
            Ok(PhiComponent { degree_over_f: psi.degree().expect("nonzero"), places, defining_poly: Some(psi) })
        })
        .collect::<Result<Vec<_>>>()?;
    components.sort_by_key(|c| c.degree_over_f);
    Ok(PhiPairResult { pair: PhiPairData { components }, stable_n, dims, min_poly })
}

/// Places of `F[x]/ψ` above the places where some coefficient of `ψ` is not
/// a unit, and above `∞`.
fn component_places(psi: &FtPoly, scale: i64) -> Result<Vec<PhiPlace>> {
    let mut bases = vec![PlaceId::Infinity];
    for c in psi.coeffs() {
        for u in PlaceId::support_finite(c) {
            if !bases.contains(&u) {
                bases.push(u);
            }
        }
    }
    bases.sort();
    let mut out = Vec::new();
    for u in bases {
        out.extend(places_over(psi, &u, scale)?);
    }
    Ok(out)
}

fn places_over(psi: &FtPoly, u: &PlaceId, scale: i64) -> Result<Vec<PhiPlace>> {
    let b = psi.degree().expect("nonzero");
    let points: Vec<(i64, Option<i64>)> = (0..=b).map(|i| (i as i64, u.valuation(&psi.coeff(i)))).collect();
    let segments = newton_segments(&points).map_err(|e| Error::internal(e.to_string()))?;
    let cfg = psi.lc().config().clone();
    let modulus = std::sync::Arc::new(u.residue_modulus(&cfg));
    let mut out = Vec::new();
    for seg in segments {
        let lambda = seg.root_valuation();
        let (h, e) = (lambda.numer(), lambda.denom());
        let steps = seg.length() / e;
        let coeffs = (0..=steps)
            .map(|j| {
                u.residue(&psi.coeff((seg.x0 + j * e) as usize), seg.y0 - j * h)
                    .ok_or_else(|| Error::internal("point below the Newton polygon"))
            })
            .collect::<Result<Vec<_>>>()?;
        let residual = Poly::new(Residue::zero_in(&modulus), coeffs);
        let fac = factor(&residual);
        let weight = |local: usize| lambda * (local as i64 * u.degree() as i64) / scale;
        if fac.is_squarefree() {
            for (g, _) in &fac.factors {
                let local = e as usize * g.degree().expect("nonconstant");
                out.push(PhiPlace::new(u.clone(), local, weight(local)));
            }
        } else if lambda.is_zero() {
            let local = seg.length() as usize;
            out.push(PhiPlace { lumped: true, ..PhiPlace::new(u.clone(), local, Rat::zero()) });
        } else {
            return Err(Error::out_of_scope(format!(
                "places above {u:?} are not separated by the residual polynomial"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phi::{classification_data, d_of_a, tensor_type, validate_phi_pair, Primitivity};

    fn rf(cfg: &FqConfig, num: &[u64]) -> RatFunc {
        RatFunc::from_poly(Poly::new(cfg.zero(), num.iter().map(|&a| cfg.from_u64(a)).collect()))
    }

    fn coeffs(c: &PhiComponent) -> Vec<(PlaceId, usize, Rat)> {
        c.places.iter().map(|w| (w.base_place.clone(), w.local_degree, w.deg_coeff)).collect()
    }

    fn x_place(cfg: &FqConfig, c: &[u64]) -> PlaceId {
        PlaceId::finite(Poly::new(cfg.zero(), c.iter().map(|&a| cfg.from_u64(a)).collect())).unwrap()
    }

    #[test]
    fn one_by_one_examples() {
        let f3 = FqConfig::new(3, 1);
        let t = PhiSpaceMatrix::new(&f3, 1, Matrix::from_rows(vec![vec![rf(&f3, &[0, 1])]])).unwrap();
        let res = phi_pair_of(&t, 8).unwrap();
        assert_eq!(res.pair.components.len(), 1);
        assert_eq!(
            coeffs(&res.pair.components[0]),
            vec![(PlaceId::Infinity, 1, Rat::int(-1)), (x_place(&f3, &[0, 1]), 1, Rat::int(1))]
        );

        let one = PhiSpaceMatrix::new(&f3, 1, Matrix::from_rows(vec![vec![rf(&f3, &[1])]])).unwrap();
        let res = phi_pair_of(&one, 8).unwrap();
        assert!(res.pair.components[0].places.iter().all(|w| w.deg_coeff.is_zero()));
        assert_eq!(d_of_a(&res.pair), 1);

        let f9 = level_field(&f3, 2);
        let gamma = RatFunc::constant(f9.gen());
        let g = PhiSpaceMatrix::new(&f3, 2, Matrix::from_rows(vec![vec![gamma]])).unwrap();
        let lin = g.linearization();
        assert!(lin.get(0, 0).is_polynomial() && lin.get(0, 0).num().degree() == Some(0));
        let res = phi_pair_of(&g, 8).unwrap();
        assert!(res.pair.components[0].places.iter().all(|w| w.deg_coeff.is_zero()));
    }

    #[test]
    fn half_slope_space() {
        let f2 = FqConfig::new(2, 1);
        let z = RatFunc::zero(&f2);
        let a = Matrix::from_rows(vec![vec![z.clone(), rf(&f2, &[0, 1])], vec![rf(&f2, &[1]), z]]);
        let v = PhiSpaceMatrix::new(&f2, 1, a).unwrap();
        let res = phi_pair_of(&v, 8).unwrap();
        assert_eq!(res.stable_n, 2);
        let c = &res.pair.components[0];
        assert_eq!(c.degree_over_f, 1);
        assert_eq!(
            coeffs(c),
            vec![(PlaceId::Infinity, 1, Rat::new(-1, 2)), (x_place(&f2, &[0, 1]), 1, Rat::new(1, 2))]
        );
        assert_eq!(classification_data(&res.pair).unwrap().dimension, 2);
        assert!(validate_phi_pair(&res.pair).unwrap().valid);
    }

    #[test]
    fn root_of_unity_ratio_needs_multiples() {
        let f7 = FqConfig::new(7, 1);
        let z = RatFunc::zero(&f7);
        let a = Matrix::from_rows(vec![vec![rf(&f7, &[1]), z.clone()], vec![z, rf(&f7, &[2])]]);
        let v = PhiSpaceMatrix::new(&f7, 1, a).unwrap();
        let res = phi_pair_of(&v, 12).unwrap();
        assert_eq!(res.stable_n, 3);
        assert_eq!(res.pair.total_degree(), 1);
    }

    #[test]
    fn split_algebra_and_quadratic_field() {
        let f3 = FqConfig::new(3, 1);
        let z = RatFunc::zero(&f3);
        let d = Matrix::from_rows(vec![vec![rf(&f3, &[0, 1]), z.clone()], vec![z.clone(), rf(&f3, &[1])]]);
        let res = phi_pair_of(&PhiSpaceMatrix::new(&f3, 1, d).unwrap(), 8).unwrap();
        assert_eq!(res.pair.components.len(), 2);
        assert_eq!(validate_phi_pair(&res.pair).unwrap().primitivity, Primitivity::Primitive);

        // Π with minimal polynomial x² - t(t+1)x... irreducible over F_3(t): companion of x² - t x - 1.
        let c = Matrix::from_rows(vec![vec![z.clone(), rf(&f3, &[1])], vec![rf(&f3, &[1]), rf(&f3, &[0, 1])]]);
        let res = phi_pair_of(&PhiSpaceMatrix::new(&f3, 1, c).unwrap(), 8).unwrap();
        let comp = &res.pair.components[0];
        assert_eq!(comp.degree_over_f, 2);
        assert!(comp.degree_sum().is_zero());
        assert!(validate_phi_pair(&res.pair).unwrap().valid);
    }

    #[test]
    fn tensor_of_isotypic_spaces() {
        let f2 = FqConfig::new(2, 1);
        let z = RatFunc::zero(&f2);
        let e = |p: &[u64]| {
            let m = Matrix::from_rows(vec![vec![z.clone(), rf(&f2, p)], vec![rf(&f2, &[1]), z.clone()]]);
            PhiSpaceMatrix::new(&f2, 1, m).unwrap()
        };
        let (a, b) = (e(&[0, 1]), e(&[1, 1]));
        let pa = phi_pair_of(&a, 8).unwrap().pair.components[0].clone();
        let pb = phi_pair_of(&b, 8).unwrap().pair.components[0].clone();
        let pt = phi_pair_of(&a.tensor(&b).unwrap(), 8).unwrap().pair.components[0].clone();
        let mut expect = tensor_type(&pa, &pb).unwrap();
        expect.places.sort_by(|x, y| x.base_place.cmp(&y.base_place));
        assert_eq!(coeffs(&pt), coeffs(&expect));

        let s = |p: &[u64]| PhiSpaceMatrix::new(&f2, 1, Matrix::from_rows(vec![vec![rf(&f2, p)]])).unwrap();
        let (x, y) = (s(&[0, 1]), s(&[1, 1]));
        let px = phi_pair_of(&x, 4).unwrap().pair.components[0].clone();
        let py = phi_pair_of(&y, 4).unwrap().pair.components[0].clone();
        let pxy = phi_pair_of(&x.tensor(&y).unwrap(), 4).unwrap().pair.components[0].clone();
        let mut expect = tensor_type(&px, &py).unwrap();
        expect.places.sort_by(|x, y| x.base_place.cmp(&y.base_place));
        assert_eq!(coeffs(&pxy), coeffs(&expect));
    }
}
