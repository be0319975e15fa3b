//! The finite field `F_{p^k}` as `F_p[x]/(m)`, where `m` is the
//! lexicographically smallest monic irreducible of degree `k` under the
//! coefficient order `(c_0, ..., c_{k-1})`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::fp_linalg;
use super::poly::Poly;
use super::{factor::is_irreducible, pow, FiniteField, Field, Ring};

struct FqInner {
    p: u64,
    k: usize,
    /// `c_0..c_{k-1}` of the monic modulus.
    modulus: Vec<u64>,
}

/// Shared description of `F_{p^k}`. Cheap to clone.
#[derive(Clone)]
pub struct FqConfig(Arc<FqInner>);

impl PartialEq for FqConfig {
    fn eq(&self, o: &FqConfig) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.p == o.0.p && self.0.k == o.0.k)
    }
}

impl Eq for FqConfig {}

impl fmt::Debug for FqConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.k)
    }
}

fn is_small_prime(p: u64) -> bool {
    p >= 2 && p < (1 << 31) && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FqConfig {
    /// Panics unless `p` is a prime below `2^31` and `1 <= k` with `p^k`
    /// fitting in `u64`.
    pub fn new(p: u64, k: usize) -> FqConfig {
        Self::try_new(p, k).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(p: u64, k: usize) -> Result<FqConfig, String> {
        if !is_small_prime(p) {
            return Err(format!("{p} is not a supported prime"));
        }
        if k == 0 || (p as u128).checked_pow(k as u32).is_none_or(|q| q > u64::MAX as u128) {
            return Err(format!("unsupported extension degree {k} over F_{p}"));
        }
        static CACHE: OnceLock<Mutex<HashMap<(u64, usize), FqConfig>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(c) = cache.lock().expect("cache lock").get(&(p, k)) {
            return Ok(c.clone());
        }
        let cfg = if k == 1 {
            FqConfig(Arc::new(FqInner { p, k, modulus: vec![0] }))
        } else {
            let fp = FqConfig::new(p, 1);
            let q = (p as u128).pow(k as u32);
            let modulus = (0..q)
                .map(|idx| {
                    let mut d = Vec::with_capacity(k);
                    let mut r = idx;
                    for _ in 0..k {
                        d.push((r % p as u128) as u64);
                        r /= p as u128;
                    }
                    d
                })
                .find(|c| {
                    let mut coeffs: Vec<FqElem> = c.iter().map(|&a| fp.from_u64(a)).collect();
                    coeffs.push(fp.one());
                    is_irreducible(&Poly::new(fp.zero(), coeffs))
                })
                .expect("irreducible polynomials exist in every degree");
            FqConfig(Arc::new(FqInner { p, k, modulus }))
        };
        cache.lock().expect("cache lock").insert((p, k), cfg.clone());
        Ok(cfg)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Number of elements `p^k`.
    pub fn q(&self) -> u64 {
        self.0.p.pow(self.0.k as u32)
    }

    /// Coefficients of the monic modulus, constant term first, leading 1 included.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.0.modulus.clone();
        m.push(1);
        m
    }

    pub fn zero(&self) -> FqElem {
        FqElem { cfg: self.clone(), c: vec![0; self.0.k] }
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, a: u64) -> FqElem {
        let mut e = self.zero();
        e.c[0] = a % self.0.p;
        e
    }

    pub fn from_i64(&self, a: i64) -> FqElem {
        self.from_u64(a.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element from coordinates on the power basis; missing entries are zero.
    /// Fails when more than `k` coordinates are given.
    pub fn elem(&self, coords: &[i64]) -> Option<FqElem> {
        if coords.len() > self.0.k {
            return None;
        }
        let mut e = self.zero();
        let p = self.0.p as i64;
        for (slot, &a) in e.c.iter_mut().zip(coords) {
            *slot = a.rem_euclid(p) as u64;
        }
        Some(e)
    }

    /// The class of `x`; generates the field over `F_p` when `k > 1`.
    pub fn gen(&self) -> FqElem {
        if self.0.k == 1 {
            return self.from_u64((self.0.p - self.0.modulus[0]) % self.0.p);
        }
        let mut e = self.zero();
        e.c[1] = 1;
        e
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let z = self.zero();
        (0..self.q() as u128).map(move |i| z.from_index(i))
    }
}

/// An element of `F_{p^k}` in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    cfg: FqConfig,
    c: Vec<u64>,
}

impl std::hash::Hash for FqConfig {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        (self.0.p, self.0.k).hash(h);
    }
}

impl FqElem {
    pub fn config(&self) -> &FqConfig {
        &self.cfg
    }

    /// Power-basis coordinates in `[0, p)`.
    pub fn coords(&self) -> &[u64] {
        &self.c
    }

    /// Coordinates with trailing zeros removed.
    pub fn trimmed_coords(&self) -> Vec<u64> {
        let mut v = self.c.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn pow(&self, e: u128) -> FqElem {
        pow(self, e)
    }

    /// `x -> x^(p^e)`.
    pub fn frobenius(&self, e: usize) -> FqElem {
        let mut x = self.clone();
        for _ in 0..e % self.cfg.0.k {
            x = x.pow(self.cfg.0.p as u128);
        }
        x
    }

    /// Membership of the subfield `F_{p^d}`: fixed by `x -> x^(p^d)`.
    pub fn in_subfield(&self, d: usize) -> bool {
        self.frobenius(d) == *self
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cfg.0.k == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{:?}", self.c)
        }
    }
}

impl Ring for FqElem {
    fn zero_like(&self) -> FqElem {
        self.cfg.zero()
    }

    fn one_like(&self) -> FqElem {
        self.cfg.one()
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&a| a == 0)
    }

    fn plus(&self, o: &FqElem) -> FqElem {
        let p = self.cfg.0.p;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % p).collect();
        FqElem { cfg: self.cfg.clone(), c }
    }

    fn minus(&self, o: &FqElem) -> FqElem {
        let p = self.cfg.0.p;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + p - b) % p).collect();
        FqElem { cfg: self.cfg.clone(), c }
    }

    fn times(&self, o: &FqElem) -> FqElem {
        let p = self.cfg.0.p;
        let k = self.cfg.0.k;
        if k == 1 {
            return FqElem { cfg: self.cfg.clone(), c: vec![self.c[0] * o.c[0] % p] };
        }
        let mut t = vec![0u64; 2 * k - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                t[i + j] = (t[i + j] + a * b) % p;
            }
        }
        let m = &self.cfg.0.modulus;
        for d in (k..2 * k - 1).rev() {
            let lead = t[d];
            if lead == 0 {
                continue;
            }
            for (j, &mj) in m.iter().enumerate() {
                t[d - k + j] = (t[d - k + j] + (p - lead) * mj) % p;
            }
            t[d] = 0;
        }
        t.truncate(k);
        FqElem { cfg: self.cfg.clone(), c: t }
    }

    fn negate(&self) -> FqElem {
        let p = self.cfg.0.p;
        let c = self.c.iter().map(|a| (p - a) % p).collect();
        FqElem { cfg: self.cfg.clone(), c }
    }

    fn from_i64_like(&self, n: i64) -> FqElem {
        self.cfg.from_i64(n)
    }
}

impl Field for FqElem {
    fn inverse(&self) -> Option<FqElem> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.cfg.q() as u128 - 2))
    }
}

impl FiniteField for FqElem {
    fn characteristic(&self) -> u64 {
        self.cfg.0.p
    }

    fn order(&self) -> u128 {
        self.cfg.q() as u128
    }

    fn from_index(&self, mut idx: u128) -> FqElem {
        let p = self.cfg.0.p as u128;
        let mut e = self.cfg.zero();
        for slot in e.c.iter_mut() {
            *slot = (idx % p) as u64;
            idx /= p;
        }
        e
    }

    fn index(&self) -> u128 {
        let p = self.cfg.0.p as u128;
        self.c.iter().rev().fold(0u128, |acc, &a| acc * p + a as u128)
    }

    fn pth_root(&self) -> FqElem {
        self.frobenius(self.cfg.0.k - 1)
    }
}

/// The embedding `F_{p^a} -> F_{p^b}` for `a | b`, sending the generator of
/// the source to the smallest root (by index) of its modulus in the target.
#[derive(Clone)]
pub struct FqEmbedding {
    src: FqConfig,
    dst: FqConfig,
    /// Images of `1, x, ..., x^(a-1)`.
    basis_images: Vec<FqElem>,
}

impl fmt::Debug for FqEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.src, self.dst)
    }
}

impl FqEmbedding {
    /// Panics unless both fields share the characteristic and `a | b`.
    pub fn new(src: &FqConfig, dst: &FqConfig) -> FqEmbedding {
        assert_eq!(src.p(), dst.p(), "embedding across characteristics");
        assert_eq!(dst.k() % src.k(), 0, "no embedding F_p^{} -> F_p^{}", src.k(), dst.k());
        static CACHE: OnceLock<Mutex<HashMap<(u64, usize, usize), FqEmbedding>>> = OnceLock::new();
        let key = (src.p(), src.k(), dst.k());
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(e) = cache.lock().expect("cache lock").get(&key) {
            return e.clone();
        }
        let root = if src.k() == 1 {
            dst.zero()
        } else {
            let coeffs = src.modulus().iter().map(|&c| dst.from_u64(c)).collect();
            let m = Poly::new(dst.zero(), coeffs);
            super::factor::factor(&m)
                .factors
                .iter()
                .filter(|(g, _)| g.degree() == Some(1))
                .map(|(g, _)| g.coeff(0).negate())
                .min_by_key(|r| r.index())
                .expect("modulus splits in an extension field")
        };
        let basis_images = (0..src.k()).map(|i| root.pow(i as u128)).collect();
        let emb = FqEmbedding { src: src.clone(), dst: dst.clone(), basis_images };
        cache.lock().expect("cache lock").insert(key, emb.clone());
        emb
    }

    pub fn source(&self) -> &FqConfig {
        &self.src
    }

    pub fn target(&self) -> &FqConfig {
        &self.dst
    }

    pub fn apply(&self, x: &FqElem) -> FqElem {
        debug_assert_eq!(x.config(), &self.src);
        x.c.iter()
            .zip(&self.basis_images)
            .fold(self.dst.zero(), |acc, (&a, b)| acc.plus(&b.times(&self.dst.from_u64(a))))
    }

    /// The unique preimage, if `y` lies in the image.
    pub fn preimage(&self, y: &FqElem) -> Option<FqElem> {
        let p = self.dst.p();
        let cols: Vec<Vec<u64>> = self.basis_images.iter().map(|b| b.c.clone()).collect();
        let sol = fp_linalg::solve_columns(&cols, &y.c, p)?;
        Some(FqElem { cfg: self.src.clone(), c: sol })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_match_examples() {
        assert_eq!(FqConfig::new(2, 1).modulus(), vec![0, 1]);
        assert_eq!(FqConfig::new(2, 2).modulus(), vec![1, 1, 1]);
        assert_eq!(FqConfig::new(3, 2).modulus(), vec![1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2, 1), (2, 3), (3, 2), (5, 1)] {
            let f = FqConfig::new(p, k);
            let els: Vec<FqElem> = f.elements().collect();
            assert_eq!(els.len() as u64, f.q());
            for a in &els {
                if !a.is_zero() {
                    assert!(a.times(&a.inverse().unwrap()).is_one());
                }
                assert_eq!(a.pow(f.q() as u128), *a);
                assert_eq!(a.pth_root().pow(p as u128), *a);
                assert_eq!(f.zero().from_index(a.index()), *a);
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        let f = FqConfig::new(2, 4);
        let g = f.gen();
        let ord = (1..16u128).find(|&e| g.pow(e).is_one()).unwrap();
        assert_eq!(ord, 15);
    }

    #[test]
    fn embedding_is_ring_hom_and_invertible_on_image() {
        let src = FqConfig::new(2, 2);
        let dst = FqConfig::new(2, 6);
        let e = FqEmbedding::new(&src, &dst);
        for a in src.elements() {
            for b in src.elements() {
                assert_eq!(e.apply(&a.times(&b)), e.apply(&a).times(&e.apply(&b)));
                assert_eq!(e.apply(&a.plus(&b)), e.apply(&a).plus(&e.apply(&b)));
            }
            assert_eq!(e.preimage(&e.apply(&a)), Some(a.clone()));
            assert!(e.apply(&a).in_subfield(2));
        }
        assert_eq!(e.preimage(&dst.gen()), None);
    }
}
