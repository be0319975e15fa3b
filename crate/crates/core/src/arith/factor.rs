//! Factorization over finite fields: square-free decomposition,
//! distinct-degree splitting, then Cantor–Zassenhaus equal-degree splitting
//! driven by a seeded ChaCha stream.
//!
//! The output order is canonical (degree, then coefficients low to high), so
//! the seed only affects running time, never the result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use super::FiniteField;

/// Seed used by [`factor`].
pub const DEFAULT_SEED: u64 = 0x6b6f_7474_7769_747a;

/// `f = unit * prod(g^e)` with every `g` monic irreducible.
#[derive(Clone, PartialEq)]
pub struct Factorization<F> {
    pub unit: F,
    pub factors: Vec<(Poly<F>, usize)>,
    pub seed: u64,
}

impl<F: FiniteField> std::fmt::Debug for Factorization<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Factorization")
            .field("unit", &self.unit)
            .field("factors", &self.factors)
            .field("seed", &self.seed)
            .finish()
    }
}

impl<F: FiniteField> Factorization<F> {
    /// Multiply the factorization back out.
    pub fn expand(&self) -> Poly<F> {
        let mut acc = Poly::constant(self.unit.clone());
        for (g, e) in &self.factors {
            acc = acc.times(&g.pow(*e as u64));
        }
        acc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat(g.degree().unwrap_or(0)).take(*e))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

/// Canonical ordering key for monic polynomials over a finite field.
pub fn sort_key<F: FiniteField>(g: &Poly<F>) -> (usize, Vec<u128>) {
    (g.coeffs().len(), g.coeffs().iter().map(|c| c.index()).collect())
}

pub fn factor<F: FiniteField>(f: &Poly<F>) -> Factorization<F> {
    factor_with_seed(f, DEFAULT_SEED)
}

/// Panics on the zero polynomial.
pub fn factor_with_seed<F: FiniteField>(f: &Poly<F>, seed: u64) -> Factorization<F> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let unit = f.lc();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sq, mult) in squarefree_decomposition(&f.monic()) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort_by_key(|(g, _)| sort_key(g));
    Factorization { unit, factors, seed }
}

fn pth_root_poly<F: FiniteField>(f: &Poly<F>) -> Poly<F> {
    let p = f.zero_elem().characteristic() as usize;
    let c = f.coeffs().iter().step_by(p).map(|a| a.pth_root()).collect();
    Poly::new(f.zero_elem().clone(), c)
}

/// Square-free parts `(g_i, i)` of a monic polynomial, `f = prod g_i^i`.
pub fn squarefree_decomposition<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    sff(f, 1, &mut out);
    out
}

fn sff<F: FiniteField>(f: &Poly<F>, mult: usize, out: &mut Vec<(Poly<F>, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.zero_elem().characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        sff(&pth_root_poly(f), mult * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * mult));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        sff(&pth_root_poly(&c), mult * p, out);
    }
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let q = f.zero_elem().order();
    let x = Poly::x(f.zero_elem());
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while f.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(q, &f);
        let g = f.gcd(&h.minus(&x));
        if g.degree().unwrap_or(0) > 0 {
            f = f.div_exact(&g).expect("gcd divides");
            h = h.rem(&f);
            out.push((g, d));
        }
    }
    if let Some(n) = f.degree().filter(|&n| n > 0) {
        out.push((f, n));
    }
    out
}

fn random_poly<F: FiniteField>(like: &F, deg_bound: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    let q = like.order();
    let c = (0..deg_bound).map(|_| like.from_index(rng.gen_range(0..q))).collect();
    Poly::new(like.zero_like(), c)
}

fn equal_degree<F: FiniteField>(g: &Poly<F>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let n = g.degree().unwrap_or(0);
    if n == d {
        return vec![g.clone()];
    }
    let z = g.zero_elem();
    let q = z.order();
    let p = z.characteristic();
    loop {
        let a = random_poly(z, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace to F_2 from F_{q^d}.
            let m = (q.trailing_zeros() as usize) * d;
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..m {
                t = t.mulmod(&t, g);
                s = s.plus(&t);
            }
            s
        } else {
            // a^((q^d - 1)/2) = prod_i (a^((q-1)/2))^(q^i)
            let c = a.powmod((q - 1) / 2, g);
            let mut acc = c.clone();
            let mut ci = c;
            for _ in 1..d {
                ci = ci.powmod(q, g);
                acc = acc.mulmod(&ci, g);
            }
            acc.minus(&Poly::one(z))
        };
        let h = g.gcd(&b);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let other = g.div_exact(&h).expect("gcd divides");
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Rabin's test: no factor of degree at most `deg/2`.
pub fn is_irreducible<F: FiniteField>(f: &Poly<F>) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let f = f.monic();
    let q = f.zero_elem().order();
    let x = Poly::x(f.zero_elem());
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.powmod(q, &f);
        if f.gcd(&h.minus(&x)).degree().unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}
