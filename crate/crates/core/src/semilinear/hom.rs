//! Dimension of `Hom(V_a, V_b)`: linear maps `T` with `T A = B σ(T)`.
//!
//! The equation is `F_q`-linear. Solutions whose entries are Laurent
//! polynomials supported in a window of `L` consecutive `π`-degrees form a
//! finite-dimensional `F_p`-space of dimension `d(L)`; multiplication by `π`
//! shifts windows, so `d(L+1) - d(L)` stabilizes at `k * dim_F Hom` where
//! `q = p^k`. The window is doubled until two consecutive estimates agree.

use super::{common_level, SemilinearOp};
use crate::arith::fp_linalg::EchelonBasis;
use crate::arith::{FqElem, Laurent, Ring, SlopeDatum};
use crate::{Error, Result};

/// Largest window tried before giving up.
const MAX_WINDOW: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomDim {
    /// Dimension over `F_q((π))`.
    pub dim: usize,
    /// Window length at which the increment stabilized.
    pub window: usize,
}

/// `sum over shared slopes of mult_a * mult_b`, the dimension predicted by
/// the slope decomposition (with `mult` counted as dimension, so each copy of
/// `E_{s/r}` contributes `r`).
pub fn hom_closed_form(a: &SlopeDatum, b: &SlopeDatum) -> usize {
    a.entries().iter().map(|e| (e.mult * b.mult_of(e.slope)) as usize).sum()
}

/// Solves `T A = B σ(T)` on growing windows. `window` is the starting
/// length; the default depends on the operator sizes and degree spread.
pub fn hom_space_dim(a: &SemilinearOp, b: &SemilinearOp, window: Option<usize>) -> Result<HomDim> {
    let (a, b) = common_level(a, b)?;
    let spread = a
        .matrix
        .entries()
        .iter()
        .chain(b.matrix.entries())
        .filter_map(|e| Some(e.valuation()?.abs().max(e.max_deg()?.abs())))
        .max()
        .unwrap_or(0) as usize;
    let mut len = window.unwrap_or(2 + a.dim().max(b.dim()) + spread).max(1);
    let system = HomSystem::new(&a, &b);
    let k = a.base.k();
    while len <= MAX_WINDOW {
        let d1 = system.increment(len);
        let d2 = system.increment(2 * len);
        if d1 == d2 {
            if d1 % k != 0 {
                return Err(Error::internal("solution increment not divisible by [F_q:F_p]"));
            }
            return Ok(HomDim { dim: d1 / k, window: len });
        }
        len *= 2;
    }
    Err(Error::out_of_scope(format!("hom dimension did not stabilize up to window {MAX_WINDOW}")))
}

struct HomSystem<'a> {
    a: &'a SemilinearOp,
    b: &'a SemilinearOp,
    /// `[F_{q^N} : F_p]`.
    width: usize,
    p: u64,
    basis: Vec<FqElem>,
    sigma_basis: Vec<FqElem>,
    lo: i64,
    hi: i64,
}

impl<'a> HomSystem<'a> {
    fn new(a: &'a SemilinearOp, b: &'a SemilinearOp) -> HomSystem<'a> {
        let f = a.field();
        let width = f.k();
        let basis: Vec<FqElem> = (0..width)
            .map(|i| {
                let mut c = vec![0i64; width];
                c[i] = 1;
                f.elem(&c).expect("coordinates fit")
            })
            .collect();
        let sigma_basis = basis.iter().map(|x| x.frobenius(a.base.k())).collect();
        let degs = a.matrix.entries().iter().chain(b.matrix.entries()).filter(|e| !e.is_zero());
        let lo = degs.clone().map(|e| e.min_deg()).min().unwrap_or(0);
        let hi = degs.filter_map(|e| e.max_deg()).max().unwrap_or(0);
        HomSystem { a, b, width, p: f.p(), basis, sigma_basis, lo, hi }
    }

    /// `d(len + 1) - d(len)`.
    fn increment(&self, len: usize) -> usize {
        self.solution_dim(len + 1) - self.solution_dim(len)
    }

    /// `F_p`-dimension of solutions with entries supported in degrees `0..len`.
    fn solution_dim(&self, len: usize) -> usize {
        let (da, db) = (self.a.dim(), self.b.dim());
        let ndeg = (len as i64 - 1 + self.hi - self.lo + 1) as usize;
        let vec_len = db * da * ndeg * self.width;
        let mut ech = EchelonBasis::new(self.p, vec_len);
        let mut unknowns = 0;
        let mut v = vec![0u64; vec_len];
        let add = |v: &mut [u64], row: usize, col: usize, x: &Laurent<FqElem>, shift: i64, neg: bool| {
            for (d, c) in x.terms() {
                let slot = (d + shift - self.lo) as usize;
                let base = ((row * da + col) * ndeg + slot) * self.width;
                for (i, &a) in c.coords().iter().enumerate() {
                    let a = if neg { (self.p - a) % self.p } else { a };
                    v[base + i] = (v[base + i] + a) % self.p;
                }
            }
        };
        for i in 0..db {
            for j in 0..da {
                for e in 0..len as i64 {
                    for beta in 0..self.width {
                        v.iter_mut().for_each(|x| *x = 0);
                        let xb = Laurent::constant(self.basis[beta].clone());
                        let sxb = Laurent::constant(self.sigma_basis[beta].clone());
                        // (T A)_{i c} gains x^beta π^e A_{j c}.
                        for c in 0..da {
                            add(&mut v, i, c, &xb.times(self.a.matrix.get(j, c)), e, false);
                        }
                        // (B σ(T))_{r j} gains B_{r i} σ(x^beta) π^e.
                        for r in 0..db {
                            add(&mut v, r, j, &self.b.matrix.get(r, i).times(&sxb), e, true);
                        }
                        ech.insert(&v);
                        unknowns += 1;
                    }
                }
            }
        }
        unknowns - ech.rank()
    }
}
