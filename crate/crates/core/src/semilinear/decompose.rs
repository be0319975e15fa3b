//! Splitting the cyclic isocrystal `V_{m,n}` (basis `v, Φv, ..., Φ^{n-1}v`,
//! `Φ^n v = π^m v`) into `d = gcd(m, n)` copies of `E_{(m/d)/(n/d)}`.
//!
//! With `r = n/d`, `s = m/d` and `Ψ = Σ_j π^{sj} Φ^{r(d-1-j)}` one has
//! `(Φ^r - π^s) Ψ = Φ^n - π^m`, which kills `V_{m,n}`, so each `Ψ(a v)` is
//! fixed by `π^{-s} Φ^r`. Taking `a` over a power basis of `F_{q^n}` over
//! `F_{q^r}` gives `d` blocks `⟨Ψ(a v), ..., Φ^{r-1} Ψ(a v)⟩`.

use num_integer::Integer;

use super::{companion_block, newton_slopes, LMatrix, SemilinearOp};
use crate::arith::{FqConfig, FqElem, Laurent, Matrix, Rat, Ring, SlopeDatum};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct IsoclinicBlock {
    /// `w, Φw, ..., Φ^{r-1} w` in the coordinates of `V_{m,n}`.
    pub vectors: Vec<Vec<Laurent<FqElem>>>,
    pub slope: Rat,
    /// Restriction of `Φ` in the block basis; equals the standard form.
    pub restricted: SemilinearOp,
}

#[derive(Clone, Debug)]
pub struct IsoclinicDecomposition {
    pub op: SemilinearOp,
    pub blocks: Vec<IsoclinicBlock>,
    /// Columns are the block vectors, block by block.
    pub change_of_basis: LMatrix,
    /// `A σ(P) = P D` with `D` block diagonal in standard forms, and `det P ≠ 0`.
    pub verified: bool,
}

pub fn decompose_isoclinic(base: &FqConfig, m: i64, n: usize) -> Result<IsoclinicDecomposition> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let d = m.gcd(&(n as i64)) as usize;
    let r = n / d;
    let s = m / d as i64;
    let op = companion_block(base, m, n, n);
    let f = op.field().clone();
    let z = Laurent::zero(&f.zero());
    let gamma = f.gen();

    let mut blocks = Vec::with_capacity(d);
    let mut columns: Vec<Vec<Laurent<FqElem>>> = Vec::with_capacity(n);
    for i in 0..d {
        let a = gamma.pow(i as u128);
        let mut w = vec![z.clone(); n];
        for kk in 0..d {
            let coeff = op.sigma_pow(&Laurent::constant(a.clone()), r * kk);
            w[r * kk] = coeff.times(&Laurent::pi_pow(&f.zero(), s * (d - 1 - kk) as i64));
        }
        let mut vectors = vec![w];
        for _ in 1..r {
            let next = op.apply(vectors.last().expect("nonempty"));
            vectors.push(next);
        }
        let back = op.apply(vectors.last().expect("nonempty"));
        let expected: Vec<_> = vectors[0].iter().map(|x| x.times(&Laurent::pi_pow(&f.zero(), s))).collect();
        if back != expected {
            return Err(Error::internal("Ψ(a v) is not fixed by π^{-s} Φ^r"));
        }
        columns.extend(vectors.iter().cloned());
        let restricted = companion_block(base, s, r, n);
        blocks.push(IsoclinicBlock { vectors, slope: Rat::new(s, r as i64), restricted });
    }

    let p = Matrix::from_fn(&z, n, n, |i, j| columns[j][i].clone());
    let dmat = blocks
        .iter()
        .map(|b| b.restricted.matrix().clone())
        .reduce(|acc, b| acc.direct_sum(&b))
        .expect("at least one block");
    let lhs = op.matrix().times(&op.sigma_matrix(&p, 1));
    let rhs = p.times(&dmat);
    let full_rank = !p.det().is_zero();
    let slopes_ok = blocks
        .iter()
        .all(|b| newton_slopes(&b.restricted) == SlopeDatum::from_pairs([(b.slope, r as u64)]));
    let verified = lhs == rhs && full_rank && slopes_ok;
    if !verified {
        return Err(Error::internal("isoclinic decomposition failed verification"));
    }
    Ok(IsoclinicDecomposition { op, blocks, change_of_basis: p, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_block_counts() {
        let base = FqConfig::new(2, 1);
        for (m, n, d) in [(2, 4, 2), (0, 3, 3), (3, 6, 3), (-2, 4, 2), (1, 5, 1), (4, 6, 2)] {
            let dec = decompose_isoclinic(&base, m, n).unwrap();
            assert_eq!(dec.blocks.len(), d);
            assert!(dec.verified);
            for b in &dec.blocks {
                assert_eq!(b.slope, Rat::new(m, n as i64));
            }
        }
    }

    #[test]
    fn works_over_odd_characteristic() {
        let base = FqConfig::new(3, 1);
        let dec = decompose_isoclinic(&base, 4, 6).unwrap();
        assert_eq!(dec.blocks.len(), 2);
        assert_eq!(newton_slopes(&dec.op).pairs(), vec![(Rat::new(2, 3), 6)]);
    }
}
