//! Dense Gaussian elimination over a prime field `F_p`.

/// Incremental row echelon basis over `F_p`; supports rank queries on large
/// sparse-ish systems. Characteristic 2 uses packed 64-bit words.
pub struct EchelonBasis {
    p: u64,
    width: usize,
    rows: Vec<(usize, Row)>,
}

enum Row {
    Bits(Vec<u64>),
    Dense(Vec<u32>),
}

impl EchelonBasis {
    pub fn new(p: u64, width: usize) -> EchelonBasis {
        EchelonBasis { p, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector of length `width` (entries reduced mod p); returns
    /// whether it was independent of the rows so far.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        if self.p == 2 {
            let mut bits = vec![0u64; self.width.div_ceil(64)];
            for (i, &a) in v.iter().enumerate() {
                if a & 1 == 1 {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            for (piv, row) in &self.rows {
                if bits[piv / 64] >> (piv % 64) & 1 == 1 {
                    if let Row::Bits(r) = row {
                        for (b, x) in bits.iter_mut().zip(r) {
                            *b ^= x;
                        }
                    }
                }
            }
            let lead = bits
                .iter()
                .enumerate()
                .find(|(_, w)| **w != 0)
                .map(|(i, w)| i * 64 + w.trailing_zeros() as usize);
            match lead {
                None => false,
                Some(piv) => {
                    self.rows.push((piv, Row::Bits(bits)));
                    true
                }
            }
        } else {
            let p = self.p;
            let mut r: Vec<u32> = v.iter().map(|&a| (a % p) as u32).collect();
            for (piv, row) in &self.rows {
                let c = r[*piv] as u64;
                if c != 0 {
                    if let Row::Dense(b) = row {
                        for (x, &y) in r.iter_mut().zip(b).skip(*piv) {
                            if y != 0 {
                                *x = ((*x as u64 + (p - c) * y as u64) % p) as u32;
                            }
                        }
                    }
                }
            }
            match r.iter().position(|&a| a != 0) {
                None => false,
                Some(piv) => {
                    let inv = inv_mod(r[piv] as u64, p);
                    for x in r.iter_mut() {
                        *x = ((*x as u64 * inv) % p) as u32;
                    }
                    self.rows.push((piv, Row::Dense(r)));
                    true
                }
            }
        }
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let mut e = p - 2;
    let mut b = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[Vec<u64>], p: u64) -> usize {
    let width = vectors.first().map_or(0, |v| v.len());
    let mut basis = EchelonBasis::new(p, width);
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Solves `sum_j x_j * cols[j] = rhs`. Returns `None` when inconsistent or
/// when the columns are dependent.
pub fn solve_columns(cols: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = cols.len();
    let m = rhs.len();
    // Augmented matrix, one row per coordinate.
    let mut a: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[i] % p).collect();
            row.push(rhs[i] % p);
            row
        })
        .collect();
    let mut piv_row = 0;
    for col in 0..n {
        let r = (piv_row..m).find(|&r| a[r][col] != 0)?;
        a.swap(piv_row, r);
        let inv = inv_mod(a[piv_row][col], p);
        for x in a[piv_row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m {
            if r != piv_row && a[r][col] != 0 {
                let c = a[r][col];
                let (src, dst) = if r < piv_row {
                    let (lo, hi) = a.split_at_mut(piv_row);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[piv_row], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = (*d + (p - c) * s) % p;
                }
            }
        }
        piv_row += 1;
    }
    if a[piv_row..].iter().any(|row| row[n] != 0) {
        return None;
    }
    Some((0..n).map(|i| a[i][n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small() {
        let v = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank(&v, 2), 2);
        assert_eq!(rank(&v, 3), 3);
    }

    #[test]
    fn solve_unique() {
        let cols = vec![vec![1, 0, 2], vec![0, 1, 1]];
        assert_eq!(solve_columns(&cols, &[2, 3, 2], 5), Some(vec![2, 3]));
        assert_eq!(solve_columns(&cols, &[2, 3, 0], 5), None);
    }
}
