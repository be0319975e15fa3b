//! Dense matrices over a [`Ring`], row-major.

use std::fmt;

use super::{Field, Poly, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    zero: R,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(like: &R, rows: usize, cols: usize) -> Matrix<R> {
        let zero = like.zero_like();
        Matrix { data: vec![zero.clone(); rows * cols], zero, rows, cols }
    }

    pub fn identity(like: &R, n: usize) -> Matrix<R> {
        let mut m = Matrix::zeros(like, n, n);
        for i in 0..n {
            m.data[i * n + i] = like.one_like();
        }
        m
    }

    /// Panics on ragged rows or an empty row list.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Matrix<R> {
        let r = rows.len();
        let zero = rows.first().and_then(|x| x.first()).expect("nonempty matrix").zero_like();
        let c = rows[0].len();
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { zero, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(like: &R, rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Matrix<R> {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { zero: like.zero_like(), rows, cols, data }
    }

    pub fn diagonal(like: &R, d: &[R]) -> Matrix<R> {
        Matrix::from_fn(like, d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { like.zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, like: &S, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { zero: like.zero_like(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix<R> {
        Matrix::from_fn(&self.zero, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn plus(&self, o: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect();
        Matrix { zero: self.zero.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn minus(&self, o: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect();
        Matrix { zero: self.zero.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, a: &R) -> Matrix<R> {
        self.map(&self.zero, |x| x.times(a))
    }

    pub fn times(&self, o: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Matrix::zeros(&self.zero, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(self.zero.clone(), |acc, (a, b)| acc.plus(&a.times(b))))
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix<R> {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.zero, self.rows);
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

    /// Kronecker product; index `(i1*r2 + i2, j1*c2 + j2)`.
    pub fn kron(&self, o: &Matrix<R>) -> Matrix<R> {
        Matrix::from_fn(&self.zero, self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols).times(o.get(i % o.rows, j % o.cols))
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Matrix<R>) -> Matrix<R> {
        Matrix::from_fn(&self.zero, self.rows + o.rows, self.cols + o.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => o.get(i - self.rows, j - self.cols).clone(),
                _ => self.zero.clone(),
            }
        })
    }

    /// Characteristic polynomial `det(x I - A)` by Berkowitz's division-free
    /// recurrence. Panics on non-square input.
    pub fn charpoly(&self) -> Poly<R> {
        assert!(self.is_square(), "charpoly of non-square matrix");
        let n = self.rows;
        let one = self.zero.one_like();
        // Coefficients from the highest degree down.
        let mut p: Vec<R> = vec![one.clone()];
        for r in 0..n {
            // A_r is the leading r x r block; S = column r above the diagonal,
            // R = row r left of the diagonal, c = A[r][r].
            let c = self.get(r, r).clone();
            let mut t = vec![one.clone(), c.negate()];
            let mut v: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rv = (0..r).fold(self.zero.clone(), |acc, j| acc.plus(&self.get(r, j).times(&v[j])));
                t.push(rv.negate());
                v = (0..r)
                    .map(|i| (0..r).fold(self.zero.clone(), |acc, j| acc.plus(&self.get(i, j).times(&v[j]))))
                    .collect();
            }
            let mut np = vec![self.zero.clone(); r + 2];
            for (i, slot) in np.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate().take(i.min(r) + 1) {
                    if i - j < t.len() && !pj.is_zero() {
                        *slot = slot.plus(&t[i - j].times(pj));
                    }
                }
            }
            p = np;
        }
        p.reverse();
        Poly::new(self.zero.clone(), p)
    }

    pub fn det(&self) -> R {
        let cp = self.charpoly();
        let c0 = cp.coeff(0);
        if self.rows % 2 == 1 {
            c0.negate()
        } else {
            c0
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, pr * m.cols + j);
            }
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j).times(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j).minus(&f.times(m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![self.zero.clone(); self.cols];
                x[f] = self.zero.one_like();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = m.get(r, f).negate();
                }
                x
            })
            .collect()
    }

    /// Some solution of `A x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "shape mismatch");
        let aug = Matrix::from_fn(&self.zero, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(&self.zero, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.zero.one_like()
            } else {
                self.zero.clone()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(&self.zero, n, n, |i, j| m.get(i, n + j).clone()))
    }

    /// Minimal polynomial (monic) via the first linear dependency among
    /// `I, A, A^2, ...`.
    pub fn minimal_polynomial(&self) -> Poly<F> {
        assert!(self.is_square(), "minimal polynomial of non-square matrix");
        let n = self.rows;
        let mut powers: Vec<Matrix<F>> = vec![Matrix::identity(&self.zero, n)];
        loop {
            let next = powers.last().expect("nonempty").times(self);
            let k = powers.len();
            let sys = Matrix::from_fn(&self.zero, n * n, k, |i, j| powers[j].data[i].clone());
            if let Some(c) = sys.solve(&next.data) {
                let mut coeffs: Vec<F> = c.iter().map(|x| x.negate()).collect();
                coeffs.push(self.zero.one_like());
                return Poly::new(self.zero.clone(), coeffs);
            }
            powers.push(next);
        }
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect())
    }

    /// Permutation-expansion determinant as an independent oracle.
    fn leibniz(a: &Matrix<Rat>) -> Rat {
        let n = a.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Rat::zero();
        fn rec(k: usize, perm: &mut Vec<usize>, a: &Matrix<Rat>, total: &mut Rat) {
            let n = perm.len();
            if k == n {
                let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
                let prod = (0..n).fold(Rat::one(), |acc, i| acc * *a.get(i, perm[i]));
                *total = *total + if inv % 2 == 0 { prod } else { -prod };
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(k + 1, perm, a, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, a, &mut total);
        total
    }

    #[test]
    fn charpoly_2x2() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let cp = a.charpoly();
        assert_eq!(cp.coeffs(), &[Rat::int(-2), Rat::int(-5), Rat::int(1)]);
        assert_eq!(a.det(), Rat::int(-2));
    }

    proptest! {
        #[test]
        fn charpoly_matches_oracles(n in 1usize..5, vals in prop::collection::vec(-4i64..5, 16)) {
            let a = Matrix::from_fn(&Rat::zero(), n, n, |i, j| Rat::int(vals[i * 4 + j]));
            let cp = a.charpoly();
            prop_assert_eq!(a.det(), leibniz(&a));
            // Cayley-Hamilton.
            let mut acc = Matrix::zeros(&Rat::zero(), n, n);
            for (k, c) in cp.coeffs().iter().enumerate() {
                acc = acc.plus(&a.pow(k as u64).scale(c));
            }
            prop_assert!(acc.entries().iter().all(|x| x.is_zero()));
            let mp = a.minimal_polynomial();
            prop_assert!(cp.div_exact(&mp).is_some());
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(inv.times(&a), Matrix::identity(&Rat::zero(), n));
            } else {
                prop_assert!(a.det().is_zero());
            }
            prop_assert_eq!(a.rank() + a.kernel().len(), n);
        }
    }
}
