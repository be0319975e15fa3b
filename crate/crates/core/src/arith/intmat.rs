//! Integer matrices and Smith normal form.

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i128>], cols: usize) -> IntMatrix {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().copied().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn times(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..o.cols {
                        out.data[i * o.cols + j] += a * o.get(k, j);
                    }
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i128]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn smith(&self) -> Smith {
        smith_normal_form(self)
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...` (all positive) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub invariant_factors: Vec<i128>,
    pub rank: usize,
}

impl Smith {
    /// Cokernel is torsion-free.
    pub fn is_saturated(&self) -> bool {
        self.invariant_factors.iter().all(|&d| d == 1)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a.get(i, j) != 0)
            .min_by_key(|&(i, j)| a.get(i, j).abs());
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a.get(i, t).div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        let v = a.get(i, j) - q * a.get(t, j);
                        a.set(i, j, v);
                    }
                }
                if a.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_euclid(p);
                if q != 0 {
                    for i in t..rows {
                        let v = a.get(i, j) - q * a.get(i, t);
                        a.set(i, j, v);
                    }
                }
                if a.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Divisibility of the rest of the block by the pivot.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a.get(i, j) % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a.get(t, j) + a.get(i, j);
                            a.set(t, j, v);
                        }
                        continue;
                    }
                }
            }
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| (i == t || j == t) && a.get(i, j) != 0)
                .min_by_key(|&(i, j)| a.get(i, j).abs())
                .expect("pivot row or column nonzero");
            swap_rows(&mut a, t, pivot.0);
            swap_cols(&mut a, t, pivot.1);
        }
        diag.push(a.get(t, t).abs());
        t += 1;
    }
    Smith { rank: diag.len(), invariant_factors: diag }
}

fn swap_rows(a: &mut IntMatrix, i: usize, k: usize) {
    if i != k {
        for j in 0..a.cols {
            a.data.swap(i * a.cols + j, k * a.cols + j);
        }
    }
}

fn swap_cols(a: &mut IntMatrix, j: usize, k: usize) {
    if j != k {
        for i in 0..a.rows {
            a.data.swap(i * a.cols + j, i * a.cols + k);
        }
    }
}
