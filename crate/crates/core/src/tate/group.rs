//! Finite groups by multiplication table, element `0` the identity.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    /// `table[a][b] = a·b`.
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0, "cyclic group of order zero");
        FiniteGroup { table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() }
    }

    /// `C_2 × C_2`.
    pub fn klein() -> FiniteGroup {
        FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2))
    }

    /// `(a, b)` is numbered `a·|H| + b`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (self.order(), other.order());
        let table = (0..m * n)
            .map(|x| (0..m * n).map(|y| self.mul(x / n, y / n) * n + other.mul(x % n, y % n)).collect())
            .collect();
        FiniteGroup { table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("validated group")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        if n == 0 || self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("group table must be square with entries in range"));
        }
        if (0..n).any(|a| self.mul(0, a) != a || self.mul(a, 0) != a) {
            return Err(Error::invalid("element 0 must be the identity"));
        }
        for a in 0..n {
            if !(0..n).any(|b| self.mul(a, b) == 0) {
                return Err(Error::invalid(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::invalid("group table is not associative"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let n = self.order();
        h.contains(&0)
            && h.iter().all(|&a| a < n)
            && h.iter().all(|&a| h.iter().all(|&b| h.contains(&self.mul(a, self.inverse(b)))))
    }

    /// All subgroups as sorted element lists, by brute force over subsets.
    pub fn subgroups(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.order();
        if n > 16 {
            return Err(Error::out_of_scope("subgroup enumeration is limited to order 16"));
        }
        Ok((0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|h| self.is_subgroup(h))
            .collect())
    }

    /// Left cosets `gH`, each sorted, ordered by smallest element.
    pub fn cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    /// `G / N` with the projection; cosets numbered as in [`Self::cosets`].
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) {
            return Err(Error::invalid("quotient by a non-subgroup"));
        }
        let n = self.order();
        let normal_ok = (0..n).all(|g| normal.iter().all(|&x| normal.contains(&self.mul(self.mul(g, x), self.inverse(g)))));
        if !normal_ok {
            return Err(Error::invalid("quotient by a non-normal subgroup"));
        }
        let cosets = self.cosets(normal);
        let mut proj = vec![0; n];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                proj[x] = i;
            }
        }
        let table = cosets.iter().map(|a| cosets.iter().map(|b| proj[self.mul(a[0], b[0])]).collect()).collect();
        Ok((FiniteGroup { table }, proj))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        for g in [FiniteGroup::cyclic(1), FiniteGroup::cyclic(3), FiniteGroup::klein()] {
            g.validate().unwrap();
        }
        assert_eq!(FiniteGroup::klein().subgroups().unwrap().len(), 5);
        assert_eq!(FiniteGroup::cyclic(4).subgroups().unwrap().len(), 3);
        let (q, proj) = FiniteGroup::cyclic(6).quotient(&[0, 3]).unwrap();
        assert_eq!(q, FiniteGroup::cyclic(3));
        assert_eq!(proj, vec![0, 1, 2, 0, 1, 2]);
    }
}
