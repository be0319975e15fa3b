//! Representations of the unramified local gerbe at level `n`: a graded
//! space `V = ⊕ V^m` (the weights record the grading of the basis) and a
//! `σ`-semilinear `Φ` preserving the grading with `Φ^n = π^m` on `V^m`.

use std::fmt;

use super::{newton_slopes, level_field, LMatrix, SemilinearOp};
use crate::arith::{FqConfig, Laurent, Rat, SlopeDatum};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct KottwitzRep {
    op: SemilinearOp,
    weights: Vec<i64>,
}

impl KottwitzRep {
    /// `weights[i]` is the weight of the `i`-th basis vector.
    pub fn new(base: &FqConfig, level: usize, weights: Vec<i64>, matrix: LMatrix) -> Result<KottwitzRep> {
        if matrix.rows() != weights.len() {
            return Err(Error::invalid(format!(
                "{} weights for a {}-dimensional space",
                weights.len(),
                matrix.rows()
            )));
        }
        let op = SemilinearOp::new(base, level, matrix)?;
        Ok(KottwitzRep { op, weights })
    }

    pub fn op(&self) -> &SemilinearOp {
        &self.op
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn level(&self) -> usize {
        self.op.level()
    }

    /// Pull back along the level map from level `n·k`: the same `Φ` with
    /// weights multiplied by `k`.
    pub fn inflate(&self, k: usize) -> Result<KottwitzRep> {
        if k == 0 {
            return Err(Error::invalid("inflation degree must be positive"));
        }
        let op = self.op.embed(self.level() * k)?;
        Ok(KottwitzRep { op, weights: self.weights.iter().map(|m| m * k as i64).collect() })
    }
}

/// First identity that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepViolation {
    /// `Φ` maps basis vector `col` (weight `from`) into weight `to`.
    GradingNotPreserved { row: usize, col: usize, from: i64, to: i64 },
    /// Entry `(row, col)` of `Φ^n` differs from that of `diag(π^m)`.
    FrobeniusPower { row: usize, col: usize },
}

impl fmt::Display for RepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepViolation::GradingNotPreserved { row, col, from, to } => write!(
                f,
                "grading not preserved: entry ({row},{col}) sends weight {from} to weight {to}"
            ),
            RepViolation::FrobeniusPower { row, col } => {
                write!(f, "Φ^n differs from π^m on the weight spaces at entry ({row},{col})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepCheck {
    /// The weight multiset.
    Valid(SlopeDatum),
    Invalid(RepViolation),
}

pub fn validate_representation(rep: &KottwitzRep) -> RepCheck {
    let m = rep.op.matrix();
    let w = &rep.weights;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if w[i] != w[j] && !m.get(i, j).is_zero() {
                return RepCheck::Invalid(RepViolation::GradingNotPreserved { row: i, col: j, from: w[j], to: w[i] });
            }
        }
    }
    let lin = rep.op.linearize();
    let f = level_field(rep.op.base(), rep.level());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let expected = if i == j { Laurent::pi_pow(&f.zero(), w[i]) } else { Laurent::zero(&f.zero()) };
            if *lin.get(i, j) != expected {
                return RepCheck::Invalid(RepViolation::FrobeniusPower { row: i, col: j });
            }
        }
    }
    RepCheck::Valid(SlopeDatum::from_pairs(w.iter().map(|&m| (Rat::int(m), 1))))
}

/// Slopes `m/n` of the underlying isocrystal.
pub fn rep_to_isocrystal(rep: &KottwitzRep) -> SlopeDatum {
    newton_slopes(&rep.op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Matrix;

    fn lm(f: &FqConfig, rows: &[&[Option<i64>]]) -> LMatrix {
        let z = Laurent::zero(&f.zero());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|e| e.map_or(z.clone(), |d| Laurent::pi_pow(&f.zero(), d))).collect())
                .collect(),
        )
    }

    #[test]
    fn examples() {
        let base = FqConfig::new(2, 1);
        let f4 = level_field(&base, 2);
        let phi = lm(&f4, &[&[None, Some(1)], &[Some(0), None]]);
        let rep = KottwitzRep::new(&base, 2, vec![1, 1], phi).unwrap();
        assert_eq!(validate_representation(&rep), RepCheck::Valid(SlopeDatum::from_pairs([(Rat::int(1), 2)])));
        assert_eq!(rep_to_isocrystal(&rep).pairs(), vec![(Rat::new(1, 2), 2)]);

        let one = lm(&level_field(&base, 2), &[&[Some(0)]]);
        let bad = KottwitzRep::new(&base, 2, vec![1], one).unwrap();
        assert!(matches!(validate_representation(&bad), RepCheck::Invalid(RepViolation::FrobeniusPower { .. })));
    }

    #[test]
    fn inflation_keeps_slopes() {
        let base = FqConfig::new(3, 1);
        let f = level_field(&base, 2);
        let phi = lm(&f, &[&[None, Some(1), None], &[Some(0), None, None], &[None, None, Some(-1)]]);
        let rep = KottwitzRep::new(&base, 2, vec![1, 1, -2], phi).unwrap();
        assert!(matches!(validate_representation(&rep), RepCheck::Valid(_)));
        let big = rep.inflate(3).unwrap();
        assert!(matches!(validate_representation(&big), RepCheck::Valid(_)));
        assert_eq!(rep_to_isocrystal(&big), rep_to_isocrystal(&rep));
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let base = FqConfig::new(2, 1);
        let f = level_field(&base, 1);
        let m = lm(&f, &[&[Some(0)]]);
        assert!(KottwitzRep::new(&base, 1, vec![0, 0], m).is_err());
    }
}
