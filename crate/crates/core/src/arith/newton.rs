//! Newton polygons and slope multisets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Rat;

/// One edge of a lower convex hull, from `(x0, y0)` to `(x1, y1)` with `x0 < x1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NewtonSegment {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl NewtonSegment {
    pub fn length(&self) -> i64 {
        self.x1 - self.x0
    }

    /// Slope of the edge, `(y1 - y0)/(x1 - x0)`.
    pub fn edge_slope(&self) -> Rat {
        Rat::new(self.y1 - self.y0, self.length())
    }

    /// Valuation of the roots this edge accounts for: minus the edge slope.
    pub fn root_valuation(&self) -> Rat {
        -self.edge_slope()
    }
}

/// A multiset of rational slopes, kept sorted ascending with positive
/// multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SlopeDatum(Vec<SlopeMult>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeMult {
    pub slope: Rat,
    pub mult: u64,
}

impl SlopeDatum {
    pub fn from_pairs<I: IntoIterator<Item = (Rat, u64)>>(it: I) -> SlopeDatum {
        let mut m: BTreeMap<Rat, u64> = BTreeMap::new();
        for (s, k) in it {
            if k > 0 {
                *m.entry(s).or_default() += k;
            }
        }
        SlopeDatum(m.into_iter().map(|(slope, mult)| SlopeMult { slope, mult }).collect())
    }

    pub fn entries(&self) -> &[SlopeMult] {
        &self.0
    }

    pub fn pairs(&self) -> Vec<(Rat, u64)> {
        self.0.iter().map(|e| (e.slope, e.mult)).collect()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|e| e.mult).sum()
    }

    /// `sum slope * mult`.
    pub fn weighted_sum(&self) -> Rat {
        self.0.iter().map(|e| e.slope * e.mult as i64).sum()
    }

    pub fn mult_of(&self, s: Rat) -> u64 {
        self.0.iter().find(|e| e.slope == s).map_or(0, |e| e.mult)
    }

    /// Every slope divided by `n`.
    pub fn scaled_down(&self, n: i64) -> SlopeDatum {
        SlopeDatum::from_pairs(self.0.iter().map(|e| (e.slope / n, e.mult)))
    }

    /// Multiset union.
    pub fn union(&self, o: &SlopeDatum) -> SlopeDatum {
        SlopeDatum::from_pairs(self.pairs().into_iter().chain(o.pairs()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("no points with finite valuation")]
    Empty,
    #[error("point of maximal degree has infinite valuation")]
    TopInfinite,
}

/// Lower convex hull of the points `(degree, valuation)`, ignoring points of
/// infinite valuation (`None`). Points of equal degree keep the smaller value.
pub fn newton_segments(points: &[(i64, Option<i64>)]) -> Result<Vec<NewtonSegment>, NewtonError> {
    let max_x = points.iter().map(|p| p.0).max().ok_or(NewtonError::Empty)?;
    if points.iter().filter(|p| p.0 == max_x).all(|p| p.1.is_none()) {
        return Err(NewtonError::TopInfinite);
    }
    let mut by_x: BTreeMap<i64, i64> = BTreeMap::new();
    for &(x, y) in points {
        if let Some(y) = y {
            by_x.entry(x).and_modify(|v| *v = (*v).min(y)).or_insert(y);
        }
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for (x, y) in by_x {
        while hull.len() >= 2 {
            let (ax, ay) = hull[hull.len() - 2];
            let (bx, by) = hull[hull.len() - 1];
            let cross = (bx - ax) as i128 * (y - ay) as i128 - (by - ay) as i128 * (x - ax) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    Ok(hull
        .windows(2)
        .map(|w| NewtonSegment { x0: w[0].0, y0: w[0].1, x1: w[1].0, y1: w[1].1 })
        .collect())
}

/// Root valuations with multiplicities read off the Newton polygon.
pub fn newton_polygon(points: &[(i64, Option<i64>)]) -> Result<SlopeDatum, NewtonError> {
    let segs = newton_segments(points)?;
    Ok(SlopeDatum::from_pairs(segs.iter().map(|s| (s.root_valuation(), s.length() as u64))))
}
