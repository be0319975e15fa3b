//! Weil-number germs for a CM field `K`, encoded by their valuation data:
//! for each `p`-adic place `v`, the local degree `[K_v : Q_p]` and the ratio
//! `ord_v(π) / ord_v(p^n)`, together with the weight `m` and the number `g`
//! of complex places.
//!
//! The germ sequence `0 -> W^K -> ⊕ Z·v ⊕ Z -> ⊕ Z·w -> 0` uses
//! `β(Σ n_v v, m) = Σ n_v w(v) - m Σ_w [K⁺_w : Q_p] w`, the reading under
//! which `β ∘ α = 0`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{qmodz, IntMatrix, QmodZ, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PPlace {
    pub local_degree: u64,
    pub ord_ratio: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WeilGermDatum {
    /// `π` is a Weil `p^n`-number.
    pub n: u64,
    pub weight: i64,
    pub p_places: Vec<PPlace>,
    pub complex_places: u64,
}

impl WeilGermDatum {
    /// `Σ [K_v : Q_p] = [K : Q] = 2g`.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.complex_places == 0 {
            return Err(Error::invalid("n and the number of complex places must be positive"));
        }
        if self.p_places.is_empty() || self.p_places.iter().any(|v| v.local_degree == 0) {
            return Err(Error::invalid("need at least one p-place, all of positive degree"));
        }
        let total: u64 = self.p_places.iter().map(|v| v.local_degree).sum();
        if total != 2 * self.complex_places {
            return Err(Error::invalid(format!(
                "p-adic degrees sum to {total}, but [K:Q] = 2g = {}",
                2 * self.complex_places
            )));
        }
        Ok(())
    }

    /// `ord_v(π)/ord_v(p^n) · [K_v : Q_p]` per `p`-place.
    pub fn p_coefficients(&self) -> Vec<Rat> {
        self.p_places.iter().map(|v| v.ord_ratio * v.local_degree as i64).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GermReport {
    pub valid: bool,
    /// Places where `ratio · degree` is not an integer.
    pub non_integral: Vec<usize>,
    /// `Σ ratio · degree - g·m`, zero for a germ.
    pub product_defect: Rat,
}

pub fn germ_check(d: &WeilGermDatum) -> Result<GermReport> {
    d.validate()?;
    let coeffs = d.p_coefficients();
    let non_integral: Vec<usize> = (0..coeffs.len()).filter(|&i| !coeffs[i].is_integer()).collect();
    let product_defect = coeffs.iter().copied().sum::<Rat>() - Rat::int(d.complex_places as i64 * d.weight);
    Ok(GermReport { valid: non_integral.is_empty() && product_defect.is_zero(), non_integral, product_defect })
}

fn require_germ(d: &WeilGermDatum) -> Result<()> {
    let r = germ_check(d)?;
    if !r.valid {
        return Err(Error::invalid(format!(
            "not a Weil germ: non-integral at {:?}, product defect {}",
            r.non_integral, r.product_defect
        )));
    }
    Ok(())
}

/// Image of a germ in `Z[V_K]`: `p`-places first, then one entry `-m` per
/// complex place. Entries are integers summing to zero.
pub fn omega_map(d: &WeilGermDatum) -> Result<Vec<i64>> {
    require_germ(d)?;
    let mut out: Vec<i64> = d.p_coefficients().iter().map(|c| c.to_integer().expect("germ")).collect();
    out.extend(std::iter::repeat(-d.weight).take(d.complex_places as usize));
    if out.iter().sum::<i64>() != 0 {
        return Err(Error::internal("ω image has nonzero degree"));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum WeilPlace {
    /// A finite prime other than `p`.
    Away { prime: u64 },
    AtP { index: usize },
    AtInfinity,
}

/// Local invariant of the class attached to a germ.
pub fn weil_local_component(d: &WeilGermDatum, place: WeilPlace) -> Result<QmodZ> {
    require_germ(d)?;
    match place {
        WeilPlace::Away { .. } => Ok(QmodZ::zero()),
        WeilPlace::AtP { index } => d
            .p_places
            .get(index)
            .map(|v| qmodz(v.ord_ratio))
            .ok_or_else(|| Error::invalid(format!("no p-place {index}"))),
        WeilPlace::AtInfinity => Ok(qmodz(Rat::new(-d.weight, 2))),
    }
}

/// Slope of the isocrystal at a `p`-place, `ord_p(π)/n` with `ord_p(p) = 1`.
pub fn motive_slope(d: &WeilGermDatum, index: usize) -> Result<Rat> {
    require_germ(d)?;
    d.p_places
        .get(index)
        .map(|v| v.ord_ratio)
        .ok_or_else(|| Error::invalid(format!("no p-place {index}")))
}

/// The `p`-places of `K` and of its maximal totally real subfield `K⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CmPlaceTable {
    /// `[K_v : Q_p]`.
    pub k_degrees: Vec<u64>,
    /// `[K⁺_w : Q_p]`.
    pub kplus_degrees: Vec<u64>,
    /// `cover[v]` is the place of `K⁺` under `v`.
    pub cover: Vec<usize>,
}

impl CmPlaceTable {
    /// Each `w` has one place above it of twice its degree, or two of equal
    /// degree.
    pub fn validate(&self) -> Result<()> {
        if self.k_degrees.is_empty() || self.kplus_degrees.is_empty() {
            return Err(Error::invalid("CM place table needs p-places"));
        }
        if self.cover.len() != self.k_degrees.len() || self.cover.iter().any(|&w| w >= self.kplus_degrees.len()) {
            return Err(Error::invalid("cover must map every place of K to a place of K⁺"));
        }
        for (w, &dw) in self.kplus_degrees.iter().enumerate() {
            let fib: Vec<u64> = (0..self.k_degrees.len()).filter(|&v| self.cover[v] == w).map(|v| self.k_degrees[v]).collect();
            let ok = match fib.as_slice() {
                [a] => *a == 2 * dw,
                [a, b] => *a == dw && *b == dw,
                _ => false,
            };
            if dw == 0 || !ok {
                return Err(Error::invalid(format!("fibre over K⁺-place {w} has degrees {fib:?}")));
            }
        }
        Ok(())
    }

    /// Places of `K` grouped by the place of `K⁺` below.
    fn fibres(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &w) in self.cover.iter().enumerate() {
            out.entry(w).or_default().push(v);
        }
        out
    }

    /// `β` with rows the places of `K⁺` and columns the places of `K`
    /// followed by the weight.
    pub fn beta(&self) -> IntMatrix {
        let (nv, nw) = (self.k_degrees.len(), self.kplus_degrees.len());
        let mut b = IntMatrix::zeros(nw, nv + 1);
        for (v, &w) in self.cover.iter().enumerate() {
            b.set(w, v, 1);
        }
        for (w, &dw) in self.kplus_degrees.iter().enumerate() {
            b.set(w, nv, -(dw as i128));
        }
        b
    }

    /// Generators of the germ lattice as columns: the weight-one germ with
    /// all of `v`'s share on the first place of each split pair, then
    /// `v - v̄` for each split pair.
    pub fn alpha(&self) -> IntMatrix {
        let nv = self.k_degrees.len();
        let mut cols: Vec<Vec<i128>> = Vec::new();
        let mut base = vec![0i128; nv + 1];
        base[nv] = 1;
        for (&w, fib) in &self.fibres() {
            base[fib[0]] = self.kplus_degrees[w] as i128;
            if let [a, b] = fib.as_slice() {
                let mut c = vec![0i128; nv + 1];
                c[*a] = 1;
                c[*b] = -1;
                cols.push(c);
            }
        }
        cols.insert(0, base);
        let mut m = IntMatrix::zeros(nv + 1, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SequenceCertificate {
    pub middle_rank: usize,
    pub alpha_rank: usize,
    pub beta_rank: usize,
    pub beta_alpha_zero: bool,
    /// `coker α` torsion-free, so `im α` is saturated.
    pub alpha_saturated: bool,
    /// `β` onto: full rank with unit invariant factors.
    pub beta_surjective: bool,
    pub exact: bool,
}

pub fn weil_sequence_check(t: &CmPlaceTable) -> Result<SequenceCertificate> {
    t.validate()?;
    let (a, b) = (t.alpha(), t.beta());
    let (sa, sb) = (a.smith(), b.smith());
    let middle_rank = t.k_degrees.len() + 1;
    let beta_alpha_zero = b.times(&a).is_zero();
    let alpha_injective = sa.rank == a.cols;
    let beta_surjective = sb.rank == b.rows && sb.is_saturated();
    let exact = beta_alpha_zero
        && alpha_injective
        && sa.is_saturated()
        && beta_surjective
        && sa.rank + sb.rank == middle_rank;
    Ok(SequenceCertificate {
        middle_rank,
        alpha_rank: sa.rank,
        beta_rank: sb.rank,
        beta_alpha_zero,
        alpha_saturated: sa.is_saturated(),
        beta_surjective,
        exact,
    })
}

/// A germ of `K` viewed in a larger CM field `K'`. `p_transition` and
/// `complex_transition` have rows the places of `K'` and columns those of
/// `K`, each row holding the single relative degree `[K'_{v'} : K_v]`.
pub fn push_forward(d: &WeilGermDatum, p_transition: &IntMatrix, complex_transition: &IntMatrix) -> Result<WeilGermDatum> {
    d.validate()?;
    if p_transition.cols != d.p_places.len() || complex_transition.cols != d.complex_places as usize {
        return Err(Error::invalid("transition matrix does not match the germ's places"));
    }
    let single = |m: &IntMatrix, i: usize| -> Result<(usize, i128)> {
        let nz: Vec<usize> = (0..m.cols).filter(|&j| m.get(i, j) != 0).collect();
        match nz.as_slice() {
            [j] if m.get(i, *j) > 0 => Ok((*j, m.get(i, *j))),
            _ => Err(Error::invalid(format!("place {i} of the larger field must lie over exactly one place"))),
        }
    };
    let mut p_places = Vec::with_capacity(p_transition.rows);
    for i in 0..p_transition.rows {
        let (j, rel) = single(p_transition, i)?;
        let v = d.p_places[j];
        p_places.push(PPlace { local_degree: v.local_degree * rel as u64, ord_ratio: v.ord_ratio });
    }
    for i in 0..complex_transition.rows {
        if single(complex_transition, i)?.1 != 1 {
            return Err(Error::invalid("complex places have relative degree 1"));
        }
    }
    let out = WeilGermDatum { n: d.n, weight: d.weight, p_places, complex_places: complex_transition.rows as u64 };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(m: i64, g: u64, places: &[(u64, Rat)]) -> WeilGermDatum {
        WeilGermDatum {
            n: 1,
            weight: m,
            p_places: places.iter().map(|&(d, r)| PPlace { local_degree: d, ord_ratio: r }).collect(),
            complex_places: g,
        }
    }

    #[test]
    fn germ_examples() {
        let pn = germ(2, 1, &[(1, Rat::one()), (1, Rat::one())]);
        assert!(germ_check(&pn).unwrap().valid);
        assert_eq!(omega_map(&pn).unwrap(), vec![1, 1, -2]);
        let ss = germ(1, 1, &[(2, Rat::new(1, 2))]);
        assert!(germ_check(&ss).unwrap().valid);
        assert_eq!(omega_map(&ss).unwrap(), vec![1, -1]);
        let bad = germ(1, 1, &[(2, Rat::new(1, 3))]);
        let r = germ_check(&bad).unwrap();
        assert!(!r.valid && r.non_integral == vec![0]);
        assert!(omega_map(&bad).is_err());
        let root = germ(0, 1, &[(2, Rat::zero())]);
        assert_eq!(omega_map(&root).unwrap(), vec![0, 0]);
        assert!(germ_check(&germ(1, 2, &[(2, Rat::new(1, 2))])).is_err());
    }

    #[test]
    fn local_components() {
        let ss = germ(1, 1, &[(2, Rat::new(1, 2))]);
        assert!(weil_local_component(&ss, WeilPlace::Away { prime: 5 }).unwrap().is_zero());
        assert_eq!(weil_local_component(&ss, WeilPlace::AtInfinity).unwrap().to_string(), "1/2");
        let pn = germ(2, 1, &[(1, Rat::one()), (1, Rat::one())]);
        assert!(weil_local_component(&pn, WeilPlace::AtP { index: 0 }).unwrap().is_zero());
        assert!(weil_local_component(&pn, WeilPlace::AtInfinity).unwrap().is_zero());
        assert!(weil_local_component(&pn, WeilPlace::AtP { index: 2 }).is_err());
    }

    #[test]
    fn slopes() {
        let pn = germ(2, 1, &[(1, Rat::one()), (1, Rat::one())]);
        assert_eq!(motive_slope(&pn, 0).unwrap(), Rat::one());
        let ord = germ(1, 1, &[(1, Rat::zero()), (1, Rat::one())]);
        assert_eq!((motive_slope(&ord, 0).unwrap(), motive_slope(&ord, 1).unwrap()), (Rat::zero(), Rat::one()));
        let ss = germ(1, 1, &[(2, Rat::new(1, 2))]);
        assert_eq!(motive_slope(&ss, 0).unwrap(), Rat::new(1, 2));
    }

    #[test]
    fn sequences() {
        let split = CmPlaceTable { k_degrees: vec![1, 1], kplus_degrees: vec![1], cover: vec![0, 0] };
        let c = weil_sequence_check(&split).unwrap();
        assert_eq!((c.middle_rank, c.beta_rank, c.alpha_rank), (3, 1, 2));
        assert!(c.exact);
        let inert = CmPlaceTable { k_degrees: vec![2], kplus_degrees: vec![1], cover: vec![0] };
        let c = weil_sequence_check(&inert).unwrap();
        assert_eq!(c.alpha_rank, 1);
        assert!(c.exact);
        let empty = CmPlaceTable { k_degrees: vec![], kplus_degrees: vec![], cover: vec![] };
        assert!(weil_sequence_check(&empty).is_err());
    }

    #[test]
    fn push_forward_commutes_with_omega() {
        let ss = germ(1, 1, &[(2, Rat::new(1, 2))]);
        // K'/K quadratic with the p-place split and both complex places over the one of K.
        let pt = IntMatrix::from_rows(&[vec![1], vec![1]], 1);
        let ct = IntMatrix::from_rows(&[vec![1], vec![1]], 1);
        let big = push_forward(&ss, &pt, &ct).unwrap();
        let lhs = omega_map(&big).unwrap();
        let w = omega_map(&ss).unwrap();
        assert_eq!(lhs, vec![w[0], w[0], w[1], w[1]]);
    }
}
