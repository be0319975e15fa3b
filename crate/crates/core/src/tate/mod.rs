//! Place modules for a finite Galois extension `K/F` with group `Γ`: the
//! `Γ`-set `S_K` of places over a finite set `S` of places of `F`, the
//! conditions (K1) and (K2), transition maps `Z[S_K] -> Z[S_L]`, the finite
//! group `B_{K,S}`, and local `Q/Z` invariants of Kottwitz characters.
//!
//! Groups and actions are given abstractly by tables; nothing here depends
//! on an actual number field.

mod group;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use group::FiniteGroup;

use crate::arith::{qmodz, IntMatrix, QmodZ, Rat};
use crate::{Error, Result};

/// `Γ` acting on `S_K`, fibred over the base places `0..num_base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GaloisPlaceData {
    pub group: FiniteGroup,
    /// `action[g][w] = g·w`.
    pub action: Vec<Vec<usize>>,
    /// `[K_w : F_v]` for `w` over `v`.
    pub local_degree: Vec<u64>,
    pub base_place: Vec<usize>,
    /// `dotted[u]` is the chosen place over base place `u`.
    pub dotted: Vec<usize>,
    /// Stabilizers (as element lists) of places of `K` outside `S_K`
    /// that (K1) must also account for.
    #[serde(default)]
    pub ambient_stabilizers: Vec<Vec<usize>>,
}

impl GaloisPlaceData {
    pub fn num_places(&self) -> usize {
        self.local_degree.len()
    }

    pub fn num_base(&self) -> usize {
        self.dotted.len()
    }

    /// Places of `S_K` over base place `u`.
    pub fn fiber(&self, u: usize) -> Vec<usize> {
        (0..self.num_places()).filter(|&w| self.base_place[w] == u).collect()
    }

    pub fn stabilizer(&self, w: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.action[g][w] == w).collect()
    }

    pub fn orbit(&self, w: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..self.group.order()).map(|g| self.action[g][w]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Structural invariants: a genuine action, fibres and degrees
    /// `Γ`-invariant, one dotted place per base place, and degree sum `|Γ|`
    /// over every fibre that is a single orbit.
    pub fn validate(&self) -> Result<()> {
        self.group.validate()?;
        let n = self.num_places();
        let g = self.group.order();
        if self.action.len() != g || self.action.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("action table must have one permutation of S_K per group element"));
        }
        if self.base_place.len() != n {
            return Err(Error::invalid("basePlace must list every place"));
        }
        for row in &self.action {
            let mut seen = vec![false; n];
            for &w in row {
                if w >= n || std::mem::replace(&mut seen[w], true) {
                    return Err(Error::invalid("action rows must be permutations"));
                }
            }
        }
        if (0..n).any(|w| self.action[0][w] != w) {
            return Err(Error::invalid("the identity must act trivially"));
        }
        for a in 0..g {
            for b in 0..g {
                let ab = self.group.mul(a, b);
                if (0..n).any(|w| self.action[ab][w] != self.action[a][self.action[b][w]]) {
                    return Err(Error::invalid(format!("action is not compatible with the product {a}·{b}")));
                }
            }
        }
        for s in 0..g {
            for w in 0..n {
                let v = self.action[s][w];
                if self.base_place[v] != self.base_place[w] {
                    return Err(Error::invalid(format!("element {s} moves place {w} to another fibre")));
                }
                if self.local_degree[v] != self.local_degree[w] {
                    return Err(Error::invalid(format!("local degree not Γ-invariant at place {w}")));
                }
            }
        }
        if self.local_degree.iter().any(|&d| d == 0) {
            return Err(Error::invalid("local degrees must be positive"));
        }
        let nb = self.num_base();
        if self.base_place.iter().any(|&u| u >= nb) {
            return Err(Error::invalid("base place index out of range"));
        }
        for (u, &w) in self.dotted.iter().enumerate() {
            if w >= n || self.base_place[w] != u {
                return Err(Error::invalid(format!("dotted lift over base place {u} is not in its fibre")));
            }
        }
        for u in 0..nb {
            let fib = self.fiber(u);
            if fib.len() == self.orbit(fib[0]).len() {
                let total: u64 = fib.iter().map(|&w| self.local_degree[w]).sum();
                if total != g as u64 {
                    return Err(Error::invalid(format!("local degrees over base place {u} sum to {total}, not {g}")));
                }
            }
        }
        for st in &self.ambient_stabilizers {
            if !self.group.is_subgroup(st) {
                return Err(Error::invalid("ambient stabilizer is not a subgroup"));
            }
        }
        Ok(())
    }

    /// Place data from decomposition groups, `Γ` abelian: the places over
    /// `u` are the cosets `Γ / D_u` with `[K_w : F_u] = |D_u|`, and the
    /// dotted place is the trivial coset.
    pub fn from_decomposition_groups(group: &FiniteGroup, decomposition: &[Vec<usize>]) -> Result<GaloisPlaceData> {
        if !group.is_abelian() {
            return Err(Error::out_of_scope("coset construction needs an abelian group"));
        }
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut base_place = Vec::new();
        let mut dotted = Vec::new();
        let mut local_degree = Vec::new();
        for (u, d) in decomposition.iter().enumerate() {
            if !group.is_subgroup(d) {
                return Err(Error::invalid(format!("decomposition group {u} is not a subgroup")));
            }
            dotted.push(cosets.len());
            for c in group.cosets(d) {
                cosets.push(c);
                base_place.push(u);
                local_degree.push(d.len() as u64);
            }
        }
        let action = (0..group.order())
            .map(|g| {
                (0..cosets.len())
                    .map(|w| {
                        let image = group.mul(g, cosets[w][0]);
                        (0..cosets.len())
                            .find(|&v| base_place[v] == base_place[w] && cosets[v].contains(&image))
                            .expect("cosets partition the group")
                    })
                    .collect()
            })
            .collect();
        let data = GaloisPlaceData {
            group: group.clone(),
            action,
            local_degree,
            base_place,
            dotted,
            ambient_stabilizers: Vec::new(),
        };
        data.validate()?;
        Ok(data)
    }
}

/// Which reading of (K2) a report used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum K2Reading {
    /// Every `σ` fixes some dotted place.
    FixesDotted,
    /// Every `σ` maps some dotted place into `Ṡ_K`.
    MapsIntoDotted,
}

impl fmt::Display for K2Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            K2Reading::FixesDotted => "fixes-dotted",
            K2Reading::MapsIntoDotted => "maps-into-dotted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionResult {
    pub ok: bool,
    /// `(item, witness)`: for (K1) a place and a place of `S_K` with the
    /// same stabilizer (ambient places are numbered after `S_K`); for (K2)
    /// a group element and a dotted place.
    pub witnesses: Vec<(usize, usize)>,
    /// First item without a witness.
    pub failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionReport {
    pub k1: ConditionResult,
    pub k2: ConditionResult,
    pub k2_reading: K2Reading,
    /// (T1) and (T2) are not checkable from place data and are echoed as
    /// caller attestations.
    pub t1_t2_attested: bool,
}

fn check_all(items: usize, witness: impl Fn(usize) -> Option<usize>) -> ConditionResult {
    let mut witnesses = Vec::new();
    for i in 0..items {
        match witness(i) {
            Some(w) => witnesses.push((i, w)),
            None => return ConditionResult { ok: false, witnesses, failure: Some(i) },
        }
    }
    ConditionResult { ok: true, witnesses, failure: None }
}

pub fn check_conditions(g: &GaloisPlaceData, reading: K2Reading, t1_t2_attested: bool) -> Result<ConditionReport> {
    g.validate()?;
    let n = g.num_places();
    let stabs: Vec<Vec<usize>> = (0..n).map(|w| g.stabilizer(w)).collect();
    let all_stabs: Vec<Vec<usize>> = stabs
        .iter()
        .cloned()
        .chain(g.ambient_stabilizers.iter().map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        }))
        .collect();
    let k1 = check_all(all_stabs.len(), |i| (0..n).find(|&w| stabs[w] == all_stabs[i]));
    let k2 = check_all(g.group.order(), |s| {
        g.dotted.iter().copied().find(|&v| {
            let image = g.action[s][v];
            match reading {
                K2Reading::FixesDotted => image == v,
                K2Reading::MapsIntoDotted => g.dotted.contains(&image),
            }
        })
    });
    Ok(ConditionReport { k1, k2, k2_reading: reading, t1_t2_attested })
}

/// `Σ n_w w ∈ Z[S_K]` with `Σ n_w = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KottwitzCharacter {
    coeffs: Vec<i64>,
}

impl KottwitzCharacter {
    pub fn new(coeffs: Vec<i64>) -> Result<KottwitzCharacter> {
        if coeffs.iter().sum::<i64>() != 0 {
            return Err(Error::invalid("character coefficients must sum to zero"));
        }
        Ok(KottwitzCharacter { coeffs })
    }

    pub fn zero(n: usize) -> KottwitzCharacter {
        KottwitzCharacter { coeffs: vec![0; n] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

/// Places of `L` over places of `K`, with `Γ_L -> Γ_K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PlaceCover {
    /// `under[w']` is the place of `K` below `w'`.
    pub under: Vec<usize>,
    /// `[L_{w'} : K_w]`.
    pub relative_degree: Vec<u64>,
    /// Image of each element of `Γ_L` in `Γ_K`.
    pub group_map: Vec<usize>,
}

/// Degree `[L : K] = |Γ_L| / |Γ_K|` after checking that `cover` is a
/// `Γ`-compatible covering of `source` by `target`.
pub fn validate_cover(source: &GaloisPlaceData, target: &GaloisPlaceData, cover: &PlaceCover) -> Result<u64> {
    source.validate()?;
    target.validate()?;
    let (gk, gl) = (source.group.order(), target.group.order());
    if gl % gk != 0 || cover.group_map.len() != gl {
        return Err(Error::invalid("Γ_L must map onto Γ_K"));
    }
    let rel = (gl / gk) as u64;
    if cover.under.len() != target.num_places() || cover.relative_degree.len() != target.num_places() {
        return Err(Error::invalid("cover must list every place of S_L"));
    }
    for a in 0..gl {
        for b in 0..gl {
            if cover.group_map[target.group.mul(a, b)] != source.group.mul(cover.group_map[a], cover.group_map[b]) {
                return Err(Error::invalid("groupMap is not a homomorphism"));
            }
        }
    }
    for (wl, &wk) in cover.under.iter().enumerate() {
        if wk >= source.num_places() || target.base_place[wl] != source.base_place[wk] {
            return Err(Error::invalid(format!("place {wl} of S_L does not lie over the same base place")));
        }
        if target.local_degree[wl] != cover.relative_degree[wl] * source.local_degree[wk] {
            return Err(Error::invalid(format!("relative degree at place {wl} is not multiplicative")));
        }
    }
    for wk in 0..source.num_places() {
        let total: u64 = (0..target.num_places()).filter(|&w| cover.under[w] == wk).map(|w| cover.relative_degree[w]).sum();
        if total != rel {
            return Err(Error::invalid(format!("relative degrees over place {wk} sum to {total}, not [L:K] = {rel}")));
        }
    }
    Ok(rel)
}

/// Matrix of `v ↦ Σ_{w|v} [L_w : K_v] w` (rows `S_L`, columns `S_K`).
pub fn transition_map(source: &GaloisPlaceData, target: &GaloisPlaceData, cover: &PlaceCover) -> Result<IntMatrix> {
    validate_cover(source, target, cover)?;
    let mut m = IntMatrix::zeros(target.num_places(), source.num_places());
    for (wl, &wk) in cover.under.iter().enumerate() {
        m.set(wl, wk, cover.relative_degree[wl] as i128);
    }
    Ok(m)
}

/// `p ∘ γ_K = γ_L ∘ p` for every `γ ∈ Γ_L`.
pub fn transition_is_equivariant(source: &GaloisPlaceData, target: &GaloisPlaceData, cover: &PlaceCover) -> Result<bool> {
    let p = transition_map(source, target, cover)?;
    let perm = |action: &[usize], n: usize| {
        let mut m = IntMatrix::zeros(n, n);
        for (w, &v) in action.iter().enumerate() {
            m.set(v, w, 1);
        }
        m
    };
    Ok((0..target.group.order()).all(|g| {
        let gk = perm(&source.action[cover.group_map[g]], source.num_places());
        let gl = perm(&target.action[g], target.num_places());
        p.times(&gk) == gl.times(&p)
    }))
}

/// Image of `a` under the transition map.
pub fn push_character(p: &IntMatrix, a: &KottwitzCharacter) -> KottwitzCharacter {
    let coeffs = (0..p.rows)
        .map(|i| (0..p.cols).map(|j| p.get(i, j) as i64 * a.coeffs[j]).sum())
        .collect();
    KottwitzCharacter { coeffs }
}

/// `|B_{K,S}| = gcd` of the local degrees at the dotted places.
pub fn bks_order(degrees: &[u64]) -> Result<u64> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::invalid("need a nonempty list of positive degrees"));
    }
    Ok(degrees.iter().fold(0u64, |g, d| g.gcd(d)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BksTransition {
    pub ok: bool,
    /// Order of the image of the order-`E` subgroup under `·relDegree`.
    pub image_order: u64,
    pub composite_zero: bool,
}

/// Does multiplication by `rel` send the order-`order_e` subgroup of `Q/Z`
/// into the order-`order_k` subgroup?
pub fn bks_transition_check(order_e: u64, order_k: u64, rel: u64) -> Result<BksTransition> {
    if order_e == 0 || order_k == 0 || rel == 0 {
        return Err(Error::invalid("orders and degree must be positive"));
    }
    let image_order = order_e / order_e.gcd(&rel);
    Ok(BksTransition { ok: order_k % image_order == 0, image_order, composite_zero: image_order == 1 })
}

/// `n_w / [K_w : F_u]` modulo `Z`.
pub fn local_class_invariant(a: &KottwitzCharacter, w: usize, degree: u64) -> Result<QmodZ> {
    let n = *a.coeffs.get(w).ok_or_else(|| Error::invalid(format!("unknown place {w}")))?;
    if degree == 0 {
        return Err(Error::invalid("local degree must be positive"));
    }
    Ok(qmodz(Rat::new(n, degree as i64)))
}

/// Local invariants at the dotted places, keyed by base place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AdelicClass(pub BTreeMap<usize, QmodZ>);

impl AdelicClass {
    pub fn is_zero(&self) -> bool {
        self.0.values().all(QmodZ::is_zero)
    }
}

pub fn adelic_class(a: &KottwitzCharacter, g: &GaloisPlaceData) -> Result<AdelicClass> {
    g.validate()?;
    if a.coeffs.len() != g.num_places() {
        return Err(Error::invalid("character length differs from the number of places"));
    }
    let mut out = BTreeMap::new();
    for (u, &w) in g.dotted.iter().enumerate() {
        out.insert(u, local_class_invariant(a, w, g.local_degree[w])?);
    }
    Ok(AdelicClass(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflationCheck {
    pub holds: bool,
    /// `[L:K] · (1/n_L)`.
    pub lhs: QmodZ,
    /// `1/n_K`.
    pub rhs: QmodZ,
}

pub fn inflation_check(n_k: u64, n_l: u64) -> Result<InflationCheck> {
    if n_k == 0 || n_l == 0 || n_l % n_k != 0 {
        return Err(Error::invalid(format!("{n_k} must divide {n_l}")));
    }
    let lhs = qmodz(Rat::new(1, n_l as i64)).mul_int((n_l / n_k) as i64);
    let rhs = qmodz(Rat::new(1, n_k as i64));
    Ok(InflationCheck { holds: lhs == rhs, lhs, rhs })
}

/// The tower `K ⊂ L` where `Γ_K = Γ_L / N`, with places of `L` given by
/// decomposition groups `D_u ≤ Γ_L` and places of `K` by their images.
pub fn quotient_tower(
    group: &FiniteGroup,
    normal: &[usize],
    decomposition: &[Vec<usize>],
) -> Result<(GaloisPlaceData, GaloisPlaceData, PlaceCover)> {
    let (quot, proj) = group.quotient(normal)?;
    let target = GaloisPlaceData::from_decomposition_groups(group, decomposition)?;
    let images: Vec<Vec<usize>> = decomposition
        .iter()
        .map(|d| {
            let mut im: Vec<usize> = d.iter().map(|&g| proj[g]).collect();
            im.sort_unstable();
            im.dedup();
            im
        })
        .collect();
    let source = GaloisPlaceData::from_decomposition_groups(&quot, &images)?;
    let mut under = Vec::new();
    let mut relative_degree = Vec::new();
    let lcosets: Vec<Vec<usize>> = decomposition.iter().flat_map(|d| group.cosets(d)).collect();
    let kcosets: Vec<Vec<usize>> = images.iter().flat_map(|d| quot.cosets(d)).collect();
    for (wl, c) in lcosets.iter().enumerate() {
        let u = target.base_place[wl];
        let image = proj[c[0]];
        let wk = (0..source.num_places())
            .find(|&v| source.base_place[v] == u && kcosets[v].contains(&image))
            .expect("cosets partition the quotient");
        under.push(wk);
        relative_degree.push(target.local_degree[wl] / source.local_degree[wk]);
    }
    let cover = PlaceCover { under, relative_degree, group_map: proj };
    validate_cover(&source, &target, &cover)?;
    Ok((source, target, cover))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2_free_and_fixed() -> GaloisPlaceData {
        GaloisPlaceData::from_decomposition_groups(&FiniteGroup::cyclic(2), &[vec![0, 1], vec![0]]).unwrap()
    }

    #[test]
    fn conditions() {
        let triv = GaloisPlaceData::from_decomposition_groups(&FiniteGroup::cyclic(1), &[vec![0]]).unwrap();
        let r = check_conditions(&triv, K2Reading::FixesDotted, false).unwrap();
        assert!(r.k1.ok && r.k2.ok);

        let free = GaloisPlaceData::from_decomposition_groups(&FiniteGroup::cyclic(2), &[vec![0]]).unwrap();
        for reading in [K2Reading::FixesDotted, K2Reading::MapsIntoDotted] {
            let r = check_conditions(&free, reading, false).unwrap();
            assert!(!r.k2.ok);
            assert_eq!(r.k2.failure, Some(1));
        }

        let r = check_conditions(&c2_free_and_fixed(), K2Reading::FixesDotted, false).unwrap();
        assert!(r.k1.ok && r.k2.ok);

        let mut amb = c2_free_and_fixed();
        amb.ambient_stabilizers = vec![vec![0, 1]];
        assert!(check_conditions(&amb, K2Reading::FixesDotted, false).unwrap().k1.ok);
        let mut lone = GaloisPlaceData::from_decomposition_groups(&FiniteGroup::cyclic(2), &[vec![0, 1]]).unwrap();
        lone.ambient_stabilizers = vec![vec![0]];
        assert_eq!(check_conditions(&lone, K2Reading::FixesDotted, false).unwrap().k1.failure, Some(1));
    }

    #[test]
    fn transitions() {
        let g = FiniteGroup::cyclic(2);
        // v split in L/K = L/F.
        let (k, l, cover) = quotient_tower(&g, &[0, 1], &[vec![0]]).unwrap();
        let p = transition_map(&k, &l, &cover).unwrap();
        assert_eq!(p, IntMatrix::from_rows(&[vec![1], vec![1]], 1));
        // v inert.
        let (k, l, cover) = quotient_tower(&g, &[0, 1], &[vec![0, 1]]).unwrap();
        assert_eq!(transition_map(&k, &l, &cover).unwrap(), IntMatrix::from_rows(&[vec![2]], 1));
        // identity extension.
        let (k, l, cover) = quotient_tower(&g, &[0], &[vec![0], vec![0, 1]]).unwrap();
        let p = transition_map(&k, &l, &cover).unwrap();
        assert_eq!(p, IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3));
        assert!(transition_is_equivariant(&k, &l, &cover).unwrap());
    }

    #[test]
    fn bks() {
        assert_eq!(bks_order(&[2, 4, 6]).unwrap(), 2);
        assert_eq!(bks_order(&[1, 4]).unwrap(), 1);
        assert_eq!(bks_order(&[3, 3]).unwrap(), 3);
        assert!(bks_order(&[]).is_err());
        let t = bks_transition_check(2, 2, 2).unwrap();
        assert!(t.ok && t.composite_zero);
        assert!(bks_transition_check(5, 5, 1).unwrap().ok);
        let t = bks_transition_check(4, 2, 2).unwrap();
        assert!(t.ok && t.image_order <= 2);
        assert!(!bks_transition_check(4, 2, 1).unwrap().ok);
    }

    #[test]
    fn local_classes() {
        let a = KottwitzCharacter::new(vec![1, -1]).unwrap();
        assert_eq!(local_class_invariant(&a, 0, 3).unwrap().to_string(), "1/3");
        let z = KottwitzCharacter::zero(2);
        assert!(local_class_invariant(&z, 1, 3).unwrap().is_zero());
        let b = KottwitzCharacter::new(vec![5, -5]).unwrap();
        assert_eq!(local_class_invariant(&b, 0, 3).unwrap().to_string(), "2/3");
        assert!(local_class_invariant(&b, 7, 3).is_err());
        assert!(KottwitzCharacter::new(vec![1, 1]).is_err());
    }

    #[test]
    fn adelic() {
        let g = FiniteGroup::cyclic(2);
        let inert2 = GaloisPlaceData::from_decomposition_groups(&g, &[vec![0, 1], vec![0, 1]]).unwrap();
        let a = KottwitzCharacter::new(vec![1, -1]).unwrap();
        let cls = adelic_class(&a, &inert2).unwrap();
        assert_eq!(cls.0.values().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["1/2", "1/2"]);
        assert!(adelic_class(&KottwitzCharacter::zero(2), &inert2).unwrap().is_zero());
        let mixed = c2_free_and_fixed();
        let b = KottwitzCharacter::new(vec![2, -2, 0]).unwrap();
        assert!(adelic_class(&b, &mixed).unwrap().is_zero());
    }

    #[test]
    fn inflation() {
        for (k, l, expect) in [(2, 4, "1/2"), (1, 5, "0/1"), (3, 6, "1/3")] {
            let c = inflation_check(k, l).unwrap();
            assert!(c.holds);
            assert_eq!(c.lhs.to_string(), expect);
        }
        assert!(inflation_check(3, 4).is_err());
    }

    #[test]
    fn malformed_action_rejected() {
        let mut g = c2_free_and_fixed();
        g.action[1].swap(0, 1);
        assert!(g.validate().is_err());
    }
}
