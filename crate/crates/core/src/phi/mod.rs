//! Drinfeld φ-spaces over `F = F_q(t)` and their φ-pairs `(L, a)`.
//!
//! A pair is stored through its places: each field component of `L`
//! records, for finitely many base places `u` of `F`, the places `w | u`
//! with their local degrees `[L_w : F_u]` and `deg_w(a)` (multiplicity of
//! `w` in the rational divisor `a` times the residue degree of `w` over
//! `F_q`). Places not recorded carry `deg_w(a) = 0`.

mod ftfactor;
mod pair;

use std::collections::BTreeMap;

use num_integer::Integer;

pub use ftfactor::{factor_over_ft, is_squarefree, FtPoly, MAX_FT_DEGREE};
pub use pair::{phi_pair_of, PhiPairResult, PhiSpaceMatrix};

use crate::arith::{common_denominator, qmodz, PlaceId, QmodZ, Rat};
use crate::{Error, Result};

/// Total degree up to which primitivity is checked exhaustively.
pub const PRIMITIVITY_LIMIT: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPlace {
    pub base_place: PlaceId,
    pub local_degree: usize,
    pub deg_coeff: Rat,
    /// Several places merged because the residual polynomial was not
    /// square-free; only produced with `deg_coeff = 0`.
    pub lumped: bool,
}

impl PhiPlace {
    pub fn new(base_place: PlaceId, local_degree: usize, deg_coeff: Rat) -> PhiPlace {
        PhiPlace { base_place, local_degree, deg_coeff, lumped: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiComponent {
    pub degree_over_f: usize,
    pub places: Vec<PhiPlace>,
    /// Minimal polynomial of the generator, when computed from a matrix.
    pub defining_poly: Option<FtPoly>,
}

impl PhiComponent {
    pub fn new(degree_over_f: usize, places: Vec<PhiPlace>) -> PhiComponent {
        PhiComponent { degree_over_f, places, defining_poly: None }
    }

    /// Recorded places grouped by base place.
    pub fn fibres(&self) -> BTreeMap<PlaceId, Vec<&PhiPlace>> {
        let mut out: BTreeMap<PlaceId, Vec<&PhiPlace>> = BTreeMap::new();
        for w in &self.places {
            out.entry(w.base_place.clone()).or_default().push(w);
        }
        out
    }

    pub fn degree_sum(&self) -> Rat {
        self.places.iter().map(|w| w.deg_coeff).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiPairData {
    pub components: Vec<PhiComponent>,
}

impl PhiPairData {
    pub fn single(c: PhiComponent) -> PhiPairData {
        PhiPairData { components: vec![c] }
    }

    /// `[L : F]`.
    pub fn total_degree(&self) -> usize {
        self.components.iter().map(|c| c.degree_over_f).sum()
    }

    /// Positive degrees, and local degrees over each recorded base place
    /// summing to the component degree.
    pub fn check_structure(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::invalid("a φ-pair needs at least one component"));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.degree_over_f == 0 {
                return Err(Error::invalid(format!("component {i} has degree zero")));
            }
            for (u, ws) in c.fibres() {
                if ws.iter().any(|w| w.local_degree == 0) {
                    return Err(Error::invalid(format!("component {i}: zero local degree over {u:?}")));
                }
                let total: usize = ws.iter().map(|w| w.local_degree).sum();
                if total != c.degree_over_f {
                    return Err(Error::invalid(format!(
                        "component {i}: local degrees over {u:?} sum to {total}, not {}",
                        c.degree_over_f
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// `a` lies in a proper subalgebra; the string names the pattern found.
    NotPrimitive(String),
    /// Total degree beyond [`PRIMITIVITY_LIMIT`].
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPairReport {
    /// Components whose `deg(a)` is nonzero.
    pub nonzero_degree: Vec<usize>,
    pub primitivity: Primitivity,
    /// Degree zero everywhere and not shown to be imprimitive.
    pub valid: bool,
}

pub fn validate_phi_pair(p: &PhiPairData) -> Result<PhiPairReport> {
    p.check_structure()?;
    let nonzero_degree: Vec<usize> =
        (0..p.components.len()).filter(|&i| !p.components[i].degree_sum().is_zero()).collect();
    let primitivity = if p.total_degree() > PRIMITIVITY_LIMIT { Primitivity::Unchecked } else { primitivity(p) };
    let valid = nonzero_degree.is_empty() && !matches!(primitivity, Primitivity::NotPrimitive(_));
    Ok(PhiPairReport { nonzero_degree, primitivity, valid })
}

/// `deg_w(a) / [L_w : F_u]` per recorded place, keyed by base place.
fn ratios(c: &PhiComponent) -> BTreeMap<PlaceId, Vec<(usize, Rat)>> {
    c.fibres()
        .into_iter()
        .map(|(u, ws)| (u, ws.iter().map(|w| (w.local_degree, w.deg_coeff / w.local_degree as i64)).collect()))
        .collect()
}

/// Can the fibre be grouped into blocks of local-degree sum divisible by
/// `m`, with constant ratio on each block?
fn fibre_descends(fibre: &[(usize, Rat)], m: usize) -> bool {
    fn go(rest: &[(usize, Rat)], m: usize, open: &mut Vec<(usize, Rat)>) -> bool {
        match rest.split_first() {
            None => open.iter().all(|(s, _)| s % m == 0),
            Some((&(d, r), tail)) => {
                for i in 0..open.len() {
                    if open[i].1 == r {
                        open[i].0 += d;
                        let ok = go(tail, m, open);
                        open[i].0 -= d;
                        if ok {
                            return true;
                        }
                    }
                }
                open.push((d, r));
                let ok = go(tail, m, open);
                open.pop();
                ok
            }
        }
    }
    go(fibre, m, &mut Vec::new())
}

/// A subfield pattern of degree `b' < b` exists for this component.
fn subfield_pattern(c: &PhiComponent) -> Option<usize> {
    let b = c.degree_over_f;
    let r = ratios(c);
    (1..b).filter(|d| b % d == 0).find(|&bp| r.values().all(|f| fibre_descends(f, b / bp)))
}

/// Ratio per base place when the component is pulled back from `F`.
fn pulled_back_from_f(c: &PhiComponent) -> Option<BTreeMap<PlaceId, Rat>> {
    let mut out = BTreeMap::new();
    for (u, f) in ratios(c) {
        let r = f[0].1;
        if f.iter().any(|x| x.1 != r) {
            return None;
        }
        if !r.is_zero() {
            out.insert(u, r);
        }
    }
    Some(out)
}

fn sorted_places(c: &PhiComponent) -> Vec<(PlaceId, usize, Rat)> {
    let mut v: Vec<_> = c.places.iter().map(|w| (w.base_place.clone(), w.local_degree, w.deg_coeff)).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    v
}

fn primitivity(p: &PhiPairData) -> Primitivity {
    for (i, c) in p.components.iter().enumerate() {
        if let Some(bp) = subfield_pattern(c) {
            return Primitivity::NotPrimitive(format!("component {i} descends to a subfield of degree {bp}"));
        }
    }
    let n = p.components.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&p.components[i], &p.components[j]);
            if a.degree_over_f == b.degree_over_f && sorted_places(a) == sorted_places(b) {
                return Primitivity::NotPrimitive(format!("components {i} and {j} carry the same data"));
            }
            if let (Some(x), Some(y)) = (pulled_back_from_f(a), pulled_back_from_f(b)) {
                if x == y {
                    return Primitivity::NotPrimitive(format!("components {i} and {j} share a divisor of F"));
                }
            }
        }
    }
    Primitivity::Primitive
}

/// Common denominator of all `deg_w(a)`.
pub fn d_of_a(p: &PhiPairData) -> u64 {
    let all: Vec<Rat> = p.components.iter().flat_map(|c| c.places.iter().map(|w| w.deg_coeff)).collect();
    common_denominator(&all) as u64
}

fn single_component(p: &PhiPairData) -> Result<&PhiComponent> {
    match p.components.as_slice() {
        [c] => Ok(c),
        _ => Err(Error::out_of_scope("pairs whose algebra is not a field are not classified")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceInvariant {
    pub base_place: PlaceId,
    pub local_degree: usize,
    /// `-deg_w(a)` modulo `Z`.
    pub invariant: QmodZ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dimension: u64,
    pub invariants: Vec<PlaceInvariant>,
}

/// Dimension `[L:F]·d(a)` and the local invariants of the endomorphism
/// algebra of the corresponding simple φ-space.
pub fn classification_data(p: &PhiPairData) -> Result<Classification> {
    p.check_structure()?;
    let c = single_component(p)?;
    Ok(Classification {
        dimension: c.degree_over_f as u64 * d_of_a(p),
        invariants: c
            .places
            .iter()
            .map(|w| PlaceInvariant {
                base_place: w.base_place.clone(),
                local_degree: w.local_degree,
                invariant: qmodz(-w.deg_coeff),
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationRow {
    pub local_degree: usize,
    pub deg_coeff: Rat,
    pub d: u64,
    pub r: i64,
    pub s: u64,
}

/// The unique `(d, r, s)` with `d, s ≥ 1`, `gcd(d, r) = 1`,
/// `r/d = deg_w(a)/[L_w:F_u]` and `d·s = d(a)·[L_w:F_u]`.
pub fn localize_row(deg_w: Rat, local_degree: usize, d_a: u64) -> Result<(u64, i64, u64)> {
    if local_degree == 0 || d_a == 0 {
        return Err(Error::invalid("local degree and d(a) must be positive"));
    }
    let target = d_a * local_degree as u64;
    let slope = deg_w / local_degree as i64;
    let mut found = None;
    for d in 1..=target {
        let r = slope * d as i64;
        if !r.is_integer() || r.numer().gcd(&(d as i64)) != 1 || target % d != 0 {
            continue;
        }
        if found.replace((d, r.numer(), target / d)).is_some() {
            return Err(Error::internal("localization relations have several solutions"));
        }
    }
    found.ok_or_else(|| Error::invalid(format!("no (d, r, s) for deg_w(a) = {deg_w}, local degree {local_degree}, d(a) = {d_a}")))
}

/// Rows for the places of `L` above `u`.
pub fn localize(p: &PhiPairData, u: &PlaceId) -> Result<Vec<LocalizationRow>> {
    p.check_structure()?;
    let c = single_component(p)?;
    let d_a = d_of_a(p);
    let rows: Vec<LocalizationRow> = c
        .places
        .iter()
        .filter(|w| &w.base_place == u)
        .map(|w| {
            let (d, r, s) = localize_row(w.deg_coeff, w.local_degree, d_a)?;
            Ok(LocalizationRow { local_degree: w.local_degree, deg_coeff: w.deg_coeff, d, r, s })
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::invalid(format!("no place above {u:?} is recorded")));
    }
    let total: u64 = rows.iter().map(|r| r.d * r.s).sum();
    if total != d_a * c.degree_over_f as u64 {
        return Err(Error::internal("localized dimensions do not add up to d(a)·[L:F]"));
    }
    Ok(rows)
}

/// Type of the tensor product of isotypic φ-spaces: divisors add, places
/// matched by base place and position, missing fibres filled with zeros.
pub fn tensor_type(a: &PhiComponent, b: &PhiComponent) -> Result<PhiComponent> {
    if a.degree_over_f != b.degree_over_f {
        return Err(Error::invalid("tensor types need a common field component"));
    }
    let (fa, fb) = (a.fibres(), b.fibres());
    let mut places = Vec::new();
    let bases: std::collections::BTreeSet<&PlaceId> = fa.keys().chain(fb.keys()).collect();
    for u in bases {
        match (fa.get(u), fb.get(u)) {
            (Some(x), Some(y)) => {
                let dx: Vec<usize> = x.iter().map(|w| w.local_degree).collect();
                let dy: Vec<usize> = y.iter().map(|w| w.local_degree).collect();
                if dx != dy {
                    return Err(Error::invalid(format!("incompatible places over {u:?}")));
                }
                for (w, v) in x.iter().zip(y) {
                    places.push(PhiPlace { deg_coeff: w.deg_coeff + v.deg_coeff, lumped: w.lumped || v.lumped, ..(*w).clone() });
                }
            }
            (Some(x), None) | (None, Some(x)) => places.extend(x.iter().map(|w| (*w).clone())),
            (None, None) => unreachable!("base place from one of the maps"),
        }
    }
    Ok(PhiComponent::new(a.degree_over_f, places))
}
