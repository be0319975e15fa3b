//! One handler per subcommand: input document in, output document out.
//! `Outcome::rejected` marks reports on objects that fail validation.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::wire::*;
use crate::archimedean::{decompose_graded, h2_real_class, validate_graded, GradedCheck, GradedSpace, SummandKind};
use crate::arith::factor::DEFAULT_SEED;
use crate::arith::{qmodz, IntMatrix, Rat};
use crate::cyclo::{mult_order, scan_c, search_primes, splitting_check, CycloSearchParams};
use crate::phi::{
    classification_data, d_of_a, localize, phi_pair_of, tensor_type, validate_phi_pair, PhiSpaceMatrix, Primitivity,
};
use crate::semilinear::{
    decompose_isoclinic, hom_closed_form, hom_space_dim, level_field, newton_slopes, rep_to_isocrystal, tensor,
    validate_representation, KottwitzRep, RepCheck, RepViolation,
};
use crate::tate::{
    adelic_class, bks_order, bks_transition_check, check_conditions, inflation_check, local_class_invariant,
    push_character, quotient_tower, transition_is_equivariant, transition_map, validate_cover, FiniteGroup,
    GaloisPlaceData, K2Reading, KottwitzCharacter, PlaceCover,
};
use crate::weil::{germ_check, omega_map, weil_local_component, weil_sequence_check, CmPlaceTable, WeilGermDatum, WeilPlace};
use crate::{Error, Result};

/// Default search bound for the stabilization of `F[Π^N]`.
pub const DEFAULT_MAX_N: usize = 12;

pub struct Outcome {
    pub value: Value,
    pub rejected: bool,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Outcome {
        Outcome { value, rejected: false }
    }
}

type Handler = fn(&Value) -> Result<Outcome>;

pub fn handler(group: &str, cmd: &str) -> Option<Handler> {
    let h: Handler = match (group, cmd) {
        ("isocrystal", "slopes") => iso_slopes,
        ("isocrystal", "decompose") => iso_decompose,
        ("isocrystal", "hom") => iso_hom,
        ("isocrystal", "tensor") => iso_tensor,
        ("rep", "validate") => rep_validate,
        ("rep", "to-isocrystal") => rep_to_iso,
        ("arch", "validate") => arch_validate,
        ("arch", "decompose") => arch_decompose,
        ("arch", "h2") => arch_h2,
        ("phispace", "pair") => phi_pair_cmd,
        ("phispace", "classify") => phi_classify,
        ("phispace", "localize") => phi_localize,
        ("phispace", "tensor") => phi_tensor,
        ("kottwitz", "conditions") => kt_conditions,
        ("kottwitz", "transition") => kt_transition,
        ("kottwitz", "bks") => kt_bks,
        ("kottwitz", "localclass") => kt_localclass,
        ("kottwitz", "adelic") => kt_adelic,
        ("kottwitz", "inflation") => kt_inflation,
        ("weil", "check") => weil_check,
        ("weil", "omega") => weil_omega,
        ("weil", "localize") => weil_localize,
        ("weil", "sequence") => weil_sequence,
        ("cyclo", "order") => cyclo_order,
        ("cyclo", "search") => cyclo_search,
        ("cyclo", "split-check") => cyclo_split,
        _ => return None,
    };
    Some(h)
}

fn iso_slopes(doc: &Value) -> Result<Outcome> {
    let base = field_of(doc)?;
    let op = semilinear_op(&base, doc)?;
    Ok(json!({ "slopes": newton_slopes(&op) }).into())
}

fn iso_decompose(doc: &Value) -> Result<Outcome> {
    let base = field_of(doc)?;
    let (m, n) = (req_i64(doc, "m")?, req_u64(doc, "n")? as usize);
    let d = decompose_isoclinic(&base, m, n)?;
    let blocks: Vec<Value> = d
        .blocks
        .iter()
        .map(|b| {
            json!({
                "slope": b.slope,
                "vectors": b.vectors.iter().map(|v| v.iter().map(laurent_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "field": field_json(&base),
        "op": op_json(&d.op),
        "blocks": blocks,
        "changeOfBasis": matrix_json(&d.change_of_basis, laurent_json),
        "verified": d.verified,
    })
    .into())
}

fn iso_hom(doc: &Value) -> Result<Outcome> {
    let base = field_of(doc)?;
    let a = semilinear_op(&base, req(doc, "a")?)?;
    let b = semilinear_op(&base, req(doc, "b")?)?;
    let h = hom_space_dim(&a, &b, opt_u64(doc, "window")?.map(|w| w as usize))?;
    let closed = hom_closed_form(&newton_slopes(&a), &newton_slopes(&b));
    Ok(json!({ "dim": h.dim, "window": h.window, "closedForm": closed }).into())
}

fn iso_tensor(doc: &Value) -> Result<Outcome> {
    let base = field_of(doc)?;
    let a = semilinear_op(&base, req(doc, "a")?)?;
    let b = semilinear_op(&base, req(doc, "b")?)?;
    let t = tensor(&a, &b)?;
    Ok(json!({ "field": field_json(&base), "op": op_json(&t), "slopes": newton_slopes(&t) }).into())
}

fn rep_of(doc: &Value) -> Result<KottwitzRep> {
    let base = field_of(doc)?;
    let level = req_u64(doc, "level")? as usize;
    if level == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    let weights: Vec<i64> = parse(req(doc, "weights")?, "weights")?;
    let m = lmatrix(&level_field(&base, level), req(doc, "matrix")?)?;
    KottwitzRep::new(&base, level, weights, m)
}

fn violation_json(v: &RepViolation) -> Value {
    let detail = match v {
        RepViolation::GradingNotPreserved { row, col, from, to } => {
            json!({ "kind": "grading", "row": row, "col": col, "from": from, "to": to })
        }
        RepViolation::FrobeniusPower { row, col } => json!({ "kind": "frobeniusPower", "row": row, "col": col }),
    };
    json!({ "detail": detail, "message": v.to_string() })
}

fn rep_validate(doc: &Value) -> Result<Outcome> {
    Ok(match validate_representation(&rep_of(doc)?) {
        RepCheck::Valid(w) => json!({ "valid": true, "weights": w }).into(),
        RepCheck::Invalid(v) => Outcome { value: json!({ "valid": false, "violation": violation_json(&v) }), rejected: true },
    })
}

fn rep_to_iso(doc: &Value) -> Result<Outcome> {
    let rep = rep_of(doc)?;
    if let RepCheck::Invalid(v) = validate_representation(&rep) {
        return Err(Error::invalid(v.to_string()));
    }
    Ok(json!({ "slopes": rep_to_isocrystal(&rep) }).into())
}

fn graded_of(doc: &Value) -> Result<GradedSpace> {
    let cs: Vec<Value> = parse(req(doc, "components")?, "components")?;
    cs.iter().try_fold(GradedSpace::new(), |s, c| s.with_component(req_i64(c, "degree")?, gmatrix(req(c, "alpha")?)?))
}

fn arch_validate(doc: &Value) -> Result<Outcome> {
    let space = graded_of(doc)?;
    Ok(match validate_graded(&space) {
        GradedCheck::Valid => json!({ "valid": true, "dim": space.dim() }).into(),
        GradedCheck::WrongSquare { degree } => {
            Outcome { value: json!({ "valid": false, "wrongSquareDegree": degree }), rejected: true }
        }
    })
}

fn arch_decompose(doc: &Value) -> Result<Outcome> {
    let d = decompose_graded(&graded_of(doc)?)?;
    let summands: Vec<Value> = d
        .summands
        .iter()
        .map(|s| {
            json!({
                "degree": s.degree,
                "kind": match s.kind { SummandKind::Line => "line", SummandKind::Plane => "plane" },
                "vectors": s.vectors.iter().map(|v| v.iter().map(gauss_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "summands": summands, "verified": d.verified }).into())
}

fn arch_h2(doc: &Value) -> Result<Outcome> {
    let sign = h2_real_class(rat(req(doc, "x")?)?)?;
    let inv = qmodz(if sign < 0 { Rat::new(1, 2) } else { Rat::zero() });
    Ok(json!({ "sign": sign, "invariant": inv }).into())
}

fn phi_pair_cmd(doc: &Value) -> Result<Outcome> {
    let base = field_of(doc)?;
    let level = opt_u64(doc, "level")?.unwrap_or(1) as usize;
    if level == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    let f = level_field(&base, level);
    let m = matrix(req(doc, "matrix")?, |e| ratfunc(&f, e))?;
    let v = PhiSpaceMatrix::new(&base, level, m)?;
    let max_n = opt_u64(doc, "maxN")?.map_or(DEFAULT_MAX_N, |n| n as usize);
    let res = phi_pair_of(&v, max_n)?;
    Ok(json!({
        "field": field_json(&base),
        "stableN": res.stable_n,
        "dims": res.dims,
        "minPoly": res.min_poly.coeffs().iter().map(ratfunc_json).collect::<Vec<_>>(),
        "components": phi_pair_json(&res.pair),
        "dA": d_of_a(&res.pair),
        "factorSeed": format!("{DEFAULT_SEED:#018x}"),
    })
    .into())
}

fn primitivity_json(p: &Primitivity) -> Value {
    match p {
        Primitivity::Primitive => json!({ "status": "primitive" }),
        Primitivity::NotPrimitive(why) => json!({ "status": "not-primitive", "pattern": why }),
        Primitivity::Unchecked => json!({ "status": "unchecked" }),
    }
}

fn phi_classify(doc: &Value) -> Result<Outcome> {
    let base = field_of(doc)?;
    let pair = phi_pair(&base, doc)?;
    let report = validate_phi_pair(&pair)?;
    let mut out = json!({
        "valid": report.valid,
        "nonzeroDegree": report.nonzero_degree,
        "primitivity": primitivity_json(&report.primitivity),
    });
    if !report.valid {
        return Ok(Outcome { value: out, rejected: true });
    }
    let c = classification_data(&pair)?;
    out["dimension"] = json!(c.dimension);
    out["dA"] = json!(d_of_a(&pair));
    out["invariants"] = c
        .invariants
        .iter()
        .map(|i| json!({ "place": place_json(&i.base_place), "localDegree": i.local_degree, "invariant": i.invariant }))
        .collect();
    Ok(out.into())
}

fn phi_localize(doc: &Value) -> Result<Outcome> {
    let base = field_of(doc)?;
    let pair = phi_pair(&base, doc)?;
    let u = place(&base, req(doc, "place")?)?;
    let rows = localize(&pair, &u)?;
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "localDegree": r.local_degree, "degCoeff": r.deg_coeff, "d": r.d, "r": r.r, "s": r.s }))
        .collect();
    Ok(json!({ "place": place_json(&u), "dA": d_of_a(&pair), "rows": rows }).into())
}

fn phi_tensor(doc: &Value) -> Result<Outcome> {
    let base = field_of(doc)?;
    let a = phi_component(&base, req(doc, "a")?)?;
    let b = phi_component(&base, req(doc, "b")?)?;
    Ok(json!({ "field": field_json(&base), "component": phi_component_json(&tensor_type(&a, &b)?) }).into())
}

/// `{"data": ...}` or `{"group", "decomposition"}`.
fn place_data(doc: &Value) -> Result<GaloisPlaceData> {
    if let Some(d) = doc.get("data") {
        let g: GaloisPlaceData = parse(d, "data")?;
        g.validate()?;
        return Ok(g);
    }
    let group: FiniteGroup = parse(req(doc, "group")?, "group")?;
    group.validate()?;
    let decomposition: Vec<Vec<usize>> = parse(req(doc, "decomposition")?, "decomposition")?;
    GaloisPlaceData::from_decomposition_groups(&group, &decomposition)
}

fn kt_conditions(doc: &Value) -> Result<Outcome> {
    let g = place_data(doc)?;
    let reading: K2Reading = doc.get("reading").map(|r| parse(r, "reading")).transpose()?.unwrap_or(K2Reading::FixesDotted);
    let attested: bool = doc.get("attested").map(|a| parse(a, "attested")).transpose()?.unwrap_or(false);
    Ok(json!(check_conditions(&g, reading, attested)?).into())
}

fn int_rows(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

/// `{"source", "target", "cover"}` or `{"group", "normal", "decomposition"}`.
fn kt_transition(doc: &Value) -> Result<Outcome> {
    let (source, target, cover) = if doc.get("normal").is_some() {
        let group: FiniteGroup = parse(req(doc, "group")?, "group")?;
        group.validate()?;
        let normal: Vec<usize> = parse(req(doc, "normal")?, "normal")?;
        let decomposition: Vec<Vec<usize>> = parse(req(doc, "decomposition")?, "decomposition")?;
        quotient_tower(&group, &normal, &decomposition)?
    } else {
        let source: GaloisPlaceData = parse(req(doc, "source")?, "source")?;
        let target: GaloisPlaceData = parse(req(doc, "target")?, "target")?;
        let cover: PlaceCover = parse(req(doc, "cover")?, "cover")?;
        (source, target, cover)
    };
    let degree = validate_cover(&source, &target, &cover)?;
    let p = transition_map(&source, &target, &cover)?;
    let mut out = json!({
        "degree": degree,
        "matrix": int_rows(&p),
        "equivariant": transition_is_equivariant(&source, &target, &cover)?,
    });
    if let Some(c) = doc.get("character") {
        let a = KottwitzCharacter::new(parse(c, "character")?)?;
        if a.coeffs().len() != source.num_places() {
            return Err(Error::invalid("character length differs from the number of places of K"));
        }
        let pushed = push_character(&p, &a);
        let before = adelic_class(&a, &source)?;
        let after = adelic_class(&pushed, &target)?;
        out["pushed"] = json!(pushed);
        out["classBefore"] = json!(before);
        out["classAfter"] = json!(after);
    }
    Ok(out.into())
}

fn kt_bks(doc: &Value) -> Result<Outcome> {
    if doc.get("orderE").is_some() {
        let t = bks_transition_check(req_u64(doc, "orderE")?, req_u64(doc, "orderK")?, req_u64(doc, "relativeDegree")?)?;
        return Ok(json!(t).into());
    }
    let degrees: Vec<u64> = parse(req(doc, "degrees")?, "degrees")?;
    Ok(json!({ "order": bks_order(&degrees)? }).into())
}

fn kt_localclass(doc: &Value) -> Result<Outcome> {
    let a = KottwitzCharacter::new(parse(req(doc, "character")?, "character")?)?;
    let w = req_u64(doc, "place")? as usize;
    let inv = local_class_invariant(&a, w, req_u64(doc, "degree")?)?;
    Ok(json!({ "invariant": inv }).into())
}

fn kt_adelic(doc: &Value) -> Result<Outcome> {
    let g = place_data(doc)?;
    let a = KottwitzCharacter::new(parse(req(doc, "character")?, "character")?)?;
    let c = adelic_class(&a, &g)?;
    Ok(json!({ "zero": c.is_zero(), "invariants": c }).into())
}

fn kt_inflation(doc: &Value) -> Result<Outcome> {
    Ok(json!(inflation_check(req_u64(doc, "nK")?, req_u64(doc, "nL")?)?).into())
}

fn germ_of(doc: &Value) -> Result<WeilGermDatum> {
    let d: WeilGermDatum = parse(doc.get("germ").unwrap_or(doc), "germ")?;
    d.validate()?;
    Ok(d)
}

fn weil_check(doc: &Value) -> Result<Outcome> {
    Ok(json!(germ_check(&germ_of(doc)?)?).into())
}

fn weil_omega(doc: &Value) -> Result<Outcome> {
    let om = omega_map(&germ_of(doc)?)?;
    Ok(json!({ "omega": om, "total": om.iter().sum::<i64>() }).into())
}

fn weil_localize(doc: &Value) -> Result<Outcome> {
    let d = germ_of(doc)?;
    let place: WeilPlace = parse(req(doc, "place")?, "place")?;
    Ok(json!({ "invariant": weil_local_component(&d, place)? }).into())
}

fn weil_sequence(doc: &Value) -> Result<Outcome> {
    let t: CmPlaceTable = parse(doc.get("table").unwrap_or(doc), "table")?;
    t.validate()?;
    let cert = weil_sequence_check(&t)?;
    let mut out = json!(cert);
    out["alpha"] = int_rows(&t.alpha());
    out["beta"] = int_rows(&t.beta());
    Ok(out.into())
}

fn cyclo_order(doc: &Value) -> Result<Outcome> {
    let (a, q) = (req_i64(doc, "a")?, req_u64(doc, "q")?);
    Ok(json!({ "a": a, "q": q, "order": mult_order(a, q)? }).into())
}

fn cyclo_search(doc: &Value) -> Result<Outcome> {
    let s: Vec<u64> = parse(req(doc, "s")?, "s")?;
    let (r, bound) = (req_u64(doc, "r")?, req_u64(doc, "bound")?);
    match opt_u64(doc, "c")? {
        Some(c) => Ok(json!(search_primes(&CycloSearchParams { s, r, c, bound })?).into()),
        None => Ok(match scan_c(&s, r, bound)? {
            Some((c, hits)) => json!({ "c": c, "hits": hits }),
            None => json!({ "c": null, "hits": [] }),
        }
        .into()),
    }
}

fn cyclo_split(doc: &Value) -> Result<Outcome> {
    let q = req_u64(doc, "q")?;
    let required: BTreeMap<String, u64> = parse(req(doc, "required")?, "required")?;
    let required = required
        .into_iter()
        .map(|(p, d)| p.parse::<u64>().map(|p| (p, d)).map_err(|_| Error::invalid(format!("{p:?} is not a prime"))))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(json!(splitting_check(&required, q)?).into())
}
