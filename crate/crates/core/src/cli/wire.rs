//! JSON encodings of values whose ring is configured at runtime.
//!
//! Field elements are coordinate arrays over `F_p` on the power basis of the
//! document's field (a bare integer is accepted for prime-field elements);
//! Laurent polynomials are `{"minDeg", "coeffs"}`; rational functions are
//! `{"num", "den"}` with coefficient arrays, constant term first; places of
//! `F_q(t)` are `"inf"` or the monic irreducible's coefficient array;
//! rationals are `"a/b"` strings (integers may be bare numbers).

use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::archimedean::{GMatrix, GaussRat};
use crate::arith::{FqConfig, FqElem, Laurent, Matrix, PlaceId, Poly, Rat, RatFunc};
use crate::phi::{FtPoly, PhiComponent, PhiPairData, PhiPlace};
use crate::semilinear::{level_field, standard_simple, LMatrix, SemilinearOp};
use crate::{Error, Result};

pub fn field_of(doc: &Value) -> Result<FqConfig> {
    let f = doc.get("field").ok_or_else(|| Error::invalid("missing \"field\""))?;
    let p = req_u64(f, "p")?;
    let k = opt_u64(f, "k")?.unwrap_or(1) as usize;
    let cfg = FqConfig::try_new(p, k).map_err(Error::invalid)?;
    if let Some(m) = f.get("modulus") {
        let m: Vec<u64> = parse(m, "field.modulus")?;
        if m != cfg.modulus() {
            return Err(Error::out_of_scope(format!(
                "only the canonical modulus {:?} of F_{}^{} is supported",
                cfg.modulus(),
                p,
                k
            )));
        }
    }
    Ok(cfg)
}

pub fn field_json(cfg: &FqConfig) -> Value {
    json!({ "p": cfg.p(), "k": cfg.k(), "modulus": cfg.modulus() })
}

pub fn parse<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::invalid(format!("{what}: {e}")))
}

pub fn req<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| Error::invalid(format!("missing \"{key}\"")))
}

pub fn req_u64(doc: &Value, key: &str) -> Result<u64> {
    parse(req(doc, key)?, key)
}

pub fn req_i64(doc: &Value, key: &str) -> Result<i64> {
    parse(req(doc, key)?, key)
}

pub fn opt_u64(doc: &Value, key: &str) -> Result<Option<u64>> {
    doc.get(key).map(|v| parse(v, key)).transpose()
}

pub fn rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => s.parse().map_err(|_| Error::invalid(format!("not a rational: {s:?}"))),
        Value::Number(n) => n.as_i64().map(Rat::int).ok_or_else(|| Error::invalid(format!("not an integer: {n}"))),
        _ => Err(Error::invalid(format!("expected a rational, got {v}"))),
    }
}

pub fn elem(cfg: &FqConfig, v: &Value) -> Result<FqElem> {
    let coords: Vec<i64> = match v {
        Value::Number(_) => vec![parse(v, "field element")?],
        _ => parse(v, "field element")?,
    };
    cfg.elem(&coords).ok_or_else(|| Error::invalid(format!("{} coordinates for a degree-{} field", coords.len(), cfg.k())))
}

pub fn elem_json(x: &FqElem) -> Value {
    json!(x.trimmed_coords())
}

pub fn poly(cfg: &FqConfig, v: &Value) -> Result<Poly<FqElem>> {
    let cs: Vec<Value> = parse(v, "polynomial")?;
    Ok(Poly::new(cfg.zero(), cs.iter().map(|c| elem(cfg, c)).collect::<Result<_>>()?))
}

pub fn poly_json(p: &Poly<FqElem>) -> Value {
    Value::Array(p.coeffs().iter().map(elem_json).collect())
}

pub fn laurent(cfg: &FqConfig, v: &Value) -> Result<Laurent<FqElem>> {
    let min_deg = req_i64(v, "minDeg")?;
    let cs: Vec<Value> = parse(req(v, "coeffs")?, "coeffs")?;
    Ok(Laurent::new(cfg.zero(), min_deg, cs.iter().map(|c| elem(cfg, c)).collect::<Result<_>>()?))
}

pub fn laurent_json(x: &Laurent<FqElem>) -> Value {
    json!({ "minDeg": x.min_deg(), "coeffs": x.coeffs().iter().map(elem_json).collect::<Vec<_>>() })
}

pub fn ratfunc(cfg: &FqConfig, v: &Value) -> Result<RatFunc> {
    let num = poly(cfg, req(v, "num")?)?;
    let den = match v.get("den") {
        Some(d) => poly(cfg, d)?,
        None => Poly::one(&cfg.zero()),
    };
    if den.is_zero() {
        return Err(Error::invalid("zero denominator"));
    }
    Ok(RatFunc::new(num, den))
}

pub fn ratfunc_json(x: &RatFunc) -> Value {
    json!({ "num": poly_json(x.num()), "den": poly_json(x.den()) })
}

pub fn matrix<R: crate::arith::Ring>(v: &Value, entry: impl Fn(&Value) -> Result<R>) -> Result<Matrix<R>> {
    let rows: Vec<Vec<Value>> = parse(v, "matrix")?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::invalid("matrix rows must be nonempty and of equal length"));
    }
    let rows = rows.iter().map(|r| r.iter().map(&entry).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

pub fn matrix_json<R: crate::arith::Ring>(m: &Matrix<R>, entry: impl Fn(&R) -> Value) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(&entry).collect())).collect())
}

/// `{"level", "matrix"}` or `{"standard": {"s", "r"}}`.
pub fn semilinear_op(base: &FqConfig, v: &Value) -> Result<SemilinearOp> {
    if let Some(std) = v.get("standard") {
        let s = req_i64(std, "s")?;
        let r = req_u64(std, "r")? as usize;
        return standard_simple(base, s, r);
    }
    let level = opt_u64(v, "level")?.unwrap_or(1) as usize;
    if level == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    let f = level_field(base, level);
    let m = lmatrix(&f, req(v, "matrix")?)?;
    SemilinearOp::new(base, level, m)
}

pub fn lmatrix(f: &FqConfig, v: &Value) -> Result<LMatrix> {
    matrix(v, |e| laurent(f, e))
}

pub fn op_json(op: &SemilinearOp) -> Value {
    json!({ "level": op.level(), "matrix": matrix_json(op.matrix(), laurent_json) })
}

pub fn place(cfg: &FqConfig, v: &Value) -> Result<PlaceId> {
    match v {
        Value::String(s) if s == "inf" => Ok(PlaceId::Infinity),
        _ => PlaceId::finite(poly(cfg, v)?).ok_or_else(|| Error::invalid(format!("{v} is not a monic irreducible"))),
    }
}

pub fn place_json(u: &PlaceId) -> Value {
    match u {
        PlaceId::Infinity => json!("inf"),
        PlaceId::Finite(p) => poly_json(p),
    }
}

pub fn gauss(v: &Value) -> Result<GaussRat> {
    match v {
        Value::Object(_) => {
            let re = v.get("re").map(rat).transpose()?.unwrap_or_else(Rat::zero);
            let im = v.get("im").map(rat).transpose()?.unwrap_or_else(Rat::zero);
            Ok(GaussRat::from_rats(re, im))
        }
        _ => Ok(GaussRat::from_rats(rat(v)?, Rat::zero())),
    }
}

pub fn gauss_json(x: &GaussRat) -> Value {
    json!({ "re": x.re.to_string(), "im": x.im.to_string() })
}

pub fn gmatrix(v: &Value) -> Result<GMatrix> {
    matrix(v, gauss)
}

pub fn phi_component(cfg: &FqConfig, v: &Value) -> Result<PhiComponent> {
    let degree = req_u64(v, "degree")? as usize;
    let ws: Vec<Value> = parse(req(v, "places")?, "places")?;
    let places = ws
        .iter()
        .map(|w| {
            Ok(PhiPlace {
                base_place: place(cfg, req(w, "place")?)?,
                local_degree: req_u64(w, "localDegree")? as usize,
                deg_coeff: rat(req(w, "degCoeff")?)?,
                lumped: w.get("lumped").map(|b| parse(b, "lumped")).transpose()?.unwrap_or(false),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let defining_poly = v
        .get("definingPoly")
        .map(|p| {
            let cs: Vec<Value> = parse(p, "definingPoly")?;
            Ok::<FtPoly, Error>(Poly::new(RatFunc::zero(cfg), cs.iter().map(|c| ratfunc(cfg, c)).collect::<Result<_>>()?))
        })
        .transpose()?;
    Ok(PhiComponent { degree_over_f: degree, places, defining_poly })
}

pub fn phi_component_json(c: &PhiComponent) -> Value {
    let places: Vec<Value> = c
        .places
        .iter()
        .map(|w| {
            let mut o = Map::new();
            o.insert("place".into(), place_json(&w.base_place));
            o.insert("localDegree".into(), json!(w.local_degree));
            o.insert("degCoeff".into(), json!(w.deg_coeff));
            if w.lumped {
                o.insert("lumped".into(), json!(true));
            }
            Value::Object(o)
        })
        .collect();
    let mut o = Map::new();
    o.insert("degree".into(), json!(c.degree_over_f));
    o.insert("places".into(), Value::Array(places));
    if let Some(p) = &c.defining_poly {
        o.insert("definingPoly".into(), Value::Array(p.coeffs().iter().map(ratfunc_json).collect()));
    }
    Value::Object(o)
}

pub fn phi_pair(cfg: &FqConfig, v: &Value) -> Result<PhiPairData> {
    let cs: Vec<Value> = parse(req(v, "components")?, "components")?;
    Ok(PhiPairData { components: cs.iter().map(|c| phi_component(cfg, c)).collect::<Result<_>>()? })
}

pub fn phi_pair_json(p: &PhiPairData) -> Value {
    Value::Array(p.components.iter().map(phi_component_json).collect())
}
