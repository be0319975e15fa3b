//! Factoring square-free monic polynomials of degree at most 4 over
//! `F_q(t)`. After scaling to a monic polynomial over `F_q[t]`, roots divide
//! the constant term and quadratic factors `x² + ux + v` have `v` dividing
//! it, so both searches are finite. Polynomials of any degree whose Newton
//! polygon at some place is one segment of slope `h/deg` with `gcd(h, deg) = 1`
//! are irreducible (every root is totally ramified there) and pass through.

use crate::arith::{factor, newton_segments, Field, PlaceId, FqConfig, FqElem, Poly, RatFunc, Ring};
use crate::{Error, Result};

pub type FtPoly = Poly<RatFunc>;

/// Largest degree handled by [`factor_over_ft`].
pub const MAX_FT_DEGREE: usize = 4;

pub fn is_squarefree(f: &FtPoly) -> bool {
    f.gcd(&f.derivative()).degree() == Some(0)
}

fn lcm(a: &Poly<FqElem>, b: &Poly<FqElem>) -> Poly<FqElem> {
    a.times(b).div_exact(&a.gcd(b)).expect("gcd divides").monic()
}

fn poly_rf(p: Poly<FqElem>) -> RatFunc {
    RatFunc::from_poly(p)
}

/// Monic divisors of `c` (up to units), nonzero `c`.
fn monic_divisors(c: &Poly<FqElem>, max_deg: usize) -> Vec<Poly<FqElem>> {
    let z = c.zero_elem().clone();
    let mut out = vec![Poly::one(&z)];
    if c.degree().unwrap_or(0) == 0 {
        return out;
    }
    for (g, e) in factor(c).factors {
        let mut next = Vec::new();
        for d in &out {
            let mut acc = d.clone();
            for _ in 0..=e {
                if acc.degree().unwrap_or(0) > max_deg {
                    break;
                }
                next.push(acc.clone());
                acc = acc.times(&g);
            }
        }
        out = next;
    }
    out
}

fn units(cfg: &FqConfig) -> Vec<FqElem> {
    cfg.elements().filter(|a| !a.is_zero()).collect()
}

/// Candidates `a·g` with `g` a monic divisor of `c` of degree at most `max_deg`.
fn divisor_candidates(c: &RatFunc, max_deg: usize) -> Vec<RatFunc> {
    let cfg = c.config().clone();
    if c.is_zero() {
        return vec![RatFunc::zero(&cfg)];
    }
    let mut out = Vec::new();
    for g in monic_divisors(c.num(), max_deg) {
        for a in units(&cfg) {
            out.push(poly_rf(g.scale(&a)));
        }
    }
    out
}

/// `D^b f(x/D)`, monic with polynomial coefficients, and `D`.
fn integral_form(f: &FtPoly) -> (FtPoly, RatFunc) {
    let cfg = f.lc().config().clone();
    let z = cfg.zero();
    let d = f.coeffs().iter().fold(Poly::one(&z), |acc, c| lcm(&acc, c.den()));
    let d = poly_rf(d);
    let b = f.degree().expect("nonzero");
    let coeffs = (0..=b).map(|i| f.coeff(i).times(&pow_rf(&d, b - i))).collect();
    (Poly::new(RatFunc::zero(&cfg), coeffs), d)
}

fn pow_rf(x: &RatFunc, e: usize) -> RatFunc {
    (0..e).fold(x.one_like(), |acc, _| acc.times(x))
}

/// `g̃(Dx)/D^deg`, the inverse of [`integral_form`] on a factor.
fn from_integral(g: &FtPoly, d: &RatFunc) -> FtPoly {
    let k = g.degree().expect("nonzero");
    let coeffs = (0..=k)
        .map(|i| g.coeff(i).divide(&pow_rf(d, k - i)).expect("D nonzero"))
        .collect();
    Poly::new(d.zero_like(), coeffs)
}

/// Upper bound for the `t`-degree of a root of a monic integral polynomial.
fn root_degree_bound(f: &FtPoly) -> usize {
    let b = f.degree().expect("nonzero");
    (0..b)
        .filter(|&i| !f.coeff(i).is_zero())
        .map(|i| f.coeff(i).num().degree().unwrap_or(0) / (b - i))
        .max()
        .unwrap_or(0)
}

fn find_root(f: &FtPoly) -> Option<RatFunc> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Some(c0);
    }
    divisor_candidates(&c0, root_degree_bound(f)).into_iter().find(|r| f.eval(r).is_zero())
}

/// A factorisation of a monic integral quartic without roots into two
/// monic quadratics.
fn find_quadratic_split(f: &FtPoly) -> Option<(FtPoly, FtPoly)> {
    let z = f.lc().zero_like();
    let c = |i: usize| f.coeff(i);
    let bound = 2 * root_degree_bound(f) + 2;
    for v in divisor_candidates(&c(0), bound) {
        let vp = c(0).divide(&v).expect("nonzero divisor");
        let us: Vec<RatFunc> = if v != vp {
            let num = c(1).minus(&c(3).times(&v));
            let u = num.divide(&vp.minus(&v)).expect("distinct");
            if u.is_polynomial() {
                vec![u]
            } else {
                vec![]
            }
        } else {
            let q = Poly::new(z.clone(), vec![c(2).minus(&v.plus(&v)), c(3).negate(), z.one_like()]);
            let mut roots = Vec::new();
            if let Some(r) = find_root(&q) {
                roots.push(r);
            }
            roots
        };
        for u in us {
            let up = c(3).minus(&u);
            let g = Poly::new(z.clone(), vec![v.clone(), u, z.one_like()]);
            let h = Poly::new(z.clone(), vec![vp.clone(), up, z.one_like()]);
            if g.times(&h) == *f {
                return Some((g, h));
            }
        }
    }
    None
}

/// Dumas criterion: a single Newton segment at some place whose slope has
/// denominator `deg f` certifies irreducibility.
pub fn newton_irreducible(f: &FtPoly) -> bool {
    let Some(deg) = f.degree() else { return false };
    let mut places = vec![PlaceId::Infinity];
    for c in f.coeffs() {
        places.extend(PlaceId::support_finite(c));
    }
    places.into_iter().any(|u| {
        let points: Vec<(i64, Option<i64>)> = (0..=deg).map(|i| (i as i64, u.valuation(&f.coeff(i)))).collect();
        matches!(newton_segments(&points).as_deref(),
            Ok([seg]) if seg.length() == deg as i64 && seg.root_valuation().denom() == deg as i64)
    })
}

/// Monic irreducible factors of a square-free monic `f` of degree at most 4,
/// or of any degree when [`newton_irreducible`] applies.
pub fn factor_over_ft(f: &FtPoly) -> Result<Vec<FtPoly>> {
    let deg = f.degree().ok_or_else(|| Error::invalid("cannot factor zero"))?;
    if deg > 1 && newton_irreducible(f) {
        return Ok(vec![f.monic()]);
    }
    if deg > MAX_FT_DEGREE {
        return Err(Error::out_of_scope(format!(
            "factoring a degree-{deg} polynomial over F_q(t) (limit {MAX_FT_DEGREE})"
        )));
    }
    let f = f.monic();
    if deg <= 1 {
        return Ok(vec![f]);
    }
    let (g, d) = integral_form(&f);
    if let Some(r) = find_root(&g) {
        let lin = Poly::new(g.lc().zero_like(), vec![r.negate(), r.one_like()]);
        let rest = g.div_exact(&lin).expect("root gives a factor");
        let mut out = vec![from_integral(&lin, &d).monic()];
        out.extend(factor_over_ft(&from_integral(&rest, &d).monic())?);
        return Ok(out);
    }
    if deg == 4 {
        if let Some((a, b)) = find_quadratic_split(&g) {
            return Ok(vec![from_integral(&a, &d).monic(), from_integral(&b, &d).monic()]);
        }
    }
    Ok(vec![f])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(cfg: &FqConfig, num: &[u64], den: &[u64]) -> RatFunc {
        let p = |c: &[u64]| Poly::new(cfg.zero(), c.iter().map(|&a| cfg.from_u64(a)).collect());
        RatFunc::new(p(num), p(den))
    }

    fn xpoly(cfg: &FqConfig, cs: Vec<RatFunc>) -> FtPoly {
        Poly::new(RatFunc::zero(cfg), cs)
    }

    #[test]
    fn splits_and_irreducibles() {
        let f3 = FqConfig::new(3, 1);
        // x² - t is irreducible.
        let f = xpoly(&f3, vec![rf(&f3, &[0, 2], &[1]), rf(&f3, &[0], &[1]), rf(&f3, &[1], &[1])]);
        assert_eq!(factor_over_ft(&f).unwrap().len(), 1);
        // (x - t/(t+1)) (x + 1) with rational coefficients.
        let a = xpoly(&f3, vec![rf(&f3, &[0, 2], &[1, 1]), rf(&f3, &[1], &[1])]);
        let b = xpoly(&f3, vec![rf(&f3, &[1], &[1]), rf(&f3, &[1], &[1])]);
        let fs = factor_over_ft(&a.times(&b)).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&a) && fs.contains(&b));
    }

    #[test]
    fn quartic_into_quadratics() {
        let f5 = FqConfig::new(5, 1);
        // (x² - t)(x² - t - 1) over F_5(t).
        let q1 = xpoly(&f5, vec![rf(&f5, &[0, 4], &[1]), rf(&f5, &[0], &[1]), rf(&f5, &[1], &[1])]);
        let q2 = xpoly(&f5, vec![rf(&f5, &[4, 4], &[1]), rf(&f5, &[0], &[1]), rf(&f5, &[1], &[1])]);
        let fs = factor_over_ft(&q1.times(&q2)).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].times(&fs[1]), q1.times(&q2));
        // x⁴ - t is irreducible.
        let f = xpoly(
            &f5,
            vec![rf(&f5, &[0, 4], &[1]), RatFunc::zero(&f5), RatFunc::zero(&f5), RatFunc::zero(&f5), rf(&f5, &[1], &[1])],
        );
        assert_eq!(factor_over_ft(&f).unwrap().len(), 1);
    }

    #[test]
    fn inseparable_is_not_squarefree() {
        let f2 = FqConfig::new(2, 1);
        let f = xpoly(&f2, vec![rf(&f2, &[0, 1], &[1]), RatFunc::zero(&f2), rf(&f2, &[1], &[1])]);
        assert!(!is_squarefree(&f));
    }

    #[test]
    fn totally_ramified_high_degree_is_irreducible() {
        let f3 = FqConfig::new(3, 1);
        let z = RatFunc::zero(&f3);
        // x^5 - t^2 and x^6 - t^{-1}: one Newton segment of slope 2/5, resp. 1/6.
        let mut c = vec![rf(&f3, &[0, 0, 2], &[1]), z.clone(), z.clone(), z.clone(), z.clone(), rf(&f3, &[1], &[1])];
        assert_eq!(factor_over_ft(&xpoly(&f3, c.clone())).unwrap().len(), 1);
        c[0] = rf(&f3, &[2], &[0, 1]);
        c.insert(1, z.clone());
        assert_eq!(factor_over_ft(&xpoly(&f3, c)).unwrap().len(), 1);
        // x^6 - t^2 = (x^3 - t)(x^3 + t) has slope 1/3 and is out of reach.
        let c = vec![rf(&f3, &[0, 0, 2], &[1]), z.clone(), z.clone(), z.clone(), z.clone(), z, rf(&f3, &[1], &[1])];
        assert!(!newton_irreducible(&xpoly(&f3, c)));
    }
}
