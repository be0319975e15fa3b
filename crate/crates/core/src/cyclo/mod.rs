//! Splitting primes for cyclotomic extensions: multiplicative orders, local
//! degrees of `Q(ζ_q)` at unramified primes, and the search for primes `q`
//! with `q ≡ 1 (mod r)`, `gcd((q-1)/r, r) = c` and `(r/c) | ord_q(p)` for
//! every `p ∈ S`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Order of `a` in `(Z/q)^×`: the least divisor `f` of `q - 1` with
/// `a^f ≡ 1`.
pub fn mult_order(a: i64, q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::invalid(format!("{q} is not prime")));
    }
    let r = a.rem_euclid(q as i64) as u64;
    if r == 0 {
        return Err(Error::invalid(format!("{a} is not a unit modulo {q}")));
    }
    Ok(divisors(q - 1).into_iter().find(|&f| powmod(r, f, q) == 1).expect("Fermat"))
}

/// Degree `[Q_p(ζ_q) : Q_p]` for `p ≠ q`, which is `ord_q(p)`.
pub fn cyclo_local_degree(p: u64, q: u64) -> Result<u64> {
    if p == q {
        return Err(Error::out_of_scope(format!("{p} ramifies in the {q}-th cyclotomic field")));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    mult_order(p as i64, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloSearchParams {
    pub s: Vec<u64>,
    pub r: u64,
    pub c: u64,
    pub bound: u64,
}

impl CycloSearchParams {
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 || self.c == 0 || self.r % self.c != 0 {
            return Err(Error::invalid("need positive r and c with c | r"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &p in &self.s {
            if !is_prime(p) {
                return Err(Error::invalid(format!("{p} in S is not prime")));
            }
            if !seen.insert(p) {
                return Err(Error::invalid(format!("{p} repeated in S")));
            }
        }
        Ok(())
    }
}

/// Why `q` qualifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub q: u64,
    /// `gcd((q-1)/r, r)`.
    pub gcd: u64,
    /// `ord_q(p)` for each `p ∈ S`.
    pub orders: BTreeMap<u64, u64>,
}

pub fn search_primes(params: &CycloSearchParams) -> Result<Vec<SearchHit>> {
    params.validate()?;
    let need = params.r / params.c;
    let mut hits = Vec::new();
    let mut q = params.r + 1;
    while q <= params.bound {
        if is_prime(q) && !params.s.contains(&q) {
            let g = ((q - 1) / params.r).gcd(&params.r);
            if g == params.c {
                let mut orders = BTreeMap::new();
                let mut ok = true;
                for &p in &params.s {
                    let f = cyclo_local_degree(p, q)?;
                    ok &= f % need == 0;
                    orders.insert(p, f);
                }
                if ok {
                    hits.push(SearchHit { q, gcd: g, orders });
                }
            }
        }
        q += params.r;
    }
    Ok(hits)
}

/// Smallest divisor `c` of `r` with a hit below the bound, with its hits.
pub fn scan_c(s: &[u64], r: u64, bound: u64) -> Result<Option<(u64, Vec<SearchHit>)>> {
    for c in divisors(r) {
        let hits = search_primes(&CycloSearchParams { s: s.to_vec(), r, c, bound })?;
        if !hits.is_empty() {
            return Ok(Some((c, hits)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitLine {
    pub p: u64,
    pub required: u64,
    pub local_degree: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitReport {
    pub ok: bool,
    pub lines: Vec<SplitLine>,
    /// Every archimedean local degree of `Q(ζ_q)` is 2, so the requirement
    /// there always holds.
    pub archimedean_automatic: bool,
}

pub fn splitting_check(required: &BTreeMap<u64, u64>, q: u64) -> Result<SplitReport> {
    if required.contains_key(&q) {
        return Err(Error::invalid(format!("{q} is both the modulus and a required prime")));
    }
    let mut lines = Vec::new();
    for (&p, &d) in required {
        if d == 0 {
            return Err(Error::invalid("required degrees must be positive"));
        }
        let f = cyclo_local_degree(p, q)?;
        lines.push(SplitLine { p, required: d, local_degree: f, ok: f % d == 0 });
    }
    Ok(SplitReport { ok: lines.iter().all(|l| l.ok), lines, archimedean_automatic: true })
}

/// Order by repeated multiplication, independent of [`mult_order`].
pub fn naive_order(a: u64, q: u64) -> Option<u64> {
    let a = a % q;
    let mut x = a;
    for f in 1..q {
        if x == 1 {
            return Some(f);
        }
        x = x * a % q;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn orders() {
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(2, 13).unwrap(), 12);
        assert_eq!(mult_order(1, 11).unwrap(), 1);
        assert!(mult_order(14, 7).is_err());
        assert_eq!(cyclo_local_degree(2, 5).unwrap(), 4);
        assert_eq!(cyclo_local_degree(3, 13).unwrap(), 3);
        assert_eq!(cyclo_local_degree(11, 5).unwrap(), 1);
        assert!(cyclo_local_degree(5, 5).is_err());
    }

    #[test]
    fn search_examples() {
        let hits = search_primes(&CycloSearchParams { s: vec![2], r: 4, c: 1, bound: 100 }).unwrap();
        let qs: Vec<u64> = hits.iter().map(|h| h.q).collect();
        assert!(qs.contains(&5) && qs.contains(&13) && !qs.contains(&17));
        let all = search_primes(&CycloSearchParams { s: vec![], r: 4, c: 1, bound: 60 }).unwrap();
        let qs: Vec<u64> = all.iter().map(|h| h.q).collect();
        assert_eq!(qs, vec![5, 13, 29, 37, 53]);
        let (c, _) = scan_c(&[2], 4, 100).unwrap().unwrap();
        assert_eq!(c, 1);
    }

    #[test]
    fn split_examples() {
        let req: BTreeMap<u64, u64> = [(2, 4)].into();
        assert!(splitting_check(&req, 13).unwrap().ok);
        assert!(!splitting_check(&req, 7).unwrap().ok);
        assert!(splitting_check(&BTreeMap::new(), 7).unwrap().ok);
        assert!(splitting_check(&req, 2).is_err());
    }

    #[test]
    fn hits_pass_splitting_check() {
        let params = CycloSearchParams { s: vec![2, 3], r: 6, c: 1, bound: 2000 };
        for h in search_primes(&params).unwrap() {
            let req: BTreeMap<u64, u64> = params.s.iter().map(|&p| (p, params.r / params.c)).collect();
            assert!(splitting_check(&req, h.q).unwrap().ok);
        }
    }

    proptest! {
        #[test]
        fn order_matches_naive(a in 1u64..500, qi in 0usize..60) {
            let primes: Vec<u64> = (2..300).filter(|&n| is_prime(n)).collect();
            let q = primes[qi % primes.len()];
            prop_assume!(a % q != 0);
            let f = mult_order(a as i64, q).unwrap();
            prop_assert_eq!(Some(f), naive_order(a, q));
            prop_assert_eq!((q - 1) % f, 0);
        }
    }
}
