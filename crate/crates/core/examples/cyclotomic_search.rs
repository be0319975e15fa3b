//! Primes q below a bound with q = 1 mod r, gcd((q-1)/r, r) = c and r
//! dividing the order of every element of S mod q.

use kottwitz::cyclo::{naive_order, search_primes, CycloSearchParams};

fn main() -> kottwitz::Result<()> {
    let hits = search_primes(&CycloSearchParams { s: vec![2, 3], r: 4, c: 1, bound: 500 })?;
    for h in &hits {
        let check: Vec<Option<u64>> = [2, 3].iter().map(|&a| naive_order(a, h.q)).collect();
        println!("q = {:>3}: orders {:?} (naive {:?})", h.q, h.orders, check);
    }
    Ok(())
}
