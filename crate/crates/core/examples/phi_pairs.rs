//! The phi-pair of the companion matrix of x^3 - t^2 over F_3(t) and its
//! localization at the place t.

use kottwitz::arith::{FqConfig, Matrix, PlaceId, Poly, RatFunc};
use kottwitz::phi::{localize, phi_pair_of, PhiSpaceMatrix};

fn main() -> kottwitz::Result<()> {
    let f3 = FqConfig::new(3, 1);
    let z = RatFunc::zero(&f3);
    let one = RatFunc::from_poly(Poly::one(&f3.zero()));
    let t2 = RatFunc::from_poly(Poly::monomial(f3.one(), 2));
    let a = Matrix::from_fn(&z, 3, 3, |i, j| match (i, j) {
        (0, 2) => t2.clone(),
        (1, 0) | (2, 1) => one.clone(),
        _ => z.clone(),
    });
    let res = phi_pair_of(&PhiSpaceMatrix::new(&f3, 1, a)?, 12)?;
    println!("stable N = {}, dims {:?}", res.stable_n, res.dims);
    for c in &res.pair.components {
        for w in &c.places {
            println!("place {:?}: local degree {}, coefficient {}", w.base_place, w.local_degree, w.deg_coeff);
        }
    }
    let t = PlaceId::finite(Poly::monomial(f3.one(), 1)).expect("t is irreducible");
    for row in localize(&res.pair, &t)? {
        println!("at t: E({}/{}) with multiplicity {}", row.r, row.d, row.s);
    }
    Ok(())
}
