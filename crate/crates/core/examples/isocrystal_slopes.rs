//! Slopes of standard simple isocrystals, of a direct sum, and of a random
//! change of basis of that sum.

use kottwitz::arith::FqConfig;
use kottwitz::semilinear::{newton_slopes, random_invertible, standard_simple};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> kottwitz::Result<()> {
    let base = FqConfig::new(3, 1);
    let a = standard_simple(&base, 1, 2)?;
    let b = standard_simple(&base, -2, 3)?;
    let sum = a.direct_sum(&b)?;
    let show = |name: &str, op: &kottwitz::semilinear::SemilinearOp| {
        let slopes: Vec<String> = newton_slopes(op).pairs().iter().map(|(s, m)| format!("{s} x {m}")).collect();
        println!("{name:<14} dim {}  slopes [{}]", op.dim(), slopes.join(", "));
    };
    show("E(1/2)", &a);
    show("E(-2/3)", &b);
    show("sum", &sum);
    let t = random_invertible(sum.field(), sum.dim(), &mut ChaCha8Rng::seed_from_u64(7));
    show("conjugated sum", &sum.conjugate(&t)?);
    Ok(())
}
