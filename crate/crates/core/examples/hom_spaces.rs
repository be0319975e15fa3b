//! Dimensions of Hom spaces from the semilinear solver next to the closed form
//! predicted by the slope decomposition.

use kottwitz::arith::FqConfig;
use kottwitz::semilinear::{hom_closed_form, hom_space_dim, newton_slopes, standard_simple};

fn main() -> kottwitz::Result<()> {
    let base = FqConfig::new(2, 1);
    let half = standard_simple(&base, 1, 2)?;
    let one = standard_simple(&base, 1, 1)?;
    let mixed = half.direct_sum(&one)?;
    for (name, a, b) in [("E(1/2), E(1/2)", &half, &half), ("E(1/2), E(1)", &half, &one), ("mixed, mixed", &mixed, &mixed)] {
        let h = hom_space_dim(a, b, None)?;
        let closed = hom_closed_form(&newton_slopes(a), &newton_slopes(b));
        println!("Hom({name}): solver {} (window {}), closed form {closed}", h.dim, h.window);
    }
    Ok(())
}
