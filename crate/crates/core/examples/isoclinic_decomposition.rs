//! Splits the isoclinic space of slope m/n into gcd(m, n) simple blocks.

use kottwitz::arith::FqConfig;
use kottwitz::semilinear::decompose_isoclinic;

fn main() -> kottwitz::Result<()> {
    let base = FqConfig::new(2, 1);
    for (m, n) in [(2, 4), (3, 6), (0, 3), (-4, 6)] {
        let d = decompose_isoclinic(&base, m, n)?;
        let sizes: Vec<usize> = d.blocks.iter().map(|b| b.restricted.dim()).collect();
        println!("slope {m}/{n}: {} blocks of sizes {sizes:?}, reassembly verified: {}", d.blocks.len(), d.verified);
    }
    Ok(())
}
