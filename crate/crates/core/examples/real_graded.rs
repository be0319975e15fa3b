//! Real graded spaces: validation, rejection of parity-violating mutations,
//! and splitting into real lines and planes.

use kottwitz::archimedean::{decompose_graded, parity_mutations, random_valid_alpha, validate_graded, GradedSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> kottwitz::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let space = GradedSpace::new()
        .with_component(0, random_valid_alpha(0, 2, &mut rng))?
        .with_component(1, random_valid_alpha(1, 2, &mut rng))?;
    println!("check: {:?}", validate_graded(&space));
    for bad in parity_mutations(&space) {
        println!("mutation: {:?}", validate_graded(&bad));
    }
    let d = decompose_graded(&space)?;
    for s in &d.summands {
        println!("degree {:>2}: {:?} spanned by {} vector(s)", s.degree, s.kind, s.vectors.len());
    }
    println!("verified: {}", d.verified);
    Ok(())
}
