//! Local invariants of canonical classes in Q/Z: transition along a tower,
//! inflation, and the order of the finite obstruction group.

use kottwitz::tate::{
    bks_order, inflation_check, local_class_invariant, push_character, quotient_tower, transition_map, FiniteGroup,
    KottwitzCharacter,
};

fn main() -> kottwitz::Result<()> {
    let g = FiniteGroup::klein();
    let subs = g.subgroups()?;
    let (k, l, cover) = quotient_tower(&g, &subs[1], &[subs[0].clone(), subs[1].clone(), subs[2].clone()])?;
    let a = KottwitzCharacter::new({
        let mut c = vec![0; k.num_places()];
        c[0] = 1;
        *c.last_mut().unwrap() -= 1;
        c
    })?;
    let pushed = push_character(&transition_map(&k, &l, &cover)?, &a);
    println!("character on K {:?} pushes to {:?} on L", a.coeffs(), pushed.coeffs());
    for w in 0..l.num_places() {
        let v = cover.under[w];
        let up = local_class_invariant(&pushed, w, l.local_degree[w])?;
        let down = local_class_invariant(&a, v, k.local_degree[v])?;
        println!("place {w} over {v}: {up} = {down}");
    }
    let inf = inflation_check(2, 6)?;
    println!("inflation 2 | 6: {} = {} ({})", inf.lhs, inf.rhs, inf.holds);
    println!("obstruction order for degrees [2, 4, 6]: {}", bks_order(&[2, 4, 6])?);
    Ok(())
}
