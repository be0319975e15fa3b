//! A Weil germ of weight 1 on a CM field with one split and one inert place
//! over p: validity, the omega image, local components and sequence exactness.

use kottwitz::arith::Rat;
use kottwitz::weil::{
    germ_check, omega_map, weil_local_component, weil_sequence_check, CmPlaceTable, PPlace, WeilGermDatum, WeilPlace,
};

fn main() -> kottwitz::Result<()> {
    let table = CmPlaceTable { k_degrees: vec![1, 1, 2], kplus_degrees: vec![1, 1], cover: vec![0, 0, 1] };
    let germ = WeilGermDatum {
        n: 1,
        weight: 1,
        p_places: vec![
            PPlace { local_degree: 1, ord_ratio: Rat::int(1) },
            PPlace { local_degree: 1, ord_ratio: Rat::int(0) },
            PPlace { local_degree: 2, ord_ratio: Rat::new(1, 2) },
        ],
        complex_places: 2,
    };
    println!("germ: {:?}", germ_check(&germ)?);
    println!("omega image: {:?}", omega_map(&germ)?);
    println!("away from p: {}", weil_local_component(&germ, WeilPlace::Away { prime: 5 })?);
    println!("at infinity: {}", weil_local_component(&germ, WeilPlace::AtInfinity)?);
    println!("sequence: {:?}", weil_sequence_check(&table)?);
    Ok(())
}
