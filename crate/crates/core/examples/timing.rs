//! Times one ordering-relation proof over the seven-variable ground
//! set: `cargo run --release --example timing -- v7`.

use corrbc::itp::{expand_v_definitions, prove, GroundSet};

fn main() {
    let ground = GroundSet::new(&["U0", "U1", "U2", "S1", "S2", "Y1", "Y2"]).unwrap();
    let v = expand_v_definitions(&ground).unwrap();
    let name = std::env::args().nth(1).unwrap_or_else(|| "v1".into());
    let t0 = std::time::Instant::now();
    let r = prove(&v[&name], &[], &ground).unwrap();
    println!("{name}: proven={} in {:?}", r.is_proven(), t0.elapsed());
}
