//! Write SL2 matrices over Z and Z/n as products of elementary matrices.
//!
//!     cargo run --example elementary_words -- "[[7,2],[3,1]]"

use stablerank::finite_rings::{e2_decompose, e2_decompose_mod, IntMat2, ZnMat2};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "[[7,2],[3,1]]".into());
    let m = IntMat2::parse(&text).expect("a 2x2 integer matrix");
    for x in [m, IntMat2::new(0, -1, 1, 0), IntMat2::new(-1, 0, 0, -1), IntMat2::new(34, 55, 21, 34), IntMat2::new(2, 1, 1, 2)] {
        match e2_decompose(&x) {
            Ok(w) => println!("{x} = {w}   ({} factors, recomposes: {})", w.len(), w.recompose() == x),
            Err(e) => println!("{x}: {e}"),
        }
    }
    let z = ZnMat2::parse(6, "[[5,0],[0,5]]").unwrap();
    let w = e2_decompose_mod(&z).unwrap();
    println!("{z} = {w} mod 6");
}
