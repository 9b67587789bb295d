//! Bezout certificates and obstructions for rows over Z[x].
//!
//!     cargo run --example unimodular_rows -- "1+2x, 3, x^2+x+1"

use stablerank::intpoly::{resultant, unimodular_certificate, Unimodularity};
use stablerank::{IntPoly, PolyRow};

fn main() {
    let mut rows: Vec<String> = std::env::args().skip(1).collect();
    if rows.is_empty() {
        rows = ["1+x,12,x^2+16", "21+2x,12,x^2+20", "x,2", "1+x,1-x", "x^2+1,x+1,3", "2x+1,4"]
            .map(String::from)
            .to_vec();
    }
    for text in rows {
        let row = PolyRow::parse(&text).expect("a comma separated row");
        match unimodular_certificate(&row).unwrap() {
            Unimodularity::Certified(c) => {
                let w: Vec<String> = c.witnesses.iter().map(|w| w.to_string()).collect();
                println!("{row}: unimodular, witnesses ({}), integer stage {}", w.join(", "), c.integer_stage);
            }
            Unimodularity::Obstructed(o) => println!("{row}: not unimodular, {o}"),
        }
    }
    let f = IntPoly::parse("21+2x").unwrap();
    let g = IntPoly::parse("x^2+20").unwrap();
    println!("Res({f}, {g}) = {}", resultant(&f, &g).unwrap());
}
