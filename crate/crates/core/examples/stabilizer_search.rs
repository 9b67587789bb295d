//! Bounded search for s1, s2 making (a + s1 c, b + s2 c) unimodular.
//!
//!     cargo run --release --example stabilizer_search -- "1+x,x,x^2+16" 1 2

use stablerank::stability::{search_stabilizer, StabilizerSearch};
use stablerank::PolyRow;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let rows: Vec<String> = match args.first() {
        Some(r) => vec![r.clone()],
        None => vec!["x,0,1".into(), "1+x,x,x^2+16".into(), "3,1+x,x^2+2".into(), "1+x,12,x^2+16".into()],
    };
    let deg: usize = args.get(1).map_or(1, |s| s.parse().expect("degree bound"));
    let coeff: i64 = args.get(2).map_or(1, |s| s.parse().expect("coefficient bound"));
    for text in rows {
        let row = PolyRow::parse(&text).expect("a row of three polynomials");
        match search_stabilizer(&row, deg, coeff) {
            Ok(StabilizerSearch::Found { witness, searched }) => {
                println!("{row}: s1 = {}, s2 = {} after {searched} pairs", witness.s1, witness.s2)
            }
            Ok(StabilizerSearch::NotFound { searched }) => {
                println!("{row}: nothing with deg <= {deg}, |coeff| <= {coeff} ({searched} pairs)")
            }
            Err(e) => println!("{row}: {e}"),
        }
    }
}
