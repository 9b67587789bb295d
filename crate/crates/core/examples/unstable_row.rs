//! The obstruction pipeline: evaluate a unimodular row at a root of its
//! last entry, complete to SL2(Z + fS) and read off the invariant.
//!
//!     cargo run --example unstable_row -- "1+x, 12, x^2+16"

use stablerank::stability::{obstruction_auto, verify_report};
use stablerank::PolyRow;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1+x,12,x^2+16".into());
    let row = PolyRow::parse(&text).expect("a row of three polynomials");
    match obstruction_auto(&row) {
        Ok(rep) => {
            println!("row        {}", rep.row);
            println!("evaluation x -> {} in {}, conductor {}", rep.theta, rep.ring, rep.conductor);
            println!("ideal      {}, r = {}", rep.ideal, rep.r);
            println!("completion {}", rep.completion);
            println!("invariant  {}", rep.value.embed(rep.ring).unwrap());
            println!("verdict    {}", rep.verdict);
            println!("rechecked  {}", verify_report(&rep));
        }
        Err(e) => println!("{row}: {e}"),
    }
}
