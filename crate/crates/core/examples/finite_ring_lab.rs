//! Exhaustive checks over Z/n: stable rank, the stable row lemma, lifting
//! SL2(Z/n) to SL2(Z) and surjectivity of reduction on unimodular rows.
//!
//!     cargo run --release --example finite_ring_lab -- 24

use stablerank::finite_rings::{
    check_stable_row_lemma, radical, sl2_lift, stable_rank, um_reduction_surjective, unit_lift_check, LemmaConfig,
    LiftSource, ZnMat2,
};

fn main() {
    let top: u64 = std::env::args().nth(1).map_or(16, |s| s.parse().expect("a modulus"));
    println!("{:>4} {:>4} {:>8} {:>8} {:>6}", "n", "sr", "rows", "|SL2|", "rad");
    for n in 2..=top {
        let sr = stable_rank(n).unwrap();
        let sl2 = ZnMat2::sl2(n).unwrap();
        for m in &sl2 {
            let lift = sl2_lift(m).unwrap();
            assert!(lift.reduce(n) == *m && lift.det() == 1.into());
        }
        println!("{n:>4} {:>4} {:>8} {:>8} {:>6}", sr.stable_rank, sr.rows_checked, sl2.len(), radical(n).unwrap());
    }
    for n in 2..=top.min(8) {
        let rep = check_stable_row_lemma(n, &LemmaConfig::default()).unwrap();
        println!("lemma mod {n}: holds {} ({} rows, {} matrices)", rep.holds, rep.rows_checked, rep.matrices_checked);
    }
    let s = um_reduction_surjective(top, 2, 2).unwrap();
    println!("Um_2(Z/{top}) -> Um_2(Z/2) onto: {}", s.holds);
    let z = unit_lift_check(LiftSource::Integers, 5).unwrap();
    println!("units of Z/5 from units of Z: {} (first miss {:?})", z.all_lift, z.first_failure);
}
