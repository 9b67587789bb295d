//! Quadratic, cubic and quartic residue symbols, and a small table of
//! quartic characters modulo a Gaussian prime.
//!
//!     cargo run --example power_residue_symbol

use stablerank::quad::{primes_above, QuadInt, RingKind};
use stablerank::residue::{power_residue_symbol, symbol_defined};
use stablerank::Int;

fn main() {
    let g = |a: i64, b: i64| QuadInt::new(RingKind::Gaussian, a, b);
    let e = |a: i64, b: i64| QuadInt::new(RingKind::Eisenstein, a, b);

    let v = power_residue_symbol(&g(12, 0), &g(1, 4), 2).unwrap();
    println!("(12 / 1+4i)_2 = {}", v.embed(RingKind::Gaussian).unwrap());

    for (b, a) in [(g(3, 0), g(5, 2)), (g(2, 1), g(7, 0)), (g(1, 1), g(3, 2))] {
        if symbol_defined(&b, &a, 4) {
            println!("({b} / {a})_4 = {}", power_residue_symbol(&b, &a, 4).unwrap().embed(RingKind::Gaussian).unwrap());
        }
    }
    for (b, a) in [(e(2, 0), e(7, 0)), (e(3, 1), e(5, 0)), (e(2, 0), e(-1, 3))] {
        println!("({b} / {a})_3 = {}", power_residue_symbol(&b, &a, 3).unwrap().embed(RingKind::Eisenstein).unwrap());
    }

    // quartic character mod a prime above 13
    let (pi, _) = primes_above(RingKind::Gaussian, &Int::from(13)).unwrap()[0].clone();
    print!("(n / {pi})_4 for n = 1..12:");
    for n in 1..13 {
        let v = power_residue_symbol(&g(n, 0), &pi, 4).unwrap();
        print!(" {}", v.embed(RingKind::Gaussian).unwrap());
    }
    println!();
}
