//! Complete a pair to a matrix of SL2(S, I) and evaluate the SK1 invariant
//! on several completions and products.
//!
//!     cargo run --example relative_sl2

use stablerank::bms::{complete_sl2_rel, in_sl2_rel, sk1_invariant, Mat2};
use stablerank::quad::{PrincipalIdeal, QuadInt, RingKind};

fn main() {
    let g = |a: i64, b: i64| QuadInt::new(RingKind::Gaussian, a, b);
    let ideal = PrincipalIdeal::new(&g(4, 0));
    let (a, b) = (g(1, 4), g(12, 0));

    let m = complete_sl2_rel(&a, &b, &ideal).unwrap();
    println!("completion of ({a}, {b}) mod {ideal}: {m}, det {}", m.det());

    for t in [g(0, 0), g(4, 0), g(0, 4), g(-8, 4)] {
        let other = Mat2::new(a.clone(), b.clone(), &m.c + &(&t * &a), &m.d + &(&t * &b));
        let inv = sk1_invariant(&other, &ideal).unwrap();
        println!("  {other}: invariant {}", inv.value.embed(RingKind::Gaussian).unwrap());
    }

    let fixed = Mat2::parse(RingKind::Gaussian, "[[1+4i,12],[24,17-68i]]").unwrap();
    println!("{fixed} member: {}", in_sl2_rel(&fixed, &ideal).member);

    let e = Mat2::elementary(true, g(8, 4));
    let n = complete_sl2_rel(&g(5, 0), &g(4, 4), &ideal).unwrap();
    for (name, x) in [("E", &e), ("M", &fixed), ("N", &n), ("M*E", &(&fixed * &e)), ("M*N", &(&fixed * &n))] {
        println!("{name:>4}: {}", sk1_invariant(x, &ideal).unwrap().value.embed(RingKind::Gaussian).unwrap());
    }
}
