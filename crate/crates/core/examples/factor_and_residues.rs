//! Factor integers and Gaussian/Eisenstein integers, then run the Euclidean
//! algorithm between two of them.
//!
//!     cargo run --example factor_and_residues -- 1234567890 5+15i

use stablerank::exact_arith::factor_int;
use stablerank::quad::{ext_gcd, factor, QuadInt, RingKind};
use stablerank::Int;

fn show(x: &QuadInt) {
    let f = factor(x).expect("nonzero");
    let parts: Vec<String> = f
        .factors
        .iter()
        .map(|pp| if pp.exponent == 1 { format!("({})", pp.prime) } else { format!("({})^{}", pp.prime, pp.exponent) })
        .collect();
    println!("{:>12} in {}: unit {} * {}   N = {}", x.to_string(), x.kind, f.unit, parts.join(" "), x.norm());
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: Int = args.first().map_or("1234567890", |s| s).parse().expect("an integer");
    let z = args.get(1).map_or("5+15i", |s| s);

    let f = factor_int(&n).expect("nonzero");
    let pretty: Vec<String> = f.factors.iter().map(|pp| format!("{}^{}", pp.prime, pp.exponent)).collect();
    println!("{n} = {}{}", if f.sign < 0 { "-" } else { "" }, pretty.join(" * "));

    let g = QuadInt::parse(RingKind::Gaussian, z).expect("a Gaussian integer");
    show(&g);
    for p in [2, 3, 5, 7, 13] {
        show(&QuadInt::from_int(RingKind::Gaussian, p));
        show(&QuadInt::from_int(RingKind::Eisenstein, p));
    }

    let (a, b) = (QuadInt::new(RingKind::Gaussian, 11, 3), QuadInt::new(RingKind::Gaussian, 1, 8));
    let (d, u, v) = ext_gcd(&a, &b).unwrap();
    println!("gcd({a}, {b}) = {d} = ({u})({a}) + ({v})({b})");
    let (q, r) = a.divmod(&b).unwrap();
    println!("{a} = ({q})({b}) + {r},  N(r) = {} <= N(b)/2 = {}", r.norm(), b.norm() / 2);
}
