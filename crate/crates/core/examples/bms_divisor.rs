//! The divisor r(I) of the number of roots of unity for a few ideals,
//! with the per-prime computation.
//!
//!     cargo run --example bms_divisor -- gaussian 8

use stablerank::bms::r_of_ideal;
use stablerank::quad::{PrincipalIdeal, QuadInt, RingKind};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut queries: Vec<(RingKind, String)> = vec![
        (RingKind::Gaussian, "1+i".into()),
        (RingKind::Gaussian, "2".into()),
        (RingKind::Gaussian, "4".into()),
        (RingKind::Gaussian, "8".into()),
        (RingKind::Eisenstein, "2".into()),
        (RingKind::Eisenstein, "3".into()),
        (RingKind::Eisenstein, "12".into()),
    ];
    if let [ring, gen] = args.as_slice() {
        queries = vec![(ring.parse().expect("gaussian or eisenstein"), gen.clone())];
    }
    for (kind, gen) in queries {
        let ideal = PrincipalIdeal::new(&QuadInt::parse(kind, &gen).expect("an element"));
        let d = r_of_ideal(kind, &ideal).unwrap();
        println!("r({ideal}) in {kind} = {} (m = {})", d.r, d.m);
        for log in &d.per_prime_log {
            println!(
                "    p = {}: min at {} of {}, floor {}, clamped to [0, {}] -> j = {}",
                log.p, log.minimizer, log.minimand, log.pre_clamp, log.ord_m, log.j
            );
        }
    }
}
