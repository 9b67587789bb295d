mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::sylvester_resultant;
use stablerank::intpoly::{extended_prs, resultant, roots_in_ring, unimodular_certificate, Unimodularity};
use stablerank::quad::{QuadInt, RingKind};
use stablerank::stability::{obstruction_auto, search_stabilizer, verify_report, StabilizerSearch, Verdict};
use stablerank::{IntPoly, PolyRow};

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    proptest::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

fn nonzero_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    poly(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero())
}

fn kind() -> impl Strategy<Value = RingKind> {
    prop_oneof![Just(RingKind::Gaussian), Just(RingKind::Eisenstein)]
}

fn quad(bound: i64) -> impl Strategy<Value = QuadInt> {
    (kind(), -bound..=bound, -bound..=bound).prop_map(|(k, a, b)| QuadInt::new(k, a, b))
}

fn deg(p: &IntPoly) -> usize {
    p.degree().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn resultant_matches_the_sylvester_determinant(f in nonzero_poly(5, 9), g in nonzero_poly(5, 9)) {
        prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g));
    }

    #[test]
    fn resultant_is_multiplicative_and_antisymmetric(f in nonzero_poly(3, 6), g in nonzero_poly(3, 6), h in nonzero_poly(3, 6)) {
        let res = |a: &IntPoly, b: &IntPoly| resultant(a, b).unwrap();
        prop_assert_eq!(res(&f, &(&g * &h)), res(&f, &g) * res(&f, &h));
        let sign = if (deg(&f) * deg(&g)) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        prop_assert_eq!(res(&g, &f), sign * res(&f, &g));
    }

    #[test]
    fn extended_prs_satisfies_its_identity(f in nonzero_poly(4, 9), g in nonzero_poly(4, 9)) {
        let (h, u, v) = extended_prs(&f, &g);
        prop_assert_eq!(&(&u * &f) + &(&v * &g), h.clone());
        if resultant(&f, &g).unwrap().is_zero() {
            prop_assert!(!h.is_constant() || f.is_constant() || g.is_constant());
        } else {
            prop_assert!(h.is_constant() && !h.is_zero());
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in poly(4, 9), g in poly(4, 9), theta in quad(20)) {
        prop_assert_eq!((&f + &g).eval_quad(&theta), &f.eval_quad(&theta) + &g.eval_quad(&theta));
        prop_assert_eq!((&f * &g).eval_quad(&theta), &f.eval_quad(&theta) * &g.eval_quad(&theta));
        let integer = BigInt::from(7);
        prop_assert_eq!(f.eval_quad(&QuadInt::from_int(theta.kind, 7)), QuadInt::from_int(theta.kind, f.eval(&integer)));
    }

    #[test]
    fn evaluation_at_multiples_of_the_conductor(p in poly(4, 30), f in 2i64..12, z in quad(10)) {
        // p(θ) ≡ p(0) mod fS whenever θ ∈ fS
        let fq = QuadInt::from_int(z.kind, f);
        let theta = &fq * &z;
        let diff = &p.eval_quad(&theta) - &QuadInt::from_int(z.kind, p.coeff(0));
        prop_assert!(fq.divides(&diff));
    }

    #[test]
    fn certificates_are_sound(entries in proptest::collection::vec(poly(3, 5), 2..=3)) {
        prop_assume!(entries.iter().any(|p| !p.is_zero()));
        let row = PolyRow::new(entries);
        match unimodular_certificate(&row).unwrap() {
            Unimodularity::Certified(cert) => {
                prop_assert!(cert.verify());
                let mut bad = cert.clone();
                let nonzero = row.entries.iter().position(|p| !p.is_zero()).unwrap();
                bad.witnesses[nonzero] = &bad.witnesses[nonzero] + &IntPoly::one();
                prop_assert!(!bad.verify());
            }
            Unimodularity::Obstructed(o) => prop_assert!(o.recheck(&row)),
        }
    }

    #[test]
    fn roots_really_are_roots(c in nonzero_poly(3, 20), kind in kind()) {
        for theta in roots_in_ring(&c, kind).unwrap() {
            prop_assert!(c.eval_quad(&theta).is_zero());
        }
    }
}

/// Small rows `(a, b, c)` with `c` having a root of the form `fθ'`.
fn obstruction_corpus() -> Vec<PolyRow> {
    let cs = ["x^2+16", "x^2+4", "x^2+64", "x^2+4x+16", "x^2+1", "x^2+x+1"];
    let as_ = ["1+x", "1-x", "1+2x", "1+3x", "1+5x", "3+x", "5+x"];
    let bs = ["4", "8", "12", "16", "20", "24", "2x"];
    let mut out = Vec::new();
    for c in cs {
        for a in as_ {
            for b in bs {
                out.push(PolyRow::parse(&format!("{a},{b},{c}")).unwrap());
            }
        }
    }
    out
}

#[test]
fn obstruction_reports_verify_and_stabilizers_never_contradict_them() {
    let (mut not_stable, mut found) = (0, 0);
    for row in obstruction_corpus() {
        if !unimodular_certificate(&row).unwrap().is_unimodular() {
            continue;
        }
        let verdict = match obstruction_auto(&row) {
            Ok(rep) => {
                assert!(verify_report(&rep), "{row}: report fails verification");
                Some(rep.verdict)
            }
            Err(_) => None,
        };
        if let StabilizerSearch::Found { witness, .. } = search_stabilizer(&row, 1, 1).unwrap() {
            assert!(witness.verify(&row));
            assert_ne!(verdict, Some(Verdict::NotStable), "{row}: stabilized yet reported not stable");
            found += 1;
        }
        if verdict == Some(Verdict::NotStable) {
            not_stable += 1;
        }
    }
    assert!(not_stable > 0 && found > 0, "corpus exercises nothing: {not_stable} / {found}");
}

#[test]
fn corpus_oracle_agrees_on_a_slice() {
    // the full corpus runs in the acceptance target; this keeps a fast check here
    for row in common::corpus_rows().into_iter().step_by(97) {
        let poly_row = PolyRow::new(row.iter().map(|c| common::to_poly(c)).collect());
        let ours = unimodular_certificate(&poly_row).unwrap();
        assert_eq!(ours.is_unimodular(), common::oracle_unimodular(&row), "{poly_row}");
    }
}

#[test]
fn oracle_recognizes_known_rows() {
    assert!(common::oracle_unimodular(&[vec![1, 1], vec![12], vec![16, 0, 1]]));
    assert!(!common::oracle_unimodular(&[vec![0, 1], vec![2]]));
    assert!(!common::oracle_unimodular(&[vec![1, 1], vec![1, 1]]));
    assert!(common::oracle_unimodular(&[vec![21, 2], vec![12], vec![20, 0, 1]]));
    assert!(!common::oracle_unimodular(&[vec![21, 2], vec![20, 0, 1]]));
}
