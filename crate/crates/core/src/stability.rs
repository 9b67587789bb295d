//! Non-stability obstruction for unimodular rows `(a, b, c)` in Z[x].
//!
//! If `c(θ) = 0` for some `θ` divisible by `f` in `S`, then `x ↦ θ` maps
//! Z[x] into `Z + fS`, and the pair `(a(θ), b(θ))` is the first row of a
//! matrix of `SL_2(S, fS)`. A nontrivial invariant of that matrix shows the
//! row is not stable, because `SK_1(Z[x])` is trivial and a stable row would
//! make the matrix elementary. Only the matrix and its symbol are computed
//! here; that last implication is quoted in the report, not re-derived.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bms::{complete_sl2_rel, in_sl2_rel, r_of_ideal, sk1_invariant, Mat2};
use crate::error::{Error, Result};
use crate::intpoly::{
    roots_in_ring, unimodular_certificate, BezoutCertificate, IntPoly, PolyRow, Unimodularity,
};
use crate::quad::{PrincipalIdeal, QuadInt, RingKind};
use crate::residue::{power_residue_symbol, symbol_defined, RootOfUnity};

pub const INFERENCE: &str = "SK1(Z[x]) is trivial, so a stable row (a, b, c) would make \
the evaluated matrix a product of elementary matrices of SL2(Z + I), whose invariant is 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotStable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotStable => "not stable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub row: PolyRow,
    pub ring: RingKind,
    pub theta: QuadInt,
    #[serde(with = "crate::decimal")]
    pub conductor: BigInt,
    pub ideal: PrincipalIdeal,
    pub r: u32,
    pub completion: Mat2,
    pub value: RootOfUnity,
    pub verdict: Verdict,
    pub bezout: BezoutCertificate,
    /// The cited step from the symbol to the verdict.
    pub inference: String,
}

fn entry_values(row: &PolyRow, theta: &QuadInt) -> [QuadInt; 3] {
    [0, 1, 2].map(|i| row.entries[i].eval_quad(theta))
}

/// Runs the obstruction pipeline for the evaluation `x ↦ θ` and conductor `f`.
pub fn obstruction(
    row: &PolyRow,
    kind: RingKind,
    theta: &QuadInt,
    f: &BigInt,
) -> Result<ObstructionReport> {
    if row.len() != 3 {
        return Err(Error::precondition(
            "row length 3",
            format!("row has {} entries", row.len()),
        ));
    }
    if theta.kind != kind {
        return Err(Error::KindMismatch(theta.kind, kind));
    }
    if !f.is_positive() {
        return Err(Error::precondition("f > 0", format!("conductor is {f}")));
    }
    let bezout = match unimodular_certificate(row)? {
        Unimodularity::Certified(c) => c,
        Unimodularity::Obstructed(o) => return Err(Error::RowNotUnimodular(Box::new(o))),
    };
    let [a, b, c] = entry_values(row, theta);
    if !c.is_zero() {
        return Err(Error::precondition(
            "eval(c, θ) = 0",
            format!("eval(c, θ) ≠ 0: c({theta}) = {c}"),
        ));
    }
    if !(theta.a.is_multiple_of(f) && theta.b.is_multiple_of(f)) {
        return Err(Error::precondition("f | θ", format!("{f} does not divide {theta}")));
    }
    let fq = QuadInt::from_int(kind, f.clone());
    let ideal = PrincipalIdeal::new(&fq);
    let one = QuadInt::one(kind);
    if !fq.divides(&(&a - &one)) {
        return Err(Error::precondition(
            "eval(a, θ) ≡ 1 mod I",
            format!("a(θ) = {a} is not 1 mod {ideal}"),
        ));
    }
    if !fq.divides(&b) {
        return Err(Error::precondition(
            "eval(b, θ) ≡ 0 mod I",
            format!("b(θ) = {b} is not 0 mod {ideal}"),
        ));
    }
    let r = r_of_ideal(kind, &ideal)?.r;
    if r > 1 && !b.is_zero() && !symbol_defined(&b, &a, r) {
        return Err(Error::precondition(
            "symbol defined",
            format!("({b} / {a}) of degree {r} is undefined"),
        ));
    }
    let completion = complete_sl2_rel(&a, &b, &ideal)?;
    let cert = sk1_invariant(&completion, &ideal)?;
    let verdict = if cert.value.is_one() {
        Verdict::Inconclusive
    } else {
        Verdict::NotStable
    };
    Ok(ObstructionReport {
        row: row.clone(),
        ring: kind,
        theta: theta.clone(),
        conductor: f.clone(),
        ideal,
        r: cert.r,
        completion,
        value: cert.value,
        verdict,
        bezout,
        inference: INFERENCE.to_string(),
    })
}

/// Tries every root of `c` in both rings with `f` the content of the root.
/// Returns the first report with a nontrivial value, else the first report,
/// else the first precondition failure.
pub fn obstruction_auto(row: &PolyRow) -> Result<ObstructionReport> {
    if row.len() != 3 {
        return Err(Error::precondition(
            "row length 3",
            format!("row has {} entries", row.len()),
        ));
    }
    let c = &row.entries[2];
    let mut first_report = None;
    let mut first_error = None;
    let mut any_root = false;
    for kind in RingKind::ALL {
        for theta in roots_in_ring(c, kind)? {
            any_root = true;
            let f = theta.a.gcd(&theta.b);
            if f.is_zero() {
                continue;
            }
            match obstruction(row, kind, &theta, &f) {
                Ok(rep) if rep.verdict == Verdict::NotStable => return Ok(rep),
                Ok(rep) => {
                    first_report.get_or_insert(rep);
                }
                Err(e) => {
                    first_error.get_or_insert(e);
                }
            }
        }
    }
    if !any_root {
        return Err(Error::NoRoot(format!("{c} has no root in Z[i] or Z[ω]")));
    }
    match (first_report, first_error) {
        (Some(rep), _) => Ok(rep),
        (None, Some(e)) => Err(e),
        (None, None) => Err(Error::NoRoot(format!("{c} has only the root 0"))),
    }
}

/// Recomputes a report from its stored data: evaluation, membership, the
/// divisor `r`, the symbol and the verdict.
pub fn verify_report(rep: &ObstructionReport) -> bool {
    if rep.row.len() != 3 || !rep.bezout.verify() || rep.bezout.row != rep.row {
        return false;
    }
    let kind = rep.ring;
    // power-sum evaluation, independent of the Horner routine
    let eval = |p: &IntPoly| {
        let mut acc = QuadInt::zero(kind);
        for (k, coeff) in p.coeffs().iter().enumerate() {
            acc = acc + rep.theta.pow(k as u64).scale(coeff);
        }
        acc
    };
    let (a, b, c) = (
        eval(&rep.row.entries[0]),
        eval(&rep.row.entries[1]),
        eval(&rep.row.entries[2]),
    );
    let fq = QuadInt::from_int(kind, rep.conductor.clone());
    if !c.is_zero() || !fq.divides(&rep.theta) || PrincipalIdeal::new(&fq) != rep.ideal {
        return false;
    }
    if rep.completion.a != a || rep.completion.b != b || !in_sl2_rel(&rep.completion, &rep.ideal).member {
        return false;
    }
    let Ok(div) = r_of_ideal(kind, &rep.ideal) else {
        return false;
    };
    if div.r != rep.r || div.recompute_r() != rep.r {
        return false;
    }
    let value = if rep.r == 1 || b.is_zero() {
        RootOfUnity::one(rep.r)
    } else {
        match power_residue_symbol(&b, &a, rep.r) {
            Ok(v) => v,
            Err(_) => return false,
        }
    };
    let verdict = if value.is_one() {
        Verdict::Inconclusive
    } else {
        Verdict::NotStable
    };
    value == rep.value && verdict == rep.verdict
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerWitness {
    pub s1: IntPoly,
    pub s2: IntPoly,
    pub certificate: BezoutCertificate,
}

impl StabilizerWitness {
    pub fn verify(&self, row: &PolyRow) -> bool {
        let c = &row.entries[2];
        let short = PolyRow::new(vec![
            &row.entries[0] + &(&self.s1 * c),
            &row.entries[1] + &(&self.s2 * c),
        ]);
        self.certificate.row == short && self.certificate.verify()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StabilizerSearch {
    Found {
        witness: StabilizerWitness,
        searched: u64,
    },
    /// Nothing within the bounds. This does not show the row is unstable.
    NotFound { searched: u64 },
}

/// All polynomials of degree `≤ deg_bound` with coefficients in `[-bound, bound]`,
/// ordered by degree (zero first) and then by coefficient tuple, constant term first.
pub fn scan_polys(deg_bound: usize, bound: i64) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::zero()];
    let range: Vec<i64> = (-bound..=bound).collect();
    for d in 0..=deg_bound {
        let mut tuples: Vec<Vec<i64>> = vec![Vec::new()];
        for pos in 0..=d {
            let choices: Vec<i64> = if pos == d {
                range.iter().copied().filter(|&v| v != 0).collect()
            } else {
                range.clone()
            };
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    choices.iter().map(move |&v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        out.extend(tuples.iter().map(|t| IntPoly::from_i64s(t)));
    }
    out
}

/// Scans `(s1, s2)` in order of `(deg s1, deg s2, coefficients)` for a pair
/// making `(a + s1 c, b + s2 c)` unimodular.
pub fn search_stabilizer(row: &PolyRow, deg_bound: usize, coeff_bound: i64) -> Result<StabilizerSearch> {
    if row.len() != 3 {
        return Err(Error::precondition(
            "row length 3",
            format!("row has {} entries", row.len()),
        ));
    }
    if coeff_bound < 0 {
        return Err(Error::domain("coefficient bound must be nonnegative"));
    }
    unimodular_certificate(row)?.into_certificate()?;
    let polys = scan_polys(deg_bound, coeff_bound);
    let by_degree = |d: Option<usize>| polys.iter().filter(move |p| p.degree() == d);
    let degrees: Vec<Option<usize>> = std::iter::once(None).chain((0..=deg_bound).map(Some)).collect();
    let [a, b, c] = [&row.entries[0], &row.entries[1], &row.entries[2]];
    // a + s1 c depends only on s1
    let firsts: Vec<(IntPoly, IntPoly)> = polys.iter().map(|s| (s.clone(), a + &(s * c))).collect();
    let mut searched = 0u64;
    for &d1 in &degrees {
        for &d2 in &degrees {
            for (s1, x) in firsts.iter().filter(|(s, _)| s.degree() == d1) {
                for s2 in by_degree(d2) {
                    searched += 1;
                    let y = b + &(s2 * c);
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    let short = PolyRow::new(vec![x.clone(), y]);
                    if let Unimodularity::Certified(certificate) = unimodular_certificate(&short)? {
                        return Ok(StabilizerSearch::Found {
                            witness: StabilizerWitness {
                                s1: s1.clone(),
                                s2: s2.clone(),
                                certificate,
                            },
                            searched,
                        });
                    }
                }
            }
        }
    }
    Ok(StabilizerSearch::NotFound { searched })
}
