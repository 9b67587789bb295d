//! Unimodularity of rows in Z[x]: Bézout certificates or explicit obstructions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{extended_prs, FpPoly, IntPoly};
use crate::error::{Error, Result};
use crate::exact_arith::{crt, factor_int};

/// Largest exponent accepted in the D-stage integer before giving up.
pub const MAX_NILPOTENCY: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyRow {
    pub entries: Vec<IntPoly>,
}

impl PolyRow {
    pub fn new(entries: Vec<IntPoly>) -> Self {
        PolyRow { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Comma-separated polynomials, e.g. `1+x,12,x^2+16`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(IntPoly::parse)
            .collect::<Result<Vec<_>>>()?;
        if entries.len() < 2 {
            return Err(Error::Parse(format!("row `{text}` needs at least two entries")));
        }
        Ok(PolyRow { entries })
    }

    /// `Σ wᵢ rᵢ`
    pub fn combine(&self, weights: &[IntPoly]) -> IntPoly {
        self.entries
            .iter()
            .zip(weights)
            .fold(IntPoly::zero(), |acc, (r, w)| acc + &(r * w))
    }
}

impl fmt::Display for PolyRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutCertificate {
    pub row: PolyRow,
    pub witnesses: Vec<IntPoly>,
    /// Nonzero integer reached by the rational Bézout stage.
    #[serde(with = "crate::decimal")]
    pub integer_stage: BigInt,
}

impl BezoutCertificate {
    pub fn verify(&self) -> bool {
        verify_certificate(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonUnimodularObstruction {
    /// The entries share a nonconstant factor over the rationals (stored primitive).
    CommonComplexRoot { gcd: IntPoly },
    /// Modulo `p` the entries share the monic factor `gcd` (coefficients in `[0, p)`).
    ModP {
        #[serde(with = "crate::decimal")]
        p: BigInt,
        gcd: IntPoly,
    },
}

impl NonUnimodularObstruction {
    /// Independent recheck against the row.
    pub fn recheck(&self, row: &PolyRow) -> bool {
        match self {
            NonUnimodularObstruction::CommonComplexRoot { gcd } => {
                !gcd.is_constant()
                    && row
                        .entries
                        .iter()
                        .all(|r| r.pseudo_rem(gcd).is_ok_and(|x| x.is_zero()))
            }
            NonUnimodularObstruction::ModP { p, gcd } => {
                let Some(p) = p.to_u64().filter(|&p| crate::exact_arith::is_prime(&p.into())) else {
                    return false;
                };
                let g = row_gcd_mod_p(row, p);
                !g.is_unit() && g.lift() == *gcd
            }
        }
    }
}

impl fmt::Display for NonUnimodularObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonUnimodularObstruction::CommonComplexRoot { gcd } => {
                write!(f, "common factor {gcd} over the rationals")
            }
            NonUnimodularObstruction::ModP { p, gcd } => {
                write!(f, "common factor {gcd} modulo {p}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Unimodularity {
    Certified(BezoutCertificate),
    Obstructed(NonUnimodularObstruction),
}

impl Unimodularity {
    pub fn is_unimodular(&self) -> bool {
        matches!(self, Unimodularity::Certified(_))
    }

    pub fn certificate(&self) -> Option<&BezoutCertificate> {
        match self {
            Unimodularity::Certified(c) => Some(c),
            Unimodularity::Obstructed(_) => None,
        }
    }

    pub fn into_certificate(self) -> Result<BezoutCertificate> {
        match self {
            Unimodularity::Certified(c) => Ok(c),
            Unimodularity::Obstructed(o) => Err(Error::RowNotUnimodular(Box::new(o))),
        }
    }
}

pub fn verify_certificate(c: &BezoutCertificate) -> bool {
    c.row.len() == c.witnesses.len() && c.row.combine(&c.witnesses).is_one()
}

fn row_gcd_mod_p(row: &PolyRow, p: u64) -> FpPoly {
    row.entries
        .iter()
        .fold(FpPoly::zero(p), |g, r| FpPoly::gcd(&g, &FpPoly::reduce(r, p)))
}

/// Mod-p Bézout multipliers, or the common factor when there are none.
fn bezout_mod_p(row: &PolyRow, p: u64) -> std::result::Result<Vec<FpPoly>, FpPoly> {
    let k = row.len();
    let mut g = FpPoly::zero(p);
    let mut cof = vec![FpPoly::zero(p); k];
    for (i, r) in row.entries.iter().enumerate() {
        let r = FpPoly::reduce(r, p);
        if r.is_zero() {
            continue;
        }
        let (g2, s, t) = FpPoly::ext_gcd(&g, &r);
        for c in cof.iter_mut() {
            *c = c.mul(&s);
        }
        cof[i] = cof[i].add(&t);
        g = g2;
        if g.is_unit() {
            break;
        }
    }
    if g.is_unit() {
        // ext_gcd returns a monic gcd, so g = 1 here
        Ok(cof)
    } else {
        Err(g)
    }
}

/// Integer combination of the row equal to a nonzero integer, or the common
/// rational factor of the entries.
fn integer_stage(row: &PolyRow) -> std::result::Result<(BigInt, Vec<IntPoly>), IntPoly> {
    let k = row.len();
    let nonzero: Vec<usize> = (0..k).filter(|&i| !row.entries[i].is_zero()).collect();

    let mut h = IntPoly::zero();
    let mut cof = vec![IntPoly::zero(); k];
    for &i in &nonzero {
        let (h2, u, v) = extended_prs(&h, &row.entries[i]);
        for c in cof.iter_mut() {
            *c = &*c * &u;
        }
        cof[i] = &cof[i] + &v;
        h = h2;
        if h.is_constant() {
            break;
        }
    }
    if !h.is_constant() {
        return Err(h.primitive_part());
    }
    let mut d = h.coeff(0);

    // Pairwise stages give more integers in the ideal; their gcd keeps D small.
    'pairs: for (x, &i) in nonzero.iter().enumerate() {
        for &j in &nonzero[x + 1..] {
            if d.abs().is_one() {
                break 'pairs;
            }
            let (hij, u, v) = extended_prs(&row.entries[i], &row.entries[j]);
            if !hij.is_constant() {
                continue;
            }
            let e = hij.coeff(0).extended_gcd(&d);
            // e.gcd = e.x * hij + e.y * d
            for c in cof.iter_mut() {
                *c = c.scale(&e.y);
            }
            cof[i] = &cof[i] + &u.scale(&e.x);
            cof[j] = &cof[j] + &v.scale(&e.x);
            d = e.gcd;
        }
    }
    if d.is_negative() {
        d = -d;
        cof = cof.iter().map(|c| -c).collect();
    }
    debug_assert_eq!(row.combine(&cof), IntPoly::constant(d.clone()));
    Ok((d, cof))
}

/// Decides unimodularity of a row in Z[x], returning either a Bézout
/// certificate `Σ wᵢ rᵢ = 1` or an obstruction.
pub fn unimodular_certificate(row: &PolyRow) -> Result<Unimodularity> {
    if row.is_empty() || row.entries.iter().all(IntPoly::is_zero) {
        return Err(Error::domain("row is empty or all zero"));
    }
    let (d, u_int) = match integer_stage(row) {
        Ok(x) => x,
        Err(gcd) => {
            return Ok(Unimodularity::Obstructed(
                NonUnimodularObstruction::CommonComplexRoot { gcd },
            ))
        }
    };
    let fac = factor_int(&d)?;

    // Per prime: mod-p multipliers lifted to [0, p).
    let mut per_prime: Vec<(BigInt, Vec<IntPoly>)> = Vec::new();
    for pp in &fac.factors {
        let p = pp.prime.to_u64().filter(|&p| p < (1u64 << 63)).ok_or_else(|| {
            Error::BoundExceeded(format!("prime factor {} of the integer stage is too large", pp.prime))
        })?;
        match bezout_mod_p(row, p) {
            Ok(v) => per_prime.push((pp.prime.clone(), v.iter().map(FpPoly::lift).collect())),
            Err(g) => {
                return Ok(Unimodularity::Obstructed(NonUnimodularObstruction::ModP {
                    p: pp.prime.clone(),
                    gcd: g.lift(),
                }))
            }
        }
    }

    let s = fac.max_exponent();
    if s > MAX_NILPOTENCY {
        return Err(Error::BoundExceeded(format!(
            "exponent {s} in the integer stage {d} exceeds {MAX_NILPOTENCY}"
        )));
    }

    let k = row.len();
    let v = crt_combine(&per_prime, k)?;
    let e = &IntPoly::one() - &row.combine(&v);
    let rad = fac.radical();
    debug_assert!(e.coeffs().iter().all(|c| c.is_multiple_of(&rad)));

    let mut geometric = IntPoly::zero();
    let mut e_pow = IntPoly::one();
    for _ in 0..s {
        geometric = &geometric + &e_pow;
        e_pow = &e_pow * &e;
    }
    let h = e_pow
        .div_scalar_exact(&d)
        .expect("e^s is divisible by the integer stage");

    let witnesses: Vec<IntPoly> = (0..k)
        .map(|i| &(&v[i] * &geometric) + &(&h * &u_int[i]))
        .collect();
    let cert = BezoutCertificate {
        row: row.clone(),
        witnesses,
        integer_stage: d,
    };
    assert!(
        verify_certificate(&cert),
        "assembled Bézout certificate failed verification for {row}"
    );
    Ok(Unimodularity::Certified(cert))
}

/// Coefficientwise CRT of per-prime multipliers.
fn crt_combine(per_prime: &[(BigInt, Vec<IntPoly>)], k: usize) -> Result<Vec<IntPoly>> {
    if per_prime.is_empty() {
        return Ok(vec![IntPoly::zero(); k]);
    }
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let len = per_prime
            .iter()
            .map(|(_, v)| v[i].coeffs().len())
            .max()
            .unwrap_or(0);
        let mut coeffs = Vec::with_capacity(len);
        for j in 0..len {
            let pairs: Vec<(BigInt, BigInt)> = per_prime
                .iter()
                .map(|(p, v)| (v[i].coeff(j), p.clone()))
                .collect();
            coeffs.push(if pairs.len() == 1 {
                pairs[0].0.clone()
            } else {
                crt(&pairs)?
            });
        }
        out.push(IntPoly::new(coeffs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(s: &str) -> PolyRow {
        PolyRow::parse(s).unwrap()
    }

    #[test]
    fn reference_row_is_unimodular() {
        let r = row("1+x,12,x^2+16");
        let cert = unimodular_certificate(&r).unwrap().into_certificate().unwrap();
        assert!(verify_certificate(&cert));
        let known = BezoutCertificate {
            row: r,
            witnesses: vec![
                IntPoly::parse("5-5x").unwrap(),
                IntPoly::constant(-7),
                IntPoly::constant(5),
            ],
            integer_stage: BigInt::one(),
        };
        assert!(verify_certificate(&known));
    }

    #[test]
    fn mod_two_obstruction() {
        let r = row("x,2");
        match unimodular_certificate(&r).unwrap() {
            Unimodularity::Obstructed(o) => {
                assert_eq!(
                    o,
                    NonUnimodularObstruction::ModP {
                        p: BigInt::from(2),
                        gcd: IntPoly::x()
                    }
                );
                assert!(o.recheck(&r));
            }
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn unit_entry() {
        let r = row("x^3-7x+2,1");
        let cert = unimodular_certificate(&r).unwrap().into_certificate().unwrap();
        assert_eq!(cert.witnesses, vec![IntPoly::zero(), IntPoly::one()]);
    }

    #[test]
    fn integer_stage_521() {
        let r = row("21+2x,12,x^2+20");
        let cert = unimodular_certificate(&r).unwrap().into_certificate().unwrap();
        assert!(cert.verify());
        // 521 is prime and coprime to 12, so the pairwise stage reaches 1
        assert!(cert.integer_stage.is_one());
        // the pair alone shares the root 250 = -21/2 modulo 521
        let pair = row("21+2x,x^2+20");
        match unimodular_certificate(&pair).unwrap() {
            Unimodularity::Obstructed(o) => {
                assert_eq!(o, NonUnimodularObstruction::ModP {
                    p: BigInt::from(521),
                    gcd: IntPoly::from_i64s(&[271, 1]),
                });
                assert!(o.recheck(&pair));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn common_root() {
        let r = row("x^2-1,x^2+x,2x+2");
        match unimodular_certificate(&r).unwrap() {
            Unimodularity::Obstructed(o) => {
                assert_eq!(
                    o,
                    NonUnimodularObstruction::CommonComplexRoot {
                        gcd: IntPoly::parse("x+1").unwrap()
                    }
                );
                assert!(o.recheck(&r));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn prime_powers_in_stage() {
        // 2x is nilpotent mod 8, so 1 + 2x is a unit there
        let r = row("1+2x,8");
        let cert = unimodular_certificate(&r).unwrap().into_certificate().unwrap();
        assert!(cert.verify());
        let r = row("1+6x,36,x^2+5");
        let cert = unimodular_certificate(&r).unwrap().into_certificate().unwrap();
        assert!(cert.verify());
        let r = row("x^2+x+2,4");
        match unimodular_certificate(&r).unwrap() {
            Unimodularity::Obstructed(o) => assert!(o.recheck(&r)),
            Unimodularity::Certified(c) => panic!("x^2+x mod 2 is not a unit: {c:?}"),
        }
    }

    #[test]
    fn tampered_fails() {
        let r = row("1+x,12,x^2+16");
        let mut cert = unimodular_certificate(&r).unwrap().into_certificate().unwrap();
        let w = &cert.witnesses[1] + &IntPoly::one();
        cert.witnesses[1] = w;
        assert!(!verify_certificate(&cert));
    }

    #[test]
    fn all_zero_is_error() {
        assert!(unimodular_certificate(&row("0,0")).is_err());
    }

    #[test]
    fn json_shape() {
        let r = row("x,2");
        let o = unimodular_certificate(&r).unwrap();
        let v = serde_json::to_value(&o).unwrap();
        assert_eq!(v["status"], "obstructed");
        assert_eq!(v["kind"], "mod_p");
        assert_eq!(v["p"], "2");
        assert_eq!(v["gcd"], serde_json::json!(["0", "1"]));
    }
}
