//! Relative `SL_2` over Gaussian and Eisenstein integers and the
//! Bass-Milnor-Serre invariant.
//!
//! For a nonzero ideal `I` of a ring `S` with `m` roots of unity, the divisor
//! `r(I)` of `m` has `ord_p(r) = j_p(I)`, where `j_p(I)` is
//! `min_P floor(ord_P(I)/ord_P(pS) - 1/(p-1))` over the primes `P` above `p`,
//! clamped into `[0, ord_p(m)]`. A matrix `[[a, b], [*, *]]` of `SL_2(S, I)`
//! is sent to the symbol `(b/a)_r`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{factor_int, floor_rational, Rational};
use crate::quad::{ext_gcd, ord_prime, primes_above, PrincipalIdeal, QuadInt, RingKind};
use crate::residue::{power_residue_symbol, RootOfUnity};

/// A 2x2 matrix `[[a, b], [c, d]]` over a quadratic ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: QuadInt,
    pub b: QuadInt,
    pub c: QuadInt,
    pub d: QuadInt,
}

impl Mat2 {
    pub fn new(a: QuadInt, b: QuadInt, c: QuadInt, d: QuadInt) -> Self {
        let kind = a.kind;
        assert!(
            [&b, &c, &d].iter().all(|x| x.kind == kind),
            "mixed ring kinds in matrix"
        );
        Mat2 { a, b, c, d }
    }

    pub fn identity(kind: RingKind) -> Self {
        Mat2::new(
            QuadInt::one(kind),
            QuadInt::zero(kind),
            QuadInt::zero(kind),
            QuadInt::one(kind),
        )
    }

    /// `e_12(x)` (`upper = true`) or `e_21(x)`.
    pub fn elementary(upper: bool, x: QuadInt) -> Self {
        let kind = x.kind;
        let (one, zero) = (QuadInt::one(kind), QuadInt::zero(kind));
        if upper {
            Mat2::new(one.clone(), x, zero, one)
        } else {
            Mat2::new(one.clone(), zero, x, one)
        }
    }

    pub fn kind(&self) -> RingKind {
        self.a.kind
    }

    pub fn det(&self) -> QuadInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    /// Parses `[[a, b], [c, d]]` with ring elements in the usual grammar.
    pub fn parse(kind: RingKind, text: &str) -> Result<Self> {
        let entries = parse_matrix_entries(text)?;
        let mut it = entries
            .iter()
            .map(|e| QuadInt::parse(kind, e))
            .collect::<Result<Vec<_>>>()?
            .into_iter();
        let mut next = || it.next().expect("four entries");
        Ok(Mat2::new(next(), next(), next(), next()))
    }
}

/// Splits `[[w, x], [y, z]]` into its four entry strings.
pub(crate) fn parse_matrix_entries(text: &str) -> Result<Vec<String>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix("[[")
        .and_then(|r| r.strip_suffix("]]"))
        .ok_or_else(|| Error::Parse(format!("expected [[a,b],[c,d]], got `{text}`")))?;
    let rows: Vec<&str> = inner.split("],[").collect();
    if rows.len() != 2 {
        return Err(Error::Parse(format!("expected two rows in `{text}`")));
    }
    let mut out = Vec::with_capacity(4);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 || cells.iter().any(|c| c.is_empty()) {
            return Err(Error::Parse(format!("expected two entries per row in `{text}`")));
        }
        out.extend(cells.into_iter().map(str::to_owned));
    }
    Ok(out)
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

mod rational_text {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Rational>().map_err(D::Error::custom)
    }
}

/// One `p | m` line of the divisor computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeLog {
    pub p: u32,
    /// `ord_p(m)`, the upper end of the clamping interval.
    pub ord_m: u32,
    /// Prime of `S` above `p` attaining the minimum.
    pub minimizer: QuadInt,
    /// `ord_P(I)/ord_P(pS) - 1/(p-1)` at the minimizer.
    #[serde(with = "rational_text")]
    pub minimand: Rational,
    /// Minimum of the floors, before clamping.
    #[serde(with = "crate::decimal")]
    pub pre_clamp: BigInt,
    pub j: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmsDivisor {
    pub ring: RingKind,
    pub ideal: PrincipalIdeal,
    pub m: u32,
    pub r: u32,
    pub per_prime_log: Vec<PrimeLog>,
}

impl BmsDivisor {
    /// `prod p^j_p` recomputed from the log.
    pub fn recompute_r(&self) -> u32 {
        self.per_prime_log.iter().map(|l| l.p.pow(l.j)).product()
    }
}

/// The divisor `r(I)` of the number of roots of unity.
pub fn r_of_ideal(kind: RingKind, ideal: &PrincipalIdeal) -> Result<BmsDivisor> {
    if ideal.kind() != kind {
        return Err(Error::KindMismatch(kind, ideal.kind()));
    }
    if ideal.is_zero() {
        return Err(Error::domain("r(I) needs a nonzero ideal"));
    }
    let m = kind.unit_count();
    let mut per_prime_log = Vec::new();
    let mut r = 1u32;
    for pp in factor_int(&BigInt::from(m))?.factors {
        let p: u32 = u32::try_from(&pp.prime).expect("small prime");
        let ord_m = pp.exponent;
        let shift = Rational::new(BigInt::one(), BigInt::from(p - 1));
        let mut best: Option<(BigInt, Rational, QuadInt)> = None;
        for (prime, ramification) in primes_above(kind, &pp.prime)? {
            let ord_i = ord_prime(ideal.generator(), &prime)?;
            let value =
                Rational::new(BigInt::from(ord_i), BigInt::from(ramification)) - &shift;
            let fl = floor_rational(&value);
            if best.as_ref().map_or(true, |(b, _, _)| fl < *b) {
                best = Some((fl, value, prime));
            }
        }
        let (pre_clamp, minimand, minimizer) = best.expect("every prime has a prime above it");
        let j = if pre_clamp <= BigInt::zero() {
            0
        } else if pre_clamp >= BigInt::from(ord_m) {
            ord_m
        } else {
            u32::try_from(&pre_clamp).expect("within [0, ord_p(m)]")
        };
        r *= p.pow(j);
        per_prime_log.push(PrimeLog {
            p,
            ord_m,
            minimizer,
            minimand,
            pre_clamp,
            j,
        });
    }
    Ok(BmsDivisor {
        ring: kind,
        ideal: ideal.clone(),
        m,
        r,
        per_prime_log,
    })
}

/// Outcome of a membership test with the first failing condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub reason: Option<String>,
}

impl Membership {
    fn yes() -> Self {
        Membership {
            member: true,
            reason: None,
        }
    }

    fn no(reason: String) -> Self {
        Membership {
            member: false,
            reason: Some(reason),
        }
    }
}

/// Tests `M ∈ SL_2(S, I)`: determinant one and `M ≡ identity (mod I)`.
pub fn in_sl2_rel(m: &Mat2, ideal: &PrincipalIdeal) -> Membership {
    if m.kind() != ideal.kind() {
        return Membership::no(format!(
            "matrix over {} but ideal over {}",
            m.kind(),
            ideal.kind()
        ));
    }
    let det = m.det();
    if !det.is_one() {
        return Membership::no(format!("determinant is {det}, not 1"));
    }
    let g = ideal.generator();
    let one = QuadInt::one(m.kind());
    let checks = [
        ("a ≢ 1", &m.a - &one),
        ("b ≢ 0", m.b.clone()),
        ("c ≢ 0", m.c.clone()),
        ("d ≢ 1", &m.d - &one),
    ];
    for (what, x) in checks {
        if !g.divides(&x) {
            return Membership::no(format!("{what} mod {ideal}"));
        }
    }
    Membership::yes()
}

/// Completes a first row `(a, b)` with `a ≡ 1`, `b ≡ 0 (mod I)` to a matrix of
/// `SL_2(S, I)`.
///
/// Extended gcd gives `a*d0 - b*c0 = 1`; every other completion is
/// `(c0 + t*a, d0 + t*b)`. Taking `t` as the Euclidean residue of
/// `-c0 * a^-1` modulo the generator of `I` puts `c` in `I`, and `d ≡ d0 ≡ 1`
/// follows from the determinant.
pub fn complete_sl2_rel(a: &QuadInt, b: &QuadInt, ideal: &PrincipalIdeal) -> Result<Mat2> {
    let kind = ideal.kind();
    for x in [a, b] {
        if x.kind != kind {
            return Err(Error::KindMismatch(x.kind, kind));
        }
    }
    if ideal.is_zero() {
        return Err(Error::domain("completion needs a nonzero ideal"));
    }
    let g = ideal.generator();
    let one = QuadInt::one(kind);
    if !g.divides(&(a - &one)) {
        return Err(Error::domain(format!("a = {a} is not ≡ 1 mod {ideal}")));
    }
    if !g.divides(b) {
        return Err(Error::domain(format!("b = {b} is not ≡ 0 mod {ideal}")));
    }
    let (h, u, v) = ext_gcd(a, b).map_err(|_| Error::PairNotUnimodular)?;
    if !h.is_one() {
        return Err(Error::PairNotUnimodular);
    }
    let (d0, c0) = (u, -v);
    let t = if g.is_unit() {
        QuadInt::zero(kind)
    } else {
        let (_, a_inv, _) = ext_gcd(a, g)?;
        (-(&c0 * &a_inv)).rem(g)?
    };
    let c = &c0 + &(&t * a);
    let d = &d0 + &(&t * b);
    let m = Mat2::new(a.clone(), b.clone(), c, d);
    debug_assert!(in_sl2_rel(&m, ideal).member);
    Ok(m)
}

/// The invariant of a matrix of `SL_2(S, I)` together with what it was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sk1Certificate {
    pub matrix: Mat2,
    pub ideal: PrincipalIdeal,
    pub r: u32,
    pub value: RootOfUnity,
}

pub fn sk1_invariant(m: &Mat2, ideal: &PrincipalIdeal) -> Result<Sk1Certificate> {
    let membership = in_sl2_rel(m, ideal);
    if !membership.member {
        return Err(Error::domain(format!(
            "matrix is not in SL2(S, I): {}",
            membership.reason.unwrap_or_default()
        )));
    }
    let r = r_of_ideal(ideal.kind(), ideal)?.r;
    let value = if r == 1 || m.b.is_zero() {
        RootOfUnity::one(r)
    } else {
        power_residue_symbol(&m.b, &m.a, r)?
    };
    Ok(Sk1Certificate {
        matrix: m.clone(),
        ideal: ideal.clone(),
        r,
        value,
    })
}

impl Sk1Certificate {
    /// Recomputes membership and the symbol from scratch.
    pub fn verify(&self) -> bool {
        sk1_invariant(&self.matrix, &self.ideal)
            .map(|c| c.r == self.r && c.value == self.value)
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RingKind::{Eisenstein, Gaussian};

    fn g(a: i64, b: i64) -> QuadInt {
        QuadInt::new(Gaussian, a, b)
    }

    fn ideal(x: QuadInt) -> PrincipalIdeal {
        PrincipalIdeal::new(&x)
    }

    fn reference_matrix() -> Mat2 {
        Mat2::new(g(1, 4), g(12, 0), g(24, 0), g(17, -68))
    }

    #[test]
    fn divisor_examples() {
        let d = r_of_ideal(Gaussian, &ideal(g(4, 0))).unwrap();
        assert_eq!((d.m, d.r), (4, 2));
        assert_eq!(d.per_prime_log[0].minimand, Rational::from_integer(BigInt::from(1)));
        assert_eq!(r_of_ideal(Gaussian, &ideal(g(1, 1))).unwrap().r, 1);
        let d = r_of_ideal(Gaussian, &ideal(g(8, 0))).unwrap();
        assert_eq!(d.r, 4);
        assert_eq!(d.recompute_r(), 4);
        assert_eq!(r_of_ideal(Gaussian, &PrincipalIdeal::unit(Gaussian)).unwrap().r, 1);
        assert!(r_of_ideal(Gaussian, &ideal(g(0, 0))).is_err());
    }

    #[test]
    fn divisor_pre_clamp_is_logged() {
        let d = r_of_ideal(Gaussian, &ideal(g(1, 1))).unwrap();
        assert_eq!(d.per_prime_log[0].pre_clamp, BigInt::from(-1));
        let d = r_of_ideal(Gaussian, &ideal(g(64, 0))).unwrap();
        assert_eq!(d.per_prime_log[0].pre_clamp, BigInt::from(5));
        assert_eq!(d.r, 4);
    }

    #[test]
    fn eisenstein_three_is_trivial() {
        let e3 = QuadInt::from_int(Eisenstein, 3);
        let d = r_of_ideal(Eisenstein, &PrincipalIdeal::new(&e3)).unwrap();
        assert_eq!((d.m, d.r), (6, 1));
        assert_eq!(d.per_prime_log.len(), 2);
    }

    #[test]
    fn membership_examples() {
        assert_eq!(reference_matrix().det(), g(1, 0));
        assert!(in_sl2_rel(&reference_matrix(), &ideal(g(4, 0))).member);
        assert!(in_sl2_rel(&Mat2::identity(Gaussian), &ideal(g(7, 3))).member);
        let e = Mat2::elementary(true, g(1, 0));
        let verdict = in_sl2_rel(&e, &ideal(g(4, 0)));
        assert!(!verdict.member);
        assert!(verdict.reason.unwrap().contains("b"));
    }

    #[test]
    fn completion_examples() {
        let i4 = ideal(g(4, 0));
        let m = complete_sl2_rel(&g(1, 4), &g(12, 0), &i4).unwrap();
        assert!(in_sl2_rel(&m, &i4).member);
        let m = complete_sl2_rel(&g(1, 0), &g(0, 0), &ideal(g(3, 1))).unwrap();
        assert_eq!(m, Mat2::identity(Gaussian));
        assert!(complete_sl2_rel(&g(1, 4), &g(2, 0), &i4).is_err());
        assert!(complete_sl2_rel(&g(2, 4), &g(4, 0), &i4).is_err());
        assert_eq!(
            complete_sl2_rel(&g(5, 0), &g(20, 0), &i4),
            Err(Error::PairNotUnimodular)
        );
    }

    #[test]
    fn invariant_examples() {
        let i4 = ideal(g(4, 0));
        let cert = sk1_invariant(&reference_matrix(), &i4).unwrap();
        assert_eq!(cert.value, RootOfUnity::new(2, 1));
        assert_eq!(cert.r, 2);
        assert!(cert.verify());
        assert!(sk1_invariant(&Mat2::identity(Gaussian), &i4).unwrap().value.is_one());
        let i1 = ideal(g(1, 1));
        let m = complete_sl2_rel(&g(1, 2), &g(2, 0), &i1).unwrap();
        let cert = sk1_invariant(&m, &i1).unwrap();
        assert_eq!((cert.r, cert.value.is_one()), (1, true));
        assert!(sk1_invariant(&Mat2::elementary(true, g(1, 0)), &i4).is_err());
    }

    #[test]
    fn matrix_text() {
        let m = Mat2::parse(Gaussian, "[[1+4i, 12], [24, 17-68i]]").unwrap();
        assert_eq!(m, reference_matrix());
        assert_eq!(m.to_string(), "[[1+4i,12],[24,17-68i]]");
        assert!(Mat2::parse(Gaussian, "[[1,2],[3]]").is_err());
        assert!(Mat2::parse(Gaussian, "1,2,3,4").is_err());
    }
}
