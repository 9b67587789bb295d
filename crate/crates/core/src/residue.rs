//! `m`-th power residue symbols over the Gaussian (`m | 4`) and Eisenstein
//! (`m | 6`) integers.
//!
//! For a prime `P` not dividing `b*m`, `(b/P)_m` is the unique `m`-th root of
//! unity congruent to `b^((N(P)-1)/m)` modulo `P`. For a general ideal the
//! symbol is multiplicative over the prime factorization of its generator.
//! Congruences are decided by Euclidean division in the ring itself, so split,
//! inert and ramified primes share one code path.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{factor, gcd, is_prime_element, PrincipalIdeal, QuadInt, RingKind};

/// The root of unity `g^exponent` in `mu_order`, where `g` is the canonical
/// generator: `1` (order 1), `-1` (2), `w` (3), `i` (4), `-w^2 = 1 + w` (6).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub order: u32,
    pub exponent: u32,
}

impl RootOfUnity {
    pub fn new(order: u32, exponent: u32) -> Self {
        assert!(order > 0, "root of unity of order zero");
        RootOfUnity {
            order,
            exponent: exponent % order,
        }
    }

    pub fn one(order: u32) -> Self {
        RootOfUnity::new(order, 0)
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn pow(self, k: u64) -> Self {
        let e = (self.exponent as u64 * (k % self.order as u64)) % self.order as u64;
        RootOfUnity::new(self.order, e as u32)
    }

    pub fn inverse(self) -> Self {
        RootOfUnity::new(self.order, self.order - self.exponent)
    }

    /// The ring element this root of unity stands for.
    pub fn embed(&self, kind: RingKind) -> Result<QuadInt> {
        Ok(canonical_generator(kind, self.order)?.pow(self.exponent as u64))
    }

    /// Recovers the root of unity of the given order equal to `x`, if any.
    pub fn from_element(x: &QuadInt, order: u32) -> Option<Self> {
        mu_elements(x.kind, order)
            .ok()?
            .iter()
            .position(|z| z == x)
            .map(|k| RootOfUnity::new(order, k as u32))
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        assert_eq!(self.order, rhs.order, "roots of unity of different orders");
        RootOfUnity::new(self.order, self.exponent + rhs.exponent)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g_{}^{}", self.order, self.exponent)
    }
}

fn check_degree(kind: RingKind, m: u32) -> Result<()> {
    if m == 0 || kind.unit_count() % m != 0 {
        return Err(Error::domain(format!(
            "degree {m} does not divide the {} roots of unity of the {kind} ring",
            kind.unit_count()
        )));
    }
    Ok(())
}

fn canonical_generator(kind: RingKind, m: u32) -> Result<QuadInt> {
    check_degree(kind, m)?;
    Ok(match m {
        1 => QuadInt::one(kind),
        2 => -QuadInt::one(kind),
        3 => QuadInt::omega(kind),
        4 => QuadInt::omega(kind),
        6 => QuadInt::new(kind, 1, 1),
        _ => unreachable!("degree checked above"),
    })
}

/// `mu_m` as powers of the canonical generator.
pub fn mu_elements(kind: RingKind, m: u32) -> Result<Vec<QuadInt>> {
    let g = canonical_generator(kind, m)?;
    let mut out = Vec::with_capacity(m as usize);
    let mut z = QuadInt::one(kind);
    for _ in 0..m {
        out.push(z.clone());
        z = &z * &g;
    }
    Ok(out)
}

/// `base^e mod modulus` by square-and-multiply with Euclidean reduction.
pub fn pow_mod(base: &QuadInt, e: &BigInt, modulus: &QuadInt) -> Result<QuadInt> {
    let mut acc = QuadInt::one(base.kind).rem(modulus)?;
    let mut b = base.rem(modulus)?;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = (&acc * &b).rem(modulus)?;
        }
        if i + 1 < bits {
            b = (&b * &b).rem(modulus)?;
        }
    }
    Ok(acc)
}

/// `(b/pi)_m` for a prime element `pi` with `pi` not dividing `b*m`.
pub fn prime_symbol(b: &QuadInt, pi: &QuadInt, m: u32) -> Result<RootOfUnity> {
    let kind = pi.kind;
    if b.kind != kind {
        return Err(Error::KindMismatch(b.kind, kind));
    }
    check_degree(kind, m)?;
    if !is_prime_element(pi) {
        return Err(Error::domain(format!("{pi} is not a prime of the {kind} ring")));
    }
    if pi.divides(b) {
        return Err(Error::SymbolUndefined(format!("{pi} divides the numerator {b}")));
    }
    if pi.divides(&QuadInt::from_int(kind, m)) {
        return Err(Error::SymbolUndefined(format!("{pi} divides the degree {m}")));
    }
    if m == 1 {
        return Ok(RootOfUnity::one(1));
    }
    let q = pi.norm();
    let (e, rest) = (&q - 1u32).div_rem(&BigInt::from(m));
    assert!(rest.is_zero(), "{m} must divide N({pi}) - 1");
    let power = pow_mod(b, &e, pi)?;
    for (k, zeta) in mu_elements(kind, m)?.iter().enumerate() {
        if pi.divides(&(&power - zeta)) {
            return Ok(RootOfUnity::new(m, k as u32));
        }
    }
    panic!("no {m}-th root of unity is congruent to {b}^{e} modulo {pi}");
}

/// A symbol `(numerator / denominator)_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolQuery {
    pub numerator: QuadInt,
    pub denominator: PrincipalIdeal,
    pub degree: u32,
}

impl SymbolQuery {
    pub fn new(numerator: QuadInt, denominator: &QuadInt, degree: u32) -> Self {
        SymbolQuery {
            numerator,
            denominator: PrincipalIdeal::new(denominator),
            degree,
        }
    }

    pub fn evaluate(&self) -> Result<RootOfUnity> {
        symbol(self)
    }
}

/// `(b/a)_m = prod over P | a of (b/P)_m^ord_P(a)`.
pub fn symbol(query: &SymbolQuery) -> Result<RootOfUnity> {
    let SymbolQuery {
        numerator: b,
        denominator,
        degree: m,
    } = query;
    let kind = denominator.kind();
    if b.kind != kind {
        return Err(Error::KindMismatch(b.kind, kind));
    }
    check_degree(kind, *m)?;
    if denominator.is_zero() {
        return Err(Error::domain("symbol over the zero ideal"));
    }
    let a = denominator.generator();
    let bm = b.scale(&BigInt::from(*m));
    if !gcd(a, &bm)?.is_one() {
        return Err(Error::SymbolUndefined(format!(
            "ideal {denominator} is not coprime to {b} * {m}"
        )));
    }
    let mut acc = RootOfUnity::one(*m);
    if a.is_unit() {
        return Ok(acc);
    }
    for pp in factor(a)?.factors {
        acc = acc * prime_symbol(b, &pp.prime, *m)?.pow(pp.exponent as u64);
    }
    Ok(acc)
}

/// Shorthand for the symbol of `b` over the principal ideal `(a)`.
pub fn power_residue_symbol(b: &QuadInt, a: &QuadInt, m: u32) -> Result<RootOfUnity> {
    symbol(&SymbolQuery::new(b.clone(), a, m))
}

/// Whether `(b/a)_m` is defined: `a` nonzero and coprime to `b*m`.
pub fn symbol_defined(b: &QuadInt, a: &QuadInt, m: u32) -> bool {
    !a.is_zero()
        && gcd(a, &b.scale(&BigInt::from(m)))
            .map(|g| g.is_one())
            .unwrap_or(false)
}

impl RootOfUnity {
    /// `+1`/`-1` for orders 1 and 2, used by human-readable output.
    pub fn as_sign(&self) -> Option<i8> {
        match (self.order, self.exponent) {
            (_, 0) => Some(1),
            (2, 1) => Some(-1),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RingKind::{Eisenstein, Gaussian};

    fn g(a: i64, b: i64) -> QuadInt {
        QuadInt::new(Gaussian, a, b)
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_elements(Gaussian, 4).unwrap(), vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]);
        assert_eq!(mu_elements(Gaussian, 2).unwrap(), vec![g(1, 0), g(-1, 0)]);
        let e = |a, b| QuadInt::new(Eisenstein, a, b);
        assert_eq!(mu_elements(Eisenstein, 3).unwrap(), vec![e(1, 0), e(0, 1), e(-1, -1)]);
        assert!(mu_elements(Gaussian, 3).is_err());
        assert!(mu_elements(Eisenstein, 4).is_err());
        for kind in RingKind::ALL {
            for m in [1, 2, 3, 4, 6].into_iter().filter(|m| kind.unit_count() % m == 0) {
                let mu = mu_elements(kind, m).unwrap();
                assert_eq!(mu.len() as u32, m);
                assert!(mu.iter().all(|z| z.pow(m as u64).is_one()));
            }
        }
    }

    #[test]
    fn prime_symbol_examples() {
        assert_eq!(prime_symbol(&g(12, 0), &g(1, 4), 2).unwrap(), RootOfUnity::new(2, 1));
        assert_eq!(prime_symbol(&g(1, 0), &g(1, 4), 4).unwrap(), RootOfUnity::one(4));
        assert_eq!(prime_symbol(&g(13, 0), &g(1, 4), 2).unwrap(), RootOfUnity::one(2));
        assert!(matches!(
            prime_symbol(&g(17, 0), &g(1, 4), 2),
            Err(Error::SymbolUndefined(_))
        ));
        assert!(matches!(prime_symbol(&g(3, 0), &g(1, 1), 2), Err(Error::SymbolUndefined(_))));
        assert!(prime_symbol(&g(3, 0), &g(5, 0), 2).is_err());
    }

    #[test]
    fn symbol_examples() {
        let a = g(1, 4);
        assert_eq!(power_residue_symbol(&g(12, 0), &a, 2).unwrap(), RootOfUnity::new(2, 1));
        assert_eq!(power_residue_symbol(&g(12, 0), &(&a * &a), 2).unwrap(), RootOfUnity::one(2));
        assert_eq!(power_residue_symbol(&g(5, 2), &g(0, 1), 4).unwrap(), RootOfUnity::one(4));
        // associates give the same ideal
        assert_eq!(
            power_residue_symbol(&g(12, 0), &g(-4, 1), 2).unwrap(),
            RootOfUnity::new(2, 1)
        );
        assert!(matches!(
            power_residue_symbol(&g(3, 0), &g(2, 0), 2),
            Err(Error::SymbolUndefined(_))
        ));
        assert!(matches!(
            power_residue_symbol(&g(6, 0), &g(3, 0), 2),
            Err(Error::SymbolUndefined(_))
        ));
        assert!(power_residue_symbol(&g(2, 0), &g(0, 0), 2).is_err());
    }

    #[test]
    fn degree_one_is_trivial() {
        assert_eq!(power_residue_symbol(&g(12, 0), &g(1, 4), 1).unwrap(), RootOfUnity::one(1));
    }

    #[test]
    fn embed_roundtrip() {
        for kind in RingKind::ALL {
            for m in [1u32, 2, 3, 4, 6].into_iter().filter(|m| kind.unit_count() % m == 0) {
                for k in 0..m {
                    let z = RootOfUnity::new(m, k);
                    let x = z.embed(kind).unwrap();
                    assert_eq!(RootOfUnity::from_element(&x, m), Some(z));
                }
            }
        }
    }
}
