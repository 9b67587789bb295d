//! Gaussian integers `Z[i]` and Eisenstein integers `Z[w]` (`w` a primitive
//! cube root of unity): exact arithmetic, Euclidean division, gcd, canonical
//! associates and prime factorization.
//!
//! An element is stored as `a + b*w` where `w = i` (`w^2 = -1`) for the
//! Gaussian ring and `w = zeta_3` (`w^2 = -1 - w`) for the Eisenstein ring.
//!
//! Canonical associates: among the associates of a nonzero element, the one
//! whose argument lies in `[0, pi/2)` (Gaussian) or `[0, pi/3)` (Eisenstein).
//! In coordinates that is `a > 0, b >= 0` resp. `a - b > 0, b >= 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{cube_root_of_unity, factor_int, is_prime, sqrt_minus_one};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Gaussian,
    Eisenstein,
}

impl RingKind {
    pub const ALL: [RingKind; 2] = [RingKind::Gaussian, RingKind::Eisenstein];

    /// Number of roots of unity in the ring.
    pub fn unit_count(self) -> u32 {
        match self {
            RingKind::Gaussian => 4,
            RingKind::Eisenstein => 6,
        }
    }

    fn letter(self) -> char {
        match self {
            RingKind::Gaussian => 'i',
            RingKind::Eisenstein => 'w',
        }
    }

    /// A generator of the unit group: `i` resp. `1 + w = -w^2`.
    pub fn unit_generator(self) -> QuadInt {
        match self {
            RingKind::Gaussian => QuadInt::new(self, 0, 1),
            RingKind::Eisenstein => QuadInt::new(self, 1, 1),
        }
    }

    /// All units, as successive powers of [`RingKind::unit_generator`].
    pub fn units(self) -> Vec<QuadInt> {
        let g = self.unit_generator();
        let mut out = Vec::with_capacity(self.unit_count() as usize);
        let mut u = QuadInt::one(self);
        for _ in 0..self.unit_count() {
            out.push(u.clone());
            u = &u * &g;
        }
        out
    }

    /// Whether the rational prime `p` stays prime in this ring.
    pub fn is_inert(self, p: &BigInt) -> bool {
        match self {
            RingKind::Gaussian => (p % 4u32) == BigInt::from(3),
            RingKind::Eisenstein => (p % 3u32) == BigInt::from(2),
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Gaussian => "gaussian",
            RingKind::Eisenstein => "eisenstein",
        })
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gaussian" | "z[i]" => Ok(RingKind::Gaussian),
            "eisenstein" | "z[w]" => Ok(RingKind::Eisenstein),
            other => Err(Error::Parse(format!("unknown ring `{other}`"))),
        }
    }
}

/// An element `a + b*w` of a Gaussian or Eisenstein ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub kind: RingKind,
    #[serde(with = "crate::decimal")]
    pub a: BigInt,
    #[serde(with = "crate::decimal")]
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(kind: RingKind, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            kind,
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(kind: RingKind, n: impl Into<BigInt>) -> Self {
        QuadInt::new(kind, n, 0)
    }

    pub fn zero(kind: RingKind) -> Self {
        QuadInt::new(kind, 0, 0)
    }

    pub fn one(kind: RingKind) -> Self {
        QuadInt::new(kind, 1, 0)
    }

    /// The adjoined root `i` resp. `w`.
    pub fn omega(kind: RingKind) -> Self {
        QuadInt::new(kind, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        let (a, b) = (&self.a, &self.b);
        match self.kind {
            RingKind::Gaussian => a * a + b * b,
            RingKind::Eisenstein => a * a - a * b + b * b,
        }
    }

    pub fn conj(&self) -> Self {
        match self.kind {
            RingKind::Gaussian => QuadInt::new(self.kind, self.a.clone(), -&self.b),
            // conj(w) = w^2 = -1 - w
            RingKind::Eisenstein => QuadInt::new(self.kind, &self.a - &self.b, -&self.b),
        }
    }

    /// Multiplies both coordinates by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        QuadInt::new(self.kind, &self.a * k, &self.b * k)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QuadInt::one(self.kind);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check_kind(&self, other: &QuadInt) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::KindMismatch(self.kind, other.kind))
        }
    }

    /// Euclidean division `self = q*y + r` with `N(r) <= N(y)/2` (Gaussian) or
    /// `N(r) <= N(y)/3` (Eisenstein).
    pub fn divmod(&self, y: &QuadInt) -> Result<(QuadInt, QuadInt)> {
        self.check_kind(y)?;
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = y.norm();
        let num = self * &y.conj();
        let q = match self.kind {
            RingKind::Gaussian => {
                // nearest integer, ties toward negative infinity: ceil((2u - n) / 2n)
                let two_n = &n * 2u32;
                let round = |u: &BigInt| -(-(u * 2u32 - &n)).div_floor(&two_n);
                QuadInt::new(self.kind, round(&num.a), round(&num.b))
            }
            RingKind::Eisenstein => {
                // The nearest lattice point is a corner of the fundamental cell
                // containing the exact quotient.
                let fa = num.a.div_floor(&n);
                let fb = num.b.div_floor(&n);
                let mut best: Option<(BigInt, QuadInt)> = None;
                for (da, db) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let cand = QuadInt::new(self.kind, &fa + da, &fb + db);
                    let rn = (self - &(&cand * y)).norm();
                    if best.as_ref().map_or(true, |(bn, _)| rn < *bn) {
                        best = Some((rn, cand));
                    }
                }
                best.expect("four candidates").1
            }
        };
        let r = self - &(&q * y);
        Ok((q, r))
    }

    pub fn rem(&self, y: &QuadInt) -> Result<QuadInt> {
        Ok(self.divmod(y)?.1)
    }

    /// `self / y` when the division is exact.
    pub fn div_exact(&self, y: &QuadInt) -> Option<QuadInt> {
        if self.kind != y.kind || y.is_zero() {
            return None;
        }
        let n = y.norm();
        let num = self * &y.conj();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then(|| QuadInt::new(self.kind, qa, qb))
    }

    /// Whether `self` divides `x`; zero divides only zero.
    pub fn divides(&self, x: &QuadInt) -> bool {
        if self.is_zero() {
            x.is_zero()
        } else {
            x.div_exact(self).is_some()
        }
    }

    /// Congruence of `self` and `other` modulo `m`.
    pub fn congruent(&self, other: &QuadInt, m: &QuadInt) -> bool {
        m.divides(&(self - other))
    }

    fn in_canonical_sector(&self) -> bool {
        match self.kind {
            RingKind::Gaussian => self.a.is_positive() && !self.b.is_negative(),
            RingKind::Eisenstein => (&self.a - &self.b).is_positive() && !self.b.is_negative(),
        }
    }

    /// Returns `(c, u)` with `self = u * c`, `u` a unit and `c` canonical.
    pub fn canonical_associate(&self) -> Result<(QuadInt, QuadInt)> {
        if self.is_zero() {
            return Err(Error::domain("zero has no canonical associate"));
        }
        for v in self.kind.units() {
            let c = &v * self;
            if c.in_canonical_sector() {
                return Ok((c, v.conj()));
            }
        }
        unreachable!("every nonzero element has an associate in the canonical sector")
    }

    /// The canonical associate, with zero mapped to zero.
    pub fn normalized(&self) -> QuadInt {
        if self.is_zero() {
            self.clone()
        } else {
            self.canonical_associate().expect("nonzero").0
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.in_canonical_sector()
    }

    /// Ordering key used for deterministic prime lists.
    pub fn sort_key(&self) -> (BigInt, BigInt, BigInt) {
        (self.norm(), self.a.clone(), self.b.clone())
    }

    /// Parses `a`, `a+bi`, `a-bi`, `bi` (Gaussian) or the same with `w`
    /// (Eisenstein). Spaces and an optional `*` before the letter are allowed.
    pub fn parse(kind: RingKind, text: &str) -> Result<QuadInt> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty ring element".into()));
        }
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut first = true;
        while pos < bytes.len() {
            let mut negative = false;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    negative = true;
                    pos += 1
                }
                _ if first => {}
                _ => return Err(Error::Parse(format!("expected sign in `{text}`"))),
            }
            first = false;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits = &s[start..pos];
            if pos < bytes.len() && bytes[pos] == b'*' {
                if digits.is_empty() {
                    return Err(Error::Parse(format!("dangling `*` in `{text}`")));
                }
                pos += 1;
            }
            let letter = bytes.get(pos).copied().filter(u8::is_ascii_alphabetic);
            let mut coeff = if digits.is_empty() {
                if letter.is_none() {
                    return Err(Error::Parse(format!("malformed term in `{text}`")));
                }
                BigInt::one()
            } else {
                digits.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?
            };
            if negative {
                coeff = -coeff;
            }
            match letter {
                None => a += coeff,
                Some(l) => {
                    let want = kind.letter() as u8;
                    if l != want {
                        return Err(Error::Parse(format!(
                            "symbol `{}` does not belong to the {kind} ring",
                            l as char
                        )));
                    }
                    pos += 1;
                    b += coeff;
                }
            }
        }
        Ok(QuadInt::new(kind, a, b))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.kind.letter();
        let imag = |b: &BigInt| -> String {
            if b.is_one() {
                format!("{l}")
            } else if *b == -BigInt::one() {
                format!("-{l}")
            } else {
                format!("{b}{l}")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => f.write_str(&imag(&self.b)),
            (false, false) => {
                let s = imag(&self.b);
                if s.starts_with('-') {
                    write!(f, "{}{}", self.a, s)
                } else {
                    write!(f, "{}+{}", self.a, s)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: QuadInt) -> QuadInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: &QuadInt) -> QuadInt {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadInt> for &QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: QuadInt) -> QuadInt {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&QuadInt> for &QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.kind, rhs.kind, "mixed ring kinds");
        QuadInt::new(self.kind, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&QuadInt> for &QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.kind, rhs.kind, "mixed ring kinds");
        QuadInt::new(self.kind, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&QuadInt> for &QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.kind, rhs.kind, "mixed ring kinds");
        let (a, b, c, d) = (&self.a, &self.b, &rhs.a, &rhs.b);
        let bd = b * d;
        match self.kind {
            RingKind::Gaussian => QuadInt::new(self.kind, a * c - &bd, a * d + b * c),
            RingKind::Eisenstein => QuadInt::new(self.kind, a * c - &bd, a * d + b * c - &bd),
        }
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.kind, -&self.a, -&self.b)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

/// Extended Euclid returning `(g, u, v, steps)` with `u*x + v*y = g`, before
/// normalization of `g`.
fn euclid(x: &QuadInt, y: &QuadInt) -> Result<(QuadInt, QuadInt, QuadInt, usize)> {
    x.check_kind(y)?;
    let kind = x.kind;
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut s0, mut s1) = (QuadInt::one(kind), QuadInt::zero(kind));
    let (mut t0, mut t1) = (QuadInt::zero(kind), QuadInt::one(kind));
    let mut steps = 0;
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let s2 = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t2);
        steps += 1;
    }
    Ok((r0, s0, t0, steps))
}

/// Canonical greatest common divisor.
pub fn gcd(x: &QuadInt, y: &QuadInt) -> Result<QuadInt> {
    Ok(ext_gcd(x, y)?.0)
}

/// Returns `(g, u, v)` with `u*x + v*y = g` and `g` canonical.
pub fn ext_gcd(x: &QuadInt, y: &QuadInt) -> Result<(QuadInt, QuadInt, QuadInt)> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::domain("gcd of two zeros"));
    }
    let (g, u, v, _) = euclid(x, y)?;
    let (c, unit) = g.canonical_associate()?;
    let inv = unit.conj();
    Ok((c, &u * &inv, &v * &inv))
}

/// Number of division steps the Euclidean algorithm takes on `(x, y)`.
pub fn euclid_steps(x: &QuadInt, y: &QuadInt) -> Result<usize> {
    Ok(euclid(x, y)?.3)
}

/// Largest `e` with `pi^e | x`.
pub fn ord_prime(x: &QuadInt, pi: &QuadInt) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::domain("order of zero is infinite"));
    }
    if pi.is_zero() || pi.is_unit() {
        return Err(Error::domain(format!("{pi} is not a prime")));
    }
    x.check_kind(pi)?;
    let mut e = 0;
    let mut rest = x.clone();
    while let Some(q) = rest.div_exact(pi) {
        rest = q;
        e += 1;
    }
    Ok(e)
}

/// Whether `x` is a prime element.
pub fn is_prime_element(x: &QuadInt) -> bool {
    let n = x.norm();
    if is_prime(&n) {
        return true;
    }
    let root = n.sqrt();
    &root * &root == n && is_prime(&root) && x.kind.is_inert(&root)
}

/// Canonical primes above the rational prime `p`, each with its
/// ramification index `ord_P(p)`, sorted by `(norm, a, b)`.
pub fn primes_above(kind: RingKind, p: &BigInt) -> Result<Vec<(QuadInt, u32)>> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not a rational prime")));
    }
    let ramified = match kind {
        RingKind::Gaussian => BigInt::from(2),
        RingKind::Eisenstein => BigInt::from(3),
    };
    if *p == ramified {
        let pi = match kind {
            RingKind::Gaussian => QuadInt::new(kind, 1, 1),
            RingKind::Eisenstein => QuadInt::new(kind, 1, -1).normalized(),
        };
        return Ok(vec![(pi, 2)]);
    }
    if kind.is_inert(p) {
        return Ok(vec![(QuadInt::from_int(kind, p.clone()), 1)]);
    }
    // w ≡ r (mod P) for a root r of w's minimal polynomial modulo p
    let r = match kind {
        RingKind::Gaussian => sqrt_minus_one(p)?,
        RingKind::Eisenstein => cube_root_of_unity(p)?,
    };
    let p_elem = QuadInt::from_int(kind, p.clone());
    let first = gcd(&p_elem, &(QuadInt::from_int(kind, r) - QuadInt::omega(kind)))?;
    let second = first.conj().normalized();
    let mut out = vec![(first, 1), (second, 1)];
    out.sort_by_key(|(pi, _)| pi.sort_key());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadPrimePower {
    pub prime: QuadInt,
    pub exponent: u32,
}

/// `unit * prod(prime^exponent)` with canonical primes sorted by `(norm, a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadFactorization {
    pub unit: QuadInt,
    pub factors: Vec<QuadPrimePower>,
}

impl QuadFactorization {
    pub fn recompose(&self) -> QuadInt {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, pp| acc * pp.prime.pow(pp.exponent as u64))
    }
}

pub fn factor(x: &QuadInt) -> Result<QuadFactorization> {
    if x.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let kind = x.kind;
    let mut rest = x.clone();
    let mut factors = Vec::new();
    for p in factor_int(&x.norm())?.primes() {
        for (pi, _) in primes_above(kind, p)? {
            let mut e = 0;
            while let Some(q) = rest.div_exact(&pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push(QuadPrimePower { prime: pi, exponent: e });
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by(|l, r| l.prime.sort_key().cmp(&r.prime.sort_key()));
    Ok(QuadFactorization { unit: rest, factors })
}

/// A principal ideal, stored by its canonical generator (or zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrincipalIdeal {
    generator: QuadInt,
}

impl PrincipalIdeal {
    pub fn new(x: &QuadInt) -> Self {
        PrincipalIdeal {
            generator: x.normalized(),
        }
    }

    pub fn unit(kind: RingKind) -> Self {
        PrincipalIdeal::new(&QuadInt::one(kind))
    }

    pub fn generator(&self) -> &QuadInt {
        &self.generator
    }

    pub fn kind(&self) -> RingKind {
        self.generator.kind
    }

    pub fn is_zero(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.generator.is_unit()
    }

    pub fn contains(&self, x: &QuadInt) -> bool {
        self.generator.divides(x)
    }

    pub fn product(&self, other: &PrincipalIdeal) -> PrincipalIdeal {
        PrincipalIdeal::new(&(&self.generator * &other.generator))
    }
}

impl fmt::Display for PrincipalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `(kind, norm, a, b)`.
impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind
            .cmp(&other.kind)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}
