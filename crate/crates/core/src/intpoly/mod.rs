//! Univariate polynomials over the integers.
//!
//! Coefficients are stored low degree first with no trailing zeros; the zero
//! polynomial has no coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{QuadInt, RingKind};

mod modp;
mod unimodular;

pub use modp::FpPoly;
pub use unimodular::{
    unimodular_certificate, verify_certificate, BezoutCertificate, NonUnimodularObstruction,
    PolyRow, Unimodularity,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawCoeffs", into = "RawCoeffs")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RawCoeffs(#[serde(with = "crate::decimal::vec")] Vec<BigInt>);

impl From<IntPoly> for RawCoeffs {
    fn from(p: IntPoly) -> Self {
        RawCoeffs(p.coeffs)
    }
}

impl TryFrom<RawCoeffs> for IntPoly {
    type Error = std::convert::Infallible;

    fn try_from(raw: RawCoeffs) -> std::result::Result<Self, Self::Error> {
        Ok(IntPoly::new(raw.0))
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    pub fn x() -> Self {
        IntPoly::from_i64s(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c).expect("content divides")
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<IntPoly> {
        if k.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly::new(out))
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at an element of a quadratic ring.
    pub fn eval_quad(&self, theta: &QuadInt) -> QuadInt {
        let kind = theta.kind;
        self.coeffs.iter().rev().fold(QuadInt::zero(kind), |acc, c| {
            &acc * theta + QuadInt::from_int(kind, c.clone())
        })
    }

    /// Pseudo-division: returns `(q, r)` with `lc(b)^(deg a - deg b + 1) * a = q*b + r`.
    pub fn pseudo_divmod(&self, b: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return Ok((IntPoly::zero(), self.clone())),
        };
        let lb = b.leading();
        let mut r = self.clone();
        let mut q = IntPoly::zero();
        let mut e = da - db + 1;
        while let Some(dr) = r.degree().filter(|&d| d >= db) {
            let t = IntPoly::monomial(r.leading(), dr - db);
            r = &r.scale(&lb) - &(&t * b);
            q = &q.scale(&lb) + &t;
            e -= 1;
        }
        let f = num_traits::pow(lb, e);
        Ok((q.scale(&f), r.scale(&f)))
    }

    pub fn pseudo_rem(&self, b: &IntPoly) -> Result<IntPoly> {
        Ok(self.pseudo_divmod(b)?.1)
    }

    /// Parses integer-coefficient expressions in `x`: `x^2+16`, `21+2*x`, `-3x`.
    pub fn parse(text: &str) -> Result<IntPoly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("malformed polynomial `{text}`"));
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut acc = IntPoly::zero();
        let mut first = true;
        let digits = |pos: &mut usize| -> &str {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            &s[start..*pos]
        };
        while pos < bytes.len() {
            let negative = match bytes[pos] {
                b'+' => {
                    pos += 1;
                    false
                }
                b'-' => {
                    pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(bad()),
            };
            first = false;
            let coeff_text = digits(&mut pos);
            let mut coeff = if coeff_text.is_empty() {
                None
            } else {
                Some(coeff_text.parse::<BigInt>().map_err(|_| bad())?)
            };
            let mut power = 0usize;
            if bytes.get(pos) == Some(&b'*') {
                if coeff.is_none() {
                    return Err(bad());
                }
                pos += 1;
                if bytes.get(pos) != Some(&b'x') {
                    return Err(bad());
                }
            }
            if bytes.get(pos) == Some(&b'x') {
                pos += 1;
                power = 1;
                if bytes.get(pos) == Some(&b'^') {
                    pos += 1;
                    let e = digits(&mut pos);
                    power = e.parse().map_err(|_| bad())?;
                }
                coeff.get_or_insert_with(BigInt::one);
            }
            let mut c = coeff.ok_or_else(bad)?;
            if negative {
                c = -c;
            }
            acc = &acc + &IntPoly::monomial(c, power);
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if !first || c.is_negative() {
                f.write_str(sign)?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Resultant by the subresultant remainder sequence. Both arguments zero is
/// an error; otherwise a zero argument gives zero, and `Res(f, c) = c^deg f`
/// for a nonzero constant `c`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::domain("resultant of two zero polynomials"));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(BigInt::zero());
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = BigInt::one();
    let deg = |p: &IntPoly| p.degree().expect("nonzero");
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
    }
    let (ca, cb) = (a.content(), b.content());
    let t = num_traits::pow(ca.clone(), deg(&b)) * num_traits::pow(cb.clone(), deg(&a));
    a = a.div_scalar_exact(&ca).expect("content");
    b = b.div_scalar_exact(&cb).expect("content");
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        if db == 0 {
            // Res(a, c) = c^deg a, corrected by the accumulated h
            let lb = b.leading();
            let hh = if da == 0 {
                BigInt::one()
            } else {
                // lb^da * h^(1 - da)
                let num = num_traits::pow(lb, da);
                let den = num_traits::pow(h.clone(), da - 1);
                num / den
            };
            return Ok(sign * t * hh);
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b)?;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &gg * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.div_scalar_exact(&divisor).expect("subresultant division is exact");
        gg = a.leading();
        h = match delta {
            0 => h,
            _ => num_traits::pow(gg.clone(), delta) / num_traits::pow(h.clone(), delta - 1),
        };
    }
}

/// Extended subresultant sequence: returns `(h, u, v)` with `u*f + v*g = h`,
/// where `h` is an integer multiple of the gcd of `f` and `g` over the
/// rationals and `u`, `v` have integer coefficients.
pub fn extended_prs(f: &IntPoly, g: &IntPoly) -> (IntPoly, IntPoly, IntPoly) {
    if f.is_zero() {
        return (g.clone(), IntPoly::zero(), IntPoly::one());
    }
    if g.is_zero() {
        return (f.clone(), IntPoly::one(), IntPoly::zero());
    }
    let deg = |p: &IntPoly| p.degree().expect("nonzero");
    // (a, ua, va), (b, ub, vb) with a = ua*f + va*g, b = ub*f + vb*g
    let (mut a, mut ua, mut va, mut b, mut ub, mut vb) = if deg(f) >= deg(g) {
        (f.clone(), IntPoly::one(), IntPoly::zero(), g.clone(), IntPoly::zero(), IntPoly::one())
    } else {
        (g.clone(), IntPoly::zero(), IntPoly::one(), f.clone(), IntPoly::one(), IntPoly::zero())
    };
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        if deg(&b) == 0 {
            return (b, ub, vb);
        }
        let delta = deg(&a) - deg(&b);
        let (q, r) = a.pseudo_divmod(&b).expect("b is nonzero");
        if r.is_zero() {
            return (b, ub, vb);
        }
        let lead = num_traits::pow(b.leading(), delta + 1);
        let ur = &ua.scale(&lead) - &(&q * &ub);
        let vr = &va.scale(&lead) - &(&q * &vb);
        let divisor = &gg * num_traits::pow(h.clone(), delta);
        let exact = |p: &IntPoly| p.div_scalar_exact(&divisor).expect("subresultant cofactors are integral");
        let (r, ur, vr) = (exact(&r), exact(&ur), exact(&vr));
        a = std::mem::replace(&mut b, r);
        ua = std::mem::replace(&mut ub, ur);
        va = std::mem::replace(&mut vb, vr);
        gg = a.leading();
        h = match delta {
            0 => h,
            _ => num_traits::pow(gg.clone(), delta) / num_traits::pow(h.clone(), delta - 1),
        };
    }
}

/// Roots of `c` in the given quadratic ring.
///
/// A root `t` has a monic integral minimal polynomial dividing `c`, so after
/// removing powers of `x` its norm divides the constant term. Candidates are
/// therefore the finitely many elements whose norm divides `|c(0)|`.
pub fn roots_in_ring(c: &IntPoly, kind: RingKind) -> Result<Vec<QuadInt>> {
    if c.is_zero() {
        return Err(Error::domain("every element is a root of the zero polynomial"));
    }
    let mut roots = Vec::new();
    let shift = c.coeffs().iter().take_while(|x| x.is_zero()).count();
    if shift > 0 {
        roots.push(QuadInt::zero(kind));
    }
    let reduced = IntPoly::new(c.coeffs()[shift..].to_vec());
    let c0 = reduced.coeff(0).abs();
    if reduced.is_constant() {
        return Ok(roots);
    }
    let divisors = crate::exact_arith::factor_int(&c0)?;
    let mut norms = vec![BigInt::one()];
    for pp in &divisors.factors {
        let mut next = Vec::new();
        for n in &norms {
            let mut pk = BigInt::one();
            for _ in 0..=pp.exponent {
                next.push(n * &pk);
                pk *= &pp.prime;
            }
        }
        norms = next;
    }
    for n in norms {
        for theta in elements_of_norm(kind, &n) {
            if reduced.eval_quad(&theta).is_zero() {
                roots.push(theta);
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// All elements of the given norm, by bounded enumeration of the second coordinate.
fn elements_of_norm(kind: RingKind, n: &BigInt) -> Vec<QuadInt> {
    let mut out = Vec::new();
    // Gaussian: b^2 <= n. Eisenstein: 3b^2/4 <= n.
    let bound = match kind {
        RingKind::Gaussian => n.sqrt(),
        RingKind::Eisenstein => (n * 4u32 / 3u32).sqrt(),
    };
    let mut b = -bound.clone();
    while b <= bound {
        // a^2 + b^2 = n, or a^2 - ab + b^2 = n  => (2a - b)^2 = 4n - 3b^2
        match kind {
            RingKind::Gaussian => {
                let rest = n - &b * &b;
                if !rest.is_negative() {
                    let a = rest.sqrt();
                    if &a * &a == rest {
                        out.push(QuadInt::new(kind, a.clone(), b.clone()));
                        if !a.is_zero() {
                            out.push(QuadInt::new(kind, -a, b.clone()));
                        }
                    }
                }
            }
            RingKind::Eisenstein => {
                let disc = n * 4u32 - &b * &b * 3u32;
                if !disc.is_negative() {
                    let s = disc.sqrt();
                    if &s * &s == disc {
                        for t in [s.clone(), -s.clone()] {
                            let twice_a = &t + &b;
                            if twice_a.is_even() {
                                out.push(QuadInt::new(kind, twice_a / 2, b.clone()));
                            }
                        }
                    }
                }
            }
        }
        b += 1;
    }
    out.sort();
    out.dedup();
    out
}
