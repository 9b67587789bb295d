//! Rational-integer utilities: primality, factorization, modular powers,
//! square roots of -1 and cube roots of unity modulo primes, and CRT.
//!
//! Every residue returned by this module lies in the canonical range `[0, n)`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Witnesses making Miller-Rabin deterministic below 3.3e24.
const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntFactorization {
    pub sign: i8,
    pub factors: Vec<PrimePower>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    #[serde(with = "crate::decimal")]
    pub prime: BigInt,
    pub exponent: u32,
}

impl IntFactorization {
    pub fn recompose(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for pp in &self.factors {
            acc *= num_traits::pow(pp.prime.clone(), pp.exponent as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|pp| &pp.prime)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> BigInt {
        self.primes().fold(BigInt::one(), |acc, p| acc * p)
    }

    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|pp| pp.exponent).max().unwrap_or(0)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|pp| &pp.prime == p)
            .map_or(0, |pp| pp.exponent)
    }
}

// --- u64 fast path -------------------------------------------------------

fn mul_mod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, n);
        }
        b = mul_mod_u64(b, b, n);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if n == w {
            return true;
        }
        if n % w == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be odd and composite.
fn rho_u64(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn factor_u64(mut m: u64) -> Vec<(u64, u32)> {
    let mut found: Vec<u64> = Vec::new();
    if m > 1 && !is_prime_u64(m) {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > m {
                break;
            }
            if m % p == 0 {
                while m % p == 0 {
                    m /= p;
                    found.push(p);
                }
                if m == 1 || is_prime_u64(m) {
                    break;
                }
            }
        }
    }
    split_u64(m, &mut found);
    collect_powers(found)
}

fn collect_powers<T: Ord + Clone>(mut primes: Vec<T>) -> Vec<(T, u32)> {
    primes.sort();
    let mut out: Vec<(T, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

// --- arbitrary precision path --------------------------------------------

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &w in &MR_WITNESSES {
        if (n % w).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut g = one.clone();
        let mut power = 1u64;
        let mut lam = 1u64;
        while g == one {
            if power == lam {
                x = y.clone();
                power *= 2;
                lam = 0;
            }
            y = f(&y);
            lam += 1;
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        out.extend(factor_u64(small).into_iter().flat_map(|(p, e)| {
            std::iter::repeat(BigUint::from(p)).take(e as usize)
        }));
        return;
    }
    if is_prime_big(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

fn factor_big(mut m: BigUint) -> Vec<(BigUint, u32)> {
    let mut found = Vec::new();
    if !is_prime_big(&m) {
        for &p in small_primes() {
            if (&m % p).is_zero() {
                while (&m % p).is_zero() {
                    m /= p;
                    found.push(BigUint::from(p));
                }
                if m.to_u64().is_some() || is_prime_big(&m) {
                    break;
                }
            }
        }
    }
    split_big(m, &mut found);
    collect_powers(found)
}

// --- public API ----------------------------------------------------------

pub fn is_prime(n: &BigInt) -> bool {
    n.is_positive() && is_prime_big(n.magnitude())
}

/// Factors a nonzero integer into sign and increasing prime powers.
pub fn factor_int(n: &BigInt) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let factors = match n.magnitude().to_u64() {
        Some(m) => factor_u64(m)
            .into_iter()
            .map(|(p, e)| PrimePower {
                prime: BigInt::from(p),
                exponent: e,
            })
            .collect(),
        None => factor_big(n.magnitude().clone())
            .into_iter()
            .map(|(p, e)| PrimePower {
                prime: BigInt::from_biguint(Sign::Plus, p),
                exponent: e,
            })
            .collect(),
    };
    Ok(IntFactorization { sign, factors })
}

/// `b^e mod n` in `[0, n)`.
pub fn modexp(b: &BigInt, e: &BigInt, n: &BigInt) -> Result<BigInt> {
    if n <= &BigInt::one() {
        return Err(Error::domain(format!("modulus must exceed 1, got {n}")));
    }
    if e.is_negative() {
        return Err(Error::domain("negative exponent"));
    }
    Ok(b.mod_floor(n).modpow(e, n))
}

/// Inverse of `a` modulo `n > 1`, if it exists.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let ext = a.mod_floor(n).extended_gcd(n);
    ext.gcd.is_one().then(|| ext.x.mod_floor(n))
}

fn require_prime(p: &BigInt) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

/// `b^((p-1)/k)` for the first `b >= 2` where that power differs from 1.
fn first_nontrivial_power(p: &BigInt, k: u32) -> BigInt {
    let e = (p - 1u32) / k;
    let mut b = BigInt::from(2u32);
    loop {
        let c = b.modpow(&e, p);
        if !c.is_one() {
            return c;
        }
        b += 1u32;
    }
}

/// The smaller square root of -1 modulo a prime `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one(p: &BigInt) -> Result<BigInt> {
    require_prime(p)?;
    if !(p % 4u32).is_one() {
        return Err(Error::PrimeDoesNotSplit(p.clone()));
    }
    // b^((p-1)/4) for a non-residue b: its square is b^((p-1)/2) = -1.
    let e = (p - 1u32) / 4u32;
    let minus_one = p - 1u32;
    let mut b = BigInt::from(2u32);
    let r = loop {
        if b.modpow(&((p - 1u32) / 2u32), p) == minus_one {
            break b.modpow(&e, p);
        }
        b += 1u32;
    };
    let other = p - &r;
    Ok(r.min(other))
}

/// The smaller primitive cube root of unity modulo a prime `p ≡ 1 (mod 3)`.
pub fn cube_root_of_unity(p: &BigInt) -> Result<BigInt> {
    require_prime(p)?;
    if !(p % 3u32).is_one() {
        return Err(Error::PrimeDoesNotSplit(p.clone()));
    }
    let c = first_nontrivial_power(p, 3);
    let c2 = (&c * &c).mod_floor(p);
    Ok(c.min(c2))
}

/// Solves simultaneous congruences with pairwise coprime moduli.
pub fn crt(pairs: &[(BigInt, BigInt)]) -> Result<BigInt> {
    for (i, (_, m)) in pairs.iter().enumerate() {
        if m <= &BigInt::one() {
            return Err(Error::domain(format!("modulus must exceed 1, got {m}")));
        }
        for (_, other) in &pairs[..i] {
            if !m.gcd(other).is_one() {
                return Err(Error::domain(format!("moduli {other} and {m} are not coprime")));
            }
        }
    }
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in pairs {
        // x + modulus * k ≡ r (mod m)
        let inv = mod_inverse(&modulus, m).expect("coprime moduli");
        let k = ((r - &x) * inv).mod_floor(m);
        x += &modulus * k;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Ok(x)
}

pub fn floor_rational(q: &Rational) -> BigInt {
    q.floor().to_integer()
}
