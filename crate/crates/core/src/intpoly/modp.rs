//! Polynomials over a prime field `F_p` with `p < 2^63`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn reduce(f: &IntPoly, p: u64) -> Self {
        let m = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("reduced below p"))
            .collect();
        FpPoly::new(p, coeffs)
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let p = self.p;
        FpPoly::new(
            p,
            (0..n)
                .map(|i| ((self.coeff(i) as u128 + o.coeff(i) as u128) % p as u128) as u64)
                .collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.scale(self.p - 1))
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| mul_mod(c, k % p, p)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                let t = mul_mod(a, b, p) as u128 + out[i + j] as u128;
                out[i + j] = (t % p as u128) as u64;
            }
        }
        FpPoly::new(p, out)
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => self.scale(inv_mod(lc, self.p)),
        }
    }

    pub fn divmod(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        let inv = inv_mod(d.coeffs[dd], p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = mul_mod(*r.last().unwrap(), inv, p);
            q[k] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let sub = mul_mod(c, dc, p);
                r[k + j] = (r[k + j] + p - sub) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic (or zero).
    pub fn ext_gcd(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FpPoly::constant(p, 1), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::constant(p, 1));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.coeffs.last() {
            None => (r0, s0, t0),
            Some(&lc) => {
                let inv = inv_mod(lc, p);
                (r0.scale(inv), s0.scale(inv), t0.scale(inv))
            }
        }
    }

    pub fn gcd(a: &FpPoly, b: &FpPoly) -> FpPoly {
        FpPoly::ext_gcd(a, b).0
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.lift(), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn gcd_and_bezout() {
        // x^2 + 1 = (x + 2)(x + 3) mod 5
        let a = fp(5, &[1, 0, 1]);
        let b = fp(5, &[2, 1]);
        let (g, s, t) = FpPoly::ext_gcd(&a, &b);
        assert_eq!(g, fp(5, &[2, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        let (g, s, t) = FpPoly::ext_gcd(&a, &fp(5, &[1, 1]));
        assert!(g.is_unit());
        assert_eq!(s.mul(&a).add(&t.mul(&fp(5, &[1, 1]))), g);
    }

    #[test]
    fn divmod_reconstructs() {
        let a = fp(7, &[3, 1, 4, 1, 5]);
        let d = fp(7, &[2, 0, 3]);
        let (q, r) = a.divmod(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().map_or(true, |x| x < 2));
    }

    #[test]
    fn reduce_negative() {
        let f = IntPoly::from_i64s(&[-1, 0, -6]);
        assert_eq!(FpPoly::reduce(&f, 5), fp(5, &[4, 0, 4]));
    }
}
