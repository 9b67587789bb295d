#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stablerank::intpoly::IntPoly;
use stablerank::quad::{QuadInt, RingKind};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(rng: &mut impl Rng, kind: RingKind, bound: i64) -> QuadInt {
    QuadInt::new(kind, rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

pub fn random_nonzero(rng: &mut impl Rng, kind: RingKind, bound: i64) -> QuadInt {
    loop {
        let x = random_element(rng, kind, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Determinant by fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Determinant of the Sylvester matrix of two polynomials of positive total degree.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return BigInt::zero(),
    };
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    // coefficients from the leading one down
    let fc: Vec<BigInt> = f.coeffs().iter().rev().cloned().collect();
    let gc: Vec<BigInt> = g.coeffs().iter().rev().cloned().collect();
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in fc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in gc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

type Q = Ratio<i128>;

/// One solution of `A w = b` with free variables set to zero.
fn solve_rational(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let (rows, cols) = (a.len(), a[0].len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for j in 0..cols {
            a[r][j] *= inv;
        }
        b[r] *= inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..cols {
                    let t = a[r][j] * f;
                    a[i][j] -= t;
                }
                let t = b[r] * f;
                b[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut w = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        w[c] = b[i];
    }
    Some(w)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

/// Is `A w = b` consistent over the field with `p` elements?
fn solvable_mod_p(a: &[Vec<i64>], b: &[i64], p: u64) -> bool {
    let red = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| row.iter().map(|&x| red(x)).chain([red(rhs)]).collect())
        .collect();
    let (rows, cols) = (m.len(), a[0].len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..=cols {
                    let t = (m[r][j] as u128 * f as u128 % p as u128) as u64;
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    m[r..].iter().all(|row| row[cols] == 0)
}

const WITNESS_DEGREE: usize = 2;

/// Linear system for `Σ wᵢ rᵢ = 1` with `deg wᵢ ≤ WITNESS_DEGREE`.
fn bezout_system(row: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<i64>) {
    let maxdeg = row.iter().map(|r| r.len()).max().unwrap_or(0);
    let eqs = maxdeg + WITNESS_DEGREE;
    let unknowns = row.len() * (WITNESS_DEGREE + 1);
    let mut a = vec![vec![0i64; unknowns]; eqs.max(1)];
    for (i, r) in row.iter().enumerate() {
        for j in 0..=WITNESS_DEGREE {
            for (t, &c) in r.iter().enumerate() {
                a[t + j][i * (WITNESS_DEGREE + 1) + j] += c;
            }
        }
    }
    let mut b = vec![0i64; a.len()];
    b[0] = 1;
    (a, b)
}

fn trial_primes(mut n: i128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2i128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as u64);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// Decides unimodularity of a row of integer polynomials of degree at most 2
/// (coefficient lists, constant term first) by linear algebra only: solve
/// over Q, clear denominators to an integer `D` in the ideal, then test
/// solvability modulo each prime of `D`.
pub fn oracle_unimodular(row: &[Vec<i64>]) -> bool {
    assert!(row.iter().all(|r| r.len() <= 3), "oracle is complete only for degree <= 2");
    if row.iter().all(|r| r.iter().all(|&c| c == 0)) {
        return false;
    }
    let (a, b) = bezout_system(row);
    let aq: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from(x as i128)).collect()).collect();
    let bq: Vec<Q> = b.iter().map(|&x| Q::from(x as i128)).collect();
    let Some(w) = solve_rational(aq, bq) else {
        return false;
    };
    let d = w.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
    trial_primes(d.abs()).into_iter().all(|p| solvable_mod_p(&a, &b, p))
}

pub fn to_poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

/// Polynomials of degree at most 2 with coefficients in `[-3, 3]`, one from
/// each pair `±f`: the zero polynomial and those whose leading coefficient is positive.
pub fn corpus_polys() -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for c2 in -3i64..=3 {
        for c1 in -3i64..=3 {
            for c0 in -3i64..=3 {
                let mut v = vec![c0, c1, c2];
                while v.last() == Some(&0) {
                    v.pop();
                }
                if v.last().is_some_and(|&l| l > 0) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Every row of length 1 to 3 over the corpus, up to order and sign of entries.
pub fn corpus_rows() -> Vec<Vec<Vec<i64>>> {
    let polys = corpus_polys();
    let n = polys.len();
    let mut rows = Vec::new();
    for i in 0..n {
        rows.push(vec![polys[i].clone()]);
        for j in i..n {
            rows.push(vec![polys[i].clone(), polys[j].clone()]);
            for k in j..n {
                rows.push(vec![polys[i].clone(), polys[j].clone(), polys[k].clone()]);
            }
        }
    }
    rows.retain(|r| r.iter().any(|p| !p.is_empty()));
    rows
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn is_small_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}
