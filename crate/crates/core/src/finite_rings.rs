//! Brute force over Z/n: unimodular rows, stability, stable rank, lifting
//! `SL_2(Z/n)` to `SL_2(Z)` and elementary decompositions.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bms::parse_matrix_entries;
use crate::error::{Error, Result};
use crate::exact_arith::{crt, factor_int};

/// Largest search space any exhaustive routine here will walk.
pub const MAX_SEARCH: u64 = 200_000_000;

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {n}")));
    }
    Ok(())
}

fn checked_space(n: u64, k: u32, what: &str) -> Result<u64> {
    n.checked_pow(k)
        .filter(|&s| s <= MAX_SEARCH)
        .ok_or_else(|| Error::BoundExceeded(format!("{what}: {n}^{k} exceeds {MAX_SEARCH}")))
}

/// Odometer over `(Z/n)^k` in lexicographic order.
fn next_tuple(t: &mut [u64], n: u64) -> bool {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < n {
            return true;
        }
        *x = 0;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZnRow {
    pub modulus: u64,
    pub entries: Vec<u64>,
}

impl ZnRow {
    pub fn new(modulus: u64, entries: Vec<u64>) -> Self {
        let entries = entries.into_iter().map(|x| x % modulus).collect();
        ZnRow { modulus, entries }
    }

    pub fn is_unimodular(&self) -> bool {
        self.entries.iter().fold(self.modulus, |g, &x| gcd_u64(g, x)) == 1
    }

    /// Comma-separated integers, reduced modulo `n`.
    pub fn parse(n: u64, text: &str) -> Result<Self> {
        check_modulus(n)?;
        let entries = text
            .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
            .split(',')
            .map(|s| reduce_text(s.trim(), n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZnRow::new(n, entries))
    }
}

fn reduce_text(s: &str, n: u64) -> Result<u64> {
    let v: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not an integer")))?;
    Ok(v.mod_floor(&BigInt::from(n)).to_u64().expect("reduced"))
}

impl fmt::Display for ZnRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u64::to_string).collect();
        write!(f, "({}) mod {}", parts.join(", "), self.modulus)
    }
}

/// `[[a, b], [c, d]]` over Z/n with entries in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZnMat2 {
    pub modulus: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ZnMat2 {
    pub fn new(modulus: u64, a: u64, b: u64, c: u64, d: u64) -> Self {
        let n = modulus;
        ZnMat2 { modulus, a: a % n, b: b % n, c: c % n, d: d % n }
    }

    pub fn identity(n: u64) -> Self {
        ZnMat2::new(n, 1, 0, 0, 1)
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus as u128;
        let ad = self.a as u128 * self.d as u128 % n;
        let bc = self.b as u128 * self.c as u128 % n;
        ((ad + n - bc) % n) as u64
    }

    pub fn is_special(&self) -> bool {
        self.det() == 1 % self.modulus
    }

    pub fn parse(n: u64, text: &str) -> Result<Self> {
        check_modulus(n)?;
        let e = parse_matrix_entries(text)?;
        let v = e
            .iter()
            .map(|s| reduce_text(s, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZnMat2::new(n, v[0], v[1], v[2], v[3]))
    }

    /// All matrices of determinant 1, lexicographic in `(a, b, c, d)`.
    pub fn sl2(n: u64) -> Result<Vec<ZnMat2>> {
        check_modulus(n)?;
        checked_space(n, 4, "SL2 enumeration")?;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let m = ZnMat2::new(n, a, b, c, d);
                        if m.is_special() {
                            out.push(m);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn reduce(&self, q: u64) -> (u64, u64, u64, u64) {
        (self.a % q, self.b % q, self.c % q, self.d % q)
    }
}

impl fmt::Display for ZnMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]] mod {}", self.a, self.b, self.c, self.d, self.modulus)
    }
}

/// Integer 2x2 matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMat2 {
    #[serde(with = "crate::decimal")]
    pub a: BigInt,
    #[serde(with = "crate::decimal")]
    pub b: BigInt,
    #[serde(with = "crate::decimal")]
    pub c: BigInt,
    #[serde(with = "crate::decimal")]
    pub d: BigInt,
}

impl IntMat2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        IntMat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        IntMat2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        IntMat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn reduce(&self, n: u64) -> ZnMat2 {
        let m = BigInt::from(n);
        let r = |x: &BigInt| x.mod_floor(&m).to_u64().expect("reduced");
        ZnMat2::new(n, r(&self.a), r(&self.b), r(&self.c), r(&self.d))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let e = parse_matrix_entries(text)?;
        let v = e
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("`{s}` is not an integer"))))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [BigInt; 4] = v.try_into().expect("four entries");
        Ok(IntMat2 { a, b, c, d })
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn um_rows(n: u64, k: u32) -> Result<Vec<ZnRow>> {
    check_modulus(n)?;
    if k == 0 {
        return Err(Error::domain("row length must be at least 1"));
    }
    checked_space(n, k, "row enumeration")?;
    let mut t = vec![0u64; k as usize];
    let mut out = Vec::new();
    loop {
        if t.iter().fold(n, |g, &x| gcd_u64(g, x)) == 1 {
            out.push(ZnRow { modulus: n, entries: t.clone() });
        }
        if !next_tuple(&mut t, n) {
            return Ok(out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityCheck {
    pub stable: bool,
    /// Lexicographically first `s` with `(r_i + s_i r_last)` unimodular.
    pub witness: Option<Vec<u64>>,
    pub searched: u64,
}

pub fn is_stable_row(row: &ZnRow) -> Result<StabilityCheck> {
    let n = row.modulus;
    check_modulus(n)?;
    if row.entries.len() < 2 {
        return Err(Error::domain("a stable row has at least two entries"));
    }
    if !row.is_unimodular() {
        return Err(Error::domain(format!("{row} is not unimodular")));
    }
    let (head, last) = row.entries.split_at(row.entries.len() - 1);
    let last = last[0] as u128;
    let k = head.len();
    checked_space(n, k as u32, "stability search")?;
    let mut s = vec![0u64; k];
    let mut searched = 0u64;
    loop {
        searched += 1;
        let g = head.iter().zip(&s).fold(n, |g, (&r, &si)| {
            let v = ((r as u128 + si as u128 * last) % n as u128) as u64;
            gcd_u64(g, v)
        });
        if g == 1 {
            return Ok(StabilityCheck { stable: true, witness: Some(s), searched });
        }
        if !next_tuple(&mut s, n) {
            return Ok(StabilityCheck { stable: false, witness: None, searched });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableRankReport {
    pub modulus: u64,
    pub stable_rank: u32,
    /// Rows of length `stable_rank + 1` checked, all stable.
    pub rows_checked: u64,
    /// Total shortening vectors tried.
    pub search_space: u64,
}

/// Least `k` such that every row of `Um_{k+1}(Z/n)` is stable. Being in the
/// stable range passes to larger `k`, so the first success ends the search.
pub fn stable_rank(n: u64) -> Result<StableRankReport> {
    check_modulus(n)?;
    for k in 1u32.. {
        let rows = um_rows(n, k + 1)?;
        let mut search_space = 0u64;
        let mut all = true;
        for row in &rows {
            let check = is_stable_row(row)?;
            search_space += check.searched;
            if !check.stable {
                all = false;
                break;
            }
        }
        if all {
            return Ok(StableRankReport {
                modulus: n,
                stable_rank: k,
                rows_checked: rows.len() as u64,
                search_space,
            });
        }
    }
    unreachable!("the stable range is nonempty")
}

/// Lifts `M ∈ SL_2(Z/n)` to an integer matrix of determinant 1.
///
/// The first row becomes a coprime pair `(A, B)`: `A` is `a` (or `n` if
/// `a = 0`) and `B ≡ b mod n` is chosen by CRT to be `1` modulo every prime
/// of `A` not dividing `n`. Extended gcd completes it, and the second row is
/// shifted by the multiple `t (A, B)` that lands in the right classes.
pub fn sl2_lift(m: &ZnMat2) -> Result<IntMat2> {
    let n = m.modulus;
    check_modulus(n)?;
    if !m.is_special() {
        return Err(Error::domain(format!("{m} has determinant {} mod {n}, not 1", m.det())));
    }
    let nb = BigInt::from(n);
    let big_a = if m.a == 0 { nb.clone() } else { BigInt::from(m.a) };
    let mut pairs = vec![(BigInt::from(m.b), nb.clone())];
    for pp in factor_int(&big_a)?.factors {
        if !nb.is_multiple_of(&pp.prime) {
            pairs.push((BigInt::one(), pp.prime));
        }
    }
    let big_b = crt(&pairs)?;
    let e = big_a.extended_gcd(&big_b);
    debug_assert!(e.gcd.is_one());
    // A*u + B*v = 1, so [[A, B], [-v, u]] has determinant 1
    let (u, v) = (e.x, e.y);
    let (c0, d0) = (-&v, u.clone());
    let t = (&u * (BigInt::from(m.c) - &c0) + &v * (BigInt::from(m.d) - &d0)).mod_floor(&nb);
    let lift = IntMat2 {
        c: &c0 + &t * &big_a,
        d: &d0 + &t * &big_b,
        a: big_a,
        b: big_b,
    };
    debug_assert!(lift.det().is_one() && lift.reduce(n) == *m);
    Ok(lift)
}

/// `e_ij(amount)` with `(i, j)` either `(1, 2)` or `(2, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elementary {
    pub i: u8,
    pub j: u8,
    #[serde(with = "crate::decimal")]
    pub amount: BigInt,
}

impl Elementary {
    pub fn upper(x: impl Into<BigInt>) -> Self {
        Elementary { i: 1, j: 2, amount: x.into() }
    }

    pub fn lower(x: impl Into<BigInt>) -> Self {
        Elementary { i: 2, j: 1, amount: x.into() }
    }

    pub fn matrix(&self) -> IntMat2 {
        let x = self.amount.clone();
        match (self.i, self.j) {
            (1, 2) => IntMat2::new(1, x, 0, 1),
            (2, 1) => IntMat2::new(1, 0, x, 1),
            _ => panic!("elementary index pair must be (1,2) or (2,1)"),
        }
    }

    fn inverse(&self) -> Self {
        Elementary { amount: -&self.amount, ..self.clone() }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}{}({})", self.i, self.j, self.amount)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementaryWord {
    pub factors: Vec<Elementary>,
}

impl ElementaryWord {
    pub fn recompose(&self) -> IntMat2 {
        self.factors
            .iter()
            .fold(IntMat2::identity(), |acc, e| acc.mul(&e.matrix()))
    }

    pub fn recompose_mod(&self, n: u64) -> ZnMat2 {
        self.recompose().reduce(n)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Amounts reduced into `[0, n)`.
    pub fn reduce(&self, n: u64) -> ElementaryWord {
        let m = BigInt::from(n);
        ElementaryWord {
            factors: self
                .factors
                .iter()
                .map(|e| Elementary { amount: e.amount.mod_floor(&m), ..e.clone() })
                .collect(),
        }
    }
}

impl fmt::Display for ElementaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join("·"))
    }
}

/// Writes an integer matrix of determinant 1 as a product of elementary matrices.
///
/// Column operations run the Euclidean algorithm on the first row until it is
/// `(±1, 0)`. A leftover `-I` is written as `(e12(1)·e21(-1)·e12(1))^2`.
pub fn e2_decompose(m: &IntMat2) -> Result<ElementaryWord> {
    if !m.det().is_one() {
        return Err(Error::domain(format!("{m} has determinant {}, not 1", m.det())));
    }
    let mut cur = m.clone();
    // cur = m * ops[0] * ops[1] * ...
    let mut ops: Vec<Elementary> = Vec::new();
    let mut apply = |cur: &mut IntMat2, e: Elementary| {
        *cur = cur.mul(&e.matrix());
        // e_ij(x)·e_ij(y) = e_ij(x + y)
        match ops.last_mut() {
            Some(last) if (last.i, last.j) == (e.i, e.j) => {
                last.amount += e.amount;
                if last.amount.is_zero() {
                    ops.pop();
                }
            }
            _ => ops.push(e),
        }
    };
    loop {
        if cur.b.is_zero() {
            break;
        }
        if cur.a.is_zero() {
            let x = cur.b.signum();
            apply(&mut cur, Elementary::lower(x));
        }
        let q = &cur.b / &cur.a;
        if !q.is_zero() {
            apply(&mut cur, Elementary::upper(-q));
        }
        if cur.b.is_zero() {
            break;
        }
        let q = &cur.a / &cur.b;
        apply(&mut cur, Elementary::lower(-q));
    }
    if !cur.c.is_zero() {
        let x = -cur.c.clone() * &cur.a;
        apply(&mut cur, Elementary::lower(x));
    }
    let mut word: Vec<Elementary> = ops.iter().rev().map(Elementary::inverse).collect();
    if cur.a.is_negative() {
        // cur = -I, written with the fixed word, kept unmerged
        let minus_identity = [Elementary::upper(1), Elementary::lower(-1), Elementary::upper(1)];
        let mut head: Vec<Elementary> = minus_identity.iter().chain(&minus_identity).cloned().collect();
        head.append(&mut word);
        word = head;
        cur = IntMat2::identity();
    }
    debug_assert_eq!(cur, IntMat2::identity());
    let word = ElementaryWord { factors: word };
    debug_assert_eq!(word.recompose(), *m);
    Ok(word)
}

/// Decomposition over Z/n through an integer lift; amounts are reduced mod `n`.
pub fn e2_decompose_mod(m: &ZnMat2) -> Result<ElementaryWord> {
    let lift = sl2_lift(m)?;
    Ok(e2_decompose(&lift)?.reduce(m.modulus))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaConfig {
    pub max_modulus: u64,
    /// Only rows with this last entry.
    pub c_filter: Option<u64>,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig { max_modulus: 8, c_filter: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCounterexample {
    pub row: ZnRow,
    pub stable: bool,
    pub lifts_all: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub modulus: u64,
    pub holds: bool,
    pub rows_checked: u64,
    pub stable_rows: u64,
    /// Quotient matrices tested for a preimage.
    pub matrices_checked: u64,
    pub counterexample: Option<LemmaCounterexample>,
}

/// For every `(a, b, c) ∈ Um_3(Z/n)` compares brute-force stability with
/// "every matrix of `SL_2(Z/(n, c))` with first row `(a, b)` comes from `SL_2(Z/n)`".
pub fn check_stable_row_lemma(n: u64, config: &LemmaConfig) -> Result<LemmaReport> {
    check_modulus(n)?;
    if n > config.max_modulus {
        return Err(Error::BoundExceeded(format!(
            "modulus {n} exceeds the lemma bound {}",
            config.max_modulus
        )));
    }
    let group = ZnMat2::sl2(n)?;
    let mut images: HashMap<u64, HashSet<(u64, u64, u64, u64)>> = HashMap::new();
    let mut report = LemmaReport {
        modulus: n,
        holds: true,
        rows_checked: 0,
        stable_rows: 0,
        matrices_checked: 0,
        counterexample: None,
    };
    for row in um_rows(n, 3)? {
        let (a, b, c) = (row.entries[0], row.entries[1], row.entries[2]);
        if config.c_filter.is_some_and(|f| f % n != c) {
            continue;
        }
        report.rows_checked += 1;
        let stable = is_stable_row(&row)?.stable;
        report.stable_rows += stable as u64;

        let q = gcd_u64(c, n);
        let image = images
            .entry(q)
            .or_insert_with(|| group.iter().map(|m| m.reduce(q)).collect());
        let (abar, bbar) = (a % q, b % q);
        let mut lifts_all = true;
        for d in 0..q {
            for e in 0..q {
                let det = (abar as u128 * e as u128 + (q - bbar) as u128 * d as u128) % q as u128;
                if det as u64 != 1 % q {
                    continue;
                }
                report.matrices_checked += 1;
                if !image.contains(&(abar, bbar, d, e)) {
                    lifts_all = false;
                }
            }
        }
        if stable != lifts_all {
            report.holds = false;
            report.counterexample.get_or_insert(LemmaCounterexample { row, stable, lifts_all });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "modulus", rename_all = "snake_case")]
pub enum LiftSource {
    Integers,
    Residues(u64),
}

impl fmt::Display for LiftSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftSource::Integers => f.write_str("Z"),
            LiftSource::Residues(n) => write!(f, "Z/{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitLift {
    pub unit: u64,
    #[serde(with = "crate::decimal::option")]
    pub lift: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitLiftReport {
    pub source: LiftSource,
    pub target: u64,
    pub units: Vec<UnitLift>,
    pub all_lift: bool,
    pub first_failure: Option<u64>,
}

/// Does every unit of Z/d come from a unit of the source ring?
pub fn unit_lift_check(source: LiftSource, d: u64) -> Result<UnitLiftReport> {
    check_modulus(d)?;
    if let LiftSource::Residues(n) = source {
        check_modulus(n)?;
        if n % d != 0 {
            return Err(Error::domain(format!("{d} does not divide {n}")));
        }
    }
    let units: Vec<UnitLift> = (1..d)
        .filter(|&u| gcd_u64(u, d) == 1)
        .map(|u| {
            let lift = match source {
                LiftSource::Integers => [1i64, -1]
                    .into_iter()
                    .find(|&s| s.rem_euclid(d as i64) as u64 == u)
                    .map(BigInt::from),
                LiftSource::Residues(n) => (0..n / d)
                    .map(|k| u + k * d)
                    .find(|&x| gcd_u64(x, n) == 1)
                    .map(BigInt::from),
            };
            UnitLift { unit: u, lift }
        })
        .collect();
    let first_failure = units.iter().find(|u| u.lift.is_none()).map(|u| u.unit);
    Ok(UnitLiftReport {
        source,
        target: d,
        all_lift: first_failure.is_none(),
        first_failure,
        units,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityReport {
    pub modulus: u64,
    pub target: u64,
    pub length: u32,
    pub holds: bool,
    pub rows_checked: u64,
    pub first_failure: Option<Vec<u64>>,
}

/// Checks that reduction `Um_k(Z/n) → Um_k(Z/d)` is onto.
pub fn um_reduction_surjective(n: u64, d: u64, k: u32) -> Result<SurjectivityReport> {
    check_modulus(n)?;
    check_modulus(d)?;
    if n % d != 0 {
        return Err(Error::domain(format!("{d} does not divide {n}")));
    }
    let image: HashSet<Vec<u64>> = um_rows(n, k)?
        .into_iter()
        .map(|r| r.entries.iter().map(|x| x % d).collect())
        .collect();
    let targets = um_rows(d, k)?;
    let first_failure = targets
        .iter()
        .find(|r| !image.contains(&r.entries))
        .map(|r| r.entries.clone());
    Ok(SurjectivityReport {
        modulus: n,
        target: d,
        length: k,
        holds: first_failure.is_none(),
        rows_checked: targets.len() as u64,
        first_failure,
    })
}

/// Product of the distinct primes of `n`.
pub fn radical(n: u64) -> Result<u64> {
    check_modulus(n)?;
    Ok(factor_int(&BigInt::from(n))?
        .radical()
        .to_u64()
        .expect("radical is at most n"))
}
