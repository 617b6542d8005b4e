//! Prime-power finite fields GF(p^n) backed by log/antilog tables, plus the
//! unit-group bookkeeping used to classify power automorphisms.
//!
//! Elements are addressed by an integer *code*: the coefficient vector
//! `(c0, c1, .., c_{n-1})` of the polynomial `c0 + c1 x + ..` encodes as
//! `c0 + c1 p + c2 p^2 + ..`. Zero is code 0 and one is code 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order built unless a caller raises the bound.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 16;

/// A field element as its coefficient list, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GfElement {
    pub coeffs: Vec<u32>,
}

impl GfElement {
    pub fn new(coeffs: Vec<u32>) -> Self {
        GfElement { coeffs }
    }
}

#[derive(Debug, Clone)]
pub struct GfTable {
    p: u32,
    n: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    log: Vec<u32>,
    antilog: Vec<u32>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u64, n: u32, bound: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroDegree(n));
    }
    match p.checked_pow(n) {
        Some(q) if q <= bound => Ok(q),
        _ => Err(Error::FieldTooLarge { p, n, bound }),
    }
}

/// Dense polynomial arithmetic over GF(p), used only while building tables.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        // m is monic
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let lead = *r.last().unwrap();
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        rem(&out, m, p)
    }

    /// Digits of `idx` in base p, most significant first, length `len`.
    pub fn digits_msb_first(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
        let mut d = vec![0u32; len];
        for slot in d.iter_mut().rev() {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        d
    }

    /// Monic polynomial with lower coefficients `lower` (constant first).
    pub fn monic(lower: &[u32]) -> Vec<u32> {
        let mut m = lower.to_vec();
        m.push(1);
        m
    }

    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let n = m.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let f = monic(&digits_msb_first(idx, p, d));
                if rem(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl GfTable {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::with_bound(p, n, DEFAULT_FIELD_BOUND)
    }

    /// Builds GF(p^n), refusing fields larger than `bound`.
    ///
    /// The modulus is the first monic irreducible of degree `n` when the
    /// lower coefficient tuples `(c0, .., c_{n-1})` are scanned in ascending
    /// lexicographic order. The generator is the smallest code of
    /// multiplicative order `p^n - 1`.
    pub fn with_bound(p: u64, n: u32, bound: u64) -> Result<Self> {
        let q = checked_order(p, n, bound)?;
        let p32 = p as u32;
        let modulus = (0..q)
            .map(|idx| poly::monic(&poly::digits_msb_first(idx, p32, n as usize)))
            .find(|m| poly::is_irreducible(m, p32))
            .expect("an irreducible polynomial of every degree exists");

        let m = (q - 1) as u32;
        let to_poly = |code: u32| -> Vec<u32> {
            let mut c = Vec::with_capacity(n as usize);
            let mut x = code;
            for _ in 0..n {
                c.push(x % p32);
                x /= p32;
            }
            poly::trim(&mut c);
            c
        };
        let to_code = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &d| acc * p32 + d) };

        let prime_factors = prime_factors(m as u64);
        let pow_poly = |base: &[u32], mut e: u64| -> Vec<u32> {
            let mut acc = vec![1u32];
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly::mul_mod(&acc, &b, &modulus, p32);
                }
                b = poly::mul_mod(&b, &b, &modulus, p32);
                e >>= 1;
            }
            acc
        };
        let generator = (1..q as u32)
            .find(|&g| {
                let gp = to_poly(g);
                prime_factors
                    .iter()
                    .all(|&r| to_code(&pow_poly(&gp, m as u64 / r)) != 1)
            })
            .ok_or(Error::NoGenerator { p, n })?;

        let mut antilog = Vec::with_capacity(m as usize);
        let mut log = vec![u32::MAX; q as usize];
        let gpoly = to_poly(generator);
        let mut cur = vec![1u32];
        for k in 0..m {
            let code = to_code(&cur);
            if log[code as usize] != u32::MAX {
                return Err(Error::NoGenerator { p, n });
            }
            log[code as usize] = k;
            antilog.push(code);
            cur = poly::mul_mod(&cur, &gpoly, &modulus, p32);
        }
        if to_code(&cur) != 1 {
            return Err(Error::NoGenerator { p, n });
        }

        Ok(GfTable {
            p: p32,
            n,
            order: q as u32,
            modulus,
            generator,
            log,
            antilog,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of elements, `p^n`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group, `p^n - 1`.
    pub fn unit_modulus(&self) -> u64 {
        self.order as u64 - 1
    }

    /// Modulus coefficients, constant term first, monic (length n + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn log(&self, a: u32) -> Option<u32> {
        match self.log.get(a as usize) {
            Some(&l) if l != u32::MAX => Some(l),
            _ => None,
        }
    }

    pub fn antilog(&self, k: u64) -> u32 {
        self.antilog[(k % self.unit_modulus()) as usize]
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.order
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.n {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.antilog(k)
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let m = self.unit_modulus();
        Ok(self.antilog(m - self.log[a as usize] as u64))
    }

    /// `a^e`, exponent reduced modulo `p^n - 1` for nonzero `a`.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return if e > 0 { Ok(0) } else { Err(Error::ZeroPower(e)) };
        }
        let m = self.unit_modulus() as i128;
        let k = (self.log[a as usize] as i128 * e as i128).rem_euclid(m);
        Ok(self.antilog(k as u64))
    }

    pub fn element(&self, code: u32) -> GfElement {
        let mut coeffs = Vec::with_capacity(self.n as usize);
        let mut x = code;
        for _ in 0..self.n {
            coeffs.push(x % self.p);
            x /= self.p;
        }
        GfElement { coeffs }
    }

    pub fn code(&self, e: &GfElement) -> Result<u32> {
        if e.coeffs.len() != self.n as usize {
            return Err(Error::MalformedElement(format!(
                "expected {} coefficients, got {}",
                self.n,
                e.coeffs.len()
            )));
        }
        if let Some(&c) = e.coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::MalformedElement(format!(
                "coefficient {c} is not a residue mod {}",
                self.p
            )));
        }
        Ok(e.coeffs.iter().rev().fold(0u32, |acc, &d| acc * self.p + d))
    }

    pub fn mul_elem(&self, a: &GfElement, b: &GfElement) -> Result<GfElement> {
        Ok(self.element(self.mul(self.code(a)?, self.code(b)?)))
    }

    pub fn pow_elem(&self, a: &GfElement, e: i64) -> Result<GfElement> {
        Ok(self.element(self.pow(self.code(a)?, e)?))
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// Orbits of multiplication by `p` on the units modulo `p^n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitClassification {
    pub p: u64,
    pub n: u32,
    pub modulus_m: u64,
    pub units: Vec<u64>,
    pub frobenius_subgroup: Vec<u64>,
    pub classes: Vec<Vec<u64>>,
}

impl UnitClassification {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

fn frobenius_orbit(x: u64, p: u64, m: u64) -> Vec<u64> {
    let mut orbit = vec![x % m];
    let mut y = (x as u128 * p as u128 % m as u128) as u64;
    while y != orbit[0] {
        orbit.push(y);
        y = (y as u128 * p as u128 % m as u128) as u64;
    }
    orbit.sort_unstable();
    orbit
}

pub fn unit_classification(p: u64, n: u32) -> Result<UnitClassification> {
    unit_classification_bounded(p, n, DEFAULT_FIELD_BOUND)
}

pub fn unit_classification_bounded(p: u64, n: u32, bound: u64) -> Result<UnitClassification> {
    let q = checked_order(p, n, bound)?;
    if q < 3 {
        return Err(Error::InvalidArgument(format!(
            "unit classification needs p^n >= 3, got {q}"
        )));
    }
    let m = q - 1;
    let units: Vec<u64> = (1..m.max(2)).filter(|&a| gcd(a, m) == 1).collect();
    let frobenius_subgroup = frobenius_orbit(1, p, m);
    let mut seen = vec![false; m as usize + 1];
    let mut classes = Vec::new();
    for &u in &units {
        if seen[u as usize] {
            continue;
        }
        let orbit = frobenius_orbit(u, p, m);
        for &x in &orbit {
            seen[x as usize] = true;
        }
        classes.push(orbit);
    }
    Ok(UnitClassification {
        p,
        n,
        modulus_m: m,
        units,
        frobenius_subgroup,
        classes,
    })
}

/// Whether the power maps `x^alpha` and `x^beta` induce the same addition on
/// GF(p^n), i.e. `alpha = p^k beta (mod p^n - 1)` for some k.
pub fn same_addition_exponents(alpha: u64, beta: u64, p: u64, n: u32) -> Result<bool> {
    let q = checked_order(p, n, u64::MAX)?;
    let m = q - 1;
    for x in [alpha, beta] {
        if gcd(x % m.max(1), m) != 1 && m > 1 {
            return Err(Error::NotAUnit { value: x, modulus: m });
        }
    }
    if m == 1 {
        return Ok(true);
    }
    Ok(frobenius_orbit(beta % m, p, m).binary_search(&(alpha % m)).is_ok())
}
