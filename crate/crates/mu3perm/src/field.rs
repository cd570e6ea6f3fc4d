//! Finite fields F_q with q = p^n up to 2^31.
//!
//! A [`FieldSpec`] owns the arithmetic; a [`FieldElement`] is a bare
//! coefficient vector in canonical reduced form. Prime fields store a single
//! residue, extensions store little-endian coefficients modulo a
//! deterministically chosen irreducible, so two specs built from the same
//! `(p, n)` are interchangeable and elements serialize to stable digit
//! strings.
//!
//! Two total orders on elements appear throughout the crate and they are the
//! same order: the canonical encoding order, which reads the coefficient
//! vector as a base-p number (least significant digit first), and the rank
//! order used by the exhaustive bijectivity scans. `FieldElement`'s `Ord`
//! implements it.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::arith;
use crate::error::{Error, Result};

/// Largest supported field order, inclusive.
pub const MAX_ORDER: u64 = 1 << 31;

type Digits = SmallVec<[u64; 4]>;

/// An element of some F_q, stored as `n` little-endian base-p digits.
///
/// Elements do not carry a pointer to their field; every [`FieldSpec`]
/// operation validates the shape (length `n`, digits below `p`) and reports
/// [`Error::FieldMismatch`] when handed an element of the wrong shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Digits,
}

impl FieldElement {
    fn from_digits(coeffs: Digits) -> Self {
        FieldElement { coeffs }
    }

    /// Little-endian coefficient digits; length equals the extension degree.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// The constant coefficient. For prime fields this is the residue.
    pub fn residue(&self) -> u64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }
}

impl Ord for FieldElement {
    /// Canonical encoding order: compare coefficient vectors as base-p
    /// numbers, most significant digit first. Coincides with [`FieldSpec::rank`]
    /// order for elements of one field.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElement {
    /// Digit-string encoding: `"27"` in a prime field, `"3,0,1"` for
    /// 3 + x^2 in a cubic extension.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.coeffs {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// A concrete F_q: prime p, extension degree n, order q = p^n <= 2^31, and
/// for n > 1 the deterministically chosen monic irreducible modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    /// Little-endian, length n + 1, leading coefficient 1. `None` iff n == 1.
    modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    /// Builds F_{p^n}. The modulus for n > 1 is the first monic irreducible
    /// of degree n in the deterministic enumeration order (coefficient
    /// vectors read as base-p counters, constant term varying fastest), so
    /// equal `(p, n)` always yield identical arithmetic.
    pub fn new(p: u64, n: u32) -> Result<FieldSpec> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n < 1 {
            return Err(Error::InvalidDegree(n));
        }
        let q = checked_pow(p, n).ok_or(Error::OrderTooLarge { p, n })?;
        if q > MAX_ORDER {
            return Err(Error::OrderTooLarge { p, n });
        }
        let modulus = if n == 1 {
            None
        } else {
            Some(find_modulus(p, n))
        };
        Ok(FieldSpec { p, n, q, modulus })
    }

    /// Convenience constructor for prime fields.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        FieldSpec::new(p, 1)
    }

    /// Parses `"109"` or `"7^3"`.
    pub fn parse(text: &str) -> Result<FieldSpec> {
        let bad = || Error::BadFieldString(text.to_string());
        match text.split_once('^') {
            None => {
                let p = text.trim().parse::<u64>().map_err(|_| bad())?;
                FieldSpec::new(p, 1)
            }
            Some((p_str, n_str)) => {
                let p = p_str.trim().parse::<u64>().map_err(|_| bad())?;
                let n = n_str.trim().parse::<u32>().map_err(|_| bad())?;
                FieldSpec::new(p, n)
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The modulus digits (little-endian, monic) for n > 1.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_digits(std::iter::repeat(0).take(self.n as usize).collect())
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Embeds an integer via the constant coefficient (reduces mod p).
    pub fn from_int(&self, v: u64) -> FieldElement {
        let mut digits: Digits = std::iter::repeat(0).take(self.n as usize).collect();
        digits[0] = v % self.p;
        FieldElement::from_digits(digits)
    }

    /// Builds an element from little-endian digits, reducing each mod p.
    /// Fewer than `n` digits are padded with zeros; more is an error.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.is_empty() || coeffs.len() > self.n as usize {
            return Err(Error::FieldMismatch);
        }
        let mut digits: Digits = coeffs.iter().map(|&c| c % self.p).collect();
        digits.resize(self.n as usize, 0);
        Ok(FieldElement::from_digits(digits))
    }

    /// Strict parse of the comma-joined digit encoding: every digit must
    /// already lie in `[0, p)` and at most `n` digits are accepted.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let bad = || Error::BadElementEncoding(text.to_string());
        let mut digits: Digits = Digits::new();
        for part in text.split(',') {
            let d = part.trim().parse::<u64>().map_err(|_| bad())?;
            if d >= self.p {
                return Err(bad());
            }
            digits.push(d);
        }
        if digits.is_empty() || digits.len() > self.n as usize {
            return Err(bad());
        }
        digits.resize(self.n as usize, 0);
        Ok(FieldElement::from_digits(digits))
    }

    fn validate(&self, x: &FieldElement) -> Result<()> {
        if x.coeffs.len() != self.n as usize || x.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.add_raw(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.add_raw(a, &self.neg_raw(b)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.validate(a)?;
        Ok(self.neg_raw(a))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul_raw(a, b))
    }

    /// Multiplicative inverse, via a^(q-2).
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.validate(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_raw(a, self.q - 2))
    }

    /// Square-and-multiply power. By convention `pow(0, 0) == 1`.
    pub fn pow(&self, a: &FieldElement, e: u64) -> Result<FieldElement> {
        self.validate(a)?;
        Ok(self.pow_raw(a, e))
    }

    pub(crate) fn add_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let digits = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        FieldElement::from_digits(digits)
    }

    pub(crate) fn neg_raw(&self, a: &FieldElement) -> FieldElement {
        let digits = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FieldElement::from_digits(digits)
    }

    pub(crate) fn mul_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        if self.n == 1 {
            let mut out: Digits = SmallVec::with_capacity(1);
            out.push(a.coeffs[0] * b.coeffs[0] % p);
            return FieldElement::from_digits(out);
        }
        let n = self.n as usize;
        // Schoolbook product, reduced coefficient-wise as we go. For n > 1
        // the prime is below 2^16, so every partial product fits u64.
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * n - 1);
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                if bj != 0 {
                    prod[i + j] = (prod[i + j] + ai * bj) % p;
                }
            }
        }
        // Reduce by the monic modulus: x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1}).
        let md = self.modulus.as_ref().expect("extension field has modulus");
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            let shift = i - n;
            for (j, &mj) in md.iter().take(n).enumerate() {
                if mj != 0 {
                    let t = c * mj % p;
                    prod[shift + j] = (prod[shift + j] + p - t) % p;
                }
            }
        }
        let digits = prod.iter().take(n).copied().collect();
        FieldElement::from_digits(digits)
    }

    pub(crate) fn pow_raw(&self, a: &FieldElement, e: u64) -> FieldElement {
        let mut result = self.one();
        if e == 0 {
            return result;
        }
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_raw(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        result
    }

    /// Position of `x` in the enumeration of F_q: the coefficient vector read
    /// as a base-p number. Ranks are exactly `0..q` and rank 0 is zero.
    pub fn rank(&self, x: &FieldElement) -> u64 {
        let mut acc = 0u64;
        for &c in x.coeffs.iter().rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    /// Inverse of [`FieldSpec::rank`].
    pub fn unrank(&self, mut rank: u64) -> FieldElement {
        debug_assert!(rank < self.q);
        let mut digits: Digits = SmallVec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            digits.push(rank % self.p);
            rank /= self.p;
        }
        FieldElement::from_digits(digits)
    }

    /// All elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|r| self.unrank(r))
    }

    /// The smallest-rank generator of the cyclic group F_q^*.
    pub fn multiplicative_generator(&self) -> FieldElement {
        let group_order = self.q - 1;
        let factors = arith::factorize(group_order);
        for rank in 1..self.q {
            let x = self.unrank(rank);
            let is_generator = factors
                .iter()
                .all(|&(l, _)| !self.pow_raw(&x, group_order / l).is_one());
            if is_generator {
                return x;
            }
        }
        unreachable!("F_q^* is cyclic; a generator always exists")
    }

    /// The order-d subgroup mu_d of F_q^*, listed canonically as powers
    /// `[1, g_d, g_d^2, ...]` of its smallest-rank generator.
    pub fn mu_d(&self, d: u64) -> Result<Vec<FieldElement>> {
        let group_order = self.q - 1;
        if d == 0 || group_order % d != 0 {
            return Err(Error::DNotDividing {
                d,
                q_minus_one: group_order,
            });
        }
        let g = self.multiplicative_generator();
        let w = self.pow_raw(&g, group_order / d);
        // Elements of order exactly d are w^i with gcd(i, d) = 1; the
        // canonical generator is the smallest of them in rank order.
        let mut gen_d = None;
        let mut x = self.one();
        for i in 0..d {
            if i > 0 {
                x = self.mul_raw(&x, &w);
            }
            if arith::gcd(i, d) == 1 || d == 1 {
                let better = match &gen_d {
                    None => true,
                    Some(best) => x < *best,
                };
                if better {
                    gen_d = Some(x.clone());
                }
            }
        }
        let gen_d = gen_d.expect("subgroup generator exists");
        let mut out = Vec::with_capacity(d as usize);
        let mut y = self.one();
        for i in 0..d {
            if i > 0 {
                y = self.mul_raw(&y, &gen_d);
            }
            out.push(y.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for FieldSpec {
    /// `"109"` for prime fields, `"7^3"` for extensions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.n)
        }
    }
}

fn checked_pow(p: u64, n: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..n {
        acc = acc.checked_mul(p)?;
        if acc > MAX_ORDER {
            return None;
        }
    }
    Some(acc)
}

// ---------------------------------------------------------------------------
// Deterministic modulus search: dense polynomials over F_p, little-endian.
// ---------------------------------------------------------------------------

/// First monic irreducible of degree n over F_p, enumerating coefficient
/// vectors as a base-p counter with the constant term varying fastest.
fn find_modulus(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let mut m = 0u64;
    loop {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut t = m;
        for _ in 0..n {
            coeffs.push(t % p);
            t /= p;
        }
        if t > 0 {
            // Exhausted p^n candidates without a hit: impossible for any
            // prime p and degree n >= 1.
            unreachable!("no irreducible polynomial of degree {n} over F_{p}");
        }
        coeffs.push(1);
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
        m += 1;
    }
}

/// Irreducibility of a monic polynomial over F_p: root-absence for degrees
/// up to 3, the gcd-with-Frobenius test in general.
fn poly_is_irreducible(coeffs: &[u64], p: u64) -> bool {
    let n = coeffs.len() - 1;
    debug_assert!(coeffs[n] == 1);
    match n {
        0 => false,
        1 => true,
        2 | 3 => (0..p).all(|x| poly_eval(coeffs, x, p) != 0),
        _ => rabin_irreducible(coeffs, p),
    }
}

fn rabin_irreducible(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u32;
    let x_poly = vec![0, 1];
    // X^(p^n) must reduce to X mod f...
    let t = frobenius_power(f, p, n);
    if !poly_normalize(poly_sub(&t, &x_poly, p)).is_empty() {
        return false;
    }
    // ...and X^(p^(n/l)) - X must be coprime to f for every prime l | n.
    for (l, _) in arith::factorize(n as u64) {
        let t = frobenius_power(f, p, n / l as u32);
        let diff = poly_normalize(poly_sub(&t, &x_poly, p));
        let g = poly_gcd(&diff, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// X^(p^k) reduced mod f, by k-fold Frobenius.
fn frobenius_power(f: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut t = vec![0, 1]; // X
    for _ in 0..k {
        t = poly_pow_mod(&t, p, f, p);
    }
    t
}

fn poly_normalize(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_eval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out = vec![0; len];
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    out
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
    }
    out
}

/// Remainder of `a` modulo monic `f`.
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut rem = a.to_vec();
    let n = f.len() - 1;
    while poly_normalize(rem.clone()).len() > n {
        let rem_n = poly_normalize(rem.clone());
        let deg = rem_n.len() - 1;
        let c = rem_n[deg];
        rem = rem_n;
        rem[deg] = 0;
        let shift = deg - n;
        for (j, &fj) in f.iter().take(n).enumerate() {
            if fj != 0 {
                let t = c * fj % p;
                rem[shift + j] = (rem[shift + j] + p - t) % p;
            }
        }
    }
    let mut rem = poly_normalize(rem);
    rem.truncate(n);
    rem
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), f, p)
}

fn poly_pow_mod(base: &[u64], e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1];
    let mut base = poly_rem(base, f, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &base, f, p);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul_mod(&base, &base, f, p);
        }
    }
    result
}

fn modpow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_normalize(a.to_vec());
    let mut b = poly_normalize(b.to_vec());
    while !b.is_empty() {
        // Make b monic so poly_rem's monic-divisor contract holds.
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = modpow_u64(lead, p - 2, p);
            for c in b.iter_mut() {
                *c = *c * inv % p;
            }
        }
        let r = poly_normalize(poly_rem(&a, &b, p));
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let inv = modpow_u64(lead, p - 2, p);
            for c in a.iter_mut() {
                *c = *c * inv % p;
            }
        }
    }
    a
}
