//! Finite fields F_{p^m} in a polynomial basis over F_p.
//!
//! Extension fields use a deterministic modulus: the lexicographically
//! lowest monic irreducible of the requested degree, where monic degree-m
//! polynomials are ordered by the integer value of their coefficient tuple
//! (constant term least significant). This makes every fixture reproducible.

use crate::error::{Error, Result};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    p: u64,
    m: usize,
    /// Monic irreducible modulus, lowest degree first, length m+1. Empty for m = 1.
    modulus: Vec<u64>,
}

/// A finite field descriptor, cheaply cloneable and content-compared.
#[derive(Debug, Clone)]
pub struct FqField(Arc<FieldInner>);

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for FqField {}

impl Hash for FqField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Display for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.m)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// --- dense Vec<u64> polynomial helpers mod p (used for the modulus and element arithmetic) ---

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn vp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn vp_rem(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lg_inv = mod_inv(g[dg], p);
    while r.len() > dg {
        let dr = r.len() - 1;
        let c = (r[dr] * lg_inv) % p;
        for i in 0..=dg {
            let idx = dr - dg + i;
            r[idx] = (r[idx] + p - (c * g[i]) % p) % p;
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn vp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = vp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lc) = x.last() {
        let inv = mod_inv(lc, p);
        for c in &mut x {
            *c = (*c * inv) % p;
        }
    }
    x
}

/// x^(p^e) mod g, by iterated p-th powering.
fn vp_xpow_p_iter(g: &[u64], p: u64, e: usize) -> Vec<u64> {
    let mut cur = vec![0, 1]; // x
    for _ in 0..e {
        cur = vp_powmod(&cur, p, g, p);
    }
    cur
}

fn vp_powmod(base: &[u64], mut exp: u64, g: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = vp_rem(base, g, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = vp_rem(&vp_mul(&result, &b, p), g, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = vp_rem(&vp_mul(&b, &b, p), g, p);
        }
    }
    result
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p prime.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        e >>= 1;
        b = b * b % p;
    }
    r
}

/// Rabin irreducibility test over F_p.
fn vp_is_irreducible(g: &[u64], p: u64) -> bool {
    let m = g.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    // x^(p^m) == x mod g
    let xq = vp_xpow_p_iter(g, p, m);
    let mut diff = xq.clone();
    sub_x(&mut diff, p);
    if !diff.is_empty() {
        return false;
    }
    // gcd(x^(p^(m/l)) - x, g) == 1 for every prime l | m
    let mut n = m;
    let mut l = 2;
    let mut prime_divs = vec![];
    while l * l <= n {
        if n % l == 0 {
            prime_divs.push(l);
            while n % l == 0 {
                n /= l;
            }
        }
        l += 1;
    }
    if n > 1 {
        prime_divs.push(n);
    }
    for l in prime_divs {
        let mut d = vp_xpow_p_iter(g, p, m / l);
        sub_x(&mut d, p);
        if d.is_empty() {
            return false;
        }
        let gcd = vp_gcd(&d, g, p);
        if gcd.len() != 1 {
            return false;
        }
    }
    true
}

fn sub_x(v: &mut Vec<u64>, p: u64) {
    if v.len() < 2 {
        v.resize(2, 0);
    }
    v[1] = (v[1] + p - 1) % p;
    trim(v);
}

impl FqField {
    /// Prime field F_p. Characteristic 2 is rejected: the sign and positivity
    /// conventions used downstream degenerate at q = 2.
    pub fn prime(p: u64) -> Result<Self> {
        Self::extension(p, 1)
    }

    /// F_{p^m} with the deterministic lex-lowest irreducible modulus.
    pub fn extension(p: u64, m: usize) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::UnsupportedCharacteristic(format!(
                "p = {p} (need an odd prime >= 3)"
            )));
        }
        if m == 0 {
            return Err(Error::UnsupportedCharacteristic("m = 0".into()));
        }
        if m == 1 {
            return Ok(FqField(Arc::new(FieldInner {
                p,
                m,
                modulus: vec![],
            })));
        }
        // Enumerate monic degree-m polynomials by coefficient tuple value.
        let count = p.checked_pow(m as u32).expect("field too large");
        for n in 0..count {
            let mut modulus = vec![0u64; m + 1];
            let mut k = n;
            for c in modulus.iter_mut().take(m) {
                *c = k % p;
                k /= p;
            }
            modulus[m] = 1;
            if vp_is_irreducible(&modulus, p) {
                return Ok(FqField(Arc::new(FieldInner { p, m, modulus })));
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    /// F_p[w]/(modulus) for a caller-supplied monic irreducible modulus
    /// (lowest-first coefficients). Used for residue fields F_p[T]/(p(T)).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::UnsupportedCharacteristic(format!(
                "p = {p} (need an odd prime >= 3)"
            )));
        }
        let mut modulus = modulus;
        for c in &mut modulus {
            *c %= p;
        }
        trim(&mut modulus);
        let m = modulus.len().saturating_sub(1);
        if m == 0 {
            return Err(Error::Parse("modulus must have positive degree".into()));
        }
        if *modulus.last().unwrap() != 1 {
            let inv = mod_inv(*modulus.last().unwrap(), p);
            for c in &mut modulus {
                *c = *c * inv % p;
            }
        }
        if !vp_is_irreducible(&modulus, p) {
            return Err(Error::Parse(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        if m == 1 {
            return Self::prime(p);
        }
        Ok(FqField(Arc::new(FieldInner { p, m, modulus })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn degree(&self) -> usize {
        self.0.m
    }
    /// Field order p^m.
    pub fn order(&self) -> u64 {
        self.0.p.pow(self.0.m as u32)
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            field: self.clone(),
            c: Coeffs::zeros(self.0.m),
        }
    }
    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        let p = self.0.p as i64;
        let mut c = Coeffs::zeros(self.0.m);
        c.as_mut_slice()[0] = n.rem_euclid(p) as u64;
        FqElem {
            field: self.clone(),
            c,
        }
    }

    /// Element from a coefficient tuple (lowest power of w first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqElem {
        assert!(coeffs.len() <= self.0.m, "too many coefficients");
        let mut c = Coeffs::zeros(self.0.m);
        for (i, &x) in coeffs.iter().enumerate() {
            c.as_mut_slice()[i] = x % self.0.p;
        }
        FqElem {
            field: self.clone(),
            c,
        }
    }

    /// The image of w (the polynomial-basis generator). For m = 1 this is 1.
    pub fn gen(&self) -> FqElem {
        if self.0.m == 1 {
            self.one()
        } else {
            self.from_coeffs(&[0, 1])
        }
    }

    /// All field elements in the deterministic tuple order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let q = self.order();
        (0..q).map(move |n| self.elem_by_index(n))
    }

    pub fn elem_by_index(&self, n: u64) -> FqElem {
        let p = self.0.p;
        let mut c = Coeffs::zeros(self.0.m);
        let mut k = n;
        for ci in c.as_mut_slice() {
            *ci = k % p;
            k /= p;
        }
        FqElem {
            field: self.clone(),
            c,
        }
    }

    /// Deterministic embedding of this field into `target` (requires
    /// degree(self) | degree(target) and equal characteristic): maps w to the
    /// first root of this field's modulus in the target's enumeration order.
    pub fn embedding(&self, target: &FqField) -> Result<FqEmbedding> {
        if self.0.p != target.0.p {
            return Err(Error::FieldMismatch(format!(
                "different characteristics {} and {}",
                self.0.p, target.0.p
            )));
        }
        if target.0.m % self.0.m != 0 {
            return Err(Error::FieldMismatch(format!(
                "F_{}^{} does not embed into F_{}^{}",
                self.0.p, self.0.m, target.0.p, target.0.m
            )));
        }
        if self.0.m == 1 {
            return Ok(FqEmbedding {
                src: self.clone(),
                root_powers: vec![target.one()],
            });
        }
        let root = target
            .elements()
            .find(|e| {
                let mut acc = target.zero();
                // Evaluate the source modulus at e by Horner.
                for &c in self.0.modulus.iter().rev() {
                    acc = acc.mul(e).add(&target.from_int(c as i64));
                }
                acc.is_zero()
            })
            .expect("splitting field contains a root");
        let mut root_powers = vec![target.one()];
        for i in 1..self.0.m {
            let next = root_powers[i - 1].mul(&root);
            root_powers.push(next);
        }
        Ok(FqEmbedding {
            src: self.clone(),
            root_powers,
        })
    }
}

/// An embedding F_{p^m} -> F_{p^{km}}, applied coefficientwise.
#[derive(Debug, Clone)]
pub struct FqEmbedding {
    src: FqField,
    root_powers: Vec<FqElem>,
}

impl FqEmbedding {
    pub fn apply(&self, x: &FqElem) -> FqElem {
        assert_eq!(x.field, self.src, "embedding applied to foreign element");
        let target = self.root_powers[0].field();
        let mut acc = target.zero();
        for (i, &c) in x.c.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.root_powers[i].scale(c));
            }
        }
        acc
    }
    pub fn target(&self) -> FqField {
        self.root_powers[0].field()
    }
}

/// Coefficient storage: inline for m <= 4 (no heap traffic in the hot
/// arithmetic paths), spilling to a Vec for larger extension degrees.
#[derive(Debug, Clone)]
enum Coeffs {
    Inline { len: u8, buf: [u64; 4] },
    Heap(Vec<u64>),
}

impl Coeffs {
    fn from_vec(v: Vec<u64>) -> Self {
        if v.len() <= 4 {
            let mut buf = [0u64; 4];
            buf[..v.len()].copy_from_slice(&v);
            Coeffs::Inline {
                len: v.len() as u8,
                buf,
            }
        } else {
            Coeffs::Heap(v)
        }
    }

    fn zeros(n: usize) -> Self {
        if n <= 4 {
            Coeffs::Inline {
                len: n as u8,
                buf: [0u64; 4],
            }
        } else {
            Coeffs::Heap(vec![0; n])
        }
    }

    #[inline]
    fn as_slice(&self) -> &[u64] {
        match self {
            Coeffs::Inline { len, buf } => &buf[..*len as usize],
            Coeffs::Heap(v) => v,
        }
    }

    #[inline]
    fn as_mut_slice(&mut self) -> &mut [u64] {
        match self {
            Coeffs::Inline { len, buf } => &mut buf[..*len as usize],
            Coeffs::Heap(v) => v,
        }
    }
}

impl std::ops::Deref for Coeffs {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        self.as_slice()
    }
}

/// An element of F_{p^m}, reduced modulo the field modulus.
#[derive(Debug, Clone)]
pub struct FqElem {
    field: FqField,
    /// Coefficients over F_p, length m, each < p.
    c: Coeffs,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && *self.c == *other.c
    }
}
impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.0.p.hash(state);
        self.field.0.modulus.hash(state);
        self.c.as_slice().hash(state);
    }
}

impl FqElem {
    pub fn field(&self) -> FqField {
        self.field.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Coefficient tuple over F_p, lowest power of w first.
    pub fn coeff_tuple(&self) -> &[u64] {
        &self.c
    }

    /// Index in the deterministic element enumeration.
    pub fn index(&self) -> u64 {
        let p = self.field.0.p;
        self.c.iter().rev().fold(0, |acc, &x| acc * p + x)
    }

    fn check_same(&self, other: &FqElem) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn same_field(&self, other: &FqElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )))
        }
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        self.check_same(other);
        let p = self.field.0.p;
        let mut c = self.c.clone();
        for (a, &b) in c.as_mut_slice().iter_mut().zip(other.c.iter()) {
            *a = (*a + b) % p;
        }
        FqElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn sub(&self, other: &FqElem) -> FqElem {
        self.check_same(other);
        let p = self.field.0.p;
        let mut c = self.c.clone();
        for (a, &b) in c.as_mut_slice().iter_mut().zip(other.c.iter()) {
            *a = (*a + p - b) % p;
        }
        FqElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn neg(&self) -> FqElem {
        let p = self.field.0.p;
        let mut c = self.c.clone();
        for a in c.as_mut_slice() {
            *a = (p - *a) % p;
        }
        FqElem {
            field: self.field.clone(),
            c,
        }
    }

    fn scale(&self, k: u64) -> FqElem {
        let p = self.field.0.p;
        let k = k % p;
        let mut c = self.c.clone();
        for a in c.as_mut_slice() {
            *a = *a * k % p;
        }
        FqElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        self.check_same(other);
        let p = self.field.0.p;
        let m = self.field.0.m;
        if m == 1 {
            let mut c = Coeffs::zeros(1);
            c.as_mut_slice()[0] = self.c[0] * other.c[0] % p;
            return FqElem {
                field: self.field.clone(),
                c,
            };
        }
        let prod = vp_mul(&self.c, &other.c, p);
        let mut red = vp_rem(&prod, &self.field.0.modulus, p);
        red.resize(m, 0);
        FqElem {
            field: self.field.clone(),
            c: Coeffs::from_vec(red),
        }
    }

    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // q is desk-scale; Fermat is fine.
        Ok(self.pow_u(self.field.order() - 2))
    }

    pub fn div(&self, other: &FqElem) -> Result<FqElem> {
        Ok(self.mul(&other.inv()?))
    }

    fn pow_u(&self, mut e: u64) -> FqElem {
        let mut r = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            b = b.mul(&b);
        }
        r
    }

    /// x^e with integer e; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i64) -> Result<FqElem> {
        if e >= 0 {
            Ok(self.pow_u(e as u64))
        } else {
            Ok(self.inv()?.pow_u((-e) as u64))
        }
    }

    /// The Frobenius x -> x^(p^k).
    pub fn frobenius(&self, k: usize) -> FqElem {
        let mut r = self.clone();
        for _ in 0..(k % e_order(self.field.0.m)) {
            r = r.pow_u(self.field.0.p);
        }
        r
    }

    /// x^(q^k) for q the full field order, i.e. frobenius(k*m). Identity here,
    /// but meaningful after embedding into extensions; kept for symmetry.
    pub fn q_frobenius(&self, k: usize) -> FqElem {
        self.frobenius(k * self.field.0.m)
    }

    /// Deterministic square root (lex-smallest of the two), if one exists.
    pub fn sqrt(&self) -> Option<FqElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        self.field.elements().find(|e| e.mul(e) == *self)
    }
}

fn e_order(m: usize) -> usize {
    // frobenius period on F_{p^m}
    m
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.m == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut parts = vec![];
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "w".into(),
                (1, _) => format!("{c}*w"),
                (_, 1) => format!("w^{i}"),
                _ => format!("{c}*w^{i}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f3_basic_arithmetic() {
        let f3 = FqField::prime(3).unwrap();
        let two = f3.from_int(2);
        assert_eq!(two.add(&two), f3.one());
        assert_eq!(two.pow(2).unwrap(), f3.one());
        assert_eq!(f3.from_int(5), two);
    }

    #[test]
    fn f9_modulus_is_w2_plus_1() {
        let f9 = FqField::extension(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let w = f9.gen();
        // w^3 = -w = 2w since w^2 = -1
        assert_eq!(w.frobenius(1), w.scale(2));
    }

    #[test]
    fn frobenius_m_is_identity() {
        for (p, m) in [(3, 1), (3, 2), (5, 2), (3, 3)] {
            let f = FqField::extension(p, m).unwrap();
            for e in f.elements() {
                assert_eq!(e.frobenius(m), e);
            }
        }
    }

    #[test]
    fn inverse_of_every_nonzero() {
        let f9 = FqField::extension(3, 2).unwrap();
        for e in f9.elements().skip(1) {
            let inv = e.inv().unwrap();
            assert!(e.mul(&inv).is_one());
        }
        assert_eq!(f9.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn char_two_rejected() {
        assert!(matches!(
            FqField::prime(2),
            Err(Error::UnsupportedCharacteristic(_))
        ));
    }

    #[test]
    fn field_mismatch_detected() {
        let f3 = FqField::prime(3).unwrap();
        let f9 = FqField::extension(3, 2).unwrap();
        assert!(f3.one().same_field(&f9.one()).is_err());
    }

    #[test]
    fn embedding_f3_into_f9() {
        let f3 = FqField::prime(3).unwrap();
        let f9 = FqField::extension(3, 2).unwrap();
        let emb = f3.embedding(&f9).unwrap();
        let two9 = emb.apply(&f3.from_int(2));
        assert_eq!(two9, f9.from_int(2));
    }

    #[test]
    fn embedding_f9_into_f81() {
        let f9 = FqField::extension(3, 2).unwrap();
        let f81 = FqField::extension(3, 4).unwrap();
        let emb = f9.embedding(&f81).unwrap();
        // ring homomorphism spot check
        for a in f9.elements().take(9) {
            for b in f9.elements().take(9) {
                assert_eq!(emb.apply(&a.mul(&b)), emb.apply(&a).mul(&emb.apply(&b)));
                assert_eq!(emb.apply(&a.add(&b)), emb.apply(&a).add(&emb.apply(&b)));
            }
        }
    }

    #[test]
    fn sqrt_in_f9_covers_f3() {
        // every element of F_3 is a square in F_9 (q odd)
        let f3 = FqField::prime(3).unwrap();
        let f9 = FqField::extension(3, 2).unwrap();
        let emb = f3.embedding(&f9).unwrap();
        for a in f3.elements() {
            let s = emb.apply(&a).sqrt().expect("square root exists");
            assert_eq!(s.mul(&s), emb.apply(&a));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1024))]
        #[test]
        fn field_axioms_f9(a in 0u64..9, b in 0u64..9, c in 0u64..9) {
            let f9 = FqField::extension(3, 2).unwrap();
            let (a, b, c) = (f9.elem_by_index(a), f9.elem_by_index(b), f9.elem_by_index(c));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }
    }
}
