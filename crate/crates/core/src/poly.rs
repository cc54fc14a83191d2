//! Dense univariate polynomials over a finite field, lowest degree first.

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FqField,
    /// Coefficients, lowest first; the leading coefficient of a nonzero
    /// polynomial is nonzero.
    c: Vec<FqElem>,
}

impl Poly {
    pub fn zero(field: &FqField) -> Self {
        Poly {
            field: field.clone(),
            c: vec![],
        }
    }

    pub fn one(field: &FqField) -> Self {
        Poly::constant(field.one())
    }

    pub fn x(field: &FqField) -> Self {
        Poly {
            field: field.clone(),
            c: vec![field.zero(), field.one()],
        }
    }

    pub fn constant(c: FqElem) -> Self {
        let field = c.field();
        if c.is_zero() {
            Poly::zero(&field)
        } else {
            Poly { field, c: vec![c] }
        }
    }

    pub fn from_coeffs(field: &FqField, coeffs: Vec<FqElem>) -> Self {
        for c in &coeffs {
            assert!(c.field() == *field, "coefficient from a different field");
        }
        let mut p = Poly {
            field: field.clone(),
            c: coeffs,
        };
        p.trim();
        p
    }

    pub fn from_ints(field: &FqField, coeffs: &[i64]) -> Self {
        Poly::from_coeffs(field, coeffs.iter().map(|&n| field.from_int(n)).collect())
    }

    fn trim(&mut self) {
        while self.c.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> FqField {
        self.field.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> FqElem {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.c
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::from_coeffs(&self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Poly::from_coeffs(&self.field, c)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.field, c)
    }

    pub fn scale(&self, k: &FqElem) -> Poly {
        Poly::from_coeffs(&self.field, self.c.iter().map(|x| x.mul(k)).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.c.iter().cloned());
        Poly {
            field: self.field.clone(),
            c,
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut r = Poly::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Euclidean division: f = q*g + r with deg r < deg g.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.clone();
        let mut q = Poly::zero(&self.field);
        let lg_inv = g.lc().inv()?;
        while r.deg() >= g.deg() {
            let k = (r.deg() - g.deg()) as usize;
            let c = r.lc().mul(&lg_inv);
            let t = Poly::constant(c).shift(k);
            q = q.add(&t);
            r = r.sub(&t.mul(g));
        }
        Ok((q, r))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(g)?.1)
    }

    /// Exact division; error if the remainder is nonzero.
    pub fn div_exact(&self, g: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(g)?;
        if !r.is_zero() {
            return Err(Error::Parse(format!("inexact division by {g}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (d, s, t) with s*self + t*other = d, d monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(&self.field), Poly::zero(&self.field));
        let (mut t0, mut t1) = (Poly::zero(&self.field), Poly::one(&self.field));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("r1 nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("nonzero lc");
        (
            r0.scale(&inv).monic_keep(),
            s0.scale(&inv),
            t0.scale(&inv),
        )
    }

    fn monic_keep(self) -> Poly {
        self
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero lc"))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(other)
            .div_exact(&self.gcd(other))
            .expect("gcd divides")
            .monic()
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let mut acc = self.field.zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let c = self.c[1..]
            .iter()
            .enumerate()
            .map(|(i, x)| x.mul(&self.field.from_int(i as i64 + 1)))
            .collect();
        Poly::from_coeffs(&self.field, c)
    }

    /// Rabin irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let m = self.deg();
        if m <= 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let m = m as usize;
        let x = Poly::x(&self.field);
        let q = self.field.order();
        let xq_m = x.powmod_q_iter(q, m, self);
        if !xq_m.sub(&x).rem(self).map(|r| r.is_zero()).unwrap_or(false) {
            return false;
        }
        let mut n = m;
        let mut prime_divs = vec![];
        let mut l = 2;
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
            let d = x.powmod_q_iter(q, m / l, self).sub(&x);
            if d.is_zero() {
                return false;
            }
            if self.gcd(&d).deg() != 0 {
                return false;
            }
        }
        true
    }

    /// self^(q^e) mod g by iterated q-th powering.
    fn powmod_q_iter(&self, q: u64, e: usize, g: &Poly) -> Poly {
        let mut cur = self.rem(g).expect("g nonzero");
        for _ in 0..e {
            cur = cur.powmod(q, g);
        }
        cur
    }

    pub fn powmod(&self, mut e: u64, g: &Poly) -> Poly {
        let mut r = Poly::one(&self.field);
        let mut b = self.rem(g).expect("g nonzero");
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(g).expect("g nonzero");
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(g).expect("g nonzero");
            }
        }
        r
    }

    /// Roots in the coefficient field, by trial evaluation.
    pub fn roots(&self) -> Vec<FqElem> {
        self.field.elements().filter(|e| self.eval(e).is_zero()).collect()
    }

    /// Monic irreducible polynomials of the given degree, in tuple order.
    pub fn monic_irreducibles(field: &FqField, deg: usize) -> Vec<Poly> {
        let q = field.order();
        let mut out = vec![];
        let count = q.pow(deg as u32);
        for n in 0..count {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut k = n;
            for _ in 0..deg {
                coeffs.push(field.elem_by_index(k % q));
                k /= q;
            }
            coeffs.push(field.one());
            let f = Poly::from_coeffs(field, coeffs);
            if f.is_irreducible() {
                out.push(f);
            }
        }
        out
    }

    pub fn fmt_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let ext = self.field.degree() > 1;
        let mut parts = vec![];
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c}");
            let cs = if ext && cs.contains('+') {
                format!("({cs})")
            } else {
                cs
            };
            let s = match i {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if c.is_one() => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            parts.push(s);
        }
        parts.join("+")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> FqField {
        FqField::prime(3).unwrap()
    }

    #[test]
    fn product_and_divmod() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 1]); // x+1
        let b = Poly::from_ints(&f, &[2, 1]); // x+2
        let prod = a.mul(&b);
        assert_eq!(prod, Poly::from_ints(&f, &[2, 0, 1])); // x^2+2
        let (q, r) = prod.divmod(&a).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
    }

    #[test]
    fn eval_root() {
        let f = f3();
        let p = Poly::from_ints(&f, &[1, 1, 0, 1]); // x^3+x+1
        assert!(p.eval(&f.one()).is_zero());
    }

    #[test]
    fn gcd_examples() {
        let f = f3();
        let a = Poly::from_ints(&f, &[2, 0, 1]); // x^2+2
        let b = Poly::from_ints(&f, &[1, 1]); // x+1
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.gcd(&Poly::one(&f)), Poly::one(&f));
        let c = Poly::from_ints(&f, &[1, 1, 0, 1]); // x^3+x+1, root at 1
        let d = Poly::from_ints(&f, &[-1, 1]); // x-1
        assert_eq!(c.gcd(&d), Poly::from_ints(&f, &[2, 1])); // monic of x-1
    }

    #[test]
    fn divmod_by_zero() {
        let f = f3();
        let a = Poly::x(&f);
        assert_eq!(a.divmod(&Poly::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn irreducibility() {
        let f = f3();
        assert!(Poly::from_ints(&f, &[1, 0, 1]).is_irreducible()); // x^2+1
        assert!(!Poly::from_ints(&f, &[2, 0, 1]).is_irreducible()); // x^2+2=(x+1)(x+2)
        assert!(Poly::from_ints(&f, &[1, 2, 0, 1]).is_irreducible()); // x^3+2x+1
        assert_eq!(Poly::monic_irreducibles(&f, 2).len(), 3);
    }

    #[test]
    fn xgcd_identity() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 1, 0, 1]);
        let b = Poly::from_ints(&f, &[2, 1, 1]);
        let (d, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), d);
    }

    proptest! {
        #[test]
        fn divmod_reconstruction(fa in prop::collection::vec(0u64..3, 0..8),
                                 gb in prop::collection::vec(0u64..3, 1..6)) {
            let f = f3();
            let a = Poly::from_coeffs(&f, fa.iter().map(|&n| f.elem_by_index(n)).collect());
            let g = Poly::from_coeffs(&f, gb.iter().map(|&n| f.elem_by_index(n)).collect());
            prop_assume!(!g.is_zero());
            let (q, r) = a.divmod(&g).unwrap();
            prop_assert_eq!(q.mul(&g).add(&r), a.clone());
            prop_assert!(r.deg() < g.deg());
        }

        #[test]
        fn deg_multiplicative(fa in prop::collection::vec(0u64..3, 1..7),
                              gb in prop::collection::vec(0u64..3, 1..7)) {
            let f = f3();
            let a = Poly::from_coeffs(&f, fa.iter().map(|&n| f.elem_by_index(n)).collect());
            let g = Poly::from_coeffs(&f, gb.iter().map(|&n| f.elem_by_index(n)).collect());
            prop_assume!(!a.is_zero() && !g.is_zero());
            prop_assert_eq!(a.mul(&g).deg(), a.deg() + g.deg());
        }
    }
}
