//! Rational functions over F_q, kept in lowest terms with monic denominator.

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField};
use crate::poly::Poly;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg() > 0 {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        } else {
            (num, den)
        };
        let lc_inv = den.lc().inv()?;
        Ok(RatFn {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(&p.field());
        RatFn { num: p, den: one }
    }

    pub fn zero(field: &FqField) -> Self {
        RatFn::from_poly(Poly::zero(field))
    }

    pub fn one(field: &FqField) -> Self {
        RatFn::from_poly(Poly::one(field))
    }

    pub fn field(&self) -> FqField {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        RatFn::new(num, self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFn> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs() as u32;
        let mut r = RatFn::one(&self.field());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(r)
    }

    /// x^q with q the coefficient field order (coefficientwise Frobenius is
    /// trivial over F_q itself, so this is just a power).
    pub fn q_power(&self, k: usize) -> RatFn {
        let q = self.field().order();
        let mut r = self.clone();
        for _ in 0..k {
            r = r.pow(q as i64).expect("positive exponent");
        }
        r
    }

    /// deg num - deg den; the degree of the associated infinite-place pole.
    pub fn degree(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.num.deg() - self.den.deg())
    }

    pub fn eval(&self, x: &FqElem) -> Result<FqElem> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.num.eval(x).div(&d)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let f = FqField::prime(3).unwrap();
        let num = Poly::from_ints(&f, &[2, 0, 1]); // x^2+2 = (x+1)(x+2)
        let den = Poly::from_ints(&f, &[1, 1]); // x+1
        let r = RatFn::new(num, den).unwrap();
        assert_eq!(*r.num(), Poly::from_ints(&f, &[2, 1]));
        assert!(r.den().is_one());
    }

    #[test]
    fn field_ops() {
        let f = FqField::prime(3).unwrap();
        let x = RatFn::from_poly(Poly::x(&f));
        let r = x.inv().unwrap().add(&x); // 1/x + x = (1+x^2)/x
        assert_eq!(*r.num(), Poly::from_ints(&f, &[1, 0, 1]));
        assert_eq!(*r.den(), Poly::x(&f));
        assert!(r.mul(&r.inv().unwrap()).is_one());
        assert_eq!(RatFn::zero(&f).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers() {
        let f = FqField::prime(3).unwrap();
        let x = RatFn::from_poly(Poly::x(&f));
        let p = x.pow(-2).unwrap();
        assert_eq!(*p.den(), Poly::from_ints(&f, &[0, 0, 1]));
        assert_eq!(x.q_power(1), x.pow(3).unwrap());
    }
}
