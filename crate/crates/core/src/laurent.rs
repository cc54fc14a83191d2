//! Truncated Laurent series over a finite field with explicit absolute
//! precision: the numeric carrier for values in the completion at infinity.
//!
//! A series knows every coefficient at exponents below `prec`. Addition keeps
//! the minimum precision; multiplication follows the Newton-polygon rule
//! prec(ab) = min(prec(a) + v(b), prec(b) + v(a)); q-th powering (q a power of
//! the characteristic) is additive in char p and multiplies precision by q.

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard ceiling on tracked absolute precision; beyond this everything is
/// treated as exact. Keeps iterated q-th powers from overflowing.
pub const PREC_CAP: i64 = 1 << 40;

#[derive(Debug, Clone)]
pub struct LaurentSeries {
    field: FqField,
    /// Start exponent of the first stored (nonzero) coefficient.
    v0: i64,
    /// Coefficients for exponents v0, v0+1, ...; empty means zero to precision.
    coeffs: Vec<FqElem>,
    /// Absolute precision: all exponents < prec are known.
    prec: i64,
}

impl PartialEq for LaurentSeries {
    /// Structural equality of the known data (same field, valuation,
    /// coefficients, and precision).
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.prec == other.prec
            && self.v0 == other.v0
            && self.coeffs == other.coeffs
    }
}

impl LaurentSeries {
    pub fn zero(field: &FqField, prec: i64) -> Self {
        LaurentSeries {
            field: field.clone(),
            v0: prec,
            coeffs: vec![],
            prec,
        }
    }

    pub fn one(field: &FqField, prec: i64) -> Self {
        Self::monomial(field.one(), 0, prec)
    }

    pub fn uniformizer(field: &FqField, prec: i64) -> Self {
        Self::monomial(field.one(), 1, prec)
    }

    pub fn monomial(c: FqElem, exp: i64, prec: i64) -> Self {
        let field = c.field();
        let mut s = LaurentSeries {
            field,
            v0: exp,
            coeffs: vec![c],
            prec,
        };
        s.normalize();
        s
    }

    /// Build from explicit coefficients starting at exponent `v0`.
    pub fn from_coeffs(field: &FqField, v0: i64, coeffs: Vec<FqElem>, prec: i64) -> Self {
        let mut s = LaurentSeries {
            field: field.clone(),
            v0,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        // drop data at or above prec
        if self.v0 >= self.prec {
            self.coeffs.clear();
        } else {
            let max_len = (self.prec - self.v0) as usize;
            self.coeffs.truncate(max_len);
        }
        // strip leading zeros
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.v0 += lead as i64;
        }
        // strip trailing zeros (implied by prec)
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.v0 = self.prec;
        }
    }

    pub fn field(&self) -> FqField {
        self.field.clone()
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation of the known part.
    pub fn val(&self) -> Result<i64> {
        if self.is_zero() {
            Err(Error::ZeroElement)
        } else {
            Ok(self.v0)
        }
    }

    /// Certified relative digits: prec - v0.
    pub fn rel_prec(&self) -> i64 {
        self.prec - self.v0
    }

    pub fn leading(&self) -> Result<FqElem> {
        self.coeffs.first().cloned().ok_or(Error::ZeroElement)
    }

    /// Coefficient at exponent k, or None when k is beyond the precision.
    pub fn coeff_at(&self, k: i64) -> Option<FqElem> {
        if k >= self.prec {
            return None;
        }
        if k < self.v0 || k >= self.v0 + self.coeffs.len() as i64 {
            return Some(self.field.zero());
        }
        Some(self.coeffs[(k - self.v0) as usize].clone())
    }

    pub fn truncate(&self, new_prec: i64) -> LaurentSeries {
        let mut s = self.clone();
        s.prec = s.prec.min(new_prec);
        s.normalize();
        s
    }

    /// Claim a (higher) precision without new information. Only for Newton
    /// iterations whose result is verified afterwards.
    pub(crate) fn with_prec_claimed(&self, prec: i64) -> LaurentSeries {
        let mut s = self.clone();
        s.prec = prec;
        if s.is_zero() {
            s.v0 = prec;
        }
        s
    }

    pub fn shift(&self, k: i64) -> LaurentSeries {
        let mut s = self.clone();
        s.v0 = s.v0.saturating_add(k);
        s.prec = s.prec.saturating_add(k);
        s
    }

    pub fn scalar_mul(&self, c: &FqElem) -> LaurentSeries {
        if c.is_zero() {
            return LaurentSeries::zero(&self.field, self.prec);
        }
        let coeffs = self.coeffs.iter().map(|x| x.mul(c)).collect();
        LaurentSeries {
            field: self.field.clone(),
            v0: self.v0,
            coeffs,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> LaurentSeries {
        let coeffs = self.coeffs.iter().map(|x| x.neg()).collect();
        LaurentSeries {
            field: self.field.clone(),
            v0: self.v0,
            coeffs,
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        assert!(self.field == other.field, "field mismatch in series add");
        let prec = self.prec.min(other.prec);
        if self.is_zero() && other.is_zero() {
            return LaurentSeries::zero(&self.field, prec);
        }
        let v0 = self
            .coeffs
            .is_empty()
            .then_some(other.v0)
            .unwrap_or_else(|| {
                if other.coeffs.is_empty() {
                    self.v0
                } else {
                    self.v0.min(other.v0)
                }
            });
        if v0 >= prec {
            return LaurentSeries::zero(&self.field, prec);
        }
        let data_end = (self.v0 + self.coeffs.len() as i64)
            .max(other.v0 + other.coeffs.len() as i64);
        let len = (prec - v0).min((data_end - v0).max(0)) as usize;
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let k = v0 + i as i64;
            let a = self.coeff_at(k).unwrap_or_else(|| self.field.zero());
            let b = other.coeff_at(k).unwrap_or_else(|| self.field.zero());
            coeffs.push(a.add(&b));
        }
        LaurentSeries::from_coeffs(&self.field, v0, coeffs, prec)
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        assert!(self.field == other.field, "field mismatch in series mul");
        let va = if self.is_zero() { self.prec } else { self.v0 };
        let vb = if other.is_zero() { other.prec } else { other.v0 };
        let prec = self
            .prec
            .saturating_add(vb)
            .min(other.prec.saturating_add(va));
        if self.is_zero() || other.is_zero() {
            return LaurentSeries::zero(&self.field, prec);
        }
        let v0 = va.saturating_add(vb);
        if v0 >= prec {
            return LaurentSeries::zero(&self.field, prec);
        }
        let len = (prec.saturating_sub(v0) as usize).min(self.coeffs.len() + other.coeffs.len());
        let mut coeffs = vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        LaurentSeries::from_coeffs(&self.field, v0, coeffs, prec)
    }

    /// Inverse of a series that is nonzero to precision. The result keeps the
    /// relative precision: prec(1/s) = prec(s) - 2 v(s).
    pub fn inv(&self) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rel = self.rel_prec().min(1 << 22) as usize;
        let c0_inv = self.coeffs[0].inv()?;
        // invert the unit part c0 + c1 u + ...
        let mut b = Vec::with_capacity(rel);
        b.push(c0_inv.clone());
        for k in 1..rel {
            let mut acc = self.field.zero();
            for j in 1..=k {
                let cj = if j < self.coeffs.len() {
                    &self.coeffs[j]
                } else {
                    continue;
                };
                acc = acc.add(&cj.mul(&b[k - j]));
            }
            b.push(acc.neg().mul(&c0_inv));
        }
        let prec = (-self.v0).saturating_add(rel as i64);
        Ok(LaurentSeries::from_coeffs(&self.field, -self.v0, b, prec))
    }

    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<LaurentSeries> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        if e == 0 {
            return Ok(LaurentSeries::one(&self.field, self.rel_prec()));
        }
        let mut r: Option<LaurentSeries> = None;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = Some(match r {
                    None => b.clone(),
                    Some(r) => r.mul(&b),
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(r.unwrap())
    }

    /// s^q for q = p^j a power of the characteristic: exact coefficientwise
    /// Frobenius, exponents scaled by q, precision multiplied by q.
    pub fn frobenius_q(&self, q: u64) -> LaurentSeries {
        let p = self.field.p();
        let mut j = 0usize;
        let mut t = q;
        while t > 1 {
            assert!(t % p == 0, "q must be a power of the characteristic");
            t /= p;
            j += 1;
        }
        let prec = self.prec.saturating_mul(q as i64);
        if self.is_zero() {
            return LaurentSeries::zero(&self.field, prec);
        }
        let len = ((self.coeffs.len() - 1) * q as usize) + 1;
        let mut coeffs = vec![self.field.zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * q as usize] = c.frobenius(j);
            }
        }
        LaurentSeries::from_coeffs(&self.field, self.v0.saturating_mul(q as i64), coeffs, prec)
    }

    /// s^(q^k) by iterating `frobenius_q`.
    pub fn frobenius_q_iter(&self, q: u64, k: usize) -> LaurentSeries {
        let mut r = self.clone();
        for _ in 0..k {
            r = r.frobenius_q(q);
        }
        r
    }

    /// k-th root for k coprime to the characteristic, by Newton iteration.
    /// The achieved precision is certified by re-powering the candidate.
    pub fn nth_root(&self, k: u32) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        assert!(k as u64 % self.field.p() != 0, "k must be prime to p");
        let kk = k as i64;
        if self.v0 % kk != 0 {
            return Err(Error::Parse(format!(
                "valuation {} not divisible by {k}: no root in this field",
                self.v0
            )));
        }
        let lead_root = self
            .coeffs[0]
            .clone()
            .root_by_search(k)
            .ok_or_else(|| Error::Parse(format!("leading coefficient has no {k}-th root")))?;
        let vr = self.v0 / kk;
        let target = self.prec - (kk - 1) * vr;
        let mut r = LaurentSeries::monomial(lead_root, vr, vr + 1).with_prec_claimed(target);
        let kconst = self.field.from_int(kk);
        let digits = (target - vr).max(2) as u64;
        let iters = (64 - digits.leading_zeros()) as usize + 2;
        for _ in 0..iters {
            // r <- r - (r^k - s) / (k r^(k-1))
            let rk1 = r.pow(kk - 1)?;
            let num = rk1.mul(&r).sub(self);
            if num.is_zero() {
                break;
            }
            let den = rk1.scalar_mul(&kconst);
            let upd = num.div(&den)?;
            r = r.sub(&upd).with_prec_claimed(target);
        }
        let err = r.pow(kk)?.sub(self);
        let err_val = if err.is_zero() { err.prec() } else { err.val()? };
        let out = r.truncate(err_val - (kk - 1) * vr);
        if out.rel_prec() < self.rel_prec() - 2 {
            return Err(Error::PrecisionLoss(
                "root iteration did not reach the requested precision".into(),
            ));
        }
        Ok(out)
    }

    /// True when both series agree on all jointly-known coefficients below `upto`.
    pub fn agrees_with(&self, other: &LaurentSeries, upto: i64) -> bool {
        let bound = self.prec.min(other.prec).min(upto);
        let start = if self.is_zero() && other.is_zero() {
            return true;
        } else if self.is_zero() {
            other.v0
        } else if other.is_zero() {
            self.v0
        } else {
            self.v0.min(other.v0)
        };
        for k in start..bound {
            if self.coeff_at(k) != other.coeff_at(k) {
                return false;
            }
        }
        true
    }

    /// Canonical serializable rendering.
    pub fn repr(&self) -> SeriesRepr {
        SeriesRepr {
            start: self.v0,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| c.coeff_tuple().to_vec()).collect(),
        }
    }
}

trait RootBySearch {
    fn root_by_search(self, k: u32) -> Option<FqElem>;
}

impl RootBySearch for FqElem {
    /// Deterministic k-th root in a small field, if one exists.
    fn root_by_search(self, k: u32) -> Option<FqElem> {
        self.field()
            .elements()
            .find(|e| e.pow(k as i64).map(|p| p == self).unwrap_or(false))
    }
}

/// Canonical series rendering: start exponent, precision, coefficient tuples
/// over the prime field (lowest power of w first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRepr {
    pub start: i64,
    pub prec: i64,
    pub coeffs: Vec<Vec<u64>>,
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(u^{})", self.prec);
        }
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.v0 + i as i64;
            let cs = format!("{c}");
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            let s = match k {
                0 => cs,
                1 if c.is_one() => "u".into(),
                1 => format!("{cs}*u"),
                _ if c.is_one() => format!("u^{k}"),
                _ => format!("{cs}*u^{k}"),
            };
            parts.push(s);
        }
        write!(f, "{} + O(u^{})", parts.join(" + "), self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> FqField {
        FqField::prime(3).unwrap()
    }

    fn series(v0: i64, c: &[i64], prec: i64) -> LaurentSeries {
        let f = f3();
        LaurentSeries::from_coeffs(&f, v0, c.iter().map(|&n| f.from_int(n)).collect(), prec)
    }

    #[test]
    fn add_precision_is_min() {
        let a = series(-1, &[1, 2], 10);
        let b = series(0, &[1], 5);
        let s = a.add(&b);
        assert_eq!(s.prec(), 5);
        assert_eq!(s.val().unwrap(), -1);
        assert_eq!(s.coeff_at(0).unwrap(), f3().zero()); // 2 + 1 = 0
    }

    #[test]
    fn mul_precision_newton_polygon() {
        let a = series(-2, &[1], 10); // u^-2 known to 10
        let b = series(3, &[2], 7); // 2u^3 known to 7
        let p = a.mul(&b);
        assert_eq!(p.prec(), (10 + 3).min(7 - 2));
        assert_eq!(p.val().unwrap(), 1);
    }

    #[test]
    fn inverse_keeps_relative_precision() {
        let a = series(-1, &[1, 1, 2, 1], 8); // rel prec 9
        let inv = a.inv().unwrap();
        assert_eq!(inv.val().unwrap(), 1);
        assert_eq!(inv.prec(), 8 - 2 * (-1));
        let prod = a.mul(&inv);
        assert!(prod.sub(&LaurentSeries::one(&f3(), prod.prec())).is_zero());
    }

    #[test]
    fn frobenius_q_gains_precision() {
        let a = series(-1, &[2, 1, 1], 6);
        let cube = a.frobenius_q(3);
        assert_eq!(cube.prec(), 18);
        assert_eq!(cube.val().unwrap(), -3);
        // matches the tracked-precision product
        let direct = a.pow(3).unwrap();
        assert!(cube.agrees_with(&direct, direct.prec()));
    }

    #[test]
    fn zero_to_precision_semantics() {
        let z = series(4, &[1], 3); // all data above prec
        assert!(z.is_zero());
        assert_eq!(z.val(), Err(Error::ZeroElement));
        assert_eq!(z.inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn nth_root_square() {
        let f = f3();
        let a = series(-4, &[1, 0, 1, 2, 1, 1], 10);
        let sq = a.mul(&a);
        let r = sq.nth_root(2).unwrap();
        // either root is fine up to sign; squares agree
        let back = r.mul(&r);
        assert!(back.agrees_with(&sq, back.prec().min(sq.prec())));
        let _ = f;
    }

    proptest! {
        #[test]
        fn valuation_additive(ca in prop::collection::vec(0i64..3, 1..6),
                              cb in prop::collection::vec(0i64..3, 1..6),
                              va in -4i64..4, vb in -4i64..4) {
            let a = series(va, &ca, va + 12);
            let b = series(vb, &cb, vb + 12);
            prop_assume!(!a.is_zero() && !b.is_zero());
            let p = a.mul(&b);
            prop_assert_eq!(p.val().unwrap(), a.val().unwrap() + b.val().unwrap());
        }

        #[test]
        fn ultrametric_add(ca in prop::collection::vec(0i64..3, 1..6),
                           cb in prop::collection::vec(0i64..3, 1..6),
                           va in -4i64..4, vb in -4i64..4) {
            let a = series(va, &ca, 12);
            let b = series(vb, &cb, 12);
            prop_assume!(!a.is_zero() && !b.is_zero());
            let s = a.add(&b);
            if !s.is_zero() {
                prop_assert!(s.val().unwrap() >= a.val().unwrap().min(b.val().unwrap()));
            }
        }
    }
}
