//! The twisted polynomial ring L{tau} with the commutation rule
//! tau a = a^q tau, over exact coefficients (finite fields, rational
//! functions) or Laurent series. Left ideals are principal via the monic
//! right gcd, which is the engine behind the ideal *-action.

use crate::error::{Error, Result};
use crate::fq::FqElem;
use crate::laurent::LaurentSeries;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use std::fmt;

/// Coefficient domains for twisted polynomials.
pub trait OreCoeff: Clone + PartialEq + Send + Sync + fmt::Debug {
    fn domain_label(&self) -> String;
    fn same_domain(&self, other: &Self) -> bool;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Inverse for use as a division pivot. Over Laurent series the leading
    /// term must sit at least 5 digits above the precision floor; below that
    /// the division refuses rather than producing garbage quotients.
    fn inv_for_division(&self) -> Result<Self>;
    /// x -> x^{q^k}.
    fn q_power(&self, q: u64, k: usize) -> Self;
}

impl OreCoeff for FqElem {
    fn domain_label(&self) -> String {
        format!("{}", self.field())
    }
    fn same_domain(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
    fn is_zero(&self) -> bool {
        FqElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FqElem::is_one(self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add(&self, other: &Self) -> Self {
        FqElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FqElem::sub(self, other)
    }
    fn neg(&self) -> Self {
        FqElem::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        FqElem::mul(self, other)
    }
    fn inv_for_division(&self) -> Result<Self> {
        self.inv()
    }
    fn q_power(&self, q: u64, k: usize) -> Self {
        let p = self.field().p();
        let mut j = 0usize;
        let mut t = q;
        while t > 1 {
            assert!(t % p == 0, "twist must be a power of the characteristic");
            t /= p;
            j += 1;
        }
        self.frobenius(j * k)
    }
}

impl OreCoeff for RatFn {
    fn domain_label(&self) -> String {
        format!("{}(x)", self.field())
    }
    fn same_domain(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFn::is_one(self)
    }
    fn zero_like(&self) -> Self {
        RatFn::zero(&self.field())
    }
    fn one_like(&self) -> Self {
        RatFn::one(&self.field())
    }
    fn add(&self, other: &Self) -> Self {
        RatFn::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFn::sub(self, other)
    }
    fn neg(&self) -> Self {
        RatFn::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFn::mul(self, other)
    }
    fn inv_for_division(&self) -> Result<Self> {
        self.inv()
    }
    fn q_power(&self, q: u64, k: usize) -> Self {
        let mut r = self.clone();
        for _ in 0..k {
            r = r.pow(q as i64).expect("positive power");
        }
        r
    }
}

/// Margin (in uniformizer digits) a Laurent pivot must clear above the
/// precision floor to count as invertible.
pub const LAURENT_PIVOT_MARGIN: i64 = 5;

impl OreCoeff for LaurentSeries {
    fn domain_label(&self) -> String {
        format!("{}((u))", self.field())
    }
    fn same_domain(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
    fn is_one(&self) -> bool {
        !self.is_zero()
            && self.val() == Ok(0)
            && self.leading().map(|c| c.is_one()).unwrap_or(false)
            && self.sub(&LaurentSeries::one(&self.field(), self.prec())).is_zero()
    }
    fn zero_like(&self) -> Self {
        LaurentSeries::zero(&self.field(), self.prec())
    }
    fn one_like(&self) -> Self {
        LaurentSeries::one(&self.field(), self.rel_prec().max(1))
    }
    fn add(&self, other: &Self) -> Self {
        LaurentSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentSeries::sub(self, other)
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentSeries::mul(self, other)
    }
    fn inv_for_division(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::PrecisionLoss(format!(
                "pivot zero to precision {}",
                self.prec()
            )));
        }
        if self.val()? + LAURENT_PIVOT_MARGIN > self.prec() {
            return Err(Error::PrecisionLoss(format!(
                "pivot has only {} certified digits (need {LAURENT_PIVOT_MARGIN})",
                self.rel_prec()
            )));
        }
        self.inv()
    }
    fn q_power(&self, q: u64, k: usize) -> Self {
        self.frobenius_q_iter(q, k)
    }
}

/// An element of L{tau}: coefficients c_0 .. c_d of sum c_k tau^k.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedPoly<C: OreCoeff> {
    q: u64,
    coeffs: Vec<C>,
}

impl<C: OreCoeff> TwistedPoly<C> {
    pub fn new(q: u64, coeffs: Vec<C>) -> Self {
        let mut p = TwistedPoly { q, coeffs };
        p.trim();
        p
    }

    pub fn zero(q: u64) -> Self {
        TwistedPoly { q, coeffs: vec![] }
    }

    pub fn constant(q: u64, c: C) -> Self {
        TwistedPoly::new(q, vec![c])
    }

    /// c tau^k.
    pub fn monomial(q: u64, c: C, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        TwistedPoly::new(q, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// tau-degree; -1 for zero.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }
    /// Constant coefficient c_0 (the derivative of the additive polynomial).
    pub fn c0(&self) -> Option<&C> {
        self.coeffs.first()
    }

    fn check_domains(&self, other: &TwistedPoly<C>) -> Result<()> {
        if self.q != other.q {
            return Err(Error::DomainMismatch(format!(
                "twists q = {} and q = {}",
                self.q, other.q
            )));
        }
        if let (Some(a), Some(b)) = (self.coeffs.first(), other.coeffs.first()) {
            if !a.same_domain(b) {
                return Err(Error::DomainMismatch(format!(
                    "{} vs {}",
                    a.domain_label(),
                    b.domain_label()
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &TwistedPoly<C>) -> Result<TwistedPoly<C>> {
        self.check_domains(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let v = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(v);
        }
        Ok(TwistedPoly::new(self.q, coeffs))
    }

    pub fn sub(&self, other: &TwistedPoly<C>) -> Result<TwistedPoly<C>> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TwistedPoly<C> {
        TwistedPoly {
            q: self.q,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Product by composition: tau^k a = a^{q^k} tau^k.
    pub fn mul(&self, other: &TwistedPoly<C>) -> Result<TwistedPoly<C>> {
        self.check_domains(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(TwistedPoly::zero(self.q));
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a.mul(&b.q_power(self.q, i));
                coeffs[i + j] = coeffs[i + j].add(&t);
            }
        }
        Ok(TwistedPoly::new(self.q, coeffs))
    }

    /// Left-scale by a constant of the coefficient domain.
    pub fn scale(&self, c: &C) -> TwistedPoly<C> {
        TwistedPoly {
            q: self.q,
            coeffs: self.coeffs.iter().map(|a| c.mul(a)).collect(),
        }
    }

    /// Right Euclidean division: self = quot * g + rem with deg rem < deg g.
    pub fn right_divmod(&self, g: &TwistedPoly<C>) -> Result<(TwistedPoly<C>, TwistedPoly<C>)> {
        self.check_domains(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let e = g.deg();
        let g_top = g.leading().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = TwistedPoly::zero(self.q);
        while rem.deg() >= e {
            let d = rem.deg();
            let k = (d - e) as usize;
            // pivot: the top of (c tau^k) g is c * g_top^{q^k}
            let pivot = g_top.q_power(self.q, k);
            let c = rem.leading().expect("nonzero").mul(&pivot.inv_for_division()?);
            let t = TwistedPoly::monomial(self.q, c, k);
            quot = quot.add(&t)?;
            rem = rem.sub(&t.mul(g)?)?;
            if rem.deg() >= d {
                // only possible through precision loss in inexact domains
                return Err(Error::PrecisionLoss(
                    "division failed to reduce the degree".into(),
                ));
            }
        }
        Ok((quot, rem))
    }

    /// Make the leading coefficient 1 by a left constant.
    pub fn monic(&self) -> Result<TwistedPoly<C>> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(top) => Ok(self.scale(&top.inv_for_division()?)),
        }
    }

    /// Evaluate the additive polynomial: sum c_k z^{q^k}.
    pub fn eval(&self, z: &C) -> C {
        let mut acc = z.zero_like();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&z.q_power(self.q, k)));
            }
        }
        acc
    }
}

/// Monic generator of the left ideal generated by the inputs, by iterated
/// right-division Euclid.
pub fn tw_rgcd<C: OreCoeff>(polys: &[TwistedPoly<C>]) -> Result<TwistedPoly<C>> {
    let mut nonzero: Vec<&TwistedPoly<C>> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::DivisionByZero);
    }
    nonzero.sort_by_key(|p| p.deg());
    let mut g = nonzero[0].clone();
    for p in &nonzero[1..] {
        let mut a = (*p).clone();
        loop {
            let (_, r) = a.right_divmod(&g)?;
            if r.is_zero() {
                break;
            }
            a = std::mem::replace(&mut g, r);
        }
    }
    g.monic()
}

/// Coefficientwise reduction of a twisted polynomial over F_p(T) modulo an
/// irreducible p(T): the result lives over the residue field F_p[T]/(p).
/// Also reports whether the tau-degree is preserved (the good-reduction
/// indicator at this prime).
pub struct ReducedPoly {
    pub poly: TwistedPoly<FqElem>,
    pub degree_preserved: bool,
}

pub fn tw_reduce_mod(f: &TwistedPoly<RatFn>, prime: &Poly) -> Result<ReducedPoly> {
    let base = prime.field();
    if base.degree() != 1 {
        return Err(Error::UnsupportedCharacteristic(
            "reduction is implemented for prime base fields (q = p)".into(),
        ));
    }
    if !prime.is_irreducible() {
        return Err(Error::Parse(format!("{prime} is not irreducible")));
    }
    let residue = if prime.deg() == 1 {
        base.clone()
    } else {
        crate::fq::FqField::with_modulus(
            base.p(),
            prime.coeffs().iter().map(|c| c.coeff_tuple()[0]).collect(),
        )?
    };
    let to_residue = |r: &RatFn| -> Result<FqElem> {
        let den_red = r.den().rem(prime)?;
        if den_red.is_zero() {
            return Err(Error::NonIntegralCoefficient(format!("{r}")));
        }
        let num_red = r.num().rem(prime)?;
        let lift = |p: &Poly| -> FqElem {
            if prime.deg() == 1 {
                // T maps to the root of the linear prime
                let root = prime.coeff(0).neg().div(&prime.lc()).expect("monic");
                p.eval(&root)
            } else {
                let tuple: Vec<u64> = p.coeffs().iter().map(|c| c.coeff_tuple()[0]).collect();
                residue.from_coeffs(&tuple)
            }
        };
        lift(&num_red).div(&lift(&den_red))
    };
    let coeffs: Vec<FqElem> = f
        .coeffs()
        .iter()
        .map(|c| to_residue(c))
        .collect::<Result<_>>()?;
    let poly = TwistedPoly::new(f.q(), coeffs);
    Ok(ReducedPoly {
        degree_preserved: poly.deg() == f.deg(),
        poly,
    })
}

impl<C: OreCoeff + fmt::Display> fmt::Display for TwistedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c}");
            let cs = if cs.contains('+') || cs.contains(' ') {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(match k {
                0 => cs,
                1 if c.is_one() => "tau".into(),
                1 => format!("{cs}*tau"),
                _ if c.is_one() => format!("tau^{k}"),
                _ => format!("{cs}*tau^{k}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}
