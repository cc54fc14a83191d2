//! Fractional ideals of A as Hermite-normal-form modules over F_q[x].
//!
//! A fractional ideal is stored as (content/den) * (a, b + y) with a, b,
//! content, den in F_q[x]: a and the fraction monic, deg b < deg a, the
//! primitive part closed under multiplication by y (a | f + h b - b^2), and
//! gcd(content, den) = 1. The rational model uses the same shape with
//! a = 1, b = 0. This form is unique, so ideal equality is structural.

use crate::curve::{CurveKind, CurveModel, FFElement};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfn::RatFn;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracIdeal {
    model: CurveModel,
    den: Poly,
    content: Poly,
    a: Poly,
    b: Poly,
}

impl FracIdeal {
    pub fn unit(model: &CurveModel) -> Self {
        let f = model.base_field();
        FracIdeal {
            model: model.clone(),
            den: Poly::one(&f),
            content: Poly::one(&f),
            a: Poly::one(&f),
            b: Poly::zero(&f),
        }
    }

    pub fn principal(g: &FFElement) -> Result<Self> {
        Self::from_generators(&g.model(), &[g.clone()])
    }

    /// HNF of the A-module generated by the given elements of K.
    pub fn from_generators(model: &CurveModel, gens: &[FFElement]) -> Result<Self> {
        let field = model.base_field();
        let gens: Vec<&FFElement> = gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        // common denominator
        let mut den = Poly::one(&field);
        for g in &gens {
            den = den.lcm(g.den_part());
        }
        // integral generator vectors (u, v) for u + v y, plus y-closure
        let mut vecs: Vec<(Poly, Poly)> = vec![];
        for g in &gens {
            let scale = den.div_exact(g.den_part())?;
            let u = g.u_part().mul(&scale);
            let v = g.v_part().mul(&scale);
            vecs.push((u.clone(), v.clone()));
            if let CurveKind::Quadratic { h, f } = model.kind() {
                // y (u + v y) = v f + (u - v h) y
                vecs.push((v.mul(f), u.sub(&v.mul(h))));
            }
        }
        let (content, a, b) = hnf_reduce(model, vecs)?;
        let mut ideal = FracIdeal {
            model: model.clone(),
            den,
            content,
            a,
            b,
        };
        ideal.normalize_fraction();
        ideal.check_closure()?;
        Ok(ideal)
    }

    fn normalize_fraction(&mut self) {
        let g = self.content.gcd(&self.den);
        if g.deg() > 0 {
            self.content = self.content.div_exact(&g).expect("gcd divides");
            self.den = self.den.div_exact(&g).expect("gcd divides");
        }
        self.content = self.content.monic();
        self.den = self.den.monic();
    }

    fn check_closure(&self) -> Result<()> {
        if let CurveKind::Quadratic { h, f } = self.model.kind() {
            let expr = f.add(&h.mul(&self.b)).sub(&self.b.mul(&self.b));
            if !self.a.divides(&expr) {
                return Err(Error::Parse(format!(
                    "module not closed under y: {} does not divide f + h b - b^2",
                    self.a
                )));
            }
        }
        Ok(())
    }

    pub fn model(&self) -> CurveModel {
        self.model.clone()
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn content(&self) -> &Poly {
        &self.content
    }
    pub fn hnf_a(&self) -> &Poly {
        &self.a
    }
    pub fn hnf_b(&self) -> &Poly {
        &self.b
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.den.is_one() && self.content.is_one() && self.a.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// F_q[x]-module basis of the ideal, as elements of K:
    /// content*a/den and (content*(b+y))/den (the latter absent on rational
    /// models).
    pub fn module_basis(&self) -> Vec<FFElement> {
        let f = self.model.base_field();
        let e1 = self
            .model
            .element(self.content.mul(&self.a), Poly::zero(&f), self.den.clone())
            .expect("nonzero denominator");
        match self.model.kind() {
            CurveKind::Rational => vec![e1],
            CurveKind::Quadratic { .. } => {
                let e2 = self
                    .model
                    .element(
                        self.content.mul(&self.b),
                        self.content.clone(),
                        self.den.clone(),
                    )
                    .expect("nonzero denominator");
                vec![e1, e2]
            }
        }
    }

    /// A degree-reduced F_q[x]-module basis: Gauss reduction of the HNF pair
    /// under the degree norm. In the reduced state no basis vector's leading
    /// term is an F_q[x]-monomial multiple of the other's, so every
    /// F_q-combination of x^i-shifts of the basis has degree equal to its
    /// largest participating term. (When d_inf = 1 reduction always ends with
    /// the two degrees in different parity classes.)
    pub fn reduced_basis(&self) -> Vec<FFElement> {
        let basis = self.module_basis();
        if basis.len() == 1 {
            return basis;
        }
        let model = self.model();
        let x = model.x_elem();
        let xdeg = model.x_degree();
        let mut v1 = basis[0].clone();
        let mut v2 = basis[1].clone();
        if v1.degree().expect("nonzero") > v2.degree().expect("nonzero") {
            std::mem::swap(&mut v1, &mut v2);
        }
        loop {
            let d1 = v1.degree().expect("nonzero");
            let d2 = v2.degree().expect("nonzero");
            if (d2 - d1) % xdeg != 0 {
                break;
            }
            let k = (d2 - d1) / xdeg;
            let shift = x.pow(k).expect("positive power").mul(&v1);
            let ratio = v2
                .sgn()
                .expect("nonzero")
                .div(&shift.sgn().expect("nonzero"))
                .expect("nonzero sign");
            // reducible only when the sign ratio is a constant of F_q
            let Some(c) = model
                .base_field()
                .elements()
                .find(|e| model.inf_embedding().apply(e) == ratio)
            else {
                break;
            };
            let reduced = v2.sub(&shift.mul(&model.from_poly(Poly::constant(c))));
            debug_assert!(reduced.degree().unwrap_or(i64::MIN) < d2);
            v2 = reduced;
            if v2.degree().expect("rank 2 module") < v1.degree().expect("nonzero") {
                std::mem::swap(&mut v1, &mut v2);
            }
        }
        vec![v1, v2]
    }

    /// The element p*e1 + r*e2 in module-basis coordinates.
    pub fn from_coords(&self, p: &Poly, r: &Poly) -> FFElement {
        let basis = self.module_basis();
        let e1 = basis[0].clone();
        let pe = self.model.from_poly(p.clone()).mul(&e1);
        if basis.len() == 1 {
            assert!(r.is_zero(), "rational model has rank-1 modules");
            return pe;
        }
        let re = self.model.from_poly(r.clone()).mul(&basis[1]);
        pe.add(&re)
    }

    /// Coordinates of an element in the module basis, when they are
    /// polynomial; None when the element is not in the ideal.
    pub fn coords(&self, m: &FFElement) -> Option<(Poly, Poly)> {
        let field = self.model.base_field();
        let c = RatFn::new(self.content.clone(), self.den.clone()).expect("nonzero");
        match self.model.kind() {
            CurveKind::Rational => {
                // m = p * (content/den)
                let mr = RatFn::new(m.u_part().clone(), m.den_part().clone()).ok()?;
                let p = mr.div(&c).ok()?;
                p.as_polynomial().cloned().map(|p| (p, Poly::zero(&field)))
            }
            CurveKind::Quadratic { .. } => {
                let um = RatFn::new(m.u_part().clone(), m.den_part().clone()).ok()?;
                let vm = RatFn::new(m.v_part().clone(), m.den_part().clone()).ok()?;
                // v-coordinate: vm = r * content/den
                let r = vm.div(&c).ok()?;
                let r = r.as_polynomial().cloned()?;
                // u-coordinate: um = p * (content a / den) + r * (content b / den)
                let ca = c.mul(&RatFn::from_poly(self.a.clone()));
                let cb = c.mul(&RatFn::from_poly(self.b.clone()));
                let p = um
                    .sub(&RatFn::from_poly(r.clone()).mul(&cb))
                    .div(&ca)
                    .ok()?;
                let p = p.as_polynomial().cloned()?;
                Some((p, r))
            }
        }
    }

    pub fn contains(&self, m: &FFElement) -> bool {
        m.is_zero() || self.coords(m).is_some()
    }

    pub fn mul(&self, other: &FracIdeal) -> FracIdeal {
        assert!(self.model == other.model, "model mismatch");
        let ga = self.module_basis();
        let gb = other.module_basis();
        let mut prods = vec![];
        for x in &ga {
            for y in &gb {
                prods.push(x.mul(y));
            }
        }
        Self::from_generators(&self.model, &prods).expect("product of nonzero ideals")
    }

    pub fn inverse(&self) -> FracIdeal {
        let f = self.model.base_field();
        match self.model.kind() {
            CurveKind::Rational => {
                let mut inv = FracIdeal {
                    model: self.model.clone(),
                    den: self.content.clone(),
                    content: self.den.clone(),
                    a: Poly::one(&f),
                    b: Poly::zero(&f),
                };
                inv.normalize_fraction();
                inv
            }
            CurveKind::Quadratic { h, .. } => {
                // (c/d)(a, b+y) inverse = (d/(c a)) (a, (h - b mod a) + y)
                let nb = h.sub(&self.b).rem(&self.a).expect("a nonzero");
                let mut inv = FracIdeal {
                    model: self.model.clone(),
                    den: self.content.mul(&self.a),
                    content: self.den.clone(),
                    a: self.a.clone(),
                    b: nb,
                };
                inv.normalize_fraction();
                inv.check_closure().expect("conjugate module is closed");
                inv
            }
        }
    }

    pub fn pow(&self, e: i64) -> FracIdeal {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut r = FracIdeal::unit(&self.model);
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
        r
    }

    /// Scale by a nonzero element of K.
    pub fn scale(&self, g: &FFElement) -> Result<FracIdeal> {
        if g.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok(self.mul(&FracIdeal::principal(g)?))
    }

    /// Ideal norm as a fractional ideal of F_q[x], returned as a normalized
    /// rational function (monic numerator and denominator).
    pub fn norm(&self) -> RatFn {
        match self.model.kind() {
            CurveKind::Rational => {
                RatFn::new(self.content.clone(), self.den.clone()).expect("nonzero")
            }
            CurveKind::Quadratic { .. } => RatFn::new(
                self.content.mul(&self.content).mul(&self.a),
                self.den.mul(&self.den),
            )
            .expect("nonzero"),
        }
    }

    /// deg of the norm for an integral ideal; the F_q-dimension of A/ideal.
    pub fn norm_degree(&self) -> i64 {
        assert!(self.is_integral(), "norm degree of an integral ideal");
        match self.model.kind() {
            CurveKind::Rational => self.content.deg(),
            CurveKind::Quadratic { .. } => 2 * self.content.deg() + self.a.deg(),
        }
    }

    /// An F_q-basis of m^{-1} a / a (deg norm(m) elements whose F_q-span
    /// meets every coset exactly once).
    pub fn torsion_basis(&self, modulus: &FracIdeal) -> Result<Vec<FFElement>> {
        if !modulus.is_integral() {
            return Err(Error::ZeroModulus);
        }
        let big = self.mul(&modulus.inverse());
        let field = self.model.base_field();
        let x = self.model.x_elem();
        let vb = big.module_basis();
        let mut out = vec![];
        match self.model.kind() {
            CurveKind::Rational => {
                let ratio = RatFn::new(
                    self.content.mul(big.den()),
                    self.den.mul(big.content()),
                )?;
                let c = ratio
                    .as_polynomial()
                    .cloned()
                    .ok_or_else(|| Error::Parse("quotient ratio not integral".into()))?;
                let mut cur = vb[0].clone();
                for _ in 0..c.deg() {
                    out.push(cur.clone());
                    cur = cur.mul(&x);
                }
            }
            CurveKind::Quadratic { .. } => {
                let sb = self.module_basis();
                let c0 = big
                    .coords(&sb[0])
                    .ok_or_else(|| Error::Parse("quotient inclusion failed".into()))?;
                let c1 = big
                    .coords(&sb[1])
                    .ok_or_else(|| Error::Parse("quotient inclusion failed".into()))?;
                let (h11, _h12, h22) = col_hnf_2x2(&c0, &c1)?;
                let mut cur = vb[0].clone();
                for _ in 0..h11.deg() {
                    out.push(cur.clone());
                    cur = cur.mul(&x);
                }
                let mut cur = vb[1].clone();
                for _ in 0..h22.deg() {
                    out.push(cur.clone());
                    cur = cur.mul(&x);
                }
            }
        }
        let _ = field;
        Ok(out)
    }

    /// Coset representatives of (self : modulus) / self, i.e. of
    /// m^{-1} a / a, with 0 included. Size q^{deg norm(modulus)}.
    pub fn torsion_representatives(&self, modulus: &FracIdeal) -> Result<Vec<FFElement>> {
        if !modulus.is_integral() {
            return Err(Error::ZeroModulus);
        }
        let big = self.mul(&modulus.inverse());
        let field = self.model.base_field();
        let vb = big.module_basis();
        match self.model.kind() {
            CurveKind::Rational => {
                // self = r * big for the polynomial ratio r
                let ratio = RatFn::new(
                    self.content.mul(big.den()),
                    self.den.mul(big.content()),
                )?;
                let c = ratio
                    .as_polynomial()
                    .cloned()
                    .ok_or_else(|| Error::Parse("quotient ratio not integral".into()))?;
                let mut reps = vec![];
                for r in residues(&field, c.deg()) {
                    reps.push(self.model.from_poly(r).mul(&vb[0]));
                }
                Ok(reps)
            }
            CurveKind::Quadratic { .. } => {
                // columns of C = coordinates of self's basis in big's basis
                let sb = self.module_basis();
                let c0 = big
                    .coords(&sb[0])
                    .ok_or_else(|| Error::Parse("quotient inclusion failed".into()))?;
                let c1 = big
                    .coords(&sb[1])
                    .ok_or_else(|| Error::Parse("quotient inclusion failed".into()))?;
                let (h11, _h12, h22) = col_hnf_2x2(&c0, &c1)?;
                let mut reps = vec![];
                for beta in residues(&field, h22.deg()) {
                    for alpha in residues(&field, h11.deg()) {
                        let e = vb[0]
                            .mul(&self.model.from_poly(alpha.clone()))
                            .add(&vb[1].mul(&self.model.from_poly(beta.clone())));
                        reps.push(e);
                    }
                }
                Ok(reps)
            }
        }
    }
}

/// All polynomials of degree < bound (the residues mod a degree-`bound` poly).
fn residues(field: &crate::fq::FqField, bound: i64) -> Vec<Poly> {
    let q = field.order();
    if bound <= 0 {
        return vec![Poly::zero(field)];
    }
    let n = bound as u32;
    let total = q.pow(n);
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut coeffs = vec![];
        let mut k = idx;
        for _ in 0..n {
            coeffs.push(field.elem_by_index(k % q));
            k /= q;
        }
        out.push(Poly::from_coeffs(field, coeffs));
    }
    out
}

/// Column HNF of the 2x2 polynomial matrix with columns c0, c1:
/// returns (h11, h12, h22) for the upper-triangular form.
fn col_hnf_2x2(c0: &(Poly, Poly), c1: &(Poly, Poly)) -> Result<(Poly, Poly, Poly)> {
    let (u0, v0) = c0.clone();
    let (u1, v1) = c1.clone();
    if v0.is_zero() && v1.is_zero() {
        return Err(Error::Parse("degenerate quotient matrix".into()));
    }
    let (d, s, t) = v0.xgcd(&v1);
    // column with bottom entry d
    let w = s.mul(&u0).add(&t.mul(&u1));
    // column with bottom entry 0
    let z = u0.mul(&v1.div_exact(&d)?).sub(&u1.mul(&v0.div_exact(&d)?));
    if z.is_zero() {
        return Err(Error::Parse("quotient not of full rank".into()));
    }
    let h11 = z.monic();
    let h22 = d.monic();
    let h12 = w.rem(&h11)?;
    Ok((h11, h12, h22))
}

/// Reduce a y-closed list of module vectors (u, v) ~ u + v y to the unique
/// (content, a, b) form.
fn hnf_reduce(model: &CurveModel, vecs: Vec<(Poly, Poly)>) -> Result<(Poly, Poly, Poly)> {
    let field = model.base_field();
    let mut poly_only: Vec<Poly> = vec![];
    let mut combined: Option<(Poly, Poly)> = None; // (U, V): the v-gcd carrier
    for (u, v) in vecs {
        if u.is_zero() && v.is_zero() {
            continue;
        }
        if v.is_zero() {
            poly_only.push(u);
            continue;
        }
        combined = Some(match combined {
            None => (u, v),
            Some((cu, cv)) => {
                let (d, s, t) = cv.xgcd(&v);
                let new_u = s.mul(&cu).add(&t.mul(&u));
                // reduced vector with zero v-part
                let red = cu.mul(&v.div_exact(&d)?).sub(&u.mul(&cv.div_exact(&d)?));
                if !red.is_zero() {
                    poly_only.push(red);
                }
                (new_u, d)
            }
        });
    }
    match combined {
        None => {
            // rank-1 module of polynomials
            let mut g = Poly::zero(&field);
            for u in poly_only {
                g = g.gcd(&u);
            }
            if g.is_zero() {
                return Err(Error::ZeroIdeal);
            }
            Ok((g.monic(), Poly::one(&field), Poly::zero(&field)))
        }
        Some((us, e)) => {
            let mut g1 = Poly::zero(&field);
            for u in poly_only {
                g1 = g1.gcd(&u);
            }
            if g1.is_zero() {
                return Err(Error::Parse("module has rank 1 but contains y-part".into()));
            }
            let scale = e.lc().inv()?;
            let e_monic = e.scale(&scale);
            let us = us.scale(&scale);
            let a = g1.div_exact(&e_monic).map_err(|_| {
                Error::Parse("content does not divide the polynomial part".into())
            })?;
            let b = us.div_exact(&e_monic).map_err(|_| {
                Error::Parse("content does not divide the mixed part".into())
            })?;
            let b = b.rem(&a.monic())?;
            Ok((e_monic, a.monic(), b))
        }
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.model.var();
        let mut front = String::new();
        if !self.content.is_one() || !self.den.is_one() {
            front = format!("({})", self.content.fmt_with_var(var));
            if !self.den.is_one() {
                front = format!("{front}/({})", self.den.fmt_with_var(var));
            }
            front.push_str(" * ");
        }
        match self.model.kind() {
            CurveKind::Rational => {
                if front.is_empty() {
                    write!(f, "({})", self.a.fmt_with_var(var))
                } else {
                    write!(f, "{front}(1)")
                }
            }
            CurveKind::Quadratic { .. } => {
                let b = if self.b.is_zero() {
                    "y".to_string()
                } else {
                    format!("{}+y", self.b.fmt_with_var(var))
                };
                write!(f, "{front}({}, {b})", self.a.fmt_with_var(var))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveModel;

    fn h4() -> CurveModel {
        CurveModel::quadratic(3, 1, &[], &[1, 1, 0, 1]).unwrap()
    }

    fn p0(m: &CurveModel) -> FracIdeal {
        // (x, y - 1)
        let gens = [
            m.x_elem(),
            m.y_elem().unwrap().sub(&m.one_elem()),
        ];
        FracIdeal::from_generators(m, &gens).unwrap()
    }

    #[test]
    fn fixture_prime_hnf() {
        let m = h4();
        let p = p0(&m);
        assert_eq!(*p.hnf_a(), Poly::x(&m.base_field()));
        assert_eq!(*p.hnf_b(), Poly::from_ints(&m.base_field(), &[2]));
        assert!(p.content().is_one() && p.den().is_one());
        assert_eq!(p.norm_degree(), 1);
    }

    #[test]
    fn unit_ideal_from_generators() {
        let m = h4();
        let one = FracIdeal::from_generators(&m, &[m.one_elem()]).unwrap();
        assert!(one.is_unit_ideal());
        assert_eq!(one, FracIdeal::unit(&m));
    }

    #[test]
    fn rational_gcd_of_generators() {
        let m = CurveModel::rational(3, 1).unwrap();
        let t2 = m.from_poly(Poly::from_ints(&m.base_field(), &[0, 0, 1]));
        let t3 = m.from_poly(Poly::from_ints(&m.base_field(), &[0, 0, 0, 1]));
        let i = FracIdeal::from_generators(&m, &[t2, t3]).unwrap();
        assert_eq!(*i.content(), Poly::from_ints(&m.base_field(), &[0, 0, 1]));
        assert!(i.den().is_one());
    }

    #[test]
    fn hnf_unique_under_rescaling_and_permutation() {
        let m = h4();
        let x = m.x_elem();
        let g2 = m.y_elem().unwrap().sub(&m.one_elem());
        let i1 = FracIdeal::from_generators(&m, &[x.clone(), g2.clone()]).unwrap();
        let i2 = FracIdeal::from_generators(
            &m,
            &[
                g2.mul(&m.constant(2)),
                x.mul(&m.constant(2)),
                x.add(&g2),
            ],
        )
        .unwrap();
        assert_eq!(i1, i2);
        // regenerating from the HNF basis is idempotent
        let i3 = FracIdeal::from_generators(&m, &i1.module_basis()).unwrap();
        assert_eq!(i1, i3);
    }

    #[test]
    fn inverse_and_product() {
        let m = h4();
        let p = p0(&m);
        let inv = p.inverse();
        assert!(p.mul(&inv).is_unit_ideal());
        // (y)^2 = (f)
        let y_ideal = FracIdeal::principal(&m.y_elem().unwrap()).unwrap();
        let f_elem = m.from_poly(Poly::from_ints(&m.base_field(), &[1, 1, 0, 1]));
        let f_ideal = FracIdeal::principal(&f_elem).unwrap();
        assert_eq!(y_ideal.mul(&y_ideal), f_ideal);
        // (x - 1) = p1^2 for the ramified point p1 = (x - 1, y)
        let x1 = m.x_elem().sub(&m.one_elem());
        let p1 = FracIdeal::from_generators(&m, &[x1.clone(), m.y_elem().unwrap()]).unwrap();
        assert_eq!(p1.mul(&p1), FracIdeal::principal(&x1).unwrap());
    }

    #[test]
    fn norm_multiplicative() {
        let m = h4();
        let p = p0(&m);
        let q = FracIdeal::principal(&m.y_elem().unwrap().add(&m.x_elem())).unwrap();
        let lhs = p.mul(&q).norm();
        let rhs = p.norm().mul(&q.norm());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership() {
        let m = h4();
        let p = p0(&m);
        assert!(p.contains(&m.x_elem()));
        assert!(p.contains(&m.y_elem().unwrap().sub(&m.one_elem())));
        assert!(!p.contains(&m.one_elem()));
        assert!(!p.contains(&m.y_elem().unwrap()));
        let half = m.one_elem().div(&m.x_elem()).unwrap();
        assert!(!p.contains(&half));
        assert!(p.inverse().contains(&m.one_elem()));
    }

    #[test]
    fn zero_ideal_rejected() {
        let m = h4();
        assert_eq!(
            FracIdeal::from_generators(&m, &[m.zero_elem()]),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn torsion_representatives_rational() {
        let m = CurveModel::rational(3, 1).unwrap();
        let a = FracIdeal::unit(&m);
        let t = FracIdeal::principal(&m.x_elem()).unwrap();
        let reps = a.torsion_representatives(&t).unwrap();
        assert_eq!(reps.len(), 3);
        assert!(reps.iter().any(|r| r.is_zero()));
        // 1/T and 2/T
        let inv_t = m.one_elem().div(&m.x_elem()).unwrap();
        assert!(reps.contains(&inv_t));
        assert!(reps.contains(&inv_t.mul(&m.constant(2))));
        // modulus (1) gives {0}
        let only_zero = a.torsion_representatives(&FracIdeal::unit(&m)).unwrap();
        assert_eq!(only_zero.len(), 1);
        assert!(only_zero[0].is_zero());
    }

    #[test]
    fn torsion_representatives_quadratic_count() {
        let m = h4();
        let a = FracIdeal::unit(&m);
        for modulus in [
            FracIdeal::principal(&m.x_elem()).unwrap(),
            p0(&m),
            FracIdeal::principal(&m.y_elem().unwrap()).unwrap(),
        ] {
            let reps = a.torsion_representatives(&modulus).unwrap();
            let expected = 3u64.pow(modulus.norm_degree() as u32);
            assert_eq!(reps.len() as u64, expected);
            // all reps distinct modulo the ideal
            for (i, r) in reps.iter().enumerate() {
                for s in reps.iter().skip(i + 1) {
                    assert!(!a.contains(&r.sub(s)), "distinct residues");
                }
            }
        }
    }

    #[test]
    fn non_integral_modulus_rejected() {
        let m = h4();
        let a = FracIdeal::unit(&m);
        let frac = FracIdeal::principal(&m.one_elem().div(&m.x_elem()).unwrap()).unwrap();
        assert_eq!(a.torsion_representatives(&frac), Err(Error::ZeroModulus));
    }
}
