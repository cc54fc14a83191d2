//! Degree-graded spanning families of fractional ideals, strictly-increasing
//! degree bases (d_inf = 1), star representatives, and positive-element
//! enumeration.
//!
//! Every fractional ideal is a free F_q[x]-module on its HNF basis; the
//! family {x^i e} over the module basis elements e spans the F_q-vector
//! space of ideal elements of bounded degree, and an F_q-combination of
//! family members always has degree equal to the largest participating
//! member: the two numerator parts can never cancel leading terms (their
//! valuations differ in parity when d_inf = 1 and their leading coefficients
//! are F_q-independent when d_inf = 2). When d_inf = 1 degrees are distinct
//! across the whole family, which yields the strictly-increasing basis; when
//! d_inf = 2 the two module generators may collide in degree, so no such
//! basis exists (x^{g+1} and y already collide in A itself) and only the
//! family-based enumeration applies.

use crate::curve::FFElement;
use crate::error::{Error, Result};
use crate::ideal::FracIdeal;
use crate::sign::SignData;

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub elem: FFElement,
    pub degree: i64,
}

/// Degree-sorted spanning family of the elements of degree <= max_degree.
#[derive(Debug, Clone)]
pub struct IdealFamily {
    ideal: FracIdeal,
    members: Vec<FamilyMember>,
    max_degree: i64,
}

impl IdealFamily {
    pub fn new(ideal: &FracIdeal, max_degree: i64) -> Self {
        let model = ideal.model();
        let x = model.x_elem();
        let xdeg = model.x_degree();
        let mut members = vec![];
        for e in ideal.reduced_basis() {
            let d0 = e.degree().expect("basis element nonzero");
            let mut cur = e;
            let mut d = d0;
            while d <= max_degree {
                members.push(FamilyMember {
                    elem: cur.clone(),
                    degree: d,
                });
                cur = cur.mul(&x);
                d += xdeg;
            }
        }
        members.sort_by_key(|m| m.degree);
        IdealFamily {
            ideal: ideal.clone(),
            members,
            max_degree,
        }
    }

    pub fn ideal(&self) -> &FracIdeal {
        &self.ideal
    }
    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }
    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    /// The smallest degree of a nonzero ideal element.
    pub fn min_degree(&self) -> i64 {
        self.members.first().expect("nonzero ideal").degree
    }

    /// Degrees realized by family members, ascending and deduplicated.
    pub fn realized_degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.members.iter().map(|m| m.degree).collect();
        d.dedup();
        d
    }

    /// Members of degree exactly d (the top tier) and strictly below (lower).
    pub fn split_at_degree(&self, d: i64) -> (Vec<&FamilyMember>, Vec<&FamilyMember>) {
        let tier = self.members.iter().filter(|m| m.degree == d).collect();
        let lower = self.members.iter().filter(|m| m.degree < d).collect();
        (tier, lower)
    }

    /// Positive top-tier combinations at degree d: every combination of the
    /// tier members whose sign lies in S. Exactly one per F_q^x-ray.
    pub fn positive_directions(&self, sign: &SignData, d: i64) -> Vec<FFElement> {
        let (tier, _) = self.split_at_degree(d);
        if tier.is_empty() {
            return vec![];
        }
        let model = self.ideal.model();
        let base = model.base_field();
        let q = base.order();
        let count = q.pow(tier.len() as u32);
        let mut out = vec![];
        for idx in 1..count {
            let mut combo = model.zero_elem();
            let mut k = idx;
            for m in &tier {
                let c = base.elem_by_index(k % q);
                k /= q;
                if !c.is_zero() {
                    combo = combo.add(&m.elem.mul(&model.from_poly(crate::poly::Poly::constant(c))));
                }
            }
            if combo.is_zero() {
                continue;
            }
            debug_assert_eq!(combo.degree().unwrap(), d);
            if sign.is_positive(&combo).unwrap_or(false) {
                out.push(combo);
            }
        }
        out
    }

    /// All positive elements of degree exactly d, materialized as elements.
    /// Exponential in the family size; meant for desk-scale checks.
    pub fn positive_elements_at(&self, sign: &SignData, d: i64) -> Vec<FFElement> {
        let tops = self.positive_directions(sign, d);
        if tops.is_empty() {
            return vec![];
        }
        let (_, lower) = self.split_at_degree(d);
        let model = self.ideal.model();
        let base = model.base_field();
        let q = base.order();
        let combos = q.pow(lower.len() as u32);
        let mut out = vec![];
        for top in tops {
            for idx in 0..combos {
                let mut e = top.clone();
                let mut k = idx;
                for m in &lower {
                    let c = base.elem_by_index(k % q);
                    k /= q;
                    if !c.is_zero() {
                        e = e.add(&m.elem.mul(&model.from_poly(crate::poly::Poly::constant(c))));
                    }
                }
                out.push(e);
            }
        }
        out
    }

    pub fn positive_elements_upto(&self, sign: &SignData, max_degree: i64) -> Vec<FFElement> {
        let mut out = vec![];
        for d in self.realized_degrees() {
            if d > max_degree {
                break;
            }
            out.extend(self.positive_elements_at(sign, d));
        }
        out
    }
}

/// The positive element of smallest degree (unique when d_inf = 1; the
/// first positive direction in enumeration order otherwise).
pub fn minimal_positive(ideal: &FracIdeal, sign: &SignData) -> FFElement {
    let fam = IdealFamily::new(ideal, ideal_min_degree(ideal));
    let d = fam.min_degree();
    fam.positive_directions(sign, d)
        .into_iter()
        .next()
        .expect("every degree tier has a positive direction")
}

fn ideal_min_degree(ideal: &FracIdeal) -> i64 {
    ideal
        .reduced_basis()
        .iter()
        .map(|e| e.degree().expect("nonzero"))
        .min()
        .expect("nonzero ideal")
}

/// A strictly-increasing-degree positive basis of the ideal elements of
/// degree <= bound. Exists exactly when d_inf = 1.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    ideal: FracIdeal,
    sign: SignData,
    elems: Vec<FFElement>,
    degrees: Vec<i64>,
}

impl DegreeBasis {
    pub fn new(ideal: &FracIdeal, sign: &SignData, bound: i64) -> Result<Self> {
        let model = ideal.model();
        if model.d_inf() != 1 {
            return Err(Error::UnsupportedInfinitePlace(model.d_inf()));
        }
        let fam = IdealFamily::new(ideal, bound);
        let mut elems = vec![];
        let mut degrees = vec![];
        for m in fam.members() {
            if degrees.last() == Some(&m.degree) {
                return Err(Error::UnsupportedInfinitePlace(model.d_inf()));
            }
            // scale positive: sgn(c^{-1} m) = s in S for sgn(m) = c s
            let (c, _s) = sign.decompose(&m.elem.sgn()?)?;
            let scaled = m
                .elem
                .mul(&model.from_poly(crate::poly::Poly::constant(c.inv()?)));
            debug_assert!(sign.is_positive(&scaled)?);
            elems.push(scaled);
            degrees.push(m.degree);
        }
        Ok(DegreeBasis {
            ideal: ideal.clone(),
            sign: sign.clone(),
            elems,
            degrees,
        })
    }

    pub fn ideal(&self) -> &FracIdeal {
        &self.ideal
    }
    pub fn sign(&self) -> &SignData {
        &self.sign
    }
    pub fn elems(&self) -> &[FFElement] {
        &self.elems
    }
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// The representative a* = g^{-1} a with g the minimal-degree positive
/// element, together with its degree basis (alpha_0 = 1, alpha_1, ...).
pub fn star_representative(
    ideal: &FracIdeal,
    sign: &SignData,
    basis_bound: i64,
) -> Result<(FracIdeal, DegreeBasis)> {
    let model = ideal.model();
    if model.d_inf() != 1 {
        return Err(Error::UnsupportedInfinitePlace(model.d_inf()));
    }
    let g = minimal_positive(ideal, sign);
    let star = ideal.scale(&g.inv()?)?;
    let basis = DegreeBasis::new(&star, sign, basis_bound)?;
    debug_assert!(basis.elems()[0].is_one());
    Ok((star, basis))
}

/// Positive ideal elements of degree <= max_degree, grouped by the degree
/// blocks of the basis: the block at deg(a_i) is a_i + <a_0..a_{i-1}>_{F_q},
/// of size q^i.
pub fn positive_elements(basis: &DegreeBasis, max_degree: i64) -> Vec<FFElement> {
    let model = basis.ideal().model();
    let base = model.base_field();
    let q = base.order();
    let mut out = vec![];
    for (i, top) in basis.elems().iter().enumerate() {
        if basis.degrees()[i] > max_degree {
            break;
        }
        let combos = q.pow(i as u32);
        for idx in 0..combos {
            let mut e = top.clone();
            let mut k = idx;
            for lower in basis.elems().iter().take(i) {
                let c = base.elem_by_index(k % q);
                k /= q;
                if !c.is_zero() {
                    e = e.add(&lower.mul(&model.from_poly(crate::poly::Poly::constant(c))));
                }
            }
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveModel;
    use crate::poly::Poly;

    fn h4() -> CurveModel {
        CurveModel::quadratic(3, 1, &[], &[1, 1, 0, 1]).unwrap()
    }

    fn p0(m: &CurveModel) -> FracIdeal {
        FracIdeal::from_generators(
            m,
            &[m.x_elem(), m.y_elem().unwrap().sub(&m.one_elem())],
        )
        .unwrap()
    }

    #[test]
    fn monic_enumeration_rational() {
        let m = CurveModel::rational(3, 1).unwrap();
        let s = SignData::standard(&m);
        let fam = IdealFamily::new(&FracIdeal::unit(&m), 3);
        // degree <= 1: {1, T, T+1, T+2}
        let elems = fam.positive_elements_upto(&s, 1);
        assert_eq!(elems.len(), 4);
        assert!(elems.iter().all(|e| e.sgn().unwrap().is_one()));
        // block sizes 3^d
        for d in 0..=3 {
            assert_eq!(fam.positive_elements_at(&s, d).len() as u64, 3u64.pow(d as u32));
        }
    }

    #[test]
    fn star_representative_of_fixture_prime() {
        let m = h4();
        let s = SignData::standard(&m);
        let p = p0(&m);
        let g = minimal_positive(&p, &s);
        assert_eq!(g, m.x_elem(), "degree-2 minimal positive element");
        let (star, basis) = star_representative(&p, &s, 8).unwrap();
        assert!(star.contains(&m.one_elem()));
        assert!(basis.elems()[0].is_one());
        // alpha_1 = (y+2)/x with degree 1
        let alpha1 = &basis.elems()[1];
        let expected = m
            .y_elem()
            .unwrap()
            .add(&m.constant(2))
            .div(&m.x_elem())
            .unwrap();
        assert_eq!(basis.degrees()[1], 1);
        assert_eq!(*alpha1, expected);
        // Lemma-style separation: deg alpha_1 = 1 differs from deg f_1 = 2
        let a_basis = DegreeBasis::new(&FracIdeal::unit(&m), &s, 8).unwrap();
        assert_eq!(a_basis.degrees()[1], 2); // f_1 = x
        assert_ne!(basis.degrees()[1], a_basis.degrees()[1]);
    }

    #[test]
    fn basis_degrees_strictly_increase_then_step_one() {
        let m = h4();
        let s = SignData::standard(&m);
        let basis = DegreeBasis::new(&FracIdeal::unit(&m), &s, 12).unwrap();
        let d = basis.degrees();
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        // Weierstrass: eventually consecutive (gap only below 2g-1)
        let tail = &d[2..];
        assert!(tail.windows(2).all(|w| w[1] == w[0] + 1));
        assert_eq!(d[0], 0);
        assert_eq!(d[1], 2); // genus-1 gap at degree 1
    }

    #[test]
    fn no_degree_basis_for_inert_models() {
        let m = CurveModel::quadratic(3, 1, &[], &[1, 0, 0, 0, 2]).unwrap();
        let s = SignData::standard(&m);
        let err = DegreeBasis::new(&FracIdeal::unit(&m), &s, 8).unwrap_err();
        assert_eq!(err, Error::UnsupportedInfinitePlace(2));
        // but the family enumeration still works: degree-4 tier is 2-dim
        let fam = IdealFamily::new(&FracIdeal::unit(&m), 6);
        let (tier, _) = fam.split_at_degree(4);
        assert_eq!(tier.len(), 2); // x^2 and y
        // positives at degree 4: (q+1) directions * q^lower
        let pos = fam.positive_elements_at(&s, 4);
        let (_, lower) = fam.split_at_degree(4);
        assert_eq!(pos.len() as u64, 4 * 3u64.pow(lower.len() as u32));
        for e in pos.iter().take(12) {
            assert!(s.is_positive(e).unwrap());
            assert_eq!(e.degree().unwrap(), 4);
        }
    }

    #[test]
    fn positive_blocks_match_family_enumeration() {
        let m = h4();
        let s = SignData::standard(&m);
        let star = p0(&m).scale(&m.x_elem().inv().unwrap()).unwrap();
        let basis = DegreeBasis::new(&star, &s, 5).unwrap();
        let via_blocks = positive_elements(&basis, 4);
        let fam = IdealFamily::new(&star, 5);
        let via_family = fam.positive_elements_upto(&s, 4);
        assert_eq!(via_blocks.len(), via_family.len());
        for e in &via_blocks {
            assert!(via_family.contains(e));
            assert!(s.is_positive(e).unwrap());
        }
        // degree-0 block of the star representative is {1}
        assert!(via_blocks[0].is_one());
    }

    #[test]
    fn disjoint_union_by_sign_classes() {
        // every nonzero x in the ideal is c*s-positive for a unique (c, s)
        let m = CurveModel::quadratic(3, 1, &[], &[1, 0, 0, 0, 2]).unwrap();
        let s = SignData::standard(&m);
        let fam = IdealFamily::new(&FracIdeal::unit(&m), 4);
        for d in fam.realized_degrees() {
            for top in fam.positive_directions(&s, d) {
                let (c, rep) = s.decompose(&top.sgn().unwrap()).unwrap();
                assert!(c.is_one(), "positive elements decompose with c = 1");
                assert!(s.contains(&rep));
            }
        }
    }

    #[test]
    fn family_spans_scaled_ideals() {
        let m = h4();
        let s = SignData::standard(&m);
        // (alpha) * p0 for a sign-changing alpha: enumeration still stratifies
        let alpha = m.from_poly(Poly::from_ints(&m.base_field(), &[1, 2]));
        let scaled = p0(&m).scale(&alpha).unwrap();
        let fam = IdealFamily::new(&scaled, 9);
        let counts: Vec<usize> = fam
            .realized_degrees()
            .iter()
            .map(|&d| fam.positive_elements_at(&s, d).len())
            .collect();
        // q^0, q^1, ... pattern by block index
        for (i, c) in counts.iter().enumerate() {
            assert_eq!(*c as u64, 3u64.pow(i as u32));
        }
    }
}
