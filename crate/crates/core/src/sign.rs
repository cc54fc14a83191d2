//! Sign representatives and positivity.
//!
//! sgn maps a nonzero element of the completion to its leading Laurent
//! coefficient in F_inf. A set S of coset representatives of
//! F_inf^x / F_q^x (with 1 in S by default) declares an element positive
//! when its sign lies in S. Partial zeta sums run over positive elements.

use crate::curve::{CurveModel, FFElement};
use crate::error::{Error, Result};
use crate::fq::FqElem;
use crate::laurent::LaurentSeries;

/// A choice of sign representatives for F_inf^x / F_q^x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignData {
    model: CurveModel,
    /// One representative per coset; the trivial coset is represented by 1
    /// in the default set.
    reps: Vec<FqElem>,
}

impl SignData {
    /// The deterministic default: the lexicographically smallest element of
    /// each coset, with 1 representing the coset of the constants.
    pub fn standard(model: &CurveModel) -> Self {
        let inf = model.inf_field();
        let base_units: Vec<FqElem> = model
            .base_field()
            .elements()
            .skip(1)
            .map(|c| model.inf_embedding().apply(&c))
            .collect();
        let mut reps: Vec<FqElem> = vec![];
        let mut seen = std::collections::HashSet::new();
        for e in inf.elements().skip(1) {
            if seen.contains(&e.index()) {
                continue;
            }
            let coset: Vec<FqElem> = base_units.iter().map(|c| c.mul(&e)).collect();
            for x in &coset {
                seen.insert(x.index());
            }
            let rep = if coset.iter().any(|x| x.is_one()) {
                inf.one()
            } else {
                coset
                    .iter()
                    .min_by_key(|x| x.index())
                    .expect("nonempty coset")
                    .clone()
            };
            reps.push(rep);
        }
        reps.sort_by_key(|x| x.index());
        SignData {
            model: model.clone(),
            reps,
        }
    }

    /// A variant set: representative i is scaled by scalars[i mod len]
    /// (nonzero constants of F_q). Used to verify that zeta values do not
    /// depend on the choice of S.
    pub fn scaled(&self, scalars: &[i64]) -> Self {
        assert!(!scalars.is_empty());
        let base = self.model.base_field();
        let reps = self
            .reps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let c = base.from_int(scalars[i % scalars.len()]);
                assert!(!c.is_zero(), "scalar must be a unit");
                self.model.inf_embedding().apply(&c).mul(s)
            })
            .collect();
        SignData {
            model: self.model.clone(),
            reps,
        }
    }

    pub fn model(&self) -> CurveModel {
        self.model.clone()
    }

    pub fn reps(&self) -> &[FqElem] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn contains(&self, s: &FqElem) -> bool {
        self.reps.contains(s)
    }

    /// The unique decomposition sgn = c * s with c in F_q^x and s in S.
    /// Returns c as an element of the base field F_q (pre-embedding).
    pub fn decompose(&self, sgn: &FqElem) -> Result<(FqElem, FqElem)> {
        if sgn.is_zero() {
            return Err(Error::ZeroElement);
        }
        let base = self.model.base_field();
        for c in base.elements().skip(1) {
            let ci = self.model.inf_embedding().apply(&c);
            let s = sgn.mul(&ci.inv()?);
            if self.contains(&s) {
                return Ok((c, s));
            }
        }
        unreachable!("S represents every coset")
    }

    pub fn is_positive_sgn(&self, sgn: &FqElem) -> bool {
        self.contains(sgn)
    }

    pub fn is_positive(&self, a: &FFElement) -> Result<bool> {
        Ok(self.contains(&a.sgn()?))
    }

    pub fn is_positive_series(&self, s: &LaurentSeries) -> Result<bool> {
        Ok(self.contains(&s.leading()?))
    }
}

/// Leading Laurent coefficient of a nonzero element.
pub fn sgn_of(a: &FFElement) -> Result<FqElem> {
    a.sgn()
}

pub fn sgn_of_series(s: &LaurentSeries) -> Result<FqElem> {
    s.leading()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveModel;

    #[test]
    fn rational_signs_are_trivial() {
        let m = CurveModel::rational(3, 1).unwrap();
        let s = SignData::standard(&m);
        assert_eq!(s.len(), 1);
        assert!(s.reps()[0].is_one());
        // positives are exactly the monic-leading elements
        let t = m.x_elem();
        assert!(s.is_positive(&t).unwrap());
        assert!(!s.is_positive(&t.neg()).unwrap());
    }

    #[test]
    fn inert_has_four_cosets() {
        let m = CurveModel::quadratic(3, 1, &[], &[1, 0, 0, 0, 2]).unwrap();
        let s = SignData::standard(&m);
        assert_eq!(s.len(), 4); // (9-1)/(3-1)
        assert!(s.contains(&m.inf_field().one()));
        // every unit decomposes uniquely as c*s
        for e in m.inf_field().elements().skip(1) {
            let (c, rep) = s.decompose(&e).unwrap();
            let ci = m.inf_embedding().apply(&c);
            assert_eq!(ci.mul(&rep), e);
            let mut count = 0;
            for c2 in m.base_field().elements().skip(1) {
                let ci = m.inf_embedding().apply(&c2);
                if s.contains(&ci.mul(&e)) {
                    count += 1;
                }
            }
            assert_eq!(count, 1, "exactly one scaling lands in S");
        }
    }

    #[test]
    fn scaled_variant_changes_reps() {
        let m = CurveModel::quadratic(3, 1, &[], &[1, 0, 0, 0, 2]).unwrap();
        let s = SignData::standard(&m);
        let s2 = s.scaled(&[2]);
        assert_ne!(s.reps(), s2.reps());
        assert_eq!(s2.len(), 4);
    }

    #[test]
    fn positivity_stable_under_lower_degree_additions() {
        // adding an element of lower degree does not change the sign
        let m = CurveModel::quadratic(3, 1, &[], &[1, 1, 0, 1]).unwrap();
        let s = SignData::standard(&m);
        let y = m.y_elem().unwrap();
        let samples = [
            y.clone(),
            y.add(&m.constant(2)),
            y.add(&m.x_elem()),
            y.add(&m.x_elem().mul(&m.constant(2)).add(&m.constant(1))),
        ];
        let base_sign = s.is_positive(&samples[0]).unwrap();
        for a in &samples[1..] {
            assert_eq!(s.is_positive(a).unwrap(), base_sign);
        }
    }
}
