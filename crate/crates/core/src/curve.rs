//! Curve models for the coordinate ring A and elements of K = Frac(A).
//!
//! Two model kinds are supported, both with a single place above infinity:
//! - rational: A = F_q[x] (displayed with variable T);
//! - quadratic: A = F_q[x, y]/(y^2 + h(x) y - f(x)), either ramified at
//!   infinity (d_inf = 1) or inert (d_inf = 2, constants extended to F_{q^2}).
//!
//! The infinite place is analyzed through the completed square
//! Y^2 = F(x) := f + h^2/4 (char is odd). Uniformizer: 1/x for the rational
//! and inert models, x^g / Y for the ramified quadratic model.

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqEmbedding, FqField};
use crate::laurent::LaurentSeries;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::{Arc, RwLock};

/// Structured curve description, the CLI file format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSpec {
    pub p: u64,
    pub m: usize,
    pub model: ModelSpec,
    #[serde(default)]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelSpec {
    Rational,
    Quadratic {
        /// Coefficients of h, lowest degree first.
        #[serde(default)]
        h: Vec<i64>,
        /// Coefficients of f, lowest degree first.
        f: Vec<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveKind {
    Rational,
    Quadratic { h: Poly, f: Poly },
}

#[derive(Debug)]
struct ExpCache {
    prec: i64,
    x: LaurentSeries,
    /// Expansion of the model's y (None for the rational model).
    y: Option<LaurentSeries>,
}

#[derive(Debug)]
struct ModelInner {
    base: FqField,
    kind: CurveKind,
    label: String,
    genus: i64,
    d_inf: u32,
    f_inf: FqField,
    base_to_inf: FqEmbedding,
    /// Completed square F = f + h^2/4 (quadratic models).
    sq_f: Option<Poly>,
    /// sgn of x, i.e. the leading Laurent coefficient of its expansion.
    sgn_x: FqElem,
    /// sgn of y (quadratic models).
    sgn_y: Option<FqElem>,
    cache: RwLock<Option<ExpCache>>,
}

/// A validated curve model; cheap to clone and safe to share across threads.
#[derive(Debug, Clone)]
pub struct CurveModel(Arc<ModelInner>);

impl PartialEq for CurveModel {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.kind == other.0.kind)
    }
}
impl Eq for CurveModel {}

impl CurveModel {
    pub fn rational(p: u64, m: usize) -> Result<Self> {
        Self::from_spec(&CurveSpec {
            p,
            m,
            model: ModelSpec::Rational,
            label: None,
        })
    }

    pub fn quadratic(p: u64, m: usize, h: &[i64], f: &[i64]) -> Result<Self> {
        Self::from_spec(&CurveSpec {
            p,
            m,
            model: ModelSpec::Quadratic {
                h: h.to_vec(),
                f: f.to_vec(),
            },
            label: None,
        })
    }

    pub fn from_spec(spec: &CurveSpec) -> Result<Self> {
        let base = FqField::extension(spec.p, spec.m)?;
        match &spec.model {
            ModelSpec::Rational => {
                let f_inf = base.clone();
                let base_to_inf = base.embedding(&f_inf)?;
                Ok(CurveModel(Arc::new(ModelInner {
                    base: base.clone(),
                    kind: CurveKind::Rational,
                    label: spec.label.clone().unwrap_or_else(|| "rational".into()),
                    genus: 0,
                    d_inf: 1,
                    f_inf,
                    base_to_inf,
                    sq_f: None,
                    sgn_x: base.one(),
                    sgn_y: None,
                    cache: RwLock::new(None),
                })))
            }
            ModelSpec::Quadratic { h, f } => {
                let h = Poly::from_ints(&base, h);
                let f = Poly::from_ints(&base, f);
                // completed square: F = f + h^2/4
                let quarter = base.from_int(4).inv()?;
                let sq_f = f.add(&h.mul(&h).scale(&quarter));
                if sq_f.deg() < 1 {
                    return Err(Error::SingularCurve(
                        "f + h^2/4 must have positive degree".into(),
                    ));
                }
                if sq_f.gcd(&sq_f.derivative()).deg() != 0 {
                    return Err(Error::SingularCurve(format!(
                        "f + h^2/4 = {sq_f} is not squarefree"
                    )));
                }
                let df = sq_f.deg();
                let (d_inf, genus) = if df % 2 == 1 {
                    (1u32, (df - 1) / 2)
                } else {
                    if sq_f.lc().sqrt().is_some() {
                        return Err(Error::SplitInfinity(format!(
                            "deg F = {df} even with square leading coefficient {}",
                            sq_f.lc()
                        )));
                    }
                    (2u32, df / 2 - 1)
                };
                let f_inf = if d_inf == 1 {
                    base.clone()
                } else {
                    FqField::extension(spec.p, 2 * spec.m)?
                };
                let base_to_inf = base.embedding(&f_inf)?;
                // sgn(x): leading coefficient of the x-expansion.
                // Ramified (u = x^g/Y): x = 1/W with W = lc(F) u^2 + ..., so
                // sgn(x) = lc(F)^{-1}. Inert (u = 1/x): sgn(x) = 1.
                let (sgn_x, sgn_y) = if d_inf == 1 {
                    let lcf = sq_f.lc();
                    let sx = lcf.inv()?;
                    // Y = x^g / u: sgn(Y) = sgn(x)^g; y = Y - h(x)/2 has the
                    // same leading term (v(h) > v(Y) is implied by ramified).
                    let sy = sx.pow(genus)?;
                    (sx, Some(sy))
                } else {
                    let lc_inf = base_to_inf.apply(&sq_f.lc());
                    let s = lc_inf
                        .sqrt()
                        .expect("non-square in F_q becomes a square in F_{q^2}");
                    (f_inf.one(), Some(s))
                };
                let model = CurveModel(Arc::new(ModelInner {
                    base,
                    kind: CurveKind::Quadratic { h, f },
                    label: spec.label.clone().unwrap_or_else(|| "quadratic".into()),
                    genus,
                    d_inf,
                    f_inf,
                    base_to_inf,
                    sq_f: Some(sq_f),
                    sgn_x,
                    sgn_y,
                    cache: RwLock::new(None),
                }));
                // the ramified case additionally requires v(y) = -(2g+1);
                // equivalently deg h <= g after completing the square
                if d_inf == 1 {
                    if let CurveKind::Quadratic { h, .. } = model.kind() {
                        if h.deg() > genus {
                            return Err(Error::SingularCurve(format!(
                                "deg h = {} exceeds the genus {genus}; model not ramified-normal",
                                h.deg()
                            )));
                        }
                    }
                }
                Ok(model)
            }
        }
    }

    pub fn base_field(&self) -> FqField {
        self.0.base.clone()
    }
    /// q, the order of the constant field of A.
    pub fn q(&self) -> u64 {
        self.0.base.order()
    }
    pub fn kind(&self) -> &CurveKind {
        &self.0.kind
    }
    pub fn is_rational(&self) -> bool {
        matches!(self.0.kind, CurveKind::Rational)
    }
    pub fn label(&self) -> &str {
        &self.0.label
    }
    pub fn genus(&self) -> i64 {
        self.0.genus
    }
    pub fn d_inf(&self) -> u32 {
        self.0.d_inf
    }
    /// The residue field at infinity, F_{q^{d_inf}}.
    pub fn inf_field(&self) -> FqField {
        self.0.f_inf.clone()
    }
    pub fn inf_embedding(&self) -> &FqEmbedding {
        &self.0.base_to_inf
    }
    /// Completed-square polynomial F = f + h^2/4 (quadratic models only).
    pub fn completed_square(&self) -> Option<&Poly> {
        self.0.sq_f.as_ref()
    }
    pub fn sgn_x(&self) -> FqElem {
        self.0.sgn_x.clone()
    }
    pub fn sgn_y(&self) -> Option<FqElem> {
        self.0.sgn_y.clone()
    }
    /// Display variable for the coordinate x.
    pub fn var(&self) -> &'static str {
        if self.is_rational() {
            "T"
        } else {
            "x"
        }
    }
    /// Degree of the element x of K, i.e. [K : F_q(x)].
    pub fn x_degree(&self) -> i64 {
        if self.is_rational() {
            1
        } else {
            2
        }
    }
    /// A short description of the uniformizer at infinity.
    pub fn uniformizer_recipe(&self) -> String {
        match (&self.0.kind, self.0.d_inf) {
            (CurveKind::Rational, _) => "u = 1/T".into(),
            (CurveKind::Quadratic { h, .. }, 1) if h.is_zero() => {
                format!("u = x^{}/y", self.0.genus)
            }
            (CurveKind::Quadratic { .. }, 1) => {
                format!("u = x^{}/(y + h/2)", self.0.genus)
            }
            _ => "u = 1/x (constants extended to F_q^2)".into(),
        }
    }

    // --- elements ---

    pub fn zero_elem(&self) -> FFElement {
        FFElement {
            model: self.clone(),
            u: Poly::zero(&self.0.base),
            v: Poly::zero(&self.0.base),
            den: Poly::one(&self.0.base),
        }
    }

    pub fn one_elem(&self) -> FFElement {
        self.from_poly(Poly::one(&self.0.base))
    }

    pub fn constant(&self, n: i64) -> FFElement {
        self.from_poly(Poly::constant(self.0.base.from_int(n)))
    }

    pub fn x_elem(&self) -> FFElement {
        self.from_poly(Poly::x(&self.0.base))
    }

    pub fn y_elem(&self) -> Option<FFElement> {
        match self.0.kind {
            CurveKind::Rational => None,
            CurveKind::Quadratic { .. } => Some(FFElement {
                model: self.clone(),
                u: Poly::zero(&self.0.base),
                v: Poly::one(&self.0.base),
                den: Poly::one(&self.0.base),
            }),
        }
    }

    pub fn from_poly(&self, u: Poly) -> FFElement {
        FFElement {
            model: self.clone(),
            u,
            v: Poly::zero(&self.0.base),
            den: Poly::one(&self.0.base),
        }
    }

    /// Element (u + v y) / den, normalized.
    pub fn element(&self, u: Poly, v: Poly, den: Poly) -> Result<FFElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() && !v.is_zero() {
            return Err(Error::Parse("rational model has no y".into()));
        }
        let mut e = FFElement {
            model: self.clone(),
            u,
            v,
            den,
        };
        e.normalize();
        Ok(e)
    }

    // --- expansion at infinity ---

    /// Uniformizer expansions of x and y (y absent for the rational model),
    /// both with absolute precision at least `prec`.
    fn series_at(&self, prec: i64) -> Result<(LaurentSeries, Option<LaurentSeries>)> {
        {
            let guard = self.0.cache.read().expect("cache lock");
            if let Some(c) = guard.as_ref() {
                if c.prec >= prec {
                    return Ok((
                        c.x.truncate(prec),
                        c.y.as_ref().map(|y| y.truncate(prec)),
                    ));
                }
            }
        }
        let store_prec = prec + 16;
        let (x, y) = self.compute_series(store_prec)?;
        let mut guard = self.0.cache.write().expect("cache lock");
        *guard = Some(ExpCache {
            prec: store_prec,
            x: x.clone(),
            y: y.clone(),
        });
        Ok((x.truncate(prec), y.map(|s| s.truncate(prec))))
    }

    fn compute_series(&self, prec: i64) -> Result<(LaurentSeries, Option<LaurentSeries>)> {
        let inf = &self.0.f_inf;
        match &self.0.kind {
            CurveKind::Rational => Ok((
                LaurentSeries::monomial(inf.one(), -1, prec),
                None,
            )),
            CurveKind::Quadratic { h, .. } => {
                let sq_f = self.0.sq_f.as_ref().expect("quadratic model");
                let g = self.0.genus;
                let (x, yy) = if self.0.d_inf == 1 {
                    // Solve W = u^2 Fstar(W) for W = 1/x, Fstar the reversal of F.
                    let dfs = sq_f.deg() as usize;
                    let fstar: Vec<FqElem> = (0..=dfs)
                        .map(|i| self.0.base_to_inf.apply(&sq_f.coeff(dfs - i)))
                        .collect();
                    let fstar = Poly::from_coeffs(inf, fstar);
                    let target = prec + 4 + 2 * g;
                    let u2 = LaurentSeries::monomial(inf.one(), 2, target + 4);
                    let mut w = LaurentSeries::zero(inf, target);
                    let iters = (64 - (target.max(2) as u64).leading_zeros()) as usize + 2;
                    for _ in 0..iters {
                        let fw = eval_series(&fstar, &w, inf);
                        let resid = w.sub(&u2.mul(&fw));
                        if resid.is_zero() {
                            break;
                        }
                        let dfw = eval_series(&fstar.derivative(), &w, inf);
                        let gderiv = LaurentSeries::one(inf, target).sub(&u2.mul(&dfw));
                        let upd = resid.div(&gderiv)?;
                        w = w.sub(&upd).with_prec_claimed(target);
                    }
                    let resid = w.sub(&u2.mul(&eval_series(&fstar, &w, inf)));
                    let cert = if resid.is_zero() {
                        resid.prec()
                    } else {
                        resid.val()?
                    };
                    let w = w.truncate(cert);
                    let x = w.inv()?;
                    // Y = x^g * u^{-1}
                    let yy = x.pow(g)?.shift(-1);
                    (x, yy)
                } else {
                    let x = LaurentSeries::monomial(inf.one(), -1, prec + 4 + 2 * g);
                    let fx = self.eval_at_series(sq_f, &x);
                    let yy = fx.nth_root(2)?;
                    (x, yy)
                };
                // y = Y - h(x)/2
                let y = if h.is_zero() {
                    yy
                } else {
                    let half = inf.from_int(2).inv()?;
                    let hx = self.eval_at_series(h, &x).scalar_mul(&half);
                    yy.sub(&hx)
                };
                Ok((x.truncate(prec), Some(y.truncate(prec))))
            }
        }
    }

    /// Evaluate a polynomial over F_q at a Laurent series, embedding the
    /// coefficients into the constant field at infinity.
    pub(crate) fn eval_at_series(&self, p: &Poly, s: &LaurentSeries) -> LaurentSeries {
        let embedded: Vec<FqElem> = p
            .coeffs()
            .iter()
            .map(|c| self.0.base_to_inf.apply(c))
            .collect();
        let inf = &self.0.f_inf;
        let ep = Poly::from_coeffs(inf, embedded);
        eval_series(&ep, s, inf)
    }

    /// Laurent expansion at infinity with absolute precision `prec`.
    pub fn embed(&self, a: &FFElement, prec: i64) -> Result<LaurentSeries> {
        if prec < 1 {
            return Err(Error::PrecisionTooLow(prec));
        }
        assert!(a.model == *self, "element from another model");
        if a.is_zero() {
            return Ok(LaurentSeries::zero(&self.0.f_inf, prec));
        }
        let weight = self.x_degree() / self.0.d_inf as i64; // |v(x)| in u-units
        let margin =
            weight * (a.u.deg().max(0) + a.v.deg().max(0) + 2 * a.den.deg().max(0) + self.0.genus + 3) + 8;
        let work = prec + margin - a.val()?.min(0);
        let (x, y) = self.series_at(work)?;
        let mut num = self.eval_at_series(&a.u, &x);
        if !a.v.is_zero() {
            let y = y.expect("quadratic model");
            num = num.add(&self.eval_at_series(&a.v, &x).mul(&y));
        }
        let den = self.eval_at_series(&a.den, &x);
        let out = num.div(&den)?;
        if out.prec() < prec {
            return Err(Error::PrecisionLoss(format!(
                "embedding reached {} of requested {prec} digits",
                out.prec()
            )));
        }
        Ok(out.truncate(prec))
    }
}

fn eval_series(p: &Poly, s: &LaurentSeries, field: &FqField) -> LaurentSeries {
    // Horner; the accumulator precision follows the tracked rules.
    let hi = if s.is_zero() { s.prec() } else { s.prec().max(1) };
    let mut acc = LaurentSeries::zero(field, hi + s.prec().abs() + 4);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(s);
        acc = acc.add(&LaurentSeries::monomial(c.clone(), 0, acc.prec().max(1)));
    }
    acc
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            CurveKind::Rational => write!(f, "A = {}[T]", self.0.base),
            CurveKind::Quadratic { h, f: ff } => {
                if h.is_zero() {
                    write!(
                        f,
                        "A = {}[x,y]/(y^2 - ({}))",
                        self.0.base,
                        ff.fmt_with_var("x")
                    )
                } else {
                    write!(
                        f,
                        "A = {}[x,y]/(y^2 + ({})y - ({}))",
                        self.0.base,
                        h.fmt_with_var("x"),
                        ff.fmt_with_var("x")
                    )
                }
            }
        }
    }
}

/// An element (u(x) + v(x) y) / den(x) of K, in canonical form: den monic and
/// coprime to the joint content of u and v.
#[derive(Debug, Clone)]
pub struct FFElement {
    model: CurveModel,
    u: Poly,
    v: Poly,
    den: Poly,
}

impl PartialEq for FFElement {
    fn eq(&self, other: &Self) -> bool {
        self.model == other.model && self.u == other.u && self.v == other.v && self.den == other.den
    }
}
impl Eq for FFElement {}

impl FFElement {
    pub fn model(&self) -> CurveModel {
        self.model.clone()
    }
    pub fn u_part(&self) -> &Poly {
        &self.u
    }
    pub fn v_part(&self) -> &Poly {
        &self.v
    }
    pub fn den_part(&self) -> &Poly {
        &self.den
    }

    fn normalize(&mut self) {
        let g = self.u.gcd(&self.v).gcd(&self.den);
        if g.deg() > 0 {
            self.u = self.u.div_exact(&g).expect("content divides");
            self.v = self.v.div_exact(&g).expect("content divides");
            self.den = self.den.div_exact(&g).expect("content divides");
        }
        let lc_inv = self.den.lc().inv().expect("nonzero denominator");
        self.u = self.u.scale(&lc_inv);
        self.v = self.v.scale(&lc_inv);
        self.den = self.den.scale(&lc_inv);
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero() && self.den.is_one()
    }

    /// True when the element lies in A (no denominator).
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &FFElement) -> FFElement {
        assert!(self.model == other.model, "model mismatch");
        let u = self
            .u
            .mul(&other.den)
            .add(&other.u.mul(&self.den));
        let v = self
            .v
            .mul(&other.den)
            .add(&other.v.mul(&self.den));
        self.model
            .element(u, v, self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn sub(&self, other: &FFElement) -> FFElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FFElement {
        FFElement {
            model: self.model.clone(),
            u: self.u.neg(),
            v: self.v.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &FFElement) -> FFElement {
        assert!(self.model == other.model, "model mismatch");
        let (u, v) = match self.model.kind() {
            CurveKind::Rational => (self.u.mul(&other.u), Poly::zero(&self.u.field())),
            CurveKind::Quadratic { h, f } => {
                // (u1 + v1 y)(u2 + v2 y) with y^2 = f - h y
                let uu = self.u.mul(&other.u);
                let vv = self.v.mul(&other.v);
                let cross = self.u.mul(&other.v).add(&self.v.mul(&other.u));
                (uu.add(&vv.mul(f)), cross.sub(&vv.mul(h)))
            }
        };
        self.model
            .element(u, v, self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    /// Galois conjugate over F_q(x): y -> -h - y (identity for rational models).
    pub fn conj(&self) -> FFElement {
        match self.model.kind() {
            CurveKind::Rational => self.clone(),
            CurveKind::Quadratic { h, .. } => FFElement {
                model: self.model.clone(),
                u: self.u.sub(&self.v.mul(h)),
                v: self.v.neg(),
                den: self.den.clone(),
            },
        }
    }

    /// Norm to F_q(x): u^2 - u v h - v^2 f over den^2.
    pub fn norm(&self) -> RatFn {
        match self.model.kind() {
            CurveKind::Rational => {
                RatFn::new(self.u.clone(), self.den.clone()).expect("nonzero denominator")
            }
            CurveKind::Quadratic { h, f } => {
                let n = self
                    .u
                    .mul(&self.u)
                    .sub(&self.u.mul(&self.v).mul(h))
                    .sub(&self.v.mul(&self.v).mul(f));
                RatFn::new(n, self.den.mul(&self.den)).expect("nonzero denominator")
            }
        }
    }

    pub fn inv(&self) -> Result<FFElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.model.kind() {
            CurveKind::Rational => self
                .model
                .element(self.den.clone(), Poly::zero(&self.u.field()), self.u.clone()),
            CurveKind::Quadratic { h, f } => {
                // 1/e = den * conj(numerator) / N(numerator)
                let n = self
                    .u
                    .mul(&self.u)
                    .sub(&self.u.mul(&self.v).mul(h))
                    .sub(&self.v.mul(&self.v).mul(f));
                let cu = self.u.sub(&self.v.mul(h));
                let cv = self.v.neg();
                self.model
                    .element(self.den.mul(&cu), self.den.mul(&cv), n)
            }
        }
    }

    pub fn div(&self, other: &FFElement) -> Result<FFElement> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<FFElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut r = self.model.one_elem();
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

    /// Degree deg(a) = -d_inf * v(a); exact from the parts (the two halves of
    /// the numerator can never share a leading term: their valuations have
    /// different parity when d_inf = 1, and F_q-independent leading
    /// coefficients when d_inf = 2).
    pub fn degree(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let num_deg = self.numerator_degree();
        Ok(num_deg - self.model.x_degree() * self.den.deg())
    }

    fn numerator_degree(&self) -> i64 {
        match self.model.kind() {
            CurveKind::Rational => self.u.deg(),
            CurveKind::Quadratic { .. } => {
                let g = self.model.genus();
                let du = if self.u.is_zero() {
                    i64::MIN
                } else {
                    2 * self.u.deg()
                };
                let dv = if self.v.is_zero() {
                    i64::MIN
                } else if self.model.d_inf() == 1 {
                    2 * self.v.deg() + 2 * g + 1
                } else {
                    2 * self.v.deg() + 2 * (g + 1)
                };
                du.max(dv)
            }
        }
    }

    /// Valuation at infinity, v(a) = -deg(a)/d_inf.
    pub fn val(&self) -> Result<i64> {
        let d = self.degree()?;
        let di = self.model.d_inf() as i64;
        debug_assert_eq!(d % di, 0, "element degree must be divisible by d_inf");
        Ok(-d / di)
    }

    /// Leading Laurent coefficient at infinity, computed exactly from parts.
    pub fn sgn(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let m = &self.model;
        let emb = m.inf_embedding();
        let sx = m.sgn_x();
        let den_sgn = emb
            .apply(&self.den.lc())
            .mul(&sx.pow(self.den.deg())?);
        let num_sgn = match m.kind() {
            CurveKind::Rational => emb.apply(&self.u.lc()),
            CurveKind::Quadratic { .. } => {
                let g = m.genus();
                let sy = m.sgn_y().expect("quadratic model");
                let du = if self.u.is_zero() {
                    i64::MIN
                } else {
                    2 * self.u.deg()
                };
                let dv_off = if m.d_inf() == 1 { 2 * g + 1 } else { 2 * (g + 1) };
                let dv = if self.v.is_zero() {
                    i64::MIN
                } else {
                    2 * self.v.deg() + dv_off
                };
                let u_lead = || -> Result<FqElem> {
                    Ok(emb.apply(&self.u.lc()).mul(&sx.pow(self.u.deg())?))
                };
                let v_lead = || -> Result<FqElem> {
                    Ok(emb
                        .apply(&self.v.lc())
                        .mul(&sx.pow(self.v.deg())?)
                        .mul(&sy))
                };
                match du.cmp(&dv) {
                    std::cmp::Ordering::Greater => u_lead()?,
                    std::cmp::Ordering::Less => v_lead()?,
                    std::cmp::Ordering::Equal => u_lead()?.add(&v_lead()?),
                }
            }
        };
        num_sgn.div(&den_sgn)
    }
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.model.var();
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut num = String::new();
        if !self.u.is_zero() {
            num.push_str(&self.u.fmt_with_var(var));
        }
        if !self.v.is_zero() {
            if !num.is_empty() {
                num.push('+');
            }
            if self.v.is_one() {
                num.push('y');
            } else {
                num.push_str(&format!("({})*y", self.v.fmt_with_var(var)));
            }
        }
        if self.den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.den.fmt_with_var(var))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rational_f3() -> CurveModel {
        CurveModel::rational(3, 1).unwrap()
    }

    pub(crate) fn quad_h4() -> CurveModel {
        // y^2 = x^3 + x + 1 over F_3: ramified, genus 1
        CurveModel::quadratic(3, 1, &[], &[1, 1, 0, 1]).unwrap()
    }

    pub(crate) fn quad_inert() -> CurveModel {
        // y^2 = 2x^4 + 1 over F_3: inert (2 is a non-square), genus 1
        CurveModel::quadratic(3, 1, &[], &[1, 0, 0, 0, 2]).unwrap()
    }

    #[test]
    fn model_classification() {
        let r = rational_f3();
        assert_eq!((r.d_inf(), r.genus()), (1, 0));
        let e = quad_h4();
        assert_eq!((e.d_inf(), e.genus()), (1, 1));
        assert_eq!(e.inf_field(), FqField::prime(3).unwrap());
        let i = quad_inert();
        assert_eq!((i.d_inf(), i.genus()), (2, 1));
        assert_eq!(i.inf_field(), FqField::extension(3, 2).unwrap());
    }

    #[test]
    fn model_rejections() {
        // y^2 = x^2: not squarefree
        assert!(matches!(
            CurveModel::quadratic(3, 1, &[], &[0, 0, 1]),
            Err(Error::SingularCurve(_))
        ));
        // y^2 = x^4 + 1: split at infinity (lc = 1 is a square)
        assert!(matches!(
            CurveModel::quadratic(3, 1, &[], &[1, 0, 0, 0, 1]),
            Err(Error::SplitInfinity(_))
        ));
        assert!(matches!(
            CurveModel::rational(2, 1),
            Err(Error::UnsupportedCharacteristic(_))
        ));
    }

    #[test]
    fn rational_embed_is_inverse_uniformizer() {
        let m = rational_f3();
        let t = m.x_elem();
        let s = m.embed(&t, 10).unwrap();
        assert_eq!(s.val().unwrap(), -1);
        assert_eq!(s.leading().unwrap(), m.base_field().one());
        assert_eq!((t.val().unwrap(), t.degree().unwrap()), (-1, 1));
    }

    #[test]
    fn quad_fixture_valuations() {
        let m = quad_h4();
        let x = m.x_elem();
        let y = m.y_elem().unwrap();
        let sx = m.embed(&x, 12).unwrap();
        let sy = m.embed(&y, 12).unwrap();
        assert_eq!(sx.val().unwrap(), -2);
        assert_eq!(sy.val().unwrap(), -3);
        assert_eq!((x.val().unwrap(), x.degree().unwrap()), (-2, 2));
        assert_eq!((y.val().unwrap(), y.degree().unwrap()), (-3, 3));
        assert_eq!(m.constant(1).degree().unwrap(), 0);
        // 2T^2 + T on the rational model
        let r = rational_f3();
        let a = r.from_poly(Poly::from_ints(&r.base_field(), &[0, 1, 2]));
        assert_eq!((a.val().unwrap(), a.degree().unwrap()), (-2, 2));
        assert_eq!(a.sgn().unwrap(), r.base_field().from_int(2));
    }

    #[test]
    fn defining_relation_vanishes() {
        for m in [quad_h4(), quad_inert()] {
            let y = m.y_elem().unwrap();
            let prec = 30;
            let sy = m.embed(&y, prec).unwrap();
            let sx = m.embed(&m.x_elem(), prec).unwrap();
            let (h, f) = match m.kind() {
                CurveKind::Quadratic { h, f } => (h.clone(), f.clone()),
                _ => unreachable!(),
            };
            let lhs = sy.mul(&sy).add(&m.eval_at_series(&h, &sx).mul(&sy));
            let rhs = m.eval_at_series(&f, &sx);
            assert!(lhs.sub(&rhs).is_zero(), "y^2 + hy - f = {}", lhs.sub(&rhs));
        }
    }

    #[test]
    fn embed_is_ring_homomorphism() {
        let m = quad_h4();
        let a = m
            .element(
                Poly::from_ints(&m.base_field(), &[1, 2]),
                Poly::from_ints(&m.base_field(), &[1]),
                Poly::one(&m.base_field()),
            )
            .unwrap();
        let b = m
            .element(
                Poly::from_ints(&m.base_field(), &[0, 1]),
                Poly::from_ints(&m.base_field(), &[2, 1]),
                Poly::from_ints(&m.base_field(), &[1, 1]),
            )
            .unwrap();
        let prec = 20;
        let sab = m.embed(&a.mul(&b), prec).unwrap();
        let sa = m.embed(&a, prec).unwrap();
        let sb = m.embed(&b, prec).unwrap();
        assert!(sab.agrees_with(&sa.mul(&sb), prec));
        let ssum = m.embed(&a.add(&b), prec).unwrap();
        assert!(ssum.agrees_with(&sa.add(&sb), prec));
    }

    #[test]
    fn element_field_axioms() {
        let m = quad_h4();
        let a = m.x_elem().add(&m.y_elem().unwrap());
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        // degree via embedding agrees with the combinatorial formula
        let e = m.embed(&a, 10).unwrap();
        assert_eq!(-e.val().unwrap(), a.degree().unwrap());
    }

    #[test]
    fn inert_sgn_of_y_squares_to_lc() {
        let m = quad_inert();
        let y = m.y_elem().unwrap();
        let s = y.sgn().unwrap();
        // sgn(y)^2 = 2 (the leading coefficient of f)
        let two = m.inf_embedding().apply(&m.base_field().from_int(2));
        assert_eq!(s.mul(&s), two);
        // and matches the embedding's leading coefficient
        let sy = m.embed(&y, 10).unwrap();
        assert_eq!(sy.leading().unwrap(), s);
    }

    #[test]
    fn sgn_matches_embedding_for_samples() {
        for m in [rational_f3(), quad_h4(), quad_inert()] {
            let f = m.base_field();
            let mut samples = vec![
                m.from_poly(Poly::from_ints(&f, &[2, 1, 1])),
                m.constant(2),
            ];
            if let Some(y) = m.y_elem() {
                samples.push(y.add(&m.constant(2)));
                samples.push(y.mul(&m.x_elem()).add(&m.x_elem()));
                samples.push(y.add(&m.x_elem().mul(&m.x_elem()))); // possible degree tie
            }
            for a in samples {
                let s = m.embed(&a, 8).unwrap();
                assert_eq!(s.leading().unwrap(), a.sgn().unwrap(), "element {a}");
                assert_eq!(-s.val().unwrap() * m.d_inf() as i64, a.degree().unwrap());
            }
        }
    }

    #[test]
    fn embed_prec_too_low() {
        let m = rational_f3();
        assert!(matches!(
            m.embed(&m.x_elem(), 0),
            Err(Error::PrecisionTooLow(0))
        ));
    }
}
