//! Partial zeta values over positive ideal elements and the rank-1 modular
//! invariant j.
//!
//! zeta^a(n) = sum over positive x in a of x^{-n}, summed degree block by
//! degree block. Every block above the minimal degree is a disjoint union of
//! translation cosets beta + F_q mu (mu a fixed minimal-degree element), and
//! for exponents n = q^k - 1 each coset sums in closed form:
//!
//!   sum_c (w + c)^{1-q^k} = (w^{q^k} - w) / (w^{q^{k+1}} - w^{q^k}),
//!
//! which improves the per-coset valuation from d(q^k - 1) to d q^k (q - 1)
//! and makes high-precision tails affordable. Other exponents fall back to
//! direct term-by-term summation under an enumeration budget.
//!
//! Degree blocks combine by exact non-archimedean addition, so the block sums
//! are order-independent and are evaluated in parallel when the `parallel`
//! feature is enabled.

use crate::basis::{DegreeBasis, IdealFamily};
use crate::classgroup::IdealClassTable;
use crate::error::{Error, Result};
use crate::ideal::FracIdeal;
use crate::laurent::LaurentSeries;
use crate::sign::SignData;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How block sums are evaluated. `Auto` uses the parallel path when the
/// crate is built with the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Auto,
}

const PAD: i64 = 6;

/// A certified partial zeta value.
#[derive(Debug, Clone)]
pub struct ZetaValue {
    pub ideal: FracIdeal,
    pub n: i64,
    pub value: LaurentSeries,
    /// Elements of degree <= truncation_degree were summed.
    pub truncation_degree: i64,
    /// |omitted tail| <= q^{-tail_bound_exponent}.
    pub tail_bound_exponent: i64,
}

pub fn zeta_partial(ideal: &FracIdeal, sign: &SignData, n: i64, prec: i64) -> Result<ZetaValue> {
    zeta_partial_with(ideal, sign, n, prec, Execution::Auto)
}

pub fn zeta_partial_with(
    ideal: &FracIdeal,
    sign: &SignData,
    n: i64,
    prec: i64,
    exec: Execution,
) -> Result<ZetaValue> {
    Ok(zeta_multi_with(ideal, sign, &[n], prec, exec)?.pop().expect("one value"))
}

/// Several exponents over one ideal in a single pass: the degree-block
/// machinery (family, embeddings, the phi pivot chain) does not depend on
/// the exponent, so the closed-form blocks for all requested n share it.
pub fn zeta_multi_with(
    ideal: &FracIdeal,
    sign: &SignData,
    ns: &[i64],
    prec: i64,
    exec: Execution,
) -> Result<Vec<ZetaValue>> {
    assert!(!ns.is_empty() && ns.iter().all(|&n| n >= 1));
    if prec < 1 {
        return Err(Error::PrecisionTooLow(prec));
    }
    let model = ideal.model();
    let q = model.q() as i64;
    let d_inf = model.d_inf() as i64;
    let w_target = prec + PAD;
    let n_max = *ns.iter().max().expect("nonempty");

    // Member degrees are predictable from the reduced basis: e0 + k deg(x).
    // Two valid lower bounds for a whole block at degree d:
    //  - per-element ultrametric: n d / d_inf;
    //  - the subspace form: v(block) >= v(c_V) - q^r v(t)
    //    = sum over nonzero lambda in V of (d - deg lambda)/d_inf,
    //    valid once it clears (n-1)(d-1)/d_inf; it grows with the span size,
    //    so high-precision sums still touch only a handful of blocks.
    let basis_degs: Vec<i64> = ideal
        .reduced_basis()
        .iter()
        .map(|e| e.degree().expect("nonzero"))
        .collect();
    let d_mu = *basis_degs.iter().min().expect("nonzero ideal");
    let xdeg = model.x_degree();
    let cap = 1i128 << 50;
    let span_weight = |d: i64| -> i128 {
        // sum of (d - deg lambda) over the nonzero lambda spanned by the
        // members of degree < d
        let mut degs: Vec<i64> = vec![];
        for &e0 in &basis_degs {
            let mut e = e0;
            while e < d {
                degs.push(e);
                e += xdeg;
            }
        }
        degs.sort_unstable();
        let mut sum_w: i128 = 0;
        for (i, &e) in degs.iter().enumerate() {
            let lower = pow_cap(q as i128, i as u32, cap);
            let here = (pow_cap(q as i128, i as u32 + 1, cap) - lower).min(cap);
            sum_w = (sum_w + here * ((d - e) as i128)).min(cap);
        }
        sum_w
    };
    let block_bound = |n: i64, d: i64| -> i64 {
        let elementwise = n.saturating_mul(d) / d_inf;
        let subspace = (span_weight(d) / d_inf as i128).min(cap) as i64;
        let valid = subspace >= (n - 1).saturating_mul((d - 1).max(0)) / d_inf;
        if valid {
            elementwise.max(subspace)
        } else {
            elementwise
        }
    };
    let trunc_for = |n: i64| -> i64 {
        let mut t = d_mu;
        while block_bound(n, t + 1) < w_target {
            t += 1;
        }
        t
    };
    let truncs: Vec<i64> = ns.iter().map(|&n| trunc_for(n)).collect();
    let trunc = *truncs.iter().max().expect("nonempty");

    // cost guard: O(trunc^2) series multiplications at relative precision
    // ~ rel_est
    let rel_est = (w_target - (n_max * d_mu / d_inf).min(0)).max(8) + 8;
    if (trunc as i128) * (trunc as i128) * (rel_est as i128) * (rel_est as i128)
        > 2_000_000_000i128
    {
        let mut d_ok = d_mu;
        while (d_ok as i128 + 1) * (d_ok as i128 + 1) * (rel_est as i128) * (rel_est as i128)
            <= 2_000_000_000i128
            && block_bound(n_max, d_ok + 1) < w_target
        {
            d_ok += 1;
        }
        return Err(Error::PrecisionUnreachable {
            requested: prec,
            achieved: (block_bound(n_max, d_ok) - PAD).max(0),
        });
    }

    let family = IdealFamily::new(ideal, trunc);
    let jobs: Vec<(i64, i64)> = ns.iter().cloned().zip(truncs.iter().cloned()).collect();
    let totals = closed_form_multi(&family, sign, &jobs, w_target, exec, &block_bound)?;

    let mut out = Vec::with_capacity(ns.len());
    for ((&n, &trunc_n), total) in ns.iter().zip(&truncs).zip(totals) {
        let certified = block_bound(n, trunc_n + 1).min(total.prec());
        if certified < prec {
            return Err(Error::PrecisionLoss(format!(
                "zeta sum certified only {certified} of {prec} digits"
            )));
        }
        out.push(ZetaValue {
            ideal: ideal.clone(),
            n,
            value: total.truncate(certified),
            truncation_degree: trunc_n,
            tail_bound_exponent: block_bound(n, trunc_n + 1) * d_inf,
        });
    }
    Ok(out)
}

fn pow_cap(b: i128, e: u32, cap: i128) -> i128 {
    let mut r: i128 = 1;
    for _ in 0..e {
        r = (r * b).min(cap);
    }
    r
}

type TermFn = Box<dyn Fn(&LaurentSeries) -> Result<LaurentSeries> + Sync + Send>;

/// Closed-form degree-block evaluation of sum x^{-n} over the positive
/// elements, for every exponent n >= 1, all requested exponents at once.
///
/// Positive elements of degree d are the translates top + V_d, with V_d the
/// span of all lower family members. Writing phi = phi_{V_d} for the monic
/// additive polynomial with root set V_d (coefficients phi_j at epsilon^{q^j},
/// linear term c = phi_0), the partial-fraction expansion of
/// c / phi(t + eps) = c / (phi(t) + phi(eps)) in eps gives
///
///   sum_{v in V} (t + v)^{-n} = (-1)^{n-1} G(t) h_{n-1}(t),   G = c/phi(t),
///
/// where h is the reciprocal recursion h_0 = 1,
/// h_k = -sum_{q^j <= k} (phi_j/phi(t)) h_{k-q^j}. One block therefore costs
/// O(dim V + n) series operations; no element enumeration ever happens.
/// The phi coefficients are maintained incrementally through the Moore-style
/// update phi_{V+b} = phi_V^q - phi_V(b)^{q-1} phi_V.
fn closed_form_multi(
    family: &IdealFamily,
    sign: &SignData,
    jobs: &[(i64, i64)], // (exponent n, truncation degree for that n)
    w_target: i64,
    exec: Execution,
    block_bound: &dyn Fn(i64, i64) -> i64,
) -> Result<Vec<LaurentSeries>> {
    let model = family.ideal().model();
    let q = model.q();
    let inf = model.inf_field();
    let d_mu = family.min_degree();
    let n_max = jobs.iter().map(|&(n, _)| n).max().expect("nonempty");
    let rel_max = (w_target - (n_max * d_mu / model.d_inf() as i64).min(0)).max(8) + 8;
    let cap_at = |v: LaurentSeries, rel: i64| -> LaurentSeries {
        match v.val() {
            Ok(x) => v.truncate(x + rel),
            Err(_) => v,
        }
    };
    let embed_for = |e: &crate::curve::FFElement| -> Result<LaurentSeries> {
        let v = e.val()?;
        model.embed(e, v + rel_max)
    };
    // phi coefficients: phi(eps) = sum_j coeffs[j] eps^{q^j}, starting from
    // phi(eps) = eps for the empty space
    let mut phi_coeffs: Vec<LaurentSeries> = vec![LaurentSeries::one(&inf, rel_max)];
    let mut pivot_pows: Vec<LaurentSeries> = vec![];
    let phi_eval = |pivot_pows: &[LaurentSeries], t: &LaurentSeries, rel: i64| -> LaurentSeries {
        let mut v = t.clone();
        for s_pow in pivot_pows {
            let fr = cap_at(v.frobenius_q(q), rel);
            v = fr.sub(&s_pow.mul(&v));
        }
        v
    };
    let e_max = (n_max - 1) as usize;
    let qpowers: Vec<(usize, usize)> = {
        let mut out = vec![];
        let mut pw = 1usize;
        let mut j = 0usize;
        while pw <= e_max.max(1) {
            out.push((j, pw));
            pw = pw.saturating_mul(q as usize);
            j += 1;
        }
        out
    };
    let mut totals = vec![LaurentSeries::zero(&inf, w_target + PAD); jobs.len()];
    for d in family.realized_degrees() {
        let active: Vec<usize> = jobs
            .iter()
            .enumerate()
            .filter(|(_, &(_, t))| d <= t)
            .map(|(i, _)| i)
            .collect();
        if active.is_empty() {
            continue;
        }
        // the most demanding active exponent fixes the block's precision
        let rel_d = active
            .iter()
            .map(|&i| (w_target - block_bound(jobs[i].0, d)).max(8) + 8)
            .max()
            .expect("nonempty")
            .min(rel_max);
        let e_need = active
            .iter()
            .map(|&i| (jobs[i].0 - 1) as usize)
            .max()
            .expect("nonempty");
        let tops = family.positive_directions(sign, d);
        let blocks = run_over(
            tops,
            |top| -> Result<Vec<(usize, LaurentSeries)>> {
                let t = cap_at(embed_for(top)?, rel_d);
                let phi_t = phi_eval(&pivot_pows, &t, rel_d);
                let phi_inv = phi_t.inv()?;
                let g = phi_coeffs[0].mul(&phi_inv);
                let mut h: Vec<LaurentSeries> = Vec::with_capacity(e_need + 1);
                h.push(LaurentSeries::one(&inf, rel_d));
                for k in 1..=e_need {
                    let mut acc: Option<LaurentSeries> = None;
                    for &(j, pw) in &qpowers {
                        if pw > k || j >= phi_coeffs.len() {
                            continue;
                        }
                        let term = phi_coeffs[j].mul(&phi_inv).mul(&h[k - pw]);
                        acc = Some(match acc {
                            None => term,
                            Some(a) => a.add(&term),
                        });
                    }
                    h.push(match acc {
                        None => LaurentSeries::zero(&inf, rel_d),
                        Some(a) => cap_at(a.neg(), rel_d),
                    });
                }
                let mut out = vec![];
                for &i in &active {
                    let n = jobs[i].0;
                    let blk = g.mul(&h[(n - 1) as usize]);
                    out.push((i, if n % 2 == 0 { blk.neg() } else { blk }));
                }
                Ok(out)
            },
            exec,
        )?;
        for per_top in blocks {
            for (i, b) in per_top {
                totals[i] = totals[i].add(&b);
            }
        }
        // absorb the degree-d members into phi
        for m in family.members().iter().filter(|m| m.degree == d) {
            let b = embed_for(&m.elem)?;
            let s = phi_eval(&pivot_pows, &b, rel_max);
            let s_pow = cap_at(s.pow(q as i64 - 1)?, rel_max);
            // phi <- phi^q - s^{q-1} phi, coefficientwise
            let mut next: Vec<LaurentSeries> = Vec::with_capacity(phi_coeffs.len() + 1);
            next.push(cap_at(phi_coeffs[0].mul(&s_pow).neg(), rel_max));
            for j in 1..=phi_coeffs.len() {
                let shifted = cap_at(phi_coeffs[j - 1].frobenius_q(q), rel_max);
                let keep = if j < phi_coeffs.len() {
                    shifted.sub(&s_pow.mul(&phi_coeffs[j]))
                } else {
                    shifted
                };
                next.push(cap_at(keep, rel_max));
            }
            phi_coeffs = next;
            pivot_pows.push(s_pow);
        }
    }
    Ok(totals)
}

/// q scaled copies of each lower member/// q scaled copies of each lower member/// q scaled copies of each lower member, indexed by field element index.
fn scale_table(lowers: &[LaurentSeries], model: &crate::curve::CurveModel) -> Vec<Vec<LaurentSeries>> {
    let base = model.base_field();
    lowers
        .iter()
        .map(|s| {
            base.elements()
                .map(|c| s.scalar_mul(&model.inf_embedding().apply(&c)))
                .collect()
        })
        .collect()
}

/// Sum term(beta) over all beta = top + sum_j c_j lower_j.
fn sum_block(
    tops: &[LaurentSeries],
    scaled: &[Vec<LaurentSeries>],
    term: &TermFn,
    exec: Execution,
) -> Result<LaurentSeries> {
    // split a few levels eagerly to expose parallelism
    let q = scaled.first().map(|v| v.len()).unwrap_or(1);
    let split = if matches!(exec, Execution::Auto) && cfg!(feature = "parallel") {
        let mut s = 0usize;
        let mut count = tops.len();
        while s < scaled.len() && count < 512 {
            count *= q;
            s += 1;
        }
        s
    } else {
        0
    };
    let mut prefixes: Vec<LaurentSeries> = tops.to_vec();
    for level in scaled.iter().take(split) {
        let mut next = Vec::with_capacity(prefixes.len() * q);
        for p in &prefixes {
            for c in level {
                if c.is_zero() {
                    next.push(p.clone());
                } else {
                    next.push(p.add(c));
                }
            }
        }
        prefixes = next;
    }
    let rest = &scaled[split..];

    let eval_prefix = |p: &LaurentSeries| -> Result<Option<LaurentSeries>> {
        let mut acc: Option<LaurentSeries> = None;
        dfs(p, rest, term, &mut acc)?;
        Ok(acc)
    };

    let partials: Vec<Option<LaurentSeries>> = run_over(prefixes, eval_prefix, exec)?;
    let mut out: Option<LaurentSeries> = None;
    for p in partials.into_iter().flatten() {
        out = Some(match out {
            None => p,
            Some(acc) => acc.add(&p),
        });
    }
    out.ok_or_else(|| Error::Parse("empty block".into()))
}

fn dfs(
    cur: &LaurentSeries,
    levels: &[Vec<LaurentSeries>],
    term: &TermFn,
    acc: &mut Option<LaurentSeries>,
) -> Result<()> {
    match levels.split_first() {
        None => {
            let t = term(cur)?;
            *acc = Some(match acc.take() {
                None => t,
                Some(a) => a.add(&t),
            });
            Ok(())
        }
        Some((level, rest)) => {
            for c in level {
                if c.is_zero() {
                    dfs(cur, rest, term, acc)?;
                } else {
                    dfs(&cur.add(c), rest, term, acc)?;
                }
            }
            Ok(())
        }
    }
}

#[cfg(feature = "parallel")]
fn run_over<T: Send + Sync, R: Send>(
    items: Vec<T>,
    f: impl Fn(&T) -> Result<R> + Sync,
    exec: Execution,
) -> Result<Vec<R>> {
    match exec {
        Execution::Sequential => items.iter().map(|t| f(t)).collect(),
        Execution::Auto => items.par_iter().map(|t| f(t)).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_over<T: Send + Sync, R: Send>(
    items: Vec<T>,
    f: impl Fn(&T) -> Result<R> + Sync,
    _exec: Execution,
) -> Result<Vec<R>> {
    items.iter().map(|t| f(t)).collect()
}

/// Omega_i block: sum over c in F_q^i of (c . alpha_{i-1} + alpha_i)^{-n},
/// the definitional (brute-force) form.
pub fn omega_block(basis: &DegreeBasis, i: usize, n: i64, prec: i64) -> Result<LaurentSeries> {
    assert!(i >= 1 && n >= 1);
    if i >= basis.len() {
        return Err(Error::BasisTooShort {
            need: i,
            have: basis.len(),
        });
    }
    let model = basis.ideal().model();
    let d_inf = model.d_inf() as i64;
    let top = &basis.elems()[i];
    let v_top = top.val()?;
    let rel = (prec - n * v_top / d_inf).max(8) + n.unsigned_abs() as i64 + 8;
    let top_s = model.embed(top, v_top + rel)?;
    let lowers: Vec<LaurentSeries> = basis.elems()[..i]
        .iter()
        .map(|e| model.embed(e, e.val().expect("nonzero") + rel))
        .collect::<Result<_>>()?;
    let scaled = scale_table(&lowers, &model);
    let term: TermFn = Box::new(move |beta: &LaurentSeries| beta.pow(-n));
    let block = sum_block(std::slice::from_ref(&top_s), &scaled, &term, Execution::Auto)?;
    Ok(block.truncate(prec.min(block.prec())))
}

/// The j-value as a point of the projective line over the completion: the
/// defining formula is a Moebius transform of J, and its denominator can
/// vanish identically (it does for the rational model at the trivial class,
/// an exact bracket identity of Carlitz zeta values).
#[derive(Debug, Clone)]
pub enum JPoint {
    Finite(LaurentSeries),
    /// Denominator of the formula is zero to the stated resolution:
    /// |1/j| <= q^{-d_inf * certified}.
    Infinite { certified: i64 },
}

impl JPoint {
    pub fn as_finite(&self) -> Option<&LaurentSeries> {
        match self {
            JPoint::Finite(s) => Some(s),
            JPoint::Infinite { .. } => None,
        }
    }
}

/// The modular invariant of an ideal class.
#[derive(Debug, Clone)]
pub struct JValue {
    pub ideal: FracIdeal,
    /// J = zeta(q^2-1) / zeta(q-1)^{q+1}.
    pub j_big: LaurentSeries,
    /// j = 1 / ( 1/(T^q-T) - (T^{q^2}-T)/(T^q-T)^{q+1} J ).
    pub j: JPoint,
    /// Certified relative digits of j (resolution digits when infinite).
    pub digits: i64,
}

impl JValue {
    /// The finite j series, or DenominatorVanishes for the cusp value.
    pub fn expect_finite(&self) -> Result<&LaurentSeries> {
        self.j.as_finite().ok_or(Error::DenominatorVanishes)
    }
}

pub fn j_invariant(ideal: &FracIdeal, sign: &SignData, prec: i64) -> Result<JValue> {
    j_invariant_with(ideal, sign, prec, Execution::Auto)
}

pub fn j_invariant_with(
    ideal: &FracIdeal,
    sign: &SignData,
    prec: i64,
    exec: Execution,
) -> Result<JValue> {
    if prec < 1 {
        return Err(Error::PrecisionTooLow(prec));
    }
    let model = ideal.model();
    let q = model.q() as i64;
    let d_inf = model.d_inf() as i64;
    let mut w = prec + 2 * q * model.x_degree() / d_inf + q + 10;
    // the denominator may cancel deeply (or identically); retry with more
    // working precision until the requested digits are certified
    for _attempt in 0..6 {
        let z1 = zeta_partial_with(ideal, sign, q - 1, w, exec)?;
        let z2 = zeta_partial_with(ideal, sign, q * q - 1, w, exec)?;
        let j_big = z2.value.div(&z1.value.pow(q + 1)?)?;
        // T is the model's x, expanded at infinity
        let t = model.embed(&model.x_elem(), w + 2 * q * q * model.x_degree() / d_inf)?;
        let tq = t.frobenius_q(q as u64);
        let tq2 = tq.frobenius_q(q as u64);
        let a = tq.sub(&t).inv()?;
        let b = tq2.sub(&t).div(&tq.sub(&t).pow(q + 1)?)?;
        let den = a.sub(&b.mul(&j_big));
        if den.is_zero() {
            if den.prec() >= prec {
                return Ok(JValue {
                    ideal: ideal.clone(),
                    j_big,
                    j: JPoint::Infinite {
                        certified: den.prec(),
                    },
                    digits: den.prec(),
                });
            }
        } else {
            let j = den.inv()?;
            if j.rel_prec() >= prec {
                return Ok(JValue {
                    ideal: ideal.clone(),
                    digits: j.rel_prec(),
                    j_big,
                    j: JPoint::Finite(j),
                });
            }
        }
        let shortfall = match den.is_zero() {
            true => prec - den.prec(),
            false => prec - (den.prec() - den.val().expect("nonzero")),
        };
        w += shortfall.max(8) + 8;
    }
    Err(Error::DenominatorVanishes)
}

#[derive(Debug, Clone)]
pub struct JTableEntry {
    pub class_index: usize,
    pub value: JValue,
}

/// One j per ideal class, computed from the class representatives.
pub fn j_table(
    table: &IdealClassTable,
    sign: &SignData,
    prec: i64,
) -> Result<Vec<JTableEntry>> {
    let work: Vec<(usize, FracIdeal)> = table
        .reps()
        .iter()
        .cloned()
        .enumerate()
        .collect();
    let entries = run_over(
        work,
        |(i, ideal)| {
            Ok(JTableEntry {
                class_index: *i,
                value: j_invariant(ideal, sign, prec)?,
            })
        },
        Execution::Auto,
    )?;
    Ok(entries)
}

/// For each pair of entries: the exponent at which the two j-values first
/// differ (None when they agree on all jointly certified digits). Pairs with
/// an infinite member are compared in the inverse chart 1/j.
pub fn separation_degrees(entries: &[JTableEntry]) -> Vec<(usize, usize, Option<i64>)> {
    let mut out = vec![];
    for (i, a) in entries.iter().enumerate() {
        for b in entries.iter().skip(i + 1) {
            let sep = match (&a.value.j, &b.value.j) {
                (JPoint::Finite(ja), JPoint::Finite(jb)) => ja.sub(jb).val().ok(),
                (JPoint::Finite(ja), JPoint::Infinite { .. })
                | (JPoint::Infinite { .. }, JPoint::Finite(ja)) => {
                    ja.inv().ok().and_then(|inv| inv.val().ok())
                }
                (JPoint::Infinite { .. }, JPoint::Infinite { .. }) => None,
            };
            out.push((a.class_index, b.class_index, sep));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveModel;
    use crate::poly::Poly;
    use crate::ratfn::RatFn;

    fn rational() -> CurveModel {
        CurveModel::rational(3, 1).unwrap()
    }

    fn h4() -> CurveModel {
        CurveModel::quadratic(3, 1, &[], &[1, 1, 0, 1]).unwrap()
    }

    fn p0_star_basis(m: &CurveModel) -> (FracIdeal, DegreeBasis) {
        let s = SignData::standard(m);
        let p = FracIdeal::from_generators(
            m,
            &[m.x_elem(), m.y_elem().unwrap().sub(&m.one_elem())],
        )
        .unwrap();
        crate::basis::star_representative(&p, &s, 40).unwrap()
    }

    #[test]
    fn omega1_rational_closed_form() {
        // Omega_1 for A = F_3[T], n = 2: sum over c of (T+c)^{-2} =
        // 1/(T^6 + T^4 + T^2), leading term u^6
        let m = rational();
        let s = SignData::standard(&m);
        let basis = DegreeBasis::new(&FracIdeal::unit(&m), &s, 20).unwrap();
        let om = omega_block(&basis, 1, 2, 20).unwrap();
        assert_eq!(om.val().unwrap(), 6);
        // compare against the exact rational function via its expansion
        let f3 = m.base_field();
        let denom = Poly::from_ints(&f3, &[0, 0, 1, 0, 1, 0, 1]);
        let exact = RatFn::new(Poly::one(&f3), denom).unwrap();
        let expect = m
            .embed(
                &m.element(exact.num().clone(), Poly::zero(&f3), exact.den().clone())
                    .unwrap(),
                20,
            )
            .unwrap();
        assert!(om.agrees_with(&expect, 20));
    }

    #[test]
    fn zeta_rational_starts_at_one_plus_u6() {
        let m = rational();
        let s = SignData::standard(&m);
        let z = zeta_partial(&FracIdeal::unit(&m), &s, 2, 30).unwrap();
        assert!(z.value.coeff_at(0).unwrap().is_one());
        for k in 1..6 {
            assert!(z.value.coeff_at(k).unwrap().is_zero());
        }
        assert!(z.value.coeff_at(6).unwrap().is_one());
        assert!(z.tail_bound_exponent >= 30);
        // certified against spec tail law
        assert!(z.value.prec() >= 30);
    }

    #[test]
    fn zeta_coset_and_direct_paths_agree() {
        let m = h4();
        let s = SignData::standard(&m);
        let (star, _) = p0_star_basis(&m);
        // n = 2 = q - 1 has a closed-form path; force the direct path by
        // computing blocks with the brute-force omega sums
        let z = zeta_partial(&star, &s, 2, 14).unwrap();
        let basis = DegreeBasis::new(&star, &s, 30).unwrap();
        let mut direct = LaurentSeries::one(&m.inf_field(), 14);
        let mut i = 1;
        loop {
            let om = omega_block(&basis, i, 2, 14).unwrap();
            if om.val().map(|v| v >= 14).unwrap_or(true) {
                break;
            }
            direct = direct.add(&om);
            i += 1;
        }
        assert!(z.value.agrees_with(&direct, 14));
    }

    #[test]
    fn zeta_blocks_match_omega_blocks_rational() {
        // zeta = 1 + sum_i Omega_i
        let m = rational();
        let s = SignData::standard(&m);
        let basis = DegreeBasis::new(&FracIdeal::unit(&m), &s, 30).unwrap();
        let z = zeta_partial(&FracIdeal::unit(&m), &s, 4, 20).unwrap();
        let mut acc = LaurentSeries::one(&m.inf_field(), 20);
        for i in 1..=5 {
            acc = acc.add(&omega_block(&basis, i, 4, 20).unwrap());
        }
        assert!(z.value.agrees_with(&acc, 20));
    }

    #[test]
    fn cor63_size_law_on_fixture() {
        // |zeta-hat(q^k - 1)| = |alpha_1|^{q^k(1-q)} for the star representative
        let m = h4();
        let s = SignData::standard(&m);
        let (star, basis) = p0_star_basis(&m);
        let alpha1_deg = basis.degrees()[1];
        assert_eq!(alpha1_deg, 1);
        for k in [1u32, 2] {
            let n = 3i64.pow(k) - 1;
            let z = zeta_partial(&star, &s, n, 40).unwrap();
            let zhat = z.value.sub(&LaurentSeries::one(&m.inf_field(), z.value.prec()));
            let expected = 3i64.pow(k) * 2 * alpha1_deg; // q^k (q-1) deg(alpha_1)
            assert_eq!(zhat.val().unwrap(), expected, "k = {k}");
        }
    }

    #[test]
    fn lemma62_closed_form_on_fixture_alpha() {
        // Omega_1(q^k - 1) = (a^{q^k} - a)/prod_c(c + a^{q^k}) for a = alpha_1
        let m = h4();
        let s = SignData::standard(&m);
        let (_star, basis) = p0_star_basis(&m);
        let alpha1 = &basis.elems()[1];
        let prec = 45;
        for k in [1u32, 2] {
            let n = 3i64.pow(k) - 1;
            let om = omega_block(&basis, 1, n, prec).unwrap();
            let a = m.embed(alpha1, alpha1.val().unwrap() + prec + 30).unwrap();
            let aq = a.frobenius_q_iter(3, k as usize);
            let mut den = LaurentSeries::one(&m.inf_field(), aq.prec() - aq.val().unwrap());
            for c in m.base_field().elements() {
                let cc = LaurentSeries::monomial(
                    m.inf_embedding().apply(&c),
                    0,
                    aq.prec() - aq.val().unwrap(),
                );
                den = den.mul(&cc.add(&aq));
            }
            let expect = aq.sub(&a).div(&den).unwrap();
            assert!(om.agrees_with(&expect, prec), "k = {k}");
        }
    }

    #[test]
    fn scaling_covariance_for_even_n() {
        // zeta^{(alpha) a}(n) = alpha^{-n} zeta^a(n) for (q-1) | n
        let m = h4();
        let s = SignData::standard(&m);
        let (star, _) = p0_star_basis(&m);
        let alpha = m.y_elem().unwrap().add(&m.x_elem()); // sign-one not required
        let scaled = star.scale(&alpha).unwrap();
        for n in [2i64, 4, 8] {
            let z1 = zeta_partial(&star, &s, n, 18).unwrap();
            let z2 = zeta_partial(&scaled, &s, n, 18).unwrap();
            let a = m.embed(&alpha, alpha.val().unwrap() + 40).unwrap();
            let rhs = z1.value.mul(&a.pow(-n).unwrap());
            assert!(z2.value.agrees_with(&rhs, 18), "n = {n}");
        }
    }

    #[test]
    fn s_independence_of_zeta() {
        let m = h4();
        let s = SignData::standard(&m);
        let s2 = s.scaled(&[2]);
        let (star, _) = p0_star_basis(&m);
        for n in [2i64, 8] {
            let z1 = zeta_partial(&star, &s, n, 25).unwrap();
            let z2 = zeta_partial(&star, &s2, n, 25).unwrap();
            assert!(z1.value.agrees_with(&z2.value, 25), "n = {n}");
        }
    }

    #[test]
    fn j_well_defined_on_classes() {
        let m = h4();
        let s = SignData::standard(&m);
        let (star, _) = p0_star_basis(&m);
        let j1 = j_invariant(&star, &s, 20).unwrap();
        let alpha = m.x_elem().add(&m.constant(2)).mul(&m.constant(2)); // non-monic
        let j2 = j_invariant(&star.scale(&alpha).unwrap(), &s, 20).unwrap();
        let (ja, jb) = (j1.expect_finite().unwrap(), j2.expect_finite().unwrap());
        assert!(ja.agrees_with(jb, ja.val().unwrap() + 20));
        assert!(j1.j_big.agrees_with(&j2.j_big, 20));
    }

    #[test]
    fn rational_j_is_the_cusp_value() {
        // For A = F_q[T] the defining denominator vanishes identically:
        // zeta(q^2-1) = zeta(q-1)^{q+1} (T^q-T)^q/(T^{q^2}-T) exactly, so the
        // trivial class sits at the point at infinity; the resolution is
        // certified and monotone in the requested precision.
        let m = rational();
        let s = SignData::standard(&m);
        let a = FracIdeal::unit(&m);
        let j20 = j_invariant(&a, &s, 20).unwrap();
        let j40 = j_invariant(&a, &s, 40).unwrap();
        match (&j20.j, &j40.j) {
            (JPoint::Infinite { certified: c1 }, JPoint::Infinite { certified: c2 }) => {
                assert!(*c1 >= 20 && *c2 >= 40);
            }
            _ => panic!("expected the cusp value"),
        }
        assert!(j20.j_big.agrees_with(&j40.j_big, j20.j_big.prec()));
        assert_eq!(j20.expect_finite(), Err(Error::DenominatorVanishes));
    }

    #[test]
    fn quadratic_trivial_class_j_is_finite_but_deep() {
        // on the h = 4 fixture the trivial class cancels 36 leading digits
        // but stays finite; the adaptive working precision must recover it
        let m = h4();
        let s = SignData::standard(&m);
        let j = j_invariant(&FracIdeal::unit(&m), &s, 10).unwrap();
        let jf = j.expect_finite().unwrap();
        assert_eq!(jf.val().unwrap(), -36);
        assert!(j.digits >= 10);
    }

    #[test]
    fn unreachable_precision_reports_budget() {
        let m = rational();
        let s = SignData::standard(&m);
        let err = zeta_partial(&FracIdeal::unit(&m), &s, 1, 100_000).unwrap_err();
        assert!(matches!(err, Error::PrecisionUnreachable { .. }));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let m = h4();
        let s = SignData::standard(&m);
        let (star, _) = p0_star_basis(&m);
        let a = zeta_partial_with(&star, &s, 2, 25, Execution::Sequential).unwrap();
        let b = zeta_partial_with(&star, &s, 2, 25, Execution::Auto).unwrap();
        assert_eq!(a.value, b.value);
    }
}
