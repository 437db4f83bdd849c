//! Truncated Chern power series over the Kunneth fiber algebra of a product
//! with a genus-g surface.
//!
//! An element of the fiber algebra is `u + d*D + psi*Psi + w*sigma` with
//! coefficients in the commutative base ring on `alpha, beta, gamma, A, B`.
//! The fiber classes multiply by
//!
//! ```text
//! D^2 = -2 A sigma,   Psi^2 = -2 gamma sigma,   D Psi = Psi D = B sigma,
//! sigma D = sigma Psi = sigma^2 = 0.
//! ```
//!
//! On top of this sits a series calculus (log, exp, products truncated at
//! order `t^T`), the direct-image pushforward for a fibration over a genus-g
//! curve, the slant product with the Jacobian fundamental class, and the
//! twist by a degree-2 line-bundle class. Composing them reproduces the
//! closed form for the Chern series of the first direct image of
//! `Hom(L, E)`, which is checked numerically in [`r1_closed_form_check`].

use num::complex::Complex64;
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::generators::{same_table, GeneratorTable, TableKind};
use crate::poly::{GradedPoly, Monomial};
use crate::scalar::{factorial, Scalar};
use crate::Result;

/// One coefficient of a fiber-algebra series: `u + d*D + psi*Psi + w*sigma`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberElement<F: Scalar> {
    pub u: GradedPoly<F>,
    pub d: GradedPoly<F>,
    pub psi: GradedPoly<F>,
    pub w: GradedPoly<F>,
}

impl<F: Scalar> FiberElement<F> {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Self {
            u: GradedPoly::zero(table),
            d: GradedPoly::zero(table),
            psi: GradedPoly::zero(table),
            w: GradedPoly::zero(table),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        let mut e = Self::zero(table);
        e.u = GradedPoly::one(table);
        e
    }

    /// Element with only the plain (unit) component set.
    pub fn from_u(u: GradedPoly<F>) -> Self {
        let mut e = Self::zero(u.table());
        e.u = u;
        e
    }

    pub fn from_parts(
        u: GradedPoly<F>,
        d: GradedPoly<F>,
        psi: GradedPoly<F>,
        w: GradedPoly<F>,
    ) -> Result<Self> {
        same_table(u.table(), d.table())?;
        same_table(u.table(), psi.table())?;
        same_table(u.table(), w.table())?;
        Ok(Self { u, d, psi, w })
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        self.u.table()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.d.is_zero() && self.psi.is_zero() && self.w.is_zero()
    }

    /// True when the `D`, `Psi`, and `sigma` components all vanish.
    pub fn is_base(&self) -> bool {
        self.d.is_zero() && self.psi.is_zero() && self.w.is_zero()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self {
            u: self.u.checked_add(&rhs.u)?,
            d: self.d.checked_add(&rhs.d)?,
            psi: self.psi.checked_add(&rhs.psi)?,
            w: self.w.checked_add(&rhs.w)?,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            u: self.u.neg(),
            d: self.d.neg(),
            psi: self.psi.neg(),
            w: self.w.neg(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            u: self.u.scale(c),
            d: self.d.scale(c),
            psi: self.psi.scale(c),
            w: self.w.scale(c),
        }
    }

    pub fn div_scalar(&self, c: &F) -> Self {
        Self {
            u: self.u.div_scalar(c),
            d: self.d.div_scalar(c),
            psi: self.psi.div_scalar(c),
            w: self.w.div_scalar(c),
        }
    }

    /// Multiply by a base-ring polynomial.
    pub fn scale_poly(&self, p: &GradedPoly<F>) -> Result<Self> {
        Ok(Self {
            u: self.u.checked_mul(p)?,
            d: self.d.checked_mul(p)?,
            psi: self.psi.checked_mul(p)?,
            w: self.w.checked_mul(p)?,
        })
    }

    /// Product in the fiber algebra. The `sigma` component collects the
    /// contributions of `D^2`, `Psi^2`, and the symmetric `D Psi` cross term.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        same_table(self.table(), rhs.table())?;
        let tb = self.table();
        if tb.kind != TableKind::FiberBase {
            return Err(Error::Domain(
                "fiber algebra requires the five-generator base table".into(),
            ));
        }
        let slot_a = GradedPoly::generator(tb, tb.slot_a()?)?;
        let slot_b = GradedPoly::generator(tb, tb.slot_b()?)?;
        let gamma = GradedPoly::generator(tb, GeneratorTable::GAMMA)?;
        let two = F::from_int(2);

        let u = self.u.checked_mul(&rhs.u)?;
        let d = self
            .u
            .checked_mul(&rhs.d)?
            .checked_add(&self.d.checked_mul(&rhs.u)?)?;
        let psi = self
            .u
            .checked_mul(&rhs.psi)?
            .checked_add(&self.psi.checked_mul(&rhs.u)?)?;

        let mut w = self
            .u
            .checked_mul(&rhs.w)?
            .checked_add(&self.w.checked_mul(&rhs.u)?)?;
        let dd = self.d.checked_mul(&rhs.d)?;
        w = w.checked_sub(&slot_a.checked_mul(&dd)?.scale(&two))?;
        let pp = self.psi.checked_mul(&rhs.psi)?;
        w = w.checked_sub(&gamma.checked_mul(&pp)?.scale(&two))?;
        let cross = self
            .d
            .checked_mul(&rhs.psi)?
            .checked_add(&self.psi.checked_mul(&rhs.d)?)?;
        w = w.checked_add(&slot_b.checked_mul(&cross)?)?;

        Ok(Self { u, d, psi, w })
    }
}

impl<F: Scalar> fmt::Display for FiberElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.u.is_zero() {
            parts.push(format!("({})", self.u));
        }
        if !self.d.is_zero() {
            parts.push(format!("({}) D", self.d));
        }
        if !self.psi.is_zero() {
            parts.push(format!("({}) Psi", self.psi));
        }
        if !self.w.is_zero() {
            parts.push(format!("({}) sigma", self.w));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Power series in `t` with [`FiberElement`] coefficients, truncated so that
/// coefficients of `t^0 ..= t^T` are stored and everything beyond is dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberSeries<F: Scalar> {
    table: Arc<GeneratorTable>,
    coeffs: Vec<FiberElement<F>>,
}

impl<F: Scalar> FiberSeries<F> {
    pub fn zero(table: &Arc<GeneratorTable>, trunc: usize) -> Self {
        Self {
            table: Arc::clone(table),
            coeffs: vec![FiberElement::zero(table); trunc + 1],
        }
    }

    pub fn one(table: &Arc<GeneratorTable>, trunc: usize) -> Self {
        let mut s = Self::zero(table, trunc);
        s.coeffs[0] = FiberElement::one(table);
        s
    }

    pub fn from_coeffs(coeffs: Vec<FiberElement<F>>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::TruncationTooShort("series needs a constant term".into()))?;
        let table = Arc::clone(first.table());
        for c in &coeffs {
            same_table(&table, c.table())?;
        }
        Ok(Self { table, coeffs })
    }

    /// Highest stored power of `t`.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn coeff(&self, j: usize) -> &FiberElement<F> {
        &self.coeffs[j]
    }

    pub fn set_coeff(&mut self, j: usize, e: FiberElement<F>) -> Result<()> {
        same_table(&self.table, e.table())?;
        if j >= self.coeffs.len() {
            return Err(Error::IndexOutOfRange(format!(
                "coefficient {j} beyond truncation {}",
                self.trunc()
            )));
        }
        self.coeffs[j] = e;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FiberElement::is_zero)
    }

    /// Drop coefficients beyond `trunc` (or keep all if already shorter).
    pub fn truncate(&self, trunc: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(trunc + 1);
        s
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        same_table(&self.table, &rhs.table)?;
        let t = self.trunc().min(rhs.trunc());
        let coeffs = (0..=t)
            .map(|j| self.coeffs[j].checked_add(&rhs.coeffs[j]))
            .collect::<Result<_>>()?;
        Ok(Self {
            table: Arc::clone(&self.table),
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            table: Arc::clone(&self.table),
            coeffs: self.coeffs.iter().map(FiberElement::neg).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            table: Arc::clone(&self.table),
            coeffs: self.coeffs.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &GradedPoly<F>) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|e| e.scale_poly(p))
            .collect::<Result<_>>()?;
        Ok(Self {
            table: Arc::clone(&self.table),
            coeffs,
        })
    }

    /// Cauchy product truncated at the shorter operand.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        same_table(&self.table, &rhs.table)?;
        let t = self.trunc().min(rhs.trunc());
        let mut out = Self::zero(&self.table, t);
        for l in 0..=t {
            let mut acc = FiberElement::zero(&self.table);
            for i in 0..=l {
                if self.coeffs[i].is_zero() || rhs.coeffs[l - i].is_zero() {
                    continue;
                }
                acc = acc.checked_add(&self.coeffs[i].checked_mul(&rhs.coeffs[l - i])?)?;
            }
            out.coeffs[l] = acc;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.table, self.trunc());
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Formal logarithm. Requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != FiberElement::one(&self.table) {
            return Err(Error::NonUnitConstantTerm(
                "log needs constant coefficient 1".into(),
            ));
        }
        let t = self.trunc();
        let mut x = self.clone();
        x.coeffs[0] = FiberElement::zero(&self.table);
        let mut acc = Self::zero(&self.table, t);
        let mut power = Self::one(&self.table, t);
        for k in 1..=t {
            power = power.checked_mul(&x)?;
            if power.is_zero() {
                break;
            }
            let term = power.scale(&(F::from_fraction(if k % 2 == 1 { 1 } else { -1 }, k as i64)));
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Formal exponential. Requires constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm(
                "exp needs constant coefficient 0".into(),
            ));
        }
        let t = self.trunc();
        let mut acc = Self::one(&self.table, t);
        let mut power = Self::one(&self.table, t);
        for k in 1..=t {
            power = power.checked_mul(self)?;
            if power.is_zero() {
                break;
            }
            let term = power.scale(&(F::one() / factorial::<F>(k as u32)));
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Log of the Chern series of the derived pushforward along a fibration
    /// with genus-`g` fibers. The input is the log series of the total-space
    /// bundle; only its plain and `sigma` components enter:
    ///
    /// ```text
    /// out(t) = -(g-1) u(t) - integral_0^t (w(s) - w'(0) s) / s^2 ds,
    /// ```
    ///
    /// so `out_j = -(g-1) u_j - w_{j+1}/j` for `j >= 1`. The `D` and `Psi`
    /// components are discarded and the output carries truncation `T - 1`.
    pub fn grr_pushforward(&self, g: usize) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm(
                "pushforward input must be a log series".into(),
            ));
        }
        if self.trunc() < 1 {
            return Err(Error::TruncationTooShort(
                "pushforward needs at least order t^1".into(),
            ));
        }
        let t_out = self.trunc() - 1;
        let mut out = Self::zero(&self.table, t_out);
        let genus_factor = F::from_int(g as i64) - F::one();
        for j in 1..=t_out {
            let mut uj = self.coeffs[j].u.scale(&genus_factor).neg();
            let wj1 = self.coeffs[j + 1].w.div_scalar(&F::from_int(j as i64));
            uj = uj.checked_sub(&wj1)?;
            out.coeffs[j] = FiberElement::from_u(uj);
        }
        Ok(out)
    }

    /// Slant product with the fundamental class of the genus-`g` Jacobian.
    /// Requires every coefficient to lie in the base ring. Each monomial
    /// `A^r B^s` maps to `r! s! (-gamma)^(s/2) / (s/2)!` when `2r + s = 2g`
    /// and to zero otherwise; `A` and `B` do not appear in the output.
    pub fn slant_jacobian(&self, g: usize) -> Result<Self> {
        let ia = self.table.slot_a()?;
        let ib = self.table.slot_b()?;
        let mut out = Self::zero(&self.table, self.trunc());
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_base() {
                return Err(Error::ResidualFiberComponents(format!(
                    "coefficient of t^{j} has D, Psi, or sigma parts"
                )));
            }
            let mut mapped = GradedPoly::zero(&self.table);
            for (mono, coeff) in c.u.terms() {
                let r = mono.exps()[ia];
                let s = mono.exps()[ib];
                if 2 * r + s != 2 * g as u32 {
                    continue;
                }
                let p = s / 2;
                let mut exps = mono.exps().to_vec();
                exps[ia] = 0;
                exps[ib] = 0;
                exps[GeneratorTable::GAMMA] += p;
                let mut scale = factorial::<F>(r) * factorial::<F>(s) / factorial::<F>(p);
                if p % 2 == 1 {
                    scale = F::zero() - scale;
                }
                mapped.add_term(Monomial(exps.into_boxed_slice()), coeff.clone() * scale);
            }
            out.coeffs[j] = FiberElement::from_u(mapped);
        }
        Ok(out)
    }

    /// Twist by a line-bundle class `x` at rank `r`:
    /// `s(t) -> (1 + t x)^r s(t / (1 + t x))`. Twisting by `x` then `y`
    /// equals twisting by `x + y`.
    pub fn twist(&self, x: &GradedPoly<F>, r: i64) -> Result<Self> {
        same_table(&self.table, x.table())?;
        let t = self.trunc();
        let mut xpow = Vec::with_capacity(t + 1);
        xpow.push(GradedPoly::one(&self.table));
        for i in 1..=t {
            xpow.push(xpow[i - 1].checked_mul(x)?);
        }
        let mut out = Self::zero(&self.table, t);
        for l in 0..=t {
            let mut acc = FiberElement::zero(&self.table);
            for j in 0..=l {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let b: F = gen_binomial(r - j as i64, (l - j) as u32);
                if b.is_zero() {
                    continue;
                }
                let piece = self.coeffs[j].scale_poly(&xpow[l - j].scale(&b))?;
                acc = acc.checked_add(&piece)?;
            }
            out.coeffs[l] = acc;
        }
        Ok(out)
    }

    /// Evaluate a base-ring series at numeric generator values and a numeric
    /// `t`. Errors if any fiber component survives.
    pub fn eval_base(&self, assign: &BTreeMap<String, Complex64>, t: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut tp = 1.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_base() {
                return Err(Error::ResidualFiberComponents(format!(
                    "coefficient of t^{j} has D, Psi, or sigma parts"
                )));
            }
            acc += c.u.eval_numeric(assign)? * tp;
            tp *= t;
        }
        Ok(acc)
    }

    /// Components of every coefficient in the polynomial text format, ordered
    /// `[u, D, Psi, sigma]` per power of `t`.
    pub fn component_texts(&self) -> Vec<[String; 4]> {
        self.coeffs
            .iter()
            .map(|c| {
                [
                    c.u.to_string(),
                    c.d.to_string(),
                    c.psi.to_string(),
                    c.w.to_string(),
                ]
            })
            .collect()
    }
}

/// Generalized binomial coefficient `a (a-1) ... (a-k+1) / k!`.
fn gen_binomial<F: Scalar>(a: i64, k: u32) -> F {
    let mut num = F::one();
    for t in 0..k as i64 {
        num = num * F::from_int(a - t);
    }
    num / factorial::<F>(k)
}

/// Chern series of `Hom(L, E)` on the product with the surface, with the
/// twisting class normalized away:
/// `1 + (-(m+1) sigma + D) t + (alpha sigma + Psi + beta - A sigma / 2) t^2`.
pub fn hom_chern_series<F: Scalar>(m: u32, trunc: usize) -> Result<FiberSeries<F>> {
    if trunc < 2 {
        return Err(Error::TruncationTooShort(
            "the rank-2 Chern series needs order t^2".into(),
        ));
    }
    let tb = GeneratorTable::fiber_base();
    let alpha = GradedPoly::generator(&tb, GeneratorTable::ALPHA)?;
    let beta = GradedPoly::generator(&tb, GeneratorTable::BETA)?;
    let slot_a = GradedPoly::generator(&tb, tb.slot_a()?)?;

    let mut s = FiberSeries::one(&tb, trunc);
    let c1 = FiberElement::from_parts(
        GradedPoly::zero(&tb),
        GradedPoly::one(&tb),
        GradedPoly::zero(&tb),
        GradedPoly::constant(&tb, F::from_int(-(m as i64) - 1)),
    )?;
    let w2 = alpha.checked_sub(&slot_a.scale(&F::from_fraction(1, 2)))?;
    let c2 = FiberElement::from_parts(beta, GradedPoly::zero(&tb), GradedPoly::one(&tb), w2)?;
    s.set_coeff(1, c1)?;
    s.set_coeff(2, c2)?;
    Ok(s)
}

/// The series `kappa = -t / (2 (1 + beta t^2))` as a base-ring series.
pub fn kappa_series<F: Scalar>(trunc: usize) -> Result<FiberSeries<F>> {
    let tb = GeneratorTable::fiber_base();
    let beta = GradedPoly::generator(&tb, GeneratorTable::BETA)?;
    let mut s = FiberSeries::zero(&tb, trunc);
    let mut bpow = GradedPoly::one(&tb);
    let mut i = 0usize;
    while 2 * i + 1 <= trunc {
        let c = F::from_fraction(if i % 2 == 0 { -1 } else { 1 }, 2);
        s.set_coeff(2 * i + 1, FiberElement::from_u(bpow.scale(&c)))?;
        bpow = bpow.checked_mul(&beta)?;
        i += 1;
    }
    Ok(s)
}

/// Both sides of the slant-product corollary
/// `exp(kappa (-A + B t)) / [J_g] = (-1)^g kappa^g exp(kappa gamma t^2)`,
/// returned as exact series for coefficientwise comparison.
pub fn zagier_corollary_sides<F: Scalar>(
    g: usize,
    trunc: usize,
) -> Result<(FiberSeries<F>, FiberSeries<F>)> {
    let tb = GeneratorTable::fiber_base();
    let gamma = GradedPoly::generator(&tb, GeneratorTable::GAMMA)?;
    let slot_a = GradedPoly::generator(&tb, tb.slot_a()?)?;
    let slot_b = GradedPoly::generator(&tb, tb.slot_b()?)?;
    let kappa = kappa_series::<F>(trunc)?;

    // kappa * (-A + B t)
    let minus_a_part = kappa.scale_poly(&slot_a.neg())?;
    let mut b_part = FiberSeries::zero(&tb, trunc);
    for j in 1..=trunc {
        b_part.set_coeff(j, kappa.coeff(j - 1).scale_poly(&slot_b)?)?;
    }
    let lhs = minus_a_part
        .checked_add(&b_part)?
        .exp()?
        .slant_jacobian(g)?;

    // (-1)^g kappa^g exp(kappa gamma t^2), where the exponential collapses to
    // its first g+1 terms: gamma is nilpotent of order g+1 on the genus-g
    // side, so that is the exact polynomial content of the identity.
    let mut shifted = FiberSeries::zero(&tb, trunc);
    for j in 2..=trunc {
        shifted.set_coeff(j, kappa.coeff(j - 2).scale_poly(&gamma)?)?;
    }
    let mut tail = FiberSeries::zero(&tb, trunc);
    for p in 0..=g as u32 {
        tail = tail.checked_add(&shifted.pow(p)?.scale(&(F::one() / factorial::<F>(p))))?;
    }
    let mut rhs = kappa.pow(g as u32)?.checked_mul(&tail)?;
    if g % 2 == 1 {
        rhs = rhs.neg();
    }
    Ok((lhs, rhs))
}

/// Exact pipeline output for the first direct image of `Hom(L, E)`: the log
/// of the rank-2 series, pushed forward, negated, exponentiated, and slanted
/// against the Jacobian, together with the rank constant `2g + m - 1` read
/// off the series itself.
pub struct R1Pipeline<F: Scalar> {
    /// Slant of the Chern series of the first direct image; base-ring
    /// coefficients in `alpha, beta, gamma`.
    pub slanted: FiberSeries<F>,
    /// Rank of the first direct image, `k(g-1) + (m+1)` with `k = 2`.
    pub rank_r1: i64,
}

pub fn r1_pipeline<F: Scalar>(g: usize, m: u32, trunc: usize) -> Result<R1Pipeline<F>> {
    let hom = hom_chern_series::<F>(m, trunc)?;
    let log = hom.log()?;
    // The fiber degree of the bundle is the constant sigma-part of c_1.
    let degree = log.coeff(1).w.clone();
    if degree != GradedPoly::constant(log.table(), F::from_int(-(m as i64) - 1)) {
        return Err(Error::Domain(
            "unexpected fiber degree in the rank-2 series".into(),
        ));
    }
    let rank_r1 = 2 * (g as i64 - 1) + (m as i64 + 1);
    let pushed = log.grr_pushforward(g)?;
    let slanted = pushed.neg().exp()?.slant_jacobian(g)?;
    Ok(R1Pipeline { slanted, rank_r1 })
}

/// Closed form for the slanted Chern series of the first direct image,
/// evaluated at real points with `beta < 0`:
///
/// ```text
/// (1 + beta t^2)^((m-1)/2) (t/2)^g
///   ((1 - t sqrt(-beta)) / (1 + t sqrt(-beta)))^((2 alpha beta + gamma) / (4 (-beta)^(3/2)))
///   exp(-t gamma / (2 beta (1 + beta t^2)))
///   sum_{p=0}^{g} (kappa gamma t^2)^p / p!        kappa = -t / (2 (1 + beta t^2))
/// ```
///
/// The last two factors are the exact value of the slant product when
/// `gamma` is left free. On the genus-g side `gamma` is nilpotent of order
/// `g + 1`, so there the finite sum extends to the full exponential and the
/// product of the last two factors simplifies to `exp(-t gamma / (2 beta))`;
/// a free numeric sample does not satisfy the nilpotence, hence the split.
pub fn r1_closed_form(g: usize, m: u32, alpha: f64, beta: f64, gamma: f64, t: f64) -> Result<f64> {
    if beta >= 0.0 {
        return Err(Error::Precondition(
            "closed form is evaluated at beta < 0".into(),
        ));
    }
    let sq = (-beta).sqrt();
    if (t * sq).abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "|t sqrt(-beta)| = {} is outside the disc of convergence",
            (t * sq).abs()
        )));
    }
    let expo = (2.0 * alpha * beta + gamma) / (4.0 * sq.powi(3));
    let ratio = (1.0 - t * sq) / (1.0 + t * sq);
    let kappa = -t / (2.0 * (1.0 + beta * t * t));
    let mut tail = 0.0f64;
    let mut term = 1.0f64;
    for p in 0..=g {
        tail += term;
        term *= kappa * gamma * t * t / (p as f64 + 1.0);
    }
    Ok((1.0 + beta * t * t).powf((m as f64 - 1.0) / 2.0)
        * (t / 2.0).powi(g as i32)
        * ratio.powf(expo)
        * (-t * gamma / (2.0 * beta * (1.0 + beta * t * t))).exp()
        * tail)
}

/// Residual report for [`r1_closed_form_check`].
#[derive(Debug, Clone, Serialize)]
pub struct R1Report {
    pub g: usize,
    pub m: u32,
    pub truncation: usize,
    pub rank_r1: i64,
    pub samples: usize,
    pub max_residual: f64,
}

/// Run the full pipeline at truncation `trunc >= 2(g+m)+2` and compare
/// against [`r1_closed_form`] at `samples` seeded random real points with
/// `alpha, gamma` in `[-2, 2]`, `beta` in `[-4, -1]`, and `t = 0.05`.
/// Reports the maximum relative residual.
pub fn r1_closed_form_check(g: usize, m: u32, trunc: usize, samples: usize) -> Result<R1Report> {
    if trunc < 2 * (g + m as usize) + 2 {
        return Err(Error::Precondition(format!(
            "truncation {trunc} is below 2(g+m)+2 = {}",
            2 * (g + m as usize) + 2
        )));
    }
    let pipe = r1_pipeline::<crate::GaussRat>(g, m, trunc)?;
    let t = 0.05;
    let sym = Uniform::new_inclusive(-2.0f64, 2.0);
    let neg = Uniform::new_inclusive(-4.0f64, -1.0);
    let mut max_residual = 0.0f64;
    for idx in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0000 + idx as u64);
        let alpha = sym.sample(&mut rng);
        let beta = neg.sample(&mut rng);
        let gamma = sym.sample(&mut rng);
        let mut assign = BTreeMap::new();
        assign.insert("alpha".to_string(), Complex64::new(alpha, 0.0));
        assign.insert("beta".to_string(), Complex64::new(beta, 0.0));
        assign.insert("gamma".to_string(), Complex64::new(gamma, 0.0));
        assign.insert("A".to_string(), Complex64::new(0.0, 0.0));
        assign.insert("B".to_string(), Complex64::new(0.0, 0.0));
        let lhs = pipe.slanted.eval_base(&assign, t)?;
        let rhs = r1_closed_form(g, m, alpha, beta, gamma, t)?;
        let rel = (lhs - rhs).norm() / rhs.abs().max(1e-12);
        max_residual = max_residual.max(rel);
    }
    Ok(R1Report {
        g,
        m,
        truncation: trunc,
        rank_r1: pipe.rank_r1,
        samples,
        max_residual,
    })
}

/// Default truncation for the pipeline: two orders past the rank threshold.
pub fn default_truncation(g: usize, m: u32) -> usize {
    2 * (g + m as usize) + 4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussRat;

    type E = FiberElement<GaussRat>;
    type S = FiberSeries<GaussRat>;

    fn tb() -> Arc<GeneratorTable> {
        GeneratorTable::fiber_base()
    }

    fn gen(t: &Arc<GeneratorTable>, idx: usize) -> GradedPoly<GaussRat> {
        GradedPoly::generator(t, idx).unwrap()
    }

    fn d_elt(t: &Arc<GeneratorTable>) -> E {
        FiberElement::from_parts(
            GradedPoly::zero(t),
            GradedPoly::one(t),
            GradedPoly::zero(t),
            GradedPoly::zero(t),
        )
        .unwrap()
    }

    fn psi_elt(t: &Arc<GeneratorTable>) -> E {
        FiberElement::from_parts(
            GradedPoly::zero(t),
            GradedPoly::zero(t),
            GradedPoly::one(t),
            GradedPoly::zero(t),
        )
        .unwrap()
    }

    fn sigma_elt(t: &Arc<GeneratorTable>) -> E {
        FiberElement::from_parts(
            GradedPoly::zero(t),
            GradedPoly::zero(t),
            GradedPoly::zero(t),
            GradedPoly::one(t),
        )
        .unwrap()
    }

    #[test]
    fn fiber_relations() {
        let t = tb();
        let d = d_elt(&t);
        let psi = psi_elt(&t);
        let sigma = sigma_elt(&t);
        let a = gen(&t, t.slot_a().unwrap());
        let b = gen(&t, t.slot_b().unwrap());
        let gamma = gen(&t, GeneratorTable::GAMMA);
        let minus2 = GaussRat::from_int(-2);

        let dd = d.checked_mul(&d).unwrap();
        assert_eq!(dd, sigma.scale_poly(&a.scale(&minus2)).unwrap());
        let pp = psi.checked_mul(&psi).unwrap();
        assert_eq!(pp, sigma.scale_poly(&gamma.scale(&minus2)).unwrap());
        let dp = d.checked_mul(&psi).unwrap();
        let pd = psi.checked_mul(&d).unwrap();
        assert_eq!(dp, sigma.scale_poly(&b).unwrap());
        assert_eq!(dp, pd);

        // sigma is a square-zero annihilator of the fiber classes
        assert!(sigma.checked_mul(&sigma).unwrap().is_zero());
        assert!(sigma.checked_mul(&d).unwrap().is_zero());
        assert!(sigma.checked_mul(&psi).unwrap().is_zero());
        // cubes vanish
        let ddd = dd.checked_mul(&d).unwrap();
        assert!(ddd.is_zero());
        assert!(pp.checked_mul(&psi).unwrap().is_zero());
    }

    #[test]
    fn square_of_linear_combination() {
        // (a D + b Psi)^2 = (-2 A a^2 + 2 a b B - 2 gamma b^2) sigma
        let t = tb();
        let a_cls = gen(&t, t.slot_a().unwrap());
        let b_cls = gen(&t, t.slot_b().unwrap());
        let gamma = gen(&t, GeneratorTable::GAMMA);
        let alpha = gen(&t, GeneratorTable::ALPHA);
        let beta = gen(&t, GeneratorTable::BETA);

        let a = alpha.checked_add(&a_cls.scale(&GaussRat::from_int(3))).unwrap();
        let b = beta
            .checked_add(&GradedPoly::constant(&t, GaussRat::from_fraction(1, 2)))
            .unwrap();

        let lin = d_elt(&t)
            .scale_poly(&a)
            .unwrap()
            .checked_add(&psi_elt(&t).scale_poly(&b).unwrap())
            .unwrap();
        let sq = lin.checked_mul(&lin).unwrap();

        let two = GaussRat::from_int(2);
        let mut expect = a_cls
            .checked_mul(&a.pow(2))
            .unwrap()
            .scale(&two)
            .neg();
        expect = expect
            .checked_add(
                &b_cls
                    .checked_mul(&a.checked_mul(&b).unwrap())
                    .unwrap()
                    .scale(&two),
            )
            .unwrap();
        expect = expect
            .checked_sub(&gamma.checked_mul(&b.pow(2)).unwrap().scale(&two))
            .unwrap();
        assert_eq!(sq, sigma_elt(&t).scale_poly(&expect).unwrap());
    }

    #[test]
    fn log_of_scalar_series() {
        // log(1 + beta t^2) = beta t^2 - beta^2 t^4 / 2 + beta^3 t^6 / 3 - ...
        let t = tb();
        let beta = gen(&t, GeneratorTable::BETA);
        let mut s = S::one(&t, 8);
        s.set_coeff(2, FiberElement::from_u(beta.clone())).unwrap();
        let l = s.log().unwrap();
        for i in 1..=4usize {
            let c = GaussRat::from_fraction(if i % 2 == 1 { 1 } else { -1 }, i as i64);
            assert_eq!(l.coeff(2 * i).u, beta.pow(i as u32).scale(&c));
            assert!(l.coeff(2 * i - 1).is_zero());
        }
        // log(1) = 0
        assert!(S::one(&t, 5).log().unwrap().is_zero());
        // round trips
        assert_eq!(l.exp().unwrap(), s);
        let hom = hom_chern_series::<GaussRat>(2, 7).unwrap();
        assert_eq!(hom.log().unwrap().exp().unwrap(), hom);
    }

    #[test]
    fn log_rejects_non_unit_constant() {
        let t = tb();
        let s = S::zero(&t, 3);
        assert!(matches!(s.log(), Err(Error::NonUnitConstantTerm(_))));
        assert!(matches!(
            S::one(&t, 3).exp(),
            Err(Error::NonZeroConstantTerm(_))
        ));
    }

    #[test]
    fn log_matches_displayed_expansion() {
        // ln c_t = ln(1 + beta t^2) + X/(1 + beta t^2)
        //          + (A sigma t^2 - B sigma t^3 + gamma sigma t^4)/(1 + beta t^2)^2
        // with X = (-(m+1) sigma + D) t + (alpha sigma + Psi - A sigma/2) t^2.
        let t = tb();
        let trunc = 9usize;
        for m in [1u32, 2] {
            let log = hom_chern_series::<GaussRat>(m, trunc).unwrap().log().unwrap();

            let beta = gen(&t, GeneratorTable::BETA);
            let alpha = gen(&t, GeneratorTable::ALPHA);
            let a_cls = gen(&t, t.slot_a().unwrap());
            let b_cls = gen(&t, t.slot_b().unwrap());
            let gamma = gen(&t, GeneratorTable::GAMMA);

            // geometric inverse of 1 + beta t^2
            let mut inv = S::zero(&t, trunc);
            let mut bp = GradedPoly::one(&t);
            let mut i = 0;
            while 2 * i <= trunc {
                let c = if i % 2 == 0 {
                    GaussRat::from_int(1)
                } else {
                    GaussRat::from_int(-1)
                };
                inv.set_coeff(2 * i, FiberElement::from_u(bp.scale(&c))).unwrap();
                bp = bp.checked_mul(&beta).unwrap();
                i += 1;
            }

            let mut scalar_log = S::zero(&t, trunc);
            let mut bp = beta.clone();
            let mut i = 1;
            while 2 * i <= trunc {
                let c = GaussRat::from_fraction(if i % 2 == 1 { 1 } else { -1 }, i as i64);
                scalar_log
                    .set_coeff(2 * i, FiberElement::from_u(bp.scale(&c)))
                    .unwrap();
                bp = bp.checked_mul(&beta).unwrap();
                i += 1;
            }

            let mut x = S::zero(&t, trunc);
            x.set_coeff(
                1,
                FiberElement::from_parts(
                    GradedPoly::zero(&t),
                    GradedPoly::one(&t),
                    GradedPoly::zero(&t),
                    GradedPoly::constant(&t, GaussRat::from_int(-(m as i64) - 1)),
                )
                .unwrap(),
            )
            .unwrap();
            x.set_coeff(
                2,
                FiberElement::from_parts(
                    GradedPoly::zero(&t),
                    GradedPoly::zero(&t),
                    GradedPoly::one(&t),
                    alpha
                        .checked_sub(&a_cls.scale(&GaussRat::from_fraction(1, 2)))
                        .unwrap(),
                )
                .unwrap(),
            )
            .unwrap();

            let mut corr = S::zero(&t, trunc);
            corr.set_coeff(2, sigma_elt(&t).scale_poly(&a_cls).unwrap()).unwrap();
            corr.set_coeff(3, sigma_elt(&t).scale_poly(&b_cls.neg()).unwrap())
                .unwrap();
            corr.set_coeff(4, sigma_elt(&t).scale_poly(&gamma).unwrap()).unwrap();

            let inv2 = inv.checked_mul(&inv).unwrap();
            let expect = scalar_log
                .checked_add(&x.checked_mul(&inv).unwrap())
                .unwrap()
                .checked_add(&corr.checked_mul(&inv2).unwrap())
                .unwrap();
            assert_eq!(log, expect);
        }
    }

    #[test]
    fn pushforward_basics() {
        let t = tb();
        // u = 0, w(t) = c t^2 maps to -c t for any genus
        let c = GradedPoly::constant(&t, GaussRat::from_int(7));
        let mut s = S::zero(&t, 4);
        s.set_coeff(2, sigma_elt(&t).scale_poly(&c).unwrap()).unwrap();
        let out = s.grr_pushforward(3).unwrap();
        assert_eq!(out.trunc(), 3);
        assert_eq!(out.coeff(1).u, c.neg());
        for j in [0usize, 2, 3] {
            assert!(out.coeff(j).is_zero());
        }
        // zero input, zero output
        assert!(S::zero(&t, 4).grr_pushforward(2).unwrap().is_zero());
        // pure D / Psi components are annihilated
        let mut v = S::zero(&t, 4);
        v.set_coeff(1, d_elt(&t)).unwrap();
        v.set_coeff(2, psi_elt(&t)).unwrap();
        assert!(v.grr_pushforward(2).unwrap().is_zero());
        // constant terms are rejected
        assert!(matches!(
            S::one(&t, 4).grr_pushforward(2),
            Err(Error::NonZeroConstantTerm(_))
        ));
    }

    #[test]
    fn pushforward_is_linear() {
        let t = tb();
        let alpha = gen(&t, GeneratorTable::ALPHA);
        let beta = gen(&t, GeneratorTable::BETA);
        let mut s1 = S::zero(&t, 5);
        s1.set_coeff(1, FiberElement::from_u(alpha.clone())).unwrap();
        s1.set_coeff(3, sigma_elt(&t).scale_poly(&beta).unwrap()).unwrap();
        let mut s2 = S::zero(&t, 5);
        s2.set_coeff(2, sigma_elt(&t).scale_poly(&alpha).unwrap()).unwrap();
        s2.set_coeff(4, FiberElement::from_u(beta.clone())).unwrap();
        let lhs = s1
            .checked_add(&s2)
            .unwrap()
            .grr_pushforward(2)
            .unwrap();
        let rhs = s1
            .grr_pushforward(2)
            .unwrap()
            .checked_add(&s2.grr_pushforward(2).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_matches_displayed_result() {
        // Expected series, expanded from
        //   (1/2 - g - m/2) ln(1 + beta t^2)
        //   + (t/2)(-A + gamma/beta + B t)/(1 + beta t^2)
        //   + (2 alpha beta + gamma)/(4 (-beta)^(3/2)) ln((1+t sqrt(-beta))/(1-t sqrt(-beta)))
        // whose t^(2i+1) and t^(2i+2) coefficients are polynomial in
        // alpha, beta, gamma, A, B.
        let t = tb();
        let trunc = 10usize;
        for (g, m) in [(0usize, 1u32), (2, 2)] {
            let out = hom_chern_series::<GaussRat>(m, trunc)
                .unwrap()
                .log()
                .unwrap()
                .grr_pushforward(g)
                .unwrap();

            let alpha = gen(&t, GeneratorTable::ALPHA);
            let beta = gen(&t, GeneratorTable::BETA);
            let gamma = gen(&t, GeneratorTable::GAMMA);
            let a_cls = gen(&t, t.slot_a().unwrap());
            let b_cls = gen(&t, t.slot_b().unwrap());

            let mut expect = S::zero(&t, trunc - 1);
            let half_m_g = GaussRat::from_fraction(1, 2)
                - GaussRat::from_int(g as i64)
                - GaussRat::from_fraction(m as i64, 2);
            for i in 1..=(trunc - 1) / 2 {
                // even orders: scalar log plus the B tail
                let sign = if i % 2 == 1 {
                    GaussRat::from_int(1)
                } else {
                    GaussRat::from_int(-1)
                };
                let mut even = beta
                    .pow(i as u32)
                    .scale(&(sign.clone() * half_m_g.clone() / GaussRat::from_int(i as i64)));
                if 2 * i >= 2 {
                    // + (B/2) (-beta)^(i-1) t^(2i)
                    let c = GaussRat::from_fraction(if (i - 1) % 2 == 0 { 1 } else { -1 }, 2);
                    even = even
                        .checked_add(&b_cls.checked_mul(&beta.pow((i - 1) as u32)).unwrap().scale(&c))
                        .unwrap();
                }
                if 2 * i <= trunc - 1 {
                    expect.set_coeff(2 * i, FiberElement::from_u(even)).unwrap();
                }
            }
            for i in 0..=(trunc - 2) / 2 {
                // odd orders 2i+1: -(A/2)(-beta)^i - alpha (-beta)^i/(2i+1)
                //                  + gamma i/(2i+1) (-1)^i beta^(i-1) (i >= 1)
                let neg_beta_i = if i % 2 == 0 {
                    GaussRat::from_int(1)
                } else {
                    GaussRat::from_int(-1)
                };
                let bp = beta.pow(i as u32);
                let mut odd = a_cls
                    .checked_mul(&bp)
                    .unwrap()
                    .scale(&(neg_beta_i.clone() * GaussRat::from_fraction(-1, 2)));
                odd = odd
                    .checked_sub(&alpha.checked_mul(&bp).unwrap().scale(
                        &(neg_beta_i.clone() / GaussRat::from_int(2 * i as i64 + 1)),
                    ))
                    .unwrap();
                if i >= 1 {
                    let c = neg_beta_i * GaussRat::from_fraction(i as i64, 2 * i as i64 + 1);
                    odd = odd
                        .checked_add(
                            &gamma
                                .checked_mul(&beta.pow((i - 1) as u32))
                                .unwrap()
                                .scale(&c),
                        )
                        .unwrap();
                }
                expect.set_coeff(2 * i + 1, FiberElement::from_u(odd)).unwrap();
            }
            assert_eq!(out, expect, "g={g} m={m}");
        }
    }

    #[test]
    fn slant_monomials() {
        let t = tb();
        let a_cls = gen(&t, t.slot_a().unwrap());
        let b_cls = gen(&t, t.slot_b().unwrap());
        let gamma = gen(&t, GeneratorTable::GAMMA);

        // A^g / g! slants to 1
        let g = 2usize;
        let mut s = S::zero(&t, 0);
        s.set_coeff(
            0,
            FiberElement::from_u(a_cls.pow(2).scale(&GaussRat::from_fraction(1, 2))),
        )
        .unwrap();
        let out = s.slant_jacobian(g).unwrap();
        assert_eq!(out.coeff(0).u, GradedPoly::one(&t));

        // A alone at g=2 slants to zero (2r + s = 2, not 4)
        let mut s = S::zero(&t, 0);
        s.set_coeff(0, FiberElement::from_u(a_cls.clone())).unwrap();
        assert!(s.slant_jacobian(2).unwrap().is_zero());

        // B^2 at g=1: r=0, s=2 gives 0! 2! (-gamma)/1! = -2 gamma
        let mut s = S::zero(&t, 0);
        s.set_coeff(0, FiberElement::from_u(b_cls.pow(2))).unwrap();
        let out = s.slant_jacobian(1).unwrap();
        assert_eq!(out.coeff(0).u, gamma.scale(&GaussRat::from_int(-2)));

        // residual fiber parts are rejected
        let mut s = S::zero(&t, 1);
        s.set_coeff(1, d_elt(&t)).unwrap();
        assert!(matches!(
            s.slant_jacobian(1),
            Err(Error::ResidualFiberComponents(_))
        ));
    }

    #[test]
    fn zagier_corollary_exact_to_order_12() {
        for g in 0..=3usize {
            let (lhs, rhs) = zagier_corollary_sides::<GaussRat>(g, 12).unwrap();
            assert_eq!(lhs, rhs, "g={g}");
        }
    }

    #[test]
    fn twist_group_action() {
        let t = tb();
        let alpha = gen(&t, GeneratorTable::ALPHA);
        let a_cls = gen(&t, t.slot_a().unwrap());
        let s = hom_chern_series::<GaussRat>(1, 8).unwrap();
        let r = 3i64;

        // identity twist
        assert_eq!(s.twist(&GradedPoly::zero(&t), r).unwrap(), s);
        // composition law and inverses
        let xy = alpha.checked_add(&a_cls).unwrap();
        let two_step = s.twist(&alpha, r).unwrap().twist(&a_cls, r).unwrap();
        assert_eq!(two_step, s.twist(&xy, r).unwrap());
        let back = s.twist(&alpha, r).unwrap().twist(&alpha.neg(), r).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn twist_preserves_chern_grading() {
        // coefficient of t^l stays homogeneous: u in degree 2l, d in 2l-2,
        // psi in 2l-4, w in 2l-2
        let t = tb();
        let alpha = gen(&t, GeneratorTable::ALPHA);
        let tw = hom_chern_series::<GaussRat>(2, 6)
            .unwrap()
            .twist(&alpha, 4)
            .unwrap();
        for l in 0..=tw.trunc() {
            let c = tw.coeff(l);
            let checks = [(&c.u, 0i64), (&c.d, 2), (&c.psi, 4), (&c.w, 2)];
            for (p, shift) in checks {
                if let Some(d) = p.homogeneous_degree().unwrap() {
                    assert_eq!(d + shift, 2 * l as i64, "t^{l} shift {shift}");
                }
            }
        }
    }

    #[test]
    fn pipeline_low_coefficients_vanish_below_genus() {
        // the slanted series starts at t^g with leading coefficient 2^(-g)
        for (g, m) in [(1usize, 1u32), (2, 1)] {
            let pipe = r1_pipeline::<GaussRat>(g, m, default_truncation(g, m)).unwrap();
            for j in 0..g {
                assert!(pipe.slanted.coeff(j).is_zero(), "g={g} j={j}");
            }
            let lead = pipe.slanted.coeff(g).u.clone();
            let expect = GradedPoly::constant(
                pipe.slanted.table(),
                GaussRat::from_fraction(1, 1 << g),
            );
            assert_eq!(lead, expect, "g={g}");
        }
    }

    #[test]
    fn closed_form_residuals() {
        // truncation 10 and 12: far enough past the rank threshold that the
        // tail of the series at t = 0.05 sits below the 1e-9 tolerance
        for (g, m, trunc) in [(0usize, 1u32, 10), (1, 1, 12), (0, 2, 12), (1, 2, 12)] {
            let report = r1_closed_form_check(g, m, trunc, 20).unwrap();
            assert_eq!(report.rank_r1, 2 * g as i64 + m as i64 - 1);
            assert!(
                report.max_residual < 1e-9,
                "g={g} m={m} residual {}",
                report.max_residual
            );
        }
    }

    #[test]
    fn closed_form_guards() {
        assert!(matches!(
            r1_closed_form(0, 1, 0.0, 1.0, 0.0, 0.05),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            r1_closed_form(0, 1, 0.0, -4.0, 0.0, 0.6),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            r1_closed_form_check(0, 1, 3, 5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn series_text_round_trip() {
        let t = tb();
        let s = hom_chern_series::<GaussRat>(1, 3).unwrap();
        for row in s.component_texts() {
            for text in row {
                let p = GradedPoly::<GaussRat>::parse(&t, &text).unwrap();
                assert_eq!(p.to_string(), text);
            }
        }
    }
}
