//! Ideals in the even commutative ring and their finite quotients.
//!
//! Plain Buchberger completion (with the coprime-leading-term skip), reduction
//! to the unique monic reduced basis, staircase enumeration of standard
//! monomials, multiplication-operator matrices on the quotient, and the
//! spectrum of multiplication by `alpha`. Also the model polynomial families
//! built from the odd-integer eigenvalue ladder `|lambda_i| = 2i - 1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::generators::{same_table, GeneratorTable, TableKind};
use crate::linalg::{numeric_eigenvalues, rational_roots, Mat};
use crate::poly::{GradedPoly, Monomial};
use crate::scalar::Scalar;
use crate::{Rat, Result};

/// Practical cap on the number of ring variables per ideal.
pub const VARIABLE_CAP: usize = 12;

const ENUMERATION_CAP: usize = 1 << 20;

/// Term order on exponent vectors. Significance runs
/// `beta > gamma > delta_1 > ... > delta_n > alpha`; keeping `alpha` least
/// makes quotients by univariate-in-alpha ideals come out in companion form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MonomialOrder {
    /// Degree-reverse-lexicographic, `alpha` least significant.
    GrevlexAlphaLast,
    /// Plain lexicographic over the same significance sequence.
    Lex,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::GrevlexAlphaLast
    }
}

impl MonomialOrder {
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ae = a.exps();
        let be = b.exps();
        debug_assert_eq!(ae.len(), be.len());
        let k = ae.len();
        match self {
            MonomialOrder::GrevlexAlphaLast => {
                match a.total_exponent().cmp(&b.total_exponent()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // walk from the least significant variable up; at the first
                // difference the smaller exponent wins
                for idx in std::iter::once(0).chain((1..k).rev()) {
                    match ae[idx].cmp(&be[idx]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for idx in (1..k).chain(std::iter::once(0)) {
                    match ae[idx].cmp(&be[idx]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// An ideal of the even commutative ring `C[alpha, beta, gamma, delta_1..n]`,
/// tagged with the term order used for all basis computations.
#[derive(Clone, Debug)]
pub struct CommIdeal<F: Scalar> {
    table: Arc<GeneratorTable>,
    gens: Vec<GradedPoly<F>>,
    order: MonomialOrder,
}

impl<F: Scalar> CommIdeal<F> {
    pub fn new(gens: Vec<GradedPoly<F>>, order: MonomialOrder) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::Precondition(
                "an ideal needs at least one generator".into(),
            ));
        };
        let table = first.table().clone();
        if table.kind != TableKind::Commutative {
            return Err(Error::OddGenerators(
                "ideal generators must live on a commutative table; reindex first".into(),
            ));
        }
        if table.len() > VARIABLE_CAP {
            return Err(Error::VariableCap { got: table.len(), cap: VARIABLE_CAP });
        }
        for (i, g) in gens.iter().enumerate() {
            same_table(&table, g.table())?;
            if g.is_zero() {
                return Err(Error::Domain(format!("ideal generator {i} is zero")));
            }
        }
        Ok(Self { table, gens, order })
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn generators(&self) -> &[GradedPoly<F>] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }
}

fn leading_term<'a, F: Scalar>(
    p: &'a GradedPoly<F>,
    order: MonomialOrder,
) -> (&'a Monomial, &'a F) {
    p.terms()
        .max_by(|(ma, _), (mb, _)| order.cmp_monomials(ma, mb))
        .expect("leading term of the zero polynomial")
}

fn mono_divides(a: &Monomial, b: &Monomial) -> bool {
    a.exps().iter().zip(b.exps()).all(|(x, y)| x <= y)
}

fn mono_quot(b: &Monomial, a: &Monomial) -> Monomial {
    let exps: Vec<u32> = b.exps().iter().zip(a.exps()).map(|(y, x)| y - x).collect();
    Monomial(exps.into_boxed_slice())
}

fn mono_lcm(a: &Monomial, b: &Monomial) -> Monomial {
    let exps: Vec<u32> = a.exps().iter().zip(b.exps()).map(|(x, y)| *x.max(y)).collect();
    Monomial(exps.into_boxed_slice())
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.exps().iter().zip(b.exps()).all(|(x, y)| *x == 0 || *y == 0)
}

fn term_poly<F: Scalar>(table: &Arc<GeneratorTable>, m: Monomial, c: F) -> GradedPoly<F> {
    GradedPoly::from_terms(table, [(m, c)])
}

/// Full division remainder: no monomial of the result is divisible by any
/// basis leading term. Terminates because the leading monomial of the working
/// polynomial strictly decreases.
fn divide<F: Scalar>(
    f: &GradedPoly<F>,
    basis: &[GradedPoly<F>],
    order: MonomialOrder,
) -> Result<GradedPoly<F>> {
    let table = f.table();
    let lts: Vec<(Monomial, F)> = basis
        .iter()
        .map(|g| {
            let (m, c) = leading_term(g, order);
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = f.clone();
    let mut rem = GradedPoly::zero(table);
    while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = leading_term(&work, order);
            (m.clone(), c.clone())
        };
        match lts.iter().position(|(gm, _)| mono_divides(gm, &lm)) {
            Some(i) => {
                let q = term_poly(table, mono_quot(&lm, &lts[i].0), lc / lts[i].1.clone());
                work = work.checked_sub(&basis[i].checked_mul(&q)?)?;
            }
            None => {
                rem.add_term(lm.clone(), lc.clone());
                work = work.checked_sub(&term_poly(table, lm, lc))?;
            }
        }
    }
    Ok(rem)
}

fn s_polynomial<F: Scalar>(
    fa: &GradedPoly<F>,
    fb: &GradedPoly<F>,
    order: MonomialOrder,
) -> Result<GradedPoly<F>> {
    let table = fa.table();
    let (lma, lca) = leading_term(fa, order);
    let (lmb, lcb) = leading_term(fb, order);
    let l = mono_lcm(lma, lmb);
    let ta = term_poly(table, mono_quot(&l, lma), F::one() / lca.clone());
    let tb = term_poly(table, mono_quot(&l, lmb), F::one() / lcb.clone());
    fa.checked_mul(&ta)?.checked_sub(&fb.checked_mul(&tb)?)
}

fn buchberger<F: Scalar>(
    gens: &[GradedPoly<F>],
    order: MonomialOrder,
) -> Result<Vec<GradedPoly<F>>> {
    let mut basis: Vec<GradedPoly<F>> = gens.to_vec();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.insert((j, i));
        }
    }
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        if coprime(leading_term(&basis[i], order).0, leading_term(&basis[j], order).0) {
            // such S-polynomials always reduce to zero
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let nf = divide(&s, &basis, order)?;
        if !nf.is_zero() {
            let k = basis.len();
            basis.push(nf);
            for t in 0..k {
                pairs.insert((t, k));
            }
        }
    }
    Ok(basis)
}

/// Minimalize, tail-reduce and normalize to the unique monic reduced basis,
/// sorted ascending by leading monomial.
fn reduce_basis<F: Scalar>(
    basis: Vec<GradedPoly<F>>,
    order: MonomialOrder,
) -> Result<Vec<GradedPoly<F>>> {
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| {
        order.cmp_monomials(leading_term(&basis[a], order).0, leading_term(&basis[b], order).0)
    });
    let mut kept: Vec<GradedPoly<F>> = Vec::new();
    for i in idx {
        let lm = leading_term(&basis[i], order).0;
        if kept.iter().all(|g| !mono_divides(leading_term(g, order).0, lm)) {
            kept.push(basis[i].clone());
        }
    }
    let mut out: Vec<GradedPoly<F>> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<GradedPoly<F>> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let red = divide(&kept[i], &others, order)?;
        let lc = leading_term(&red, order).1.clone();
        out.push(red.div_scalar(&lc));
    }
    Ok(out)
}

/// Standard monomials below the staircase, or `None` when some variable is
/// not capped by a pure-power leading monomial (infinite quotient).
fn staircase<F: Scalar>(
    basis: &[GradedPoly<F>],
    table: &Arc<GeneratorTable>,
    order: MonomialOrder,
) -> Result<Option<Vec<Monomial>>> {
    let k = table.len();
    let lts: Vec<Monomial> = basis.iter().map(|g| leading_term(g, order).0.clone()).collect();
    if lts.iter().any(Monomial::is_unit) {
        return Ok(Some(Vec::new()));
    }
    let mut caps: Vec<Option<u32>> = vec![None; k];
    for lt in &lts {
        let nonzero: Vec<usize> = lt
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect();
        if let [v] = nonzero[..] {
            let e = lt.exps()[v];
            caps[v] = Some(caps[v].map_or(e, |b| b.min(e)));
        }
    }
    let Some(caps) = caps.into_iter().collect::<Option<Vec<u32>>>() else {
        return Ok(None);
    };
    let mut size: usize = 1;
    for &c in &caps {
        size = size
            .checked_mul(c as usize)
            .filter(|&s| s <= ENUMERATION_CAP)
            .ok_or_else(|| {
                Error::Domain(format!("staircase exceeds {ENUMERATION_CAP} candidate monomials"))
            })?;
    }
    let _ = size;
    let mut out: Vec<Monomial> = Vec::new();
    let mut exps = vec![0u32; k];
    'walk: loop {
        let m = Monomial(exps.clone().into_boxed_slice());
        if lts.iter().all(|lt| !mono_divides(lt, &m)) {
            out.push(m);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                break 'walk;
            }
            exps[pos] += 1;
            if exps[pos] < caps[pos] {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
    out.sort_by(|a, b| order.cmp_monomials(a, b));
    Ok(Some(out))
}

/// Reduced monic basis together with the staircase data of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientBasis<F: Scalar> {
    table: Arc<GeneratorTable>,
    order: MonomialOrder,
    basis: Vec<GradedPoly<F>>,
    standard: Option<Vec<Monomial>>,
}

pub fn groebner<F: Scalar>(ideal: &CommIdeal<F>) -> Result<QuotientBasis<F>> {
    let order = ideal.order();
    let basis = reduce_basis(buchberger(ideal.generators(), order)?, order)?;
    let standard = staircase(&basis, ideal.table(), order)?;
    Ok(QuotientBasis { table: ideal.table().clone(), order, basis, standard })
}

impl<F: Scalar> QuotientBasis<F> {
    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[GradedPoly<F>] {
        &self.basis
    }

    pub fn is_finite(&self) -> bool {
        self.standard.is_some()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.standard.as_ref().map(Vec::len)
    }

    pub fn standard_monomials(&self) -> Option<&[Monomial]> {
        self.standard.as_deref()
    }

    pub fn standard_monomial_texts(&self) -> Option<Vec<String>> {
        self.standard
            .as_ref()
            .map(|ms| ms.iter().map(|m| monomial_text(&self.table, m)).collect())
    }

    /// Canonical coset representative of `f` modulo the ideal.
    pub fn normal_form(&self, f: &GradedPoly<F>) -> Result<GradedPoly<F>> {
        same_table(&self.table, f.table())?;
        divide(f, &self.basis, self.order)
    }

    pub fn contains(&self, f: &GradedPoly<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Matrix of multiplication by `f` in the standard-monomial basis.
    pub fn mult_operator(&self, f: &GradedPoly<F>) -> Result<Mat<F>> {
        same_table(&self.table, f.table())?;
        let standard = self.standard.as_ref().ok_or(Error::InfiniteQuotient)?;
        let index: BTreeMap<&Monomial, usize> =
            standard.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let d = standard.len();
        let mut mat = Mat::zeros(d, d);
        for (j, s) in standard.iter().enumerate() {
            let prod = f.checked_mul(&term_poly(&self.table, s.clone(), F::one()))?;
            let nf = divide(&prod, &self.basis, self.order)?;
            for (m, c) in nf.terms() {
                let i = *index.get(m).expect("normal form stays below the staircase");
                mat[(i, j)] = c.clone();
            }
        }
        Ok(mat)
    }

    /// Eigenvalues of multiplication by `alpha` on the quotient. Exact when
    /// the characteristic polynomial splits over the rationals; otherwise a
    /// floating-point fallback clustered at tolerance 1e-10.
    pub fn alpha_spectrum(&self) -> Result<SpectrumReport> {
        let alpha = GradedPoly::generator(&self.table, GeneratorTable::ALPHA)?;
        let mat = self.mult_operator(&alpha)?;
        let d = mat.rows;
        let cp = mat.char_poly();
        if let Some(rat_cp) = cp.iter().map(Scalar::as_rational).collect::<Option<Vec<Rat>>>() {
            let (roots, remainder) = rational_roots(&rat_cp);
            if remainder.len() == 1 {
                let mut entries = Vec::new();
                for (root, alg_mult) in roots {
                    let lambda = F::from_rat(&root);
                    let mut shifted = mat.clone();
                    for i in 0..d {
                        shifted[(i, i)] = shifted[(i, i)].clone() - lambda.clone();
                    }
                    entries.push(SpectrumEntry {
                        value: root.to_string(),
                        alg_mult,
                        geo_mult: shifted.nullity(),
                    });
                }
                return Ok(SpectrumReport { dimension: d, exact: true, entries });
            }
        }
        let vals = numeric_eigenvalues(&mat).ok_or_else(|| {
            Error::Domain("numeric eigenvalue fallback needs real matrix entries".into())
        })?;
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        let mut i = 0;
        while i < vals.len() {
            let mut j = i + 1;
            while j < vals.len() && (vals[j] - vals[i]).norm() <= 1e-10 {
                j += 1;
            }
            let centre = vals[i..j].iter().sum::<Complex64>() / (j - i) as f64;
            entries.push(SpectrumEntry {
                value: complex_text(centre),
                alg_mult: j - i,
                geo_mult: numeric_nullity(&mat, centre),
            });
            i = j;
        }
        Ok(SpectrumReport { dimension: d, exact: false, entries })
    }
}

/// Matrix of multiplication by `f` on the quotient by `ideal`.
pub fn mult_operator<F: Scalar>(ideal: &CommIdeal<F>, f: &GradedPoly<F>) -> Result<Mat<F>> {
    groebner(ideal)?.mult_operator(f)
}

/// Membership test: the normal form of `f` vanishes.
pub fn ideal_member<F: Scalar>(f: &GradedPoly<F>, ideal: &CommIdeal<F>) -> Result<bool> {
    groebner(ideal)?.contains(f)
}

pub fn alpha_spectrum<F: Scalar>(ideal: &CommIdeal<F>) -> Result<SpectrumReport> {
    groebner(ideal)?.alpha_spectrum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub value: String,
    pub alg_mult: usize,
    pub geo_mult: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub dimension: usize,
    pub exact: bool,
    pub entries: Vec<SpectrumEntry>,
}

fn numeric_nullity<F: Scalar>(mat: &Mat<F>, lambda: Complex64) -> usize {
    let d = mat.rows;
    let mut c = mat.to_c64();
    for i in 0..d {
        c[(i, i)] -= lambda;
    }
    let svd = c.svd(false, false);
    let max_sv = svd.singular_values.iter().copied().fold(0.0f64, f64::max);
    let tol = 1e-10 * max_sv.max(1.0);
    d - svd.singular_values.iter().filter(|&&s| s > tol).count()
}

fn complex_text(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    if z.im.abs() <= 1e-10 {
        format!("{re}")
    } else {
        format!("{re}{:+}i", z.im)
    }
}

/// Text form of a bare monomial: `1`, `alpha`, `alpha^2 * delta_1`, ...
pub fn monomial_text(table: &GeneratorTable, m: &Monomial) -> String {
    if m.is_unit() {
        return "1".into();
    }
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = &table.gen_info(i).name;
        parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
    }
    parts.join(" * ")
}

/// Sign convention for the eigenvalue ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LambdaSigns {
    /// `1, -3, 5, -7, ...`
    Alternating,
    /// Global sign flip: `-1, 3, -5, 7, ...`
    Flipped,
    /// `1, 3, 5, 7, ...`
    Positive,
}

/// Model polynomial families in `alpha` over the ladder. Only the magnitudes
/// `|lambda_i| = 2i - 1` are forced; signs and the factor exponents are free
/// parameters, so they stay configurable with small defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralPolynomials {
    pub signs: LambdaSigns,
    /// Factor exponent of `p_poly`.
    pub exp_p: u32,
    /// Factor exponent of `h_poly`.
    pub exp_h: u32,
}

impl Default for SpectralPolynomials {
    fn default() -> Self {
        Self { signs: LambdaSigns::Alternating, exp_p: 2, exp_h: 2 }
    }
}

impl SpectralPolynomials {
    /// `i` one-based.
    pub fn lambda(&self, i: u32) -> i64 {
        let mag = 2 * i as i64 - 1;
        match self.signs {
            LambdaSigns::Alternating => {
                if i % 2 == 1 {
                    mag
                } else {
                    -mag
                }
            }
            LambdaSigns::Flipped => {
                if i % 2 == 1 {
                    -mag
                } else {
                    mag
                }
            }
            LambdaSigns::Positive => mag,
        }
    }

    pub fn lambdas(&self, count: u32) -> Vec<i64> {
        (1..=count).map(|i| self.lambda(i)).collect()
    }

    fn factor_count(g: i64, n: usize) -> Result<u32> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::Precondition(format!("family index n must be odd, got {n}")));
        }
        let count = g + (n as i64 - 1) / 2;
        if count < 0 {
            return Err(Error::Precondition(format!(
                "g + (n-1)/2 must be nonnegative, got {count}"
            )));
        }
        Ok(count as u32)
    }

    /// `prod_{i=1}^{g+m} (alpha - lambda_i)` with `m = (n-1)/2`.
    pub fn q_poly<F: Scalar>(
        &self,
        table: &Arc<GeneratorTable>,
        g: i64,
        n: usize,
    ) -> Result<GradedPoly<F>> {
        self.ladder_product(table, g, n, 1)
    }

    /// `prod_{i=1}^{g+m} (alpha - lambda_i)^{exp_p}`; `g = -1` is 1 by convention.
    pub fn p_poly<F: Scalar>(
        &self,
        table: &Arc<GeneratorTable>,
        g: i64,
        n: usize,
    ) -> Result<GradedPoly<F>> {
        if g == -1 {
            Self::factor_count(0, n)?;
            return Ok(GradedPoly::one(table));
        }
        self.ladder_product(table, g, n, self.exp_p)
    }

    /// `prod_{i=1}^{g+m} (alpha - lambda_i)^{exp_h}`.
    pub fn h_poly<F: Scalar>(
        &self,
        table: &Arc<GeneratorTable>,
        g: i64,
        n: usize,
    ) -> Result<GradedPoly<F>> {
        self.ladder_product(table, g, n, self.exp_h)
    }

    fn ladder_product<F: Scalar>(
        &self,
        table: &Arc<GeneratorTable>,
        g: i64,
        n: usize,
        exp: u32,
    ) -> Result<GradedPoly<F>> {
        if g < 0 {
            return Err(Error::Precondition(format!("genus must be nonnegative, got {g}")));
        }
        if exp == 0 {
            return Err(Error::Precondition("factor exponent must be positive".into()));
        }
        let count = Self::factor_count(g, n)?;
        let alpha = GradedPoly::generator(table, GeneratorTable::ALPHA)?;
        let mut out = GradedPoly::one(table);
        for i in 1..=count {
            let factor =
                alpha.checked_sub(&GradedPoly::constant(table, F::from_int(self.lambda(i))))?;
            out = out.checked_mul(&factor.pow(exp))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use num_traits::Zero;

    fn gen(t: &Arc<GeneratorTable>, idx: usize) -> GradedPoly<Rat> {
        GradedPoly::generator(t, idx).unwrap()
    }

    fn cst(t: &Arc<GeneratorTable>, v: i64) -> GradedPoly<Rat> {
        GradedPoly::constant(t, Rat::from_int(v))
    }

    fn sub(a: &GradedPoly<Rat>, b: &GradedPoly<Rat>) -> GradedPoly<Rat> {
        a.checked_sub(b).unwrap()
    }

    /// beta - 2, gamma, delta_1..delta_n, and the degree g+m ladder product.
    fn model_gens(t: &Arc<GeneratorTable>, g: i64) -> Vec<GradedPoly<Rat>> {
        let sp = SpectralPolynomials::default();
        let mut gens = vec![
            sub(&gen(t, GeneratorTable::BETA), &cst(t, 2)),
            gen(t, GeneratorTable::GAMMA),
        ];
        for i in 1..=t.n {
            gens.push(gen(t, t.delta(i).unwrap()));
        }
        gens.push(sp.q_poly(t, g, t.n).unwrap());
        gens
    }

    fn ideal(gens: Vec<GradedPoly<Rat>>) -> CommIdeal<Rat> {
        CommIdeal::new(gens, MonomialOrder::GrevlexAlphaLast).unwrap()
    }

    #[test]
    fn order_sanity() {
        let t = GeneratorTable::commutative(2);
        let k = t.len();
        let mono = |idx: usize| Monomial::generator(k, idx);
        let grev = MonomialOrder::GrevlexAlphaLast;
        let lex = MonomialOrder::Lex;
        let alpha = mono(GeneratorTable::ALPHA);
        let beta = mono(GeneratorTable::BETA);
        let gamma = mono(GeneratorTable::GAMMA);
        let d1 = mono(t.delta(1).unwrap());
        assert_eq!(grev.cmp_monomials(&d1, &alpha), Ordering::Greater);
        assert_eq!(grev.cmp_monomials(&beta, &gamma), Ordering::Greater);
        assert_eq!(grev.cmp_monomials(&gamma, &d1), Ordering::Greater);
        let alpha2 = Monomial::power(k, GeneratorTable::ALPHA, 2);
        assert_eq!(grev.cmp_monomials(&alpha2, &d1), Ordering::Greater);
        // lex ignores total degree
        let alpha5 = Monomial::power(k, GeneratorTable::ALPHA, 5);
        assert_eq!(lex.cmp_monomials(&beta, &alpha5), Ordering::Greater);
        assert_eq!(lex.cmp_monomials(&d1, &alpha5), Ordering::Greater);
    }

    #[test]
    fn origin_ideal_is_one_dimensional() {
        let t = GeneratorTable::commutative(2);
        let gens: Vec<_> = (0..t.len()).map(|i| gen(&t, i)).collect();
        let qb = groebner(&ideal(gens)).unwrap();
        assert_eq!(qb.dimension(), Some(1));
        assert_eq!(qb.standard_monomial_texts().unwrap(), vec!["1"]);
        assert_eq!(qb.basis().len(), t.len());
    }

    #[test]
    fn point_ideal_collapses_to_dimension_one() {
        let t = GeneratorTable::commutative(3);
        let mut gens = vec![sub(&gen(&t, GeneratorTable::ALPHA), &cst(&t, 5))];
        gens.extend(model_gens(&t, 0).into_iter().take(2 + 3));
        let qb = groebner(&ideal(gens)).unwrap();
        assert_eq!(qb.dimension(), Some(1));
        let report = qb.alpha_spectrum().unwrap();
        assert!(report.exact);
        assert_eq!(
            report.entries,
            vec![SpectrumEntry { value: "5".into(), alg_mult: 1, geo_mult: 1 }]
        );
    }

    #[test]
    fn univariate_model_quotient() {
        let t = GeneratorTable::commutative(3);
        let qb = groebner(&ideal(model_gens(&t, 2))).unwrap();
        assert_eq!(qb.dimension(), Some(3));
        assert_eq!(qb.standard_monomial_texts().unwrap(), vec!["1", "alpha", "alpha^2"]);

        let q: GradedPoly<Rat> = SpectralPolynomials::default().q_poly(&t, 2, 3).unwrap();
        let coeffs: Vec<Rat> = (0..=3).map(|k| q.coeff_of_power(GeneratorTable::ALPHA, k)).collect();
        let alpha_op = qb.mult_operator(&gen(&t, GeneratorTable::ALPHA)).unwrap();
        assert_eq!(alpha_op, Mat::companion(&coeffs));

        let beta_op = qb.mult_operator(&gen(&t, GeneratorTable::BETA)).unwrap();
        assert_eq!(beta_op, Mat::identity(3).scale(&Rat::from_int(2)));

        let gamma_op = qb.mult_operator(&gen(&t, GeneratorTable::GAMMA)).unwrap();
        assert_eq!(gamma_op, Mat::zeros(3, 3));
    }

    #[test]
    fn model_spectrum_and_collapse() {
        let t = GeneratorTable::commutative(3);
        let report = alpha_spectrum(&ideal(model_gens(&t, 2))).unwrap();
        assert!(report.exact);
        let expect: Vec<SpectrumEntry> = [-3i64, 1, 5]
            .iter()
            .map(|v| SpectrumEntry { value: v.to_string(), alg_mult: 1, geo_mult: 1 })
            .collect();
        assert_eq!(report.entries, expect);

        // adjoining alpha - lambda_{g+m} pins the quotient down to a point
        let mut gens = model_gens(&t, 2);
        gens.push(sub(&gen(&t, GeneratorTable::ALPHA), &cst(&t, 5)));
        let qb = groebner(&ideal(gens)).unwrap();
        assert_eq!(qb.dimension(), Some(1));
        let collapsed = qb.alpha_spectrum().unwrap();
        assert_eq!(
            collapsed.entries,
            vec![SpectrumEntry { value: "5".into(), alg_mult: 1, geo_mult: 1 }]
        );
    }

    #[test]
    fn nilpotent_block_multiplicity() {
        let t = GeneratorTable::commutative(1);
        let gens = vec![
            gen(&t, GeneratorTable::ALPHA).pow(2),
            sub(&gen(&t, GeneratorTable::BETA), &cst(&t, 2)),
            gen(&t, GeneratorTable::GAMMA),
            gen(&t, t.delta(1).unwrap()),
        ];
        let report = alpha_spectrum(&ideal(gens)).unwrap();
        assert_eq!(report.dimension, 2);
        assert!(report.exact);
        assert_eq!(
            report.entries,
            vec![SpectrumEntry { value: "0".into(), alg_mult: 2, geo_mult: 1 }]
        );
    }

    #[test]
    fn membership_of_ladder_products() {
        let t = GeneratorTable::commutative(3);
        let sp = SpectralPolynomials::default();
        let q: GradedPoly<Rat> = sp.q_poly(&t, 2, 3).unwrap();
        let p = sp.p_poly(&t, 1, 3).unwrap();
        let h = sp.h_poly(&t, 2, 1).unwrap();
        let f = q.checked_mul(&p).unwrap().checked_mul(&h).unwrap();
        assert!(ideal_member(&f, &ideal(model_gens(&t, 2))).unwrap());

        let t0 = GeneratorTable::commutative(0);
        let one_pt = ideal(vec![sub(&gen(&t0, GeneratorTable::ALPHA), &cst(&t0, 1))]);
        assert!(!ideal_member(&gen(&t0, GeneratorTable::ALPHA), &one_pt).unwrap());

        let t1 = GeneratorTable::commutative(1);
        let d1 = gen(&t1, t1.delta(1).unwrap());
        let rel = sub(&gen(&t1, GeneratorTable::BETA), &cst(&t1, 2))
            .checked_add(&d1.pow(2))
            .unwrap();
        let pair = ideal(vec![sub(&gen(&t1, GeneratorTable::BETA), &cst(&t1, 2)), d1]);
        let qb = groebner(&pair).unwrap();
        assert!(qb.normal_form(&rel).unwrap().is_zero());
    }

    #[test]
    fn s_polynomial_normal_forms_vanish() {
        let t = GeneratorTable::commutative(1);
        let chain = vec![
            sub(&gen(&t, GeneratorTable::ALPHA).pow(2), &gen(&t, GeneratorTable::BETA)),
            sub(&gen(&t, GeneratorTable::BETA).pow(2), &gen(&t, GeneratorTable::GAMMA)),
            sub(&gen(&t, GeneratorTable::GAMMA).pow(2), &gen(&t, t.delta(1).unwrap())),
            gen(&t, t.delta(1).unwrap()).pow(2),
        ];
        for order in [MonomialOrder::GrevlexAlphaLast, MonomialOrder::Lex] {
            let qb = groebner(&CommIdeal::new(chain.clone(), order).unwrap()).unwrap();
            let basis = qb.basis();
            for i in 0..basis.len() {
                for j in 0..i {
                    let s = s_polynomial(&basis[i], &basis[j], order).unwrap();
                    assert!(divide(&s, basis, order).unwrap().is_zero());
                }
            }
            // beta = alpha^2, gamma = alpha^4, delta_1 = alpha^8, alpha^16 = 0
            assert_eq!(qb.dimension(), Some(16));
        }

        let t3 = GeneratorTable::commutative(3);
        let qb = groebner(&ideal(model_gens(&t3, 2))).unwrap();
        let basis = qb.basis();
        let order = MonomialOrder::GrevlexAlphaLast;
        for i in 0..basis.len() {
            for j in 0..i {
                let s = s_polynomial(&basis[i], &basis[j], order).unwrap();
                assert!(divide(&s, basis, order).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn mult_operator_is_multiplicative() {
        let t = GeneratorTable::commutative(3);
        let qb = groebner(&ideal(model_gens(&t, 2))).unwrap();
        let alpha = gen(&t, GeneratorTable::ALPHA);
        let beta = gen(&t, GeneratorTable::BETA);
        let ma = qb.mult_operator(&alpha).unwrap();
        let mb = qb.mult_operator(&beta).unwrap();
        let mab = qb.mult_operator(&alpha.checked_mul(&beta).unwrap()).unwrap();
        assert_eq!(mab, ma.matmul(&mb));
        assert_eq!(ma.matmul(&mb), mb.matmul(&ma));
        let maa = qb.mult_operator(&alpha.pow(2)).unwrap();
        assert_eq!(maa, ma.matmul(&ma));
    }

    #[test]
    fn infinite_quotient_flagged() {
        let t = GeneratorTable::commutative(1);
        let gens = vec![
            sub(&gen(&t, GeneratorTable::BETA), &cst(&t, 2)),
            gen(&t, GeneratorTable::GAMMA),
            gen(&t, t.delta(1).unwrap()),
        ];
        let qb = groebner(&ideal(gens)).unwrap();
        assert!(!qb.is_finite());
        assert_eq!(qb.dimension(), None);
        assert!(matches!(
            qb.mult_operator(&gen(&t, GeneratorTable::ALPHA)),
            Err(Error::InfiniteQuotient)
        ));
        assert!(matches!(qb.alpha_spectrum(), Err(Error::InfiniteQuotient)));
    }

    #[test]
    fn unit_ideal_has_empty_staircase() {
        let t = GeneratorTable::commutative(0);
        let alpha = gen(&t, GeneratorTable::ALPHA);
        let qb = groebner(&ideal(vec![alpha.clone(), sub(&alpha, &cst(&t, 1))])).unwrap();
        assert_eq!(qb.dimension(), Some(0));
        assert_eq!(qb.basis().len(), 1);
        assert!(qb.basis()[0].num_terms() == 1 && !qb.basis()[0].coeff_of_power(0, 0).is_zero());
        assert!(qb.contains(&gen(&t, GeneratorTable::GAMMA)).unwrap());
        let report = qb.alpha_spectrum().unwrap();
        assert_eq!(report.dimension, 0);
        assert!(report.entries.is_empty());
    }

    #[test]
    fn construction_guards() {
        let t = GeneratorTable::commutative(10);
        let gens = vec![gen(&t, GeneratorTable::ALPHA)];
        assert!(matches!(
            CommIdeal::new(gens, MonomialOrder::GrevlexAlphaLast),
            Err(Error::VariableCap { got: 13, cap: 12 })
        ));

        let t1 = GeneratorTable::commutative(1);
        let zero = GradedPoly::<Rat>::zero(&t1);
        assert!(matches!(
            CommIdeal::new(vec![zero], MonomialOrder::Lex),
            Err(Error::Domain(_))
        ));

        let tm = GeneratorTable::moduli(1, 1);
        let odd = GradedPoly::<Rat>::generator(&tm, GeneratorTable::ALPHA).unwrap();
        assert!(matches!(
            CommIdeal::new(vec![odd], MonomialOrder::Lex),
            Err(Error::OddGenerators(_))
        ));

        assert!(matches!(
            CommIdeal::<Rat>::new(vec![], MonomialOrder::Lex),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn numeric_fallback_for_irrational_spectrum() {
        let t = GeneratorTable::commutative(0);
        let gens = vec![
            sub(&gen(&t, GeneratorTable::ALPHA).pow(2), &cst(&t, 2)),
            sub(&gen(&t, GeneratorTable::BETA), &cst(&t, 2)),
            gen(&t, GeneratorTable::GAMMA),
        ];
        let report = alpha_spectrum(&ideal(gens)).unwrap();
        assert_eq!(report.dimension, 2);
        assert!(!report.exact);
        assert_eq!(report.entries.len(), 2);
        let vals: Vec<f64> =
            report.entries.iter().map(|e| e.value.parse::<f64>().unwrap()).collect();
        assert!((vals[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((vals[1] - 2f64.sqrt()).abs() < 1e-12);
        assert!(report.entries.iter().all(|e| e.alg_mult == 1 && e.geo_mult == 1));
    }

    #[test]
    fn ladder_and_family_invariants() {
        let sp = SpectralPolynomials::default();
        assert_eq!(sp.lambdas(4), vec![1, -3, 5, -7]);
        let flipped = SpectralPolynomials { signs: LambdaSigns::Flipped, ..sp };
        assert_eq!(flipped.lambdas(4), vec![-1, 3, -5, 7]);
        let positive = SpectralPolynomials { signs: LambdaSigns::Positive, ..sp };
        assert_eq!(positive.lambdas(4), vec![1, 3, 5, 7]);

        let t = GeneratorTable::commutative(3);
        for n in [3usize, 5] {
            let one: GradedPoly<Rat> = sp.p_poly(&t, -1, n).unwrap();
            assert_eq!(one, GradedPoly::one(&t));
        }
        let q: GradedPoly<Rat> = sp.q_poly(&t, 1, 3).unwrap();
        assert_eq!(sp.p_poly::<Rat>(&t, 1, 3).unwrap(), q.pow(2));
        assert_eq!(sp.h_poly::<Rat>(&t, 1, 3).unwrap(), q.pow(2));
        // divisibility through the normal form as well
        let qi = ideal(vec![q.clone()]);
        assert!(ideal_member(&sp.p_poly(&t, 1, 3).unwrap(), &qi).unwrap());

        assert!(sp.q_poly::<Rat>(&t, 0, 4).is_err());
        let degenerate = SpectralPolynomials { exp_p: 0, ..sp };
        assert!(degenerate.p_poly::<Rat>(&t, 1, 3).is_err());
    }
}
