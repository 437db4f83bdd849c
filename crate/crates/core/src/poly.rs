//! Graded polynomials with Koszul signs.
//!
//! A polynomial is a map from canonical monomials to nonzero scalars. A
//! monomial stores one exponent per table generator; odd generators carry
//! exponent 0 or 1 and are kept sorted in table order, with the sign of the
//! sorting permutation absorbed into the coefficient. The `eps` label
//! multiplies as an involution (`eps^2 = 1`) and is excluded from all degree
//! bookkeeping.

use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::generators::{same_table, GeneratorTable};
use crate::scalar::Scalar;
use crate::Result;

/// Exponent vector over a fixed generator table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Box<[u32]>);

impl Monomial {
    pub fn unit(len: usize) -> Self {
        Monomial(vec![0; len].into_boxed_slice())
    }

    pub fn generator(len: usize, idx: usize) -> Self {
        let mut e = vec![0; len];
        e[idx] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn power(len: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; len];
        e[idx] = exp;
        Monomial(e.into_boxed_slice())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total degree with the involutive label excluded.
    pub fn degree(&self, table: &GeneratorTable) -> i64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| !table.gen_info(*i).involutive)
            .map(|(i, &e)| table.gen_info(i).degree * e as i64)
            .sum()
    }

    pub fn total_exponent(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn has_odd(&self, table: &GeneratorTable) -> bool {
        self.0
            .iter()
            .enumerate()
            .any(|(i, &e)| e > 0 && table.gen_info(i).odd)
    }

    /// Parity of the monomial: number of odd-generator factors mod 2.
    pub fn parity(&self, table: &GeneratorTable) -> u8 {
        (self
            .0
            .iter()
            .enumerate()
            .filter(|(i, _)| table.gen_info(*i).odd)
            .map(|(_, &e)| e as u64)
            .sum::<u64>()
            % 2) as u8
    }
}

/// Product of two canonical monomials: `None` when an odd generator repeats,
/// otherwise the combined monomial and the Koszul sign of interleaving the
/// odd factors back into table order.
pub fn koszul_mul(a: &Monomial, b: &Monomial, table: &GeneratorTable) -> Option<(Monomial, i8)> {
    let mut exps = vec![0u32; a.0.len()];
    let mut a_odd: Vec<usize> = Vec::new();
    let mut b_odd: Vec<usize> = Vec::new();
    for i in 0..a.0.len() {
        let gi = table.gen_info(i);
        if gi.odd {
            if a.0[i] == 1 && b.0[i] == 1 {
                return None;
            }
            if a.0[i] == 1 {
                a_odd.push(i);
            }
            if b.0[i] == 1 {
                b_odd.push(i);
            }
            exps[i] = a.0[i] + b.0[i];
        } else if gi.involutive {
            exps[i] = (a.0[i] + b.0[i]) % 2;
        } else {
            exps[i] = a.0[i].checked_add(b.0[i]).expect("exponent overflow");
        }
    }
    // sorting the concatenation a_odd ++ b_odd inverts exactly the cross
    // pairs with the b factor smaller
    let inversions: usize = a_odd
        .iter()
        .map(|&p| b_odd.iter().filter(|&&q| q < p).count())
        .sum();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((Monomial(exps.into_boxed_slice()), sign))
}

#[derive(Clone, PartialEq, Debug)]
pub struct GradedPoly<F: Scalar> {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> GradedPoly<F> {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Self { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: F) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(table.len()), c);
        }
        p
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::constant(table, F::one())
    }

    pub fn generator(table: &Arc<GeneratorTable>, idx: usize) -> Result<Self> {
        if idx >= table.len() {
            return Err(Error::IndexOutOfRange(format!(
                "generator {idx} of {}",
                table.len()
            )));
        }
        let mut p = Self::zero(table);
        p.terms.insert(Monomial::generator(table.len(), idx), F::one());
        Ok(p)
    }

    pub fn from_terms(
        table: &Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Monomial, F)>,
    ) -> Self {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Coefficient of the pure power `gen^exp`.
    pub fn coeff_of_power(&self, idx: usize, exp: u32) -> F {
        self.coeff(&Monomial::power(self.table.len(), idx, exp))
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        same_table(&self.table, &rhs.table)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        Self { table: self.table.clone(), terms }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    /// Product with Koszul signs. Errors on mismatched generator tables.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        same_table(&self.table, &rhs.table)?;
        let mut out = Self::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((m, sign)) = koszul_mul(ma, mb, &self.table) {
                    let mut c = ca.clone() * cb.clone();
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, t)| (m.clone(), t.clone() * c.clone()))
            .collect();
        Self { table: self.table.clone(), terms }
    }

    pub fn div_scalar(&self, c: &F) -> Self {
        assert!(!c.is_zero(), "division by zero scalar");
        let terms = self
            .terms
            .iter()
            .map(|(m, t)| (m.clone(), t.clone() / c.clone()))
            .collect();
        Self { table: self.table.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.table);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same table");
        }
        acc
    }

    /// Degree when homogeneous (`eps` excluded); `None` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(&self.table);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::MixedDegrees(format!(
                        "degrees {prev} and {d} both present"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// Ring endomorphism `delta_i -> -delta_i` for `i` in `marked`,
    /// `alpha -> alpha + sum_{i in marked} delta_i`, all other generators fixed.
    /// Indices are one-based marked points; duplicates are rejected.
    pub fn flip(&self, marked: &[usize]) -> Result<Self> {
        let mut idxs = Vec::with_capacity(marked.len());
        for &i in marked {
            let idx = self.table.delta(i)?;
            if idxs.contains(&idx) {
                return Err(Error::IndexOutOfRange(format!("delta_{i} listed twice")));
            }
            idxs.push(idx);
        }
        let mut alpha_image = Self::generator(&self.table, GeneratorTable::ALPHA)?;
        for &idx in &idxs {
            alpha_image = alpha_image.checked_add(&Self::generator(&self.table, idx)?)?;
        }
        let mut alpha_pows: Vec<Self> = vec![Self::one(&self.table)];
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            let a = m.exps()[GeneratorTable::ALPHA] as usize;
            while alpha_pows.len() <= a {
                let next = alpha_pows.last().unwrap().checked_mul(&alpha_image)?;
                alpha_pows.push(next);
            }
            let mut flips = 0u32;
            let mut rest = m.clone();
            rest.0[GeneratorTable::ALPHA] = 0;
            for &idx in &idxs {
                flips += rest.exps()[idx];
            }
            let mut c = c.clone();
            if flips % 2 == 1 {
                c = -c;
            }
            let base = Self::from_terms(&self.table, [(rest, c)]);
            out = out.checked_add(&base.checked_mul(&alpha_pows[a])?)?;
        }
        Ok(out)
    }

    /// Substitute `gamma -> sum_{j=1..g} psi_j psi_{j+g}` (moduli tables only).
    pub fn expand_gamma(&self) -> Result<Self> {
        let g = self.table.g;
        if self.table.eps().is_none() {
            return Err(Error::Domain(
                "gamma expansion needs the full moduli table".into(),
            ));
        }
        let mut gamma_image = Self::zero(&self.table);
        for j in 1..=g {
            let pj = Self::generator(&self.table, self.table.psi(j)?)?;
            let pjg = Self::generator(&self.table, self.table.psi(j + g)?)?;
            gamma_image = gamma_image.checked_add(&pj.checked_mul(&pjg)?)?;
        }
        let mut gamma_pows: Vec<Self> = vec![Self::one(&self.table)];
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.exps()[GeneratorTable::GAMMA] as usize;
            while gamma_pows.len() <= e {
                let next = gamma_pows.last().unwrap().checked_mul(&gamma_image)?;
                gamma_pows.push(next);
            }
            let mut rest = m.clone();
            rest.0[GeneratorTable::GAMMA] = 0;
            let base = Self::from_terms(&self.table, [(rest, c.clone())]);
            out = out.checked_add(&base.checked_mul(&gamma_pows[e])?)?;
        }
        Ok(out)
    }

    /// Numeric evaluation. Requires no odd generators and an assignment for
    /// every generator that actually appears.
    pub fn eval_numeric(&self, assign: &BTreeMap<String, Complex64>) -> Result<Complex64> {
        let mut vals: Vec<Option<Complex64>> = vec![None; self.table.len()];
        for (name, v) in assign {
            if let Some(idx) = self.table.index_of(name) {
                vals[idx] = Some(*v);
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            if m.has_odd(&self.table) {
                return Err(Error::OddGenerators(
                    "numeric evaluation is defined on the even subring".into(),
                ));
            }
            let mut term = c.to_complex_f64();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = vals[i].ok_or_else(|| {
                    Error::MissingAssignment(self.table.gen_info(i).name.clone())
                })?;
                term *= v.powu(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Move the polynomial onto another table, matching generators by name.
    pub fn reindex(&self, target: &Arc<GeneratorTable>) -> Result<Self> {
        let map: Vec<Option<usize>> = (0..self.table.len())
            .map(|i| target.index_of(&self.table.gen_info(i).name))
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::MismatchedTables(format!(
                        "generator {} absent from target table",
                        self.table.gen_info(i).name
                    ))
                })?;
                exps[j] = e;
            }
            out.add_term(Monomial(exps.into_boxed_slice()), c.clone());
        }
        Ok(out)
    }

    /// Largest exponent of one generator across all terms.
    pub fn max_power(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.exps()[idx]).max().unwrap_or(0)
    }

    /// Parse the polynomial text format over this table.
    pub fn parse(table: &Arc<GeneratorTable>, input: &str) -> Result<Self> {
        parse_poly(table, input)
    }
}

impl<F: Scalar> fmt::Display for GradedPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c.coeff_to_string())?;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.table.gen_info(i).name;
                if e == 1 {
                    write!(f, " * {name}")?;
                } else {
                    write!(f, " * {name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

fn split_top_level(input: &str) -> Vec<(i8, &str)> {
    let mut pieces = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut sign = 1i8;
    for (pos, ch) in input.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 => {
                let piece = input[start..pos].trim();
                if piece.is_empty() {
                    // leading sign, or a sign directly after a separator
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    pieces.push((sign, piece));
                    sign = if ch == '-' { -1 } else { 1 };
                }
                start = pos + 1;
            }
            _ => {}
        }
    }
    pieces.push((sign, input[start..].trim()));
    pieces
}

fn parse_poly<F: Scalar>(table: &Arc<GeneratorTable>, input: &str) -> Result<GradedPoly<F>> {
    let input = input.trim();
    if input.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = GradedPoly::zero(table);
    for (sign, term) in split_top_level(input) {
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut acc = GradedPoly::constant(table, F::from_int(sign as i64));
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{term}`")));
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let exp: u32 = e.trim().parse().map_err(|_| {
                        Error::Parse(format!("bad exponent in `{factor}`"))
                    })?;
                    (n.trim(), exp)
                }
                None => (factor, 1),
            };
            let piece = match table.index_of(name) {
                Some(idx) => GradedPoly::generator(table, idx)?.pow(exp),
                None => {
                    if exp != 1 {
                        return Err(Error::Parse(format!("unknown generator `{name}`")));
                    }
                    GradedPoly::constant(table, F::coeff_from_str(name)?)
                }
            };
            acc = acc.checked_mul(&piece)?;
        }
        out = out.checked_add(&acc)?;
    }
    Ok(out)
}
