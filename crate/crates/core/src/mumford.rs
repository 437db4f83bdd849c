//! The relation polynomials `xi_k` in `alpha, beta, gamma` and the
//! degree-2(g+m) relation built from them.
//!
//! The sequence is generated by the recursion
//!
//! ```text
//! (k+1) xi_{k+1} = alpha xi_k + (m-k) beta xi_{k-1} - (gamma/2) xi_{k-2}
//! ```
//!
//! with `xi_0 = 1`, `xi_1 = alpha`, and `m = (n-1)/2`. Its generating
//! function `F(t) = sum xi_k t^k` solves
//! `(1 + beta t^2) F' = (-(gamma/2) t^2 + (m-1) beta t + alpha) F`
//! and has the closed form evaluated by [`generating_function_value`];
//! both are used as oracles for the recursion.

use num::complex::Complex64;
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;
use crate::generators::GeneratorTable;
use crate::poly::GradedPoly;
use crate::scalar::{factorial, Scalar};
use crate::Result;

/// Memoized prefix of the `xi` sequence for one odd `n`.
#[derive(Debug, Clone)]
pub struct XiSequence<F: Scalar> {
    n: usize,
    m: i64,
    table: Arc<GeneratorTable>,
    xs: Vec<GradedPoly<F>>,
}

impl<F: Scalar> XiSequence<F> {
    pub fn new(n: usize) -> Result<Self> {
        if n % 2 == 0 {
            return Err(Error::Precondition(format!(
                "the sequence needs an odd number of marked points, got {n}"
            )));
        }
        let table = GeneratorTable::commutative(0);
        let alpha = GradedPoly::generator(&table, GeneratorTable::ALPHA)?;
        Ok(Self {
            n,
            m: (n as i64 - 1) / 2,
            table: Arc::clone(&table),
            xs: vec![GradedPoly::one(&table), alpha],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m = (n - 1) / 2`.
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    /// Extend the memo through index `k` and return `xi_k`.
    pub fn xi(&mut self, k: usize) -> Result<&GradedPoly<F>> {
        let alpha = GradedPoly::generator(&self.table, GeneratorTable::ALPHA)?;
        let beta = GradedPoly::generator(&self.table, GeneratorTable::BETA)?;
        let half_gamma = GradedPoly::generator(&self.table, GeneratorTable::GAMMA)?
            .scale(&F::from_fraction(1, 2));
        while self.xs.len() <= k {
            // (j+1) xi_{j+1} = alpha xi_j + (m-j) beta xi_{j-1} - (gamma/2) xi_{j-2}
            let j = self.xs.len() - 1;
            let mut next = alpha.checked_mul(&self.xs[j])?;
            let c = F::from_int(self.m - j as i64);
            next = next.checked_add(&beta.checked_mul(&self.xs[j - 1])?.scale(&c))?;
            if j >= 2 {
                next = next.checked_sub(&half_gamma.checked_mul(&self.xs[j - 2])?)?;
            }
            self.xs.push(next.div_scalar(&F::from_int(j as i64 + 1)));
        }
        Ok(&self.xs[k])
    }

    /// `xi_0 ..= xi_k` as a coefficient list.
    pub fn prefix(&mut self, k: usize) -> Result<Vec<GradedPoly<F>>> {
        self.xi(k)?;
        Ok(self.xs[..=k].to_vec())
    }
}

/// One-shot `xi_k` for odd `n`.
pub fn xi<F: Scalar>(k: usize, n: usize) -> Result<GradedPoly<F>> {
    let mut seq = XiSequence::new(n)?;
    Ok(seq.xi(k)?.clone())
}

/// The degree-2(g+m) relation `(g+m)! xi_{g+m}` (normalized: the coefficient
/// of `alpha^(g+m)` is exactly 1), or the raw `xi_{g+m}` when `normalized`
/// is false.
pub fn mumford_relation<F: Scalar>(g: usize, n: usize, normalized: bool) -> Result<GradedPoly<F>> {
    if n % 2 == 0 {
        return Err(Error::Precondition(format!(
            "the relation needs an odd number of marked points, got {n}"
        )));
    }
    if g == 0 && n == 1 {
        return Err(Error::Precondition(
            "(g, n) = (0, 1) is excluded".into(),
        ));
    }
    let mut seq = XiSequence::<F>::new(n)?;
    let k = g + seq.m() as usize;
    let raw = seq.xi(k)?.clone();
    if normalized {
        Ok(raw.scale(&factorial::<F>(k as u32)))
    } else {
        Ok(raw)
    }
}

/// Summary record for one emitted relation.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub g: usize,
    pub n: usize,
    pub degree: i64,
    pub leading_coeff: String,
    pub num_terms: usize,
}

pub fn relation_report<F: Scalar>(g: usize, n: usize, normalized: bool) -> Result<RelationReport> {
    let f = mumford_relation::<F>(g, n, normalized)?;
    let k = g + ((n - 1) / 2);
    let degree = f
        .homogeneous_degree()?
        .ok_or_else(|| Error::Domain("relation is identically zero".into()))?;
    let lead = f.coeff_of_power(GeneratorTable::ALPHA, k as u32);
    Ok(RelationReport {
        g,
        n,
        degree,
        leading_coeff: lead.coeff_to_string(),
        num_terms: f.num_terms(),
    })
}

/// Exact check that the series `F(t) = sum xi_k t^k` solves
/// `(1 + beta t^2) F' - (-(gamma/2) t^2 + (m-1) beta t + alpha) F = 0`
/// in every order through `t^(K-1)`.
#[derive(Debug, Clone, Serialize)]
pub struct OdeReport {
    pub k: usize,
    pub n: usize,
    pub orders_checked: usize,
    pub exact: bool,
}

pub fn ode_residual<F: Scalar>(k: usize, n: usize) -> Result<OdeReport> {
    if k < 3 {
        return Err(Error::Precondition(format!(
            "the residual check needs k >= 3, got {k}"
        )));
    }
    let mut seq = XiSequence::<F>::new(n)?;
    let xs = seq.prefix(k)?;
    let tb = seq.table().clone();
    let alpha = GradedPoly::generator(&tb, GeneratorTable::ALPHA)?;
    let beta = GradedPoly::generator(&tb, GeneratorTable::BETA)?;
    let half_gamma =
        GradedPoly::generator(&tb, GeneratorTable::GAMMA)?.scale(&F::from_fraction(1, 2));
    let m = seq.m();

    // coefficient of t^j in (1 + beta t^2) F':
    //   (j+1) xi_{j+1} + beta (j-1) xi_{j-1}
    // coefficient of t^j in (alpha + (m-1) beta t - (gamma/2) t^2) F:
    //   alpha xi_j + (m-1) beta xi_{j-1} - (gamma/2) xi_{j-2}
    let mut exact = true;
    let orders_checked = k; // j = 0 .. k-1
    for j in 0..k {
        let mut lhs = xs[j + 1].scale(&F::from_int(j as i64 + 1));
        if j >= 1 {
            lhs = lhs.checked_add(&beta.checked_mul(&xs[j - 1])?.scale(&F::from_int(j as i64 - 1)))?;
        }
        let mut rhs = alpha.checked_mul(&xs[j])?;
        if j >= 1 {
            rhs = rhs
                .checked_add(&beta.checked_mul(&xs[j - 1])?.scale(&F::from_int(m - 1)))?;
        }
        if j >= 2 {
            rhs = rhs.checked_sub(&half_gamma.checked_mul(&xs[j - 2])?)?;
        }
        if lhs != rhs {
            exact = false;
        }
    }
    Ok(OdeReport {
        k,
        n,
        orders_checked,
        exact,
    })
}

/// Closed form of the generating function at real points with `beta < 0`:
///
/// ```text
/// F(t) = (1 + beta t^2)^((m-1)/2)
///        ((1 - t sqrt(-beta)) / (1 + t sqrt(-beta)))^((2 alpha beta + gamma) / (4 (-beta)^(3/2)))
///        exp(-t gamma / (2 beta))
/// ```
pub fn generating_function_value(
    n: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
    t: f64,
) -> Result<f64> {
    if n % 2 == 0 {
        return Err(Error::Precondition(format!(
            "the generating function needs odd n, got {n}"
        )));
    }
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
    let m = (n as f64 - 1.0) / 2.0;
    let expo = (2.0 * alpha * beta + gamma) / (4.0 * sq.powi(3));
    let ratio = (1.0 - t * sq) / (1.0 + t * sq);
    Ok((1.0 + beta * t * t).powf((m - 1.0) / 2.0)
        * ratio.powf(expo)
        * (-t * gamma / (2.0 * beta)).exp())
}

/// Residual report for [`closed_form_oracle`].
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub k: usize,
    pub n: usize,
    pub samples: usize,
    pub max_residual: f64,
}

/// Evaluate `sum_{j<=k} xi_j t^j` at seeded random real points with
/// `alpha, gamma` in `[-2, 2]`, `beta` in `[-4, -1]`, `t = 0.05`, and
/// compare against [`generating_function_value`]. Reports the maximum
/// relative residual.
pub fn closed_form_oracle(k: usize, n: usize, samples: usize) -> Result<OracleReport> {
    let mut seq = XiSequence::<crate::Rat>::new(n)?;
    let xs = seq.prefix(k)?;
    let t = 0.05;
    let sym = Uniform::new_inclusive(-2.0f64, 2.0);
    let neg = Uniform::new_inclusive(-4.0f64, -1.0);
    let mut max_residual = 0.0f64;
    for idx in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_1000 + idx as u64);
        let alpha = sym.sample(&mut rng);
        let beta = neg.sample(&mut rng);
        let gamma = sym.sample(&mut rng);
        let mut assign = BTreeMap::new();
        assign.insert("alpha".to_string(), Complex64::new(alpha, 0.0));
        assign.insert("beta".to_string(), Complex64::new(beta, 0.0));
        assign.insert("gamma".to_string(), Complex64::new(gamma, 0.0));
        let mut lhs = Complex64::new(0.0, 0.0);
        let mut tp = 1.0;
        for x in &xs {
            lhs += x.eval_numeric(&assign)? * tp;
            tp *= t;
        }
        let rhs = generating_function_value(n, alpha, beta, gamma, t)?;
        let rel = (lhs - Complex64::new(rhs, 0.0)).norm() / rhs.abs().max(1e-12);
        max_residual = max_residual.max(rel);
    }
    Ok(OracleReport {
        k,
        n,
        samples,
        max_residual,
    })
}
