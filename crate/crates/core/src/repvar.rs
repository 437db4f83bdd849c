//! Numerical exploration of the SU(2) solution varieties.
//!
//! Tuples `(B_1..B_2g, C_1..C_n)` of unit quaternions are required to satisfy
//! `[B_1,B_{g+1}] ... [B_g,B_{2g}] C_1 ... C_n = eps` with every `C_i` trace
//! free. The solver runs projected gradient descent on the product of unit
//! 3-spheres; the local dimension comes from a finite-difference Jacobian of
//! the defining map with a singular-value gap test.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::Result;

/// Random restarts attempted by `solve` before giving up.
pub const RESTART_CAP: usize = 100;

// squared-norm scale: parameter error is roughly the square root, so the
// descent pushes far past the acceptance gate to make conjugation-invariant
// fingerprints reproducible to 1e-8 across seeds
const DESCENT_TARGET: f64 = 1e-26;
const SOLVE_ACCEPT: f64 = 1e-10;
const MAX_ITERS: usize = 60_000;
const FD_STEP: f64 = 1e-6;
const GAP_RATIO: f64 = 1e4;

type Quat = Quaternion<f64>;

fn quat(w: f64, i: f64, j: f64, k: f64) -> Quat {
    Quaternion::new(w, i, j, k)
}

/// Factor list of the defining word: `(slot, inverted)` per letter, slots
/// `0..2g` holding the `B`s and `2g..2g+n` the `C`s.
fn word_factors(g: usize, n: usize) -> Vec<(usize, bool)> {
    let mut f = Vec::with_capacity(4 * g + n);
    for j in 0..g {
        f.push((j, false));
        f.push((j + g, false));
        f.push((j, true));
        f.push((j + g, true));
    }
    for i in 0..n {
        f.push((2 * g + i, false));
    }
    f
}

/// Classification of a tuple against the submanifolds `C_i = C_j` and
/// `C_i = -C_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiagonalClass {
    Plus,
    Minus,
    Neither,
}

/// A point of the ambient tuple space `SU(2)^{2g+n}` with its target sign.
#[derive(Clone, Debug)]
pub struct Su2Tuple {
    g: usize,
    n: usize,
    epsilon: i32,
    qs: Vec<Quat>,
}

impl Su2Tuple {
    pub fn new(
        g: usize,
        n: usize,
        epsilon: i32,
        bs: Vec<Quat>,
        cs: Vec<Quat>,
    ) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::Precondition(format!("target sign must be +1 or -1, got {epsilon}")));
        }
        if bs.len() != 2 * g || cs.len() != n {
            return Err(Error::Precondition(format!(
                "expected 2g = {} B entries and n = {} C entries, got {} and {}",
                2 * g,
                n,
                bs.len(),
                cs.len()
            )));
        }
        let qs: Vec<Quat> = bs.into_iter().chain(cs).collect();
        for (s, q) in qs.iter().enumerate() {
            if (q.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "entry {s} has norm {} instead of 1",
                    q.norm()
                )));
            }
        }
        Ok(Self { g, n, epsilon, qs })
    }

    /// All entries the identity quaternion.
    pub fn identity(g: usize, n: usize, epsilon: i32) -> Result<Self> {
        Self::new(g, n, epsilon, vec![Quat::identity(); 2 * g], vec![Quat::identity(); n])
    }

    pub fn random(g: usize, n: usize, epsilon: i32, rng: &mut impl Rng) -> Result<Self> {
        let bs = (0..2 * g).map(|_| random_unit(rng)).collect();
        let cs = (0..n).map(|_| random_unit(rng)).collect();
        Self::new(g, n, epsilon, bs, cs)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> i32 {
        self.epsilon
    }

    pub fn bs(&self) -> &[Quat] {
        &self.qs[..2 * self.g]
    }

    pub fn cs(&self) -> &[Quat] {
        &self.qs[2 * self.g..]
    }

    /// The word `[B_1,B_{g+1}] ... [B_g,B_{2g}] C_1 ... C_n`.
    pub fn word(&self) -> Quat {
        let mut w = Quat::identity();
        for &(s, inv) in &word_factors(self.g, self.n) {
            w *= if inv { self.qs[s].conjugate() } else { self.qs[s] };
        }
        w
    }

    /// `|word - eps|^2 + sum_i (Re C_i)^2`; zero exactly on the variety.
    pub fn residual(&self) -> f64 {
        let e = self.word() - quat(self.epsilon as f64, 0.0, 0.0, 0.0);
        let traces: f64 = self.cs().iter().map(|c| c.scalar() * c.scalar()).sum();
        e.norm_squared() + traces
    }

    /// Simultaneous conjugation of every entry by the unit quaternion `q`.
    pub fn conjugated_by(&self, q: &Quat) -> Result<Self> {
        if (q.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Domain("conjugating element must be a unit quaternion".into()));
        }
        let mut out = self.clone();
        for entry in &mut out.qs {
            *entry = q * *entry * q.conjugate();
        }
        Ok(out)
    }

    /// Negate `C_i` for every one-based `i` in `marked`; the target sign picks
    /// up `(-1)^|marked|`, so the residual is preserved.
    pub fn flip(&self, marked: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        let mut out = self.clone();
        for &i in marked {
            if i == 0 || i > self.n {
                return Err(Error::IndexOutOfRange(format!(
                    "marked point {i} out of 1..={}",
                    self.n
                )));
            }
            if seen[i - 1] {
                return Err(Error::Domain(format!("marked point {i} listed twice")));
            }
            seen[i - 1] = true;
            let s = 2 * self.g + i - 1;
            out.qs[s] = -out.qs[s];
        }
        if marked.len() % 2 == 1 {
            out.epsilon = -out.epsilon;
        }
        Ok(out)
    }

    /// Whether `C_i = C_j` (plus), `C_i = -C_j` (minus), or neither, at
    /// tolerance 1e-8 in quaternion distance. `i`, `j` one-based.
    pub fn on_diagonal(&self, i: usize, j: usize) -> Result<DiagonalClass> {
        if i == 0 || j == 0 || i > self.n || j > self.n || i == j {
            return Err(Error::IndexOutOfRange(format!(
                "need distinct marked points in 1..={}, got {i} and {j}",
                self.n
            )));
        }
        let ci = self.cs()[i - 1];
        let cj = self.cs()[j - 1];
        if (ci - cj).norm() <= 1e-8 {
            Ok(DiagonalClass::Plus)
        } else if (ci + cj).norm() <= 1e-8 {
            Ok(DiagonalClass::Minus)
        } else {
            Ok(DiagonalClass::Neither)
        }
    }
}

/// Pairwise invariants `tr(C_i C_j) = 2 Re(C_i C_j)`, keyed `"ci*cj"` for
/// `i < j`; conjugation invariant, so equal across gauge representatives.
pub fn trace_fingerprint(x: &Su2Tuple) -> BTreeMap<String, f64> {
    let cs = x.cs();
    let mut out = BTreeMap::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let tr = 2.0 * (cs[i] * cs[j]).scalar();
            out.insert(format!("c{}*c{}", i + 1, j + 1), tr);
        }
    }
    out
}

fn random_unit(rng: &mut impl Rng) -> Quat {
    loop {
        let q = quat(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n2 = q.norm_squared();
        if n2 > 1e-4 && n2 <= 1.0 {
            return q / n2.sqrt();
        }
    }
}

/// Residual and its ambient gradient per tuple slot. Each occurrence of a
/// variable `q` inside the word sits between unit prefix and suffix products
/// `A`, `S`, and the gradient of `|A q S - t|^2` is `2 conj(A) e conj(S)`
/// with `e` the word error; an inverted occurrence contributes the
/// componentwise conjugate of that.
fn value_and_grad(x: &Su2Tuple, factors: &[(usize, bool)]) -> (f64, Vec<Quat>) {
    let l = factors.len();
    let letters: Vec<Quat> = factors
        .iter()
        .map(|&(s, inv)| if inv { x.qs[s].conjugate() } else { x.qs[s] })
        .collect();
    let mut prefix = vec![Quat::identity(); l + 1];
    for k in 0..l {
        prefix[k + 1] = prefix[k] * letters[k];
    }
    let mut suffix = vec![Quat::identity(); l + 1];
    for k in (0..l).rev() {
        suffix[k] = letters[k] * suffix[k + 1];
    }
    let e = prefix[l] - quat(x.epsilon as f64, 0.0, 0.0, 0.0);
    let mut f = e.norm_squared();
    let mut grad = vec![quat(0.0, 0.0, 0.0, 0.0); x.qs.len()];
    for (k, &(s, inv)) in factors.iter().enumerate() {
        let mut contrib = prefix[k].conjugate() * e * suffix[k + 1].conjugate() * 2.0;
        if inv {
            contrib = contrib.conjugate();
        }
        grad[s] += contrib;
    }
    for i in 0..x.n {
        let s = 2 * x.g + i;
        let re = x.qs[s].scalar();
        f += re * re;
        grad[s] += quat(2.0 * re, 0.0, 0.0, 0.0);
    }
    (f, grad)
}

fn retract(x: &Su2Tuple, tangent: &[Quat], step: f64) -> Su2Tuple {
    let mut out = x.clone();
    for (q, t) in out.qs.iter_mut().zip(tangent) {
        *q = (*q - t * step).normalize();
    }
    out
}

/// Projected gradient descent with backtracking; returns the final residual.
fn descend(x: &mut Su2Tuple, factors: &[(usize, bool)]) -> f64 {
    let mut step = 0.25;
    let (mut f, mut grad) = value_and_grad(x, factors);
    for _ in 0..MAX_ITERS {
        if f < DESCENT_TARGET {
            break;
        }
        let tangent: Vec<Quat> = x
            .qs
            .iter()
            .zip(&grad)
            .map(|(q, gr)| gr - q * q.dot(gr))
            .collect();
        let gnorm2: f64 = tangent.iter().map(Quat::norm_squared).sum();
        if gnorm2 < 1e-32 {
            break;
        }
        let mut accepted = false;
        for _ in 0..60 {
            let cand = retract(x, &tangent, step);
            let fc = cand.residual();
            if fc <= f - 1e-4 * step * gnorm2 {
                *x = cand;
                let (fnew, gnew) = value_and_grad(x, factors);
                f = fnew;
                grad = gnew;
                step = (step * 1.5).min(4.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    f
}

/// Tangent-space analysis of the defining map at a near-solution.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub residual: f64,
    pub rank: usize,
    pub raw_nullity: usize,
    /// `raw_nullity - 3` when `n` is odd (irreducible, so the conjugation
    /// orbit is exactly 3-dimensional); `None` for even `n`.
    pub quotient_dim: Option<usize>,
}

/// Full record of one solve.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub g: usize,
    pub n: usize,
    pub epsilon: i32,
    pub seed: u64,
    pub residual: f64,
    pub rank: usize,
    pub raw_nullity: usize,
    pub quotient_dim: Option<usize>,
    pub traces: BTreeMap<String, f64>,
}

fn defining_map(x: &Su2Tuple) -> Vec<f64> {
    let e = x.word() - quat(x.epsilon as f64, 0.0, 0.0, 0.0);
    let mut out = vec![e.scalar(), e.imag().x, e.imag().y, e.imag().z];
    out.extend(x.cs().iter().map(Quat::scalar));
    out
}

fn decide_rank(svs: &[f64]) -> Result<usize> {
    if svs.is_empty() || svs[0] < 1e-10 {
        return Ok(0);
    }
    for k in 0..svs.len() - 1 {
        if svs[k + 1] == 0.0 || svs[k] / svs[k + 1] >= GAP_RATIO {
            return Ok(k + 1);
        }
    }
    Err(Error::Domain(
        "no clear singular-value gap; local dimension indeterminate".into(),
    ))
}

/// Rank and nullity of the defining map's Jacobian at `x`, taken on the
/// product tangent space (dimension `3(2g+n)`) by central finite differences.
pub fn local_dimension(x: &Su2Tuple) -> Result<DimensionReport> {
    let residual = x.residual();
    if residual >= 1e-8 {
        return Err(Error::Precondition(format!(
            "residual {residual:.3e} is too large for a tangent-space analysis"
        )));
    }
    let slots = 2 * x.g + x.n;
    let rows = 4 + x.n;
    let cols = 3 * slots;
    let units = [quat(0.0, 1.0, 0.0, 0.0), quat(0.0, 0.0, 1.0, 0.0), quat(0.0, 0.0, 0.0, 1.0)];
    let mut jac = DMatrix::<f64>::zeros(rows, cols);
    for s in 0..slots {
        for (a, u) in units.iter().enumerate() {
            // right translates of the imaginary units form an orthonormal
            // tangent basis at any unit quaternion
            let dir = x.qs[s] * u;
            let mut xp = x.clone();
            xp.qs[s] = (xp.qs[s] + dir * FD_STEP).normalize();
            let mut xm = x.clone();
            xm.qs[s] = (xm.qs[s] - dir * FD_STEP).normalize();
            let fp = defining_map(&xp);
            let fm = defining_map(&xm);
            for r in 0..rows {
                jac[(r, 3 * s + a)] = (fp[r] - fm[r]) / (2.0 * FD_STEP);
            }
        }
    }
    let mut svs: Vec<f64> = jac.svd(false, false).singular_values.iter().copied().collect();
    svs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = decide_rank(&svs)?;
    let raw_nullity = cols - rank;
    let quotient_dim = if x.n % 2 == 1 {
        if raw_nullity < 3 {
            return Err(Error::Domain(
                "nullity fell below the conjugation-orbit dimension".into(),
            ));
        }
        Some(raw_nullity - 3)
    } else {
        None
    };
    Ok(DimensionReport { residual, rank, raw_nullity, quotient_dim })
}

/// Find a solution tuple by seeded random restarts; deterministic per seed.
pub fn solve(g: usize, n: usize, epsilon: i32, seed: u64) -> Result<(Su2Tuple, SolveReport)> {
    if n == 0 {
        return Err(Error::Precondition("at least one marked point is required".into()));
    }
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::Precondition(format!("target sign must be +1 or -1, got {epsilon}")));
    }
    let factors = word_factors(g, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESTART_CAP {
        let mut x = Su2Tuple::random(g, n, epsilon, &mut rng)?;
        let f = descend(&mut x, &factors);
        if f < SOLVE_ACCEPT {
            let dims = local_dimension(&x)?;
            let report = SolveReport {
                g,
                n,
                epsilon,
                seed,
                residual: dims.residual,
                rank: dims.rank,
                raw_nullity: dims.raw_nullity,
                quotient_dim: dims.quotient_dim,
                traces: trace_fingerprint(&x),
            };
            return Ok((x, report));
        }
    }
    Err(Error::NonConvergence(format!(
        "no solution tuple for (g, n, eps) = ({g}, {n}, {epsilon}) within {RESTART_CAP} restarts"
    )))
}

/// Expected manifold dimension `6g + 2n - 6`.
pub fn expected_dimension(g: usize, n: usize) -> i64 {
    6 * g as i64 + 2 * n as i64 - 6
}
