//! Dense exact linear algebra and small polynomial root utilities.
//!
//! Everything here runs over an exact field scalar; the only floating-point
//! surface is the conversion into `nalgebra` for numeric eigenvalues.

use num::complex::Complex64;
use num::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Rat, Scalar};

/// Row-major dense matrix over an exact scalar.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F: Scalar> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[F]) {
        assert_eq!(col.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = col[i].clone();
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a.clone() * rhs[(k, j)].clone();
                    if !add.is_zero() {
                        let cur = out[(i, j)].clone();
                        out[(i, j)] = cur + add;
                    }
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut acc = F::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = F::one() / self[(row, col)].clone();
            for j in col..self.cols {
                let v = self[(row, j)].clone() * inv.clone();
                self[(row, j)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let f = self[(r, col)].clone();
                    for j in col..self.cols {
                        let v = self[(r, j)].clone() - f.clone() * self[(row, j)].clone();
                        self[(r, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the kernel, in the standard free-variable form. Deterministic:
    /// one vector per non-pivot column, ordered by column index.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![F::zero(); self.cols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// One solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    /// Monic characteristic polynomial, coefficients ascending by power
    /// (`coeffs[d] = 1`). Faddeev-LeVerrier recursion; exact in the field.
    pub fn char_poly(&self) -> Vec<F> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut mk = Self::identity(n);
        for k in 1..=n {
            mk = self.matmul(&mk);
            let ck = -(mk.trace() / F::from_int(k as i64));
            coeffs[n - k] = ck.clone();
            for i in 0..n {
                let v = mk[(i, i)].clone() + ck.clone();
                mk[(i, i)] = v;
            }
        }
        coeffs
    }

    /// Companion matrix of a monic polynomial given by ascending coefficients
    /// (the leading 1 included). Multiplication-by-x convention: subdiagonal
    /// ones, last column holds the negated lower coefficients.
    pub fn companion(monic_ascending: &[F]) -> Self {
        let d = monic_ascending.len() - 1;
        assert!(d >= 1 && monic_ascending[d].is_one(), "monic input required");
        let mut m = Self::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = F::one();
        }
        for i in 0..d {
            m[(i, d - 1)] = -monic_ascending[i].clone();
        }
        m
    }

    pub fn to_c64(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_complex_f64())
    }

    /// Real `f64` view; `None` if any entry has an imaginary part.
    pub fn to_f64(&self) -> Option<nalgebra::DMatrix<f64>> {
        let mut out = nalgebra::DMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self[(i, j)].to_complex_f64();
                if v.im != 0.0 {
                    return None;
                }
                out[(i, j)] = v.re;
            }
        }
        Some(out)
    }
}

impl<F: Scalar> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Scalar> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Rational roots of a monic rational polynomial (ascending coefficients),
/// with multiplicities, plus the unfactored remainder. The remainder is `[1]`
/// exactly when the polynomial splits over the rationals.
pub fn rational_roots(monic_ascending: &[Rat]) -> (Vec<(Rat, usize)>, Vec<Rat>) {
    let mut poly: Vec<Rat> = monic_ascending.to_vec();
    let mut roots: Vec<(Rat, usize)> = Vec::new();

    // zero roots first
    let mut zero_mult = 0;
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
    }

    // integer polynomial with the same roots
    let mut denom_lcm = BigInt::one();
    for c in &poly {
        denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = poly.iter().map(|c| (c.clone() * Rat::from_integer(denom_lcm.clone())).to_integer()).collect();
    let (Some(a0), Some(ad)) = (
        ints.first().and_then(|v| v.abs().to_i64()),
        ints.last().and_then(|v| v.abs().to_i64()),
    ) else {
        return (roots, poly);
    };

    let mut candidates: Vec<Rat> = Vec::new();
    for p in divisors_capped(a0.unsigned_abs(), 4096) {
        for q in divisors_capped(ad.unsigned_abs(), 64) {
            let r = Rat::new(BigInt::from(p), BigInt::from(q));
            if !candidates.contains(&r) {
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
    }
    candidates.sort();

    let eval = |poly: &[Rat], x: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for c in poly.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    };
    for r in candidates {
        let mut mult = 0;
        while poly.len() > 1 && eval(&poly, &r).is_zero() {
            // synthetic division by (x - r)
            let mut quo = vec![Rat::zero(); poly.len() - 1];
            let mut carry = Rat::zero();
            for i in (0..poly.len() - 1).rev() {
                carry = poly[i + 1].clone() + carry * r.clone();
                quo[i] = carry.clone();
            }
            debug_assert!((poly[0].clone() + carry * r.clone()).is_zero());
            poly = quo;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
        if poly.len() == 1 {
            break;
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, poly)
}

fn divisors_capped(v: u64, cap: usize) -> Vec<u64> {
    if v == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= v && out.len() < cap {
        if v % d == 0 {
            out.push(d);
            if d != v / d {
                out.push(v / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Numeric eigenvalues of a real exact matrix (f64 Schur under the hood).
/// `None` if some entry is non-real.
pub fn numeric_eigenvalues<F: Scalar>(m: &Mat<F>) -> Option<Vec<Complex64>> {
    let real = m.to_f64()?;
    let eig = real.complex_eigenvalues();
    let mut vals: Vec<Complex64> = eig.iter().copied().collect();
    vals.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Some(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    #[test]
    fn rref_rank_nullspace() {
        let m = Mat::from_rows(vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(1), r(0), r(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let out = m.matvec(v);
            assert!(out.iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(3)]]);
        let x = m.solve(&[r(5), r(10)]).unwrap();
        assert_eq!(m.matvec(&x), vec![r(5), r(10)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(2));
        let sing = Mat::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(4)]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[r(1), r(3)]).is_none());
    }

    #[test]
    fn char_poly_companion_round_trip() {
        // p(x) = x^3 - 2x^2 - 5x + 6 = (x-1)(x+2)(x-3)
        let p = vec![r(6), r(-5), r(-2), Rat::from_int(1)];
        let c = Mat::companion(&p);
        assert_eq!(c.char_poly(), p);
        let (roots, rem) = rational_roots(&p);
        assert_eq!(rem, vec![Rat::from_int(1)]);
        assert_eq!(
            roots,
            vec![(r(-2), 1), (r(1), 1), (r(3), 1)]
        );
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x - 1/2)^2 (x + 3) x
        let half = Rat::from_fraction(1, 2);
        let mut p = vec![Rat::from_int(1)];
        for root in [half.clone(), half.clone(), r(-3), r(0)] {
            let mut q = vec![Rat::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                q[i + 1] = q[i + 1].clone() + c.clone();
                q[i] = q[i].clone() - root.clone() * c.clone();
            }
            p = q;
        }
        let (roots, rem) = rational_roots(&p);
        assert_eq!(rem, vec![Rat::from_int(1)]);
        assert_eq!(roots, vec![(r(-3), 1), (r(0), 1), (half, 2)]);
    }

    #[test]
    fn irrational_remainder_left_alone() {
        // x^2 - 2 has no rational roots
        let p = vec![r(-2), r(0), Rat::from_int(1)];
        let (roots, rem) = rational_roots(&p);
        assert!(roots.is_empty());
        assert_eq!(rem.len(), 3);
        let eig = numeric_eigenvalues(&Mat::companion(&p)).unwrap();
        assert!((eig[0].re + 2f64.sqrt()).abs() < 1e-12);
        assert!((eig[1].re - 2f64.sqrt()).abs() < 1e-12);
    }
}
