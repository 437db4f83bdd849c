//! Lefschetz decomposition of the exterior algebra of a symplectic
//! `W = C^{2g}`.
//!
//! Basis `e_1..e_2g` with symplectic pairs `(e_j, e_{j+g})`, `omega(e_j,
//! e_{j+g}) = 1`. Wedge monomials are strictly increasing one-based index
//! lists. `gamma_omega = sum_j e_j ^ e_{j+g}`; the contraction `phi` pairs
//! against omega. Primitive subspaces are its kernels, and
//! `Wedge*(W) = (+)_k  Lambda0^k tensor C[gamma_omega]/(gamma_omega^{g-k+1})`.

use num::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::linalg::Mat;
use crate::scalar::{binomial, Rat, Scalar};
use crate::Result;

type IndexList = Box<[u8]>;

#[derive(Clone, PartialEq, Debug)]
pub struct WedgeElement<F: Scalar> {
    g: usize,
    terms: BTreeMap<IndexList, F>,
}

impl<F: Scalar> WedgeElement<F> {
    pub fn zero(g: usize) -> Self {
        Self { g, terms: BTreeMap::new() }
    }

    pub fn scalar(g: usize, c: F) -> Self {
        let mut w = Self::zero(g);
        if !c.is_zero() {
            w.terms.insert(Box::from(&[][..]), c);
        }
        w
    }

    pub fn one(g: usize) -> Self {
        Self::scalar(g, F::one())
    }

    /// `c * e_{i1} ^ ... ^ e_{ik}` for arbitrary index order; duplicate
    /// indices give zero, the sorting sign is absorbed into `c`.
    pub fn monomial(g: usize, indices: &[u8], c: F) -> Result<Self> {
        for &i in indices {
            if i == 0 || i as usize > 2 * g {
                return Err(Error::IndexOutOfRange(format!(
                    "e_{i} outside 1..={}",
                    2 * g
                )));
            }
        }
        let mut idx = indices.to_vec();
        let mut sign = 1i8;
        for i in 1..idx.len() {
            let mut j = i;
            while j > 0 && idx[j - 1] > idx[j] {
                idx.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Ok(Self::zero(g));
        }
        let c = if sign < 0 { -c } else { c };
        let mut w = Self::zero(g);
        if !c.is_zero() {
            w.terms.insert(idx.into_boxed_slice(), c);
        }
        Ok(w)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexList, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, indices: &[u8]) -> F {
        self.terms.get(indices).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, m: IndexList, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.g != rhs.g {
            return Err(Error::MismatchedTables(format!(
                "wedge algebras for g = {} and g = {}",
                self.g, rhs.g
            )));
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Self { g: self.g, terms }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.g);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, t)| (m.clone(), t.clone() * c.clone()))
            .collect();
        Self { g: self.g, terms }
    }

    pub fn wedge(&self, rhs: &Self) -> Result<Self> {
        if self.g != rhs.g {
            return Err(Error::MismatchedTables(format!(
                "wedge algebras for g = {} and g = {}",
                self.g, rhs.g
            )));
        }
        let mut out = Self::zero(self.g);
        for (ma, ca) in &self.terms {
            'pairs: for (mb, cb) in &rhs.terms {
                // merge with inversion sign
                let mut merged = Vec::with_capacity(ma.len() + mb.len());
                let mut inv = 0usize;
                let (mut i, mut j) = (0, 0);
                while i < ma.len() || j < mb.len() {
                    if j == mb.len() || (i < ma.len() && ma[i] < mb[j]) {
                        merged.push(ma[i]);
                        i += 1;
                    } else if i < ma.len() && ma[i] == mb[j] {
                        continue 'pairs;
                    } else {
                        inv += ma.len() - i;
                        merged.push(mb[j]);
                        j += 1;
                    }
                }
                let mut c = ca.clone() * cb.clone();
                if inv % 2 == 1 {
                    c = -c;
                }
                out.add_term(merged.into_boxed_slice(), c);
            }
        }
        Ok(out)
    }

    pub fn wedge_pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.g);
        for _ in 0..e {
            acc = acc.wedge(self).expect("same g");
        }
        acc
    }

    /// Contraction with the symplectic form: each present pair `(i, i+g)` at
    /// positions `a < b` contributes `(-1)^(a+b+1)` (positions zero-based)
    /// times the monomial with the pair removed.
    pub fn contract(&self) -> Self {
        let g = self.g as u8;
        let mut out = Self::zero(self.g);
        for (m, c) in &self.terms {
            for a in 0..m.len() {
                if m[a] > g {
                    break;
                }
                if let Some(b) = m.iter().position(|&x| x == m[a] + g) {
                    let mut rest = Vec::with_capacity(m.len() - 2);
                    for (p, &x) in m.iter().enumerate() {
                        if p != a && p != b {
                            rest.push(x);
                        }
                    }
                    let mut v = c.clone();
                    if (a + b + 1) % 2 == 1 {
                        v = -v;
                    }
                    out.add_term(rest.into_boxed_slice(), v);
                }
            }
        }
        out
    }

    /// Wedge degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|m| m.len()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The wedge-degree-`d` part.
    pub fn component(&self, d: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.len() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self { g: self.g, terms }
    }
}

impl<F: Scalar> fmt::Display for WedgeElement<F> {
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
            if !m.is_empty() {
                let idx: Vec<String> = m.iter().map(|i| i.to_string()).collect();
                write!(f, " * e({})", idx.join(","))?;
            }
        }
        Ok(())
    }
}

/// `gamma_omega = sum_{j=1..g} e_j ^ e_{j+g}`.
pub fn gamma_omega<F: Scalar>(g: usize) -> WedgeElement<F> {
    let mut w = WedgeElement::zero(g);
    for j in 1..=g as u8 {
        let m = WedgeElement::monomial(g, &[j, j + g as u8], F::one()).unwrap();
        w = w.add(&m).unwrap();
    }
    w
}

/// All strictly increasing `size`-element lists from `1..=universe`,
/// lexicographic.
fn subsets(universe: u8, size: usize) -> Vec<IndexList> {
    let mut out = Vec::new();
    if size > universe as usize {
        return out;
    }
    let mut cur: Vec<u8> = (1..=size as u8).collect();
    loop {
        out.push(cur.clone().into_boxed_slice());
        // advance
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < universe - (size - 1 - i) as u8 {
                cur[i] += 1;
                for j in i + 1..size {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// dim of the degree-`k` primitive subspace: `C(2g,k) - C(2g,k-2)`.
pub fn primitive_dimension(g: usize, k: usize) -> usize {
    let n = 2 * g as i64;
    let k = k as i64;
    let d = binomial::<Rat>(n, k) - binomial::<Rat>(n, k - 2);
    d.to_integer().try_into().expect("nonnegative for k <= g")
}

/// Exact kernel of an integer matrix; basis vectors are rational, one per
/// free column, ordered by column.
fn int_kernel(mut m: Vec<Vec<i128>>, cols: usize) -> Vec<Vec<Rat>> {
    let rows = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(p, row);
        // eliminate below and above with integer cross-multiplication
        for r in 0..rows {
            if r == row || m[r][col] == 0 {
                continue;
            }
            let (a, b) = (m[row][col], m[r][col]);
            for j in 0..cols {
                m[r][j] = m[r][j]
                    .checked_mul(a)
                    .and_then(|x| m[row][j].checked_mul(b).map(|y| x - y))
                    .expect("integer overflow in kernel elimination");
            }
            let g = m[r].iter().fold(0i128, |acc, &v| gcd_i128(acc, v));
            if g > 1 {
                for v in m[r].iter_mut() {
                    *v /= g;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![Rat::zero(); cols];
        v[fc] = Rat::from_int(1);
        for (r, &pc) in pivots.iter().enumerate() {
            if m[r][fc] != 0 {
                v[pc] = -Rat::new(BigInt::from(m[r][fc]), BigInt::from(m[r][pc]));
            }
        }
        basis.push(v);
    }
    basis
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Basis of the primitive subspace `Lambda0^k = ker(contract) in Lambda^k`.
/// Deterministic: kernel of the contraction matrix in lexicographic monomial
/// bases, standard free-column form.
pub fn primitive_basis<F: Scalar>(g: usize, k: usize) -> Result<Vec<WedgeElement<F>>> {
    if k > g {
        return Err(Error::Precondition(format!(
            "primitive degree k = {k} exceeds g = {g}"
        )));
    }
    let source = subsets(2 * g as u8, k);
    if k < 2 {
        // contraction is zero on degrees 0 and 1
        return Ok(source
            .into_iter()
            .map(|m| {
                let mut w = WedgeElement::zero(g);
                w.add_term(m, F::one());
                w
            })
            .collect());
    }
    let target = subsets(2 * g as u8, k - 2);
    let tpos: BTreeMap<&IndexList, usize> =
        target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = vec![vec![0i128; source.len()]; target.len()];
    for (j, m) in source.iter().enumerate() {
        let mut w: WedgeElement<Rat> = WedgeElement::zero(g);
        w.add_term(m.clone(), Rat::from_int(1));
        for (tm, c) in w.contract().terms() {
            let i = tpos[tm];
            rows[i][j] = c.to_integer().to_i128().expect("small entries");
        }
    }
    let kernel = int_kernel(rows, source.len());
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut w = WedgeElement::zero(g);
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    w.add_term(source[j].clone(), F::from_rat(&c));
                }
            }
            w
        })
        .collect())
}

/// One `(k, j)` piece per admissible pair; the element equals
/// `sum gamma_omega^j ^ p_{k,j}` with every `p_{k,j}` primitive of degree `k`.
#[derive(Clone, Debug)]
pub struct PrimitiveDecomposition<F: Scalar> {
    pub g: usize,
    components: BTreeMap<(usize, usize), WedgeElement<F>>,
}

impl<F: Scalar> PrimitiveDecomposition<F> {
    pub fn component(&self, k: usize, j: usize) -> WedgeElement<F> {
        self.components
            .get(&(k, j))
            .cloned()
            .unwrap_or_else(|| WedgeElement::zero(self.g))
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize), &WedgeElement<F>)> {
        self.components.iter()
    }

    pub fn reconstruct(&self) -> WedgeElement<F> {
        let gamma = gamma_omega::<F>(self.g);
        let mut acc = WedgeElement::zero(self.g);
        for (&(_, j), p) in &self.components {
            let term = gamma.wedge_pow(j as u32).wedge(p).expect("same g");
            acc = acc.add(&term).expect("same g");
        }
        acc
    }
}

/// Reusable decomposition context for one `g`: primitive bases plus one
/// inverted reconstruction matrix per wedge degree, built on first use.
pub struct Decomposer<F: Scalar> {
    g: usize,
    prim: Vec<Vec<WedgeElement<F>>>,
    solvers: BTreeMap<usize, DegreeSolver<F>>,
}

struct DegreeSolver<F: Scalar> {
    monomials: Vec<IndexList>,
    layout: Vec<(usize, usize)>, // (k, j) per column block, one entry per column
    inverse: Mat<F>,
}

impl<F: Scalar> Decomposer<F> {
    pub fn new(g: usize) -> Result<Self> {
        let mut prim = Vec::with_capacity(g + 1);
        for k in 0..=g {
            prim.push(primitive_basis::<F>(g, k)?);
        }
        Ok(Self { g, prim, solvers: BTreeMap::new() })
    }

    pub fn primitive_basis(&self, k: usize) -> &[WedgeElement<F>] {
        &self.prim[k]
    }

    fn solver(&mut self, d: usize) -> &DegreeSolver<F> {
        if !self.solvers.contains_key(&d) {
            let built = self.build_solver(d);
            self.solvers.insert(d, built);
        }
        &self.solvers[&d]
    }

    fn build_solver(&self, d: usize) -> DegreeSolver<F> {
        let g = self.g;
        let monomials = subsets(2 * g as u8, d);
        let pos: BTreeMap<&IndexList, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let gamma = gamma_omega::<F>(g);
        let mut columns: Vec<Vec<F>> = Vec::new();
        let mut layout = Vec::new();
        for k in 0..=g.min(d) {
            if (d - k) % 2 != 0 {
                continue;
            }
            let j = (d - k) / 2;
            if j > g - k {
                continue;
            }
            let gj = gamma.wedge_pow(j as u32);
            for p in &self.prim[k] {
                let w = gj.wedge(p).expect("same g");
                let mut col = vec![F::zero(); monomials.len()];
                for (m, c) in w.terms() {
                    col[pos[m]] = c.clone();
                }
                columns.push(col);
                layout.push((k, j));
            }
        }
        assert_eq!(columns.len(), monomials.len(), "decomposition basis count");
        let mut mat = Mat::zeros(monomials.len(), columns.len());
        for (jcol, col) in columns.iter().enumerate() {
            mat.set_column(jcol, col);
        }
        let inverse = mat.inverse().expect("reconstruction basis is invertible");
        DegreeSolver { monomials, layout, inverse }
    }

    /// Unique primitive components of `x` across all wedge degrees.
    pub fn decompose(&mut self, x: &WedgeElement<F>) -> Result<PrimitiveDecomposition<F>> {
        if x.g() != self.g {
            return Err(Error::MismatchedTables(format!(
                "wedge algebras for g = {} and g = {}",
                x.g(),
                self.g
            )));
        }
        let mut components: BTreeMap<(usize, usize), WedgeElement<F>> = BTreeMap::new();
        for d in x.degrees() {
            let xd = x.component(d);
            let (coords, layout) = {
                let solver = self.solver(d);
                let mut rhs = vec![F::zero(); solver.monomials.len()];
                for (m, c) in xd.terms() {
                    let i = solver
                        .monomials
                        .binary_search(m)
                        .expect("monomial enumerated");
                    rhs[i] = c.clone();
                }
                (solver.inverse.matvec(&rhs), solver.layout.clone())
            };
            for (col, c) in coords.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (k, j) = layout[col];
                let within = layout[..col].iter().filter(|&&kj| kj == (k, j)).count();
                let p = self.prim[k][within].scale(&c);
                let entry = components
                    .entry((k, j))
                    .or_insert_with(|| WedgeElement::zero(self.g));
                *entry = entry.add(&p)?;
            }
        }
        Ok(PrimitiveDecomposition { g: self.g, components })
    }
}
