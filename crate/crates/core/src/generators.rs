//! Generator tables.
//!
//! A table fixes the ordered list of generators, their degrees and parities.
//! Three layouts are used:
//!
//! * `moduli(g, n)`: `alpha < beta < gamma < delta_1..delta_n < psi_1..psi_2g < eps`,
//!   degrees 2, 4, 6, 2, 3 with `eps` an involutive degree-2 label,
//! * `commutative(n)`: `alpha, beta, gamma, delta_1..delta_n` (even part only),
//! * `fiber_base()`: `alpha, beta, gamma, A, B`, the base ring of the fiber
//!   series calculus.
//!
//! `gamma` is carried as its own generator everywhere; expanding it into
//! `sum_j psi_j psi_{j+g}` is an explicit, caller-chosen operation.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::error::Error;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenInfo {
    pub name: String,
    pub degree: i64,
    pub odd: bool,
    /// Exponents are reduced mod 2 with `gen^2 = 1` (the `eps` label).
    pub involutive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKind {
    Moduli,
    Commutative,
    FiberBase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTable {
    pub kind: TableKind,
    pub g: usize,
    pub n: usize,
    gens: Vec<GenInfo>,
}

fn even(name: String, degree: i64) -> GenInfo {
    GenInfo { name, degree, odd: false, involutive: false }
}

impl GeneratorTable {
    /// Full graded algebra for genus `g` with `n` marked points.
    pub fn moduli(g: usize, n: usize) -> Arc<Self> {
        let mut gens = vec![
            even("alpha".into(), 2),
            even("beta".into(), 4),
            even("gamma".into(), 6),
        ];
        for i in 1..=n {
            gens.push(even(format!("delta_{i}"), 2));
        }
        for j in 1..=2 * g {
            gens.push(GenInfo { name: format!("psi_{j}"), degree: 3, odd: true, involutive: false });
        }
        gens.push(GenInfo { name: "eps".into(), degree: 2, odd: false, involutive: true });
        Arc::new(Self { kind: TableKind::Moduli, g, n, gens })
    }

    /// Even commutative subring generators `alpha, beta, gamma, delta_1..delta_n`.
    pub fn commutative(n: usize) -> Arc<Self> {
        let mut gens = vec![
            even("alpha".into(), 2),
            even("beta".into(), 4),
            even("gamma".into(), 6),
        ];
        for i in 1..=n {
            gens.push(even(format!("delta_{i}"), 2));
        }
        Arc::new(Self { kind: TableKind::Commutative, g: 0, n, gens })
    }

    /// Base ring of the fiber series calculus.
    pub fn fiber_base() -> Arc<Self> {
        let gens = vec![
            even("alpha".into(), 2),
            even("beta".into(), 4),
            even("gamma".into(), 6),
            even("A".into(), 2),
            even("B".into(), 4),
        ];
        Arc::new(Self { kind: TableKind::FiberBase, g: 0, n: 0, gens })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen_info(&self, idx: usize) -> &GenInfo {
        &self.gens[idx]
    }

    pub fn gens(&self) -> &[GenInfo] {
        &self.gens
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|gi| gi.name == name)
    }

    pub const ALPHA: usize = 0;
    pub const BETA: usize = 1;
    pub const GAMMA: usize = 2;

    /// Index of `delta_i`, `i` one-based.
    pub fn delta(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n || self.kind == TableKind::FiberBase {
            return Err(Error::IndexOutOfRange(format!(
                "delta_{i} not present (n = {})",
                self.n
            )));
        }
        Ok(2 + i)
    }

    /// Index of `psi_j`, `j` one-based in `1..=2g`.
    pub fn psi(&self, j: usize) -> Result<usize> {
        if self.kind != TableKind::Moduli || j == 0 || j > 2 * self.g {
            return Err(Error::IndexOutOfRange(format!(
                "psi_{j} not present (g = {})",
                self.g
            )));
        }
        Ok(3 + self.n + j - 1)
    }

    pub fn eps(&self) -> Option<usize> {
        (self.kind == TableKind::Moduli).then(|| self.gens.len() - 1)
    }

    /// Index of the fiber-base generator `A`.
    pub fn slot_a(&self) -> Result<usize> {
        if self.kind != TableKind::FiberBase {
            return Err(Error::IndexOutOfRange("A only lives in the fiber base".into()));
        }
        Ok(3)
    }

    /// Index of the fiber-base generator `B`.
    pub fn slot_b(&self) -> Result<usize> {
        if self.kind != TableKind::FiberBase {
            return Err(Error::IndexOutOfRange("B only lives in the fiber base".into()));
        }
        Ok(4)
    }
}

/// Table identity check shared by all binary operations.
pub fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::MismatchedTables(format!(
            "{:?}(g={},n={}) vs {:?}(g={},n={})",
            a.kind, a.g, a.n, b.kind, b.g, b.n
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_layout() {
        let t = GeneratorTable::moduli(2, 3);
        assert_eq!(t.len(), 3 + 3 + 4 + 1);
        assert_eq!(t.gen_info(GeneratorTable::ALPHA).name, "alpha");
        assert_eq!(t.gen_info(t.delta(3).unwrap()).name, "delta_3");
        assert_eq!(t.gen_info(t.psi(4).unwrap()).name, "psi_4");
        assert_eq!(t.gen_info(t.eps().unwrap()).name, "eps");
        assert!(t.gen_info(t.psi(1).unwrap()).odd);
        assert!(t.delta(4).is_err());
        assert!(t.psi(5).is_err());
    }

    #[test]
    fn degrees() {
        let t = GeneratorTable::moduli(1, 2);
        let degs: Vec<i64> = t.gens().iter().map(|gi| gi.degree).collect();
        assert_eq!(degs, vec![2, 4, 6, 2, 2, 3, 3, 2]);
    }
}
