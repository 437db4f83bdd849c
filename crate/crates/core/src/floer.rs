//! Closed-form consequence tables: eigenvalue spectra of the surface
//! operator on the product-pair homologies, graded dimensions of the
//! annular invariant of trivial braid closures, and the meridional 2g+n
//! bound evaluator.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::Error;
use crate::Result;

/// Which homology space a spectrum table describes.
///
/// `V` is the product pair with trivial auxiliary bundle, `U` twists by an
/// arc joining two marked points, `W2` is the point-operator eigenvalue-2
/// block of the nonseparating-circle twist, and `Ahi` is the annular
/// invariant of a trivial braid closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    V,
    U,
    W2,
    #[serde(rename = "AHI")]
    Ahi,
}

impl Space {
    pub fn label(self) -> &'static str {
        match self {
            Space::V => "V",
            Space::U => "U",
            Space::W2 => "W2",
            Space::Ahi => "AHI",
        }
    }
}

/// One eigenvalue row. `multiplicity` is a decimal string when the theory
/// pins the dimension down and `"unknown"` otherwise; `note` records the
/// statement the row is quoting.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub value: i64,
    pub multiplicity: String,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub space: Space,
    pub g: usize,
    pub n: usize,
    pub rows: Vec<SpectrumRow>,
    pub paper_ref: String,
}

const NOTE_EXTREME_UW: &str = "top and bottom generalized eigenspaces are 1-dimensional";
const NOTE_EXTREME_V: &str =
    "simultaneous (surface, point) generalized eigenspace at (value, 2) is 1-dimensional";
const NOTE_EXTREME_V_OPEN: &str = "extreme multiplicity established only for n >= 3";
const NOTE_INTERIOR: &str = "interior multiplicity not determined";

fn spectrum_ref(space: Space) -> String {
    match space {
        Space::V => "surface-operator spectrum on the marked product pair, trivial auxiliary bundle",
        Space::U => "surface-operator spectrum, auxiliary bundle an arc joining two marked points",
        Space::W2 => {
            "surface-operator spectrum on the point-operator eigenvalue-2 block, auxiliary bundle a nonseparating circle"
        }
        Space::Ahi => "annular invariant of the trivial braid closure as tensor powers of the one-strand table",
    }
    .to_string()
}

/// Eigenvalues of the degree-2 surface operator: the arithmetic progression
/// `-(2g+n-2), -(2g+n-4), ..., 2g+n-2`, with the extreme multiplicities
/// filled in where they are known to be 1.
pub fn spectrum(space: Space, g: usize, n: usize) -> Result<SpectrumReport> {
    let (extremes_pinned, extreme_note) = match space {
        Space::V => {
            if n % 2 == 0 {
                return Err(Error::Precondition(format!(
                    "space V requires odd n (got n = {n})"
                )));
            }
            if g == 0 && n == 1 {
                return Err(Error::Precondition(
                    "(g, n) = (0, 1) is excluded: V vanishes identically there".into(),
                ));
            }
            (n >= 3, NOTE_EXTREME_V)
        }
        Space::U => {
            if n < 2 {
                return Err(Error::Precondition(format!(
                    "space U requires n >= 2 (got n = {n})"
                )));
            }
            (true, NOTE_EXTREME_UW)
        }
        Space::W2 => {
            if g < 1 {
                return Err(Error::Precondition(format!(
                    "space W2 requires g >= 1 (got g = {g})"
                )));
            }
            (true, NOTE_EXTREME_UW)
        }
        Space::Ahi => {
            return Err(Error::Precondition(
                "the annular table is indexed by strand count alone; use ahi_report".into(),
            ))
        }
    };

    let top = 2 * g as i64 + n as i64 - 2;
    let mut rows = Vec::new();
    for value in (-top..=top).step_by(2) {
        let extreme = value.abs() == top;
        let (multiplicity, note) = if extreme && extremes_pinned {
            ("1".to_string(), extreme_note.to_string())
        } else if extreme {
            ("unknown".to_string(), NOTE_EXTREME_V_OPEN.to_string())
        } else {
            ("unknown".to_string(), NOTE_INTERIOR.to_string())
        };
        rows.push(SpectrumRow {
            value,
            multiplicity,
            note,
        });
    }

    Ok(SpectrumReport {
        space,
        g,
        n,
        rows,
        paper_ref: spectrum_ref(space),
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Graded dimensions of the annular invariant of the n-strand trivial braid
/// closure, keyed by f-degree. The one-strand table is 1-dimensional at
/// degrees +-1, and the n-strand table is its n-th convolution power, so the
/// dimension at degree f is C(n, (n+f)/2) when n+f is even. Only the nonzero
/// entries are stored.
pub fn ahi_product(n: usize) -> Result<BTreeMap<i64, u128>> {
    if n == 0 {
        return Err(Error::Precondition("ahi_product requires n >= 1".into()));
    }
    if n > 100 {
        return Err(Error::Precondition(format!(
            "strand count capped at 100 to keep the table exact (got {n})"
        )));
    }
    let ni = n as i64;
    let mut out = BTreeMap::new();
    let mut f = -ni;
    while f <= ni {
        out.insert(f, binomial(n, ((ni + f) / 2) as usize));
        f += 2;
    }
    Ok(out)
}

/// The annular table dressed as a spectrum report: the f-degree is the
/// eigenvalue of the sphere operator, and every multiplicity is known.
pub fn ahi_report(n: usize) -> Result<SpectrumReport> {
    let table = ahi_product(n)?;
    let rows = table
        .iter()
        .map(|(&f, &dim)| SpectrumRow {
            value: f,
            multiplicity: dim.to_string(),
            note: format!("binomial C({n}, {})", (n as i64 + f) / 2),
        })
        .collect();
    Ok(SpectrumReport {
        space: Space::Ahi,
        g: 0,
        n,
        rows,
        paper_ref: spectrum_ref(Space::Ahi),
    })
}

/// A meridional surface candidate: genus and intersection count with the link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MeridionalSurface {
    pub g: usize,
    pub n: usize,
}

impl MeridionalSurface {
    pub fn complexity(&self) -> usize {
        2 * self.g + self.n
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThurstonReport {
    pub bound: usize,
    pub attained_by: MeridionalSurface,
    pub vanishing: String,
    pub nonvanishing: String,
    pub paper_ref: String,
}

/// Minimum of 2g+n over the given meridional surfaces, with the vanishing
/// and nonvanishing statements it certifies for the annular invariant.
pub fn thurston_bound(surfaces: &[MeridionalSurface]) -> Result<ThurstonReport> {
    let best = surfaces
        .iter()
        .copied()
        .min_by_key(|s| s.complexity())
        .ok_or_else(|| Error::Precondition("thurston_bound requires at least one surface".into()))?;
    let bound = best.complexity();
    let nonvanishing = if bound == 0 {
        "AHI(L, 0) != 0".to_string()
    } else {
        format!("AHI(L, {bound}) != 0 and AHI(L, -{bound}) != 0")
    };
    Ok(ThurstonReport {
        bound,
        attained_by: best,
        vanishing: format!("AHI(L, i) = 0 whenever |i| > {bound}"),
        nonvanishing,
        paper_ref: "the annular invariant vanishes beyond the minimal 2g+n over meridional surfaces and is nonzero at the extremes".to_string(),
    })
}

/// Dimension of the representation variety: 6g + 2n - 6.
pub fn dim_r(g: usize, n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::Precondition(
            "the dimension formula is tabulated for n >= 1".into(),
        ));
    }
    Ok(6 * g as i64 + 2 * n as i64 - 6)
}

/// Morse-Bott bound on the homology dimension: twice the caller-supplied
/// total Betti number of the representation variety. The Betti number is an
/// input, not something this crate computes.
pub fn mb_bound(g: usize, n: usize, betti_total: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition(format!(
            "the bound is tabulated for n >= 1 (got (g, n) = ({g}, 0))"
        )));
    }
    Ok(2 * betti_total)
}

/// Cited table value, not computed here: with two extra markings the second
/// Betti number of the representation variety is n + 3 for every genus.
pub fn b2_two_extra_markings(n: usize) -> u64 {
    n as u64 + 3
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(report: &SpectrumReport) -> Vec<i64> {
        report.rows.iter().map(|r| r.value).collect()
    }

    #[test]
    fn u_table_pins_the_extremes() {
        let rep = spectrum(Space::U, 1, 3).unwrap();
        assert_eq!(values(&rep), vec![-3, -1, 1, 3]);
        assert_eq!(rep.rows[0].multiplicity, "1");
        assert_eq!(rep.rows[3].multiplicity, "1");
        assert_eq!(rep.rows[1].multiplicity, "unknown");
        assert_eq!(rep.rows[2].multiplicity, "unknown");
    }

    #[test]
    fn v_small_tables() {
        let rep = spectrum(Space::V, 0, 3).unwrap();
        assert_eq!(values(&rep), vec![-1, 1]);
        // n >= 3, so both rows are pinned extremes
        assert!(rep.rows.iter().all(|r| r.multiplicity == "1"));

        // one marking: the progression is known but the extreme dimensions are not
        let rep = spectrum(Space::V, 1, 1).unwrap();
        assert_eq!(values(&rep), vec![-1, 1]);
        assert!(rep.rows.iter().all(|r| r.multiplicity == "unknown"));
    }

    #[test]
    fn v_exclusions() {
        let err = spectrum(Space::V, 0, 1).unwrap_err();
        assert!(err.to_string().contains("(0, 1)"), "got: {err}");
        assert!(spectrum(Space::V, 1, 2).is_err());
        assert!(spectrum(Space::V, 0, 4).is_err());
    }

    #[test]
    fn parameter_guards() {
        assert!(spectrum(Space::U, 3, 1).is_err());
        assert!(spectrum(Space::U, 0, 0).is_err());
        assert!(spectrum(Space::W2, 0, 5).is_err());
        assert!(spectrum(Space::Ahi, 0, 3).is_err());
    }

    #[test]
    fn degenerate_single_row_tables() {
        // 2g+n-2 = 0: one eigenvalue, and it is both the top and the bottom
        for (space, g, n) in [(Space::U, 0, 2), (Space::W2, 1, 0)] {
            let rep = spectrum(space, g, n).unwrap();
            assert_eq!(values(&rep), vec![0]);
            assert_eq!(rep.rows[0].multiplicity, "1");
        }
    }

    #[test]
    fn progression_shape() {
        for g in 0..=5usize {
            for n in 0..=9usize {
                for space in [Space::V, Space::U, Space::W2] {
                    let rep = match spectrum(space, g, n) {
                        Ok(r) => r,
                        Err(_) => continue,
                    };
                    let vals = values(&rep);
                    assert_eq!(vals.len(), 2 * g + n - 1, "size at {space:?} ({g},{n})");
                    let negated: Vec<i64> = vals.iter().rev().map(|v| -v).collect();
                    assert_eq!(vals, negated, "negation closure at {space:?} ({g},{n})");
                    for w in vals.windows(2) {
                        assert_eq!(w[1] - w[0], 2);
                    }
                    let top = 2 * g as i64 + n as i64 - 2;
                    assert_eq!(vals.first().copied(), Some(-top));
                    assert_eq!(vals.last().copied(), Some(top));
                }
            }
        }
    }

    #[test]
    fn ahi_pinned_tables() {
        let t1 = ahi_product(1).unwrap();
        assert_eq!(t1, BTreeMap::from([(-1, 1), (1, 1)]));
        let t2 = ahi_product(2).unwrap();
        assert_eq!(t2, BTreeMap::from([(-2, 1), (0, 2), (2, 1)]));
        let t3 = ahi_product(3).unwrap();
        assert_eq!(t3, BTreeMap::from([(-3, 1), (-1, 3), (1, 3), (3, 1)]));
    }

    #[test]
    fn ahi_totals_and_convolution() {
        for n in 1..=12usize {
            let t = ahi_product(n).unwrap();
            let total: u128 = t.values().sum();
            assert_eq!(total, 1u128 << n, "total at n = {n}");
        }
        let base = ahi_product(1).unwrap();
        for n in 2..=12usize {
            let prev = ahi_product(n - 1).unwrap();
            let mut conv: BTreeMap<i64, u128> = BTreeMap::new();
            for (&f, &d) in &prev {
                for (&f2, &d2) in &base {
                    *conv.entry(f + f2).or_insert(0) += d * d2;
                }
            }
            assert_eq!(conv, ahi_product(n).unwrap(), "convolution at n = {n}");
        }
    }

    #[test]
    fn ahi_guards() {
        assert!(ahi_product(0).is_err());
        assert!(ahi_product(101).is_err());
        assert!(ahi_product(100).is_ok());
    }

    #[test]
    fn ahi_report_matches_the_table() {
        let rep = ahi_report(3).unwrap();
        assert_eq!(rep.n, 3);
        assert_eq!(values(&rep), vec![-3, -1, 1, 3]);
        let mults: Vec<&str> = rep.rows.iter().map(|r| r.multiplicity.as_str()).collect();
        assert_eq!(mults, vec!["1", "3", "3", "1"]);
        assert_eq!(serde_json::to_string(&rep.space).unwrap(), "\"AHI\"");
    }

    #[test]
    fn thurston_examples() {
        let rep = thurston_bound(&[MeridionalSurface { g: 0, n: 3 }]).unwrap();
        assert_eq!(rep.bound, 3);

        let rep = thurston_bound(&[
            MeridionalSurface { g: 0, n: 5 },
            MeridionalSurface { g: 1, n: 1 },
            MeridionalSurface { g: 2, n: 0 },
        ])
        .unwrap();
        assert_eq!(rep.bound, 3);
        assert_eq!(rep.attained_by, MeridionalSurface { g: 1, n: 1 });

        let rep = thurston_bound(&[MeridionalSurface { g: 0, n: 0 }]).unwrap();
        assert_eq!(rep.bound, 0);
        assert!(rep.vanishing.contains("|i| > 0"));

        assert!(thurston_bound(&[]).is_err());
    }

    #[test]
    fn thurston_is_monotone() {
        let mut list = vec![MeridionalSurface { g: 2, n: 3 }];
        let mut last = thurston_bound(&list).unwrap().bound;
        for s in [
            MeridionalSurface { g: 1, n: 4 },
            MeridionalSurface { g: 0, n: 9 },
            MeridionalSurface { g: 0, n: 2 },
            MeridionalSurface { g: 3, n: 0 },
        ] {
            list.push(s);
            let next = thurston_bound(&list).unwrap().bound;
            assert!(next <= last, "bound rose after adding {s:?}");
            last = next;
        }
        assert_eq!(last, 2);
    }

    #[test]
    fn dimension_helpers() {
        assert_eq!(dim_r(0, 3).unwrap(), 0);
        assert_eq!(dim_r(1, 3).unwrap(), 6);
        assert_eq!(dim_r(0, 1).unwrap(), -4);
        assert!(dim_r(2, 0).is_err());

        assert_eq!(mb_bound(0, 3, 1).unwrap(), 2);
        assert_eq!(mb_bound(4, 7, 21).unwrap(), 42);
        assert!(mb_bound(1, 0, 5).is_err());

        assert_eq!(b2_two_extra_markings(1), 4);
        assert_eq!(b2_two_extra_markings(2), 5);
    }
}
