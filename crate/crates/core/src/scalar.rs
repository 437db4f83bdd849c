//! Coefficient scalars.
//!
//! Symbolic computation runs over an exact field; [`GaussRat`] (pairs of
//! arbitrary-precision rationals) is the default. Floating point appears only
//! through [`Scalar::to_complex_f64`] at evaluation boundaries.

use num::complex::Complex64;
use num::{BigRational, Complex};
use num_traits::{Num, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use crate::error::Error;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Exact Gaussian rational scalar: a pair of rationals (re, im).
pub type GaussRat = Complex<Rat>;

/// Field scalar usable as a polynomial or series coefficient.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    /// The exact fraction `num/den`. Panics if `den == 0`.
    fn from_fraction(num: i64, den: i64) -> Self;

    fn from_rat(r: &Rat) -> Self;

    /// Lossy conversion for the numeric evaluation boundary.
    fn to_complex_f64(&self) -> Complex64;

    /// Exact real-rational view, when the scalar is one.
    fn as_rational(&self) -> Option<Rat>;

    /// Exact text form used by the polynomial format. Must round-trip
    /// through [`Scalar::coeff_from_str`].
    fn coeff_to_string(&self) -> String;

    fn coeff_from_str(s: &str) -> Result<Self, Error>;
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    Rat::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

impl Scalar for Rat {
    fn from_int(v: i64) -> Self {
        Rat::from_integer(v.into())
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        Rat::new(num.into(), den.into())
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn to_complex_f64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn as_rational(&self) -> Option<Rat> {
        Some(self.clone())
    }

    fn coeff_to_string(&self) -> String {
        self.to_string()
    }

    fn coeff_from_str(s: &str) -> Result<Self, Error> {
        parse_rat(s)
    }
}

impl Scalar for GaussRat {
    fn from_int(v: i64) -> Self {
        Complex::new(Rat::from_int(v), Rat::zero())
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        Complex::new(Rat::from_fraction(num, den), Rat::zero())
    }

    fn from_rat(r: &Rat) -> Self {
        Complex::new(r.clone(), Rat::zero())
    }

    fn to_complex_f64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn as_rational(&self) -> Option<Rat> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn coeff_to_string(&self) -> String {
        if self.im.is_zero() {
            self.re.to_string()
        } else if self.im.is_negative() {
            format!("({}-{}i)", self.re, -self.im.clone())
        } else {
            format!("({}+{}i)", self.re, self.im)
        }
    }

    fn coeff_from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let inner = inner
                .strip_suffix('i')
                .ok_or_else(|| Error::Parse(format!("bad complex coefficient `{s}`")))?;
            // split at the sign separating re from im, skipping a leading sign
            let mut split = None;
            for (pos, ch) in inner.char_indices().skip(1) {
                if (ch == '+' || ch == '-') && !inner[..pos].ends_with('/') {
                    split = Some(pos);
                }
            }
            let pos =
                split.ok_or_else(|| Error::Parse(format!("bad complex coefficient `{s}`")))?;
            let re = parse_rat(&inner[..pos])?;
            let sign = if inner[pos..].starts_with('-') { -1 } else { 1 };
            let im = parse_rat(&inner[pos + 1..])? * Rat::from_int(sign);
            Ok(Complex::new(re, im))
        } else {
            Ok(Complex::new(parse_rat(s)?, Rat::zero()))
        }
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn from_rat(r: &Rat) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn to_complex_f64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn as_rational(&self) -> Option<Rat> {
        None
    }

    fn coeff_to_string(&self) -> String {
        format!("{self}")
    }

    fn coeff_from_str(s: &str) -> Result<Self, Error> {
        s.trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad float `{s}`: {e}")))
    }
}

/// `v!` as an exact scalar.
pub fn factorial<F: Scalar>(v: u32) -> F {
    let mut acc = F::one();
    for i in 2..=v as i64 {
        acc = acc * F::from_int(i);
    }
    acc
}

/// Binomial coefficient as an exact scalar, zero for `k < 0` or `k > n`.
pub fn binomial<F: Scalar>(n: i64, k: i64) -> F {
    if k < 0 || k > n {
        return F::zero();
    }
    let k = k.min(n - k);
    let mut acc = F::one();
    for i in 0..k {
        acc = acc * F::from_int(n - i) / F::from_int(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rat_coeff_round_trip() {
        let samples = [
            GaussRat::from_int(3),
            GaussRat::from_fraction(-7, 2),
            Complex::new(Rat::from_fraction(1, 2), Rat::from_fraction(3, 4)),
            Complex::new(Rat::from_int(0), Rat::from_fraction(-2, 5)),
            Complex::new(Rat::from_fraction(-1, 3), Rat::from_int(1)),
        ];
        for c in samples {
            let s = c.coeff_to_string();
            assert_eq!(GaussRat::coeff_from_str(&s).unwrap(), c, "via `{s}`");
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(Rat::coeff_from_str("-3/4").unwrap(), Rat::from_fraction(-3, 4));
        assert_eq!(Rat::from_fraction(6, -4), Rat::from_fraction(-3, 2));
        assert_eq!(Rat::from_fraction(-3, 2).coeff_to_string(), "-3/2");
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(factorial::<Rat>(5), Rat::from_int(120));
        assert_eq!(binomial::<Rat>(6, 2), Rat::from_int(15));
        assert_eq!(binomial::<Rat>(6, -1), Rat::zero());
        assert_eq!(binomial::<Rat>(6, 7), Rat::zero());
    }
}
