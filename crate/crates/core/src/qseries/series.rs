//! Truncated formal series in `q` with exact rational coefficients.
//!
//! Exponents live on `offset + (1/c)·ℕ`: a rational offset carries prefactors
//! such as `q^{-1/48}` exactly, and the grid denominator `c` lets half-integer
//! (or finer) powers coexist with integer ones.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::ModularParameter;

/// Exponents are small rationals; coefficients are arbitrary precision.
pub type Exponent = Ratio<i64>;

/// Grid denominator covering every prefactor that appears in the f-functions.
pub const DEFAULT_GRID: i64 = 48;

#[derive(Debug, Clone)]
pub struct FormalSeries {
    grid: i64,
    offset: Exponent,
    /// `coeffs[j]` multiplies `q^{offset + j/grid}`; the length is the precision.
    coeffs: Vec<BigRational>,
}

impl FormalSeries {
    /// The zero series known up to (but excluding) `offset + precision`.
    pub fn zero(grid: i64, offset: Exponent, precision: Exponent) -> Result<Self> {
        let steps = steps_on_grid(precision, grid)?;
        if steps < 0 {
            return Err(Error::InvalidArgument(format!(
                "precision {precision} must be non-negative"
            )));
        }
        Ok(Self {
            grid,
            offset,
            coeffs: vec![BigRational::zero(); steps as usize],
        })
    }

    /// `1 + O(q^order)` on the given grid.
    pub fn one(grid: i64, order: u32) -> Result<Self> {
        Self::monomial(
            grid,
            Exponent::zero(),
            BigRational::one(),
            Exponent::from(order as i64),
        )
    }

    /// `coefficient · q^exponent`, known up to relative precision `precision`.
    pub fn monomial(
        grid: i64,
        exponent: Exponent,
        coefficient: BigRational,
        precision: Exponent,
    ) -> Result<Self> {
        let mut s = Self::zero(grid, exponent, precision)?;
        if let Some(c) = s.coeffs.first_mut() {
            *c = coefficient;
        }
        Ok(s)
    }

    /// Builds a series from explicit terms, validating the grid and order.
    pub fn from_terms(
        grid: i64,
        offset: Exponent,
        order: Exponent,
        terms: impl IntoIterator<Item = (Exponent, BigRational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(grid, offset, order - offset)?;
        for (exponent, coefficient) in terms {
            let rel = exponent - offset;
            let j = steps_on_grid(rel, grid)?;
            if j < 0 || j as usize >= s.coeffs.len() {
                return Err(Error::InvalidArgument(format!(
                    "term q^{exponent} lies outside [{offset}, {order})"
                )));
            }
            s.coeffs[j as usize] += coefficient;
        }
        Ok(s)
    }

    pub fn grid(&self) -> i64 {
        self.grid
    }

    pub fn offset(&self) -> Exponent {
        self.offset
    }

    /// Exclusive truncation exponent.
    pub fn order(&self) -> Exponent {
        self.offset + self.precision()
    }

    /// Width of the known window above the offset.
    pub fn precision(&self) -> Exponent {
        Exponent::new(self.coeffs.len() as i64, self.grid)
    }

    /// Coefficient of `q^exponent`, or `None` if the exponent is at or beyond
    /// the truncation order.
    pub fn coefficient(&self, exponent: Exponent) -> Option<BigRational> {
        if exponent >= self.order() {
            return None;
        }
        if exponent < self.offset {
            return Some(BigRational::zero());
        }
        let rel = (exponent - self.offset) * self.grid;
        if !rel.is_integer() {
            return Some(BigRational::zero());
        }
        Some(self.coeffs[rel.to_integer() as usize].clone())
    }

    /// Coefficients of `q^0, q^1, …, q^{count-1}`.
    ///
    /// Panics if any requested power is beyond the truncation order.
    pub fn integer_coefficients(&self, count: usize) -> Vec<BigRational> {
        (0..count as i64)
            .map(|n| {
                self.coefficient(Exponent::from(n))
                    .unwrap_or_else(|| panic!("q^{n} is beyond the order {}", self.order()))
            })
            .collect()
    }

    /// Non-zero terms in increasing exponent order.
    pub fn terms(&self) -> Vec<(Exponent, BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (self.offset + Exponent::new(j as i64, self.grid), c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when the series is exactly `1` up to its order.
    pub fn is_one(&self) -> bool {
        let terms = self.terms();
        terms.len() == 1 && terms[0].0.is_zero() && terms[0].1.is_one()
    }

    /// Re-expresses the series on a finer grid `grid` (a multiple of the current one).
    pub fn regrid(&self, grid: i64) -> Result<Self> {
        if grid <= 0 || grid % self.grid != 0 {
            return Err(Error::InvalidArgument(format!(
                "grid {grid} is not a multiple of {}",
                self.grid
            )));
        }
        let factor = (grid / self.grid) as usize;
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() * factor];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[j * factor] = c.clone();
            }
        }
        Ok(Self {
            grid,
            offset: self.offset,
            coeffs,
        })
    }

    /// Drops every term at or above `order`.
    pub fn truncate(&self, order: Exponent) -> Result<Self> {
        let steps = steps_on_grid(order - self.offset, self.grid)?;
        if steps < 0 {
            return Err(Error::InvalidArgument(format!(
                "order {order} is below the offset {}",
                self.offset
            )));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(steps as usize);
        Ok(Self {
            grid: self.grid,
            offset: self.offset,
            coeffs,
        })
    }

    /// Moves the offset up to the first non-zero coefficient.
    pub fn normalized(&self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        Self {
            grid: self.grid,
            offset: self.offset + Exponent::new(lead as i64, self.grid),
            coeffs: self.coeffs[lead..].to_vec(),
        }
    }

    /// Multiplies in place by `(1 + sign·q^{step/grid})^power` relative to the
    /// offset; negative powers divide. `step` must be positive.
    pub(crate) fn mul_binomial(&mut self, negate: bool, step: usize, power: i64) {
        debug_assert!(step > 0);
        let len = self.coeffs.len();
        if step >= len {
            return;
        }
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                // (1 ± x)·f: walk downwards so each source is still unmodified
                for j in (step..len).rev() {
                    if self.coeffs[j - step].is_zero() {
                        continue;
                    }
                    let src = self.coeffs[j - step].clone();
                    if negate {
                        self.coeffs[j] -= src;
                    } else {
                        self.coeffs[j] += src;
                    }
                }
            } else {
                // f/(1 ± x): g_j = f_j ∓ g_{j-step}, walking upwards
                for j in step..len {
                    if self.coeffs[j - step].is_zero() {
                        continue;
                    }
                    let src = self.coeffs[j - step].clone();
                    if negate {
                        self.coeffs[j] += src;
                    } else {
                        self.coeffs[j] -= src;
                    }
                }
            }
        }
    }

    /// Multiplicative inverse. The lowest known coefficient must be non-zero
    /// after normalisation.
    pub fn inverse(&self) -> Result<Self> {
        let a = self.normalized();
        let Some(lead) = a.coeffs.first().filter(|c| !c.is_zero()).cloned() else {
            return Err(Error::Domain(
                "cannot invert a series with no non-zero coefficient".into(),
            ));
        };
        let lead_inv = lead.recip();
        let nonzero: Vec<(usize, &BigRational)> = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = vec![BigRational::zero(); a.coeffs.len()];
        out[0] = lead_inv.clone();
        for n in 1..out.len() {
            let mut acc = BigRational::zero();
            for &(k, ak) in nonzero.iter().take_while(|(k, _)| *k <= n) {
                if !out[n - k].is_zero() {
                    acc += ak * &out[n - k];
                }
            }
            out[n] = -(acc * &lead_inv);
        }
        Ok(Self {
            grid: a.grid,
            offset: -a.offset,
            coeffs: out,
        })
    }

    pub fn pow(&self, exponent: i64) -> Result<Self> {
        let base = if exponent < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut coeffs = vec![BigRational::zero(); base.coeffs.len()];
        if let Some(c) = coeffs.first_mut() {
            *c = BigRational::one();
        }
        let mut acc = Self {
            grid: base.grid,
            offset: Exponent::zero(),
            coeffs,
        };
        let mut square = base;
        let mut e = exponent.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &square;
            }
            e >>= 1;
            if e > 0 {
                square = &square * &square;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            grid: self.grid,
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: Exponent) -> Self {
        Self {
            grid: self.grid,
            offset: self.offset + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Numeric value at `q = e^{2πiτ}`, each power taken as `exp(2πiτ·x)`.
    pub fn evaluate(&self, tau: &ModularParameter) -> Complex64 {
        self.terms()
            .into_iter()
            .map(|(e, c)| tau.q_power(ratio_to_f64(e)) * rational_to_f64(&c))
            .sum()
    }

    /// `Σ |c_x|·|q|^x`, the largest modulus any single evaluation can reach.
    pub fn abs_sum(&self, tau: &ModularParameter) -> f64 {
        self.terms()
            .into_iter()
            .map(|(e, c)| tau.nome_abs().powf(ratio_to_f64(e)) * rational_to_f64(&c).abs())
            .sum()
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| rational_to_f64(c).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            grid_denominator: self.grid,
            offset: format_exponent(self.offset),
            order: format_exponent(self.order()),
            terms: self
                .terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    exponent: format_exponent(e),
                    coefficient: format_rational(&c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        if json.grid_denominator <= 0 {
            return Err(Error::InvalidArgument(format!(
                "grid denominator {} must be positive",
                json.grid_denominator
            )));
        }
        let offset = parse_exponent(&json.offset)?;
        let order = parse_exponent(&json.order)?;
        let terms = json
            .terms
            .iter()
            .map(|t| {
                Ok((
                    parse_exponent(&t.exponent)?,
                    parse_rational(&t.coefficient)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(json.grid_denominator, offset, order, terms)
    }

    /// Brings two series onto a common grid and offset so they can be added.
    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        let diff = other.offset - self.offset;
        let grid = self.grid.lcm(&other.grid).lcm(diff.denom());
        let a = self.regrid(grid)?;
        let b = other.regrid(grid)?;
        let offset = a.offset.min(b.offset);
        let order = a.order().min(b.order());
        let lower = |s: Self| -> Result<Self> {
            let pad = steps_on_grid(s.offset - offset, grid)? as usize;
            let mut coeffs = vec![BigRational::zero(); pad];
            coeffs.extend(s.coeffs);
            Self {
                grid,
                offset,
                coeffs,
            }
            .truncate(order.max(offset))
        };
        Ok((lower(a)?, lower(b)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.aligned(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        Ok(a)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }
}

impl PartialEq for FormalSeries {
    /// Two series are equal when they are known to the same order and agree
    /// on every term, regardless of grid or stored offset.
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.terms() == other.terms()
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;

    fn neg(self) -> FormalSeries {
        FormalSeries {
            grid: self.grid,
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;

    /// Product truncated to the smaller relative precision; offsets add.
    fn mul(self, other: &FormalSeries) -> FormalSeries {
        let grid = self.grid.lcm(&other.grid);
        let a = self.regrid(grid).expect("lcm is a multiple");
        let b = other.regrid(grid).expect("lcm is a multiple");
        let len = a.coeffs.len().min(b.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); len];
        let bn: Vec<(usize, &BigRational)> = b
            .coeffs
            .iter()
            .enumerate()
            .take(len)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, ai) in a.coeffs.iter().enumerate().take(len) {
            if ai.is_zero() {
                continue;
            }
            for &(j, bj) in &bn {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += ai * bj;
            }
        }
        FormalSeries {
            grid,
            offset: a.offset + b.offset,
            coeffs,
        }
    }
}

impl Mul for FormalSeries {
    type Output = FormalSeries;

    fn mul(self, other: FormalSeries) -> FormalSeries {
        &self * &other
    }
}

impl Add for &FormalSeries {
    type Output = FormalSeries;

    fn add(self, other: &FormalSeries) -> FormalSeries {
        self.checked_add(other)
            .expect("series offsets are compatible")
    }
}

impl Sub for &FormalSeries {
    type Output = FormalSeries;

    fn sub(self, other: &FormalSeries) -> FormalSeries {
        self.checked_sub(other)
            .expect("series offsets are compatible")
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (e.is_zero(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "q^{e}")?,
                (false, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        write!(f, " + O(q^{})", self.order())
    }
}

/// Wire form: rationals are `"p/q"` strings, terms in increasing exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub grid_denominator: i64,
    pub offset: String,
    pub order: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponent: String,
    pub coefficient: String,
}

fn steps_on_grid(x: Exponent, grid: i64) -> Result<i64> {
    if grid <= 0 {
        return Err(Error::InvalidArgument(format!(
            "grid denominator {grid} must be positive"
        )));
    }
    let scaled = x * grid;
    if !scaled.is_integer() {
        return Err(Error::OffGrid {
            exponent: format_exponent(x),
            denominator: grid,
        });
    }
    Ok(scaled.to_integer())
}

pub(crate) fn exponent_steps(x: Exponent, grid: i64) -> Result<i64> {
    steps_on_grid(x, grid)
}

pub fn format_exponent(x: Exponent) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_exponent(text: &str) -> Result<Exponent> {
    let r = parse_rational(text)?;
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Exponent::new(n, d)),
        _ => Err(Error::InvalidArgument(format!(
            "exponent `{text}` is out of range"
        ))),
    }
}

/// Parses `"p/q"` or `"p"` with optional sign; decimals are rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("`{text}` is not a rational of the form p/q"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn ratio_to_f64(x: Exponent) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact terms keyed by exponent, handy for comparisons in tests and reports.
pub fn term_map(series: &FormalSeries) -> BTreeMap<Exponent, BigRational> {
    series.terms().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ints(series: &FormalSeries, count: usize) -> Vec<i64> {
        series
            .integer_coefficients(count)
            .iter()
            .map(|c| c.to_integer().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let one = FormalSeries::one(DEFAULT_GRID, 10).unwrap();
        let mut s = FormalSeries::one(DEFAULT_GRID, 10).unwrap();
        s.mul_binomial(true, DEFAULT_GRID as usize, 1);
        s.mul_binomial(false, (DEFAULT_GRID / 2) as usize, 2);
        assert_eq!(&one * &s, s);
        assert!(one.is_one());
        assert!(!s.is_one());
    }

    #[test]
    fn binomial_division_inverts_multiplication() {
        let mut s = FormalSeries::one(1, 12).unwrap();
        s.mul_binomial(true, 3, 2);
        s.mul_binomial(true, 3, -2);
        assert!(s.is_one());
        let mut geometric = FormalSeries::one(1, 6).unwrap();
        geometric.mul_binomial(true, 1, -1);
        assert_eq!(ints(&geometric, 6), vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn inverse_handles_offsets_and_rational_leads() {
        // (2q^{1/2} + q^{3/2})^{-1} = (1/2) q^{-1/2} (1 - q/2 + q²/4 - ...)
        let s = FormalSeries::from_terms(
            2,
            Exponent::new(1, 2),
            Exponent::new(9, 2),
            [(Exponent::new(1, 2), r(2)), (Exponent::new(3, 2), r(1))],
        )
        .unwrap();
        let inv = s.inverse().unwrap();
        assert_eq!(inv.offset(), Exponent::new(-1, 2));
        assert_eq!(
            inv.coefficient(Exponent::new(3, 2)).unwrap(),
            BigRational::new(1.into(), 8.into())
        );
        assert!((&s * &inv).is_one());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let z = FormalSeries::zero(1, Exponent::zero(), Exponent::from(3)).unwrap();
        assert!(z.inverse().is_err());
    }

    #[test]
    fn multiplication_uses_smaller_precision_and_adds_offsets() {
        let a = FormalSeries::monomial(48, Exponent::new(-1, 48), r(1), Exponent::from(5)).unwrap();
        let b = FormalSeries::monomial(2, Exponent::new(1, 2), r(3), Exponent::from(7)).unwrap();
        let p = &a * &b;
        assert_eq!(p.offset(), Exponent::new(23, 48));
        assert_eq!(p.precision(), Exponent::from(5));
        assert_eq!(p.grid(), 48);
        assert_eq!(p.coefficient(Exponent::new(23, 48)).unwrap(), r(3));
    }

    #[test]
    fn addition_aligns_offsets() {
        let a = FormalSeries::monomial(1, Exponent::from(-1), r(1), Exponent::from(4)).unwrap();
        let b = FormalSeries::monomial(1, Exponent::zero(), r(-1), Exponent::from(4)).unwrap();
        let s = &a + &b;
        assert_eq!(s.offset(), Exponent::from(-1));
        assert_eq!(s.order(), Exponent::from(3));
        assert_eq!(
            s.terms(),
            vec![(Exponent::from(-1), r(1)), (Exponent::zero(), r(-1))]
        );
    }

    #[test]
    fn off_grid_terms_are_rejected() {
        let err = FormalSeries::from_terms(
            2,
            Exponent::zero(),
            Exponent::from(2),
            [(Exponent::new(1, 3), r(1))],
        );
        assert!(matches!(err, Err(Error::OffGrid { .. })));
    }

    #[test]
    fn json_uses_p_over_q_strings() {
        let s = FormalSeries::from_terms(
            48,
            Exponent::new(-1, 48),
            Exponent::new(95, 48),
            [
                (Exponent::new(-1, 48), r(1)),
                (
                    Exponent::new(23, 48),
                    BigRational::new((-3).into(), 2.into()),
                ),
            ],
        )
        .unwrap();
        let json = s.to_json();
        assert_eq!(json.offset, "-1/48");
        assert_eq!(json.order, "95/48");
        assert_eq!(json.terms[1].coefficient, "-3/2");
        assert_eq!(json.terms[0].coefficient, "1/1");
        assert_eq!(FormalSeries::from_json(&json).unwrap(), s);
    }

    #[test]
    fn rational_parsing_rejects_decimals() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
        assert_eq!(parse_rational("7").unwrap(), r(7));
    }

    #[test]
    fn display_is_readable() {
        let mut s = FormalSeries::one(1, 4).unwrap();
        s.mul_binomial(true, 1, 1);
        assert_eq!(s.to_string(), "1 - q^1 + O(q^4)");
    }
}
