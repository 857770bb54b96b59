use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutoffMode {
    /// Always use `max_cutoff` / `max_terms`.
    Fixed,
    /// Grow the cutoff until the geometric tail bound meets the tolerance.
    Adaptive,
}

/// Cutoffs and tolerance shared by every truncated product and series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Largest lattice diagonal `k1 + k2` (or product index) that may be used.
    pub max_cutoff: u32,
    /// Largest number of terms of a series that may be summed.
    pub max_terms: u32,
    pub tolerance: f64,
    pub mode: CutoffMode,
    /// A ratio denominator smaller than this fraction of the numerator is a pole.
    pub pole_tolerance: f64,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-14;
pub const DEFAULT_POLE_TOLERANCE: f64 = 1e-12;

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            max_cutoff: 512,
            max_terms: 4096,
            tolerance: DEFAULT_TOLERANCE,
            mode: CutoffMode::Adaptive,
            pole_tolerance: DEFAULT_POLE_TOLERANCE,
        }
    }
}

impl TruncationPolicy {
    pub fn fixed(cutoff: u32) -> Self {
        Self {
            max_cutoff: cutoff,
            max_terms: cutoff.max(1),
            mode: CutoffMode::Fixed,
            ..Self::default()
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_max_cutoff(mut self, cutoff: u32) -> Self {
        self.max_cutoff = cutoff;
        self
    }

    pub fn with_max_terms(mut self, terms: u32) -> Self {
        self.max_terms = terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {} must be positive and finite",
                self.tolerance
            )));
        }
        if !(self.pole_tolerance >= 0.0) {
            return Err(Error::InvalidArgument(
                "pole tolerance must be non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Smallest cutoff in `min..=max_cutoff` whose tail bound (as produced by
    /// `tail`) is below the tolerance, or `max_cutoff` in fixed mode.
    pub(crate) fn choose_cutoff(
        &self,
        min: u32,
        what: &str,
        mut tail: impl FnMut(u32) -> f64,
    ) -> Result<(u32, f64)> {
        self.validate()?;
        match self.mode {
            CutoffMode::Fixed => {
                if self.max_cutoff < min {
                    return Err(Error::Cutoff(format!(
                        "{what}: cutoff {} is below the required minimum {min}",
                        self.max_cutoff
                    )));
                }
                Ok((self.max_cutoff, tail(self.max_cutoff)))
            }
            CutoffMode::Adaptive => {
                let mut k = min;
                loop {
                    let bound = tail(k);
                    if bound < self.tolerance {
                        return Ok((k, bound));
                    }
                    if k >= self.max_cutoff {
                        return Err(Error::Budget(format!(
                            "{what}: tail bound {bound:e} still above tolerance {:e} at cutoff {k}",
                            self.tolerance
                        )));
                    }
                    // grow geometrically once the linear search gets long
                    k = if k < 64 {
                        k + 1
                    } else {
                        (k + k / 4).min(self.max_cutoff)
                    };
                }
            }
        }
    }
}

/// A numeric value with a rigorous bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: Complex64,
    pub tail_bound: f64,
    pub cutoff: u32,
}

impl Estimate {
    pub fn new(value: Complex64, tail_bound: f64, cutoff: u32) -> Self {
        Self {
            value,
            tail_bound,
            cutoff,
        }
    }

    pub fn exact(value: Complex64) -> Self {
        Self::new(value, 0.0, 0)
    }

    /// An estimate whose logarithm is known to within `log_bound`.
    pub fn from_log_bound(value: Complex64, log_bound: f64, cutoff: u32) -> Self {
        Self::new(value, value.norm() * log_bound.exp_m1(), cutoff)
    }

    pub fn mul(&self, other: &Estimate) -> Estimate {
        let a = self.value.norm();
        let b = other.value.norm();
        Estimate {
            value: self.value * other.value,
            tail_bound: a * other.tail_bound
                + b * self.tail_bound
                + self.tail_bound * other.tail_bound,
            cutoff: self.cutoff.max(other.cutoff),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Estimate {
        Estimate {
            value: self.value * factor,
            tail_bound: self.tail_bound * factor.norm(),
            cutoff: self.cutoff,
        }
    }

    pub fn conj(&self) -> Estimate {
        Estimate {
            value: self.value.conj(),
            ..*self
        }
    }

    pub fn inv(&self) -> Result<Estimate> {
        let b = self.value.norm();
        if b <= self.tail_bound || b == 0.0 {
            return Err(Error::Pole(format!(
                "cannot invert {} (|value| {b:e} within tail bound {:e})",
                self.value, self.tail_bound
            )));
        }
        Ok(Estimate {
            value: self.value.inv(),
            tail_bound: self.tail_bound / (b * (b - self.tail_bound)),
            cutoff: self.cutoff,
        })
    }

    /// `self / other`, rejecting denominators below `pole_tolerance * |self|`.
    pub fn div(&self, other: &Estimate, pole_tolerance: f64) -> Result<Estimate> {
        let num = self.value.norm();
        let den = other.value.norm();
        if den == 0.0 || den <= pole_tolerance * num {
            return Err(Error::Pole(format!(
                "denominator {} vanishes relative to numerator {}",
                other.value, self.value
            )));
        }
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, exponent: i64) -> Result<Estimate> {
        let base = if exponent < 0 { self.inv()? } else { *self };
        let mut acc = Estimate::exact(Complex64::new(1.0, 0.0));
        for _ in 0..exponent.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

/// Geometric tail sums used for truncation bounds. `r` is a ratio in `[0, 1)`.
pub(crate) mod bounds {
    /// `Σ_{m ≥ 0} r^{first + m}`.
    pub fn unit_tail(r: f64, first: f64) -> f64 {
        r.powf(first) / (1.0 - r)
    }

    /// `Σ_{m ≥ start} m·r^{m + shift}`.
    pub fn index_tail(r: f64, start: u32, shift: f64) -> f64 {
        let m = start as f64;
        r.powf(m + shift) * (m - (m - 1.0) * r) / ((1.0 - r) * (1.0 - r))
    }

    /// `Σ_{k > cutoff} (k + 1)·r^k`, the number of lattice points on each
    /// diagonal `k1 + k2 = k` weighted by the diagonal's factor modulus.
    pub fn diagonal_tail(r: f64, cutoff: u32) -> f64 {
        let k = cutoff as f64;
        r.powf(k + 1.0) * ((k + 2.0) - (k + 1.0) * r) / ((1.0 - r) * (1.0 - r))
    }

    /// Turns a bound `S ≥ Σ|x_j|` with every `|x_j| ≤ x_max < 1` into a bound on
    /// `|Σ log(1 - x_j)|`.
    pub fn log_bound(sum: f64, x_max: f64) -> f64 {
        if x_max >= 1.0 {
            f64::INFINITY
        } else {
            sum / (1.0 - x_max)
        }
    }
}
