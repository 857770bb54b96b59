use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conventions::{EtaReading, EtaSign};
use crate::error::{Error, Result};

/// A 2x2 complex matrix, row major.
pub type Mat2 = [[Complex64; 2]; 2];

/// A point `τ` of the upper half plane.
///
/// Every spectral and q-series argument is derived from it: the nome
/// `q = e^{2πiτ}`, the dilation length `α = 2π Im τ`, the rotation angle
/// `β = 2π Re τ`, the ratio `t = Re τ / Im τ`, and the shift `η(τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModularParameter {
    re: f64,
    im: f64,
}

impl ModularParameter {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Domain(format!("τ = {re} + {im}i is not finite")));
        }
        if im <= 0.0 {
            return Err(Error::Domain(format!(
                "Im τ = {im} must be positive so that |q| < 1"
            )));
        }
        Ok(Self { re, im })
    }

    pub fn from_complex(tau: Complex64) -> Result<Self> {
        Self::new(tau.re, tau.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn q(&self) -> Complex64 {
        self.q_power(1.0)
    }

    /// `|q| = e^{-α}`.
    pub fn nome_abs(&self) -> f64 {
        (-self.alpha()).exp()
    }

    /// `q^x` computed as `exp(2πiτ·x)`, never as a complex power of `q`.
    pub fn q_power(&self, exponent: f64) -> Complex64 {
        (Complex64::new(0.0, 2.0 * PI) * self.tau() * exponent).exp()
    }

    /// `q̄^x = conj(q^x)` for real `x`.
    pub fn qbar_power(&self, exponent: f64) -> Complex64 {
        self.q_power(exponent).conj()
    }

    pub fn alpha(&self) -> f64 {
        2.0 * PI * self.im
    }

    pub fn beta(&self) -> f64 {
        2.0 * PI * self.re
    }

    pub fn t(&self) -> f64 {
        self.re / self.im
    }

    pub fn eta(&self, sign: EtaSign, reading: EtaReading) -> Complex64 {
        let magnitude = match reading {
            EtaReading::HalfPeriod => Complex64::new(1.0 / (2.0 * self.im), 0.0),
            EtaReading::Literal => (2.0 * self.tau()).inv(),
        };
        magnitude * sign.factor()
    }

    /// `τ` with `β → -β`, i.e. `-conj(τ)`.
    pub fn reflected(&self) -> Self {
        Self {
            re: -self.re,
            im: self.im,
        }
    }

    /// `τ` scaled by a positive real factor, for eta quotients in `q^{1/2}`, `q^2`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if factor <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "scale factor {factor} must be positive"
            )));
        }
        Self::new(self.re * factor, self.im * factor)
    }

    /// `diag(e^{α+iβ}, e^{-(α+iβ)})`, the generator of the cyclic group.
    pub fn generator(&self) -> Mat2 {
        let z = Complex64::new(self.alpha(), self.beta());
        diag(z.exp(), (-z).exp())
    }

    /// `diag(e^{(α+iβ)/2}, e^{-(α+iβ)/2})`, whose action on `H³` is the
    /// rotation by `β` composed with the dilation by `e^α`.
    pub fn rotation_dilation(&self) -> Mat2 {
        let z = Complex64::new(self.alpha(), self.beta()) * 0.5;
        diag(z.exp(), (-z).exp())
    }
}

fn diag(a: Complex64, d: Complex64) -> Mat2 {
    let zero = Complex64::new(0.0, 0.0);
    [[a, zero], [zero, d]]
}
