//! Zeros `ζ_{n,k1,k2} = -(k1+k2) + i(k1-k2)β/α + 2πin/α` of `Z_Γ`.
//!
//! Evaluating the product directly at a zero with `Re ζ = -k` multiplies the
//! rounded vanishing factor (of size ~1e-16) by factors as large as
//! `e^{kα}`, so the raw residual says little. [`verify_zero`] therefore also
//! evaluates the product in coordinates anchored at the zero: with
//! `d = k' - k` the factor `(k1', k2')` at `ζ + δ` is
//! `1 - e^{iβ(d1-d2) - (d1+d2)α - δα}`, where the `e^{-2πin}` has been
//! dropped exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modular::ModularParameter;
use super::policy::{Estimate, TruncationPolicy};
use super::zeta::{expm1, z_gamma_product};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZeroIndex {
    pub n: i64,
    pub k1: u32,
    pub k2: u32,
}

impl ZeroIndex {
    pub fn new(n: i64, k1: u32, k2: u32) -> Self {
        Self { n, k1, k2 }
    }

    pub fn diagonal(&self) -> u32 {
        self.k1 + self.k2
    }

    pub fn location(&self, tau: &ModularParameter) -> Complex64 {
        let alpha = tau.alpha();
        let im = (self.k1 as f64 - self.k2 as f64) * tau.beta() / alpha
            + 2.0 * std::f64::consts::PI * self.n as f64 / alpha;
        Complex64::new(-(self.diagonal() as f64), im)
    }

    pub fn sort_key(&self) -> (u32, i64, i64) {
        (self.diagonal(), self.k1 as i64 - self.k2 as i64, self.n)
    }
}

/// Closed rectangle `[re_min, re_max] × [im_min, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl ZeroBox {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let all = [re_min, re_max, im_min, im_max];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("box must be bounded".into()));
        }
        if re_min > re_max || im_min > im_max {
            return Err(Error::InvalidArgument(format!(
                "empty box [{re_min}, {re_max}] × [{im_min}, {im_max}]"
            )));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&z.re) && (self.im_min..=self.im_max).contains(&z.im)
    }
}

/// Every predicted zero in `area`, ordered by `(k1+k2, k1-k2, n)`.
pub fn zeros_predicted(tau: &ModularParameter, area: &ZeroBox) -> Vec<(ZeroIndex, Complex64)> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let alpha = tau.alpha();
    let k_min = (-area.re_max).ceil().max(0.0) as u32;
    if -area.re_min < k_min as f64 {
        return Vec::new();
    }
    let k_max = (-area.re_min).floor() as u32;
    let mut out = Vec::new();
    for k in k_min..=k_max {
        for k1 in 0..=k {
            let k2 = k - k1;
            let base = (k1 as f64 - k2 as f64) * tau.beta() / alpha;
            let n_lo = ((area.im_min - base) * alpha / two_pi).ceil() as i64;
            let n_hi = ((area.im_max - base) * alpha / two_pi).floor() as i64;
            for n in n_lo - 1..=n_hi + 1 {
                let index = ZeroIndex::new(n, k1, k2);
                let z = index.location(tau);
                if area.contains(z) {
                    out.push((index, z));
                }
            }
        }
    }
    out.sort_by_key(|(index, _)| index.sort_key());
    out
}

/// `Z_Γ(ζ + δ)` for the zero `index`, evaluated in anchored coordinates.
pub fn z_gamma_product_near_zero(
    index: ZeroIndex,
    delta: Complex64,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    let (value, cutoff, relative) = anchored_product(index, delta, tau, policy, false)?;
    Ok(Estimate::new(value, value.norm() * relative, cutoff))
}

/// Returns the product, the cutoff and the relative tail bound. With
/// `skip_vanishing` the factor that vanishes at the zero is left out.
fn anchored_product(
    index: ZeroIndex,
    delta: Complex64,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
    skip_vanishing: bool,
) -> Result<(Complex64, u32, f64)> {
    let k = index.diagonal();
    if policy.mode == super::policy::CutoffMode::Fixed && policy.max_cutoff < k {
        return Err(Error::Cutoff(format!(
            "zero on diagonal {k} lies outside the product cutoff {}",
            policy.max_cutoff
        )));
    }
    let zeta = index.location(tau) + delta;
    // reuse the cutoff logic of the plain product, but never below the zero's diagonal
    let probe = z_gamma_product(zeta, tau, policy)?;
    let cutoff = probe.cutoff.max(k);
    let relative = if probe.value.norm() > 0.0 {
        probe.tail_bound / probe.value.norm()
    } else {
        0.0
    };
    let (alpha, beta) = (tau.alpha(), tau.beta());
    let shift = -delta * alpha;
    let mut value = Complex64::new(1.0, 0.0);
    for diag in 0..=cutoff {
        for a in 0..=diag {
            let b = diag - a;
            if skip_vanishing && a == index.k1 && b == index.k2 {
                continue;
            }
            let d1 = a as f64 - index.k1 as f64;
            let d2 = b as f64 - index.k2 as f64;
            let w = Complex64::new(-(d1 + d2) * alpha, beta * (d1 - d2)) + shift;
            value *= -expm1(w);
        }
    }
    Ok((value, cutoff, relative))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCheck {
    pub index: ZeroIndex,
    pub zeta: Complex64,
    /// `|Z_Γ(ζ)|` from the anchored evaluation.
    pub residual: f64,
    /// `|Z_Γ(ζ)|` from the product evaluated at the floating-point `ζ`.
    pub naive_residual: f64,
    /// The naive residual divided by the modulus of the other factors: the
    /// size of the vanishing factor as computed in floating point.
    pub naive_relative: f64,
    pub tail_bound: f64,
    pub cutoff: u32,
}

impl ZeroCheck {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.residual <= self.tail_bound + tolerance && self.naive_relative <= tolerance
    }
}

pub fn verify_zero(
    index: ZeroIndex,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<ZeroCheck> {
    let zero = Complex64::new(0.0, 0.0);
    let (value, cutoff, relative) = anchored_product(index, zero, tau, policy, false)?;
    let (others, _, _) = anchored_product(index, zero, tau, policy, true)?;
    let zeta = index.location(tau);
    let naive = z_gamma_product(zeta, tau, &TruncationPolicy::fixed(cutoff))?;
    Ok(ZeroCheck {
        index,
        zeta,
        residual: value.norm(),
        naive_residual: naive.value.norm(),
        naive_relative: naive.value.norm() / others.norm(),
        tail_bound: value.norm() * relative,
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> ModularParameter {
        ModularParameter::new(0.3, 1.1).unwrap()
    }

    #[test]
    fn locations() {
        let t = tau();
        assert_eq!(
            ZeroIndex::new(0, 0, 0).location(&t),
            Complex64::new(0.0, 0.0)
        );
        let z = ZeroIndex::new(0, 1, 0).location(&t);
        assert_eq!(z.re, -1.0);
        assert!((z.im - t.beta() / t.alpha()).abs() < 1e-15);
    }

    #[test]
    fn box_listing_is_ordered_and_complete() {
        let t = tau();
        let area = ZeroBox::new(-3.0, 1.0, -7.0, 7.0).unwrap();
        let zeros = zeros_predicted(&t, &area);
        assert!(zeros.iter().all(|(_, z)| area.contains(*z)));
        let keys: Vec<_> = zeros.iter().map(|(i, _)| i.sort_key()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        // brute force over a generous index range
        let mut count = 0;
        for n in -20..=20 {
            for k1 in 0..6 {
                for k2 in 0..6 {
                    if area.contains(ZeroIndex::new(n, k1, k2).location(&t)) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(zeros.len(), count);
    }

    #[test]
    fn box_without_lattice_points_is_empty() {
        let area = ZeroBox::new(0.2, 0.8, -1.0, 1.0).unwrap();
        assert!(zeros_predicted(&tau(), &area).is_empty());
        assert!(ZeroBox::new(0.0, f64::INFINITY, 0.0, 1.0).is_err());
    }

    #[test]
    fn origin_is_an_exact_zero() {
        let check = verify_zero(
            ZeroIndex::new(0, 0, 0),
            &tau(),
            &TruncationPolicy::default(),
        )
        .unwrap();
        assert_eq!(check.residual, 0.0);
        assert_eq!(check.naive_residual, 0.0);
    }

    #[test]
    fn shifted_zeros_have_small_residuals() {
        let policy = TruncationPolicy::default();
        for index in [
            ZeroIndex::new(0, 1, 0),
            ZeroIndex::new(1, 0, 0),
            ZeroIndex::new(-2, 1, 2),
        ] {
            let check = verify_zero(index, &tau(), &policy).unwrap();
            assert!(check.residual < 1e-10, "{check:?}");
            assert!(check.naive_relative < 1e-10, "{check:?}");
        }
    }

    #[test]
    fn anchored_matches_direct_away_from_the_zero() {
        let t = tau();
        let policy = TruncationPolicy::default();
        let index = ZeroIndex::new(1, 1, 1);
        let delta = Complex64::new(0.3, -0.2);
        let anchored = z_gamma_product_near_zero(index, delta, &t, &policy).unwrap();
        let direct = z_gamma_product(index.location(&t) + delta, &t, &policy).unwrap();
        let scale = direct.value.norm();
        assert!((anchored.value - direct.value).norm() < 1e-9 * scale);
    }

    #[test]
    fn zeros_are_simple() {
        let t = tau();
        let policy = TruncationPolicy::default();
        let index = ZeroIndex::new(1, 1, 0);
        let a = z_gamma_product_near_zero(index, Complex64::new(1e-6, 0.0), &t, &policy).unwrap();
        let b = z_gamma_product_near_zero(index, Complex64::new(1e-7, 0.0), &t, &policy).unwrap();
        let ratio = a.value.norm() / b.value.norm();
        assert!((ratio - 10.0).abs() < 1e-3, "{ratio}");
    }

    #[test]
    fn fixed_cutoff_must_reach_the_zero() {
        let err = verify_zero(ZeroIndex::new(0, 2, 2), &tau(), &TruncationPolicy::fixed(3));
        assert!(matches!(err, Err(Error::Cutoff(_))));
    }
}
