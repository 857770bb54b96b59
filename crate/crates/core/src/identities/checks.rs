//! Checks of `Z_Γ` itself: agreement of its two representations and the
//! vanishing at the predicted zeros.

use num_complex::Complex64;
use rayon::prelude::*;

use super::report::{CheckKind, IdentityReport};
use crate::conventions::Conventions;
use crate::error::Result;
use crate::hilbert::format_tau;
use crate::spectral::{
    verify_zero, z_gamma_logseries, z_gamma_product, ModularParameter, TruncationPolicy, ZeroIndex,
};

pub const CROSS_CHECK_TOLERANCE: f64 = 1e-9;
pub const ZERO_TOLERANCE: f64 = 1e-10;

/// The `side × side` grid `Re s ∈ [0.5, 5]`, `Im s ∈ [-2, 2]`.
pub fn cross_check_grid(side: usize) -> Vec<Complex64> {
    crate::spectral::sample_grid((0.5, 5.0), (-2.0, 2.0), side)
}

/// Largest `|product - exp(log-series)|` over the points. Each point is
/// judged against its own tail budget; the report carries the worst residual
/// and the largest budget. An empty grid passes.
pub fn cross_check_z(
    points: &[(Complex64, ModularParameter)],
    tolerance: f64,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    let rows = points
        .par_iter()
        .map(|(s, tau)| {
            let product = z_gamma_product(*s, tau, policy)?;
            let log = z_gamma_logseries(*s, tau, policy)?;
            let exp = log.value.exp();
            // |e^{x+δ} - e^x| ≤ |e^x| (e^{|δ|} - 1)
            let budget = product.tail_bound + exp.norm() * log.tail_bound.exp_m1();
            Ok(((product.value - exp).norm(), budget))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let residual = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let budget = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let failures = rows.iter().filter(|(r, b)| *r > b + tolerance).count();
    Ok(IdentityReport::summary(
        "crossz",
        CheckKind::Hard,
        Conventions::default(),
        residual,
        budget,
        tolerance,
    )
    .fail_if(failures > 0, "a grid point exceeds its own budget")
    .param("points", points.len())
    .detail("failures", failures))
}

/// `|Z_Γ(ζ)|` at one predicted zero.
pub fn zero_report(
    index: ZeroIndex,
    tau: &ModularParameter,
    tolerance: f64,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    let check = verify_zero(index, tau, policy)?;
    Ok(IdentityReport::summary(
        "zero",
        CheckKind::Hard,
        Conventions::default(),
        check.residual,
        check.tail_bound,
        tolerance,
    )
    .fail_if(
        check.naive_relative > tolerance,
        "the vanishing factor evaluated at the floating-point zero is not small",
    )
    .with_lhs(check.zeta)
    .param("n", index.n)
    .param("k1", index.k1)
    .param("k2", index.k2)
    .param("tau", format_tau(tau))
    .detail("naive_residual", check.naive_residual)
    .detail("naive_relative", check.naive_relative)
    .detail("cutoff", check.cutoff))
}

/// Zeros with `k1 + k2 ≤ max_diagonal` and `|n| ≤ max_n`, in index order.
pub fn zero_indices(max_diagonal: u32, max_n: i64) -> Vec<ZeroIndex> {
    let mut out = Vec::new();
    for diag in 0..=max_diagonal {
        for k1 in 0..=diag {
            for n in -max_n..=max_n {
                out.push(ZeroIndex::new(n, k1, diag - k1));
            }
        }
    }
    out.sort_by_key(|i| i.sort_key());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_passes() {
        let r = cross_check_z(&[], CROSS_CHECK_TOLERANCE, &TruncationPolicy::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.residual, Some(0.0));
    }

    #[test]
    fn far_point_agrees_closely() {
        let tau = ModularParameter::new(0.25, 1.0).unwrap();
        let r = cross_check_z(
            &[(Complex64::new(10.0, 0.0), tau)],
            1e-12,
            &TruncationPolicy::default(),
        )
        .unwrap();
        assert!(r.residual.unwrap() < 1e-12, "{r:?}");
    }

    #[test]
    fn grid_agrees() {
        let tau = ModularParameter::new(0.3, 1.1).unwrap();
        let points: Vec<_> = cross_check_grid(5).into_iter().map(|s| (s, tau)).collect();
        let r =
            cross_check_z(&points, CROSS_CHECK_TOLERANCE, &TruncationPolicy::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.residual.unwrap() < 1e-9);
    }

    #[test]
    fn zero_indices_cover_the_window() {
        let all = zero_indices(3, 3);
        assert_eq!(all.len(), 10 * 7);
        let tau = ModularParameter::new(0.3, 1.1).unwrap();
        let r = zero_report(all[5], &tau, ZERO_TOLERANCE, &TruncationPolicy::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
