//! The isometric action of `SL(2, ℂ)` on upper half-space `H³`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modular::Mat2;
use crate::error::{Error, Result};

const DET_TOLERANCE: f64 = 1e-10;

/// A point `(x, y, z)` of `H³`, `z > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HyperbolicPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(z > 0.0) || !x.is_finite() || !y.is_finite() || !z.is_finite() {
            return Err(Error::Domain(format!(
                "({x}, {y}, {z}) is not in upper half-space"
            )));
        }
        Ok(Self { x, y, z })
    }
}

pub fn determinant(g: &Mat2) -> Complex64 {
    g[0][0] * g[1][1] - g[0][1] * g[1][0]
}

pub fn mat_mul(g: &Mat2, h: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = g[i][0] * h[0][j] + g[i][1] * h[1][j];
        }
    }
    out
}

/// `g·(r + zj)` for `r = x + iy`:
///
/// ```text
/// u + iv = [(ar + b)·conj(cr + d) + a·conj(c)·z²] / (|cr + d|² + |c|² z²)
///      w = z / (|cr + d|² + |c|² z²)
/// ```
pub fn hyperbolic_action(g: &Mat2, point: HyperbolicPoint) -> Result<HyperbolicPoint> {
    let det = determinant(g);
    let scale = g
        .iter()
        .flatten()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .max(1.0);
    if (det - 1.0).norm() > DET_TOLERANCE * scale {
        return Err(Error::InvalidArgument(format!(
            "matrix determinant {det} is not 1"
        )));
    }
    let point = HyperbolicPoint::new(point.x, point.y, point.z)?;
    let [[a, b], [c, d]] = *g;
    let r = Complex64::new(point.x, point.y);
    let z2 = point.z * point.z;
    let cr_d = c * r + d;
    let denom = cr_d.norm_sqr() + c.norm_sqr() * z2;
    if !(denom > 0.0) {
        return Err(Error::Singular(format!(
            "denominator vanishes for {g:?} at {point:?}"
        )));
    }
    let uv = ((a * r + b) * cr_d.conj() + a * c.conj() * z2) / denom;
    Ok(HyperbolicPoint {
        x: uv.re,
        y: uv.im,
        z: point.z / denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ModularParameter;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(p: HyperbolicPoint, q: HyperbolicPoint, tol: f64) -> bool {
        (p.x - q.x).abs() < tol && (p.y - q.y).abs() < tol && (p.z - q.z).abs() < tol
    }

    #[test]
    fn identity_fixes_points() {
        let id = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        let p = HyperbolicPoint::new(0.3, -1.2, 0.7).unwrap();
        assert_eq!(hyperbolic_action(&id, p).unwrap(), p);
    }

    #[test]
    fn rotation_dilation_scales_the_vertical_axis() {
        let tau = ModularParameter::new(0.3, 1.1).unwrap();
        let p = HyperbolicPoint::new(0.0, 0.0, 1.0).unwrap();
        let image = hyperbolic_action(&tau.rotation_dilation(), p).unwrap();
        let expected = HyperbolicPoint::new(0.0, 0.0, tau.alpha().exp()).unwrap();
        assert!(close(image, expected, 1e-9 * expected.z));
    }

    #[test]
    fn rotation_dilation_rotates_horizontal_coordinates() {
        let tau = ModularParameter::new(0.1, 0.2).unwrap();
        let p = HyperbolicPoint::new(1.0, 0.0, 1.0).unwrap();
        let image = hyperbolic_action(&tau.rotation_dilation(), p).unwrap();
        let e = tau.alpha().exp();
        let (sin, cos) = tau.beta().sin_cos();
        let expected = HyperbolicPoint::new(e * cos, e * sin, e).unwrap();
        assert!(close(image, expected, 1e-12));
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = [[c(2.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        let p = HyperbolicPoint {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        };
        assert!(matches!(
            hyperbolic_action(&m, p),
            Err(Error::InvalidArgument(_))
        ));
        let id = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        let below = HyperbolicPoint {
            x: 0.0,
            y: 0.0,
            z: -1.0,
        };
        assert!(matches!(
            hyperbolic_action(&id, below),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn composition_law() {
        let g = [[c(1.0, 1.0), c(2.0, 0.0)], [c(0.5, -0.5), c(1.5, 0.5)]];
        // det g = (1+i)(1.5+0.5i) - 2(0.5-0.5i) = 1 + 2i - 1 + i = 3i; rescale by 1/sqrt(3i)
        let k = determinant(&g).sqrt().inv();
        let g = g.map(|row| row.map(|x| x * k));
        let h = [[c(0.0, 0.0), c(-1.0, 0.0)], [c(1.0, 0.0), c(0.3, 0.2)]];
        let p = HyperbolicPoint::new(0.2, -0.4, 0.9).unwrap();
        let lhs = hyperbolic_action(&mat_mul(&g, &h), p).unwrap();
        let rhs = hyperbolic_action(&g, hyperbolic_action(&h, p).unwrap()).unwrap();
        assert!(close(lhs, rhs, 1e-12));
    }
}
