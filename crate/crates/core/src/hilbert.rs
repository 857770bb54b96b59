//! Göttsche's generating function for the Poincaré polynomials of the
//! Hilbert schemes of points `X^[N]` of a surface:
//!
//! ```text
//! Σ_N q^N P_r(X^[N]) = ∏_{n ≥ 1} (1 + r^{2n-1} q^n)^{b1} (1 + r^{2n+1} q^n)^{b3}
//!                      / [(1 - r^{2n-2} q^n)^{b0} (1 - r^{2n} q^n)^{b2} (1 - r^{2n+2} q^n)^{b4}]
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::identities::report::{CheckKind, IdentityReport};
use crate::qseries::{
    numeric_qproduct, series_qproduct_pow, Exponent, FactorSign, FormalSeries, Parity,
    QProductSpec, DEFAULT_GRID,
};
use crate::spectral::{spectral_r, Estimate, ModularParameter, Orientation, TruncationPolicy};

/// Betti numbers `(b0, …, b4)` of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiVector(pub [u32; 5]);

impl BettiVector {
    pub fn new(b0: u32, b1: u32, b2: u32, b3: u32, b4: u32) -> Self {
        Self([b0, b1, b2, b3, b4])
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `e(X) = b0 - b1 + b2 - b3 + b4`.
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// `b0 = b4` and `b1 = b3`, as for a closed oriented surface.
    pub fn satisfies_poincare_duality(&self) -> bool {
        self.0[0] == self.0[4] && self.0[1] == self.0[3]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "{a},{b},{c},{d},{e}")
    }
}

impl FromStr for BettiVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Error::InvalidArgument(format!(
                "expected five comma-separated Betti numbers, got {s:?}"
            )));
        }
        let mut out = [0u32; 5];
        for (slot, part) in out.iter_mut().zip(parts) {
            *slot = part.parse().map_err(|_| {
                Error::InvalidArgument(format!(
                    "Betti number {part:?} is not a nonnegative integer"
                ))
            })?;
        }
        Ok(Self(out))
    }
}

/// Integer series in `q` and `r`; `coeffs[N][j]` multiplies `q^N r^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariateSeries {
    order_q: usize,
    order_r: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl BivariateSeries {
    pub fn one(order_q: usize, order_r: usize) -> Result<Self> {
        if order_q == 0 || order_r == 0 {
            return Err(Error::InvalidArgument("orders must be positive".into()));
        }
        let mut coeffs = vec![vec![BigInt::zero(); order_r]; order_q];
        coeffs[0][0] = BigInt::one();
        Ok(Self {
            order_q,
            order_r,
            coeffs,
        })
    }

    pub fn order_q(&self) -> usize {
        self.order_q
    }

    pub fn order_r(&self) -> usize {
        self.order_r
    }

    pub fn coefficient(&self, n: usize, j: usize) -> Option<&BigInt> {
        self.coeffs.get(n).and_then(|row| row.get(j))
    }

    /// The `q^N` slice, trailing zeros removed (`[0]` for the zero polynomial).
    pub fn slice(&self, n: usize) -> Option<Vec<BigInt>> {
        let mut row = self.coeffs.get(n)?.clone();
        while row.len() > 1 && row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
        Some(row)
    }

    /// Multiplies by `(1 + r^a q^n)` (`plus`) or divides by `(1 - r^a q^n)`.
    fn apply_factor(&mut self, a: usize, n: usize, plus: bool) {
        if plus {
            for big_n in (n..self.order_q).rev() {
                for j in (a..self.order_r).rev() {
                    let add = self.coeffs[big_n - n][j - a].clone();
                    self.coeffs[big_n][j] += add;
                }
            }
        } else {
            for big_n in n..self.order_q {
                for j in a..self.order_r {
                    let add = self.coeffs[big_n - n][j - a].clone();
                    self.coeffs[big_n][j] += add;
                }
            }
        }
    }

    /// Sums each `q^N` slice at the integer `r`.
    pub fn specialize(&self, r: i64) -> Vec<BigInt> {
        let r = BigInt::from(r);
        self.coeffs
            .iter()
            .map(|row| {
                let mut power = BigInt::one();
                let mut sum = BigInt::zero();
                for c in row {
                    sum += c * &power;
                    power *= &r;
                }
                sum
            })
            .collect()
    }

    /// Numeric value at complex `q` and `r`.
    pub fn evaluate(&self, q: Complex64, r: Complex64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        let mut qn = Complex64::new(1.0, 0.0);
        for row in &self.coeffs {
            let mut rj = Complex64::new(1.0, 0.0);
            for c in row {
                total += qn * rj * rational_f64(c);
                rj *= r;
            }
            qn *= q;
        }
        total
    }
}

fn rational_f64(c: &BigInt) -> f64 {
    crate::qseries::series::rational_to_f64(&BigRational::from_integer(c.clone()))
}

/// Exact expansion of the generating function below `q^{order_q}` and `r^{order_r}`.
pub fn goettsche_series(
    betti: &BettiVector,
    order_q: usize,
    order_r: usize,
) -> Result<BivariateSeries> {
    let mut out = BivariateSeries::one(order_q, order_r)?;
    for n in 1..order_q {
        // (b index, r power, numerator?)
        let factors = [
            (1, 2 * n - 1, true),
            (3, 2 * n + 1, true),
            (0, 2 * n - 2, false),
            (2, 2 * n, false),
            (4, 2 * n + 2, false),
        ];
        for (i, a, plus) in factors {
            for _ in 0..betti.get(i) {
                out.apply_factor(a, n, plus);
            }
        }
    }
    Ok(out)
}

/// Smallest `r` order that holds every slice below `q^{order_q}` exactly.
pub fn full_r_order(order_q: usize) -> usize {
    4 * order_q.saturating_sub(1) + 1
}

/// `P_r(X^[N])` as its integer coefficient list, lowest power first.
pub fn poincare_polynomial(betti: &BettiVector, n: usize) -> Result<Vec<BigInt>> {
    let series = goettsche_series(betti, n + 1, full_r_order(n + 1))?;
    Ok(series.slice(n).expect("slice within order"))
}

/// The `r = -1` specialization as a series in `q`, checked against
/// `∏(1 - q^n)^{-e(X)}`.
pub fn euler_specialization(betti: &BettiVector, order: u32) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let order_q = order as usize;
    let series = goettsche_series(betti, order_q, full_r_order(order_q))?;
    let substituted = FormalSeries::from_terms(
        DEFAULT_GRID,
        Exponent::zero(),
        Exponent::from(order as i64),
        series
            .specialize(-1)
            .into_iter()
            .enumerate()
            .map(|(n, c)| (Exponent::from(n as i64), BigRational::from_integer(c))),
    )?;
    let direct = series_qproduct_pow(&QProductSpec::euler(), DEFAULT_GRID, order, -betti.euler())?;
    if substituted != direct {
        return Err(Error::Inconsistent(format!(
            "r = -1 specialization {substituted} differs from the Euler product {direct}"
        )));
    }
    Ok(direct)
}

/// The `r = e^{iπτ}` substituted product: with `r² = q` each factor is
/// `1 ± q^{2n + c}` for a half-integer `c`, i.e. an odd-index q-product.
pub fn goettsche_numeric(
    betti: &BettiVector,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    let half = Exponent::new(1, 2);
    // b index, first odd m, shift, sign, power sign
    let shapes = [
        (1, 1, half, FactorSign::Plus, 1),
        (3, 3, -half, FactorSign::Plus, 1),
        (0, 1, Exponent::zero(), FactorSign::Minus, -1),
        (2, 1, Exponent::from(1), FactorSign::Minus, -1),
        (4, 3, Exponent::zero(), FactorSign::Minus, -1),
    ];
    let mut total = Estimate::exact(Complex64::new(1.0, 0.0));
    for (i, start, shift, sign, power) in shapes {
        let b = betti.get(i) as i64;
        if b == 0 {
            continue;
        }
        let spec = QProductSpec::new(start, shift, sign).with_parity(Parity::Odd);
        let factor = numeric_qproduct(&spec, tau, policy)?.powi(power * b)?;
        total = total.mul(&factor);
    }
    Ok(total)
}

/// The spectral line: `∏_{j=1,2} R(ξ_{2j-1}(1-it) + iη)^{b_{2j-1}}` over
/// `∏_{j=1,2,3} R(ξ_{2j-2}(1-it))^{b_{2j-2}}` with `ξ_{2j-1} = j - 1/2` and
/// `ξ_{2j-2} = j - 1`, read literally.
pub fn goettsche_spectral(
    betti: &BettiVector,
    tau: &ModularParameter,
    conventions: &Conventions,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    let eta = Complex64::i() * tau.eta(conventions.eta_sign, conventions.eta_reading);
    let odd = [(1, 0.5), (3, 1.5)];
    let even = [(0, 0.0), (2, 1.0), (4, 2.0)];
    let mut total = Estimate::exact(Complex64::new(1.0, 0.0));
    let r_at = |argument: Complex64| {
        spectral_r(
            argument,
            tau,
            Orientation::Holomorphic,
            conventions.r_reading,
            policy,
        )
    };
    for (i, xi) in odd {
        let b = betti.get(i) as i64;
        if b > 0 {
            let arg = Orientation::Holomorphic.argument(xi, tau) + eta;
            total = total.mul(&r_at(arg)?.powi(b)?);
        }
    }
    for (i, xi) in even {
        let b = betti.get(i) as i64;
        if b > 0 {
            let arg = Orientation::Holomorphic.argument(xi, tau);
            total = total.mul(&r_at(arg)?.powi(-b)?);
        }
    }
    Ok(total)
}

/// Audit of the spectral line of the generating function at `τ`.
pub fn goettsche_spectral_check(
    betti: &BettiVector,
    tau: &ModularParameter,
    conventions: &Conventions,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    const ID: &str = "goettsche-spectral";
    let lhs = goettsche_numeric(betti, tau, policy)?;
    let report = match goettsche_spectral(betti, tau, conventions, policy) {
        Ok(rhs) => IdentityReport::numeric(
            ID,
            CheckKind::Audit,
            *conventions,
            &lhs,
            &rhs,
            policy.tolerance,
        ),
        Err(err @ Error::Pole(_)) => {
            IdentityReport::undefined(ID, CheckKind::Audit, *conventions, policy.tolerance, &err)
                .with_lhs(lhs.value)
                .detail(
                    "note",
                    "a denominator factor R(0) vanishes since Z(0) = 0; the right side is a pole",
                )
        }
        Err(err) => return Err(err),
    };
    Ok(report
        .param("betti", betti)
        .param("tau", format_tau(tau))
        .param("r", "exp(i pi tau)"))
}

pub(crate) fn format_tau(tau: &ModularParameter) -> String {
    let im = tau.im();
    if tau.re() == 0.0 {
        format!("{im}i")
    } else {
        format!(
            "{}{}{}i",
            tau.re(),
            if im.is_sign_negative() { "-" } else { "+" },
            im.abs()
        )
    }
}

/// Whether every coefficient of the series is nonnegative.
pub fn all_nonnegative(series: &BivariateSeries) -> bool {
    series.coeffs.iter().flatten().all(|c| !c.is_negative())
}
