//! Truncated Taylor series about the origin with complex coefficients.
//!
//! A [`PowerSeries`] of order `T` stores `c_0, ..., c_T`. Every operation
//! returns a series of the same order as its (aligned) inputs; information
//! beyond `z^T` is discarded, never estimated.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Below this modulus a constant term is treated as zero.
pub const NON_UNIT_TOL: f64 = 1e-14;
/// Allowed deviation of `h_0` from 1 in [`PowerSeries::log_unit`].
pub const UNIT_TOL: f64 = 1e-12;
/// Tail estimates above this flag an evaluation as possibly truncated.
pub const TAIL_WARN: f64 = 1e-8;

/// Default truncation order used throughout the crate.
pub const DEFAULT_ORDER: usize = 256;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

/// Result of evaluating a truncated series at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// `|c_T| |z|^T / (1 - |z|)`, a geometric-tail heuristic.
    pub tail_estimate: f64,
    pub truncation_warning: bool,
}

impl PowerSeries {
    /// Builds a series from `c_0..=c_T`. Requires `T >= 1` and finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::BadParameter(format!(
                "a power series needs at least 2 coefficients, got {}",
                coeffs.len()
            )));
        }
        if let Some(k) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::BadParameter(format!("coefficient {k} is not finite")));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub(crate) fn from_vec(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(coeffs.len() >= 2);
        Self { coeffs }
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_vec(vec![ZERO; order.max(1) + 1])
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = ONE;
        s
    }

    /// The series of `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[1] = ONE;
        s
    }

    /// `1/(1 - z) = 1 + z + z^2 + ...`
    pub fn geometric(order: usize) -> Self {
        Self::from_vec(vec![ONE; order.max(1) + 1])
    }

    /// Binomial series of `(1 + s z)^p` for real `s` and `p`.
    pub fn binomial(order: usize, s: f64, p: f64) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        let mut term = 1.0;
        c.push(ONE);
        for k in 1..=order.max(1) {
            term *= s * (p - (k as f64 - 1.0)) / k as f64;
            c.push(Complex64::new(term, 0.0));
        }
        Self::from_vec(c)
    }

    /// Truncation order `T`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero past the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// `c_0 = 0` and `c_1 = 1` within `tol`.
    pub fn is_normalized(&self, tol: f64) -> bool {
        self.coeffs[0].norm() <= tol && (self.coeffs[1] - ONE).norm() <= tol
    }

    /// Truncates or zero-pads to the given order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order.max(1) + 1, ZERO);
        Self::from_vec(c)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::from_vec(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_vec((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// Cauchy product truncated at the larger of the two orders.
    pub fn multiply(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let u = &self.coeffs;
        let v = &other.coeffs;
        let mut w = vec![ZERO; n];
        for (i, &ui) in u.iter().enumerate() {
            if ui == ZERO {
                continue;
            }
            for (j, &vj) in v.iter().enumerate().take(n - i) {
                w[i + j] += ui * vj;
            }
        }
        Self::from_vec(w)
    }

    /// `w` with `w * other = self` up to truncation.
    pub fn divide(&self, other: &Self) -> Result<Self> {
        let v0 = other.coeffs[0];
        if v0.norm() <= NON_UNIT_TOL {
            return Err(Error::DivisionByNonUnit(v0.norm()));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let inv = v0.inv();
        let mut w: Vec<Complex64> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(other.order()) {
                acc -= other.coeffs[j] * w[k - j];
            }
            w.push(acc * inv);
        }
        Ok(Self::from_vec(w))
    }

    /// Termwise derivative; the top coefficient becomes zero.
    pub fn differentiate(&self) -> Self {
        let n = self.coeffs.len();
        let mut w = vec![ZERO; n];
        for k in 1..n {
            w[k - 1] = self.coeffs[k] * k as f64;
        }
        Self::from_vec(w)
    }

    /// Antiderivative vanishing at 0; `c_T` falls off the end.
    pub fn integrate_from_zero(&self) -> Self {
        let n = self.coeffs.len();
        let mut w = vec![ZERO; n];
        for k in 0..n - 1 {
            w[k + 1] = self.coeffs[k] / (k as f64 + 1.0);
        }
        Self::from_vec(w)
    }

    /// `u(z) / z` for a series with `c_0 = 0`, zero-padded at the top.
    pub fn shift_down(&self) -> Self {
        let mut c = self.coeffs[1..].to_vec();
        c.push(ZERO);
        Self::from_vec(c)
    }

    /// The analytic logarithm of a series with `h_0 = 1`, normalized so that
    /// `log 1 = 0`.
    pub fn log_unit(&self) -> Result<Self> {
        let h = &self.coeffs;
        if (h[0] - ONE).norm() > UNIT_TOL {
            return Err(Error::NotUnit(h[0]));
        }
        let n = h.len();
        let mut l = vec![ZERO; n];
        // k h_k = sum_{j=1}^{k} j L_j h_{k-j}
        for k in 1..n {
            let mut acc = ZERO;
            for j in 1..k {
                acc += l[j] * h[k - j] * j as f64;
            }
            l[k] = (h[k] - acc / k as f64) / h[0];
        }
        Ok(Self::from_vec(l))
    }

    /// `exp` of the series, with `exp(c_0)` as the constant term.
    pub fn exp(&self) -> Self {
        let l = &self.coeffs;
        let n = l.len();
        let mut e = vec![ZERO; n];
        e[0] = l[0].exp();
        for k in 1..n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += l[j] * e[k - j] * j as f64;
            }
            e[k] = acc / k as f64;
        }
        Self::from_vec(e)
    }

    /// `h^gamma` on the branch with constant term `h_0^gamma` (principal
    /// power of `h_0`), continued analytically through `exp(gamma log(h/h_0))`.
    pub fn cpow(&self, gamma: Complex64) -> Result<Self> {
        if gamma == ZERO {
            return Ok(Self::one(self.order()));
        }
        if gamma == ONE {
            return Ok(self.clone());
        }
        let h0 = self.coeffs[0];
        if h0.norm() <= NON_UNIT_TOL {
            return Err(Error::DivisionByNonUnit(h0.norm()));
        }
        let unit = if h0 == ONE { self.clone() } else { self.scale(h0.inv()) };
        let powered = unit.log_unit()?.scale(gamma).exp();
        if h0 == ONE {
            Ok(powered)
        } else {
            Ok(powered.scale(h0.powc(gamma)))
        }
    }

    /// Horner evaluation inside the unit disk.
    pub fn eval(&self, z: Complex64) -> Result<SeriesValue> {
        let r = z.norm();
        if r >= 1.0 || !r.is_finite() {
            return Err(Error::OutsideDisk(z));
        }
        let value = self.horner(z);
        let t = self.order();
        let tail_estimate = self.coeffs[t].norm() * r.powi(t as i32) / (1.0 - r);
        Ok(SeriesValue { value, tail_estimate, truncation_warning: tail_estimate > TAIL_WARN })
    }

    pub(crate) fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.multiply(rhs)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerSeries")
            .field("order", &self.order())
            .field("head", &&self.coeffs[..self.coeffs.len().min(6)])
            .finish()
    }
}

// Exchange format: `[[re, im], ...]`, index = degree.
impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        PowerSeries::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .map_err(serde::de::Error::custom)
    }
}
