use crate::{Error, Real, Result};

use super::NEAR_EQUAL_GAP;

/// Relative spread below which second divided differences use a Taylor expansion.
const SECOND_ORDER_GAP: f64 = 1e-4;

/// Scalar functions lifted to Hermitian matrices through their spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFunction<T: Real> {
    Log,
    Power(T),
    Exp,
}

impl<T: Real> ScalarFunction<T> {
    fn check_domain(&self, x: T) -> Result<()> {
        let ok = match self {
            ScalarFunction::Log | ScalarFunction::Power(_) => x > T::zero() && x.is_finite(),
            ScalarFunction::Exp => x.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DomainError(format!("{self:?} evaluated at {}", x.as_f64())))
        }
    }

    /// Whether lifting this function requires a positive definite argument.
    pub fn needs_positive_definite(&self) -> bool {
        !matches!(self, ScalarFunction::Exp)
    }

    pub fn value(&self, x: T) -> Result<T> {
        self.check_domain(x)?;
        Ok(match *self {
            ScalarFunction::Log => x.ln(),
            ScalarFunction::Power(r) => x.powf(r),
            ScalarFunction::Exp => x.exp(),
        })
    }

    pub fn derivative(&self, x: T) -> T {
        match *self {
            ScalarFunction::Log => x.recip(),
            ScalarFunction::Power(r) => r * x.powf(r - T::one()),
            ScalarFunction::Exp => x.exp(),
        }
    }

    pub fn second_derivative(&self, x: T) -> T {
        match *self {
            ScalarFunction::Log => -(x * x).recip(),
            ScalarFunction::Power(r) => r * (r - T::one()) * x.powf(r - T::lit(2.0)),
            ScalarFunction::Exp => x.exp(),
        }
    }

    fn fourth_derivative(&self, x: T) -> T {
        match *self {
            ScalarFunction::Log => -T::lit(6.0) / (x * x * x * x),
            ScalarFunction::Power(r) => {
                let (one, two, three) = (T::one(), T::lit(2.0), T::lit(3.0));
                r * (r - one) * (r - two) * (r - three) * x.powf(r - T::lit(4.0))
            }
            ScalarFunction::Exp => x.exp(),
        }
    }

    /// First divided difference `f^[1](x, y)`, symmetric in its arguments.
    ///
    /// Returns the derivative at the midpoint when `|x - y| / max(|x|, |y|) <= 1e-9`,
    /// otherwise the difference quotient evaluated through `ln_1p`/`exp_m1`
    /// so that no catastrophic cancellation occurs.
    pub fn first_divided_difference(&self, x: T, y: T) -> Result<T> {
        self.check_domain(x)?;
        self.check_domain(y)?;
        let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
        let diff = hi - lo;
        if diff <= T::lit(NEAR_EQUAL_GAP) * hi.abs().max(lo.abs()) {
            return Ok(self.derivative(lo + diff * T::lit(0.5)));
        }
        Ok(match *self {
            ScalarFunction::Log => (diff / lo).ln_1p() / diff,
            ScalarFunction::Power(r) => {
                let log_ratio = (diff / lo).ln_1p();
                lo.powf(r) * (r * log_ratio).exp_m1() / diff
            }
            ScalarFunction::Exp => lo.exp() * diff.exp_m1() / diff,
        })
    }

    /// Second divided difference `f^[2](x, y, z)`, symmetric in its arguments.
    pub fn second_divided_difference(&self, x: T, y: T, z: T) -> Result<T> {
        let mut v = [x, y, z];
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let [lo, mid, hi] = v;
        let scale = hi.abs().max(lo.abs());
        if hi - lo <= T::lit(SECOND_ORDER_GAP) * scale {
            for t in v {
                self.check_domain(t)?;
            }
            let three = T::lit(3.0);
            let m = (lo + mid + hi) / three;
            let spread = (lo - m) * (lo - m) + (mid - m) * (mid - m) + (hi - m) * (hi - m);
            return Ok(self.second_derivative(m) * T::lit(0.5) + self.fourth_derivative(m) * spread / T::lit(48.0));
        }
        let left = self.first_divided_difference(lo, mid)?;
        let right = self.first_divided_difference(mid, hi)?;
        Ok((right - left) / (hi - lo))
    }
}

/// First divided difference of `ln`.
pub fn divided_difference_log<T: Real>(x: T, y: T) -> Result<T> {
    ScalarFunction::Log.first_divided_difference(x, y)
}

/// First divided difference of `x ↦ x^r`.
pub fn divided_difference_power<T: Real>(r: T, x: T, y: T) -> Result<T> {
    ScalarFunction::Power(r).first_divided_difference(x, y)
}
