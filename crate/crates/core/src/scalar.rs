use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar used throughout the crate (`f32` or `f64`).
///
/// Tolerances are specified as `f64` literals and converted with [`Real::lit`].
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive {
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl<T: RealField + Copy + FromPrimitive + ToPrimitive> Real for T {}
