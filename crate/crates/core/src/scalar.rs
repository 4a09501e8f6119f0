//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the geometry, encoder and simulator are generic over.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal. Infallible for the implemented types.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::lit(0.5)
    }

    fn deg_to_rad(self) -> Self {
        self.to_radians()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Reduces an angle in radians to `[0, 2π)` and snaps it to a fixed grid so that
/// `a` and `a + 2πk` map to the same bits.
pub fn normalize_angle<S: Scalar>(a: S) -> S {
    let tau = S::TAU();
    let mut r = a % tau;
    if r < S::zero() {
        r = r + tau;
    }
    let q = angle_quantum::<S>();
    let mut snapped = (r / q).round() * q;
    if snapped >= tau || snapped < S::zero() {
        snapped = S::zero();
    }
    // keep -0.0 out of the vertex buffers
    snapped + S::zero()
}

/// Grid spacing used by [`normalize_angle`]: about 1.8e-12 rad for `f64`.
pub fn angle_quantum<S: Scalar>() -> S {
    S::epsilon().powf(S::lit(0.75))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_turns_snap_to_same_bits() {
        for &a in &[0.0, 0.1, 1.0, 2.5, 3.3, 6.0, -0.7] {
            let b = a + std::f64::consts::TAU;
            let c = a - 2.0 * std::f64::consts::TAU;
            assert_eq!(normalize_angle(a).to_bits(), normalize_angle(b).to_bits());
            assert_eq!(normalize_angle(a).to_bits(), normalize_angle(c).to_bits());
        }
    }

    #[test]
    fn range() {
        let x = normalize_angle(-1e-20_f64);
        assert!((0.0..std::f64::consts::TAU).contains(&x));
        assert_eq!(normalize_angle(std::f64::consts::TAU), 0.0);
    }
}
