//! Scalar abstraction: the geometry and all Wiener sums are generic over the
//! floating point type, implemented for `f32` and `f64`.

use num_traits::{Float, FromPrimitive};

/// Floating point scalar used for coordinates, distances, and Wiener sums.
pub trait Scalar:
    Float + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Absolute tolerance on the orientation cross product.
    fn orient_eps() -> Self {
        Self::from_f64(1e-12).unwrap()
    }

    /// Relative tolerance for comparing Wiener sums and weights.
    fn rel_tol() -> Self {
        Self::from_f64(1e-9).unwrap()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Lossless-for-small-counts conversion of an index/count into a scalar.
pub fn count<S: Scalar>(value: usize) -> S {
    S::from_usize(value).expect("count representable in scalar type")
}

/// Relative difference `|a - b| / max(1, |a|, |b|)`.
pub fn rel_diff<S: Scalar>(a: S, b: S) -> S {
    (a - b).abs() / S::one().max(a.abs()).max(b.abs())
}

/// True when `a` and `b` agree within [`Scalar::rel_tol`].
pub fn approx_eq<S: Scalar>(a: S, b: S) -> bool {
    rel_diff(a, b) <= S::rel_tol()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel_diff_uses_unit_floor() {
        assert_eq!(rel_diff(0.0f64, 1e-12), 1e-12);
        assert!(approx_eq(1e9f64, 1e9 + 0.5));
        assert!(!approx_eq(1.0f64, 1.1));
    }

    #[test]
    fn counts_convert_exactly() {
        assert_eq!(count::<f64>(1764), 1764.0);
        assert_eq!(count::<f32>(1 << 20), (1 << 20) as f32);
    }
}
