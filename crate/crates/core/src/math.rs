//! Scalar helpers on top of `libm` so results are identical on every target.

use core::f64::consts::{PI, TAU};

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// Wraps an angle into `[0, 2π)`.
#[inline]
pub fn wrap_2pi(x: f64) -> f64 {
    let r = x - TAU * floor(x / TAU);
    // x slightly below a multiple of 2π can round up to exactly 2π
    if r >= TAU || r < 0.0 {
        0.0
    } else {
        r
    }
}

/// Wraps an angle into `(-π, π]`.
#[inline]
pub fn wrap_pi(x: f64) -> f64 {
    let r = wrap_2pi(x);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Absolute wrapped angular distance, in `[0, π]`.
#[inline]
pub fn angular_distance(a: f64, b: f64) -> f64 {
    wrap_pi(a - b).abs()
}
