use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

const FOUR_PI: f64 = 4.0 * PI;

/// An angle in ℝ/4πℤ, stored as its representative in (−2π, 2π].
///
/// Signed areas on the unit sphere are only defined up to whole-sphere
/// wrappings, so every area routine returns this type.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleMod4Pi(f64);

impl AngleMod4Pi {
    pub const ZERO: AngleMod4Pi = AngleMod4Pi(0.0);

    pub fn new(radians: f64) -> Self {
        Self(reduce(radians))
    }

    /// Representative in (−2π, 2π].
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Length of the shortest way around ℝ/4πℤ between the two classes.
    pub fn distance(self, other: AngleMod4Pi) -> f64 {
        reduce(self.0 - other.0).abs()
    }

    pub fn approx_eq(self, other: AngleMod4Pi, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

/// Canonical representative of `a` modulo 4π, in (−2π, 2π].
pub fn reduce(a: f64) -> f64 {
    if a > -TAU && a <= TAU {
        return a;
    }
    let r = a.rem_euclid(FOUR_PI);
    if r > TAU {
        r - FOUR_PI
    } else {
        r
    }
}

impl From<f64> for AngleMod4Pi {
    fn from(a: f64) -> Self {
        Self::new(a)
    }
}

impl Add for AngleMod4Pi {
    type Output = AngleMod4Pi;
    fn add(self, o: AngleMod4Pi) -> AngleMod4Pi {
        AngleMod4Pi::new(self.0 + o.0)
    }
}

impl Sub for AngleMod4Pi {
    type Output = AngleMod4Pi;
    fn sub(self, o: AngleMod4Pi) -> AngleMod4Pi {
        AngleMod4Pi::new(self.0 - o.0)
    }
}

impl Neg for AngleMod4Pi {
    type Output = AngleMod4Pi;
    fn neg(self) -> AngleMod4Pi {
        AngleMod4Pi::new(-self.0)
    }
}

impl fmt::Display for AngleMod4Pi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn window_is_half_open() {
        assert_eq!(reduce(TAU), TAU);
        assert_eq!(reduce(-TAU), TAU);
        assert_eq!(reduce(0.0), 0.0);
        assert!((reduce(3.0 * PI) - (-PI)).abs() < 1e-15);
        assert!((reduce(-3.0 * PI) - PI).abs() < 1e-15);
        assert_eq!(reduce(-1e-17), -1e-17);
    }

    #[test]
    fn distance_wraps() {
        let a = AngleMod4Pi::new(TAU - 1e-3);
        let b = AngleMod4Pi::new(-TAU + 1e-3);
        assert!((a.distance(b) - 2e-3).abs() < 1e-12);
        assert!(AngleMod4Pi::new(TAU).approx_eq(AngleMod4Pi::new(-TAU), 0.0));
    }

    proptest! {
        #[test]
        fn reduction_ignores_whole_turns(a in -50.0f64..50.0, k in -3i32..=3) {
            let shifted = AngleMod4Pi::new(a + FOUR_PI * k as f64);
            prop_assert!(shifted.approx_eq(AngleMod4Pi::new(a), 1e-12));
        }

        #[test]
        fn reduction_is_idempotent(a in -1e6f64..1e6) {
            let r = reduce(a);
            prop_assert!(r > -TAU && r <= TAU);
            prop_assert_eq!(reduce(r), r);
        }
    }
}
