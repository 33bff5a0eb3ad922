//! Fixed inputs shared by the benchmarks.

use std::f64::consts::PI;

use bemery_core::manifold::ProfileSpec;

/// `(a, D)` pairs covering weak, unit and strong drift.
pub const DRIFT_CASES: [(f64, f64); 3] = [(0.5, 1.0), (1.0, PI), (4.0, 5.0)];

/// `(b, D)` pairs from the trivial well to a deep one.
pub const WEBER_CASES: [(f64, f64); 3] = [(0.0, PI), (1.0, PI), (100.0, PI)];

/// The middle capped cylinder of the sharpness sweep.
pub fn sharpness_spec() -> ProfileSpec {
    ProfileSpec::new(3, 0.1, PI, 1.0)
}
