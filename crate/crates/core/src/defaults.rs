//! Centralized numerical defaults. Every report echoes these back.

use serde::Serialize;

/// Half-side of the averaging window.
pub const S: f64 = 2000.0;
/// Quadrature samples per Jessen estimate.
pub const N_SAMPLES: usize = 65536;
/// Log floor for Jessen quadrature.
pub const CLIP: f64 = -40.0;
pub const SEED: u64 = 42;
/// Number of independently shifted batches behind every Jessen stderr.
pub const BATCHES: usize = 16;
/// Clipped fractions above this are flagged in reports.
pub const CLIP_WARNING: f64 = 1e-3;
/// Largest tolerated stderr of a finite-difference gradient component.
pub const GRAD_TOL: f64 = 1e-2;
/// Relative finite-difference step: `h = STEP_FRACTION * |y|`.
pub const STEP_FRACTION: f64 = 0.05;
/// Residual threshold for polished roots, relative to the term scale.
pub const ROOT_RESIDUAL: f64 = 1e-10;
/// Boundary-zero threshold on contours, relative to the term scale.
pub const CONTOUR_ZERO: f64 = 1e-9;
/// Zero threshold on tracked paths, relative to the term scale.
pub const PATH_ZERO: f64 = 1e-12;
/// Maximum number of step halvings per tracked segment.
pub const MAX_HALVINGS: u32 = 20;
/// Newton iteration cap during root polishing.
pub const NEWTON_ITERS: usize = 50;
/// Slack allowed in the Phragmén–Lindelöf bound check.
pub const PL_SLACK: f64 = 1e-9;

/// Snapshot of the defaults for report headers.
#[derive(Debug, Clone, Serialize)]
pub struct DefaultsHeader {
    #[serde(rename = "S")]
    pub s: f64,
    pub n_samples: usize,
    pub clip: f64,
    pub seed: u64,
    pub batches: usize,
    pub grad_tol: f64,
    pub step_fraction: f64,
    pub root_residual: f64,
    pub membership_tol: f64,
}

impl Default for DefaultsHeader {
    fn default() -> Self {
        DefaultsHeader {
            s: S,
            n_samples: N_SAMPLES,
            clip: CLIP,
            seed: SEED,
            batches: BATCHES,
            grad_tol: GRAD_TOL,
            step_fraction: STEP_FRACTION,
            root_residual: ROOT_RESIDUAL,
            membership_tol: crate::cone::MEMBERSHIP_TOL,
        }
    }
}
