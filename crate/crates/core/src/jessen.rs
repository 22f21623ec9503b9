//! Jessen function `J_f(y)`: the mean of `log|f(x + i y)|` over `x`, its
//! gradient (the negated secular vector), mean motion by continuous argument
//! tracking, and convexity checks.
//!
//! Quadrature uses 16 batches of a Kronecker sequence, each with its own
//! seeded Cranley–Patterson shift. Batch means are independent unbiased
//! estimates of the window mean, so their spread gives the reported stderr.
//! Samples whose log-modulus falls below `clip / 2` are replaced by the mean of
//! `2^p` clipped children around them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{check_dim, Error, Result};
use crate::expsum::{ExpSum, HeightSlice};
use crate::linalg::{dot, norm};
use crate::numeric::{batch_stats, Kronecker, NeumaierSum};

/// Quadrature parameters shared by every Jessen-based computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadParams {
    #[serde(rename = "S")]
    pub s: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub clip: f64,
    /// Largest acceptable stderr of a gradient component.
    pub grad_tol: f64,
}

impl Default for QuadParams {
    fn default() -> Self {
        QuadParams {
            s: defaults::S,
            n_samples: defaults::N_SAMPLES,
            seed: defaults::SEED,
            clip: defaults::CLIP,
            grad_tol: defaults::GRAD_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JessenEstimate {
    pub y: Vec<f64>,
    pub value: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub n_samples: usize,
    pub clipped_fraction: f64,
    pub stderr: f64,
}

impl JessenEstimate {
    pub fn warning(&self) -> Option<String> {
        (self.clipped_fraction > defaults::CLIP_WARNING).then(|| {
            format!(
                "clipped fraction {:.2e} at y = {:?} exceeds {:.0e}",
                self.clipped_fraction,
                self.y,
                defaults::CLIP_WARNING
            )
        })
    }
}

pub fn jessen_estimate(
    f: &ExpSum,
    y: &[f64],
    s: f64,
    n_samples: usize,
    seed: u64,
    clip: f64,
) -> Result<JessenEstimate> {
    let p = f.dim();
    check_dim(p, y.len())?;
    if !(s > 0.0) {
        return Err(Error::InvalidInput("S must be positive".into()));
    }
    if n_samples < 100 {
        return Err(Error::InvalidInput("n_samples must be at least 100".into()));
    }
    if !(clip < 0.0) {
        return Err(Error::InvalidInput("clip must be negative".into()));
    }
    let slice = HeightSlice::new(f, y)?;
    if f.is_empty() {
        return Err(Error::AllClipped);
    }
    if f.len() == 1 {
        // integrand is constant in x
        return Ok(JessenEstimate {
            y: y.to_vec(),
            value: slice.log_dominant(),
            s,
            n_samples,
            clipped_fraction: 0.0,
            stderr: 0.0,
        });
    }

    let per_batch = n_samples.div_ceil(defaults::BATCHES);
    let h = 2.0 * s / (per_batch as f64).powf(1.0 / p as f64);
    let results: Vec<(f64, usize)> = (0..defaults::BATCHES)
        .into_par_iter()
        .map(|b| {
            let seq = Kronecker::seeded(p, seed, b as u64);
            let mut u = vec![0.0; p];
            let mut x = vec![0.0; p];
            let mut child = vec![0.0; p];
            let mut acc = NeumaierSum::default();
            let mut clipped = 0usize;
            for k in 0..per_batch {
                seq.point(k, &mut u);
                for (xj, uj) in x.iter_mut().zip(&u) {
                    *xj = -s + 2.0 * s * uj;
                }
                let v = slice.log_abs(&x);
                let sample = if v < 0.5 * clip {
                    let mut sub = 0.0;
                    let mut any_clipped = false;
                    for c in 0..(1usize << p) {
                        for j in 0..p {
                            let off = if (c >> j) & 1 == 1 { 0.25 } else { -0.25 };
                            child[j] = x[j] + off * h;
                        }
                        let cv = slice.log_abs(&child);
                        if cv < clip {
                            any_clipped = true;
                        }
                        sub += cv.max(clip);
                    }
                    if any_clipped {
                        clipped += 1;
                    }
                    sub / (1usize << p) as f64
                } else {
                    v
                };
                acc.add(sample);
            }
            (acc.total() / per_batch as f64, clipped)
        })
        .collect();

    let total = per_batch * defaults::BATCHES;
    let clipped: usize = results.iter().map(|r| r.1).sum();
    if clipped == total {
        return Err(Error::AllClipped);
    }
    let means: Vec<f64> = results.iter().map(|r| r.0).collect();
    let (mean, stderr) = batch_stats(&means);
    Ok(JessenEstimate {
        y: y.to_vec(),
        value: mean,
        s,
        n_samples: total,
        clipped_fraction: clipped as f64 / total as f64,
        stderr,
    })
}

pub fn jessen_with(f: &ExpSum, y: &[f64], q: &QuadParams) -> Result<JessenEstimate> {
    jessen_estimate(f, y, q.s, q.n_samples, q.seed, q.clip)
}

/// One row of a normalized Jessen profile `J_f(R y) / R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub value: f64,
    pub stderr: f64,
    pub clipped_fraction: f64,
}

pub fn jessen_profile(f: &ExpSum, y: &[f64], r_schedule: &[f64], q: &QuadParams) -> Result<Vec<ProfileRow>> {
    if norm(y) == 0.0 {
        return Err(Error::InvalidInput("direction y must be nonzero".into()));
    }
    if r_schedule.is_empty()
        || r_schedule[0] <= 0.0
        || r_schedule.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::InvalidInput("R schedule must be positive and increasing".into()));
    }
    r_schedule
        .iter()
        .map(|&r| {
            let ry: Vec<f64> = y.iter().map(|v| v * r).collect();
            let est = jessen_with(f, &ry, q)?;
            Ok(ProfileRow {
                r,
                value: est.value / r,
                stderr: est.stderr / r,
                clipped_fraction: est.clipped_fraction,
            })
        })
        .collect()
}

/// `-grad J_f(y)` with its per-component stderr.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecularVector {
    pub y: Vec<f64>,
    pub h: f64,
    pub value: Vec<f64>,
    pub stderr: Vec<f64>,
}

/// Central differences of `J_f` with step `h` on each axis, negated.
///
/// Fails with [`Error::StepTooSmall`] when a component's stderr exceeds
/// `q.grad_tol`. The same seed is used on both sides of every difference.
pub fn secular_vector(f: &ExpSum, y: &[f64], h: f64, q: &QuadParams) -> Result<SecularVector> {
    let p = f.dim();
    check_dim(p, y.len())?;
    if !(h > 0.0) {
        return Err(Error::InvalidInput("step h must be positive".into()));
    }
    let mut value = Vec::with_capacity(p);
    let mut stderr = Vec::with_capacity(p);
    for j in 0..p {
        let mut yp = y.to_vec();
        let mut ym = y.to_vec();
        yp[j] += h;
        ym[j] -= h;
        let jp = jessen_with(f, &yp, q)?;
        let jm = jessen_with(f, &ym, q)?;
        let se = (jp.stderr * jp.stderr + jm.stderr * jm.stderr).sqrt() / (2.0 * h);
        if se > q.grad_tol {
            return Err(Error::StepTooSmall { stderr: se });
        }
        value.push(-(jp.value - jm.value) / (2.0 * h));
        stderr.push(se);
    }
    Ok(SecularVector { y: y.to_vec(), h, value, stderr })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanMotionResult {
    pub y: Vec<f64>,
    pub direction: Vec<f64>,
    pub value: f64,
    pub x_span: f64,
    pub n_steps: usize,
    /// Window resolution `2 pi * n_terms / x_span`.
    pub error: f64,
}

/// Average rate of change of a continuous branch of `arg f(x + i y)` along
/// `x = s * direction`, `s in [-x_span/2, x_span/2]`.
///
/// The dominant term's phase is linear and is added in closed form; the
/// remaining factor is tracked step by step, halving the step whenever one
/// step changes its argument by more than `pi/2`.
pub fn mean_motion(
    f: &ExpSum,
    y: &[f64],
    direction: &[f64],
    x_span: f64,
    initial_step: f64,
) -> Result<MeanMotionResult> {
    let p = f.dim();
    check_dim(p, y.len())?;
    check_dim(p, direction.len())?;
    if (norm(direction) - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput("direction must be a unit vector".into()));
    }
    if !(x_span > 0.0) || !(initial_step > 0.0) {
        return Err(Error::InvalidInput("x_span and initial_step must be positive".into()));
    }
    let slice = HeightSlice::new(f, y)?;
    if f.is_empty() {
        return Err(Error::ZeroOnPath { at: (0.0, y[0]) });
    }
    let linear = dot(direction, slice.dominant_lambda());
    let at = |s: f64| -> Vec<f64> { direction.iter().map(|d| d * s).collect() };
    let floor = defaults::PATH_ZERO * slice.mass();

    let start = -0.5 * x_span;
    let end = 0.5 * x_span;
    let mut s = start;
    let mut g = slice.g(&at(s));
    if g.norm() < floor {
        return Err(Error::ZeroOnPath { at: (s, y[0]) });
    }
    let lip = slice.derivative_bound(direction);
    let mut unwrapped = 0.0;
    let mut steps = 0usize;
    while s < end {
        // keeps |g(s + t) - g(s)| <= |g(s)| / 2 over the step
        let cap = if lip > 0.0 { 0.5 * g.norm() / lip } else { f64::INFINITY };
        let mut step = initial_step.min(end - s).min(cap);
        let mut halvings = 0;
        loop {
            let next = if s + step >= end { end } else { s + step };
            let gn = slice.g(&at(next));
            if gn.norm() < floor {
                return Err(Error::ZeroOnPath { at: (next, y[0]) });
            }
            let d = (gn / g).arg();
            if d.abs() <= std::f64::consts::FRAC_PI_2 {
                unwrapped += d;
                g = gn;
                s = next;
                steps += 1;
                break;
            }
            halvings += 1;
            if halvings > defaults::MAX_HALVINGS {
                return Err(Error::ZeroOnPath { at: (s, y[0]) });
            }
            step *= 0.5;
        }
    }
    Ok(MeanMotionResult {
        y: y.to_vec(),
        direction: direction.to_vec(),
        value: linear + unwrapped / x_span,
        x_span,
        n_steps: steps,
        error: 2.0 * std::f64::consts::PI * f.len() as f64 / x_span,
    })
}

/// Default tracking step: a tenth of the inverse largest relative frequency.
pub fn default_tracking_step(f: &ExpSum, y: &[f64]) -> Result<f64> {
    let m = HeightSlice::new(f, y)?.max_relative_frequency();
    Ok(if m > 0.0 { 0.1 / m } else { 1.0 })
}

/// One-dimensional kink test: mean motions at `y - h` and `y + h` differ by
/// more than `tol`.
pub fn suspect_kink(f: &ExpSum, y: f64, h: f64, x_span: f64, tol: f64) -> Result<bool> {
    check_dim(1, f.dim())?;
    let lo = mean_motion(f, &[y - h], &[1.0], x_span, default_tracking_step(f, &[y - h])?)?;
    let hi = mean_motion(f, &[y + h], &[1.0], x_span, default_tracking_step(f, &[y + h])?)?;
    Ok((lo.value - hi.value).abs() > tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub left: JessenEstimate,
    pub mid: JessenEstimate,
    pub right: JessenEstimate,
    /// `(J(y1) + J(y2)) / 2 - J(mid)`; nonnegative for convex `J`.
    pub gap: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Midpoint convexity of `J_f` on the segment `[y1, y2]` within 3 combined
/// standard errors.
pub fn convexity_check(f: &ExpSum, y1: &[f64], y2: &[f64], q: &QuadParams) -> Result<ConvexityReport> {
    check_dim(f.dim(), y1.len())?;
    check_dim(f.dim(), y2.len())?;
    let mid: Vec<f64> = y1.iter().zip(y2).map(|(a, b)| 0.5 * (a + b)).collect();
    let left = jessen_with(f, y1, q)?;
    let right = jessen_with(f, y2, q)?;
    let m = jessen_with(f, &mid, q)?;
    let gap = 0.5 * (left.value + right.value) - m.value;
    let combined = (m.stderr.powi(2) + 0.25 * (left.stderr.powi(2) + right.stderr.powi(2))).sqrt();
    let scale = 1.0 + left.value.abs().max(right.value.abs());
    let tolerance = 3.0 * combined + 1e-12 * scale;
    Ok(ConvexityReport { passed: gap >= -tolerance, left, mid: m, right, gap, tolerance })
}

/// For samples `(t, g(t))` of a convex negative function on `[-a, a]`, checks
/// `g(0) >= a^{-1} * integral of g` (trapezoid rule; `g(0)` interpolated).
pub fn lemma2_bound(samples: &[(f64, f64)]) -> Result<bool> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    for (i, &(t, g)) in samples.iter().enumerate() {
        if !t.is_finite() || !g.is_finite() {
            return Err(Error::InvalidInput(format!("sample {i} is not finite")));
        }
        if g >= 0.0 {
            return Err(Error::NotNegative(i));
        }
    }
    let mut pts = samples.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let alpha = pts[pts.len() - 1].0;
    if !(alpha > 0.0) || (pts[0].0 + alpha).abs() > 1e-12 * alpha {
        return Err(Error::InvalidInput("samples must span a symmetric interval [-a, a]".into()));
    }
    let mut integral = NeumaierSum::default();
    for w in pts.windows(2) {
        integral.add(0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1));
    }
    let k = pts.partition_point(|s| s.0 < 0.0);
    let g0 = if pts[k].0 == 0.0 {
        pts[k].1
    } else {
        let (a, b) = (pts[k - 1], pts[k]);
        a.1 + (b.1 - a.1) * (0.0 - a.0) / (b.0 - a.0)
    };
    let rhs = integral.total() / alpha;
    Ok(g0 >= rhs - 1e-12 * (1.0 + rhs.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn one_plus_exp() -> ExpSum {
        ExpSum::from_pairs(1, [(vec![0.0], c(1.0)), (vec![1.0], c(1.0))]).unwrap()
    }

    #[test]
    fn single_term_is_exact() {
        let f = ExpSum::single(vec![2.0], c(1.0)).unwrap();
        for y in [-1.5, 0.0, 0.75, 3.0] {
            let e = jessen_estimate(&f, &[y], 10.0, 1000, 1, -40.0).unwrap();
            assert_eq!(e.value, -2.0 * y);
            assert_eq!(e.stderr, 0.0);
        }
        let g = ExpSum::single(vec![1.0, -0.5], Complex64::new(0.0, 3.0)).unwrap();
        let e = jessen_estimate(&g, &[0.2, 0.4], 5.0, 1000, 1, -40.0).unwrap();
        assert_eq!(e.value, 3f64.ln() - (0.2 - 0.2));
    }

    #[test]
    fn jensen_oracle_values() {
        // mean of log|1 + r e^{ix}| is 0 for r < 1 and log r for r > 1
        let f = one_plus_exp();
        let up = jessen_estimate(&f, &[1.0], 1e4, 65536, 42, -40.0).unwrap();
        assert!(up.value.abs() < 2e-3, "{up:?}");
        let down = jessen_estimate(&f, &[-1.0], 1e4, 65536, 42, -40.0).unwrap();
        assert!((down.value - 1.0).abs() < 2e-3, "{down:?}");
    }

    #[test]
    fn zero_on_real_axis_is_integrable() {
        let f = one_plus_exp();
        let e = jessen_estimate(&f, &[0.0], 1e3, 65536, 3, -40.0).unwrap();
        assert!(e.value.abs() < 1e-2, "{e:?}");
    }

    #[test]
    fn input_validation() {
        let f = one_plus_exp();
        assert!(jessen_estimate(&f, &[1.0], 0.0, 1000, 1, -40.0).is_err());
        assert!(jessen_estimate(&f, &[1.0], 1.0, 10, 1, -40.0).is_err());
        assert!(jessen_estimate(&f, &[1.0], 1.0, 1000, 1, 1.0).is_err());
        assert!(matches!(
            jessen_estimate(&f, &[1.0, 2.0], 1.0, 1000, 1, -40.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn secular_examples() {
        let q = QuadParams { s: 1e4, ..QuadParams::default() };
        let single = ExpSum::single(vec![1.5, -0.5], c(2.0)).unwrap();
        let v = secular_vector(&single, &[0.3, 0.2], 0.05, &q).unwrap();
        assert!((v.value[0] - 1.5).abs() < 1e-12 && (v.value[1] + 0.5).abs() < 1e-12);

        let f = one_plus_exp();
        let v = secular_vector(&f, &[1.0], 0.05, &q).unwrap();
        assert!(v.value[0].abs() <= 3.0 * v.stderr[0] + 1e-9, "{v:?}");
        let v = secular_vector(&f, &[-1.0], 0.05, &q).unwrap();
        assert!((v.value[0] - 1.0).abs() <= 3.0 * v.stderr[0] + 1e-9, "{v:?}");

        let tight = QuadParams { grad_tol: 1e-14, ..q };
        assert!(matches!(
            secular_vector(&f, &[0.1], 1e-6, &tight),
            Err(Error::StepTooSmall { .. })
        ));
    }

    #[test]
    fn mean_motion_examples() {
        let f = ExpSum::single(vec![3.0], c(1.0)).unwrap();
        let m = mean_motion(&f, &[0.7], &[1.0], 100.0, 0.1).unwrap();
        assert_eq!(m.value, 3.0);

        let g = one_plus_exp();
        let m = mean_motion(&g, &[1.0], &[1.0], 1e4, 0.1).unwrap();
        assert!(m.value.abs() < 1e-3, "{m:?}");
        let m = mean_motion(&g, &[-1.0], &[1.0], 1e4, 0.1).unwrap();
        assert!((m.value - 1.0).abs() < 1e-3, "{m:?}");
        // zeros of 1 + e^{iz} sit on the real axis
        assert!(matches!(
            mean_motion(&g, &[0.0], &[1.0], 1e4, 0.1),
            Err(Error::ZeroOnPath { .. })
        ));
    }

    #[test]
    fn kink_detection() {
        let g = one_plus_exp();
        assert!(suspect_kink(&g, 0.0, 0.2, 2000.0, 0.1).unwrap());
        assert!(!suspect_kink(&g, 1.0, 0.2, 2000.0, 0.1).unwrap());
    }

    #[test]
    fn convexity_examples() {
        let q = QuadParams { s: 1e4, ..QuadParams::default() };
        let single = ExpSum::single(vec![1.0], c(1.0)).unwrap();
        let r = convexity_check(&single, &[-1.0], &[2.0], &q).unwrap();
        assert!(r.passed && r.gap.abs() < 1e-12);
        let r = convexity_check(&one_plus_exp(), &[-1.0], &[1.0], &q).unwrap();
        assert!(r.passed);
        assert!((r.gap - 0.5).abs() < 1e-2, "{r:?}");
    }

    #[test]
    fn lemma2_examples() {
        let flat: Vec<(f64, f64)> = (-10..=10).map(|k| (k as f64 / 10.0, -1.0)).collect();
        assert!(lemma2_bound(&flat).unwrap());
        let vee: Vec<(f64, f64)> = (-10..=10)
            .map(|k| {
                let t = k as f64 / 10.0;
                (t, -1.0 - t.abs())
            })
            .collect();
        assert!(lemma2_bound(&vee).unwrap());
        let eps = 0.5;
        let bowl: Vec<(f64, f64)> = (-10..=10)
            .map(|k| {
                let t = k as f64 / 10.0;
                (t, -eps + t * t)
            })
            .collect();
        assert!(matches!(lemma2_bound(&bowl), Err(Error::NotNegative(_))));
        // interpolated centre
        assert!(lemma2_bound(&[(-1.0, -2.0), (-0.5, -1.5), (0.5, -1.5), (1.0, -2.0)]).unwrap());
    }
}
