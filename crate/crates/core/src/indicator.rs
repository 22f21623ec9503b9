//! P-indicator of an exponential sum: the exact formula, a probed estimate
//! along a ray, the normalization used in the scaling law, and the
//! Phragmén–Lindelöf bound check for normalized sums.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{check_dim, Error, Result};
use crate::expsum::{ExpSum, HeightSlice};
use crate::linalg::{dot, norm, scale};

/// Half-width of the box from which indicator probes are drawn.
const PROBE_BOX: f64 = 1000.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorEstimate {
    pub y: Vec<f64>,
    pub exact: f64,
    pub empirical: f64,
    pub r_max: f64,
    pub x_probes: usize,
    /// `(log sum|b_n| + log 2) / r_max`.
    pub gap_bound: f64,
}

fn check_direction(f: &ExpSum, y: &[f64]) -> Result<()> {
    check_dim(f.dim(), y.len())?;
    if y.iter().any(|v| !v.is_finite()) || norm(y) == 0.0 {
        return Err(Error::InvalidInput("y must be finite and nonzero".into()));
    }
    Ok(())
}

/// `max <-y, lambda>` over the terms and limit frequencies of `f`.
pub fn p_indicator_exact(f: &ExpSum, y: &[f64]) -> Result<f64> {
    check_direction(f, y)?;
    let mut best = f64::NEG_INFINITY;
    for l in f.terms().iter().map(|t| &t.lambda).chain(f.limit_frequencies()) {
        let mut v = 0.0;
        for j in 0..l.len() {
            v += -y[j] * l[j];
        }
        if v > best {
            best = v;
        }
    }
    if best == f64::NEG_INFINITY {
        return Err(Error::EmptySpectrum);
    }
    Ok(best)
}

/// Gap between the largest and second largest distinct values of
/// `<-y, lambda_n>` over the terms; infinite when there is only one.
pub fn frequency_gap(f: &ExpSum, y: &[f64]) -> f64 {
    let mut vals: Vec<f64> = f.terms().iter().map(|t| -dot(y, &t.lambda)).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals.dedup();
    if vals.len() < 2 {
        f64::INFINITY
    } else {
        vals[0] - vals[1]
    }
}

/// Largest `log|f(x + i r_max y)| / r_max` over seeded probes `x`.
pub fn p_indicator_empirical(
    f: &ExpSum,
    y: &[f64],
    r_max: f64,
    x_probes: usize,
    seed: u64,
) -> Result<IndicatorEstimate> {
    check_direction(f, y)?;
    if f.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    if !(r_max > 0.0) {
        return Err(Error::InvalidInput("r_max must be positive".into()));
    }
    if x_probes < 16 {
        return Err(Error::InvalidInput("at least 16 probes are required".into()));
    }
    let gap = frequency_gap(f, y);
    if r_max * gap <= 20.0 {
        return Err(Error::InvalidInput(format!(
            "r_max * frequency gap = {:.3} must exceed 20",
            r_max * gap
        )));
    }
    let exact = p_indicator_exact(f, y)?;
    let slice = HeightSlice::new(f, &scale(y, r_max))?;
    let p = f.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes: Vec<Vec<f64>> = (0..x_probes)
        .map(|_| (0..p).map(|_| rng.gen_range(-PROBE_BOX..PROBE_BOX)).collect())
        .collect();
    let best = probes
        .par_iter()
        .map(|x| slice.log_abs(x))
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(IndicatorEstimate {
        y: y.to_vec(),
        exact,
        empirical: best / r_max,
        r_max,
        x_probes,
        gap_bound: (f.coefficient_l1().ln() + std::f64::consts::LN_2) / r_max,
    })
}

/// `F(z) = f(z) e^{i <z, h_f(y0) y0>} / sup_bound`. With `sup_bound = None`
/// the rigorous bound `sum |b_n|` is used.
pub fn normalize(f: &ExpSum, y0: &[f64], sup_bound: Option<f64>) -> Result<ExpSum> {
    check_direction(f, y0)?;
    if (norm(y0) - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput("y0 must be a unit vector".into()));
    }
    let bound = sup_bound.unwrap_or_else(|| f.coefficient_l1());
    if !(bound > 0.0) || !bound.is_finite() {
        return Err(Error::InvalidInput("sup bound must be positive and finite".into()));
    }
    let h = p_indicator_exact(f, y0)?;
    f.shifted(&scale(y0, h), bound)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlViolation {
    pub x: Vec<f64>,
    pub t: f64,
    pub log_abs: f64,
    pub bound: f64,
}

/// Checks `log|F(x + i t y)| <= h_F(y) t + slack` at seeded probes for each
/// `t`. Requires `sum |b_n| <= 1`, which certifies `|F| <= 1` on the reals.
pub fn pl_bound_check(
    big_f: &ExpSum,
    y: &[f64],
    t_list: &[f64],
    x_probes: usize,
    seed: u64,
) -> Result<Vec<PlViolation>> {
    check_direction(big_f, y)?;
    if big_f.coefficient_l1() > 1.0 + 1e-12 {
        return Err(Error::InvalidInput("F must satisfy sum |b_n| <= 1".into()));
    }
    if t_list.iter().any(|t| !(*t >= 0.0)) {
        return Err(Error::InvalidInput("t values must be nonnegative".into()));
    }
    let h = p_indicator_exact(big_f, y)?;
    let p = big_f.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes: Vec<Vec<f64>> = (0..x_probes)
        .map(|_| (0..p).map(|_| rng.gen_range(-PROBE_BOX..PROBE_BOX)).collect())
        .collect();
    let mut out = Vec::new();
    for &t in t_list {
        let slice = HeightSlice::new(big_f, &scale(y, t))?;
        let bound = h * t + defaults::PL_SLACK;
        for x in &probes {
            let v = slice.log_abs(x);
            if v > bound {
                out.push(PlViolation { x: x.clone(), t, log_abs: v, bound });
            }
        }
    }
    Ok(out)
}
