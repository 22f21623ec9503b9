//! Finite exponential sums `f(z) = sum_n b_n exp(i <z, lambda_n>)` on tube
//! domains `z = x + i y`, with optional limit-frequency metadata.
//!
//! Limit frequencies never contribute terms; they only take part in spectrum
//! classification and support-function computations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cone::PointSet;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, norm, sub};
use crate::numeric::par_sum_vec;

/// Exponents `-<y, lambda>` above this value are rejected.
pub const OVERFLOW_EXPONENT: f64 = 700.0;
/// Almost periods shorter than this are never returned.
pub const MIN_ALMOST_PERIOD: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub lambda: Vec<f64>,
    pub coeff: Complex64,
}

/// A point `x + i y` of the tube.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubePoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl TubePoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        check_dim(x.len(), y.len())?;
        Ok(TubePoint { x, y })
    }

    pub fn real(x: Vec<f64>) -> Self {
        let y = vec![0.0; x.len()];
        TubePoint { x, y }
    }

    pub fn imag(y: Vec<f64>) -> Self {
        let x = vec![0.0; y.len()];
        TubePoint { x, y }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}

/// A finite exponential sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExpSumSpec", into = "ExpSumSpec")]
pub struct ExpSum {
    dim: usize,
    terms: Vec<Term>,
    limit_frequencies: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    pub lambda: Vec<f64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// JSON shape of an [`ExpSum`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpSumSpec {
    pub dimension: usize,
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub limit_frequencies: Vec<Vec<f64>>,
}

impl TryFrom<ExpSumSpec> for ExpSum {
    type Error = Error;
    fn try_from(s: ExpSumSpec) -> Result<Self> {
        ExpSum::new(
            s.dimension,
            s.terms
                .into_iter()
                .map(|t| Term { lambda: t.lambda, coeff: Complex64::new(t.re, t.im) })
                .collect(),
            s.limit_frequencies,
        )
    }
}

impl From<ExpSum> for ExpSumSpec {
    fn from(f: ExpSum) -> Self {
        ExpSumSpec {
            dimension: f.dim,
            terms: f
                .terms
                .into_iter()
                .map(|t| TermSpec { lambda: t.lambda, re: t.coeff.re, im: t.coeff.im })
                .collect(),
            limit_frequencies: f.limit_frequencies,
        }
    }
}

impl ExpSum {
    pub fn new(dim: usize, terms: Vec<Term>, limit_frequencies: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            check_dim(dim, t.lambda.len())?;
            if t.lambda.iter().any(|v| !v.is_finite()) || !t.coeff.is_finite() {
                return Err(Error::InvalidInput(format!("term {i} is not finite")));
            }
            if t.coeff == Complex64::new(0.0, 0.0) {
                return Err(Error::InvalidInput(format!("term {i} has a zero coefficient")));
            }
            if terms[..i].iter().any(|s| s.lambda == t.lambda) {
                return Err(Error::InvalidInput(format!("repeated frequency {:?}", t.lambda)));
            }
        }
        for l in &limit_frequencies {
            check_dim(dim, l.len())?;
            if terms.iter().any(|t| &t.lambda == l) {
                return Err(Error::InvalidInput(format!(
                    "limit frequency {l:?} is also a term frequency"
                )));
            }
        }
        Ok(ExpSum { dim, terms, limit_frequencies })
    }

    /// Builds a sum from `(frequency, coefficient)` pairs, merging repeated
    /// frequencies and dropping cancelled terms.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (Vec<f64>, Complex64)>) -> Result<Self> {
        let mut terms: Vec<Term> = Vec::new();
        for (lambda, coeff) in pairs {
            check_dim(dim, lambda.len())?;
            if let Some(t) = terms.iter_mut().find(|t| t.lambda == lambda) {
                t.coeff += coeff;
            } else {
                terms.push(Term { lambda, coeff });
            }
        }
        terms.retain(|t| t.coeff != Complex64::new(0.0, 0.0));
        ExpSum::new(dim, terms, Vec::new())
    }

    /// `c * exp(i <z, lambda>)`.
    pub fn single(lambda: Vec<f64>, coeff: Complex64) -> Result<Self> {
        let dim = lambda.len();
        ExpSum::new(dim, vec![Term { lambda, coeff }], Vec::new())
    }

    pub fn with_limit_frequencies(mut self, limits: Vec<Vec<f64>>) -> Result<Self> {
        self.limit_frequencies = limits;
        ExpSum::new(self.dim, self.terms, self.limit_frequencies)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn limit_frequencies(&self) -> &[Vec<f64>] {
        &self.limit_frequencies
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term frequencies as points, limit frequencies as limit points.
    pub fn spectrum(&self) -> PointSet {
        PointSet {
            points: self.terms.iter().map(|t| t.lambda.clone()).collect(),
            limit_points: self.limit_frequencies.clone(),
        }
    }

    /// Coefficient of the zero frequency, or 0.
    pub fn constant_term(&self) -> Complex64 {
        self.terms
            .iter()
            .find(|t| t.lambda.iter().all(|&v| v == 0.0))
            .map(|t| t.coeff)
            .unwrap_or_default()
    }

    /// `sum |b_n|`, an upper bound for `sup |f|` on the real space.
    pub fn coefficient_l1(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm()).sum()
    }

    pub fn add(&self, other: &ExpSum) -> Result<ExpSum> {
        check_dim(self.dim, other.dim)?;
        let pairs = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|t| (t.lambda.clone(), t.coeff));
        ExpSum::from_pairs(self.dim, pairs)
    }

    pub fn mul(&self, other: &ExpSum) -> Result<ExpSum> {
        check_dim(self.dim, other.dim)?;
        let mut pairs = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let lambda = a.lambda.iter().zip(&b.lambda).map(|(u, v)| u + v).collect();
                pairs.push((lambda, a.coeff * b.coeff));
            }
        }
        ExpSum::from_pairs(self.dim, pairs)
    }

    pub fn scale(&self, c: Complex64) -> Result<ExpSum> {
        let pairs = self.terms.iter().map(|t| (t.lambda.clone(), t.coeff * c));
        let mut out = ExpSum::from_pairs(self.dim, pairs)?;
        out.limit_frequencies = self.limit_frequencies.clone();
        Ok(out)
    }

    /// `f - a`, keeping limit frequencies.
    pub fn minus_constant(&self, a: Complex64) -> Result<ExpSum> {
        let zero = vec![0.0; self.dim];
        let pairs = self
            .terms
            .iter()
            .map(|t| (t.lambda.clone(), t.coeff))
            .chain(std::iter::once((zero, -a)));
        let mut out = ExpSum::from_pairs(self.dim, pairs)?;
        out.limit_frequencies = self
            .limit_frequencies
            .iter()
            .filter(|l| !out.terms.iter().any(|t| &t.lambda == *l))
            .cloned()
            .collect();
        Ok(out)
    }

    /// Every frequency shifted by `delta`, every coefficient divided by `divisor`.
    pub fn shifted(&self, delta: &[f64], divisor: f64) -> Result<ExpSum> {
        check_dim(self.dim, delta.len())?;
        let shift = |l: &Vec<f64>| l.iter().zip(delta).map(|(a, b)| a + b).collect::<Vec<f64>>();
        let terms = self
            .terms
            .iter()
            .map(|t| Term { lambda: shift(&t.lambda), coeff: t.coeff / divisor })
            .collect();
        let limits = self.limit_frequencies.iter().map(shift).collect();
        ExpSum::new(self.dim, terms, limits)
    }

    /// Log-magnitudes `log|b_n| - <y, lambda_n>` of the individual terms.
    pub fn term_log_magnitudes(&self, y: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim, y.len())?;
        self.terms
            .iter()
            .map(|t| {
                let e = -dot(y, &t.lambda);
                if e > OVERFLOW_EXPONENT {
                    Err(Error::OverflowGuard { exponent: e })
                } else {
                    Ok(t.coeff.norm().ln() + e)
                }
            })
            .collect()
    }

    /// `sum_n |b_n| exp(-<y, lambda_n>)`.
    pub fn term_scale(&self, y: &[f64]) -> Result<f64> {
        Ok(self.term_log_magnitudes(y)?.iter().map(|l| l.exp()).sum())
    }

    /// Index of the term of largest modulus at height `y` (first on ties).
    pub fn dominant_index(&self, y: &[f64]) -> Result<Option<usize>> {
        let logs = self.term_log_magnitudes(y)?;
        let mut best: Option<usize> = None;
        for (i, l) in logs.iter().enumerate() {
            if best.is_none_or(|b| *l > logs[b]) {
                best = Some(i);
            }
        }
        Ok(best)
    }

    fn check_point(&self, z: &TubePoint) -> Result<()> {
        check_dim(self.dim, z.x.len())?;
        check_dim(self.dim, z.y.len())
    }

    /// Value at a tube point, summing terms in order of decreasing modulus.
    pub fn evaluate(&self, z: &TubePoint) -> Result<Complex64> {
        self.check_point(z)?;
        let logs = self.term_log_magnitudes(&z.y)?;
        let mut vals: Vec<(f64, Complex64)> = self
            .terms
            .iter()
            .zip(&logs)
            .map(|(t, &l)| {
                let v = t.coeff
                    * (-dot(&z.y, &t.lambda)).exp()
                    * Complex64::from_polar(1.0, dot(&z.x, &t.lambda));
                (l, v)
            })
            .collect();
        vals.sort_by(|a, b| b.0.total_cmp(&a.0));
        Ok(vals.iter().fold(Complex64::new(0.0, 0.0), |acc, (_, v)| acc + v))
    }

    /// `log|f(z)|`, or `-inf` when the sum cancels to rounding level.
    ///
    /// The dominant term is factored out, so single-term sums give
    /// `log|b| - <y, lambda>` exactly.
    pub fn log_abs(&self, z: &TubePoint) -> Result<f64> {
        self.check_point(z)?;
        Ok(HeightSlice::new(self, &z.y)?.log_abs(&z.x))
    }

    /// One-variable value `sum c_n exp(i mu_n w)`. Requires `dim == 1`.
    pub fn eval_1d(&self, w: Complex64) -> Result<Complex64> {
        check_dim(1, self.dim)?;
        self.evaluate(&TubePoint { x: vec![w.re], y: vec![w.im] })
    }

    /// One-variable derivative `sum i mu_n c_n exp(i mu_n w)`.
    pub fn derivative_1d(&self, w: Complex64) -> Result<Complex64> {
        check_dim(1, self.dim)?;
        let i = Complex64::new(0.0, 1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mu = t.lambda[0];
            let e = -w.im * mu;
            if e > OVERFLOW_EXPONENT {
                return Err(Error::OverflowGuard { exponent: e });
            }
            acc += i * mu * t.coeff * (i * mu * w).exp();
        }
        Ok(acc)
    }
}

/// `f` restricted to a fixed height `y`, factored as
/// `f(x + i y) = b_d e^{-<y, lambda_d>} e^{i <x, lambda_d>} g(x)` where `d` is
/// the dominant term and `g(x) = sum_n a_n e^{i <x, lambda_n - lambda_d>}`
/// has `a_d = 1`.
#[derive(Debug, Clone)]
pub struct HeightSlice {
    dim: usize,
    log_dominant: f64,
    dominant_lambda: Vec<f64>,
    dominant_arg: f64,
    rel: Vec<(Vec<f64>, Complex64)>,
    mass: f64,
}

impl HeightSlice {
    pub fn new(f: &ExpSum, y: &[f64]) -> Result<Self> {
        let logs = f.term_log_magnitudes(y)?;
        let dim = f.dim();
        let mut d: Option<usize> = None;
        for (i, l) in logs.iter().enumerate() {
            if d.is_none_or(|b| *l > logs[b]) {
                d = Some(i);
            }
        }
        let Some(d) = d else {
            return Ok(HeightSlice {
                dim,
                log_dominant: f64::NEG_INFINITY,
                dominant_lambda: vec![0.0; dim],
                dominant_arg: 0.0,
                rel: Vec::new(),
                mass: 0.0,
            });
        };
        let dom = &f.terms()[d];
        let mut rel: Vec<(f64, Vec<f64>, Complex64)> = Vec::with_capacity(f.len());
        for (i, t) in f.terms().iter().enumerate() {
            if i == d {
                rel.push((0.0, vec![0.0; dim], Complex64::new(1.0, 0.0)));
                continue;
            }
            let r = logs[i] - logs[d];
            let ratio = t.coeff / dom.coeff;
            let a = ratio.unscale(ratio.norm()) * r.exp();
            rel.push((r, sub(&t.lambda, &dom.lambda), a));
        }
        rel.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mass = rel.iter().map(|(r, _, _)| r.exp()).sum();
        Ok(HeightSlice {
            dim,
            log_dominant: logs[d],
            dominant_lambda: dom.lambda.clone(),
            dominant_arg: dom.coeff.arg(),
            rel: rel.into_iter().map(|(_, l, a)| (l, a)).collect(),
            mass,
        })
    }

    /// `log|b_d| - <y, lambda_d>`.
    pub fn log_dominant(&self) -> f64 {
        self.log_dominant
    }

    pub fn dominant_lambda(&self) -> &[f64] {
        &self.dominant_lambda
    }

    /// `sum_n |a_n|`, the scale of `g`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// True when the dominant term exceeds the sum of all others.
    pub fn strictly_dominant(&self) -> bool {
        self.mass < 2.0
    }

    /// Largest `|lambda_n - lambda_d|` over the terms.
    pub fn max_relative_frequency(&self) -> f64 {
        self.rel.iter().map(|(l, _)| norm(l)).fold(0.0, f64::max)
    }

    /// `sum_n |a_n| |<lambda_n - lambda_d, dir>|`, a Lipschitz bound for `g`
    /// along `dir`.
    pub fn derivative_bound(&self, dir: &[f64]) -> f64 {
        self.rel.iter().map(|(l, a)| a.norm() * dot(l, dir).abs()).sum()
    }

    /// The normalized factor `g(x)`.
    pub fn g(&self, x: &[f64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.dim);
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, a) in &self.rel {
            if l.iter().all(|&v| v == 0.0) {
                acc += a;
            } else {
                acc += a * Complex64::from_polar(1.0, dot(x, l));
            }
        }
        acc
    }

    /// `log|f(x + i y)|`, `-inf` when `|g|` is at rounding level.
    pub fn log_abs(&self, x: &[f64]) -> f64 {
        if self.rel.is_empty() {
            return f64::NEG_INFINITY;
        }
        let ga = self.g(x).norm();
        if ga <= 8.0 * f64::EPSILON * self.mass {
            return f64::NEG_INFINITY;
        }
        self.log_dominant + ga.ln()
    }

    /// Phase of the dominant factor, `arg b_d + <x, lambda_d>`.
    pub fn dominant_phase(&self, x: &[f64]) -> f64 {
        self.dominant_arg + dot(x, &self.dominant_lambda)
    }
}

/// Estimate of a Fourier–Bohr coefficient at height `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffEstimate {
    pub value: Complex64,
    pub lambda: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(rename = "S")]
    pub s: f64,
    pub n_samples: usize,
    pub stderr: f64,
}

/// Midpoint-rule mean of `f(x + i y) exp(-i <x, lambda>)` over `[-S, S]^p`.
///
/// The reported `stderr` is the analytic bound
/// `sum_{n: lambda_n != lambda} |b_n| e^{-<y, lambda_n>} * 2 / (S delta_n)`
/// where `delta_n` is the largest frequency-difference component the grid
/// resolves without aliasing. A grid that resolves no component of some
/// difference is rejected.
pub fn fourier_coefficient(
    f: &ExpSum,
    lambda: &[f64],
    y: &[f64],
    s: f64,
    grid_per_dim: usize,
) -> Result<CoeffEstimate> {
    let p = f.dim();
    check_dim(p, lambda.len())?;
    check_dim(p, y.len())?;
    if !(s > 0.0) {
        return Err(Error::InvalidInput("S must be positive".into()));
    }
    if grid_per_dim < 2 {
        return Err(Error::BadGrid(format!("grid_per_dim = {grid_per_dim} < 2")));
    }
    if p > 8 {
        return Err(Error::BadGrid(format!("grid averaging supports p <= 8, got {p}")));
    }
    let logs = f.term_log_magnitudes(y)?;
    let h = 2.0 * s / grid_per_dim as f64;

    // shifted terms t_n e^{i<x, mu_n>}, mu_n = lambda_n - lambda
    let shifted: Vec<(Vec<f64>, Complex64)> = f
        .terms()
        .iter()
        .zip(&logs)
        .map(|(t, &l)| {
            let phase = t.coeff.arg();
            (sub(&t.lambda, lambda), Complex64::from_polar(l.exp(), phase))
        })
        .collect();

    let mut bound = 0.0;
    let mut max_mu: f64 = 0.0;
    let mut total_mag = 0.0;
    for (mu, c) in &shifted {
        total_mag += c.norm();
        if mu.iter().all(|&m| m == 0.0) {
            continue;
        }
        let resolved = mu
            .iter()
            .map(|m| m.abs())
            .filter(|&m| m > 0.0 && m * h <= std::f64::consts::PI)
            .fold(0.0f64, f64::max);
        if resolved == 0.0 {
            return Err(Error::BadGrid(format!(
                "spacing {h:.3e} aliases frequency difference {mu:?}"
            )));
        }
        bound += c.norm() * 2.0 / (s * resolved);
        max_mu = max_mu.max(mu.iter().fold(0.0f64, |a, m| a.max(m.abs())));
    }
    let total = grid_per_dim.checked_pow(p as u32).ok_or_else(|| {
        Error::BadGrid("grid too large".into())
    })?;
    // rounding in phases of size up to S * |mu|
    bound += 8.0 * f64::EPSILON * (1.0 + s * max_mu) * total_mag;

    let sums = par_sum_vec::<_, 2>(total, |flat| {
        let mut rem = flat;
        let mut x = [0.0f64; 8];
        let xs = &mut x[..p];
        for xj in xs.iter_mut() {
            let k = rem % grid_per_dim;
            rem /= grid_per_dim;
            *xj = -s + (k as f64 + 0.5) * h;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (mu, c) in &shifted {
            acc += c * Complex64::from_polar(1.0, dot(xs, mu));
        }
        [acc.re, acc.im]
    });
    let n = total as f64;
    Ok(CoeffEstimate {
        value: Complex64::new(sums[0] / n, sums[1] / n),
        lambda: lambda.to_vec(),
        y: y.to_vec(),
        s,
        n_samples: total,
        stderr: bound,
    })
}

/// `phi(w) = f(x0 + i*yb + w * dir)` as a one-variable exponential sum with
/// frequencies `<dir, lambda_n>` and coefficients
/// `b_n exp(i <x0, lambda_n>) exp(-<yb, lambda_n>)`.
///
/// With `base.y = 0` this is the ray restriction `w -> f(x0 + w y0)`.
pub fn restrict_to_line(f: &ExpSum, base: &TubePoint, dir: &[f64]) -> Result<ExpSum> {
    f.check_point(base)?;
    check_dim(f.dim(), dir.len())?;
    if norm(dir) == 0.0 {
        return Err(Error::InvalidInput("direction must be nonzero".into()));
    }
    let mus: Vec<f64> = f.terms().iter().map(|t| dot(dir, &t.lambda)).collect();
    let scale = 1.0 + mus.iter().fold(0.0f64, |a, m| a.max(m.abs()));
    for i in 0..mus.len() {
        for j in i + 1..mus.len() {
            if (mus[i] - mus[j]).abs() <= 1e-12 * scale {
                return Err(Error::CollidingFrequencies(i, j));
            }
        }
    }
    let mut terms = Vec::with_capacity(mus.len());
    for (t, &mu) in f.terms().iter().zip(&mus) {
        let e = -dot(&base.y, &t.lambda);
        if e > OVERFLOW_EXPONENT {
            return Err(Error::OverflowGuard { exponent: e });
        }
        let coeff = t.coeff * e.exp() * Complex64::from_polar(1.0, dot(&base.x, &t.lambda));
        terms.push(Term { lambda: vec![mu], coeff });
    }
    let mut limits: Vec<Vec<f64>> = Vec::new();
    for l in f.limit_frequencies() {
        let v = vec![dot(dir, l)];
        if !terms.iter().any(|t| t.lambda == v) && !limits.contains(&v) {
            limits.push(v);
        }
    }
    ExpSum::new(1, terms, limits)
}

/// `w -> f(x0 + w y0)` as a one-variable exponential sum.
pub fn restrict_to_ray(f: &ExpSum, y0: &[f64], x0: &[f64]) -> Result<ExpSum> {
    check_dim(f.dim(), x0.len())?;
    restrict_to_line(f, &TubePoint::real(x0.to_vec()), y0)
}

/// `sum_n w_n |exp(i <tau, lambda_n>) - 1|`, an upper bound for
/// `sup |f(z + tau) - f(z)|` over heights whose term weights are `w_n`.
pub fn almost_period_certificate(weights: &[(f64, &[f64])], tau: &[f64]) -> f64 {
    weights
        .iter()
        .map(|(w, l)| w * 2.0 * (0.5 * dot(tau, l)).sin().abs())
        .sum()
}

/// Finds `tau` with `|tau| >= 0.1` whose analytic certificate
/// `sum_n |b_n| e^{-min_y <y, lambda_n>} |e^{i <tau, lambda_n>} - 1|` is below
/// `eps`, by Lipschitz branch-and-bound over `[0, search_box]^p`.
///
/// Top-level cells have side at most 1 and are visited in lexicographic order;
/// the first certified point is returned.
pub fn find_almost_period(
    f: &ExpSum,
    eps: f64,
    y_compact: &[Vec<f64>],
    search_box: f64,
    grid: usize,
) -> Result<Vec<f64>> {
    if !(eps > 0.0) || !(search_box > 0.0) {
        return Err(Error::InvalidInput("eps and search_box must be positive".into()));
    }
    let p = f.dim();
    for y in y_compact {
        check_dim(p, y.len())?;
    }
    let mut weights: Vec<(f64, &[f64])> = Vec::new();
    for t in f.terms() {
        let min_ip = if y_compact.is_empty() {
            0.0
        } else {
            y_compact.iter().map(|y| dot(y, &t.lambda)).fold(f64::INFINITY, f64::min)
        };
        if -min_ip > OVERFLOW_EXPONENT {
            return Err(Error::OverflowGuard { exponent: -min_ip });
        }
        weights.push((t.coeff.norm() * (-min_ip).exp(), &t.lambda));
    }
    let lip: f64 = weights.iter().map(|(w, l)| w * norm(l)).sum();
    let sqrt_p = (p as f64).sqrt();
    if lip == 0.0 {
        let mut tau = vec![0.0; p];
        tau[0] = MIN_ALMOST_PERIOD.max(search_box.min(1.0));
        return Ok(tau);
    }

    let per_dim = grid.max((search_box / 1.0).ceil() as usize).max(1);
    let side = search_box / per_dim as f64;
    let top = per_dim
        .checked_pow(p as u32)
        .filter(|&n| n <= 50_000_000)
        .ok_or_else(|| Error::InvalidInput("search grid too large".into()))?;
    let mut budget: u64 = 200_000_000;

    let mut center = vec![0.0; p];
    for flat in 0..top {
        let mut rem = flat;
        // lexicographic order: first coordinate varies slowest
        for j in (0..p).rev() {
            let k = rem % per_dim;
            rem /= per_dim;
            center[j] = (k as f64 + 0.5) * side;
        }
        let mut stack = vec![(center.clone(), 0.5 * side, 0u32)];
        while let Some((c, r, depth)) = stack.pop() {
            if budget == 0 {
                return Err(Error::NotFound);
            }
            budget -= 1;
            let cn = norm(&c);
            if cn + r * sqrt_p < MIN_ALMOST_PERIOD {
                continue;
            }
            let v = almost_period_certificate(&weights, &c);
            if v < eps && cn >= MIN_ALMOST_PERIOD {
                return Ok(c);
            }
            if v - lip * r * sqrt_p >= eps || depth >= 64 {
                continue;
            }
            let hr = 0.5 * r;
            // push children in reverse so the lexicographically first pops first
            for child in (0..(1usize << p)).rev() {
                let cc: Vec<f64> = (0..p)
                    .map(|j| {
                        let bit = (child >> (p - 1 - j)) & 1;
                        c[j] + if bit == 1 { hr } else { -hr }
                    })
                    .collect();
                stack.push((cc, hr, depth + 1));
            }
        }
    }
    Err(Error::NotFound)
}
