//! Polyhedral convex cones: validation, conjugation, membership, and the
//! support-function tests that decide where a spectrum sits relative to a cone.
//!
//! A cone is always carried as a finite generator list. Membership is decided
//! by nonnegative least squares: `x` belongs to the cone within `tol` when the
//! distance from `x` to the set of nonnegative generator combinations is at
//! most `tol`.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{columns, cross, dot, lex_cmp, nnls, norm, rank, sub};

/// Default membership tolerance.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Relative singular-value threshold for the span check.
pub const RANK_TOL: f64 = 1e-10;
/// Largest dimension handled by facet enumeration in [`conjugate_cone`].
pub const MAX_DUAL_DIM: usize = 6;

/// A finitely generated closed convex cone that is pointed and has nonempty
/// interior.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConeSpec", into = "ConeSpec")]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<f64>>,
}

/// Raw JSON shape of a cone: `{"generators": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeSpec {
    pub generators: Vec<Vec<f64>>,
}

impl TryFrom<ConeSpec> for Cone {
    type Error = Error;
    fn try_from(spec: ConeSpec) -> Result<Self> {
        make_cone(spec.generators)
    }
}

impl From<Cone> for ConeSpec {
    fn from(c: Cone) -> Self {
        ConeSpec { generators: c.generators }
    }
}

impl Cone {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    /// The nonnegative orthant of `R^dim`.
    pub fn orthant(dim: usize) -> Cone {
        let generators = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Cone { dim, generators }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        cone_contains(self, x, tol)
    }

    /// Strict interior test for the conjugate cone: `<y, g> > margin * |g|`
    /// for every generator `g` of this cone.
    pub fn dual_interior_contains(&self, y: &[f64], margin: f64) -> Result<bool> {
        check_dim(self.dim, y.len())?;
        Ok(self
            .generators
            .iter()
            .all(|g| dot(y, g) > margin * norm(g)))
    }

    /// A direction in the interior of the cone: the sum of the normalized
    /// generators.
    pub fn interior_direction(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for g in &self.generators {
            let n = norm(g);
            for (ci, gi) in c.iter_mut().zip(g) {
                *ci += gi / n;
            }
        }
        let n = norm(&c);
        c.iter().map(|v| v / n).collect()
    }

    /// Mutual generator membership, i.e. the two cones are equal as sets.
    pub fn same_cone(&self, other: &Cone, tol: f64) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        for g in &other.generators {
            let u: Vec<f64> = g.iter().map(|v| v / norm(g)).collect();
            if !cone_contains(self, &u, tol)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            let u: Vec<f64> = g.iter().map(|v| v / norm(g)).collect();
            if !cone_contains(other, &u, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A finite frequency set together with declared accumulation points that are
/// not themselves members.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub limit_points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>, limit_points: Vec<Vec<f64>>) -> Result<PointSet> {
        let set = PointSet { points, limit_points };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        let mut all = self.all();
        if let Some(first) = all.next() {
            let d = first.len();
            for v in self.all() {
                check_dim(d, v.len())?;
            }
        }
        for (i, a) in self.points.iter().enumerate() {
            if self.points[i + 1..].iter().any(|b| a == b) {
                return Err(Error::InvalidInput(format!("duplicate point {a:?}")));
            }
            if self.limit_points.contains(a) {
                return Err(Error::InvalidInput(format!(
                    "limit point {a:?} is also a member"
                )));
            }
        }
        Ok(())
    }

    /// Points followed by limit points.
    pub fn all(&self) -> impl Iterator<Item = &Vec<f64>> {
        self.points.iter().chain(self.limit_points.iter())
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.limit_points.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.all().next().map(|v| v.len())
    }
}

/// Validates a generator list and builds the cone.
pub fn make_cone(generators: Vec<Vec<f64>>) -> Result<Cone> {
    let Some(first) = generators.first() else {
        return Err(Error::EmptyGenerators);
    };
    let dim = first.len();
    if dim == 0 {
        return Err(Error::InvalidInput("zero-dimensional generator".into()));
    }
    for (i, g) in generators.iter().enumerate() {
        check_dim(dim, g.len())?;
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("generator {i} is not finite")));
        }
        if norm(g) == 0.0 {
            return Err(Error::ZeroGenerator(i));
        }
    }
    let cone = Cone { dim, generators };
    // A nontrivial vanishing nonnegative combination exists iff some -g is a
    // nonnegative combination of the generators.
    for (i, g) in cone.generators.iter().enumerate() {
        let neg: Vec<f64> = g.iter().map(|v| -v / norm(g)).collect();
        if cone_contains(&cone, &neg, 1e-9)? {
            return Err(Error::NotPointed(i));
        }
    }
    let r = rank(&columns(&cone.generators, dim), RANK_TOL);
    if r < dim {
        return Err(Error::DegenerateSpan { rank: r, dim });
    }
    Ok(cone)
}

/// Generators of `{x : <x, y> >= 0 for all y in c}`.
///
/// Dimension 1 and 2 are handled in closed form; dimensions `3..=MAX_DUAL_DIM`
/// enumerate facet normals over `(p-1)`-subsets of generators.
pub fn conjugate_cone(c: &Cone) -> Result<Cone> {
    let p = c.dim;
    let gens = match p {
        1 => vec![vec![c.generators[0][0].signum()]],
        2 => {
            let center = c.interior_direction();
            let angle = |g: &Vec<f64>| {
                let cr = center[0] * g[1] - center[1] * g[0];
                cr.atan2(dot(&center, g))
            };
            let lo = c
                .generators
                .iter()
                .min_by(|a, b| angle(a).total_cmp(&angle(b)))
                .unwrap();
            let hi = c
                .generators
                .iter()
                .max_by(|a, b| angle(a).total_cmp(&angle(b)))
                .unwrap();
            let (nl, nh) = (norm(lo), norm(hi));
            vec![vec![-lo[1] / nl, lo[0] / nl], vec![hi[1] / nh, -hi[0] / nh]]
        }
        _ if p <= MAX_DUAL_DIM => facet_normals(c),
        _ => return Err(Error::UnsupportedDimension { dim: p, max: MAX_DUAL_DIM }),
    };
    make_cone(gens)
}

fn facet_normals(c: &Cone) -> Vec<Vec<f64>> {
    let p = c.dim;
    let units: Vec<Vec<f64>> = c
        .generators
        .iter()
        .map(|g| g.iter().map(|v| v / norm(g)).collect())
        .collect();
    let m = units.len();
    let mut normals: Vec<Vec<f64>> = Vec::new();
    let mut subset: Vec<usize> = (0..p - 1).collect();
    loop {
        let rows: Vec<&[f64]> = subset.iter().map(|&i| units[i].as_slice()).collect();
        let n = cross(&rows, p);
        let nn = norm(&n);
        if nn > 1e-10 {
            let n: Vec<f64> = n.iter().map(|v| v / nn).collect();
            let ips: Vec<f64> = units.iter().map(|g| dot(&n, g)).collect();
            let oriented = if ips.iter().all(|&v| v >= -1e-10) {
                Some(n)
            } else if ips.iter().all(|&v| v <= 1e-10) {
                Some(n.iter().map(|v| -v).collect())
            } else {
                None
            };
            if let Some(n) = oriented {
                if !normals.iter().any(|q| norm(&sub(q, &n)) < 1e-9) {
                    normals.push(n);
                }
            }
        }
        // next (p-1)-combination of 0..m
        let k = p - 1;
        let mut i = k;
        while i > 0 && subset[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    normals
}

/// True iff `x` is within distance `tol` of the cone.
pub fn cone_contains(c: &Cone, x: &[f64], tol: f64) -> Result<bool> {
    check_dim(c.dim, x.len())?;
    if tol < 0.0 {
        return Err(Error::InvalidInput("negative tolerance".into()));
    }
    let xn = norm(x);
    if xn == 0.0 {
        return Ok(true);
    }
    let a = columns(&c.generators, c.dim);
    let b = nalgebra::DVector::from_column_slice(x);
    let (_, residual) = nnls(&a, &b);
    let floor = 1e-14 * (xn + 1.0);
    Ok(residual <= tol.max(floor))
}

/// `H_E(x) = max <x, lambda>` over points and limit points.
pub fn support_function(e: &PointSet, x: &[f64]) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    let mut any = false;
    for lambda in e.all() {
        check_dim(lambda.len(), x.len())?;
        let mut s = 0.0;
        for j in 0..x.len() {
            s += x[j] * lambda[j];
        }
        if s > best {
            best = s;
        }
        any = true;
    }
    if any {
        Ok(best)
    } else {
        Err(Error::EmptySet)
    }
}

/// True iff every point and limit point of `e` lies in `shift + c` within `tol`.
pub fn spectrum_in_shifted_cone(e: &PointSet, shift: &[f64], c: &Cone, tol: f64) -> Result<bool> {
    check_dim(c.dim, shift.len())?;
    for lambda in e.all() {
        check_dim(c.dim, lambda.len())?;
        if !cone_contains(c, &sub(lambda, shift), tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lexicographically smallest member `L` of points and limit points with
/// `e ⊂ L + c`, if any. Its existence is equivalent to linearity of the
/// support function of `e` on the negated conjugate cone.
pub fn support_linear_on_cone(e: &PointSet, c: &Cone) -> Result<Option<Vec<f64>>> {
    if e.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut best: Option<Vec<f64>> = None;
    for cand in e.all() {
        if spectrum_in_shifted_cone(e, cand, c, MEMBERSHIP_TOL)? {
            let better = match &best {
                None => true,
                Some(b) => lex_cmp(cand, b).is_lt(),
            };
            if better {
                best = Some(cand.clone());
            }
        }
    }
    Ok(best)
}
