//! Run configuration: `{"function", "cone", "analysis", "output"}`.
//!
//! ```json
//! {
//!   "function": {"dimension": 1, "terms": [{"lambda": [0], "re": 1, "im": 0},
//!                                         {"lambda": [1], "re": 1, "im": 0}]},
//!   "cone": {"generators": [[1]]},
//!   "analysis": {"y": [1], "S": 10000},
//!   "output": {"format": "json"}
//! }
//! ```
//!
//! Unknown keys are rejected. `cone` defaults to the nonnegative orthant.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::expsum::ExpSum;
use crate::jessen::QuadParams;
use crate::zeros::Rect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Analysis parameters. Absent fields take the documented defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clip: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grad_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y1: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y2: Option<Vec<f64>>,
    /// Finite-difference step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(rename = "R_schedule", skip_serializing_if = "Option::is_none")]
    pub r_schedule: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_probes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_budget: Option<usize>,
    /// `density`, `count`, `tail` or `value` for the zeros command.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Rect>,
    /// Complex targets as `[re, im]` pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_points: Option<Vec<Vec<f64>>>,
    /// Mollifier width.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    /// Gauss–Hermite nodes per axis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_list: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_list: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_targets: Option<usize>,
}

impl Analysis {
    /// Fields set in `over` replace those in `self`.
    pub fn overlay(mut self, over: &Analysis) -> Analysis {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f.clone(); } )* };
        }
        take!(
            s, n_samples, seed, clip, grad_tol, y, y1, y2, h, r_schedule, r_max, x_probes, q, line_budget, mode,
            window, targets, base_points, width, nodes, t_list, q_list, n_targets
        );
        self
    }

    /// Quadrature parameters with defaults filled in; the filled values are
    /// written back so reports echo them.
    pub fn quad(&mut self) -> QuadParams {
        let d = QuadParams::default();
        QuadParams {
            s: *self.s.get_or_insert(d.s),
            n_samples: *self.n_samples.get_or_insert(d.n_samples),
            seed: *self.seed.get_or_insert(d.seed),
            clip: *self.clip.get_or_insert(d.clip),
            grad_tol: *self.grad_tol.get_or_insert(d.grad_tol),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub function: ExpSum,
    #[serde(default)]
    pub cone: Option<Cone>,
    #[serde(default)]
    pub analysis: Analysis,
    #[serde(default)]
    pub output: OutputSpec,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::InvalidInput(format!("config error at `{path}`: {}", e.into_inner()))
        })
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn cone(&self) -> Cone {
        self.cone.clone().unwrap_or_else(|| Cone::orthant(self.function.dim()))
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(c) = &self.cone {
            crate::error::check_dim(self.function.dim(), c.dim())?;
        }
        Ok(())
    }
}
