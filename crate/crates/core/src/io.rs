//! JSON problem and pair files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cones::{BlockSpec, ProductCone};
use crate::error::{Error, Result};
use crate::ipm::{ConicProblem, SolveOptions};
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub s: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FileOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adaptive: Option<bool>,
}

impl FileOptions {
    pub fn apply(&self, options: &mut SolveOptions) {
        if let Some(eps) = self.eps {
            options.eps = eps;
        }
        if let Some(trace) = self.trace {
            options.trace = trace;
        }
        if let Some(adaptive) = self.adaptive {
            options.adaptive = adaptive;
        }
    }
}

/// `min <c, x>` s.t. `A x = b`, `x` in the product of `blocks`, with `A` as dense rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub blocks: Vec<BlockSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<StartPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<FileOptions>,
}

fn dense_rows(rows: &[Vec<f64>], ncols: usize) -> Result<Matrix> {
    for row in rows {
        if row.len() != ncols {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                got: row.len(),
            });
        }
    }
    Ok(Matrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

fn vector(v: &[f64]) -> Vector {
    Vector::from_column_slice(v)
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("problem file: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&read(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    pub fn from_problem(problem: &ConicProblem, start: Option<(&Vector, &Vector, &Vector)>) -> Self {
        let a = &problem.a;
        Self {
            a: (0..a.nrows())
                .map(|i| a.row(i).iter().copied().collect())
                .collect(),
            b: problem.b.iter().copied().collect(),
            c: problem.c.iter().copied().collect(),
            blocks: problem.cone.specs(),
            start: start.map(|(x, y, s)| StartPoint {
                x: x.iter().copied().collect(),
                y: y.iter().copied().collect(),
                s: s.iter().copied().collect(),
            }),
            options: None,
        }
    }

    /// Validates dimensions and the rank of `A`.
    pub fn problem(&self) -> Result<ConicProblem> {
        let a = dense_rows(&self.a, self.c.len())?;
        ConicProblem::new(a, vector(&self.b), vector(&self.c), self.blocks.clone())
    }

    /// The start point as vectors, checked against the problem dimensions.
    pub fn start_vectors(&self, problem: &ConicProblem) -> Result<(Vector, Vector, Vector)> {
        let start = self
            .start
            .as_ref()
            .ok_or_else(|| Error::Invalid("problem file has no start point".into()))?;
        let n = problem.cone.dim();
        let m = problem.a.nrows();
        for (len, expected) in [(start.x.len(), n), (start.y.len(), m), (start.s.len(), n)] {
            if len != expected {
                return Err(Error::DimensionMismatch { expected, got: len });
            }
        }
        Ok((vector(&start.x), vector(&start.y), vector(&start.s)))
    }
}

/// A primal-dual pair over a product cone, for certification and conjugate evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFile {
    pub blocks: Vec<BlockSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    pub s: Vec<f64>,
}

impl PairFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("pair file: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&read(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pair files always serialize")
    }

    pub fn cone(&self) -> Result<ProductCone> {
        let cone = ProductCone::new(self.blocks.clone())?;
        if self.s.len() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: cone.dim(),
                got: self.s.len(),
            });
        }
        if let Some(x) = &self.x {
            if x.len() != cone.dim() {
                return Err(Error::DimensionMismatch {
                    expected: cone.dim(),
                    got: x.len(),
                });
            }
        }
        Ok(cone)
    }

    pub fn s_vector(&self) -> Vector {
        vector(&self.s)
    }

    pub fn x_vector(&self) -> Result<Vector> {
        self.x
            .as_deref()
            .map(vector)
            .ok_or_else(|| Error::Invalid("pair file has no x".into()))
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}
