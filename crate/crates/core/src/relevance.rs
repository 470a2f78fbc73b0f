//! Intrinsic vertex relevance and the relevance functions that combine it.
//!
//! Pairwise functions depend only on the two ends of a path. Path functions
//! (`PathSum`, `PathProduct`) fold the relevance of every vertex on the path,
//! endpoints included. A [`FMatrix`] gives an explicit, possibly asymmetric,
//! value for every ordered pair.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Per-vertex relevance, indexed by internal vertex index. All entries are
/// strictly positive and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct RelevanceVector(Vec<f64>);

impl RelevanceVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((i, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::InvalidRelevance {
                label: i.to_string(),
                value,
            });
        }
        Ok(Self(values))
    }

    /// Classic case: every vertex has relevance 1.
    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> f64 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Multiplies every relevance by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|r| r * c).collect())
    }

    /// True when every entry equals 1.
    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&r| r == 1.0)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::RelevanceLength {
                expected: n,
                got: self.0.len(),
            })
        }
    }
}

/// Dense square table of `f(s, t)` values indexed by internal vertex index.
#[derive(Debug, Clone, PartialEq)]
pub struct FMatrix {
    n: usize,
    data: Vec<f64>,
}

impl FMatrix {
    /// Builds a matrix from rows. Rows must form a square table of finite,
    /// non-negative values. The diagonal is checked by
    /// [`RelevanceFunction::validate`] and by the CSV loader.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::MatrixShapeMismatch(format!(
                    "row {i} has {} columns, expected {n}",
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::MatrixShapeMismatch(format!(
                    "row {i} contains {v}; entries must be finite and non-negative"
                )));
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> f64 {
        self.data[s * self.n + t]
    }

    /// First nonzero diagonal entry, if any.
    pub fn nonzero_diagonal(&self) -> Option<(usize, f64)> {
        (0..self.n)
            .map(|i| (i, self.get(i, i)))
            .find(|(_, v)| *v != 0.0)
    }
}

/// The constitutive function `f(R_s, R_t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum RelevanceFunction {
    /// `R_s * R_t`
    Product,
    /// `(R_s + R_t) / 2`
    Mean,
    /// `R_s`
    SourceOnly,
    /// `max(R_s, R_t)`
    Max,
    /// Sum of relevance over every vertex of the path.
    PathSum,
    /// Product of relevance over every vertex of the path.
    PathProduct,
    /// Explicit `F[s][t]`.
    Matrix(Arc<FMatrix>),
}

impl RelevanceFunction {
    /// The six built-in functions.
    pub const BUILT_IN: [RelevanceFunction; 6] = [
        RelevanceFunction::Product,
        RelevanceFunction::Mean,
        RelevanceFunction::SourceOnly,
        RelevanceFunction::Max,
        RelevanceFunction::PathSum,
        RelevanceFunction::PathProduct,
    ];

    /// The four built-in functions that only look at path endpoints.
    pub const PAIRWISE_BUILT_IN: [RelevanceFunction; 4] = [
        RelevanceFunction::Product,
        RelevanceFunction::Mean,
        RelevanceFunction::SourceOnly,
        RelevanceFunction::Max,
    ];

    pub fn matrix(m: FMatrix) -> Self {
        RelevanceFunction::Matrix(Arc::new(m))
    }

    pub fn name(&self) -> &'static str {
        match self {
            RelevanceFunction::Product => "product",
            RelevanceFunction::Mean => "mean",
            RelevanceFunction::SourceOnly => "source",
            RelevanceFunction::Max => "max",
            RelevanceFunction::PathSum => "path-sum",
            RelevanceFunction::PathProduct => "path-prod",
            RelevanceFunction::Matrix(_) => "matrix",
        }
    }

    pub fn is_path_dependent(&self) -> bool {
        matches!(
            self,
            RelevanceFunction::PathSum | RelevanceFunction::PathProduct
        )
    }

    /// Pairwise evaluation without bounds or variant checks. Path variants
    /// fall back to their two-vertex path value.
    #[inline]
    pub(crate) fn pair_unchecked(&self, s: usize, t: usize, r: &[f64]) -> f64 {
        let (rs, rt) = (r[s], r[t]);
        match self {
            RelevanceFunction::Product | RelevanceFunction::PathProduct => rs * rt,
            RelevanceFunction::Mean => (rs + rt) / 2.0,
            RelevanceFunction::SourceOnly => rs,
            RelevanceFunction::Max => rs.max(rt),
            RelevanceFunction::PathSum => rs + rt,
            RelevanceFunction::Matrix(m) => m.get(s, t),
        }
    }

    fn check_index(&self, v: usize, r: &RelevanceVector) -> Result<()> {
        let len = match self {
            RelevanceFunction::Matrix(m) => m.dim().min(r.len()),
            _ => r.len(),
        };
        if v < len {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { index: v, len })
        }
    }

    /// `f(R_s, R_t)` for a pairwise variant.
    pub fn eval_pair(&self, s: usize, t: usize, r: &RelevanceVector) -> Result<f64> {
        if self.is_path_dependent() {
            return Err(Error::PathVariantRequiresPath(self.name()));
        }
        if s == t {
            return Err(Error::DiagonalQuery(s));
        }
        self.check_index(s, r)?;
        self.check_index(t, r)?;
        Ok(self.pair_unchecked(s, t, r.as_slice()))
    }

    /// Value of `f` along an explicit path `s, ..., t`. Pairwise variants use
    /// the endpoints only.
    pub fn eval_path(&self, path: &[usize], r: &RelevanceVector) -> Result<f64> {
        if path.len() < 2 {
            return Err(Error::EmptyPath(path.len()));
        }
        for &v in path {
            self.check_index(v, r)?;
        }
        let rv = r.as_slice();
        Ok(match self {
            RelevanceFunction::PathSum => path.iter().map(|&v| rv[v]).sum(),
            RelevanceFunction::PathProduct => path.iter().map(|&v| rv[v]).product(),
            _ => {
                let (s, t) = (path[0], path[path.len() - 1]);
                if s == t {
                    return Err(Error::DiagonalQuery(s));
                }
                self.pair_unchecked(s, t, rv)
            }
        })
    }

    /// Checks the two conditions a relevance function should meet: `f(1,1) = 1`
    /// and monotonicity, sampled on `{0.5, 1, 2, 4}²`. Violations are reported
    /// as warnings. Matrices are checked for shape (against `vertex_count`
    /// when given) and a zero diagonal, which are hard errors.
    pub fn validate(&self, vertex_count: Option<usize>) -> Result<ValidationReport> {
        if let RelevanceFunction::Matrix(m) = self {
            if let Some(n) = vertex_count {
                if m.dim() != n {
                    return Err(Error::MatrixShapeMismatch(format!(
                        "matrix is {0}x{0}, graph has {n} vertices",
                        m.dim()
                    )));
                }
            }
            if let Some((i, v)) = m.nonzero_diagonal() {
                return Err(Error::MatrixShapeMismatch(format!(
                    "diagonal entry ({i},{i}) is {v}, expected 0"
                )));
            }
            let symmetric = (0..m.dim()).all(|s| (0..s).all(|t| m.get(s, t) == m.get(t, s)));
            return Ok(ValidationReport {
                normalized: None,
                monotone: None,
                symmetric,
                warnings: vec![
                    "matrix entries are taken as given; normalization and monotonicity are not checked"
                        .to_owned(),
                ],
            });
        }

        let mut warnings = Vec::new();
        let unit = RelevanceVector::ones(4);
        let normalized = match self {
            RelevanceFunction::PathSum | RelevanceFunction::PathProduct => {
                // a pair of vertices and a three-vertex path
                let two = self.eval_path(&[0, 1], &unit)?;
                let three = self.eval_path(&[0, 1, 2], &unit)?;
                two == 1.0 && three == 1.0
            }
            _ => self.eval_pair(0, 1, &unit)? == 1.0,
        };
        if !normalized {
            warnings.push(format!(
                "{}: normalization f(1,1)=1 is not guaranteed for paths with more than two vertices",
                self.name()
            ));
        }

        const GRID: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
        let eval = |rs: f64, rt: f64| -> Result<f64> {
            let r = RelevanceVector::new(vec![rs, rt])?;
            self.eval_path(&[0, 1], &r)
        };
        let mut monotone = true;
        let mut symmetric = true;
        for (i, &a) in GRID.iter().enumerate() {
            for (j, &b) in GRID.iter().enumerate() {
                let here = eval(a, b)?;
                if i + 1 < GRID.len() && eval(GRID[i + 1], b)? < here {
                    monotone = false;
                }
                if j + 1 < GRID.len() && eval(a, GRID[j + 1])? < here {
                    monotone = false;
                }
                if eval(b, a)? != here {
                    symmetric = false;
                }
            }
        }
        if !monotone {
            warnings.push(format!("{}: not monotonically non-decreasing", self.name()));
        }
        Ok(ValidationReport {
            normalized: Some(normalized),
            monotone: Some(monotone),
            symmetric,
            warnings,
        })
    }
}

impl fmt::Display for RelevanceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelevanceFunction {
    type Err = Error;

    /// Parses a built-in selector. Matrices are loaded from files, see
    /// [`crate::io::load_f_matrix_csv`].
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "product" => RelevanceFunction::Product,
            "mean" => RelevanceFunction::Mean,
            "source" => RelevanceFunction::SourceOnly,
            "max" => RelevanceFunction::Max,
            "path-sum" => RelevanceFunction::PathSum,
            "path-prod" => RelevanceFunction::PathProduct,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown relevance function {other:?}"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// Whether `f(1, ..., 1) = 1`. `None` for matrices.
    pub normalized: Option<bool>,
    /// Whether sampled monotonicity holds. `None` for matrices.
    pub monotone: Option<bool>,
    pub symmetric: bool,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.warnings.is_empty()
    }
}
