//! Finite metric spaces with exact rational distance matrices.
//!
//! A space is validated once at construction (metric axioms, label
//! uniqueness) and immutable afterwards, so it can be shared freely.

use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricViolation {
    #[error("distance matrix is {rows}x{cols} but there are {labels} labels")]
    ShapeMismatch { rows: usize, cols: usize, labels: usize },
    #[error("duplicate label `{label}` at positions {first} and {second}")]
    DuplicateLabel { label: String, first: usize, second: usize },
    #[error("dist[{i}][{i}] must be 0")]
    NonzeroDiagonal { i: usize },
    #[error("dist[{i}][{j}] != dist[{j}][{i}]")]
    Asymmetry { i: usize, j: usize },
    #[error("dist[{i}][{j}] must be positive for distinct points")]
    NonpositiveOffDiagonal { i: usize, j: usize },
    #[error("triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("a space needs at least one point")]
    Empty,
}

/// Checks the metric axioms and returns the first violation in a fixed
/// scan order (shape, labels, diagonal, symmetry, positivity, triangle).
pub fn validate_matrix(labels: &[String], dist: &[Vec<Rational>]) -> Result<(), MetricViolation> {
    let n = labels.len();
    if n == 0 {
        return Err(MetricViolation::Empty);
    }
    if dist.len() != n {
        return Err(MetricViolation::ShapeMismatch { rows: dist.len(), cols: 0, labels: n });
    }
    for row in dist {
        if row.len() != n {
            return Err(MetricViolation::ShapeMismatch { rows: n, cols: row.len(), labels: n });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if labels[i] == labels[j] {
                return Err(MetricViolation::DuplicateLabel {
                    label: labels[i].clone(),
                    first: i,
                    second: j,
                });
            }
        }
    }
    for i in 0..n {
        if !dist[i][i].is_zero() {
            return Err(MetricViolation::NonzeroDiagonal { i });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if dist[i][j] != dist[j][i] {
                return Err(MetricViolation::Asymmetry { i, j });
            }
            if !dist[i][j].is_positive() {
                return Err(MetricViolation::NonpositiveOffDiagonal { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if dist[i][k] > &dist[i][j] + &dist[j][k] {
                    return Err(MetricViolation::TriangleViolation { i, j, k });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<Self, MetricViolation> {
        validate_matrix(&labels, &dist)?;
        Ok(Self { labels, dist })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn diam(&self) -> Rational {
        let mut best = Rational::zero();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.dist[i][j] > best {
                    best = self.dist[i][j].clone();
                }
            }
        }
        best
    }

    pub fn min_positive_distance(&self) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                match &best {
                    Some(b) if *b <= self.dist[i][j] => {}
                    _ => best = Some(self.dist[i][j].clone()),
                }
            }
        }
        best
    }

    /// Sorted distinct positive pairwise distances.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                out.push(self.dist[i][j].clone());
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Induced subspace on the given (distinct, in-range) indices.
    pub fn subspace(&self, indices: &[usize]) -> Result<FiniteMetricSpace, MetricViolation> {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let dist = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.dist[i][j].clone()).collect())
            .collect();
        FiniteMetricSpace::new(labels, dist)
    }

    /// Copy of this space with fresh labels (an isometric disjoint copy).
    pub fn relabeled(&self, prefix: &str) -> FiniteMetricSpace {
        let labels = (0..self.len()).map(|i| format!("{prefix}{i}")).collect();
        FiniteMetricSpace { labels, dist: self.dist.clone() }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SigmaError {
    #[error("sigma over the empty subset is rejected")]
    EmptySubset,
    #[error("subset index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subset index {0} repeated")]
    RepeatedIndex(usize),
}

fn check_subset(space: &FiniteMetricSpace, subset: &[usize]) -> Result<(), SigmaError> {
    if subset.is_empty() {
        return Err(SigmaError::EmptySubset);
    }
    let mut seen = vec![false; space.len()];
    for &i in subset {
        if i >= space.len() {
            return Err(SigmaError::IndexOutOfRange(i));
        }
        if seen[i] {
            return Err(SigmaError::RepeatedIndex(i));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Sum of d(a,b) over unordered pairs of `subset`, each pair counted once.
pub fn sigma(space: &FiniteMetricSpace, subset: &[usize]) -> Result<Rational, SigmaError> {
    check_subset(space, subset)?;
    let mut total = Rational::zero();
    for (p, &a) in subset.iter().enumerate() {
        for &b in &subset[p + 1..] {
            total += space.dist(a, b);
        }
    }
    Ok(total)
}

/// Unordered-pair sum of g(d(a,b)).
pub fn sigma_g(
    space: &FiniteMetricSpace,
    subset: &[usize],
    gauge: &MonotoneGauge,
) -> Result<Rational, SigmaError> {
    check_subset(space, subset)?;
    let mut total = Rational::zero();
    for (p, &a) in subset.iter().enumerate() {
        for &b in &subset[p + 1..] {
            total += gauge.eval(space.dist(a, b));
        }
    }
    Ok(total)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaugeError {
    #[error("power gauge needs exponent >= 1")]
    ZeroPower,
    #[error("piecewise gauge must start at (0, 0)")]
    NonzeroOrigin,
    #[error("piecewise gauge breakpoints must be strictly increasing")]
    NonIncreasingBreakpoints,
    #[error("piecewise gauge slopes must be strictly positive")]
    NonpositiveSlope,
}

/// Strictly increasing gauge with g(0) = 0, kept exact: integer powers
/// t^k or rational piecewise-linear functions (last slope extends to
/// infinity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonotoneGauge {
    Power(u32),
    PiecewiseLinear { points: Vec<(Rational, Rational)> },
}

impl MonotoneGauge {
    pub fn power(k: u32) -> Result<Self, GaugeError> {
        if k == 0 {
            return Err(GaugeError::ZeroPower);
        }
        Ok(MonotoneGauge::Power(k))
    }

    pub fn identity() -> Self {
        MonotoneGauge::Power(1)
    }

    /// `points` are (t, g(t)) breakpoints; the first must be (0, 0) and
    /// there must be at least two of them.
    pub fn piecewise_linear(points: Vec<(Rational, Rational)>) -> Result<Self, GaugeError> {
        if points.len() < 2 || !points[0].0.is_zero() || !points[0].1.is_zero() {
            return Err(GaugeError::NonzeroOrigin);
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(GaugeError::NonIncreasingBreakpoints);
            }
            if w[1].1 <= w[0].1 {
                return Err(GaugeError::NonpositiveSlope);
            }
        }
        Ok(MonotoneGauge::PiecewiseLinear { points })
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        match self {
            MonotoneGauge::Power(k) => {
                let mut out = Rational::from_integer(1.into());
                for _ in 0..*k {
                    out *= t;
                }
                out
            }
            MonotoneGauge::PiecewiseLinear { points } => {
                // locate the segment containing t; extend the last slope
                let seg = points
                    .windows(2)
                    .find(|w| *t <= w[1].0)
                    .unwrap_or_else(|| &points[points.len() - 2..]);
                let (x0, y0) = &seg[0];
                let (x1, y1) = &seg[1];
                let slope = (y1 - y0) / (x1 - x0);
                y0 + slope * (t - x0)
            }
        }
    }
}

/// On-disk space format: `{ "labels": [...], "dist": [["p/q", ...], ...] }`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SpaceFile {
    pub labels: Vec<String>,
    pub dist: Vec<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum SpaceFileError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dist[{row}][{col}]: {source}")]
    BadEntry {
        row: usize,
        col: usize,
        source: crate::rational::RationalParseError,
    },
    #[error("invalid metric: {0}")]
    Invalid(#[from] MetricViolation),
}

pub fn space_from_json(text: &str) -> Result<FiniteMetricSpace, SpaceFileError> {
    let file: SpaceFile = serde_json::from_str(text)?;
    let mut dist = Vec::with_capacity(file.dist.len());
    for (row, r) in file.dist.iter().enumerate() {
        let mut out = Vec::with_capacity(r.len());
        for (col, entry) in r.iter().enumerate() {
            out.push(
                parse_rational(entry)
                    .map_err(|source| SpaceFileError::BadEntry { row, col, source })?,
            );
        }
        dist.push(out);
    }
    Ok(FiniteMetricSpace::new(file.labels, dist)?)
}

pub fn space_to_json(space: &FiniteMetricSpace) -> String {
    let file = SpaceFile {
        labels: space.labels().to_vec(),
        dist: (0..space.len())
            .map(|i| (0..space.len()).map(|j| format_rational(space.dist(i, j))).collect())
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("space serialization");
    out.push('\n');
    out
}
