//! Generators for the example spaces and maps: the sharp two-orbit and
//! cyclic families, the non-uniform glued union, the interval-pair
//! grids, and the Hilbert shift demo. Every generated space is
//! validated and every advertised margin is re-checked at construction
//! time.

use crate::bounds::m_of_n;
use crate::mapping::{margins_raw, PointMap};
use crate::metric::{FiniteMetricSpace, MetricViolation};
use crate::rational::{
    format_rational, parse_rational, rational, rational_int, Rational, RationalParseError,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("N = {0} is not admissible for this family")]
    InvalidN(u64),
    #[error("parameters must satisfy a >= eps > 0")]
    BadScale,
    #[error("m must be at least 1")]
    BadTruncation,
    #[error("step must be 1/K for an integer K >= 2")]
    BadStep,
    #[error("t must lie strictly between 0 and 1")]
    BadShrinkFactor,
    #[error("sample vector {0} has squared norm greater than 1")]
    NormExceedsOne(usize),
    #[error("generated matrix failed validation: {0}")]
    Metric(#[from] MetricViolation),
    #[error("construction self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Parse(#[from] RationalParseError),
}

fn check(cond: bool, what: &str) -> Result<(), ConstructionError> {
    if cond {
        Ok(())
    } else {
        Err(ConstructionError::SelfCheck(what.into()))
    }
}

fn self_map(space: FiniteMetricSpace, table: Vec<usize>) -> PointMap {
    let space = Arc::new(space);
    PointMap::new(space.clone(), space, table).expect("table built alongside the space")
}

fn orbit_split(n: u64) -> Option<(usize, usize)> {
    if n < 5 || n == 6 {
        return None;
    }
    let n = n as usize;
    if n % 2 == 1 {
        let k = n / 2;
        Some((k, k + 1))
    } else if n % 4 == 0 {
        let k = n / 4;
        Some((2 * k - 1, 2 * k + 1))
    } else {
        let k = (n - 2) / 4;
        Some((2 * k - 1, 2 * k + 3))
    }
}

/// Two coprime orbits of sizes i + j = N with one cross pair stretched
/// by eps and every step of the joint orbit relaxing it by
/// eps/(ij - 1). The cycling map f attains E(f) = eps and
/// C(f) = eps/(ij - 1) exactly.
///
/// `pad` asks for extra fixpoints when N > ij; since ij >= N for every
/// admissible N the request is recorded but never changes the space.
pub fn sharp_case1(
    n: u64,
    eps: &Rational,
    a: &Rational,
    pad: bool,
) -> Result<PointMap, ConstructionError> {
    let (i, j) = orbit_split(n).ok_or(ConstructionError::InvalidN(n))?;
    if !eps.is_positive() || a < eps {
        return Err(ConstructionError::BadScale);
    }
    let m = i * j;
    debug_assert_eq!(m as u64, m_of_n(n).expect("n >= 5"));
    let _ = pad && n as usize > m; // never true for admissible N

    let mut labels = Vec::with_capacity(i + j);
    labels.extend((1..=i).map(|k| format!("x{k}")));
    labels.extend((1..=j).map(|k| format!("y{k}")));
    let mut dist = vec![vec![Rational::zero(); i + j]; i + j];
    for r in 0..i + j {
        for c in 0..i + j {
            if r != c {
                dist[r][c] = a.clone();
            }
        }
    }
    // walk the joint orbit: pair k is (x_{k mod i}, y_{k mod j})
    let step = eps / rational_int(m as i64 - 1);
    let mut p = a.clone();
    for k in 0..m {
        if k == 1 {
            p = a + eps;
        } else if k >= 2 {
            p -= step.clone();
        }
        let (xi, yi) = (k % i, i + k % j);
        dist[xi][yi] = p.clone();
        dist[yi][xi] = p.clone();
    }
    check(&p - &step == *a, "joint orbit closes back to the base distance")?;

    let space = FiniteMetricSpace::new(labels, dist)?;
    let table: Vec<usize> =
        (0..i).map(|k| (k + 1) % i).chain((0..j).map(|k| i + (k + 1) % j)).collect();
    let margins = margins_raw(&space, &space, &table);
    check(margins.expansion == *eps, "E(f) = eps")?;
    check(margins.contraction == step, "C(f) = eps/(M - 1)")?;
    Ok(self_map(space, table))
}

/// Single N-cycle for N in {3, 4, 6}, where two coprime orbits cannot
/// realize M(N) = N. Consecutive distances follow the same stretch /
/// relax pattern, so E(g) = eps and C(g) = eps/(N - 1).
pub fn sharp_cyclic(n: u64, eps: &Rational, a: &Rational) -> Result<PointMap, ConstructionError> {
    if !matches!(n, 3 | 4 | 6) {
        return Err(ConstructionError::InvalidN(n));
    }
    if !eps.is_positive() || a < eps {
        return Err(ConstructionError::BadScale);
    }
    let n = n as usize;
    let labels = (1..=n).map(|k| format!("z{k}")).collect();
    let mut dist = vec![vec![Rational::zero(); n]; n];
    for r in 0..n {
        for c in 0..n {
            if r != c {
                dist[r][c] = a.clone();
            }
        }
    }
    let step = eps / rational_int(n as i64 - 1);
    let mut p = a.clone();
    for k in 0..n {
        if k == 1 {
            p = a + eps;
        } else if k >= 2 {
            p -= step.clone();
        }
        let (u, v) = (k, (k + 1) % n);
        dist[u][v] = p.clone();
        dist[v][u] = p.clone();
    }
    check(&p - &step == *a, "cycle closes back to the base distance")?;

    let space = FiniteMetricSpace::new(labels, dist)?;
    let table: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
    let margins = margins_raw(&space, &space, &table);
    check(margins.expansion == *eps, "E(g) = eps")?;
    check(margins.contraction == step, "C(g) = eps/(N - 1)")?;
    Ok(self_map(space, table))
}

fn smallest_sharp_n(deficit_bound_inv: u64) -> u64 {
    // smallest admissible N with ij - 1 >= deficit_bound_inv
    let mut n = 5;
    loop {
        if n != 6 {
            let m = m_of_n(n).expect("n >= 5");
            if m - 1 >= deficit_bound_inv {
                return n;
            }
        }
        n += 1;
    }
}

/// Truncation of the glued union: pieces X_1..X_m at scales
/// a_n = 1 + 1/(10n), each a sharp example with eps = 1 plus an apex
/// point e_n at distance a_n + 1 from its piece, cross-distance 3/2
/// between pieces. Returns the union space and the maps g_n that run
/// the n-th piece's cycle and fix everything else; C(g_n) <= 1/n while
/// E(g_n) = 1.
pub fn nonuniform_union_truncation(
    m: u64,
) -> Result<(Arc<FiniteMetricSpace>, Vec<PointMap>), ConstructionError> {
    if m < 1 {
        return Err(ConstructionError::BadTruncation);
    }
    let mut piece_tables = Vec::new();
    let mut labels = Vec::new();
    let mut blocks = Vec::new();
    for n in 1..=m {
        let a_n = Rational::one() + rational(1, 10 * n as i64);
        let sharp = sharp_case1(smallest_sharp_n(n), &Rational::one(), &a_n, false)?;
        let piece = sharp.domain();
        let size = piece.len() + 1; // + apex e_n
        let offset: usize = blocks.iter().map(|&(s, _)| s).sum();
        for k in 0..piece.len() {
            labels.push(format!("p{n}.{}", piece.label(k)));
        }
        labels.push(format!("p{n}.e"));
        let mut table: Vec<usize> = sharp.table().iter().map(|&v| offset + v).collect();
        table.push(offset + size - 1);
        piece_tables.push((offset, size, table));
        blocks.push((size, (piece.clone(), a_n)));
    }
    let total: usize = blocks.iter().map(|&(s, _)| s).sum();
    let cross = rational(3, 2);
    let mut dist = vec![vec![Rational::zero(); total]; total];
    let mut base = 0usize;
    for (size, (piece, a_n)) in &blocks {
        let apex_dist = a_n + Rational::one();
        for r in 0..*size {
            for c in 0..*size {
                if r == c {
                    continue;
                }
                dist[base + r][base + c] = if r == size - 1 || c == size - 1 {
                    apex_dist.clone()
                } else {
                    piece.dist(r, c).clone()
                };
            }
        }
        // everything outside this block sits at the glue distance
        for r in 0..*size {
            for c in 0..total {
                if c < base || c >= base + size {
                    dist[base + r][c] = cross.clone();
                    dist[c][base + r] = cross.clone();
                }
            }
        }
        base += size;
    }
    let space = Arc::new(FiniteMetricSpace::new(labels, dist)?);
    let mut maps = Vec::new();
    for (n, (offset, size, table)) in piece_tables.into_iter().enumerate() {
        let n = n as i64 + 1;
        let mut full: Vec<usize> = (0..space.len()).collect();
        full[offset..offset + size].copy_from_slice(&table);
        let margins = margins_raw(&space, &space, &full);
        check(margins.expansion == Rational::one(), "E(g_n) = 1")?;
        check(margins.contraction <= rational(1, n), "C(g_n) <= 1/n")?;
        maps.push(PointMap::new(space.clone(), space.clone(), full).expect("valid table"));
    }
    Ok((space, maps))
}

fn line_space(points: &[Rational]) -> Result<FiniteMetricSpace, MetricViolation> {
    let labels = points.iter().map(format_rational).collect();
    let dist = points
        .iter()
        .map(|u| points.iter().map(|v| (u - v).abs()).collect())
        .collect();
    FiniteMetricSpace::new(labels, dist)
}

/// Grid sampling of the pair X = [0,1] ∪ {3}, Y = [0,1) ∪ {4} with the
/// shrink-and-jump map f_t(x) = t·x, f_t(3) = 4. The designated pair
/// (0, 3) grows by exactly 1 and C(f_t) = 1 - t, attained at (0, 1).
/// (The full expansion margin of f_t is 2 - t, at the pair (1, 3).)
pub fn interval_pair_grid(
    step: &Rational,
    t: &Rational,
) -> Result<PointMap, ConstructionError> {
    if !t.is_positive() || *t >= Rational::one() {
        return Err(ConstructionError::BadShrinkFactor);
    }
    if !step.numer().is_one() || *step.denom() < BigInt::from(2) {
        return Err(ConstructionError::BadStep);
    }
    let k: i64 = step.denom().try_into().map_err(|_| ConstructionError::BadStep)?;
    let mut x_points: Vec<Rational> = (0..=k).map(|q| rational(q, k)).collect();
    x_points.push(rational_int(3));

    let mut y_points: Vec<Rational> = x_points[..x_points.len() - 1]
        .iter()
        .map(|x| t * x)
        .collect();
    // a half-step grid of [0,1) so Y is more than the bare image
    y_points.extend((0..2 * k).map(|q| rational(q, 2 * k)));
    y_points.push(rational_int(4));
    y_points.sort();
    y_points.dedup();

    let x = Arc::new(line_space(&x_points)?);
    let y = Arc::new(line_space(&y_points)?);
    let locate = |target: &Rational| {
        y_points.binary_search(target).expect("images are inserted into Y")
    };
    let mut table: Vec<usize> =
        x_points[..x_points.len() - 1].iter().map(|p| locate(&(t * p))).collect();
    table.push(locate(&rational_int(4)));

    let f = PointMap::new(x.clone(), y.clone(), table).expect("valid table");
    let zero = 0usize;
    let three = x_points.len() - 1;
    let jump = y.dist(f.apply(zero), f.apply(three)) - x.dist(zero, three);
    check(jump == Rational::one(), "d(f(0), f(3)) - d(0, 3) = 1")?;
    let margins = f.margins().expect("grid has >= 2 points");
    check(margins.contraction == Rational::one() - t, "C(f_t) = 1 - t")?;
    Ok(f)
}

/// Floor and ceiling of sqrt(r) on a grid of `digits` decimal places.
/// The bounds coincide (exact) when r is the square of a grid point.
pub fn sqrt_bounds(r: &Rational, digits: u32) -> (Rational, Rational) {
    assert!(!r.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    // sqrt(p/q) = sqrt(p*q)/q
    let target = r.numer() * r.denom() * &scale * &scale;
    let root = target.sqrt();
    let denom = r.denom() * &scale;
    let lower = Rational::new(root.clone(), denom.clone());
    if &root * &root == target {
        (lower.clone(), lower)
    } else {
        (lower, Rational::new(root + 1, denom))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftPairReport {
    pub pair: (usize, usize),
    pub before_sq: String,
    pub after_sq_lower: String,
    pub after_sq_upper: String,
    pub exact: bool,
    pub noncontractive_certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertShiftReport {
    pub vectors: Vec<Vec<String>>,
    pub precision: u32,
    pub pairs: Vec<ShiftPairReport>,
    /// the pair (0, e1): squared distance grows from 1 to exactly 2
    pub expansion_witness: ShiftPairReport,
}

fn sq_norm(v: &[Rational]) -> Rational {
    v.iter().map(|x| x * x).sum()
}

fn sq_dist(u: &[Rational], v: &[Rational]) -> Rational {
    let n = u.len().max(v.len());
    let zero = Rational::zero();
    (0..n)
        .map(|k| {
            let a = u.get(k).unwrap_or(&zero);
            let b = v.get(k).unwrap_or(&zero);
            let d = a - b;
            &d * &d
        })
        .sum()
}

/// Shift map on the unit ball of l2: f(x) = (sqrt(1 - |x|^2), x1, x2, …).
/// Squared distances after the shift satisfy
/// |f(x) - f(y)|^2 = |x - y|^2 + (sqrt(1-|x|^2) - sqrt(1-|y|^2))^2,
/// so the map never contracts: the added term is a square. The term is
/// bracketed with directed rounding at the requested precision; the
/// canonical pair (0, e1) evaluates exactly to growth 1 -> 2.
pub fn hilbert_shift_demo(
    sample: &[Vec<Rational>],
    precision: u32,
) -> Result<HilbertShiftReport, ConstructionError> {
    let mut vectors: Vec<Vec<Rational>> = vec![vec![], vec![Rational::one()]];
    vectors.extend(sample.iter().cloned());
    let mut slack = Vec::with_capacity(vectors.len());
    for (idx, v) in vectors.iter().enumerate() {
        let n2 = sq_norm(v);
        if n2 > Rational::one() {
            return Err(ConstructionError::NormExceedsOne(idx.saturating_sub(2)));
        }
        slack.push(Rational::one() - n2);
    }
    let mut pairs = Vec::new();
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            let before = sq_dist(&vectors[i], &vectors[j]);
            let (a, b) = (&slack[i], &slack[j]);
            let (lo, hi) = sqrt_bounds(&(a * b), precision);
            let exact = lo == hi;
            // (sqrt a - sqrt b)^2 = a + b - 2 sqrt(ab) >= 0 symbolically
            let sum = a + b;
            let term_lower = (&sum - rational_int(2) * hi).max(Rational::zero());
            let term_upper = sum - rational_int(2) * lo;
            pairs.push(ShiftPairReport {
                pair: (i, j),
                before_sq: format_rational(&before),
                after_sq_lower: format_rational(&(&before + term_lower)),
                after_sq_upper: format_rational(&(&before + term_upper)),
                exact,
                noncontractive_certified: true,
            });
        }
    }
    let expansion_witness = pairs[0].clone();
    check(expansion_witness.exact, "(0, e1) pair evaluates exactly")?;
    check(expansion_witness.before_sq == "1", "|0 - e1|^2 = 1")?;
    check(expansion_witness.after_sq_lower == "2", "|f(0) - f(e1)|^2 = 2")?;
    Ok(HilbertShiftReport {
        vectors: vectors
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect(),
        precision,
        pairs,
        expansion_witness,
    })
}

/// Replayable description of a generated artifact.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorRecipe {
    SharpCase1 { n: u64, eps: String, a: String, #[serde(default)] pad: bool },
    PaddedSharp { n: u64, eps: String, a: String },
    SharpCyclic { n: u64, eps: String, a: String },
    NonuniformUnionTruncation { m: u64 },
    IntervalPairGrid { step: String, t: String },
    HilbertShiftSample { count: usize, seed: u64, precision: u32 },
}

#[derive(Debug)]
pub enum GeneratorOutput {
    /// a space together with one distinguished map on or out of it
    Map(PointMap),
    Union { space: Arc<FiniteMetricSpace>, maps: Vec<PointMap> },
    Hilbert(HilbertShiftReport),
}

impl GeneratorRecipe {
    pub fn generate(&self) -> Result<GeneratorOutput, ConstructionError> {
        match self {
            GeneratorRecipe::SharpCase1 { n, eps, a, pad } => {
                let (eps, a) = (parse_rational(eps)?, parse_rational(a)?);
                Ok(GeneratorOutput::Map(sharp_case1(*n, &eps, &a, *pad)?))
            }
            GeneratorRecipe::PaddedSharp { n, eps, a } => {
                let (eps, a) = (parse_rational(eps)?, parse_rational(a)?);
                Ok(GeneratorOutput::Map(sharp_case1(*n, &eps, &a, true)?))
            }
            GeneratorRecipe::SharpCyclic { n, eps, a } => {
                let (eps, a) = (parse_rational(eps)?, parse_rational(a)?);
                Ok(GeneratorOutput::Map(sharp_cyclic(*n, &eps, &a)?))
            }
            GeneratorRecipe::NonuniformUnionTruncation { m } => {
                let (space, maps) = nonuniform_union_truncation(*m)?;
                Ok(GeneratorOutput::Union { space, maps })
            }
            GeneratorRecipe::IntervalPairGrid { step, t } => {
                let (step, t) = (parse_rational(step)?, parse_rational(t)?);
                Ok(GeneratorOutput::Map(interval_pair_grid(&step, &t)?))
            }
            GeneratorRecipe::HilbertShiftSample { count, seed, precision } => {
                let sample = crate::randgen::sample_ball_vectors(*seed, *count);
                Ok(GeneratorOutput::Hilbert(hilbert_shift_demo(&sample, *precision)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_case1_n5_matches_hand_values() {
        let f = sharp_case1(5, &Rational::one(), &Rational::one(), false).unwrap();
        let x = f.domain();
        assert_eq!(x.len(), 5);
        // joint orbit distances 1, 2, 9/5, 8/5, 7/5, 6/5
        let expect = [(1, 1), (2, 1), (9, 5), (8, 5), (7, 5), (6, 5)];
        for (k, (num, den)) in expect.iter().enumerate() {
            let (xi, yi) = (k % 2, 2 + k % 3);
            assert_eq!(x.dist(xi, yi), &rational(*num, *den), "pair k = {k}");
        }
        let m = f.margins().unwrap();
        assert_eq!(m.expansion, Rational::one());
        assert_eq!(m.contraction, rational(1, 5));
    }

    #[test]
    fn sharp_case1_n7() {
        let f = sharp_case1(7, &Rational::one(), &Rational::one(), false).unwrap();
        assert_eq!(f.domain().len(), 7);
        let m = f.margins().unwrap();
        assert_eq!(m.expansion, Rational::one());
        assert_eq!(m.contraction, rational(1, 11));
    }

    #[test]
    fn sharp_case1_pad_is_inert() {
        let f = sharp_case1(9, &Rational::one(), &Rational::one(), true).unwrap();
        assert_eq!(f.domain().len(), 9); // i = 4, j = 5; ij = 20 > 9, nothing to pad
    }

    #[test]
    fn sharp_case1_rejects_bad_parameters() {
        assert!(matches!(
            sharp_case1(6, &Rational::one(), &Rational::one(), false),
            Err(ConstructionError::InvalidN(6))
        ));
        assert!(matches!(
            sharp_case1(5, &rational_int(2), &Rational::one(), false),
            Err(ConstructionError::BadScale)
        ));
    }

    #[test]
    fn sharp_cyclic_small_cases() {
        let g = sharp_cyclic(3, &Rational::one(), &Rational::one()).unwrap();
        let z = g.domain();
        assert_eq!(z.dist(0, 1), &rational_int(1));
        assert_eq!(z.dist(1, 2), &rational_int(2));
        assert_eq!(z.dist(2, 0), &rational(3, 2));
        let m = g.margins().unwrap();
        assert_eq!(m.contraction, rational(1, 2));

        let g4 = sharp_cyclic(4, &Rational::one(), &Rational::one()).unwrap();
        assert_eq!(g4.margins().unwrap().contraction, rational(1, 3));

        let g6 = sharp_cyclic(6, &rational_int(2), &rational_int(2)).unwrap();
        let m6 = g6.margins().unwrap();
        assert_eq!(m6.expansion, rational_int(2));
        for i in 0..6 {
            for j in (i + 1)..6 {
                let d = g6.domain().dist(i, j);
                assert!(d >= &rational_int(2) && d <= &rational_int(4));
            }
        }

        assert!(matches!(
            sharp_cyclic(5, &Rational::one(), &Rational::one()),
            Err(ConstructionError::InvalidN(5))
        ));
    }

    #[test]
    fn union_truncation_margins() {
        let (space, maps) = nonuniform_union_truncation(3).unwrap();
        assert_eq!(space.len(), 18); // three pieces of 5 + 1 points
        assert_eq!(maps.len(), 3);
        for (n, g) in maps.iter().enumerate() {
            let m = g.margins().unwrap();
            assert_eq!(m.expansion, Rational::one());
            assert!(m.contraction <= rational(1, n as i64 + 1));
        }
        // glue distances
        assert_eq!(space.dist(0, 6), &rational(3, 2));
        assert_eq!(space.dist(5, 17), &rational(3, 2));
    }

    #[test]
    fn interval_grid_tiny_instance() {
        let f = interval_pair_grid(&rational(1, 2), &rational(1, 2)).unwrap();
        assert_eq!(f.domain().len(), 4); // {0, 1/2, 1, 3}
        let m = f.margins().unwrap();
        assert_eq!(m.contraction, rational(1, 2));
        // full-scan expansion is 2 - t, at the pair (1, 3)
        assert_eq!(m.expansion, rational(3, 2));
        assert_eq!(m.expansion_witness, (2, 3));
    }

    #[test]
    fn interval_grid_rejects_bad_parameters() {
        assert!(matches!(
            interval_pair_grid(&rational(2, 3), &rational(1, 2)),
            Err(ConstructionError::BadStep)
        ));
        assert!(matches!(
            interval_pair_grid(&rational(1, 2), &rational_int(1)),
            Err(ConstructionError::BadShrinkFactor)
        ));
    }

    #[test]
    fn sqrt_bounds_behaviour() {
        let (lo, hi) = sqrt_bounds(&rational(1, 4), 3);
        assert_eq!(lo, rational(1, 2));
        assert_eq!(lo, hi);
        let (lo, hi) = sqrt_bounds(&rational_int(2), 3);
        assert!(lo < hi);
        assert_eq!(&hi - &lo, rational(1, 1000));
        assert!(&lo * &lo <= rational_int(2));
        assert!(&hi * &hi >= rational_int(2));
    }

    #[test]
    fn hilbert_demo_canonical_pair() {
        let report = hilbert_shift_demo(&[], 6).unwrap();
        assert_eq!(report.expansion_witness.before_sq, "1");
        assert_eq!(report.expansion_witness.after_sq_lower, "2");
        assert_eq!(report.expansion_witness.after_sq_upper, "2");
        assert!(report.expansion_witness.exact);
    }

    #[test]
    fn hilbert_demo_rejects_big_vectors() {
        let too_big = vec![vec![rational_int(2)]];
        assert!(matches!(
            hilbert_shift_demo(&too_big, 4),
            Err(ConstructionError::NormExceedsOne(0))
        ));
    }

    #[test]
    fn recipe_round_trip() {
        let recipe = GeneratorRecipe::SharpCase1 {
            n: 5,
            eps: "1".into(),
            a: "1".into(),
            pad: false,
        };
        let json = serde_json::to_string(&recipe).unwrap();
        assert!(json.contains("\"kind\":\"sharp_case1\""));
        let back: GeneratorRecipe = serde_json::from_str(&json).unwrap();
        match back.generate().unwrap() {
            GeneratorOutput::Map(f) => assert_eq!(f.domain().len(), 5),
            other => panic!("unexpected output {other:?}"),
        }
    }
}
