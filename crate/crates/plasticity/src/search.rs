//! Exhaustive, pruned enumeration over maps between finite spaces:
//! exact moduli of plasticity, plasticity decisions, and finite-instance
//! verifiers for the separated-set results.
//!
//! All searches scan domain points in index order and codomain
//! candidates in index order, and replace the incumbent only on strict
//! improvement, so verdicts and witnesses are deterministic (witnesses
//! are lexicographically first).

use crate::mapping::{classify_raw, margins_raw};
use crate::metric::{sigma, sigma_g, FiniteMetricSpace, MonotoneGauge, SigmaError};
use crate::rational::{format_rational, Rational};
use crate::separation::{
    alpha_min, is_eps_separated, is_maximal_separated, s_max, sample_epsilons, SeparationError,
};
use num_traits::Signed;
use serde::Serialize;
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapClass {
    AllMaps,
    Bijections,
    NoncontractiveMaps,
    NoncontractiveBijections,
    NonexpansiveSurjections,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("operation needs a domain with at least 2 points")]
    DomainTooSmall,
    #[error("eps must be positive")]
    NonpositiveEps,
    #[error("exact_modulus only accepts the Bijections and AllMaps classes")]
    UnsupportedClass,
    #[error("catalog spaces must all have the same cardinality")]
    MixedCardinalities,
    #[error("catalog spaces must have at least 2 points")]
    CatalogTooSmall,
    #[error("map is not a bijection of the space onto itself")]
    NotBijective,
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
}

struct Enumerator<'a> {
    x: &'a FiniteMetricSpace,
    y: &'a FiniteMetricSpace,
    injective: bool,
    noncontractive: bool,
    nonexpansive: bool,
    surjective: bool,
}

impl<'a> Enumerator<'a> {
    fn new(x: &'a FiniteMetricSpace, y: &'a FiniteMetricSpace, class: MapClass) -> Option<Self> {
        let (injective, noncontractive, nonexpansive, surjective) = match class {
            MapClass::AllMaps => (false, false, false, false),
            MapClass::Bijections => (true, false, false, false),
            MapClass::NoncontractiveMaps => (false, true, false, false),
            MapClass::NoncontractiveBijections => (true, true, false, false),
            MapClass::NonexpansiveSurjections => (false, false, true, true),
        };
        if injective && x.len() != y.len() {
            return None; // class is empty
        }
        if surjective && x.len() < y.len() {
            return None;
        }
        Some(Self { x, y, injective, noncontractive, nonexpansive, surjective })
    }

    fn run<F>(&self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut table = Vec::with_capacity(self.x.len());
        let mut used = vec![0usize; self.y.len()];
        let mut distinct = 0usize;
        self.rec(&mut table, &mut used, &mut distinct, visit)
    }

    fn rec<F>(
        &self,
        table: &mut Vec<usize>,
        used: &mut [usize],
        distinct: &mut usize,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let i = table.len();
        if i == self.x.len() {
            if self.surjective && *distinct != self.y.len() {
                return ControlFlow::Continue(());
            }
            return visit(table);
        }
        'candidates: for v in 0..self.y.len() {
            if self.injective && used[v] > 0 {
                continue;
            }
            if self.noncontractive || self.nonexpansive {
                for (j, &w) in table.iter().enumerate() {
                    let before = self.x.dist(j, i);
                    let after = self.y.dist(w, v);
                    if self.noncontractive && after < before {
                        continue 'candidates;
                    }
                    if self.nonexpansive && after > before {
                        continue 'candidates;
                    }
                }
            }
            if self.surjective {
                let newly = usize::from(used[v] == 0);
                let missing = self.y.len() - (*distinct + newly);
                let slots_left = self.x.len() - i - 1;
                if slots_left < missing {
                    continue;
                }
            }
            table.push(v);
            if used[v] == 0 {
                *distinct += 1;
            }
            used[v] += 1;
            let flow = self.rec(table, used, distinct, visit);
            used[v] -= 1;
            if used[v] == 0 {
                *distinct -= 1;
            }
            table.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every map table in the class, in lexicographic order of the
/// table, pruning partial tables that already violate the class.
pub fn for_each_in_class<F>(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    class: MapClass,
    mut visit: F,
) where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if let Some(e) = Enumerator::new(x, y, class) {
        let _ = e.run(&mut visit);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModulusVerdict {
    /// min C(f) over violating maps, strictly positive.
    Value(Rational),
    /// some violating map has C <= 0; the modulus collapses to 0.
    NotPlastic,
    /// no map in the class expands any pair by more than eps.
    Vacuous,
}

#[derive(Debug, Clone)]
pub struct ModulusReport {
    pub eps: Rational,
    pub map_class: MapClass,
    pub verdict: ModulusVerdict,
    pub minimizing_map: Option<Vec<usize>>,
    pub expansion_witness: Option<(usize, usize)>,
    pub contraction_witness: Option<(usize, usize)>,
}

impl ModulusReport {
    pub fn to_json(&self, x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> serde_json::Value {
        let verdict = match &self.verdict {
            ModulusVerdict::Value(v) => serde_json::json!({
                "kind": "value",
                "value": format_rational(v),
            }),
            ModulusVerdict::NotPlastic => serde_json::json!({ "kind": "not_plastic" }),
            ModulusVerdict::Vacuous => serde_json::json!({ "kind": "vacuous" }),
        };
        let pair_labels = |p: &Option<(usize, usize)>| {
            p.map(|(a, b)| serde_json::json!([x.label(a), x.label(b)]))
                .unwrap_or(serde_json::Value::Null)
        };
        let map_json = self
            .minimizing_map
            .as_ref()
            .map(|t| {
                serde_json::json!({
                    "table": t,
                    "by_label": t
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| serde_json::json!([x.label(i), y.label(v)]))
                        .collect::<Vec<_>>(),
                })
            })
            .unwrap_or(serde_json::Value::Null);
        serde_json::json!({
            "eps": format_rational(&self.eps),
            "class": self.map_class,
            "verdict": verdict,
            "witnesses": {
                "minimizing_map": map_json,
                "expansion_pair": pair_labels(&self.expansion_witness),
                "contraction_pair": pair_labels(&self.contraction_witness),
            },
        })
    }
}

struct ModulusSearch<'a> {
    x: &'a FiniteMetricSpace,
    y: &'a FiniteMetricSpace,
    eps: &'a Rational,
    injective: bool,
    best: Option<(Rational, Vec<usize>)>,
}

impl<'a> ModulusSearch<'a> {
    fn rec(
        &mut self,
        table: &mut Vec<usize>,
        used: &mut [bool],
        partial_e: Option<Rational>,
        partial_c: Option<Rational>,
    ) {
        let i = table.len();
        if i == self.x.len() {
            let e = partial_e.expect("domain has >= 2 points");
            let c = partial_c.expect("domain has >= 2 points");
            if e > *self.eps && self.best.as_ref().map_or(true, |(b, _)| c < *b) {
                self.best = Some((c, table.clone()));
            }
            return;
        }
        for v in 0..self.y.len() {
            if self.injective && used[v] {
                continue;
            }
            let mut e = partial_e.clone();
            let mut c = partial_c.clone();
            for (j, &w) in table.iter().enumerate() {
                let diff = self.y.dist(w, v) - self.x.dist(j, i);
                let shrink = -diff.clone();
                if e.as_ref().map_or(true, |cur| diff > *cur) {
                    e = Some(diff);
                }
                if c.as_ref().map_or(true, |cur| shrink > *cur) {
                    c = Some(shrink);
                }
            }
            // the final contraction can only grow; dominated branches die here
            if let (Some(best), Some(cur)) = (self.best.as_ref(), c.as_ref()) {
                if *cur >= best.0 {
                    continue;
                }
            }
            table.push(v);
            used[v] = true;
            self.rec(table, used, e, c);
            used[v] = false;
            table.pop();
        }
    }
}

/// Exact modulus of (strong) plasticity at level eps: the minimum
/// contraction margin over maps in the class that expand some pair by
/// strictly more than eps.
pub fn exact_modulus(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    eps: &Rational,
    class: MapClass,
) -> Result<ModulusReport, SearchError> {
    if x.len() < 2 {
        return Err(SearchError::DomainTooSmall);
    }
    if !eps.is_positive() {
        return Err(SearchError::NonpositiveEps);
    }
    let injective = match class {
        MapClass::Bijections => true,
        MapClass::AllMaps => false,
        _ => return Err(SearchError::UnsupportedClass),
    };
    if injective && x.len() != y.len() {
        // no bijections at all: the quantifier is empty
        return Ok(ModulusReport {
            eps: eps.clone(),
            map_class: class,
            verdict: ModulusVerdict::Vacuous,
            minimizing_map: None,
            expansion_witness: None,
            contraction_witness: None,
        });
    }
    let mut search = ModulusSearch { x, y, eps, injective, best: None };
    let mut table = Vec::with_capacity(x.len());
    let mut used = vec![false; y.len()];
    search.rec(&mut table, &mut used, None, None);
    let report = match search.best {
        None => ModulusReport {
            eps: eps.clone(),
            map_class: class,
            verdict: ModulusVerdict::Vacuous,
            minimizing_map: None,
            expansion_witness: None,
            contraction_witness: None,
        },
        Some((c, table)) => {
            let margins = margins_raw(x, y, &table);
            let verdict = if c.is_positive() {
                ModulusVerdict::Value(c)
            } else {
                ModulusVerdict::NotPlastic
            };
            ModulusReport {
                eps: eps.clone(),
                map_class: class,
                verdict,
                expansion_witness: Some(margins.expansion_witness),
                contraction_witness: Some(margins.contraction_witness),
                minimizing_map: Some(table),
            }
        }
    };
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct PlasticityReport {
    pub plastic: bool,
    pub counterexample: Option<Vec<usize>>,
    pub note: Option<String>,
}

/// Every noncontractive bijection X -> Y is an isometry. Vacuously true
/// when |X| != |Y|.
pub fn is_ec_plastic(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> PlasticityReport {
    if x.len() != y.len() {
        return PlasticityReport {
            plastic: true,
            counterexample: None,
            note: Some("no bijections between spaces of different cardinality".into()),
        };
    }
    let mut counterexample = None;
    for_each_in_class(x, y, MapClass::NoncontractiveBijections, |table| {
        // noncontractive is guaranteed; isometry fails iff a pair expands
        if x.len() >= 2 && margins_raw(x, y, table).expansion.is_positive() {
            counterexample = Some(table.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    PlasticityReport { plastic: counterexample.is_none(), counterexample, note: None }
}

/// Every noncontractive map X -> Y is an isometric embedding.
pub fn is_strongly_plastic(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> PlasticityReport {
    let mut counterexample = None;
    for_each_in_class(x, y, MapClass::NoncontractiveMaps, |table| {
        if x.len() >= 2 && margins_raw(x, y, table).expansion.is_positive() {
            counterexample = Some(table.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    PlasticityReport { plastic: counterexample.is_none(), counterexample, note: None }
}

/// An expansion X -> Y: noncontractive with at least one strictly
/// increased distance. Returns the lexicographically first one.
pub fn find_expansion(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_in_class(x, y, MapClass::NoncontractiveMaps, |table| {
        if x.len() >= 2 && margins_raw(x, y, table).expansion.is_positive() {
            found = Some(table.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

#[derive(Debug, Clone)]
pub enum Measurement {
    Sigma,
    SigmaG(MonotoneGauge),
}

impl Measurement {
    pub fn eval(&self, space: &FiniteMetricSpace) -> Result<Rational, SigmaError> {
        let full: Vec<usize> = (0..space.len()).collect();
        match self {
            Measurement::Sigma => sigma(space, &full),
            Measurement::SigmaG(g) => sigma_g(space, &full, g),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasurementViolation {
    pub from: usize,
    pub to: usize,
    pub psi_from: String,
    pub psi_to: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasurementReport {
    pub pairs_checked: usize,
    /// ordered catalog index pairs admitting an expansion
    pub expansion_pairs: Vec<(usize, usize)>,
    pub violations: Vec<MeasurementViolation>,
}

/// For every ordered catalog pair (X, Y) that admits an expansion,
/// checks psi(Y) > psi(X). An empty violation list certifies psi as a
/// proper measurement on the catalog.
pub fn proper_measurement_check(
    catalog: &[FiniteMetricSpace],
    psi: &Measurement,
) -> Result<MeasurementReport, SearchError> {
    let Some(first) = catalog.first() else {
        return Ok(MeasurementReport { pairs_checked: 0, expansion_pairs: vec![], violations: vec![] });
    };
    let n = first.len();
    if n < 2 {
        return Err(SearchError::CatalogTooSmall);
    }
    if catalog.iter().any(|s| s.len() != n) {
        return Err(SearchError::MixedCardinalities);
    }
    let values: Vec<Rational> =
        catalog.iter().map(|s| psi.eval(s)).collect::<Result<_, _>>()?;
    let mut report =
        MeasurementReport { pairs_checked: 0, expansion_pairs: vec![], violations: vec![] };
    for (i, x) in catalog.iter().enumerate() {
        for (j, y) in catalog.iter().enumerate() {
            report.pairs_checked += 1;
            if find_expansion(x, y).is_some() {
                report.expansion_pairs.push((i, j));
                if values[j] <= values[i] {
                    report.violations.push(MeasurementViolation {
                        from: i,
                        to: j,
                        psi_from: format_rational(&values[i]),
                        psi_to: format_rational(&values[j]),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct SurjectionTheoremReport {
    pub applicable: bool,
    pub hypothesis_failure: Option<String>,
    pub surjections_checked: usize,
    pub counterexample: Option<Vec<usize>>,
}

/// Checks alpha(X, t) <= alpha(Y, t) on the union of both sampling
/// grids, then asserts every nonexpansive surjection X -> Y is an
/// isometry.
pub fn verify_surjection_theorem(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<SurjectionTheoremReport, SearchError> {
    let mut samples = sample_epsilons(x);
    samples.extend(sample_epsilons(y));
    samples.sort();
    samples.dedup();
    for t in &samples {
        let (ax, _) = alpha_min(x, t)?;
        let (ay, _) = alpha_min(y, t)?;
        if ax > ay {
            return Ok(SurjectionTheoremReport {
                applicable: false,
                hypothesis_failure: Some(format!(
                    "alpha(X,t) > alpha(Y,t) at t = {}",
                    format_rational(t)
                )),
                surjections_checked: 0,
                counterexample: None,
            });
        }
    }
    let mut checked = 0usize;
    let mut counterexample = None;
    for_each_in_class(x, y, MapClass::NonexpansiveSurjections, |table| {
        checked += 1;
        let class = classify_raw(x, y, table);
        if class.isometry {
            ControlFlow::Continue(())
        } else {
            counterexample = Some(table.to_vec());
            ControlFlow::Break(())
        }
    });
    Ok(SurjectionTheoremReport {
        applicable: true,
        hypothesis_failure: None,
        surjections_checked: checked,
        counterexample,
    })
}

#[derive(Debug, Clone, Serialize)]
pub enum SeparatedImageCheck {
    NotApplicable { failed_hypothesis: String },
    Checked {
        sigma_a: String,
        s_x: String,
        s_y: String,
        image: Vec<usize>,
        image_is_maximal: bool,
    },
}

/// Hypotheses: f noncontractive, |A| >= 2, A eps-separated,
/// sigma(A) > s(X,eps) - eps, s(X,eps) > s(Y,eps) - eps. Conclusion:
/// f(A) is a maximal eps-separated set in Y.
pub fn verify_separated_image_lemma(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    eps: &Rational,
    table: &[usize],
    subset: &[usize],
) -> Result<SeparatedImageCheck, SearchError> {
    if x.len() < 2 {
        return Err(SearchError::DomainTooSmall);
    }
    let na = |reason: &str| SeparatedImageCheck::NotApplicable { failed_hypothesis: reason.into() };
    if !margins_raw(x, y, table).noncontractive() {
        return Ok(na("f is not noncontractive"));
    }
    if subset.len() < 2 {
        return Ok(na("|A| < 2"));
    }
    if !is_eps_separated(x, subset, eps)? {
        return Ok(na("A is not eps-separated"));
    }
    let sigma_a = sigma(x, subset)?;
    let (s_x, _) = s_max(x, eps)?;
    let (s_y, _) = s_max(y, eps)?;
    if sigma_a <= &s_x - eps {
        return Ok(na("sigma(A) <= s(X,eps) - eps"));
    }
    if s_x <= &s_y - eps {
        return Ok(na("s(X,eps) <= s(Y,eps) - eps"));
    }
    let mut image: Vec<usize> = subset.iter().map(|&i| table[i]).collect();
    image.sort_unstable();
    image.dedup();
    let image_is_maximal = is_maximal_separated(y, &image, eps)?;
    Ok(SeparatedImageCheck::Checked {
        sigma_a: format_rational(&sigma_a),
        s_x: format_rational(&s_x),
        s_y: format_rational(&s_y),
        image,
        image_is_maximal,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SComparisonReport {
    pub applicable: bool,
    pub hypothesis_failure: Option<String>,
    pub strongly_plastic: Option<bool>,
    pub counterexample: Option<Vec<usize>>,
}

/// If s(X, t) >= s(Y, t) on the union of both sampling grids, strong
/// plasticity of (X, Y) is asserted by full enumeration.
pub fn verify_s_comparison_plasticity(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<SComparisonReport, SearchError> {
    let mut samples = sample_epsilons(x);
    samples.extend(sample_epsilons(y));
    samples.sort();
    samples.dedup();
    for t in &samples {
        let (sx, _) = s_max(x, t)?;
        let (sy, _) = s_max(y, t)?;
        if sx < sy {
            return Ok(SComparisonReport {
                applicable: false,
                hypothesis_failure: Some(format!(
                    "s(X,t) < s(Y,t) at t = {}",
                    format_rational(t)
                )),
                strongly_plastic: None,
                counterexample: None,
            });
        }
    }
    let verdict = is_strongly_plastic(x, y);
    Ok(SComparisonReport {
        applicable: true,
        hypothesis_failure: None,
        strongly_plastic: Some(verdict.plastic),
        counterexample: verdict.counterexample,
    })
}

/// Least k with f^k fixing both points: the lcm of the two cycle
/// lengths. Never exceeds M(|X|).
pub fn orbit_period(
    space: &FiniteMetricSpace,
    table: &[usize],
    a: usize,
    b: usize,
) -> Result<u64, SearchError> {
    let n = space.len();
    if table.len() != n {
        return Err(SearchError::NotBijective);
    }
    let mut hit = vec![false; n];
    for &v in table {
        if v >= n || hit[v] {
            return Err(SearchError::NotBijective);
        }
        hit[v] = true;
    }
    let cycle_len = |start: usize| -> u64 {
        let mut cur = table[start];
        let mut len = 1u64;
        while cur != start {
            cur = table[cur];
            len += 1;
        }
        len
    };
    let (la, lb) = (cycle_len(a), cycle_len(b));
    let d = num_integer::lcm(la, lb);
    let m = crate::bounds::m_of_n(n as u64).expect("|X| >= 2 for a bijection with two points");
    assert!(d <= m, "joint orbit period {d} exceeds M({n}) = {m}");
    Ok(d)
}
