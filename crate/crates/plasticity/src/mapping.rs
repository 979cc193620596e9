//! Maps between finite metric spaces and their exact expansion /
//! contraction margins.

use crate::metric::FiniteMetricSpace;
use crate::rational::Rational;
use num_traits::Signed;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("map table has {got} entries for a {expected}-point domain")]
    TableLength { got: usize, expected: usize },
    #[error("table entry {value} at position {position} is not a valid codomain index")]
    IndexOutOfRange { position: usize, value: usize },
    #[error("margins need a domain with at least 2 points")]
    SingletonDomain,
    #[error("operation requires a bijection")]
    NotBijective,
}

/// Total function between two validated spaces, stored as an index table.
#[derive(Debug, Clone)]
pub struct PointMap {
    domain: Arc<FiniteMetricSpace>,
    codomain: Arc<FiniteMetricSpace>,
    table: Vec<usize>,
}

impl PointMap {
    pub fn new(
        domain: Arc<FiniteMetricSpace>,
        codomain: Arc<FiniteMetricSpace>,
        table: Vec<usize>,
    ) -> Result<Self, MapError> {
        if table.len() != domain.len() {
            return Err(MapError::TableLength { got: table.len(), expected: domain.len() });
        }
        for (position, &value) in table.iter().enumerate() {
            if value >= codomain.len() {
                return Err(MapError::IndexOutOfRange { position, value });
            }
        }
        Ok(Self { domain, codomain, table })
    }

    pub fn identity(space: Arc<FiniteMetricSpace>) -> Self {
        let table = (0..space.len()).collect();
        Self { domain: space.clone(), codomain: space, table }
    }

    pub fn domain(&self) -> &Arc<FiniteMetricSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteMetricSpace> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn margins(&self) -> Result<MapMargins, MapError> {
        if self.domain.len() < 2 {
            return Err(MapError::SingletonDomain);
        }
        Ok(margins_raw(&self.domain, &self.codomain, &self.table))
    }

    pub fn classify(&self) -> MapClassification {
        classify_raw(&self.domain, &self.codomain, &self.table)
    }

    /// g ∘ f; `self` is applied first.
    pub fn compose(&self, g: &PointMap) -> Result<PointMap, MapError> {
        if g.domain.len() != self.codomain.len() {
            return Err(MapError::TableLength { got: g.domain.len(), expected: self.codomain.len() });
        }
        let table = self.table.iter().map(|&i| g.table[i]).collect();
        PointMap::new(self.domain.clone(), g.codomain.clone(), table)
    }
}

/// E(f) = max over unordered pairs of d(f(a),f(b)) - d(a,b);
/// C(f) = max over unordered pairs of d(a,b) - d(f(a),f(b)).
/// Witnesses are the lexicographically first attaining pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapMargins {
    pub expansion: Rational,
    pub contraction: Rational,
    pub expansion_witness: (usize, usize),
    pub contraction_witness: (usize, usize),
}

impl MapMargins {
    pub fn noncontractive(&self) -> bool {
        !self.contraction.is_positive()
    }

    pub fn nonexpansive(&self) -> bool {
        !self.expansion.is_positive()
    }

    pub fn isometric_embedding(&self) -> bool {
        self.noncontractive() && self.nonexpansive()
    }
}

/// Margin computation on raw parts; callers guarantee |domain| >= 2.
pub fn margins_raw(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    table: &[usize],
) -> MapMargins {
    debug_assert!(domain.len() >= 2);
    let mut expansion: Option<(Rational, (usize, usize))> = None;
    let mut contraction: Option<(Rational, (usize, usize))> = None;
    for a in 0..domain.len() {
        for b in (a + 1)..domain.len() {
            let before = domain.dist(a, b);
            let after = codomain.dist(table[a], table[b]);
            let grow = after - before;
            let shrink = -grow.clone();
            if expansion.as_ref().map_or(true, |(e, _)| grow > *e) {
                expansion = Some((grow, (a, b)));
            }
            if contraction.as_ref().map_or(true, |(c, _)| shrink > *c) {
                contraction = Some((shrink, (a, b)));
            }
        }
    }
    let (expansion, expansion_witness) = expansion.expect("domain has a pair");
    let (contraction, contraction_witness) = contraction.expect("domain has a pair");
    MapMargins { expansion, contraction, expansion_witness, contraction_witness }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MapClassification {
    pub noncontractive: bool,
    pub nonexpansive: bool,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    pub isometric_embedding: bool,
    pub isometry: bool,
    /// Noncontractive and strictly increases at least one distance.
    pub expansion: bool,
}

pub fn classify_raw(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    table: &[usize],
) -> MapClassification {
    let mut hit = vec![false; codomain.len()];
    let mut injective = true;
    for &v in table {
        if hit[v] {
            injective = false;
        }
        hit[v] = true;
    }
    let surjective = hit.iter().all(|&h| h);
    let bijective = injective && surjective;

    let (noncontractive, nonexpansive, strictly_increases_some) = if domain.len() < 2 {
        (true, true, false)
    } else {
        let m = margins_raw(domain, codomain, table);
        (m.noncontractive(), m.nonexpansive(), m.expansion.is_positive())
    };
    let isometric_embedding = noncontractive && nonexpansive;
    MapClassification {
        noncontractive,
        nonexpansive,
        injective,
        surjective,
        bijective,
        isometric_embedding,
        isometry: isometric_embedding && bijective,
        expansion: noncontractive && strictly_increases_some,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::metric::FiniteMetricSpace;
    use crate::rational::{rational_int, Rational};

    fn two_point(d: i64) -> Arc<FiniteMetricSpace> {
        Arc::new(
            FiniteMetricSpace::new(
                vec!["a".into(), "b".into()],
                vec![
                    vec![Rational::zero(), rational_int(d)],
                    vec![rational_int(d), Rational::zero()],
                ],
            )
            .unwrap(),
        )
    }

    fn equilateral(n: usize, side: i64) -> Arc<FiniteMetricSpace> {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let dist = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::zero() } else { rational_int(side) })
                    .collect()
            })
            .collect();
        Arc::new(FiniteMetricSpace::new(labels, dist).unwrap())
    }

    #[test]
    fn identity_margins_are_zero() {
        let s = equilateral(4, 2);
        let f = PointMap::identity(s);
        let m = f.margins().unwrap();
        assert_eq!(m.expansion, rational_int(0));
        assert_eq!(m.contraction, rational_int(0));
        let c = f.classify();
        assert!(c.isometry);
        assert!(!c.expansion);
    }

    #[test]
    fn stretch_between_two_point_spaces() {
        let x = two_point(1);
        let y = two_point(2);
        let f = PointMap::new(x, y, vec![0, 1]).unwrap();
        let m = f.margins().unwrap();
        assert_eq!(m.expansion, rational_int(1));
        assert_eq!(m.contraction, rational_int(-1));
        assert_eq!(m.expansion_witness, (0, 1));
    }

    #[test]
    fn constant_map_is_contractive() {
        let s = equilateral(3, 1);
        let f = PointMap::new(s.clone(), s, vec![0, 0, 0]).unwrap();
        let c = f.classify();
        assert!(!c.noncontractive);
        assert!(!c.injective);
        assert!(!c.surjective);
    }

    #[test]
    fn singleton_domain_rejected_for_margins() {
        let one = Arc::new(
            FiniteMetricSpace::new(vec!["a".into()], vec![vec![Rational::zero()]]).unwrap(),
        );
        let f = PointMap::identity(one);
        assert_eq!(f.margins(), Err(MapError::SingletonDomain));
        // classify still works, vacuously
        assert!(f.classify().isometry);
    }

    #[test]
    fn invalid_tables_rejected() {
        let s = equilateral(3, 1);
        assert!(PointMap::new(s.clone(), s.clone(), vec![0, 1]).is_err());
        assert!(PointMap::new(s.clone(), s, vec![0, 1, 7]).is_err());
    }
}
