//! Closed-form quantities and certified lower bounds: the worst-case
//! joint orbit period M(N), the pair-sum and orbit bounds, the Nitka
//! delta, and certified deltas for the separated-set machinery.

use crate::metric::FiniteMetricSpace;
use crate::rational::{rational, rational_int, Rational};
use crate::separation::{n_net_min, n_sep_max, s_max, sample_epsilons, SeparationError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("N must be at least {min}, got {got}")]
    TooSmall { min: u64, got: u64 },
    #[error("pair-sum bound has zero denominator at N = 2")]
    ZeroDenominator,
    #[error("eps must be positive")]
    NonpositiveEps,
    #[error(transparent)]
    Separation(#[from] SeparationError),
}

/// Piecewise closed form of M(N), the worst-case least common period of
/// two points under a bijection of an N-point set.
pub fn m_of_n(n: u64) -> Result<u64, BoundsError> {
    if n < 2 {
        return Err(BoundsError::TooSmall { min: 2, got: n });
    }
    if n >= 5 && n % 2 == 1 {
        let k = n / 2;
        return Ok(k * (k + 1));
    }
    if n >= 8 && n % 4 == 0 {
        let k = n / 4;
        return Ok((2 * k - 1) * (2 * k + 1));
    }
    if n >= 10 && n % 4 == 2 {
        let k = (n - 2) / 4;
        return Ok((2 * k - 1) * (2 * k + 3));
    }
    Ok(n)
}

/// M(N) by direct search: max{ max_{l+m<=N} lcm(l,m), N }.
pub fn m_bruteforce(n: u64) -> Result<u64, BoundsError> {
    if n < 2 {
        return Err(BoundsError::TooSmall { min: 2, got: n });
    }
    let mut best = n;
    for l in 1..=n {
        for m in 1..=(n - l) {
            best = best.max(l.lcm(&m));
        }
    }
    Ok(best)
}

/// eps / (N(N-1)/2 - 1); undefined at N = 2 (zero denominator).
pub fn bound_pair_sum(n: u64, eps: &Rational) -> Result<Rational, BoundsError> {
    if n < 3 {
        if n == 2 {
            return Err(BoundsError::ZeroDenominator);
        }
        return Err(BoundsError::TooSmall { min: 3, got: n });
    }
    if !eps.is_positive() {
        return Err(BoundsError::NonpositiveEps);
    }
    let denom = rational_int((n * (n - 1) / 2 - 1) as i64);
    Ok(eps / denom)
}

/// eps / (M(N) - 1).
pub fn bound_orbit(n: u64, eps: &Rational) -> Result<Rational, BoundsError> {
    if !eps.is_positive() {
        return Err(BoundsError::NonpositiveEps);
    }
    let m = m_of_n(n)?;
    Ok(eps / rational_int((m - 1) as i64))
}

/// Nitka's delta: 2 eps / (11 (n(eps/11)(n(eps/11) - 1) + 2)) with
/// n(.) the minimal eps-net size of the space.
pub fn nitka_bound(space: &FiniteMetricSpace, eps: &Rational) -> Result<Rational, BoundsError> {
    if !eps.is_positive() {
        return Err(BoundsError::NonpositiveEps);
    }
    let eleventh = eps / rational_int(11);
    let (n, _) = n_net_min(space, &eleventh)?;
    let n = rational_int(n as i64);
    let denom = rational_int(11) * (&n * (&n - rational_int(1)) + rational_int(2));
    Ok(rational_int(2) * eps / denom)
}

/// A certified (delta, nu) pair for a fixed eps, or the named reason it
/// does not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifiedDelta {
    Applicable {
        eps: Rational,
        /// interior level chosen by the uniform-pair certification
        eps0: Option<Rational>,
        delta: Rational,
        nu: Rational,
    },
    NotApplicable { eps: Rational, reason: String },
}

impl CertifiedDelta {
    pub fn is_applicable(&self) -> bool {
        matches!(self, CertifiedDelta::Applicable { .. })
    }

    pub fn delta(&self) -> Option<&Rational> {
        match self {
            CertifiedDelta::Applicable { delta, .. } => Some(delta),
            CertifiedDelta::NotApplicable { .. } => None,
        }
    }
}

/// Largest delta below min{eps/(N(N-1)-6), eps/(9(N+1))}, N = N(X, eps/9),
/// for which s(X, eps/9) >= s(Y, eps/9 - delta) - nu > 0 with some
/// nu < eps/18. Candidate deltas are induced by Y's distance breakpoints
/// (s(Y, .) is a step function, so nothing between candidates matters).
pub fn lemma37_certify(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    eps: &Rational,
) -> Result<CertifiedDelta, BoundsError> {
    if !eps.is_positive() {
        return Err(BoundsError::NonpositiveEps);
    }
    let ninth = eps / rational_int(9);
    let (n_sep, _) = n_sep_max(x, &ninth)?;
    if n_sep < 4 {
        return Ok(CertifiedDelta::NotApplicable {
            eps: eps.clone(),
            reason: format!("nonpositive denominator: N(X, eps/9) = {n_sep} <= 3"),
        });
    }
    let n = rational_int(n_sep as i64);
    let threshold_a = eps / (&n * (&n - rational_int(1)) - rational_int(6));
    let threshold_b = eps / (rational_int(9) * (&n + rational_int(1)));
    let threshold = threshold_a.min(threshold_b);

    // candidate deltas: eps/9 - b for Y breakpoints and their midpoints
    // below eps/9, plus a safely small fallback
    let mut candidates: Vec<Rational> = Vec::new();
    let bps: Vec<Rational> = y.breakpoints().into_iter().filter(|b| *b < ninth).collect();
    for (i, b) in bps.iter().enumerate() {
        candidates.push(&ninth - b);
        if let Some(next) = bps.get(i + 1) {
            candidates.push(&ninth - (b + next) / rational_int(2));
        }
    }
    candidates.push(&threshold / rational_int(2));
    candidates.push(&ninth / rational_int(2));
    candidates.retain(|d| d.is_positive() && *d < threshold && *d < ninth);
    candidates.sort();
    candidates.dedup();
    candidates.reverse();

    let (s_x, _) = s_max(x, &ninth)?;
    let eighteenth = eps / rational_int(18);
    for delta in candidates {
        let (s_y, _) = s_max(y, &(&ninth - &delta))?;
        let deficit = &s_y - &s_x;
        let nu = if deficit.is_positive() { deficit } else { Rational::zero() };
        if nu < eighteenth && (&s_y - &nu).is_positive() {
            return Ok(CertifiedDelta::Applicable {
                eps: eps.clone(),
                eps0: None,
                delta,
                nu,
            });
        }
    }
    Ok(CertifiedDelta::NotApplicable {
        eps: eps.clone(),
        reason: "no candidate delta satisfies the s-comparison hypothesis".into(),
    })
}

fn is_breakpoint(space: &FiniteMetricSpace, t: &Rational) -> bool {
    space.breakpoints().iter().any(|b| b == t)
}

/// Uniform-pair certification: picks an interior level eps0 < eps with
/// eps0/9 strictly between Y's breakpoints (so s(Y, .) is locally
/// constant there), then delta0 = min{Delta/2, eps0/(N(N-1)-6),
/// eps0/(9(N+1))} with N = N(X, eps0/9) and Delta the gap down to the
/// next Y breakpoint. nu is 0 by construction.
pub fn theorem38_certify(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    eps: &Rational,
) -> Result<CertifiedDelta, BoundsError> {
    if !eps.is_positive() {
        return Err(BoundsError::NonpositiveEps);
    }
    let diam_y = y.diam();
    if *eps >= diam_y || diam_y.is_zero() {
        return Ok(CertifiedDelta::NotApplicable {
            eps: eps.clone(),
            reason: "eps must lie strictly inside (0, diam Y)".into(),
        });
    }
    // hypothesis: s(X, t) >= s(Y, t) at every sample point of both profiles
    let mut samples = sample_epsilons(x);
    samples.extend(sample_epsilons(y));
    samples.sort();
    samples.dedup();
    for t in &samples {
        let (sx, _) = s_max(x, t)?;
        let (sy, _) = s_max(y, t)?;
        if sx < sy {
            return Ok(CertifiedDelta::NotApplicable {
                eps: eps.clone(),
                reason: format!(
                    "hypothesis s(X,t) >= s(Y,t) fails at t = {}",
                    crate::rational::format_rational(t)
                ),
            });
        }
    }
    // largest eps0 = eps (q-1)/q, q <= 100, whose ninth avoids Y's breakpoints
    let mut chosen: Option<Rational> = None;
    for q in (2..=100u64).rev() {
        let eps0 = eps * rational((q - 1) as i64, q as i64);
        if !is_breakpoint(y, &(&eps0 / rational_int(9))) {
            chosen = Some(eps0);
            break;
        }
    }
    let eps0 = match chosen {
        Some(e) => e,
        None => {
            return Ok(CertifiedDelta::NotApplicable {
                eps: eps.clone(),
                reason: "no interior level avoiding Y's breakpoints found".into(),
            })
        }
    };
    let ninth0 = &eps0 / rational_int(9);
    let gap = y
        .breakpoints()
        .into_iter()
        .filter(|b| *b < ninth0)
        .last()
        .map(|b| &ninth0 - b)
        .unwrap_or_else(|| ninth0.clone());
    let (n_sep, _) = n_sep_max(x, &ninth0)?;
    if n_sep < 4 {
        return Ok(CertifiedDelta::NotApplicable {
            eps: eps.clone(),
            reason: format!("nonpositive denominator: N(X, eps0/9) = {n_sep} <= 3"),
        });
    }
    let n = rational_int(n_sep as i64);
    let delta0 = (gap / rational_int(2))
        .min(&eps0 / (&n * (&n - rational_int(1)) - rational_int(6)))
        .min(&eps0 / (rational_int(9) * (&n + rational_int(1))));
    Ok(CertifiedDelta::Applicable {
        eps: eps.clone(),
        eps0: Some(eps0),
        delta: delta0,
        nu: Rational::zero(),
    })
}

/// Exact value of a u64-sized lcm, kept for callers working in BigInt.
pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteMetricSpace;

    fn equilateral(n: usize, side: i64) -> FiniteMetricSpace {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let dist = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::zero() } else { rational_int(side) })
                    .collect()
            })
            .collect();
        FiniteMetricSpace::new(labels, dist).unwrap()
    }

    #[test]
    fn m_values_from_the_piecewise_form() {
        assert_eq!(m_of_n(5).unwrap(), 6);
        assert_eq!(m_of_n(7).unwrap(), 12);
        assert_eq!(m_of_n(8).unwrap(), 15);
        assert_eq!(m_of_n(10).unwrap(), 21);
        for n in [2u64, 3, 4, 6] {
            assert_eq!(m_of_n(n).unwrap(), n);
        }
        assert!(m_of_n(1).is_err());
    }

    #[test]
    fn m_bruteforce_small_values() {
        assert_eq!(m_bruteforce(2).unwrap(), 2);
        assert_eq!(m_bruteforce(5).unwrap(), 6); // lcm(2,3)
        assert_eq!(m_bruteforce(7).unwrap(), 12); // lcm(3,4)
    }

    #[test]
    fn closed_form_matches_bruteforce_smoke() {
        for n in 2..=60 {
            assert_eq!(m_of_n(n).unwrap(), m_bruteforce(n).unwrap(), "N = {n}");
        }
    }

    #[test]
    fn pair_sum_bound_values() {
        let one = rational_int(1);
        assert_eq!(bound_pair_sum(3, &one).unwrap(), rational(1, 2));
        assert_eq!(bound_pair_sum(5, &one).unwrap(), rational(1, 9));
        assert_eq!(bound_pair_sum(2, &one), Err(BoundsError::ZeroDenominator));
    }

    #[test]
    fn orbit_bound_values() {
        assert_eq!(bound_orbit(7, &rational_int(1)).unwrap(), rational(1, 11));
        assert_eq!(bound_orbit(5, &rational_int(1)).unwrap(), rational(1, 5));
        assert_eq!(bound_orbit(4, &rational_int(2)).unwrap(), rational(2, 3));
    }

    #[test]
    fn nitka_substitutions() {
        // eps/11 beyond the diameter: a single point covers, n = 1
        let s = equilateral(3, 1);
        let eps = rational_int(22);
        assert_eq!(nitka_bound(&s, &eps).unwrap(), &eps / rational_int(11));
        // n = 2: two-point space, eps/11 at most the side
        let two = {
            let labels = vec!["a".into(), "b".into()];
            let dist = vec![
                vec![Rational::zero(), rational_int(1)],
                vec![rational_int(1), Rational::zero()],
            ];
            FiniteMetricSpace::new(labels, dist).unwrap()
        };
        let eps = rational_int(1);
        assert_eq!(nitka_bound(&two, &eps).unwrap(), &eps / rational_int(22));
    }

    #[test]
    fn lemma37_on_equilateral_self_pair() {
        // breakpoints of Y all sit at the side length, far above eps/9,
        // so nu = 0 certifies immediately
        let s = equilateral(4, 1);
        let eps = rational_int(1);
        let cert = lemma37_certify(&s, &s, &eps).unwrap();
        match cert {
            CertifiedDelta::Applicable { delta, nu, .. } => {
                assert!(delta.is_positive());
                assert_eq!(nu, Rational::zero());
            }
            other => panic!("expected applicable, got {other:?}"),
        }
    }

    #[test]
    fn lemma37_small_n_rejected() {
        let s = equilateral(3, 1);
        let cert = lemma37_certify(&s, &s, &rational_int(1)).unwrap();
        match cert {
            CertifiedDelta::NotApplicable { reason, .. } => {
                assert!(reason.contains("nonpositive denominator"));
            }
            other => panic!("expected not-applicable, got {other:?}"),
        }
    }

    #[test]
    fn theorem38_needs_interior_eps() {
        let s = equilateral(4, 1);
        // eps >= diam(Y) fails the precondition
        assert!(!theorem38_certify(&s, &s, &rational_int(1)).unwrap().is_applicable());
        let cert = theorem38_certify(&s, &s, &rational(1, 2)).unwrap();
        match cert {
            CertifiedDelta::Applicable { delta, eps0, nu, .. } => {
                assert!(delta.is_positive());
                assert!(eps0.unwrap() < rational(1, 2));
                assert_eq!(nu, Rational::zero());
            }
            other => panic!("expected applicable, got {other:?}"),
        }
    }
}
