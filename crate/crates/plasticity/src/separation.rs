//! Epsilon-net and epsilon-separated-set quantities, computed exactly.
//!
//! Conventions (fixed throughout): a subset A is an eps-net when every
//! point has a member of A at distance strictly below eps; A is
//! eps-separated when all pairwise distances are >= eps (non-strict),
//! singletons included. All four step functions s, alpha, N, n are
//! constant on the half-open intervals between consecutive pairwise
//! distances, so breakpoint + midpoint sampling determines them
//! everywhere.

use crate::metric::{sigma, FiniteMetricSpace};
use crate::rational::{format_rational, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparationError {
    #[error("eps must be positive")]
    NonpositiveEps,
    #[error("empty subset rejected")]
    EmptySubset,
    #[error("subset index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("input subset is not eps-separated")]
    NotSeparated,
    #[error("space too large for exhaustive separation search: {n} points (limit 64)")]
    TooLarge { n: usize },
}

fn check_eps(eps: &Rational) -> Result<(), SeparationError> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(SeparationError::NonpositiveEps)
    }
}

fn check_indices(space: &FiniteMetricSpace, subset: &[usize]) -> Result<(), SeparationError> {
    for &i in subset {
        if i >= space.len() {
            return Err(SeparationError::IndexOutOfRange(i));
        }
    }
    Ok(())
}

/// Every point of the space has a subset member at distance < eps.
pub fn is_eps_net(
    space: &FiniteMetricSpace,
    subset: &[usize],
    eps: &Rational,
) -> Result<bool, SeparationError> {
    check_eps(eps)?;
    check_indices(space, subset)?;
    Ok((0..space.len()).all(|x| subset.iter().any(|&a| space.dist(x, a) < eps)))
}

/// All pairwise distances >= eps; singletons qualify by convention.
pub fn is_eps_separated(
    space: &FiniteMetricSpace,
    subset: &[usize],
    eps: &Rational,
) -> Result<bool, SeparationError> {
    check_eps(eps)?;
    if subset.is_empty() {
        return Err(SeparationError::EmptySubset);
    }
    check_indices(space, subset)?;
    for (p, &a) in subset.iter().enumerate() {
        for &b in &subset[p + 1..] {
            if a != b && space.dist(a, b) < eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No outside point is at distance >= eps from every subset member.
pub fn is_maximal_separated(
    space: &FiniteMetricSpace,
    subset: &[usize],
    eps: &Rational,
) -> Result<bool, SeparationError> {
    if !is_eps_separated(space, subset, eps)? {
        return Err(SeparationError::NotSeparated);
    }
    for x in 0..space.len() {
        if subset.contains(&x) {
            continue;
        }
        if subset.iter().all(|&a| space.dist(x, a) >= eps) {
            return Ok(false);
        }
    }
    Ok(true)
}

struct SepSearch<'a> {
    space: &'a FiniteMetricSpace,
    /// compat[i] = bitmask of j with d(i,j) >= eps
    compat: Vec<u64>,
}

impl<'a> SepSearch<'a> {
    fn new(space: &'a FiniteMetricSpace, eps: &Rational) -> Result<Self, SeparationError> {
        let n = space.len();
        if n > 64 {
            return Err(SeparationError::TooLarge { n });
        }
        let mut compat = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && space.dist(i, j) >= eps {
                    compat[i] |= 1 << j;
                }
            }
        }
        Ok(Self { space, compat })
    }

    fn mask_to_vec(mut mask: u64) -> Vec<usize> {
        let mut out = Vec::new();
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            out.push(i);
            mask &= mask - 1;
        }
        out
    }

    fn sigma_of_mask(&self, mask: u64) -> Rational {
        let members = Self::mask_to_vec(mask);
        if members.is_empty() {
            return Rational::zero();
        }
        sigma(self.space, &members).expect("nonempty valid subset")
    }

    /// Branch and bound for the largest separated set. Vertices are
    /// scanned in index order with include-first branching, and the best
    /// is replaced only on strict improvement, so the returned witness is
    /// the lexicographically smallest maximum set.
    fn max_cardinality(&self) -> (usize, Vec<usize>) {
        let n = self.space.len();
        let mut best: (usize, u64) = (0, 0);
        self.card_rec(0, 0u64, (1u64 << n) - 1, &mut best);
        (best.0, Self::mask_to_vec(best.1))
    }

    fn card_rec(&self, size: usize, chosen: u64, allowed: u64, best: &mut (usize, u64)) {
        if size > best.0 {
            *best = (size, chosen);
        }
        if size + allowed.count_ones() as usize <= best.0 {
            return;
        }
        if allowed == 0 {
            return;
        }
        let v = allowed.trailing_zeros() as usize;
        let rest = allowed & !(1u64 << v);
        self.card_rec(size + 1, chosen | (1 << v), rest & self.compat[v], best);
        self.card_rec(size, chosen, rest, best);
    }

    /// Branch and bound for the separated set of largest sigma.
    fn max_sigma(&self) -> (Rational, Vec<usize>) {
        let n = self.space.len();
        let mut best: Option<(Rational, u64)> = None;
        self.sigma_rec(0u64, (1u64 << n) - 1, &mut best);
        let (value, mask) = best.expect("space is nonempty");
        (value, Self::mask_to_vec(mask))
    }

    fn sigma_rec(&self, chosen: u64, allowed: u64, best: &mut Option<(Rational, u64)>) {
        if chosen != 0 {
            let value = self.sigma_of_mask(chosen);
            if best.as_ref().map_or(true, |(b, _)| value > *b) {
                *best = Some((value, chosen));
            }
        }
        if allowed == 0 {
            return;
        }
        // optimistic bound: sigma of everything still reachable
        if let Some((b, _)) = best {
            if self.sigma_of_mask(chosen | allowed) <= *b {
                return;
            }
        }
        let v = allowed.trailing_zeros() as usize;
        let rest = allowed & !(1u64 << v);
        self.sigma_rec(chosen | (1 << v), rest & self.compat[v], best);
        self.sigma_rec(chosen, rest, best);
    }
}

/// Maximum cardinality of an eps-separated subset, with the
/// lexicographically smallest witness.
pub fn n_sep_max(
    space: &FiniteMetricSpace,
    eps: &Rational,
) -> Result<(usize, Vec<usize>), SeparationError> {
    check_eps(eps)?;
    Ok(SepSearch::new(space, eps)?.max_cardinality())
}

/// Maximum of sigma over eps-separated subsets, with witness.
pub fn s_max(
    space: &FiniteMetricSpace,
    eps: &Rational,
) -> Result<(Rational, Vec<usize>), SeparationError> {
    check_eps(eps)?;
    Ok(SepSearch::new(space, eps)?.max_sigma())
}

struct NetSearch<'a> {
    space: &'a FiniteMetricSpace,
    /// cover[i] = bitmask of j with d(i,j) < eps (includes i itself)
    cover: Vec<u64>,
    full: u64,
}

impl<'a> NetSearch<'a> {
    fn new(space: &'a FiniteMetricSpace, eps: &Rational) -> Result<Self, SeparationError> {
        let n = space.len();
        if n > 64 {
            return Err(SeparationError::TooLarge { n });
        }
        let mut cover = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if space.dist(i, j) < eps {
                    cover[i] |= 1 << j;
                }
            }
        }
        Ok(Self { space, cover, full: (1u64 << n) - 1 })
    }

    fn min_cardinality(&self) -> (usize, Vec<usize>) {
        let mut best: Option<(usize, u64)> = None;
        self.card_rec(0, 0u64, 0u64, 0, &mut best);
        let (count, mask) = best.expect("full set is always a net");
        (count, SepSearch::mask_to_vec(mask))
    }

    fn card_rec(
        &self,
        next: usize,
        chosen: u64,
        covered: u64,
        size: usize,
        best: &mut Option<(usize, u64)>,
    ) {
        if covered == self.full {
            if best.as_ref().map_or(true, |(b, _)| size < *b) {
                *best = Some((size, chosen));
            }
            return; // supersets are never better
        }
        // completing the cover takes at least one more point
        if let Some((b, _)) = best {
            if size + 1 >= *b {
                return;
            }
        }
        // feasibility: the remaining points must be able to finish the cover
        let mut reachable = covered;
        for i in next..self.space.len() {
            reachable |= self.cover[i];
        }
        if reachable != self.full {
            return;
        }
        if next >= self.space.len() {
            return;
        }
        self.card_rec(next + 1, chosen | (1 << next), covered | self.cover[next], size + 1, best);
        self.card_rec(next + 1, chosen, covered, size, best);
    }

    fn min_sigma(&self) -> (Rational, Vec<usize>) {
        let mut best: Option<(Rational, u64)> = None;
        self.sigma_rec(0, 0u64, 0u64, Rational::zero(), &mut best);
        let (value, mask) = best.expect("full set is always a net");
        (value, SepSearch::mask_to_vec(mask))
    }

    fn sigma_rec(
        &self,
        next: usize,
        chosen: u64,
        covered: u64,
        partial_sigma: Rational,
        best: &mut Option<(Rational, u64)>,
    ) {
        if covered == self.full {
            if best.as_ref().map_or(true, |(b, _)| partial_sigma < *b) {
                *best = Some((partial_sigma, chosen));
            }
            return; // sigma grows strictly on extension
        }
        if let Some((b, _)) = best {
            if partial_sigma >= *b {
                return;
            }
        }
        let mut reachable = covered;
        for i in next..self.space.len() {
            reachable |= self.cover[i];
        }
        if reachable != self.full {
            return;
        }
        if next >= self.space.len() {
            return;
        }
        let mut extended = partial_sigma.clone();
        let mut rest = chosen;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            extended += self.space.dist(next, j);
            rest &= rest - 1;
        }
        self.sigma_rec(next + 1, chosen | (1 << next), covered | self.cover[next], extended, best);
        self.sigma_rec(next + 1, chosen, covered, partial_sigma, best);
    }
}

/// Minimum cardinality of an eps-net (strict-< covering), with witness.
pub fn n_net_min(
    space: &FiniteMetricSpace,
    eps: &Rational,
) -> Result<(usize, Vec<usize>), SeparationError> {
    check_eps(eps)?;
    Ok(NetSearch::new(space, eps)?.min_cardinality())
}

/// Minimum of sigma over eps-nets, with witness.
pub fn alpha_min(
    space: &FiniteMetricSpace,
    eps: &Rational,
) -> Result<(Rational, Vec<usize>), SeparationError> {
    check_eps(eps)?;
    Ok(NetSearch::new(space, eps)?.min_sigma())
}

/// Sampling grid that determines all four step functions: every
/// breakpoint, every midpoint of consecutive breakpoints, and one value
/// beyond the diameter.
pub fn sample_epsilons(space: &FiniteMetricSpace) -> Vec<Rational> {
    let bps = space.breakpoints();
    let mut out = Vec::new();
    if bps.is_empty() {
        out.push(Rational::from_integer(1.into()));
        return out;
    }
    for (i, b) in bps.iter().enumerate() {
        out.push(b.clone());
        if let Some(next) = bps.get(i + 1) {
            out.push((b + next) / Rational::from_integer(2.into()));
        }
    }
    out.push(bps.last().unwrap() + Rational::from_integer(1.into()));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileSample {
    pub eps: String,
    pub s: String,
    pub alpha: String,
    #[serde(rename = "N")]
    pub n_max: usize,
    #[serde(rename = "n")]
    pub n_min: usize,
}

/// Piecewise-constant description of s, alpha, N and n over the space's
/// distance breakpoints.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationProfile {
    pub breakpoints: Vec<String>,
    pub samples: Vec<ProfileSample>,
}

/// Raw (unserialized) profile rows, in increasing eps order.
pub struct ProfileRow {
    pub eps: Rational,
    pub s: Rational,
    pub alpha: Rational,
    pub n_max: usize,
    pub n_min: usize,
}

pub fn profile_rows(space: &FiniteMetricSpace) -> Result<Vec<ProfileRow>, SeparationError> {
    let mut rows = Vec::new();
    for eps in sample_epsilons(space) {
        let (s, _) = s_max(space, &eps)?;
        let (alpha, _) = alpha_min(space, &eps)?;
        let (n_max, _) = n_sep_max(space, &eps)?;
        let (n_min, _) = n_net_min(space, &eps)?;
        rows.push(ProfileRow { eps, s, alpha, n_max, n_min });
    }
    // monotonicity sanity gate: s, N, n never increase with eps
    for w in rows.windows(2) {
        assert!(w[1].s <= w[0].s, "s must be nonincreasing in eps");
        assert!(w[1].n_max <= w[0].n_max, "N must be nonincreasing in eps");
        assert!(w[1].n_min <= w[0].n_min, "n must be nonincreasing in eps");
    }
    Ok(rows)
}

pub fn profile(space: &FiniteMetricSpace) -> Result<SeparationProfile, SeparationError> {
    let rows = profile_rows(space)?;
    Ok(SeparationProfile {
        breakpoints: space.breakpoints().iter().map(format_rational).collect(),
        samples: rows
            .iter()
            .map(|r| ProfileSample {
                eps: format_rational(&r.eps),
                s: format_rational(&r.s),
                alpha: format_rational(&r.alpha),
                n_max: r.n_max,
                n_min: r.n_min,
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteMetricSpace;
    use crate::rational::{rational, rational_int};

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
    fn net_strictness() {
        let s = equilateral(3, 1);
        let one = rational_int(1);
        assert!(is_eps_net(&s, &[0, 1, 2], &one).unwrap());
        // other points sit at distance exactly 1, not < 1
        assert!(!is_eps_net(&s, &[0], &one).unwrap());
        assert!(is_eps_net(&s, &[0], &rational(3, 2)).unwrap());
        assert!(is_eps_net(&s, &[0, 1, 2], &rational(1, 100)).unwrap());
    }

    #[test]
    fn separation_non_strictness() {
        let s = equilateral(3, 1);
        assert!(is_eps_separated(&s, &[1], &rational_int(50)).unwrap());
        assert!(is_eps_separated(&s, &[0, 1, 2], &rational_int(1)).unwrap());
        assert!(!is_eps_separated(&s, &[0, 1, 2], &rational(1001, 1000)).unwrap());
        assert_eq!(
            is_eps_separated(&s, &[], &rational_int(1)),
            Err(SeparationError::EmptySubset)
        );
    }

    #[test]
    fn maximality() {
        let s = equilateral(3, 1);
        let one = rational_int(1);
        assert!(is_maximal_separated(&s, &[0, 1, 2], &one).unwrap());
        assert!(!is_maximal_separated(&s, &[0], &one).unwrap());
        assert_eq!(
            is_maximal_separated(&s, &[0, 1], &rational_int(2)),
            Err(SeparationError::NotSeparated)
        );
    }

    #[test]
    fn extremes_of_the_four_quantities() {
        let s = equilateral(4, 1);
        let beyond = rational_int(2); // > diam
        assert_eq!(n_sep_max(&s, &beyond).unwrap(), (1, vec![0]));
        assert_eq!(s_max(&s, &beyond).unwrap().0, rational_int(0));
        assert_eq!(n_net_min(&s, &beyond).unwrap().0, 1);
        assert_eq!(alpha_min(&s, &beyond).unwrap().0, rational_int(0));

        let at_side = rational_int(1);
        assert_eq!(n_sep_max(&s, &at_side).unwrap().0, 4);
        assert_eq!(s_max(&s, &at_side).unwrap().0, rational_int(6));
        // strict nets force every point to cover only itself
        assert_eq!(n_net_min(&s, &at_side).unwrap().0, 4);
        assert_eq!(alpha_min(&s, &at_side).unwrap().0, rational_int(6));
    }

    #[test]
    fn two_point_profile() {
        let s = {
            let labels = vec!["a".into(), "b".into()];
            let dist = vec![
                vec![Rational::zero(), rational_int(2)],
                vec![rational_int(2), Rational::zero()],
            ];
            FiniteMetricSpace::new(labels, dist).unwrap()
        };
        let rows = profile_rows(&s).unwrap();
        // samples: eps = 2 and eps = 3
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].s, rational_int(2));
        assert_eq!(rows[1].s, rational_int(0));
        assert_eq!(rows[0].n_min, 2);
        assert_eq!(rows[1].n_min, 1);
    }

    #[test]
    fn maximal_witnesses_are_nets() {
        // a maximal separated set is automatically a net; asserted on
        // computed witnesses
        let s = equilateral(5, 1);
        for eps in sample_epsilons(&s) {
            let (_, witness) = n_sep_max(&s, &eps).unwrap();
            if is_maximal_separated(&s, &witness, &eps).unwrap() {
                assert!(is_eps_net(&s, &witness, &eps).unwrap());
            }
        }
    }
}
