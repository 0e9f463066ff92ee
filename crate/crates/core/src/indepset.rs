//! Independent sets of variables: Krull dimension from a leading ideal,
//! seeded enumeration of maximal independent sets, and the ranking
//! heuristic used to pick the set for dimension reduction.
//!
//! A set `u` is independent with respect to a Gröbner basis when no leading
//! monomial is supported inside `u`; equivalently, `X \ u` meets the support
//! of every leading monomial. Maximal independent sets are therefore the
//! complements of minimum hitting sets of those supports.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{leading_ideal, vector_space_dimension, GroebnerBasis, QuotientDim};
use crate::ideal::Ideal;
use crate::order::MonomialOrder;
use crate::ring::PolyRing;

/// Supports of the minimal leading monomials, each a sorted variable list,
/// keeping only inclusion-minimal supports.
fn leading_supports<C: Field>(gb: &GroebnerBasis<C>) -> Vec<Vec<usize>> {
    let mut sups: Vec<Vec<usize>> = leading_ideal(gb)
        .iter()
        .map(|m| m.support().collect())
        .collect();
    sups.sort_by_key(|s| (s.len(), s.clone()));
    sups.dedup();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in sups {
        if !out.iter().any(|o| o.iter().all(|v| s.contains(v))) {
            out.push(s);
        }
    }
    out
}

/// Independence modulo the leading ideal of `gb`. This implies
/// `I ∩ K[u] = 0` but not conversely for sets below the dimension.
pub fn is_independent<C: Field>(u: &[usize], gb: &GroebnerBasis<C>) -> bool {
    leading_ideal(gb)
        .iter()
        .all(|m| m.support().any(|v| !u.contains(&v)))
}

/// Search for hitting sets of exactly `k` variables.
struct HittingSearch<'a> {
    supports: &'a [Vec<usize>],
    k: usize,
    chosen: Vec<bool>,
    forbidden: Vec<bool>,
    count: usize,
}

impl HittingSearch<'_> {
    fn first_unhit(&self) -> Option<&Vec<usize>> {
        self.supports
            .iter()
            .find(|s| !s.iter().any(|&v| self.chosen[v]))
    }

    fn feasible(&self) -> bool {
        // every unhit support needs a usable variable
        self.supports
            .iter()
            .filter(|s| !s.iter().any(|&v| self.chosen[v]))
            .all(|s| s.iter().any(|&v| !self.forbidden[v]))
    }

    /// Visits hitting sets of size `k`, each exactly once, until `visit`
    /// returns false. Branch orders are shuffled with `rng` when given.
    fn run(
        &mut self,
        rng: &mut Option<ChaCha8Rng>,
        visit: &mut dyn FnMut(&[bool]) -> bool,
    ) -> bool {
        let Some(sup) = self.first_unhit().cloned() else {
            if self.count == self.k {
                return visit(&self.chosen);
            }
            return true;
        };
        if self.count == self.k || !self.feasible() {
            return true;
        }
        let mut branch: Vec<usize> = sup.into_iter().filter(|&v| !self.forbidden[v]).collect();
        if let Some(r) = rng.as_mut() {
            branch.shuffle(r);
        }
        let mut newly_forbidden = Vec::new();
        let mut keep_going = true;
        for v in branch {
            self.chosen[v] = true;
            self.count += 1;
            keep_going = self.run(rng, visit);
            self.chosen[v] = false;
            self.count -= 1;
            if !keep_going {
                break;
            }
            // later branches exclude v so every set is produced once
            self.forbidden[v] = true;
            newly_forbidden.push(v);
        }
        for v in newly_forbidden {
            self.forbidden[v] = false;
        }
        keep_going
    }
}

fn min_hitting_size(supports: &[Vec<usize>], nvars: usize) -> usize {
    for k in 0..=nvars {
        let mut search = HittingSearch {
            supports,
            k,
            chosen: vec![false; nvars],
            forbidden: vec![false; nvars],
            count: 0,
        };
        let mut found = false;
        search.run(&mut None, &mut |_| {
            found = true;
            false
        });
        if found {
            return k;
        }
    }
    nvars
}

/// Krull dimension of `K[X]/I` from a Gröbner basis of a proper ideal `I`.
pub fn krull_dimension<C: Field>(gb: &GroebnerBasis<C>) -> usize {
    let n = gb.ring().nvars();
    n - min_hitting_size(&leading_supports(gb), n)
}

/// Up to `limit` maximal independent sets (sorted variable indices) in a
/// seeded pseudo-random order; all of them if there are fewer.
pub fn maximal_independent_sets<C: Field>(
    gb: &GroebnerBasis<C>,
    limit: usize,
    seed: u64,
) -> Vec<Vec<usize>> {
    let n = gb.ring().nvars();
    if gb.is_unit() || limit == 0 {
        return Vec::new();
    }
    let supports = leading_supports(gb);
    let k = min_hitting_size(&supports, n);
    let mut search = HittingSearch {
        supports: &supports,
        k,
        chosen: vec![false; n],
        forbidden: vec![false; n],
        count: 0,
    };
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut rng = Some(ChaCha8Rng::seed_from_u64(seed));
    search.run(&mut rng, &mut |chosen| {
        let u: Vec<usize> = (0..n).filter(|&v| !chosen[v]).collect();
        if seen.insert(u.clone()) {
            out.push(u);
        }
        out.len() < limit
    });
    out
}

/// Scoring data for one maximal independent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndepSetReport {
    /// Sorted variable indices.
    pub u: Vec<usize>,
    pub d_u: u64,
    pub max_lc_degree: u64,
    pub max_lc_terms: usize,
    /// (total degree, number of terms) of each leading coefficient.
    pub per_element: Vec<(u64, usize)>,
}

impl IndepSetReport {
    pub fn key(&self) -> (u64, u64, usize) {
        (self.d_u, self.max_lc_degree, self.max_lc_terms)
    }

    /// `u=<vars> d_u=<n> lcdeg=<n> lcterms=<n>`.
    pub fn display<'a>(&'a self, ring: &'a PolyRing) -> impl fmt::Display + 'a {
        struct Line<'a>(&'a IndepSetReport, &'a PolyRing);
        impl fmt::Display for Line<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let names: Vec<&str> = self.0.u.iter().map(|&v| self.1.name(v)).collect();
                write!(
                    f,
                    "u={} d_u={} lcdeg={} lcterms={}",
                    names.join(","),
                    self.0.d_u,
                    self.0.max_lc_degree,
                    self.0.max_lc_terms
                )
            }
        }
        Line(self, ring)
    }
}

/// Ranking order: `(d_u, max degree, max terms)` then the index list.
pub fn compare_reports(a: &IndepSetReport, b: &IndepSetReport) -> Ordering {
    a.key().cmp(&b.key()).then_with(|| a.u.cmp(&b.u))
}

pub fn rank_independent_sets(mut reports: Vec<IndepSetReport>) -> Vec<IndepSetReport> {
    reports.sort_by(compare_reports);
    reports
}

/// Localizes at `u`, checks that `u` is a maximal independent set, and
/// collects the ranking data. `ord` fixes the order inside the elimination
/// blocks.
pub fn score_independent_set<C: Field>(
    ideal: &Ideal<C>,
    u: &[usize],
    ord: &MonomialOrder,
) -> Result<IndepSetReport> {
    let mut u = u.to_vec();
    u.sort_unstable();
    u.dedup();
    let n = ideal.ring().nvars();
    if let Some(&v) = u.iter().find(|&&v| v >= n) {
        return Err(AlgebraError::InvalidArgument(format!(
            "variable index {v} out of range"
        )));
    }
    let gb = ideal.localized_groebner(ord, &u)?;
    if gb
        .full_basis()
        .iter()
        .any(|g| gb.main_leading(g).0.is_one())
    {
        let names: Vec<&str> = u.iter().map(|&v| ideal.ring().name(v)).collect();
        return Err(AlgebraError::NotIndependent(format!(
            "the ideal meets K[{}]",
            names.join(",")
        )));
    }
    let dim = ideal.dimension()?;
    if dim < 0 {
        return Err(AlgebraError::UnitIdeal);
    }
    if u.len() != dim as usize {
        return Err(AlgebraError::NotMaximal {
            size: u.len(),
            dimension: dim as usize,
        });
    }
    let d_u = match vector_space_dimension(&gb) {
        QuotientDim::Finite(d) => d,
        QuotientDim::Infinite => return Err(AlgebraError::NotZeroDimensional),
    };
    let per_element: Vec<(u64, usize)> = gb
        .leading_coefficients()
        .iter()
        .map(|c| (c.total_degree().unwrap_or(0), c.num_terms()))
        .collect();
    Ok(IndepSetReport {
        max_lc_degree: per_element.iter().map(|e| e.0).max().unwrap_or(0),
        max_lc_terms: per_element.iter().map(|e| e.1).max().unwrap_or(0),
        u,
        d_u,
        per_element,
    })
}

/// Scores the given sets in parallel; the result is ranked.
pub fn score_and_rank<C: Field>(
    ideal: &Ideal<C>,
    sets: &[Vec<usize>],
    ord: &MonomialOrder,
) -> Result<Vec<IndepSetReport>> {
    let reports: Result<Vec<IndepSetReport>> = sets
        .par_iter()
        .map(|u| score_independent_set(ideal, u, ord))
        .collect();
    Ok(rank_independent_sets(reports?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::parse::parse_polynomial;
    use std::sync::Arc;

    fn id(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal<Q> {
        Ideal::new(
            r,
            gens.iter()
                .map(|s| parse_polynomial(r, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn independence_examples() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        let gb = id(&r, &["x*y"])
            .groebner(&MonomialOrder::DegRevLex)
            .unwrap();
        assert!(is_independent(&[0], &gb));
        assert!(!is_independent(&[0, 1], &gb));
        let gb = id(&r, &["x^2-y"]).groebner(&MonomialOrder::Lex).unwrap();
        assert!(is_independent(&[1], &gb));
    }

    #[test]
    fn enumeration_examples() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        let gb = id(&r, &["x*y"])
            .groebner(&MonomialOrder::DegRevLex)
            .unwrap();
        let mut sets = maximal_independent_sets(&gb, 10, 1);
        sets.sort();
        assert_eq!(sets, vec![vec![0], vec![1]]);
        let r3 = PolyRing::new(["x", "y", "z"]).unwrap();
        let gb = id(&r3, &["x*y", "x*z"])
            .groebner(&MonomialOrder::DegRevLex)
            .unwrap();
        assert_eq!(maximal_independent_sets(&gb, 10, 1), vec![vec![1, 2]]);
        let gb = Ideal::<Q>::zero(&r)
            .groebner(&MonomialOrder::DegRevLex)
            .unwrap();
        assert_eq!(maximal_independent_sets(&gb, 10, 1), vec![vec![0, 1]]);
    }

    #[test]
    fn scoring_examples() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::DegRevLex;
        let rep = score_independent_set(&id(&r, &["x*y"]), &[0], &ord).unwrap();
        assert_eq!((rep.d_u, rep.per_element.clone()), (1, vec![(1, 1)]));
        let rep = score_independent_set(&id(&r, &["y^2-x"]), &[0], &ord).unwrap();
        assert_eq!((rep.d_u, rep.per_element.clone()), (2, vec![(0, 1)]));
        let rep = score_independent_set(&id(&r, &["x^2*y+x*y-x"]), &[0], &ord).unwrap();
        assert_eq!((rep.d_u, rep.per_element.clone()), (1, vec![(2, 2)]));
        assert_eq!(rep.display(&r).to_string(), "u=x d_u=1 lcdeg=2 lcterms=2");
        assert!(matches!(
            score_independent_set(&id(&r, &["x*y"]), &[0, 1], &ord),
            Err(AlgebraError::NotIndependent(_))
        ));
    }

    #[test]
    fn ranking_examples() {
        let mk = |u: Vec<usize>, d, deg, terms| IndepSetReport {
            u,
            d_u: d,
            max_lc_degree: deg,
            max_lc_terms: terms,
            per_element: vec![],
        };
        let ranked = rank_independent_sets(vec![mk(vec![0], 5, 0, 0), mk(vec![1], 3, 9, 9)]);
        assert_eq!(ranked[0].d_u, 3);
        let ranked = rank_independent_sets(vec![mk(vec![0], 3, 4, 0), mk(vec![1], 3, 2, 9)]);
        assert_eq!(ranked[0].max_lc_degree, 2);
        let ranked = rank_independent_sets(vec![mk(vec![2, 3], 1, 1, 1), mk(vec![0, 5], 1, 1, 1)]);
        assert_eq!(ranked[0].u, vec![0, 5]);
    }
}
