//! Independent sets checked by brute force over subsets and by
//! elimination.

use std::collections::BTreeSet;

use primdec::{
    is_independent, krull_dimension, maximal_independent_sets, Field, Ideal, Monomial, PolyRing,
    Polynomial, Q,
};
use proptest::prelude::*;

const N: usize = 6;

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // A monomial ideal meets K[u] exactly when some generator only uses
    // variables of u.
    #[test]
    fn monomial_ideals_match_brute_force(
        gens in prop::collection::vec(prop::collection::vec(0u32..=2, N), 1..=5),
        seed in 0u64..1000,
    ) {
        let gens: Vec<Monomial> = gens.into_iter().map(Monomial::new).filter(|m| !m.is_one()).collect();
        prop_assume!(!gens.is_empty());
        let names: Vec<String> = (1..=N).map(|i| format!("v{i}")).collect();
        let r = PolyRing::new(&names).unwrap();
        let polys = gens.iter().map(|m| Polynomial::monomial(&r, Q::from_i64(1), m.clone())).collect();
        let gb = Ideal::new(&r, polys).unwrap().reduced_basis().unwrap();

        let independent: Vec<Vec<usize>> = subsets(N)
            .filter(|u| !gens.iter().any(|m| m.support().all(|v| u.contains(&v))))
            .collect();
        let dim = independent.iter().map(Vec::len).max().unwrap();
        prop_assert_eq!(krull_dimension(&gb), dim);
        let want: BTreeSet<Vec<usize>> = independent.into_iter().filter(|u| u.len() == dim).collect();
        let got: BTreeSet<Vec<usize>> = maximal_independent_sets(&gb, usize::MAX, seed).into_iter().collect();
        prop_assert_eq!(&got, &want);
        let limited = maximal_independent_sets(&gb, 2, seed);
        prop_assert_eq!(limited.len(), want.len().min(2));
        prop_assert_eq!(limited, maximal_independent_sets(&gb, 2, seed));
    }

    // Leading-ideal independence implies I ∩ K[u] = 0, and the largest u
    // with I ∩ K[u] = 0 has the Krull dimension as its size.
    #[test]
    fn independence_agrees_with_elimination(
        terms in prop::collection::vec((prop::sample::select(vec![-1i64, 1, 2]), prop::collection::vec(0u32..=2, 4)), 2..=4),
    ) {
        let r = PolyRing::new(["a", "b", "c", "d"]).unwrap();
        let (left, right) = terms.split_at(terms.len() / 2);
        let poly = |ts: &[(i64, Vec<u32>)]| {
            Polynomial::from_terms(&r, ts.iter().map(|(c, e)| (Q::from_i64(*c), Monomial::new(e.clone()))).collect()).unwrap()
        };
        let gens: Vec<Polynomial<Q>> = [poly(left), poly(right)].into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(&r, gens).unwrap();
        prop_assume!(!ideal.is_unit().unwrap());
        let gb = ideal.reduced_basis().unwrap();
        let mut largest = 0;
        for u in subsets(4) {
            let rest: Vec<usize> = (0..4).filter(|i| !u.contains(i)).collect();
            let meets = !ideal.eliminate(&rest).unwrap().is_zero();
            if is_independent(&u, &gb) {
                prop_assert!(!meets, "{:?}", u);
            }
            if !meets {
                largest = largest.max(u.len());
            }
        }
        prop_assert_eq!(krull_dimension(&gb), largest);
    }
}
