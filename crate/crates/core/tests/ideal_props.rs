//! Quotients, saturation and intersection. Monomial ideals have closed
//! forms that serve as the oracle.

use std::sync::Arc;

use primdec::{Field, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, SaturationStrategy, Q};
use proptest::prelude::*;

fn ring() -> Arc<PolyRing> {
    PolyRing::new(["x", "y", "z"]).unwrap()
}

fn mono(r: &Arc<PolyRing>, m: &Monomial) -> Polynomial<Q> {
    Polynomial::monomial(r, Q::from_i64(1), m.clone())
}

fn monomial_ideal(r: &Arc<PolyRing>, ms: &[Monomial]) -> Ideal<Q> {
    Ideal::new(r, ms.iter().map(|m| mono(r, m)).collect()).unwrap()
}

fn monomials() -> impl Strategy<Value = Vec<Monomial>> {
    prop::collection::vec(prop::collection::vec(0u32..=3, 3), 1..=4)
        .prop_map(|v| v.into_iter().map(Monomial::new).collect())
}

fn small_poly() -> impl Strategy<Value = Polynomial<Q>> {
    prop::collection::vec((-2i64..=2, prop::collection::vec(0u32..=2, 3)), 1..=3).prop_map(
        |terms| {
            let terms = terms
                .into_iter()
                .map(|(c, e)| (Q::from_i64(c), Monomial::new(e)))
                .collect();
            Polynomial::from_terms(&ring(), terms).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monomial_quotient(ms in monomials(), m in prop::collection::vec(0u32..=3, 3)) {
        let r = ring();
        let m = Monomial::new(m);
        let got = monomial_ideal(&r, &ms).quotient(&mono(&r, &m)).unwrap();
        let want: Vec<Monomial> = ms.iter().map(|g| g.div(&g.gcd(&m)).unwrap()).collect();
        prop_assert!(got.equals(&monomial_ideal(&r, &want)).unwrap());
    }

    #[test]
    fn monomial_saturation(ms in monomials(), v in 0usize..3) {
        let r = ring();
        let ideal = monomial_ideal(&r, &ms);
        let want: Vec<Monomial> = ms
            .iter()
            .map(|g| {
                let mut e = g.exponents().to_vec();
                e[v] = 0;
                Monomial::new(e)
            })
            .collect();
        let want = monomial_ideal(&r, &want);
        for strategy in [SaturationStrategy::Iterate, SaturationStrategy::ExtraVariable] {
            let s = ideal.saturate(&Polynomial::var(&r, v), strategy, &MonomialOrder::DegRevLex).unwrap();
            prop_assert!(s.saturated.equals(&want).unwrap());
        }
    }

    #[test]
    fn monomial_intersection(a in monomials(), b in monomials()) {
        let r = ring();
        let got = monomial_ideal(&r, &a).intersect(&monomial_ideal(&r, &b)).unwrap();
        let lcms: Vec<Monomial> = a.iter().flat_map(|m| b.iter().map(move |n| m.lcm(n))).collect();
        prop_assert!(got.equals(&monomial_ideal(&r, &lcms)).unwrap());
    }

    #[test]
    fn saturation_chain(gens in prop::collection::vec(small_poly(), 1..=2), h in small_poly()) {
        let gens: Vec<Polynomial<Q>> = gens.into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty() && !h.is_zero());
        let ord = MonomialOrder::DegRevLex;
        let ideal = Ideal::new(&ring(), gens).unwrap();
        let quot = ideal.quotient(&h).unwrap();
        let sat = ideal.saturate(&h, SaturationStrategy::Iterate, &ord).unwrap();
        prop_assert!(quot.contains_ideal(&ideal).unwrap());
        prop_assert!(sat.saturated.contains_ideal(&quot).unwrap());
        let m = sat.exponent.unwrap();
        let hm = h.pow(m);
        for g in sat.saturated.reduced_basis().unwrap().elements() {
            prop_assert!(ideal.contains(&(&hm * g)).unwrap());
        }
        let other = ideal.saturate(&h, SaturationStrategy::ExtraVariable, &ord).unwrap();
        prop_assert!(other.saturated.equals(&sat.saturated).unwrap());
    }

    #[test]
    fn intersection_bounds(a in prop::collection::vec(small_poly(), 1..=2), b in prop::collection::vec(small_poly(), 1..=2)) {
        let a: Vec<Polynomial<Q>> = a.into_iter().filter(|p| !p.is_zero()).collect();
        let b: Vec<Polynomial<Q>> = b.into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!a.is_empty() && !b.is_empty());
        let (i, j) = (Ideal::new(&ring(), a).unwrap(), Ideal::new(&ring(), b).unwrap());
        let meet = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&meet).unwrap() && j.contains_ideal(&meet).unwrap());
        prop_assert!(meet.contains_ideal(&i.product(&j).unwrap()).unwrap());
    }
}
