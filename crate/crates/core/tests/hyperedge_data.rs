//! Structure checks on 44-element generator sets. The published data is
//! not bundled; `published_generators_pass` reads it from
//! `P2_GENERATORS_FILE` (or `tests/data/p2_generators.txt`) when present.

use std::collections::BTreeSet;
use std::path::PathBuf;

use primdec::hyperedge::{admissible_partitions, singular_to_lines};
use primdec::{
    build_hyperedge_ideal, parse_generator_file, parse_polynomial, partition_rule_monomials,
    verify_structure, Field, HyperedgeSpec, Ideal, Monomial, PartitionRule, Polynomial, Q,
};

fn ideal_3x12() -> Ideal<Q> {
    build_hyperedge_ideal(&HyperedgeSpec::paper_3x12()).unwrap()
}

fn sum(ideal: &Ideal<Q>, ms: impl IntoIterator<Item = Monomial>) -> Polynomial<Q> {
    let terms = ms.into_iter().map(|m| (Q::from_i64(1), m)).collect();
    Polynomial::from_terms(ideal.ring(), terms).unwrap()
}

/// Letter-major variables: `x_j` is `j - 1`, `y_j` is `11 + j`, `z_j` is `23 + j`.
fn letters_monomial(letters: &[usize; 12]) -> Monomial {
    let mut e = vec![0u32; 36];
    for (j, &l) in letters.iter().enumerate() {
        e[12 * l + j] = 1;
    }
    Monomial::new(e)
}

/// Data with the documented shape: the 16 generators of I, then one
/// element per admissible partition. The (0,6,6), (6,6,0) and (6,0,6)
/// elements carry the rule supports; the (1,5,6) element has 252 terms,
/// each obtained from a (0,6,6) term by turning one `y` into an `x`.
fn synthetic(ideal: &Ideal<Q>) -> Vec<Polynomial<Q>> {
    let ring = ideal.ring();
    let rule = PartitionRule::default();
    let mut data = ideal.generators().to_vec();
    for t in admissible_partitions() {
        let p = match t {
            (0, 6, 6) | (6, 6, 0) | (6, 0, 6) => {
                sum(ideal, partition_rule_monomials(ring, &rule, t).unwrap())
            }
            (1, 5, 6) => {
                let base = partition_rule_monomials(ring, &rule, (0, 6, 6)).unwrap();
                let mut out = BTreeSet::new();
                'outer: for m in &base {
                    for j in 0..12 {
                        if m.exp(12 + j) == 1 {
                            let mut e = m.exponents().to_vec();
                            e[12 + j] = 0;
                            e[j] = 1;
                            out.insert(Monomial::new(e));
                            if out.len() == 252 {
                                break 'outer;
                            }
                        }
                    }
                }
                sum(ideal, out)
            }
            (a, b, _) => {
                let mut letters = [2usize; 12];
                for (j, l) in letters.iter_mut().enumerate() {
                    if j < a as usize {
                        *l = 0;
                    } else if j < (a + b) as usize {
                        *l = 1;
                    }
                }
                sum(ideal, [letters_monomial(&letters)])
            }
        };
        data.push(p);
    }
    data
}

fn failing(data: &[Polynomial<Q>], ideal: &Ideal<Q>) -> Vec<&'static str> {
    let r = verify_structure(data, ideal).unwrap();
    r.checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect()
}

#[test]
fn synthetic_data_passes_every_check() {
    let ideal = ideal_3x12();
    let data = synthetic(&ideal);
    assert_eq!(data.len(), 44);
    let report = verify_structure(&data, &ideal).unwrap();
    assert!(report.all_passed(), "{:?}", report.checks);
    assert!(report.complete);
    assert_eq!(report.partition_map.len(), 28);
    assert_eq!(report.check("rule-066").unwrap().passed, true);
}

#[test]
fn faults_are_named() {
    let ideal = ideal_3x12();
    let good = synthetic(&ideal);
    let r = ideal.ring().clone();

    let mut data = good.clone();
    data.pop();
    let f = failing(&data, &ideal);
    assert!(
        f.contains(&"count") && f.contains(&"partition-bijection"),
        "{f:?}"
    );

    let mut data = good.clone();
    data[3] = data[3].scalar_mul(&Q::from_i64(3));
    assert_eq!(failing(&data, &ideal), ["coefficients"]);

    let mut data = good.clone();
    data[0] = parse_polynomial(&r, "x1*y2*z3-x1*y3*z2").unwrap();
    assert_eq!(failing(&data, &ideal), ["head-equals-ideal"]);

    // Lowering one exponent breaks degree, coverage and the partition.
    let mut data = good.clone();
    let last = data.len() - 1;
    let mut terms = data[last].terms().to_vec();
    let mut e = terms[0].1.exponents().to_vec();
    let k = e.iter().position(|&x| x == 1).unwrap();
    e[k] = 0;
    terms[0].1 = Monomial::new(e);
    data[last] = Polynomial::from_terms(&r, terms).unwrap();
    let f = failing(&data, &ideal);
    for name in [
        "homogeneous-degree-12",
        "index-coverage",
        "constant-partition",
        "partition-bijection",
    ] {
        assert!(f.contains(&name), "{name} missing from {f:?}");
    }

    // Drop a term from g17.
    let mut data = good.clone();
    let k = data
        .iter()
        .position(|p| p.num_terms() == 216 && p.terms()[0].1.exp(0) == 0)
        .unwrap();
    let terms = data[k].terms()[1..].to_vec();
    data[k] = Polynomial::from_terms(&r, terms).unwrap();
    let f = failing(&data, &ideal);
    assert!(f.contains(&"rule-066"), "{f:?}");
}

#[test]
fn singular_block_round_trip() {
    let ideal = ideal_3x12();
    let data = synthetic(&ideal);
    let text: Vec<String> = data
        .iter()
        .map(|p| p.to_string().replace("x1*", "x(1)*").replace("y12", "y_12"))
        .collect();
    let block = format!("// generators\nideal G =\n{};\n", text.join(",\n"));
    let lines = singular_to_lines(&block);
    assert_eq!(lines.len(), 44);
    let parsed: Vec<Polynomial<Q>> = lines
        .iter()
        .map(|l| parse_polynomial(ideal.ring(), l).unwrap())
        .collect();
    assert_eq!(parsed, data);
}

#[test]
#[ignore = "needs the published 44-generator data (set P2_GENERATORS_FILE)"]
fn published_generators_pass() {
    let path = std::env::var_os("P2_GENERATORS_FILE")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/p2_generators.txt")
        });
    let text = std::fs::read_to_string(&path).expect("generator data");
    let ideal = ideal_3x12();
    let data = if text.trim_start().starts_with("ring") {
        parse_generator_file::<Q>(&text).unwrap().polys
    } else {
        singular_to_lines(&text)
            .iter()
            .map(|l| parse_polynomial(ideal.ring(), l).unwrap())
            .collect()
    };
    let report = verify_structure(&data, &ideal).unwrap();
    assert!(report.all_passed(), "{:?}", report.checks);
    let g19 = &data[18];
    assert_eq!(g19.num_terms(), 252);
}
