//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 4 and 10 do not gate the exit status: the 44-generator data set
//! is not shipped (point `P2_GENERATORS_FILE` at a copy to run the real
//! check), and the 36-variable degrevlex basis only runs with
//! `PRIMDEC_STRETCH=1`.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{ideal, CORPUS};
use primdec::hyperedge::{permutes_generators, singular_to_lines};
use primdec::{
    all_maximal_minors_ideal, build_hyperedge_ideal, generate_group, gtz_decompose, is_independent,
    maximal_independent_sets, normal_form, parse_generator_file, parse_polynomial, primality_check,
    rank_independent_sets, stabilizes, symmetry_generators, verify_structure, Field, HyperedgeSpec,
    Ideal, IndepSetReport, MonomialOrder, PolyRing, Polynomial, PrimalityStatus,
    SaturationStrategy, SymmetryAction, Q,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn primdec(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_primdec"))
        .args(args)
        .output()
        .expect("run primdec")
}

fn ideal_3x12() -> Ideal<Q> {
    build_hyperedge_ideal(&HyperedgeSpec::paper_3x12()).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let out = primdec(&["build", "paper-3x12"]);
    within(start, Duration::from_secs(1))?;
    ensure(out.status.success(), || {
        format!("exit status {}", out.status)
    })?;
    let fixture = std::fs::read_to_string(data_path("paper_3x12.txt")).unwrap();
    let got = String::from_utf8(out.stdout).unwrap();
    for (k, (a, b)) in got.lines().zip(fixture.lines()).enumerate() {
        ensure(a == b, || {
            format!("line {}: `{a}` differs from the listing `{b}`", k + 1)
        })?;
    }
    ensure(got == fixture, || "output differs from the listing".into())?;
    let file = parse_generator_file::<Q>(&got).map_err(|e| e.to_string())?;
    ensure(file.polys.len() == 16, || {
        format!("{} generators", file.polys.len())
    })?;
    for p in &file.polys {
        let unit_coeffs = p
            .terms()
            .iter()
            .all(|(c, _)| *c == Q::from_i64(1) || *c == Q::from_i64(-1));
        ensure(
            p.is_homogeneous() && p.total_degree() == Some(3) && p.num_terms() == 6 && unit_coeffs,
            || format!("generator {p} is not a cubic with six ±1 terms"),
        )?;
    }
    Ok(format!(
        "16 generators match the listing token for token ({:.0?})",
        start.elapsed()
    ))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let spec = HyperedgeSpec::paper_3x12();
    let i = ideal_3x12();
    let gens = symmetry_generators(&spec).map_err(|e| e.to_string())?;
    for g in &gens {
        let word = g.word().unwrap_or("?").to_string();
        ensure(permutes_generators(g, &i), || {
            format!("{word} does not map generators to ± generators")
        })?;
        ensure(stabilizes(g, &i).unwrap(), || {
            format!("{word} does not stabilize I")
        })?;
    }
    let order = generate_group(&gens, 36, 10_000).map(|g| g.len());
    // 3! row permutations, 4! block permutations, 3! class permutations.
    ensure(order == Some(6 * 24 * 6), || {
        format!("group order {order:?}")
    })?;
    let r = i.ring();
    let cycles: Vec<Vec<usize>> = ["x", "y", "z"]
        .iter()
        .flat_map(|l| {
            (1..=3).map(move |j| {
                vec![
                    r.var_index(&format!("{l}{j}")).unwrap(),
                    r.var_index(&format!("{l}{}", j + 3)).unwrap(),
                ]
            })
        })
        .collect();
    let sigma = SymmetryAction::from_cycles(36, &cycles).unwrap();
    ensure(stabilizes(&sigma, &i).unwrap(), || {
        "(1 4)(2 5)(3 6) does not stabilize I".into()
    })?;
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{} generators stabilize I, group order 864, (1 4)(2 5)(3 6) stabilizes ({:.1?})",
        gens.len(),
        start.elapsed()
    ))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let p1: Ideal<Q> = all_maximal_minors_ideal(3, 12).unwrap();
    ensure(p1.generators().len() == 220, || {
        format!("{} minors", p1.generators().len())
    })?;
    let gb = p1.reduced_basis().map_err(|e| e.to_string())?;
    ensure(gb.verify(), || "basis of P1 fails the S-pair check".into())?;
    let i = ideal_3x12();
    let i = i
        .generators()
        .iter()
        .map(|g| g.embed(p1.ring()))
        .collect::<Vec<_>>();
    for g in &i {
        let nf = normal_form(g, &gb).unwrap();
        ensure(nf.is_zero(), || format!("{g} does not reduce to zero"))?;
    }
    let dim = p1.dimension().map_err(|e| e.to_string())?;
    ensure(dim == 26, || format!("dimension {dim}"))?;
    Ok(format!(
        "220 minors, basis of {} elements verified, I ⊆ P1, dim 26 ({:.1?})",
        gb.elements().len(),
        start.elapsed()
    ))
}

fn criterion_4() -> Check {
    let path = std::env::var_os("P2_GENERATORS_FILE")
        .map(PathBuf::from)
        .unwrap_or_else(|| data_path("p2_generators.txt"));
    if !path.exists() {
        return Err(format!(
            "published 44-generator data not available (looked for {})",
            path.display()
        ));
    }
    let start = Instant::now();
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let i = ideal_3x12();
    let data: Vec<Polynomial<Q>> = if text.trim_start().starts_with("ring") {
        parse_generator_file::<Q>(&text)
            .map_err(|e| e.to_string())?
            .polys
    } else {
        singular_to_lines(&text)
            .iter()
            .map(|l| parse_polynomial(i.ring(), l))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?
    };
    let report = verify_structure(&data, &i).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    ensure(failed.is_empty(), || {
        format!("failing checks: {}", failed.join(", "))
    })?;
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "all {} structure checks pass ({:.1?})",
        report.checks.len(),
        start.elapsed()
    ))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    for case in CORPUS {
        let i = case.ideal();
        let comps = gtz_decompose(&i, 16, 0).map_err(|e| format!("{}: {e}", case.name))?;
        let mut meet = Ideal::unit(i.ring());
        for c in &comps {
            meet = meet.intersect(&c.primary).unwrap();
        }
        ensure(meet.equals(&i).unwrap(), || {
            format!(
                "{}: intersection of components differs from the input",
                case.name
            )
        })?;
        let oracle = case.prime_ideals();
        ensure(comps.len() == oracle.len(), || {
            format!(
                "{}: {} components, expected {}",
                case.name,
                comps.len(),
                oracle.len()
            )
        })?;
        let mut matched = BTreeSet::new();
        for c in &comps {
            let p = c
                .prime
                .as_ref()
                .ok_or_else(|| format!("{}: uncertified component", case.name))?;
            let k = oracle
                .iter()
                .position(|q| q.equals(p).unwrap())
                .ok_or_else(|| {
                    format!(
                        "{}: prime {:?} is not in the oracle",
                        case.name,
                        p.generators()
                    )
                })?;
            ensure(matched.insert(k), || {
                format!("{}: prime listed twice", case.name)
            })?;
            ensure(p.contains_ideal(&c.primary).unwrap(), || {
                format!("{}: primary not inside its prime", case.name)
            })?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} ideals decompose as expected ({:.1?})",
        CORPUS.len(),
        start.elapsed()
    ))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let (mut primes, mut others) = (0, 0);
    for case in CORPUS {
        let v = primality_check(&case.ideal(), None, 16, 0)
            .map_err(|e| format!("{}: {e}", case.name))?;
        if case.is_prime() {
            ensure(v.status == PrimalityStatus::Prime, || {
                format!("{}: {:?} for a prime", case.name, v.status)
            })?;
            primes += 1;
        } else {
            ensure(v.status == PrimalityStatus::NotPrime, || {
                format!("{}: {:?} for a non-prime", case.name, v.status)
            })?;
            let w = v
                .witness
                .as_ref()
                .ok_or_else(|| format!("{}: NOT_PRIME without a witness", case.name))?;
            ensure(w.verify(&case.ideal()).unwrap(), || {
                format!("{}: witness does not verify", case.name)
            })?;
            others += 1;
        }
    }
    ensure(primes >= 5 && others >= 5, || {
        format!("corpus too small: {primes} primes, {others} non-primes")
    })?;
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{primes} primes certified, {others} non-primes refuted with verified witnesses ({:.1?})",
        start.elapsed()
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, r: &std::sync::Arc<PolyRing>, terms: usize) -> Polynomial<Q> {
    let mut f = Polynomial::zero(r);
    while f.is_zero() {
        for _ in 0..terms {
            let c = loop {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    break c;
                }
            };
            let mut t = Polynomial::constant(r, Q::from_i64(c));
            for _ in 0..rng.gen_range(0..=2) {
                t = &t * &Polynomial::var(r, rng.gen_range(0..r.nvars()));
            }
            f = &f + &t;
        }
    }
    f
}

/// Closes `fs` under powers of `sigma`.
fn orbit_ideal(sigma: &SymmetryAction, fs: &[Polynomial<Q>]) -> Ideal<Q> {
    let r = fs[0].ring().clone();
    let mut gens = Vec::new();
    for f in fs {
        let mut g = f.clone();
        loop {
            gens.push(g.clone());
            g = sigma.apply(&g);
            if &g == f {
                break;
            }
        }
    }
    Ideal::new(&r, gens).unwrap()
}

fn m24() -> (Ideal<Q>, Vec<SymmetryAction>) {
    let r = PolyRing::new(["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]).unwrap();
    let mut gens = Vec::new();
    for a in 1..=4 {
        for b in a + 1..=4 {
            gens.push(format!("x{a}*y{b}-x{b}*y{a}"));
        }
    }
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let i = ideal(&r, &refs);
    let sym = [
        vec![vec![0, 1], vec![4, 5]],
        vec![vec![1, 2], vec![5, 6]],
        vec![vec![2, 3], vec![6, 7]],
        vec![vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]],
    ]
    .iter()
    .map(|c| SymmetryAction::from_cycles(8, c).unwrap())
    .collect();
    (i, sym)
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let r = PolyRing::new(["a", "b", "c", "d"]).unwrap();
    let ord = MonomialOrder::DegRevLex;
    let mut triples = 0;
    while triples < 100 {
        let mut perm: Vec<usize> = (0..4).collect();
        perm.shuffle(&mut rng);
        let sigma = SymmetryAction::new(perm).unwrap();
        if sigma.is_identity() {
            continue;
        }
        let fs: Vec<Polynomial<Q>> = (0..rng.gen_range(1..=2))
            .map(|_| random_poly(&mut rng, &r, 2))
            .collect();
        let p = orbit_ideal(&sigma, &fs);
        if p.is_unit().unwrap() {
            continue;
        }
        let terms = rng.gen_range(1..=2);
        let c = random_poly(&mut rng, &r, terms);
        if c.is_constant() {
            continue;
        }
        ensure(stabilizes(&sigma, &p).unwrap(), || {
            format!("σ does not stabilize {:?}", p.generators())
        })?;
        let left = p
            .saturate(&c, SaturationStrategy::Iterate, &ord)
            .unwrap()
            .saturated
            .permute(sigma.perm());
        let sp = p.permute(sigma.perm());
        let right = sp
            .saturate(&sigma.apply(&c), SaturationStrategy::Iterate, &ord)
            .unwrap()
            .saturated;
        ensure(left.equals(&right).unwrap(), || {
            format!(
                "σ(P : {c}^∞) ≠ σ(P) : σ({c})^∞ for P = {:?}",
                p.generators()
            )
        })?;
        triples += 1;
    }
    let mut pruned = 0;
    let mut cases: Vec<(String, Ideal<Q>, Vec<SymmetryAction>)> = CORPUS
        .iter()
        .map(|c| (c.name.to_string(), c.ideal(), c.symmetries()))
        .collect();
    let (i, sym) = m24();
    cases.push(("2x4 minors".into(), i, sym));
    // Graph of (1/a, 1/b): the swap (x y)(a b) exchanges the two leading
    // coefficients, so pruning halves the saturation checks.
    let r = PolyRing::new(["x", "y", "a", "b"]).unwrap();
    let swap = SymmetryAction::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    cases.push((
        "inverse graph".into(),
        ideal(&r, &["a*x-1", "b*y-1"]),
        vec![swap],
    ));
    for (name, i, sym) in &cases {
        let plain = primality_check(i, None, 16, 0).map_err(|e| format!("{name}: {e}"))?;
        let with = primality_check(i, Some(sym), 16, 0).map_err(|e| format!("{name}: {e}"))?;
        ensure(plain.status == with.status, || {
            format!(
                "{name}: {:?} unpruned, {:?} pruned",
                plain.status, with.status
            )
        })?;
        if with.orbits.len() < plain.orbits.len() {
            pruned += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "{triples} σ-saturation triples agree; pruned and unpruned verdicts agree on {} ideals ({pruned} with fewer checks) ({:.1?})",
        cases.len(),
        start.elapsed()
    ))
}

fn dominates(a: &IndepSetReport, b: &IndepSetReport) -> bool {
    let (x, y) = (a.key(), b.key());
    x.0 <= y.0 && x.1 <= y.1 && x.2 <= y.2 && x != y
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..1000 {
        let n = rng.gen_range(1..=12);
        let mut reports: Vec<IndepSetReport> = (0..n)
            .map(|_| {
                let mut u: Vec<usize> = (0..6).filter(|_| rng.gen_bool(0.5)).collect();
                u.sort_unstable();
                IndepSetReport {
                    u,
                    d_u: rng.gen_range(1..4),
                    max_lc_degree: rng.gen_range(0..3),
                    max_lc_terms: rng.gen_range(1..4),
                    per_element: Vec::new(),
                }
            })
            .collect();
        let ranked = rank_independent_sets(reports.clone());
        for (i, a) in ranked.iter().enumerate() {
            for b in &ranked[..i] {
                ensure(!dominates(a, b), || {
                    format!(
                        "case {case}: {:?} dominates but ranks after {:?}",
                        a.key(),
                        b.key()
                    )
                })?;
            }
        }
        reports.shuffle(&mut rng);
        ensure(rank_independent_sets(reports) == ranked, || {
            format!("case {case}: ranking depends on input order")
        })?;
    }
    let r = PolyRing::new(["a", "b", "c", "d", "e"]).unwrap();
    let i = ideal(&r, &["a*b", "c*d", "b*e-a*c"]);
    let gb = i.reduced_basis().unwrap();
    for seed in 0..5 {
        ensure(
            maximal_independent_sets(&gb, 4, seed) == maximal_independent_sets(&gb, 4, seed),
            || format!("seed {seed}: enumeration not reproducible"),
        )?;
    }
    let dir = std::env::temp_dir().join(format!("primdec-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("ideal.txt");
    std::fs::write(&input, "ring Q[a,b,c,d,e]\na*b\nc*d\nb*e-a*c\n").unwrap();
    let input = input.to_str().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            primdec(&[
                "indepsets",
                input,
                "--score",
                "--limit",
                "3",
                "--seed",
                "11",
            ])
            .stdout
        })
        .collect();
    std::fs::remove_dir_all(&dir).ok();
    ensure(!runs[0].is_empty() && runs[0] == runs[1], || {
        "CLI reports differ between identical runs".into()
    })?;
    Ok(
        "1000 random report sets ranked consistently with dominance; seeded runs byte-identical"
            .into(),
    )
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let ord = MonomialOrder::DegRevLex;
    let mut checked = 0;
    for case in CORPUS {
        let i = case.ideal();
        let r = i.ring().clone();
        let mut hs: Vec<Polynomial<Q>> = (0..r.nvars()).map(|v| Polynomial::var(&r, v)).collect();
        hs.push(&Polynomial::var(&r, 0) - &Polynomial::one(&r));
        if r.nvars() > 1 {
            hs.push(&Polynomial::var(&r, 0) + &Polynomial::var(&r, 1));
        }
        for h in &hs {
            let it = i
                .saturate(h, SaturationStrategy::Iterate, &ord)
                .map_err(|e| e.to_string())?;
            let ev = i
                .saturate(h, SaturationStrategy::ExtraVariable, &ord)
                .map_err(|e| e.to_string())?;
            ensure(it.saturated.equals(&ev.saturated).unwrap(), || {
                format!("{}: strategies disagree on {h}", case.name)
            })?;
            let m = it
                .exponent
                .ok_or_else(|| format!("{}: no exponent for {h}", case.name))?;
            let a = i.quotient(&h.pow(m)).unwrap();
            let b = i.quotient(&h.pow(m + 1)).unwrap();
            ensure(a.equals(&b).unwrap(), || {
                format!("{}: I : {h}^{m} ≠ I : {h}^{}", case.name, m + 1)
            })?;
            ensure(a.equals(&it.saturated).unwrap(), || {
                format!("{}: I : {h}^{m} is not the saturation", case.name)
            })?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{checked} saturations agree across strategies with stable exponents ({:.1?})",
        start.elapsed()
    ))
}

fn criterion_10() -> Check {
    if std::env::var_os("PRIMDEC_STRETCH").is_none() {
        return Err("not run (stretch goal; set PRIMDEC_STRETCH=1)".into());
    }
    let start = Instant::now();
    let i = ideal_3x12();
    let gb = i
        .groebner(&MonomialOrder::DegRevLex)
        .map_err(|e| e.to_string())?;
    let r = i.ring().clone();
    let mut u1: Vec<usize> = (1..=12)
        .flat_map(|j| ["x", "y"].map(|l| r.var_index(&format!("{l}{j}")).unwrap()))
        .collect();
    u1.extend(["z1", "z2"].map(|n| r.var_index(n).unwrap()));
    u1.sort_unstable();
    ensure(is_independent(&u1, &gb), || "u1 is not independent".into())?;
    let dim = primdec::krull_dimension(&gb);
    ensure(dim == 26, || format!("dimension {dim}"))?;
    Ok(format!(
        "basis of {} elements; u1 is a maximal independent set of size 26 ({:.0?})",
        gb.elements().len(),
        start.elapsed()
    ))
}

fn main() {
    // Criteria 4 and 10 are reported but do not gate.
    let criteria: [(u32, bool, fn() -> Check); 10] = [
        (1, true, criterion_1),
        (2, true, criterion_2),
        (3, true, criterion_3),
        (4, false, criterion_4),
        (5, true, criterion_5),
        (6, true, criterion_6),
        (7, true, criterion_7),
        (8, true, criterion_8),
        (9, true, criterion_9),
        (10, false, criterion_10),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut gating_failures = 0;
    for (n, gating, run) in criteria {
        let label = format!("criterion {n}");
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        match run() {
            Ok(detail) => println!("{label}: PASS {detail}"),
            Err(detail) => {
                println!("{label}: FAIL {detail}");
                if gating {
                    gating_failures += 1;
                }
            }
        }
    }
    if gating_failures > 0 {
        eprintln!("{gating_failures} gating criteria failed");
        std::process::exit(1);
    }
}
