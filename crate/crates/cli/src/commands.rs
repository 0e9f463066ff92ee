use std::error::Error;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use primdec::hyperedge::{matrix_ring, singular_to_lines};
use primdec::{
    all_maximal_minors_ideal, build_hyperedge_ideal, gtz_decompose_with, maximal_independent_sets,
    parse_generator_file, parse_polynomial, primality_check_with, score_and_rank,
    symmetry_generators, verify_structure, write_generator_file, AlgebraError, GtzOptions,
    HyperedgeSpec, Ideal, MonomialOrder, PolyRing, PrimalityOptions, PrimalityStatus,
    PrimalityWitness, SaturationStrategy, SymmetryAction, Q,
};

use crate::progress::note;
use crate::report::{self, Report};
use crate::spec_file::parse_spec;
use crate::{Command, GlobalArgs, Outcome, Strategy};

pub type CliError = Box<dyn Error + Send + Sync>;
type Run = Result<(String, Outcome), CliError>;

pub fn run(global: &GlobalArgs, cmd: &Command) -> Run {
    match cmd {
        Command::Build { source } => build(source),
        Command::Groebner { input, order } => groebner(input, order),
        Command::Indepsets {
            input,
            limit,
            score,
            order,
        } => indepsets(global, input, *limit, *score, order),
        Command::Decompose {
            input,
            budget,
            no_verify,
        } => decompose(global, input, *budget as usize, !no_verify),
        Command::Primality {
            input,
            budget,
            symmetry,
            u,
            strategy,
        } => primality(
            global,
            input,
            *budget as usize,
            symmetry.as_deref(),
            u.as_deref(),
            *strategy,
        ),
        Command::Verify {
            input,
            against,
            singular,
        } => verify(global, input, against, *singular),
    }
}

pub fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

struct Input {
    bytes: Vec<u8>,
    ideal: Ideal<Q>,
}

fn load(path: &Path) -> Result<Input, CliError> {
    let bytes = read(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|_| format!("{}: not UTF-8", path.display()))?;
    let file = parse_generator_file::<Q>(text).map_err(|e| format!("{}: {e}", path.display()))?;
    if file.field != "Q" {
        return Err(format!(
            "{}: unsupported coefficient field `{}` (only Q)",
            path.display(),
            file.field
        )
        .into());
    }
    note(format!(
        "read {} generators in {} variables",
        file.polys.len(),
        file.ring.nvars()
    ));
    let ideal = Ideal::new(&file.ring, file.polys)?;
    Ok(Input { bytes, ideal })
}

fn builtin_spec(name: &str) -> Option<HyperedgeSpec> {
    (name == "paper-3x12").then(HyperedgeSpec::paper_3x12)
}

fn build(source: &str) -> Run {
    let ideal: Ideal<Q> = match source {
        "p1-minors" => all_maximal_minors_ideal(3, 12)?,
        _ => {
            let spec = match builtin_spec(source) {
                Some(spec) => spec,
                None => {
                    let path = Path::new(source);
                    let bytes = read(path)?;
                    let text =
                        std::str::from_utf8(&bytes).map_err(|_| format!("{source}: not UTF-8"))?;
                    parse_spec(text).map_err(|e| format!("{source}: {e}"))?
                }
            };
            build_hyperedge_ideal(&spec)?
        }
    };
    note(format!("built {} generators", ideal.generators().len()));
    Ok((
        write_generator_file("Q", ideal.ring(), ideal.generators()),
        Outcome::Certified,
    ))
}

fn groebner(input: &Path, order: &str) -> Run {
    let inp = load(input)?;
    let ord = MonomialOrder::parse(order, inp.ideal.ring())?;
    note(format!("computing the {ord} basis"));
    let gb = inp.ideal.groebner(&ord)?;
    note(format!("basis has {} elements", gb.elements().len()));
    Ok((
        write_generator_file("Q", inp.ideal.ring(), gb.elements()),
        Outcome::Certified,
    ))
}

fn indepsets(global: &GlobalArgs, input: &Path, limit: usize, score: bool, order: &str) -> Run {
    let inp = load(input)?;
    let ring = inp.ideal.ring().clone();
    let ord = MonomialOrder::parse(order, &ring)?;
    let gb = inp.ideal.groebner(&ord)?;
    if gb.is_unit() {
        return Err(AlgebraError::UnitIdeal.into());
    }
    note("enumerating independent sets");
    let sets = maximal_independent_sets(&gb, limit, global.seed);
    let mut rep = Report::new("indepsets", &ring, &inp.bytes, global.seed);
    rep.line(format!("order: {order}"));
    rep.line(format!("sets: {}", sets.len()));
    if score {
        note(format!("scoring {} sets", sets.len()));
        for r in score_and_rank(&inp.ideal, &sets, &MonomialOrder::DegRevLex)? {
            rep.line(r.display(&ring).to_string());
        }
    } else {
        for u in &sets {
            rep.line(format!("u={}", report::vars(u, &ring)));
        }
    }
    Ok((rep.finish(), Outcome::Certified))
}

fn decompose(global: &GlobalArgs, input: &Path, budget: usize, verify_splits: bool) -> Run {
    let inp = load(input)?;
    let ring = inp.ideal.ring().clone();
    let mut rep = Report::new("decompose", &ring, &inp.bytes, global.seed);
    rep.line(format!("budget: {budget}"));
    let opts = GtzOptions {
        scorer_budget: budget,
        seed: global.seed,
        verify_splits,
        ..GtzOptions::default()
    };
    note("running the decomposition");
    let comps = match gtz_decompose_with(&inp.ideal, &opts) {
        Ok(c) => c,
        Err(AlgebraError::FactorizationIncomplete(why)) => {
            rep.line("status: UNKNOWN");
            rep.line(format!("reason: factorization incomplete: {why}"));
            return Ok((rep.finish(), Outcome::Unknown));
        }
        Err(e) => return Err(e.into()),
    };
    let certified = comps.iter().all(|c| c.prime.is_some());
    rep.line(format!(
        "status: {}",
        if certified { "CERTIFIED" } else { "UNKNOWN" }
    ));
    rep.line(format!("components: {}", comps.len()));
    for (k, c) in comps.iter().enumerate() {
        rep.line(format!("component {}", k + 1));
        rep.line(format!("u: {}", report::vars(&c.provenance.u, &ring)));
        for (h, m) in &c.provenance.exponents {
            rep.line(format!("exponent: {m} {h}"));
        }
        rep.basis("primary", &c.primary)?;
        match &c.prime {
            Some(p) => {
                rep.basis("prime", p)?;
                let kind = c
                    .provenance
                    .certificate
                    .as_ref()
                    .map_or("prime-input".to_string(), |m| {
                        report::maximality_certificate(m, &ring)
                    });
                rep.line(format!("verdict: PRIME {kind}"));
            }
            None => rep.line("verdict: UNKNOWN"),
        }
    }
    Ok((
        rep.finish(),
        if certified {
            Outcome::Certified
        } else {
            Outcome::Unknown
        },
    ))
}

/// One generator per line, written as cycles of variable names, e.g.
/// `(x1 x4)(y1 y4)`; `#` starts a comment.
fn parse_symmetry_file(text: &str, ring: &PolyRing) -> Result<Vec<SymmetryAction>, CliError> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut cycles = Vec::new();
        for chunk in line.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| format!("symmetry line {}: expected `(`", no + 1))?;
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|n| ring.var_index(n))
                .collect::<Result<Vec<usize>, _>>()
                .map_err(|e| format!("symmetry line {}: {e}", no + 1))?;
            cycles.push(cycle);
        }
        let action = SymmetryAction::from_cycles(ring.nvars(), &cycles)
            .map_err(|e| format!("symmetry line {}: {e}", no + 1))?;
        out.push(action.with_word(line));
    }
    Ok(out)
}

fn load_symmetry(source: &str, ring: &Arc<PolyRing>) -> Result<Vec<SymmetryAction>, CliError> {
    if let Some(spec) = builtin_spec(source) {
        let expected = matrix_ring(&spec.letters, spec.cols)?;
        if expected.names() != ring.names() {
            return Err(format!(
                "--symmetry {source} needs the ring {}",
                expected.header("Q")
            )
            .into());
        }
        return Ok(symmetry_generators(&spec)?);
    }
    let bytes = read(Path::new(source))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| format!("{source}: not UTF-8"))?;
    parse_symmetry_file(text, ring)
}

fn primality(
    global: &GlobalArgs,
    input: &Path,
    budget: usize,
    symmetry: Option<&str>,
    u: Option<&[String]>,
    strategy: Strategy,
) -> Run {
    let inp = load(input)?;
    let ring = inp.ideal.ring().clone();
    let sym = symmetry.map(|s| load_symmetry(s, &ring)).transpose()?;
    let u = u
        .map(|names| {
            names
                .iter()
                .map(|n| ring.var_index(n.trim()))
                .collect::<primdec::Result<Vec<usize>>>()
        })
        .transpose()?;
    let opts = PrimalityOptions {
        scorer_budget: budget,
        seed: global.seed,
        u,
        strategy: match strategy {
            Strategy::Iterate => SaturationStrategy::Iterate,
            Strategy::ExtraVariable => SaturationStrategy::ExtraVariable,
        },
    };
    note("running the primality check");
    let v = primality_check_with(&inp.ideal, sym.as_deref(), &opts)?;
    let mut rep = Report::new("primality", &ring, &inp.bytes, global.seed);
    let status = match v.status {
        PrimalityStatus::Prime => "PRIME",
        PrimalityStatus::NotPrime => "NOT_PRIME",
        PrimalityStatus::Unknown => "UNKNOWN",
    };
    rep.line(format!("status: {status}"));
    rep.line(format!("u: {}", report::vars(&v.u, &ring)));
    rep.line(format!(
        "maximality: {}",
        report::maximality(&v.maximality, &ring)
    ));
    rep.line(format!(
        "symmetry-generators: {}",
        sym.as_ref().map_or(0, Vec::len)
    ));
    rep.line(format!("coefficients: {}", v.coefficients.len()));
    for c in &v.coefficients {
        rep.line(format!("  {c}"));
    }
    rep.line(format!("saturation-checks: {}", v.orbits.len()));
    for orbit in &v.orbits {
        let idx: Vec<String> = orbit.iter().map(|i| (i + 1).to_string()).collect();
        rep.line(format!("  orbit {}", idx.join(",")));
    }
    if let Some(w) = &v.witness {
        match w {
            PrimalityWitness::Saturation {
                coefficient,
                element,
                exponent,
            } => {
                rep.line(format!(
                    "witness: saturation coefficient={coefficient} exponent={exponent}"
                ));
                rep.line(format!("  element {element}"));
            }
            PrimalityWitness::ZeroDivisor { factors } => {
                rep.line(format!("witness: zero-divisor {}", report::polys(factors)));
            }
        }
        rep.line(format!("witness-verified: {}", w.verify(&inp.ideal)?));
    }
    if let Some(ob) = &v.obligation {
        rep.line(format!("obligation: {ob}"));
    }
    let outcome = match v.status {
        PrimalityStatus::Unknown => Outcome::Unknown,
        _ => Outcome::Certified,
    };
    Ok((rep.finish(), outcome))
}

fn verify(global: &GlobalArgs, input: &Path, against: &str, singular: bool) -> Run {
    let spec = builtin_spec(against)
        .ok_or_else(|| format!("unknown reference `{against}` (expected paper-3x12)"))?;
    let ideal: Ideal<Q> = build_hyperedge_ideal(&spec)?;
    let ring = ideal.ring().clone();
    let bytes = read(input)?;
    let text =
        std::str::from_utf8(&bytes).map_err(|_| format!("{}: not UTF-8", input.display()))?;
    let data = if singular {
        let lines = singular_to_lines(text);
        if lines.is_empty() {
            return Err(format!("{}: no generators found", input.display()).into());
        }
        lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                parse_polynomial::<Q>(&ring, l)
                    .map_err(|e| format!("{}: generator {}: {e}", input.display(), i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let file =
            parse_generator_file::<Q>(text).map_err(|e| format!("{}: {e}", input.display()))?;
        if file.ring.names() != ring.names() {
            return Err(format!(
                "{}: expected the ring {}",
                input.display(),
                ring.header("Q")
            )
            .into());
        }
        file.polys
    };
    note(format!("checking {} generators", data.len()));
    let r = verify_structure(&data, &ideal)?;
    let mut rep = Report::new("verify", &ring, &bytes, global.seed);
    rep.line(format!("against: {against}"));
    rep.line(format!("generators: {}", data.len()));
    for g in &r.generators {
        let part = g
            .partition
            .map_or("-".to_string(), |(a, b, c)| format!("({a},{b},{c})"));
        let coeffs: Vec<String> = g
            .coefficients
            .iter()
            .map(|(c, n)| format!("{c}:{n}"))
            .collect();
        rep.line(format!(
            "generator {} partition={part} terms={} coefficients={} covers={}",
            g.index,
            g.terms,
            coeffs.join(","),
            g.covers_indices
        ));
    }
    for c in &r.checks {
        rep.line(format!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    let passed = r.checks.iter().filter(|c| c.passed).count();
    rep.line(format!(
        "summary: {passed}/{} checks passed",
        r.checks.len()
    ));
    Ok((
        rep.finish(),
        if r.all_passed() {
            Outcome::Certified
        } else {
            Outcome::Failed
        },
    ))
}
