//! Primary decomposition by dimension reduction: rank maximal independent
//! sets, split the zero-dimensional localization by factoring minimal
//! polynomials, contract back, and recurse on the remainder `<I, h>`.
//!
//! The primality check localizes at the top-ranked independent set `u`,
//! certifies that the localization is a maximal ideal of `K(u)[X \ u]`, and
//! checks `P : c = P` for each leading coefficient `c` of the localized
//! basis. Symmetries of `P` let coefficients in one orbit share a check.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Arc;

use log::{debug, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::factor::{factor_in_variable, Certificate, Factorization, Factorize};
use crate::field::Field;
use crate::groebner::{vector_space_dimension, GroebnerBasis, QuotientDim};
use crate::ideal::{Ideal, SaturationStrategy};
use crate::indepset::{maximal_independent_sets, score_and_rank};
use crate::order::{Block, BlockKind, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Largest permutation group enumerated for orbit pruning.
pub const GROUP_LIMIT: usize = 10_000;
const LINEAR_FORM_TRIES: usize = 8;
const LINEAR_FORM_RANGE: i64 = 5;

/// A permutation of the ring variables acting as a ring automorphism:
/// variable `i` is sent to variable `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryAction {
    perm: Vec<usize>,
    word: Option<String>,
}

impl SymmetryAction {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(AlgebraError::InvalidArgument(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        Ok(SymmetryAction { perm, word: None })
    }

    pub fn identity(nvars: usize) -> Self {
        SymmetryAction {
            perm: (0..nvars).collect(),
            word: None,
        }
    }

    /// Product of disjoint or overlapping cycles, applied right to left.
    pub fn from_cycles(nvars: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Self::identity(nvars);
        for cyc in cycles {
            let mut perm: Vec<usize> = (0..nvars).collect();
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a >= nvars || b >= nvars {
                    return Err(AlgebraError::InvalidArgument(format!(
                        "cycle entry out of range in {cyc:?}"
                    )));
                }
                perm[a] = b;
            }
            acc = Self::new(perm)?.compose(&acc);
        }
        Ok(acc)
    }

    pub fn with_word(mut self, word: impl Into<String>) -> Self {
        self.word = Some(word.into());
        self
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Generator word this action was built from, if recorded.
    pub fn word(&self) -> Option<&str> {
        self.word.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        SymmetryAction {
            perm: inv,
            word: None,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        SymmetryAction {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
            word: None,
        }
    }

    pub fn apply<C: Field>(&self, f: &Polynomial<C>) -> Polynomial<C> {
        f.permute(&self.perm)
    }
}

/// The group generated by `gens`, or `None` if it has more than `limit`
/// elements. The identity comes first.
pub fn generate_group(
    gens: &[SymmetryAction],
    nvars: usize,
    limit: usize,
) -> Option<Vec<SymmetryAction>> {
    let id = SymmetryAction::identity(nvars);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.perm.clone()]);
    let mut out = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let h = g.compose(&out[i]);
            if seen.insert(h.perm.clone()) {
                if out.len() >= limit {
                    return None;
                }
                out.push(h);
                queue.push_back(out.len() - 1);
            }
        }
    }
    Some(out)
}

fn check_action<C: Field>(sigma: &SymmetryAction, ideal: &Ideal<C>) -> Result<()> {
    if sigma.nvars() != ideal.ring().nvars() {
        return Err(AlgebraError::InvalidArgument(format!(
            "permutation on {} variables applied to a ring with {}",
            sigma.nvars(),
            ideal.ring().nvars()
        )));
    }
    Ok(())
}

pub fn apply_automorphism<C: Field>(sigma: &SymmetryAction, ideal: &Ideal<C>) -> Result<Ideal<C>> {
    check_action(sigma, ideal)?;
    Ok(ideal.permute(&sigma.perm))
}

/// `σ(I) = I`. Tries the generator-wise test (each image is a scalar
/// multiple of a generator) before comparing reduced bases.
pub fn stabilizes<C: Field>(sigma: &SymmetryAction, ideal: &Ideal<C>) -> Result<bool> {
    check_action(sigma, ideal)?;
    let monic: HashSet<Polynomial<C>> = ideal.generators().iter().map(|g| g.monic()).collect();
    if ideal
        .generators()
        .iter()
        .all(|g| monic.contains(&sigma.apply(g).monic()))
    {
        return Ok(true);
    }
    apply_automorphism(sigma, ideal)?.equals(ideal)
}

/// Partition of `coeffs` (by index) into orbits under `group`; each class
/// is sorted and its first entry is the representative. Coefficients equal
/// up to a nonzero scalar are identified.
fn orbit_partition<C: Field>(
    coeffs: &[Polynomial<C>],
    group: &[SymmetryAction],
) -> Vec<Vec<usize>> {
    let normalized: Vec<Polynomial<C>> = coeffs.iter().map(|c| c.monic()).collect();
    let mut index: HashMap<&Polynomial<C>, usize> = HashMap::new();
    for (i, c) in normalized.iter().enumerate() {
        index.entry(c).or_insert(i);
    }
    let mut parent: Vec<usize> = (0..coeffs.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    fn union(a: usize, b: usize, parent: &mut [usize]) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    for (i, c) in normalized.iter().enumerate() {
        if let Some(&j) = index.get(c) {
            union(i, j, &mut parent);
        }
        for g in group {
            if let Some(&j) = index.get(&g.apply(c).monic()) {
                union(i, j, &mut parent);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..coeffs.len() {
        let r = find(&mut parent, i);
        let k = *slot.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(i);
    }
    classes
}

/// Orbits of `coeffs` under the elements of `group` that stabilize `ideal`;
/// the others are discarded with a warning.
pub fn coefficient_orbits<C: Field>(
    coeffs: &[Polynomial<C>],
    group: &[SymmetryAction],
    ideal: &Ideal<C>,
) -> Result<Vec<Vec<usize>>> {
    let mut kept = Vec::with_capacity(group.len());
    for g in group {
        if stabilizes(g, ideal)? {
            kept.push(g.clone());
        } else {
            warn!(
                "discarding permutation {:?}: it does not stabilize the ideal",
                g.perm()
            );
        }
    }
    Ok(orbit_partition(coeffs, &kept))
}

/// How maximality of a localized ideal was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalityCertificate<C: Field> {
    /// The quotient is one-dimensional over `K(u)`.
    Linear,
    /// The minimal polynomial of a variable is irreducible and its degree
    /// equals the dimension of the quotient.
    Variable {
        var: usize,
        certificate: Certificate,
    },
    /// As for `Variable`, for a linear form in the non-localized variables.
    LinearForm {
        form: Polynomial<C>,
        certificate: Certificate,
    },
}

#[derive(Clone, Debug)]
pub enum MaximalityVerdict<C: Field> {
    Maximal(MaximalityCertificate<C>),
    /// Non-members of the ideal whose product lies in it.
    NotMaximal {
        factors: Vec<Polynomial<C>>,
    },
    Unknown {
        obligation: String,
    },
}

impl<C: Field> MaximalityVerdict<C> {
    pub fn is_maximal(&self) -> bool {
        matches!(self, MaximalityVerdict::Maximal(_))
    }
}

/// Provenance of a component: the independent set and the saturation
/// exponents of the contraction.
#[derive(Clone, Debug)]
pub struct Provenance<C: Field> {
    pub u: Vec<usize>,
    pub exponents: Vec<(Polynomial<C>, u32)>,
    pub certificate: Option<MaximalityCertificate<C>>,
}

#[derive(Clone, Debug)]
pub struct PrimaryComponent<C: Field> {
    pub primary: Ideal<C>,
    /// The associated prime, when certified.
    pub prime: Option<Ideal<C>>,
    pub provenance: Provenance<C>,
}

/// Components of a zero-dimensional (localized) ideal and the parts that
/// could neither be split nor certified primary.
#[derive(Clone, Debug)]
pub struct ZeroDimDecomposition<C: Field> {
    pub components: Vec<PrimaryComponent<C>>,
    pub residue: Vec<Ideal<C>>,
}

fn basis_at<C: Field>(
    ideal: &Ideal<C>,
    ord: &MonomialOrder,
    u: &[usize],
) -> Result<Arc<GroebnerBasis<C>>> {
    if u.is_empty() {
        ideal.groebner(ord)
    } else {
        ideal.localized_groebner(ord, u)
    }
}

fn main_vars(nvars: usize, u: &[usize]) -> Vec<usize> {
    (0..nvars).filter(|v| !u.contains(v)).collect()
}

/// Dimension of the localized quotient; `None` for the unit ideal.
fn localized_dimension<C: Field>(
    ideal: &Ideal<C>,
    ord: &MonomialOrder,
    u: &[usize],
) -> Result<Option<u64>> {
    let gb = basis_at(ideal, ord, u)?;
    if gb.is_unit() {
        return Ok(None);
    }
    match vector_space_dimension(&gb) {
        QuotientDim::Finite(d) => Ok(Some(d)),
        QuotientDim::Infinite => Err(AlgebraError::NotZeroDimensional),
    }
}

/// Minimal polynomial over `K(u)` of a variable or linear form modulo an
/// ideal, as an element of the ideal (extended by `t - form`) lying in
/// `K[u][var]`.
struct MinimalPolynomial<C: Field> {
    base: Arc<PolyRing>,
    var: usize,
    poly: Polynomial<C>,
    /// The linear form `var` stands for, in the extended ring.
    form: Option<Polynomial<C>>,
}

impl<C: Field> MinimalPolynomial<C> {
    fn of_variable(ideal: &Ideal<C>, u: &[usize], v: usize, ord: &MonomialOrder) -> Result<Self> {
        let main = main_vars(ideal.ring().nvars(), u);
        let poly = eliminate_to(ideal, u, &main, v, ord)?;
        Ok(MinimalPolynomial {
            base: ideal.ring().clone(),
            var: v,
            poly,
            form: None,
        })
    }

    fn of_form(
        ideal: &Ideal<C>,
        u: &[usize],
        form: &Polynomial<C>,
        ord: &MonomialOrder,
    ) -> Result<Self> {
        let base = ideal.ring().clone();
        let (ext, t) = base.with_fresh_var("t");
        let form = form.embed(&ext);
        let mut gens: Vec<Polynomial<C>> =
            ideal.generators().iter().map(|g| g.embed(&ext)).collect();
        gens.push(&Polynomial::var(&ext, t) - &form);
        let ext_ideal = Ideal::new(&ext, gens)?;
        let mut main = main_vars(base.nvars(), u);
        main.push(t);
        let poly = eliminate_to(&ext_ideal, u, &main, t, ord)?;
        Ok(MinimalPolynomial {
            base,
            var: t,
            poly,
            form: Some(form),
        })
    }

    /// `p(form)` in the base ring.
    fn evaluate(&self, p: &Polynomial<C>) -> Polynomial<C> {
        match &self.form {
            None => p.clone(),
            Some(l) => p
                .substitute(self.var, l)
                .project(&self.base)
                .expect("t is substituted away"),
        }
    }
}

/// The element of `ideal ∩ K[u][last]` of least degree in `last`, from a
/// localized basis eliminating `main \ {last}`.
fn eliminate_to<C: Field>(
    ideal: &Ideal<C>,
    u: &[usize],
    main: &[usize],
    last: usize,
    ord: &MonomialOrder,
) -> Result<Polynomial<C>> {
    let kind = ord.inner_kind();
    let rest: Vec<usize> = main.iter().copied().filter(|&w| w != last).collect();
    let mut blocks = Vec::new();
    if !rest.is_empty() {
        blocks.push(Block {
            vars: rest.clone(),
            kind,
        });
    }
    blocks.push(Block {
        vars: vec![last],
        kind: BlockKind::Lex,
    });
    if !u.is_empty() {
        blocks.push(Block {
            vars: u.to_vec(),
            kind,
        });
    }
    let gb = basis_at(ideal, &MonomialOrder::Block(blocks), u)?;
    gb.elements()
        .iter()
        .find(|g| {
            g.terms()
                .iter()
                .all(|(_, m)| rest.iter().all(|&w| m.exp(w) == 0))
        })
        .cloned()
        .ok_or(AlgebraError::NotZeroDimensional)
}

/// A minimal polynomial with its factorization over `K(u)`.
struct Analysis<C: Field> {
    mp: MinimalPolynomial<C>,
    fac: Factorization<C>,
}

impl<C: Factorize> Analysis<C> {
    fn new(mp: MinimalPolynomial<C>, seed: u64) -> Result<Self> {
        let fac = factor_in_variable(&mp.poly, mp.var, seed)?;
        Ok(Analysis { mp, fac })
    }

    /// At least two distinct factors.
    fn splits(&self) -> bool {
        self.fac.factors.len() >= 2
    }

    /// The minimal polynomial has a repeated factor.
    fn nonreduced(&self) -> bool {
        self.fac.factors.iter().any(|f| f.multiplicity > 1)
    }

    /// Degree and certificate when the minimal polynomial is a power of a
    /// certified irreducible polynomial.
    fn irreducible(&self) -> Option<(u32, Certificate)> {
        match self.fac.factors.as_slice() {
            [f] => f
                .certificate
                .clone()
                .map(|c| (f.poly.degree_in(self.mp.var).unwrap_or(0), c)),
            _ => None,
        }
    }

    /// Factors mapped to the base ring, each raised to its multiplicity.
    fn prime_powers(&self) -> Vec<Polynomial<C>> {
        self.fac
            .factors
            .iter()
            .map(|f| self.mp.evaluate(&f.poly).pow(f.multiplicity))
            .collect()
    }

    /// Distinct factors mapped to the base ring.
    fn radical_generators(&self) -> Vec<Polynomial<C>> {
        self.fac
            .factors
            .iter()
            .map(|f| self.mp.evaluate(&f.poly))
            .collect()
    }

    /// Non-members whose product is the minimal polynomial (a member).
    fn zero_divisors(&self) -> Vec<Polynomial<C>> {
        let mut out = Vec::new();
        if !self.fac.content.is_constant() {
            out.push(self.mp.evaluate(&self.fac.content));
        }
        for f in &self.fac.factors {
            let p = self.mp.evaluate(&f.poly);
            for _ in 0..f.multiplicity {
                out.push(p.clone());
            }
        }
        out
    }

    fn maximality(&self) -> MaximalityCertificate<C> {
        let certificate = self.irreducible().expect("certified").1;
        match &self.mp.form {
            None => MaximalityCertificate::Variable {
                var: self.mp.var,
                certificate,
            },
            Some(l) => MaximalityCertificate::LinearForm {
                form: l.project(&self.mp.base).unwrap(),
                certificate,
            },
        }
    }
}

fn random_form<C: Field>(
    ring: &Arc<PolyRing>,
    main: &[usize],
    rng: &mut ChaCha8Rng,
) -> Polynomial<C> {
    loop {
        let coeffs: Vec<i64> = main
            .iter()
            .map(|_| rng.gen_range(-LINEAR_FORM_RANGE..=LINEAR_FORM_RANGE))
            .collect();
        if coeffs.iter().filter(|&&c| c != 0).count() < 2 {
            continue;
        }
        let mut form = Polynomial::zero(ring);
        for (&v, &c) in main.iter().zip(&coeffs) {
            form = &form + &Polynomial::var(ring, v).scalar_mul(&C::from_i64(c));
        }
        return form;
    }
}

/// Certifies or refutes that the extension of `ideal` to `K(u)[X \ u]` is
/// a maximal ideal. `u` must make the extension zero-dimensional.
pub fn is_maximal_zero_dim<C: Factorize>(
    ideal: &Ideal<C>,
    u: &[usize],
    seed: u64,
) -> Result<MaximalityVerdict<C>> {
    is_maximal_zero_dim_with(ideal, u, &MonomialOrder::DegRevLex, seed)
}

pub fn is_maximal_zero_dim_with<C: Factorize>(
    ideal: &Ideal<C>,
    u: &[usize],
    ord: &MonomialOrder,
    seed: u64,
) -> Result<MaximalityVerdict<C>> {
    let u = sorted(u);
    let d = localized_dimension(ideal, ord, &u)?.ok_or(AlgebraError::UnitIdeal)?;
    if d == 1 {
        return Ok(MaximalityVerdict::Maximal(MaximalityCertificate::Linear));
    }
    let main = main_vars(ideal.ring().nvars(), &u);
    let mut uncertified = false;
    let check = |a: &Analysis<C>, uncertified: &mut bool| -> Option<MaximalityVerdict<C>> {
        if a.splits() || a.nonreduced() {
            return Some(MaximalityVerdict::NotMaximal {
                factors: a.zero_divisors(),
            });
        }
        match a.irreducible() {
            Some((deg, _)) if deg as u64 == d => Some(MaximalityVerdict::Maximal(a.maximality())),
            Some(_) => None,
            None => {
                *uncertified = true;
                None
            }
        }
    };
    for &v in &main {
        let a = Analysis::new(MinimalPolynomial::of_variable(ideal, &u, v, ord)?, seed)?;
        if let Some(verdict) = check(&a, &mut uncertified) {
            return Ok(verdict);
        }
    }
    if main.len() >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..LINEAR_FORM_TRIES {
            let form = random_form(ideal.ring(), &main, &mut rng);
            let a = Analysis::new(MinimalPolynomial::of_form(ideal, &u, &form, ord)?, seed)?;
            if let Some(verdict) = check(&a, &mut uncertified) {
                return Ok(verdict);
            }
        }
    }
    let obligation = if uncertified {
        format!("irreducibility over K(u) of a minimal polynomial (quotient dimension {d}) is not certified")
    } else {
        format!("no variable or tried linear form generates the quotient of dimension {d}")
    };
    Ok(MaximalityVerdict::Unknown { obligation })
}

fn sorted(u: &[usize]) -> Vec<usize> {
    let mut u = u.to_vec();
    u.sort_unstable();
    u.dedup();
    u
}

/// Splits an ideal that is zero-dimensional over `K(u)` into primary
/// components of its localization, represented by ideals of `K[X]` (not
/// contracted). Parts that resist splitting and certification are returned
/// as residue.
pub fn zero_dim_decompose<C: Factorize>(
    ideal: &Ideal<C>,
    u: &[usize],
    seed: u64,
) -> Result<ZeroDimDecomposition<C>> {
    zero_dim_decompose_with(ideal, u, &MonomialOrder::DegRevLex, seed)
}

pub fn zero_dim_decompose_with<C: Factorize>(
    ideal: &Ideal<C>,
    u: &[usize],
    ord: &MonomialOrder,
    seed: u64,
) -> Result<ZeroDimDecomposition<C>> {
    let u = sorted(u);
    let main = main_vars(ideal.ring().nvars(), &u);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ZeroDimDecomposition {
        components: Vec::new(),
        residue: Vec::new(),
    };
    let mut work = vec![ideal.clone()];
    'work: while let Some(cur) = work.pop() {
        if localized_dimension(&cur, ord, &u)?.is_none() {
            continue;
        }
        // split along variables; collect the radical generators meanwhile
        let mut radical = Vec::new();
        let mut by_var = Vec::new();
        for &v in &main {
            let a = Analysis::new(MinimalPolynomial::of_variable(&cur, &u, v, ord)?, rng.gen())?;
            if a.splits() {
                for q in a.prime_powers() {
                    work.push(cur.with_generators(&[q])?);
                }
                continue 'work;
            }
            radical.extend(a.radical_generators());
            by_var.push(a);
        }
        let prime = cur.with_generators(&radical)?;
        let d = localized_dimension(&prime, ord, &u)?.expect("radical of a proper ideal is proper");
        let make = |cert: MaximalityCertificate<C>| PrimaryComponent {
            primary: cur.clone(),
            prime: Some(prime.clone()),
            provenance: Provenance {
                u: u.clone(),
                exponents: Vec::new(),
                certificate: Some(cert),
            },
        };
        if d == 1 {
            out.components.push(make(MaximalityCertificate::Linear));
            continue;
        }
        if let Some(a) = by_var
            .iter()
            .find(|a| a.irreducible().is_some_and(|(deg, _)| deg as u64 == d))
        {
            out.components.push(make(a.maximality()));
            continue;
        }
        if main.len() >= 2 {
            for _ in 0..LINEAR_FORM_TRIES {
                let form = random_form(cur.ring(), &main, &mut rng);
                let a =
                    Analysis::new(MinimalPolynomial::of_form(&cur, &u, &form, ord)?, rng.gen())?;
                if a.splits() {
                    for q in a.prime_powers() {
                        work.push(cur.with_generators(&[q])?);
                    }
                    continue 'work;
                }
                if a.irreducible().is_some_and(|(deg, _)| deg as u64 == d) {
                    out.components.push(make(a.maximality()));
                    continue 'work;
                }
            }
        }
        debug!("zero-dimensional part {cur} left unresolved");
        out.residue.push(cur);
    }
    Ok(out)
}

/// Parameters of [`gtz_decompose_with`].
#[derive(Clone, Debug)]
pub struct GtzOptions {
    /// Number of maximal independent sets scored per step.
    pub scorer_budget: usize,
    pub seed: u64,
    pub order: MonomialOrder,
    /// Check `I = (I : h) ∩ <I, h>` at every step.
    pub verify_splits: bool,
    /// Merge components with equal primes and drop redundant ones.
    pub irredundant: bool,
    pub max_depth: usize,
}

impl Default for GtzOptions {
    fn default() -> Self {
        GtzOptions {
            scorer_budget: 16,
            seed: 0,
            order: MonomialOrder::DegRevLex,
            verify_splits: true,
            irredundant: true,
            max_depth: 64,
        }
    }
}

pub fn gtz_decompose<C: Factorize>(
    ideal: &Ideal<C>,
    scorer_budget: usize,
    seed: u64,
) -> Result<Vec<PrimaryComponent<C>>> {
    gtz_decompose_with(
        ideal,
        &GtzOptions {
            scorer_budget,
            seed,
            ..GtzOptions::default()
        },
    )
}

pub fn gtz_decompose_with<C: Factorize>(
    ideal: &Ideal<C>,
    opts: &GtzOptions,
) -> Result<Vec<PrimaryComponent<C>>> {
    if ideal.is_unit()? {
        return Err(AlgebraError::UnitIdeal);
    }
    let mut out = Vec::new();
    let mut cur = ideal.clone();
    let mut depth = 0;
    while !cur.is_unit()? {
        if depth >= opts.max_depth {
            return Err(AlgebraError::RecursionLimit(opts.max_depth));
        }
        match gtz_step(&cur, opts, &mut out)? {
            Some(next) => cur = next,
            None => break,
        }
        depth += 1;
    }
    if opts.irredundant {
        out = make_irredundant(out)?;
    }
    Ok(out)
}

/// Top-ranked maximal independent set of `ideal`.
fn best_independent_set<C: Field>(
    ideal: &Ideal<C>,
    budget: usize,
    seed: u64,
    ord: &MonomialOrder,
) -> Result<Vec<usize>> {
    let gb = ideal.reduced_basis()?;
    let sets = maximal_independent_sets(&gb, budget.max(1), seed);
    let reports = score_and_rank(ideal, &sets, ord)?;
    Ok(reports
        .into_iter()
        .next()
        .expect("a proper ideal has an independent set")
        .u)
}

/// One dimension-reduction step: pushes the components of the top
/// dimension and returns `<I, h>` if anything remains.
fn gtz_step<C: Factorize>(
    ideal: &Ideal<C>,
    opts: &GtzOptions,
    out: &mut Vec<PrimaryComponent<C>>,
) -> Result<Option<Ideal<C>>> {
    let ord = &opts.order;
    let u = best_independent_set(ideal, opts.scorer_budget, opts.seed, ord)?;
    let zd = zero_dim_decompose_with(ideal, &u, ord, opts.seed)?;
    if !zd.residue.is_empty() {
        let names: Vec<&str> = u.iter().map(|&v| ideal.ring().name(v)).collect();
        return Err(AlgebraError::FactorizationIncomplete(format!(
            "{} zero-dimensional part(s) over K({}) could not be split or certified",
            zd.residue.len(),
            names.join(",")
        )));
    }
    let (saturated, exponents) = ideal.contract_with_exponents(&u, ord)?;
    if let [single] = zd.components.as_slice() {
        // the contraction of the only component is the saturation of I
        out.push(PrimaryComponent {
            primary: saturated.clone(),
            prime: single
                .prime
                .as_ref()
                .map(|p| p.contract(&u, ord))
                .transpose()?,
            provenance: Provenance {
                u: u.clone(),
                exponents: exponents.clone(),
                certificate: single.provenance.certificate.clone(),
            },
        });
    } else {
        for comp in zd.components {
            let (primary, exps) = comp.primary.contract_with_exponents(&u, ord)?;
            out.push(PrimaryComponent {
                primary,
                prime: comp.prime.map(|p| p.contract(&u, ord)).transpose()?,
                provenance: Provenance {
                    u: u.clone(),
                    exponents: exps,
                    certificate: comp.provenance.certificate,
                },
            });
        }
    }
    let mut h = Polynomial::one(ideal.ring());
    for (c, m) in &exponents {
        h = &h * &c.pow(*m);
    }
    if h.is_constant() {
        return Ok(None);
    }
    let rest = ideal.with_generators(&[h])?;
    if opts.verify_splits {
        let joined = saturated.intersect(&rest)?;
        assert!(
            joined.equals(ideal)?,
            "splitting identity failed for {ideal}"
        );
    }
    Ok(Some(rest))
}

fn make_irredundant<C: Field>(comps: Vec<PrimaryComponent<C>>) -> Result<Vec<PrimaryComponent<C>>> {
    // merge components sharing a prime
    let mut merged: Vec<PrimaryComponent<C>> = Vec::new();
    'next: for comp in comps {
        if let Some(p) = &comp.prime {
            for m in merged.iter_mut() {
                if let Some(q) = &m.prime {
                    if p.equals(q)? {
                        m.primary = m.primary.intersect(&comp.primary)?;
                        continue 'next;
                    }
                }
            }
        }
        merged.push(comp);
    }
    // later components are lower-dimensional; drop those containing the rest
    let mut i = merged.len();
    while i > 0 {
        i -= 1;
        if merged.len() < 2 {
            break;
        }
        let mut others: Option<Ideal<C>> = None;
        for (j, c) in merged.iter().enumerate() {
            if j != i {
                others = Some(match others {
                    None => c.primary.clone(),
                    Some(o) => o.intersect(&c.primary)?,
                });
            }
        }
        if merged[i]
            .primary
            .contains_ideal(&others.expect("two or more components"))?
        {
            merged.remove(i);
        }
    }
    Ok(merged)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimalityStatus {
    Prime,
    NotPrime,
    Unknown,
}

/// Re-checkable evidence that an ideal is not prime.
#[derive(Clone, Debug)]
pub enum PrimalityWitness<C: Field> {
    /// `element ∉ P` while `coefficient^exponent · element ∈ P`.
    Saturation {
        coefficient: Polynomial<C>,
        element: Polynomial<C>,
        exponent: u32,
    },
    /// Non-members of `P` whose product lies in `P`.
    ZeroDivisor { factors: Vec<Polynomial<C>> },
}

impl<C: Field> PrimalityWitness<C> {
    /// Re-runs the membership tests behind the witness.
    pub fn verify(&self, p: &Ideal<C>) -> Result<bool> {
        match self {
            PrimalityWitness::Saturation {
                coefficient,
                element,
                exponent,
            } => Ok(!p.contains(element)? && p.contains(&(&coefficient.pow(*exponent) * element))?),
            PrimalityWitness::ZeroDivisor { factors } => {
                let mut prod = Polynomial::one(p.ring());
                for f in factors {
                    if p.contains(f)? {
                        return Ok(false);
                    }
                    prod = &prod * f;
                }
                Ok(factors.len() >= 2 && p.contains(&prod)?)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PrimalityVerdict<C: Field> {
    pub status: PrimalityStatus,
    /// Independent set used for the localization.
    pub u: Vec<usize>,
    pub witness: Option<PrimalityWitness<C>>,
    pub maximality: MaximalityVerdict<C>,
    /// Leading coefficients of the localized basis.
    pub coefficients: Vec<Polynomial<C>>,
    /// Orbits of `coefficients` (by index); one check per orbit.
    pub orbits: Vec<Vec<usize>>,
    /// What remains to be shown for an `Unknown` status.
    pub obligation: Option<String>,
}

/// Parameters of [`primality_check_with`].
#[derive(Clone, Debug)]
pub struct PrimalityOptions {
    pub scorer_budget: usize,
    pub seed: u64,
    /// Localize here instead of at the top-ranked independent set.
    pub u: Option<Vec<usize>>,
    /// How each `P : c^∞` is formed.
    pub strategy: SaturationStrategy,
}

impl Default for PrimalityOptions {
    fn default() -> Self {
        PrimalityOptions {
            scorer_budget: 16,
            seed: 0,
            u: None,
            strategy: SaturationStrategy::Iterate,
        }
    }
}

/// Primality check at the top-ranked of `scorer_budget` maximal independent
/// sets. With `symmetry`, the generators that stabilize `P` are used to
/// share saturation checks between coefficients in one orbit.
pub fn primality_check<C: Factorize>(
    p: &Ideal<C>,
    symmetry: Option<&[SymmetryAction]>,
    scorer_budget: usize,
    seed: u64,
) -> Result<PrimalityVerdict<C>> {
    primality_check_with(
        p,
        symmetry,
        &PrimalityOptions {
            scorer_budget,
            seed,
            ..PrimalityOptions::default()
        },
    )
}

/// Primality check localizing at the given maximal independent set.
pub fn primality_check_at<C: Factorize>(
    p: &Ideal<C>,
    u: &[usize],
    symmetry: Option<&[SymmetryAction]>,
    seed: u64,
) -> Result<PrimalityVerdict<C>> {
    primality_check_with(
        p,
        symmetry,
        &PrimalityOptions {
            seed,
            u: Some(u.to_vec()),
            ..PrimalityOptions::default()
        },
    )
}

pub fn primality_check_with<C: Factorize>(
    p: &Ideal<C>,
    symmetry: Option<&[SymmetryAction]>,
    opts: &PrimalityOptions,
) -> Result<PrimalityVerdict<C>> {
    if p.is_unit()? {
        return Err(AlgebraError::UnitIdeal);
    }
    let ord = MonomialOrder::DegRevLex;
    let seed = opts.seed;
    let u = match &opts.u {
        Some(u) => sorted(u),
        None => best_independent_set(p, opts.scorer_budget, seed, &ord)?,
    };
    let maximality = is_maximal_zero_dim_with(p, &u, &ord, seed)?;
    let coefficients = p.localized_leading_coefficients(&u, &ord)?;
    let mut verdict = PrimalityVerdict {
        status: PrimalityStatus::Unknown,
        u: u.clone(),
        witness: None,
        maximality,
        coefficients,
        orbits: Vec::new(),
        obligation: None,
    };
    if let MaximalityVerdict::NotMaximal { factors } = &verdict.maximality {
        verdict.status = PrimalityStatus::NotPrime;
        verdict.witness = Some(PrimalityWitness::ZeroDivisor {
            factors: factors.clone(),
        });
        return Ok(verdict);
    }
    verdict.orbits = match symmetry {
        Some(gens) => {
            let mut kept = Vec::new();
            for g in gens {
                if stabilizes(g, p)? {
                    kept.push(g.clone());
                } else {
                    warn!(
                        "discarding permutation {:?}: it does not stabilize the ideal",
                        g.perm()
                    );
                }
            }
            let group = generate_group(&kept, p.ring().nvars(), GROUP_LIMIT).unwrap_or(kept);
            orbit_partition(&verdict.coefficients, &group)
        }
        None => (0..verdict.coefficients.len()).map(|i| vec![i]).collect(),
    };
    let reps: Vec<usize> = verdict.orbits.iter().map(|o| o[0]).collect();
    // tasks after the first refuting representative are skipped
    let first_hit = AtomicUsize::new(usize::MAX);
    let results: Vec<Result<Option<PrimalityWitness<C>>>> = reps
        .par_iter()
        .enumerate()
        .map(|(k, &i)| {
            if first_hit.load(AtomicOrdering::Relaxed) < k {
                return Ok(None);
            }
            let w = saturation_witness(p, &verdict.coefficients[i], opts.strategy, &ord)?;
            if w.is_some() {
                first_hit.fetch_min(k, AtomicOrdering::Relaxed);
            }
            Ok(w)
        })
        .collect();
    for r in results {
        if let Some(w) = r? {
            verdict.status = PrimalityStatus::NotPrime;
            verdict.witness = Some(w);
            return Ok(verdict);
        }
    }
    match &verdict.maximality {
        MaximalityVerdict::Maximal(_) => verdict.status = PrimalityStatus::Prime,
        MaximalityVerdict::Unknown { obligation } => verdict.obligation = Some(obligation.clone()),
        MaximalityVerdict::NotMaximal { .. } => unreachable!(),
    }
    Ok(verdict)
}

/// An element of `P : c^∞` outside `P`, if any. With the iterated
/// strategy one quotient suffices: `P : c = P` already gives `P : c^∞ = P`.
fn saturation_witness<C: Field>(
    p: &Ideal<C>,
    c: &Polynomial<C>,
    strategy: SaturationStrategy,
    ord: &MonomialOrder,
) -> Result<Option<PrimalityWitness<C>>> {
    let sat = match strategy {
        SaturationStrategy::Iterate => p.quotient_with_order(c, ord)?,
        SaturationStrategy::ExtraVariable => p.saturate(c, strategy, ord)?.saturated,
    };
    for g in sat.generators() {
        if p.contains(g)? {
            continue;
        }
        let mut exponent = 1;
        let mut multiple = c * g;
        while !p.contains(&multiple)? {
            exponent += 1;
            multiple = c * &multiple;
        }
        return Ok(Some(PrimalityWitness::Saturation {
            coefficient: c.clone(),
            element: g.clone(),
            exponent,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::parse::parse_polynomial;

    fn id(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal<Q> {
        Ideal::new(
            r,
            gens.iter()
                .map(|s| parse_polynomial(r, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn intersection(comps: &[PrimaryComponent<Q>]) -> Ideal<Q> {
        let mut acc = comps[0].primary.clone();
        for c in &comps[1..] {
            acc = acc.intersect(&c.primary).unwrap();
        }
        acc
    }

    fn has_prime(comps: &[PrimaryComponent<Q>], p: &Ideal<Q>) -> bool {
        comps
            .iter()
            .any(|c| c.prime.as_ref().unwrap().equals(p).unwrap())
    }

    #[test]
    fn zero_dimensional_examples() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        let zd = zero_dim_decompose(&id(&r, &["x^2-1", "y"]), &[], 1).unwrap();
        assert_eq!(zd.components.len(), 2);
        assert!(zd.residue.is_empty());
        assert!(has_prime(&zd.components, &id(&r, &["x-1", "y"])));
        assert!(has_prime(&zd.components, &id(&r, &["x+1", "y"])));

        let i = id(&r, &["x^2", "x*y", "y^2"]);
        let zd = zero_dim_decompose(&i, &[], 1).unwrap();
        assert_eq!(zd.components.len(), 1);
        assert!(zd.components[0].primary.equals(&i).unwrap());
        assert!(zd.components[0]
            .prime
            .as_ref()
            .unwrap()
            .equals(&id(&r, &["x", "y"]))
            .unwrap());

        let zd = zero_dim_decompose(&id(&r, &["y^2-x^3"]), &[0], 1).unwrap();
        assert_eq!(zd.components.len(), 1);
    }

    #[test]
    fn linear_forms_split_when_variables_do_not() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        // (x - y)(x + y) splits only in a general coordinate
        let i = id(&r, &["x^2-2", "y^2-2"]);
        let zd = zero_dim_decompose(&i, &[], 3).unwrap();
        assert!(zd.residue.is_empty());
        assert_eq!(zd.components.len(), 2);
        assert!(intersection(&zd.components).equals(&i).unwrap());
        let verdict = is_maximal_zero_dim(&id(&r, &["x^2-2", "y-x-1"]), &[], 3).unwrap();
        assert!(verdict.is_maximal());
    }

    #[test]
    fn maximality_examples() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        let v = is_maximal_zero_dim(&id(&r, &["y-x^2"]), &[0], 1).unwrap();
        assert!(matches!(
            v,
            MaximalityVerdict::Maximal(MaximalityCertificate::Linear)
        ));
        let p = id(&r, &["y^2-1"]);
        match is_maximal_zero_dim(&p, &[0], 1).unwrap() {
            MaximalityVerdict::NotMaximal { factors } => {
                assert!(factors.contains(&parse_polynomial(&r, "y-1").unwrap()));
                assert!(PrimalityWitness::ZeroDivisor { factors }
                    .verify(&p)
                    .unwrap());
            }
            other => panic!("{other:?}"),
        }
        assert!(is_maximal_zero_dim(&id(&r, &["y^2-x"]), &[0], 1)
            .unwrap()
            .is_maximal());
    }

    #[test]
    fn gtz_examples() {
        let r = PolyRing::new(["x", "y", "z"]).unwrap();
        let i = id(&r, &["x*y", "x*z"]);
        let comps = gtz_decompose(&i, 8, 1).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(has_prime(&comps, &id(&r, &["x"])));
        assert!(has_prime(&comps, &id(&r, &["y", "z"])));
        assert!(intersection(&comps).equals(&i).unwrap());

        let r2 = PolyRing::new(["x", "y"]).unwrap();
        let i = id(&r2, &["x^2", "x*y"]);
        let comps = gtz_decompose(&i, 8, 1).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(has_prime(&comps, &id(&r2, &["x"])));
        assert!(has_prime(&comps, &id(&r2, &["x", "y"])));
        assert!(intersection(&comps).equals(&i).unwrap());

        let i = id(&r2, &["x^2-1"]);
        let comps = gtz_decompose(&i, 8, 1).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(has_prime(&comps, &id(&r2, &["x-1"])));
        assert!(has_prime(&comps, &id(&r2, &["x+1"])));
    }

    #[test]
    fn primality_examples() {
        let r = PolyRing::new(["x", "y", "z"]).unwrap();
        let v = primality_check_at(&id(&r, &["y-x^2", "z-x^3"]), &[0], None, 1).unwrap();
        assert_eq!(v.status, PrimalityStatus::Prime);

        let r2 = PolyRing::new(["x", "y"]).unwrap();
        let p = id(&r2, &["x*y"]);
        let v = primality_check_at(&p, &[0], None, 1).unwrap();
        assert_eq!(v.status, PrimalityStatus::NotPrime);
        match v.witness.as_ref().unwrap() {
            PrimalityWitness::Saturation { coefficient, .. } => {
                assert_eq!(*coefficient, parse_polynomial(&r2, "x").unwrap())
            }
            w => panic!("{w:?}"),
        }
        assert!(v.witness.unwrap().verify(&p).unwrap());

        let p = id(&r2, &["x^2"]);
        let v = primality_check_at(&p, &[1], None, 1).unwrap();
        assert_eq!(v.status, PrimalityStatus::NotPrime);
        assert!(v.witness.unwrap().verify(&p).unwrap());
        assert!(primality_check(&Ideal::<Q>::unit(&r2), None, 4, 1).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let r = PolyRing::new(["x", "y"]).unwrap();
        let swap = SymmetryAction::from_cycles(2, &[vec![0, 1]]).unwrap();
        let i = id(&r, &["x"]);
        assert!(apply_automorphism(&swap, &i)
            .unwrap()
            .equals(&id(&r, &["y"]))
            .unwrap());
        assert!(!stabilizes(&swap, &i).unwrap());
        assert!(stabilizes(&swap, &Ideal::<Q>::unit(&r)).unwrap());
        assert!(stabilizes(&swap, &id(&r, &["x*y-1", "x^2+y^2"])).unwrap());
        assert!(swap.compose(&swap.inverse()).is_identity());
    }

    #[test]
    fn orbit_examples() {
        let r = PolyRing::new(["x1", "x2", "x3", "x4", "x5", "x6"]).unwrap();
        let p = |s: &str| parse_polynomial::<Q>(&r, s).unwrap();
        let sym = id(&r, &["x1*x4", "x2*x5", "x3*x6"]);
        let swap = SymmetryAction::from_cycles(6, &[vec![0, 3]]).unwrap();
        let orbits = coefficient_orbits(&[p("x1"), p("x4")], &[swap], &sym).unwrap();
        assert_eq!(orbits, vec![vec![0, 1]]);
        let orbits = coefficient_orbits(&[p("x1"), p("x4")], &[], &sym).unwrap();
        assert_eq!(orbits, vec![vec![0], vec![1]]);
        let sigma = SymmetryAction::from_cycles(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        let orbits = coefficient_orbits(&[p("x1+x2"), p("2*x4+2*x5")], &[sigma], &sym).unwrap();
        assert_eq!(orbits, vec![vec![0, 1]]);
        let group = generate_group(
            &[
                SymmetryAction::from_cycles(6, &[vec![0, 1]]).unwrap(),
                SymmetryAction::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap(),
            ],
            6,
            GROUP_LIMIT,
        )
        .unwrap();
        assert_eq!(group.len(), 720);
    }
}
