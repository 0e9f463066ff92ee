//! Bounded factorization over `K` and over rational function fields
//! `K(u)`, with certificates of irreducibility.
//!
//! Univariate factoring over the rationals goes through squarefree
//! decomposition, modular factorization with degree-pattern intersection,
//! Hensel lifting and subset recombination; over prime fields it is
//! Cantor–Zassenhaus. A polynomial in `K[u][v]` is first tested with cheap
//! certificates (linear, Eisenstein at a parameter, irreducible
//! specialization) and otherwise factored by lifting the factorization of
//! a specialization at a point of `u`. Anything beyond the built-in bounds
//! is reported without a certificate instead of guessed.

pub(crate) mod dense;
pub mod gcd;
pub(crate) mod integer;
pub(crate) mod modp;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, Fp, Q};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

use dense::Dense;
use gcd::{content_in, gcd, normalize, primitive_part_in};

/// Fields with a univariate factorizer.
pub trait Factorize: Field {
    /// Monic irreducible factors with multiplicities of a nonzero dense
    /// polynomial (coefficients low to high); `None` when the input lies
    /// outside the factorizer's bounds.
    fn factor_univariate(f: &[Self], rng: &mut ChaCha8Rng) -> Option<Vec<(Vec<Self>, u32)>>;
}

impl Factorize for Q {
    fn factor_univariate(f: &[Self], rng: &mut ChaCha8Rng) -> Option<Vec<(Vec<Self>, u32)>> {
        let mut out = Vec::new();
        for (part, e) in dense::squarefree(f)? {
            let den = part.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            let ints: Vec<BigInt> = part
                .iter()
                .map(|c| (c * Q::from_integer(den.clone())).to_integer())
                .collect();
            for g in integer::factor_squarefree(&ints, rng)? {
                let q: Dense<Q> = g.into_iter().map(Q::from_integer).collect();
                out.push((dense::monic(&q), e));
            }
        }
        Some(out)
    }
}

impl<const P: u32> Factorize for Fp<P> {
    fn factor_univariate(f: &[Self], rng: &mut ChaCha8Rng) -> Option<Vec<(Vec<Self>, u32)>> {
        if P == 2 || P >= 1 << 31 {
            return None;
        }
        let z = modp::Zp::new(P as u64);
        let mut out = Vec::new();
        for (part, e) in dense::squarefree(f)? {
            let m: Vec<u64> = part.iter().map(|c| c.value() as u64).collect();
            for g in z.factor_squarefree(&m, rng) {
                out.push((g.into_iter().map(|c| Fp::<P>::new(c as i64)).collect(), e));
            }
        }
        Some(out)
    }
}

/// Why a factor is known to be irreducible over `K(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Degree one in the main variable.
    Linear,
    /// Eisenstein's criterion at the prime `var` of `K[u]`.
    Eisenstein { var: usize },
    /// Irreducible specialization of equal degree at the given point.
    Specialization { point: Vec<(usize, i64)> },
    /// Complete factorization with exhaustive recombination.
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct Factor<C: Field> {
    /// Primitive in the main variable, lex-leading coefficient one.
    pub poly: Polynomial<C>,
    pub multiplicity: u32,
    /// `None` when irreducibility could not be certified.
    pub certificate: Option<Certificate>,
}

/// Factorization of `f ∈ K[u][v]` over `K(u)`: `f = content · ∏ poly^mult`
/// with `content ∈ K[u]`.
#[derive(Clone, Debug)]
pub struct Factorization<C: Field> {
    pub content: Polynomial<C>,
    pub factors: Vec<Factor<C>>,
}

impl<C: Field> Factorization<C> {
    /// Every factor certified irreducible.
    pub fn is_complete(&self) -> bool {
        self.factors.iter().all(|f| f.certificate.is_some())
    }

    /// Number of irreducible factors counted with multiplicity (for complete
    /// factorizations).
    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }
}

const SPECIALIZATION_TRIES: usize = 40;
const SPECIALIZATION_RANGE: i64 = 9;

/// Factors `f` as a polynomial in `var` over the field of rational
/// functions in its other variables.
pub fn factor_in_variable<C: Factorize>(
    f: &Polynomial<C>,
    var: usize,
    seed: u64,
) -> Result<Factorization<C>> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput("cannot factor the zero polynomial"));
    }
    if var >= f.ring().nvars() {
        return Err(AlgebraError::InvalidArgument(format!(
            "variable index {var} out of range"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = f.ring().clone();
    if f.degree_in(var) == Some(0) {
        return Ok(Factorization {
            content: f.clone(),
            factors: Vec::new(),
        });
    }
    let g = primitive_part_in(f, var);
    let mut factors = Vec::new();
    match squarefree_in(&g, var) {
        Some(parts) => {
            for (part, e) in parts {
                for (poly, certificate) in irreducible_factors(&part, var, &mut rng) {
                    factors.push(Factor {
                        poly,
                        multiplicity: e,
                        certificate,
                    });
                }
            }
        }
        None => factors.push(Factor {
            poly: g.clone(),
            multiplicity: 1,
            certificate: None,
        }),
    }
    factors.sort_by_cached_key(|f| {
        (
            f.poly.degree_in(var),
            f.poly.num_terms(),
            f.poly.to_string(),
        )
    });
    let mut prod = Polynomial::one(&ring);
    for fac in &factors {
        prod = &prod * &fac.poly.pow(fac.multiplicity);
    }
    let content = f.div_exact(&prod).expect("factors divide the input");
    Ok(Factorization { content, factors })
}

/// Squarefree decomposition over `K(u)[var]` of a polynomial primitive in
/// `var`; parts are primitive and normalized.
fn squarefree_in<C: Field>(g: &Polynomial<C>, var: usize) -> Option<Vec<(Polynomial<C>, u32)>> {
    let dg = g.derivative(var);
    if dg.is_zero() {
        return None;
    }
    let a0 = gcd(g, &dg);
    let mut b = g.div_exact(&a0)?;
    let c = dg.div_exact(&a0)?;
    let mut d = &c - &b.derivative(var);
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree_in(var).unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        let nb = b.div_exact(&a)?;
        let nc = d.div_exact(&a)?;
        d = &nc - &nb.derivative(var);
        if a.degree_in(var).unwrap_or(0) > 0 {
            out.push((primitive_part_in(&a, var), i));
        }
        b = nb;
        i += 1;
    }
    let mut prod = Polynomial::one(g.ring());
    for (p, e) in &out {
        prod = &prod * &p.pow(*e);
    }
    (normalize(&prod) == normalize(g)).then_some(out)
}

fn is_eisenstein<C: Field>(h: &Polynomial<C>, var: usize, w: usize) -> bool {
    let coeffs = h.coefficients_in(var);
    let (lc, rest) = coeffs.split_last().unwrap();
    let divisible = |p: &Polynomial<C>| p.terms().iter().all(|(_, m)| m.exp(w) >= 1);
    if divisible(lc) && !lc.is_zero() {
        return false;
    }
    if !rest.iter().all(divisible) {
        return false;
    }
    let c0 = &rest[0];
    !c0.is_zero() && c0.terms().iter().any(|(_, m)| m.exp(w) == 1)
}

fn irreducible_factors<C: Factorize>(
    h: &Polynomial<C>,
    var: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(Polynomial<C>, Option<Certificate>)> {
    let n = h.degree_in(var).unwrap();
    if n == 1 {
        return vec![(normalize(h), Some(Certificate::Linear))];
    }
    let params: Vec<usize> = h.variables().into_iter().filter(|&v| v != var).collect();
    if params.is_empty() {
        let d = dense::from_poly(h, var);
        return match C::factor_univariate(&d, rng) {
            None => vec![(normalize(h), None)],
            Some(fs) => fs
                .into_iter()
                .map(|(g, _)| {
                    let cert = if g.len() == 2 {
                        Certificate::Linear
                    } else {
                        Certificate::Exhaustive
                    };
                    (dense::to_poly(h.ring(), var, &g), Some(cert))
                })
                .collect(),
        };
    }
    if let Some(&w) = params.iter().find(|&&w| is_eisenstein(h, var, w)) {
        return vec![(normalize(h), Some(Certificate::Eisenstein { var: w }))];
    }
    let mut lifting_point: Option<Vec<(usize, i64)>> = None;
    for _ in 0..SPECIALIZATION_TRIES {
        let point: Vec<(usize, i64)> = params
            .iter()
            .map(|&v| {
                (
                    v,
                    rng.gen_range(-SPECIALIZATION_RANGE..=SPECIALIZATION_RANGE),
                )
            })
            .collect();
        let assign: Vec<(usize, C)> = point.iter().map(|&(v, a)| (v, C::from_i64(a))).collect();
        let hs = h.specialize(&assign);
        if hs.degree_in(var) != Some(n as u32) {
            continue;
        }
        let d = dense::from_poly(&hs, var);
        if dense::gcd(&d, &dense::derivative(&d)).len() != 1 {
            continue;
        }
        match C::factor_univariate(&d, rng) {
            Some(fs) if fs.len() == 1 => {
                return vec![(normalize(h), Some(Certificate::Specialization { point }))];
            }
            Some(_) => {
                lifting_point.get_or_insert(point);
            }
            None => {}
        }
    }
    let Some(point) = lifting_point else {
        return vec![(normalize(h), None)];
    };
    match hensel_factor(h, var, &params, &point, rng) {
        Some(fs) => fs
            .into_iter()
            .map(|g| {
                let cert = if g.degree_in(var) == Some(1) {
                    Certificate::Linear
                } else {
                    Certificate::Exhaustive
                };
                (g, Some(cert))
            })
            .collect(),
        None => vec![(normalize(h), None)],
    }
}

fn param_degree(m: &Monomial, params: &[usize]) -> u32 {
    params.iter().map(|&v| m.exp(v)).sum()
}

fn truncate<C: Field>(p: &Polynomial<C>, params: &[usize], k: u32) -> Polynomial<C> {
    let terms = p
        .terms()
        .iter()
        .filter(|(_, m)| param_degree(m, params) <= k)
        .cloned()
        .collect();
    Polynomial::from_terms_unchecked(p.ring(), terms)
}

fn truncated_product<C: Field>(fs: &[&Polynomial<C>], params: &[usize], k: u32) -> Polynomial<C> {
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = truncate(&(&acc * f), params, k);
    }
    acc
}

/// Factors a squarefree primitive `h` by lifting the factorization of
/// `h(point, var)` through the powers of the maximal ideal at `point`.
fn hensel_factor<C: Factorize>(
    h: &Polynomial<C>,
    var: usize,
    params: &[usize],
    point: &[(usize, i64)],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Polynomial<C>>> {
    let ring = h.ring();
    let n = h.degree_in(var)? as usize;
    let coeffs = h.coefficients_in(var);
    let lc = coeffs[n].clone();
    // monic in var: lc^(n-1) h(var / lc)
    let mut mc = Vec::with_capacity(n + 1);
    for (i, c) in coeffs[..n].iter().enumerate() {
        mc.push(c * &lc.pow((n - 1 - i) as u32));
    }
    mc.push(Polynomial::one(ring));
    let mut big = Polynomial::from_coefficients_in(ring, var, &mc);
    for &(v, a) in point {
        if a != 0 {
            let shifted = &Polynomial::var(ring, v) + &Polynomial::constant(ring, C::from_i64(a));
            big = big.substitute(v, &shifted);
        }
    }
    let zero: Vec<(usize, C)> = params.iter().map(|&v| (v, C::zero())).collect();
    let base = dense::from_poly(&big.specialize(&zero), var);
    let facs = C::factor_univariate(&base, rng)?;
    if facs.iter().any(|(_, e)| *e != 1) || facs.len() > integer::MAX_MODULAR_FACTORS {
        return None;
    }
    if facs.len() == 1 {
        return Some(vec![normalize(h)]);
    }
    let gs: Vec<Dense<C>> = facs.into_iter().map(|(g, _)| g).collect();
    // s_i * prod_{j != i} g_j ≡ 1 mod g_i
    let mut bezout = Vec::with_capacity(gs.len());
    for (i, gi) in gs.iter().enumerate() {
        let mut others = vec![C::one()];
        for (j, gj) in gs.iter().enumerate() {
            if j != i {
                others = dense::mul(&others, gj);
            }
        }
        let (g, s, _) = dense::ext_gcd(&dense::rem(&others, gi), gi);
        if g.len() != 1 {
            return None;
        }
        bezout.push(s);
    }
    let max_deg = big
        .terms()
        .iter()
        .map(|(_, m)| param_degree(m, params))
        .max()
        .unwrap_or(0);
    let mut lifts: Vec<Polynomial<C>> = gs.iter().map(|g| dense::to_poly(ring, var, g)).collect();
    for k in 1..=max_deg {
        let refs: Vec<&Polynomial<C>> = lifts.iter().collect();
        let err = &truncate(&big, params, k) - &truncated_product(&refs, params, k);
        // group the degree-k part by parameter monomial
        let mut groups: Vec<(Monomial, Vec<(C, Monomial)>)> = Vec::new();
        for (c, m) in err.terms() {
            if param_degree(m, params) != k {
                continue;
            }
            let mut pm = m.clone();
            pm.exponents_mut()[var] = 0;
            let vm = Monomial::var(ring.nvars(), var, m.exp(var));
            match groups.iter_mut().find(|(p, _)| *p == pm) {
                Some((_, ts)) => ts.push((c.clone(), vm)),
                None => groups.push((pm, vec![(c.clone(), vm)])),
            }
        }
        for (pm, ts) in groups {
            let e = dense::from_poly(&Polynomial::from_terms_unchecked(ring, ts), var);
            for (i, gi) in gs.iter().enumerate() {
                let sigma = dense::rem(&dense::mul(&e, &bezout[i]), gi);
                if sigma.is_empty() {
                    continue;
                }
                let corr = dense::to_poly(ring, var, &sigma).mul_monomial(&C::one(), &pm);
                lifts[i] = &lifts[i] + &corr;
            }
        }
    }

    // recombination
    let mut rest = big.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= lifts.len() {
        let mut hit = None;
        for subset in integer::combinations(lifts.len(), s) {
            let refs: Vec<&Polynomial<C>> = subset.iter().map(|&i| &lifts[i]).collect();
            let cand = truncated_product(&refs, params, max_deg);
            if let Some(q) = rest.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifts.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.degree_in(var).unwrap_or(0) > 0 {
        found.push(rest);
    }

    // undo the shift and the monic transformation
    let scaled_var = &lc * &Polynomial::var(ring, var);
    let mut out = Vec::with_capacity(found.len());
    for mut g in found {
        for &(v, a) in point {
            if a != 0 {
                let back = &Polynomial::var(ring, v) - &Polynomial::constant(ring, C::from_i64(a));
                g = g.substitute(v, &back);
            }
        }
        out.push(primitive_part_in(&g.substitute(var, &scaled_var), var));
    }
    let mut prod = Polynomial::one(ring);
    for g in &out {
        prod = &prod * g;
    }
    (normalize(&prod) == normalize(h)).then_some(out)
}

/// Squarefree part of `f` as a polynomial in `var` over `K(u)`.
pub fn squarefree_part_in<C: Field>(f: &Polynomial<C>, var: usize) -> Polynomial<C> {
    let g = primitive_part_in(f, var);
    let dg = g.derivative(var);
    if dg.is_zero() {
        return g;
    }
    normalize(&g.div_exact(&gcd(&g, &dg)).expect("gcd divides"))
}

/// Content of `f` with respect to `var` (a polynomial in the others).
pub fn content_in_variable<C: Field>(f: &Polynomial<C>, var: usize) -> Polynomial<C> {
    content_in(f, var)
}
