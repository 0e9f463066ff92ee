//! Normal forms and Buchberger's algorithm.
//!
//! Internally polynomials are kept as term vectors sorted decreasingly by
//! the working order; the public [`Polynomial`] type always stays in
//! canonical lex order.
//!
//! A basis "localized at u" represents the extension of the ideal to
//! `K(u)[X \ u]`: it is computed as a Gröbner basis in `K[X]` under an
//! elimination order with `X \ u` above `u`, and then thinned to the
//! elements that are minimal with respect to their leading monomial in the
//! `X \ u` variables. Representatives stay inside the original ideal, so
//! their leading coefficients (polynomials in `u`) are the ones that
//! contraction and the primality check saturate by.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::{BlockKind, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

type Terms<C> = Vec<(C, Monomial)>;

/// Bit mask of the support (variables folded modulo 64), used to reject
/// divisibility tests quickly.
#[inline]
fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

/// Key vector whose lexicographic comparison agrees with `ord`.
fn order_key(m: &Monomial, ord: &MonomialOrder) -> Vec<i64> {
    let e = m.exponents();
    match ord {
        MonomialOrder::Lex => e.iter().map(|&x| x as i64).collect(),
        MonomialOrder::DegRevLex => {
            let mut k = Vec::with_capacity(e.len() + 1);
            k.push(m.degree() as i64);
            k.extend(e.iter().rev().map(|&x| -(x as i64)));
            k
        }
        MonomialOrder::Block(blocks) => {
            let mut k = Vec::with_capacity(e.len() + blocks.len());
            for b in blocks {
                match b.kind {
                    BlockKind::Lex => k.extend(b.vars.iter().map(|&v| e[v] as i64)),
                    BlockKind::DegRevLex => {
                        k.push(b.vars.iter().map(|&v| e[v] as i64).sum());
                        k.extend(b.vars.iter().rev().map(|&v| -(e[v] as i64)));
                    }
                }
            }
            k
        }
    }
}

fn to_ordered<C: Field>(p: &Polynomial<C>, ord: &MonomialOrder) -> Terms<C> {
    let mut t = p.terms().to_vec();
    if !matches!(ord, MonomialOrder::Lex) {
        t.sort_by(|a, b| ord.cmp(&b.1, &a.1));
    }
    t
}

fn from_ordered<C: Field>(
    ring: &Arc<PolyRing>,
    mut t: Terms<C>,
    ord: &MonomialOrder,
) -> Polynomial<C> {
    if !matches!(ord, MonomialOrder::Lex) {
        t.sort_by(|a, b| b.1.cmp(&a.1));
    }
    Polynomial::from_sorted_unchecked(ring, t)
}

/// `a - c * m * b`, all sorted decreasingly under `ord`.
fn sub_mul<C: Field>(
    a: &[(C, Monomial)],
    c: &C,
    m: &Monomial,
    b: &[(C, Monomial)],
    ord: &MonomialOrder,
) -> Terms<C> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let next_b = |j: &mut usize| -> Option<(C, Monomial)> {
        let t = b.get(*j)?;
        *j += 1;
        Some((-(t.0.mul_ref(c)), t.1.mul(m)))
    };
    let mut bt = next_b(&mut j);
    while i < a.len() || bt.is_some() {
        match (&a.get(i), &bt) {
            (Some(x), Some(y)) => match ord.cmp(&x.1, &y.1) {
                Ordering::Greater => {
                    out.push((*x).clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bt.take().unwrap());
                    bt = next_b(&mut j);
                }
                Ordering::Equal => {
                    let (yc, ym) = bt.take().unwrap();
                    let mut s = x.0.clone();
                    s += &yc;
                    if !s.is_zero() {
                        out.push((s, ym));
                    }
                    i += 1;
                    bt = next_b(&mut j);
                }
            },
            (Some(x), None) => {
                out.push((*x).clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(bt.take().unwrap());
                bt = next_b(&mut j);
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn make_monic<C: Field>(t: &mut Terms<C>) {
    if let Some((c, _)) = t.first() {
        if !c.is_one() {
            let inv = c.inv();
            for (a, _) in t.iter_mut() {
                *a *= &inv;
            }
        }
    }
}

/// Basis element with cached leading data.
#[derive(Clone)]
struct Elem<C: Field> {
    terms: Terms<C>,
    mask: u64,
}

impl<C: Field> Elem<C> {
    fn new(terms: Terms<C>) -> Self {
        let mask = divmask(&terms[0].1);
        Elem { terms, mask }
    }
    fn lm(&self) -> &Monomial {
        &self.terms[0].1
    }
}

/// Full reduction of `f` by the (monic) elements at `active`.
fn reduce_full<C: Field>(
    f: Terms<C>,
    elems: &[Elem<C>],
    active: &[usize],
    ord: &MonomialOrder,
) -> Terms<C> {
    let mut rem = f;
    let mut pos = 0;
    let mut out: Terms<C> = Vec::new();
    while pos < rem.len() {
        let (c, m) = &rem[pos];
        let mm = divmask(m);
        let div = active
            .iter()
            .map(|&k| &elems[k])
            .find(|g| g.mask & !mm == 0 && g.lm().divides(m));
        match div {
            Some(g) => {
                let q = m.div(g.lm()).unwrap();
                let c = c.clone();
                rem = sub_mul(&rem[pos + 1..], &c, &q, &g.terms[1..], ord);
                pos = 0;
            }
            None => {
                out.push(rem[pos].clone());
                pos += 1;
            }
        }
    }
    out
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    key: Vec<i64>,
    i: usize,
    j: usize,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller update: adds element `h` and prunes pairs with the
/// product and chain criteria.
fn gm_update<C: Field>(
    elems: &[Elem<C>],
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: usize,
) {
    let lh = elems[h].lm().clone();
    let mut c: Vec<(usize, Monomial)> =
        active.iter().map(|&g| (g, lh.lcm(elems[g].lm()))).collect();
    let mut d: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g1, l1)) = c.pop() {
        let coprime = lh.is_coprime(elems[g1].lm());
        if coprime
            || (!c.iter().any(|(_, l2)| l2.divides(&l1))
                && !d.iter().any(|(_, l2)| l2.divides(&l1)))
        {
            d.push((g1, l1));
        }
    }
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && elems[p.i].lm().lcm(&lh) != p.lcm
            && elems[p.j].lm().lcm(&lh) != p.lcm)
    });
    for (g, l) in d {
        if !lh.is_coprime(elems[g].lm()) {
            pairs.push(Pair { i: g, j: h, lcm: l });
        }
    }
    active.retain(|&g| !lh.divides(elems[g].lm()));
    active.push(h);
}

/// Reduced Gröbner basis of `gens` under `ord`, as term vectors sorted by
/// `ord` (basis sorted by increasing leading monomial).
fn buchberger_terms<C: Field>(gens: &[Polynomial<C>], ord: &MonomialOrder) -> Vec<Terms<C>> {
    let mut elems: Vec<Elem<C>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Terms<C>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_ordered(g, ord))
        .collect();
    // small leading monomials first
    inputs.sort_by(|a, b| ord.cmp(&a[0].1, &b[0].1));
    for f in inputs {
        let mut r = reduce_full(f, &elems, &active, ord);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        if r[0].1.is_one() {
            return vec![r];
        }
        elems.push(Elem::new(r));
        let h = elems.len() - 1;
        gm_update(&elems, &mut active, &mut pairs, h);
    }

    loop {
        if pairs.is_empty() {
            break;
        }
        // normal strategy: smallest lcm first
        let mut heap: BinaryHeap<Reverse<PairKey>> = pairs
            .iter()
            .map(|p| {
                Reverse(PairKey {
                    key: order_key(&p.lcm, ord),
                    i: p.i,
                    j: p.j,
                })
            })
            .collect();
        let Reverse(best) = heap.pop().unwrap();
        drop(heap);
        let idx = pairs
            .iter()
            .position(|p| p.i == best.i && p.j == best.j)
            .unwrap();
        let pair = pairs.swap_remove(idx);

        let (fi, fj) = (&elems[pair.i], &elems[pair.j]);
        let mi = pair.lcm.div(fi.lm()).unwrap();
        let mj = pair.lcm.div(fj.lm()).unwrap();
        let left: Terms<C> = fi.terms[1..]
            .iter()
            .map(|(c, m)| (c.clone(), m.mul(&mi)))
            .collect();
        let s = sub_mul(&left, &C::one(), &mj, &fj.terms[1..], ord);
        let mut r = reduce_full(s, &elems, &active, ord);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        if r[0].1.is_one() {
            return vec![r];
        }
        elems.push(Elem::new(r));
        let h = elems.len() - 1;
        gm_update(&elems, &mut active, &mut pairs, h);
    }

    // active is minimal; interreduce tails
    let mut basis: Vec<usize> = active.clone();
    basis.sort_by(|&a, &b| ord.cmp(elems[a].lm(), elems[b].lm()));
    let mut out = Vec::with_capacity(basis.len());
    for (k, &idx) in basis.iter().enumerate() {
        let others: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, &x)| x)
            .collect();
        let lead = elems[idx].terms[0].clone();
        let tail = reduce_full(elems[idx].terms[1..].to_vec(), &elems, &others, ord);
        let mut t = Vec::with_capacity(tail.len() + 1);
        t.push(lead);
        t.extend(tail);
        out.push(t);
    }
    out
}

/// A Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C: Field> {
    ring: Arc<PolyRing>,
    order: MonomialOrder,
    elements: Vec<Polynomial<C>>,
    minimal: bool,
    reduced: bool,
    localized_vars: Option<Vec<usize>>,
    /// For localized bases: the full reduced basis in `K[X]`.
    full: Option<Vec<Polynomial<C>>>,
}

/// Elimination order used for the localized view at `u`. A block order
/// whose leading blocks are exactly `X \ u` is kept as given.
pub fn localized_order(ord: &MonomialOrder, u: &[usize], nvars: usize) -> MonomialOrder {
    let mut in_u = vec![false; nvars];
    for &v in u {
        in_u[v] = true;
    }
    if let MonomialOrder::Block(blocks) = ord {
        let mut covered = 0usize;
        let n_main = nvars - u.len();
        for b in blocks {
            if covered == n_main {
                break;
            }
            if b.vars.iter().any(|&v| in_u[v]) {
                break;
            }
            covered += b.vars.len();
        }
        if covered == n_main && n_main > 0 {
            return ord.clone();
        }
    }
    let main: Vec<usize> = (0..nvars).filter(|&v| !in_u[v]).collect();
    MonomialOrder::elimination(nvars, &main, ord.inner_kind())
}

impl<C: Field> GroebnerBasis<C> {
    /// Wraps elements known to form a reduced basis under `order`.
    pub(crate) fn from_reduced(
        ring: &Arc<PolyRing>,
        order: &MonomialOrder,
        mut elements: Vec<Polynomial<C>>,
    ) -> Self {
        elements.sort_by(|a, b| {
            let la = a.leading_term(order).map(|t| t.1.clone());
            let lb = b.leading_term(order).map(|t| t.1.clone());
            match (la, lb) {
                (Some(x), Some(y)) => order.cmp(&x, &y),
                _ => Ordering::Equal,
            }
        });
        GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            elements,
            minimal: true,
            reduced: true,
            localized_vars: None,
            full: None,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial<C>] {
        &self.elements
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn localized_vars(&self) -> Option<&[usize]> {
        self.localized_vars.as_deref()
    }

    /// The basis of the ideal in `K[X]` this basis was derived from (the
    /// elements themselves when not localized).
    pub fn full_basis(&self) -> &[Polynomial<C>] {
        self.full.as_deref().unwrap_or(&self.elements)
    }

    /// True if the basis generates the whole ring (or, localized, its
    /// localization is the whole ring).
    pub fn is_unit(&self) -> bool {
        self.elements
            .iter()
            .any(|g| self.main_leading(g).0.is_one())
    }

    fn main_mask(&self) -> Vec<bool> {
        let mut mask = vec![true; self.ring.nvars()];
        if let Some(u) = &self.localized_vars {
            for &v in u {
                mask[v] = false;
            }
        }
        mask
    }

    /// Leading monomial restricted to the non-localized variables and its
    /// coefficient as a polynomial in the localized variables (a constant
    /// when not localized).
    pub fn main_leading(&self, g: &Polynomial<C>) -> (Monomial, Polynomial<C>) {
        let mask = self.main_mask();
        let (_, lm) = g
            .leading_term(&self.order)
            .expect("basis elements are non-zero");
        let lmx = lm.restrict(&mask);
        let inv_mask: Vec<bool> = mask.iter().map(|b| !b).collect();
        let coeff_terms: Vec<(C, Monomial)> = g
            .terms()
            .iter()
            .filter(|(_, m)| m.restrict(&mask) == lmx)
            .map(|(c, m)| (c.clone(), m.restrict(&inv_mask)))
            .collect();
        (
            lmx,
            Polynomial::from_terms_unchecked(&self.ring, coeff_terms),
        )
    }

    /// Leading coefficients (in `K[u]`) of the elements, in basis order.
    pub fn leading_coefficients(&self) -> Vec<Polynomial<C>> {
        self.elements
            .iter()
            .map(|g| self.main_leading(g).1)
            .collect()
    }

    /// Checks Buchberger's criterion on the full basis.
    pub fn verify(&self) -> bool {
        let ord = &self.order;
        let full = self.full_basis();
        let elems: Vec<Elem<C>> = full
            .iter()
            .map(|p| {
                let mut t = to_ordered(p, ord);
                make_monic(&mut t);
                Elem::new(t)
            })
            .collect();
        let all: Vec<usize> = (0..elems.len()).collect();
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                let (a, b) = (&elems[i], &elems[j]);
                if a.lm().is_coprime(b.lm()) {
                    continue;
                }
                let l = a.lm().lcm(b.lm());
                let mi = l.div(a.lm()).unwrap();
                let mj = l.div(b.lm()).unwrap();
                let left: Terms<C> = a.terms[1..]
                    .iter()
                    .map(|(c, m)| (c.clone(), m.mul(&mi)))
                    .collect();
                let s = sub_mul(&left, &C::one(), &mj, &b.terms[1..], ord);
                if !reduce_full(s, &elems, &all, ord).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// With `localized_vars = Some(u)` the result describes the extension of
/// the ideal to `K(u)[X \ u]` (see the module docs); `ord` then supplies the
/// kind of order used inside the two elimination blocks, or is used as is
/// if it already ranks exactly `X \ u` first.
pub fn buchberger<C: Field>(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial<C>],
    ord: &MonomialOrder,
    localized_vars: Option<&[usize]>,
) -> Result<GroebnerBasis<C>> {
    for g in gens {
        if g.ring() != ring {
            return Err(AlgebraError::RingMismatch);
        }
    }
    ord.validate(ring.nvars())?;
    match localized_vars {
        None => {
            let elems = buchberger_terms(gens, ord);
            Ok(GroebnerBasis {
                ring: ring.clone(),
                order: ord.clone(),
                elements: elems
                    .into_iter()
                    .map(|t| from_ordered(ring, t, ord))
                    .collect(),
                minimal: true,
                reduced: true,
                localized_vars: None,
                full: None,
            })
        }
        Some(u) => {
            let mut u: Vec<usize> = u.to_vec();
            u.sort_unstable();
            u.dedup();
            if let Some(&v) = u.iter().find(|&&v| v >= ring.nvars()) {
                return Err(AlgebraError::InvalidArgument(format!(
                    "variable index {v} out of range"
                )));
            }
            let lord = localized_order(ord, &u, ring.nvars());
            let full_terms = buchberger_terms(gens, &lord);
            let full: Vec<Polynomial<C>> = full_terms
                .into_iter()
                .map(|t| from_ordered(ring, t, &lord))
                .collect();
            let mut gb = GroebnerBasis {
                ring: ring.clone(),
                order: lord,
                elements: Vec::new(),
                minimal: true,
                reduced: false,
                localized_vars: Some(u),
                full: None,
            };
            // elements are sorted by increasing leading monomial, so the
            // first element with a given X-part has the smallest coefficient
            let leads: Vec<Monomial> = full.iter().map(|g| gb.main_leading(g).0).collect();
            let mut keep = Vec::new();
            for (i, li) in leads.iter().enumerate() {
                let dominated = leads
                    .iter()
                    .enumerate()
                    .any(|(j, lj)| j != i && lj.divides(li) && (lj != li || j < i));
                if !dominated {
                    keep.push(full[i].clone());
                }
            }
            gb.elements = keep;
            gb.full = Some(full);
            Ok(gb)
        }
    }
}

/// Remainder of `f` modulo `g`. For localized bases the reduction happens in
/// `K(u)[X \ u]` without fractions: the result is a `K[X]` polynomial whose
/// class there equals the normal form up to a unit of `K(u)`.
pub fn normal_form<C: Field>(f: &Polynomial<C>, g: &GroebnerBasis<C>) -> Result<Polynomial<C>> {
    if f.ring() != g.ring() {
        return Err(AlgebraError::RingMismatch);
    }
    let ord = g.order();
    if g.localized_vars.is_none() {
        let elems: Vec<Elem<C>> = g
            .elements
            .iter()
            .map(|p| {
                let mut t = to_ordered(p, ord);
                make_monic(&mut t);
                Elem::new(t)
            })
            .collect();
        let all: Vec<usize> = (0..elems.len()).collect();
        let r = reduce_full(to_ordered(f, ord), &elems, &all, ord);
        return Ok(from_ordered(f.ring(), r, ord));
    }
    let mask = g.main_mask();
    let inv_mask: Vec<bool> = mask.iter().map(|b| !b).collect();
    let leads: Vec<(Monomial, Polynomial<C>)> =
        g.elements.iter().map(|e| g.main_leading(e)).collect();
    let mut f = f.clone();
    let mut done: Vec<Monomial> = Vec::new();
    loop {
        // largest X-monomial of f not yet known to be irreducible
        let mut xs: Vec<Monomial> = f.terms().iter().map(|(_, m)| m.restrict(&mask)).collect();
        xs.sort_by(|a, b| ord.cmp(b, a));
        xs.dedup();
        let target = xs.into_iter().find(|x| !done.contains(x));
        let Some(x) = target else { break };
        match leads.iter().position(|(l, _)| l.divides(&x)) {
            None => done.push(x),
            Some(k) => {
                let (l, lc) = &leads[k];
                let q = x.div(l).unwrap();
                let coeff_terms: Vec<(C, Monomial)> = f
                    .terms()
                    .iter()
                    .filter(|(_, m)| m.restrict(&mask) == x)
                    .map(|(c, m)| (c.clone(), m.restrict(&inv_mask)))
                    .collect();
                let cf = Polynomial::from_terms_unchecked(f.ring(), coeff_terms);
                let shifted = g.elements[k].mul_monomial(&C::one(), &q);
                f = &(lc * &f) - &(&cf * &shifted);
            }
        }
    }
    Ok(f)
}

/// Minimal generators of the leading-monomial ideal (restricted to the
/// non-localized variables for localized bases).
pub fn leading_ideal<C: Field>(g: &GroebnerBasis<C>) -> Vec<Monomial> {
    let lms: Vec<Monomial> = g.elements.iter().map(|e| g.main_leading(e).0).collect();
    minimize_monomials(lms)
}

pub(crate) fn minimize_monomials(mut lms: Vec<Monomial>) -> Vec<Monomial> {
    lms.sort();
    lms.dedup();
    let keep: Vec<Monomial> = lms
        .iter()
        .filter(|m| !lms.iter().any(|o| o != *m && o.divides(m)))
        .cloned()
        .collect();
    keep
}

/// Dimension of the quotient as a vector space over the coefficient field
/// (over `K(u)` for localized bases).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

pub fn vector_space_dimension<C: Field>(g: &GroebnerBasis<C>) -> QuotientDim {
    let mask = g.main_mask();
    let vars: Vec<usize> = (0..mask.len()).filter(|&v| mask[v]).collect();
    staircase_size(&leading_ideal(g), &vars)
}

/// Number of monomials in `vars` outside the monomial ideal `lms`.
pub fn staircase_size(lms: &[Monomial], vars: &[usize]) -> QuotientDim {
    if lms.iter().any(|m| m.is_one()) {
        return QuotientDim::Finite(0);
    }
    // finite iff every variable has a pure power among the generators
    let mut bounds = Vec::with_capacity(vars.len());
    for &v in vars {
        let pure = lms
            .iter()
            .filter(|m| m.support().all(|w| w == v))
            .map(|m| m.exp(v))
            .min();
        match pure {
            Some(b) => bounds.push(b),
            None => return QuotientDim::Infinite,
        }
    }
    fn count(lms: &[Monomial], vars: &[usize], bounds: &[u32]) -> u64 {
        if lms.iter().any(|m| vars.iter().all(|&v| m.exp(v) == 0)) {
            return 0;
        }
        let Some((&v, rest)) = vars.split_first() else {
            return 1;
        };
        let mut total = 0;
        for k in 0..bounds[0] {
            let sub: Vec<Monomial> = lms.iter().filter(|m| m.exp(v) <= k).cloned().collect();
            total += count(&sub, rest, &bounds[1..]);
        }
        total
    }
    QuotientDim::Finite(count(lms, vars, &bounds))
}
