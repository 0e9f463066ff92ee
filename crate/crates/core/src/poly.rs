//! Sparse multivariate polynomials in canonical form.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::PolyRing;

/// A polynomial over `C`. Terms are kept sorted strictly decreasing in lex
/// order over the ring's declared variable list, with no zero coefficients;
/// the zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial<C: Field> {
    ring: Arc<PolyRing>,
    terms: Vec<(C, Monomial)>,
}

impl<C: Field> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl<C: Field> Eq for Polynomial<C> {}

impl<C: Field> std::hash::Hash for Polynomial<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn merge_desc<C: Field>(
    a: &[(C, Monomial)],
    b: impl Iterator<Item = (C, Monomial)>,
) -> Vec<(C, Monomial)> {
    let mut out = Vec::with_capacity(a.len());
    let mut b = b.peekable();
    let mut i = 0;
    loop {
        match (a.get(i), b.peek()) {
            (None, None) => break,
            (Some(t), None) => {
                out.push(t.clone());
                i += 1;
            }
            (None, Some(_)) => out.push(b.next().unwrap()),
            (Some(t), Some(u)) => match t.1.cmp(&u.1) {
                Ordering::Greater => {
                    out.push(t.clone());
                    i += 1;
                }
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (c, m) = b.next().unwrap();
                    let mut s = t.0.clone();
                    s += &c;
                    if !s.is_zero() {
                        out.push((s, m));
                    }
                    i += 1;
                }
            },
        }
    }
    out
}

impl<C: Field> Polynomial<C> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: C) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((c, Monomial::one(ring.nvars())));
        }
        p
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, C::one(), Monomial::var(ring.nvars(), i, 1))
    }

    pub fn monomial(ring: &Arc<PolyRing>, c: C, m: Monomial) -> Self {
        assert_eq!(
            m.nvars(),
            ring.nvars(),
            "monomial length must match the ring"
        );
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((c, m));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms (unsorted, repeated and zero
    /// coefficients allowed).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(C, Monomial)>) -> Result<Self> {
        for (_, m) in &terms {
            if m.nvars() != ring.nvars() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: ring.nvars(),
                    found: m.nvars(),
                });
            }
        }
        Ok(Self::from_terms_unchecked(ring, terms))
    }

    pub(crate) fn from_terms_unchecked(
        ring: &Arc<PolyRing>,
        mut terms: Vec<(C, Monomial)>,
    ) -> Self {
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        let mut out: Vec<(C, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 += &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.0.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((c, m));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.0.is_zero() {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Terms already sorted in canonical order with no zeros or repeats.
    pub(crate) fn from_sorted_unchecked(ring: &Arc<PolyRing>, terms: Vec<(C, Monomial)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].1 > w[1].1));
        debug_assert!(terms.iter().all(|t| !t.0.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(C, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(C, Monomial)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(_, m)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.exp(var)).max()
    }

    /// Variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (_, m) in &self.terms {
            for v in m.support() {
                seen[v] = true;
            }
        }
        (0..seen.len()).filter(|&v| seen[v]).collect()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_desc(&self.terms, other.terms.iter().cloned()),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_desc(
                &self.terms,
                other.terms.iter().map(|(c, m)| (-c.clone(), m.clone())),
            ),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                let m = ma.mul(mb);
                let c = a.mul_ref(b);
                match acc.get_mut(&m) {
                    Some(x) => *x += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(C, Monomial)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, m)| (a.mul_ref(c), m.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, c: &C, mono: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        // multiplication by a monomial preserves lex order
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, m)| (a.mul_ref(c), m.mul(mono)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Leading term under `ord`, `None` for zero.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&C, &Monomial)> {
        if matches!(ord, MonomialOrder::Lex) {
            return self.terms.first().map(|(c, m)| (c, m));
        }
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.1, &b.1))
            .map(|(c, m)| (c, m))
    }

    /// Coefficient and monomial of the `ord`-maximal term.
    pub fn leading_data(&self, ord: &MonomialOrder) -> Result<(C, Monomial)> {
        self.leading_term(ord)
            .map(|(c, m)| (c.clone(), m.clone()))
            .ok_or(AlgebraError::ZeroInput(
                "leading data of the zero polynomial",
            ))
    }

    /// Coefficient of the lex-first term (the canonical leading coefficient).
    pub fn lead_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(c, _)| c)
    }

    /// Scales so that the lex-first coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scalar_mul(&c.inv()),
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> C {
        match self.terms.binary_search_by(|t| m.cmp(&t.1)) {
            Ok(i) => self.terms[i].0.clone(),
            Err(_) => C::zero(),
        }
    }

    /// Substitutes constants for some variables.
    pub fn specialize(&self, assignment: &[(usize, C)]) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut c = c.clone();
            let mut m = m.clone();
            for (v, val) in assignment {
                let e = m.exp(*v);
                if e > 0 {
                    for _ in 0..e {
                        c *= val;
                    }
                    m.exponents_mut()[*v] = 0;
                }
            }
            terms.push((c, m));
        }
        Self::from_terms_unchecked(&self.ring, terms)
    }

    /// Replaces variable `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial<C>) -> Self {
        let coeffs = self.coefficients_in(var);
        // Horner
        let mut acc = Self::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Applies the variable permutation `perm` (variable `i` becomes
    /// variable `perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| (c.clone(), m.permute(perm)))
            .collect();
        Self::from_terms_unchecked(&self.ring, terms)
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, a polynomial free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial<C>> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut buckets: Vec<Vec<(C, Monomial)>> = vec![Vec::new(); deg + 1];
        for (c, m) in &self.terms {
            let k = m.exp(var) as usize;
            let mut m2 = m.clone();
            m2.exponents_mut()[var] = 0;
            buckets[k].push((c.clone(), m2));
        }
        buckets
            .into_iter()
            .map(|ts| Self::from_terms_unchecked(&self.ring, ts))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(
        ring: &Arc<PolyRing>,
        var: usize,
        coeffs: &[Polynomial<C>],
    ) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (a, m) in &c.terms {
                let mut m2 = m.clone();
                m2.exponents_mut()[var] += k as u32;
                terms.push((a.clone(), m2));
            }
        }
        Self::from_terms_unchecked(ring, terms)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(_, m)| m.exp(var) > 0)
            .map(|(c, m)| {
                let e = m.exp(var);
                let mut m2 = m.clone();
                m2.exponents_mut()[var] = e - 1;
                (c.mul_ref(&C::from_i64(e as i64)), m2)
            })
            .collect();
        Self::from_terms_unchecked(&self.ring, terms)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial<C>) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (lc, lm) = (&divisor.terms[0].0, &divisor.terms[0].1);
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((c, m)) = rem.terms.first() {
            let q = m.div(lm)?;
            let qc = c.mul_ref(&lc_inv);
            rem = &rem - &divisor.mul_monomial(&qc, &q);
            quot.push((qc, q));
        }
        Some(Self::from_terms_unchecked(&self.ring, quot))
    }

    /// Moves the polynomial into `target`, a ring whose variable list starts
    /// with this ring's variables.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Self {
        let n = target.nvars();
        debug_assert!(n >= self.ring.nvars());
        debug_assert!(self
            .ring
            .names()
            .iter()
            .zip(target.names())
            .all(|(a, b)| a == b));
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut e = m.exponents().to_vec();
                e.resize(n, 0);
                (c.clone(), Monomial::new(e))
            })
            .collect();
        // appending zero exponents keeps lex order
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    /// Inverse of [`embed`](Self::embed); `None` if a dropped variable
    /// occurs.
    pub fn project(&self, target: &Arc<PolyRing>) -> Option<Self> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            if m.exponents()[n..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((c.clone(), Monomial::new(m.exponents()[..n].to_vec())));
        }
        Some(Polynomial {
            ring: target.clone(),
            terms,
        })
    }

    /// Evaluates at a full point.
    pub fn evaluate(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for v in m.support() {
                for _ in 0..m.exp(v) {
                    t *= &point[v];
                }
            }
            acc += &t;
        }
        acc
    }
}

impl<'a, C: Field> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    /// Panics on ring mismatch; use [`Polynomial::checked_add`] otherwise.
    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a, C: Field> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a, C: Field> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl<C: Field> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (-c.clone(), m.clone()))
                .collect(),
        }
    }
}

impl<C: Field> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.sign_and_magnitude();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            let mut first = true;
            for v in m.support() {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.name(v))?;
                if m.exp(v) > 1 {
                    write!(f, "^{}", m.exp(v))?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};
    use crate::parse::parse_polynomial;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(["x", "y", "z", "u", "w"]).unwrap()
    }

    fn p(s: &str) -> Polynomial<Q> {
        parse_polynomial(&ring(), s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x+y") + &p("x-y"), p("2*x"));
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
        let f = p("x^3*y - 2/3*z + 7");
        assert!((&f + &f.scalar_mul(&Q::from_i64(-1))).is_zero());
        assert_eq!(f.pow(0), p("1"));
        assert_eq!(p("x+1").pow(3), p("x^3+3*x^2+3*x+1"));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let other = PolyRing::new(["a"]).unwrap();
        let a: Polynomial<Q> = Polynomial::var(&other, 0);
        assert_eq!(p("x").checked_add(&a), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn leading_data_examples() {
        let r2 = PolyRing::new(["x", "y"]).unwrap();
        let f: Polynomial<Q> = parse_polynomial(&r2, "x^2*y + y^3").unwrap();
        let (c, m) = f.leading_data(&MonomialOrder::Lex).unwrap();
        assert_eq!((c, m), (Q::from_i64(1), Monomial::new(vec![2, 1])));
        let g: Polynomial<Q> = parse_polynomial(&r2, "2*y^3 + x").unwrap();
        let (c, m) = g.leading_data(&MonomialOrder::DegRevLex).unwrap();
        assert_eq!((c, m), (Q::from_i64(2), Monomial::new(vec![0, 3])));
        assert_eq!(
            Polynomial::<Q>::zero(&r2).leading_data(&MonomialOrder::Lex),
            Err(AlgebraError::ZeroInput(
                "leading data of the zero polynomial"
            ))
        );
    }

    #[test]
    fn specialize_examples() {
        let r = PolyRing::new(["x", "y", "u"]).unwrap();
        let q = |s: &str| parse_polynomial::<Q>(&r, s).unwrap();
        assert_eq!(
            q("x*y + y^2").specialize(&[(0, Q::from_i64(1))]),
            q("y + y^2")
        );
        assert!(q("x*y").specialize(&[(1, Q::from_i64(0))]).is_zero());
        assert_eq!(
            q("x^2 - u").specialize(&[(2, Q::from_i64(4))]),
            q("x^2 - 4")
        );
    }

    #[test]
    fn coefficient_views_and_division() {
        let f = p("x^2*y - 3*x*z + y + 1");
        let cs = f.coefficients_in(0);
        assert_eq!(cs, vec![p("y+1"), p("-3*z"), p("y")]);
        assert_eq!(Polynomial::from_coefficients_in(&ring(), 0, &cs), f);
        let g = p("x - y");
        let h = &f * &g;
        assert_eq!(h.div_exact(&g), Some(f.clone()));
        assert_eq!(f.div_exact(&g), None);
        assert_eq!(p("x^2*y").derivative(0), p("2*x*y"));
        assert_eq!(p("x^2 + y").substitute(0, &p("y+1")), p("y^2 + 3*y + 1"));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial<Q>> {
        let term = (-3i64..=3, proptest::collection::vec(0u32..=1, 5), 0u32..=2);
        proptest::collection::vec(term, 0..5).prop_map(|ts| {
            let r = ring();
            let terms = ts
                .into_iter()
                .map(|(c, mut e, extra)| {
                    e[0] += extra;
                    (Q::from_i64(c), Monomial::new(e))
                })
                .collect();
            Polynomial::from_terms(&r, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            let back: Polynomial<Q> = parse_polynomial(&ring(), &a.to_string()).unwrap();
            prop_assert_eq!(back, a.clone());
            let modp: Polynomial<Fp<101>> = parse_polynomial(&ring(), &a.to_string()).unwrap();
            let back: Polynomial<Fp<101>> = parse_polynomial(&ring(), &modp.to_string()).unwrap();
            prop_assert_eq!(back, modp);
        }

        #[test]
        fn canonical_form_invariant(a in arb_poly(), b in arb_poly()) {
            let prod = &a * &b;
            prop_assert!(prod.terms().windows(2).all(|w| w[0].1 > w[1].1));
            prop_assert!(prod.terms().iter().all(|t| !t.0.is_zero()));
        }
    }
}
