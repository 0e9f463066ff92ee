//! Dense univariate polynomials over a field, coefficients low to high.
//! The zero polynomial is the empty vector.

use std::sync::Arc;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

pub(crate) type Dense<C> = Vec<C>;

pub(crate) fn trim<C: Field>(a: &mut Dense<C>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn degree<C: Field>(a: &[C]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub(crate) fn add<C: Field>(a: &[C], b: &[C]) -> Dense<C> {
    let mut out: Dense<C> = (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.clone() + y.clone(),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub<C: Field>(a: &[C], b: &[C]) -> Dense<C> {
    let neg: Dense<C> = b.iter().map(|c| -c.clone()).collect();
    add(a, &neg)
}

pub(crate) fn mul<C: Field>(a: &[C], b: &[C]) -> Dense<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &x.mul_ref(y);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale<C: Field>(a: &[C], c: &C) -> Dense<C> {
    let mut out: Dense<C> = a.iter().map(|x| x.mul_ref(c)).collect();
    trim(&mut out);
    out
}

pub(crate) fn monic<C: Field>(a: &[C]) -> Dense<C> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(a, &l.inv()),
    }
}

/// Quotient and remainder. Panics if `b` is zero.
pub(crate) fn divrem<C: Field>(a: &[C], b: &[C]) -> (Dense<C>, Dense<C>) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = b[db].inv();
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![C::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].mul_ref(&inv);
        for (j, bj) in b.iter().enumerate() {
            let t = c.mul_ref(bj);
            r[k + j] -= &t;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem<C: Field>(a: &[C], b: &[C]) -> Dense<C> {
    divrem(a, b).1
}

/// Monic gcd (zero if both inputs are zero).
pub(crate) fn gcd<C: Field>(a: &[C], b: &[C]) -> Dense<C> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// `(g, s, t)` with `s*a + t*b = g` and `g` the monic gcd.
pub(crate) fn ext_gcd<C: Field>(a: &[C], b: &[C]) -> (Dense<C>, Dense<C>, Dense<C>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![C::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![C::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (Vec::new(), Vec::new(), Vec::new()),
        Some(l) => {
            let inv = l.inv();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub(crate) fn derivative<C: Field>(a: &[C]) -> Dense<C> {
    let mut out: Dense<C> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul_ref(&C::from_i64(i as i64)))
        .collect();
    trim(&mut out);
    out
}

/// Squarefree decomposition of a nonzero polynomial (Yun): monic parts with
/// multiplicities whose product is `monic(f)`. `None` when the method does
/// not apply (p-th powers in positive characteristic).
pub(crate) fn squarefree<C: Field>(f: &[C]) -> Option<Vec<(Dense<C>, u32)>> {
    let f = monic(f);
    if f.len() <= 1 {
        return Some(Vec::new());
    }
    let df = derivative(&f);
    if df.is_empty() {
        return None;
    }
    let a0 = gcd(&f, &df);
    let mut b = divrem(&f, &a0).0;
    let c = divrem(&df, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        let nb = divrem(&b, &a).0;
        let nc = divrem(&d, &a).0;
        d = sub(&nc, &derivative(&nb));
        if a.len() > 1 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    let mut prod = vec![C::one()];
    for (p, e) in &out {
        for _ in 0..*e {
            prod = mul(&prod, p);
        }
    }
    (prod == f).then_some(out)
}

/// Coefficients of a polynomial involving only `var`.
pub(crate) fn from_poly<C: Field>(p: &Polynomial<C>, var: usize) -> Dense<C> {
    let deg = p.degree_in(var).map(|d| d as usize + 1).unwrap_or(0);
    let mut out = vec![C::zero(); deg];
    for (c, m) in p.terms() {
        debug_assert!(m.support().all(|v| v == var));
        out[m.exp(var) as usize] = c.clone();
    }
    trim(&mut out);
    out
}

pub(crate) fn to_poly<C: Field>(ring: &Arc<PolyRing>, var: usize, a: &[C]) -> Polynomial<C> {
    let terms = a
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c.clone(), Monomial::var(ring.nvars(), var, i as u32)))
        .collect();
    Polynomial::from_terms_unchecked(ring, terms)
}
