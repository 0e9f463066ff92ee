//! Factorization of squarefree primitive integer polynomials: modular
//! factorization, Hensel lifting and subset recombination (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;

use super::modp::{ModPoly, Zp};

/// Integer polynomial, coefficients low to high, no trailing zeros.
pub(crate) type IntPoly = Vec<BigInt>;

/// Largest degree handled by the univariate factorizer.
pub(crate) const MAX_DEGREE: usize = 64;
/// Recombination gives up beyond this many modular factors.
pub(crate) const MAX_MODULAR_FACTORS: usize = 16;
/// Number of primes whose degree patterns are intersected.
const PATTERN_PRIMES: usize = 6;

fn trim(a: &mut IntPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides by the content and makes the leading coefficient positive.
pub(crate) fn primitive(f: &[BigInt]) -> IntPoly {
    let mut c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    if f.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    f.iter().map(|x| x / &c).collect()
}

fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn reduce(f: &[BigInt], m: &BigInt) -> IntPoly {
    let mut out: IntPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn symmetric(f: &[BigInt], m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    let mut out: IntPoly = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn to_mod(f: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    let mut out: ModPoly = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    Zp::new(p).trim(&mut out);
    out
}

fn from_mod(f: &[u64]) -> IntPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// Exact division over the integers.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let db = b.len().checked_sub(1)?;
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    if !b[0].is_zero() && !a[0].is_zero() && !a[0].is_multiple_of(&b[0]) {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let (c, rest) = r[r.len() - 1].div_rem(&b[db]);
        if !rest.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    if !r.is_empty() {
        return None;
    }
    trim(&mut q);
    Some(q)
}

pub(crate) fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        (3..)
            .step_by(2)
            .take_while(|d| d * d <= n)
            .all(|d| n % d != 0)
    })
}

/// Lifts `f ≡ g0*h0 (mod p)` (all monic) to `mod p^k`.
fn lift_two(f: &[BigInt], g0: &[u64], h0: &[u64], z: Zp, k: u32) -> (IntPoly, IntPoly) {
    let (_, s, t) = z.ext_gcd(g0, h0);
    let mut g = from_mod(g0);
    let mut h = from_mod(h0);
    let pb = BigInt::from(z.p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = mul(&g, &h);
        let mut diff: IntPoly = (0..f.len().max(gh.len()))
            .map(|i| f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
            .collect();
        trim(&mut diff);
        let e: ModPoly = {
            let mut e: ModPoly = diff
                .iter()
                .map(|c| (c / &pj).mod_floor(&pb).to_u64().unwrap())
                .collect();
            z.trim(&mut e);
            e
        };
        if !e.is_empty() {
            let (q, sigma) = z.divrem(&z.mul_poly(&e, &s), h0);
            let tau = z.add_poly(&z.mul_poly(&e, &t), &z.mul_poly(&q, g0));
            for (i, c) in sigma.iter().enumerate() {
                h[i] += &pj * c;
            }
            for (i, c) in tau.iter().enumerate() {
                g[i] += &pj * c;
            }
        }
        pj *= &pb;
    }
    (g, h)
}

fn lift_tree(f: &[BigInt], facs: &[ModPoly], z: Zp, k: u32, pk: &BigInt) -> Vec<IntPoly> {
    if facs.len() == 1 {
        return vec![reduce(f, pk)];
    }
    let mid = facs.len() / 2;
    let prod = |fs: &[ModPoly]| fs.iter().fold(vec![1u64], |acc, g| z.mul_poly(&acc, g));
    let (g, h) = lift_two(f, &prod(&facs[..mid]), &prod(&facs[mid..]), z, k);
    let (g, h) = (reduce(&g, pk), reduce(&h, pk));
    let mut out = lift_tree(&g, &facs[..mid], z, k, pk);
    out.extend(lift_tree(&h, &facs[mid..], z, k, pk));
    out
}

/// Monic factors modulo `p^k` of `lc(f)^-1 * f`.
fn hensel_lift(f: &[BigInt], facs: &[ModPoly], z: Zp, k: u32) -> Vec<IntPoly> {
    let pk = BigInt::from(z.p).pow(k);
    let lc = f.last().unwrap();
    let ext = lc.extended_gcd(&pk);
    debug_assert!(ext.gcd.is_one());
    let inv = ext.x.mod_floor(&pk);
    let ft: IntPoly = f.iter().map(|c| (c * &inv).mod_floor(&pk)).collect();
    lift_tree(&ft, facs, z, k, &pk)
}

/// Subset sums reachable from a degree multiset, as a bit vector.
fn reachable(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut r = vec![false; n + 1];
    r[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if r[s - d] {
                r[s] = true;
            }
        }
    }
    r
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree primitive polynomial of positive degree. `None` when the
/// degree or the number of modular factors exceeds the built-in bounds.
pub(crate) fn factor_squarefree(f: &[BigInt], rng: &mut ChaCha8Rng) -> Option<Vec<IntPoly>> {
    let f = primitive(f);
    let n = f.len().checked_sub(1)?;
    if n <= 1 {
        return Some(vec![f]);
    }
    if f[0].is_zero() {
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree(&f[1..], rng)?);
        return Some(out);
    }
    if n > MAX_DEGREE {
        return None;
    }
    let lc = f[n].clone();
    let mut possible = vec![true; n + 1];
    let mut best: Option<(u64, usize)> = None;
    let mut good = 0;
    for p in odd_primes().take(200) {
        if (&lc % p).is_zero() {
            continue;
        }
        let z = Zp::new(p);
        let fp = z.monic(&to_mod(&f, p));
        if fp.len() != n + 1 || !z.is_squarefree(&fp) {
            continue;
        }
        let degs = z.factor_degrees(&fp);
        let r = reachable(&degs, n);
        for (a, b) in possible.iter_mut().zip(&r) {
            *a &= *b;
        }
        if best.is_none_or(|(_, c)| degs.len() < c) {
            best = Some((p, degs.len()));
        }
        good += 1;
        if good >= PATTERN_PRIMES {
            break;
        }
    }
    let (p, count) = best?;
    if !possible[1..n].iter().any(|&b| b) || count == 1 {
        return Some(vec![f]);
    }
    if count > MAX_MODULAR_FACTORS {
        return None;
    }
    let z = Zp::new(p);
    let facs = z.factor_squarefree(&z.monic(&to_mod(&f, p)), rng);

    // p^k > 2 |lc| B with B a Mignotte-type bound on factor coefficients
    let max_coef = f.iter().map(|c| c.abs()).max().unwrap();
    let sqrt = BigInt::from(((n + 1) as f64).sqrt().ceil() as u64);
    let bound: BigInt = (max_coef * sqrt * lc.abs() * 2u32) << n;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let mut lifts = hensel_lift(&f, &facs, z, k);

    let mut rest = f;
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifts.len() {
        let mut found = None;
        for subset in combinations(lifts.len(), s) {
            let deg: usize = subset.iter().map(|&i| lifts[i].len() - 1).sum();
            if !possible[deg] {
                continue;
            }
            let lcr = rest.last().unwrap().clone();
            let mut g: IntPoly = vec![lcr];
            for &i in &subset {
                g = reduce(&mul(&g, &lifts[i]), &pk);
            }
            let g = primitive(&symmetric(&g, &pk));
            if let Some(q) = div_exact(&rest, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                rest = q;
                for &i in subset.iter().rev() {
                    lifts.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.len() > 1 {
        out.push(primitive(&rest));
    }
    Some(out)
}
