//! Univariate polynomials over `Z/pZ` for word-sized odd primes
//! (`p < 2^31`), with distinct-degree and Cantor–Zassenhaus factoring.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub(crate) type ModPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Zp { p }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn trim(self, a: &mut ModPoly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn monic(self, a: &[u64]) -> ModPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    pub fn add_poly(self, a: &[u64], b: &[u64]) -> ModPoly {
        let mut out: ModPoly = (0..a.len().max(b.len()))
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(&mut out);
        out
    }

    pub fn sub_poly(self, a: &[u64], b: &[u64]) -> ModPoly {
        let mut out: ModPoly = (0..a.len().max(b.len()))
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(&mut out);
        out
    }

    pub fn mul_poly(self, a: &[u64], b: &[u64]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(&mut out);
        out
    }

    pub fn divrem(self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        self.trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = self.mul(r[r.len() - 1], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bj));
                }
            }
            q[k] = c;
            r.pop();
            self.trim(&mut r);
        }
        self.trim(&mut q);
        (q, r)
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> ModPoly {
        self.divrem(a, b).1
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> ModPoly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        self.trim(&mut x);
        self.trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        self.trim(&mut r0);
        self.trim(&mut r1);
        let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("gcd of zero polynomials"));
        let sc = |v: &ModPoly| v.iter().map(|&c| self.mul(c, inv)).collect::<ModPoly>();
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn derivative(self, a: &[u64]) -> ModPoly {
        let mut out: ModPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        self.trim(&mut out);
        out
    }

    pub fn is_squarefree(self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    pub fn mulmod(self, a: &[u64], b: &[u64], m: &[u64]) -> ModPoly {
        self.rem(&self.mul_poly(a, b), m)
    }

    pub fn powmod(self, a: &[u64], mut e: u64, m: &[u64]) -> ModPoly {
        let mut base = self.rem(a, m);
        let mut r: ModPoly = self.rem(&[1], m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulmod(&r, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            e >>= 1;
        }
        r
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs (product of all irreducible factors of degree d, d).
    pub fn distinct_degree(self, f: &[u64]) -> Vec<(ModPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: ModPoly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 1;
        while f.len() > 2 * d {
            h = self.powmod(&h, self.p, &f);
            let g = self.gcd(&f, &self.sub_poly(&h, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    /// Splits a monic product of irreducibles all of degree `d`.
    pub fn equal_degree(self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        loop {
            let mut a: ModPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            self.trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut frob = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                frob = self.powmod(&frob, self.p, f);
                norm = self.mulmod(&norm, &frob, f);
            }
            let b = self.powmod(&norm, (self.p - 1) / 2, f);
            let g = self.gcd(f, &self.sub_poly(&b, &[1]));
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree(self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort();
        out
    }

    /// Degrees of the irreducible factors of a monic squarefree polynomial.
    pub fn factor_degrees(self, f: &[u64]) -> Vec<usize> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            let k = (g.len() - 1) / d;
            out.extend(std::iter::repeat(d).take(k));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_split_completely() {
        let z = Zp::new(101);
        // (x-1)(x-2)(x^2+1)·(x^2+x+... irreducible)
        let mut f: ModPoly = vec![1];
        for fac in [vec![100, 1], vec![99, 1], vec![1, 0, 1], vec![2, 0, 0, 1]] {
            f = z.mul_poly(&f, &fac);
        }
        assert!(z.is_squarefree(&f));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let facs = z.factor_squarefree(&f, &mut rng);
        let mut prod: ModPoly = vec![1];
        for g in &facs {
            prod = z.mul_poly(&prod, g);
        }
        assert_eq!(prod, f);
        let mut degs: Vec<usize> = facs.iter().map(|g| g.len() - 1).collect();
        degs.sort();
        let mut pattern = z.factor_degrees(&f);
        pattern.sort();
        assert_eq!(degs, pattern);
        assert_eq!(degs.iter().sum::<usize>(), 7);
    }
}
