//! Multivariate gcd over a field by recursive primitive remainder
//! sequences.

use super::dense::{self, Dense};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Scales so that the lex-leading coefficient is one.
pub fn normalize<C: Field>(p: &Polynomial<C>) -> Polynomial<C> {
    match p.terms().first() {
        None => p.clone(),
        Some((c, _)) if c.is_one() => p.clone(),
        Some((c, _)) => p.scalar_mul(&c.inv()),
    }
}

fn lc_in<C: Field>(p: &Polynomial<C>, var: usize) -> Polynomial<C> {
    p.coefficients_in(var)
        .pop()
        .unwrap_or_else(|| Polynomial::zero(p.ring()))
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
pub fn pseudo_remainder<C: Field>(
    a: &Polynomial<C>,
    b: &Polynomial<C>,
    var: usize,
) -> Polynomial<C> {
    let db = b.degree_in(var).expect("nonzero divisor");
    let lb = lc_in(b, var);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(var) {
        if dr < db {
            break;
        }
        let lr = lc_in(&r, var);
        let shift = Monomial::var(a.ring().nvars(), var, dr - db);
        let t = (&lr * b).mul_monomial(&C::one(), &shift);
        r = &(&lb * &r) - &t;
    }
    r
}

/// Gcd of the coefficients of `p` with respect to `var`.
pub fn content_in<C: Field>(p: &Polynomial<C>, var: usize) -> Polynomial<C> {
    let mut g = Polynomial::zero(p.ring());
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Polynomial::one(p.ring());
        }
    }
    g
}

/// Primitive part with respect to `var` (normalized).
pub fn primitive_part_in<C: Field>(p: &Polynomial<C>, var: usize) -> Polynomial<C> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    normalize(&p.div_exact(&c).expect("content divides"))
}

/// Normalized greatest common divisor (zero only if both are zero).
pub fn gcd<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let mg = ma.gcd(&mb);
    let a = strip_monomial(a, &ma);
    let b = strip_monomial(b, &mb);
    let g = if a.is_constant() || b.is_constant() {
        Polynomial::one(a.ring())
    } else {
        let mut vars = a.variables();
        vars.extend(b.variables());
        vars.sort_unstable();
        vars.dedup();
        if vars.len() == 1 {
            let v = vars[0];
            let d = dense::gcd(&dense::from_poly(&a, v), &dense::from_poly(&b, v));
            dense::to_poly(a.ring(), v, &d)
        } else {
            brown(&a, &b, *vars.last().unwrap()).unwrap_or_else(|| gcd_prs(&a, &b))
        }
    };
    normalize(&g.mul_monomial(&C::one(), &mg))
}

fn monomial_content<C: Field>(p: &Polynomial<C>) -> Monomial {
    p.terms()
        .iter()
        .map(|t| &t.1)
        .fold(p.terms()[0].1.clone(), |g, m| g.gcd(m))
}

fn strip_monomial<C: Field>(p: &Polynomial<C>, m: &Monomial) -> Polynomial<C> {
    if m.is_one() {
        return p.clone();
    }
    let terms = p
        .terms()
        .iter()
        .map(|(c, t)| (c.clone(), t.div(m).unwrap()))
        .collect();
    Polynomial::from_sorted_unchecked(p.ring(), terms)
}

/// Coefficients of `p` as a polynomial in the variables other than `y`,
/// each a dense polynomial in `y`.
fn split_off<C: Field>(p: &Polynomial<C>, y: usize) -> Vec<(Monomial, Dense<C>)> {
    let mut out: Vec<(Monomial, Dense<C>)> = Vec::new();
    for (c, m) in p.terms() {
        let k = m.exp(y) as usize;
        let mut rest = m.clone();
        rest.exponents_mut()[y] = 0;
        // terms are lex sorted, so equal rest-monomials need not be adjacent
        let slot = match out.iter().position(|(r, _)| *r == rest) {
            Some(i) => i,
            None => {
                out.push((rest, Vec::new()));
                out.len() - 1
            }
        };
        let d = &mut out[slot].1;
        if d.len() <= k {
            d.resize(k + 1, C::zero());
        }
        d[k] = c.clone();
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Content in `K[y]` of `p` viewed over `K[y]`.
fn content_y<C: Field>(parts: &[(Monomial, Dense<C>)]) -> Dense<C> {
    let mut g: Dense<C> = Vec::new();
    for (_, d) in parts {
        g = dense::gcd(&g, d);
        if g.len() == 1 {
            break;
        }
    }
    g
}

/// Brown's dense evaluation/interpolation gcd with respect to `y`, for
/// polynomials without monomial content. `None` if the field runs out of
/// evaluation points.
fn brown<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>, y: usize) -> Option<Polynomial<C>> {
    let ring = a.ring();
    let pa = split_off(a, y);
    let pb = split_off(b, y);
    let ca = content_y(&pa);
    let cb = content_y(&pb);
    let c = dense::gcd(&ca, &cb);
    let c_poly = dense::to_poly(ring, y, &c);
    let a = a
        .div_exact(&dense::to_poly(ring, y, &ca))
        .expect("content divides");
    let b = b
        .div_exact(&dense::to_poly(ring, y, &cb))
        .expect("content divides");
    let pa = split_off(&a, y);
    let pb = split_off(&b, y);
    // both primitive over K[y]; a factor free of the other variables is a unit
    if pa.len() == 1 && pa[0].0.is_one() || pb.len() == 1 && pb[0].0.is_one() {
        return Some(c_poly);
    }
    let la = &pa[0].1;
    let lb = &pb[0].1;
    let gamma = dense::gcd(la, lb);
    let deg_bound = a.degree_in(y).unwrap().min(b.degree_in(y).unwrap()) as usize + gamma.len();

    let yvar = Polynomial::var(ring, y);
    let mut interp: Option<(Polynomial<C>, Monomial, Polynomial<C>, usize)> = None;
    let char_p = C::characteristic();
    let mut alpha_i: i64 = 0;
    loop {
        alpha_i += 1;
        if char_p != 0 && alpha_i as u64 >= char_p {
            return None;
        }
        let alpha = C::from_i64(alpha_i);
        let ev = |d: &Dense<C>| {
            d.iter()
                .rev()
                .fold(C::zero(), |acc, x| acc * alpha.clone() + x.clone())
        };
        let g_alpha = ev(&gamma);
        if g_alpha.is_zero() || ev(la).is_zero() || ev(lb).is_zero() {
            continue;
        }
        let aa = a.specialize(&[(y, alpha.clone())]);
        let ba = b.specialize(&[(y, alpha.clone())]);
        let ga = gcd(&aa, &ba);
        if ga.is_constant() {
            return Some(c_poly);
        }
        let ga = ga.scalar_mul(&g_alpha);
        let lm = ga.terms()[0].1.clone();
        let (h, modulus, count) = match interp.take() {
            None => (ga, Polynomial::one(ring), 1),
            Some((h, cur_lm, modulus, count)) => match lm.cmp(&cur_lm) {
                std::cmp::Ordering::Less => (ga, Polynomial::one(ring), 1),
                std::cmp::Ordering::Greater => {
                    interp = Some((h, cur_lm, modulus, count));
                    continue;
                }
                std::cmp::Ordering::Equal => {
                    let h_alpha = h.specialize(&[(y, alpha.clone())]);
                    let diff = &ga - &h_alpha;
                    if diff.is_zero() {
                        // stabilized: try the candidate
                        let cand = primitive_over_y(&h, y);
                        if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                            return Some(&cand * &c_poly);
                        }
                        let next = &modulus * &(&yvar - &Polynomial::constant(ring, alpha.clone()));
                        interp = Some((h, cur_lm, next, count + 1));
                        continue;
                    }
                    let m_alpha = modulus.specialize(&[(y, alpha.clone())]);
                    let m_alpha = m_alpha
                        .terms()
                        .first()
                        .map(|t| t.0.clone())
                        .unwrap_or_else(C::zero);
                    let corr = &diff * &modulus.scalar_mul(&m_alpha.inv());
                    (&h + &corr, modulus, count + 1)
                }
            },
        };
        let next = &modulus * &(&yvar - &Polynomial::constant(ring, alpha.clone()));
        if count > deg_bound + 1 {
            let cand = primitive_over_y(&h, y);
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return Some(&cand * &c_poly);
            }
        }
        interp = Some((h, lm, next, count));
    }
}

fn primitive_over_y<C: Field>(h: &Polynomial<C>, y: usize) -> Polynomial<C> {
    let parts = split_off(h, y);
    let c = content_y(&parts);
    normalize(
        &h.div_exact(&dense::to_poly(h.ring(), y, &c))
            .expect("content divides"),
    )
}

/// Gcd by recursive primitive remainder sequences.
fn gcd_prs<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    let va = a.variables();
    let vb = b.variables();
    let var = *va.iter().chain(vb.iter()).max().unwrap();
    let in_a = va.contains(&var);
    let in_b = vb.contains(&var);
    if !in_a {
        return gcd(a, &content_in(b, var));
    }
    if !in_b {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd(&ca, &cb);
    let mut p = normalize(&a.div_exact(&ca).unwrap());
    let mut q = normalize(&b.div_exact(&cb).unwrap());
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_remainder(&p, &q, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == Some(0) {
            q = Polynomial::one(a.ring());
            break;
        }
        p = q;
        q = primitive_part_in(&r, var);
    }
    normalize(&(&c * &q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::parse::parse_polynomial;
    use crate::ring::PolyRing;

    #[test]
    fn multivariate_gcds() {
        let r = PolyRing::new(["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_polynomial::<Q>(&r, s).unwrap();
        let g = p("x*y - z^2 + 1");
        let a = &g * &p("x + y + z");
        let b = &g * &p("x^2 - 3*y*z");
        assert_eq!(gcd(&a, &b), normalize(&g));
        assert_eq!(gcd(&p("x^2*y"), &p("x*y^3")), p("x*y"));
        assert_eq!(gcd(&p("x+1"), &p("y")), p("1"));
        assert_eq!(gcd(&p("2*x*z+2*z"), &p("3*z*y*x+3*z*y")), p("x*z+z"));
        let f = p("x*y^2*z + x*y*z^2 - y + 2");
        let u = &(&f * &f) * &p("x^3 - y*z");
        let v = &f * &p("z^4 + x*y + 1");
        assert_eq!(gcd(&u, &v), normalize(&f));
        assert_eq!(gcd_prs(&u, &v), normalize(&f));
    }
}
