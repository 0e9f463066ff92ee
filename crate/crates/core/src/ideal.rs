//! Ideals with cached Gröbner bases: quotients, saturation, intersection,
//! elimination, contraction from a localization, and Krull dimension.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{buchberger, normal_form, GroebnerBasis};
use crate::order::{Block, BlockKind, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

type CacheKey = (MonomialOrder, Option<Vec<usize>>);

/// An ideal given by generators. Clones share the basis cache.
#[derive(Clone)]
pub struct Ideal<C: Field> {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial<C>>,
    cache: Arc<RwLock<HashMap<CacheKey, Arc<GroebnerBasis<C>>>>>,
}

/// How `I : h^∞` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SaturationStrategy {
    /// Repeated quotients until the chain stabilizes.
    Iterate,
    /// Eliminate `t` from `I + <t*h - 1>`.
    ExtraVariable,
}

#[derive(Clone, Debug)]
pub struct SaturationResult<C: Field> {
    pub saturated: Ideal<C>,
    /// First `m` with `I : h^m = I : h^(m+1)`; absent for the
    /// extra-variable strategy.
    pub exponent: Option<u32>,
    pub stabilized: bool,
}

impl<C: Field> fmt::Debug for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.generators.iter().map(|g| g.to_string()))
            .finish()
    }
}

impl<C: Field> fmt::Display for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// `Block([t] lex, ord...)` on the ring extended by the trailing variable `t`.
fn t_elimination_order(ord: &MonomialOrder, nvars: usize, t: usize) -> MonomialOrder {
    let all: Vec<usize> = (0..nvars).collect();
    let mut blocks = vec![Block {
        vars: vec![t],
        kind: BlockKind::Lex,
    }];
    match ord {
        MonomialOrder::Lex => blocks.push(Block {
            vars: all,
            kind: BlockKind::Lex,
        }),
        MonomialOrder::DegRevLex => blocks.push(Block {
            vars: all,
            kind: BlockKind::DegRevLex,
        }),
        MonomialOrder::Block(bs) => blocks.extend(bs.iter().cloned()),
    }
    MonomialOrder::Block(blocks)
}

impl<C: Field> Ideal<C> {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial<C>>) -> Result<Self> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Self::from_parts(ring, generators))
    }

    fn from_parts(ring: &Arc<PolyRing>, generators: Vec<Polynomial<C>>) -> Self {
        let mut gens: Vec<Polynomial<C>> = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ideal {
            ring: ring.clone(),
            generators: gens,
            cache: Arc::default(),
        }
    }

    /// An ideal whose basis under `gb.order()` is already known.
    pub fn from_basis(gb: GroebnerBasis<C>) -> Self {
        let ideal = Self::from_parts(gb.ring(), gb.full_basis().to_vec());
        let key = (gb.order().clone(), gb.localized_vars().map(|u| u.to_vec()));
        ideal.cache.write().unwrap().insert(key, Arc::new(gb));
        ideal
    }

    pub fn principal(f: Polynomial<C>) -> Self {
        let ring = f.ring().clone();
        Self::from_parts(&ring, vec![f])
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::from_parts(ring, vec![Polynomial::one(ring)])
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::from_parts(ring, Vec::new())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<C>] {
        &self.generators
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    fn cached(&self, key: &CacheKey) -> Option<Arc<GroebnerBasis<C>>> {
        self.cache.read().unwrap().get(key).cloned()
    }

    /// Reduced Gröbner basis under `ord` (cached).
    pub fn groebner(&self, ord: &MonomialOrder) -> Result<Arc<GroebnerBasis<C>>> {
        let key = (ord.clone(), None);
        if let Some(gb) = self.cached(&key) {
            return Ok(gb);
        }
        let gb = Arc::new(buchberger(&self.ring, &self.generators, ord, None)?);
        self.cache.write().unwrap().insert(key, gb.clone());
        Ok(gb)
    }

    /// Basis of the extension to `K(u)[X \ u]` (cached).
    pub fn localized_groebner(
        &self,
        ord: &MonomialOrder,
        u: &[usize],
    ) -> Result<Arc<GroebnerBasis<C>>> {
        let mut u = u.to_vec();
        u.sort_unstable();
        u.dedup();
        let key = (ord.clone(), Some(u.clone()));
        if let Some(gb) = self.cached(&key) {
            return Ok(gb);
        }
        let gb = Arc::new(buchberger(&self.ring, &self.generators, ord, Some(&u))?);
        self.cache.write().unwrap().insert(key, gb.clone());
        Ok(gb)
    }

    /// Canonical basis used for equality tests (reduced, degrevlex).
    pub fn reduced_basis(&self) -> Result<Arc<GroebnerBasis<C>>> {
        self.groebner(&MonomialOrder::DegRevLex)
    }

    /// Any cached non-localized basis, else the degrevlex one.
    fn some_basis(&self) -> Result<Arc<GroebnerBasis<C>>> {
        let found = self
            .cache
            .read()
            .unwrap()
            .iter()
            .find(|(k, _)| k.1.is_none())
            .map(|(_, v)| v.clone());
        match found {
            Some(gb) => Ok(gb),
            None => self.reduced_basis(),
        }
    }

    pub fn contains(&self, f: &Polynomial<C>) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let gb = self.some_basis()?;
        Ok(normal_form(f, &gb)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        self.same_ring(other)?;
        let gb = self.some_basis()?;
        for g in &other.generators {
            if !normal_form(g, &gb)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.generators.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.some_basis()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Equality of ideals via reduced degrevlex bases.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.reduced_basis()?.elements() == other.reduced_basis()?.elements())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Self::from_parts(&self.ring, gens))
    }

    pub fn with_generators(&self, extra: &[Polynomial<C>]) -> Result<Self> {
        if extra.iter().any(|g| g.ring() != &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ok(Self::from_parts(&self.ring, gens))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        Ok(Self::from_parts(&self.ring, gens))
    }

    /// `I ∩ J` with `ord` as the working order on the original variables.
    pub fn intersect_with_order(&self, other: &Self, ord: &MonomialOrder) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let (ext, t) = self.ring.with_fresh_var("t");
        let tv = Polynomial::var(&ext, t);
        let one_minus_t = &Polynomial::one(&ext) - &tv;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&tv * &g.embed(&ext));
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.embed(&ext));
        }
        let eord = t_elimination_order(ord, n, t);
        let gb = buchberger(&ext, &gens, &eord, None)?;
        Ok(self.project_basis(&gb, ord))
    }

    /// Elements of an elimination basis free of the trailing variable,
    /// moved back to this ring; they form the reduced basis under `ord`.
    fn project_basis(&self, gb: &GroebnerBasis<C>, ord: &MonomialOrder) -> Self {
        let kept: Vec<Polynomial<C>> = gb
            .elements()
            .iter()
            .filter_map(|g| g.project(&self.ring))
            .collect();
        Self::from_basis(GroebnerBasis::from_reduced(&self.ring, ord, kept))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.intersect_with_order(other, &MonomialOrder::DegRevLex)
    }

    /// `I ∩ K[X \ vars]` (as an ideal of the same ring).
    pub fn eliminate(&self, vars: &[usize]) -> Result<Self> {
        let n = self.ring.nvars();
        if let Some(&v) = vars.iter().find(|&&v| v >= n) {
            return Err(AlgebraError::InvalidArgument(format!(
                "variable index {v} out of range"
            )));
        }
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let ord = MonomialOrder::elimination(n, vars, BlockKind::DegRevLex);
        let gb = self.groebner(&ord)?;
        let kept = gb
            .elements()
            .iter()
            .filter(|g| {
                g.terms()
                    .iter()
                    .all(|(_, m)| vars.iter().all(|&v| m.exp(v) == 0))
            })
            .cloned()
            .collect();
        Ok(Self::from_parts(&self.ring, kept))
    }

    /// `I : f` with `ord` as the working order.
    pub fn quotient_with_order(&self, f: &Polynomial<C>, ord: &MonomialOrder) -> Result<Self> {
        if f.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch);
        }
        if f.is_zero() {
            return Err(AlgebraError::ZeroInput("quotient by the zero polynomial"));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inter = self.intersect_with_order(&Self::principal(f.clone()), ord)?;
        let gens: Vec<Polynomial<C>> = inter
            .generators
            .iter()
            .map(|g| {
                g.div_exact(f)
                    .expect("elements of I ∩ <f> are multiples of f")
            })
            .collect();
        // quotients of a basis of I ∩ <f> by f form a basis of I : f
        let gb = buchberger(&self.ring, &gens, ord, None)?;
        Ok(Self::from_basis(gb))
    }

    pub fn quotient(&self, f: &Polynomial<C>) -> Result<Self> {
        self.quotient_with_order(f, &MonomialOrder::DegRevLex)
    }

    /// `I : h^∞`.
    pub fn saturate(
        &self,
        h: &Polynomial<C>,
        strategy: SaturationStrategy,
        ord: &MonomialOrder,
    ) -> Result<SaturationResult<C>> {
        if h.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch);
        }
        if h.is_zero() {
            return Err(AlgebraError::ZeroInput("saturation by the zero polynomial"));
        }
        match strategy {
            SaturationStrategy::Iterate => {
                if h.is_constant() {
                    return Ok(SaturationResult {
                        saturated: self.clone(),
                        exponent: Some(0),
                        stabilized: true,
                    });
                }
                let mut cur = self.clone();
                let mut m = 0u32;
                loop {
                    let next = cur.quotient_with_order(h, ord)?;
                    if cur.contains_ideal(&next)? {
                        return Ok(SaturationResult {
                            saturated: cur,
                            exponent: Some(m),
                            stabilized: true,
                        });
                    }
                    cur = next;
                    m += 1;
                }
            }
            SaturationStrategy::ExtraVariable => {
                let n = self.ring.nvars();
                let (ext, t) = self.ring.with_fresh_var("t");
                let mut gens: Vec<Polynomial<C>> =
                    self.generators.iter().map(|g| g.embed(&ext)).collect();
                gens.push(&(&Polynomial::var(&ext, t) * &h.embed(&ext)) - &Polynomial::one(&ext));
                let eord = t_elimination_order(ord, n, t);
                let gb = buchberger(&ext, &gens, &eord, None)?;
                Ok(SaturationResult {
                    saturated: self.project_basis(&gb, ord),
                    exponent: None,
                    stabilized: true,
                })
            }
        }
    }

    /// Leading coefficients in `K[u]` of the minimal localized basis at `u`,
    /// without constants, deduplicated up to scalars and sorted by (total
    /// degree, number of terms, position).
    pub fn localized_leading_coefficients(
        &self,
        u: &[usize],
        ord: &MonomialOrder,
    ) -> Result<Vec<Polynomial<C>>> {
        let gb = self.localized_groebner(ord, u)?;
        if gb
            .full_basis()
            .iter()
            .any(|g| gb.main_leading(g).0.is_one())
        {
            return Err(AlgebraError::NotIndependent(format!(
                "the ideal meets K[{}]",
                u.iter()
                    .map(|&v| self.ring.name(v))
                    .collect::<Vec<_>>()
                    .join(",")
            )));
        }
        let mut out: Vec<(usize, Polynomial<C>)> = Vec::new();
        for (i, c) in gb.leading_coefficients().into_iter().enumerate() {
            if c.is_constant() {
                continue;
            }
            let c = c.monic();
            if !out.iter().any(|(_, d)| *d == c) {
                out.push((i, c));
            }
        }
        out.sort_by_key(|(i, c)| (c.total_degree().unwrap_or(0), c.num_terms(), *i));
        Ok(out.into_iter().map(|(_, c)| c).collect())
    }

    /// `I K(u)[X \ u] ∩ K[X]` by chained saturation with the localized
    /// leading coefficients.
    pub fn contract(&self, u: &[usize], ord: &MonomialOrder) -> Result<Self> {
        Ok(self.contract_with_exponents(u, ord)?.0)
    }

    /// Like [`contract`](Self::contract), also returning each coefficient
    /// with its saturation exponent.
    pub fn contract_with_exponents(
        &self,
        u: &[usize],
        ord: &MonomialOrder,
    ) -> Result<(Self, Vec<(Polynomial<C>, u32)>)> {
        let coeffs = self.localized_leading_coefficients(u, ord)?;
        let sat_ord = crate::groebner::localized_order(ord, u, self.ring.nvars());
        let mut cur = self.clone();
        let mut used = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let r = cur.saturate(&c, SaturationStrategy::Iterate, &sat_ord)?;
            used.push((c, r.exponent.unwrap_or(0)));
            cur = r.saturated;
        }
        Ok((cur, used))
    }

    /// Krull dimension of the quotient ring; `-1` for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        let gb = self.reduced_basis()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        Ok(crate::indepset::krull_dimension(&gb) as i64)
    }

    /// Image under the variable permutation `perm` (`x_i ↦ x_perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self::from_parts(
            &self.ring,
            self.generators.iter().map(|g| g.permute(perm)).collect(),
        )
    }
}
