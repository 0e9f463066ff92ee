//! Monomial orders.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::ring::PolyRing;

/// Order used inside a block of a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Lex,
    DegRevLex,
}

/// One block: variable indices in decreasing precedence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub vars: Vec<usize>,
    pub kind: BlockKind,
}

/// A global monomial order. `Lex` and `DegRevLex` use the ring's declared
/// variable precedence; `Block` orders compare block by block, so any
/// monomial involving a variable of an earlier block beats every monomial
/// supported on later blocks only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    Block(Vec<Block>),
}

fn cmp_lex(a: &[u32], b: &[u32], vars: impl Iterator<Item = usize>) -> Ordering {
    for v in vars {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn cmp_degrevlex(a: &[u32], b: &[u32], vars: &[usize]) -> Ordering {
    let da: u64 = vars.iter().map(|&v| a[v] as u64).sum();
    let db: u64 = vars.iter().map(|&v| b[v] as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for &v in vars.iter().rev() {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn cmp_degrevlex_all(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Two-block elimination order: `first` variables dominate the rest.
    /// Both blocks keep the ring's relative variable precedence.
    pub fn elimination(nvars: usize, first: &[usize], kind: BlockKind) -> MonomialOrder {
        let mut mask = vec![false; nvars];
        for &v in first {
            mask[v] = true;
        }
        let a: Vec<usize> = (0..nvars).filter(|&v| mask[v]).collect();
        let b: Vec<usize> = (0..nvars).filter(|&v| !mask[v]).collect();
        let mut blocks = Vec::new();
        if !a.is_empty() {
            blocks.push(Block { vars: a, kind });
        }
        if !b.is_empty() {
            blocks.push(Block { vars: b, kind });
        }
        MonomialOrder::Block(blocks)
    }

    /// Lex with the given variables ranked above all others (both groups in
    /// ring order). This is the "X minus u above u" order used for
    /// localization and saturation.
    pub fn lex_above(nvars: usize, first: &[usize]) -> MonomialOrder {
        Self::elimination(nvars, first, BlockKind::Lex)
    }

    /// Kind used inside blocks when this order is refined into an
    /// elimination order.
    pub fn inner_kind(&self) -> BlockKind {
        match self {
            MonomialOrder::Lex => BlockKind::Lex,
            MonomialOrder::DegRevLex => BlockKind::DegRevLex,
            MonomialOrder::Block(bs) => bs.first().map(|b| b.kind).unwrap_or(BlockKind::Lex),
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Block(blocks) = self {
            let mut seen = vec![false; nvars];
            for b in blocks {
                if b.vars.is_empty() {
                    return Err(AlgebraError::InvalidOrder("empty block".into()));
                }
                for &v in &b.vars {
                    if v >= nvars {
                        return Err(AlgebraError::InvalidOrder(format!(
                            "variable index {v} out of range"
                        )));
                    }
                    if seen[v] {
                        return Err(AlgebraError::InvalidOrder(format!(
                            "variable index {v} appears twice"
                        )));
                    }
                    seen[v] = true;
                }
            }
            if let Some(v) = seen.iter().position(|s| !s) {
                return Err(AlgebraError::InvalidOrder(format!(
                    "variable index {v} not covered by any block"
                )));
            }
        }
        Ok(())
    }

    /// Compares two monomials; assumes matching lengths.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => cmp_degrevlex_all(a, b),
            MonomialOrder::Block(blocks) => {
                for blk in blocks {
                    let o = match blk.kind {
                        BlockKind::Lex => cmp_lex(a, b, blk.vars.iter().copied()),
                        BlockKind::DegRevLex => cmp_degrevlex(a, b, &blk.vars),
                    };
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Parses `lex`, `degrevlex`, or `block:<b1>|<b2>|...` where each block
    /// is a comma-separated variable list (or a run of single-letter names
    /// such as `xy`), optionally prefixed by `lex:` / `degrevlex:`.
    /// Variables not mentioned form a trailing block of the default kind.
    pub fn parse(spec: &str, ring: &PolyRing) -> Result<MonomialOrder> {
        let spec = spec.trim();
        match spec {
            "lex" => return Ok(MonomialOrder::Lex),
            "degrevlex" | "dp" => return Ok(MonomialOrder::DegRevLex),
            _ => {}
        }
        let body = spec
            .strip_prefix("block:")
            .ok_or_else(|| AlgebraError::InvalidOrder(format!("unknown order `{spec}`")))?;
        let mut blocks = Vec::new();
        let mut used = vec![false; ring.nvars()];
        for part in body.split('|') {
            let (kind, list) = if let Some(r) = part.strip_prefix("degrevlex:") {
                (BlockKind::DegRevLex, r)
            } else if let Some(r) = part.strip_prefix("lex:") {
                (BlockKind::Lex, r)
            } else {
                (BlockKind::Lex, part)
            };
            let names: Vec<String> = if list.contains(',') {
                list.split(',').map(|s| s.trim().to_string()).collect()
            } else if let Some(i) = ring.index_of(list.trim()) {
                vec![ring.name(i).to_string()]
            } else {
                list.trim().chars().map(|c| c.to_string()).collect()
            };
            let mut vars = Vec::new();
            for n in names.iter().filter(|n| !n.is_empty()) {
                let i = ring
                    .index_of(n)
                    .ok_or_else(|| AlgebraError::UnknownVariable(n.clone()))?;
                if used[i] {
                    return Err(AlgebraError::InvalidOrder(format!("`{n}` appears twice")));
                }
                used[i] = true;
                vars.push(i);
            }
            if vars.is_empty() {
                return Err(AlgebraError::InvalidOrder("empty block".into()));
            }
            blocks.push(Block { vars, kind });
        }
        let rest: Vec<usize> = (0..ring.nvars()).filter(|&i| !used[i]).collect();
        if !rest.is_empty() {
            let kind = blocks
                .last()
                .map(|b: &Block| b.kind)
                .unwrap_or(BlockKind::Lex);
            blocks.push(Block { vars: rest, kind });
        }
        Ok(MonomialOrder::Block(blocks))
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Block(bs) => {
                write!(f, "block:")?;
                for (i, b) in bs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    let k = match b.kind {
                        BlockKind::Lex => "lex",
                        BlockKind::DegRevLex => "degrevlex",
                    };
                    let vs: Vec<String> = b.vars.iter().map(|v| v.to_string()).collect();
                    write!(f, "{k}:{}", vs.join(","))?;
                }
                Ok(())
            }
        }
    }
}

/// Order relation between monomials, checking lengths against the ring.
pub fn monomial_compare(
    ring: &PolyRing,
    a: &Monomial,
    b: &Monomial,
    ord: &MonomialOrder,
) -> Result<Ordering> {
    for m in [a, b] {
        if m.nvars() != ring.nvars() {
            return Err(AlgebraError::DimensionMismatch {
                expected: ring.nvars(),
                found: m.nvars(),
            });
        }
    }
    ord.validate(ring.nvars())?;
    Ok(ord.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn documented_comparisons() {
        let r2 = PolyRing::new(["x", "y"]).unwrap();
        let r3 = PolyRing::new(["x", "y", "z"]).unwrap();
        // x^2 vs xy under lex
        assert_eq!(
            monomial_compare(&r2, &m(&[2, 0]), &m(&[1, 1]), &MonomialOrder::Lex).unwrap(),
            Ordering::Greater
        );
        // xy vs z^2 under degrevlex
        assert_eq!(
            monomial_compare(
                &r3,
                &m(&[1, 1, 0]),
                &m(&[0, 0, 2]),
                &MonomialOrder::DegRevLex
            )
            .unwrap(),
            Ordering::Greater
        );
        // y^5 vs x under block ([x],[y])
        let blk = MonomialOrder::parse("block:x|y", &r2).unwrap();
        assert_eq!(
            monomial_compare(&r2, &m(&[0, 5]), &m(&[1, 0]), &blk).unwrap(),
            Ordering::Less
        );
        assert!(matches!(
            monomial_compare(&r3, &m(&[1, 0]), &m(&[1, 0, 0]), &MonomialOrder::Lex),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn block_order_parsing() {
        let r = PolyRing::new(["x", "y", "z"]).unwrap();
        let o = MonomialOrder::parse("block:xy|z", &r).unwrap();
        assert_eq!(
            o,
            MonomialOrder::Block(vec![
                Block {
                    vars: vec![0, 1],
                    kind: BlockKind::Lex
                },
                Block {
                    vars: vec![2],
                    kind: BlockKind::Lex
                },
            ])
        );
        let o = MonomialOrder::parse("block:degrevlex:z", &r).unwrap();
        o.validate(3).unwrap();
        assert!(MonomialOrder::parse("block:xq", &r).is_err());
        assert!(MonomialOrder::parse("revlex", &r).is_err());
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::DegRevLex,
            MonomialOrder::Block(vec![
                Block {
                    vars: vec![2, 0],
                    kind: BlockKind::DegRevLex,
                },
                Block {
                    vars: vec![1, 3],
                    kind: BlockKind::Lex,
                },
            ]),
            MonomialOrder::elimination(4, &[1], BlockKind::DegRevLex),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 4).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn total_multiplicative_well_order(a in mono(), b in mono(), c in mono()) {
            for o in orders() {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                if ab == Ordering::Greater && o.cmp(&b, &c) == Ordering::Greater {
                    prop_assert_eq!(o.cmp(&a, &c), Ordering::Greater);
                }
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
            }
        }
    }

    #[test]
    fn block_order_eliminates_first_block() {
        // exhaustive over exponents < 3 in 3 variables, first block {z}
        let o = MonomialOrder::elimination(3, &[2], BlockKind::DegRevLex);
        let all: Vec<Monomial> = (0..27).map(|k| m(&[k % 3, (k / 3) % 3, k / 9])).collect();
        for a in &all {
            for b in &all {
                if a.exp(2) > 0 && b.exp(2) == 0 {
                    assert_eq!(o.cmp(a, b), Ordering::Greater);
                }
            }
        }
    }
}
