//! Determinantal hyperedge ideals of a symbolic `r × n` matrix, the ideal of
//! all maximal minors, the row/block symmetries of the 3×12 instance, and
//! structural checks for degree-12 generator sets of its second component.
//!
//! Column and row indices are 1-based throughout, as in the usual notation
//! `[A|B]` for the minor with rows `A` and columns `B`. The variable for row
//! letter `l` and column `j` is named `l{j}`, letters major: `x1..x12,
//! y1..y12, z1..z12`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use crate::decompose::{generate_group, SymmetryAction};
use crate::error::{AlgebraError, Result};
use crate::factor::integer::combinations;
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperedge {
    pub label: String,
    /// Column indices; with more than `|row_set|` entries every subset of
    /// that size contributes a minor.
    pub columns: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperedgeSpec {
    pub rows: usize,
    pub cols: usize,
    /// One variable-name stem per row.
    pub letters: Vec<String>,
    pub row_set: Vec<usize>,
    pub hyperedges: Vec<Hyperedge>,
}

fn edge(label: &str, columns: &[usize]) -> Hyperedge {
    Hyperedge {
        label: label.to_string(),
        columns: columns.to_vec(),
    }
}

impl HyperedgeSpec {
    /// The 3×12 instance: rows `N = {1,2,3}`, row blocks `R1..R4` of three
    /// consecutive columns and column classes `C1..C3` of columns congruent
    /// mod 3. Hyperedges are listed `C1, C2, C3, R1, .., R4`, which is the
    /// order of the published generator list.
    pub fn paper_3x12() -> Self {
        HyperedgeSpec {
            rows: 3,
            cols: 12,
            letters: vec!["x".into(), "y".into(), "z".into()],
            row_set: vec![1, 2, 3],
            hyperedges: vec![
                edge("C1", &[1, 4, 7, 10]),
                edge("C2", &[2, 5, 8, 11]),
                edge("C3", &[3, 6, 9, 12]),
                edge("R1", &[1, 2, 3]),
                edge("R2", &[4, 5, 6]),
                edge("R3", &[7, 8, 9]),
                edge("R4", &[10, 11, 12]),
            ],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(AlgebraError::InvalidSpec(m));
        if self.rows == 0 || self.cols == 0 {
            return bad("matrix must have at least one row and one column".into());
        }
        if self.letters.len() != self.rows {
            return bad(format!(
                "{} row letters for {} rows",
                self.letters.len(),
                self.rows
            ));
        }
        if self.row_set.is_empty() {
            return bad("empty row set".into());
        }
        check_indices("row set", &self.row_set, self.rows)?;
        for e in &self.hyperedges {
            check_indices(&format!("hyperedge {}", e.label), &e.columns, self.cols)?;
            if e.columns.len() < self.row_set.len() {
                return bad(format!(
                    "hyperedge {} has {} columns, fewer than the {} rows",
                    e.label,
                    e.columns.len(),
                    self.row_set.len()
                ));
            }
        }
        Ok(())
    }
}

fn check_indices(what: &str, idx: &[usize], max: usize) -> Result<()> {
    let mut seen = HashSet::new();
    for &i in idx {
        if i == 0 || i > max {
            return Err(AlgebraError::InvalidSpec(format!(
                "{what}: index {i} outside 1..{max}"
            )));
        }
        if !seen.insert(i) {
            return Err(AlgebraError::InvalidSpec(format!(
                "{what}: index {i} repeated"
            )));
        }
    }
    Ok(())
}

/// Ring with one variable per matrix entry, letters major.
pub fn matrix_ring<S: AsRef<str>>(letters: &[S], cols: usize) -> Result<Arc<PolyRing>> {
    PolyRing::new(
        letters
            .iter()
            .flat_map(|l| (1..=cols).map(move |j| format!("{}{j}", l.as_ref()))),
    )
}

/// A matrix whose entries are distinct ring variables.
#[derive(Clone, Debug)]
pub struct SymbolicMatrix<C: Field> {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<C>>,
}

impl<C: Field> SymbolicMatrix<C> {
    /// Entry `(i, j)` is the variable `letters[i]{j}` of [`matrix_ring`].
    pub fn generic<S: AsRef<str>>(letters: &[S], cols: usize) -> Result<Self> {
        let ring = matrix_ring(letters, cols)?;
        let entries = (0..letters.len() * cols)
            .map(|v| Polynomial::var(&ring, v))
            .collect();
        Ok(SymbolicMatrix {
            ring,
            rows: letters.len(),
            cols,
            entries,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry in row `i`, column `j` (1-based).
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }
}

/// `[A|B]`: determinant of the submatrix with rows `a` and columns `b`
/// (1-based, in the given order), by cofactor expansion.
pub fn minor<C: Field>(m: &SymbolicMatrix<C>, a: &[usize], b: &[usize]) -> Result<Polynomial<C>> {
    if a.len() != b.len() {
        return Err(AlgebraError::InvalidArgument(format!(
            "{} rows but {} columns",
            a.len(),
            b.len()
        )));
    }
    if a.len() > m.rows.min(m.cols) {
        return Err(AlgebraError::InvalidArgument(format!(
            "{}×{} minor of a {}×{} matrix",
            a.len(),
            a.len(),
            m.rows,
            m.cols
        )));
    }
    if let Some(&i) = a.iter().find(|&&i| i == 0 || i > m.rows) {
        return Err(AlgebraError::InvalidArgument(format!(
            "row index {i} out of range"
        )));
    }
    if let Some(&j) = b.iter().find(|&&j| j == 0 || j > m.cols) {
        return Err(AlgebraError::InvalidArgument(format!(
            "column index {j} out of range"
        )));
    }
    Ok(laplace(m, a, b))
}

fn laplace<C: Field>(m: &SymbolicMatrix<C>, a: &[usize], b: &[usize]) -> Polynomial<C> {
    match a.len() {
        0 => Polynomial::one(&m.ring),
        1 => m.entry(a[0], b[0]).clone(),
        _ => {
            let mut acc = Polynomial::zero(&m.ring);
            for k in 0..b.len() {
                let rest: Vec<usize> = b
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != k)
                    .map(|(_, &j)| j)
                    .collect();
                let term = m.entry(a[0], b[k]) * &laplace(m, &a[1..], &rest);
                acc = if k % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// The ideal generated by `[N|B]` for the hyperedges of `spec`, in listed
/// order (subsets of a hyperedge in lexicographic order). Duplicates up to
/// sign and zero minors are dropped.
pub fn build_hyperedge_ideal<C: Field>(spec: &HyperedgeSpec) -> Result<Ideal<C>> {
    spec.validate()?;
    let m = SymbolicMatrix::<C>::generic(&spec.letters, spec.cols)?;
    let r = spec.row_set.len();
    let mut gens = Vec::new();
    let mut seen = HashSet::new();
    for e in &spec.hyperedges {
        let mut cols = e.columns.clone();
        cols.sort_unstable();
        for pick in combinations(cols.len(), r) {
            let b: Vec<usize> = pick.iter().map(|&k| cols[k]).collect();
            let g = minor(&m, &spec.row_set, &b)?;
            if !g.is_zero() && seen.insert(g.monic()) {
                gens.push(g);
            }
        }
    }
    Ideal::new(m.ring(), gens)
}

fn default_letters(rows: usize) -> Result<Vec<String>> {
    const LETTERS: &str = "xyzwvutsrqpo";
    if rows > LETTERS.len() {
        return Err(AlgebraError::InvalidArgument(format!(
            "at most {} rows supported",
            LETTERS.len()
        )));
    }
    Ok(LETTERS.chars().take(rows).map(String::from).collect())
}

/// All maximal minors of the generic `rows × cols` matrix (letters `x, y,
/// z, w, ..`), columns in lexicographic order. Empty when `cols < rows`.
pub fn all_maximal_minors_ideal<C: Field>(rows: usize, cols: usize) -> Result<Ideal<C>> {
    let letters = default_letters(rows)?;
    let m = SymbolicMatrix::<C>::generic(&letters, cols)?;
    let all_rows: Vec<usize> = (1..=rows).collect();
    let mut gens = Vec::new();
    if cols >= rows {
        for pick in combinations(cols, rows) {
            let b: Vec<usize> = pick.iter().map(|&k| k + 1).collect();
            gens.push(minor(&m, &all_rows, &b)?);
        }
    }
    Ideal::new(m.ring(), gens)
}

/// Row blocks (hyperedges of exactly `|N|` columns) and column classes
/// (larger hyperedges) of a spec whose blocks partition the columns and
/// meet every class in exactly one column.
fn block_structure(spec: &HyperedgeSpec) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    spec.validate()?;
    let r = spec.row_set.len();
    let bad = |m: &str| {
        AlgebraError::InvalidSpec(format!("symmetry generators need a block/class grid: {m}"))
    };
    if r != spec.rows {
        return Err(bad("the row set must contain every row"));
    }
    let blocks: Vec<Vec<usize>> = spec
        .hyperedges
        .iter()
        .filter(|e| e.columns.len() == r)
        .map(|e| e.columns.clone())
        .collect();
    let classes: Vec<Vec<usize>> = spec
        .hyperedges
        .iter()
        .filter(|e| e.columns.len() > r)
        .map(|e| e.columns.clone())
        .collect();
    let partitions = |sets: &[Vec<usize>]| {
        let mut all: Vec<usize> = sets.iter().flatten().copied().collect();
        all.sort_unstable();
        all == (1..=spec.cols).collect::<Vec<_>>()
    };
    if blocks.is_empty() || classes.is_empty() {
        return Err(bad("both row blocks and column classes are required"));
    }
    if !partitions(&blocks) || !partitions(&classes) {
        return Err(bad("blocks and classes must each partition the columns"));
    }
    for b in &blocks {
        for c in &classes {
            if b.iter().filter(|j| c.contains(j)).count() != 1 {
                return Err(bad("every block must meet every class in one column"));
            }
        }
    }
    Ok((blocks, classes))
}

/// Variable permutation induced by a column permutation (`col[j-1]` is the
/// image of column `j`) and a row permutation.
fn matrix_action(
    rows: usize,
    cols: usize,
    row_perm: &[usize],
    col_perm: &[usize],
) -> SymmetryAction {
    let mut perm = vec![0; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            perm[i * cols + j] = row_perm[i] * cols + (col_perm[j] - 1);
        }
    }
    SymmetryAction::new(perm).expect("product of permutations")
}

fn column_swap(
    cols: usize,
    from: &[usize],
    to: &[usize],
    partner: impl Fn(usize, &[usize]) -> usize,
) -> Vec<usize> {
    let mut col: Vec<usize> = (1..=cols).collect();
    for &j in from {
        let k = partner(j, to);
        col[j - 1] = k;
        col[k - 1] = j;
    }
    col
}

/// Generators of the row/block/class symmetry group: adjacent row swaps,
/// adjacent row-block transpositions and adjacent column-class
/// transpositions, each checked to map every generator of the ideal to
/// plus or minus a generator.
pub fn symmetry_generators(spec: &HyperedgeSpec) -> Result<Vec<SymmetryAction>> {
    let (blocks, classes) = block_structure(spec)?;
    let (rows, cols) = (spec.rows, spec.cols);
    let id_rows: Vec<usize> = (0..rows).collect();
    let id_cols: Vec<usize> = (1..=cols).collect();
    let class_of = |j: usize| classes.iter().position(|c| c.contains(&j)).unwrap();
    let block_of = |j: usize| blocks.iter().position(|b| b.contains(&j)).unwrap();
    let mut out = Vec::new();
    for i in 0..rows.saturating_sub(1) {
        let mut rp = id_rows.clone();
        rp.swap(i, i + 1);
        let word = format!("rows {}<->{}", spec.letters[i], spec.letters[i + 1]);
        out.push(matrix_action(rows, cols, &rp, &id_cols).with_word(word));
    }
    let labels = |pred: fn(usize, usize) -> bool| -> Vec<String> {
        spec.hyperedges
            .iter()
            .filter(|e| pred(e.columns.len(), rows))
            .map(|e| e.label.clone())
            .collect()
    };
    let block_labels = labels(|n, r| n == r);
    let class_labels = labels(|n, r| n > r);
    for k in 0..blocks.len() - 1 {
        // same class, neighbouring block
        let col = column_swap(cols, &blocks[k], &blocks[k + 1], |j, to| {
            *to.iter().find(|&&t| class_of(t) == class_of(j)).unwrap()
        });
        let word = format!("{}<->{}", block_labels[k], block_labels[k + 1]);
        out.push(matrix_action(rows, cols, &id_rows, &col).with_word(word));
    }
    for k in 0..classes.len() - 1 {
        let col = column_swap(cols, &classes[k], &classes[k + 1], |j, to| {
            *to.iter().find(|&&t| block_of(t) == block_of(j)).unwrap()
        });
        let word = format!("{}<->{}", class_labels[k], class_labels[k + 1]);
        out.push(matrix_action(rows, cols, &id_rows, &col).with_word(word));
    }
    let ideal = build_hyperedge_ideal::<crate::field::Q>(spec)?;
    for g in &out {
        if !permutes_generators(g, &ideal) {
            return Err(AlgebraError::InvalidSpec(format!(
                "{} does not permute the generators up to sign",
                g.word().unwrap_or("permutation")
            )));
        }
    }
    Ok(out)
}

/// Each generator maps to plus or minus a generator.
pub fn permutes_generators<C: Field>(sigma: &SymmetryAction, ideal: &Ideal<C>) -> bool {
    let gens: HashSet<&Polynomial<C>> = ideal.generators().iter().collect();
    ideal.generators().iter().all(|g| {
        let img = sigma.apply(g);
        gens.contains(&img) || gens.contains(&-&img)
    })
}

/// Order of the group generated by `gens` (enumerated up to `limit`).
pub fn group_order(gens: &[SymmetryAction], nvars: usize, limit: usize) -> Option<usize> {
    generate_group(gens, nvars, limit).map(|g| g.len())
}

/// Letters and column count of a ring laid out by [`matrix_ring`].
struct Layout {
    letters: Vec<String>,
    cols: usize,
}

impl Layout {
    fn of(ring: &PolyRing) -> Result<Self> {
        let mut letters: Vec<String> = Vec::new();
        for name in ring.names() {
            let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
            if letters.last().map(String::as_str) != Some(stem) {
                letters.push(stem.to_string());
            }
        }
        let n = ring.nvars();
        if letters.is_empty() || n % letters.len() != 0 {
            return Err(AlgebraError::InvalidSpec(
                "ring is not a letters × columns layout".into(),
            ));
        }
        let cols = n / letters.len();
        let expected = matrix_ring(&letters, cols)?;
        if expected.names() != ring.names() {
            return Err(AlgebraError::InvalidSpec(
                "ring is not a letters × columns layout".into(),
            ));
        }
        Ok(Layout { letters, cols })
    }

    /// Letter counts of a monomial and whether every column occurs exactly
    /// once.
    fn letter_counts(&self, m: &Monomial) -> (Vec<u32>, bool) {
        let mut counts = vec![0u32; self.letters.len()];
        let mut per_col = vec![0u32; self.cols];
        for v in m.support() {
            let e = m.exp(v);
            counts[v / self.cols] += e;
            per_col[v % self.cols] += e;
        }
        (counts, per_col.iter().all(|&c| c == 1))
    }
}

/// Selection data for the monomials of the (0,6,6) generator: a 3×4 grid
/// of column indices whose grid columns are the column classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRule {
    pub grid: [[usize; 4]; 3],
}

impl Default for PartitionRule {
    fn default() -> Self {
        PartitionRule {
            grid: [[1, 4, 7, 10], [2, 5, 8, 11], [3, 6, 9, 12]],
        }
    }
}

/// Row pairs of a grid column, as index pairs.
const ROW_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl PartitionRule {
    /// The chosen index sets: two grid columns A, B with two indices each
    /// (B's row pair differing from A's), one index from each remaining
    /// column C, D in different rows.
    pub fn selections(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let rest: Vec<usize> = (0..4).filter(|&k| k != a && k != b).collect();
                let (c, d) = (rest[0], rest[1]);
                for pa in ROW_PAIRS {
                    for pb in ROW_PAIRS {
                        if pa == pb {
                            continue;
                        }
                        for rc in 0..3 {
                            for rd in 0..3 {
                                if rc == rd {
                                    continue;
                                }
                                let mut sel = vec![
                                    self.grid[pa.0][a],
                                    self.grid[pa.1][a],
                                    self.grid[pb.0][b],
                                    self.grid[pb.1][b],
                                    self.grid[rc][c],
                                    self.grid[rd][d],
                                ];
                                sel.sort_unstable();
                                out.insert(sel);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// All triples `(a, b, c)` with `a + b + c = 12` and entries at most 6.
pub fn admissible_partitions() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            if a + b >= 6 && a + b <= 12 {
                out.push((a, b, 12 - a - b));
            }
        }
    }
    out
}

/// Monomials produced by the selection rule for a partition with two
/// entries 6 and one entry 0: chosen indices get the first of the two
/// letters, the others the second. Other partitions have no known rule.
pub fn partition_rule_monomials(
    ring: &PolyRing,
    rule: &PartitionRule,
    partition: (u32, u32, u32),
) -> Result<BTreeSet<Monomial>> {
    let counts = [partition.0, partition.1, partition.2];
    let used: Vec<usize> = (0..3).filter(|&k| counts[k] == 6).collect();
    if used.len() != 2 || counts.iter().sum::<u32>() != 12 {
        return Err(AlgebraError::RuleUnspecified(partition));
    }
    let layout = Layout::of(ring)?;
    if layout.letters.len() != 3 || layout.cols != 12 {
        return Err(AlgebraError::InvalidSpec(
            "the selection rule needs the 3×12 ring".into(),
        ));
    }
    let mut out = BTreeSet::new();
    for sel in rule.selections() {
        let mut e = vec![0u32; ring.nvars()];
        for j in 1..=12 {
            let letter = if sel.contains(&j) { used[0] } else { used[1] };
            e[letter * 12 + j - 1] = 1;
        }
        out.insert(Monomial::new(e));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInfo {
    /// 1-based position in the data.
    pub index: usize,
    /// Common letter counts of all monomials, when they agree and sum to 12.
    pub partition: Option<(u32, u32, u32)>,
    pub terms: usize,
    /// Coefficient (as printed) to number of occurrences.
    pub coefficients: BTreeMap<String, usize>,
    /// Every monomial uses each column index exactly once.
    pub covers_indices: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct GeneratorStructureReport {
    pub generators: Vec<GeneratorInfo>,
    pub partition_map: BTreeMap<(u32, u32, u32), Vec<usize>>,
    /// The map is a bijection onto the 28 admissible triples.
    pub complete: bool,
    pub checks: Vec<CheckResult>,
}

impl GeneratorStructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn support<C: Field>(p: &Polynomial<C>) -> BTreeSet<Monomial> {
    p.terms().iter().map(|(_, m)| m.clone()).collect()
}

fn joined<T: std::fmt::Debug>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|t| format!("{t:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Checks the structural claims about a 44-element generating set of the
/// second component: the first 16 elements generate `ideal`, the other 28
/// are degree-12 multilinear forms in one-to-one correspondence with the
/// admissible letter partitions, coefficients lie in `{±1, ±2}`, and the
/// (0,6,6), (6,6,0), (6,0,6) and (1,5,6) elements have the documented
/// supports. Every check is reported; none aborts the others.
pub fn verify_structure<C: Field>(
    data: &[Polynomial<C>],
    ideal: &Ideal<C>,
) -> Result<GeneratorStructureReport> {
    let ring = ideal.ring().clone();
    if data.iter().any(|p| p.ring() != &ring) {
        return Err(AlgebraError::RingMismatch);
    }
    let layout = Layout::of(&ring)?;
    if layout.letters.len() != 3 || layout.cols != 12 {
        return Err(AlgebraError::InvalidSpec(
            "structure checks need the 3×12 ring".into(),
        ));
    }
    let n_head = ideal.generators().len();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(CheckResult {
            name,
            passed,
            detail,
        })
    };

    // generator table
    let allowed: Vec<C> = [1i64, -1, 2, -2].iter().map(|&k| C::from_i64(k)).collect();
    let infos: Vec<GeneratorInfo> = data
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut coefficients = BTreeMap::new();
            for (c, _) in p.terms() {
                *coefficients.entry(c.to_string()).or_insert(0) += 1;
            }
            let mut partition = None;
            let mut consistent = true;
            let mut covers = !p.is_zero();
            for (_, m) in p.terms() {
                let (counts, once) = layout.letter_counts(m);
                covers &= once;
                let t = (counts[0], counts[1], counts[2]);
                match partition {
                    None => partition = Some(t),
                    Some(q) if q != t => consistent = false,
                    _ => {}
                }
            }
            let partition = partition
                .filter(|t| consistent && t.0 + t.1 + t.2 == 12 && t.0.max(t.1).max(t.2) <= 6);
            GeneratorInfo {
                index: i + 1,
                partition,
                terms: p.num_terms(),
                coefficients,
                covers_indices: covers,
            }
        })
        .collect();

    let expected_total = n_head + 28;
    push(
        "count",
        data.len() == expected_total,
        format!("{} generators, expected {expected_total}", data.len()),
    );

    let head: Vec<Polynomial<C>> = data.iter().take(n_head).map(|p| p.monic()).collect();
    let want: HashSet<Polynomial<C>> = ideal.generators().iter().map(|p| p.monic()).collect();
    let got: HashSet<Polynomial<C>> = head.iter().cloned().collect();
    push(
        "head-equals-ideal",
        head.len() == n_head && got == want,
        format!(
            "first {n_head} elements {} the ideal's generators",
            if got == want { "match" } else { "differ from" }
        ),
    );

    let tail: Vec<(usize, &Polynomial<C>)> = data.iter().enumerate().skip(n_head).collect();
    let not_homog: Vec<usize> = tail
        .iter()
        .filter(|(_, p)| !(p.is_homogeneous() && p.total_degree() == Some(12)))
        .map(|(i, _)| i + 1)
        .collect();
    push(
        "homogeneous-degree-12",
        not_homog.is_empty() && !tail.is_empty(),
        if not_homog.is_empty() {
            "all".into()
        } else {
            format!("failing: {}", joined(&not_homog))
        },
    );

    let bad_coeff: Vec<usize> = data
        .iter()
        .enumerate()
        .filter(|(_, p)| p.terms().iter().any(|(c, _)| !allowed.contains(c)))
        .map(|(i, _)| i + 1)
        .collect();
    push(
        "coefficients",
        bad_coeff.is_empty(),
        if bad_coeff.is_empty() {
            "all in {1,-1,2,-2}".into()
        } else {
            format!("failing: {}", joined(&bad_coeff))
        },
    );

    let not_covering: Vec<usize> = tail
        .iter()
        .filter(|(i, _)| !infos[*i].covers_indices)
        .map(|(i, _)| i + 1)
        .collect();
    push(
        "index-coverage",
        not_covering.is_empty() && !tail.is_empty(),
        if not_covering.is_empty() {
            "each index once per monomial".into()
        } else {
            format!("failing: {}", joined(&not_covering))
        },
    );

    let unclassified: Vec<usize> = tail
        .iter()
        .filter(|(i, _)| infos[*i].partition.is_none())
        .map(|(i, _)| i + 1)
        .collect();
    push(
        "constant-partition",
        unclassified.is_empty() && !tail.is_empty(),
        if unclassified.is_empty() {
            "every element has one letter partition".into()
        } else {
            format!("failing: {}", joined(&unclassified))
        },
    );

    let mut partition_map: BTreeMap<(u32, u32, u32), Vec<usize>> = BTreeMap::new();
    for (i, _) in &tail {
        if let Some(t) = infos[*i].partition {
            partition_map.entry(t).or_default().push(i + 1);
        }
    }
    let admissible = admissible_partitions();
    let missing: Vec<(u32, u32, u32)> = admissible
        .iter()
        .copied()
        .filter(|t| !partition_map.contains_key(t))
        .collect();
    let repeated: Vec<(u32, u32, u32)> = partition_map
        .iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|(t, _)| *t)
        .collect();
    let complete = missing.is_empty()
        && repeated.is_empty()
        && unclassified.is_empty()
        && tail.len() == admissible.len();
    let mut detail = Vec::new();
    if !missing.is_empty() {
        detail.push(format!("missing {}", joined(&missing)));
    }
    if !repeated.is_empty() {
        detail.push(format!("repeated {}", joined(&repeated)));
    }
    push(
        "partition-bijection",
        complete,
        if detail.is_empty() {
            format!("{} partitions, one element each", admissible.len())
        } else {
            detail.join("; ")
        },
    );

    let rule = PartitionRule::default();
    let by_partition = |t: (u32, u32, u32)| {
        partition_map
            .get(&t)
            .and_then(|v| v.first())
            .map(|&k| &data[k - 1])
    };
    let g17 = by_partition((0, 6, 6));
    let rule_066 = partition_rule_monomials(&ring, &rule, (0, 6, 6))?;
    match g17 {
        Some(g) => {
            let s = support(g);
            push(
                "rule-066",
                s == rule_066 && s.len() == 216,
                format!(
                    "support {} monomials, rule {}, equal: {}",
                    s.len(),
                    rule_066.len(),
                    s == rule_066
                ),
            );
        }
        None => push(
            "rule-066",
            false,
            "no element with partition (0, 6, 6)".into(),
        ),
    }
    for t in [(6, 6, 0), (6, 0, 6)] {
        let name = if t == (6, 6, 0) {
            "rule-660"
        } else {
            "rule-606"
        };
        let expected = partition_rule_monomials(&ring, &rule, t)?;
        match by_partition(t) {
            Some(g) => {
                let s = support(g);
                push(
                    name,
                    s == expected,
                    format!(
                        "support {} monomials, equal to permuted rule: {}",
                        s.len(),
                        s == expected
                    ),
                );
            }
            None => push(name, false, format!("no element with partition {t:?}")),
        }
    }

    match (by_partition((1, 5, 6)), g17) {
        (Some(g19), Some(g17)) => {
            let x_to_y: Vec<(usize, Polynomial<C>)> = (0..12)
                .map(|j| (j, Polynomial::var(&ring, 12 + j)))
                .collect();
            let mut image = g19.clone();
            for (v, val) in &x_to_y {
                image = image.substitute(*v, val);
            }
            let inside = support(&image).is_subset(&support(g17));
            push(
                "g19-terms",
                g19.num_terms() == 252,
                format!("{} terms", g19.num_terms()),
            );
            push(
                "g19-maps-into-g17",
                inside && !image.is_zero() && image.num_terms() < g19.num_terms(),
                format!(
                    "image has {} terms, inside the (0,6,6) support: {inside}",
                    image.num_terms()
                ),
            );
        }
        _ => {
            push(
                "g19-terms",
                false,
                "no element with partition (1, 5, 6)".into(),
            );
            push(
                "g19-maps-into-g17",
                false,
                "missing (1, 5, 6) or (0, 6, 6) element".into(),
            );
        }
    }

    Ok(GeneratorStructureReport {
        generators: infos,
        partition_map,
        complete,
        checks,
    })
}

/// Turns a Singular `ideal NAME = p1, p2, ...;` block (or bare
/// comma-separated polynomials) into one polynomial per line: `//`
/// comments and whitespace are dropped and `x(12)` / `x_12` become `x12`.
pub fn singular_to_lines(text: &str) -> Vec<String> {
    let mut body = String::new();
    for line in text.lines() {
        let line = line.split("//").next().unwrap_or("");
        body.push_str(line);
        body.push(' ');
    }
    let mut body = body.trim();
    if let Some(rest) = body.strip_prefix("ideal") {
        if let Some(k) = rest.find('=') {
            body = &rest[k + 1..];
        }
    }
    let mut out = Vec::new();
    for chunk in body.split([',', ';']) {
        let mut s = String::new();
        let mut chars = chunk.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            match c {
                '(' if s.ends_with(|p: char| p.is_ascii_alphabetic())
                    && chars.peek().is_some_and(|d| d.is_ascii_digit()) =>
                {
                    while let Some(&d) = chars.peek() {
                        chars.next();
                        if d == ')' {
                            break;
                        }
                        s.push(d);
                    }
                }
                '_' if s.ends_with(|p: char| p.is_ascii_alphabetic()) => {}
                _ => s.push(c),
            }
        }
        if !s.is_empty() {
            out.push(s);
        }
    }
    out
}
