//! Rank minimization over Hadamard square roots of a nonnegative matrix.
//!
//! Every square root of M has entries ±sqrt(M_ij), so the search space is the
//! set of sign patterns on the support of M. Rank is invariant under row and
//! column negations; fixing the signs on a spanning forest of the bipartite
//! support graph to + picks one representative per orbit, shrinking 2^N sign
//! patterns to 2^(N - (rows + cols - components)) classes.
//!
//! Classes are scanned in lexicographic order of their free-sign bits, a
//! fixed number of leading bits splitting the space into blocks that may be
//! searched in parallel. Each class is ranked first in double precision by
//! column-pivoted QR; only candidate improvements are re-ranked exactly over
//! the multiquadratic field, so the reported minimum is always exactly
//! certified. Pruning, block boundaries, and the reduction are all
//! deterministic, independent of how many worker threads run.

use crate::matrix::{field_rank, float_rank, FieldMatrix, FloatMatrix, Matrix, RatMatrix, SurdMatrix};
use crate::num::{NumError, Surd};
use num_traits::Zero;
use rayon::prelude::*;

/// Default cap on the number of sign classes enumerated.
pub const DEFAULT_BUDGET: u64 = 1 << 24;
/// Default tolerance for the floating-point rank prefilter.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// Sign assignment on the support of a nonnegative matrix; `negative[k]`
/// applies to `support[k]`, positions sorted row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    pub support: Vec<(usize, usize)>,
    pub negative: Vec<bool>,
}

/// Search statistics and the certified witness.
#[derive(Debug, Clone)]
pub struct SqrtRankResult {
    pub min_rank: usize,
    pub witness: SurdMatrix,
    pub witness_pattern: SignPattern,
    /// Sign classes evaluated (floating-point or exactly).
    pub classes_searched: u64,
    /// Sign classes skipped by branch-and-bound pruning.
    pub pruned: u64,
    /// Total number of sign classes in the quotient.
    pub class_count: u128,
    /// Lower bound that allowed early exit, when one applied.
    pub lower_bound: usize,
    /// False when the class budget ran out before the scan finished.
    pub certified: bool,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum HadamardError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("matrix has a negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("class budget exhausted; best-found upper bound is not certified")]
    BudgetExceeded(Box<SqrtRankResult>),
}

/// Knobs for the sign-class search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub budget: u64,
    pub float_tol: f64,
    pub parallel: bool,
    /// Extra certified lower bound supplied by the caller (for slack matrices
    /// of n-polytopes, n+1). The search stops once a witness meets the best
    /// known lower bound.
    pub rank_floor: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            float_tol: DEFAULT_FLOAT_TOL,
            parallel: true,
            rank_floor: 0,
        }
    }
}

/// Entrywise square.
pub fn hadamard_square(m: &RatMatrix) -> RatMatrix {
    m.map(|v| v * v)
}

/// The all-nonnegative Hadamard square root of a nonnegative matrix.
pub fn positive_sqrt(m: &RatMatrix) -> Result<SurdMatrix, NumError> {
    m.try_map(Surd::sqrt_of)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra] = rb;
            true
        }
    }
}

/// Static layout of one search: support order, forest, free positions and
/// column-prefix boundaries for pruning.
struct ClassLayout {
    rows: usize,
    cols: usize,
    /// Columns in scan order: ascending nonzero count, ties by index.
    col_order: Vec<usize>,
    /// Support positions in scan order (grouped by ordered column).
    support: Vec<(usize, usize)>,
    /// Indices into `support` that are free (non-forest) positions, in order.
    free_positions: Vec<usize>,
    /// For each free bit, the exclusive end of the fully-assigned column
    /// prefix (in `col_order`) once this bit and all earlier ones are set.
    prefix_end: Vec<usize>,
}

impl ClassLayout {
    fn build(m: &RatMatrix) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let mut col_nnz = vec![0usize; cols];
        for (_, j, v) in m.iter() {
            if !v.is_zero() {
                col_nnz[j] += 1;
            }
        }
        let mut col_order: Vec<usize> = (0..cols).collect();
        col_order.sort_by_key(|&j| (col_nnz[j], j));

        let mut support = Vec::new();
        let mut uf = UnionFind::new(rows + cols);
        let mut free_positions = Vec::new();
        let mut last_free_col_pos = Vec::new(); // position of each free bit's column in col_order
        for (cpos, &j) in col_order.iter().enumerate() {
            for i in 0..rows {
                if m.get(i, j).is_zero() {
                    continue;
                }
                let k = support.len();
                support.push((i, j));
                if !uf.union(i, rows + j) {
                    free_positions.push(k);
                    last_free_col_pos.push(cpos);
                }
            }
        }
        // Once free bit b is assigned, every column strictly before the next
        // free bit's column is fully signed.
        let nfree = free_positions.len();
        let mut prefix_end = vec![0usize; nfree];
        for b in 0..nfree {
            let end = if b + 1 < nfree {
                last_free_col_pos[b + 1]
            } else {
                cols
            };
            prefix_end[b] = end;
        }
        Self { rows, cols, col_order, support, free_positions, prefix_end }
    }

    fn free_count(&self) -> usize {
        self.free_positions.len()
    }

    /// Row-major sign pattern for a class, bit 0 of `class_bits` being the
    /// first free position in scan order (most significant lexicographically).
    fn pattern_for(&self, m: &RatMatrix, class_bits: u64) -> SignPattern {
        let mut negative_at = vec![vec![false; self.cols]; self.rows];
        for (b, &k) in self.free_positions.iter().enumerate() {
            if class_bits >> b & 1 == 1 {
                let (i, j) = self.support[k];
                negative_at[i][j] = true;
            }
        }
        let mut support = Vec::new();
        let mut negative = Vec::new();
        for (i, j, v) in m.iter() {
            if !v.is_zero() {
                support.push((i, j));
                negative.push(negative_at[i][j]);
            }
        }
        SignPattern { support, negative }
    }
}

/// Applies a sign pattern to the positive root.
fn signed_root(pos_root: &SurdMatrix, pattern: &SignPattern) -> SurdMatrix {
    let mut out = pos_root.clone();
    for (k, &(i, j)) in pattern.support.iter().enumerate() {
        if pattern.negative[k] {
            let v = out.get(i, j).neg();
            out.set(i, j, v);
        }
    }
    out
}

/// Greedy certified lower bound: any submatrix whose support graph is a
/// forest has a single sign class, so the rank of its positive root bounds
/// the sqrt-rank of the whole matrix from below.
fn forest_lower_bound(m: &RatMatrix, pos_field: &FieldMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut best = 0;

    // Column-greedy acyclic submatrix on the full row set, then the same on
    // the transpose orientation (row-greedy).
    for transpose in [false, true] {
        let (nr, nc) = if transpose { (cols, rows) } else { (rows, cols) };
        let entry_zero =
            |i: usize, j: usize| if transpose { m.get(j, i).is_zero() } else { m.get(i, j).is_zero() };
        let mut uf = UnionFind::new(nr + nc);
        let mut chosen = Vec::new();
        'cols: for j in 0..nc {
            let edges: Vec<usize> = (0..nr).filter(|&i| !entry_zero(i, j)).collect();
            // Tentatively add; roll back on a cycle.
            let snapshot = uf.parent.clone();
            for &i in &edges {
                if !uf.union(i, nr + j) {
                    uf.parent = snapshot;
                    continue 'cols;
                }
            }
            chosen.push(j);
        }
        if !chosen.is_empty() {
            let all_rows: Vec<usize> = (0..nr).collect();
            let sub = if transpose {
                pos_field.submatrix(&chosen, &all_rows)
            } else {
                pos_field.submatrix(&all_rows, &chosen)
            };
            best = best.max(field_rank(&sub));
        }
    }

    // Greedy isolated diagonal: positions in distinct rows/columns with all
    // other entries of the induced square submatrix zero force a diagonal
    // root of full rank.
    let mut diag: Vec<(usize, usize)> = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if m.get(i, j).is_zero() {
                continue;
            }
            let compatible = diag.iter().all(|&(r, c)| {
                r != i && c != j && m.get(r, j).is_zero() && m.get(i, c).is_zero()
            });
            if compatible {
                diag.push((i, j));
            }
        }
    }
    best.max(diag.len())
}

fn float_rank_of_signed(
    pos_float: &FloatMatrix,
    neg: &[bool],
    rows: usize,
    cols: usize,
    col_subset: &[usize],
    tol: f64,
) -> usize {
    let sub = Matrix::from_fn(rows, col_subset.len(), |i, t| {
        let j = col_subset[t];
        let v = *pos_float.get(i, j);
        if neg[i * cols + j] {
            -v
        } else {
            v
        }
    });
    float_rank(&sub, tol)
}

fn exact_rank_of_signed(pos_field: &FieldMatrix, neg: &[bool], cols: usize) -> usize {
    let signed = Matrix::from_fn(pos_field.rows(), pos_field.cols(), |i, j| {
        let v = pos_field.get(i, j).clone();
        if neg[i * cols + j] {
            -v
        } else {
            v
        }
    });
    field_rank(&signed)
}

struct BlockOutcome {
    min_rank: usize,
    witness_bits: Option<u64>,
    searched: u64,
    pruned: u64,
}

struct BlockSearch<'a> {
    layout: &'a ClassLayout,
    pos_float: &'a FloatMatrix,
    pos_field: &'a FieldMatrix,
    tol: f64,
    /// Scratch: row-major negation flags for the current assignment.
    neg: Vec<bool>,
}

impl<'a> BlockSearch<'a> {
    fn run(&mut self, block_bits: u64, split: usize, start_rank: usize) -> BlockOutcome {
        let free = self.layout.free_count();
        // Fix the block prefix.
        self.neg.iter_mut().for_each(|b| *b = false);
        for b in 0..split {
            if block_bits >> b & 1 == 1 {
                let (i, j) = self.layout.support[self.layout.free_positions[b]];
                self.neg[i * self.layout.cols + j] = true;
            }
        }
        let mut out = BlockOutcome {
            min_rank: start_rank,
            witness_bits: None,
            searched: 0,
            pruned: 0,
        };
        // Column prefixes completed inside the block prefix are checked once.
        if split > 0 {
            let end = self.layout.prefix_end[split - 1];
            let subset: Vec<usize> = self.layout.col_order[..end].to_vec();
            let r = float_rank_of_signed(
                self.pos_float,
                &self.neg,
                self.layout.rows,
                self.layout.cols,
                &subset,
                self.tol,
            );
            if r > out.min_rank {
                out.pruned += 1u64 << (free - split);
                return out;
            }
        }
        self.descend(block_bits, split, free, &mut out);
        out
    }

    fn descend(&mut self, bits: u64, depth: usize, free: usize, out: &mut BlockOutcome) {
        if depth == free {
            self.evaluate_leaf(bits, out);
            return;
        }
        let (i, j) = self.layout.support[self.layout.free_positions[depth]];
        let flat = i * self.layout.cols + j;
        for sign in [false, true] {
            self.neg[flat] = sign;
            let bits = bits | (u64::from(sign) << depth);
            // Prune on the float rank of the fully assigned column prefix.
            let end = self.layout.prefix_end[depth];
            let mut pruned_here = false;
            if depth + 1 < free && end > 0 {
                let subset: Vec<usize> = self.layout.col_order[..end].to_vec();
                let r = float_rank_of_signed(
                    self.pos_float,
                    &self.neg,
                    self.layout.rows,
                    self.layout.cols,
                    &subset,
                    self.tol,
                );
                if r > out.min_rank {
                    out.pruned += 1u64 << (free - depth - 1);
                    pruned_here = true;
                }
            }
            if !pruned_here {
                self.descend(bits, depth + 1, free, out);
            }
        }
        self.neg[flat] = false;
    }

    fn evaluate_leaf(&mut self, bits: u64, out: &mut BlockOutcome) {
        out.searched += 1;
        let all_cols: Vec<usize> = (0..self.layout.cols).collect();
        let fr = float_rank_of_signed(
            self.pos_float,
            &self.neg,
            self.layout.rows,
            self.layout.cols,
            &all_cols,
            self.tol,
        );
        if fr >= out.min_rank {
            return;
        }
        let exact = exact_rank_of_signed(self.pos_field, &self.neg, self.layout.cols);
        if exact < out.min_rank {
            out.min_rank = exact;
            out.witness_bits = Some(bits);
        }
    }
}

/// Exact minimum rank over all Hadamard square roots of a nonnegative matrix.
pub fn sqrt_rank(m: &RatMatrix, cfg: &SearchConfig) -> Result<SqrtRankResult, HadamardError> {
    for (i, j, v) in m.iter() {
        if num_traits::Signed::is_negative(v) {
            return Err(HadamardError::NegativeEntry(i, j));
        }
    }
    let pos_root = positive_sqrt(m)?;
    if m.is_empty() || m.support().is_empty() {
        let layout = ClassLayout::build(m);
        return Ok(SqrtRankResult {
            min_rank: 0,
            witness: pos_root.clone(),
            witness_pattern: layout.pattern_for(m, 0),
            classes_searched: 1,
            pruned: 0,
            class_count: 1,
            lower_bound: 0,
            certified: true,
        });
    }
    let (_ctx, pos_field) = pos_root.to_field()?;
    let pos_float = pos_root.to_float();
    let layout = ClassLayout::build(m);
    let free = layout.free_count();
    let class_count: u128 = 1u128 << free.min(127);

    let floor = cfg.rank_floor.max(forest_lower_bound(m, &pos_field)).max(1);
    let rank0 = field_rank(&pos_field);
    let mut best_rank = rank0;
    let mut best_bits: u64 = 0;
    let mut searched: u64 = 1;
    let mut pruned: u64 = 0;
    let mut exhausted = free == 0;

    if best_rank > floor && free > 0 {
        // Block split: fixed geometry regardless of thread count.
        let leaf_bits = free.min(12);
        let split = free - leaf_bits;
        let block_count: u128 = 1u128 << split.min(127);
        let over_budget = class_count > u128::from(cfg.budget);
        let blocks_to_run: u64 = if over_budget {
            (cfg.budget >> leaf_bits) as u64
        } else {
            block_count as u64
        };
        exhausted = !over_budget;
        const WINDOW: u64 = 64;

        let num_threads = if cfg.parallel { rayon::current_num_threads() } else { 1 };
        let mut next_block = 0u64;
        'windows: while next_block < blocks_to_run {
            let window_end = (next_block + WINDOW).min(blocks_to_run);
            let window: Vec<u64> = (next_block..window_end).collect();
            let outcomes: Vec<BlockOutcome> = if num_threads > 1 {
                window
                    .par_iter()
                    .map(|&b| {
                        let mut search = BlockSearch {
                            layout: &layout,
                            pos_float: &pos_float,
                            pos_field: &pos_field,
                            tol: cfg.float_tol,
                            neg: vec![false; layout.rows * layout.cols],
                        };
                        search.run(b, split, best_rank)
                    })
                    .collect()
            } else {
                window
                    .iter()
                    .map(|&b| {
                        let mut search = BlockSearch {
                            layout: &layout,
                            pos_float: &pos_float,
                            pos_field: &pos_field,
                            tol: cfg.float_tol,
                            neg: vec![false; layout.rows * layout.cols],
                        };
                        search.run(b, split, best_rank)
                    })
                    .collect()
            };
            for out in outcomes {
                searched += out.searched;
                pruned += out.pruned;
                if out.min_rank < best_rank {
                    if let Some(bits) = out.witness_bits {
                        best_rank = out.min_rank;
                        best_bits = bits;
                    }
                }
            }
            next_block = window_end;
            if best_rank <= floor {
                // Certified floor reached: the scan may stop early.
                exhausted = true;
                break 'windows;
            }
        }
    }

    let witness_pattern = layout.pattern_for(m, best_bits);
    let witness = signed_root(&pos_root, &witness_pattern);
    let certified = exhausted || best_rank == floor;
    let result = SqrtRankResult {
        min_rank: best_rank,
        witness,
        witness_pattern,
        classes_searched: searched,
        pruned,
        class_count,
        lower_bound: floor,
        certified,
    };
    if certified {
        Ok(result)
    } else {
        Err(HadamardError::BudgetExceeded(Box::new(result)))
    }
}

/// Certified lower bound on the sqrt-rank from k x k submatrices: any square
/// root of M restricts to a square root of each submatrix, so the exact
/// sqrt-rank of every submatrix bounds sqrt_rank(M) from below.
pub fn sqrt_rank_lower_bound(m: &RatMatrix, k: usize, cfg: &SearchConfig) -> Result<usize, HadamardError> {
    assert!(k <= 7, "submatrix side capped at 7");
    let (rows, cols) = (m.rows(), m.cols());
    if k > rows || k > cols {
        return Ok(0);
    }
    let row_sets = combinations(rows, k);
    let col_sets = combinations(cols, k);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let total = row_sets.len() as u64 * col_sets.len() as u64;
    const PAIR_CAP: u64 = 20_000;
    if total <= PAIR_CAP {
        for r in 0..row_sets.len() {
            for c in 0..col_sets.len() {
                pairs.push((r, c));
            }
        }
    } else {
        // Deterministic stride sample across the full grid.
        let stride = total.div_ceil(PAIR_CAP);
        let mut t = 0u64;
        while t < total {
            pairs.push(((t / col_sets.len() as u64) as usize, (t % col_sets.len() as u64) as usize));
            t += stride;
        }
    }
    let sub_cfg = SearchConfig {
        budget: cfg.budget.min(1 << 16),
        float_tol: cfg.float_tol,
        parallel: false,
        rank_floor: 0,
    };
    let mut best = 0;
    for (ri, ci) in pairs {
        let sub = m.submatrix(&row_sets[ri], &col_sets[ci]);
        match sqrt_rank(&sub, &sub_cfg) {
            Ok(res) => best = best.max(res.min_rank),
            // A truncated or oversized sub-search certifies nothing.
            Err(HadamardError::BudgetExceeded(_)) | Err(HadamardError::Num(_)) => {}
            Err(e) => return Err(e),
        }
        if best == k {
            break;
        }
    }
    Ok(best)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
