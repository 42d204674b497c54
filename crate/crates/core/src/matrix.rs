//! Dense matrices generic over the scalar type, with the exact rank and
//! positive-semidefiniteness kernels used everywhere else.

use crate::num::{
    row_denominator_lcm, FieldCtx, FieldElem, FieldScalar, NumError, Rational, Scalar, Surd,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// Row-major rectangular matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Matrix of arbitrary-precision rationals.
pub type RatMatrix = Matrix<Rational>;
/// Matrix of single quadratic surds (storage for Hadamard square roots).
pub type SurdMatrix = Matrix<Surd>;
/// Matrix over a multiquadratic field.
pub type FieldMatrix = Matrix<FieldElem>;
/// Double-precision matrix for the floating-point prefilter.
pub type FloatMatrix = Matrix<f64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix side {0} exceeds the exact psd-test cap {1}")]
    TooLarge(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Exact psd testing by principal minors is capped at this side length.
pub const PSD_SIZE_CAP: usize = 8;

impl<T> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let cols = self.cols;
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / cols, k % cols, v))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| f(v)).collect(),
        }
    }

    /// Entrywise map that may fail.
    pub fn try_map<U, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for v in &self.entries {
            entries.push(f(v)?);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Self::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Positions of nonzero entries in row-major order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.iter()
            .filter(|(_, _, v)| !v.is_zero())
            .map(|(i, j, _)| (i, j))
            .collect()
    }

    /// Trace inner product of symmetric matrices: sum of entrywise products.
    pub fn trace_dot(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut acc = T::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc = acc + a.clone() * b.clone();
        }
        acc
    }
}

/// Rank by plain Gaussian elimination over any exact field.
pub fn field_rank<T: FieldScalar>(m: &Matrix<T>) -> usize {
    let mut work = m.clone();
    let (rows, cols) = (work.rows, work.cols);
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(src) = (pivot_row..rows).find(|&r| !work.get(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for j in 0..cols {
                let a = work.get(pivot_row, j).clone();
                let b = work.get(src, j).clone();
                work.set(pivot_row, j, b);
                work.set(src, j, a);
            }
        }
        let inv = work
            .get(pivot_row, col)
            .recip()
            .expect("pivot is nonzero");
        for r in (pivot_row + 1)..rows {
            if work.get(r, col).is_zero() {
                continue;
            }
            let factor = work.get(r, col).clone() * inv.clone();
            for j in col..cols {
                let v = work.get(r, j).clone()
                    - factor.clone() * work.get(pivot_row, j).clone();
                work.set(r, j, v);
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    rank
}

/// Determinant over any exact field (zero for non-square handled by caller).
pub fn field_det<T: FieldScalar>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    let mut work = m.clone();
    let mut det = T::one();
    for col in 0..n {
        let Some(src) = (col..n).find(|&r| !work.get(r, col).is_zero()) else {
            return T::zero();
        };
        if src != col {
            for j in 0..n {
                let a = work.get(col, j).clone();
                let b = work.get(src, j).clone();
                work.set(col, j, b);
                work.set(src, j, a);
            }
            det = -det;
        }
        let pivot = work.get(col, col).clone();
        let inv = pivot.recip().expect("pivot is nonzero");
        det = det * pivot;
        for r in (col + 1)..n {
            if work.get(r, col).is_zero() {
                continue;
            }
            let factor = work.get(r, col).clone() * inv.clone();
            for j in col..n {
                let v = work.get(r, j).clone() - factor.clone() * work.get(col, j).clone();
                work.set(r, j, v);
            }
        }
    }
    det
}

/// Reduced row echelon form; returns the pivot column indices.
pub fn field_rref<T: FieldScalar>(work: &mut Matrix<T>) -> Vec<usize> {
    let (rows, cols) = (work.rows, work.cols);
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(src) = (pivot_row..rows).find(|&r| !work.get(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for j in 0..cols {
                let a = work.get(pivot_row, j).clone();
                let b = work.get(src, j).clone();
                work.set(pivot_row, j, b);
                work.set(src, j, a);
            }
        }
        let inv = work.get(pivot_row, col).recip().expect("pivot is nonzero");
        for j in 0..cols {
            let v = work.get(pivot_row, j).clone() * inv.clone();
            work.set(pivot_row, j, v);
        }
        for r in 0..rows {
            if r == pivot_row || work.get(r, col).is_zero() {
                continue;
            }
            let factor = work.get(r, col).clone();
            for j in 0..cols {
                let v = work.get(r, j).clone() - factor.clone() * work.get(pivot_row, j).clone();
                work.set(r, j, v);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// Basis of the right kernel `{x : Mx = 0}`.
pub fn field_kernel<T: FieldScalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let mut work = m.clone();
    let pivots = field_rref(&mut work);
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![T::zero(); cols];
        v[f] = T::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -work.get(r, f).clone();
        }
        basis.push(v);
    }
    basis
}

/// One exact solution of `Mx = b`, if the system is consistent.
pub fn field_solve<T: FieldScalar>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let pivots = field_rref(&mut aug);
    if pivots.contains(&m.cols) {
        return None; // inconsistent
    }
    let mut x = vec![T::zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, m.cols).clone();
    }
    Some(x)
}

/// Exact rank of a rational matrix by fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to integers; all intermediate values stay integral,
/// which controls coefficient blowup compared to naive rational pivoting.
pub fn rat_rank(m: &RatMatrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut work: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let l = row_denominator_lcm(m.row(i));
            m.row(i)
                .iter()
                .map(|r| r.numer() * (&l / r.denom()))
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut pivot_row = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(src) = (pivot_row..rows).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(pivot_row, src);
        let pivot = work[pivot_row][col].clone();
        for r in (pivot_row + 1)..rows {
            for j in (col + 1)..cols {
                let v = (&pivot * &work[r][j] - &work[r][col] * &work[pivot_row][j]) / &prev;
                work[r][j] = v;
            }
            work[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    rank
}

/// Exact rank of a symmetric rational matrix.
pub fn sym_rank(m: &RatMatrix) -> Result<usize, MatrixError> {
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    Ok(rat_rank(m))
}

/// Exact positive-semidefiniteness of a symmetric rational matrix, decided by
/// checking that all 2^k - 1 principal minors are nonnegative.
pub fn is_psd(m: &RatMatrix) -> Result<bool, MatrixError> {
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let n = m.rows;
    if n > PSD_SIZE_CAP {
        return Err(MatrixError::TooLarge(n, PSD_SIZE_CAP));
    }
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor = field_det(&m.submatrix(&idx, &idx));
        if minor.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact psd test for symmetric matrices over a multiquadratic field, using
/// the exact sign of each principal minor.
pub fn is_psd_field(m: &FieldMatrix) -> Result<bool, MatrixError> {
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let n = m.rows;
    if n > PSD_SIZE_CAP {
        return Err(MatrixError::TooLarge(n, PSD_SIZE_CAP));
    }
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor = field_det(&m.submatrix(&idx, &idx));
        if minor.signum() < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

impl SurdMatrix {
    /// Entrywise squares, always rational.
    pub fn hadamard_square(&self) -> RatMatrix {
        self.map(|s| s.square())
    }

    pub fn to_float(&self) -> FloatMatrix {
        self.map(|s| s.to_f64())
    }

    /// Distinct radicands appearing among the nonzero entries.
    pub fn radicands(&self) -> Vec<u64> {
        let mut rads: Vec<u64> = self
            .entries
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| s.radicand())
            .collect();
        rads.sort_unstable();
        rads.dedup();
        rads
    }

    /// Lifts the matrix into the multiquadratic field spanned by its entries.
    pub fn to_field(&self) -> Result<(Arc<FieldCtx>, FieldMatrix), NumError> {
        let (ctx, roots) = FieldCtx::for_radicands(&self.radicands())?;
        let m = self.map(|s| {
            if s.is_zero() {
                FieldElem::zero()
            } else {
                let root = roots.get(&s.radicand()).expect("radicand registered").clone();
                root * FieldElem::from_rational(s.coeff().clone())
            }
        });
        Ok((ctx, m))
    }
}

/// Exact rank of a surd matrix over the field its entries generate.
pub fn surd_rank(m: &SurdMatrix) -> Result<usize, NumError> {
    if m.is_empty() {
        return Ok(0);
    }
    let (_, fm) = m.to_field()?;
    Ok(field_rank(&fm))
}

/// Floating-point rank by column-pivoted Householder QR.
///
/// The rank is the number of diagonal entries of R above `tol` relative to
/// the largest one. Used only as a prefilter; never as a certificate.
pub fn float_rank(m: &FloatMatrix, tol: f64) -> usize {
    let rows = m.rows;
    let cols = m.cols;
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a = m.entries.clone(); // row-major working copy
    let at = |a: &Vec<f64>, i: usize, j: usize| a[i * cols + j];
    let mut col_norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| at(&a, i, j).powi(2)).sum())
        .collect();
    let mut perm: Vec<usize> = (0..cols).collect();
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);
    for k in 0..steps {
        // Pivot the column with the largest remaining norm.
        let (best, _) = (k..cols)
            .map(|j| (j, col_norms[j]))
            .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best != k {
            for i in 0..rows {
                a.swap(i * cols + k, i * cols + best);
            }
            col_norms.swap(k, best);
            perm.swap(k, best);
        }
        // Householder reflection for column k on rows k..
        let mut norm = 0.0;
        for i in k..rows {
            norm += at(&a, i, k).powi(2);
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            diag.push(0.0);
            continue;
        }
        let alpha = if at(&a, k, k) > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..rows).map(|i| at(&a, i, k)).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for j in k..cols {
                let dot: f64 = (k..rows).map(|i| v[i - k] * at(&a, i, j)).sum();
                let scale = 2.0 * dot / vnorm2;
                for i in k..rows {
                    a[i * cols + j] -= scale * v[i - k];
                }
            }
        }
        a[k * cols + k] = alpha;
        diag.push(alpha.abs());
        for j in (k + 1)..cols {
            col_norms[j] = ((k + 1)..rows).map(|i| at(&a, i, j).powi(2)).sum();
        }
    }
    let top = diag.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    diag.iter().take_while(|&&d| d > tol * top).count()
}

impl RatMatrix {
    pub fn to_float(&self) -> FloatMatrix {
        self.map(crate::num::rational_to_f64)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|r| !r.is_negative())
    }

    /// A positive column scaling making the matrix 0/1, when every column's
    /// nonzero entries agree.
    pub fn uniform_column_scaling(&self) -> Option<RatMatrix> {
        let mut out = self.clone();
        for j in 0..self.cols {
            let mut value: Option<Rational> = None;
            for i in 0..self.rows {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match &value {
                    None => value = Some(v.clone()),
                    Some(w) if w == v => {}
                    Some(_) => return None,
                }
            }
            if let Some(v) = value {
                if v.is_negative() {
                    return None;
                }
                for i in 0..self.rows {
                    if !self.get(i, j).is_zero() {
                        out.set(i, j, Rational::from_integer(BigInt::from(1)));
                    }
                }
            }
        }
        Some(out)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        display_grid(f, self, crate::num::format_rational)
    }
}

impl fmt::Display for SurdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        display_grid(f, self, |s| s.to_string())
    }
}

fn display_grid<T>(
    f: &mut fmt::Formatter<'_>,
    m: &Matrix<T>,
    render: impl Fn(&T) -> String,
) -> fmt::Result {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(&render).collect())
        .collect();
    let mut widths = vec![0usize; m.cols()];
    for row in &cells {
        for (j, c) in row.iter().enumerate() {
            widths[j] = widths[j].max(c.len());
        }
    }
    for row in &cells {
        write!(f, "[")?;
        for (j, c) in row.iter().enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:>width$}", c, width = widths[j])?;
        }
        writeln!(f, "]")?;
    }
    Ok(())
}

/// Convenience constructor from integer literals, used heavily in tests.
pub fn rat_matrix_from_i64(rows: &[&[i64]]) -> RatMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| crate::num::rational_from_i64(v)).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{ratio_of, rational_from_i64};

    #[test]
    fn rank_identity_and_example() {
        assert_eq!(rat_rank(&RatMatrix::identity(3)), 3);
        let m = rat_matrix_from_i64(&[&[1, 1, 1], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(rat_rank(&m), 3);
        let zero = RatMatrix::zeros(4, 4);
        assert_eq!(rat_rank(&zero), 0);
        assert_eq!(rat_rank(&m), rat_rank(&m.transpose()));
    }

    #[test]
    fn rank_with_fractions() {
        let m = Matrix::from_rows(vec![
            vec![ratio_of(1, 2), ratio_of(1, 3)],
            vec![ratio_of(3, 2), ratio_of(1, 1)],
        ]);
        assert_eq!(rat_rank(&m), 1);
    }

    #[test]
    fn surd_rank_diagonal() {
        let entries = vec![
            vec![Surd::sqrt_of(&ratio_of(1, 1)).unwrap(), Surd::zero(), Surd::zero()],
            vec![Surd::zero(), Surd::sqrt_of(&ratio_of(2, 1)).unwrap(), Surd::zero()],
            vec![Surd::zero(), Surd::zero(), Surd::sqrt_of(&ratio_of(3, 1)).unwrap()],
        ];
        let m = SurdMatrix::from_rows(entries);
        assert_eq!(surd_rank(&m).unwrap(), 3);
    }

    #[test]
    fn surd_rank_dependent_rows() {
        // [sqrt2, sqrt6; 1, sqrt3] has rank 1: second row is first / sqrt2.
        let s = |n: i64| Surd::sqrt_of(&ratio_of(n, 1)).unwrap();
        let m = SurdMatrix::from_rows(vec![vec![s(2), s(6)], vec![s(1), s(3)]]);
        assert_eq!(surd_rank(&m).unwrap(), 1);
    }

    #[test]
    fn psd_examples() {
        let a = Matrix::from_rows(vec![
            vec![ratio_of(1, 2), ratio_of(-1, 2)],
            vec![ratio_of(-1, 2), ratio_of(1, 1)],
        ]);
        assert!(is_psd(&a).unwrap());
        let b = rat_matrix_from_i64(&[&[1, 2], &[2, 1]]);
        assert!(!is_psd(&b).unwrap());
        assert!(is_psd(&RatMatrix::zeros(3, 3)).unwrap());
        let ns = rat_matrix_from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(is_psd(&ns), Err(MatrixError::NotSymmetric));
    }

    #[test]
    fn psd_semidefinite_corner() {
        // Singular but psd: [[1,1],[1,1]]; and indefinite [[0,1],[1,0]].
        let a = rat_matrix_from_i64(&[&[1, 1], &[1, 1]]);
        assert!(is_psd(&a).unwrap());
        assert_eq!(sym_rank(&a).unwrap(), 1);
        let b = rat_matrix_from_i64(&[&[0, 1], &[1, 0]]);
        assert!(!is_psd(&b).unwrap());
        // Leading minors alone would wrongly accept this one.
        let c = rat_matrix_from_i64(&[&[0, 0], &[0, -1]]);
        assert!(!is_psd(&c).unwrap());
    }

    #[test]
    fn float_rank_agrees_on_exact_cases() {
        let m = rat_matrix_from_i64(&[&[1, 1, 1], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(float_rank(&m.to_float(), 1e-9), 3);
        let dep = rat_matrix_from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(float_rank(&dep.to_float(), 1e-9), 2);
        assert_eq!(float_rank(&RatMatrix::zeros(3, 2).to_float(), 1e-9), 0);
    }

    #[test]
    fn hadamard_square_round_trip() {
        let m = rat_matrix_from_i64(&[&[0, 1], &[4, 9]]);
        let root = m.try_map(Surd::sqrt_of).unwrap();
        assert_eq!(root.hadamard_square(), m);
    }

    #[test]
    fn uniform_column_scaling_detects() {
        let m = rat_matrix_from_i64(&[&[0, 2], &[3, 2]]);
        let scaled = m.uniform_column_scaling().unwrap();
        assert_eq!(scaled, rat_matrix_from_i64(&[&[0, 1], &[1, 1]]));
        let mixed = rat_matrix_from_i64(&[&[1, 2], &[1, 4]]);
        assert!(mixed.uniform_column_scaling().is_none());
    }

    #[test]
    fn field_det_sign() {
        let m = rat_matrix_from_i64(&[&[2, 1], &[1, 2]]);
        assert_eq!(field_det(&m), rational_from_i64(3));
    }
}
