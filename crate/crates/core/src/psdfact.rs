//! Psd-factorization certificates and the bounds engine that combines every
//! available rule into a certified psd-rank interval.
//!
//! A factorization assigns a k x k symmetric psd matrix to every row and
//! every column of the target; it is valid when all trace inner products
//! reproduce the target entries exactly. Certificates are untrusted input
//! and always re-verified.

use crate::hadamard::{self, HadamardError, SearchConfig};
use crate::matrix::{
    field_rank, is_psd, is_psd_field, rat_rank, FieldMatrix, Matrix, MatrixError, RatMatrix,
    SurdMatrix,
};
use crate::num::{FieldElem, FieldScalar, Rational};
use crate::polytope::Polytope;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, thiserror::Error)]
pub enum PsdFactError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("alpha must be positive")]
    NonPositiveAlpha,
    #[error("extension row must be nonnegative")]
    NegativeExtensionRow,
    #[error("matrix must be nonnegative for psd-rank bounds")]
    NegativeEntry,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("facet recursion capped at dimension 4, got {0}")]
    DimensionTooLarge(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Geometry(#[from] crate::polytope::PolytopeError),
}

/// Size-k symmetric factor lists for the rows and columns of a target matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdFactorization<T> {
    pub k: usize,
    pub row_factors: Vec<Matrix<T>>,
    pub col_factors: Vec<Matrix<T>>,
}

/// A certificate in either rational or multiquadratic-field form.
#[derive(Debug, Clone)]
pub enum Certificate {
    Rational(PsdFactorization<Rational>),
    Surd(PsdFactorization<FieldElem>),
}

impl Certificate {
    pub fn k(&self) -> usize {
        match self {
            Certificate::Rational(f) => f.k,
            Certificate::Surd(f) => f.k,
        }
    }
}

/// Outcome of checking a factorization against its target.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub k: usize,
    pub max_row_factor_rank: usize,
    pub max_col_factor_rank: usize,
    pub all_factors_rank_one: bool,
    /// Human-readable reason when invalid.
    pub failure: Option<String>,
}

trait CertScalar: FieldScalar {
    fn matrix_is_psd(m: &Matrix<Self>) -> Result<bool, MatrixError>;
    fn matrix_rank(m: &Matrix<Self>) -> usize;
    fn equals_rational(&self, r: &Rational) -> bool;
}

impl CertScalar for Rational {
    fn matrix_is_psd(m: &Matrix<Self>) -> Result<bool, MatrixError> {
        is_psd(m)
    }
    fn matrix_rank(m: &Matrix<Self>) -> usize {
        rat_rank(m)
    }
    fn equals_rational(&self, r: &Rational) -> bool {
        self == r
    }
}

impl CertScalar for FieldElem {
    fn matrix_is_psd(m: &Matrix<Self>) -> Result<bool, MatrixError> {
        is_psd_field(m)
    }
    fn matrix_rank(m: &Matrix<Self>) -> usize {
        field_rank(m)
    }
    fn equals_rational(&self, r: &Rational) -> bool {
        self.as_rational().as_ref() == Some(r)
    }
}

fn verify_generic<T: CertScalar>(
    target: &RatMatrix,
    f: &PsdFactorization<T>,
) -> Result<VerifyReport, PsdFactError> {
    if f.row_factors.len() != target.rows() || f.col_factors.len() != target.cols() {
        return Err(PsdFactError::DimensionMismatch(format!(
            "{} row factors and {} col factors for a {}x{} target",
            f.row_factors.len(),
            f.col_factors.len(),
            target.rows(),
            target.cols()
        )));
    }
    let mut report = VerifyReport {
        valid: true,
        k: f.k,
        max_row_factor_rank: 0,
        max_col_factor_rank: 0,
        all_factors_rank_one: true,
        failure: None,
    };
    let fail = |report: &mut VerifyReport, why: String| {
        report.valid = false;
        if report.failure.is_none() {
            report.failure = Some(why);
        }
    };
    for (which, factors) in [("row", &f.row_factors), ("column", &f.col_factors)] {
        for (idx, a) in factors.iter().enumerate() {
            if a.rows() != f.k || a.cols() != f.k {
                return Err(PsdFactError::DimensionMismatch(format!(
                    "{which} factor {idx} is {}x{}, expected {0}x{0}, k = {k}",
                    a.rows(),
                    a.cols(),
                    k = f.k
                )));
            }
            match T::matrix_is_psd(a) {
                Ok(true) => {}
                Ok(false) => fail(&mut report, format!("{which} factor {idx} is not psd")),
                Err(MatrixError::NotSymmetric) => {
                    fail(&mut report, format!("{which} factor {idx} is not symmetric"))
                }
                Err(e) => return Err(e.into()),
            }
            let rank = T::matrix_rank(a);
            if rank > 1 {
                report.all_factors_rank_one = false;
            }
            if which == "row" {
                report.max_row_factor_rank = report.max_row_factor_rank.max(rank);
            } else {
                report.max_col_factor_rank = report.max_col_factor_rank.max(rank);
            }
        }
    }
    for i in 0..target.rows() {
        for j in 0..target.cols() {
            let inner = f.row_factors[i].trace_dot(&f.col_factors[j]);
            if !inner.equals_rational(target.get(i, j)) {
                fail(
                    &mut report,
                    format!("inner product at ({i}, {j}) does not match the target entry"),
                );
            }
        }
    }
    Ok(report)
}

/// Checks a certificate against its target matrix: every factor must be
/// symmetric psd of size k and every trace inner product must equal the
/// target entry exactly.
pub fn verify_factorization(
    target: &RatMatrix,
    cert: &Certificate,
) -> Result<VerifyReport, PsdFactError> {
    match cert {
        Certificate::Rational(f) => verify_generic(target, f),
        Certificate::Surd(f) => verify_generic(target, f),
    }
}

/// Builds the all-rank-one certificate from a Hadamard square root: factoring
/// the root as C * X gives M_ij = <c_i, x_j>^2 = <c_i c_i^T, x_j x_j^T>.
///
/// The certificate targets the entrywise square of `root`. Factors are
/// returned in rational form whenever every outer product is rational, and in
/// field form otherwise.
pub fn rank_one_factorization(root: &SurdMatrix) -> Result<Certificate, PsdFactError> {
    let (_ctx, f) = root
        .to_field()
        .map_err(|e| PsdFactError::Matrix(MatrixError::Num(e)))?;
    let mut rref = f.clone();
    let pivots = crate::matrix::field_rref(&mut rref);
    let r = pivots.len();
    if r == 0 {
        return Err(PsdFactError::DimensionMismatch(
            "cannot factor the zero matrix into rank-one psd factors".into(),
        ));
    }
    // Root = C X with C the pivot columns and X the top rows of the reduced
    // form; row vectors of C and column vectors of X are the rank-one roots.
    let all_rows: Vec<usize> = (0..f.rows()).collect();
    let c = f.submatrix(&all_rows, &pivots);
    let top_rows: Vec<usize> = (0..r).collect();
    let all_cols: Vec<usize> = (0..f.cols()).collect();
    let x = rref.submatrix(&top_rows, &all_cols);

    let outer = |v: Vec<FieldElem>| -> Matrix<FieldElem> {
        Matrix::from_fn(r, r, |a, b| v[a].clone() * v[b].clone())
    };
    let row_factors: Vec<FieldMatrix> = (0..f.rows())
        .map(|i| outer(c.row(i).to_vec()))
        .collect();
    let col_factors: Vec<FieldMatrix> = (0..f.cols())
        .map(|j| outer((0..r).map(|t| x.get(t, j).clone()).collect()))
        .collect();

    let fact = PsdFactorization { k: r, row_factors, col_factors };
    // Prefer the rational form when every factor entry is rational.
    let all_rational = fact
        .row_factors
        .iter()
        .chain(&fact.col_factors)
        .all(|m| m.iter().all(|(_, _, v)| v.as_rational().is_some()));
    if all_rational {
        let to_rat = |m: &FieldMatrix| m.map(|v| v.as_rational().expect("checked rational"));
        Ok(Certificate::Rational(PsdFactorization {
            k: fact.k,
            row_factors: fact.row_factors.iter().map(to_rat).collect(),
            col_factors: fact.col_factors.iter().map(to_rat).collect(),
        }))
    } else {
        Ok(Certificate::Surd(fact))
    }
}

/// The block matrix [[M, 0], [w, alpha]].
pub fn extend_matrix(
    m: &RatMatrix,
    w: &[Rational],
    alpha: &Rational,
) -> Result<RatMatrix, PsdFactError> {
    if w.len() != m.cols() {
        return Err(PsdFactError::DimensionMismatch(format!(
            "extension row has {} entries, matrix has {} columns",
            w.len(),
            m.cols()
        )));
    }
    if !alpha.is_positive() {
        return Err(PsdFactError::NonPositiveAlpha);
    }
    if w.iter().any(|v| v.is_negative()) {
        return Err(PsdFactError::NegativeExtensionRow);
    }
    Ok(Matrix::from_fn(m.rows() + 1, m.cols() + 1, |i, j| {
        if i < m.rows() {
            if j < m.cols() {
                m.get(i, j).clone()
            } else {
                Rational::zero()
            }
        } else if j < m.cols() {
            w[j].clone()
        } else {
            alpha.clone()
        }
    }))
}

/// Provenance tags for interval bounds; a closed enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleTag {
    #[serde(rename = "QUAD")]
    Quad,
    #[serde(rename = "DIM_PLUS_1")]
    DimPlus1,
    #[serde(rename = "SQRT_GAP")]
    SqrtGap,
    #[serde(rename = "FACET_RECURSION")]
    FacetRecursion,
    #[serde(rename = "SQRT_UPPER")]
    SqrtUpper,
    #[serde(rename = "CERT_UPPER")]
    CertUpper,
    #[serde(rename = "TWO_LEVEL")]
    TwoLevel,
}

impl std::fmt::Display for RuleTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RuleTag::Quad => "QUAD",
            RuleTag::DimPlus1 => "DIM_PLUS_1",
            RuleTag::SqrtGap => "SQRT_GAP",
            RuleTag::FacetRecursion => "FACET_RECURSION",
            RuleTag::SqrtUpper => "SQRT_UPPER",
            RuleTag::CertUpper => "CERT_UPPER",
            RuleTag::TwoLevel => "TWO_LEVEL",
        };
        write!(f, "{s}")
    }
}

/// One contributing bound with its provenance.
#[derive(Debug, Clone, Serialize)]
pub struct Reason {
    pub value: usize,
    pub rule: RuleTag,
    pub note: String,
}

/// Certified psd-rank interval with a provenance trail.
#[derive(Debug, Clone, Serialize)]
pub struct RankInterval {
    pub lo: usize,
    pub hi: usize,
    pub lo_reasons: Vec<Reason>,
    pub hi_reasons: Vec<Reason>,
}

impl RankInterval {
    pub fn exact(&self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

/// Context for the bounds engine: asserting `polytope_dim = Some(n)` means
/// the target is a slack matrix of an n-dimensional polytope, which unlocks
/// the dimension-based rules.
#[derive(Debug, Clone, Default)]
pub struct BoundsContext {
    pub polytope_dim: Option<usize>,
}

/// Smallest k whose triangular number reaches the given rank.
fn quadratic_lower_bound(rank: usize) -> usize {
    let mut k = 0usize;
    while k * (k + 1) / 2 < rank {
        k += 1;
    }
    k
}

/// Assembles every applicable lower and upper bound on the psd rank of a
/// nonnegative matrix into a certified interval.
pub fn psd_rank_bounds(
    m: &RatMatrix,
    ctx: &BoundsContext,
    certs: &[Certificate],
    cfg: &SearchConfig,
) -> Result<RankInterval, PsdFactError> {
    if !m.is_nonnegative() {
        return Err(PsdFactError::NegativeEntry);
    }
    let mut lo_reasons = Vec::new();
    let mut hi_reasons = Vec::new();

    let r = rat_rank(m);
    lo_reasons.push(Reason {
        value: quadratic_lower_bound(r),
        rule: RuleTag::Quad,
        note: format!("rank {r} forces psd rank k with k(k+1)/2 >= {r}"),
    });
    if let Some(n) = ctx.polytope_dim {
        lo_reasons.push(Reason {
            value: n + 1,
            rule: RuleTag::DimPlus1,
            note: format!("slack matrix of an {n}-polytope has psd rank at least {}", n + 1),
        });
        if m.uniform_column_scaling().is_some() {
            hi_reasons.push(Reason {
                value: n + 1,
                rule: RuleTag::TwoLevel,
                note: "column scaling to a 0/1 matrix collapses the psd rank to dim + 1".into(),
            });
        }
    }
    for (idx, cert) in certs.iter().enumerate() {
        let report = verify_factorization(m, cert)?;
        if !report.valid {
            return Err(PsdFactError::InvalidCertificate(format!(
                "certificate {idx}: {}",
                report.failure.unwrap_or_else(|| "failed verification".into())
            )));
        }
        hi_reasons.push(Reason {
            value: report.k,
            rule: RuleTag::CertUpper,
            note: format!("verified size-{} factorization", report.k),
        });
    }

    // The sign search is only needed when the cheap rules leave a gap.
    let cheap_lo = lo_reasons.iter().map(|r| r.value).max().unwrap_or(0);
    let cheap_hi = hi_reasons.iter().map(|r| r.value).min();
    if cheap_hi != Some(cheap_lo) {
        let floor = ctx.polytope_dim.map_or(0, |n| n + 1);
        let search_cfg = SearchConfig { rank_floor: floor, ..cfg.clone() };
        match hadamard::sqrt_rank(m, &search_cfg) {
            Ok(res) => {
                hi_reasons.push(Reason {
                    value: res.min_rank,
                    rule: RuleTag::SqrtUpper,
                    note: format!(
                        "square root of rank {} exists ({} classes searched)",
                        res.min_rank, res.classes_searched
                    ),
                });
                if let Some(n) = ctx.polytope_dim {
                    if res.certified && res.min_rank > n + 1 {
                        lo_reasons.push(Reason {
                            value: n + 2,
                            rule: RuleTag::SqrtGap,
                            note: format!(
                                "no square root of rank {} exists, ruling out psd rank {}",
                                n + 1,
                                n + 1
                            ),
                        });
                    }
                }
            }
            Err(HadamardError::BudgetExceeded(partial)) => {
                hi_reasons.push(Reason {
                    value: partial.min_rank,
                    rule: RuleTag::SqrtUpper,
                    note: "budget-limited scan; witness root still certifies the upper bound"
                        .into(),
                });
            }
            Err(HadamardError::Num(e)) => return Err(MatrixError::Num(e).into()),
            Err(HadamardError::NegativeEntry(_, _)) => return Err(PsdFactError::NegativeEntry),
        }
    }

    let lo = lo_reasons.iter().map(|r| r.value).max().unwrap_or(0);
    let hi = hi_reasons.iter().map(|r| r.value).min().unwrap_or(usize::MAX);
    debug_assert!(lo <= hi, "inconsistent bounds: [{lo}, {hi}]");
    Ok(RankInterval { lo, hi, lo_reasons, hi_reasons })
}

/// Recursive facet lower bound: a facet of psd rank at least k forces psd
/// rank at least k + 1 on the whole polytope. Capped at dimension 4.
pub fn facet_recursive_lower_bound(
    p: &Polytope,
    cfg: &SearchConfig,
) -> Result<usize, PsdFactError> {
    if p.dim() > 4 {
        return Err(PsdFactError::DimensionTooLarge(p.dim()));
    }
    facet_lb_rec(p, cfg)
}

fn facet_lb_rec(p: &Polytope, cfg: &SearchConfig) -> Result<usize, PsdFactError> {
    let n = p.dim();
    if n <= 1 {
        return Ok(n + 1);
    }
    let mut best = n + 1;
    for facet_index in 0..p.facets().len() {
        let facet = p.facet_as_polytope(facet_index)?;
        let engine = psd_rank_bounds(
            &facet.slack_matrix().matrix,
            &BoundsContext { polytope_dim: Some(facet.dim()) },
            &[],
            cfg,
        )?;
        let mut facet_lb = engine.lo;
        if facet.dim() >= 2 {
            facet_lb = facet_lb.max(facet_lb_rec(&facet, cfg)?);
        }
        best = best.max(facet_lb + 1);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat_matrix_from_i64;
    use crate::num::{ratio_of, rational_from_i64};
    use crate::polytope::Polytope;

    fn serial() -> SearchConfig {
        SearchConfig { parallel: false, ..Default::default() }
    }

    fn rational_cert(k: usize, rows: Vec<RatMatrix>, cols: Vec<RatMatrix>) -> Certificate {
        Certificate::Rational(PsdFactorization { k, row_factors: rows, col_factors: cols })
    }

    /// The size-2 certificate for [[1,1,1],[1,0,1],[0,1,1]].
    fn square_example_cert() -> (RatMatrix, Certificate) {
        let m = rat_matrix_from_i64(&[&[1, 1, 1], &[1, 0, 1], &[0, 1, 1]]);
        let h = ratio_of(1, 2);
        let rows = vec![
            Matrix::from_rows(vec![
                vec![h.clone(), -h.clone()],
                vec![-h.clone(), rational_from_i64(1)],
            ]),
            Matrix::from_rows(vec![
                vec![h.clone(), rational_from_i64(0)],
                vec![rational_from_i64(0), rational_from_i64(0)],
            ]),
            rat_matrix_from_i64(&[&[0, 0], &[0, 1]]),
        ];
        let cols = vec![
            rat_matrix_from_i64(&[&[2, 0], &[0, 0]]),
            rat_matrix_from_i64(&[&[0, 0], &[0, 1]]),
            rat_matrix_from_i64(&[&[2, 1], &[1, 1]]),
        ];
        (m, rational_cert(2, rows, cols))
    }

    fn derangement_cert() -> (RatMatrix, Certificate) {
        let m = rat_matrix_from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let rows = vec![
            rat_matrix_from_i64(&[&[0, 0], &[0, 1]]),
            rat_matrix_from_i64(&[&[1, 0], &[0, 0]]),
            rat_matrix_from_i64(&[&[1, 1], &[1, 1]]),
        ];
        let cols = vec![
            rat_matrix_from_i64(&[&[1, 0], &[0, 0]]),
            rat_matrix_from_i64(&[&[0, 0], &[0, 1]]),
            rat_matrix_from_i64(&[&[1, -1], &[-1, 1]]),
        ];
        (m, rational_cert(2, rows, cols))
    }

    #[test]
    fn square_example_certificate_verifies() {
        let (m, cert) = square_example_cert();
        let report = verify_factorization(&m, &cert).unwrap();
        assert!(report.valid, "{:?}", report.failure);
        assert_eq!(report.k, 2);
        assert!(!report.all_factors_rank_one);
    }

    #[test]
    fn derangement_certificate_all_rank_one() {
        let (m, cert) = derangement_cert();
        let report = verify_factorization(&m, &cert).unwrap();
        assert!(report.valid, "{:?}", report.failure);
        assert_eq!(report.k, 2);
        assert!(report.all_factors_rank_one);
        assert_eq!(report.max_row_factor_rank, 1);
        assert_eq!(report.max_col_factor_rank, 1);
    }

    #[test]
    fn tampered_certificate_fails() {
        let (m, cert) = derangement_cert();
        let Certificate::Rational(mut f) = cert else { unreachable!() };
        f.col_factors[2].set(0, 1, rational_from_i64(1));
        let report = verify_factorization(&m, &Certificate::Rational(f)).unwrap();
        assert!(!report.valid);
    }

    #[test]
    fn rank_one_factorization_from_root() {
        // Identity: factors are e_i e_i^T.
        let root = crate::hadamard::positive_sqrt(&RatMatrix::identity(3)).unwrap();
        let cert = rank_one_factorization(&root).unwrap();
        let report = verify_factorization(&RatMatrix::identity(3), &cert).unwrap();
        assert!(report.valid);
        assert!(report.all_factors_rank_one);
        assert_eq!(report.k, 3);

        // Derangement rank-2 root gives a k = 2 all-rank-one certificate.
        let m = rat_matrix_from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let res = crate::hadamard::sqrt_rank(&m, &serial()).unwrap();
        let cert = rank_one_factorization(&res.witness).unwrap();
        let report = verify_factorization(&m, &cert).unwrap();
        assert!(report.valid, "{:?}", report.failure);
        assert_eq!(report.k, 2);
        assert!(report.all_factors_rank_one);
    }

    #[test]
    fn extend_matrix_block_form() {
        let one = RatMatrix::identity(1);
        let e1 = extend_matrix(&one, &[Rational::zero()], &rational_from_i64(1)).unwrap();
        let e2 = extend_matrix(&e1, &[Rational::zero(), Rational::zero()], &rational_from_i64(1))
            .unwrap();
        assert_eq!(e2, RatMatrix::identity(3));
        assert_eq!(rat_rank(&e2), rat_rank(&e1) + 1);
        assert!(matches!(
            extend_matrix(&one, &[Rational::zero()], &Rational::zero()),
            Err(PsdFactError::NonPositiveAlpha)
        ));
    }

    #[test]
    fn bounds_identity_diagonal() {
        // n x n identity with polytope dimension n - 1 collapses to [n, n].
        for n in 2..=4 {
            let m = RatMatrix::identity(n);
            let interval = psd_rank_bounds(
                &m,
                &BoundsContext { polytope_dim: Some(n - 1) },
                &[],
                &serial(),
            )
            .unwrap();
            assert_eq!((interval.lo, interval.hi), (n, n));
        }
    }

    #[test]
    fn bounds_pentagon_with_and_without_certificate() {
        let p = Polytope::from_integer_vertices(
            2,
            &[&[0, 0], &[1, 0], &[2, 1], &[1, 2], &[0, 1]],
        )
        .unwrap();
        let s = p.slack_matrix().matrix;
        let ctx = BoundsContext { polytope_dim: Some(2) };
        let no_cert = psd_rank_bounds(&s, &ctx, &[], &serial()).unwrap();
        assert_eq!((no_cert.lo, no_cert.hi), (4, 5));
        assert!(no_cert
            .lo_reasons
            .iter()
            .any(|r| r.rule == RuleTag::SqrtGap && r.value == 4));
    }

    #[test]
    fn quadratic_bound_values() {
        assert_eq!(quadratic_lower_bound(0), 0);
        assert_eq!(quadratic_lower_bound(1), 1);
        assert_eq!(quadratic_lower_bound(3), 2);
        assert_eq!(quadratic_lower_bound(4), 3);
        assert_eq!(quadratic_lower_bound(7), 4);
    }

    #[test]
    fn facet_recursion_examples() {
        let cube = Polytope::from_integer_vertices(
            3,
            &[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[1, 1, 0],
                &[0, 0, 1],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(facet_recursive_lower_bound(&cube, &serial()).unwrap(), 4);

        let simplex =
            Polytope::from_integer_vertices(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
                .unwrap();
        assert_eq!(facet_recursive_lower_bound(&simplex, &serial()).unwrap(), 4);

        let pentagon = Polytope::from_integer_vertices(
            2,
            &[&[0, 0], &[1, 0], &[2, 1], &[1, 2], &[0, 1]],
        )
        .unwrap();
        let pyramid = pentagon.pyramid(&rational_from_i64(1)).unwrap();
        assert_eq!(facet_recursive_lower_bound(&pyramid, &serial()).unwrap(), 5);
    }
}
