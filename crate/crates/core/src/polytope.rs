//! Rational polytope geometry: vertex and facet representations, brute-force
//! facet enumeration in small dimension, and exact slack matrices.
//!
//! Input polytopes are given by vertices only; the facet representation is
//! always recomputed, never trusted, so slack matrices are internally
//! consistent by construction.

use crate::matrix::{field_kernel, field_rref, rat_rank, Matrix, RatMatrix};
use crate::num::{rational_from_i64, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dimension cap for brute-force facet enumeration.
pub const MAX_DIM: usize = 7;
/// Vertex-count cap for brute-force facet enumeration.
pub const MAX_VERTICES: usize = 32;
/// Cap on the number of vertex subsets scanned.
pub const MAX_SUBSETS: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("vertex set does not span the ambient dimension")]
    NotFullDimensional,
    #[error("instance too large for brute-force enumeration: {0}")]
    TooLarge(String),
    #[error("point {0} is not a vertex of the hull of the input points")]
    PointNotVertex(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point {0} has {1} coordinates, expected {2}")]
    BadCoordinateCount(usize, usize, usize),
    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("supplied facet list does not match the enumerated facets")]
    FacetCrossCheckFailed,
    #[error("invalid facet index {0}")]
    BadFacetIndex(usize),
}

/// Vertex representation: a list of asserted vertices in Q^dim.
#[derive(Debug, Clone, PartialEq)]
pub struct VRep {
    pub dim: usize,
    pub points: Vec<Vec<Rational>>,
}

/// One facet inequality `<normal, x> <= offset` with jointly primitive
/// integer data, so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Facet {
    pub fn slack(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(self.offset.clone());
        for (a, x) in self.normal.iter().zip(point) {
            acc -= Rational::from_integer(a.clone()) * x;
        }
        acc
    }
}

/// Irredundant facet representation.
#[derive(Debug, Clone, PartialEq)]
pub struct HRep {
    pub dim: usize,
    pub facets: Vec<Facet>,
}

/// A polytope with mutually consistent vertex and facet representations.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    vrep: VRep,
    hrep: HRep,
}

/// Slack matrix with the vertex/facet indices labelling its rows/columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SlackMatrix {
    pub matrix: RatMatrix,
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<usize>,
}

impl SlackMatrix {
    /// Transpose with row and column labels swapped: a slack matrix of the
    /// polar polytope, up to the scaling freedom slack matrices carry anyway.
    pub fn polar(&self) -> SlackMatrix {
        SlackMatrix {
            matrix: self.matrix.transpose(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }
}

/// Steps through all k-subsets of 0..n in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// Affine rank of a point set (dimension of its affine hull).
fn affine_rank(points: &[Vec<Rational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs = Matrix::from_fn(points.len() - 1, base.len(), |i, j| {
        points[i + 1][j].clone() - base[j].clone()
    });
    rat_rank(&diffs)
}

/// Scales `(a, beta)` to the canonical jointly primitive integer form.
fn canonical_facet(normal: &[Rational], offset: &Rational) -> Facet {
    let mut l = offset.denom().clone();
    for a in normal {
        l = l.lcm(a.denom());
    }
    let mut ints: Vec<BigInt> = normal.iter().map(|a| a.numer() * (&l / a.denom())).collect();
    let mut off = offset.numer() * (&l / offset.denom());
    let mut g = off.abs();
    for v in &ints {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for v in &mut ints {
            *v /= &g;
        }
        off /= &g;
    }
    Facet { normal: ints, offset: off }
}

/// Brute-force facet enumeration: scan all dim-subsets of vertices spanning a
/// hyperplane, keep those supporting the polytope, and canonicalize.
pub fn facet_enumeration(vrep: &VRep) -> Result<HRep, PolytopeError> {
    let n = vrep.dim;
    let v = vrep.points.len();
    if n == 0 || n > MAX_DIM {
        return Err(PolytopeError::TooLarge(format!("dimension {n} (cap {MAX_DIM})")));
    }
    if v > MAX_VERTICES {
        return Err(PolytopeError::TooLarge(format!(
            "{v} vertices (cap {MAX_VERTICES})"
        )));
    }
    if binomial(v, n) > MAX_SUBSETS {
        return Err(PolytopeError::TooLarge(format!(
            "C({v},{n}) vertex subsets exceed the {MAX_SUBSETS} scan cap"
        )));
    }
    for (i, p) in vrep.points.iter().enumerate() {
        if p.len() != n {
            return Err(PolytopeError::BadCoordinateCount(i, p.len(), n));
        }
        for (k, q) in vrep.points.iter().enumerate().skip(i + 1) {
            if p == q {
                return Err(PolytopeError::DuplicatePoint(i, k));
            }
        }
    }
    if affine_rank(&vrep.points) != n {
        return Err(PolytopeError::NotFullDimensional);
    }

    let mut found: std::collections::BTreeSet<Facet> = std::collections::BTreeSet::new();
    for_each_combination(v, n, |subset| {
        // Hyperplane through the subset: kernel of the homogeneous system
        // [p_i | 1] (a, -beta)^T = 0, used only when it is one-dimensional.
        let homog = Matrix::from_fn(n, n + 1, |i, j| {
            if j < n {
                vrep.points[subset[i]][j].clone()
            } else {
                Rational::one()
            }
        });
        let kernel = field_kernel(&homog);
        if kernel.len() != 1 {
            return;
        }
        let a: Vec<Rational> = kernel[0][..n].to_vec();
        let beta = -kernel[0][n].clone();
        // Keep only supporting hyperplanes; orient so every point satisfies
        // <a, x> <= beta.
        let mut pos = false;
        let mut neg = false;
        for p in &vrep.points {
            let mut s = beta.clone();
            for (ai, xi) in a.iter().zip(p) {
                s -= ai * xi;
            }
            if s.is_positive() {
                pos = true;
            } else if s.is_negative() {
                neg = true;
            }
            if pos && neg {
                return;
            }
        }
        let facet = if neg {
            let flipped: Vec<Rational> = a.iter().map(|x| -x.clone()).collect();
            canonical_facet(&flipped, &-beta)
        } else {
            canonical_facet(&a, &beta)
        };
        found.insert(facet);
    });
    Ok(HRep {
        dim: n,
        facets: found.into_iter().collect(),
    })
}

impl Polytope {
    /// Builds a polytope from asserted vertices, enumerating facets and
    /// verifying that every input point really is a vertex of the hull.
    pub fn from_vertices(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self, PolytopeError> {
        let vrep = VRep { dim, points };
        let hrep = facet_enumeration(&vrep)?;
        // A point is a vertex iff its tight facet normals span R^dim.
        for (i, p) in vrep.points.iter().enumerate() {
            let tight: Vec<&Facet> = hrep.facets.iter().filter(|f| f.slack(p).is_zero()).collect();
            if tight.len() < dim {
                return Err(PolytopeError::PointNotVertex(i));
            }
            let normals = Matrix::from_fn(tight.len(), dim, |r, c| {
                Rational::from_integer(tight[r].normal[c].clone())
            });
            if rat_rank(&normals) != dim {
                return Err(PolytopeError::PointNotVertex(i));
            }
        }
        Ok(Self { vrep, hrep })
    }

    pub fn from_integer_vertices(dim: usize, points: &[&[i64]]) -> Result<Self, PolytopeError> {
        Self::from_vertices(
            dim,
            points
                .iter()
                .map(|p| p.iter().map(|&c| rational_from_i64(c)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.vrep.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vrep.points
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn facets(&self) -> &[Facet] {
        &self.hrep.facets
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    /// The v x f matrix of slacks of vertices against facet inequalities.
    /// Rows follow input vertex order; columns the canonical facet order.
    pub fn slack_matrix(&self) -> SlackMatrix {
        let matrix = Matrix::from_fn(self.vrep.points.len(), self.hrep.facets.len(), |i, j| {
            self.hrep.facets[j].slack(&self.vrep.points[i])
        });
        SlackMatrix {
            matrix,
            row_labels: (0..self.vrep.points.len()).collect(),
            col_labels: (0..self.hrep.facets.len()).collect(),
        }
    }

    pub fn centroid(&self) -> Vec<Rational> {
        let v = rational_from_i64(self.vrep.points.len() as i64);
        (0..self.dim())
            .map(|j| {
                let mut acc = Rational::zero();
                for p in &self.vrep.points {
                    acc += &p[j];
                }
                acc / v.clone()
            })
            .collect()
    }

    /// Pyramid: embeds the polytope at height 0 in one more dimension and
    /// adds an apex above the centroid.
    pub fn pyramid(&self, apex_height: &Rational) -> Result<Self, PolytopeError> {
        assert!(apex_height.is_positive(), "apex height must be positive");
        let n = self.dim();
        let mut points: Vec<Vec<Rational>> = self
            .vrep
            .points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.push(Rational::zero());
                q
            })
            .collect();
        let mut apex = self.centroid();
        apex.push(apex_height.clone());
        points.push(apex);
        Self::from_vertices(n + 1, points)
    }

    /// Bipyramid with apexes at heights +1 and -1 over the centroid.
    pub fn bipyramid(&self) -> Result<Self, PolytopeError> {
        let n = self.dim();
        let mut points: Vec<Vec<Rational>> = self
            .vrep
            .points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.push(Rational::zero());
                q
            })
            .collect();
        let centroid = self.centroid();
        for height in [1i64, -1] {
            let mut apex = centroid.clone();
            apex.push(rational_from_i64(height));
            points.push(apex);
        }
        Self::from_vertices(n + 1, points)
    }

    /// Vertex indices lying on the given facet.
    pub fn facet_vertices(&self, facet_index: usize) -> Result<Vec<usize>, PolytopeError> {
        let facet = self
            .hrep
            .facets
            .get(facet_index)
            .ok_or(PolytopeError::BadFacetIndex(facet_index))?;
        Ok(self
            .vrep
            .points
            .iter()
            .enumerate()
            .filter(|(_, p)| facet.slack(p).is_zero())
            .map(|(i, _)| i)
            .collect())
    }

    /// The facet as an (n-1)-dimensional polytope, in exact rational
    /// coordinates with respect to a row-reduced basis of its affine hull.
    pub fn facet_as_polytope(&self, facet_index: usize) -> Result<Self, PolytopeError> {
        let n = self.dim();
        let tight = self.facet_vertices(facet_index)?;
        let base = self.vrep.points[tight[0]].clone();
        let mut diffs = Matrix::from_fn(tight.len() - 1, n, |i, j| {
            self.vrep.points[tight[i + 1]][j].clone() - base[j].clone()
        });
        let pivots = field_rref(&mut diffs);
        let r = pivots.len();
        debug_assert_eq!(r, n - 1, "facet affine hull must have dimension n-1");
        // In reduced form the coordinates of a difference vector are just its
        // entries at the pivot columns.
        let coords: Vec<Vec<Rational>> = tight
            .iter()
            .map(|&vi| {
                pivots
                    .iter()
                    .map(|&p| self.vrep.points[vi][p].clone() - base[p].clone())
                    .collect()
            })
            .collect();
        Self::from_vertices(r, coords)
    }

    /// Polar polytope, after translating the centroid to the origin.
    pub fn polar_polytope(&self) -> Result<Self, PolytopeError> {
        let c = self.centroid();
        let points: Vec<Vec<Rational>> = self
            .hrep
            .facets
            .iter()
            .map(|f| {
                let mut shifted = Rational::from_integer(f.offset.clone());
                for (a, ci) in f.normal.iter().zip(&c) {
                    shifted -= Rational::from_integer(a.clone()) * ci;
                }
                // Centroid is interior, so each shifted offset is positive.
                f.normal
                    .iter()
                    .map(|a| Rational::from_integer(a.clone()) / shifted.clone())
                    .collect()
            })
            .collect();
        Self::from_vertices(self.dim(), points)
    }

    /// Cross-check a user-supplied facet list against the enumerated one
    /// (equality up to positive scaling, as unordered sets).
    pub fn cross_check_facets(&self, supplied: &[(Vec<Rational>, Rational)]) -> Result<(), PolytopeError> {
        if supplied.len() != self.hrep.facets.len() {
            return Err(PolytopeError::FacetCrossCheckFailed);
        }
        let canon: std::collections::BTreeSet<Facet> = supplied
            .iter()
            .map(|(a, b)| canonical_facet(a, b))
            .collect();
        let mine: std::collections::BTreeSet<Facet> = self.hrep.facets.iter().cloned().collect();
        if canon == mine {
            Ok(())
        } else {
            Err(PolytopeError::FacetCrossCheckFailed)
        }
    }
}

/// Equality of slack matrices up to positive column scaling and column
/// permutation (rows in fixed order). This is the equivalence slack matrices
/// are defined under.
pub fn slack_equal_up_to_column_scaling(a: &RatMatrix, b: &RatMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let cols = a.cols();
    let mut used = vec![false; cols];
    'outer: for ca in 0..cols {
        for cb in 0..cols {
            if used[cb] {
                continue;
            }
            if columns_proportional(a, ca, b, cb) {
                used[cb] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn columns_proportional(a: &RatMatrix, ca: usize, b: &RatMatrix, cb: usize) -> bool {
    let mut ratio: Option<Rational> = None;
    for i in 0..a.rows() {
        let x = a.get(i, ca);
        let y = b.get(i, cb);
        match (x.is_zero(), y.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let q = x / y;
                if q.is_negative() {
                    return false;
                }
                match &ratio {
                    None => ratio = Some(q),
                    Some(r) if *r == q => {}
                    Some(_) => return false,
                }
            }
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat_matrix_from_i64;
    use crate::num::ratio_of;

    fn unit_triangle() -> Polytope {
        Polytope::from_integer_vertices(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    pub(crate) fn pentagon() -> Polytope {
        Polytope::from_integer_vertices(2, &[&[0, 0], &[1, 0], &[2, 1], &[1, 2], &[0, 1]]).unwrap()
    }

    #[test]
    fn triangle_facets() {
        let t = unit_triangle();
        assert_eq!(t.facets().len(), 3);
        // x >= 0, y >= 0, x + y <= 1 in canonical integer form.
        let expected: Vec<(Vec<i64>, i64)> =
            vec![(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 1], 1)];
        for (normal, offset) in expected {
            assert!(t.facets().iter().any(|f| {
                f.normal == normal.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
                    && f.offset == BigInt::from(offset)
            }));
        }
    }

    #[test]
    fn segment_slack() {
        let seg = Polytope::from_integer_vertices(1, &[&[0], &[1]]).unwrap();
        let s = seg.slack_matrix();
        let expect_a = rat_matrix_from_i64(&[&[0, 1], &[1, 0]]);
        let expect_b = rat_matrix_from_i64(&[&[1, 0], &[0, 1]]);
        assert!(s.matrix == expect_a || s.matrix == expect_b);
    }

    #[test]
    fn pentagon_slack_matches_reference() {
        let p = pentagon();
        let s = p.slack_matrix();
        assert_eq!((s.matrix.rows(), s.matrix.cols()), (5, 5));
        assert_eq!(rat_rank(&s.matrix), 3);
        let reference = rat_matrix_from_i64(&[
            &[0, 4, 12, 4, 0],
            &[0, 0, 8, 8, 2],
            &[2, 0, 0, 8, 4],
            &[4, 8, 0, 0, 2],
            &[2, 8, 8, 0, 0],
        ]);
        assert!(slack_equal_up_to_column_scaling(&reference, &s.matrix));
    }

    #[test]
    fn octahedron_slack_matches_reference() {
        let p = Polytope::from_integer_vertices(
            3,
            &[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, -1], &[1, 2, 1]],
        )
        .unwrap();
        assert_eq!(p.facets().len(), 8);
        let s = p.slack_matrix();
        assert_eq!(rat_rank(&s.matrix), 4);
        let reference = rat_matrix_from_i64(&[
            &[0, 0, 0, 0, 2, 2, 2, 2],
            &[0, 2, 0, 2, 0, 0, 2, 2],
            &[2, 0, 2, 0, 2, 2, 0, 0],
            &[2, 2, 2, 2, 0, 0, 0, 0],
            &[0, 2, 3, 0, 0, 2, 1, 0],
            &[3, 0, 0, 2, 2, 0, 0, 1],
        ]);
        assert!(slack_equal_up_to_column_scaling(&reference, &s.matrix));
    }

    #[test]
    fn prism_slack_matches_reference() {
        let p = Polytope::from_integer_vertices(
            3,
            &[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[1, 2, 0],
                &[0, 0, 1],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 2, 1],
            ],
        )
        .unwrap();
        let s = p.slack_matrix();
        let reference = rat_matrix_from_i64(&[
            &[0, 0, 2, 1, 0, 1],
            &[1, 0, 0, 2, 0, 1],
            &[0, 1, 2, 0, 0, 1],
            &[1, 2, 0, 0, 0, 1],
            &[0, 0, 2, 1, 1, 0],
            &[1, 0, 0, 2, 1, 0],
            &[0, 1, 2, 0, 1, 0],
            &[1, 2, 0, 0, 1, 0],
        ]);
        assert!(slack_equal_up_to_column_scaling(&reference, &s.matrix));
    }

    #[test]
    fn interior_point_rejected() {
        let err = Polytope::from_vertices(
            2,
            vec![
                vec![ratio_of(0, 1), ratio_of(0, 1)],
                vec![ratio_of(1, 1), ratio_of(0, 1)],
                vec![ratio_of(0, 1), ratio_of(1, 1)],
                vec![ratio_of(1, 4), ratio_of(1, 4)],
            ],
        )
        .unwrap_err();
        assert_eq!(err, PolytopeError::PointNotVertex(3));
    }

    #[test]
    fn flat_input_rejected() {
        let err = Polytope::from_integer_vertices(2, &[&[0, 0], &[1, 1], &[2, 2]]).unwrap_err();
        assert_eq!(err, PolytopeError::NotFullDimensional);
    }

    #[test]
    fn pyramid_over_square_counts() {
        let square =
            Polytope::from_integer_vertices(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap();
        let pyr = square.pyramid(&ratio_of(1, 1)).unwrap();
        assert_eq!(pyr.vertices().len(), 5);
        assert_eq!(pyr.facets().len(), 5);
        let tri = Polytope::from_integer_vertices(1, &[&[0], &[1]])
            .unwrap()
            .pyramid(&ratio_of(1, 1))
            .unwrap();
        assert_eq!((tri.vertices().len(), tri.facets().len()), (3, 3));
    }

    #[test]
    fn bipyramid_over_triangle_is_bisimplex() {
        let bi = unit_triangle().bipyramid().unwrap();
        assert_eq!(bi.vertices().len(), 5);
        assert_eq!(bi.facets().len(), 6);
        let quad = Polytope::from_integer_vertices(1, &[&[0], &[1]])
            .unwrap()
            .bipyramid()
            .unwrap();
        assert_eq!((quad.vertices().len(), quad.facets().len()), (4, 4));
    }

    #[test]
    fn facet_as_polytope_cube_face_is_square() {
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
        assert_eq!(cube.facets().len(), 6);
        for j in 0..6 {
            let face = cube.facet_as_polytope(j).unwrap();
            assert_eq!(face.dim(), 2);
            assert_eq!(face.vertices().len(), 4);
            assert_eq!(face.facets().len(), 4);
        }
        let pent_edge = pentagon().facet_as_polytope(0).unwrap();
        assert_eq!(pent_edge.dim(), 1);
        assert_eq!(pent_edge.vertices().len(), 2);
    }

    #[test]
    fn polar_round_trip_counts() {
        let cube = Polytope::from_integer_vertices(
            3,
            &[
                &[0, 0, 0],
                &[2, 0, 0],
                &[0, 2, 0],
                &[2, 2, 0],
                &[0, 0, 2],
                &[2, 0, 2],
                &[0, 2, 2],
                &[2, 2, 2],
            ],
        )
        .unwrap();
        let polar = cube.polar_polytope().unwrap();
        assert_eq!(polar.vertices().len(), 6);
        assert_eq!(polar.facets().len(), 8);
        let s = cube.slack_matrix();
        assert_eq!(s.polar().polar(), s);
    }

    #[test]
    fn pyramid_slack_has_block_form() {
        let p = pentagon();
        let base_slack = p.slack_matrix().matrix;
        let pyr = p.pyramid(&ratio_of(1, 1)).unwrap();
        let s = pyr.slack_matrix().matrix;
        assert_eq!((s.rows(), s.cols()), (6, 6));
        // The apex row has exactly one nonzero; its column is zero elsewhere;
        // deleting both leaves a column-rescaled copy of the base slack.
        let apex = 5;
        let nz: Vec<usize> = (0..6).filter(|&j| !s.get(apex, j).is_zero()).collect();
        assert_eq!(nz.len(), 1);
        let base_col = nz[0];
        for i in 0..5 {
            assert!(s.get(i, base_col).is_zero());
        }
        let rows: Vec<usize> = (0..5).collect();
        let cols: Vec<usize> = (0..6).filter(|&j| j != base_col).collect();
        let inner = s.submatrix(&rows, &cols);
        assert!(slack_equal_up_to_column_scaling(&base_slack, &inner));
    }
}
