//! Geometric classifiers for polytopes of minimal psd rank: 2-level
//! detection, 0/1 scalability, the polygon criterion, biplanarity of
//! octahedra and cuboids, the full 3-dimensional classification, and the
//! double-simplex obstruction.

use crate::matrix::{field_kernel, rat_rank, Matrix, RatMatrix};
use crate::num::{rational_from_i64, Rational};
use crate::polytope::{Polytope, PolytopeError, SlackMatrix};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("polytope is not a combinatorial octahedron")]
    NotOctahedron,
    #[error("parameters do not produce a combinatorial octahedron: {0}")]
    DegenerateParams(String),
    #[error(transparent)]
    Geometry(#[from] PolytopeError),
}

/// Combinatorial tags of 3-polytopes that can have minimal psd rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tag3D {
    Simplex,
    QuadPyramid,
    Bisimplex,
    TriangularPrism,
    Octahedron,
    Cuboid,
    Other,
}

/// Degree and facet-size counts backing a 3-polytope tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombType3D {
    pub tag: Tag3D,
    pub deg3_vertices: usize,
    pub deg4_vertices: usize,
    pub tri_facets: usize,
    pub quad_facets: usize,
}

/// Classification outcome with the minimality verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict3D {
    pub comb: CombType3D,
    pub minimal: bool,
    /// Present for octahedra and cuboids, where minimality is the
    /// biplanarity of the (polar) octahedron.
    pub biplanar: Option<bool>,
}

/// 0/1 column scaling of a slack matrix, when one exists: each column's
/// nonzero entries must agree, and the common value divides out.
pub fn is_two_level(s: &SlackMatrix) -> Option<RatMatrix> {
    s.matrix.uniform_column_scaling()
}

/// Positive row and column scalings turning a nonnegative matrix into a 0/1
/// matrix, found by propagating forced scalings along a spanning forest of
/// the support graph and checking the remaining (cycle-closing) entries.
pub fn scaling_to_01(m: &RatMatrix) -> Option<(Vec<Rational>, Vec<Rational>)> {
    if !m.is_nonnegative() {
        return None;
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut row_scale: Vec<Option<Rational>> = vec![None; rows];
    let mut col_scale: Vec<Option<Rational>> = vec![None; cols];
    // BFS over the bipartite support graph; nodes 0..rows are rows.
    for start in 0..rows {
        if row_scale[start].is_some() {
            continue;
        }
        row_scale[start] = Some(Rational::one());
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            if node < rows {
                let i = node;
                let r = row_scale[i].clone().expect("queued rows are scaled");
                for j in 0..cols {
                    if m.get(i, j).is_zero() || col_scale[j].is_some() {
                        continue;
                    }
                    col_scale[j] = Some((r.clone() * m.get(i, j)).recip());
                    queue.push_back(rows + j);
                }
            } else {
                let j = node - rows;
                let c = col_scale[j].clone().expect("queued columns are scaled");
                for i in 0..rows {
                    if m.get(i, j).is_zero() || row_scale[i].is_some() {
                        continue;
                    }
                    row_scale[i] = Some((c.clone() * m.get(i, j)).recip());
                    queue.push_back(i);
                }
            }
        }
    }
    let row_scale: Vec<Rational> =
        row_scale.into_iter().map(|r| r.unwrap_or_else(Rational::one)).collect();
    let col_scale: Vec<Rational> = col_scale
        .into_iter()
        .map(|c| c.unwrap_or_else(Rational::one))
        .collect();
    for (i, j, v) in m.iter() {
        if v.is_zero() {
            continue;
        }
        if &row_scale[i] * v * &col_scale[j] != Rational::one() {
            return None;
        }
    }
    Some((row_scale, col_scale))
}

/// Polygons have minimal psd rank exactly when they have at most 4 vertices.
pub fn polygon_minimal(p: &Polytope) -> Result<bool, ClassifyError> {
    if p.dim() != 2 {
        return Err(ClassifyError::WrongDimension { expected: 2, got: p.dim() });
    }
    Ok(p.vertices().len() <= 4)
}

/// Vertex-facet incidence from the slack zero pattern.
fn incidence(p: &Polytope) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let s = p.slack_matrix();
    let (v, f) = (s.matrix.rows(), s.matrix.cols());
    let mut vertex_facets = vec![Vec::new(); v];
    let mut facet_vertices = vec![Vec::new(); f];
    for (i, j, val) in s.matrix.iter() {
        if val.is_zero() {
            vertex_facets[i].push(j);
            facet_vertices[j].push(i);
        }
    }
    (vertex_facets, facet_vertices)
}

fn comb_type(p: &Polytope) -> CombType3D {
    let (vertex_facets, facet_vertices) = incidence(p);
    let v = vertex_facets.len();
    let f = facet_vertices.len();
    // For a 3-polytope the facets around a vertex alternate with its edges,
    // so vertex degree equals the number of incident facets.
    let deg3 = vertex_facets.iter().filter(|s| s.len() == 3).count();
    let deg4 = vertex_facets.iter().filter(|s| s.len() == 4).count();
    let tri = facet_vertices.iter().filter(|s| s.len() == 3).count();
    let quad = facet_vertices.iter().filter(|s| s.len() == 4).count();
    let all_small = deg3 + deg4 == v && tri + quad == f;
    let tag = if !all_small {
        Tag3D::Other
    } else if v == 4 && f == 4 {
        Tag3D::Simplex
    } else if v == 5 && f == 5 && tri == 4 && quad == 1 {
        Tag3D::QuadPyramid
    } else if v == 5 && f == 6 && tri == 6 {
        Tag3D::Bisimplex
    } else if v == 6 && f == 5 && tri == 2 && quad == 3 && deg3 == 6 {
        Tag3D::TriangularPrism
    } else if v == 6 && f == 8 && tri == 8 && deg4 == 6 {
        Tag3D::Octahedron
    } else if v == 8 && f == 6 && quad == 6 && deg3 == 8 {
        Tag3D::Cuboid
    } else {
        Tag3D::Other
    };
    CombType3D {
        tag,
        deg3_vertices: deg3,
        deg4_vertices: deg4,
        tri_facets: tri,
        quad_facets: quad,
    }
}

fn coplanar(points: &[&Vec<Rational>]) -> bool {
    debug_assert_eq!(points.len(), 4);
    let diffs = Matrix::from_fn(3, 3, |i, j| points[i + 1][j].clone() - points[0][j].clone());
    rat_rank(&diffs) <= 2
}

/// Biplanarity of a combinatorial octahedron: at least two of the three
/// equatorial vertex quadruples (complements of the antipodal pairs) are
/// coplanar, decided by exact determinants.
pub fn is_biplanar_octahedron(p: &Polytope) -> Result<bool, ClassifyError> {
    if p.dim() != 3 {
        return Err(ClassifyError::WrongDimension { expected: 3, got: p.dim() });
    }
    if comb_type(p).tag != Tag3D::Octahedron {
        return Err(ClassifyError::NotOctahedron);
    }
    let (vertex_facets, _) = incidence(p);
    // Antipodal pairs share no facet; an octahedron has exactly three.
    let mut pairs = Vec::new();
    for u in 0..6 {
        for w in (u + 1)..6 {
            let disjoint = vertex_facets[u].iter().all(|f| !vertex_facets[w].contains(f));
            if disjoint {
                pairs.push((u, w));
            }
        }
    }
    if pairs.len() != 3 {
        return Err(ClassifyError::NotOctahedron);
    }
    let mut planar_count = 0;
    for &(u, w) in &pairs {
        let quad: Vec<&Vec<Rational>> = (0..6)
            .filter(|&i| i != u && i != w)
            .map(|i| &p.vertices()[i])
            .collect();
        if coplanar(&quad) {
            planar_count += 1;
        }
    }
    Ok(planar_count >= 2)
}

/// Parameters pinning an octahedron with equator (0,0,0), (1,0,0), (0,1,0),
/// (a,b,0) and apexes z (above) and w (below).
#[derive(Debug, Clone, PartialEq)]
pub struct OctahedronParams {
    pub a: Rational,
    pub b: Rational,
    pub z: [Rational; 3],
    pub w: [Rational; 3],
}

impl OctahedronParams {
    pub fn alpha(&self) -> Rational {
        self.z[2].clone() - self.w[2].clone()
    }

    pub fn beta(&self) -> Rational {
        &self.w[0] * &self.z[2] - &self.z[0] * &self.w[2]
    }

    pub fn gamma(&self) -> Rational {
        &self.w[1] * &self.z[2] - &self.z[1] * &self.w[2]
    }

    /// Coplanarity of (0,0,0), (a,b,0), z, w.
    pub fn first_diagonal_planar(&self) -> bool {
        &self.b * &self.beta() == &self.a * &self.gamma()
    }

    /// Coplanarity of (1,0,0), (0,1,0), z, w.
    pub fn second_diagonal_planar(&self) -> bool {
        self.alpha() == self.beta() + self.gamma()
    }

    /// The equator is always planar here, so biplanarity needs one of the
    /// two diagonal quadruples to be coplanar as well.
    pub fn is_biplanar(&self) -> bool {
        self.first_diagonal_planar() || self.second_diagonal_planar()
    }

    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let zero = Rational::zero;
        vec![
            vec![zero(), zero(), zero()],
            vec![rational_from_i64(1), zero(), zero()],
            vec![zero(), rational_from_i64(1), zero()],
            vec![self.a.clone(), self.b.clone(), zero()],
            self.z.to_vec(),
            self.w.to_vec(),
        ]
    }
}

/// Builds the polytope from octahedron parameters, verifying the
/// combinatorial type.
pub fn build_octahedron(params: &OctahedronParams) -> Result<Polytope, ClassifyError> {
    if !params.z[2].is_positive() || !params.w[2].is_negative() {
        return Err(ClassifyError::DegenerateParams(
            "apexes must satisfy z3 > 0 and w3 < 0".into(),
        ));
    }
    if params.a.clone() + params.b.clone() <= Rational::one() {
        return Err(ClassifyError::DegenerateParams("need a + b > 1".into()));
    }
    let p = Polytope::from_vertices(3, params.vertices())
        .map_err(|e| ClassifyError::DegenerateParams(e.to_string()))?;
    if comb_type(&p).tag != Tag3D::Octahedron {
        return Err(ClassifyError::DegenerateParams(
            "vertices do not form a combinatorial octahedron".into(),
        ));
    }
    Ok(p)
}

/// Full classification of a 3-polytope with the minimal-psd-rank verdict:
/// simplices, quadrilateral pyramids, bisimplices and triangular prisms
/// always; octahedra and cuboids exactly when biplanar.
pub fn classify_3d(p: &Polytope) -> Result<Verdict3D, ClassifyError> {
    if p.dim() != 3 {
        return Err(ClassifyError::WrongDimension { expected: 3, got: p.dim() });
    }
    let comb = comb_type(p);
    let (minimal, biplanar) = match comb.tag {
        Tag3D::Simplex | Tag3D::QuadPyramid | Tag3D::Bisimplex | Tag3D::TriangularPrism => {
            (true, None)
        }
        Tag3D::Octahedron => {
            let bp = is_biplanar_octahedron(p)?;
            (bp, Some(bp))
        }
        Tag3D::Cuboid => {
            // Psd rank is a polar invariant, so a cuboid is minimal exactly
            // when its polar octahedron is biplanar.
            let polar = p.polar_polytope()?;
            let bp = is_biplanar_octahedron(&polar)?;
            (bp, Some(bp))
        }
        Tag3D::Other => (false, None),
    };
    Ok(Verdict3D { comb, minimal, biplanar })
}

/// Left-kernel analysis of the canonical double-simplex support matrix.
#[derive(Debug, Clone, Serialize)]
pub struct DoubleSimplexReport {
    pub kernel_dim: usize,
    pub kernel_generator: Vec<String>,
    /// True when the kernel generator is not orthogonal to the all-ones
    /// vector, which rules out a 2-level realization (all n except n = 2).
    pub obstructed: bool,
}

/// The 0/1 support pattern of any double-simplex slack matrix, with the two
/// apex rows first and last.
pub fn double_simplex_support(n: usize) -> RatMatrix {
    assert!(n >= 2);
    Matrix::from_fn(n + 2, 2 * n, |i, j| {
        let one = Rational::one();
        if i == 0 {
            if j >= n {
                return one;
            }
        } else if i <= n {
            if j == i - 1 || j == n + i - 1 {
                return one;
            }
        } else if j < n {
            return one;
        }
        Rational::zero()
    })
}

/// Computes the left kernel of the double-simplex support matrix; its
/// one-dimensional generator fails orthogonality to the all-ones vector in
/// every dimension except the plane, obstructing 2-level realizations.
pub fn double_simplex_obstruction(n: usize) -> DoubleSimplexReport {
    assert!(n >= 2, "double simplices need dimension at least 2");
    let m = double_simplex_support(n);
    let kernel = field_kernel(&m.transpose());
    let kernel_dim = kernel.len();
    let mut generator: Vec<Rational> = kernel.first().cloned().unwrap_or_default();
    if let Some(first_nonzero) = generator.iter().find(|v| !v.is_zero()).cloned() {
        for v in &mut generator {
            *v = v.clone() / first_nonzero.clone();
        }
    }
    let sum: Rational = generator.iter().cloned().sum();
    DoubleSimplexReport {
        kernel_dim,
        kernel_generator: generator.iter().map(crate::num::format_rational).collect(),
        obstructed: !sum.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat_matrix_from_i64;
    use crate::num::ratio_of;

    fn cube() -> Polytope {
        Polytope::from_integer_vertices(
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
        .unwrap()
    }

    fn regular_octahedron() -> Polytope {
        Polytope::from_integer_vertices(
            3,
            &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        )
        .unwrap()
    }

    fn skew_octahedron() -> Polytope {
        Polytope::from_integer_vertices(
            3,
            &[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, -1], &[1, 2, 1]],
        )
        .unwrap()
    }

    #[test]
    fn two_level_cube_and_octahedron() {
        assert!(is_two_level(&cube().slack_matrix()).is_some());
        assert!(is_two_level(&regular_octahedron().slack_matrix()).is_some());
        let pentagon = Polytope::from_integer_vertices(
            2,
            &[&[0, 0], &[1, 0], &[2, 1], &[1, 2], &[0, 1]],
        )
        .unwrap();
        assert!(is_two_level(&pentagon.slack_matrix()).is_none());
    }

    #[test]
    fn scaling_examples() {
        let zero_one = rat_matrix_from_i64(&[&[1, 0], &[1, 1]]);
        let (r, c) = scaling_to_01(&zero_one).unwrap();
        assert!(r.iter().all(|v| v == &Rational::one()));
        assert!(c.iter().all(|v| v == &Rational::one()));

        // Rescalable: rows/columns can absorb the 2 and 3.
        let m = rat_matrix_from_i64(&[&[2, 0], &[6, 3]]);
        let (r, c) = scaling_to_01(&m).unwrap();
        for (i, j, v) in m.iter() {
            if !v.is_zero() {
                assert_eq!(&r[i] * v * &c[j], Rational::one());
            }
        }

        // A bad 2 x 2 cycle: product around the cycle differs from 1.
        let bad = rat_matrix_from_i64(&[&[1, 1], &[1, 2]]);
        assert!(scaling_to_01(&bad).is_none());
    }

    #[test]
    fn prism_not_scalable_bisimplex_scalable() {
        let prism = Polytope::from_integer_vertices(
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
        assert!(scaling_to_01(&prism.slack_matrix().matrix).is_none());

        let triangle =
            Polytope::from_integer_vertices(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let bisimplex = triangle.bipyramid().unwrap();
        assert!(scaling_to_01(&bisimplex.slack_matrix().matrix).is_some());
    }

    #[test]
    fn polygon_minimality() {
        let tri = Polytope::from_integer_vertices(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(polygon_minimal(&tri).unwrap());
        let quad =
            Polytope::from_integer_vertices(2, &[&[0, 0], &[3, 0], &[4, 2], &[0, 1]]).unwrap();
        assert!(polygon_minimal(&quad).unwrap());
        let pent = Polytope::from_integer_vertices(
            2,
            &[&[0, 0], &[1, 0], &[2, 1], &[1, 2], &[0, 1]],
        )
        .unwrap();
        assert!(!polygon_minimal(&pent).unwrap());
        assert!(polygon_minimal(&cube()).is_err());
    }

    #[test]
    fn biplanarity_of_fixtures() {
        assert!(is_biplanar_octahedron(&regular_octahedron()).unwrap());
        assert!(!is_biplanar_octahedron(&skew_octahedron()).unwrap());
        assert!(matches!(
            is_biplanar_octahedron(&cube()),
            Err(ClassifyError::NotOctahedron)
        ));
    }

    #[test]
    fn octahedron_params_conditions() {
        // Symmetric apexes over the unit square: both diagonal conditions hold.
        let p = OctahedronParams {
            a: ratio_of(1, 1),
            b: ratio_of(1, 1),
            z: [ratio_of(1, 2), ratio_of(1, 2), ratio_of(1, 1)],
            w: [ratio_of(1, 2), ratio_of(1, 2), ratio_of(-1, 1)],
        };
        assert!(p.first_diagonal_planar());
        assert!(p.second_diagonal_planar());
        let poly = build_octahedron(&p).unwrap();
        assert!(is_biplanar_octahedron(&poly).unwrap());
    }

    #[test]
    fn classify_fixture_polytopes() {
        let v = classify_3d(&cube()).unwrap();
        assert_eq!(v.comb.tag, Tag3D::Cuboid);
        assert!(v.minimal);

        let v = classify_3d(&regular_octahedron()).unwrap();
        assert_eq!(v.comb.tag, Tag3D::Octahedron);
        assert!(v.minimal);

        let v = classify_3d(&skew_octahedron()).unwrap();
        assert_eq!(v.comb.tag, Tag3D::Octahedron);
        assert!(!v.minimal);
        assert_eq!(v.biplanar, Some(false));

        let simplex =
            Polytope::from_integer_vertices(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
                .unwrap();
        assert_eq!(classify_3d(&simplex).unwrap().comb.tag, Tag3D::Simplex);
        assert!(classify_3d(&simplex).unwrap().minimal);

        let triangle =
            Polytope::from_integer_vertices(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let bisimplex = triangle.bipyramid().unwrap();
        let v = classify_3d(&bisimplex).unwrap();
        assert_eq!(v.comb.tag, Tag3D::Bisimplex);
        assert!(v.minimal);

        let square =
            Polytope::from_integer_vertices(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap();
        let pyramid = square.pyramid(&ratio_of(1, 1)).unwrap();
        let v = classify_3d(&pyramid).unwrap();
        assert_eq!(v.comb.tag, Tag3D::QuadPyramid);
        assert!(v.minimal);

        let prism = Polytope::from_integer_vertices(
            3,
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]],
        )
        .unwrap();
        let v = classify_3d(&prism).unwrap();
        assert_eq!(v.comb.tag, Tag3D::TriangularPrism);
        assert!(v.minimal);
    }

    #[test]
    fn hexagonal_prism_is_other() {
        // A hexagonal facet excludes minimal psd rank.
        let hexagon = Polytope::from_integer_vertices(
            2,
            &[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]],
        )
        .unwrap();
        let mut верts: Vec<Vec<Rational>> = Vec::new();
        for h in [0i64, 1] {
            for v in hexagon.vertices() {
                let mut q = v.clone();
                q.push(rational_from_i64(h));
                верts.push(q);
            }
        }
        let prism = Polytope::from_vertices(3, верts).unwrap();
        let v = classify_3d(&prism).unwrap();
        assert_eq!(v.comb.tag, Tag3D::Other);
        assert!(!v.minimal);
    }

    #[test]
    fn double_simplex_reports() {
        let r2 = double_simplex_obstruction(2);
        assert_eq!(r2.kernel_dim, 1);
        assert!(!r2.obstructed);

        let r3 = double_simplex_obstruction(3);
        assert_eq!(r3.kernel_dim, 1);
        assert_eq!(r3.kernel_generator, vec!["1", "-1", "-1", "-1", "1"]);
        assert!(r3.obstructed);

        let r5 = double_simplex_obstruction(5);
        assert_eq!(r5.kernel_dim, 1);
        assert!(r5.obstructed);
    }
}
