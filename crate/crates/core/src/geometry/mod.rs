//! Exact convex hulls, support data, and the finite direction machinery behind
//! the hyperplane sweep tests.
//!
//! Hulls are limited to ambient dimension three, which covers every bundled
//! example; higher dimensions error cleanly. Degenerate point sets (affine
//! dimension below the ambient one) are represented with their affine span and
//! have no strict interior.

mod directions;
mod hull;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use directions::{
    arrangement_normals, representative_directions, sign_vector, DirectionSet,
};

use crate::algebra::{Exponent, Rational};
use crate::error::{CrnError, Result};
use hull::{affine_basis, cross3, dot, monotone_chain, primitive_integer, sub};

/// Maximum ambient dimension for hulls and sweeps.
pub const MAX_DIM: usize = 3;

/// One bounding halfspace of a full-dimensional polytope, written with an
/// inward normal: points inside satisfy `normal . x >= offset`, with equality
/// exactly on the facet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Facet {
    /// Exact evaluation of `normal . p - offset`.
    pub fn slack(&self, p: &[Rational]) -> Rational {
        let d: Rational = self
            .normal
            .iter()
            .zip(p)
            .map(|(n, x)| Rational::from_integer(n.clone()) * x)
            .sum();
        d - self.offset.clone()
    }
}

/// An exact convex hull: extreme points, bounding facets when the hull is
/// full-dimensional, and the affine span of the point set otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Facet>,
    span_basis: Vec<Vec<Rational>>,
}

impl Polytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine span of the input points.
    pub fn affine_dim(&self) -> usize {
        self.span_basis.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.ambient_dim
    }

    /// Extreme points in a deterministic order.
    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Bounding facets; empty unless the hull is full-dimensional.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// A basis of the direction space of the affine span.
    pub fn span_basis(&self) -> &[Vec<Rational>] {
        &self.span_basis
    }

    /// JSON vertex/facet dump for external plotting.
    pub fn to_json(&self) -> String {
        use crate::algebra::format_rational;
        let vertices: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect();
        let facets: Vec<serde_json::Value> = self
            .facets
            .iter()
            .map(|f| {
                serde_json::json!({
                    "normal": f.normal.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
                    "offset": format_rational(&f.offset),
                })
            })
            .collect();
        let value = serde_json::json!({
            "ambient_dim": self.ambient_dim,
            "affine_dim": self.affine_dim(),
            "vertices": vertices,
            "facets": facets,
        });
        serde_json::to_string_pretty(&value).expect("polytope serializes")
    }
}

/// Exact convex hull of rational points in dimension one to three.
pub fn convex_hull(points: &[Vec<Rational>]) -> Result<Polytope> {
    if points.is_empty() {
        return Err(CrnError::InvalidNetwork("convex hull of an empty point set".into()));
    }
    let n = points[0].len();
    if n == 0 || n > MAX_DIM {
        return Err(CrnError::UnsupportedDimension { dim: n, max: MAX_DIM });
    }
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(CrnError::DimensionMismatch { left: n, right: p.len() });
    }

    // Deduplicate while keeping the first occurrence order.
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    for p in points {
        if !pts.contains(p) {
            pts.push(p.clone());
        }
    }

    let basis = affine_basis(&pts);
    let d = basis.len();

    let vertices = match (n, d) {
        (_, 0) => vec![pts[0].clone()],
        (_, 1) => segment_vertices(&pts, &basis[0]),
        (2, 2) => {
            let planar: Vec<(Rational, Rational)> =
                pts.iter().map(|p| (p[0].clone(), p[1].clone())).collect();
            monotone_chain(&planar).into_iter().map(|i| pts[i].clone()).collect()
        }
        (3, 2) => planar_vertices_in_space(&pts, &basis),
        (3, 3) => hull3_vertices(&pts),
        _ => unreachable!("affine dimension exceeds ambient dimension"),
    };

    let facets = if d == n {
        match n {
            1 => interval_facets(&vertices),
            2 => polygon_facets(&vertices),
            3 => hull3_facets(&pts),
            _ => unreachable!(),
        }
    } else {
        Vec::new()
    };

    let poly = Polytope { ambient_dim: n, vertices, facets, span_basis: basis };
    debug_assert!(poly.vertices.iter().all(|v| {
        poly.facets.iter().all(|f| !f.slack(v).is_negative())
    }));
    Ok(poly)
}

fn segment_vertices(pts: &[Vec<Rational>], dir: &[Rational]) -> Vec<Vec<Rational>> {
    let score = |p: &Vec<Rational>| dot(&sub(p, &pts[0]), dir);
    let lo = pts.iter().min_by_key(|p| score(p)).expect("nonempty").clone();
    let hi = pts.iter().max_by_key(|p| score(p)).expect("nonempty").clone();
    vec![lo, hi]
}

fn interval_facets(vertices: &[Vec<Rational>]) -> Vec<Facet> {
    let (lo, hi) = (&vertices[0][0], &vertices[1][0]);
    vec![
        Facet { normal: vec![BigInt::from(1)], offset: lo.clone() },
        Facet { normal: vec![BigInt::from(-1)], offset: -hi.clone() },
    ]
}

/// Facets of a counterclockwise planar polygon: each edge contributes the
/// inward (left) normal.
fn polygon_facets(vertices: &[Vec<Rational>]) -> Vec<Facet> {
    let m = vertices.len();
    let mut facets = Vec::with_capacity(m);
    for i in 0..m {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % m];
        let d = sub(b, a);
        let inward = vec![-d[1].clone(), d[0].clone()];
        let normal = primitive_integer(&inward).expect("polygon edges are nondegenerate");
        let offset: Rational = normal
            .iter()
            .zip(a)
            .map(|(n, x)| Rational::from_integer(n.clone()) * x)
            .sum();
        facets.push(Facet { normal, offset });
    }
    facets
}

/// Extreme points of a planar point set embedded in three dimensions.
fn planar_vertices_in_space(pts: &[Vec<Rational>], basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let normal = cross3(&basis[0], &basis[1]);
    let drop = (0..3).find(|&k| !normal[k].is_zero()).expect("plane normal is nonzero");
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let planar: Vec<(Rational, Rational)> = pts
        .iter()
        .map(|p| (p[keep[0]].clone(), p[keep[1]].clone()))
        .collect();
    monotone_chain(&planar).into_iter().map(|i| pts[i].clone()).collect()
}

fn hull3_triangles_grouped(
    pts: &[Vec<Rational>],
) -> std::collections::BTreeMap<(Vec<BigInt>, Rational), Vec<usize>> {
    let triangles = hull::incremental_hull3(pts);
    let mut groups: std::collections::BTreeMap<(Vec<BigInt>, Rational), Vec<usize>> =
        std::collections::BTreeMap::new();
    for t in triangles {
        let a = &pts[t[0]];
        let outward = cross3(&sub(&pts[t[1]], a), &sub(&pts[t[2]], a));
        let inward: Vec<Rational> = outward.iter().map(|c| -c.clone()).collect();
        let normal = primitive_integer(&inward).expect("hull triangles are nondegenerate");
        let offset: Rational = normal
            .iter()
            .zip(a)
            .map(|(n, x)| Rational::from_integer(n.clone()) * x)
            .sum();
        groups.entry((normal, offset)).or_default().extend_from_slice(&t);
    }
    groups
}

/// True extreme points of each facet polygon: corners of the coplanar triangle
/// group, reduced by an in-plane hull so collinear mid-edge points drop out.
fn facet_polygon(pts: &[Vec<Rational>], normal: &[BigInt], corners: &[usize]) -> Vec<usize> {
    let mut unique: Vec<usize> = Vec::new();
    for &c in corners {
        if !unique.contains(&c) {
            unique.push(c);
        }
    }
    let drop = (0..3).find(|&k| !normal[k].is_zero()).expect("facet normal is nonzero");
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let planar: Vec<(Rational, Rational)> = unique
        .iter()
        .map(|&i| (pts[i][keep[0]].clone(), pts[i][keep[1]].clone()))
        .collect();
    monotone_chain(&planar).into_iter().map(|i| unique[i]).collect()
}

fn hull3_vertices(pts: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let groups = hull3_triangles_grouped(pts);
    let mut vertex_ids: Vec<usize> = Vec::new();
    for ((normal, _), corners) in &groups {
        for id in facet_polygon(pts, normal, corners) {
            if !vertex_ids.contains(&id) {
                vertex_ids.push(id);
            }
        }
    }
    let mut vertices: Vec<Vec<Rational>> = vertex_ids.into_iter().map(|i| pts[i].clone()).collect();
    vertices.sort();
    vertices
}

fn hull3_facets(pts: &[Vec<Rational>]) -> Vec<Facet> {
    hull3_triangles_grouped(pts)
        .into_iter()
        .map(|((normal, offset), _)| Facet { normal, offset })
        .collect()
}

/// Strict interiority: true iff the hull is full-dimensional and `p` satisfies
/// every facet inequality strictly. Lower-dimensional hulls have no interior.
pub fn is_strictly_interior(poly: &Polytope, p: &[Rational]) -> bool {
    if p.len() != poly.ambient_dim() || !poly.is_full_dimensional() {
        return false;
    }
    poly.facets.iter().all(|f| f.slack(p).is_positive())
}

/// Non-strict membership in a full-dimensional hull.
pub fn contains(poly: &Polytope, p: &[Rational]) -> bool {
    if p.len() != poly.ambient_dim() || !poly.is_full_dimensional() {
        return false;
    }
    poly.facets.iter().all(|f| !f.slack(p).is_negative())
}

/// The touching-hyperplane data of a sweep perpendicular to `u`: which lattice
/// points minimize `u . y`, and the minimum value itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportData {
    pub direction: Vec<i64>,
    pub minimizers: Vec<usize>,
    pub value: i128,
}

/// Exact argmin of `u . y` over a nonempty list of lattice points.
pub fn support_minimizers(points: &[Exponent], u: &[i64]) -> SupportData {
    assert!(!points.is_empty(), "support of an empty point set");
    assert!(u.iter().any(|&c| c != 0), "sweep direction must be nonzero");
    let score = |p: &Exponent| -> i128 {
        p.entries().iter().zip(u).map(|(&e, &c)| e as i128 * c as i128).sum()
    };
    let value = points.iter().map(score).min().expect("nonempty");
    let minimizers = (0..points.len()).filter(|&i| score(&points[i]) == value).collect();
    SupportData { direction: u.to_vec(), minimizers, value }
}
