//! Exact convex hull internals: monotone chain in the plane, incremental
//! insertion in three dimensions, and the degenerate (lower-dimensional)
//! cases. Everything is rational arithmetic; no tolerances anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::Rational;

pub(crate) type Point = Vec<Rational>;

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn cross3(a: &[Rational], b: &[Rational]) -> Point {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Scales a rational vector to a primitive integer vector (gcd one), keeping
/// its direction. Returns `None` for the zero vector.
pub(crate) fn primitive_integer(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(|c| c.is_zero()) {
        return None;
    }
    let mut denom_lcm = BigInt::from(1);
    for c in v {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let scaled: Vec<BigInt> = v.iter().map(|c| c.numer() * (&denom_lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for s in &scaled {
        g = g.gcd(s);
    }
    Some(scaled.into_iter().map(|s| s / &g).collect())
}

/// Affine basis of `span { p - points[0] }` by rational elimination.
/// Returns echelonized direction vectors; their count is the affine dimension.
pub(crate) fn affine_basis(points: &[Point]) -> Vec<Point> {
    let base = &points[0];
    let n = base.len();
    let mut rows: Vec<Point> = Vec::new();
    for p in &points[1..] {
        let mut v = sub(p, base);
        for row in &rows {
            let lead = row.iter().position(|c| !c.is_zero()).expect("nonzero row");
            if !v[lead].is_zero() {
                let f = &v[lead] / &row[lead];
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= &f * ri;
                }
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            rows.push(v);
            rows.sort_by_key(|r| r.iter().position(|c| !c.is_zero()));
            if rows.len() == n {
                break;
            }
        }
    }
    rows
}

fn cross2(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    let ax = &a.0 - &o.0;
    let ay = &a.1 - &o.1;
    let bx = &b.0 - &o.0;
    let by = &b.1 - &o.1;
    &ax * &by - &ay * &bx
}

/// Monotone chain over exact planar points. Returns indices of the extreme
/// points in counterclockwise order; collinear boundary points are dropped.
/// Assumes at least three affinely independent points.
pub(crate) fn monotone_chain(pts: &[(Rational, Rational)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| {
        pts[i].0.cmp(&pts[j].0).then_with(|| pts[i].1.cmp(&pts[j].1))
    });
    let turn = |h: &[usize], i: usize| -> Rational {
        let m = h.len();
        cross2(&pts[h[m - 2]], &pts[h[m - 1]], &pts[i])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && !turn(&lower, i).is_positive() {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && !turn(&upper, i).is_positive() {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Orientation of `d` against the plane through `a`, `b`, `c`:
/// the sign of `det[b-a, c-a, d-a]`.
pub(crate) fn orient3(a: &Point, b: &Point, c: &Point, d: &Point) -> Rational {
    let u = sub(b, a);
    let v = sub(c, a);
    let w = sub(d, a);
    dot(&cross3(&u, &v), &w)
}

/// Incremental convex hull of full-dimensional points in three dimensions.
/// Returns boundary triangles `(a, b, c)` oriented counterclockwise as seen
/// from outside, i.e. `orient3(a, b, c, p) < 0` for interior `p`.
pub(crate) fn incremental_hull3(points: &[Point]) -> Vec<[usize; 3]> {
    let n = points.len();
    assert!(n >= 4, "full-dimensional input has at least four points");

    // Initial affinely independent tetrahedron.
    let i0 = 0;
    let i1 = (1..n).find(|&i| points[i] != points[i0]).expect("distinct point");
    let i2 = (1..n)
        .find(|&i| {
            i != i1
                && !cross3(&sub(&points[i1], &points[i0]), &sub(&points[i], &points[i0]))
                    .iter()
                    .all(|c| c.is_zero())
        })
        .expect("non-collinear point");
    let i3 = (1..n)
        .find(|&i| !orient3(&points[i0], &points[i1], &points[i2], &points[i]).is_zero())
        .expect("non-coplanar point");

    let four = Rational::from_integer(4.into());
    let centroid: Point = (0..3)
        .map(|k| {
            (&points[i0][k] + &points[i1][k] + &points[i2][k] + &points[i3][k]) / &four
        })
        .collect();

    let orient_face = |mut f: [usize; 3]| -> [usize; 3] {
        let o = orient3(&points[f[0]], &points[f[1]], &points[f[2]], &centroid);
        debug_assert!(!o.is_zero());
        if o.is_positive() {
            f.swap(1, 2);
        }
        f
    };
    let mut faces: Vec<[usize; 3]> = vec![
        orient_face([i0, i1, i2]),
        orient_face([i0, i1, i3]),
        orient_face([i0, i2, i3]),
        orient_face([i1, i2, i3]),
    ];

    for p in 0..n {
        if p == i0 || p == i1 || p == i2 || p == i3 {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| {
                orient3(&points[f[0]], &points[f[1]], &points[f[2]], &points[p]).is_positive()
            })
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        // Directed edges of visible faces; a horizon edge has no reverse twin.
        let mut edges: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
        for (f, &vis) in faces.iter().zip(&visible) {
            if vis {
                for k in 0..3 {
                    edges.insert((f[k], f[(k + 1) % 3]));
                }
            }
        }
        let horizon: Vec<(usize, usize)> = edges
            .iter()
            .filter(|&&(u, v)| !edges.contains(&(v, u)))
            .copied()
            .collect();
        faces = faces
            .into_iter()
            .zip(visible)
            .filter(|(_, vis)| !vis)
            .map(|(f, _)| f)
            .collect();
        for (u, v) in horizon {
            faces.push(orient_face([u, v, p]));
        }
    }
    faces
}
