//! Finite representative directions for the hyperplane sweep tests.
//!
//! The endotactic conditions quantify over every nonzero direction `u`. Their
//! truth for a fixed network depends only on the signs `sign(u . v)` over the
//! finite normal set `N` = { pairwise differences of source vertices } ∪
//! { reaction vectors } ∪ { coordinate axes }, so the quantifier reduces to
//! one test per cell of the central hyperplane arrangement with normals `N`.
//!
//! In the plane the cells are angular sectors: every critical direction (a
//! normal's perpendicular) is a representative of a one-dimensional cell, and
//! the sum of two angularly consecutive critical directions represents the
//! open sector between them. In three dimensions the arrangement is a set of
//! great circles on the sphere: circle crossings (exact cross products)
//! represent the zero-dimensional cells, sums of angularly consecutive
//! crossings on a circle represent the arcs, and an exact integer perturbation
//! of each arc representative off its circle covers the two adjacent open
//! regions. Sums and perturbations stay integral, so every representative is
//! an exact integer vector and cell membership is decided without rounding.

use std::collections::BTreeSet;

use crate::error::{CrnError, Result};
use crate::network::ReactionNetwork;

use super::MAX_DIM;

/// Cap on the number of distinct normal lines; the amount of work grows with
/// the cube of this count.
pub const MAX_NORMAL_LINES: usize = 128;

/// A set of pairwise non-parallel integer direction classes. Each class `w`
/// stands for the two opposite directions `w` and `-w`; consumers test both.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectionSet {
    classes: Vec<Vec<i64>>,
}

impl DirectionSet {
    /// Canonical (sign-normalized) class representatives.
    pub fn classes(&self) -> &[Vec<i64>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Both signed directions of every class.
    pub fn signed_directions(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(2 * self.classes.len());
        for c in &self.classes {
            out.push(c.clone());
            out.push(c.iter().map(|&x| -x).collect());
        }
        out
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divides out the gcd; `None` for the zero vector.
fn primitive(v: &[i128]) -> Option<Vec<i128>> {
    let g = v.iter().fold(0i128, |acc, &x| gcd_i128(acc, x));
    if g == 0 {
        return None;
    }
    Some(v.iter().map(|&x| x / g).collect())
}

/// Primitive vector with its first nonzero entry positive.
fn canonical_class(v: &[i128]) -> Option<Vec<i128>> {
    let p = primitive(v)?;
    let first = p.iter().find(|&&x| x != 0).copied().unwrap_or(0);
    Some(if first < 0 { p.iter().map(|&x| -x).collect() } else { p })
}

fn to_i64_vec(v: &[i128]) -> Result<Vec<i64>> {
    v.iter()
        .map(|&x| {
            i64::try_from(x).map_err(|_| {
                CrnError::InvalidNetwork("direction coordinates overflow 64 bits".into())
            })
        })
        .collect()
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn cross(a: &[i128], b: &[i128]) -> Vec<i128> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// The signs of `u . v` over a normal list; constant exactly on arrangement
/// cells, so it identifies the cell of `u`.
pub fn sign_vector(u: &[i64], normals: &[Vec<i64>]) -> Vec<i8> {
    normals
        .iter()
        .map(|v| {
            let d: i128 = v.iter().zip(u).map(|(&a, &b)| a as i128 * b as i128).sum();
            d.signum() as i8
        })
        .collect()
}

/// The deduplicated normal lines of a network's sweep arrangement: coordinate
/// axes, reaction vectors, and differences of distinct source vertices, all as
/// canonical primitive classes.
pub fn arrangement_normals(net: &ReactionNetwork) -> Result<Vec<Vec<i64>>> {
    let n = net.dim();
    if n > MAX_DIM {
        return Err(CrnError::UnsupportedDimension { dim: n, max: MAX_DIM });
    }
    let mut classes: BTreeSet<Vec<i128>> = BTreeSet::new();
    for i in 0..n {
        let mut axis = vec![0i128; n];
        axis[i] = 1;
        classes.insert(axis);
    }
    for e in net.edges() {
        let rv: Vec<i128> = net.reaction_vector(e).iter().map(|&x| x as i128).collect();
        if let Some(c) = canonical_class(&rv) {
            classes.insert(c);
        }
    }
    let sources = net.source_indices();
    for (a, &i) in sources.iter().enumerate() {
        for &j in &sources[a + 1..] {
            let d: Vec<i128> = net.vertex(i)
                .entries()
                .iter()
                .zip(net.vertex(j).entries())
                .map(|(&x, &y)| x as i128 - y as i128)
                .collect();
            if let Some(c) = canonical_class(&d) {
                classes.insert(c);
            }
        }
    }
    if classes.len() > MAX_NORMAL_LINES {
        return Err(CrnError::ArrangementTooLarge {
            normals: classes.len(),
            max: MAX_NORMAL_LINES,
        });
    }
    classes.into_iter().map(|c| to_i64_vec(&c)).collect()
}

/// A finite direction set with at least one representative in every cell of
/// the network's sweep arrangement (and on every cell boundary).
pub fn representative_directions(net: &ReactionNetwork) -> Result<DirectionSet> {
    let n = net.dim();
    let normals = arrangement_normals(net)?;
    let normals: Vec<Vec<i128>> = normals
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let reps: BTreeSet<Vec<i128>> = match n {
        1 => [vec![1i128]].into_iter().collect(),
        2 => planar_representatives(&normals),
        3 => spatial_representatives(&normals),
        _ => unreachable!("dimension checked by arrangement_normals"),
    };
    let classes = reps
        .iter()
        .map(|r| to_i64_vec(r))
        .collect::<Result<Vec<_>>>()?;
    Ok(DirectionSet { classes })
}

/// Sorts planar directions counterclockwise starting from the positive x axis.
fn angle_cmp(a: &(i128, i128), b: &(i128, i128)) -> std::cmp::Ordering {
    let half = |d: &(i128, i128)| -> u8 {
        if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cr = a.0 * b.1 - a.1 * b.0;
        0.cmp(&cr)
    })
}

fn planar_representatives(normals: &[Vec<i128>]) -> BTreeSet<Vec<i128>> {
    // Critical directions: both perpendiculars of every normal line. The axes
    // are always among the normals, so the four axis directions are present
    // and consecutive critical directions are never antipodal.
    let mut dirs: BTreeSet<(i128, i128)> = BTreeSet::new();
    for v in normals {
        let perp = canonical_class(&[-v[1], v[0]]).expect("normals are nonzero");
        dirs.insert((perp[0], perp[1]));
        dirs.insert((-perp[0], -perp[1]));
    }
    let mut sorted: Vec<(i128, i128)> = dirs.into_iter().collect();
    sorted.sort_by(angle_cmp);

    let mut reps: BTreeSet<Vec<i128>> = BTreeSet::new();
    let m = sorted.len();
    for i in 0..m {
        let a = sorted[i];
        let b = sorted[(i + 1) % m];
        reps.insert(canonical_class(&[a.0, a.1]).expect("nonzero"));
        let cr = a.0 * b.1 - a.1 * b.0;
        assert!(cr > 0, "axis directions bound every sector below a half turn");
        reps.insert(canonical_class(&[a.0 + b.0, a.1 + b.1]).expect("sector midpoint is nonzero"));
    }
    reps
}

fn spatial_representatives(normals: &[Vec<i128>]) -> BTreeSet<Vec<i128>> {
    // Sphere vertices: pairwise circle crossings.
    let mut vertex_classes: BTreeSet<Vec<i128>> = BTreeSet::new();
    for (i, vi) in normals.iter().enumerate() {
        for vj in &normals[i + 1..] {
            if let Some(c) = canonical_class(&cross(vi, vj)) {
                vertex_classes.insert(c);
            }
        }
    }

    let mut reps: BTreeSet<Vec<i128>> = BTreeSet::new();
    for w in &vertex_classes {
        reps.insert(w.clone());
    }

    for vi in normals {
        // Signed crossings lying on the great circle perpendicular to vi.
        let on_circle: Vec<&Vec<i128>> =
            vertex_classes.iter().filter(|w| dot(w, vi) == 0).collect();
        assert!(
            !on_circle.is_empty(),
            "axis normals guarantee at least one crossing per circle"
        );
        let b1 = on_circle[0].clone();
        let b2 = cross(vi, &b1);
        let mut signed: Vec<(i128, i128, Vec<i128>)> = Vec::new();
        for w in &on_circle {
            for sign in [1i128, -1] {
                let sw: Vec<i128> = w.iter().map(|&x| sign * x).collect();
                signed.push((dot(&sw, &b1), dot(&sw, &b2), sw));
            }
        }
        signed.sort_by(|a, b| angle_cmp(&(a.0, a.1), &(b.0, b.1)));

        let margin = 1 + normals.iter().map(|vj| dot(vi, vj).abs()).max().unwrap_or(0);
        let m = signed.len();
        for k in 0..m {
            let (sa, ta, ref wa) = signed[k];
            let (sb, tb, ref wb) = signed[(k + 1) % m];
            let cr = sa * tb - ta * sb;
            assert!(cr > 0, "two crossing classes per circle keep arcs below a half turn");
            let arc: Vec<i128> = wa.iter().zip(wb).map(|(&x, &y)| x + y).collect();
            // The arc midpoint covers the one-dimensional cell; pushing it off
            // the circle by less than one sign flip of any other normal covers
            // the two adjacent open regions.
            for sign in [1i128, -1] {
                let pushed: Vec<i128> = arc
                    .iter()
                    .zip(vi)
                    .map(|(&a, &v)| margin * a + sign * v)
                    .collect();
                if let Some(c) = canonical_class(&pushed) {
                    reps.insert(c);
                }
            }
            if let Some(c) = canonical_class(&arc) {
                reps.insert(c);
            }
        }
    }
    reps
}
