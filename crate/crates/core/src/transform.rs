//! Field-preserving and field-scaling operations on mass-action systems:
//! translation, scalar multiplication, addition, simplification, reaction
//! rewrites, and the scalar-polynomial construction pipeline that assembles a
//! full unit from a base unit.
//!
//! Field laws, all exact:
//! - `field(translate(s, v)) = x^v * field(s)`
//! - `field(scalar_multiply(s, rho)) = rho * field(s)`
//! - `field(add_systems(a, b)) = field(a) + field(b)`
//! - `simplify`, `length_transform`, `diagonal_decompose` preserve the field
//! - `field(construct_full_unit(base, h)) = h * field(base)`

use num_traits::{One, Signed, Zero};

use crate::algebra::{Exponent, Polynomial, Rational};
use crate::error::{CrnError, Result};
use crate::geometry::{convex_hull, is_strictly_interior};
use crate::network::{mass_action_field, MassActionSystem};
use crate::realize::canonical_realization;

/// One construction step: translate by a lattice vector, then scale by a
/// nonzero rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransformSpec {
    pub translation: Exponent,
    pub scale: Rational,
}

impl TransformSpec {
    pub fn new(translation: Exponent, scale: Rational) -> Result<Self> {
        if scale.is_zero() {
            return Err(CrnError::InvalidTransform("scale must be nonzero".into()));
        }
        Ok(TransformSpec { translation, scale })
    }

    /// Translation first, scaling second. The composed network is the same in
    /// either order (the reflected target of a translated edge equals the
    /// translated reflected target), but reflecting before translating can
    /// leave the orthant that the translation re-enters, so this order is the
    /// permissive one.
    pub fn apply(&self, sys: &MassActionSystem) -> Result<MassActionSystem> {
        scalar_multiply(&translate(sys, &self.translation)?, &self.scale)
    }
}

/// Shifts every vertex by `v`; rates unchanged. The field gets multiplied by
/// the monomial `x^v`.
pub fn translate(sys: &MassActionSystem, v: &Exponent) -> Result<MassActionSystem> {
    if v.dim() != sys.dim() {
        return Err(CrnError::DimensionMismatch { left: sys.dim(), right: v.dim() });
    }
    let reactions = sys
        .reactions()
        .map(|(src, dst, k)| (src.add(v), dst.add(v), k.clone()))
        .collect();
    MassActionSystem::assemble(sys.species().clone(), reactions)
}

/// Scales the field by `rho`. For positive `rho` the rates scale; for negative
/// `rho` every reaction is reflected through its source (`dst` becomes
/// `2 src - dst`) with rate `|rho| k`, which negates every reaction vector.
/// Fails when a reflected target leaves the nonnegative orthant.
pub fn scalar_multiply(sys: &MassActionSystem, rho: &Rational) -> Result<MassActionSystem> {
    if rho.is_zero() {
        return Err(CrnError::InvalidTransform("scale must be nonzero".into()));
    }
    let magnitude = rho.abs();
    let reactions = sys
        .reactions()
        .map(|(src, dst, k)| {
            let target = if rho.is_positive() {
                dst.clone()
            } else {
                let reflected: Vec<i64> = src
                    .entries()
                    .iter()
                    .zip(dst.entries())
                    .map(|(&s, &d)| 2 * s as i64 - d as i64)
                    .collect();
                Exponent::try_from_i64(&reflected)?
            };
            Ok((src.clone(), target, k * &magnitude))
        })
        .collect::<Result<Vec<_>>>()?;
    MassActionSystem::assemble(sys.species().clone(), reactions)
}

/// Union of two systems over the same species: vertices merge, coincident
/// edges sum their rates. The fields add.
pub fn add_systems(a: &MassActionSystem, b: &MassActionSystem) -> Result<MassActionSystem> {
    if a.species() != b.species() {
        return Err(CrnError::SpeciesMismatch);
    }
    let reactions = a
        .reactions()
        .chain(b.reactions())
        .map(|(src, dst, k)| (src.clone(), dst.clone(), k.clone()))
        .collect();
    MassActionSystem::assemble(a.species().clone(), reactions)
}

/// Replaces the system with the canonical realization of its collected field:
/// dynamically equivalent, deterministic, and with no source contributing a
/// zero net term. Idempotent.
pub fn simplify(sys: &MassActionSystem) -> Result<MassActionSystem> {
    canonical_realization(sys.species(), &mass_action_field(sys))
}

/// Rescales one reaction vector by `lambda > 0` and its rate by `1/lambda`,
/// which preserves the field. The stretched target `src + lambda (dst - src)`
/// must be a nonnegative lattice point.
pub fn length_transform(
    sys: &MassActionSystem,
    edge_idx: usize,
    lambda: &Rational,
) -> Result<MassActionSystem> {
    if !lambda.is_positive() {
        return Err(CrnError::InvalidTransform("length factor must be positive".into()));
    }
    let net = sys.network();
    if edge_idx >= net.edges().len() {
        return Err(CrnError::InvalidTransform(format!("no edge with index {edge_idx}")));
    }
    let e = &net.edges()[edge_idx];
    let src = net.vertex(e.src);
    let dst = net.vertex(e.dst);
    let mut target = Vec::with_capacity(sys.dim());
    for (&s, &d) in src.entries().iter().zip(dst.entries()) {
        let coord = Rational::from_integer(s.into())
            + lambda * Rational::from_integer((d as i64 - s as i64).into());
        if !coord.denom().is_one() || coord.is_negative() {
            return Err(CrnError::InvalidTransform(format!(
                "stretched target coordinate {coord} is not a nonnegative integer"
            )));
        }
        target.push(
            u32::try_from(coord.numer().clone())
                .map_err(|_| CrnError::InvalidTransform("stretched target overflows".into()))?,
        );
    }
    let reactions = sys
        .reactions()
        .enumerate()
        .map(|(i, (s, d, k))| {
            if i == edge_idx {
                (s.clone(), Exponent::new(target.clone()), k / lambda)
            } else {
                (s.clone(), d.clone(), k.clone())
            }
        })
        .collect();
    MassActionSystem::assemble(sys.species().clone(), reactions)
}

/// Splits one reaction into two along directions `d1`, `d2` with positive
/// weights satisfying `w1 d1 + w2 d2 = k (dst - src)` exactly, preserving the
/// field. Both split targets must be nonnegative lattice points.
pub fn diagonal_decompose(
    sys: &MassActionSystem,
    edge_idx: usize,
    d1: &[i64],
    d2: &[i64],
    w1: &Rational,
    w2: &Rational,
) -> Result<MassActionSystem> {
    if !w1.is_positive() || !w2.is_positive() {
        return Err(CrnError::InvalidTransform("split weights must be positive".into()));
    }
    let net = sys.network();
    if edge_idx >= net.edges().len() {
        return Err(CrnError::InvalidTransform(format!("no edge with index {edge_idx}")));
    }
    let n = sys.dim();
    if d1.len() != n || d2.len() != n {
        return Err(CrnError::DimensionMismatch { left: n, right: d1.len().max(d2.len()) });
    }
    let e = &net.edges()[edge_idx];
    let k = sys.rate(edge_idx);
    let rv = net.reaction_vector(e);
    for i in 0..n {
        let lhs = w1 * Rational::from_integer(d1[i].into())
            + w2 * Rational::from_integer(d2[i].into());
        let rhs = k * Rational::from_integer(rv[i].into());
        if lhs != rhs {
            return Err(CrnError::InvalidTransform(
                "split directions do not recombine to the reaction vector".into(),
            ));
        }
    }
    let src = net.vertex(e.src);
    let shift = |d: &[i64]| -> Result<Exponent> {
        let coords: Vec<i64> =
            src.entries().iter().zip(d).map(|(&s, &di)| s as i64 + di).collect();
        Exponent::try_from_i64(&coords)
    };
    let t1 = shift(d1)?;
    let t2 = shift(d2)?;
    if t1 == *src || t2 == *src {
        return Err(CrnError::InvalidTransform("split direction is zero".into()));
    }
    let mut reactions: Vec<(Exponent, Exponent, Rational)> = Vec::new();
    for (i, (s, d, rate)) in sys.reactions().enumerate() {
        if i == edge_idx {
            reactions.push((s.clone(), t1.clone(), w1.clone()));
            reactions.push((s.clone(), t2.clone(), w2.clone()));
        } else {
            reactions.push((s.clone(), d.clone(), rate.clone()));
        }
    }
    MassActionSystem::assemble(sys.species().clone(), reactions)
}

/// A construction multiplier: a polynomial with exactly one negative term
/// whose exponent lies strictly inside the convex hull of the positive terms'
/// exponents, and which is negative at the all-ones point. Zeros of such a
/// polynomial in the positive orthant form the steady-state continuum of a
/// constructed full unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarPolynomial {
    poly: Polynomial,
    negative_exponent: Exponent,
}

impl ScalarPolynomial {
    /// Validates the three structural conditions and returns the witness.
    pub fn validate(poly: Polynomial) -> Result<Self> {
        let negatives: Vec<&Exponent> = poly
            .terms()
            .filter(|(_, c)| c.is_negative())
            .map(|(e, _)| e)
            .collect();
        if negatives.len() != 1 {
            return Err(CrnError::InvalidScalarPolynomial(format!(
                "expected exactly one negative term, found {}",
                negatives.len()
            )));
        }
        let negative_exponent = negatives[0].clone();
        let positives: Vec<Vec<Rational>> = poly
            .terms()
            .filter(|(_, c)| c.is_positive())
            .map(|(e, _)| {
                e.entries().iter().map(|&k| Rational::from_integer(k.into())).collect()
            })
            .collect();
        if positives.is_empty() {
            return Err(CrnError::InvalidScalarPolynomial("no positive terms".into()));
        }
        let hull = convex_hull(&positives)?;
        let neg_point: Vec<Rational> = negative_exponent
            .entries()
            .iter()
            .map(|&k| Rational::from_integer(k.into()))
            .collect();
        if !is_strictly_interior(&hull, &neg_point) {
            return Err(CrnError::InvalidScalarPolynomial(
                "negative term's exponent is not strictly interior to the convex hull \
                 of the positive terms' exponents"
                    .into(),
            ));
        }
        let ones = vec![Rational::one(); poly.dim()];
        let at_ones = poly.eval_rational(&ones)?;
        if !at_ones.is_negative() {
            return Err(CrnError::InvalidScalarPolynomial(format!(
                "value at the all-ones point is {at_ones}, expected negative"
            )));
        }
        Ok(ScalarPolynomial { poly, negative_exponent })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn negative_exponent(&self) -> &Exponent {
        &self.negative_exponent
    }

    /// The per-term transformations the construction pipeline applies.
    pub fn transforms(&self) -> Vec<TransformSpec> {
        self.poly
            .terms()
            .map(|(e, c)| TransformSpec { translation: e.clone(), scale: c.clone() })
            .collect()
    }
}

/// Builds the full unit: one transformed copy of the base per scalar term,
/// added together and simplified. The resulting field is exactly
/// `h * field(base)`.
pub fn construct_full_unit(
    base: &MassActionSystem,
    h: &ScalarPolynomial,
) -> Result<MassActionSystem> {
    apply_scalar_polynomial(base, &h.poly)
}

/// The raw construction pipeline for an arbitrary nonzero multiplier
/// polynomial, without the [`ScalarPolynomial`] structure checks. The field
/// identity `field = h * field(base)` holds regardless; only the steady-curve
/// interpretation needs the validated form.
pub fn apply_scalar_polynomial(
    base: &MassActionSystem,
    h: &Polynomial,
) -> Result<MassActionSystem> {
    if h.dim() != base.dim() {
        return Err(CrnError::DimensionMismatch { left: base.dim(), right: h.dim() });
    }
    if h.is_zero() {
        return Err(CrnError::InvalidTransform("zero multiplier polynomial".into()));
    }
    let mut acc: Option<MassActionSystem> = None;
    for (e, c) in h.terms() {
        let spec = TransformSpec { translation: e.clone(), scale: c.clone() };
        let copy = spec.apply(base)?;
        acc = Some(match acc {
            None => copy,
            Some(sum) => add_systems(&sum, &copy)?,
        });
    }
    let combined = acc.expect("nonzero polynomial has terms");
    simplify(&combined)
}
