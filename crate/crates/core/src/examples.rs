//! Bundled example systems: endotactic or strongly endotactic base units that
//! are not weakly reversible, together with the scalar multiplier that turns
//! each into a full unit with a curve of positive steady states.
//!
//! Each bundle stores the base unit as a *field* plus its canonical
//! realization; the full unit's field factors exactly as
//! `scalar * base field`, so its positive steady states are the scalar's
//! zeros together with the base unit's fixed point.

use crate::algebra::{parse_polynomial, PolyVector, Polynomial};
use crate::network::{MassActionSystem, SpeciesList};
use crate::realize::canonical_realization;
use crate::transform::{construct_full_unit, ScalarPolynomial};

/// One packaged example.
#[derive(Clone, Debug)]
pub struct ExampleBundle {
    pub name: &'static str,
    pub description: &'static str,
    species: Vec<&'static str>,
    base_components: Vec<&'static str>,
    scalar_text: &'static str,
    /// Refined fixed point of the base unit (solves the base field exactly up
    /// to floating point).
    pub fixed_point: Vec<f64>,
    /// The same point at report precision, kept for coarse cross-checks.
    pub printed_fixed_point: Vec<f64>,
    /// Newton seed near the fixed point, fixed for deterministic runs.
    pub newton_seed: Vec<f64>,
    /// Sampling box for the steady curve.
    pub bounds: Vec<(f64, f64)>,
}

/// Real root of `y^3 + y^2 + y - 1`; the planar base units of `ex2` and the
/// spatial base unit fix `x = 1/y` at this `y`.
pub const CUBIC_ROOT_Y: f64 = 0.543_689_012_692_076_4;
/// `1 / CUBIC_ROOT_Y`.
pub const CUBIC_ROOT_X: f64 = 1.839_286_755_214_161_1;
/// Positive root of `2 - x - 2 x^2`, i.e. `(-1 + sqrt(17)) / 4`.
pub const SQRT17_ROOT_X: f64 = 0.780_776_406_404_415_2;

impl ExampleBundle {
    pub fn species_list(&self) -> SpeciesList {
        SpeciesList::from_names(&self.species).expect("bundled species are valid")
    }

    fn names(&self) -> Vec<String> {
        self.species.iter().map(|s| s.to_string()).collect()
    }

    /// The base unit's polynomial field.
    pub fn base_field(&self) -> PolyVector {
        let names = self.names();
        PolyVector::new(
            self.base_components
                .iter()
                .map(|c| parse_polynomial(c, &names).expect("bundled field parses"))
                .collect(),
        )
        .expect("bundled field components are consistent")
    }

    /// The scalar multiplier as a plain polynomial.
    pub fn scalar(&self) -> Polynomial {
        parse_polynomial(self.scalar_text, &self.names()).expect("bundled scalar parses")
    }

    /// The scalar multiplier in canonical text form.
    pub fn scalar_text(&self) -> &'static str {
        self.scalar_text
    }

    /// The scalar multiplier, validated.
    pub fn scalar_polynomial(&self) -> ScalarPolynomial {
        ScalarPolynomial::validate(self.scalar()).expect("bundled scalar is valid")
    }

    /// Canonical realization of the base field.
    pub fn base_system(&self) -> MassActionSystem {
        canonical_realization(&self.species_list(), &self.base_field())
            .expect("bundled base field is realizable")
    }

    /// The full unit, built through the construction pipeline.
    pub fn full_system(&self) -> MassActionSystem {
        construct_full_unit(&self.base_system(), &self.scalar_polynomial())
            .expect("bundled construction stays in the orthant")
    }

    /// The full unit's field by direct polynomial multiplication; the
    /// pipeline must reproduce this exactly.
    pub fn full_field(&self) -> PolyVector {
        self.base_field()
            .mul_polynomial(&self.scalar())
            .expect("bundled dimensions agree")
    }
}

/// All bundled examples, in presentation order.
pub fn all() -> Vec<ExampleBundle> {
    vec![
        ExampleBundle {
            name: "ex1",
            description: "planar endotactic full unit; steady curve plus fixed point (1, 1/4)",
            species: vec!["x", "y"],
            base_components: vec!["1 - x + y^2 - x*y^2", "y - 2*y^2 - 2*x*y^2"],
            scalar_text: "x^2 + x*y^2 + y - 4*x*y",
            fixed_point: vec![1.0, 0.25],
            printed_fixed_point: vec![1.0, 0.25],
            newton_seed: vec![0.9, 0.3],
            bounds: vec![(0.1, 3.0), (0.1, 3.0)],
        },
        ExampleBundle {
            name: "ex2",
            description: "planar endotactic full unit; fixed point at (1/y*, y*) with \
                          y* the real root of y^3 + y^2 + y - 1",
            species: vec!["x", "y"],
            base_components: vec!["1 - x + y + y^2", "y - x*y^2"],
            scalar_text: "x^2 + x*y^2 + y - 4*x*y",
            fixed_point: vec![CUBIC_ROOT_X, CUBIC_ROOT_Y],
            printed_fixed_point: vec![1.839, 0.544],
            newton_seed: vec![2.0, 0.6],
            bounds: vec![(0.1, 3.0), (0.1, 3.0)],
        },
        ExampleBundle {
            name: "ex3",
            description: "planar strongly endotactic full unit; fixed point ((-1+sqrt(17))/4, 1)",
            species: vec!["x", "y"],
            base_components: vec!["2*y^2 - 2*x^2 - x*y", "2 - 2*x^2*y^2 - x*y"],
            scalar_text: "1 + x^3 + x^2*y^2 - 4*x^2*y",
            fixed_point: vec![SQRT17_ROOT_X, 1.0],
            printed_fixed_point: vec![0.781, 1.0],
            newton_seed: vec![0.8, 1.1],
            bounds: vec![(0.1, 3.0), (0.1, 3.0)],
        },
        ExampleBundle {
            name: "ex3d",
            description: "spatial endotactic full unit; steady curve plus the boundary \
                          line (1, 0, z) and fixed point near (1.84, 0.54, 1)",
            species: vec!["x", "y", "z"],
            base_components: vec![
                "1 - x + y + y^2 + z - x*z + y*z + y^2*z",
                "y - x*y^2 + y*z - x*y^2*z",
                "y - x*y^2*z",
            ],
            scalar_text: "1 + x*y + y*z + x*z + x^2*y*z + x*y^2*z + x*y*z^2 + x^2*y^2*z^2 \
                          - 15*x*y*z",
            fixed_point: vec![CUBIC_ROOT_X, CUBIC_ROOT_Y, 1.0],
            printed_fixed_point: vec![1.83, 0.54, 1.0],
            newton_seed: vec![1.8, 0.6, 1.1],
            bounds: vec![(0.1, 3.0), (0.1, 3.0), (0.1, 3.0)],
        },
    ]
}

/// Looks up a bundle by name.
pub fn by_name(name: &str) -> Option<ExampleBundle> {
    all().into_iter().find(|b| b.name == name)
}
