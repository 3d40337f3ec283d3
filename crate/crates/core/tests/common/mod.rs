//! Shared helpers for the integration suites: seeded random systems and
//! fields at desk scale.
//!
//! Each integration target compiles this module separately and uses a
//! different subset of it.
#![allow(dead_code)]

use crn_core::algebra::{rat, Exponent, PolyVector, Polynomial, Rational};
use crn_core::network::{MassActionSystem, SpeciesList};
use rand::Rng;

/// A random mass-action system with `1..=max_dim` species, at most `max_edges`
/// reactions, and exponents up to `max_exp`.
pub fn random_system(
    rng: &mut impl Rng,
    max_dim: usize,
    max_edges: usize,
    max_exp: u32,
) -> MassActionSystem {
    let n = rng.gen_range(1..=max_dim);
    random_system_with_dim(rng, n, max_edges, max_exp)
}

/// As [`random_system`] with a fixed species count.
pub fn random_system_with_dim(
    rng: &mut impl Rng,
    n: usize,
    max_edges: usize,
    max_exp: u32,
) -> MassActionSystem {
    loop {
        let edges = rng.gen_range(1..=max_edges);
        let mut reactions = Vec::new();
        for _ in 0..edges {
            let src: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            let dst: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if src == dst {
                continue;
            }
            let rate = rat(rng.gen_range(1..=4), rng.gen_range(1..=4));
            reactions.push((Exponent::new(src), Exponent::new(dst), rate));
        }
        if reactions.is_empty() {
            continue;
        }
        if let Ok(sys) = MassActionSystem::assemble(SpeciesList::default_names(n), reactions) {
            return sys;
        }
    }
}

/// A random polynomial with bounded support.
pub fn random_polynomial(
    rng: &mut impl Rng,
    dim: usize,
    max_terms: usize,
    max_exp: u32,
) -> Polynomial {
    let terms = rng.gen_range(0..=max_terms);
    let iter = (0..terms).map(|_| {
        let e: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..=max_exp)).collect();
        let num = rng.gen_range(-4i64..=4);
        (Exponent::new(e), rat(num, rng.gen_range(1..=3)))
    });
    Polynomial::from_terms(dim, iter).expect("dimensions agree")
}

/// A random mass-action-realizable field: built from a random system, so a
/// realization always exists.
pub fn random_realizable_field(
    rng: &mut impl Rng,
    max_dim: usize,
    max_edges: usize,
    max_exp: u32,
) -> (SpeciesList, PolyVector) {
    let sys = random_system(rng, max_dim, max_edges, max_exp);
    let field = crn_core::network::mass_action_field(&sys);
    (sys.species().clone(), field)
}

/// Positive rational grid helper for brute-force oracles.
pub fn quarter_grid(max: i64) -> Vec<Rational> {
    (0..=4 * max).map(|k| rat(k, 4)).collect()
}
