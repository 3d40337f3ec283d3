//! Network-class predicates: weak reversibility, deficiency, the endotactic
//! and strongly endotactic tests, siphons, critical subsets, and complex
//! balance, aggregated into a [`ClassificationReport`].
//!
//! The endotactic conditions are decided exactly: the universal quantifier
//! over directions reduces to the finite representative set built in
//! [`crate::geometry`], and every per-direction check is integer arithmetic.
//! A seeded random-direction falsifier is kept alongside as a permanent
//! property-test oracle; it can only refute, never certify.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{Exponent, Rational};
use crate::error::{CrnError, Result};
use crate::geometry::{representative_directions, MAX_DIM};
use crate::lp;
use crate::network::{
    linkage_classes, stoichiometric_subspace, MassActionSystem, ReactionNetwork,
};

/// Subset enumeration bound for siphon search.
pub const MAX_SIPHON_SPECIES: usize = 16;

fn dot_exp(u: &[i64], e: &Exponent) -> i128 {
    e.entries().iter().zip(u).map(|(&a, &b)| a as i128 * b as i128).sum()
}

fn dot_vec(u: &[i64], v: &[i64]) -> i128 {
    v.iter().zip(u).map(|(&a, &b)| a as i128 * b as i128).sum()
}

// ---------------------------------------------------------------------------
// Weak reversibility
// ---------------------------------------------------------------------------

/// Strongly connected components by Kosaraju's algorithm; returns a component
/// id per vertex.
pub fn strongly_connected_components(net: &ReactionNetwork) -> Vec<usize> {
    let nv = net.vertices().len();
    let mut fwd = vec![Vec::new(); nv];
    let mut rev = vec![Vec::new(); nv];
    for e in net.edges() {
        fwd[e.src].push(e.dst);
        rev[e.dst].push(e.src);
    }
    let mut order = Vec::with_capacity(nv);
    let mut seen = vec![false; nv];
    for start in 0..nv {
        if seen[start] {
            continue;
        }
        // Iterative post-order.
        let mut stack = vec![(start, 0usize)];
        seen[start] = true;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < fwd[v].len() {
                let w = fwd[v][*i];
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; nv];
    let mut next = 0;
    for &start in order.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(v) = stack.pop() {
            for &w in &rev[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// True iff every edge lies in a directed cycle, i.e. both endpoints share a
/// strongly connected component.
pub fn is_weakly_reversible(net: &ReactionNetwork) -> bool {
    let comp = strongly_connected_components(net);
    net.edges().iter().all(|e| comp[e.src] == comp[e.dst])
}

// ---------------------------------------------------------------------------
// Deficiency
// ---------------------------------------------------------------------------

/// Deficiency `|V| - (linkage classes) - (stoichiometric dimension)`.
///
/// Panics if the result would be negative; that is impossible for a valid
/// network and indicates an internal bug.
pub fn deficiency(net: &ReactionNetwork) -> usize {
    let nv = net.vertices().len();
    let l = linkage_classes(net).len();
    let s = stoichiometric_subspace(net).dim();
    assert!(nv >= l + s, "deficiency invariant violated: |V|={nv}, l={l}, s={s}");
    nv - l - s
}

// ---------------------------------------------------------------------------
// Endotactic tests
// ---------------------------------------------------------------------------

/// Outcome of a single-direction endotactic check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DirectionVerdict {
    Pass,
    /// Index of the first reaction that decreases along the direction without
    /// the required countering reaction.
    FailingEdge(usize),
}

impl DirectionVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, DirectionVerdict::Pass)
    }
}

/// The endotactic condition for one direction `u`: every reaction with
/// `u . (dst - src) < 0` needs a countering reaction whose source is strictly
/// lower along `u` and which strictly increases along `u`.
pub fn endotactic_for_direction(net: &ReactionNetwork, u: &[i64]) -> DirectionVerdict {
    endotactic_direction_check(net, u, false)
}

/// As [`endotactic_for_direction`], but the countering reaction's source must
/// additionally be minimal along `u` among all source vertices.
pub fn strongly_endotactic_for_direction(net: &ReactionNetwork, u: &[i64]) -> DirectionVerdict {
    endotactic_direction_check(net, u, true)
}

fn endotactic_direction_check(net: &ReactionNetwork, u: &[i64], strong: bool) -> DirectionVerdict {
    debug_assert_eq!(u.len(), net.dim());
    let edges = net.edges();
    let source_min: i128 = net
        .source_indices()
        .iter()
        .map(|&i| dot_exp(u, net.vertex(i)))
        .min()
        .unwrap_or(0);
    for (idx, e) in edges.iter().enumerate() {
        let step = dot_vec(u, &net.reaction_vector(e));
        if step >= 0 {
            continue;
        }
        let violator_height = dot_exp(u, net.vertex(e.src));
        let witness = edges.iter().any(|w| {
            let h = dot_exp(u, net.vertex(w.src));
            h < violator_height
                && dot_vec(u, &net.reaction_vector(w)) > 0
                && (!strong || h == source_min)
        });
        if !witness {
            return DirectionVerdict::FailingEdge(idx);
        }
    }
    DirectionVerdict::Pass
}

/// Aggregate verdict with a counterexample direction (and its first failing
/// edge) when the property does not hold.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EndotacticVerdict {
    pub holds: bool,
    pub counterexample: Option<CounterExample>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CounterExample {
    pub direction: Vec<i64>,
    pub failing_edge: usize,
}

fn sweep_all_directions(
    net: &ReactionNetwork,
    check: impl Fn(&ReactionNetwork, &[i64]) -> DirectionVerdict,
    skip: impl Fn(&[i64]) -> bool,
) -> Result<EndotacticVerdict> {
    let reps = representative_directions(net)?;
    let mut worst: Option<CounterExample> = None;
    for u in reps.signed_directions() {
        if skip(&u) {
            continue;
        }
        if let DirectionVerdict::FailingEdge(idx) = check(net, &u) {
            let candidate = CounterExample { direction: u, failing_edge: idx };
            let replace = match &worst {
                None => true,
                Some(prev) => candidate.direction < prev.direction,
            };
            if replace {
                worst = Some(candidate);
            }
        }
    }
    Ok(EndotacticVerdict { holds: worst.is_none(), counterexample: worst })
}

/// Decides the endotactic property over every direction (dimension at most
/// three). Reports the lexicographically smallest failing representative.
pub fn is_endotactic(net: &ReactionNetwork) -> Result<EndotacticVerdict> {
    sweep_all_directions(net, endotactic_for_direction, |_| false)
}

/// Decides the strongly endotactic property over every direction not
/// orthogonal to the stoichiometric subspace.
pub fn is_strongly_endotactic(net: &ReactionNetwork) -> Result<EndotacticVerdict> {
    let stoich = stoichiometric_subspace(net);
    sweep_all_directions(net, strongly_endotactic_for_direction, |u| stoich.orthogonal_to(u))
}

/// Seeded random-direction falsifier for the endotactic property. Returns a
/// refuting direction if one is found; it can never certify the property.
pub fn falsify_endotactic(net: &ReactionNetwork, trials: usize, seed: u64) -> Option<Vec<i64>> {
    falsify(net, trials, seed, endotactic_for_direction)
}

/// Seeded random-direction falsifier for the strongly endotactic property.
pub fn falsify_strongly_endotactic(
    net: &ReactionNetwork,
    trials: usize,
    seed: u64,
) -> Option<Vec<i64>> {
    let stoich = stoichiometric_subspace(net);
    falsify(net, trials, seed, move |n, u| {
        if stoich.orthogonal_to(u) {
            DirectionVerdict::Pass
        } else {
            strongly_endotactic_for_direction(n, u)
        }
    })
}

fn falsify(
    net: &ReactionNetwork,
    trials: usize,
    seed: u64,
    check: impl Fn(&ReactionNetwork, &[i64]) -> DirectionVerdict,
) -> Option<Vec<i64>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = net.dim();
    for _ in 0..trials {
        let u: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        if u.iter().all(|&c| c == 0) {
            continue;
        }
        if !check(net, &u).passed() {
            return Some(u);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Sweep-test formulation (expository alternative, cross-checked in tests)
// ---------------------------------------------------------------------------

/// The level-sweep form of the endotactic test for one direction: walk the
/// source levels from the `u`-minimal side; reactions sourced on the touching
/// hyperplane must not decrease along `u`, and the sweep passes as soon as one
/// of them strictly increases. If all are neutral the sweep continues with the
/// remaining sources.
pub fn sweep_endotactic_for_direction(net: &ReactionNetwork, u: &[i64]) -> bool {
    let mut remaining: Vec<usize> = net.source_indices();
    while !remaining.is_empty() {
        let min: i128 = remaining.iter().map(|&i| dot_exp(u, net.vertex(i))).min().unwrap();
        let level: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| dot_exp(u, net.vertex(i)) == min)
            .collect();
        let mut saw_increase = false;
        for e in net.edges() {
            if !level.contains(&e.src) {
                continue;
            }
            let step = dot_vec(u, &net.reaction_vector(e));
            if step < 0 {
                return false;
            }
            if step > 0 {
                saw_increase = true;
            }
        }
        if saw_increase {
            return true;
        }
        remaining.retain(|i| !level.contains(i));
    }
    true
}

/// The hyperplane-sweep form of the strongly endotactic test for one
/// direction: on the first touching hyperplane no reaction may decrease along
/// `u` and at least one must strictly increase.
pub fn sweep_strongly_endotactic_for_direction(net: &ReactionNetwork, u: &[i64]) -> bool {
    let sources = net.source_indices();
    if sources.is_empty() {
        return true;
    }
    let min: i128 = sources.iter().map(|&i| dot_exp(u, net.vertex(i))).min().unwrap();
    let mut saw_increase = false;
    for e in net.edges() {
        if dot_exp(u, net.vertex(e.src)) != min {
            continue;
        }
        let step = dot_vec(u, &net.reaction_vector(e));
        if step < 0 {
            return false;
        }
        if step > 0 {
            saw_increase = true;
        }
    }
    saw_increase
}

// ---------------------------------------------------------------------------
// Siphons and critical subsets
// ---------------------------------------------------------------------------

/// A validated subset of species indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpeciesSubset(Vec<usize>);

impl SpeciesSubset {
    pub fn new(net: &ReactionNetwork, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.iter().any(|&i| i >= net.dim()) {
            return Err(CrnError::InvalidNetwork("species index out of range".into()));
        }
        Ok(SpeciesSubset(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// True iff no reaction whose source avoids every species of `subset`
/// produces a species of `subset`.
pub fn is_siphon(net: &ReactionNetwork, subset: &SpeciesSubset) -> bool {
    net.edges().iter().all(|e| {
        let src = net.vertex(e.src);
        let dst = net.vertex(e.dst);
        let src_avoids = subset.0.iter().all(|&i| src.get(i) == 0);
        if !src_avoids {
            return true;
        }
        subset.0.iter().all(|&i| dst.get(i) == 0)
    })
}

/// All minimal nonempty siphons, by exhaustive subset enumeration (species
/// count capped at [`MAX_SIPHON_SPECIES`]).
pub fn minimal_siphons(net: &ReactionNetwork) -> Result<Vec<Vec<usize>>> {
    let n = net.dim();
    if n > MAX_SIPHON_SPECIES {
        return Err(CrnError::TooManySpecies { count: n, max: MAX_SIPHON_SPECIES });
    }
    let mut siphon_masks: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << n) {
        let indices: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let subset = SpeciesSubset(indices);
        if is_siphon(net, &subset) {
            siphon_masks.push(mask);
        }
    }
    let mut minimal: Vec<u32> = siphon_masks
        .iter()
        .copied()
        .filter(|&m| {
            !siphon_masks.iter().any(|&other| other != m && other & m == other)
        })
        .collect();
    minimal.sort_by_key(|&m| (m.count_ones(), m));
    Ok(minimal
        .into_iter()
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect())
}

/// True iff some nonnegative point vanishing exactly on `subset` has a
/// strictly positive point of its stoichiometric compatibility class, decided
/// by an exact feasibility program: find `p >= 0` with `p_i = 0` on the
/// subset and a subspace shift `v` with `p + v >= 1` component-wise (strict
/// positivity is scale-invariant, so `>= 1` loses nothing).
pub fn is_critical(net: &ReactionNetwork, subset: &SpeciesSubset) -> bool {
    let n = net.dim();
    let stoich = stoichiometric_subspace(net);
    let basis = stoich.basis();
    let free: Vec<usize> = (0..n).filter(|i| !subset.0.contains(i)).collect();
    // Columns: p_i for i outside the subset, then c_j+ and c_j- per basis
    // vector, then one surplus s_i per species. Rows: p + B c - s = 1.
    let ncols = free.len() + 2 * basis.len() + n;
    let mut a = vec![vec![Rational::zero(); ncols]; n];
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        if let Some(col) = free.iter().position(|&f| f == i) {
            a[i][col] = Rational::one();
        }
        for (j, bv) in basis.iter().enumerate() {
            a[i][free.len() + 2 * j] = bv[i].clone();
            a[i][free.len() + 2 * j + 1] = -bv[i].clone();
        }
        a[i][free.len() + 2 * basis.len() + i] = -Rational::one();
        b.push(Rational::one());
    }
    lp::feasible_point(&a, &b).is_some()
}

// ---------------------------------------------------------------------------
// Complex balance
// ---------------------------------------------------------------------------

fn monomial_value(x: &[Rational], e: &Exponent) -> Rational {
    let mut acc = Rational::one();
    for (xi, &k) in x.iter().zip(e.entries()) {
        for _ in 0..k {
            acc *= xi;
        }
    }
    acc
}

/// True iff at the strictly positive state `x` the inflow equals the outflow
/// at every vertex, exactly.
pub fn is_complex_balanced_at(sys: &MassActionSystem, x: &[Rational]) -> Result<bool> {
    let net = sys.network();
    let n = net.dim();
    if x.len() != n {
        return Err(CrnError::DimensionMismatch { left: n, right: x.len() });
    }
    if x.iter().any(|c| !num_traits::Signed::is_positive(c)) {
        return Err(CrnError::InvalidNetwork("complex balance point must be positive".into()));
    }
    for v0 in 0..net.vertices().len() {
        let mut outflow = Rational::zero();
        let mut inflow = Rational::zero();
        for (e, k) in net.edges().iter().zip(sys.rates()) {
            if e.src == v0 {
                outflow += k * monomial_value(x, net.vertex(v0));
            }
            if e.dst == v0 {
                inflow += k * monomial_value(x, net.vertex(e.src));
            }
        }
        if inflow != outflow {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Aggregate report
// ---------------------------------------------------------------------------

/// Every classification fact about a system in one bundle.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassificationReport {
    pub species: Vec<String>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub linkage_classes: usize,
    pub stoichiometric_dim: usize,
    pub deficiency: usize,
    pub weakly_reversible: bool,
    pub endotactic: bool,
    pub endotactic_counterexample: Option<CounterExample>,
    pub strongly_endotactic: bool,
    pub strongly_endotactic_counterexample: Option<CounterExample>,
    pub minimal_siphons: Vec<Vec<usize>>,
    pub critical_siphons: Vec<Vec<usize>>,
}

/// Computes the full report (dimension at most three, species at most
/// sixteen).
pub fn classification_report(sys: &MassActionSystem) -> Result<ClassificationReport> {
    let net = sys.network();
    let n = net.dim();
    if n > MAX_DIM {
        return Err(CrnError::UnsupportedDimension { dim: n, max: MAX_DIM });
    }
    let linkage = linkage_classes(net).len();
    let stoich_dim = stoichiometric_subspace(net).dim();
    let endo = is_endotactic(net)?;
    let strong = is_strongly_endotactic(net)?;
    let siphons = minimal_siphons(net)?;
    let critical_siphons = siphons
        .iter()
        .filter(|s| {
            let subset = SpeciesSubset((*s).clone());
            is_critical(net, &subset)
        })
        .cloned()
        .collect();
    Ok(ClassificationReport {
        species: net.species().names().to_vec(),
        vertex_count: net.vertices().len(),
        edge_count: net.edges().len(),
        linkage_classes: linkage,
        stoichiometric_dim: stoich_dim,
        deficiency: deficiency(net),
        weakly_reversible: is_weakly_reversible(net),
        endotactic: endo.holds,
        endotactic_counterexample: endo.counterexample,
        strongly_endotactic: strong.holds,
        strongly_endotactic_counterexample: strong.counterexample,
        minimal_siphons: siphons,
        critical_siphons,
    })
}

impl ClassificationReport {
    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let fmt_subsets = |subsets: &[Vec<usize>]| -> String {
            if subsets.is_empty() {
                return "none".to_string();
            }
            subsets
                .iter()
                .map(|s| {
                    let names: Vec<&str> =
                        s.iter().map(|&i| self.species[i].as_str()).collect();
                    format!("{{{}}}", names.join(", "))
                })
                .collect::<Vec<_>>()
                .join(", ")
        };
        let fmt_counter = |c: &Option<CounterExample>| -> String {
            match c {
                None => String::new(),
                Some(c) => format!(
                    " (counterexample direction {:?}, edge {})",
                    c.direction, c.failing_edge
                ),
            }
        };
        format!(
            "species:              {}\n\
             vertices / edges:     {} / {}\n\
             linkage classes:      {}\n\
             stoichiometric dim:   {}\n\
             deficiency:           {}\n\
             weakly reversible:    {}\n\
             endotactic:           {}{}\n\
             strongly endotactic:  {}{}\n\
             minimal siphons:      {}\n\
             critical siphons:     {}\n",
            self.species.join(", "),
            self.vertex_count,
            self.edge_count,
            self.linkage_classes,
            self.stoichiometric_dim,
            self.deficiency,
            self.weakly_reversible,
            self.endotactic,
            fmt_counter(&self.endotactic_counterexample),
            self.strongly_endotactic,
            fmt_counter(&self.strongly_endotactic_counterexample),
            fmt_subsets(&self.minimal_siphons),
            fmt_subsets(&self.critical_siphons),
        )
    }
}
