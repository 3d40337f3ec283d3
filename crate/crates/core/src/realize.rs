//! Dynamical equivalence, canonical realizations of polynomial fields, and the
//! weakly-reversible realizability decision on a bounded candidate complex
//! set.
//!
//! Realizability questions decompose by source: the coefficient vector of the
//! monomial `x^y` in a mass-action field is contributed exclusively by edges
//! with source `y`, so "is there a realization on candidate set C" is one
//! small exact linear program per candidate source. Weak reversibility is then
//! decided by a pruning fixpoint: keep an edge only if some realization uses
//! it with positive rate (one LP per edge), delete admissible edges that lie
//! on no directed cycle of the admissible graph, and repeat. The fixpoint is
//! sound and complete relative to the candidate set: averaging per-edge
//! witnesses gives a single realization positive on every admissible edge, and
//! a hypothetical weakly reversible realization survives every pruning round.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{Exponent, PolyVector, Rational};
use crate::error::{CrnError, Result};
use crate::lp::{self, LpOutcome};
use crate::network::{mass_action_field, MassActionSystem, SpeciesList};

/// Cap on candidate complex sets; the edge count is quadratic in this.
pub const MAX_CANDIDATES: usize = 64;

/// True iff the two systems generate identical polynomial fields.
pub fn is_dynamically_equivalent(a: &MassActionSystem, b: &MassActionSystem) -> Result<bool> {
    if a.species() != b.species() {
        return Err(CrnError::SpeciesMismatch);
    }
    Ok(mass_action_field(a) == mass_action_field(b))
}

/// Deterministic axis-aligned realization of a polynomial field.
///
/// For every support exponent `e` and species `i` with net coefficient `c`,
/// emit the edge `e -> e ± unit_i` with rate `|c|`, the sign following the
/// sign of `c`. Fails when a negative coefficient sits on a species whose
/// exponent in `e` is zero; such a field is not realizable by any mass-action
/// system (the monomial `x^e` can only be contributed by source `e`, and no
/// reaction from `e` can decrease a species absent from `e`).
pub fn canonical_realization(species: &SpeciesList, f: &PolyVector) -> Result<MassActionSystem> {
    let n = f.dim();
    if species.len() != n {
        return Err(CrnError::DimensionMismatch { left: species.len(), right: n });
    }
    let mut reactions = Vec::new();
    for e in f.support_union() {
        for i in 0..n {
            let c = f.component(i).coeff(&e);
            if c.is_zero() {
                continue;
            }
            let mut target = e.entries().to_vec();
            if c.is_positive() {
                target[i] += 1;
            } else {
                if target[i] == 0 {
                    return Err(CrnError::MalformedField {
                        exponent: e.entries().to_vec(),
                        species: i,
                    });
                }
                target[i] -= 1;
            }
            reactions.push((e.clone(), Exponent::new(target), c.abs()));
        }
    }
    MassActionSystem::assemble(species.clone(), reactions)
}

/// A finite list of complexes usable as sources and targets of a hypothetical
/// realization. Stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CandidateComplexSet {
    complexes: Vec<Exponent>,
}

impl CandidateComplexSet {
    pub fn new(complexes: Vec<Exponent>) -> Result<Self> {
        let mut set: BTreeSet<Exponent> = BTreeSet::new();
        let mut dim = None;
        for c in complexes {
            match dim {
                None => dim = Some(c.dim()),
                Some(d) if d != c.dim() => {
                    return Err(CrnError::DimensionMismatch { left: d, right: c.dim() })
                }
                _ => {}
            }
            set.insert(c);
        }
        Ok(CandidateComplexSet { complexes: set.into_iter().collect() })
    }

    pub fn complexes(&self) -> &[Exponent] {
        &self.complexes
    }

    pub fn len(&self) -> usize {
        self.complexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complexes.is_empty()
    }

    fn check_covers(&self, f: &PolyVector) -> Result<()> {
        for e in f.support_union() {
            if !self.complexes.contains(&e) {
                return Err(CrnError::MissingSupportExponent { exponent: e.entries().to_vec() });
            }
        }
        Ok(())
    }
}

/// The realization feasibility program over a candidate set: one nonnegative
/// rate per ordered pair of candidates, and for every candidate source the
/// flow constraint `sum of rate * (target - source) = coefficient vector of
/// x^source in the field` (the zero vector for sources outside the support).
#[derive(Clone, Debug)]
pub struct RealizationLp {
    pub candidates: Vec<Exponent>,
    /// Per-candidate right-hand side: the net coefficient vector per species.
    pub rhs: Vec<Vec<Rational>>,
}

/// Builds the realization program for a field over a candidate set.
pub fn realization_lp(f: &PolyVector, c: &CandidateComplexSet) -> Result<RealizationLp> {
    c.check_covers(f)?;
    let rhs = c.complexes.iter().map(|e| f.coeff_vector(e)).collect();
    Ok(RealizationLp { candidates: c.complexes.clone(), rhs })
}

impl RealizationLp {
    fn dim(&self) -> usize {
        self.rhs.first().map(|r| r.len()).unwrap_or(0)
    }

    /// Direction matrix columns `target - source` for the allowed targets of
    /// one source.
    fn source_columns(&self, src: usize, targets: &[usize]) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let s = &self.candidates[src];
        (0..n)
            .map(|i| {
                targets
                    .iter()
                    .map(|&t| {
                        let d = self.candidates[t].get(i) as i64 - s.get(i) as i64;
                        Rational::from_integer(d.into())
                    })
                    .collect()
            })
            .collect()
    }

    /// Any nonnegative rate vector for one source, over the allowed targets.
    fn solve_source(&self, src: usize, targets: &[usize]) -> Option<Vec<Rational>> {
        lp::feasible_point(&self.source_columns(src, targets), &self.rhs[src])
    }

    /// Decides whether some feasible rate vector for `src` puts positive rate
    /// on the edge to `targets[edge_pos]`; returns a witness rate vector when
    /// it does. Maximizes the edge rate capped at one so the program stays
    /// bounded; a cap-infeasible program means every realization drives the
    /// edge above the cap, which is positive in particular.
    fn edge_witness(&self, src: usize, targets: &[usize], edge_pos: usize) -> Option<Vec<Rational>> {
        let n = self.dim();
        let m = targets.len();
        let mut a = self.source_columns(src, targets);
        for row in a.iter_mut() {
            row.push(Rational::zero());
        }
        let mut cap_row = vec![Rational::zero(); m + 1];
        cap_row[edge_pos] = Rational::one();
        cap_row[m] = Rational::one();
        a.push(cap_row);
        let mut b = self.rhs[src].clone();
        b.push(Rational::one());
        let mut obj = vec![Rational::zero(); m + 1];
        obj[edge_pos] = Rational::one();
        debug_assert_eq!(a.len(), n + 1);
        match lp::maximize(&a, &b, &obj) {
            LpOutcome::Optimal { x, value } => {
                if value.is_positive() {
                    Some(x[..m].to_vec())
                } else {
                    None
                }
            }
            LpOutcome::Infeasible => self.solve_source(src, targets),
            LpOutcome::Unbounded => unreachable!("edge rate is capped"),
        }
    }
}

/// A realization of `f` on complexes from `c`, or `None` when none exists.
pub fn realization_feasible(
    species: &SpeciesList,
    f: &PolyVector,
    c: &CandidateComplexSet,
) -> Result<Option<MassActionSystem>> {
    let lp = realization_lp(f, c)?;
    let m = lp.candidates.len();
    let mut reactions = Vec::new();
    for src in 0..m {
        let targets: Vec<usize> = (0..m).filter(|&t| t != src).collect();
        match lp.solve_source(src, &targets) {
            None => return Ok(None),
            Some(rates) => {
                for (&t, k) in targets.iter().zip(rates) {
                    if k.is_positive() {
                        reactions.push((
                            lp.candidates[src].clone(),
                            lp.candidates[t].clone(),
                            k,
                        ));
                    }
                }
            }
        }
    }
    Ok(Some(MassActionSystem::assemble(species.clone(), reactions)?))
}

/// One round of the pruning fixpoint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PruneRound {
    pub allowed_edges: usize,
    pub admissible_edges: usize,
    pub removed_edges: usize,
}

/// Outcome of the weakly-reversible realizability decision.
#[derive(Clone, Debug)]
pub enum WrDecision {
    Realizable { witness: MassActionSystem, rounds: Vec<PruneRound> },
    NotRealizable { rounds: Vec<PruneRound> },
}

impl WrDecision {
    pub fn is_realizable(&self) -> bool {
        matches!(self, WrDecision::Realizable { .. })
    }

    pub fn rounds(&self) -> &[PruneRound] {
        match self {
            WrDecision::Realizable { rounds, .. } => rounds,
            WrDecision::NotRealizable { rounds } => rounds,
        }
    }
}

/// Decides whether a weakly reversible mass-action system on complexes from
/// `c` generates the field `f`, returning a verified witness when one exists.
///
/// Iterates: (1) per-source feasibility over the allowed edges, (2) edge
/// admissibility (an edge survives only if some feasible realization uses it
/// with positive rate), (3) deletion of admissible edges that lie in no
/// directed cycle of the admissible graph; repeats until nothing is deleted.
/// Inadmissible edges carry zero rate in every realization, so dropping them
/// never changes feasibility; any weakly reversible realization on `c` uses
/// only edges that survive every round, hence the answer is exact for this
/// candidate set.
pub fn wr_realizable_on(
    species: &SpeciesList,
    f: &PolyVector,
    c: &CandidateComplexSet,
) -> Result<WrDecision> {
    if c.len() > MAX_CANDIDATES {
        return Err(CrnError::CandidateSetTooLarge { count: c.len(), max: MAX_CANDIDATES });
    }
    let lp = realization_lp(f, c)?;
    let m = lp.candidates.len();
    let mut allowed: HashSet<(usize, usize)> = (0..m)
        .flat_map(|s| (0..m).filter(move |&t| t != s).map(move |t| (s, t)))
        .collect();
    let mut rounds: Vec<PruneRound> = Vec::new();

    loop {
        let allowed_count = allowed.len();
        // Per-source feasibility over the currently allowed edges.
        let mut witness_rates: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
        let mut feasible = true;
        'sources: for src in 0..m {
            let targets: Vec<usize> =
                (0..m).filter(|&t| t != src && allowed.contains(&(src, t))).collect();
            if lp.solve_source(src, &targets).is_none() {
                feasible = false;
                break 'sources;
            }
        }
        if !feasible {
            rounds.push(PruneRound {
                allowed_edges: allowed_count,
                admissible_edges: 0,
                removed_edges: allowed_count,
            });
            return Ok(WrDecision::NotRealizable { rounds });
        }

        // Admissible edges, with one witness rate vector per admissible edge.
        let mut admissible: HashSet<(usize, usize)> = HashSet::new();
        let mut per_source_witnesses: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); m];
        let mut per_source_targets: Vec<Vec<usize>> = vec![Vec::new(); m];
        for src in 0..m {
            let targets: Vec<usize> =
                (0..m).filter(|&t| t != src && allowed.contains(&(src, t))).collect();
            for (pos, &t) in targets.iter().enumerate() {
                if let Some(w) = lp.edge_witness(src, &targets, pos) {
                    admissible.insert((src, t));
                    per_source_witnesses[src].push(w);
                }
            }
            per_source_targets[src] = targets;
        }

        // Keep admissible edges that lie in a directed cycle of the
        // admissible graph (both endpoints in one strongly connected
        // component).
        let comp = scc_of_edges(m, &admissible);
        let cyclic: HashSet<(usize, usize)> = admissible
            .iter()
            .copied()
            .filter(|&(s, t)| comp[s] == comp[t])
            .collect();

        rounds.push(PruneRound {
            allowed_edges: allowed_count,
            admissible_edges: admissible.len(),
            removed_edges: allowed_count - cyclic.len(),
        });

        if cyclic == allowed {
            // Fixpoint: average the per-edge witnesses of each source into one
            // realization, positive on every admissible edge simultaneously.
            for src in 0..m {
                let ws = &per_source_witnesses[src];
                let targets = &per_source_targets[src];
                if ws.is_empty() {
                    continue;
                }
                let weight = Rational::new(1.into(), (ws.len() as i64).into());
                let mut avg = vec![Rational::zero(); targets.len()];
                for w in ws {
                    for (a, wi) in avg.iter_mut().zip(w) {
                        *a += &weight * wi;
                    }
                }
                for (&t, k) in targets.iter().zip(avg) {
                    if k.is_positive() {
                        witness_rates[src].push((t, k));
                    }
                }
            }
            let mut reactions = Vec::new();
            for (src, rates) in witness_rates.into_iter().enumerate() {
                for (t, k) in rates {
                    reactions.push((lp.candidates[src].clone(), lp.candidates[t].clone(), k));
                }
            }
            let witness = MassActionSystem::assemble(species.clone(), reactions)?;
            debug_assert_eq!(mass_action_field(&witness), *f);
            debug_assert!(crate::classify::is_weakly_reversible(witness.network()));
            return Ok(WrDecision::Realizable { witness, rounds });
        }
        allowed = cyclic;
    }
}

/// Strongly connected components of the digraph on `0..m` with the given
/// edges; used by the pruning loop.
fn scc_of_edges(m: usize, edges: &HashSet<(usize, usize)>) -> Vec<usize> {
    let mut fwd = vec![Vec::new(); m];
    let mut rev = vec![Vec::new(); m];
    for &(s, t) in edges {
        fwd[s].push(t);
        rev[t].push(s);
    }
    let mut order = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    for start in 0..m {
        if seen[start] {
            continue;
        }
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
    let mut comp = vec![usize::MAX; m];
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

/// The default candidate set for [`wr_realizable_on`]: all nonnegative lattice
/// points within L-infinity distance `margin` of the convex hull of the
/// field's support exponents. Membership is decided exactly, per lattice
/// point, by a tiny feasibility program over convex combinations of the
/// support points.
pub fn newton_polytope_candidates(f: &PolyVector, margin: u32) -> Result<CandidateComplexSet> {
    let n = f.dim();
    if n > crate::geometry::MAX_DIM {
        return Err(CrnError::UnsupportedDimension { dim: n, max: crate::geometry::MAX_DIM });
    }
    let support = f.support_union();
    if support.is_empty() {
        return CandidateComplexSet::new(Vec::new());
    }
    let lo: Vec<i64> = (0..n)
        .map(|i| {
            support.iter().map(|e| e.get(i) as i64).min().unwrap() - margin as i64
        })
        .map(|v| v.max(0))
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| support.iter().map(|e| e.get(i) as i64).max().unwrap() + margin as i64)
        .collect();

    let mut candidates = Vec::new();
    let mut point = lo.clone();
    loop {
        if within_margin(&support, &point, margin) {
            candidates.push(Exponent::new(point.iter().map(|&v| v as u32).collect()));
            if candidates.len() > MAX_CANDIDATES {
                return Err(CrnError::CandidateSetTooLarge {
                    count: count_remaining(&support, &point, &lo, &hi, margin, candidates.len()),
                    max: MAX_CANDIDATES,
                });
            }
        }
        // Advance the odometer.
        let mut i = 0;
        loop {
            if i == n {
                return CandidateComplexSet::new(candidates);
            }
            point[i] += 1;
            if point[i] <= hi[i] {
                break;
            }
            point[i] = lo[i];
            i += 1;
        }
    }
}

/// Exact test: is the box `point ± margin` intersected by the convex hull of
/// the support points? Equivalently, does a convex combination of the support
/// land within `margin` of `point` in every coordinate?
fn within_margin(support: &[Exponent], point: &[i64], margin: u32) -> bool {
    let m = support.len();
    let n = point.len();
    // Columns: lambda_j (m), then per coordinate one surplus and one slack.
    let ncols = m + 2 * n;
    let mut a = vec![vec![Rational::zero(); ncols]; 1 + 2 * n];
    let mut b = vec![Rational::zero(); 1 + 2 * n];
    for j in 0..m {
        a[0][j] = Rational::one();
    }
    b[0] = Rational::one();
    for i in 0..n {
        for (j, e) in support.iter().enumerate() {
            a[1 + 2 * i][j] = Rational::from_integer((e.get(i) as i64).into());
            a[2 + 2 * i][j] = Rational::from_integer((e.get(i) as i64).into());
        }
        // sum lambda e_i + s = point_i + margin
        a[1 + 2 * i][m + 2 * i] = Rational::one();
        b[1 + 2 * i] = Rational::from_integer((point[i] + margin as i64).into());
        // sum lambda e_i - t = point_i - margin
        a[2 + 2 * i][m + 2 * i + 1] = -Rational::one();
        b[2 + 2 * i] = Rational::from_integer((point[i] - margin as i64).into());
    }
    lp::feasible_point(&a, &b).is_some()
}

/// Finishes counting candidates after the cap is hit, for the error report.
fn count_remaining(
    support: &[Exponent],
    from: &[i64],
    lo: &[i64],
    hi: &[i64],
    margin: u32,
    so_far: usize,
) -> usize {
    let n = lo.len();
    let mut count = so_far;
    let mut point = from.to_vec();
    loop {
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            point[i] += 1;
            if point[i] <= hi[i] {
                break;
            }
            point[i] = lo[i];
            i += 1;
        }
        if within_margin(support, &point, margin) {
            count += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat_int};
    use crate::classify::is_weakly_reversible;
    use crate::transform;

    fn species_xy() -> SpeciesList {
        SpeciesList::from_names(&["x", "y"]).unwrap()
    }

    fn field(components: &[&str]) -> PolyVector {
        let names: Vec<String> = ["x", "y", "z"][..components.len()]
            .iter()
            .map(|s| s.to_string())
            .collect();
        PolyVector::new(
            components.iter().map(|c| parse_polynomial(c, &names).unwrap()).collect(),
        )
        .unwrap()
    }

    fn exp(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn canonical_realization_of_exchange_field() {
        let f = field(&["-x", "x"]);
        let sys = canonical_realization(&species_xy(), &f).unwrap();
        // Two axis edges from (1,0): down to (0,0) and up to (1,1).
        assert_eq!(sys.network().edges().len(), 2);
        assert_eq!(mass_action_field(&sys), f);
    }

    #[test]
    fn canonical_realization_of_zero_field_is_empty() {
        let f = PolyVector::zero(2);
        let sys = canonical_realization(&species_xy(), &f).unwrap();
        assert!(sys.network().edges().is_empty());
        assert!(sys.network().vertices().is_empty());
    }

    #[test]
    fn canonical_realization_rejects_malformed_fields() {
        // Coefficient of x^(0,0) in the first component is negative: no
        // mass-action system can consume a species absent from the source.
        let f = field(&["-1", "0"]);
        assert!(matches!(
            canonical_realization(&species_xy(), &f),
            Err(CrnError::MalformedField { species: 0, .. })
        ));
    }

    #[test]
    fn round_trip_field_realization() {
        let f = field(&["1 - x + y^2 - x*y^2", "y - 2*y^2 - 2*x*y^2"]);
        let sys = canonical_realization(&species_xy(), &f).unwrap();
        assert_eq!(mass_action_field(&sys), f);
    }

    #[test]
    fn dynamical_equivalence_examples() {
        let f = field(&["-x", "x"]);
        let a = canonical_realization(&species_xy(), &f).unwrap();
        assert!(is_dynamically_equivalent(&a, &a).unwrap());
        // Stretch the production edge (1,0) -> (1,1); the consumption edge
        // cannot stretch without leaving the orthant.
        let b = transform::length_transform(&a, 1, &rat_int(2)).unwrap();
        assert!(is_dynamically_equivalent(&a, &b).unwrap());
        // A -> B versus 2A -> 2B with unit rates: different fields.
        let one = MassActionSystem::assemble(
            species_xy(),
            vec![(exp(&[1, 0]), exp(&[0, 1]), rat_int(1))],
        )
        .unwrap();
        let two = MassActionSystem::assemble(
            species_xy(),
            vec![(exp(&[2, 0]), exp(&[0, 2]), rat_int(1))],
        )
        .unwrap();
        assert!(!is_dynamically_equivalent(&one, &two).unwrap());
    }

    #[test]
    fn feasibility_with_canonical_candidates() {
        let f = field(&["-x", "x"]);
        let c = CandidateComplexSet::new(vec![
            exp(&[1, 0]),
            exp(&[0, 0]),
            exp(&[1, 1]),
            exp(&[0, 1]),
        ])
        .unwrap();
        let witness = realization_feasible(&species_xy(), &f, &c).unwrap().unwrap();
        assert_eq!(mass_action_field(&witness), f);
    }

    #[test]
    fn feasibility_detects_impossible_direction() {
        // f = (x, 0): source (1,0) must move along +x, but the only other
        // candidate (0,0) points the wrong way.
        let f = field(&["x", "0"]);
        let c = CandidateComplexSet::new(vec![exp(&[1, 0]), exp(&[0, 0])]).unwrap();
        assert!(realization_feasible(&species_xy(), &f, &c).unwrap().is_none());
    }

    #[test]
    fn zero_field_is_trivially_feasible() {
        let f = PolyVector::zero(2);
        let c = CandidateComplexSet::new(vec![exp(&[1, 0]), exp(&[0, 1])]).unwrap();
        let witness = realization_feasible(&species_xy(), &f, &c).unwrap().unwrap();
        assert!(witness.network().edges().is_empty());
    }

    #[test]
    fn missing_support_exponent_is_an_error() {
        let f = field(&["-x", "x"]);
        let c = CandidateComplexSet::new(vec![exp(&[0, 0])]).unwrap();
        assert!(matches!(
            realization_feasible(&species_xy(), &f, &c),
            Err(CrnError::MissingSupportExponent { .. })
        ));
    }

    #[test]
    fn wr_decision_positive_control() {
        let f = field(&["y - x", "x - y"]);
        let c = CandidateComplexSet::new(vec![exp(&[1, 0]), exp(&[0, 1])]).unwrap();
        match wr_realizable_on(&species_xy(), &f, &c).unwrap() {
            WrDecision::Realizable { witness, .. } => {
                assert!(is_weakly_reversible(witness.network()));
                assert_eq!(mass_action_field(&witness), f);
            }
            WrDecision::NotRealizable { .. } => panic!("exchange field is realizable"),
        }
    }

    #[test]
    fn wr_decision_negative_for_strict_decay() {
        // f = (-x, x): species x strictly decreases wherever positive; the
        // pruning fixpoint empties the admissible graph.
        let f = field(&["-x", "x"]);
        let c = CandidateComplexSet::new(vec![
            exp(&[1, 0]),
            exp(&[0, 0]),
            exp(&[1, 1]),
            exp(&[0, 1]),
        ])
        .unwrap();
        let decision = wr_realizable_on(&species_xy(), &f, &c).unwrap();
        assert!(!decision.is_realizable());
        assert!(!decision.rounds().is_empty());
    }

    #[test]
    fn wr_monotone_in_candidate_set() {
        let f = field(&["y - x", "x - y"]);
        let small = CandidateComplexSet::new(vec![exp(&[1, 0]), exp(&[0, 1])]).unwrap();
        let big = CandidateComplexSet::new(vec![
            exp(&[1, 0]),
            exp(&[0, 1]),
            exp(&[0, 0]),
            exp(&[1, 1]),
            exp(&[2, 0]),
        ])
        .unwrap();
        assert!(wr_realizable_on(&species_xy(), &f, &small).unwrap().is_realizable());
        assert!(wr_realizable_on(&species_xy(), &f, &big).unwrap().is_realizable());
    }

    #[test]
    fn candidate_enumeration_margins() {
        // Support {(1,0)}: the hull is a point.
        let f = field(&["-x", "x"]);
        let c0 = newton_polytope_candidates(&f, 0).unwrap();
        assert_eq!(c0.complexes(), &[exp(&[1, 0])]);
        // Margin one: the 3x3 box around (1,0) clipped to the orthant.
        let c1 = newton_polytope_candidates(&f, 1).unwrap();
        assert_eq!(c1.len(), 6);
        assert!(c1.complexes().contains(&exp(&[0, 0])));
        assert!(c1.complexes().contains(&exp(&[2, 1])));
        assert!(!c1.complexes().contains(&exp(&[2, 2])));
    }

    #[test]
    fn candidate_enumeration_matches_hull_lattice_points() {
        // Support triangle (0,0), (2,0), (0,2): margin 0 lattice points.
        let f = field(&["1 + x^2 - y^2", "y^2 - x^2"]);
        let c = newton_polytope_candidates(&f, 0).unwrap();
        // Graded lexicographic candidate order.
        let expected = [
            exp(&[0, 0]),
            exp(&[0, 1]),
            exp(&[1, 0]),
            exp(&[0, 2]),
            exp(&[1, 1]),
            exp(&[2, 0]),
        ];
        assert_eq!(c.complexes(), &expected[..]);
    }

    #[test]
    fn candidate_cap_reports_count() {
        // A wide support in three dimensions overflows the cap.
        let f = field(&["x^9*y^9 - z^9", "x^9 - y^9*z^9", "y^9 - x^9*z^9"]);
        match newton_polytope_candidates(&f, 1) {
            Err(CrnError::CandidateSetTooLarge { count, max }) => {
                assert!(count > max);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }
}
