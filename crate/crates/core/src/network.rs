//! The embedded reaction-graph data model and the mass-action field.
//!
//! A [`ReactionNetwork`] is a directed graph whose vertices (complexes) are
//! lattice points in the nonnegative orthant; each edge is a reaction. A
//! [`MassActionSystem`] attaches one positive rational rate constant to every
//! edge and generates the polynomial field
//! `sum over edges  k * x^src * (dst - src)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    format_polynomial, format_rational, parse_polynomial, parse_rational, Exponent, PolyVector,
    Polynomial, Rational,
};
use crate::error::{CrnError, Result};

/// Ordered, unique, nonempty species names. Fixes the ambient dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpeciesList(Vec<String>);

impl SpeciesList {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(CrnError::InvalidNetwork("species list is empty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(CrnError::InvalidNetwork("empty species name".into()));
            }
            if names[..i].contains(n) {
                return Err(CrnError::InvalidNetwork(format!("duplicate species name '{n}'")));
            }
        }
        Ok(SpeciesList(names))
    }

    pub fn from_names(names: &[&str]) -> Result<Self> {
        SpeciesList::new(names.iter().map(|s| s.to_string()).collect())
    }

    /// Default names for `n` species: `x`, `y`, `z` up to three, `x1..xn` above.
    pub fn default_names(n: usize) -> Self {
        let names = if n <= 3 {
            ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        SpeciesList(names)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }
}

/// A reaction `vertices[src] -> vertices[dst]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
}

/// A directed graph embedded in the nonnegative lattice.
///
/// Invariants: vertices are distinct and share the species dimension, edges
/// reference valid vertices, contain no self-loops and no duplicates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReactionNetwork {
    species: SpeciesList,
    vertices: Vec<Exponent>,
    edges: Vec<Edge>,
}

impl ReactionNetwork {
    pub fn new(species: SpeciesList, vertices: Vec<Exponent>, edges: Vec<Edge>) -> Result<Self> {
        let n = species.len();
        for v in &vertices {
            if v.dim() != n {
                return Err(CrnError::DimensionMismatch { left: n, right: v.dim() });
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(CrnError::InvalidNetwork(format!("duplicate vertex {v}")));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e.src >= vertices.len() || e.dst >= vertices.len() {
                return Err(CrnError::InvalidNetwork(format!(
                    "edge {} -> {} references a missing vertex",
                    e.src, e.dst
                )));
            }
            if e.src == e.dst {
                return Err(CrnError::InvalidNetwork(format!(
                    "self-loop at vertex {}",
                    vertices[e.src]
                )));
            }
            if edges[..i].contains(e) {
                return Err(CrnError::InvalidNetwork(format!(
                    "duplicate edge {} -> {}",
                    vertices[e.src], vertices[e.dst]
                )));
            }
        }
        Ok(ReactionNetwork { species, vertices, edges })
    }

    pub fn species(&self) -> &SpeciesList {
        &self.species
    }

    pub fn dim(&self) -> usize {
        self.species.len()
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, i: usize) -> &Exponent {
        &self.vertices[i]
    }

    /// The reaction vector `dst - src` of an edge, as signed integers.
    pub fn reaction_vector(&self, e: &Edge) -> Vec<i64> {
        let src = self.vertices[e.src].entries();
        let dst = self.vertices[e.dst].entries();
        src.iter().zip(dst).map(|(&s, &d)| d as i64 - s as i64).collect()
    }

    /// Indices of vertices that are the source of at least one edge.
    pub fn source_indices(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vertices.len()];
        for e in &self.edges {
            seen[e.src] = true;
        }
        (0..self.vertices.len()).filter(|&i| seen[i]).collect()
    }

    /// The complex label of a vertex, e.g. `x + 2y` or `0` for the origin.
    pub fn complex_label(&self, i: usize) -> String {
        let v = &self.vertices[i];
        let mut parts = Vec::new();
        for (name, &k) in self.species.names().iter().zip(v.entries()) {
            match k {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{k}{name}")),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// A reaction network with one positive rate constant per edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MassActionSystem {
    network: ReactionNetwork,
    rates: Vec<Rational>,
}

impl MassActionSystem {
    pub fn new(network: ReactionNetwork, rates: Vec<Rational>) -> Result<Self> {
        if rates.len() != network.edges().len() {
            return Err(CrnError::InvalidNetwork(format!(
                "{} rates for {} edges",
                rates.len(),
                network.edges().len()
            )));
        }
        if let Some(k) = rates.iter().find(|k| !k.is_positive()) {
            return Err(CrnError::InvalidNetwork(format!(
                "rate constant {} is not positive",
                format_rational(k)
            )));
        }
        Ok(MassActionSystem { network, rates })
    }

    /// Builds a system from raw reactions `(src complex, dst complex, rate)`,
    /// deduplicating vertices and merging duplicate edges by summing rates.
    pub fn assemble(
        species: SpeciesList,
        reactions: Vec<(Exponent, Exponent, Rational)>,
    ) -> Result<Self> {
        let n = species.len();
        let mut vertices: Vec<Exponent> = Vec::new();
        let mut index: HashMap<Exponent, usize> = HashMap::new();
        let mut edge_rates: HashMap<(usize, usize), Rational> = HashMap::new();
        let mut edge_order: Vec<(usize, usize)> = Vec::new();
        for (src, dst, rate) in reactions {
            if src.dim() != n || dst.dim() != n {
                return Err(CrnError::DimensionMismatch {
                    left: n,
                    right: src.dim().max(dst.dim()),
                });
            }
            if src == dst {
                return Err(CrnError::InvalidNetwork(format!("self-loop at vertex {src}")));
            }
            if !rate.is_positive() {
                return Err(CrnError::InvalidNetwork(format!(
                    "rate constant {} is not positive",
                    format_rational(&rate)
                )));
            }
            let mut intern = |v: Exponent| -> usize {
                if let Some(&i) = index.get(&v) {
                    i
                } else {
                    let i = vertices.len();
                    index.insert(v.clone(), i);
                    vertices.push(v);
                    i
                }
            };
            let s = intern(src);
            let d = intern(dst);
            match edge_rates.entry((s, d)) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(rate);
                    edge_order.push((s, d));
                }
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += rate;
                }
            }
        }
        let edges: Vec<Edge> = edge_order.iter().map(|&(src, dst)| Edge { src, dst }).collect();
        let rates: Vec<Rational> = edge_order.iter().map(|k| edge_rates[k].clone()).collect();
        let network = ReactionNetwork::new(species, vertices, edges)?;
        MassActionSystem::new(network, rates)
    }

    pub fn network(&self) -> &ReactionNetwork {
        &self.network
    }

    pub fn species(&self) -> &SpeciesList {
        self.network.species()
    }

    pub fn dim(&self) -> usize {
        self.network.dim()
    }

    pub fn rates(&self) -> &[Rational] {
        &self.rates
    }

    pub fn rate(&self, edge_idx: usize) -> &Rational {
        &self.rates[edge_idx]
    }

    /// Reactions as `(src complex, dst complex, rate)` triples.
    pub fn reactions(&self) -> impl Iterator<Item = (&Exponent, &Exponent, &Rational)> {
        self.network
            .edges()
            .iter()
            .zip(&self.rates)
            .map(|(e, k)| (self.network.vertex(e.src), self.network.vertex(e.dst), k))
    }
}

/// The species-formation-rate field `sum k * x^src * (dst - src)`.
pub fn mass_action_field(sys: &MassActionSystem) -> PolyVector {
    let n = sys.dim();
    let mut components = vec![Polynomial::zero(n); n];
    for (src, dst, rate) in sys.reactions() {
        for i in 0..n {
            let delta = dst.get(i) as i64 - src.get(i) as i64;
            if delta == 0 {
                continue;
            }
            let coeff = rate * Rational::from_integer(delta.into());
            let term = Polynomial::monomial(src.clone(), coeff);
            components[i] = &components[i] + &term;
        }
    }
    PolyVector::new(components).expect("components share the system dimension")
}

/// An integer echelon basis of the stoichiometric subspace
/// `span { dst - src : edges }`, with its dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StoichiometricData {
    basis: Vec<Vec<Rational>>,
    dim: usize,
}

impl StoichiometricData {
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Dimension `s` of the subspace.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact membership test for a rational vector.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        for row in &self.basis {
            let lead = row.iter().position(|c| !c.is_zero()).expect("nonzero basis row");
            if !w[lead].is_zero() {
                let factor = &w[lead] / &row[lead];
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi -= &factor * ri;
                }
            }
        }
        w.iter().all(|c| c.is_zero())
    }

    /// Orthogonality test: true when `u` is orthogonal to the whole subspace.
    pub fn orthogonal_to(&self, u: &[i64]) -> bool {
        self.basis.iter().all(|row| {
            let dot: Rational = row
                .iter()
                .zip(u)
                .map(|(c, &ui)| c * Rational::from_integer(ui.into()))
                .sum();
            dot.is_zero()
        })
    }
}

/// Reduced row echelon form over the rationals, scaled back to primitive
/// integer rows with positive leading entries.
fn integer_echelon(rows: Vec<Vec<Rational>>, n: usize) -> StoichiometricData {
    let mut mat: Vec<Vec<Rational>> = rows;
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == mat.len() {
            break;
        }
        let Some(r) = (pivot_row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(pivot_row, r);
        let inv = mat[pivot_row][col].clone();
        for e in mat[pivot_row].iter_mut() {
            *e /= &inv;
        }
        let lead = mat[pivot_row].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (e, l) in row.iter_mut().zip(&lead) {
                    *e -= &f * l;
                }
            }
        }
        pivot_row += 1;
    }
    mat.truncate(pivot_row);
    // Scale rows to primitive integer vectors.
    for row in mat.iter_mut() {
        let mut denom_lcm = num_bigint::BigInt::from(1);
        for e in row.iter() {
            denom_lcm = num_integer::lcm(denom_lcm, e.denom().clone());
        }
        let scaled: Vec<num_bigint::BigInt> =
            row.iter().map(|e| e.numer() * (&denom_lcm / e.denom())).collect();
        let mut numer_gcd = num_bigint::BigInt::zero();
        for v in &scaled {
            numer_gcd = num_integer::gcd(numer_gcd, v.clone());
        }
        if numer_gcd.is_zero() {
            continue;
        }
        for (e, v) in row.iter_mut().zip(scaled) {
            *e = Rational::from_integer(v / &numer_gcd);
        }
    }
    StoichiometricData { dim: mat.len(), basis: mat }
}

/// Computes the stoichiometric subspace of a network.
pub fn stoichiometric_subspace(net: &ReactionNetwork) -> StoichiometricData {
    let n = net.dim();
    let rows: Vec<Vec<Rational>> = net
        .edges()
        .iter()
        .map(|e| {
            net.reaction_vector(e)
                .into_iter()
                .map(|v| Rational::from_integer(v.into()))
                .collect()
        })
        .collect();
    integer_echelon(rows, n)
}

/// Connected components of the underlying undirected graph, as a partition of
/// vertex indices. Their count is the linkage-class number.
pub fn linkage_classes(net: &ReactionNetwork) -> Vec<Vec<usize>> {
    let nv = net.vertices().len();
    let mut adj = vec![Vec::new(); nv];
    for e in net.edges() {
        adj[e.src].push(e.dst);
        adj[e.dst].push(e.src);
    }
    let mut seen = vec![false; nv];
    let mut classes = Vec::new();
    for start in 0..nv {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut class = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            class.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// True when `z` lies in the stoichiometric compatibility class of `z0`,
/// i.e. `z - z0` belongs to the stoichiometric subspace. Both points must be
/// strictly positive.
pub fn compatibility_class_member(
    net: &ReactionNetwork,
    z0: &[Rational],
    z: &[Rational],
) -> Result<bool> {
    let n = net.dim();
    if z0.len() != n || z.len() != n {
        return Err(CrnError::DimensionMismatch { left: n, right: z0.len().max(z.len()) });
    }
    if z0.iter().chain(z).any(|c| !c.is_positive()) {
        return Err(CrnError::InvalidNetwork(
            "compatibility class points must be strictly positive".into(),
        ));
    }
    let diff: Vec<Rational> = z.iter().zip(z0).map(|(a, b)| a - b).collect();
    Ok(stoichiometric_subspace(net).contains(&diff))
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    src: usize,
    dst: usize,
    rate: String,
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    species: Vec<String>,
    vertices: Vec<Vec<u32>>,
    edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
struct FieldFile {
    species: Vec<String>,
    components: Vec<String>,
}

impl MassActionSystem {
    /// Parses the JSON system format:
    /// `{"species":["x","y"],"vertices":[[1,0],[0,1]],"edges":[{"src":0,"dst":1,"rate":"3/2"}]}`.
    pub fn from_json(input: &str) -> Result<Self> {
        let file: SystemFile =
            serde_json::from_str(input).map_err(|e| CrnError::Json(e.to_string()))?;
        let species = SpeciesList::new(file.species)?;
        let vertices: Vec<Exponent> = file.vertices.into_iter().map(Exponent::new).collect();
        let mut edges = Vec::with_capacity(file.edges.len());
        let mut rates = Vec::with_capacity(file.edges.len());
        for e in file.edges {
            edges.push(Edge { src: e.src, dst: e.dst });
            rates.push(parse_rational(&e.rate)?);
        }
        let network = ReactionNetwork::new(species, vertices, edges)?;
        MassActionSystem::new(network, rates)
    }

    /// Serializes to the canonical JSON system format (stable byte-for-byte).
    pub fn to_json(&self) -> String {
        let file = SystemFile {
            species: self.species().names().to_vec(),
            vertices: self
                .network
                .vertices()
                .iter()
                .map(|v| v.entries().to_vec())
                .collect(),
            edges: self
                .network
                .edges()
                .iter()
                .zip(&self.rates)
                .map(|(e, k)| EdgeFile { src: e.src, dst: e.dst, rate: format_rational(k) })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("system serializes")
    }
}

/// Parses the JSON field format:
/// `{"species":["x","y"],"components":["1 - x","x"]}`.
pub fn field_from_json(input: &str) -> Result<(SpeciesList, PolyVector)> {
    let file: FieldFile = serde_json::from_str(input).map_err(|e| CrnError::Json(e.to_string()))?;
    let species = SpeciesList::new(file.species)?;
    if file.components.len() != species.len() {
        return Err(CrnError::DimensionMismatch {
            left: species.len(),
            right: file.components.len(),
        });
    }
    let components = file
        .components
        .iter()
        .map(|src| parse_polynomial(src, species.names()))
        .collect::<Result<Vec<_>>>()?;
    Ok((species, PolyVector::new(components)?))
}

/// Serializes a field to canonical JSON (components in canonical term order).
pub fn field_to_json(species: &SpeciesList, field: &PolyVector) -> String {
    let file = FieldFile {
        species: species.names().to_vec(),
        components: field
            .components()
            .iter()
            .map(|c| format_polynomial(c, species.names()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("field serializes")
}

/// Graphviz DOT export: vertices labeled by complex, one edge per reaction
/// annotated with its rate.
pub fn to_dot(sys: &MassActionSystem) -> String {
    let net = sys.network();
    let mut out = String::from("digraph reaction_network {\n");
    for i in 0..net.vertices().len() {
        let _ = writeln!(out, "  v{} [label=\"{}\"];", i, net.complex_label(i));
    }
    for (e, k) in net.edges().iter().zip(sys.rates()) {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.src, e.dst, format_rational(k));
    }
    out.push_str("}\n");
    out
}
