//! Maximal refinements, part graphs and the cancellation-free antipode.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::key::BasisKey;
use super::ops::{product_keys, restricted_key};
use super::vector::HopfVector;
use crate::error::{Result, SubwordError};
use crate::flats::{Flat, FlatDecomposition, Tuple};
use crate::graph::{acyclic_orientation_count, is_acyclic, SimpleGraph};
use crate::linalg::{rational, Rational, Subspace};

/// The chosen representative `Ψ⁰(F)`: the orthogonal components of all parts, sorted by
/// `(dim, J)`, with `f[i]` the index of the part containing component `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi0 {
    pub parts: Vec<Flat>,
    pub f: Vec<usize>,
}

pub fn psi0(tuple: &Tuple, d: &FlatDecomposition) -> Psi0 {
    let mut tagged: Vec<(Flat, usize)> = d
        .parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| tuple.orthogonal_components(p).into_iter().map(move |c| (c, i)))
        .collect();
    tagged.sort();
    let (parts, f) = tagged.into_iter().unzip();
    Psi0 { parts, f }
}

/// `G(F)`: arc `(i, j)` when components `i`, `j` are not orthogonal and `f(i) < f(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartGraph {
    pub arcs: Vec<(usize, usize)>,
    pub simple: SimpleGraph,
}

pub fn part_graph(tuple: &Tuple, psi: &Psi0) -> Result<PartGraph> {
    let n = psi.parts.len();
    let mut arcs = Vec::new();
    let mut simple = SimpleGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if tuple.flats_orthogonal(&psi.parts[i], &psi.parts[j]) {
                continue;
            }
            simple.add_edge(i, j);
            match psi.f[i].cmp(&psi.f[j]) {
                std::cmp::Ordering::Less => arcs.push((i, j)),
                std::cmp::Ordering::Greater => arcs.push((j, i)),
                std::cmp::Ordering::Equal => {
                    return Err(SubwordError::Internal(format!(
                        "non-orthogonal components {i} and {j} lie in the same part"
                    )))
                }
            }
        }
    }
    arcs.sort_unstable();
    Ok(PartGraph { arcs, simple })
}

/// `σ` by peeling the largest source; `sigma[i]` is the vertex placed at position `i`.
pub fn sigma_permutation(vertices: usize, arcs: &[(usize, usize)]) -> Result<Vec<usize>> {
    if !is_acyclic(vertices, arcs) {
        return Err(SubwordError::Internal("part graph has a cycle".into()));
    }
    let mut remaining: Vec<bool> = vec![true; vertices];
    let mut sigma = Vec::with_capacity(vertices);
    for _ in 0..vertices {
        let source = (0..vertices)
            .rev()
            .find(|&v| remaining[v] && !arcs.iter().any(|&(a, b)| b == v && remaining[a]))
            .expect("acyclic graphs have sources");
        remaining[source] = false;
        sigma.push(source);
    }
    Ok(sigma)
}

/// Checks `G(σ Ψ⁰) = G`: reorders the components by `σ` and rebuilds the graph.
pub fn sigma_realizes(tuple: &Tuple, psi: &Psi0, arcs: &[(usize, usize)]) -> Result<bool> {
    let sigma = sigma_permutation(psi.parts.len(), arcs)?;
    let permuted = FlatDecomposition {
        parts: sigma.iter().map(|&i| psi.parts[i].clone()).collect(),
    };
    let again = psi0(tuple, &permuted);
    if again.parts != psi.parts {
        return Ok(false);
    }
    let g = part_graph(tuple, &again)?;
    let mut expected = arcs.to_vec();
    expected.sort_unstable();
    Ok(g.arcs == expected)
}

/// One term of the cancellation-free antipode.
#[derive(Clone, Debug)]
pub struct AntipodeClass {
    pub parts: Vec<Flat>,
    pub graph: SimpleGraph,
    pub orientations: u64,
    pub coefficient: Rational,
    pub key: BasisKey,
}

fn signed(length: usize, magnitude: u64) -> Rational {
    let m = rational(i64::try_from(magnitude).expect("orientation count fits in i64"));
    if length % 2 == 0 {
        m
    } else {
        -m
    }
}

/// The distinct images `Ψ⁰(FD)`: sets of orthogonally indecomposable irreducible flats whose
/// spans form a direct sum equal to `V`, listed in `(dim, J)` order.
pub fn psi0_images(tuple: &Tuple) -> Result<Vec<Vec<Flat>>> {
    if !tuple.is_irreducible() {
        return Err(SubwordError::Reducible);
    }
    let candidates: Vec<Flat> = tuple
        .enumerate_flats()
        .into_iter()
        .filter(|f| {
            f.dim() >= 1
                && tuple.is_irreducible_flat(f)
                && tuple.orthogonal_components(f).len() == 1
        })
        .collect();
    let n = tuple.rank();
    let mut out = Vec::new();
    fn extend(
        candidates: &[Flat],
        n: usize,
        start: usize,
        span: &Subspace,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<Flat>>,
    ) {
        if span.dim() == n {
            out.push(current.iter().map(|&i| candidates[i].clone()).collect());
            return;
        }
        for i in start..candidates.len() {
            let joined = span.join(candidates[i].subspace());
            if joined.dim() != span.dim() + candidates[i].dim() {
                continue;
            }
            current.push(i);
            extend(candidates, n, i + 1, &joined, current, out);
            current.pop();
        }
    }
    if n > 0 {
        extend(&candidates, n, 0, &Subspace::zero(n), &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// Terms `(-1)^ℓ a(Ḡ(K)) · (W_K, Q_K, pi_K, I_K)` of the cancellation-free formula.
pub fn antipode_classes(tuple: &Tuple) -> Result<Vec<AntipodeClass>> {
    psi0_images(tuple)?
        .into_iter()
        .map(|parts| {
            let mut graph = SimpleGraph::new(parts.len());
            for i in 0..parts.len() {
                for j in (i + 1)..parts.len() {
                    if !tuple.flats_orthogonal(&parts[i], &parts[j]) {
                        graph.add_edge(i, j);
                    }
                }
            }
            let orientations = acyclic_orientation_count(&graph);
            let keys = parts
                .iter()
                .map(|p| restricted_key(tuple, p))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&BasisKey> = keys.iter().collect();
            Ok(AntipodeClass {
                coefficient: signed(parts.len(), orientations),
                key: product_keys(&refs)?,
                parts,
                graph,
                orientations,
            })
        })
        .collect()
}

/// Cancellation-free antipode of a key.
pub fn antipode_key(key: &BasisKey) -> Result<HopfVector> {
    if key.is_unit() {
        return Ok(HopfVector::unit());
    }
    let tuple = key.to_tuple();
    let mut out = HopfVector::zero();
    for class in antipode_classes(&tuple)? {
        out.add_term(class.key, class.coefficient);
    }
    Ok(out)
}

pub fn antipode(x: &HopfVector) -> Result<HopfVector> {
    x.map_linear(antipode_key)
}

/// Comparison of the Takeuchi terms grouped by `Ψ⁰` image against `(-1)^ℓ a(Ḡ)`.
#[derive(Clone, Debug, Default)]
pub struct ClassReport {
    pub classes: usize,
    pub decompositions: usize,
    pub mismatches: Vec<String>,
    pub graphs: Vec<SimpleGraph>,
    /// Every grouped coefficient is nonzero and carries the sign `(-1)^ℓ`.
    pub sign_coherent: bool,
}

pub fn check_classes(tuple: &Tuple) -> Result<ClassReport> {
    let decompositions = tuple.flat_decompositions(None)?;
    let mut grouped: BTreeMap<Vec<Vec<usize>>, (Rational, Vec<Flat>)> = BTreeMap::new();
    let mut report = ClassReport {
        decompositions: decompositions.len(),
        sign_coherent: true,
        ..ClassReport::default()
    };
    for d in &decompositions {
        let psi = psi0(tuple, d);
        let graph = part_graph(tuple, &psi)?;
        if !sigma_realizes(tuple, &psi, &graph.arcs)? {
            report
                .mismatches
                .push(format!("sigma does not realize the part graph of {d:?}"));
        }
        // refinement invariance of the part graph
        let fine = FlatDecomposition {
            parts: tuple.maximal_refinement(d).parts,
        };
        if tuple.refinement_leq(d, &fine) {
            let fine_graph = part_graph(tuple, &psi0(tuple, &fine))?;
            if fine_graph.arcs != graph.arcs {
                report
                    .mismatches
                    .push("part graph changes under refinement".to_string());
            }
        } else {
            report
                .mismatches
                .push("maximal refinement is not a refinement".to_string());
        }
        let id: Vec<Vec<usize>> = psi.parts.iter().map(|p| p.positions().to_vec()).collect();
        let entry = grouped
            .entry(id)
            .or_insert_with(|| (Rational::zero(), psi.parts.clone()));
        entry.0 += if d.len() % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
    }
    let classes = antipode_classes(tuple)?;
    report.classes = classes.len();
    let direct: BTreeMap<Vec<Vec<usize>>, &AntipodeClass> = classes
        .iter()
        .map(|c| (c.parts.iter().map(|p| p.positions().to_vec()).collect(), c))
        .collect();
    if direct.keys().ne(grouped.keys()) {
        report
            .mismatches
            .push("Ψ⁰ images of the decompositions differ from the direct enumeration".into());
    }
    for (id, (sum, parts)) in &grouped {
        let expected_sign = if parts.len() % 2 == 0 { 1 } else { -1 };
        if sum.is_zero() || (sum > &Rational::zero()) != (expected_sign > 0) {
            report.sign_coherent = false;
        }
        match direct.get(id) {
            Some(c) if c.coefficient == *sum => {}
            Some(c) => report.mismatches.push(format!(
                "class {:?}: grouped sum {} but (-1)^ℓ a(Ḡ) = {}",
                id, sum, c.coefficient
            )),
            None => {}
        }
    }
    report.graphs = classes.into_iter().map(|c| c.graph).collect();
    Ok(report)
}
