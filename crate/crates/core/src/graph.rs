//! Small simple graphs: acyclic orientations and chromatic polynomials.

use std::collections::BTreeSet;

/// Largest edge count for which orientations are enumerated directly.
pub const BRUTE_FORCE_EDGE_BOUND: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: usize) -> Self {
        SimpleGraph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(vertices);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))))
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|b| (b - 1, b)))
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.vertices && b < self.vertices, "edge endpoint out of range");
        assert_ne!(a, b, "simple graphs have no loops");
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }
}

/// Whether a directed graph on `n` vertices is acyclic (Kahn's algorithm).
pub fn is_acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in arcs {
        indegree[b] += 1;
        out[a].push(b);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

/// Counts acyclic orientations by trying all `2^|E|` orientations.
pub fn acyclic_orientations_brute_force(g: &SimpleGraph) -> Option<u64> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() > BRUTE_FORCE_EDGE_BOUND {
        return None;
    }
    let mut count = 0;
    let mut arcs = Vec::with_capacity(edges.len());
    for mask in 0u32..(1u32 << edges.len()) {
        arcs.clear();
        for (k, &(a, b)) in edges.iter().enumerate() {
            arcs.push(if mask >> k & 1 == 1 { (b, a) } else { (a, b) });
        }
        if is_acyclic(g.vertices, &arcs) {
            count += 1;
        }
    }
    Some(count)
}

/// Chromatic polynomial coefficients (index = power) by deletion-contraction.
pub fn chromatic_polynomial(g: &SimpleGraph) -> Vec<i64> {
    let Some(&(a, b)) = g.edges.iter().next() else {
        let mut p = vec![0; g.vertices + 1];
        p[g.vertices] = 1;
        return p;
    };
    let mut deleted = g.clone();
    deleted.edges.remove(&(a, b));
    // contract b into a, relabeling the last vertex into b's slot
    let last = g.vertices - 1;
    let relabel = |v: usize| -> usize {
        let v = if v == b { a } else { v };
        if v == last {
            b
        } else {
            v
        }
    };
    let mut contracted = SimpleGraph::new(g.vertices - 1);
    for (x, y) in g.edges() {
        if (x, y) == (a, b) {
            continue;
        }
        let (x, y) = (relabel(x), relabel(y));
        if x != y {
            contracted.add_edge(x, y);
        }
    }
    let p = chromatic_polynomial(&deleted);
    let q = chromatic_polynomial(&contracted);
    p.iter()
        .enumerate()
        .map(|(k, c)| c - q.get(k).copied().unwrap_or(0))
        .collect()
}

pub fn evaluate(poly: &[i64], x: i64) -> i64 {
    poly.iter().rev().fold(0, |acc, c| acc * x + c)
}

/// `a(G)` as `|chi_G(-1)|`.
pub fn acyclic_orientations_chromatic(g: &SimpleGraph) -> u64 {
    evaluate(&chromatic_polynomial(g), -1).unsigned_abs()
}

/// `a(G)`: brute force when small enough, otherwise through the chromatic polynomial.
pub fn acyclic_orientation_count(g: &SimpleGraph) -> u64 {
    acyclic_orientations_brute_force(g).unwrap_or_else(|| acyclic_orientations_chromatic(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(acyclic_orientation_count(&SimpleGraph::new(4)), 1);
        assert_eq!(acyclic_orientation_count(&SimpleGraph::new(0)), 1);
        assert_eq!(acyclic_orientation_count(&SimpleGraph::complete(3)), 6);
        assert_eq!(acyclic_orientation_count(&SimpleGraph::path(3)), 4);
        assert_eq!(acyclic_orientation_count(&SimpleGraph::complete(4)), 24);
        // 4-cycle: 2^4 - 2
        let c4 = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(acyclic_orientation_count(&c4), 14);
    }

    #[test]
    fn chromatic_values() {
        assert_eq!(chromatic_polynomial(&SimpleGraph::complete(3)), vec![0, 2, -3, 1]);
        assert_eq!(acyclic_orientations_chromatic(&SimpleGraph::complete(5)), 120);
        let c4 = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(evaluate(&chromatic_polynomial(&c4), 3), 18);
    }
}
