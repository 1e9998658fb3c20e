//! Finite multigraphs in Serre form, exact spanning-tree counts and the
//! Ihara numerator polynomial `h_X(u) = det(I - A u + (D - I) u^2)`.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::{IntPolynomial, Polynomial};
use crate::report::VerificationReport;
use crate::ring::Ring;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

/// Upper bound on geometric edges for exhaustive spanning-tree enumeration.
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DirectedEdge {
    pub origin: usize,
    pub terminus: usize,
    pub inverse: usize,
}

/// A graph `(V, E, o, t, ι)`: directed edges paired by a fixed-point-free
/// involution. Vertices are `0..vertex_count` in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreGraph {
    vertex_count: usize,
    edges: Vec<DirectedEdge>,
    names: Option<Vec<String>>,
}

/// One directed edge from each involution pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation(Vec<usize>);

impl Orientation {
    pub fn new(graph: &SerreGraph, edges: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; graph.edge_count()];
        for &e in &edges {
            if e >= graph.edge_count() {
                return Err(Error::IndexOutOfRange {
                    index: e,
                    bound: graph.edge_count(),
                });
            }
            let inv = graph.edges[e].inverse;
            if seen[e] || seen[inv] {
                return Err(Error::InvalidGraph(format!(
                    "orientation contains edge {e} or its inverse twice"
                )));
            }
            seen[e] = true;
        }
        if edges.len() * 2 != graph.edge_count() {
            return Err(Error::InvalidGraph("orientation misses an edge pair".into()));
        }
        Ok(Orientation(edges))
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl SerreGraph {
    /// Validates and wraps raw directed edges.
    pub fn from_edges(vertex_count: usize, edges: Vec<DirectedEdge>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            for v in [e.origin, e.terminus] {
                if v >= vertex_count {
                    return Err(Error::IndexOutOfRange {
                        index: v,
                        bound: vertex_count,
                    });
                }
            }
            let Some(inv) = edges.get(e.inverse) else {
                return Err(Error::IndexOutOfRange {
                    index: e.inverse,
                    bound: edges.len(),
                });
            };
            if e.inverse == i || inv.inverse != i {
                return Err(Error::InvalidGraph(format!("edge {i}: inverse is not an involution")));
            }
            if inv.origin != e.terminus || inv.terminus != e.origin {
                return Err(Error::InvalidGraph(format!("edge {i}: inverse endpoints mismatch")));
            }
        }
        Ok(SerreGraph {
            vertex_count,
            edges,
            names: None,
        })
    }

    /// Builds a graph from undirected pairs. Edge `i` of the list becomes
    /// directed edges `2i` (as listed) and `2i + 1` (reversed).
    pub fn build(vertex_count: usize, undirected: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(undirected.len() * 2);
        for (i, &(u, v)) in undirected.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::IndexOutOfRange {
                        index: w,
                        bound: vertex_count,
                    });
                }
            }
            edges.push(DirectedEdge {
                origin: u,
                terminus: v,
                inverse: 2 * i + 1,
            });
            edges.push(DirectedEdge {
                origin: v,
                terminus: u,
                inverse: 2 * i,
            });
        }
        Self::from_edges(vertex_count, edges)
    }

    /// A connected multigraph (loops and parallel edges allowed) with
    /// `vertices` vertices and `edges >= vertices - 1` geometric edges:
    /// a random tree plus random extra edges.
    pub fn random_connected(seed: u64, vertices: usize, edges: usize) -> Result<Self> {
        if vertices == 0 || edges + 1 < vertices {
            return Err(Error::InvalidGraph(format!(
                "cannot connect {vertices} vertices with {edges} edges"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs: Vec<(usize, usize)> = (1..vertices).map(|v| (rng.gen_range(0..v), v)).collect();
        while pairs.len() < edges {
            pairs.push((rng.gen_range(0..vertices), rng.gen_range(0..vertices)));
        }
        Self::build(vertices, &pairs)
    }

    pub fn bouquet(loops: usize) -> Self {
        Self::build(1, &vec![(0, 0); loops]).expect("valid bouquet")
    }

    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::build(n, &pairs).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::build(n, &pairs).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let pairs: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::build(n, &pairs).expect("valid complete graph")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "{} names for {} vertices",
                names.len(),
                self.vertex_count
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> DirectedEdge {
        self.edges[e]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.names {
            Some(n) => n[v].clone(),
            None => v.to_string(),
        }
    }

    /// Canonical orientation: the lower-indexed edge of every pair.
    pub fn default_orientation(&self) -> Orientation {
        Orientation(
            (0..self.edges.len())
                .filter(|&e| e < self.edges[e].inverse)
                .collect(),
        )
    }

    /// `|V| - |E|/2`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - (self.edges.len() / 2) as i64
    }

    /// True when the underlying geometric edges are all loops at a single vertex.
    pub fn is_bouquet(&self) -> bool {
        self.vertex_count == 1
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.origin].push(e.terminus);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// `A[v][w]` = number of directed edges from `v` to `w`; a loop adds 2
    /// to the diagonal.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count;
        let mut counts = vec![0i64; n * n];
        for e in &self.edges {
            counts[e.origin * n + e.terminus] += 1;
        }
        IntMatrix::from_fn(n, n, |i, j| BigInt::from(counts[i * n + j]))
    }

    /// Diagonal out-degree matrix (a loop counts twice).
    pub fn degree_matrix(&self) -> IntMatrix {
        let deg = self.degrees();
        IntMatrix::from_fn(self.vertex_count, self.vertex_count, |i, j| {
            BigInt::from(if i == j { deg[i] as i64 } else { 0 })
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.origin] += 1;
        }
        deg
    }

    /// `D - A`. Loops cancel out.
    pub fn laplacian(&self) -> IntMatrix {
        self.degree_matrix().sub(&self.adjacency_matrix())
    }

    /// Number of spanning trees via the Matrix-Tree theorem: the `(0,0)`
    /// cofactor of the Laplacian, computed with Bareiss elimination.
    pub fn spanning_tree_count(&self) -> Result<BigInt> {
        if !self.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        self.laplacian().minor(0, 0).det_bareiss()
    }

    /// Exhaustive count of spanning trees over subsets of geometric edges.
    pub fn brute_force_spanning_trees(&self) -> Result<u64> {
        let orient = self.default_orientation();
        let m = orient.len();
        if m > BRUTE_FORCE_EDGE_LIMIT {
            return Err(Error::TooLarge {
                what: "edge set for enumeration",
                size: m,
                limit: BRUTE_FORCE_EDGE_LIMIT,
            });
        }
        let n = self.vertex_count;
        if n == 0 {
            return Ok(0);
        }
        let ends: Vec<(usize, usize)> = orient
            .edges()
            .iter()
            .map(|&e| (self.edges[e].origin, self.edges[e].terminus))
            .collect();
        let mut count = 0u64;
        for mask in 0u32..(1u32 << m) {
            if mask.count_ones() as usize != n - 1 {
                continue;
            }
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let acyclic = (0..m).filter(|i| mask >> i & 1 == 1).all(|i| {
                let (a, b) = ends[i];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    false
                } else {
                    parent[ra] = rb;
                    true
                }
            });
            if acyclic {
                count += 1;
            }
        }
        Ok(count)
    }

    /// The matrix `I - A u + (D - I) u^2` over `Z[u]`.
    pub fn ihara_matrix(&self) -> crate::matrix::Matrix<IntPolynomial> {
        let a = self.adjacency_matrix();
        let deg = self.degrees();
        crate::matrix::Matrix::from_fn(self.vertex_count, self.vertex_count, |i, j| {
            let diag = i == j;
            let c0 = BigInt::from(diag as i64);
            let c1 = -a.get(i, j).clone();
            let c2 = BigInt::from(if diag { deg[i] as i64 - 1 } else { 0 });
            Polynomial::new(vec![c0, c1, c2])
        })
    }

    /// `h_X(u) = det(I - A u + (D - I) u^2)`, by evaluating the integer
    /// determinant at `2|V| + 1` points and interpolating.
    pub fn ihara_h_poly(&self) -> Result<IntPolynomial> {
        let n = self.vertex_count;
        let a = self.adjacency_matrix();
        let deg = self.degrees();
        let points: Vec<(BigInt, BigInt)> = (0..=(2 * n) as i64)
            .map(|u| {
                let m = IntMatrix::from_fn(n, n, |i, j| {
                    let diag = i == j;
                    let mut v = -a.get(i, j) * u;
                    if diag {
                        v += 1 + (deg[i] as i64 - 1) * u * u;
                    }
                    v
                });
                Ok((BigInt::from(u), m.det_bareiss()?))
            })
            .collect::<Result<_>>()?;
        IntPolynomial::interpolate(&points)
            .ok_or_else(|| Error::Internal("h_X interpolation produced non-integer coefficients".into()))
    }

    /// Checks `h_X'(1) = -2 χ(X) κ(X)`.
    pub fn hashimoto_check(&self) -> Result<VerificationReport> {
        let kappa = self.spanning_tree_count()?;
        let h = self.ihara_h_poly()?;
        let left = h.derivative().eval(&BigInt::from(1));
        let right = BigInt::from(-2 * self.euler_characteristic()) * &kappa;
        Ok(VerificationReport::compare(
            "hashimoto: h'(1) = -2*chi*kappa",
            format!(
                "|V|={}, |E|/2={}, chi={}, kappa={}",
                self.vertex_count,
                self.edges.len() / 2,
                self.euler_characteristic(),
                kappa
            ),
            left,
            right,
        ))
    }

    /// Geometric edges as `(origin, terminus)` along the default orientation.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        self.default_orientation()
            .edges()
            .iter()
            .map(|&e| (self.edges[e].origin, self.edges[e].terminus))
            .collect()
    }

    /// Graphviz rendering. Loops and parallel edges are emitted one line each.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(s, "  {v} [label=\"{}\"];", self.vertex_name(v));
        }
        for (u, v) in self.undirected_edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertex_count,
            edges: self.undirected_edges().into_iter().map(|(u, v)| [u, v]).collect(),
            names: self.names.clone(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        file.into_graph()
    }
}

/// On-disk graph: `{"vertices": n, "edges": [[u, v], ...], "names": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<SerreGraph> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = SerreGraph::build(self.vertices, &pairs)?;
        match self.names {
            Some(n) => g.with_names(n),
            None => Ok(g),
        }
    }
}

/// Evaluates an integer polynomial at a small integer.
pub fn h_at(poly: &IntPolynomial, u: i64) -> BigInt {
    poly.eval(&<BigInt as Ring>::from_i64(u))
}
