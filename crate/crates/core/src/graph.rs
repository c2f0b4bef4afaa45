//! Dense simple undirected graphs and the standard generators.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Default ceiling on the number of vertices of any graph built by this crate.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// Environment variable that overrides [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "SPECTRAL_MAX_ORDER";

/// Current dense order cap, honouring `SPECTRAL_MAX_ORDER` when it parses as a
/// positive integer.
pub fn max_order() -> usize {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_ORDER)
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    let cap = max_order();
    if order > cap {
        return Err(Error::OrderTooLarge { order, cap });
    }
    Ok(())
}

/// Number of undirected edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeCount(pub usize);

impl EdgeCount {
    pub fn value(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Simple undirected graph stored as a dense row-major 0/1 adjacency matrix.
///
/// The adjacency is always symmetric with a zero diagonal and the order is at
/// least one. Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    adjacency: Vec<u8>,
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::param("order", "a graph needs at least one vertex"));
        }
        check_order(order)?;
        Ok(Graph {
            order,
            adjacency: vec![0; order * order],
        })
    }

    /// Builds a graph from an edge list. Loops, repeated edges and out-of-range
    /// endpoints are rejected.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::InvalidAdjacency(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{order}"
                )));
            }
            if u == v {
                return Err(Error::InvalidAdjacency(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidAdjacency(format!("repeated edge ({u}, {v})")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a row-major `order × order` 0/1 matrix, validating
    /// symmetry, the zero diagonal and the entry alphabet.
    pub fn from_adjacency(order: usize, adjacency: Vec<u8>) -> Result<Self> {
        if order == 0 {
            return Err(Error::param("order", "a graph needs at least one vertex"));
        }
        check_order(order)?;
        if adjacency.len() != order * order {
            return Err(Error::InvalidAdjacency(format!(
                "expected {} entries, got {}",
                order * order,
                adjacency.len()
            )));
        }
        for i in 0..order {
            if adjacency[i * order + i] != 0 {
                return Err(Error::InvalidAdjacency(format!("self-loop at vertex {i}")));
            }
            for j in 0..order {
                let a = adjacency[i * order + j];
                if a > 1 {
                    return Err(Error::InvalidAdjacency(format!(
                        "entry ({i}, {j}) is {a}, expected 0 or 1"
                    )));
                }
                if a != adjacency[j * order + i] {
                    return Err(Error::InvalidAdjacency(format!(
                        "entry ({i}, {j}) differs from ({j}, {i})"
                    )));
                }
            }
        }
        Ok(Graph { order, adjacency })
    }

    /// Wraps a buffer the caller already knows to be a valid adjacency matrix.
    pub(crate) fn from_raw(order: usize, adjacency: Vec<u8>) -> Self {
        debug_assert_eq!(adjacency.len(), order * order);
        Graph { order, adjacency }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adjacency[u * self.order + v] = 1;
        self.adjacency[v * self.order + u] = 1;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u * self.order + v] != 0
    }

    /// Raw row-major adjacency entries.
    pub fn adjacency(&self) -> &[u8] {
        &self.adjacency
    }

    pub fn row(&self, u: usize) -> &[u8] {
        &self.adjacency[u * self.order..(u + 1) * self.order]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u)
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(v, _)| v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().filter(|&&a| a != 0).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> EdgeCount {
        let ones: usize = self.adjacency.iter().map(|&a| a as usize).sum();
        EdgeCount(ones / 2)
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            (u + 1..self.order)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Relabels vertices so that old vertex `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order;
        if perm.len() != n {
            return Err(Error::param("perm", format!("expected length {n}")));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::param("perm", "not a permutation"));
            }
        }
        let mut out = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                out[perm[i] * n + perm[j]] = self.adjacency[i * n + j];
            }
        }
        Ok(Graph::from_raw(n, out))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub fn empty_graph(n: usize) -> Result<Graph> {
    Graph::empty(n)
}

/// Complete graph `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("n", "complete graph needs n >= 1"));
    }
    check_order(n)?;
    let mut adj = vec![1u8; n * n];
    for i in 0..n {
        adj[i * n + i] = 0;
    }
    Ok(Graph::from_raw(n, adj))
}

/// Complete bipartite graph `K_{m,n}`; the first `m` vertices form one side.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::param("m, n", "both parts need at least one vertex"));
    }
    let order = m + n;
    check_order(order)?;
    let mut adj = vec![0u8; order * order];
    for i in 0..order {
        for j in 0..order {
            if (i < m) != (j < m) {
                adj[i * order + j] = 1;
            }
        }
    }
    Ok(Graph::from_raw(order, adj))
}

/// Cycle `C_n` on vertices `0, 1, …, n-1` in order.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param("n", "a cycle needs at least 3 vertices"));
    }
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        g.set_edge(i, (i + 1) % n);
    }
    Ok(g)
}

/// Path `P_n` with `n - 1` edges.
pub fn path_graph(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for i in 1..n {
        g.set_edge(i - 1, i);
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)` sample.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param("p", "edge probability must lie in [0, 1]"));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.set_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Disjoint union; vertices of `parts[0]` come first, then `parts[1]`, and so on.
pub fn disjoint_union(parts: &[Graph]) -> Result<Graph> {
    if parts.is_empty() {
        return Err(Error::Empty("graph in a disjoint union"));
    }
    let order: usize = parts.iter().map(Graph::order).sum();
    check_order(order)?;
    let mut adj = vec![0u8; order * order];
    let mut offset = 0;
    for part in parts {
        let n = part.order();
        for i in 0..n {
            let dst = (offset + i) * order + offset;
            adj[dst..dst + n].copy_from_slice(part.row(i));
        }
        offset += n;
    }
    Ok(Graph::from_raw(order, adj))
}
