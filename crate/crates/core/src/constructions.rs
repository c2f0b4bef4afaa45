//! Graph operators built from a small 0/1 coefficient matrix `M` as
//! `A(op(G)) = M ⊗ A(G)`, plus an independent edge-by-edge construction from
//! the neighbourhood rules used to cross-check vertex ordering.
//!
//! Vertex layout of every operator graph: the copies of `G` come first (copy 0
//! occupies vertices `0..n`, copy 1 occupies `n..2n`, …), followed by the
//! splitting sets in the same fashion. Within a block the base order is kept.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{check_order, Graph};

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::param(name, "must be at least 1"));
    }
    Ok(())
}

/// Parameters of the generalized splitting graph `S_{p,q}(G)`: `p` copies of
/// `G` and `q` splitting-vertex sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitParams {
    p: usize,
    q: usize,
}

impl SplitParams {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        positive("p", p)?;
        positive("q", q)?;
        Ok(SplitParams { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }
}

/// Parameters of the shadow-splitting graph `H_{c,k}(G)`: `c` mutually
/// shadowed copies and `k` splitting-vertex sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShadowSplitParams {
    c: usize,
    k: usize,
}

impl ShadowSplitParams {
    pub fn new(c: usize, k: usize) -> Result<Self> {
        positive("c", c)?;
        positive("k", k)?;
        Ok(ShadowSplitParams { c, k })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Square symmetric 0/1 block pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoefficientMatrix {
    dim: usize,
    entries: Vec<u8>,
}

impl CoefficientMatrix {
    /// Validates symmetry and the 0/1 alphabet.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Empty("row in a coefficient matrix"));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        if entries.iter().any(|&e| e > 1) {
            return Err(Error::InvalidAdjacency(
                "coefficient entries must be 0 or 1".into(),
            ));
        }
        for i in 0..dim {
            for j in 0..i {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        delta: 1.0,
                    });
                }
            }
        }
        Ok(CoefficientMatrix { dim, entries })
    }

    fn blocks(leading: usize, trailing: usize, leading_block: impl Fn(usize, usize) -> u8) -> Self {
        let dim = leading + trailing;
        let mut entries = vec![0u8; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = match (i < leading, j < leading) {
                    (true, true) => leading_block(i, j),
                    (false, false) => 0,
                    _ => 1,
                };
            }
        }
        CoefficientMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries.chunks(self.dim).map(<[u8]>::to_vec).collect()
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.entries[i * self.dim..(i + 1) * self.dim]
            .iter()
            .map(|&e| e as usize)
            .sum()
    }

    /// Number of 1-entries.
    pub fn ones(&self) -> usize {
        self.entries.iter().map(|&e| e as usize).sum()
    }

    pub fn trace(&self) -> usize {
        (0..self.dim).map(|i| self.get(i, i) as usize).sum()
    }
}

/// `[[I_p, J], [J, 0_q]]`.
pub fn coefficient_matrix_split(p: usize, q: usize) -> Result<CoefficientMatrix> {
    let params = SplitParams::new(p, q)?;
    Ok(CoefficientMatrix::blocks(params.p, params.q, |i, j| {
        (i == j) as u8
    }))
}

/// `[[J_c, J], [J, 0_k]]`.
pub fn coefficient_matrix_shadow(c: usize, k: usize) -> Result<CoefficientMatrix> {
    let params = ShadowSplitParams::new(c, k)?;
    Ok(CoefficientMatrix::blocks(params.c, params.k, |_, _| 1))
}

fn all_ones(m: usize) -> CoefficientMatrix {
    CoefficientMatrix {
        dim: m,
        entries: vec![1; m * m],
    }
}

/// `M ⊗ A(g)` as a graph. `M` must have a zero diagonal wherever `g` could
/// otherwise receive loops; since `A(g)` has a zero diagonal, the product
/// always does too.
pub fn kron_with_coefficients(m: &CoefficientMatrix, g: &Graph) -> Result<Graph> {
    let n = g.order();
    let order = m.dim() * n;
    check_order(order)?;
    let mut adj = vec![0u8; order * order];
    for bi in 0..m.dim() {
        for bj in 0..m.dim() {
            if m.get(bi, bj) == 0 {
                continue;
            }
            for i in 0..n {
                let dst = (bi * n + i) * order + bj * n;
                adj[dst..dst + n].copy_from_slice(g.row(i));
            }
        }
    }
    Ok(Graph::from_raw(order, adj))
}

/// `S_{p,q}(G)`.
pub fn generalized_splitting(g: &Graph, params: SplitParams) -> Result<Graph> {
    check_order(g.order() * (params.p + params.q))?;
    kron_with_coefficients(&coefficient_matrix_split(params.p, params.q)?, g)
}

/// `H_{c,k}(G)`.
pub fn shadow_splitting(g: &Graph, params: ShadowSplitParams) -> Result<Graph> {
    check_order(g.order() * (params.c + params.k))?;
    kron_with_coefficients(&coefficient_matrix_shadow(params.c, params.k)?, g)
}

/// `m`-shadow graph `D_m(G)`, adjacency `J_m ⊗ A(G)`.
pub fn m_shadow(g: &Graph, m: usize) -> Result<Graph> {
    positive("m", m)?;
    check_order(g.order() * m)?;
    kron_with_coefficients(&all_ones(m), g)
}

/// `m`-splitting graph `S_m(G)`, which is `S_{1,m}(G)`.
pub fn m_splitting(g: &Graph, m: usize) -> Result<Graph> {
    generalized_splitting(g, SplitParams::new(1, m)?)
}

/// Tensor product `g ⊗ h`; vertex `(u, v)` is numbered `u·|h| + v`.
pub fn kronecker_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.order(), h.order());
    let order = ng * nh;
    check_order(order)?;
    let mut adj = vec![0u8; order * order];
    for u1 in 0..ng {
        for u2 in g.neighbors(u1) {
            for v1 in 0..nh {
                let dst = (u1 * nh + v1) * order + u2 * nh;
                adj[dst..dst + nh].copy_from_slice(h.row(v1));
            }
        }
    }
    Ok(Graph::from_raw(order, adj))
}

/// Tensor product built literally from its adjacency rule, without slicing
/// rows; used to cross-check [`kronecker_product`].
pub fn kronecker_by_definition(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.order(), h.order());
    let mut out = Graph::empty(ng * nh)?;
    for u1 in 0..ng {
        for v1 in 0..nh {
            for u2 in 0..ng {
                for v2 in 0..nh {
                    if g.has_edge(u1, u2) && h.has_edge(v1, v2) {
                        out.set_edge(u1 * nh + v1, u2 * nh + v2);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One of the block-Kronecker operators on a single base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "operator", rename_all = "snake_case")]
pub enum Operator {
    GeneralizedSplitting { p: usize, q: usize },
    ShadowSplitting { c: usize, k: usize },
    Shadow { m: usize },
    Splitting { m: usize },
}

impl From<SplitParams> for Operator {
    fn from(p: SplitParams) -> Self {
        Operator::GeneralizedSplitting { p: p.p, q: p.q }
    }
}

impl From<ShadowSplitParams> for Operator {
    fn from(p: ShadowSplitParams) -> Self {
        Operator::ShadowSplitting { c: p.c, k: p.k }
    }
}

impl Operator {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Operator::GeneralizedSplitting { p, q } => SplitParams::new(p, q).map(drop),
            Operator::ShadowSplitting { c, k } => ShadowSplitParams::new(c, k).map(drop),
            Operator::Shadow { m } | Operator::Splitting { m } => positive("m", m),
        }
    }

    /// Number of `n`-vertex blocks in the output.
    pub fn blocks(&self) -> usize {
        match *self {
            Operator::GeneralizedSplitting { p, q } => p + q,
            Operator::ShadowSplitting { c, k } => c + k,
            Operator::Shadow { m } => m,
            Operator::Splitting { m } => 1 + m,
        }
    }

    pub fn output_order(&self, base_order: usize) -> usize {
        self.blocks().saturating_mul(base_order)
    }

    pub fn coefficient_matrix(&self) -> Result<CoefficientMatrix> {
        self.validate()?;
        match *self {
            Operator::GeneralizedSplitting { p, q } => coefficient_matrix_split(p, q),
            Operator::ShadowSplitting { c, k } => coefficient_matrix_shadow(c, k),
            Operator::Shadow { m } => Ok(all_ones(m)),
            Operator::Splitting { m } => coefficient_matrix_split(1, m),
        }
    }

    /// Builds the operator graph through the Kronecker route.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        self.validate()?;
        check_order(self.output_order(g.order()))?;
        kron_with_coefficients(&self.coefficient_matrix()?, g)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Operator::GeneralizedSplitting { p, q } => write!(f, "S_{{{p},{q}}}"),
            Operator::ShadowSplitting { c, k } => write!(f, "H_{{{c},{k}}}"),
            Operator::Shadow { m } => write!(f, "D_{{{m}}}"),
            Operator::Splitting { m } => write!(f, "S_{{{m}}}"),
        }
    }
}

/// Parses `split:p:q`, `shadow-split:c:k`, `shadow:m` or `splitting:m`.
impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            parts
                .get(i)
                .ok_or_else(|| Error::param(s, "missing operator parameter"))?
                .parse()
                .map_err(|_| Error::param(s, "operator parameters must be positive integers"))
        };
        let op = match (parts[0], parts.len()) {
            ("split", 3) => Operator::GeneralizedSplitting {
                p: num(1)?,
                q: num(2)?,
            },
            ("shadow-split", 3) => Operator::ShadowSplitting {
                c: num(1)?,
                k: num(2)?,
            },
            ("shadow", 2) => Operator::Shadow { m: num(1)? },
            ("splitting", 2) => Operator::Splitting { m: num(1)? },
            _ => {
                return Err(Error::Unknown {
                    kind: "operator",
                    name: s.to_string(),
                })
            }
        };
        op.validate()?;
        Ok(op)
    }
}

/// Builds the operator graph edge by edge from the neighbourhood rules, using
/// the same block layout as the Kronecker route.
pub fn construct_by_neighborhood(g: &Graph, op: &Operator) -> Result<Graph> {
    op.validate()?;
    let n = g.order();
    let order = op.output_order(n);
    check_order(order)?;
    let mut out = Graph::empty(order)?;
    let copy = |l: usize, i: usize| l * n + i;

    match *op {
        Operator::GeneralizedSplitting { p, q } => {
            // p disjoint copies of G
            for l in 0..p {
                for (i, j) in g.edges() {
                    out.set_edge(copy(l, i), copy(l, j));
                }
            }
            // N(u_i^(s)) = union over copies of N(v_i^(l))
            for s in 0..q {
                for i in 0..n {
                    let u = copy(p + s, i);
                    for l in 0..p {
                        for j in g.neighbors(i) {
                            out.set_edge(u, copy(l, j));
                        }
                    }
                }
            }
        }
        Operator::ShadowSplitting { c, k } => {
            for i in 0..n {
                for j in g.neighbors(i) {
                    for s in 0..c {
                        // v_i^(s) sees v_j in every copy and every u_j^(r)
                        for t in 0..c {
                            out.set_edge(copy(s, i), copy(t, j));
                        }
                        for r in 0..k {
                            out.set_edge(copy(s, i), copy(c + r, j));
                        }
                    }
                }
            }
        }
        Operator::Shadow { m } => {
            for a in 0..m {
                for b in 0..m {
                    for (i, j) in g.edges() {
                        out.set_edge(copy(a, i), copy(b, j));
                    }
                }
            }
        }
        Operator::Splitting { m } => {
            for (i, j) in g.edges() {
                out.set_edge(i, j);
            }
            for s in 0..m {
                for i in 0..n {
                    for j in g.neighbors(i) {
                        out.set_edge(copy(1 + s, i), j);
                    }
                }
            }
        }
    }
    Ok(out)
}
