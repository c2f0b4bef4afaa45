//! Closed-form energies and coefficient-matrix spectra.
//!
//! For an operator with coefficient matrix `M`, `Spec(M ⊗ A) = Spec(M)·Spec(A)`
//! and hence `E(op(G)) = E(M)·E(G)`. The factors below are `E(M)` evaluated in
//! closed form:
//!
//! | operator      | `Spec(M)`                                           | `E(M)`              |
//! |---------------|-----------------------------------------------------|---------------------|
//! | `S_{p,q}`     | `1^(p-1)`, `0^(q-1)`, `(1 ± √(1+4pq))/2`            | `p - 1 + √(1+4pq)`  |
//! | `H_{c,k}`     | `0^(c+k-2)`, `(c ± √(c²+4ck))/2`                    | `√(c²+4ck)`         |
//! | `D_m`         | `m`, `0^(m-1)`                                      | `m`                 |
//! | `S_m`         | same as `S_{1,m}`                                   | `√(1+4m)`           |

use serde::{Deserialize, Serialize};

use crate::constructions::{Operator, ShadowSplitParams, SplitParams};
use crate::error::{Error, Result};
use crate::spectral::{eigenvalues_symmetric, DenseMatrix, Spectrum};

/// `p - 1 + √(1 + 4pq)`, the energy multiplier of `S_{p,q}`.
pub fn split_energy_factor(p: usize, q: usize) -> Result<f64> {
    SplitParams::new(p, q)?;
    let (p, q) = (p as f64, q as f64);
    Ok(p - 1.0 + (1.0 + 4.0 * p * q).sqrt())
}

/// `√(c² + 4ck)`, the energy multiplier of `H_{c,k}`.
pub fn shadow_split_energy_factor(c: usize, k: usize) -> Result<f64> {
    ShadowSplitParams::new(c, k)?;
    let (c, k) = (c as f64, k as f64);
    Ok((c * c + 4.0 * c * k).sqrt())
}

pub fn split_coefficient_spectrum(p: usize, q: usize) -> Result<Spectrum> {
    SplitParams::new(p, q)?;
    let root = (1.0 + 4.0 * (p * q) as f64).sqrt();
    let mut values = vec![1.0; p - 1];
    values.extend(std::iter::repeat_n(0.0, q - 1));
    values.push((1.0 + root) / 2.0);
    values.push((1.0 - root) / 2.0);
    Ok(Spectrum::from_values(values))
}

pub fn shadow_coefficient_spectrum(c: usize, k: usize) -> Result<Spectrum> {
    ShadowSplitParams::new(c, k)?;
    let cf = c as f64;
    let root = (cf * cf + 4.0 * cf * k as f64).sqrt();
    let mut values = vec![0.0; c + k - 2];
    values.push((cf + root) / 2.0);
    values.push((cf - root) / 2.0);
    Ok(Spectrum::from_values(values))
}

/// Which closed form produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionSource {
    GeneralizedSplitting,
    ShadowSplitting,
    Shadow,
    Splitting,
    Kronecker,
}

/// `E(op(G)) = scale_factor · E(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyPrediction {
    pub scale_factor: f64,
    pub source: PredictionSource,
    pub operator: Option<Operator>,
}

impl EnergyPrediction {
    pub fn for_operator(op: &Operator) -> Result<Self> {
        op.validate()?;
        let (scale_factor, source) = match *op {
            Operator::GeneralizedSplitting { p, q } => (
                split_energy_factor(p, q)?,
                PredictionSource::GeneralizedSplitting,
            ),
            Operator::ShadowSplitting { c, k } => (
                shadow_split_energy_factor(c, k)?,
                PredictionSource::ShadowSplitting,
            ),
            Operator::Shadow { m } => (m as f64, PredictionSource::Shadow),
            Operator::Splitting { m } => (split_energy_factor(1, m)?, PredictionSource::Splitting),
        };
        Ok(EnergyPrediction {
            scale_factor,
            source,
            operator: Some(*op),
        })
    }

    /// Product with a fixed second factor whose energy is `factor_energy`.
    pub fn kronecker(factor_energy: f64) -> Self {
        EnergyPrediction {
            scale_factor: factor_energy,
            source: PredictionSource::Kronecker,
            operator: None,
        }
    }

    pub fn apply(&self, base_energy: f64) -> f64 {
        self.scale_factor * base_energy
    }
}

/// Closed-form spectrum of an operator's coefficient matrix.
pub fn operator_coefficient_spectrum(op: &Operator) -> Result<Spectrum> {
    match *op {
        Operator::GeneralizedSplitting { p, q } => split_coefficient_spectrum(p, q),
        Operator::ShadowSplitting { c, k } => shadow_coefficient_spectrum(c, k),
        Operator::Splitting { m } => split_coefficient_spectrum(1, m),
        Operator::Shadow { m } => {
            op.validate()?;
            let mut values = vec![0.0; m - 1];
            values.push(m as f64);
            Ok(Spectrum::from_values(values))
        }
    }
}

/// Graph families with textbook energies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum KnownEnergy {
    /// `E(K_n) = 2(n - 1)`
    Complete { n: usize },
    /// `E(K_{m,n}) = 2√(mn)`
    CompleteBipartite { m: usize, n: usize },
    /// `E(D_m(G)) = m·E(G)`
    Shadow { m: usize, base: f64 },
    /// `E(G ⊗ H) = E(G)·E(H)`
    Kronecker { left: f64, right: f64 },
    /// Energies add over disjoint unions.
    Union { parts: Vec<KnownEnergy> },
}

pub fn known_energy(family: &KnownEnergy) -> Result<f64> {
    match family {
        KnownEnergy::Complete { n } => {
            if *n == 0 {
                return Err(Error::param("n", "complete graph needs n >= 1"));
            }
            Ok(2.0 * (*n as f64 - 1.0))
        }
        KnownEnergy::CompleteBipartite { m, n } => {
            if *m == 0 || *n == 0 {
                return Err(Error::param("m, n", "both parts need at least one vertex"));
            }
            Ok(2.0 * ((m * n) as f64).sqrt())
        }
        KnownEnergy::Shadow { m, base } => {
            if *m == 0 {
                return Err(Error::param("m", "must be at least 1"));
            }
            Ok(*m as f64 * base)
        }
        KnownEnergy::Kronecker { left, right } => Ok(left * right),
        KnownEnergy::Union { parts } => {
            if parts.is_empty() {
                return Err(Error::Empty("part in a union"));
            }
            parts.iter().map(known_energy).sum()
        }
    }
}

/// Spectrum of the quotient matrix of a symmetric integer matrix under an
/// equitable partition.
///
/// Every block of rows must have a constant row sum into every block of
/// columns; this is checked exactly. The quotient `Q` is generally not
/// symmetric, but `D^{1/2} Q D^{-1/2}` (with `D` the block sizes) is, so its
/// eigenvalues come from the symmetric solver.
pub fn quotient_matrix_spectrum(matrix: &[Vec<i64>], partition: &[Vec<usize>]) -> Result<Spectrum> {
    let n = matrix.len();
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
        for (j, other) in matrix.iter().enumerate().take(i) {
            if row[j] != other[i] {
                return Err(Error::NotSymmetric {
                    row: i,
                    col: j,
                    delta: (row[j] - other[i]).abs() as f64,
                });
            }
        }
    }
    if partition.is_empty() {
        return Err(Error::Empty("cell in the partition"));
    }
    let mut owner = vec![usize::MAX; n];
    for (b, cell) in partition.iter().enumerate() {
        if cell.is_empty() {
            return Err(Error::NotEquitable(format!("cell {b} is empty")));
        }
        for &v in cell {
            if v >= n {
                return Err(Error::NotEquitable(format!("index {v} outside 0..{n}")));
            }
            if owner[v] != usize::MAX {
                return Err(Error::NotEquitable(format!("index {v} appears twice")));
            }
            owner[v] = b;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::NotEquitable(format!("index {v} is not covered")));
    }

    let k = partition.len();
    let mut quotient = vec![vec![0i64; k]; k];
    for (bi, cell_i) in partition.iter().enumerate() {
        for (bj, cell_j) in partition.iter().enumerate() {
            let sums: Vec<i64> = cell_i
                .iter()
                .map(|&r| cell_j.iter().map(|&c| matrix[r][c]).sum())
                .collect();
            if sums.iter().any(|&s| s != sums[0]) {
                return Err(Error::NotEquitable(format!(
                    "rows of cell {bi} have unequal sums {sums:?} into cell {bj}"
                )));
            }
            quotient[bi][bj] = sums[0];
        }
    }

    let sizes: Vec<f64> = partition.iter().map(|c| c.len() as f64).collect();
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (sizes[i] / sizes[j]).sqrt() * quotient[i][j] as f64)
                .collect()
        })
        .collect();
    let mut sym = DenseMatrix::from_rows(&rows)?;
    // sqrt(n_i/n_j)·q_ij equals sqrt(n_j/n_i)·q_ji exactly; average away rounding
    for i in 0..k {
        for j in 0..i {
            let v = 0.5 * (sym.get(i, j) + sym.get(j, i));
            sym.set(i, j, v);
            sym.set(j, i, v);
        }
    }
    eigenvalues_symmetric(&sym)
}
