//! Dense symmetric eigenvalues, adjacency spectra and graph energy.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::CoefficientMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Absolute gap below which neighbouring eigenvalues are reported as one
/// repeated value.
pub const MERGE_TOLERANCE: f64 = 1e-7;

/// Entrywise asymmetry accepted by [`eigenvalues_symmetric`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Tolerance used when comparing energies or spectra of graphs with `order`
/// vertices: `order · 1e-10`, never below `1e-8`.
pub fn verification_tolerance(order: usize) -> f64 {
    (order as f64 * 1e-10).max(1e-8)
}

/// Row-major square matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn from_graph(g: &Graph) -> Self {
        DenseMatrix {
            n: g.order(),
            data: g.adjacency().iter().map(|&a| a as f64).collect(),
        }
    }

    pub fn from_coefficients(m: &CoefficientMatrix) -> Self {
        let n = m.dim();
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, m.get(i, j) as f64);
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for (i, row) in self.data.chunks_exact(self.n).enumerate() {
            s += row.iter().map(|x| x * x).sum::<f64>() - row[i] * row[i];
        }
        s.max(0.0).sqrt()
    }

    fn transpose_in_place(&mut self) {
        const B: usize = 32;
        let n = self.n;
        for bi in (0..n).step_by(B) {
            for bj in (bi..n).step_by(B) {
                for i in bi..(bi + B).min(n) {
                    for j in bj.max(i + 1)..(bj + B).min(n) {
                        self.data.swap(i * n + j, j * n + i);
                    }
                }
            }
        }
    }

    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        for i in 0..self.n {
            for j in 0..i {
                let delta = (self.get(i, j) - self.get(j, i)).abs();
                if delta > tol || delta.is_nan() {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        delta,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.
///
/// A sweep visits every pair `p < q` once, in round-robin order so that each
/// round applies disjoint plane rotations as contiguous row updates. Entries
/// well below the sweep's average off-diagonal size are left for a later
/// sweep. Iteration stops once the off-diagonal Frobenius norm drops below
/// `tolerance · (1 + ‖A‖_F)`.
#[derive(Debug, Clone, Copy)]
pub struct Jacobi {
    pub max_sweeps: usize,
    pub tolerance: f64,
}

impl Default for Jacobi {
    fn default() -> Self {
        Jacobi {
            max_sweeps: 100,
            tolerance: 1e-12,
        }
    }
}

impl Jacobi {
    pub fn eigenvalues(&self, matrix: &DenseMatrix) -> Result<Spectrum> {
        let n = matrix.dim();
        if n == 0 {
            return Err(Error::Empty("row in the matrix"));
        }
        matrix.check_symmetric(SYMMETRY_TOLERANCE)?;

        let mut a = matrix.clone();
        for i in 0..n {
            for j in 0..i {
                let v = 0.5 * (a.get(i, j) + a.get(j, i));
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        let threshold = self.tolerance * (1.0 + a.frobenius_norm());
        // rotations on entries this small cannot move the off-diagonal norm
        let negligible = 1e-6 * threshold / n as f64;

        let rounds = tournament(n);
        let mut rotations = Vec::with_capacity(n / 2 + 1);
        let mut sweeps = 0;
        loop {
            let off = a.off_diagonal_norm();
            if off < threshold {
                break;
            }
            if sweeps == self.max_sweeps {
                return Err(Error::NoConvergence {
                    sweeps,
                    off_norm: off,
                });
            }
            sweeps += 1;
            // entries this far below the sweep average wait for a later sweep
            let skip = (0.1 * off / n as f64).max(negligible);
            for round in &rounds {
                rotations.clear();
                rotations.extend(round.iter().filter_map(|&(p, q)| rotation(&a, p, q, skip)));
                if rotations.is_empty() {
                    continue;
                }
                // A <- G A G^T as two row passes around a transpose
                apply_rows(&mut a, &rotations);
                a.transpose_in_place();
                apply_rows(&mut a, &rotations);
                for r in &rotations {
                    a.set(r.p, r.p, r.app);
                    a.set(r.q, r.q, r.aqq);
                    a.set(r.p, r.q, 0.0);
                    a.set(r.q, r.p, 0.0);
                }
            }
        }

        Ok(Spectrum::from_values((0..n).map(|i| a.get(i, i)).collect()))
    }
}

/// Round-robin schedule: every pair `p < q` exactly once, each round a set
/// of disjoint pairs.
fn tournament(n: usize) -> Vec<Vec<(usize, usize)>> {
    let m = n + n % 2;
    let mut ring: Vec<usize> = (0..m).collect();
    let mut rounds = Vec::with_capacity(m.saturating_sub(1));
    for _ in 1..m {
        let round = (0..m / 2)
            .map(|i| (ring[i], ring[m - 1 - i]))
            .filter(|&(x, y)| x < n && y < n)
            .map(|(x, y)| (x.min(y), x.max(y)))
            .collect();
        rounds.push(round);
        ring[1..].rotate_right(1);
    }
    rounds
}

struct Rotation {
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    app: f64,
    aqq: f64,
}

fn rotation(a: &DenseMatrix, p: usize, q: usize, negligible: f64) -> Option<Rotation> {
    let apq = a.get(p, q);
    if apq.abs() <= negligible {
        return None;
    }
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    Some(Rotation {
        p,
        q,
        c,
        s: t * c,
        app: app - t * apq,
        aqq: aqq + t * apq,
    })
}

fn apply_rows(a: &mut DenseMatrix, rotations: &[Rotation]) {
    let n = a.n;
    for r in rotations {
        let (head, tail) = a.data.split_at_mut(r.q * n);
        let row_p = &mut head[r.p * n..(r.p + 1) * n];
        let row_q = &mut tail[..n];
        for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
            let (u, v) = (*x, *y);
            *x = r.c * u - r.s * v;
            *y = r.s * u + r.c * v;
        }
    }
}

/// All eigenvalues of a symmetric matrix, sorted in descending order.
pub fn eigenvalues_symmetric(matrix: &DenseMatrix) -> Result<Spectrum> {
    Jacobi::default().eigenvalues(matrix)
}

/// Adjacency spectrum of `g`.
pub fn spectrum(g: &Graph) -> Result<Spectrum> {
    eigenvalues_symmetric(&DenseMatrix::from_graph(g))
}

/// `Σ |λ_i|` over the adjacency spectrum of `g`.
pub fn energy(g: &Graph) -> Result<EnergyValue> {
    Ok(spectrum(g)?.energy())
}

/// Spectrum of `M ⊗ A` from the spectra of its factors: every pairwise product.
pub fn structured_spectrum(coefficients: &Spectrum, base: &Spectrum) -> Spectrum {
    let mut values = Vec::with_capacity(coefficients.len() * base.len());
    for &mu in coefficients.values() {
        for &lambda in base.values() {
            values.push(mu * lambda);
        }
    }
    Spectrum::from_values(values)
}

/// Same order and descending spectra agreeing elementwise within `tol`.
pub fn are_cospectral(a: &Graph, b: &Graph, tol: f64) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    Ok(spectrum(a)?.approx_eq(&spectrum(b)?, tol))
}

/// Multiset of real eigenvalues, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    merge_tolerance: f64,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum {
            values,
            merge_tolerance: MERGE_TOLERANCE,
        }
    }

    pub fn with_merge_tolerance(mut self, tol: f64) -> Self {
        self.merge_tolerance = tol;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn merge_tolerance(&self) -> f64 {
        self.merge_tolerance
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }

    /// Energy from the raw (unmerged) values.
    pub fn energy(&self) -> EnergyValue {
        EnergyValue(self.values.iter().map(|x| x.abs()).sum())
    }

    /// Distinct values with multiplicities. Runs of neighbours closer than
    /// the merge tolerance collapse into their mean.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        let mut run_start = 0;
        for i in 1..=self.values.len() {
            let split = i == self.values.len()
                || (self.values[i - 1] - self.values[i]).abs() > self.merge_tolerance;
            if split {
                let run = &self.values[run_start..i];
                let mean = run.iter().sum::<f64>() / run.len() as f64;
                out.push((mean, run.len()));
                run_start = i;
            }
        }
        out
    }

    /// How many eigenvalues lie within `tol` of `x`.
    pub fn count_near(&self, x: f64, tol: f64) -> usize {
        self.values
            .iter()
            .filter(|&&v| (v - x).abs() <= tol)
            .count()
    }

    pub fn max_abs_diff(&self, other: &Spectrum) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        Some(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }

    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.max_abs_diff(other).is_some_and(|d| d <= tol)
    }

    /// Whether every value of `self` can be matched to a distinct value of
    /// `other` within `tol`.
    pub fn is_submultiset_of(&self, other: &Spectrum, tol: f64) -> bool {
        let mut used = vec![false; other.len()];
        self.values.iter().all(|&x| {
            let hit = other
                .values
                .iter()
                .enumerate()
                .filter(|(i, v)| !used[*i] && (**v - x).abs() <= tol)
                .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()));
            match hit {
                Some((i, _)) => {
                    used[i] = true;
                    true
                }
                None => false,
            }
        })
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(v, m)| {
                if m == 1 {
                    format!("{v:.6}")
                } else {
                    format!("{v:.6}^{m}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Graph energy, `Σ |λ_i| ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EnergyValue(f64);

impl EnergyValue {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(Error::param("energy", "must be a nonnegative real"));
        }
        Ok(EnergyValue(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for EnergyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
