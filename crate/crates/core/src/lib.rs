//! Adjacency energy of generalized splitting and shadow-splitting graphs.
//!
//! The crate builds the two block-Kronecker operators `S_{p,q}(G)` and
//! `H_{c,k}(G)` (together with the classical `m`-splitting, `m`-shadow and
//! Kronecker product graphs), computes adjacency spectra with a dense Jacobi
//! eigensolver, evaluates the closed-form energy scale factors, and checks
//! whole equienergetic and borderenergetic families against both routes.
//!
//! ```
//! use splitenergy::{complete_graph, energy, generalized_splitting, split_energy_factor, SplitParams};
//!
//! let k3 = complete_graph(3).unwrap();
//! let params = SplitParams::new(2, 1).unwrap();
//! let s = generalized_splitting(&k3, params).unwrap();
//! let measured = energy(&s).unwrap().value();
//! let predicted = split_energy_factor(2, 1).unwrap() * 4.0;
//! assert!((measured - predicted).abs() < 1e-9);
//! assert!((measured - 2.0 * (s.order() as f64 - 1.0)).abs() < 1e-9);
//! ```

pub mod constructions;
pub mod error;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod spectral;

pub use constructions::{
    coefficient_matrix_shadow, coefficient_matrix_split, construct_by_neighborhood,
    generalized_splitting, kronecker_product, m_shadow, m_splitting, shadow_splitting,
    CoefficientMatrix, Operator, ShadowSplitParams, SplitParams,
};
pub use error::{Error, Result};
pub use families::{
    instantiate_family, sweep, verify, verify_borderenergetic, verify_equienergetic, BaseGraph,
    CorollaryId, FamilySpec, Method, ParamRange, Property, SweepEntry, Verdict, VerificationReport,
};
pub use formulas::{
    known_energy, quotient_matrix_spectrum, shadow_coefficient_spectrum,
    shadow_split_energy_factor, split_coefficient_spectrum, split_energy_factor, EnergyPrediction,
    KnownEnergy,
};
pub use graph::{
    complete_bipartite, complete_graph, cycle_graph, disjoint_union, empty_graph, max_order,
    path_graph, random_graph, EdgeCount, Graph, DEFAULT_MAX_ORDER, MAX_ORDER_ENV,
};
pub use spectral::{
    are_cospectral, eigenvalues_symmetric, energy, spectrum, structured_spectrum,
    verification_tolerance, DenseMatrix, EnergyValue, Spectrum,
};
