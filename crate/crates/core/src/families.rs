//! Equienergetic and borderenergetic families, instantiated and verified.
//!
//! Each [`CorollaryId`] names one parameterised family of operator graphs.
//! Members are arranged in groups: within a group all members must share
//! their order and energy. Borderenergetic families put every member in its
//! own group and additionally require `E = 2(N - 1)`.
//!
//! Verification runs the closed-form route, the eigensolver route, or both,
//! and records everything in a [`VerificationReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{kronecker_product, Operator};
use crate::error::{Error, Result};
use crate::formulas::{known_energy, EnergyPrediction, KnownEnergy};
use crate::graph::{
    complete_bipartite, complete_graph, cycle_graph, disjoint_union, max_order, Graph,
};
use crate::spectral::{spectrum, verification_tolerance, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CorollaryId {
    C5_1,
    C5_2,
    C5_3,
    C5_4,
    C5_5,
    C5_6,
    C5_7,
    C5_8,
    C5_9,
    C6_1,
    C6_2,
    C6_3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Equienergetic,
    Borderenergetic,
}

impl CorollaryId {
    pub const ALL: [CorollaryId; 12] = [
        CorollaryId::C5_1,
        CorollaryId::C5_2,
        CorollaryId::C5_3,
        CorollaryId::C5_4,
        CorollaryId::C5_5,
        CorollaryId::C5_6,
        CorollaryId::C5_7,
        CorollaryId::C5_8,
        CorollaryId::C5_9,
        CorollaryId::C6_1,
        CorollaryId::C6_2,
        CorollaryId::C6_3,
    ];

    pub fn property(self) -> Property {
        match self {
            CorollaryId::C6_1 | CorollaryId::C6_2 | CorollaryId::C6_3 => Property::Borderenergetic,
            _ => Property::Equienergetic,
        }
    }

    /// `(required, optional)` parameter names.
    pub fn parameters(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            CorollaryId::C5_1 => (&["p", "q", "c", "k"], &[]),
            CorollaryId::C5_2 => (&["t", "m", "k"], &[]),
            CorollaryId::C5_3 => (&["m", "t"], &[]),
            CorollaryId::C5_4 => (&["p"], &["q"]),
            CorollaryId::C5_5 => (&["c"], &["k"]),
            CorollaryId::C5_6 => (&[], &[]),
            CorollaryId::C5_7 | CorollaryId::C5_8 => (&["m"], &[]),
            CorollaryId::C5_9 | CorollaryId::C6_2 | CorollaryId::C6_3 => (&["t"], &[]),
            CorollaryId::C6_1 => (&["k"], &[]),
        }
    }

    /// Number of caller-supplied base graphs the family takes (0 when fixed).
    pub fn base_count(self) -> usize {
        match self {
            CorollaryId::C5_1 => 2,
            CorollaryId::C6_1 | CorollaryId::C6_2 | CorollaryId::C6_3 => 0,
            _ => 1,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CorollaryId::C5_1 => "S_{p,q} and H_{c,k} preserve equienergetic base pairs",
            CorollaryId::C5_2 => {
                "S_{p1,q1}(G) ~ S_{p2,q2}(G) with quadratic parameter families, k = ±1"
            }
            CorollaryId::C5_3 => "H_{m+t,2m-t}(G) ~ H_{3m-t,t}(G), m > t >= 1",
            CorollaryId::C5_4 => "S_{p,q}(G) ~ D_{p+q}(G) iff q = 4p - 2",
            CorollaryId::C5_5 => "H_{c,k}(G) ~ D_{c+k}(G) iff k = 2c",
            CorollaryId::C5_6 => "S_{2,1}(G) ~ G ⊗ K_3",
            CorollaryId::C5_7 => "S_{2m,8m-2}(G) ~ G ⊗ K_{5m-1,5m-1}",
            CorollaryId::C5_8 => "S_{3m+1,12m+2}(G) ~ H_{5m+1,10m+2}(G)",
            CorollaryId::C5_9 => {
                "H_{10t-4,20t-8}(G), D_{30t-12}(G), K_{15t-6,15t-6} ⊗ G, S_{6t-2,24t-10}(G)"
            }
            CorollaryId::C6_1 => "S_{k+1,k}(K_3) and S_{9k+6,k+1}(K_3) are borderenergetic",
            CorollaryId::C6_2 => "H_{(t+1)^2,t(2t+1)}(K_{3t+4}) is borderenergetic",
            CorollaryId::C6_3 => "H_{(t+1)^2,t(2t+1)}(t K_{3t+4} ∪ K_{3t+5}) is borderenergetic",
        }
    }
}

impl fmt::Display for CorollaryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Accepts `C5_4`, `c5.4`, `5.4` and `5_4`.
impl FromStr for CorollaryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().trim_start_matches(['C', 'c']).replace('.', "_");
        CorollaryId::ALL
            .into_iter()
            .find(|id| id.to_string()[1..] == norm)
            .ok_or_else(|| Error::Unknown {
                kind: "corollary",
                name: s.to_string(),
            })
    }
}

/// A labelled base graph, optionally with a closed-form energy.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseGraph {
    pub label: String,
    pub graph: Graph,
    pub known: Option<KnownEnergy>,
}

impl BaseGraph {
    pub fn new(label: impl Into<String>, graph: Graph) -> Self {
        BaseGraph {
            label: label.into(),
            graph,
            known: None,
        }
    }

    pub fn complete(n: usize) -> Result<Self> {
        Ok(BaseGraph {
            label: format!("K{n}"),
            graph: complete_graph(n)?,
            known: Some(KnownEnergy::Complete { n }),
        })
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Result<Self> {
        Ok(BaseGraph {
            label: format!("K{m},{n}"),
            graph: complete_bipartite(m, n)?,
            known: Some(KnownEnergy::CompleteBipartite { m, n }),
        })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Ok(BaseGraph::new(format!("C{n}"), cycle_graph(n)?))
    }

    /// The shipped equienergetic (indeed cospectral) pair `K_{1,4}`, `C_4 ∪ K_1`.
    pub fn default_pair() -> Result<[BaseGraph; 2]> {
        let star = BaseGraph::complete_bipartite(1, 4)?;
        let c4k1 = BaseGraph::new(
            "C4+K1",
            disjoint_union(&[cycle_graph(4)?, complete_graph(1)?])?,
        );
        Ok([star, c4k1])
    }
}

/// One corollary instance: its parameters and (where the corollary takes
/// them) base graphs. Missing bases fall back to `C_4`, or the shipped pair
/// for `C5_1`.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub corollary: CorollaryId,
    pub parameters: BTreeMap<String, i64>,
    pub bases: Vec<BaseGraph>,
    pub tolerance: Option<f64>,
}

impl FamilySpec {
    pub fn new(corollary: CorollaryId) -> Self {
        FamilySpec {
            corollary,
            parameters: BTreeMap::new(),
            bases: Vec::new(),
            tolerance: None,
        }
    }

    pub fn with_param(mut self, name: &str, value: i64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn with_base(mut self, base: BaseGraph) -> Self {
        self.bases.push(base);
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }

    /// Resolved member list with precomputed orders; no graph is allocated.
    pub fn members(&self) -> Result<FamilyPlan> {
        plan(self)
    }

    fn context(&self) -> String {
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if params.is_empty() {
            self.corollary.to_string()
        } else {
            format!("{} ({})", self.corollary, params.join(", "))
        }
    }

    fn domain(&self, reason: impl Into<String>) -> Error {
        Error::Domain {
            corollary: self.context(),
            reason: reason.into(),
        }
    }
}

/// Fixed second factor of a Kronecker-product member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "graph", rename_all = "snake_case")]
pub enum Factor {
    Complete { n: usize },
    CompleteBipartite { m: usize, n: usize },
}

impl Factor {
    fn graph(self) -> Result<Graph> {
        match self {
            Factor::Complete { n } => complete_graph(n),
            Factor::CompleteBipartite { m, n } => complete_bipartite(m, n),
        }
    }

    fn order(self) -> usize {
        match self {
            Factor::Complete { n } => n,
            Factor::CompleteBipartite { m, n } => m + n,
        }
    }

    fn energy(self) -> Result<f64> {
        known_energy(&match self {
            Factor::Complete { n } => KnownEnergy::Complete { n },
            Factor::CompleteBipartite { m, n } => KnownEnergy::CompleteBipartite { m, n },
        })
    }

    fn label(self) -> String {
        match self {
            Factor::Complete { n } => format!("K{n}"),
            Factor::CompleteBipartite { m, n } => format!("K{m},{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Operator {
        op: Operator,
    },
    /// `base ⊗ factor`, or `factor ⊗ base` when `factor_first`.
    Kronecker {
        factor: Factor,
        factor_first: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberPlan {
    pub label: String,
    pub base: usize,
    pub group: usize,
    pub recipe: Recipe,
    pub order: usize,
}

impl MemberPlan {
    pub fn build(&self, bases: &[BaseGraph]) -> Result<Graph> {
        let g = &bases[self.base].graph;
        match self.recipe {
            Recipe::Operator { op } => op.apply(g),
            Recipe::Kronecker {
                factor,
                factor_first,
            } => {
                let f = factor.graph()?;
                if factor_first {
                    kronecker_product(&f, g)
                } else {
                    kronecker_product(g, &f)
                }
            }
        }
    }

    fn prediction(&self) -> Result<EnergyPrediction> {
        match self.recipe {
            Recipe::Operator { op } => EnergyPrediction::for_operator(&op),
            Recipe::Kronecker { factor, .. } => Ok(EnergyPrediction::kronecker(factor.energy()?)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilyPlan {
    pub bases: Vec<BaseGraph>,
    pub members: Vec<MemberPlan>,
}

struct Params<'a> {
    spec: &'a FamilySpec,
}

impl Params<'_> {
    fn get(&self, name: &str) -> i64 {
        self.spec.parameters[name]
    }

    fn at_least(&self, name: &str, min: i64) -> Result<i64> {
        let v = self.get(name);
        if v < min {
            return Err(self
                .spec
                .domain(format!("{name} = {v} but must be >= {min}")));
        }
        Ok(v)
    }

    fn opt_or(&self, name: &str, default: i64) -> i64 {
        self.spec.parameters.get(name).copied().unwrap_or(default)
    }
}

fn to_count(spec: &FamilySpec, what: &str, v: i64) -> Result<usize> {
    if v < 1 {
        return Err(spec.domain(format!("{what} = {v} is not a positive integer")));
    }
    usize::try_from(v).map_err(|_| spec.domain(format!("{what} = {v} is too large")))
}

fn plan(spec: &FamilySpec) -> Result<FamilyPlan> {
    let id = spec.corollary;
    let (required, optional) = id.parameters();
    for name in required {
        if !spec.parameters.contains_key(*name) {
            return Err(spec.domain(format!("missing parameter `{name}`")));
        }
    }
    for name in spec.parameters.keys() {
        if !required.contains(&name.as_str()) && !optional.contains(&name.as_str()) {
            return Err(spec.domain(format!(
                "unexpected parameter `{name}` (expects {})",
                required
                    .iter()
                    .chain(optional)
                    .copied()
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
    }

    let bases: Vec<BaseGraph> = match id.base_count() {
        0 => {
            if !spec.bases.is_empty() {
                return Err(spec.domain("this family fixes its own base graph"));
            }
            Vec::new()
        }
        n => {
            if spec.bases.is_empty() {
                if n == 2 {
                    BaseGraph::default_pair()?.to_vec()
                } else {
                    vec![BaseGraph::cycle(4)?]
                }
            } else if spec.bases.len() != n {
                return Err(spec.domain(format!(
                    "expects {n} base graph(s), got {}",
                    spec.bases.len()
                )));
            } else {
                spec.bases.clone()
            }
        }
    };

    let p = Params { spec };
    let mut members: Vec<(Recipe, usize, usize)> = Vec::new(); // (recipe, base, group)
    let op = |op: Operator| Recipe::Operator { op };
    let split = |p: usize, q: usize| op(Operator::GeneralizedSplitting { p, q });
    let shadow_split = |c: usize, k: usize| op(Operator::ShadowSplitting { c, k });
    let shadow = |m: usize| op(Operator::Shadow { m });
    let count = |what: &str, v: i64| to_count(spec, what, v);

    let bases = match id {
        CorollaryId::C5_1 => {
            if bases[0].graph.order() != bases[1].graph.order() {
                return Err(spec.domain("the two base graphs must have the same order"));
            }
            let (pp, qq) = (count("p", p.get("p"))?, count("q", p.get("q"))?);
            let (cc, kk) = (count("c", p.get("c"))?, count("k", p.get("k"))?);
            members.push((split(pp, qq), 0, 0));
            members.push((split(pp, qq), 1, 0));
            members.push((shadow_split(cc, kk), 0, 1));
            members.push((shadow_split(cc, kk), 1, 1));
            bases
        }
        CorollaryId::C5_2 => {
            let t = p.at_least("t", 1)?;
            let m = p.at_least("m", 1)?;
            let k = p.get("k");
            if k != 1 && k != -1 {
                return Err(spec.domain(format!("k = {k} but must be 1 or -1")));
            }
            let a = 5 * t - 2;
            let p1 = a * a * m + k * a;
            let q1 = m;
            let p2 = 5 * t * t * m + k * t;
            let b = 2 * t - 1;
            let q2 = 5 * b * b * m + k * (4 * t - 2);
            members.push((split(count("p1", p1)?, count("q1", q1)?), 0, 0));
            members.push((split(count("p2", p2)?, count("q2", q2)?), 0, 0));
            bases
        }
        CorollaryId::C5_3 => {
            let t = p.at_least("t", 1)?;
            let m = p.get("m");
            if m <= t {
                return Err(spec.domain(format!("requires m > t, got m = {m}, t = {t}")));
            }
            members.push((
                shadow_split(count("c1", m + t)?, count("k1", 2 * m - t)?),
                0,
                0,
            ));
            members.push((shadow_split(count("c2", 3 * m - t)?, count("k2", t)?), 0, 0));
            bases
        }
        CorollaryId::C5_4 => {
            let pp = p.at_least("p", 1)?;
            let qq = p.opt_or("q", 4 * pp - 2);
            let (pu, qu) = (count("p", pp)?, count("q", qq)?);
            members.push((split(pu, qu), 0, 0));
            members.push((shadow(pu + qu), 0, 0));
            bases
        }
        CorollaryId::C5_5 => {
            let c = p.at_least("c", 1)?;
            let k = p.opt_or("k", 2 * c);
            let (cu, ku) = (count("c", c)?, count("k", k)?);
            members.push((shadow_split(cu, ku), 0, 0));
            members.push((shadow(cu + ku), 0, 0));
            bases
        }
        CorollaryId::C5_6 => {
            members.push((split(2, 1), 0, 0));
            members.push((
                Recipe::Kronecker {
                    factor: Factor::Complete { n: 3 },
                    factor_first: false,
                },
                0,
                0,
            ));
            bases
        }
        CorollaryId::C5_7 => {
            let m = p.at_least("m", 1)?;
            let r = count("5m-1", 5 * m - 1)?;
            members.push((split(count("2m", 2 * m)?, count("8m-2", 8 * m - 2)?), 0, 0));
            members.push((
                Recipe::Kronecker {
                    factor: Factor::CompleteBipartite { m: r, n: r },
                    factor_first: false,
                },
                0,
                0,
            ));
            bases
        }
        CorollaryId::C5_8 => {
            let m = p.at_least("m", 1)?;
            members.push((
                split(count("3m+1", 3 * m + 1)?, count("12m+2", 12 * m + 2)?),
                0,
                0,
            ));
            members.push((
                shadow_split(count("5m+1", 5 * m + 1)?, count("10m+2", 10 * m + 2)?),
                0,
                0,
            ));
            bases
        }
        CorollaryId::C5_9 => {
            let t = p.at_least("t", 1)?;
            let r = count("15t-6", 15 * t - 6)?;
            members.push((
                shadow_split(count("10t-4", 10 * t - 4)?, count("20t-8", 20 * t - 8)?),
                0,
                0,
            ));
            members.push((shadow(count("30t-12", 30 * t - 12)?), 0, 0));
            members.push((
                Recipe::Kronecker {
                    factor: Factor::CompleteBipartite { m: r, n: r },
                    factor_first: true,
                },
                0,
                0,
            ));
            members.push((
                split(count("6t-2", 6 * t - 2)?, count("24t-10", 24 * t - 10)?),
                0,
                0,
            ));
            bases
        }
        CorollaryId::C6_1 => {
            let k = p.at_least("k", 1)?;
            members.push((split(count("k+1", k + 1)?, count("k", k)?), 0, 0));
            members.push((split(count("9k+6", 9 * k + 6)?, count("k+1", k + 1)?), 0, 1));
            vec![BaseGraph::complete(3)?]
        }
        CorollaryId::C6_2 | CorollaryId::C6_3 => {
            let t = p.at_least("t", 1)?;
            let c = count("(t+1)^2", (t + 1) * (t + 1))?;
            let k = count("t(2t+1)", t * (2 * t + 1))?;
            let r = count("3t+4", 3 * t + 4)?;
            let base = if id == CorollaryId::C6_2 {
                BaseGraph::complete(r)?
            } else {
                let copies = count("t", t)?;
                let n = copies * r + r + 1;
                if n > max_order() {
                    return Err(
                        spec.domain(format!("base graph order {n} exceeds the dense limit"))
                    );
                }
                let mut parts = vec![complete_graph(r)?; copies];
                parts.push(complete_graph(r + 1)?);
                let mut known = vec![KnownEnergy::Complete { n: r }; copies];
                known.push(KnownEnergy::Complete { n: r + 1 });
                BaseGraph {
                    label: format!("{t}K{r}+K{}", r + 1),
                    graph: disjoint_union(&parts)?,
                    known: Some(KnownEnergy::Union { parts: known }),
                }
            };
            members.push((shadow_split(c, k), 0, 0));
            vec![base]
        }
    };

    let cap = max_order();
    let mut plans = Vec::with_capacity(members.len());
    for (recipe, base, group) in members {
        let base_graph = &bases[base];
        let (label, blocks) = match recipe {
            Recipe::Operator { op } => (format!("{op}({})", base_graph.label), op.blocks()),
            Recipe::Kronecker {
                factor,
                factor_first,
            } => {
                let label = if factor_first {
                    format!("{} ⊗ {}", factor.label(), base_graph.label)
                } else {
                    format!("{} ⊗ {}", base_graph.label, factor.label())
                };
                (label, factor.order())
            }
        };
        let order = blocks
            .checked_mul(base_graph.graph.order())
            .filter(|&o| o <= cap)
            .ok_or_else(|| Error::MemberTooLarge {
                context: spec.context(),
                reason: format!(
                    "member {label} would have order {} above the dense limit of {cap}",
                    blocks.saturating_mul(base_graph.graph.order())
                ),
            })?;
        plans.push(MemberPlan {
            label,
            base,
            group,
            recipe,
            order,
        });
    }
    Ok(FamilyPlan {
        bases,
        members: plans,
    })
}

/// Builds every member graph of the family.
pub fn instantiate_family(spec: &FamilySpec) -> Result<Vec<Graph>> {
    let plan = plan(spec)?;
    plan.members.iter().map(|m| m.build(&plan.bases)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Oracle,
    #[default]
    Both,
}

impl Method {
    fn formula(self) -> bool {
        matches!(self, Method::Formula | Method::Both)
    }

    fn oracle(self) -> bool {
        matches!(self, Method::Oracle | Method::Both)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "formula" => Ok(Method::Formula),
            "oracle" => Ok(Method::Oracle),
            "both" => Ok(Method::Both),
            _ => Err(Error::Unknown {
                kind: "method",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Oracle => "oracle",
            Method::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseReport {
    pub label: String,
    pub order: usize,
    pub energy: f64,
    /// `closed_form` or `oracle`.
    pub energy_source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberReport {
    pub label: String,
    pub group: usize,
    pub order: usize,
    pub edges: Option<usize>,
    pub predicted_energy: Option<f64>,
    pub measured_energy: Option<f64>,
    /// `2(N - 1)` for borderenergetic families.
    pub target_energy: Option<f64>,
    /// Trace and sum-of-squares identities of the measured spectrum.
    pub spectral_sanity: Option<bool>,
}

impl MemberReport {
    /// Measured energy when available, otherwise the prediction.
    pub fn energy(&self) -> Option<f64> {
        self.measured_energy.or(self.predicted_energy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CospectralFlag {
    pub a: usize,
    pub b: usize,
    pub cospectral: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub corollary: CorollaryId,
    pub property: Property,
    pub method: Method,
    pub parameters: BTreeMap<String, i64>,
    pub bases: Vec<BaseReport>,
    pub tolerance: f64,
    pub members: Vec<MemberReport>,
    pub orders_equal: bool,
    pub energies_equal: bool,
    /// Formula and oracle agree on every member (method `both` only).
    pub paths_agree: Option<bool>,
    /// Every member has `E = 2(N - 1)` (borderenergetic families only).
    pub borderenergetic: Option<bool>,
    pub spectral_sanity: Option<bool>,
    pub cospectral: Vec<CospectralFlag>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// Plain-text rendering of the report.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.push_str(&format!(
            "{} [{}] {} method={} tol={:e}\n",
            self.corollary,
            params.join(" "),
            match self.property {
                Property::Equienergetic => "equienergetic",
                Property::Borderenergetic => "borderenergetic",
            },
            self.method,
            self.tolerance
        ));
        out.push_str(&format!(
            "{:<32} {:>5} {:>7} {:>22} {:>22}\n",
            "member", "group", "order", "formula", "oracle"
        ));
        let num = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.12}"));
        for m in &self.members {
            out.push_str(&format!(
                "{:<32} {:>5} {:>7} {:>22} {:>22}\n",
                m.label,
                m.group,
                m.order,
                num(m.predicted_energy),
                num(m.measured_energy)
            ));
        }
        let flag = |b: Option<bool>| b.map_or("-", |x| if x { "yes" } else { "no" });
        out.push_str(&format!(
            "orders equal: {}  energies equal: {}  paths agree: {}  borderenergetic: {}  verdict: {}\n",
            flag(Some(self.orders_equal)),
            flag(Some(self.energies_equal)),
            flag(self.paths_agree),
            flag(self.borderenergetic),
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn spectral_sanity(spec: &Spectrum, edges: usize) -> bool {
    let n = spec.len() as f64;
    spec.trace().abs() <= n * 1e-10
        && (spec.sum_of_squares() - 2.0 * edges as f64).abs() <= n * 1e-9
}

fn all_close(values: &[f64], tol: f64) -> bool {
    match values.first() {
        None => true,
        Some(&first) => values.iter().all(|v| (v - first).abs() <= tol),
    }
}

fn run(spec: &FamilySpec, method: Method) -> Result<VerificationReport> {
    let plan = plan(spec)?;
    let property = spec.corollary.property();
    let max_member_order = plan.members.iter().map(|m| m.order).max().unwrap_or(1);
    let tolerance = match spec.tolerance {
        Some(t) if t > 0.0 && t.is_finite() => t,
        Some(t) => {
            return Err(Error::param(
                "tolerance",
                format!("{t} is not a positive real"),
            ))
        }
        None => verification_tolerance(max_member_order),
    };

    let mut base_reports = Vec::with_capacity(plan.bases.len());
    for b in &plan.bases {
        let (energy, source) = match &b.known {
            Some(k) => (known_energy(k)?, "closed_form"),
            None => (spectrum(&b.graph)?.energy().value(), "oracle"),
        };
        base_reports.push(BaseReport {
            label: b.label.clone(),
            order: b.graph.order(),
            energy,
            energy_source: source.to_string(),
        });
    }

    let mut members = Vec::with_capacity(plan.members.len());
    let mut spectra: Vec<Option<Spectrum>> = Vec::with_capacity(plan.members.len());
    for m in &plan.members {
        let predicted = if method.formula() {
            Some(m.prediction()?.apply(base_reports[m.base].energy))
        } else {
            None
        };
        let (edges, measured, sanity, spec_values) = if method.oracle() {
            let g = m.build(&plan.bases)?;
            let edges = g.edge_count().value();
            let s = spectrum(&g)?;
            (
                Some(edges),
                Some(s.energy().value()),
                Some(spectral_sanity(&s, edges)),
                Some(s),
            )
        } else {
            (None, None, None, None)
        };
        members.push(MemberReport {
            label: m.label.clone(),
            group: m.group,
            order: m.order,
            edges,
            predicted_energy: predicted,
            measured_energy: measured,
            target_energy: (property == Property::Borderenergetic)
                .then_some(2.0 * (m.order as f64 - 1.0)),
            spectral_sanity: sanity,
        });
        spectra.push(spec_values);
    }

    let groups: Vec<usize> = {
        let mut g: Vec<usize> = members.iter().map(|m| m.group).collect();
        g.sort_unstable();
        g.dedup();
        g
    };
    let in_group = |g: usize| {
        members
            .iter()
            .enumerate()
            .filter(move |(_, m)| m.group == g)
    };

    let orders_equal = groups.iter().all(|&g| {
        let orders: Vec<usize> = in_group(g).map(|(_, m)| m.order).collect();
        orders.windows(2).all(|w| w[0] == w[1])
    });
    let energies_equal = groups.iter().all(|&g| {
        let predicted: Vec<f64> = in_group(g)
            .filter_map(|(_, m)| m.predicted_energy)
            .collect();
        let measured: Vec<f64> = in_group(g).filter_map(|(_, m)| m.measured_energy).collect();
        all_close(&predicted, tolerance) && all_close(&measured, tolerance)
    });
    let paths_agree = (method == Method::Both).then(|| {
        members
            .iter()
            .all(|m| match (m.predicted_energy, m.measured_energy) {
                (Some(p), Some(q)) => (p - q).abs() <= tolerance,
                _ => false,
            })
    });
    let borderenergetic = (property == Property::Borderenergetic).then(|| {
        members.iter().all(|m| {
            let target = 2.0 * (m.order as f64 - 1.0);
            [m.predicted_energy, m.measured_energy]
                .into_iter()
                .flatten()
                .all(|e| (e - target).abs() <= tolerance)
        })
    });
    let spectral_sanity = method
        .oracle()
        .then(|| members.iter().all(|m| m.spectral_sanity == Some(true)));

    let mut cospectral = Vec::new();
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if members[a].order != members[b].order {
                continue;
            }
            if let (Some(sa), Some(sb)) = (&spectra[a], &spectra[b]) {
                cospectral.push(CospectralFlag {
                    a,
                    b,
                    cospectral: sa.approx_eq(sb, tolerance),
                });
            }
        }
    }

    let pass = orders_equal
        && energies_equal
        && paths_agree.unwrap_or(true)
        && borderenergetic.unwrap_or(true)
        && spectral_sanity.unwrap_or(true);

    Ok(VerificationReport {
        corollary: spec.corollary,
        property,
        method,
        parameters: spec.parameters.clone(),
        bases: base_reports,
        tolerance,
        members,
        orders_equal,
        energies_equal,
        paths_agree,
        borderenergetic,
        spectral_sanity,
        cospectral,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}

/// Checks an equienergetic family (`C5_*`).
pub fn verify_equienergetic(spec: &FamilySpec, method: Method) -> Result<VerificationReport> {
    if spec.corollary.property() != Property::Equienergetic {
        return Err(spec.domain("not an equienergetic family"));
    }
    run(spec, method)
}

/// Checks a borderenergetic family (`C6_*`).
pub fn verify_borderenergetic(spec: &FamilySpec, method: Method) -> Result<VerificationReport> {
    if spec.corollary.property() != Property::Borderenergetic {
        return Err(spec.domain("not a borderenergetic family"));
    }
    run(spec, method)
}

/// Dispatches on the family's property.
pub fn verify(spec: &FamilySpec, method: Method) -> Result<VerificationReport> {
    run(spec, method)
}

/// Values one sweep parameter walks through, e.g. `t=1..3` or `k=-1,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRange {
    pub name: String,
    pub values: Vec<i64>,
}

impl ParamRange {
    pub fn new(name: impl Into<String>, values: Vec<i64>) -> Result<Self> {
        let name = name.into();
        if values.is_empty() {
            return Err(Error::param(name, "range is empty"));
        }
        Ok(ParamRange { name, values })
    }

    pub fn inclusive(name: impl Into<String>, lo: i64, hi: i64) -> Result<Self> {
        ParamRange::new(name, (lo..=hi).collect())
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s
            .split_once('=')
            .ok_or_else(|| Error::param(s, "expected name=lo..hi, name=a,b,c or name=v"))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::param(s, "missing parameter name"));
        }
        let int = |t: &str| -> Result<i64> {
            t.trim()
                .parse()
                .map_err(|_| Error::param(name, format!("`{t}` is not an integer")))
        };
        if let Some((lo, hi)) = rest.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            ParamRange::inclusive(name, int(lo)?, int(hi)?)
        } else {
            ParamRange::new(name, rest.split(',').map(int).collect::<Result<_>>()?)
        }
    }
}

/// Outcome of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub parameters: BTreeMap<String, i64>,
    /// Out-of-domain point, e.g. `t >= m` for `C5_3`; not a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

impl SweepEntry {
    /// Skipped points count as passing; errors and failed reports do not.
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.report.as_ref().is_none_or(VerificationReport::passed)
    }
}

/// Verifies `template` at every point of the Cartesian product of `ranges`
/// (first range varies slowest). Points run in parallel on the current rayon
/// pool; results come back in grid order.
pub fn sweep(
    template: &FamilySpec,
    ranges: &[ParamRange],
    method: Method,
) -> Result<Vec<SweepEntry>> {
    for r in ranges {
        if r.values.is_empty() {
            return Err(Error::param(r.name.clone(), "range is empty"));
        }
    }
    let mut grid: Vec<BTreeMap<String, i64>> = vec![template.parameters.clone()];
    for r in ranges {
        grid = grid
            .into_iter()
            .flat_map(|point| {
                r.values.iter().map(move |&v| {
                    let mut p = point.clone();
                    p.insert(r.name.clone(), v);
                    p
                })
            })
            .collect();
    }

    Ok(grid
        .into_par_iter()
        .map(|parameters| {
            let spec = FamilySpec {
                parameters: parameters.clone(),
                ..template.clone()
            };
            let mut entry = SweepEntry {
                parameters,
                skipped: None,
                error: None,
                report: None,
            };
            match run(&spec, method) {
                Ok(report) => entry.report = Some(report),
                Err(e @ Error::Domain { .. }) => entry.skipped = Some(e.to_string()),
                Err(e) => entry.error = Some(e.to_string()),
            }
            entry
        })
        .collect())
}
