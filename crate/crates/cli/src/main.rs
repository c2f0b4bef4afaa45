//! `splitenergy` command-line front end.
//!
//! Exit status: 0 when every check in the invocation passed, 1 when a
//! verification failed, 2 on usage or input errors.

mod args;
mod json;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use splitenergy::formulas::operator_coefficient_spectrum;
use splitenergy::io::{read_graph, write_graph, Format};
use splitenergy::{
    complete_graph, cycle_graph, disjoint_union, empty_graph, kronecker_product, path_graph,
    random_graph, spectrum, structured_spectrum, sweep, verification_tolerance, verify, BaseGraph,
    CorollaryId, EnergyPrediction, FamilySpec, Graph, Method, Operator, ParamRange, Spectrum,
};

use args::{AnalyseArgs, Cli, Command, ConstructOp, GenFamily, GlobalArgs};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(passed)`; errors are usage or input problems.
fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    if let Some(tol) = g.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            bail!("--tol must be a positive real, got {tol}");
        }
    }
    if let Some(jobs) = g.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }

    match &cli.command {
        Command::Gen { family } => {
            let graph = generate(family)?;
            emit_graph(g, &graph)?;
            Ok(true)
        }
        Command::Construct { input, op } => {
            let base = load_graph(input)?;
            let graph = match op {
                ConstructOp::Split { p, q } => {
                    Operator::GeneralizedSplitting { p: *p, q: *q }.apply(&base)?
                }
                ConstructOp::ShadowSplit { c, k } => {
                    Operator::ShadowSplitting { c: *c, k: *k }.apply(&base)?
                }
                ConstructOp::Shadow { m } => Operator::Shadow { m: *m }.apply(&base)?,
                ConstructOp::Splitting { m } => Operator::Splitting { m: *m }.apply(&base)?,
                ConstructOp::Kron { with } => kronecker_product(&base, &load_graph(with)?)?,
            };
            emit_graph(g, &graph)?;
            Ok(true)
        }
        Command::Convert { input } => {
            emit_graph(g, &load_graph(input)?)?;
            Ok(true)
        }
        Command::Spectrum(a) => {
            let report = analyse(g, a)?;
            let out = SpectrumReport::from(&report);
            emit(g, &json::to_string(&out)?)?;
            Ok(report.agree.unwrap_or(true))
        }
        Command::Energy(a) => {
            let report = analyse(g, a)?;
            let out = EnergyReport::from(&report);
            emit(g, &json::to_string(&out)?)?;
            Ok(report.agree.unwrap_or(true))
        }
        Command::Verify {
            corollary,
            bindings,
            base,
        } => {
            let mut spec = family_spec(g, corollary, base)?;
            for b in bindings {
                let (name, value) = parse_binding(b)?;
                if spec.parameters.insert(name.clone(), value).is_some() {
                    bail!("parameter `{name}` bound twice");
                }
            }
            let report = verify(&spec, Method::from(g.method))?;
            if g.table {
                emit(g, &report.to_table())?;
            } else {
                emit(g, &json::to_string(&report)?)?;
            }
            Ok(report.passed())
        }
        Command::Sweep {
            corollary,
            ranges,
            base,
        } => {
            let spec = family_spec(g, corollary, base)?;
            let ranges = ranges
                .iter()
                .map(|r| r.parse::<ParamRange>())
                .collect::<splitenergy::Result<Vec<_>>>()?;
            let entries = sweep(&spec, &ranges, Method::from(g.method))?;
            if g.table {
                let mut text = String::new();
                for e in &entries {
                    match (&e.report, &e.skipped, &e.error) {
                        (Some(r), _, _) => text.push_str(&r.to_table()),
                        (_, Some(s), _) => text.push_str(&format!("skipped: {s}\n")),
                        (_, _, Some(err)) => text.push_str(&format!("error: {err}\n")),
                        _ => {}
                    }
                }
                emit(g, &text)?;
            } else {
                emit(g, &json::to_string(&entries)?)?;
            }
            Ok(entries.iter().all(|e| e.passed()))
        }
    }
}

fn parse_binding(s: &str) -> Result<(String, i64)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| anyhow!("expected NAME=VALUE, got `{s}`"))?;
    let value = value
        .trim()
        .parse()
        .with_context(|| format!("`{s}`: value is not an integer"))?;
    Ok((name.trim().to_string(), value))
}

fn family_spec(g: &GlobalArgs, corollary: &str, bases: &[String]) -> Result<FamilySpec> {
    let id: CorollaryId = corollary.parse()?;
    let mut spec = FamilySpec::new(id);
    for b in bases {
        spec = spec.with_base(resolve_base(b)?);
    }
    if let Some(tol) = g.tol {
        spec = spec.with_tolerance(tol);
    }
    Ok(spec)
}

/// A readable file, or else a generator spec such as `cycle:4`.
fn resolve_base(s: &str) -> Result<BaseGraph> {
    let path = Path::new(s);
    if path.is_file() {
        let label = path
            .file_stem()
            .map_or_else(|| s.to_string(), |x| x.to_string_lossy().into_owned());
        return Ok(BaseGraph::new(label, load_graph(path)?));
    }
    generator_spec(s).with_context(|| format!("`{s}` is neither a file nor a generator spec"))
}

fn generator_spec(s: &str) -> Result<BaseGraph> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .ok_or_else(|| anyhow!("`{s}`: missing size"))?
            .parse()
            .with_context(|| format!("`{s}`: sizes must be non-negative integers"))
    };
    let base = match (parts[0], parts.len()) {
        ("complete", 2) => BaseGraph::complete(num(1)?)?,
        ("bipartite", 3) => BaseGraph::complete_bipartite(num(1)?, num(2)?)?,
        ("cycle", 2) => BaseGraph::cycle(num(1)?)?,
        ("path", 2) => BaseGraph::new(format!("P{}", num(1)?), path_graph(num(1)?)?),
        ("empty", 2) => BaseGraph::new(format!("E{}", num(1)?), empty_graph(num(1)?)?),
        _ => bail!("unknown generator spec `{s}`"),
    };
    Ok(base)
}

fn generate(family: &GenFamily) -> Result<Graph> {
    Ok(match family {
        GenFamily::Complete { n } => complete_graph(*n)?,
        GenFamily::Cycle { n } => cycle_graph(*n)?,
        GenFamily::Path { n } => path_graph(*n)?,
        GenFamily::Empty { n } => empty_graph(*n)?,
        GenFamily::Bipartite { m, n } => splitenergy::complete_bipartite(*m, *n)?,
        GenFamily::Random { n, p, seed } => {
            random_graph(*n, *p, &mut ChaCha8Rng::seed_from_u64(*seed))?
        }
        GenFamily::Union { parts } => {
            let graphs = parts
                .iter()
                .map(|p| generator_spec(p).map(|b| b.graph))
                .collect::<Result<Vec<_>>>()?;
            disjoint_union(&graphs)?
        }
    })
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_graph(&text, None).with_context(|| format!("parsing {}", path.display()))
}

fn emit_graph(g: &GlobalArgs, graph: &Graph) -> Result<()> {
    emit(g, &write_graph(graph, Format::from(g.format))?)
}

fn emit(g: &GlobalArgs, text: &str) -> Result<()> {
    match &g.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Analysis {
    input: String,
    operator: Option<Operator>,
    order: usize,
    edges: usize,
    method: Method,
    tolerance: f64,
    formula: Option<Spectrum>,
    formula_energy: Option<f64>,
    oracle: Option<Spectrum>,
    agree: Option<bool>,
}

fn analyse(g: &GlobalArgs, a: &AnalyseArgs) -> Result<Analysis> {
    let method = Method::from(g.method);
    let input = load_graph(&a.input)?;
    let operator = a
        .apply
        .as_deref()
        .map(|s| s.parse::<Operator>())
        .transpose()?;
    let (order, edges) = match &operator {
        Some(op) => (
            op.output_order(input.order()),
            op.coefficient_matrix()?.ones() * input.edge_count().value(),
        ),
        None => (input.order(), input.edge_count().value()),
    };
    let tolerance = g.tol.unwrap_or_else(|| verification_tolerance(order));
    let wants_formula = matches!(method, Method::Formula | Method::Both);
    let wants_oracle = matches!(method, Method::Oracle | Method::Both);
    if method == Method::Formula && operator.is_none() {
        bail!("--method formula needs --apply OP: the closed forms describe operator graphs");
    }

    let (formula, formula_energy) = match (&operator, wants_formula) {
        (Some(op), true) => {
            let base = spectrum(&input)?;
            let s = structured_spectrum(&operator_coefficient_spectrum(op)?, &base);
            let e = EnergyPrediction::for_operator(op)?.apply(base.energy().value());
            (Some(s), Some(e))
        }
        _ => (None, None),
    };
    let oracle = if wants_oracle {
        let graph = match &operator {
            Some(op) => op.apply(&input)?,
            None => input,
        };
        Some(spectrum(&graph)?)
    } else {
        None
    };
    let agree = match (&formula, formula_energy, &oracle) {
        (Some(f), Some(fe), Some(o)) => {
            Some(f.approx_eq(o, tolerance) && (fe - o.energy().value()).abs() <= tolerance)
        }
        _ => None,
    };
    Ok(Analysis {
        input: a.input.display().to_string(),
        operator,
        order,
        edges,
        method,
        tolerance,
        formula,
        formula_energy,
        oracle,
        agree,
    })
}

#[derive(Serialize)]
struct Eigenvalue {
    value: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct SpectrumBody {
    values: Vec<f64>,
    distinct: Vec<Eigenvalue>,
    energy: f64,
}

impl From<&Spectrum> for SpectrumBody {
    fn from(s: &Spectrum) -> Self {
        SpectrumBody {
            values: s.values().to_vec(),
            distinct: s
                .multiplicities()
                .into_iter()
                .map(|(value, multiplicity)| Eigenvalue {
                    value,
                    multiplicity,
                })
                .collect(),
            energy: s.energy().value(),
        }
    }
}

#[derive(Serialize)]
struct SpectrumReport {
    input: String,
    operator: Option<String>,
    order: usize,
    edges: usize,
    method: Method,
    tolerance: f64,
    formula: Option<SpectrumBody>,
    oracle: Option<SpectrumBody>,
    max_abs_diff: Option<f64>,
    agree: Option<bool>,
}

impl From<&Analysis> for SpectrumReport {
    fn from(a: &Analysis) -> Self {
        SpectrumReport {
            input: a.input.clone(),
            operator: a.operator.map(|op| op.to_string()),
            order: a.order,
            edges: a.edges,
            method: a.method,
            tolerance: a.tolerance,
            formula: a.formula.as_ref().map(SpectrumBody::from),
            oracle: a.oracle.as_ref().map(SpectrumBody::from),
            max_abs_diff: match (&a.formula, &a.oracle) {
                (Some(f), Some(o)) => f.max_abs_diff(o),
                _ => None,
            },
            agree: a.agree,
        }
    }
}

#[derive(Serialize)]
struct EnergyReport {
    input: String,
    operator: Option<String>,
    order: usize,
    edges: usize,
    method: Method,
    tolerance: f64,
    energy: f64,
    formula: Option<f64>,
    oracle: Option<f64>,
    delta: Option<f64>,
    agree: Option<bool>,
    parameters: BTreeMap<String, usize>,
}

impl From<&Analysis> for EnergyReport {
    fn from(a: &Analysis) -> Self {
        let oracle = a.oracle.as_ref().map(|s| s.energy().value());
        let mut parameters = BTreeMap::new();
        match a.operator {
            Some(Operator::GeneralizedSplitting { p, q }) => {
                parameters.insert("p".into(), p);
                parameters.insert("q".into(), q);
            }
            Some(Operator::ShadowSplitting { c, k }) => {
                parameters.insert("c".into(), c);
                parameters.insert("k".into(), k);
            }
            Some(Operator::Shadow { m } | Operator::Splitting { m }) => {
                parameters.insert("m".into(), m);
            }
            None => {}
        }
        EnergyReport {
            input: a.input.clone(),
            operator: a.operator.map(|op| op.to_string()),
            order: a.order,
            edges: a.edges,
            method: a.method,
            tolerance: a.tolerance,
            energy: oracle.or(a.formula_energy).unwrap_or(f64::NAN),
            formula: a.formula_energy,
            oracle,
            delta: a.formula_energy.zip(oracle).map(|(f, o)| (f - o).abs()),
            agree: a.agree,
            parameters,
        }
    }
}
