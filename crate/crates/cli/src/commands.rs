//! Subcommand implementations. Each returns the report body, the verdict and a
//! one-line human summary.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use log::debug;
use polycompat::hypergraph::{self, Hypergraph, HypergraphChart, HypergraphError};
use polycompat::inclusion::{self, InclusionBound};
use polycompat::linalg::json::vec_to_json;
use polycompat::linalg::rational::to_f64;
use polycompat::models;
use polycompat::tuples::{self, ApOutcome, ApSettings, ExactTuple};
use polycompat::{Polytope, Rational};
use serde_json::{json, Value};

use crate::report::{float12, floats12, Report, Verdict};
use crate::source::{load_polytope, load_tuple, parse_rationals, parse_usizes, read_json};

pub type Outcome = (Value, Verdict, String);

const MAX_ITERS_ENV: &str = "POLYCOMPAT_MAX_ITERS";

fn rationals_f64(xs: &[Rational]) -> Value {
    floats12(&xs.iter().map(to_f64).collect::<Vec<_>>())
}

fn polytope_json(p: &Polytope) -> Value {
    let mut v = p.to_json();
    v["content_hash"] = Value::String(p.content_hash());
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildModel {
    Birkhoff,
    Hypercube,
    Simplex,
    Polysimplex,
    Pyramid,
    Hypergraph,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Model family to build.
    #[arg(value_enum)]
    pub model: BuildModel,
    /// Matrix size for birkhoff.
    #[arg(long)]
    pub n: Option<usize>,
    /// Dimension for hypercube.
    #[arg(long)]
    pub g: Option<usize>,
    /// Number of vertices for simplex.
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated factor sizes for polysimplex.
    #[arg(long)]
    pub ks: Option<String>,
    /// Hypergraph JSON file `{"vertices": n, "edges": [[0-based indices], ...]}`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Chart JSON file `{"base", "basis"}`, or `pyramid` for the preset chart.
    #[arg(long)]
    pub chart: Option<String>,
}

fn required<T>(value: Option<T>, flag: &str, model: &str) -> Result<T> {
    value.with_context(|| format!("{model} needs --{flag}"))
}

pub fn build(args: &BuildArgs, report: &mut Report) -> Result<Outcome> {
    report.input(
        "model",
        json!({ "family": format!("{:?}", args.model).to_lowercase(), "n": args.n, "g": args.g, "k": args.k, "ks": args.ks }),
    );
    let p = match args.model {
        BuildModel::Birkhoff => models::birkhoff_body(required(args.n, "n", "birkhoff")?)?,
        BuildModel::Hypercube => models::hypercube(required(args.g, "g", "hypercube")?)?,
        BuildModel::Simplex => models::simplex_pk(required(args.k, "k", "simplex")?)?,
        BuildModel::Polysimplex => models::polysimplex(&parse_usizes(&required(args.ks.clone(), "ks", "polysimplex")?)?)?,
        BuildModel::Pyramid => models::pyramid()?,
        BuildModel::Hypergraph => return build_hypergraph(args, report),
    };
    let p = report.timed("complete", || p.complete())?;
    let summary = format!(
        "built {} with {} vertices and {} facets",
        p.label(),
        p.num_vertices().unwrap_or(0),
        p.num_facets().unwrap_or(0)
    );
    Ok((json!({ "operation": "build", "polytope": polytope_json(&p) }), Verdict::Affirmative, summary))
}

fn build_hypergraph(args: &BuildArgs, report: &mut Report) -> Result<Outcome> {
    let path = required(args.graph.clone(), "graph", "hypergraph")?;
    let graph_json = read_json(&path)?;
    let graph = Hypergraph::from_json(&graph_json).with_context(|| format!("invalid hypergraph in {}", path.display()))?;
    report.input("graph", json!({ "file": path.display().to_string(), "hypergraph": graph.to_json() }));
    let validated = match report.timed("validate", || hypergraph::validate(&graph)) {
        Ok(v) => v,
        Err(HypergraphError::NotProbability(certificate)) => {
            let body = json!({
                "operation": "validate",
                "accepted": false,
                "rejection_certificate": certificate.to_json(),
            });
            return Ok((body, Verdict::Rejected, "rejected: not a probability hypergraph".into()));
        }
        Err(e) => return Err(e.into()),
    };
    let chart = match args.chart.as_deref() {
        None => hypergraph::pi0_basis(&validated),
        Some("pyramid") => {
            if graph != hypergraph::pyramid_hypergraph() {
                bail!("the pyramid chart belongs to the hypergraph with edges [[0,1,2],[0,3,4]]");
            }
            hypergraph::pyramid_chart()
        }
        Some(file) => HypergraphChart::from_json(&graph, &read_json(&PathBuf::from(file))?)
            .with_context(|| format!("invalid chart in {file}"))?,
    };
    let p = report.timed("polytope", || hypergraph::polytope_of(&graph, &chart))?;
    let p = report.timed("complete", || p.complete())?;
    let summary = format!(
        "accepted hypergraph; polytope of dimension {} with {} vertices and {} facets",
        p.dim(),
        p.num_vertices().unwrap_or(0),
        p.num_facets().unwrap_or(0)
    );
    let body = json!({
        "operation": "build",
        "accepted": true,
        "witness": vec_to_json(validated.witness()),
        "chart": chart.to_json(),
        "polytope": polytope_json(&p),
    });
    Ok((body, Verdict::Affirmative, summary))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Auto,
    Simplex,
    Scaling,
    Numeric,
}

#[derive(Args, Debug)]
pub struct MembershipArgs {
    /// Polytope JSON file or model spec such as `birkhoff:3`.
    #[arg(long)]
    pub polytope: String,
    /// Tuple JSON file, or `fixture:pauli3` / `fixture:block-pauli`.
    #[arg(long)]
    pub tuple: String,
    #[arg(long, value_enum, default_value = "max")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: Strategy,
    /// Iteration cap for the numeric search; overrides POLYCOMPAT_MAX_ITERS.
    #[arg(long)]
    pub max_iters: Option<usize>,
}

fn max_iters(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_ITERS_ENV) {
        Ok(text) => text.trim().parse().with_context(|| format!("{MAX_ITERS_ENV} must be a positive integer")),
        Err(_) => Ok(ApSettings::default().max_iters),
    }
}

pub fn membership(args: &MembershipArgs, report: &mut Report) -> Result<Outcome> {
    let (p, p_origin) = load_polytope(&args.polytope)?;
    let (a, a_origin) = load_tuple(&args.tuple)?;
    report.input("polytope", p_origin);
    report.input("tuple", a_origin);
    if a.g() != p.dim() {
        bail!("tuple has {} matrices but the polytope has dimension {}", a.g(), p.dim());
    }
    let pmax = report.timed("pmax_check", || tuples::pmax_check(&p, &a))?;
    let pmax_json = json!({
        "member": pmax.member,
        "margins": floats12(&pmax.margins),
        "violated_facet": pmax.violated,
        "exact": pmax.exact,
    });
    match args.mode {
        Mode::Max => {
            let verdict = if pmax.member { "member" } else { "non-member" };
            let body = json!({ "mode": "max", "verdict": verdict, "operation": "pmax_check", "pmax": pmax_json });
            let summary = format!("{verdict} of P_max ({} facet blocks checked)", pmax.margins.len());
            Ok((body, if pmax.member { Verdict::Affirmative } else { Verdict::Negative }, summary))
        }
        Mode::Min if !pmax.member => {
            let body = json!({
                "mode": "min",
                "verdict": "non-member",
                "operation": "pmax_check",
                "exact": pmax.exact,
                "reason": "not in P_max, which contains P_min",
                "pmax": pmax_json,
            });
            Ok((body, Verdict::Negative, "non-member: violates a P_max facet".into()))
        }
        Mode::Min => min_membership(args, &p, &a, pmax_json, report),
    }
}

fn min_membership(args: &MembershipArgs, p: &Polytope, a: &ExactTuple, pmax_json: Value, report: &mut Report) -> Result<Outcome> {
    let is_simplex = p.num_vertices() == Some(p.dim() + 1);
    let routes: Vec<Strategy> = match args.strategy {
        Strategy::Auto if is_simplex => vec![Strategy::Simplex],
        Strategy::Auto => vec![Strategy::Scaling, Strategy::Numeric],
        Strategy::Simplex if !is_simplex => bail!("the simplex strategy needs a simplex; {} is not one", p.label()),
        other => vec![other],
    };
    let mut attempts = Vec::new();
    for route in routes {
        debug!("trying {route:?}");
        match route {
            Strategy::Simplex => {
                let cert = report.timed("simplex_certificate", || tuples::simplex_certificate(p, a))?;
                let body = json!({
                    "mode": "min", "verdict": "member", "operation": "simplex_certificate", "exact": true,
                    "certificate": cert.to_json(), "pmax": pmax_json, "attempts": attempts,
                });
                return Ok((body, Verdict::Affirmative, "member of P_min (simplex certificate)".into()));
            }
            Strategy::Scaling => {
                let (s, cert) = report.timed("scaling_lp", || inclusion::lp_max_uniform_scaling(p))?;
                let scaled = a.scale(&s.recip());
                let inner = report.timed("pmax_check_scaled", || tuples::pmax_check(p, &scaled))?;
                if inner.member {
                    let compat = report.timed("certificate_from_scaling", || tuples::certificate_from_scaling(&cert, p, &scaled))?;
                    if !tuples::verify_certificate(p, a, &compat.povm)? {
                        bail!("internal error: scaling certificate failed verification");
                    }
                    let body = json!({
                        "mode": "min", "verdict": "member", "operation": "certificate_from_scaling", "exact": true,
                        "scaling": { "s": polycompat::linalg::json::rat_to_json(&s), "certificate": cert.to_json() },
                        "certificate": compat.to_json(), "pmax": pmax_json, "attempts": attempts,
                    });
                    return Ok((body, Verdict::Affirmative, "member of P_min (scaling certificate)".into()));
                }
                attempts.push(json!({
                    "operation": "certificate_from_scaling",
                    "s": polycompat::linalg::json::rat_to_json(&s),
                    "outcome": "A/s is not in P_max",
                }));
            }
            Strategy::Numeric => {
                let settings = ApSettings { max_iters: max_iters(args.max_iters)?, ..ApSettings::default() };
                let outcome = report.timed("alternating_projections", || tuples::pmin_search_ap(p, a, settings))?;
                match outcome {
                    ApOutcome::Feasible { certificate, iterations, repaired } => {
                        let body = json!({
                            "mode": "min", "verdict": "member", "operation": "pmin_search_ap", "exact": false,
                            "iterations": iterations, "repaired": repaired,
                            "certificate": certificate.to_json(), "pmax": pmax_json, "attempts": attempts,
                        });
                        let summary = format!("member of P_min (numerical certificate after {iterations} iterations)");
                        return Ok((body, Verdict::Affirmative, summary));
                    }
                    ApOutcome::Undecided { residual, iterations } => attempts.push(json!({
                        "operation": "pmin_search_ap",
                        "outcome": "undecided",
                        "iterations": iterations,
                        "max_iters": settings.max_iters,
                        "residual": float12(residual),
                    })),
                }
            }
            Strategy::Auto => unreachable!("auto is expanded above"),
        }
    }
    let body = json!({
        "mode": "min", "verdict": "undecided", "operation": "none", "exact": false,
        "pmax": pmax_json, "attempts": attempts,
    });
    Ok((body, Verdict::Negative, "undecided: in P_max but no P_min certificate found".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Feasibility of a given scaling vector.
    Lp,
    /// Largest uniform (or weighted) scaling.
    LpMax,
    /// Flat bound from symmetrization, valid up to dimension d.
    Symmetrize,
    /// Transfer a known bound from another polytope.
    Compare,
    /// Maximal bounds among the LP route and symmetrization.
    Best,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Known {
    LpMax,
    Symmetrize,
    Polysimplex,
}

#[derive(Args, Debug)]
pub struct InclusionArgs {
    /// Polytope JSON file or model spec.
    #[arg(long)]
    pub polytope: String,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Comma-separated scaling vector for `lp`; a single value is used on every coordinate.
    #[arg(long)]
    pub s: Option<String>,
    /// Comma-separated weights for `lp-max` or the polysimplex bound.
    #[arg(long)]
    pub weights: Option<String>,
    /// Matrix dimension for symmetrization.
    #[arg(long)]
    pub d: Option<usize>,
    /// Comparison polytope: JSON file or model spec (`polysimplex:..` for the polysimplex bound).
    #[arg(long = "with")]
    pub with: Option<String>,
    /// Bound to transfer from the comparison polytope.
    #[arg(long, value_enum)]
    pub known: Option<Known>,
}

fn bound_outcome(bound: &InclusionBound, operation: &str, extra: Value) -> Outcome {
    let summary = format!(
        "{operation}: s = [{}]",
        bound.s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    );
    let mut body = json!({
        "operation": operation,
        "verdict": "bound",
        "bound": bound.to_json(),
        "s_float": rationals_f64(&bound.s),
    });
    if let Value::Object(extra) = extra {
        body.as_object_mut().expect("object").extend(extra);
    }
    (body, Verdict::Affirmative, summary)
}

fn known_bound(args: &InclusionArgs, q_source: &str, report: &mut Report) -> Result<(Polytope, InclusionBound)> {
    let known = args.known.context("compare needs --known lp-max|symmetrize|polysimplex")?;
    match known {
        Known::LpMax => {
            let (q, origin) = load_polytope(q_source)?;
            report.input("with", origin);
            let (_, cert) = report.timed("known_lp", || inclusion::lp_max_uniform_scaling(&q))?;
            let bound = InclusionBound::from_lp(&q, cert);
            Ok((q, bound))
        }
        Known::Symmetrize => {
            let (q, origin) = load_polytope(q_source)?;
            report.input("with", origin);
            let d = args.d.context("symmetrization needs --d")?;
            let bound = inclusion::symmetrization_bound(&q, d)?;
            Ok((q, bound))
        }
        Known::Polysimplex => {
            let sizes = q_source
                .strip_prefix("polysimplex:")
                .context("the polysimplex bound needs --with polysimplex:k1,k2,...")?;
            let factors = parse_usizes(sizes)?
                .into_iter()
                .map(models::simplex_pk)
                .collect::<Result<Vec<_>, _>>()?;
            let weights = match &args.weights {
                Some(w) => parse_rationals(w)?,
                None => vec![Rational::new(1.into(), (factors.len() as i64).into()); factors.len()],
            };
            let (bound, q) = inclusion::polysimplex_bound(&factors, &weights)?;
            let q = q.complete()?;
            report.input("with", json!({ "model": q_source, "content_hash": q.content_hash() }));
            Ok((q, bound))
        }
    }
}

pub fn inclusion(args: &InclusionArgs, report: &mut Report) -> Result<Outcome> {
    let (p, origin) = load_polytope(&args.polytope)?;
    report.input("polytope", origin);
    match args.method {
        Method::Lp => {
            let mut s = parse_rationals(args.s.as_deref().context("lp needs --s")?)?;
            if s.len() == 1 {
                s = vec![s[0].clone(); p.dim()];
            }
            if s.len() != p.dim() {
                bail!("--s has {} entries but the polytope has dimension {}", s.len(), p.dim());
            }
            match report.timed("lp_feasible", || inclusion::lp_feasible_scaling(&p, &s))? {
                Some(cert) => Ok(bound_outcome(&InclusionBound::from_lp(&p, cert), "lp_feasible_scaling", json!({}))),
                None => {
                    let body = json!({
                        "operation": "lp_feasible_scaling",
                        "verdict": "infeasible",
                        "s": vec_to_json(&s),
                    });
                    Ok((body, Verdict::Negative, "lp: no scaling certificate for this s".into()))
                }
            }
        }
        Method::LpMax => match &args.weights {
            Some(w) => {
                let w = parse_rationals(w)?;
                if w.len() != p.dim() {
                    bail!("--weights has {} entries but the polytope has dimension {}", w.len(), p.dim());
                }
                let (t, cert) = report.timed("lp_max", || inclusion::lp_max_weighted(&p, &w))?;
                let extra = json!({ "weights": vec_to_json(&w), "optimum": polycompat::linalg::json::rat_to_json(&t) });
                Ok(bound_outcome(&InclusionBound::from_lp(&p, cert), "lp_max_weighted", extra))
            }
            None => {
                let (t, cert) = report.timed("lp_max", || inclusion::lp_max_uniform_scaling(&p))?;
                let extra = json!({ "optimum": polycompat::linalg::json::rat_to_json(&t) });
                Ok(bound_outcome(&InclusionBound::from_lp(&p, cert), "lp_max_uniform_scaling", extra))
            }
        },
        Method::Symmetrize => {
            let d = args.d.context("symmetrize needs --d")?;
            let bound = report.timed("symmetrize", || inclusion::symmetrization_bound(&p, d))?;
            Ok(bound_outcome(&bound, "symmetrization_bound", json!({})))
        }
        Method::Compare => {
            let q_source = args.with.as_deref().context("compare needs --with")?;
            let (q, known) = known_bound(args, q_source, report)?;
            let bound = report.timed("compare", || inclusion::comparison_bound(&p, &q, &known))?;
            Ok(bound_outcome(&bound, "comparison_bound", json!({})))
        }
        Method::Best => {
            let d = args.d.context("best needs --d")?;
            let bounds = report.timed("best_known", || inclusion::best_known(&p, d, &[]))?;
            let summary = format!("{} maximal bound(s)", bounds.len());
            let body = json!({
                "operation": "best_known",
                "verdict": "bounds",
                "bounds": bounds.iter().map(InclusionBound::to_json).collect::<Vec<_>>(),
            });
            Ok((body, Verdict::Affirmative, summary))
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Case name, or `all`.
    #[arg(long)]
    pub case: String,
}

pub fn verify_paper(args: &VerifyArgs, report: &mut Report) -> Result<Outcome> {
    let names: Vec<&str> = if args.case == "all" { polycompat::checks::CASES.to_vec() } else { vec![args.case.as_str()] };
    let mut cases = Vec::new();
    let mut passed = 0;
    for name in &names {
        let Some(case) = report.timed(name, || polycompat::checks::run_case(name)) else {
            let body = json!({
                "operation": "verify",
                "verdict": "unknown-case",
                "case": name,
                "known_cases": polycompat::checks::CASES,
            });
            return Ok((body, Verdict::Rejected, format!("unknown case {name:?}")));
        };
        passed += usize::from(case.passed());
        cases.push(case.to_json());
    }
    let all = passed == names.len();
    let body = json!({ "operation": "verify", "verdict": if all { "passed" } else { "failed" }, "cases": cases });
    let summary = format!("{passed} of {} case(s) passed", names.len());
    Ok((body, if all { Verdict::Affirmative } else { Verdict::Negative }, summary))
}

#[derive(Args, Debug)]
pub struct FixtureArgs {
    /// Fixture name.
    pub name: String,
}

pub fn fixture(args: &FixtureArgs, _report: &mut Report) -> Result<Outcome> {
    let f = models::fixture(&args.name).with_context(|| format!("known fixtures: {}", models::fixture_names().join(", ")))?;
    Ok((json!({ "operation": "fixture", "name": args.name, "fixture": f.to_json() }), Verdict::Affirmative, format!("fixture {}", args.name)))
}
