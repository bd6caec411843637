use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::Rng;
use serde_json::{json, Value};

use semiramsey::constructions::{
    base_construction, check_delta_properties, for_each_rule_mismatch, frankl_wilson_instance,
    one_dim_k4_construction, step_up, tower, verify_eps_deep_sampled, ConstructionInstance,
    DeepnessCheck, DeltaViolation, Provenance, ResourceCaps,
};
use semiramsey::exactmath::count_real_roots;
use semiramsey::geometry::{one_sided_instance, order_type_instance, Arrangement, Hyperplane};
use semiramsey::io;
use semiramsey::relation::{count_distinct_sign_vectors, milnor_thom_bound};
use semiramsey::rng::stream;
use semiramsey::solvers::{
    erdos_rado_greedy, is_transitive, longest_monotone_subsequence, max_homogeneous,
    spencer_bound_met, spencer_independent_set, transitive_ramsey_number, verify_transitive_ramsey,
    HomogeneousResult, TransitiveVerdict,
};
use semiramsey::{Error, MultivariatePolynomial, OrderedPointSet, Rational};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const ARGUMENT: u8 = 2;
const RESOURCE: u8 = 3;
const INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "semiramsey",
    version,
    about = "Semi-algebraic Ramsey constructions and solvers"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    max_points: u64,
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_bits: u64,
    /// Node budget for exact searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance and write it as JSON.
    Construct {
        #[command(subcommand)]
        kind: Construct,
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Extract a homogeneous subset, monotone subsequence or independent set.
    Solve {
        #[arg(value_enum)]
        method: Method,
        input: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a pass/fail check.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Print tables of tower values, transitive Ramsey numbers and hom values.
    Report,
}

#[derive(Subcommand)]
enum Construct {
    Base {
        #[arg(long)]
        n: u32,
    },
    Stepup(BaseSource),
    #[command(name = "onedim-k4")]
    OnedimK4 {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        b: u64,
    },
    FranklWilson {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
    },
    /// From a point-set file, or random integer points from the seed.
    OrderType {
        #[arg(long, conflicts_with = "random")]
        input: Option<PathBuf>,
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// From an arrangement file, or random hyperplanes from the seed.
    OneSided {
        #[arg(long, conflicts_with = "random")]
        input: Option<PathBuf>,
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

#[derive(Args)]
struct BaseSource {
    /// Instance file to step up.
    #[arg(long, required_unless_present = "n", conflicts_with = "n")]
    input: Option<PathBuf>,
    /// Step up the base construction of this size instead.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Greedy,
    Monotone,
    Spencer,
}

#[derive(Subcommand)]
enum Check {
    PropertiesAb {
        #[arg(long = "N", alias = "bits")]
        bits: u32,
    },
    StepupConsistency(BaseSource),
    EpsDeep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    TransitiveRamsey {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        /// Check this N only; by default checks N3(s, n) and N3(s, n) - 1.
        #[arg(long = "N")]
        size: Option<usize>,
    },
    MilnorThom {
        #[arg(long, default_value_t = 10)]
        families: usize,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        polys: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Root counts on polynomials with known rational roots.
    Sturm {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Argument(_) => (ARGUMENT, "argument"),
            Error::Precondition(_) => (ARGUMENT, "precondition"),
            Error::Degenerate(_) => (ARGUMENT, "degenerate"),
            Error::Parse(_) => (ARGUMENT, "parse"),
            Error::Resource(_) => (RESOURCE, "resource"),
            Error::Budget(_) => (RESOURCE, "budget"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: ARGUMENT,
        kind: "io",
        message: format!("{}: {e}", path.display()),
    }
}

type Run = Result<u8, Failure>;

struct Ctx {
    seed: u64,
    caps: ResourceCaps,
    budget: Option<u64>,
    format: Format,
}

impl Ctx {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
            Format::Text => println!("{}", text()),
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let raw = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    serde_json::from_str(&raw).map_err(|e| Failure {
        code: ARGUMENT,
        kind: "parse",
        message: format!("{}: {e}", path.display()),
    })
}

fn write_json(path: &Path, v: &Value) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    std::fs::write(path, s).map_err(|e| io_failure(path, e))
}

fn load_instance(path: &Path) -> Result<ConstructionInstance, Failure> {
    Ok(io::instance_from_json(&read_json(path)?)?)
}

fn base_source(src: &BaseSource, ctx: &Ctx) -> Result<ConstructionInstance, Failure> {
    match (&src.input, src.n) {
        (Some(path), _) => load_instance(path),
        (None, Some(n)) => Ok(base_construction(n, &ctx.caps)?),
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn random_int(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::from_integer(rng.random_range(-bound..=bound).into())
}

fn construct(kind: &Construct, ctx: &Ctx) -> Result<ConstructionInstance, Failure> {
    let caps = &ctx.caps;
    Ok(match kind {
        Construct::Base { n } => base_construction(*n, caps)?,
        Construct::Stepup(src) => step_up(&base_source(src, ctx)?, caps)?,
        Construct::OnedimK4 { n, b } => one_dim_k4_construction(*n, *b, caps)?,
        Construct::FranklWilson { m, p } => frankl_wilson_instance(*m, *p, caps)?,
        Construct::OrderType { input, random, dim } => {
            let points = match (input, random) {
                (Some(path), _) => io::points_from_json(&read_json(path)?)?,
                (None, Some(count)) => {
                    caps_points(*count, caps)?;
                    let mut rng = stream(ctx.seed, 0);
                    let pts = (0..*count)
                        .map(|_| (0..*dim).map(|_| random_int(&mut rng, 1000)).collect())
                        .collect();
                    OrderedPointSet::new(*dim, pts)?
                }
                (None, None) => {
                    return Err(Error::Argument("give --input or --random".into()).into())
                }
            };
            order_type_instance(points)?
        }
        Construct::OneSided { input, random, dim } => {
            let arrangement = match (input, random) {
                (Some(path), _) => io::arrangement_from_json(&read_json(path)?)?,
                (None, Some(count)) => {
                    caps_points(*count, caps)?;
                    let mut rng = stream(ctx.seed, 0);
                    let mut hs = Vec::with_capacity(*count);
                    while hs.len() < *count {
                        let a = (0..*dim).map(|_| random_int(&mut rng, 50)).collect();
                        if let Ok(h) = Hyperplane::new(a, random_int(&mut rng, 50)) {
                            hs.push(h);
                        }
                    }
                    Arrangement::new(*dim, hs)?
                }
                (None, None) => {
                    return Err(Error::Argument("give --input or --random".into()).into())
                }
            };
            one_sided_instance(arrangement)?
        }
    })
}

fn caps_points(count: usize, caps: &ResourceCaps) -> Result<(), Failure> {
    if count > caps.max_points {
        return Err(Error::Resource(format!(
            "{count} points exceeds the cap of {}",
            caps.max_points
        ))
        .into());
    }
    Ok(())
}

fn summary(inst: &ConstructionInstance) -> Value {
    json!({
        "kind": inst.provenance.kind(),
        "N": inst.points.len(),
        "d": inst.points.dim(),
        "k": inst.relation.arity(),
        "t": inst.relation.complexity(),
        "epsilon": inst.epsilon.as_ref().map(io::rational_to_json),
    })
}

fn cmd_construct(kind: &Construct, output: Option<&Path>, ctx: &Ctx) -> Run {
    let inst = construct(kind, ctx)?;
    let bundle = io::instance_to_json(&inst);
    let Some(path) = output else {
        println!("{}", serde_json::to_string_pretty(&bundle).unwrap());
        return Ok(PASS);
    };
    write_json(path, &bundle)?;
    let s = summary(&inst);
    ctx.emit(&s, || {
        format!(
            "{} instance: N = {}, d = {}, k = {}, t = {}, epsilon = {} -> {}",
            s["kind"].as_str().unwrap(),
            s["N"],
            s["d"],
            s["k"],
            s["t"],
            s["epsilon"].as_str().unwrap_or("none"),
            path.display()
        )
    });
    Ok(PASS)
}

fn emit_result(
    result: Value,
    output: Option<&Path>,
    ctx: &Ctx,
    text: String,
) -> Result<(), Failure> {
    match output {
        Some(path) => {
            write_json(path, &result)?;
            ctx.emit(&result, || format!("{text} -> {}", path.display()));
        }
        None => ctx.emit(&result, || text),
    }
    Ok(())
}

fn homogeneous_text(r: &HomogeneousResult) -> String {
    format!(
        "{} subset of size {}: {:?} (certified {}, maximum {}, {} nodes)",
        r.polarity.as_str(),
        r.subset.len(),
        r.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
        r.certified,
        r.maximum,
        r.stats.nodes
    )
}

fn cmd_solve(method: Method, input: &Path, output: Option<&Path>, ctx: &Ctx) -> Run {
    let v = read_json(input)?;
    match method {
        Method::Brute | Method::Greedy => {
            let inst = io::instance_from_json(&v)?;
            let r = match method {
                Method::Brute => max_homogeneous(&inst.points, &inst.relation, ctx.budget)?,
                _ => erdos_rado_greedy(&inst.points, &inst.relation, ctx.budget)?,
            };
            emit_result(io::result_to_json(&r), output, ctx, homogeneous_text(&r))?;
            let complete = r.certified && (r.maximum || matches!(method, Method::Greedy));
            Ok(if complete { PASS } else { INCONCLUSIVE })
        }
        Method::Monotone => {
            let points = match io::instance_from_json(&v) {
                Ok(inst) => inst.points,
                Err(_) => io::points_from_json(&v)?,
            };
            if points.dim() != 1 {
                return Err(
                    Error::Argument("monotone subsequences need points on a line".into()).into(),
                );
            }
            let seq: Vec<Rational> = points.points().iter().map(|p| p[0].clone()).collect();
            let s = longest_monotone_subsequence(&seq)?;
            let indices: Vec<usize> = s.indices.iter().map(|i| i + 1).collect();
            let result = json!({"subset": indices, "increasing": s.increasing, "length": s.len()});
            let text = format!(
                "{} subsequence of length {}: {indices:?}",
                if s.increasing {
                    "increasing"
                } else {
                    "decreasing"
                },
                s.len()
            );
            emit_result(result, output, ctx, text)?;
            Ok(PASS)
        }
        Method::Spencer => {
            let h = io::hypergraph_from_json(&v)?;
            let r = spencer_independent_set(&h, ctx.seed)?;
            let bound = spencer_bound_met(h.n(), h.edges().len(), r.set.len());
            let set: Vec<usize> = r.set.iter().map(|i| i + 1).collect();
            let result = json!({
                "set": set,
                "size": set.len(),
                "independent": h.is_independent(&r.set),
                "bound_met": bound,
                "rounds": r.rounds,
            });
            let text = format!(
                "independent set of size {} after {} rounds: {set:?}",
                set.len(),
                r.rounds
            );
            emit_result(result, output, ctx, text)?;
            Ok(if bound { PASS } else { FAIL })
        }
    }
}

fn verdict(ctx: &Ctx, check: &str, code: u8, mut detail: Value, text: String) -> Run {
    let status = match code {
        PASS => "pass",
        FAIL => "fail",
        _ => "inconclusive",
    };
    detail["check"] = json!(check);
    detail["status"] = json!(status);
    ctx.emit(&detail, || format!("{check}: {status}: {text}"));
    Ok(code)
}

fn transitive_case(s: usize, n: usize, size: usize, ctx: &Ctx) -> Result<(Value, u8), Failure> {
    Ok(match verify_transitive_ramsey(s, n, size, ctx.budget)? {
        TransitiveVerdict::Holds => (json!({"N": size, "holds": true}), PASS),
        TransitiveVerdict::Counterexample(c) => {
            let red: Vec<Vec<usize>> = c
                .to_map()
                .into_iter()
                .filter(|(_, r)| *r)
                .map(|(t, _)| t.iter().map(|v| v + 1).collect())
                .collect();
            (
                json!({"N": size, "holds": false, "transitive": is_transitive(&c), "red_triples": red}),
                FAIL,
            )
        }
        TransitiveVerdict::Inconclusive { nodes } => {
            (json!({"N": size, "nodes": nodes}), INCONCLUSIVE)
        }
    })
}

fn cmd_verify(check: &Check, ctx: &Ctx) -> Run {
    match check {
        Check::PropertiesAb { bits } => {
            let (code, witness) = match check_delta_properties(*bits)? {
                None => (PASS, Value::Null),
                Some(DeltaViolation::Equal(t)) => (FAIL, json!({"property": "A", "triple": t})),
                Some(DeltaViolation::NotMax(t)) => (FAIL, json!({"property": "B", "triple": t})),
            };
            let text = if code == PASS {
                format!("all triples of 1..=2^{bits} satisfy both properties")
            } else {
                format!("violation {witness}")
            };
            verdict(
                ctx,
                "properties-ab",
                code,
                json!({"N": bits, "witness": witness}),
                text,
            )
        }
        Check::StepupConsistency(src) => {
            let base = base_source(src, ctx)?;
            let stepped = step_up(&base, &ctx.caps)?;
            let mut bad = Vec::new();
            let checked = for_each_rule_mismatch(&stepped, &base, |t| {
                if bad.len() < 10 {
                    bad.push(t.iter().map(|i| i + 1).collect::<Vec<_>>());
                }
            })?;
            let code = if bad.is_empty() { PASS } else { FAIL };
            let text = format!("{checked} tuples, {} mismatches shown", bad.len());
            verdict(
                ctx,
                "stepup-consistency",
                code,
                json!({"tuples": checked, "mismatches": bad}),
                text,
            )
        }
        Check::EpsDeep { input, samples } => {
            let inst = load_instance(input)?;
            match verify_eps_deep_sampled(&inst, *samples, ctx.seed)? {
                DeepnessCheck::Stable {
                    tuples,
                    perturbations,
                } => verdict(
                    ctx,
                    "eps-deep",
                    PASS,
                    json!({"tuples": tuples, "perturbations": perturbations}),
                    format!("{tuples} tuples stable under {perturbations} perturbations"),
                ),
                DeepnessCheck::Violation {
                    tuple,
                    perturbed,
                    original,
                } => {
                    let tuple: Vec<usize> = tuple.iter().map(|i| i + 1).collect();
                    let moved: Vec<Vec<Value>> = perturbed
                        .iter()
                        .map(|p| p.iter().map(io::rational_to_json).collect())
                        .collect();
                    verdict(
                        ctx,
                        "eps-deep",
                        FAIL,
                        json!({"tuple": tuple, "perturbed": moved, "original": original}),
                        format!("tuple {tuple:?} flips from {original}"),
                    )
                }
            }
        }
        Check::TransitiveRamsey { s, n, size } => {
            let n3 = transitive_ramsey_number(*s as u64, *n as u64)? as usize;
            if let Some(size) = size {
                let (detail, code) = transitive_case(*s, *n, *size, ctx)?;
                let text = format!("N3({s},{n}) = {n3}, checked N = {size}");
                return verdict(
                    ctx,
                    "transitive-ramsey",
                    code,
                    json!({"N3": n3, "case": detail}),
                    text,
                );
            }
            let (at, at_code) = transitive_case(*s, *n, n3, ctx)?;
            let (below, below_code) = transitive_case(*s, *n, n3 - 1, ctx)?;
            let code = match (at_code, below_code) {
                (PASS, FAIL) => PASS,
                (INCONCLUSIVE, _) | (_, INCONCLUSIVE) => INCONCLUSIVE,
                _ => FAIL,
            };
            let text = match code {
                PASS => format!("N3({s},{n}) = {n3}: holds at N3, counterexample at N3 - 1"),
                INCONCLUSIVE => format!("N3({s},{n}) = {n3}: search budget exhausted"),
                _ => format!("N3({s},{n}) = {n3}: unexpected outcome at N3 or N3 - 1"),
            };
            verdict(
                ctx,
                "transitive-ramsey",
                code,
                json!({"N3": n3, "at": at, "below": below}),
                text,
            )
        }
        Check::MilnorThom {
            families,
            points,
            vars,
            polys,
            degree,
        } => {
            if *vars == 0 || *polys == 0 || *degree == 0 {
                return Err(
                    Error::Argument("vars, polys and degree must be positive".into()).into(),
                );
            }
            let mut worst = (0usize, BigUint::from(1u8));
            for f in 0..*families {
                let mut rng = stream(ctx.seed, f as u64);
                let family: Vec<MultivariatePolynomial> = (0..*polys)
                    .map(|_| random_poly(&mut rng, *vars, *degree))
                    .collect::<Result<_, _>>()?;
                let pts: Vec<Vec<Rational>> = (0..*points)
                    .map(|_| {
                        (0..*vars)
                            .map(|_| {
                                Rational::new(
                                    rng.random_range(-200i64..=200).into(),
                                    rng.random_range(1i64..=16).into(),
                                )
                            })
                            .collect()
                    })
                    .collect();
                let count = count_distinct_sign_vectors(&family, &pts)?;
                let max_deg = family.iter().map(|p| p.degree()).max().unwrap_or(0).max(1);
                let bound = milnor_thom_bound(max_deg as u64, *polys as u64, *vars as u64)?;
                if BigUint::from(count) > bound {
                    let text = format!(
                        "family {} realizes {count} sign vectors, bound {bound}",
                        f + 1
                    );
                    let detail = json!({
                        "family": f + 1,
                        "polys": family.iter().map(io::poly_to_json).collect::<Vec<_>>(),
                        "count": count,
                        "bound": bound.to_string(),
                    });
                    return verdict(ctx, "milnor-thom", FAIL, detail, text);
                }
                if count > worst.0 {
                    worst = (count, bound);
                }
            }
            let text = format!(
                "{families} families within bound (largest count {} of {})",
                worst.0, worst.1
            );
            verdict(
                ctx,
                "milnor-thom",
                PASS,
                json!({"families": families, "largest": worst.0}),
                text,
            )
        }
        Check::Sturm { count } => {
            let mut rng = stream(ctx.seed, 0);
            for i in 0..*count {
                let k = rng.random_range(0..=6);
                let roots: Vec<Rational> = (0..k)
                    .map(|_| {
                        Rational::new(
                            rng.random_range(-12i64..=12).into(),
                            rng.random_range(1i64..=4).into(),
                        )
                    })
                    .collect();
                let a = Rational::new(
                    rng.random_range(-40i64..=40).into(),
                    rng.random_range(1i64..=7).into(),
                );
                let b = &a
                    + Rational::new(
                        rng.random_range(1i64..=40).into(),
                        rng.random_range(1i64..=7).into(),
                    );
                if roots.iter().any(|r| *r == a || *r == b) {
                    continue;
                }
                let mut distinct = roots.clone();
                distinct.sort();
                distinct.dedup();
                let expected = distinct.iter().filter(|r| **r > a && **r <= b).count();
                let poly = MultivariatePolynomial::univariate(&expand(&roots));
                let got = count_real_roots(&poly, &a, &b)?;
                if got != expected {
                    let detail = json!({
                        "case": i + 1,
                        "poly": io::poly_to_json(&poly),
                        "a": io::rational_to_json(&a),
                        "b": io::rational_to_json(&b),
                        "sturm": got,
                        "expected": expected,
                    });
                    return verdict(
                        ctx,
                        "sturm",
                        FAIL,
                        detail,
                        format!("{poly} on ({a}, {b}]: {got} vs {expected}"),
                    );
                }
            }
            verdict(
                ctx,
                "sturm",
                PASS,
                json!({"cases": count}),
                format!("{count} polynomials agree"),
            )
        }
    }
}

// coefficients of prod (x - r), constant term first
fn expand(roots: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::from_integer(1.into())];
    for r in roots {
        let mut next = vec![Rational::from_integer(0.into()); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * r;
        }
        c = next;
    }
    c
}

fn random_poly(
    rng: &mut impl Rng,
    vars: usize,
    degree: u32,
) -> semiramsey::Result<MultivariatePolynomial> {
    let terms: Vec<(Vec<u32>, Rational)> = (0..6)
        .map(|_| {
            let mut e = vec![0u32; vars];
            let mut left = rng.random_range(0..=degree);
            for slot in e.iter_mut() {
                let take = rng.random_range(0..=left);
                *slot = take;
                left -= take;
            }
            (
                e,
                Rational::new(
                    rng.random_range(-9i64..=9).into(),
                    rng.random_range(1i64..=3).into(),
                ),
            )
        })
        .collect();
    MultivariatePolynomial::from_terms(vars, terms)
}

fn cmd_report(ctx: &Ctx) -> Run {
    let mut towers = Vec::new();
    for x in 1..=4u32 {
        for h in 1..=4u32 {
            let value = match tower(h, &BigUint::from(x), ctx.caps.max_bits.min(4096)) {
                Ok(v) if v.bits() <= 64 => v.to_string(),
                Ok(v) => format!("2^{}", v.bits() - 1),
                Err(_) => "too large".into(),
            };
            towers.push(json!({"height": h, "x": x, "value": value}));
        }
    }
    let mut ramsey = Vec::new();
    for s in 3..=6u64 {
        for n in 3..=6u64 {
            ramsey.push(json!({"s": s, "n": n, "N3": transitive_ramsey_number(s, n)?}));
        }
    }
    let mut instances: Vec<(String, ConstructionInstance)> = Vec::new();
    for n in 2..=4 {
        instances.push((format!("base n={n}"), base_construction(n, &ctx.caps)?));
    }
    let base2 = base_construction(2, &ctx.caps)?;
    instances.push(("stepup of base n=2".into(), step_up(&base2, &ctx.caps)?));
    instances.push((
        "onedim-k4 n=2 b=10".into(),
        one_dim_k4_construction(2, 10, &ctx.caps)?,
    ));
    instances.push((
        "frankl-wilson m=6 p=2".into(),
        frankl_wilson_instance(6, 2, &ctx.caps)?,
    ));
    let mut homs = Vec::new();
    let mut code = PASS;
    for (name, inst) in &instances {
        let r = max_homogeneous(&inst.points, &inst.relation, ctx.budget)?;
        if !r.maximum {
            code = INCONCLUSIVE;
        }
        let n = match &inst.provenance {
            Provenance::Base { n } | Provenance::OneDimK4 { n, .. } => Some(*n),
            _ => None,
        };
        homs.push(json!({
            "instance": name,
            "n": n,
            "N": inst.points.len(),
            "k": inst.relation.arity(),
            "hom": r.subset.len(),
            "maximum": r.maximum,
            "polarity": r.polarity.as_str(),
            "witness": r.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
        }));
    }
    let report = json!({"tower": towers, "transitive_ramsey": ramsey, "hom": homs});
    ctx.emit(&report, || {
        let mut out = String::from("tower twr_h(x)\n  x \\ h");
        for h in 1..=4 {
            out += &format!(" {h:>12}");
        }
        for row in towers.chunks(4) {
            out += &format!("\n  {:>5}", row[0]["x"].to_string());
            for cell in row {
                out += &format!(" {:>12}", cell["value"].as_str().unwrap());
            }
        }
        out += "\n\ntransitive Ramsey N3(s, n)\n  s \\ n";
        for n in 3..=6 {
            out += &format!(" {n:>4}");
        }
        for row in ramsey.chunks(4) {
            out += &format!("\n  {:>5}", row[0]["s"].to_string());
            for cell in row {
                out += &format!(" {:>4}", cell["N3"].to_string());
            }
        }
        out += "\n\nhomogeneous subsets\n";
        for h in &homs {
            out += &format!(
                "  {:<24} N = {:>3}  k = {}  hom = {}{}  {} {}\n",
                h["instance"].as_str().unwrap(),
                h["N"].to_string(),
                h["k"],
                h["hom"],
                if h["maximum"].as_bool().unwrap() {
                    ""
                } else {
                    "+"
                },
                h["polarity"].as_str().unwrap(),
                h["witness"]
            );
        }
        out.trim_end().to_string()
    });
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        seed: cli.seed,
        caps: ResourceCaps {
            max_points: cli.max_points.try_into().unwrap_or(usize::MAX),
            max_bits: cli.max_bits,
        },
        budget: cli.budget,
        format: cli.format,
    };
    let outcome = match &cli.command {
        Command::Construct { kind, output } => cmd_construct(kind, output.as_deref(), &ctx),
        Command::Solve {
            method,
            input,
            output,
        } => cmd_solve(*method, input, output.as_deref(), &ctx),
        Command::Verify { check } => cmd_verify(check, &ctx),
        Command::Report => cmd_report(&ctx),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let err = json!({"error": {"kind": f.kind, "message": f.message, "exit_code": f.code}});
            eprintln!("{err}");
            ExitCode::from(f.code)
        }
    }
}
