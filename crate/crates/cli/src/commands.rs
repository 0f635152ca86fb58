//! One function per command; each returns the echoed config, the result and
//! a verdict.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use latstat_core::birkhoff::birkhoff_embed;
use latstat_core::constructions::corollaries::{
    indep_association_check, power_inequality_check, psi_transform_check, supinf_check, Marginal, MonotoneMap,
};
use latstat_core::constructions::multiadd::{
    esym_orderstat_check, perm_orderstat_check, product_measure_check, subset_order_statistics, MultiadditiveSpec,
};
use latstat_core::constructions::potential::{potential_construct, PotentialSpec};
use latstat_core::constructions::schur::{Aggregator, SetFunctionSpec};
use latstat_core::constructions::Measure;
use latstat_core::correlation::{
    aharoni_keich_check, corollary_ahke_check, corollary_fkg_check, fkg_check, generated_sublattice,
    nonreversibility_demo, HypothesisScope, LatticeWeight, RealFn, Status, TheoremCheck, Unary, WeightMode,
};
use latstat_core::descriptor::{run_check, AnyLattice, AnyTuple, CheckKind, FunctionalDescriptor, LatticeDescriptor};
use latstat_core::lattice::{
    is_distributive, validate_table_lattice, ExplicitLattice, FiniteLattice, FnElem, FunctionSpace, Lattice, TableLattice,
};
use latstat_core::regression::{theorem_regression, GeneratorSpec};
use latstat_core::report::{to_value, CheckOptions, Comparison};
use latstat_core::reproduce::{reproduce, Outcome as CriterionOutcome, ReproduceConfig};
use latstat_core::scalar::{parse_rational, ConventionMode, ExtScalar, Rational, Q};
use latstat_core::semimod::{run_counterexample_m3, Windows};
use latstat_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::input::{read_json, CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    /// A hypothesis or precondition of the statement failed.
    Precondition,
    BudgetExceeded,
}

pub struct Outcome {
    pub config: Value,
    pub result: Value,
    pub verdict: Verdict,
}

fn verdict(holds: bool) -> Verdict {
    if holds {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

fn theorem_verdict(t: &TheoremCheck) -> Verdict {
    match t.status {
        Status::Holds => Verdict::Holds,
        Status::Violated => Verdict::Violated,
        Status::HypothesisViolated => Verdict::Precondition,
    }
}

fn echo<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("config serializes")
}

// ---------------------------------------------------------------- lattices

pub fn lattice_validate(path: &Path) -> CliResult<Outcome> {
    let d: LatticeDescriptor = read_json(path)?;
    let (report, size) = match &d {
        LatticeDescriptor::Table { meet, join, labels, .. } => {
            let mut t = TableLattice::from_tables(meet.clone(), join.clone())?;
            if let Some(l) = labels {
                t = t.with_labels(l.clone())?;
            }
            (validate_table_lattice(&t), t.len())
        }
        other => {
            let l = other.build()?;
            (latstat_core::report::CheckReport::pass(0, latstat_core::report::ReportMode::Exhaustive), l.size())
        }
    };
    let holds = report.holds;
    Ok(Outcome {
        config: json!({ "lattice": echo(&d) }),
        result: json!({ "size": size, "report": report }),
        verdict: verdict(holds),
    })
}

pub fn lattice_distributive(path: &Path) -> CliResult<Outcome> {
    let d: LatticeDescriptor = read_json(path)?;
    let report = match d.build()? {
        AnyLattice::Table(t) => is_distributive(&t),
        AnyLattice::Fn(l) => is_distributive(&l),
    };
    let holds = report.holds;
    Ok(Outcome {
        config: json!({ "lattice": echo(&d) }),
        result: json!({ "distributive": holds, "report": report }),
        verdict: verdict(holds),
    })
}

pub fn lattice_birkhoff(path: &Path) -> CliResult<Outcome> {
    let d: LatticeDescriptor = read_json(path)?;
    let AnyLattice::Table(t) = d.build()? else {
        return Err(CliError::input("a function lattice is already in function form"));
    };
    let emb = birkhoff_embed(&t)?;
    let images: Vec<Value> = (0..t.len())
        .map(|i| json!({ "element": t.describe(&i), "image": to_value(emb.map(i)) }))
        .collect();
    let irreducibles: Vec<Value> = emb.join_irreducibles().iter().map(|i| t.describe(i)).collect();
    Ok(Outcome {
        config: json!({ "lattice": echo(&d) }),
        result: json!({
            "join_irreducibles": irreducibles,
            "ground_size": emb.ground_size(),
            "images": images,
        }),
        verdict: Verdict::Holds,
    })
}

pub fn ordstats(path: &Path, tuple: &str) -> CliResult<Outcome> {
    let d: LatticeDescriptor = read_json(path)?;
    let values: Vec<Value> = crate::input::parse_str(tuple, "--tuple")?;
    let l = d.build()?;
    let t = l.parse_tuple(&values)?;
    let (ord, dual) = l.order_statistics(&t)?;
    Ok(Outcome {
        config: json!({ "lattice": echo(&d), "tuple": values }),
        result: json!({
            "tuple": l.describe_tuple(&t),
            "order_statistics": l.describe_tuple(&ord),
            "order_statistics_dual": l.describe_tuple(&dual),
            "definitions_agree": ord == dual,
        }),
        verdict: Verdict::Holds,
    })
}

// ---------------------------------------------------------------- semimodularity

pub struct CheckArgs<'a> {
    pub lattice: &'a Path,
    pub functional: &'a Path,
    pub relation: &'a str,
    pub k: &'a str,
    pub windows: Windows,
    pub mode: &'a str,
    pub seed: Option<u64>,
    pub samples: u64,
    pub budget: u64,
}

fn check_kind(k: &str, windows: Windows) -> CliResult<CheckKind> {
    match k {
        "n" => Ok(CheckKind::N),
        "relaxed" => Ok(CheckKind::Relaxed),
        other => match other.parse::<usize>() {
            Ok(k) => Ok(CheckKind::Nk { k, windows }),
            Err(_) => Err(CliError::input(format!("--k must be `n`, `relaxed` or a positive integer, got `{other}`"))),
        },
    }
}

fn options(mode: &str, seed: Option<u64>, samples: u64, budget: u64) -> CliResult<CheckOptions> {
    let opts = match mode {
        "exhaustive" => CheckOptions::exhaustive(),
        "sampled" => {
            let seed = seed.ok_or_else(|| CliError::input("--seed is required in sampled mode"))?;
            CheckOptions::sampled(seed, samples)
        }
        other => return Err(CliError::input(format!("unknown mode `{other}`"))),
    };
    Ok(opts.with_budget(budget))
}

pub fn check(a: &CheckArgs) -> CliResult<Outcome> {
    let ld: LatticeDescriptor = read_json(a.lattice)?;
    let fd: FunctionalDescriptor = read_json(a.functional)?;
    let kind = check_kind(a.k, a.windows)?;
    let opts = options(a.mode, a.seed, a.samples, a.budget)?;
    let l = ld.build()?;
    let f = fd.build(&l)?;
    let report = run_check(&l, &f, a.relation, kind, &opts)?;
    let holds = report.holds;
    Ok(Outcome {
        config: json!({
            "lattice": echo(&ld),
            "functional": echo(&fd),
            "relation": a.relation,
            "kind": echo(&kind),
            "mode": a.mode,
            "seed": a.seed,
            "samples": (a.mode == "sampled").then_some(a.samples),
            "budget": a.budget,
        }),
        result: echo(&report),
        verdict: verdict(holds),
    })
}

pub fn demo_m3() -> CliResult<Outcome> {
    let r = run_counterexample_m3();
    let ok = r.reproduced;
    Ok(Outcome {
        config: json!({}),
        result: echo(&r),
        verdict: verdict(ok),
    })
}

pub fn demo_nonrev(n: usize, delta: &str, eps: &str, r: &str) -> CliResult<Outcome> {
    let q = |name: &str, s: &str| parse_rational(s).map_err(|e| CliError::input(format!("--{name}: {e}")));
    let (dq, eq, rq) = (q("delta", delta)?, q("eps", eps)?, q("r", r)?);
    let rep = nonreversibility_demo(n, &dq, &eq, &rq)?;
    let nn = n * n;
    let ok = rep.orderstat_family_sizes.iter().all(|&s| s == nn);
    Ok(Outcome {
        config: json!({ "N": n, "delta": Q(dq), "eps": Q(eq), "r": Q(rq) }),
        result: echo(&rep),
        verdict: verdict(ok),
    })
}

pub fn regression(path: &Path, trials: u64, seed: u64, opts_mode: &str, samples: u64, budget: u64) -> CliResult<Outcome> {
    let spec: GeneratorSpec = read_json(path)?;
    let opts = options(opts_mode, Some(seed), samples, budget)?;
    let r = theorem_regression(&spec, trials, seed, &opts)?;
    let holds = r.report.holds;
    Ok(Outcome {
        config: json!({ "spec": echo(&spec), "trials": trials, "seed": seed, "mode": opts_mode, "budget": budget }),
        result: echo(&r),
        verdict: verdict(holds),
    })
}

// ---------------------------------------------------------------- corollaries

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermConfig {
    pub matrix: Vec<Vec<Q>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EsymConfig {
    pub measure: Measure,
    pub functions: Vec<FnElem>,
    /// All `k` from 1 to `n` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiConfig {
    pub psi: MonotoneMap,
    pub measure: Measure,
    pub functions: Vec<FnElem>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerConfig {
    pub p: Q,
    pub r: Q,
    pub measure: Measure,
    pub functions: Vec<FnElem>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupInfConfig {
    pub functions: Vec<FnElem>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetsConfig {
    pub ground_size: usize,
    pub sets: Vec<Vec<usize>>,
    /// Tensor weights on `S^k`, first coordinate most significant.
    pub weights: Vec<Q>,
    pub k: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndepConfig {
    pub marginals: Vec<Marginal>,
}

fn all_hold(cs: &[(usize, Comparison)]) -> bool {
    cs.iter().all(|(_, c)| c.holds)
}

pub fn corollary(which: &str, path: &Path) -> CliResult<Outcome> {
    match which {
        "perm" => {
            let c: PermConfig = read_json(path)?;
            let b: Vec<Vec<Rational>> = c.matrix.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect();
            let r = perm_orderstat_check(&b)?;
            let ok = r.rows.holds && r.columns.holds;
            Ok(Outcome { config: echo(&c), result: echo(&r), verdict: verdict(ok) })
        }
        "esym" => {
            let c: EsymConfig = read_json(path)?;
            let ks: Vec<usize> = match c.k {
                Some(k) => vec![k],
                None => (1..=c.functions.len()).collect(),
            };
            let checks = ks
                .iter()
                .map(|&k| Ok((k, esym_orderstat_check(&c.measure, &c.functions, k)?)))
                .collect::<CliResult<Vec<_>>>()?;
            let ok = all_hold(&checks);
            let result = checks.iter().map(|(k, c)| json!({ "k": k, "comparison": c })).collect();
            Ok(Outcome { config: echo(&c), result: Value::Array(result), verdict: verdict(ok) })
        }
        "psi" => {
            let c: PsiConfig = read_json(path)?;
            let r = psi_transform_check(&c.psi, &c.measure, &c.functions)?;
            let ok = r.comparison.holds && r.index_rule_agrees;
            Ok(Outcome { config: echo(&c), result: echo(&r), verdict: verdict(ok) })
        }
        "power" => {
            let c: PowerConfig = read_json(path)?;
            let r = power_inequality_check(&c.p.0, &c.r.0, &c.measure, &c.functions)?;
            let ok = r.holds;
            Ok(Outcome { config: echo(&c), result: echo(&r), verdict: verdict(ok) })
        }
        "supinf" => {
            let c: SupInfConfig = read_json(path)?;
            let r = supinf_check(&c.functions)?;
            let ok = r.holds();
            Ok(Outcome { config: echo(&c), result: echo(&r), verdict: verdict(ok) })
        }
        "sets" => {
            let c: SetsConfig = read_json(path)?;
            let w: Vec<Rational> = c.weights.iter().map(|q| q.0.clone()).collect();
            let ord = subset_order_statistics(&c.sets, c.ground_size)?;
            let r = product_measure_check(&w, c.ground_size, &c.sets, c.k)?;
            let ok = r.holds;
            Ok(Outcome {
                config: echo(&c),
                result: json!({ "order_statistics": ord, "comparison": r }),
                verdict: verdict(ok),
            })
        }
        "indep" => {
            let c: IndepConfig = read_json(path)?;
            let r = indep_association_check(&c.marginals)?;
            let ok = r.holds;
            Ok(Outcome { config: echo(&c), result: echo(&r), verdict: verdict(ok) })
        }
        other => Err(CliError::input(format!("unknown corollary `{other}`"))),
    }
}

// ---------------------------------------------------------------- constructions

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurParams {
    pub lattice: LatticeDescriptor,
    pub arity: usize,
    pub lambda: SetFunctionSpec,
    pub aggregator: Aggregator,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialParams {
    pub lattice: LatticeDescriptor,
    pub arity: usize,
    pub spec: PotentialSpec,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiaddParams {
    pub lattice: LatticeDescriptor,
    pub arity: usize,
    pub m: MultiadditiveSpec,
}

/// Builds the functional (running the construction's own checks) and returns
/// the descriptor to emit.
pub fn construct(which: &str, path: &Path) -> CliResult<(Outcome, FunctionalDescriptor)> {
    let (config, lattice, descriptor, mut extra) = match which {
        "schur" => {
            let p: SchurParams = read_json(path)?;
            let d = FunctionalDescriptor::Schur {
                arity: p.arity,
                lambda: p.lambda.clone(),
                aggregator: p.aggregator.clone(),
            };
            (echo(&p), p.lattice, d, json!({}))
        }
        "potential" => {
            let p: PotentialParams = read_json(path)?;
            let AnyLattice::Fn(fl) = p.lattice.build()? else {
                return Err(CliError::input("the potential family needs a function lattice"));
            };
            let built = potential_construct(&fl, p.spec.clone(), p.arity)?;
            let extra = json!({ "predicted": built.predicted, "curvature_report": built.curvature_report });
            let d = FunctionalDescriptor::Potential {
                arity: p.arity,
                spec: p.spec.clone(),
            };
            (echo(&p), p.lattice, d, extra)
        }
        "multiadd" => {
            let p: MultiaddParams = read_json(path)?;
            let d = FunctionalDescriptor::Multiadd {
                arity: p.arity,
                m: p.m.clone(),
            };
            (echo(&p), p.lattice, d, json!({}))
        }
        other => return Err(CliError::input(format!("unknown construction `{other}`"))),
    };
    let l = lattice.build()?;
    descriptor.build(&l)?;
    extra["functional"] = echo(&descriptor);
    Ok((
        Outcome {
            config,
            result: extra,
            verdict: Verdict::Holds,
        },
        descriptor,
    ))
}

// ---------------------------------------------------------------- correlation

/// Element-indexed values: `[[element, value], ...]`.
type Table<V> = Vec<(Value, V)>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum FkgConfig {
    /// Explicit weight and functions on every element of a lattice.
    Lattice {
        lattice: LatticeDescriptor,
        nu: Table<ExtScalar>,
        f: Table<Q>,
        g: Table<Q>,
    },
    /// The sublattice of nonnegative functions generated by `generators`,
    /// weighted by `μ(h)^r` or `inf h`.
    Functions {
        generators: Vec<FnElem>,
        weight: WeightMode,
        f: RealFn,
        g: RealFn,
        #[serde(default = "default_cap")]
        cap: usize,
    },
}

fn default_cap() -> usize {
    4096
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum AhkeConfig {
    /// Explicit `α_j`, `β_j` on every element of a lattice.
    Lattice {
        lattice: LatticeDescriptor,
        families: Vec<Vec<Value>>,
        alpha: Vec<Table<ExtScalar>>,
        beta: Vec<Table<ExtScalar>>,
        convention: ConventionMode,
        #[serde(default)]
        scope: HypothesisScope,
    },
    /// Families of nonnegative functions with `α_j = β_j = μ(·)^r` or `inf`.
    Functions { families: Vec<Vec<FnElem>>, weight: WeightMode },
}

fn keyed<E: Ord + Clone, V: Clone>(
    resolve: &impl Fn(&Value) -> latstat_core::Result<E>,
    table: &Table<V>,
    what: &str,
) -> CliResult<BTreeMap<E, V>> {
    let mut out = BTreeMap::new();
    for (k, v) in table {
        if out.insert(resolve(k)?, v.clone()).is_some() {
            return Err(CliError::input(format!("{what} lists element {k} twice")));
        }
    }
    Ok(out)
}

fn covering<L: FiniteLattice, V: Clone>(
    l: &L,
    resolve: &impl Fn(&Value) -> latstat_core::Result<L::Elem>,
    table: &Table<V>,
    what: &str,
) -> CliResult<BTreeMap<L::Elem, V>> {
    let m = keyed(resolve, table, what)?;
    if let Some(e) = l.elements().iter().find(|e| !m.contains_key(e)) {
        return Err(CliError::input(format!("{what} is missing element {}", l.describe(e))));
    }
    Ok(m)
}

fn fkg_on<L: FiniteLattice>(
    l: &L,
    resolve: impl Fn(&Value) -> latstat_core::Result<L::Elem>,
    nu: &Table<ExtScalar>,
    f: &Table<Q>,
    g: &Table<Q>,
) -> CliResult<TheoremCheck> {
    let w = LatticeWeight::new(covering(l, &resolve, nu, "nu")?)?;
    let fm = covering(l, &resolve, f, "f")?;
    let gm = covering(l, &resolve, g, "g")?;
    Ok(fkg_check(l, &w, |e| Ok(fm[e].0.clone()), |e| Ok(gm[e].0.clone()))?)
}

fn fn_resolver(l: &AnyLattice) -> impl Fn(&Value) -> latstat_core::Result<FnElem> + '_ {
    move |v| match l.parse_tuple(std::slice::from_ref(v))? {
        AnyTuple::Fn(mut e) => Ok(e.remove(0)),
        AnyTuple::Table(_) => Err(Error::input("expected a function lattice element")),
    }
}

pub fn fkg(path: &Path) -> CliResult<Outcome> {
    let c: FkgConfig = read_json(path)?;
    let r = match &c {
        FkgConfig::Lattice { lattice, nu, f, g } => match lattice.build()? {
            AnyLattice::Table(t) => fkg_on(&t, |v| t.resolve(v), nu, f, g)?,
            any @ AnyLattice::Fn(_) => {
                let AnyLattice::Fn(fl) = &any else { unreachable!() };
                fkg_on(fl, fn_resolver(&any), nu, f, g)?
            }
        },
        FkgConfig::Functions {
            generators,
            weight,
            f,
            g,
            cap,
        } => {
            let size = generators.first().map(FnElem::len).ok_or_else(|| CliError::input("no generators"))?;
            let elems = generated_sublattice(&FunctionSpace { size }, generators, *cap)?;
            corollary_fkg_check(&ExplicitLattice::new(elems)?, weight, f, g)?
        }
    };
    Ok(Outcome {
        config: echo(&c),
        verdict: theorem_verdict(&r),
        result: echo(&r),
    })
}

fn ahke_on<L: FiniteLattice>(
    l: &L,
    resolve: impl Fn(&Value) -> latstat_core::Result<L::Elem>,
    c: (&[Vec<Value>], &[Table<ExtScalar>], &[Table<ExtScalar>]),
    convention: ConventionMode,
    scope: HypothesisScope,
    budget: u64,
) -> CliResult<TheoremCheck>
where
    L::Elem: 'static,
{
    let (families, alpha, beta) = c;
    let fams = families
        .iter()
        .map(|fam| fam.iter().map(&resolve).collect::<latstat_core::Result<Vec<_>>>())
        .collect::<latstat_core::Result<Vec<_>>>()?;
    let unary = |tables: &[Table<ExtScalar>], what: &str| -> CliResult<Vec<Unary<L::Elem, ExtScalar>>> {
        tables
            .iter()
            .enumerate()
            .map(|(j, t)| {
                let m = covering(l, &resolve, t, &format!("{what}[{j}]"))?;
                Ok(Arc::new(move |e: &L::Elem| m[e].clone()) as Unary<L::Elem, ExtScalar>)
            })
            .collect()
    };
    let (a, b) = (unary(alpha, "alpha")?, unary(beta, "beta")?);
    Ok(aharoni_keich_check(l, &a, &b, &fams, convention, scope, budget)?)
}

pub fn ahke(path: &Path, budget: u64) -> CliResult<Outcome> {
    let c: AhkeConfig = read_json(path)?;
    let r = match &c {
        AhkeConfig::Lattice {
            lattice,
            families,
            alpha,
            beta,
            convention,
            scope,
        } => {
            let parts = (families.as_slice(), alpha.as_slice(), beta.as_slice());
            match lattice.build()? {
                AnyLattice::Table(t) => ahke_on(&t, |v| t.resolve(v), parts, *convention, *scope, budget)?,
                any @ AnyLattice::Fn(_) => {
                    let AnyLattice::Fn(fl) = &any else { unreachable!() };
                    ahke_on(fl, fn_resolver(&any), parts, *convention, *scope, budget)?
                }
            }
        }
        AhkeConfig::Functions { families, weight } => corollary_ahke_check(families, weight, budget)?,
    };
    Ok(Outcome {
        config: json!({ "input": echo(&c), "budget": budget }),
        verdict: theorem_verdict(&r),
        result: echo(&r),
    })
}

// ---------------------------------------------------------------- acceptance

/// Runs the acceptance criteria; `lines` receives one human-readable line each.
pub fn reproduce_cmd(seed: u64, budget: u64, only: &[u8], timing: bool, lines: &mut Vec<String>) -> CliResult<Outcome> {
    let cfg = ReproduceConfig { seed, budget };
    let ids: Vec<u8> = if only.is_empty() {
        latstat_core::reproduce::criteria().iter().map(|c| c.id).collect()
    } else {
        only.to_vec()
    };
    let results = reproduce(&cfg, &ids);
    if results.len() != ids.len() {
        return Err(CliError::input("unknown criterion id in --only"));
    }
    lines.extend(results.iter().map(|r| r.line()));
    let passed = results.iter().filter(|r| r.passed()).count();
    lines.push(format!("{passed} of {} criteria pass", results.len()));
    let v = if results.iter().any(|r| matches!(r.outcome, CriterionOutcome::Fail | CriterionOutcome::Error)) {
        Verdict::Violated
    } else if results.iter().any(|r| r.outcome == CriterionOutcome::BudgetExceeded) {
        Verdict::BudgetExceeded
    } else {
        Verdict::Holds
    };
    let mut items: Vec<Value> = results.iter().map(echo).collect();
    if !timing {
        for it in &mut items {
            it.as_object_mut().expect("object").remove("elapsed_ms");
        }
    }
    Ok(Outcome {
        config: json!({ "seed": seed, "budget": budget, "only": ids }),
        result: json!({ "criteria": items, "passed": passed, "total": results.len() }),
        verdict: v,
    })
}
