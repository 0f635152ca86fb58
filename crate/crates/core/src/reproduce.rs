//! The acceptance suite. Each criterion reruns one quantitative claim at desk
//! scale under a time limit and reports a single pass/fail line.

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::corollaries::{
    indep_association_check, power_inequality_check, supinf_check, Marginal,
};
use crate::constructions::multiadd::{esym_orderstat_check, perm_orderstat_check_with, permanent};
use crate::constructions::potential::{
    check_sorted_pair_inequality, potential_construct, realized_direction, Curvature, Direction,
};
use crate::constructions::Measure;
use crate::correlation::{
    corollary_ahke_check, corollary_fkg_check, is_log_supermodular, nonreversibility_demo, LatticeWeight,
    RealFn, Status, WeightMode,
};
use crate::error::{Error, Result};
use crate::lattice::{
    build_m3, is_distributive, small_distributive_lattices, ExplicitLattice, FiniteLattice, FnElem, FnLattice,
    Lattice,
};
use crate::ordstats::{order_statistics, order_statistics_dual, pointwise_order_statistics};
use crate::random::{
    ext_measure, fn_elem, instance_rng, marginal, matrix, measure, potential_spec, rational,
};
use crate::regression::{theorem_regression, Family, GeneratorSpec};
use crate::report::{first_failure, CheckOptions, Sides};
use crate::scalar::{int, rat, ConventionMode, ExtScalar, Rational, Q};
use crate::semimod::{insertion_chain, run_counterexample_m3, verify_lemma_ak};

pub const DEFAULT_SEED: u64 = 20240229;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceConfig {
    pub seed: u64,
    pub budget: u64,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        ReproduceConfig {
            seed: DEFAULT_SEED,
            budget: crate::report::DEFAULT_BUDGET,
        }
    }
}

impl ReproduceConfig {
    fn options(&self) -> CheckOptions {
        CheckOptions::exhaustive().with_budget(self.budget)
    }

    /// The generator for instance `i` of criterion `id`.
    fn rng(&self, id: u64, i: u64) -> ChaCha8Rng {
        instance_rng(self.seed, (id << 40) | i)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    BudgetExceeded,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
    pub elapsed_ms: u64,
    pub limit_ms: u64,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::BudgetExceeded => "BUDGET",
            Outcome::Error => "ERROR",
        };
        format!(
            "[{tag}] {:>2} {} ({} ms, limit {} ms): {}",
            self.id, self.name, self.elapsed_ms, self.limit_ms, self.detail
        )
    }
}

/// What a criterion found, before timing is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed,
            detail: detail.into(),
        }
    }
}

pub type CriterionFn = fn(&ReproduceConfig) -> Result<Verdict>;

#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit_ms: u64,
    pub run: CriterionFn,
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, limit_ms, run: CriterionFn| Criterion { id, name, limit_ms, run };
    vec![
        c(1, "diamond counterexample", 1_000, m3_counterexample),
        c(2, "dual order statistics agree", 30_000, dual_agreement),
        c(3, "semimodularity property suite", 300_000, property_suite),
        c(4, "insertion chain", 60_000, insertion_chains),
        c(5, "permanent inequality", 60_000, |cfg| permanent_inequality(cfg, permanent)),
        c(6, "elementary symmetric inequality", 60_000, elementary_symmetric),
        c(7, "power, sup and inf inequalities", 120_000, power_sup_inf),
        c(8, "independence association", 60_000, independence),
        c(9, "log-supermodular weights and correlation", 120_000, correlation_suite),
        c(10, "non-reversibility", 1_000, non_reversibility),
        c(11, "potential construction", 120_000, potential_suite),
    ]
}

/// Runs one criterion; it passes only if correct and within its time limit.
pub fn run_criterion(c: &Criterion, cfg: &ReproduceConfig) -> CriterionResult {
    let start = Instant::now();
    let verdict = (c.run)(cfg);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (outcome, detail) = match verdict {
        Ok(v) if !v.passed => (Outcome::Fail, v.detail),
        Ok(v) if elapsed_ms > c.limit_ms => (Outcome::Fail, format!("over the time limit; {}", v.detail)),
        Ok(v) => (Outcome::Pass, v.detail),
        Err(e @ Error::BudgetExceeded { .. }) => (Outcome::BudgetExceeded, e.to_string()),
        Err(e) => (Outcome::Error, e.to_string()),
    };
    CriterionResult {
        id: c.id,
        name: c.name.into(),
        outcome,
        detail,
        elapsed_ms,
        limit_ms: c.limit_ms,
    }
}

/// Runs the criteria whose ids are listed, or all of them when `ids` is empty.
pub fn reproduce(cfg: &ReproduceConfig, ids: &[u8]) -> Vec<CriterionResult> {
    criteria()
        .iter()
        .filter(|c| ids.is_empty() || ids.contains(&c.id))
        .map(|c| run_criterion(c, cfg))
        .collect()
}

pub fn reproduce_all(cfg: &ReproduceConfig) -> Vec<CriterionResult> {
    reproduce(cfg, &[])
}

/// Decodes `code` as a mixed-radix tuple of `n` indices below `m`.
fn decode(mut code: u64, m: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = (code % m as u64) as usize;
        code /= m as u64;
    }
    out
}

fn describe_all<L: Lattice>(l: &L, f: &[L::Elem]) -> String {
    serde_json::to_string(&f.iter().map(|e| l.describe(e)).collect::<Vec<_>>()).unwrap_or_default()
}

fn exact_sides(sides: &Sides) -> Option<(&ExtScalar, &ExtScalar)> {
    match sides {
        Sides::Exact { lhs, rhs } => Some((lhs, rhs)),
        Sides::Float { .. } => None,
    }
}

pub fn m3_counterexample(cfg: &ReproduceConfig) -> Result<Verdict> {
    cfg.options().ensure_within_budget(250 + 125)?;
    let r = run_counterexample_m3();
    let detail = format!(
        "{} (3:2) instances hold; order statistics of (2,3,4) = {}; Λ = {} vs {}; 3-check holds: {}",
        r.k2_check.instances_checked,
        serde_json::to_string(&r.order_statistics).unwrap_or_default(),
        r.lambda_at_tuple,
        r.lambda_at_order_statistics,
        r.n_check.holds
    );
    Ok(Verdict::new(r.reproduced, detail))
}

/// The first tuple of length at most `max_n` whose primal and dual order statistics differ.
fn first_dual_disagreement<L: FiniteLattice>(l: &L, max_n: usize) -> Option<String> {
    let elems = l.elements();
    let m = elems.len();
    (1..=max_n).find_map(|n| {
        first_failure((m as u64).pow(n as u32), |code| {
            let f: Vec<L::Elem> = decode(code, m, n).into_iter().map(|i| elems[i].clone()).collect();
            let (p, d) = (order_statistics(l, &f).ok()?, order_statistics_dual(l, &f).ok()?);
            (p != d).then(|| format!("f = {}: {} vs {}", describe_all(l, &f), describe_all(l, &p), describe_all(l, &d)))
        })
        .map(|(_, w)| w)
    })
}

fn tuple_count(size: usize, max_n: u32) -> u128 {
    (1..=max_n).map(|n| (size as u128).pow(n)).sum()
}

pub fn dual_agreement(cfg: &ReproduceConfig) -> Result<Verdict> {
    let tables = small_distributive_lattices(12);
    let mut fn_lattices = Vec::new();
    for s in 1..=2 {
        for c in 0..=4 {
            fn_lattices.push(FnLattice::nonneg(s, c)?);
        }
    }
    let m3 = build_m3();
    let needed: u128 = tables.iter().map(|t| tuple_count(t.len(), 3)).sum::<u128>()
        + fn_lattices.iter().map(|l| tuple_count(l.size(), 3)).sum::<u128>()
        + tuple_count(m3.size(), 3);
    cfg.options().ensure_within_budget(needed)?;

    for (i, t) in tables.iter().enumerate() {
        if !is_distributive(t).holds {
            return Ok(Verdict::new(false, format!("generated table lattice {i} is not distributive")));
        }
        if let Some(w) = first_dual_disagreement(t, 3) {
            return Ok(Verdict::new(false, format!("table lattice {i} ({} elements): {w}", t.len())));
        }
    }
    for l in &fn_lattices {
        if let Some(w) = first_dual_disagreement(l, 3) {
            return Ok(Verdict::new(false, format!("function lattice |S| = {}: {w}", l.ground_size())));
        }
    }

    let elems = m3.elements();
    let m = elems.len();
    let dual_above = (1..=3usize).find_map(|n| {
        first_failure((m as u64).pow(n as u32), |code| {
            let f: Vec<usize> = decode(code, m, n).into_iter().map(|i| elems[i]).collect();
            let (p, d) = (order_statistics(&m3, &f).ok()?, order_statistics_dual(&m3, &f).ok()?);
            let below = p.iter().zip(&d).all(|(a, b)| m3.leq(b, a));
            (!below).then(|| describe_all(&m3, &f))
        })
        .map(|(_, w)| w)
    });
    if let Some(w) = dual_above {
        return Ok(Verdict::new(false, format!("diamond: dual not below primal at {w}")));
    }
    let id = |x: i64| m3.resolve(&serde_json::Value::from(x));
    let f = [id(2)?, id(3)?, id(4)?];
    let (p, d) = (describe_all(&m3, &order_statistics(&m3, &f)?), describe_all(&m3, &order_statistics_dual(&m3, &f)?));
    let gap = p == "[1,5,5]" && d == "[1,1,5]";
    Ok(Verdict::new(
        gap,
        format!(
            "{} distributive tables and {} function lattices agree on all tuples up to length 3; diamond at (2,3,4): primal {p}, dual {d}",
            tables.len(),
            fn_lattices.len()
        ),
    ))
}

pub fn property_suite(cfg: &ReproduceConfig) -> Result<Verdict> {
    const TRIALS: u64 = 13;
    let opts = cfg.options();
    let (mut functionals, mut precondition, mut falsified) = (0u64, 0u64, 0u64);
    let mut first = None;
    let mut config = 0u64;
    for family in [Family::Schur, Family::Multiadd] {
        for arity in [3, 4] {
            for ground_size in [1, 2] {
                for chain_max in [1, 2] {
                    let spec = GeneratorSpec {
                        family,
                        ground_size,
                        chain_max,
                        arity,
                        curvature: None,
                    };
                    let r = theorem_regression(&spec, TRIALS, cfg.seed ^ (config << 32), &opts)?;
                    config += 1;
                    functionals += r.trials;
                    precondition += r.precondition_failures;
                    falsified += r.falsifications;
                    if first.is_none() && (!r.report.holds || r.precondition_failures > 0) {
                        first = Some(serde_json::to_string(&r).unwrap_or_default());
                    }
                }
            }
        }
    }
    let detail = format!(
        "{functionals} functionals, {precondition} failed (n:2), {falsified} passed (n:2) but failed n{}",
        first.map(|w| format!("; first: {w}")).unwrap_or_default()
    );
    Ok(Verdict::new(functionals >= 200 && precondition == 0 && falsified == 0, detail))
}

fn sorted_column(row: &[FnElem], s: usize) -> Vec<ExtScalar> {
    let mut v: Vec<ExtScalar> = row.iter().map(|g| g.0[s].clone()).collect();
    v.sort();
    v
}

pub fn insertion_chains(cfg: &ReproduceConfig) -> Result<Verdict> {
    const INSTANCES: u64 = 10_000;
    let lattices = (1..=3)
        .flat_map(|s| (1..=4).map(move |c| (s, c)))
        .map(|(s, c)| FnLattice::nonneg(s, c))
        .collect::<Result<Vec<_>>>()?;
    let hit = first_failure(INSTANCES, |i| {
        let mut rng = cfg.rng(4, i);
        let l = &lattices[rng.gen_range(0..lattices.len())];
        let n = rng.gen_range(1..=5);
        let f = crate::random::lattice_tuple(&mut rng, l, n);
        let fail = |what: &str| Some(format!("instance {i}, f = {}: {what}", describe_all(l, &f)));
        let chain = match insertion_chain(l, &f) {
            Ok(c) => c,
            Err(e) => return fail(&e.to_string()),
        };
        let (Ok(subset_form), Ok(sorted)) = (order_statistics(l, &f), pointwise_order_statistics(&f)) else {
            return fail("order statistics failed");
        };
        if chain.final_row() != subset_form.as_slice() || subset_form != sorted {
            return fail("final row differs from the order statistics");
        }
        let conserved = chain.rows.iter().all(|row| (0..l.ground_size()).all(|s| sorted_column(row, s) == sorted_column(&f, s)));
        if !conserved {
            return fail("a row changes the multiset of values at some point");
        }
        match verify_lemma_ak(&chain) {
            Ok(r) if r.holds => None,
            Ok(r) => fail(&format!("sortedness fails: {}", serde_json::to_string(&r.witness).unwrap_or_default())),
            Err(e) => fail(&e.to_string()),
        }
    });
    Ok(match hit {
        None => Verdict::new(true, format!("{INSTANCES} tuples of length 1..=5")),
        Some((_, w)) => Verdict::new(false, w),
    })
}

/// The permanent criterion with the permanent supplied by the caller.
pub fn permanent_inequality(
    cfg: &ReproduceConfig,
    perm: impl Fn(&[Vec<Rational>]) -> Result<Rational> + Sync + Send,
) -> Result<Verdict> {
    const INSTANCES: u64 = 500;
    let hit = first_failure(INSTANCES, |i| {
        let mut rng = cfg.rng(5, i);
        let (d, p) = (rng.gen_range(1..=5), rng.gen_range(1..=7));
        let b = matrix(&mut rng, d, p);
        let shown = || serde_json::to_string(&b.iter().map(|r| r.iter().cloned().map(Q).collect::<Vec<_>>()).collect::<Vec<_>>()).unwrap_or_default();
        let check = match perm_orderstat_check_with(&b, &perm) {
            Ok(c) => c,
            Err(e) => return Some(format!("instance {i}: {e}")),
        };
        if !check.holds() {
            return Some(format!("instance {i}: inequality fails for {}", shown()));
        }
        let sorted: Vec<Vec<Rational>> = check.row_sorted.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect();
        match perm_orderstat_check_with(&sorted, &perm) {
            Ok(c) if c.rows.equality => None,
            Ok(_) => Some(format!("instance {i}: sorted rows of {} do not give equality", shown())),
            Err(e) => Some(format!("instance {i}: {e}")),
        }
    });
    Ok(match hit {
        None => Verdict::new(true, format!("{INSTANCES} matrices up to 5x7, rows and columns; sorted rows give equality")),
        Some((_, w)) => Verdict::new(false, w),
    })
}

pub fn elementary_symmetric(cfg: &ReproduceConfig) -> Result<Verdict> {
    const INSTANCES: u64 = 500;
    let hit = first_failure(INSTANCES, |i| {
        let mut rng = cfg.rng(6, i);
        let (s, n) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
        let mu = ext_measure(&mut rng, s, 0.1);
        let f: Vec<FnElem> = (0..n).map(|_| fn_elem(&mut rng, s, 0.1)).collect();
        let sorted = pointwise_order_statistics(&f).ok()?;
        (1..=n).find_map(|k| {
            let fail = |what: &str| Some(format!("instance {i}, k = {k}, f = {}: {what}", serde_json::to_string(&f).unwrap_or_default()));
            match (esym_orderstat_check(&mu, &f, k), esym_orderstat_check(&mu, &sorted, k)) {
                (Ok(c), Ok(e)) => {
                    if !c.holds {
                        fail("inequality fails")
                    } else if k == 1 && !c.equality {
                        fail("k = 1 is not an equality")
                    } else if !e.equality {
                        fail("sorted tuple is not an equality")
                    } else {
                        None
                    }
                }
                (Err(e), _) | (_, Err(e)) => fail(&e.to_string()),
            }
        })
    });
    Ok(match hit {
        None => Verdict::new(true, format!("{INSTANCES} instances, all k; k = 1 and sorted tuples give equality")),
        Some((_, w)) => Verdict::new(false, w),
    })
}

fn has_zero_and_inf(f: &[FnElem], mu: Option<&Measure>) -> bool {
    let values = f.iter().flat_map(|g| g.values().iter()).chain(mu.into_iter().flat_map(|m| m.weights.iter()));
    let (mut zero, mut inf) = (false, false);
    for v in values {
        zero |= v.is_zero();
        inf |= v.is_inf();
    }
    zero && inf
}

/// One family of the power/sup/inf suite: instance `i` returns whether it mixed
/// `0` and `∞`, or a failure message.
fn power_family(
    cfg: &ReproduceConfig,
    stream: u64,
    name: &str,
    check: impl Fn(&mut ChaCha8Rng) -> Result<(bool, bool, String)> + Sync + Send,
) -> std::result::Result<String, String> {
    const INSTANCES: u64 = 500;
    let mixed = std::sync::atomic::AtomicU64::new(0);
    let hit = first_failure(INSTANCES, |i| {
        let mut rng = cfg.rng(stream, i);
        match check(&mut rng) {
            Ok((holds, special, shown)) => {
                if special {
                    mixed.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                }
                (!holds).then(|| format!("{name} instance {i}: {shown}"))
            }
            Err(e) => Some(format!("{name} instance {i}: {e}")),
        }
    });
    let mixed = mixed.into_inner();
    match hit {
        Some((_, w)) => Err(w),
        None if mixed == 0 => Err(format!("{name}: no instance mixed 0 and ∞")),
        None => Ok(format!("{name} {INSTANCES} ({mixed} with 0 and ∞)")),
    }
}

fn power_instance(rng: &mut ChaCha8Rng, rs: &[i64]) -> Result<(bool, bool, String)> {
    let (s, n) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
    let p = [-2, -1, 1, 2, 3][rng.gen_range(0..5)];
    let r = rs[rng.gen_range(0..rs.len())];
    let mu = ext_measure(rng, s, 0.1);
    let f: Vec<FnElem> = (0..n).map(|_| fn_elem(rng, s, 0.15)).collect();
    let c = power_inequality_check(&int(p), &int(r), &mu, &f)?;
    let shown = format!("p = {p}, r = {r}, μ = {}, f = {}", serde_json::to_string(&mu).unwrap_or_default(), serde_json::to_string(&f).unwrap_or_default());
    Ok((c.holds && exact_sides(&c.sides).is_some(), has_zero_and_inf(&f, Some(&mu)), shown))
}

fn supinf_instance(rng: &mut ChaCha8Rng, sup: bool) -> Result<(bool, bool, String)> {
    let (s, n) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
    let f: Vec<FnElem> = (0..n).map(|_| fn_elem(rng, s, 0.2)).collect();
    let c = supinf_check(&f)?;
    let holds = if sup { c.sup.holds } else { c.inf.holds };
    Ok((holds, has_zero_and_inf(&f, None), serde_json::to_string(&f).unwrap_or_default()))
}

pub fn power_sup_inf(cfg: &ReproduceConfig) -> Result<Verdict> {
    let results = [
        power_family(cfg, 70, "r > 0", |rng| power_instance(rng, &[1, 2])),
        power_family(cfg, 71, "r < 0", |rng| power_instance(rng, &[-1, -2])),
        power_family(cfg, 72, "sup", |rng| supinf_instance(rng, true)),
        power_family(cfg, 73, "inf", |rng| supinf_instance(rng, false)),
    ];
    let passed = results.iter().all(|r| r.is_ok());
    let detail: Vec<String> = results.into_iter().map(|r| r.unwrap_or_else(|e| e)).collect();
    Ok(Verdict::new(passed, detail.join("; ")))
}

fn fair_coin() -> Marginal {
    Marginal {
        values: vec![Q(int(0)), Q(int(1))],
        probs: vec![Q(rat(1, 2)), Q(rat(1, 2))],
    }
}

pub fn independence(cfg: &ReproduceConfig) -> Result<Verdict> {
    const INSTANCES: u64 = 200;
    let hit = first_failure(INSTANCES, |i| {
        let mut rng = cfg.rng(8, i);
        let n = rng.gen_range(1..=3);
        let ms: Vec<Marginal> = (0..n)
            .map(|_| {
                let support = rng.gen_range(1..=3);
                marginal(&mut rng, support)
            })
            .collect();
        match indep_association_check(&ms) {
            Ok(c) if c.holds && exact_sides(&c.sides).is_some() => None,
            Ok(c) => Some(format!("instance {i}: {}", serde_json::to_string(&c).unwrap_or_default())),
            Err(e) => Some(format!("instance {i}: {e}")),
        }
    });
    if let Some((_, w)) = hit {
        return Ok(Verdict::new(false, w));
    }
    let coins = indep_association_check(&[fair_coin(), fair_coin()])?;
    let expected = (ExtScalar::Finite(rat(1, 4)), ExtScalar::Finite(rat(3, 16)));
    let exact = exact_sides(&coins.sides).map(|(l, r)| (l.clone(), r.clone()));
    let ok = coins.holds && exact.as_ref() == Some(&expected);
    let shown = exact.map(|(l, r)| format!("{l} >= {r}")).unwrap_or_else(|| "inexact".into());
    Ok(Verdict::new(ok, format!("{INSTANCES} product spaces; fair coins give {shown}")))
}

/// Random values `lo..=hi` on `size` points.
fn int_fn(rng: &mut ChaCha8Rng, size: usize, lo: i64, hi: i64) -> FnElem {
    FnElem::from_ints(&(0..size).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
}

fn positive_measure(rng: &mut ChaCha8Rng, size: usize) -> Measure {
    Measure::new((0..size).map(|_| ExtScalar::Finite(crate::random::positive_rational(rng))).collect())
        .expect("positive weights")
}

fn small_lattice(rng: &mut ChaCha8Rng, i: u64) -> Result<ExplicitLattice> {
    let s = rng.gen_range(1..=3);
    if i % 2 == 0 {
        let c = rng.gen_range(1..=3);
        ExplicitLattice::new(FnLattice::nonneg(s, c)?.elements())
    } else {
        let seeds: Vec<FnElem> = (0..rng.gen_range(1..=4)).map(|_| int_fn(rng, s, 0, 4)).collect();
        ExplicitLattice::generated_by(seeds, 256)
    }
}

fn weights_log_supermodular(cfg: &ReproduceConfig) -> std::result::Result<String, String> {
    const INSTANCES: u64 = 100;
    let hit = first_failure(INSTANCES, |i| {
        let mut rng = cfg.rng(90, i);
        let mut run = || -> Result<Option<String>> {
            let l = small_lattice(&mut rng, i)?;
            let mu = measure(&mut rng, l.elements()[0].len());
            let inf = LatticeWeight::from_fn(&l, |h| Ok(h.values().iter().min().cloned().unwrap_or(ExtScalar::Inf)))?;
            let inv = LatticeWeight::from_fn(&l, |h| mu.integral(h, ConventionMode::Zero)?.powi(-1))?;
            for (name, nu) in [("inf h", inf), ("μ(h)^-1", inv)] {
                let r = is_log_supermodular(&l, &nu, ConventionMode::Inf)?;
                if !r.holds {
                    return Ok(Some(format!("{name}: {}", serde_json::to_string(&r.witness).unwrap_or_default())));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(w) => w.map(|w| format!("lattice {i}, {w}")),
            Err(e) => Some(format!("lattice {i}: {e}")),
        }
    });
    match hit {
        Some((_, w)) => Err(w),
        None => Ok(format!("inf h and μ(h)^-1 log-supermodular on {INSTANCES} lattices")),
    }
}

fn nonneg_linear(rng: &mut ChaCha8Rng, size: usize) -> RealFn {
    RealFn::Linear {
        coeffs: (0..size).map(|_| Q(rational(rng, 3))).collect(),
    }
}

fn weight_mode(rng: &mut ChaCha8Rng, i: u64, size: usize) -> WeightMode {
    if i % 2 == 0 {
        WeightMode::Inf
    } else {
        WeightMode::Power {
            r: Q(int(-rng.gen_range(1..=2))),
            measure: positive_measure(rng, size),
        }
    }
}

fn fkg_instances(cfg: &ReproduceConfig) -> std::result::Result<String, String> {
    const INSTANCES: u64 = 100;
    let hit = first_failure(INSTANCES, |i| {
        let mut rng = cfg.rng(91, i);
        let mut run = || -> Result<Option<String>> {
            let s = rng.gen_range(1..=3);
            let mode = weight_mode(&mut rng, i, s);
            // power weights need μ(h) > 0, so values start at 1 there
            let lo = if matches!(mode, WeightMode::Inf) { 0 } else { 1 };
            let seeds: Vec<FnElem> = (0..rng.gen_range(2..=3)).map(|_| int_fn(&mut rng, s, lo, 4)).collect();
            let sub = ExplicitLattice::generated_by(seeds, 256)?;
            let (f, g) = (nonneg_linear(&mut rng, s), nonneg_linear(&mut rng, s));
            let c = corollary_fkg_check(&sub, &mode, &f, &g)?;
            Ok((c.status != Status::Holds).then(|| serde_json::to_string(&c).unwrap_or_default()))
        };
        match run() {
            Ok(w) => w.map(|w| format!("FKG instance {i}: {w}")),
            Err(e) => Some(format!("FKG instance {i}: {e}")),
        }
    });
    match hit {
        Some((_, w)) => Err(w),
        None => Ok(format!("FKG corollary on {INSTANCES} sublattices")),
    }
}

fn ahke_instances(cfg: &ReproduceConfig) -> Result<std::result::Result<String, String>> {
    const INSTANCES: u64 = 100;
    let budget = cfg.budget;
    let hit = first_failure(INSTANCES, |i| {
        let mut rng = cfg.rng(92, i);
        let (s, n) = (rng.gen_range(1..=3), rng.gen_range(2..=3));
        let mode = weight_mode(&mut rng, i, s);
        let families: Vec<Vec<FnElem>> = (0..n)
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| fn_elem(&mut rng, s, 0.1)).collect())
            .collect();
        match corollary_ahke_check(&families, &mode, budget) {
            Ok(c) if c.status == Status::Holds => None,
            Ok(c) => Some(Ok(format!("n-function instance {i}: {}", serde_json::to_string(&c).unwrap_or_default()))),
            Err(e) => Some(Err(e)),
        }
    });
    match hit {
        None => Ok(Ok(format!("n-function corollary on {INSTANCES} family instances"))),
        Some((_, Ok(w))) => Ok(Err(w)),
        Some((_, Err(e @ Error::BudgetExceeded { .. }))) => Err(e),
        Some((i, Err(e))) => Ok(Err(format!("n-function instance {i}: {e}"))),
    }
}

pub fn correlation_suite(cfg: &ReproduceConfig) -> Result<Verdict> {
    let parts = [weights_log_supermodular(cfg), fkg_instances(cfg), ahke_instances(cfg)?];
    let passed = parts.iter().all(|p| p.is_ok());
    let detail: Vec<String> = parts.into_iter().map(|p| p.unwrap_or_else(|e| e)).collect();
    Ok(Verdict::new(passed, detail.join("; ")))
}

pub fn non_reversibility(_cfg: &ReproduceConfig) -> Result<Verdict> {
    let r = nonreversibility_demo(3, &rat(1, 1000), &rat(1, 10000), &int(1))?;
    let sizes_ok = r.orderstat_family_sizes == [9, 9];
    let within = r.ratio_relative_deviation <= 0.1;
    let exact = r.lhs.exact.is_some() && r.rhs.exact.is_some();
    Ok(Verdict::new(
        sizes_ok && within && exact,
        format!(
            "|F_2:1|, |F_2:2| = {:?}; RHS/LHS = {:.6} (N² = {}, deviation {:.2e})",
            r.orderstat_family_sizes, r.ratio.approx, r.n_squared, r.ratio_relative_deviation
        ),
    ))
}

fn direction_name(d: Direction) -> String {
    serde_json::to_value(d)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_else(|| format!("{d:?}"))
}

pub fn potential_suite(cfg: &ReproduceConfig) -> Result<Verdict> {
    const SPECS: u64 = 50;
    let opts = cfg.options();
    let carriers = [FnLattice::int_range(1, -1, 1)?, FnLattice::int_range(2, -1, 1)?];
    let mut parts = Vec::new();
    let mut passed = true;
    for (tag, curvature) in [(110, Curvature::Convex), (111, Curvature::Concave)] {
        let mut counts = std::collections::BTreeMap::<String, u64>::new();
        let mut failure = None;
        for i in 0..SPECS {
            let mut rng = cfg.rng(tag, i);
            let l = &carriers[(i % 2) as usize];
            let spec = potential_spec(&mut rng, l.ground_size(), curvature);
            let shown = serde_json::to_string(&spec).unwrap_or_default();
            let p = potential_construct(l, spec, 3)?;
            let (realized, _, _) = realized_direction(l, &p.functional, &opts)?;
            *counts.entry(direction_name(realized)).or_default() += 1;
            let pairs = check_sorted_pair_inequality(l, &p.eval)?;
            if failure.is_none() {
                if !realized.consistent_with(p.predicted) {
                    failure = Some(format!("spec {i} realized {} against {}: {shown}", direction_name(realized), direction_name(p.predicted)));
                } else if !pairs.holds {
                    failure = Some(format!("spec {i} pair inequality fails: {shown}"));
                }
            }
        }
        passed &= failure.is_none();
        parts.push(format!(
            "{curvature:?}: realized {}{}",
            serde_json::to_string(&counts).unwrap_or_default(),
            failure.map(|f| format!(", {f}")).unwrap_or_default()
        ));
    }
    Ok(Verdict::new(passed, parts.join("; ")))
}
