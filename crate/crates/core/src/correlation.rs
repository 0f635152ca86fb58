//! FKG-type correlation inequalities on finite distributive lattices, the
//! n-function extension over order-statistic families, and the example showing
//! that these inequalities do not reverse.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::corollaries::{float_pow, float_product, FLOAT_TOLERANCE};
use crate::constructions::Measure;
use crate::error::{Error, Result};
use crate::lattice::{ExplicitLattice, FiniteLattice, FnElem, FunctionSpace, Lattice};
use crate::ordstats::order_statistic_unchecked;
use crate::report::{first_failure, to_value, CheckReport, Comparison, ReportMode, Witness};
use crate::scalar::{as_i64, ext_product, ConventionMode, ExtScalar, Rational, Q};

/// Largest generated sublattice examined for distributivity or hypotheses.
pub const MAX_GENERATED: usize = 4096;

/// Value types the correlation checks run in: exact extended rationals, or
/// `f64` for non-integer exponents.
pub trait Arith: Clone + PartialOrd + Debug + Serialize + Send + Sync {
    fn zero() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn product(items: &[Self], mode: ConventionMode) -> Result<Self>;
    fn is_negative(&self) -> bool;
    fn is_infinite(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;
    fn compare(lhs: Self, rhs: Self, ge: bool) -> Comparison;
}

impl Arith for ExtScalar {
    fn zero() -> Self {
        ExtScalar::zero()
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn product(items: &[Self], mode: ConventionMode) -> Result<Self> {
        ext_product(items, mode)
    }

    fn is_negative(&self) -> bool {
        ExtScalar::is_negative(self)
    }

    fn is_infinite(&self) -> bool {
        self.is_inf()
    }

    fn from_rational(q: &Rational) -> Self {
        ExtScalar::Finite(q.clone())
    }

    fn compare(lhs: Self, rhs: Self, ge: bool) -> Comparison {
        if ge {
            Comparison::exact_ge(lhs, rhs)
        } else {
            Comparison::exact_le(lhs, rhs)
        }
    }
}

impl Arith for f64 {
    fn zero() -> Self {
        0.0
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn product(items: &[Self], mode: ConventionMode) -> Result<Self> {
        Ok(float_product(items, mode))
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn is_infinite(&self) -> bool {
        f64::is_infinite(*self)
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn compare(lhs: Self, rhs: Self, ge: bool) -> Comparison {
        if ge {
            Comparison::float_ge(lhs, rhs, FLOAT_TOLERANCE)
        } else {
            Comparison::float_le(lhs, rhs, FLOAT_TOLERANCE)
        }
    }
}

fn sum<T: Arith>(items: impl IntoIterator<Item = T>) -> T {
    items.into_iter().fold(T::zero(), |acc, x| acc.plus(&x))
}

fn prod2<T: Arith>(a: &T, b: &T, mode: ConventionMode) -> Result<T> {
    T::product(&[a.clone(), b.clone()], mode)
}

/// A nonnegative weight `ν` on the elements of a finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeWeight<E: Ord> {
    values: BTreeMap<E, ExtScalar>,
}

impl<E: Ord + Clone + Serialize> LatticeWeight<E> {
    pub fn new(values: BTreeMap<E, ExtScalar>) -> Result<Self> {
        if let Some((e, _)) = values.iter().find(|(_, v)| v.is_negative()) {
            return Err(Error::input(format!("weight is negative at {}", to_value(e))));
        }
        Ok(LatticeWeight { values })
    }

    pub fn from_fn<L: FiniteLattice<Elem = E>>(
        l: &L,
        mut f: impl FnMut(&E) -> Result<ExtScalar>,
    ) -> Result<Self> {
        let values = l
            .elements()
            .into_iter()
            .map(|e| f(&e).map(|v| (e, v)))
            .collect::<Result<_>>()?;
        LatticeWeight::new(values)
    }

    pub fn get(&self, e: &E) -> Result<&ExtScalar> {
        self.values
            .get(e)
            .ok_or_else(|| Error::input(format!("weight is not defined at {}", to_value(e))))
    }

    /// `ν(F) = Σ_f F(f)·ν(f)` for a finite weight.
    pub fn aggregate(&self, f: impl Fn(&E) -> Result<Rational>) -> Result<Rational> {
        self.values
            .iter()
            .try_fold(Rational::zero(), |acc, (e, w)| Ok(acc + f(e)? * w.expect_finite()?))
    }
}

fn index_of<E: Ord>(elems: &[E]) -> BTreeMap<&E, usize> {
    elems.iter().enumerate().map(|(i, e)| (e, i)).collect()
}

/// `ν(a∧b)·ν(a∨b) >= ν(a)·ν(b)` over all ordered pairs, with products under `mode`.
fn pair_scan<L: FiniteLattice, T: Arith>(
    l: &L,
    elems: &[L::Elem],
    w: &[T],
    mode: ConventionMode,
) -> CheckReport {
    let index = index_of(elems);
    let n = elems.len() as u64;
    let first = first_failure(n * n, |code| {
        let (i, j) = ((code / n) as usize, (code % n) as usize);
        let (a, b) = (&elems[i], &elems[j]);
        let (m, jn) = (l.meet(a, b), l.join(a, b));
        let (Some(&mi), Some(&ji)) = (index.get(&m), index.get(&jn)) else {
            return Some(Witness {
                tuple: vec![l.describe(a), l.describe(b)],
                lhs: Value::Null,
                rhs: Value::Null,
                note: Some("meet or join lies outside the weighted elements".into()),
            });
        };
        let lhs = prod2(&w[mi], &w[ji], mode);
        let rhs = prod2(&w[i], &w[j], mode);
        match (lhs, rhs) {
            (Ok(lhs), Ok(rhs)) => {
                let c = T::compare(lhs, rhs, true);
                (!c.holds).then(|| Witness {
                    tuple: vec![l.describe(a), l.describe(b)],
                    lhs: to_value(&c.sides),
                    rhs: Value::Null,
                    note: Some("ν(a∧b)·ν(a∨b) >= ν(a)·ν(b)".into()),
                })
            }
            _ => Some(Witness {
                tuple: vec![l.describe(a), l.describe(b)],
                lhs: Value::Null,
                rhs: Value::Null,
                note: Some("product undefined".into()),
            }),
        }
    });
    CheckReport::from_scan(n * n, ReportMode::Exhaustive, first.map(|(_, w)| w))
}

/// Multiplicative log-supermodularity of `ν` on `l`; `mode` resolves `0·∞`.
pub fn is_log_supermodular<L: FiniteLattice>(
    l: &L,
    nu: &LatticeWeight<L::Elem>,
    mode: ConventionMode,
) -> Result<CheckReport> {
    let elems = l.elements();
    let w = elems.iter().map(|e| nu.get(e).cloned()).collect::<Result<Vec<_>>>()?;
    Ok(pair_scan(l, &elems, &w, mode))
}

/// The same property through logarithms, for strictly positive finite `ν`.
pub fn is_log_supermodular_logform<L: FiniteLattice>(
    l: &L,
    nu: &LatticeWeight<L::Elem>,
) -> Result<CheckReport> {
    let elems = l.elements();
    let logs = elems
        .iter()
        .map(|e| {
            let v = nu.get(e)?.expect_finite()?;
            if !v.is_positive() {
                return Err(Error::input("log form needs a strictly positive weight"));
            }
            Ok(v.to_f64().unwrap_or(f64::NAN).ln())
        })
        .collect::<Result<Vec<_>>>()?;
    let index = index_of(&elems);
    let n = elems.len() as u64;
    let first = first_failure(n * n, |code| {
        let (i, j) = ((code / n) as usize, (code % n) as usize);
        let (a, b) = (&elems[i], &elems[j]);
        let lhs = logs[index[&l.meet(a, b)]] + logs[index[&l.join(a, b)]];
        let rhs = logs[i] + logs[j];
        let c = Comparison::float_ge(lhs, rhs, FLOAT_TOLERANCE);
        (!c.holds).then(|| Witness {
            tuple: vec![l.describe(a), l.describe(b)],
            lhs: Value::from(lhs),
            rhs: Value::from(rhs),
            note: Some("ln ν(a∧b) + ln ν(a∨b) >= ln ν(a) + ln ν(b)".into()),
        })
    });
    Ok(CheckReport::from_scan(n * n, ReportMode::Exhaustive, first.map(|(_, w)| w)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    /// A hypothesis failed; the conclusion is informational only.
    HypothesisViolated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedReport {
    pub name: String,
    pub report: CheckReport,
}

/// Hypotheses verified first, then the conclusion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub status: Status,
    pub hypotheses: Vec<NamedReport>,
    pub conclusion: Comparison,
}

impl TheoremCheck {
    fn assemble(hypotheses: Vec<(&str, CheckReport)>, conclusion: Comparison) -> Self {
        let hypotheses: Vec<NamedReport> = hypotheses
            .into_iter()
            .map(|(name, report)| NamedReport {
                name: name.into(),
                report,
            })
            .collect();
        let status = if hypotheses.iter().any(|h| !h.report.holds) {
            Status::HypothesisViolated
        } else if conclusion.holds {
            Status::Holds
        } else {
            Status::Violated
        };
        TheoremCheck {
            status,
            hypotheses,
            conclusion,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

fn distributive_scan<L: Lattice>(l: &L, elems: &[L::Elem]) -> CheckReport {
    if l.known_distributive() {
        return CheckReport::pass(0, ReportMode::Exhaustive);
    }
    let n = elems.len() as u64;
    let first = first_failure(n * n * n, |code| {
        let (a, b, c) = (
            &elems[(code / (n * n)) as usize],
            &elems[((code / n) % n) as usize],
            &elems[(code % n) as usize],
        );
        let lhs = l.meet(a, &l.join(b, c));
        let rhs = l.join(&l.meet(a, b), &l.meet(a, c));
        (lhs != rhs).then(|| Witness {
            tuple: vec![l.describe(a), l.describe(b), l.describe(c)],
            lhs: l.describe(&lhs),
            rhs: l.describe(&rhs),
            note: Some("a ^ (b v c) = (a ^ b) v (a ^ c)".into()),
        })
    });
    CheckReport::from_scan(n * n * n, ReportMode::Exhaustive, first.map(|(_, w)| w))
}

fn nondecreasing_scan<L: FiniteLattice, T: Arith>(l: &L, elems: &[L::Elem], f: &[T]) -> CheckReport {
    let n = elems.len() as u64;
    let first = first_failure(n * n, |code| {
        let (i, j) = ((code / n) as usize, (code % n) as usize);
        (l.leq(&elems[i], &elems[j]) && f[i] > f[j]).then(|| Witness {
            tuple: vec![l.describe(&elems[i]), l.describe(&elems[j])],
            lhs: to_value(&f[i]),
            rhs: to_value(&f[j]),
            note: Some("a <= b but F(a) > F(b)".into()),
        })
    });
    CheckReport::from_scan(n * n, ReportMode::Exhaustive, first.map(|(_, w)| w))
}

fn fkg_core<L: FiniteLattice, T: Arith>(
    l: &L,
    elems: &[L::Elem],
    w: &[T],
    f: &[T],
    g: &[T],
) -> Result<TheoremCheck> {
    if w.iter().any(|x| x.is_negative() || x.is_infinite()) {
        return Err(Error::input("FKG weights must be finite and nonnegative"));
    }
    let mode = ConventionMode::Zero;
    let weighted = |h: &[T]| -> Result<T> {
        Ok(sum(h.iter().zip(w).map(|(a, b)| prod2(a, b, mode)).collect::<Result<Vec<_>>>()?))
    };
    let fg = f.iter().zip(g).map(|(a, b)| prod2(a, b, mode)).collect::<Result<Vec<_>>>()?;
    let total = sum(w.iter().cloned());
    let lhs = prod2(&weighted(&fg)?, &total, mode)?;
    let rhs = prod2(&weighted(f)?, &weighted(g)?, mode)?;
    let hypotheses = vec![
        ("distributive", distributive_scan(l, elems)),
        ("log_supermodular", pair_scan(l, elems, w, mode)),
        ("f_nondecreasing", nondecreasing_scan(l, elems, f)),
        ("g_nondecreasing", nondecreasing_scan(l, elems, g)),
    ];
    Ok(TheoremCheck::assemble(hypotheses, T::compare(lhs, rhs, true)))
}

/// `ν(FG)·ν(1) >= ν(F)·ν(G)` after verifying distributivity, log-supermodularity
/// of `ν` and monotonicity of `F` and `G`.
pub fn fkg_check<L: FiniteLattice>(
    l: &L,
    nu: &LatticeWeight<L::Elem>,
    f: impl Fn(&L::Elem) -> Result<Rational>,
    g: impl Fn(&L::Elem) -> Result<Rational>,
) -> Result<TheoremCheck> {
    let elems = l.elements();
    let w = elems.iter().map(|e| nu.get(e).cloned()).collect::<Result<Vec<_>>>()?;
    let fv = elems.iter().map(|e| f(e).map(ExtScalar::Finite)).collect::<Result<Vec<_>>>()?;
    let gv = elems.iter().map(|e| g(e).map(ExtScalar::Finite)).collect::<Result<Vec<_>>>()?;
    fkg_core(l, &elems, &w, &fv, &gv)
}

/// A real-valued function on nonnegative functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RealFn {
    Constant { value: Q },
    /// `h ↦ Σ_s c_s·h(s)`; `h` must be finite.
    Linear { coeffs: Vec<Q> },
    Table { entries: Vec<(FnElem, Q)> },
}

impl RealFn {
    pub fn eval(&self, h: &FnElem) -> Result<Rational> {
        match self {
            RealFn::Constant { value } => Ok(value.0.clone()),
            RealFn::Linear { coeffs } => {
                if coeffs.len() != h.len() {
                    return Err(Error::input("linear coefficients do not match the ground set"));
                }
                Ok(coeffs.iter().zip(h.finite_values()?).map(|(c, v)| &c.0 * v).sum())
            }
            RealFn::Table { entries } => entries
                .iter()
                .find(|(e, _)| e == h)
                .map(|(_, v)| v.0.clone())
                .ok_or_else(|| Error::input(format!("function is not tabulated at {}", to_value(h)))),
        }
    }
}

/// The weights of the corollary inequalities: `h ↦ μ(h)^r` with `r < 0`, or `h ↦ inf h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightMode {
    Power { r: Q, measure: Measure },
    Inf,
}

enum Weights {
    Exact(Vec<ExtScalar>),
    Float(Vec<f64>),
}

impl WeightMode {
    fn validate(&self, ground_size: usize) -> Result<()> {
        if let WeightMode::Power { r, measure } = self {
            if !r.0.is_negative() {
                return Err(Error::input("the exponent r must be negative"));
            }
            measure.validate()?;
            if measure.len() != ground_size {
                return Err(Error::input("measure and functions have different ground sizes"));
            }
        }
        Ok(())
    }

    fn weights(&self, elems: &[FnElem]) -> Result<Weights> {
        if elems.iter().any(|e| !e.is_nonnegative()) {
            return Err(Error::input("functions must be nonnegative"));
        }
        match self {
            WeightMode::Inf => Ok(Weights::Exact(
                elems
                    .iter()
                    .map(|e| e.values().iter().min().cloned().unwrap_or(ExtScalar::Inf))
                    .collect(),
            )),
            WeightMode::Power { r, measure } => {
                let mus = elems
                    .iter()
                    .map(|e| measure.integral(e, ConventionMode::Zero))
                    .collect::<Result<Vec<_>>>()?;
                match as_i64(&r.0) {
                    Some(ri) => Ok(Weights::Exact(mus.iter().map(|m| m.powi(ri)).collect::<Result<_>>()?)),
                    None => {
                        let rf = r.0.to_f64().unwrap_or(f64::NAN);
                        Ok(Weights::Float(mus.iter().map(|m| float_pow(m.to_f64(), rf)).collect()))
                    }
                }
            }
        }
    }
}

/// The FKG inequality on a finite sublattice of nonnegative functions, weighted
/// by `μ(h)^r` (`r < 0`) or by `inf h`.
pub fn corollary_fkg_check(
    sub: &ExplicitLattice,
    mode: &WeightMode,
    f: &RealFn,
    g: &RealFn,
) -> Result<TheoremCheck> {
    let elems = sub.elements();
    mode.validate(elems[0].len())?;
    let fv = elems.iter().map(|e| f.eval(e)).collect::<Result<Vec<_>>>()?;
    let gv = elems.iter().map(|e| g.eval(e)).collect::<Result<Vec<_>>>()?;
    match mode.weights(&elems)? {
        Weights::Exact(w) => {
            if w.iter().any(ExtScalar::is_inf) {
                return Err(Error::input("a weight is infinite; every h needs μ(h) > 0 and a finite infimum"));
            }
            let lift = |v: &[Rational]| v.iter().map(ExtScalar::from_rational).collect::<Vec<_>>();
            fkg_core(sub, &elems, &w, &lift(&fv), &lift(&gv))
        }
        Weights::Float(w) => {
            if w.iter().any(|x| x.is_infinite()) {
                return Err(Error::input("a weight is infinite; every h needs μ(h) > 0"));
            }
            let lift = |v: &[Rational]| v.iter().map(f64::from_rational).collect::<Vec<_>>();
            fkg_core(sub, &elems, &w, &lift(&fv), &lift(&gv))
        }
    }
}

fn dedup_families<L: Lattice>(l: &L, families: &[Vec<L::Elem>]) -> Result<Vec<Vec<L::Elem>>> {
    if families.is_empty() || families.iter().any(Vec::is_empty) {
        return Err(Error::input("families must be nonempty"));
    }
    families
        .iter()
        .map(|fam| {
            fam.iter().try_for_each(|e| l.check_member(e))?;
            Ok(fam.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect())
        })
        .collect()
}

fn product_size(sizes: impl IntoIterator<Item = usize>) -> u128 {
    sizes.into_iter().fold(1u128, |acc, s| acc.saturating_mul(s as u128))
}

fn decode_mixed(mut code: u64, radices: &[usize], out: &mut [usize]) {
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = (code % r as u64) as usize;
        code /= r as u64;
    }
}

fn check_budget(needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// `F_{n:j} = {f_{n:j} : f ∈ F_1 × ⋯ × F_n}` for every `j`, each sorted and deduplicated.
pub fn orderstat_family<L: Lattice>(
    l: &L,
    families: &[Vec<L::Elem>],
    budget: u64,
) -> Result<Vec<Vec<L::Elem>>> {
    let fams = dedup_families(l, families)?;
    let radices: Vec<usize> = fams.iter().map(Vec::len).collect();
    let total = product_size(radices.iter().copied());
    check_budget(total, budget)?;
    let n = fams.len();
    let sets = (0..total as u64)
        .into_par_iter()
        .fold(
            || vec![BTreeSet::new(); n],
            |mut acc, code| {
                let mut ids = vec![0; n];
                decode_mixed(code, &radices, &mut ids);
                let tuple: Vec<L::Elem> = ids.iter().zip(&fams).map(|(&i, f)| f[i].clone()).collect();
                for (j, set) in acc.iter_mut().enumerate() {
                    set.insert(order_statistic_unchecked(l, &tuple, j + 1));
                }
                acc
            },
        )
        .reduce(
            || vec![BTreeSet::new(); n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.extend(y);
                }
                a
            },
        );
    Ok(sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// The sublattice generated by `seeds` under meet and join.
pub fn generated_sublattice<L: Lattice>(l: &L, seeds: &[L::Elem], cap: usize) -> Result<Vec<L::Elem>> {
    let mut set: BTreeSet<L::Elem> = seeds.iter().cloned().collect();
    loop {
        let current: Vec<L::Elem> = set.iter().cloned().collect();
        let before = set.len();
        for a in &current {
            for b in &current {
                set.insert(l.meet(a, b));
                set.insert(l.join(a, b));
            }
        }
        if set.len() > cap {
            return Err(Error::input(format!("generated sublattice exceeds {cap} elements")));
        }
        if set.len() == before {
            return Ok(set.into_iter().collect());
        }
    }
}

/// Where the hypothesis `Π α_j(f_j) <= Π β_j(f_{n:j})` is verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisScope {
    /// Over `F_1 × ⋯ × F_n`.
    #[default]
    Families,
    /// Over all `n`-tuples from the sublattice generated by the families.
    GeneratedSublattice,
}

pub type Unary<E, T> = Arc<dyn Fn(&E) -> T + Send + Sync>;

/// `Π_j Σ_{f∈F_j} α_j(f) <= Π_j Σ_{g∈F_{n:j}} β_j(g)` after verifying the
/// pointwise hypothesis and distributivity of the generated sublattice.
#[allow(clippy::too_many_arguments)]
pub fn aharoni_keich_check<L: Lattice, T: Arith>(
    l: &L,
    alpha: &[Unary<L::Elem, T>],
    beta: &[Unary<L::Elem, T>],
    families: &[Vec<L::Elem>],
    mode: ConventionMode,
    scope: HypothesisScope,
    budget: u64,
) -> Result<TheoremCheck> {
    let n = families.len();
    if alpha.len() != n || beta.len() != n {
        return Err(Error::input("need one α_j and one β_j per family"));
    }
    let fams = dedup_families(l, families)?;
    let union: Vec<L::Elem> = fams.iter().flatten().cloned().collect();
    let generated = generated_sublattice(l, &union, MAX_GENERATED)?;
    let domains: Vec<&[L::Elem]> = match scope {
        HypothesisScope::Families => fams.iter().map(Vec::as_slice).collect(),
        HypothesisScope::GeneratedSublattice => vec![generated.as_slice(); n],
    };
    let negative = domains
        .iter()
        .enumerate()
        .flat_map(|(j, d)| d.iter().map(move |e| (j, e)))
        .find(|(j, e)| alpha[*j](e).is_negative() || beta[*j](e).is_negative());
    if let Some((_, e)) = negative {
        return Err(Error::input(format!("α or β is negative at {}", to_value(e))));
    }
    let radices: Vec<usize> = domains.iter().map(|d| d.len()).collect();
    let total = product_size(radices.iter().copied());
    check_budget(total, budget)?;
    let first = first_failure(total as u64, |code| {
        let mut ids = vec![0; n];
        decode_mixed(code, &radices, &mut ids);
        let tuple: Vec<L::Elem> = ids.iter().zip(&domains).map(|(&i, d)| d[i].clone()).collect();
        let a: Vec<T> = tuple.iter().zip(alpha).map(|(f, al)| al(f)).collect();
        let b: Vec<T> = (1..=n)
            .map(|j| beta[j - 1](&order_statistic_unchecked(l, &tuple, j)))
            .collect();
        let witness = |note: &str, c: Option<Comparison>| Witness {
            tuple: tuple.iter().map(|e| l.describe(e)).collect(),
            lhs: c.as_ref().map(|c| to_value(&c.sides)).unwrap_or(Value::Null),
            rhs: Value::Null,
            note: Some(note.into()),
        };
        match (T::product(&a, mode), T::product(&b, mode)) {
            (Ok(lhs), Ok(rhs)) => {
                let c = T::compare(lhs, rhs, false);
                (!c.holds).then(|| witness("Π α_j(f_j) <= Π β_j(f_{n:j})", Some(c)))
            }
            _ => Some(witness("product undefined", None)),
        }
    });
    let hypothesis = CheckReport::from_scan(total as u64, ReportMode::Exhaustive, first.map(|(_, w)| w));
    let ord = orderstat_family(l, &fams, budget)?;
    let side = |sets: &[Vec<L::Elem>], fns: &[Unary<L::Elem, T>]| -> Result<T> {
        let sums: Vec<T> = sets
            .iter()
            .zip(fns)
            .map(|(s, f)| sum(s.iter().map(|e| f(e))))
            .collect();
        T::product(&sums, mode)
    };
    let conclusion = T::compare(side(&fams, alpha)?, side(&ord, beta)?, false);
    let hypotheses = vec![
        ("distributive", distributive_scan(l, &generated)),
        ("pointwise_product", hypothesis),
    ];
    Ok(TheoremCheck::assemble(hypotheses, conclusion))
}

fn families_ground_size(families: &[Vec<FnElem>]) -> Result<usize> {
    let size = families
        .iter()
        .flatten()
        .next()
        .map(FnElem::len)
        .ok_or_else(|| Error::input("families must be nonempty"))?;
    if families.iter().flatten().any(|e| e.len() != size) {
        return Err(Error::input("functions are defined on different ground sets"));
    }
    Ok(size)
}

/// The n-function inequality for families of nonnegative functions, weighted by
/// `μ(h)^r` (`r < 0`) or by `inf h`; products take `0·∞ := ∞`.
pub fn corollary_ahke_check(families: &[Vec<FnElem>], mode: &WeightMode, budget: u64) -> Result<TheoremCheck> {
    let size = families_ground_size(families)?;
    mode.validate(size)?;
    let l = FunctionSpace { size };
    let all: Vec<FnElem> = families.iter().flatten().cloned().collect();
    mode.weights(&all)?;
    let conv = ConventionMode::Inf;
    let n = families.len();
    macro_rules! run {
        ($t:ty, $eval:expr) => {{
            let w: Unary<FnElem, $t> = Arc::new($eval);
            let fns = vec![w; n];
            aharoni_keich_check(&l, &fns, &fns, families, conv, HypothesisScope::Families, budget)
        }};
    }
    match mode {
        WeightMode::Inf => run!(ExtScalar, |h: &FnElem| h.values().iter().min().cloned().unwrap_or(ExtScalar::Inf)),
        WeightMode::Power { r, measure } => {
            let measure = measure.clone();
            match as_i64(&r.0) {
                Some(ri) => run!(ExtScalar, move |h: &FnElem| measure
                    .integral(h, ConventionMode::Zero)
                    .and_then(|m| m.powi(ri))
                    .expect("validated nonnegative input")),
                None => {
                    let rf = r.0.to_f64().unwrap_or(f64::NAN);
                    run!(f64, move |h: &FnElem| float_pow(
                        measure.integral(h, ConventionMode::Zero).expect("validated nonnegative input").to_f64(),
                        rf
                    ))
                }
            }
        }
    }
}

/// An exact value when available, with its floating-point rendering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluated {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Q>,
    pub approx: f64,
}

impl Evaluated {
    fn exact(q: Rational) -> Self {
        Evaluated {
            approx: q.to_f64().unwrap_or(f64::NAN),
            exact: Some(Q(q)),
        }
    }

    fn float(x: f64) -> Self {
        Evaluated { exact: None, approx: x }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonrevReport {
    pub n: usize,
    pub delta: Q,
    pub eps: Q,
    pub r: Q,
    pub ground_size: usize,
    pub family_1: Vec<FnElem>,
    pub family_2: Vec<FnElem>,
    pub orderstat_family_sizes: Vec<usize>,
    pub lhs: Evaluated,
    pub rhs: Evaluated,
    pub ratio: Evaluated,
    pub n_squared: u64,
    pub n_fourth: u64,
    /// `|ratio / N² − 1|`.
    pub ratio_relative_deviation: f64,
}

/// Families on `{1, ..., N+1}` with uniform probability: `N` distinct constants
/// near 1 and the steps `g_j = 1−δ` on `s <= j`, `1+δ` beyond. The `μ(·)^r`
/// sums over the order-statistic families are about `N²` times larger.
pub fn nonreversibility_demo(n: usize, delta: &Rational, eps: &Rational, r: &Rational) -> Result<NonrevReport> {
    let one = Rational::from_integer(1.into());
    if n == 0 {
        return Err(Error::input("N must be at least 1"));
    }
    if !(eps.is_positive() && eps < delta && delta < &one) {
        return Err(Error::input("parameters must satisfy 0 < ε < δ < 1"));
    }
    let size = n + 1;
    let nn = Rational::from_integer((n as i64).into());
    let constants: Vec<FnElem> = (1..=n as i64)
        .map(|i| {
            let c = &one + eps * Rational::from_integer((2 * i - n as i64 - 1).into()) / (Rational::from_integer(2.into()) * &nn);
            FnElem::constant(size, ExtScalar::Finite(c))
        })
        .collect();
    let steps: Vec<FnElem> = (1..=n)
        .map(|j| FnElem::from_rationals((1..=size).map(|s| if s <= j { &one - delta } else { &one + delta })))
        .collect();
    let families = vec![constants.clone(), steps.clone()];
    let ord = orderstat_family(&FunctionSpace { size }, &families, u64::MAX)?;
    let mu = Measure::uniform(size);
    let means = |set: &[FnElem]| -> Result<Vec<Rational>> {
        set.iter()
            .map(|h| mu.integral(h, ConventionMode::Zero).and_then(|m| m.expect_finite().cloned()))
            .collect()
    };
    let side_means = |sets: &[Vec<FnElem>]| sets.iter().map(|s| means(s)).collect::<Result<Vec<_>>>();
    let (lhs_means, rhs_means) = (side_means(&families)?, side_means(&ord)?);
    let (lhs, rhs, ratio) = match as_i64(r) {
        Some(ri) => {
            let side = |ms: &[Vec<Rational>]| -> Result<Rational> {
                ms.iter().try_fold(one.clone(), |acc, set| {
                    let s = set.iter().try_fold(Rational::zero(), |a, m| {
                        Ok::<_, Error>(a + ExtScalar::Finite(m.clone()).powi(ri)?.expect_finite()?.clone())
                    })?;
                    Ok(acc * s)
                })
            };
            let (l, rr) = (side(&lhs_means)?, side(&rhs_means)?);
            let ratio = &rr / &l;
            (Evaluated::exact(l), Evaluated::exact(rr), Evaluated::exact(ratio))
        }
        None => {
            let rf = r.to_f64().unwrap_or(f64::NAN);
            let side = |ms: &[Vec<Rational>]| -> f64 {
                ms.iter()
                    .map(|set| set.iter().map(|m| m.to_f64().unwrap_or(f64::NAN).powf(rf)).sum::<f64>())
                    .product()
            };
            let (l, rr) = (side(&lhs_means), side(&rhs_means));
            (Evaluated::float(l), Evaluated::float(rr), Evaluated::float(rr / l))
        }
    };
    let n_squared = (n as u64).pow(2);
    Ok(NonrevReport {
        n,
        delta: Q(delta.clone()),
        eps: Q(eps.clone()),
        r: Q(r.clone()),
        ground_size: size,
        family_1: constants,
        family_2: steps,
        orderstat_family_sizes: ord.iter().map(Vec::len).collect(),
        ratio_relative_deviation: (ratio.approx / n_squared as f64 - 1.0).abs(),
        lhs,
        rhs,
        ratio,
        n_squared,
        n_fourth: n_squared * n_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{FnLattice, TableLattice};
    use crate::report::Sides;
    use crate::scalar::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn exact_sides(c: &Comparison) -> (ExtScalar, ExtScalar) {
        match &c.sides {
            Sides::Exact { lhs, rhs } => (lhs.clone(), rhs.clone()),
            Sides::Float { .. } => panic!("expected exact sides"),
        }
    }

    #[test]
    fn weight_examples() {
        let l = FnLattice::nonneg(2, 2).unwrap();
        let ones = LatticeWeight::from_fn(&l, |_| Ok(ExtScalar::one())).unwrap();
        assert!(is_log_supermodular(&l, &ones, ConventionMode::Zero).unwrap().holds);
        let mu = Measure::counting(2);
        let inv = LatticeWeight::from_fn(&l, |h| mu.integral(h, ConventionMode::Zero)?.powi(-1)).unwrap();
        assert!(is_log_supermodular(&l, &inv, ConventionMode::Inf).unwrap().holds);
        let inf = LatticeWeight::from_fn(&l, |h| Ok(h.values().iter().min().unwrap().clone())).unwrap();
        assert!(is_log_supermodular(&l, &inf, ConventionMode::Inf).unwrap().holds);
        let b = TableLattice::boolean(2).unwrap();
        let top = b.top();
        let bad = LatticeWeight::from_fn(&b, |&e| Ok(ExtScalar::from(i64::from(e != top)))).unwrap();
        let report = is_log_supermodular(&b, &bad, ConventionMode::Zero).unwrap();
        assert!(!report.holds);
        assert!(report.witness.is_some());
    }

    #[test]
    fn log_form_agrees_on_positive_weights() {
        let b = TableLattice::boolean(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let nu = LatticeWeight::from_fn(&b, |_| Ok(ExtScalar::from(rng.gen_range(1..=6)))).unwrap();
            let mult = is_log_supermodular(&b, &nu, ConventionMode::Zero).unwrap();
            let log = is_log_supermodular_logform(&b, &nu).unwrap();
            assert_eq!(mult.holds, log.holds);
        }
    }

    #[test]
    fn fkg_on_chain_matches_chebyshev_identity() {
        let chain = TableLattice::chain(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let w: Vec<i64> = (0..5).map(|_| rng.gen_range(0..=4)).collect();
            let mut f: Vec<i64> = (0..5).map(|_| rng.gen_range(-3..=3)).collect();
            let mut g: Vec<i64> = (0..5).map(|_| rng.gen_range(-3..=3)).collect();
            f.sort();
            g.sort();
            let nu = LatticeWeight::from_fn(&chain, |&e| Ok(ExtScalar::from(w[e]))).unwrap();
            let check = fkg_check(&chain, &nu, |&e| Ok(int(f[e])), |&e| Ok(int(g[e]))).unwrap();
            assert!(check.holds());
            let (lhs, rhs) = exact_sides(&check.conclusion);
            // Σ_i Σ_j w_i w_j (f_i − f_j)(g_i − g_j) = 2 (lhs − rhs)
            let double: i64 = (0..5)
                .flat_map(|i| (0..5).map(move |j| (i, j)))
                .map(|(i, j)| w[i] * w[j] * (f[i] - f[j]) * (g[i] - g[j]))
                .sum();
            assert_eq!(
                lhs.expect_finite().unwrap() - rhs.expect_finite().unwrap(),
                rat(double, 2)
            );
        }
    }

    #[test]
    fn fkg_constant_and_boolean_product_weight() {
        let b = TableLattice::boolean(2).unwrap();
        // ids are subsets of {a, b} as bitmasks
        let p = [rat(1, 3), rat(3, 4)];
        let weight = |e: usize| -> Rational {
            (0..2)
                .map(|i| if e >> i & 1 == 1 { p[i].clone() } else { int(1) - &p[i] })
                .product()
        };
        let nu = LatticeWeight::from_fn(&b, |&e| Ok(ExtScalar::Finite(weight(e)))).unwrap();
        let f = |e: usize| int((e & 1) as i64 * 2 + (e >> 1) as i64);
        let g = |e: usize| int(e.count_ones() as i64);
        let check = fkg_check(&b, &nu, |&e| Ok(f(e)), |&e| Ok(g(e))).unwrap();
        assert!(check.holds());
        let total: Rational = (0..4).map(weight).sum();
        let lhs: Rational = (0..4).map(|e| f(e) * g(e) * weight(e)).sum::<Rational>() * &total;
        let rhs: Rational = (0..4).map(|e| f(e) * weight(e)).sum::<Rational>()
            * (0..4).map(|e| g(e) * weight(e)).sum::<Rational>();
        assert_eq!(exact_sides(&check.conclusion), (ExtScalar::Finite(lhs), ExtScalar::Finite(rhs)));
        let constant = fkg_check(&b, &nu, |_| Ok(int(3)), |&e| Ok(g(e))).unwrap();
        assert!(constant.holds() && constant.conclusion.equality);
    }

    #[test]
    fn fkg_reports_failed_preconditions() {
        let chain = TableLattice::chain(3).unwrap();
        let nu = LatticeWeight::from_fn(&chain, |_| Ok(ExtScalar::one())).unwrap();
        let check = fkg_check(&chain, &nu, |&e| Ok(int(-(e as i64))), |&e| Ok(int(e as i64))).unwrap();
        assert_eq!(check.status, Status::HypothesisViolated);
        assert!(!check.hypotheses[2].report.holds);
        let m3 = crate::lattice::build_m3();
        let nu = LatticeWeight::from_fn(&m3, |_| Ok(ExtScalar::one())).unwrap();
        let check = fkg_check(&m3, &nu, |_| Ok(int(1)), |_| Ok(int(1))).unwrap();
        assert_eq!(check.status, Status::HypothesisViolated);
        assert!(!check.hypotheses[0].report.holds);
    }

    fn random_sublattice(rng: &mut ChaCha8Rng, size: usize, lo: i64, hi: i64) -> ExplicitLattice {
        let seeds: Vec<FnElem> = (0..rng.gen_range(1..=3))
            .map(|_| FnElem::from_ints(&(0..size).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>()))
            .collect();
        ExplicitLattice::generated_by(seeds, 512).unwrap()
    }

    #[test]
    fn corollary_fkg_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mu = Measure::new(vec![ExtScalar::from(1), ExtScalar::Finite(rat(1, 2))]).unwrap();
        let power = WeightMode::Power { r: Q(int(-1)), measure: mu };
        let ones = RealFn::Constant { value: Q(int(1)) };
        for _ in 0..30 {
            let sub = random_sublattice(&mut rng, 2, 1, 4);
            let f = RealFn::Linear { coeffs: vec![Q(int(rng.gen_range(0..3))), Q(int(rng.gen_range(0..3)))] };
            let g = RealFn::Linear { coeffs: vec![Q(int(rng.gen_range(0..3))), Q(rat(1, 2))] };
            let c = corollary_fkg_check(&sub, &power, &ones, &ones).unwrap();
            assert!(c.holds() && c.conclusion.equality);
            assert!(corollary_fkg_check(&sub, &power, &f, &g).unwrap().holds());
            assert!(corollary_fkg_check(&sub, &WeightMode::Inf, &f, &g).unwrap().holds());
        }
        let sub = random_sublattice(&mut rng, 2, 1, 4);
        let positive_r = WeightMode::Power { r: Q(int(1)), measure: Measure::counting(2) };
        assert!(corollary_fkg_check(&sub, &positive_r, &ones, &ones).is_err());
        let float = WeightMode::Power { r: Q(rat(-1, 2)), measure: Measure::counting(2) };
        let c = corollary_fkg_check(&sub, &float, &RealFn::Linear { coeffs: vec![Q(int(1)), Q(int(2))] }, &ones).unwrap();
        assert!(c.holds());
        assert!(matches!(c.conclusion.sides, Sides::Float { .. }));
    }

    #[test]
    fn orderstat_family_examples() {
        let l = FunctionSpace { size: 2 };
        let f = [FnElem::from_ints(&[3, 0]), FnElem::from_ints(&[1, 2]), FnElem::from_ints(&[2, 2])];
        let singletons: Vec<Vec<FnElem>> = f.iter().map(|e| vec![e.clone()]).collect();
        let fam = orderstat_family(&l, &singletons, 1000).unwrap();
        let expected = crate::ordstats::pointwise_order_statistics(&f).unwrap();
        assert_eq!(fam, expected.into_iter().map(|e| vec![e]).collect::<Vec<_>>());
        let nested = vec![f.to_vec(), f[..2].to_vec()];
        let fam = orderstat_family(&l, &nested, 1000).unwrap();
        assert!(fam.iter().all(|s| s.len() <= 6));
        assert!(matches!(orderstat_family(&l, &nested, 5), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn ahke_unit_weights_count_sets() {
        let l = FunctionSpace { size: 2 };
        let families = vec![
            vec![FnElem::from_ints(&[0, 1]), FnElem::from_ints(&[1, 0])],
            vec![FnElem::from_ints(&[1, 1]), FnElem::from_ints(&[2, 0]), FnElem::from_ints(&[0, 0])],
        ];
        let one: Unary<FnElem, ExtScalar> = Arc::new(|_| ExtScalar::one());
        let fns = vec![one.clone(), one];
        let check = aharoni_keich_check(&l, &fns, &fns, &families, ConventionMode::Inf, HypothesisScope::Families, 1000)
            .unwrap();
        assert!(check.holds());
        let fam = orderstat_family(&l, &families, 1000).unwrap();
        let rhs = (fam[0].len() * fam[1].len()) as i64;
        assert_eq!(exact_sides(&check.conclusion), (ExtScalar::from(6), ExtScalar::from(rhs)));
    }

    #[test]
    fn ahke_singletons_and_corollary_instances() {
        let mu = Measure::counting(2);
        let power = WeightMode::Power { r: Q(int(-1)), measure: mu.clone() };
        let f = [FnElem::from_ints(&[1, 3]), FnElem::from_ints(&[2, 0])];
        let singletons: Vec<Vec<FnElem>> = f.iter().map(|e| vec![e.clone()]).collect();
        let check = corollary_ahke_check(&singletons, &power, 1000).unwrap();
        assert!(check.holds());
        let direct = crate::constructions::corollaries::power_inequality_check(&int(1), &int(-1), &mu, &f).unwrap();
        assert_eq!(check.conclusion.sides, direct.sides);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(2..=3);
            let size = rng.gen_range(1..=3);
            let families: Vec<Vec<FnElem>> = (0..n)
                .map(|_| {
                    (0..rng.gen_range(1..=3))
                        .map(|_| FnElem::from_ints(&(0..size).map(|_| rng.gen_range(0..=3)).collect::<Vec<_>>()))
                        .collect()
                })
                .collect();
            let power = WeightMode::Power { r: Q(int(-1)), measure: Measure::counting(size) };
            assert!(corollary_ahke_check(&families, &power, 1 << 20).unwrap().holds());
            assert!(corollary_ahke_check(&families, &WeightMode::Inf, 1 << 20).unwrap().holds());
        }
        let bad = WeightMode::Power { r: Q(int(0)), measure: Measure::counting(2) };
        assert!(corollary_ahke_check(&singletons, &bad, 1000).is_err());
    }

    #[test]
    fn ahke_hypothesis_failure_is_not_a_violation() {
        let l = FunctionSpace { size: 1 };
        let families = vec![vec![FnElem::from_ints(&[2])], vec![FnElem::from_ints(&[1])]];
        // α_1 large at the larger element, β_1 small: the pointwise hypothesis fails
        let alpha: Unary<FnElem, ExtScalar> = Arc::new(|h| h.values()[0].clone());
        let beta: Unary<FnElem, ExtScalar> = Arc::new(|_| ExtScalar::one());
        let check = aharoni_keich_check(
            &l,
            &[alpha.clone(), alpha],
            &[beta.clone(), beta],
            &families,
            ConventionMode::Inf,
            HypothesisScope::GeneratedSublattice,
            1000,
        )
        .unwrap();
        assert_eq!(check.status, Status::HypothesisViolated);
    }

    #[test]
    fn nonreversibility_numbers() {
        let report = nonreversibility_demo(3, &rat(1, 1000), &rat(1, 10000), &int(1)).unwrap();
        assert_eq!(report.orderstat_family_sizes, vec![9, 9]);
        assert!(report.ratio_relative_deviation < 0.1);
        // r = 0 counts elements: N·N on the left, N²·N² on the right
        let counts = nonreversibility_demo(3, &rat(1, 2), &rat(1, 4), &int(0)).unwrap();
        assert_eq!(counts.lhs.exact, Some(Q(int(9))));
        assert_eq!(counts.rhs.exact, Some(Q(int(81))));
        let single = nonreversibility_demo(1, &rat(1, 1000), &rat(1, 10000), &int(1)).unwrap();
        assert_eq!(single.orderstat_family_sizes, vec![1, 1]);
        assert!((single.ratio.approx - 1.0).abs() < 1e-6);
        let float = nonreversibility_demo(4, &rat(1, 1000), &rat(1, 10000), &rat(-1, 2)).unwrap();
        assert_eq!(float.orderstat_family_sizes, vec![16, 16]);
        assert!(float.ratio_relative_deviation < 0.1);
        assert!(nonreversibility_demo(3, &rat(1, 10), &rat(1, 5), &int(1)).is_err());
        assert!(nonreversibility_demo(0, &rat(1, 10), &rat(1, 50), &int(1)).is_err());
    }
}
