//! JSON descriptors for lattices, elements and functionals, shared by the
//! command line and the browser demo.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::multiadd::{multiadd_symmetric_sum, MultiadditiveSpec};
use crate::constructions::potential::{potential_construct, PotentialSpec};
use crate::constructions::schur::{schur_construct, Aggregator, SetFunctionSpec};
use crate::error::{Error, Result};
use crate::lattice::{build_m3, validate_table_lattice, FiniteLattice, FnElem, FnLattice, GroundSet, Lattice, TableLattice};
use crate::ordstats::{order_statistics, order_statistics_dual};
use crate::report::{to_value, CheckOptions, CheckReport};
use crate::scalar::{parse_rational, ExtScalar, Rational, Q};
use crate::semimod::{check_generalized_n, check_generalized_nk_windows, check_relaxed_hypothesis, Functional, Relation, Windows};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LatticeDescriptor {
    /// Explicit meet and join tables on ids `0..n`.
    Table {
        n: usize,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// An order relation on ids `0..n`; meet and join are derived.
    Order {
        n: usize,
        leq_pairs: Vec<(usize, usize)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// Functions from `ground_size` points into `{chain_min, ..., chain_max}`
    /// or into an explicit ascending `chain`.
    Fn {
        ground_size: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        chain_max: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        chain_min: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        chain: Option<Vec<ExtScalar>>,
    },
    /// The diamond on labels `1..=5`.
    M3 {},
}

/// A lattice built from a descriptor.
#[derive(Clone, Debug)]
pub enum AnyLattice {
    Table(TableLattice),
    Fn(FnLattice),
}

/// A tuple of elements of an [`AnyLattice`].
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTuple {
    Table(Vec<usize>),
    Fn(Vec<FnElem>),
}

fn labelled(t: TableLattice, labels: &Option<Vec<String>>) -> Result<TableLattice> {
    match labels {
        Some(l) => t.with_labels(l.clone()),
        None => Ok(t),
    }
}

impl LatticeDescriptor {
    pub fn build(&self) -> Result<AnyLattice> {
        match self {
            LatticeDescriptor::Table { n, meet, join, labels } => {
                if meet.len() != *n {
                    return Err(Error::input(format!("meet table has {} rows, expected {n}", meet.len())));
                }
                let t = labelled(TableLattice::from_tables(meet.clone(), join.clone())?, labels)?;
                let report = validate_table_lattice(&t);
                if let Some(w) = report.witness {
                    return Err(Error::input(format!(
                        "tables do not define a lattice: {}",
                        serde_json::to_string(&w).unwrap_or_default()
                    )));
                }
                Ok(AnyLattice::Table(t))
            }
            LatticeDescriptor::Order { n, leq_pairs, labels } => {
                Ok(AnyLattice::Table(labelled(TableLattice::from_order(*n, leq_pairs)?, labels)?))
            }
            LatticeDescriptor::Fn {
                ground_size,
                chain_max,
                chain_min,
                chain,
            } => {
                let ground = GroundSet::new(*ground_size)?;
                let chain = match (chain, chain_max) {
                    (Some(c), None) if chain_min.is_none() => c.clone(),
                    (None, Some(hi)) => {
                        let lo = chain_min.unwrap_or(0);
                        if lo > *hi {
                            return Err(Error::input("chain_min exceeds chain_max"));
                        }
                        (lo..=*hi).map(ExtScalar::from).collect()
                    }
                    _ => return Err(Error::input("give either `chain` or `chain_max` (with optional `chain_min`)")),
                };
                Ok(AnyLattice::Fn(FnLattice::new(ground, chain)?))
            }
            LatticeDescriptor::M3 {} => Ok(AnyLattice::Table(build_m3())),
        }
    }
}

impl AnyLattice {
    pub fn size(&self) -> usize {
        match self {
            AnyLattice::Table(t) => t.size(),
            AnyLattice::Fn(l) => l.size(),
        }
    }

    /// Element literals: labels or ids for tables, arrays of values for functions.
    pub fn parse_tuple(&self, values: &[Value]) -> Result<AnyTuple> {
        if values.is_empty() {
            return Err(Error::input("tuple must have at least one element"));
        }
        match self {
            AnyLattice::Table(t) => values.iter().map(|v| t.resolve(v)).collect::<Result<_>>().map(AnyTuple::Table),
            AnyLattice::Fn(l) => values
                .iter()
                .map(|v| {
                    let e: FnElem = serde_json::from_value(v.clone())
                        .map_err(|e| Error::input(format!("bad function literal {v}: {e}")))?;
                    l.check_member(&e)?;
                    Ok(e)
                })
                .collect::<Result<_>>()
                .map(AnyTuple::Fn),
        }
    }

    pub fn describe_tuple(&self, tuple: &AnyTuple) -> Vec<Value> {
        match (self, tuple) {
            (AnyLattice::Table(t), AnyTuple::Table(ids)) => ids.iter().map(|i| t.describe(i)).collect(),
            (_, AnyTuple::Fn(f)) => f.iter().map(to_value).collect(),
            (AnyLattice::Fn(_), AnyTuple::Table(ids)) => ids.iter().map(to_value).collect(),
        }
    }

    /// Both defining formulas for the order statistics of a tuple.
    pub fn order_statistics(&self, tuple: &AnyTuple) -> Result<(AnyTuple, AnyTuple)> {
        match (self, tuple) {
            (AnyLattice::Table(t), AnyTuple::Table(ids)) => Ok((
                AnyTuple::Table(order_statistics(t, ids)?),
                AnyTuple::Table(order_statistics_dual(t, ids)?),
            )),
            (AnyLattice::Fn(l), AnyTuple::Fn(f)) => Ok((
                AnyTuple::Fn(order_statistics(l, f)?),
                AnyTuple::Fn(order_statistics_dual(l, f)?),
            )),
            _ => Err(Error::input("tuple does not belong to this lattice")),
        }
    }
}

/// A functional, in JSON form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionalDescriptor {
    /// `Σ c·v(f_i)·v(f_j)` on a table lattice with numeric labels. `coeffs`
    /// maps a coefficient to its 1-based pair; `terms` lists `[c, i, j]` and
    /// allows repeated coefficients.
    Quadratic {
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        coeffs: BTreeMap<String, (usize, usize)>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        terms: Vec<(Q, usize, usize)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arity: Option<usize>,
    },
    /// `F(λ(f_1), ..., λ(f_n))`.
    Schur {
        arity: usize,
        lambda: SetFunctionSpec,
        aggregator: Aggregator,
    },
    /// `Σ_{j≠k} Ψ(f_j − f_k)`.
    Potential { arity: usize, spec: PotentialSpec },
    /// The symmetric sum of a multiadditive function.
    Multiadd { arity: usize, m: MultiadditiveSpec },
}

/// A functional built against a particular lattice.
#[derive(Clone)]
pub enum AnyFunctional {
    Table(Functional<usize, ExtScalar>),
    Fn(Functional<FnElem, ExtScalar>),
}

impl AnyFunctional {
    pub fn arity(&self) -> usize {
        match self {
            AnyFunctional::Table(f) => f.arity(),
            AnyFunctional::Fn(f) => f.arity(),
        }
    }

    pub fn eval(&self, tuple: &AnyTuple) -> Result<ExtScalar> {
        let n = match tuple {
            AnyTuple::Table(t) => t.len(),
            AnyTuple::Fn(t) => t.len(),
        };
        if n != self.arity() {
            return Err(Error::input(format!("functional has arity {}, tuple has {n} elements", self.arity())));
        }
        match (self, tuple) {
            (AnyFunctional::Table(f), AnyTuple::Table(t)) => Ok(f.eval(t)),
            (AnyFunctional::Fn(f), AnyTuple::Fn(t)) => Ok(f.eval(t)),
            _ => Err(Error::input("tuple does not belong to the functional's lattice")),
        }
    }
}

fn needs_fn(l: &AnyLattice, family: &str) -> Result<FnLattice> {
    match l {
        AnyLattice::Fn(f) => Ok(f.clone()),
        AnyLattice::Table(_) => Err(Error::input(format!("the {family} family needs a function lattice"))),
    }
}

impl FunctionalDescriptor {
    pub fn quadratic_terms(&self) -> Result<Vec<(Rational, usize, usize)>> {
        let FunctionalDescriptor::Quadratic { coeffs, terms, .. } = self else {
            return Err(Error::input("not a quadratic functional"));
        };
        let mut out: Vec<(Rational, usize, usize)> = coeffs
            .iter()
            .map(|(c, &(i, j))| Ok((parse_rational(c)?, i, j)))
            .collect::<Result<_>>()?;
        out.extend(terms.iter().map(|(c, i, j)| (c.0.clone(), *i, *j)));
        if out.is_empty() {
            return Err(Error::input("quadratic functional has no terms"));
        }
        Ok(out)
    }

    pub fn build(&self, l: &AnyLattice) -> Result<AnyFunctional> {
        match self {
            FunctionalDescriptor::Quadratic { arity, .. } => {
                let terms = self.quadratic_terms()?;
                let n = arity.unwrap_or_else(|| terms.iter().map(|t| t.1.max(t.2)).max().unwrap_or(1));
                match l {
                    AnyLattice::Table(t) => Ok(AnyFunctional::Table(crate::semimod::quadratic_functional(t, &terms, n)?)),
                    AnyLattice::Fn(_) => Err(Error::input("the quadratic family needs a table lattice with numeric labels")),
                }
            }
            FunctionalDescriptor::Schur { arity, lambda, aggregator } => {
                let fl = needs_fn(l, "schur")?;
                let lam = lambda.build(fl.ground_size())?;
                Ok(AnyFunctional::Fn(schur_construct(&fl, lam, aggregator.clone(), *arity)?))
            }
            FunctionalDescriptor::Potential { arity, spec } => {
                let fl = needs_fn(l, "potential")?;
                Ok(AnyFunctional::Fn(potential_construct(&fl, spec.clone(), *arity)?.functional))
            }
            FunctionalDescriptor::Multiadd { arity, m } => {
                let fl = needs_fn(l, "multiadd")?;
                if m.ground_size() != fl.ground_size() {
                    return Err(Error::input("multiadditive function and lattice have different ground sizes"));
                }
                Ok(AnyFunctional::Fn(multiadd_symmetric_sum(&m.build()?, *arity)?))
            }
        }
    }
}

/// Which semimodularity property to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckKind {
    /// Generalized n-semimodularity.
    N,
    /// Generalized (n:k)-semimodularity.
    Nk {
        k: usize,
        #[serde(default)]
        windows: Windows,
    },
    /// The relaxed hypothesis on adjacent sorted pairs.
    Relaxed,
}

pub fn run_check(
    l: &AnyLattice,
    lambda: &AnyFunctional,
    relation: &str,
    kind: CheckKind,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let rel: Relation<ExtScalar> = Relation::parse(relation)?;
    fn go<L: FiniteLattice>(
        l: &L,
        f: &Functional<L::Elem, ExtScalar>,
        rel: &Relation<ExtScalar>,
        kind: CheckKind,
        opts: &CheckOptions,
    ) -> Result<CheckReport> {
        match kind {
            CheckKind::N => check_generalized_n(l, f, rel, opts),
            CheckKind::Nk { k, windows } => check_generalized_nk_windows(l, f, k, rel, opts, windows),
            CheckKind::Relaxed => check_relaxed_hypothesis(l, f, rel, opts),
        }
    }
    match (l, lambda) {
        (AnyLattice::Table(t), AnyFunctional::Table(f)) => go(t, f, &rel, kind, opts),
        (AnyLattice::Fn(fl), AnyFunctional::Fn(f)) => go(fl, f, &rel, kind, opts),
        _ => Err(Error::input("functional was built for a different lattice kind")),
    }
}
