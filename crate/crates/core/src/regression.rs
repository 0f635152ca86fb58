//! Randomized regression of the main implication: every generated functional
//! that passes the (n:2) check must pass the n check.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::potential::{potential_construct, Curvature, Direction};
use crate::error::{Error, Result};
use crate::lattice::{build_m3, is_distributive, FiniteLattice, FnElem, FnLattice};
use crate::random::{instance_rng, multiadd_functional, potential_spec, schur_functional};
use crate::report::{CheckOptions, CheckReport, ReportMode, Witness};
use crate::scalar::ExtScalar;
use crate::semimod::{check_generalized_n, check_generalized_nk, m3_functional, Functional, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Schur,
    Multiadd,
    Potential,
    /// The diamond-lattice quadratic; not distributive, so the implication may fail.
    M3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub family: Family,
    #[serde(default = "default_ground")]
    pub ground_size: usize,
    /// Values `0..=chain_max`, or `−chain_max..=chain_max` for potentials.
    #[serde(default = "default_chain")]
    pub chain_max: i64,
    pub arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvature: Option<Curvature>,
}

fn default_ground() -> usize {
    2
}

fn default_chain() -> i64 {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub spec: GeneratorSpec,
    pub seed: u64,
    pub trials: u64,
    pub lattice_distributive: bool,
    /// Generated functionals that failed their own (n:2) check.
    pub precondition_failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_precondition_failure: Option<Value>,
    pub falsifications: u64,
    /// Holds iff no functional passed (n:2) and failed n.
    pub report: CheckReport,
}

struct Trial<E> {
    functional: Functional<E, ExtScalar>,
    relation: Relation<ExtScalar>,
    label: String,
}

fn relation_for(direction: Direction) -> Relation<ExtScalar> {
    match direction {
        Direction::Supermodular => Relation::Le,
        _ => Relation::Ge,
    }
}

fn run_trials<L: FiniteLattice>(
    l: &L,
    spec: &GeneratorSpec,
    seed: u64,
    trials: u64,
    opts: &CheckOptions,
    mut make: impl FnMut(u64) -> Result<Trial<L::Elem>>,
) -> Result<RegressionReport> {
    let mut out = RegressionReport {
        spec: spec.clone(),
        seed,
        trials,
        lattice_distributive: is_distributive(l).holds,
        precondition_failures: 0,
        first_precondition_failure: None,
        falsifications: 0,
        report: CheckReport::pass(0, ReportMode::Sampled { seed }),
    };
    for i in 0..trials {
        let t = make(i)?;
        let k2 = check_generalized_nk(l, &t.functional, 2, &t.relation, opts)?;
        out.report.instances_checked += k2.instances_checked;
        if !k2.holds {
            out.precondition_failures += 1;
            out.first_precondition_failure
                .get_or_insert_with(|| serde_json::json!({"trial": i, "functional": t.label, "witness": k2.witness}));
            continue;
        }
        let full = check_generalized_n(l, &t.functional, &t.relation, opts)?;
        out.report.instances_checked += full.instances_checked;
        if let Some(w) = full.witness {
            out.falsifications += 1;
            if out.report.witness.is_none() {
                out.report.holds = false;
                out.report.witness = Some(Witness {
                    note: Some(format!("trial {i}: {}", t.label)),
                    ..w
                });
            }
        }
    }
    Ok(out)
}

/// Generates `trials` functionals from `spec` and checks (n:2) ⟹ n on each.
pub fn theorem_regression(spec: &GeneratorSpec, trials: u64, seed: u64, opts: &CheckOptions) -> Result<RegressionReport> {
    if spec.arity < 2 {
        return Err(Error::input("arity must be at least 2"));
    }
    match spec.family {
        Family::M3 => {
            let m3 = build_m3();
            if spec.arity != 3 {
                return Err(Error::input("the diamond functional has arity 3"));
            }
            run_trials(&m3, spec, seed, trials, opts, |_| {
                Ok(Trial {
                    functional: m3_functional(&m3),
                    relation: Relation::Ge,
                    label: "12 f1 f2 + 3 f2 f3 + 5 f1 f3".into(),
                })
            })
        }
        Family::Potential => {
            let l = FnLattice::int_range(spec.ground_size, -spec.chain_max, spec.chain_max)?;
            let curvature = spec.curvature.unwrap_or(Curvature::Convex);
            run_trials(&l, spec, seed, trials, opts, |i| {
                let mut rng = instance_rng(seed, i);
                let ps = potential_spec(&mut rng, spec.ground_size, curvature);
                let label = format!("potential {}", serde_json::to_string(&ps).unwrap_or_default());
                let p = potential_construct(&l, ps, spec.arity)?;
                Ok(Trial {
                    functional: p.functional,
                    relation: relation_for(p.predicted),
                    label,
                })
            })
        }
        Family::Schur | Family::Multiadd => {
            let l = FnLattice::nonneg(spec.ground_size, spec.chain_max)?;
            run_trials(&l, spec, seed, trials, opts, |i| {
                let mut rng = instance_rng(seed, i);
                let (functional, label): (Functional<FnElem, ExtScalar>, String) = match spec.family {
                    Family::Schur => schur_functional(&mut rng, &l, spec.arity)?,
                    _ => multiadd_functional(&mut rng, spec.ground_size, spec.arity)?,
                };
                Ok(Trial {
                    functional,
                    relation: Relation::Ge,
                    label,
                })
            })
        }
    }
}
