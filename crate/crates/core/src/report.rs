//! Verification outcomes and the deterministic scan driver shared by all checkers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::ExtScalar;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReportMode {
    Exhaustive,
    Sampled { seed: u64 },
}

/// A failing instance: the tuple and both compared values, fully materialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tuple: Vec<Value>,
    pub lhs: Value,
    pub rhs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub holds: bool,
    pub instances_checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub mode: ReportMode,
}

impl CheckReport {
    pub fn pass(instances_checked: u64, mode: ReportMode) -> Self {
        CheckReport {
            holds: true,
            instances_checked,
            witness: None,
            mode,
        }
    }

    pub fn from_scan(instances_checked: u64, mode: ReportMode, first: Option<Witness>) -> Self {
        CheckReport {
            holds: first.is_none(),
            instances_checked,
            witness: first,
            mode,
        }
    }

    /// Merges reports of sub-checks run in sequence; the earliest witness wins.
    pub fn merge(reports: impl IntoIterator<Item = CheckReport>, mode: ReportMode) -> Self {
        let mut out = CheckReport::pass(0, mode);
        for r in reports {
            out.instances_checked += r.instances_checked;
            if out.witness.is_none() && r.witness.is_some() {
                out.witness = r.witness;
                out.holds = false;
            }
        }
        out
    }
}

/// How an exhaustive-or-sampled scan should be run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, samples: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub mode: Mode,
    pub budget: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mode: Mode::Exhaustive,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl CheckOptions {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn sampled(seed: u64, samples: u64) -> Self {
        CheckOptions {
            mode: Mode::Sampled { seed, samples },
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn report_mode(&self) -> ReportMode {
        match self.mode {
            Mode::Exhaustive => ReportMode::Exhaustive,
            Mode::Sampled { seed, .. } => ReportMode::Sampled { seed },
        }
    }

    pub(crate) fn ensure_within_budget(&self, needed: u128) -> Result<()> {
        if needed > self.budget as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

/// Runs `check` over `0..total` in parallel and returns the failure with the
/// smallest index, so the result does not depend on scheduling.
pub(crate) fn first_failure<W: Send>(
    total: u64,
    check: impl Fn(u64) -> Option<W> + Sync + Send,
) -> Option<(u64, W)> {
    (0..total)
        .into_par_iter()
        .filter_map(|i| check(i).map(|w| (i, w)))
        .min_by_key(|(i, _)| *i)
}

/// Like [`first_failure`] but instances may be skipped (precondition not met);
/// returns the number of instances actually checked.
pub(crate) fn scan_counted<W: Send>(
    total: u64,
    check: impl Fn(u64) -> Instance<W> + Sync + Send,
) -> (u64, Option<(u64, W)>) {
    (0..total)
        .into_par_iter()
        .map(|i| match check(i) {
            Instance::Skipped => (0, None),
            Instance::Passed => (1, None),
            Instance::Failed(w) => (1, Some((i, w))),
        })
        .reduce(
            || (0, None),
            |(ca, wa), (cb, wb)| {
                let w = match (wa, wb) {
                    (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
                    (a, b) => a.or(b),
                };
                (ca + cb, w)
            },
        )
}

pub(crate) enum Instance<W> {
    Skipped,
    Passed,
    Failed(W),
}

/// Two exact or approximate sides of one inequality instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "arithmetic", rename_all = "lowercase")]
pub enum Sides {
    Exact { lhs: ExtScalar, rhs: ExtScalar },
    Float { lhs: f64, rhs: f64, tolerance: f64 },
}

/// Outcome of a single-instance inequality: `lhs <relation> rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub relation: String,
    pub holds: bool,
    pub equality: bool,
    pub sides: Sides,
}

impl Comparison {
    pub fn exact_ge(lhs: ExtScalar, rhs: ExtScalar) -> Self {
        Comparison {
            relation: ">=".into(),
            holds: lhs >= rhs,
            equality: lhs == rhs,
            sides: Sides::Exact { lhs, rhs },
        }
    }

    pub fn exact_le(lhs: ExtScalar, rhs: ExtScalar) -> Self {
        Comparison {
            relation: "<=".into(),
            holds: lhs <= rhs,
            equality: lhs == rhs,
            sides: Sides::Exact { lhs, rhs },
        }
    }

    /// `lhs >= rhs` within a mixed relative/absolute tolerance.
    pub fn float_ge(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let scale = 1.0_f64.max(lhs.abs()).max(rhs.abs());
        let holds = lhs == rhs || lhs >= rhs - tolerance * scale;
        Comparison {
            relation: ">=".into(),
            holds,
            equality: (lhs == rhs) || (lhs - rhs).abs() <= tolerance * scale,
            sides: Sides::Float { lhs, rhs, tolerance },
        }
    }

    pub fn float_le(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let mut c = Comparison::float_ge(rhs, lhs, tolerance);
        c.relation = "<=".into();
        c.sides = Sides::Float { lhs, rhs, tolerance };
        c
    }

    pub fn into_report(self, tuple: Vec<Value>) -> CheckReport {
        let witness = (!self.holds).then(|| {
            let (lhs, rhs) = match &self.sides {
                Sides::Exact { lhs, rhs } => (to_value(lhs), to_value(rhs)),
                Sides::Float { lhs, rhs, .. } => (Value::from(*lhs), Value::from(*rhs)),
            };
            Witness {
                tuple,
                lhs,
                rhs,
                note: Some(format!("expected lhs {} rhs", self.relation)),
            }
        });
        CheckReport::from_scan(1, ReportMode::Exhaustive, witness)
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values are always serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_smallest_index() {
        let hit = first_failure(10_000, |i| (i % 777 == 776).then_some(i));
        assert_eq!(hit, Some((776, 776)));
        assert_eq!(first_failure(100, |_| None::<()>), None);
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = CheckReport::from_scan(
            3,
            ReportMode::Sampled { seed: 9 },
            Some(Witness {
                tuple: vec![Value::from(1)],
                lhs: Value::from(2),
                rhs: Value::from(3),
                note: None,
            }),
        );
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CheckReport>(&s).unwrap(), r);
        assert!(!r.holds);
    }

    #[test]
    fn budget_guard() {
        let o = CheckOptions::exhaustive().with_budget(10);
        assert!(o.ensure_within_budget(10).is_ok());
        assert!(matches!(o.ensure_within_budget(11), Err(Error::BudgetExceeded { .. })));
    }
}
