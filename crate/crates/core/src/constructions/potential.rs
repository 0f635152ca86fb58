//! One-sided potentials `Λ(f) = Σ_{j,k} Ψ(f_j − f_k)` with
//! `Ψ(g) = ψ(∫ φ∘g dμ) − ψ(∫ φ∘0 dμ)`.
//!
//! The direction follows from the curvature of `ψ`: the two integrals entering
//! `Ψ(g) + Ψ(−g)` keep their sum and spread apart when `g` is replaced by its
//! sorted counterpart, so concave `ψ` yields the `>=` direction and convex `ψ`
//! yields `<=`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Measure;
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, FnElem, FnLattice};
use crate::report::{first_failure, to_value, CheckOptions, CheckReport, ReportMode, Witness};
use crate::scalar::{ExtScalar, Rational, Q};
use crate::semimod::{check_generalized_nk, Functional, Relation};

fn piecewise_linear(knots: &[(Q, Q)], u: &Rational, extend_linearly: bool) -> Rational {
    let first = &knots[0];
    let last = &knots[knots.len() - 1];
    let segment = |a: &(Q, Q), b: &(Q, Q)| {
        let slope = (&b.1 .0 - &a.1 .0) / (&b.0 .0 - &a.0 .0);
        &a.1 .0 + slope * (u - &a.0 .0)
    };
    if *u <= first.0 .0 {
        return if extend_linearly && knots.len() > 1 {
            segment(first, &knots[1])
        } else {
            first.1 .0.clone()
        };
    }
    if *u >= last.0 .0 {
        return if extend_linearly && knots.len() > 1 {
            segment(&knots[knots.len() - 2], last)
        } else {
            last.1 .0.clone()
        };
    }
    let i = knots.partition_point(|k| k.0 .0 <= *u);
    segment(&knots[i - 1], &knots[i])
}

fn check_knots(knots: &[(Q, Q)]) -> Result<()> {
    if knots.is_empty() {
        return Err(Error::input("at least one knot is required"));
    }
    if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::input("knot abscissae must be strictly increasing"));
    }
    Ok(())
}

/// Monotone `φ: Q → [0, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Phi {
    /// `max(u, 0)`
    PositivePart,
    /// `max(−u, 0)`
    NegativePart,
    /// `low` for `u < threshold`, `high` otherwise.
    Step { threshold: Q, low: Q, high: Q },
    /// Linear interpolation between knots, constant outside.
    Table { knots: Vec<(Q, Q)> },
}

impl Phi {
    pub fn eval(&self, u: &Rational) -> Rational {
        match self {
            Phi::PositivePart => u.clone().max(Rational::zero()),
            Phi::NegativePart => (-u).max(Rational::zero()),
            Phi::Step { threshold, low, high } => {
                if *u < threshold.0 {
                    low.0.clone()
                } else {
                    high.0.clone()
                }
            }
            Phi::Table { knots } => piecewise_linear(knots, u, false),
        }
    }

    /// Checks nonnegativity and monotonicity (either direction) on the knots.
    pub fn validate(&self) -> Result<()> {
        let values: Vec<Rational> = match self {
            Phi::PositivePart | Phi::NegativePart => return Ok(()),
            Phi::Step { low, high, .. } => vec![low.0.clone(), high.0.clone()],
            Phi::Table { knots } => {
                check_knots(knots)?;
                knots.iter().map(|k| k.1 .0.clone()).collect()
            }
        };
        if values.iter().any(Signed::is_negative) {
            return Err(Error::input("φ must be nonnegative"));
        }
        let up = values.windows(2).all(|w| w[0] <= w[1]);
        let down = values.windows(2).all(|w| w[0] >= w[1]);
        if !(up || down) {
            return Err(Error::ConstructionRefused {
                reason: "φ is not monotone".into(),
                witness: Some(to_value(&values.into_iter().map(Q).collect::<Vec<_>>())),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Curvature {
    Concave,
    Convex,
}

impl Curvature {
    /// The relation the construction satisfies for this curvature.
    pub fn predicted(self) -> Direction {
        match self {
            Curvature::Concave => Direction::Submodular,
            Curvature::Convex => Direction::Supermodular,
        }
    }
}

/// `ψ` on `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Psi {
    Identity,
    Negate,
    Square,
    /// `min(x, cap)`
    Min { cap: Q },
    /// Linear interpolation between knots, extended linearly.
    PiecewiseLinear { knots: Vec<(Q, Q)> },
}

impl Psi {
    pub fn eval(&self, x: &Rational) -> Rational {
        match self {
            Psi::Identity => x.clone(),
            Psi::Negate => -x,
            Psi::Square => x * x,
            Psi::Min { cap } => x.clone().min(cap.0.clone()),
            Psi::PiecewiseLinear { knots } => piecewise_linear(knots, x, true),
        }
    }

    fn knot_points(&self) -> Vec<Rational> {
        match self {
            Psi::PiecewiseLinear { knots } => knots.iter().map(|k| k.0 .0.clone()).collect(),
            Psi::Min { cap } => vec![cap.0.clone()],
            _ => vec![],
        }
    }

    /// Second-difference test on `domain` (plus any knots): slopes of consecutive
    /// points must be nonincreasing for concave, nondecreasing for convex.
    pub fn check_curvature(&self, curvature: Curvature, domain: &[Rational]) -> Result<CheckReport> {
        if let Psi::PiecewiseLinear { knots } = self {
            check_knots(knots)?;
        }
        let points: Vec<Rational> = domain
            .iter()
            .cloned()
            .chain(self.knot_points().into_iter().filter(|x| !x.is_negative()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let slope = |a: &Rational, b: &Rational| (self.eval(b) - self.eval(a)) / (b - a);
        let triples = points.len().saturating_sub(2);
        for i in 0..triples {
            let (a, b, c) = (&points[i], &points[i + 1], &points[i + 2]);
            let (s1, s2) = (slope(a, b), slope(b, c));
            let ok = match curvature {
                Curvature::Concave => s1 >= s2,
                Curvature::Convex => s1 <= s2,
            };
            if !ok {
                let w = Witness {
                    tuple: vec![to_value(&Q(a.clone())), to_value(&Q(b.clone())), to_value(&Q(c.clone()))],
                    lhs: to_value(&Q(s1)),
                    rhs: to_value(&Q(s2)),
                    note: Some(format!("consecutive slopes contradict {curvature:?}")),
                };
                return Ok(CheckReport::from_scan(i as u64 + 1, ReportMode::Exhaustive, Some(w)));
            }
        }
        Ok(CheckReport::pass(triples as u64, ReportMode::Exhaustive))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSpec {
    pub phi: Phi,
    pub psi: Psi,
    pub curvature: Curvature,
    pub measure: Measure,
}

/// Evaluates `Ψ` and `Ψ̃` for a validated spec.
#[derive(Clone, Debug)]
pub struct PotentialEval {
    spec: PotentialSpec,
    weights: Vec<Rational>,
    offset: Rational,
}

impl PotentialEval {
    pub fn new(spec: PotentialSpec) -> Result<Self> {
        spec.phi.validate()?;
        spec.measure.validate()?;
        let weights = spec
            .measure
            .weights
            .iter()
            .map(|w| w.expect_finite().cloned())
            .collect::<Result<Vec<_>>>()?;
        let phi0 = spec.phi.eval(&Rational::zero());
        let offset = spec.psi.eval(&(weights.iter().sum::<Rational>() * phi0));
        Ok(PotentialEval {
            spec,
            weights,
            offset,
        })
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    /// `∫ φ∘g dμ`
    pub fn integral(&self, g: &[Rational]) -> Rational {
        g.iter()
            .zip(&self.weights)
            .map(|(v, w)| w * self.spec.phi.eval(v))
            .sum()
    }

    /// `Ψ(g)`, normalized so that `Ψ(0) = 0`.
    pub fn psi_of(&self, g: &[Rational]) -> Rational {
        self.spec.psi.eval(&self.integral(g)) - &self.offset
    }

    /// `Ψ̃(g) = Ψ(g) + Ψ(−g)`
    pub fn psi_tilde(&self, g: &[Rational]) -> Rational {
        let neg: Vec<Rational> = g.iter().map(|v| -v).collect();
        self.psi_of(g) + self.psi_of(&neg)
    }

    pub fn lambda(&self, f: &[Vec<Rational>]) -> Rational {
        let mut total = Rational::zero();
        for (j, fj) in f.iter().enumerate() {
            for (k, fk) in f.iter().enumerate() {
                if j != k {
                    let diff: Vec<Rational> = fj.iter().zip(fk).map(|(a, b)| a - b).collect();
                    total += self.psi_of(&diff);
                }
            }
        }
        total
    }
}

/// Direction realized by an (n:2) scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Submodular,
    Supermodular,
    Modular,
    Neither,
}

impl Direction {
    pub fn from_checks(ge: bool, le: bool) -> Self {
        match (ge, le) {
            (true, true) => Direction::Modular,
            (true, false) => Direction::Submodular,
            (false, true) => Direction::Supermodular,
            (false, false) => Direction::Neither,
        }
    }

    /// Whether the realized direction is compatible with a predicted one.
    pub fn consistent_with(self, predicted: Direction) -> bool {
        self == predicted || self == Direction::Modular
    }
}

pub struct Potential {
    pub functional: Functional<FnElem, ExtScalar>,
    pub eval: Arc<PotentialEval>,
    pub predicted: Direction,
    pub curvature_report: CheckReport,
}

fn finite_elements(l: &FnLattice) -> Result<Vec<Vec<Rational>>> {
    l.elements().iter().map(FnElem::finite_values).collect()
}

/// All values `∫ φ∘(f − g) dμ` over pairs of carrier elements.
fn integral_domain(l: &FnLattice, eval: &PotentialEval) -> Result<Vec<Rational>> {
    let elems = finite_elements(l)?;
    let mut out = BTreeSet::new();
    for f in &elems {
        for g in &elems {
            let d: Vec<Rational> = f.iter().zip(g).map(|(a, b)| a - b).collect();
            out.insert(eval.integral(&d));
        }
    }
    Ok(out.into_iter().collect())
}

/// Builds `Λ_{φ,ψ}` on `l` after checking `φ` and the stated curvature of `ψ`
/// on every integral value the carrier can produce.
pub fn potential_construct(l: &FnLattice, spec: PotentialSpec, n: usize) -> Result<Potential> {
    if n == 0 {
        return Err(Error::input("arity must be at least 1"));
    }
    if spec.measure.len() != l.ground_size() {
        return Err(Error::input("measure and carrier have different ground sizes"));
    }
    let eval = Arc::new(PotentialEval::new(spec)?);
    let domain = integral_domain(l, &eval)?;
    let curvature = eval.spec.curvature;
    let report = eval.spec.psi.check_curvature(curvature, &domain)?;
    if !report.holds {
        return Err(Error::ConstructionRefused {
            reason: format!("ψ is not {curvature:?} on the reachable integrals"),
            witness: report.witness.map(|w| to_value(&w)),
        });
    }
    let e = Arc::clone(&eval);
    let functional = Functional::new(n, "potential", move |f: &[FnElem]| {
        let rows: Vec<Vec<Rational>> = f
            .iter()
            .map(|x| x.finite_values().expect("carrier values are finite"))
            .collect();
        ExtScalar::Finite(e.lambda(&rows))
    });
    Ok(Potential {
        functional,
        eval,
        predicted: curvature.predicted(),
        curvature_report: report,
    })
}

/// Runs the (n:2) scan in both directions and classifies the outcome.
pub fn realized_direction(
    l: &FnLattice,
    lambda: &Functional<FnElem, ExtScalar>,
    opts: &CheckOptions,
) -> Result<(Direction, CheckReport, CheckReport)> {
    let ge = check_generalized_nk(l, lambda, 2, &Relation::Ge, opts)?;
    let le = check_generalized_nk(l, lambda, 2, &Relation::Le, opts)?;
    Ok((Direction::from_checks(ge.holds, le.holds), ge, le))
}

/// `Ψ̃(f_1 − f_2)` against `Ψ̃(|f_1 − f_2|)` over all carrier pairs: `<=` for
/// convex `ψ`, `>=` for concave.
pub fn check_sorted_pair_inequality(l: &FnLattice, eval: &PotentialEval) -> Result<CheckReport> {
    let elems = finite_elements(l)?;
    let m = elems.len() as u64;
    let convex = eval.spec.curvature == Curvature::Convex;
    let hit = first_failure(m * m, |i| {
        let (f1, f2) = (&elems[(i / m) as usize], &elems[(i % m) as usize]);
        let d: Vec<Rational> = f1.iter().zip(f2).map(|(a, b)| a - b).collect();
        let abs: Vec<Rational> = d.iter().map(Signed::abs).collect();
        let (lhs, rhs) = (eval.psi_tilde(&d), eval.psi_tilde(&abs));
        let ok = if convex { lhs <= rhs } else { lhs >= rhs };
        (!ok).then(|| Witness {
            tuple: vec![to_value(&f1.iter().cloned().map(Q).collect::<Vec<_>>()), to_value(&f2.iter().cloned().map(Q).collect::<Vec<_>>())],
            lhs: to_value(&Q(lhs)),
            rhs: to_value(&Q(rhs)),
            note: Some("Ψ̃(f1 − f2) vs Ψ̃(|f1 − f2|)".into()),
        })
    });
    Ok(CheckReport::from_scan(m * m, ReportMode::Exhaustive, hit.map(|(_, w)| w)))
}
