//! Product inequalities for integrals of order statistics: the independence
//! association inequality, monotone transforms, powers, and sup/inf.

use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Measure;
use crate::error::{Error, Result};
use crate::lattice::FnElem;
use crate::ordstats::pointwise_order_statistics;
use crate::report::Comparison;
use crate::scalar::{as_i64, ext_product, ConventionMode, ExtScalar, Rational, Q};

/// Tolerance for the floating-point mode used with non-integer exponents.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// A finitely supported nonnegative random variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Marginal {
    pub values: Vec<Q>,
    pub probs: Vec<Q>,
}

impl Marginal {
    fn validate(&self) -> Result<()> {
        if self.values.is_empty() || self.values.len() != self.probs.len() {
            return Err(Error::input("marginal needs matching nonempty values and probs"));
        }
        if self.values.iter().any(|v| v.0.is_negative()) {
            return Err(Error::input("random variables must be nonnegative"));
        }
        if self.probs.iter().any(|p| p.0.is_negative()) {
            return Err(Error::input("probabilities must be nonnegative"));
        }
        if self.probs.iter().map(|p| &p.0).sum::<Rational>() != Rational::one() {
            return Err(Error::input("probabilities must sum to 1"));
        }
        Ok(())
    }
}

/// The product space of independent marginals: the probability measure on the
/// outcomes and the coordinate functions `f_1, ..., f_n`.
pub fn product_space(marginals: &[Marginal]) -> Result<(Measure, Vec<FnElem>)> {
    if marginals.is_empty() {
        return Err(Error::input("at least one random variable is required"));
    }
    marginals.iter().try_for_each(Marginal::validate)?;
    let outcomes: Vec<Vec<usize>> = marginals
        .iter()
        .map(|m| 0..m.values.len())
        .multi_cartesian_product()
        .collect();
    let weights = outcomes
        .iter()
        .map(|o| o.iter().zip(marginals).map(|(&i, m)| m.probs[i].0.clone()).product())
        .collect();
    let coords = (0..marginals.len())
        .map(|j| FnElem::from_rationals(outcomes.iter().map(|o| marginals[j].values[o[j]].0.clone())))
        .collect();
    Ok((Measure::probability(weights)?, coords))
}

/// `μ(f_{n:1} ⋯ f_{n:n}) >= μ(f_{n:1}) ⋯ μ(f_{n:n})` for independent coordinates.
pub fn indep_association_check(marginals: &[Marginal]) -> Result<Comparison> {
    let (mu, f) = product_space(marginals)?;
    let ord = pointwise_order_statistics(&f)?;
    let mode = ConventionMode::Zero;
    let product_fn = FnElem(
        (0..mu.len())
            .map(|s| ext_product(ord.iter().map(|g| &g.0[s]), mode))
            .collect::<Result<_>>()?,
    );
    let lhs = mu.integral(&product_fn, mode)?;
    let ints = ord.iter().map(|g| mu.integral(g, mode)).collect::<Result<Vec<_>>>()?;
    let rhs = ext_product(&ints, mode)?;
    Ok(Comparison::exact_ge(lhs, rhs))
}

/// Monotone `ψ: [0, ∞] → [0, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MonotoneMap {
    Identity,
    /// `x^p` for a nonzero integer `p`, with `0^p = ∞` and `∞^p = 0` for `p < 0`.
    Power { p: i64 },
    /// Explicit table; every value met must be listed.
    Table { points: Vec<(ExtScalar, ExtScalar)> },
}

impl MonotoneMap {
    pub fn apply(&self, x: &ExtScalar) -> Result<ExtScalar> {
        match self {
            MonotoneMap::Identity => Ok(x.clone()),
            MonotoneMap::Power { p } => x.powi(*p),
            MonotoneMap::Table { points } => points
                .iter()
                .find(|(a, _)| a == x)
                .map(|(_, b)| b.clone())
                .ok_or_else(|| Error::input(format!("ψ is not tabulated at {x}"))),
        }
    }

    /// `Some(true)` if nondecreasing, `Some(false)` if nonincreasing (constant
    /// maps count as nondecreasing).
    pub fn direction(&self) -> Result<bool> {
        match self {
            MonotoneMap::Identity => Ok(true),
            MonotoneMap::Power { p } => match p.signum() {
                0 => Err(Error::input("power must be nonzero")),
                s => Ok(s > 0),
            },
            MonotoneMap::Table { points } => {
                if points.iter().any(|(a, b)| a.is_negative() || b.is_negative()) {
                    return Err(Error::input("ψ maps [0, ∞] to [0, ∞]"));
                }
                let mut sorted = points.clone();
                sorted.sort_by(|x, y| x.0.cmp(&y.0));
                if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::input("ψ table lists a point twice"));
                }
                let up = sorted.windows(2).all(|w| w[0].1 <= w[1].1);
                let down = sorted.windows(2).all(|w| w[0].1 >= w[1].1);
                match (up, down) {
                    (true, _) => Ok(true),
                    (false, true) => Ok(false),
                    _ => Err(Error::ConstructionRefused {
                        reason: "ψ is not monotone".into(),
                        witness: None,
                    }),
                }
            }
        }
    }

    fn compose(&self, f: &FnElem) -> Result<FnElem> {
        f.values().iter().map(|v| self.apply(v)).collect::<Result<Vec<_>>>().map(FnElem)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiCheck {
    pub comparison: Comparison,
    /// Whether the index rule for `(ψ∘f)_{n:j}` matched direct sorting.
    pub index_rule_agrees: bool,
}

/// `Π μ(ψ∘f_j) >= Π μ((ψ∘f)_{n:j})`, where `(ψ∘f)_{n:j}` is `ψ∘f_{n:j}` for
/// nondecreasing `ψ` and `ψ∘f_{n:n+1−j}` for nonincreasing `ψ`.
pub fn psi_transform_check(psi: &MonotoneMap, mu: &Measure, f: &[FnElem]) -> Result<PsiCheck> {
    mu.validate()?;
    if f.iter().any(|e| !e.is_nonnegative()) {
        return Err(Error::input("functions must be nonnegative"));
    }
    let increasing = psi.direction()?;
    let ord = pointwise_order_statistics(f)?;
    let mut by_rule = ord.iter().map(|g| psi.compose(g)).collect::<Result<Vec<_>>>()?;
    if !increasing {
        by_rule.reverse();
    }
    let transformed = f.iter().map(|g| psi.compose(g)).collect::<Result<Vec<_>>>()?;
    let direct = pointwise_order_statistics(&transformed)?;
    let mode = ConventionMode::Zero;
    let prod = |g: &[FnElem]| -> Result<ExtScalar> {
        let ints = g.iter().map(|h| mu.integral(h, mode)).collect::<Result<Vec<_>>>()?;
        ext_product(&ints, mode)
    };
    Ok(PsiCheck {
        comparison: Comparison::exact_ge(prod(&transformed)?, prod(&by_rule)?),
        index_rule_agrees: by_rule == direct,
    })
}

pub(crate) fn float_pow(x: f64, t: f64) -> f64 {
    if t < 0.0 && x == 0.0 {
        f64::INFINITY
    } else if t < 0.0 && x.is_infinite() {
        0.0
    } else {
        x.powf(t)
    }
}

pub(crate) fn float_product(xs: &[f64], mode: ConventionMode) -> f64 {
    let has_zero = xs.iter().any(|&x| x == 0.0);
    let has_inf = xs.iter().any(|x| x.is_infinite());
    if has_zero && has_inf {
        return match mode {
            ConventionMode::Zero => 0.0,
            ConventionMode::Inf => f64::INFINITY,
        };
    }
    xs.iter().product()
}

fn float_integral(h: &[f64], mu: &Measure, mode: ConventionMode) -> f64 {
    h.iter()
        .zip(&mu.weights)
        .map(|(&v, w)| float_product(&[v, w.to_f64()], mode))
        .sum()
}

/// `Π μ(f_j^p)^r` against `Π μ(f_{n:j}^p)^r`: `>=` for `r > 0` with `0·∞ := 0`,
/// `<=` for `r < 0` with `0·∞ := ∞`. Integer `p, r` run exactly; otherwise in
/// `f64` with [`FLOAT_TOLERANCE`].
pub fn power_inequality_check(p: &Rational, r: &Rational, mu: &Measure, f: &[FnElem]) -> Result<Comparison> {
    if p.is_zero() || r.is_zero() {
        return Err(Error::input("p and r must be nonzero"));
    }
    mu.validate()?;
    if f.iter().any(|e| !e.is_nonnegative()) {
        return Err(Error::input("functions must be nonnegative"));
    }
    let positive = r.is_positive();
    let mode = if positive { ConventionMode::Zero } else { ConventionMode::Inf };
    let ord = pointwise_order_statistics(f)?;
    match (as_i64(p), as_i64(r)) {
        (Some(pi), Some(ri)) => {
            let side = |g: &[FnElem]| -> Result<ExtScalar> {
                let terms = g
                    .iter()
                    .map(|h| {
                        let hp = MonotoneMap::Power { p: pi }.compose(h)?;
                        mu.integral(&hp, mode)?.powi(ri)
                    })
                    .collect::<Result<Vec<_>>>()?;
                ext_product(&terms, mode)
            };
            let (lhs, rhs) = (side(f)?, side(&ord)?);
            Ok(if positive {
                Comparison::exact_ge(lhs, rhs)
            } else {
                Comparison::exact_le(lhs, rhs)
            })
        }
        _ => {
            let (pf, rf) = (p.to_f64().unwrap_or(f64::NAN), r.to_f64().unwrap_or(f64::NAN));
            let side = |g: &[FnElem]| -> f64 {
                let terms: Vec<f64> = g
                    .iter()
                    .map(|h| {
                        let hp: Vec<f64> = h.values().iter().map(|v| float_pow(v.to_f64(), pf)).collect();
                        float_pow(float_integral(&hp, mu, mode), rf)
                    })
                    .collect();
                float_product(&terms, mode)
            };
            let (lhs, rhs) = (side(f), side(&ord));
            Ok(if positive {
                Comparison::float_ge(lhs, rhs, FLOAT_TOLERANCE)
            } else {
                Comparison::float_le(lhs, rhs, FLOAT_TOLERANCE)
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupInfCheck {
    pub sup: Comparison,
    pub inf: Comparison,
}

impl SupInfCheck {
    pub fn holds(&self) -> bool {
        self.sup.holds && self.inf.holds
    }
}

/// `Π sup f_j >= Π sup f_{n:j}` with `0·∞ := 0`, and `Π inf f_j <= Π inf f_{n:j}`
/// with `0·∞ := ∞`.
pub fn supinf_check(f: &[FnElem]) -> Result<SupInfCheck> {
    if f.iter().any(|e| !e.is_nonnegative() || e.is_empty()) {
        return Err(Error::input("functions must be nonnegative and defined on a nonempty set"));
    }
    let ord = pointwise_order_statistics(f)?;
    let sups = |g: &[FnElem]| g.iter().map(|h| h.values().iter().max().expect("nonempty").clone()).collect::<Vec<_>>();
    let infs = |g: &[FnElem]| g.iter().map(|h| h.values().iter().min().expect("nonempty").clone()).collect::<Vec<_>>();
    Ok(SupInfCheck {
        sup: Comparison::exact_ge(
            ext_product(&sups(f), ConventionMode::Zero)?,
            ext_product(&sups(&ord), ConventionMode::Zero)?,
        ),
        inf: Comparison::exact_le(
            ext_product(&infs(f), ConventionMode::Inf)?,
            ext_product(&infs(&ord), ConventionMode::Inf)?,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Sides;
    use crate::scalar::{int, rat};

    fn coin() -> Marginal {
        Marginal {
            values: vec![Q(int(0)), Q(int(1))],
            probs: vec![Q(rat(1, 2)), Q(rat(1, 2))],
        }
    }

    #[test]
    fn fair_coins() {
        let c = indep_association_check(&[coin(), coin()]).unwrap();
        assert_eq!(
            c.sides,
            Sides::Exact {
                lhs: ExtScalar::Finite(rat(1, 4)),
                rhs: ExtScalar::Finite(rat(3, 16))
            }
        );
        assert!(c.holds);
    }

    #[test]
    fn uniform_two_point_triple_by_enumeration() {
        let u = Marginal {
            values: vec![Q(int(1)), Q(int(2))],
            probs: vec![Q(rat(1, 2)), Q(rat(1, 2))],
        };
        let c = indep_association_check(&[u.clone(), u.clone(), u]).unwrap();
        // 8 outcomes; sorted products: 1 (once), 2 (three times), 4 (three times), 8 (once)
        let lhs = rat(1 + 3 * 2 + 3 * 4 + 8, 8);
        // E[min] = 1 + 1/8, E[mid] = 1 + 1/2, E[max] = 2 − 1/8
        let rhs = rat(9, 8) * rat(3, 2) * rat(15, 8);
        assert_eq!(c.sides, Sides::Exact { lhs: ExtScalar::Finite(lhs), rhs: ExtScalar::Finite(rhs) });
        assert!(c.holds);
        let constant = Marginal {
            values: vec![Q(int(3))],
            probs: vec![Q(int(1))],
        };
        assert!(indep_association_check(&[constant.clone(), constant]).unwrap().equality);
    }

    #[test]
    fn power_examples() {
        let f = [FnElem::from_ints(&[1, 0]), FnElem::from_ints(&[0, 1])];
        let mu = Measure::counting(2);
        let c = power_inequality_check(&int(1), &int(-1), &mu, &f).unwrap();
        assert_eq!(c.sides, Sides::Exact { lhs: ExtScalar::one(), rhs: ExtScalar::Inf });
        assert!(c.holds);
        let c = power_inequality_check(&int(1), &int(1), &mu, &f).unwrap();
        assert!(c.holds);
        let c = power_inequality_check(&rat(1, 2), &rat(-3, 2), &mu, &f).unwrap();
        assert!(c.holds);
        assert!(matches!(c.sides, Sides::Float { .. }));
        assert!(power_inequality_check(&int(0), &int(1), &mu, &f).is_err());
    }

    #[test]
    fn sup_inf_hand_example() {
        let f = [FnElem::from_ints(&[1, 0]), FnElem::from_ints(&[0, 1])];
        let c = supinf_check(&f).unwrap();
        assert_eq!(c.sup.sides, Sides::Exact { lhs: ExtScalar::one(), rhs: ExtScalar::zero() });
        assert_eq!(c.inf.sides, Sides::Exact { lhs: ExtScalar::zero(), rhs: ExtScalar::zero() });
        assert!(c.holds());
        let with_inf = [FnElem(vec![ExtScalar::Inf, ExtScalar::zero()]), FnElem::from_ints(&[2, 3])];
        assert!(supinf_check(&with_inf).unwrap().holds());
    }

    #[test]
    fn psi_direction_and_index_rule() {
        let f = [FnElem::from_ints(&[1, 3]), FnElem::from_ints(&[2, 0])];
        let mu = Measure::counting(2);
        let sq = psi_transform_check(&MonotoneMap::Power { p: 2 }, &mu, &f).unwrap();
        assert!(sq.comparison.holds && sq.index_rule_agrees);
        let inv = psi_transform_check(&MonotoneMap::Power { p: -1 }, &mu, &f).unwrap();
        assert!(inv.comparison.holds && inv.index_rule_agrees);
        let id = psi_transform_check(&MonotoneMap::Identity, &mu, &f).unwrap();
        let prod = crate::constructions::multiadd::esym_orderstat_check(&mu, &f, 2).unwrap();
        assert_eq!(id.comparison.sides, prod.sides);
        let bumpy = MonotoneMap::Table {
            points: vec![
                (ExtScalar::from(0), ExtScalar::from(1)),
                (ExtScalar::from(1), ExtScalar::from(0)),
                (ExtScalar::from(2), ExtScalar::from(2)),
            ],
        };
        assert!(bumpy.direction().is_err());
    }
}
