//! Functionals built from submodular, potential and multiadditive ingredients,
//! and checkers for the inequalities they imply.

pub mod corollaries;
pub mod multiadd;
pub mod potential;
pub mod schur;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FnElem;
use crate::scalar::{ext_sum, ConventionMode, ExtScalar, Rational};

/// Weighted counting measure on a finite ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Measure {
    pub weights: Vec<ExtScalar>,
    #[serde(default)]
    pub probability: bool,
}

impl Measure {
    pub fn new(weights: Vec<ExtScalar>) -> Result<Self> {
        let m = Measure {
            weights,
            probability: false,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn counting(size: usize) -> Self {
        Measure {
            weights: vec![ExtScalar::one(); size],
            probability: false,
        }
    }

    pub fn uniform(size: usize) -> Self {
        let w = Rational::new(1.into(), (size as i64).into());
        Measure {
            weights: vec![ExtScalar::Finite(w); size],
            probability: true,
        }
    }

    pub fn probability(weights: Vec<Rational>) -> Result<Self> {
        let m = Measure {
            weights: weights.into_iter().map(ExtScalar::Finite).collect(),
            probability: true,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.is_empty() {
            return Err(Error::input("measure needs at least one point"));
        }
        if self.weights.iter().any(ExtScalar::is_negative) {
            return Err(Error::input("measure weights must be nonnegative"));
        }
        if self.probability {
            if self.weights.iter().any(ExtScalar::is_inf) {
                return Err(Error::input("probability weights must be finite"));
            }
            if ext_sum(&self.weights) != ExtScalar::one() {
                return Err(Error::input("probability weights must sum to 1"));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> ExtScalar {
        ext_sum(&self.weights)
    }

    /// `Σ_s h(s) w(s)`, resolving `0 · ∞` by `mode`.
    pub fn integral(&self, h: &FnElem, mode: ConventionMode) -> Result<ExtScalar> {
        if h.len() != self.len() {
            return Err(Error::input(format!(
                "function on {} points integrated against a measure on {}",
                h.len(),
                self.len()
            )));
        }
        let mut acc = ExtScalar::zero();
        for (v, w) in h.values().iter().zip(&self.weights) {
            acc = acc.add(&v.mul(w, mode)?);
        }
        Ok(acc)
    }

    /// Integral of a finite function against finite weights.
    pub fn integral_finite(&self, h: &[Rational]) -> Result<Rational> {
        if h.len() != self.len() {
            return Err(Error::input("function and measure have different ground sizes"));
        }
        self.weights
            .iter()
            .zip(h)
            .try_fold(Rational::zero(), |acc, (w, v)| Ok(acc + w.expect_finite()? * v))
    }

    pub fn is_finite(&self) -> bool {
        !self.weights.iter().any(ExtScalar::is_inf)
    }
}

/// `x ≺ y`: equal totals, and every ascending partial sum of `x` dominates that of `y`.
pub fn majorizes(x: &[Rational], y: &[Rational]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::input("majorization needs vectors of equal length"));
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort();
    ys.sort();
    let (mut sx, mut sy) = (Rational::zero(), Rational::zero());
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sx < sy {
            return Ok(false);
        }
    }
    Ok(sx == sy)
}

/// `f ∖ g = f − f ∧ g`, pointwise.
pub fn fn_diff(f: &FnElem, g: &FnElem) -> Result<FnElem> {
    let m = f.min(g);
    f.values()
        .iter()
        .zip(m.values())
        .map(|(a, b)| match (a, b) {
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => Ok(ExtScalar::Finite(a - b)),
            (ExtScalar::Inf, ExtScalar::Finite(_)) => Ok(ExtScalar::Inf),
            _ => Err(Error::input("f ∖ g is undefined where both are infinite")),
        })
        .collect::<Result<Vec<_>>>()
        .map(FnElem)
}

pub(crate) fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&v(&[1, 1]), &v(&[2, 0])).unwrap());
        assert!(!majorizes(&v(&[2, 0]), &v(&[1, 1])).unwrap());
        assert!(majorizes(&v(&[3, 1, 2]), &v(&[2, 3, 1])).unwrap());
        assert!(!majorizes(&v(&[1, 1]), &v(&[1, 2])).unwrap());
        assert!(majorizes(&v(&[1]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn integral_conventions() {
        let mu = Measure::new(vec![ExtScalar::Inf, ExtScalar::from(2)]).unwrap();
        let h = FnElem::from_ints(&[0, 3]);
        assert_eq!(mu.integral(&h, ConventionMode::Zero).unwrap(), ExtScalar::from(6));
        assert_eq!(mu.integral(&h, ConventionMode::Inf).unwrap(), ExtScalar::Inf);
        assert!(Measure::probability(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(Measure::new(vec![ExtScalar::from(-1)]).is_err());
        assert_eq!(Measure::uniform(4).total(), ExtScalar::one());
    }

    #[test]
    fn measure_json_rejects_unknown_fields() {
        let ok: Measure = serde_json::from_str(r#"{"weights":[1,{"num":1,"den":2},"inf"]}"#).unwrap();
        assert_eq!(ok.weights[2], ExtScalar::Inf);
        assert!(serde_json::from_str::<Measure>(r#"{"weights":[1],"extra":0}"#).is_err());
    }

    #[test]
    fn set_difference() {
        let f = FnElem::from_ints(&[3, 1, 2]);
        let g = FnElem::from_ints(&[1, 2, 2]);
        assert_eq!(fn_diff(&f, &g).unwrap(), FnElem::from_ints(&[2, 0, 0]));
    }
}
