//! Seeded generators for test instances. Rationals use numerators and
//! denominators of at most 8.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::corollaries::Marginal;
use crate::constructions::multiadd::{multiadd_symmetric_sum, MultiadditiveSpec};
use crate::constructions::potential::{Curvature, Phi, PotentialSpec, Psi};
use crate::constructions::schur::{schur_construct, Aggregator, RelationG, SetFunctionSpec};
use crate::constructions::Measure;
use crate::error::Result;
use crate::lattice::{FnLattice, FnElem};
use crate::scalar::{rat, ExtScalar, Rational, Q};
use crate::semimod::Functional;

pub const MAX_PART: i64 = 8;

/// The generator for instance `i` of a run seeded with `seed`: one ChaCha
/// stream per instance, so instances are independent of scheduling.
pub fn instance_rng(seed: u64, instance: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance);
    rng
}

/// A nonnegative rational `p/q` with `p <= max_num`, `1 <= q <= 8`.
pub fn rational(rng: &mut impl Rng, max_num: i64) -> Rational {
    rat(rng.gen_range(0..=max_num), rng.gen_range(1..=MAX_PART))
}

pub fn positive_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(1..=MAX_PART), rng.gen_range(1..=MAX_PART))
}

/// A nonnegative extended value; `0` and `∞` each appear with probability `special`.
pub fn ext_value(rng: &mut impl Rng, special: f64) -> ExtScalar {
    let u: f64 = rng.gen();
    if u < special {
        ExtScalar::zero()
    } else if u < 2.0 * special {
        ExtScalar::Inf
    } else {
        ExtScalar::Finite(rational(rng, MAX_PART))
    }
}

pub fn fn_elem(rng: &mut impl Rng, size: usize, special: f64) -> FnElem {
    FnElem((0..size).map(|_| ext_value(rng, special)).collect())
}

pub fn finite_fn_elem(rng: &mut impl Rng, size: usize) -> FnElem {
    FnElem::from_rationals((0..size).map(|_| rational(rng, MAX_PART)))
}

/// A uniformly random element of a function lattice.
pub fn lattice_elem(rng: &mut impl Rng, l: &FnLattice) -> FnElem {
    FnElem((0..l.ground_size()).map(|_| l.chain().choose(rng).expect("nonempty chain").clone()).collect())
}

pub fn lattice_tuple(rng: &mut impl Rng, l: &FnLattice, n: usize) -> Vec<FnElem> {
    (0..n).map(|_| lattice_elem(rng, l)).collect()
}

/// Finite nonnegative weights, not all zero.
pub fn measure(rng: &mut impl Rng, size: usize) -> Measure {
    loop {
        let w: Vec<ExtScalar> = (0..size).map(|_| ExtScalar::Finite(rational(rng, MAX_PART))).collect();
        if w.iter().any(|x| !x.is_zero()) {
            return Measure::new(w).expect("nonnegative weights");
        }
    }
}

/// Weights that may include `0` and `∞`.
pub fn ext_measure(rng: &mut impl Rng, size: usize, special: f64) -> Measure {
    Measure::new((0..size).map(|_| ext_value(rng, special)).collect()).expect("nonnegative weights")
}

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rational(rng, MAX_PART)).collect())
        .collect()
}

/// A random variable with `support` distinct values and positive probabilities.
pub fn marginal(rng: &mut impl Rng, support: usize) -> Marginal {
    let mut values: Vec<Rational> = Vec::new();
    while values.len() < support {
        let v = rational(rng, MAX_PART);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    let raw: Vec<i64> = (0..support).map(|_| rng.gen_range(1..=MAX_PART)).collect();
    let total: i64 = raw.iter().sum();
    Marginal {
        values: values.into_iter().map(Q).collect(),
        probs: raw.into_iter().map(|p| Q(rat(p, total))).collect(),
    }
}

fn weights(rng: &mut impl Rng, size: usize) -> Vec<Q> {
    (0..size).map(|_| Q(rational(rng, 4))).collect()
}

/// A submodular nondecreasing set function on `size` points.
pub fn set_function(rng: &mut impl Rng, size: usize) -> SetFunctionSpec {
    match rng.gen_range(0..3) {
        0 => SetFunctionSpec::Additive { weights: weights(rng, size) },
        1 => SetFunctionSpec::CappedAdditive {
            weights: weights(rng, size),
            cap: Q(positive_rational(rng)),
        },
        _ => {
            let t_size = rng.gen_range(1..=3);
            let pairs = (0..size)
                .flat_map(|s| (0..t_size).map(move |t| (s, t)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            SetFunctionSpec::RelationImage {
                relation: RelationG { s_size: size, t_size, pairs },
                target_weights: weights(rng, t_size),
            }
        }
    }
}

pub fn aggregator(rng: &mut impl Rng, n: usize) -> Aggregator {
    match rng.gen_range(0..5) {
        0 => Aggregator::Sum,
        1 => Aggregator::Min,
        2 => Aggregator::Product,
        3 => Aggregator::Esym { k: rng.gen_range(1..=n) },
        _ => Aggregator::CappedSum { cap: Q(positive_rational(rng)) },
    }
}

/// A Schur-construction functional on `l`.
pub fn schur_functional(rng: &mut impl Rng, l: &FnLattice, n: usize) -> Result<(Functional<FnElem, ExtScalar>, String)> {
    let lambda_spec = set_function(rng, l.ground_size());
    let agg = aggregator(rng, n);
    let label = format!("schur {} {}", serde_json::to_string(&lambda_spec).unwrap_or_default(), serde_json::to_string(&agg).unwrap_or_default());
    let lambda = lambda_spec.build(l.ground_size())?;
    Ok((schur_construct(l, lambda, agg, n)?, label))
}

pub fn multiadd_spec(rng: &mut impl Rng, ground_size: usize, n: usize) -> MultiadditiveSpec {
    let arity = rng.gen_range(1..=n.min(3));
    match rng.gen_range(0..4) {
        0 => MultiadditiveSpec::ProductOfIntegrals {
            measures: (0..arity).map(|_| measure(rng, ground_size)).collect(),
        },
        1 => MultiadditiveSpec::IntegralOfProduct {
            arity,
            measure: measure(rng, ground_size),
        },
        2 => MultiadditiveSpec::ProductMeasure {
            arity,
            ground_size,
            weights: (0..ground_size.pow(arity as u32)).map(|_| Q(rational(rng, 3))).collect(),
        },
        _ => MultiadditiveSpec::CardOfProduct {
            arity,
            ground_size,
            tuples: (0..ground_size.pow(arity as u32))
                .filter(|_| rng.gen_bool(0.4))
                .map(|mut code| {
                    let mut t = vec![0; arity];
                    for slot in t.iter_mut().rev() {
                        *slot = code % ground_size;
                        code /= ground_size;
                    }
                    t
                })
                .collect(),
        },
    }
}

/// A symmetric sum of a multiadditive function.
pub fn multiadd_functional(rng: &mut impl Rng, ground_size: usize, n: usize) -> Result<(Functional<FnElem, ExtScalar>, String)> {
    let spec = multiadd_spec(rng, ground_size, n);
    let label = format!("multiadd {}", serde_json::to_string(&spec).unwrap_or_default());
    Ok((multiadd_symmetric_sum(&spec.build()?, n)?, label))
}

fn knots(rng: &mut impl Rng, slopes: &mut [i64], descending: bool) -> Vec<(Q, Q)> {
    slopes.sort();
    if descending {
        slopes.reverse();
    }
    let mut y = Rational::from_integer(0.into());
    let mut out = vec![(Q(rat(0, 1)), Q(y.clone()))];
    let mut x = 0;
    for s in slopes.iter() {
        let step = rng.gen_range(1..=3);
        x += step;
        y += rat(s * step, 1);
        out.push((Q(rat(x, 1)), Q(y.clone())));
    }
    out
}

/// A potential spec whose `ψ` has the requested curvature on `[0, ∞)`.
pub fn potential_spec(rng: &mut impl Rng, ground_size: usize, curvature: Curvature) -> PotentialSpec {
    let phi = match rng.gen_range(0..3) {
        0 => Phi::PositivePart,
        1 => Phi::Step {
            threshold: Q(rat(rng.gen_range(0..=1), 1)),
            low: Q(rat(0, 1)),
            high: Q(positive_rational(rng)),
        },
        _ => Phi::Table {
            knots: vec![
                (Q(rat(-1, 1)), Q(rat(0, 1))),
                (Q(rat(0, 1)), Q(rational(rng, 2))),
                (Q(rat(1, 1)), Q(rat(3, 1))),
            ],
        },
    };
    let mut slopes: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-2..=4)).collect();
    let psi = match (curvature, rng.gen_range(0..3)) {
        (Curvature::Convex, 0) => Psi::Square,
        (Curvature::Concave, 0) => Psi::Min { cap: Q(positive_rational(rng)) },
        (_, 1) => Psi::Identity,
        (Curvature::Convex, _) => Psi::PiecewiseLinear { knots: knots(rng, &mut slopes, false) },
        (Curvature::Concave, _) => Psi::PiecewiseLinear { knots: knots(rng, &mut slopes, true) },
    };
    PotentialSpec {
        phi,
        psi,
        curvature,
        measure: measure(rng, ground_size),
    }
}
