//! `Λ(f) = F(λ(f_1), ..., λ(f_n))` for submodular nondecreasing `λ` and a
//! nondecreasing Schur-concave `F`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::majorizes;
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, FnElem};
use crate::report::{first_failure, to_value, CheckReport, ReportMode, Witness};
use crate::scalar::{rat, ExtScalar, Rational, Q};
use crate::semimod::Functional;

pub type UnaryFn<E> = Arc<dyn Fn(&E) -> Rational + Send + Sync>;

/// A relation `G ⊆ S × T` between two finite index sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationG {
    pub s_size: usize,
    pub t_size: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl RelationG {
    pub fn validate(&self) -> Result<()> {
        if let Some(&(s, t)) = self.pairs.iter().find(|&&(s, t)| s >= self.s_size || t >= self.t_size) {
            return Err(Error::input(format!(
                "pair ({s}, {t}) outside {}×{}",
                self.s_size, self.t_size
            )));
        }
        Ok(())
    }

    /// `G(A) = {t : (s, t) ∈ G for some s ∈ A}`.
    pub fn image(&self, a: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.pairs
            .iter()
            .filter(|(s, _)| a.contains(s))
            .map(|&(_, t)| t)
            .collect()
    }
}

/// `λ(f) = Σ_t μ_T(t) · max_{(s,t) ∈ G} f(s)` (empty maxima count as 0).
/// On 0/1 functions this is `A ↦ μ_T(G(A))`.
pub fn relation_image_measure(g: &RelationG, mu_t: &[Rational]) -> Result<UnaryFn<FnElem>> {
    g.validate()?;
    if mu_t.len() != g.t_size {
        return Err(Error::input("target weights must cover T"));
    }
    if mu_t.iter().any(|w| *w < Rational::zero()) {
        return Err(Error::input("target weights must be nonnegative"));
    }
    let mut preimages = vec![Vec::new(); g.t_size];
    for &(s, t) in &g.pairs {
        preimages[t].push(s);
    }
    let weights = mu_t.to_vec();
    let s_size = g.s_size;
    Ok(Arc::new(move |f: &FnElem| {
        assert_eq!(f.len(), s_size, "function must live on S");
        preimages
            .iter()
            .zip(&weights)
            .filter_map(|(pre, w)| {
                pre.iter()
                    .map(|&s| f.0[s].finite().expect("finite values").clone())
                    .max()
                    .map(|m| w * m)
            })
            .sum()
    }))
}

/// Serializable choices for `λ` on a function lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetFunctionSpec {
    /// `Σ_s w_s f(s)` (modular)
    Additive { weights: Vec<Q> },
    /// `min(cap, Σ_s w_s f(s))`
    CappedAdditive { weights: Vec<Q>, cap: Q },
    /// see [`relation_image_measure`]
    RelationImage { relation: RelationG, target_weights: Vec<Q> },
}

impl SetFunctionSpec {
    pub fn build(&self, ground_size: usize) -> Result<UnaryFn<FnElem>> {
        let linear = |weights: &[Q]| -> Result<Vec<Rational>> {
            if weights.len() != ground_size {
                return Err(Error::input(format!(
                    "expected {ground_size} weights, got {}",
                    weights.len()
                )));
            }
            Ok(weights.iter().map(|q| q.0.clone()).collect())
        };
        let dot = |w: &[Rational], f: &FnElem| -> Rational {
            w.iter()
                .zip(f.values())
                .map(|(w, v)| w * v.finite().expect("finite values"))
                .sum()
        };
        Ok(match self {
            SetFunctionSpec::Additive { weights } => {
                let w = linear(weights)?;
                Arc::new(move |f: &FnElem| dot(&w, f))
            }
            SetFunctionSpec::CappedAdditive { weights, cap } => {
                let w = linear(weights)?;
                let cap = cap.0.clone();
                Arc::new(move |f: &FnElem| dot(&w, f).min(cap.clone()))
            }
            SetFunctionSpec::RelationImage {
                relation,
                target_weights,
            } => {
                if relation.s_size != ground_size {
                    return Err(Error::input("relation source size must equal the ground size"));
                }
                let w: Vec<Rational> = target_weights.iter().map(|q| q.0.clone()).collect();
                relation_image_measure(relation, &w)?
            }
        })
    }
}

/// Nondecreasing Schur-concave aggregators `F: R^n → R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Aggregator {
    Sum,
    Min,
    /// Product; nondecreasing and Schur-concave on nonnegative inputs only.
    Product,
    /// Elementary symmetric polynomial `e_k`, on nonnegative inputs.
    Esym { k: usize },
    /// `min(cap, Σ x_i)`
    CappedSum { cap: Q },
}

impl Aggregator {
    pub fn apply(&self, x: &[Rational]) -> Rational {
        match self {
            Aggregator::Sum => x.iter().sum(),
            Aggregator::Min => x.iter().min().cloned().unwrap_or_else(Rational::zero),
            Aggregator::Product => x.iter().product(),
            Aggregator::Esym { k } => esym_rational(*k, x),
            Aggregator::CappedSum { cap } => x.iter().sum::<Rational>().min(cap.0.clone()),
        }
    }
}

/// `e_k` of finite values by the standard recurrence.
pub(crate) fn esym_rational(k: usize, x: &[Rational]) -> Rational {
    let mut e = vec![Rational::zero(); k + 1];
    e[0] = Rational::one();
    for v in x {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * v;
            e[j] += add;
        }
    }
    e[k].clone()
}

/// Exhaustive pair check of `λ(a∧b) + λ(a∨b) <= λ(a) + λ(b)`.
pub fn check_submodular<L: FiniteLattice>(l: &L, lambda: &UnaryFn<L::Elem>) -> CheckReport {
    let elems = l.elements();
    let values: Vec<Rational> = elems.iter().map(|e| lambda(e)).collect();
    let n = elems.len() as u64;
    let hit = first_failure(n * n, |i| {
        let (a, b) = ((i / n) as usize, (i % n) as usize);
        let lhs = lambda(&l.meet(&elems[a], &elems[b])) + lambda(&l.join(&elems[a], &elems[b]));
        let rhs = &values[a] + &values[b];
        (lhs > rhs).then(|| Witness {
            tuple: vec![l.describe(&elems[a]), l.describe(&elems[b])],
            lhs: to_value(&ExtScalar::Finite(lhs)),
            rhs: to_value(&ExtScalar::Finite(rhs)),
            note: Some("λ(a∧b) + λ(a∨b) > λ(a) + λ(b)".into()),
        })
    });
    CheckReport::from_scan(n * n, ReportMode::Exhaustive, hit.map(|(_, w)| w))
}

/// Exhaustive check that `a <= b` implies `λ(a) <= λ(b)`.
pub fn check_nondecreasing<L: FiniteLattice>(l: &L, lambda: &UnaryFn<L::Elem>) -> CheckReport {
    let elems = l.elements();
    let values: Vec<Rational> = elems.iter().map(|e| lambda(e)).collect();
    let n = elems.len() as u64;
    let hit = first_failure(n * n, |i| {
        let (a, b) = ((i / n) as usize, (i % n) as usize);
        (l.leq(&elems[a], &elems[b]) && values[a] > values[b]).then(|| Witness {
            tuple: vec![l.describe(&elems[a]), l.describe(&elems[b])],
            lhs: to_value(&ExtScalar::Finite(values[a].clone())),
            rhs: to_value(&ExtScalar::Finite(values[b].clone())),
            note: Some("a <= b but λ(a) > λ(b)".into()),
        })
    });
    CheckReport::from_scan(n * n, ReportMode::Exhaustive, hit.map(|(_, w)| w))
}

const AGGREGATOR_PROBES: u64 = 512;

/// Spot-checks monotonicity and Schur-concavity of `F` on vectors drawn from
/// `domain^n` and their T-transforms. A falsification filter, not a proof.
pub fn check_aggregator(f: &Aggregator, domain: &[Rational], n: usize, seed: u64) -> CheckReport {
    let ts = [rat(1, 4), rat(1, 2), rat(3, 4), Rational::one()];
    let witness = |x: &[Rational], y: &[Rational], fx: Rational, fy: Rational, note: &str| Witness {
        tuple: vec![to_value(&x.iter().cloned().map(Q).collect::<Vec<_>>()), to_value(&y.iter().cloned().map(Q).collect::<Vec<_>>())],
        lhs: to_value(&Q(fx)),
        rhs: to_value(&Q(fy)),
        note: Some(note.into()),
    };
    let hit = first_failure(AGGREGATOR_PROBES, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let x: Vec<Rational> = (0..n).map(|_| domain[rng.gen_range(0..domain.len())].clone()).collect();
        let fx = f.apply(&x);
        let p = rng.gen_range(0..n);
        let mut up = x.clone();
        up[p] = domain[rng.gen_range(0..domain.len())].clone().max(x[p].clone());
        let fup = f.apply(&up);
        if fup < fx {
            return Some(witness(&x, &up, fx, fup, "F decreased when an argument increased"));
        }
        if n >= 2 {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let t = &ts[rng.gen_range(0..ts.len())];
            let mut y = x.clone();
            y[i] = (Rational::one() - t) * &x[i] + t * &x[j];
            y[j] = t * &x[i] + (Rational::one() - t) * &x[j];
            debug_assert!(majorizes(&y, &x).unwrap());
            let fy = f.apply(&y);
            if fy < fx {
                return Some(witness(&y, &x, fy, fx, "y ≺ x but F(y) < F(x)"));
            }
        }
        None
    });
    CheckReport::from_scan(AGGREGATOR_PROBES, ReportMode::Sampled { seed }, hit.map(|(_, w)| w))
}

fn refuse(reason: &str, report: CheckReport) -> Error {
    Error::ConstructionRefused {
        reason: reason.into(),
        witness: report.witness.map(|w| to_value(&w)),
    }
}

/// Builds `Λ_{λ,F}` after verifying `λ` exhaustively on `l` and spot-checking `F`
/// on the values `λ` takes there.
pub fn schur_construct<L: FiniteLattice>(
    l: &L,
    lambda: UnaryFn<L::Elem>,
    f: Aggregator,
    n: usize,
) -> Result<Functional<L::Elem, ExtScalar>>
where
    L::Elem: 'static,
{
    if n == 0 {
        return Err(Error::input("arity must be at least 1"));
    }
    let sub = check_submodular(l, &lambda);
    if !sub.holds {
        return Err(refuse("λ is not submodular", sub));
    }
    let mono = check_nondecreasing(l, &lambda);
    if !mono.holds {
        return Err(refuse("λ is not nondecreasing", mono));
    }
    let domain: Vec<Rational> = l
        .elements()
        .iter()
        .map(|e| lambda(e))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let agg = check_aggregator(&f, &domain, n, 0);
    if !agg.holds {
        return Err(refuse("F is not nondecreasing and Schur-concave on the range of λ", agg));
    }
    Ok(Functional::new(n, "schur", move |args: &[L::Elem]| {
        let x: Vec<Rational> = args.iter().map(|e| lambda(e)).collect();
        ExtScalar::Finite(f.apply(&x))
    }))
}

/// JSON form of a Schur construction on a function lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurSpec {
    pub lambda: SetFunctionSpec,
    pub aggregator: Aggregator,
}

impl SchurSpec {
    pub fn describe(&self) -> Value {
        to_value(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FnLattice;
    use crate::report::CheckOptions;
    use crate::scalar::int;
    use crate::semimod::{check_generalized_n, check_generalized_nk, Relation};

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn q(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q(int(x))).collect()
    }

    #[test]
    fn min_of_additive_is_n_submodular() {
        let l = FnLattice::nonneg(2, 2).unwrap();
        let lambda = SetFunctionSpec::Additive { weights: q(&[1, 1]) }.build(2).unwrap();
        let big = schur_construct(&l, lambda, Aggregator::Min, 3).unwrap();
        let opts = CheckOptions::exhaustive();
        assert!(check_generalized_n(&l, &big, &Relation::Ge, &opts).unwrap().holds);
    }

    #[test]
    fn sum_of_modular_is_n_modular() {
        let l = FnLattice::nonneg(2, 2).unwrap();
        let lambda = SetFunctionSpec::Additive { weights: q(&[2, 3]) }.build(2).unwrap();
        let big = schur_construct(&l, lambda, Aggregator::Sum, 3).unwrap();
        let r = check_generalized_n(&l, &big, &Relation::Eq, &CheckOptions::exhaustive()).unwrap();
        assert!(r.holds);
        assert_eq!(r.instances_checked, 729);
    }

    #[test]
    fn relation_image_on_sets() {
        // G = identity: λ(A) = |A|
        let id = RelationG {
            s_size: 3,
            t_size: 3,
            pairs: vec![(0, 0), (1, 1), (2, 2)],
        };
        let lam = relation_image_measure(&id, &[int(1), int(1), int(1)]).unwrap();
        assert_eq!(lam(&FnElem::from_ints(&[1, 0, 1])), int(2));
        let l = FnLattice::boolean(3).unwrap();
        assert!(check_submodular(&l, &lam).holds);

        // complete relation: λ(A) = μ_T(T) for nonempty A
        let full = RelationG {
            s_size: 2,
            t_size: 3,
            pairs: (0..2).flat_map(|s| (0..3).map(move |t| (s, t))).collect(),
        };
        let lam = relation_image_measure(&full, &[int(1), int(2), int(3)]).unwrap();
        assert_eq!(lam(&FnElem::from_ints(&[0, 1])), int(6));
        assert_eq!(lam(&FnElem::from_ints(&[0, 0])), int(0));
        assert!(check_submodular(&FnLattice::boolean(2).unwrap(), &lam).holds);
        assert_eq!(full.image(&set(&[1])), set(&[0, 1, 2]));
    }

    #[test]
    fn relation_image_matches_set_image_oracle() {
        let g = RelationG {
            s_size: 4,
            t_size: 4,
            pairs: vec![(0, 1), (0, 2), (1, 2), (2, 0), (3, 3), (3, 1)],
        };
        let w = [int(1), int(2), int(3), int(4)];
        let lam = relation_image_measure(&g, &w).unwrap();
        let l = FnLattice::boolean(4).unwrap();
        for e in l.elements() {
            let a: BTreeSet<usize> = (0..4).filter(|&s| e.0[s] == ExtScalar::one()).collect();
            let oracle: Rational = g.image(&a).iter().map(|&t| w[t].clone()).sum();
            assert_eq!(lam(&e), oracle);
        }
        assert!(check_submodular(&l, &lam).holds);
        let big = schur_construct(&l, lam, Aggregator::Product, 2).unwrap();
        assert!(check_generalized_nk(&l, &big, 2, &Relation::Ge, &CheckOptions::exhaustive())
            .unwrap()
            .holds);
    }

    #[test]
    fn refuses_bad_ingredients() {
        let l = FnLattice::nonneg(2, 2).unwrap();
        // max over points of f, squared: not submodular
        let bad: UnaryFn<FnElem> = Arc::new(|f: &FnElem| {
            let s: Rational = f.values().iter().map(|v| v.finite().unwrap().clone()).sum();
            &s * &s
        });
        assert!(matches!(
            schur_construct(&l, bad, Aggregator::Sum, 2),
            Err(Error::ConstructionRefused { .. })
        ));
        let decreasing = SetFunctionSpec::Additive { weights: q(&[-1, 0]) }.build(2).unwrap();
        assert!(schur_construct(&l, decreasing, Aggregator::Sum, 2).is_err());
        let r = check_aggregator(&Aggregator::Min, &[int(0), int(1), int(5)], 3, 1);
        assert!(r.holds);
        let neg_product = check_aggregator(&Aggregator::Product, &[int(-2), int(1)], 2, 1);
        assert!(!neg_product.holds);
    }

    #[test]
    fn esym_recurrence() {
        let x = [int(1), int(2), int(3)];
        assert_eq!(esym_rational(1, &x), int(6));
        assert_eq!(esym_rational(2, &x), int(11));
        assert_eq!(esym_rational(3, &x), int(6));
    }

    #[test]
    fn spec_json() {
        let s: SchurSpec = serde_json::from_str(
            r#"{"lambda":{"kind":"capped_additive","weights":[1,2],"cap":3},"aggregator":{"kind":"esym","k":2}}"#,
        )
        .unwrap();
        assert_eq!(s.aggregator, Aggregator::Esym { k: 2 });
        let lam = s.lambda.build(2).unwrap();
        assert_eq!(lam(&FnElem::from_ints(&[1, 2])), int(3));
        assert!(s.lambda.build(3).is_err());
    }
}
