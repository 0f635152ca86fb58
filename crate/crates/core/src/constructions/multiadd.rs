//! Symmetric sums of nonnegative multiadditive functions, and the permanent,
//! elementary-symmetric and product-measure inequalities derived from them.

use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{factorial, fn_diff, Measure};
use crate::error::{Error, Result};
use crate::lattice::FnElem;
use crate::ordstats::pointwise_order_statistics;
use crate::report::{first_failure, to_value, CheckReport, Comparison, ReportMode, Witness};
use crate::scalar::{ext_product, ext_sum, ConventionMode, ExtScalar, Rational, Q};
use crate::semimod::Functional;

type MultiEval = dyn Fn(&[FnElem]) -> Rational + Send + Sync;

/// A `k`-ary function of nonnegative finite functions, additive in each slot.
#[derive(Clone)]
pub struct MultiadditiveFn {
    arity: usize,
    name: String,
    eval: Arc<MultiEval>,
}

impl std::fmt::Debug for MultiadditiveFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MultiadditiveFn({}, k={})", self.name, self.arity)
    }
}

impl MultiadditiveFn {
    pub fn new(
        arity: usize,
        name: impl Into<String>,
        eval: impl Fn(&[FnElem]) -> Rational + Send + Sync + 'static,
    ) -> Self {
        MultiadditiveFn {
            arity,
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, args: &[FnElem]) -> Rational {
        assert_eq!(args.len(), self.arity, "wrong arity for `{}`", self.name);
        (self.eval)(args)
    }
}

fn finite_weights(m: &Measure) -> Result<Vec<Rational>> {
    m.validate()?;
    m.weights.iter().map(|w| w.expect_finite().cloned()).collect()
}

fn values(f: &FnElem) -> impl Iterator<Item = &Rational> {
    f.values().iter().map(|v| v.finite().expect("finite function values"))
}

/// `Π_i μ_i(f_i)`
pub fn product_of_integrals(measures: &[Measure]) -> Result<MultiadditiveFn> {
    let ws = measures.iter().map(finite_weights).collect::<Result<Vec<_>>>()?;
    if ws.is_empty() {
        return Err(Error::input("at least one measure is required"));
    }
    Ok(MultiadditiveFn::new(ws.len(), "product_of_integrals", move |f: &[FnElem]| {
        f.iter()
            .zip(&ws)
            .map(|(fi, w)| values(fi).zip(w).map(|(v, w)| v * w).sum::<Rational>())
            .product()
    }))
}

/// `∫ f_1 ⋯ f_k dμ`
pub fn integral_of_product(k: usize, measure: &Measure) -> Result<MultiadditiveFn> {
    let w = finite_weights(measure)?;
    if k == 0 {
        return Err(Error::input("arity must be at least 1"));
    }
    Ok(MultiadditiveFn::new(k, "integral_of_product", move |f: &[FnElem]| {
        (0..w.len())
            .map(|s| f.iter().map(|fi| fi.0[s].finite().expect("finite").clone()).product::<Rational>() * &w[s])
            .sum()
    }))
}

/// `Σ_{s ∈ S^k} w(s) f_1(s_1) ⋯ f_k(s_k)`; the first coordinate is most significant in `w`.
pub fn product_measure(k: usize, ground_size: usize, weights: Vec<Rational>) -> Result<MultiadditiveFn> {
    if k == 0 || ground_size == 0 {
        return Err(Error::input("arity and ground size must be positive"));
    }
    let expected = ground_size
        .checked_pow(k as u32)
        .ok_or_else(|| Error::input("product space too large"))?;
    if weights.len() != expected {
        return Err(Error::input(format!(
            "expected {expected} tensor weights, got {}",
            weights.len()
        )));
    }
    if weights.iter().any(|w| *w < Rational::zero()) {
        return Err(Error::input("tensor weights must be nonnegative"));
    }
    let support: Vec<(Vec<usize>, Rational)> = weights
        .into_iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(mut code, w)| {
            let mut s = vec![0; k];
            for slot in s.iter_mut().rev() {
                *slot = code % ground_size;
                code /= ground_size;
            }
            (s, w)
        })
        .collect();
    Ok(MultiadditiveFn::new(k, "product_measure", move |f: &[FnElem]| {
        support
            .iter()
            .map(|(s, w)| {
                s.iter()
                    .zip(f)
                    .map(|(&si, fi)| fi.0[si].finite().expect("finite").clone())
                    .product::<Rational>()
                    * w
            })
            .sum()
    }))
}

/// `card(G ∩ (A_1 × ⋯ × A_k))` for `G ⊆ S^k` given as a list of `k`-tuples.
pub fn card_of_product(k: usize, ground_size: usize, g: &[Vec<usize>]) -> Result<MultiadditiveFn> {
    let mut weights = vec![Rational::zero(); ground_size.pow(k as u32)];
    for t in g {
        if t.len() != k || t.iter().any(|&s| s >= ground_size) {
            return Err(Error::input(format!("tuple {t:?} is not in S^{k}")));
        }
        let code = t.iter().fold(0, |acc, &s| acc * ground_size + s);
        weights[code] = Rational::one();
    }
    product_measure(k, ground_size, weights)
}

/// Serializable multiadditive functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MultiadditiveSpec {
    ProductOfIntegrals { measures: Vec<Measure> },
    IntegralOfProduct { arity: usize, measure: Measure },
    ProductMeasure { arity: usize, ground_size: usize, weights: Vec<Q> },
    CardOfProduct { arity: usize, ground_size: usize, tuples: Vec<Vec<usize>> },
}

impl MultiadditiveSpec {
    pub fn build(&self) -> Result<MultiadditiveFn> {
        match self {
            MultiadditiveSpec::ProductOfIntegrals { measures } => product_of_integrals(measures),
            MultiadditiveSpec::IntegralOfProduct { arity, measure } => integral_of_product(*arity, measure),
            MultiadditiveSpec::ProductMeasure {
                arity,
                ground_size,
                weights,
            } => product_measure(*arity, *ground_size, weights.iter().map(|q| q.0.clone()).collect()),
            MultiadditiveSpec::CardOfProduct {
                arity,
                ground_size,
                tuples,
            } => card_of_product(*arity, *ground_size, tuples),
        }
    }

    pub fn ground_size(&self) -> usize {
        match self {
            MultiadditiveSpec::ProductOfIntegrals { measures } => measures.first().map_or(0, Measure::len),
            MultiadditiveSpec::IntegralOfProduct { measure, .. } => measure.len(),
            MultiadditiveSpec::ProductMeasure { ground_size, .. }
            | MultiadditiveSpec::CardOfProduct { ground_size, .. } => *ground_size,
        }
    }
}

/// `m̄(f_1..f_k) = (1/k!) Σ_π m(f_π(1), ..., f_π(k))`
pub fn symmetrize(m: &MultiadditiveFn) -> MultiadditiveFn {
    let k = m.arity;
    let inner = m.clone();
    let scale = factorial(k).recip();
    MultiadditiveFn::new(k, format!("sym({})", m.name), move |f: &[FnElem]| {
        let total: Rational = (0..k)
            .permutations(k)
            .map(|p| {
                let args: Vec<FnElem> = p.iter().map(|&i| f[i].clone()).collect();
                inner.eval(&args)
            })
            .sum();
        total * &scale
    })
}

fn check_arity(m: &MultiadditiveFn, n: usize) -> Result<()> {
    if m.arity == 0 || m.arity > n {
        return Err(Error::input(format!("need 1 <= k = {} <= n = {n}", m.arity)));
    }
    Ok(())
}

/// `Λ_m(f) = Σ over injective π: [k] → [n] of m(f_π(1), ..., f_π(k))`.
pub fn multiadd_symmetric_sum(m: &MultiadditiveFn, n: usize) -> Result<Functional<FnElem, ExtScalar>> {
    check_arity(m, n)?;
    let inner = m.clone();
    let k = m.arity;
    Ok(Functional::new(n, format!("multiadd({})", m.name), move |f: &[FnElem]| {
        let total: Rational = (0..n)
            .permutations(k)
            .map(|p| {
                let args: Vec<FnElem> = p.iter().map(|&i| f[i].clone()).collect();
                inner.eval(&args)
            })
            .sum();
        ExtScalar::Finite(total)
    }))
}

/// `k! Σ_{I ⊆ [n], |I| = k} m̄(f_I)`, the symmetrized form of [`multiadd_symmetric_sum`].
pub fn symmetric_sum_rewritten(m: &MultiadditiveFn, f: &[FnElem]) -> Result<Rational> {
    check_arity(m, f.len())?;
    let bar = symmetrize(m);
    let total: Rational = (0..f.len())
        .combinations(m.arity)
        .map(|idx| {
            let args: Vec<FnElem> = idx.iter().map(|&i| f[i].clone()).collect();
            bar.eval(&args)
        })
        .sum();
    Ok(total * factorial(m.arity))
}

/// Spot-checks `m(.., f, ..) = m(.., f∧g, ..) + m(.., f∖g, ..)` and `m >= 0` on
/// tuples drawn from `pool`.
pub fn verify_multiadditive(m: &MultiadditiveFn, pool: &[FnElem], samples: u64, seed: u64) -> CheckReport {
    let describe = |f: &[FnElem]| f.iter().map(to_value).collect::<Vec<Value>>();
    let hit = first_failure(samples, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let mut pick = || pool[rng.gen_range(0..pool.len())].clone();
        let args: Vec<FnElem> = (0..m.arity).map(|_| pick()).collect();
        let g = pick();
        let slot = rng.gen_range(0..m.arity);
        let whole = m.eval(&args);
        if whole < Rational::zero() {
            return Some(Witness {
                tuple: describe(&args),
                lhs: to_value(&Q(whole)),
                rhs: Value::from(0),
                note: Some("negative value".into()),
            });
        }
        let mut lo = args.clone();
        lo[slot] = FnElem::min(&args[slot], &g);
        let mut rest = args.clone();
        rest[slot] = fn_diff(&args[slot], &g).expect("finite");
        let split = m.eval(&lo) + m.eval(&rest);
        (whole != split).then(|| {
            let mut tuple = describe(&args);
            tuple.push(to_value(&g));
            Witness {
                tuple,
                lhs: to_value(&Q(whole)),
                rhs: to_value(&Q(split)),
                note: Some(format!("additivity fails in slot {}", slot + 1)),
            }
        })
    });
    CheckReport::from_scan(samples, ReportMode::Sampled { seed }, hit.map(|(_, w)| w))
}

fn perm_square(b: &[Vec<Rational>], cols: &[usize]) -> Rational {
    fn go(b: &[Vec<Rational>], cols: &[usize], row: usize, used: &mut [bool]) -> Rational {
        if row == b.len() {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for (c, &col) in cols.iter().enumerate() {
            if !used[c] && !b[row][col].is_zero() {
                used[c] = true;
                acc += &b[row][col] * go(b, cols, row + 1, used);
                used[c] = false;
            }
        }
        acc
    }
    go(b, cols, 0, &mut vec![false; cols.len()])
}

fn transpose(b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..b[0].len()).map(|j| b.iter().map(|row| row[j].clone()).collect()).collect()
}

fn check_matrix(b: &[Vec<Rational>]) -> Result<()> {
    if b.is_empty() || b[0].is_empty() {
        return Err(Error::input("empty matrix"));
    }
    if b.iter().any(|r| r.len() != b[0].len()) {
        return Err(Error::input("ragged matrix"));
    }
    Ok(())
}

/// Rectangular permanent: for `d <= p`, the sum of permanents of all `d×d`
/// column submatrices; for `d > p`, the permanent of the transpose.
pub fn permanent(b: &[Vec<Rational>]) -> Result<Rational> {
    check_matrix(b)?;
    if b.len() > b[0].len() {
        return permanent(&transpose(b));
    }
    Ok((0..b[0].len())
        .combinations(b.len())
        .map(|cols| perm_square(b, &cols))
        .sum())
}

fn rows_as_fns(b: &[Vec<Rational>]) -> Vec<FnElem> {
    b.iter().map(|r| FnElem::from_rationals(r.iter().cloned())).collect()
}

fn fns_as_rows(f: &[FnElem]) -> Vec<Vec<Rational>> {
    f.iter().map(|e| e.finite_values().expect("finite")).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermCheck {
    pub rows: Comparison,
    pub columns: Comparison,
    pub row_sorted: Vec<Vec<Q>>,
    pub column_sorted: Vec<Vec<Q>>,
}

impl PermCheck {
    pub fn holds(&self) -> bool {
        self.rows.holds && self.columns.holds
    }

    pub fn report(&self) -> CheckReport {
        CheckReport::merge(
            [
                self.rows.clone().into_report(vec![Value::from("rows")]),
                self.columns.clone().into_report(vec![Value::from("columns")]),
            ],
            ReportMode::Exhaustive,
        )
    }
}

/// `perm(rows replaced by their order statistics) <= perm B`, and the same for columns.
pub fn perm_orderstat_check(b: &[Vec<Rational>]) -> Result<PermCheck> {
    perm_orderstat_check_with(b, permanent)
}

/// [`perm_orderstat_check`] with the permanent supplied by the caller.
pub fn perm_orderstat_check_with(
    b: &[Vec<Rational>],
    permanent: impl Fn(&[Vec<Rational>]) -> Result<Rational>,
) -> Result<PermCheck> {
    check_matrix(b)?;
    if b.iter().flatten().any(|x| *x < Rational::zero()) {
        return Err(Error::input("matrix entries must be nonnegative"));
    }
    let p = ExtScalar::Finite(permanent(b)?);
    let rows = fns_as_rows(&pointwise_order_statistics(&rows_as_fns(b))?);
    let cols_t = fns_as_rows(&pointwise_order_statistics(&rows_as_fns(&transpose(b)))?);
    let cols = transpose(&cols_t);
    let to_q = |m: &[Vec<Rational>]| m.iter().map(|r| r.iter().cloned().map(Q).collect()).collect();
    Ok(PermCheck {
        rows: Comparison::exact_le(ExtScalar::Finite(permanent(&rows)?), p.clone()),
        columns: Comparison::exact_le(ExtScalar::Finite(permanent(&cols)?), p),
        row_sorted: to_q(&rows),
        column_sorted: to_q(&cols),
    })
}

/// `e_k(x) = Σ_{|J| = k} Π_{j ∈ J} x_j`. Products mixing 0 and ∞ need a `mode`.
pub fn elementary_symmetric(k: usize, xs: &[ExtScalar], mode: Option<ConventionMode>) -> Result<ExtScalar> {
    if k == 0 || k > xs.len() {
        return Err(Error::IndexOutOfRange { index: k, n: xs.len() });
    }
    if xs.iter().any(ExtScalar::is_negative) {
        return Err(Error::input("arguments must be nonnegative"));
    }
    let terms = xs
        .iter()
        .combinations(k)
        .map(|c| match mode {
            Some(mode) => ext_product(c, mode),
            None => c.into_iter().try_fold(ExtScalar::one(), |acc, x| acc.try_mul(x)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ext_sum(&terms))
}

/// `e_k(μ(f_1), ..., μ(f_n)) >= e_k(μ(f_{n:1}), ..., μ(f_{n:n}))` with `0·∞ := 0`.
pub fn esym_orderstat_check(mu: &Measure, f: &[FnElem], k: usize) -> Result<Comparison> {
    mu.validate()?;
    if f.iter().any(|e| !e.is_nonnegative()) {
        return Err(Error::input("functions must be nonnegative"));
    }
    let ord = pointwise_order_statistics(f)?;
    let mode = ConventionMode::Zero;
    let ints = |g: &[FnElem]| g.iter().map(|e| mu.integral(e, mode)).collect::<Result<Vec<_>>>();
    let lhs = elementary_symmetric(k, &ints(f)?, Some(mode))?;
    let rhs = elementary_symmetric(k, &ints(&ord)?, Some(mode))?;
    Ok(Comparison::exact_ge(lhs, rhs))
}

/// Order statistics of subsets under ∩/∪: the `j`-th holds the points lying in
/// at least `n+1−j` of the sets.
pub fn subset_order_statistics(a: &[Vec<usize>], ground_size: usize) -> Result<Vec<Vec<usize>>> {
    let ind = indicators(a, ground_size)?;
    Ok(pointwise_order_statistics(&ind)?
        .iter()
        .map(|e| (0..ground_size).filter(|&s| !e.0[s].is_zero()).collect())
        .collect())
}

fn indicators(a: &[Vec<usize>], ground_size: usize) -> Result<Vec<FnElem>> {
    a.iter()
        .map(|set| {
            let mut v = vec![ExtScalar::zero(); ground_size];
            for &s in set {
                *v.get_mut(s).ok_or_else(|| Error::input(format!("point {s} outside S")))? = ExtScalar::one();
            }
            Ok(FnElem(v))
        })
        .collect()
}

/// `Σ_π μ_k(A_{n:π(1)} × ⋯) <= Σ_π μ_k(A_π(1) × ⋯)` over injective `π: [k] → [n]`.
pub fn product_measure_check(
    weights: &[Rational],
    ground_size: usize,
    a: &[Vec<usize>],
    k: usize,
) -> Result<Comparison> {
    if k == 0 || k > a.len() {
        return Err(Error::input(format!("need 1 <= k = {k} <= n = {}", a.len())));
    }
    let m = product_measure(k, ground_size, weights.to_vec())?;
    let lam = multiadd_symmetric_sum(&m, a.len())?;
    let ind = indicators(a, ground_size)?;
    let ord = pointwise_order_statistics(&ind)?;
    Ok(Comparison::exact_le(lam.eval(&ord), lam.eval(&ind)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{FiniteLattice, FnLattice};
    use crate::report::CheckOptions;
    use crate::scalar::{int, rat};
    use crate::semimod::{check_generalized_n, check_generalized_nk, Relation};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    /// Ryser's inclusion–exclusion formula for square matrices.
    fn ryser(b: &[Vec<Rational>]) -> Rational {
        let n = b.len();
        let mut total = Rational::zero();
        for mask in 1u32..(1 << n) {
            let prod: Rational = b
                .iter()
                .map(|row| (0..n).filter(|j| mask >> j & 1 == 1).map(|j| row[j].clone()).sum::<Rational>())
                .product();
            if (n - mask.count_ones() as usize) % 2 == 0 {
                total += prod;
            } else {
                total -= prod;
            }
        }
        total
    }

    #[test]
    fn permanent_examples() {
        assert_eq!(permanent(&m(&[&[1, 2], &[3, 0]])).unwrap(), int(6));
        assert_eq!(permanent(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), int(1));
        assert_eq!(permanent(&m(&[&[1, 2, 3, 4]])).unwrap(), int(10));
        assert_eq!(permanent(&m(&[&[1], &[2], &[3]])).unwrap(), int(6));
        assert!(permanent(&[]).is_err());
        let b = m(&[&[1, 2, 0], &[3, 1, 4], &[2, 2, 5]]);
        assert_eq!(permanent(&b).unwrap(), ryser(&b));
    }

    #[test]
    fn rectangular_matches_ryser_over_column_subsets() {
        let b = m(&[&[1, 2, 3, 1], &[0, 4, 1, 2]]);
        let oracle: Rational = (0..4)
            .combinations(2)
            .map(|c| ryser(&b.iter().map(|r| c.iter().map(|&j| r[j].clone()).collect()).collect::<Vec<_>>()))
            .sum();
        assert_eq!(permanent(&b).unwrap(), oracle);
        assert_eq!(permanent(&transpose(&b)).unwrap(), oracle);
    }

    #[test]
    fn perm_corollary_example() {
        let c = perm_orderstat_check(&m(&[&[1, 2], &[3, 0]])).unwrap();
        assert_eq!(c.row_sorted, vec![vec![Q(int(1)), Q(int(0))], vec![Q(int(3)), Q(int(2))]]);
        assert_eq!(c.rows.sides, crate::report::Sides::Exact { lhs: ExtScalar::from(2), rhs: ExtScalar::from(6) });
        assert!(c.holds());
        assert!(perm_orderstat_check(&m(&[&[1, -2]])).is_err());
        let sorted = perm_orderstat_check(&m(&[&[1, 1, 2], &[2, 3, 4]])).unwrap();
        assert!(sorted.rows.equality);
    }

    #[test]
    fn elementary_symmetric_examples() {
        let x: Vec<ExtScalar> = [1, 2, 3].iter().map(|&v| ExtScalar::from(v)).collect();
        assert_eq!(elementary_symmetric(2, &x, None).unwrap(), ExtScalar::from(11));
        assert_eq!(elementary_symmetric(1, &x, None).unwrap(), ExtScalar::from(6));
        assert_eq!(elementary_symmetric(3, &x, None).unwrap(), ExtScalar::from(6));
        let ones = vec![ExtScalar::one(); 5];
        assert_eq!(elementary_symmetric(2, &ones, None).unwrap(), ExtScalar::from(10));
        let mixed = [ExtScalar::zero(), ExtScalar::Inf];
        assert!(matches!(elementary_symmetric(2, &mixed, None), Err(Error::UndefinedProduct)));
        assert_eq!(elementary_symmetric(2, &mixed, Some(ConventionMode::Zero)).unwrap(), ExtScalar::zero());
    }

    #[test]
    fn esym_hand_example() {
        let f = [FnElem::from_ints(&[1, 0]), FnElem::from_ints(&[0, 1])];
        let c = esym_orderstat_check(&Measure::counting(2), &f, 2).unwrap();
        assert!(c.holds && !c.equality);
        assert_eq!(c.sides, crate::report::Sides::Exact { lhs: ExtScalar::from(1), rhs: ExtScalar::from(0) });
        assert!(esym_orderstat_check(&Measure::counting(2), &f, 1).unwrap().equality);
    }

    #[test]
    fn symmetrize_two_term_average() {
        let mu = Measure::new(vec![ExtScalar::from(1), ExtScalar::from(2)]).unwrap();
        let nu = Measure::new(vec![ExtScalar::from(3), ExtScalar::from(0)]).unwrap();
        let m2 = product_of_integrals(&[mu.clone(), nu.clone()]).unwrap();
        let bar = symmetrize(&m2);
        let f = FnElem::from_ints(&[1, 1]);
        let g = FnElem::from_ints(&[2, 0]);
        // μ(f)=3, ν(g)=6, μ(g)=2, ν(f)=3
        assert_eq!(bar.eval(&[f.clone(), g.clone()]), rat(3 * 6 + 2 * 3, 2));
        assert_eq!(bar.eval(&[f.clone(), g.clone()]), bar.eval(&[g, f]));
    }

    #[test]
    fn multiadditivity_of_builtins() {
        let l = FnLattice::nonneg(2, 3).unwrap();
        let pool = l.elements();
        let mu = Measure::new(vec![ExtScalar::from(2), ExtScalar::Finite(rat(1, 3))]).unwrap();
        let fns = [
            product_of_integrals(&[mu.clone(), Measure::counting(2)]).unwrap(),
            integral_of_product(3, &mu).unwrap(),
            card_of_product(2, 2, &[vec![0, 1], vec![1, 1]]).unwrap(),
        ];
        for m in &fns {
            assert!(verify_multiadditive(m, &pool, 300, 7).holds, "{}", m.name());
            assert!(verify_multiadditive(&symmetrize(m), &pool, 300, 7).holds);
        }
        let not_additive = MultiadditiveFn::new(1, "sq", |f: &[FnElem]| {
            let s: Rational = values(&f[0]).sum();
            &s * &s
        });
        assert!(!verify_multiadditive(&not_additive, &pool, 300, 7).holds);
    }

    #[test]
    fn symmetric_sum_forms_agree_and_are_submodular() {
        let l = FnLattice::nonneg(2, 2).unwrap();
        let mu = Measure::new(vec![ExtScalar::from(1), ExtScalar::from(2)]).unwrap();
        let m = product_of_integrals(&[mu.clone(), Measure::counting(2)]).unwrap();
        let lam = multiadd_symmetric_sum(&m, 3).unwrap();
        let elems = l.elements();
        for (a, b, c) in [(0, 4, 8), (1, 7, 3), (5, 5, 2)] {
            let f = [elems[a].clone(), elems[b].clone(), elems[c].clone()];
            assert_eq!(lam.eval(&f), ExtScalar::Finite(symmetric_sum_rewritten(&m, &f).unwrap()));
        }
        let opts = CheckOptions::exhaustive();
        assert!(check_generalized_nk(&l, &lam, 2, &Relation::Ge, &opts).unwrap().holds);
        assert!(check_generalized_n(&l, &lam, &Relation::Ge, &opts).unwrap().holds);
        // k = 1 is modular
        let single = multiadd_symmetric_sum(&product_of_integrals(&[mu]).unwrap(), 3).unwrap();
        assert!(check_generalized_n(&l, &single, &Relation::Eq, &opts).unwrap().holds);
        assert!(multiadd_symmetric_sum(&m, 1).is_err());
    }

    #[test]
    fn k_equals_n_gives_factorial_product() {
        let mu = Measure::counting(2);
        let m = product_of_integrals(&[mu.clone(), mu.clone(), mu]).unwrap();
        let lam = multiadd_symmetric_sum(&m, 3).unwrap();
        let f = [FnElem::from_ints(&[1, 0]), FnElem::from_ints(&[2, 1]), FnElem::from_ints(&[0, 4])];
        assert_eq!(lam.eval(&f), ExtScalar::from(6 * 3 * 4));
    }

    #[test]
    fn product_measure_sets() {
        // counting measure on all of S^2
        let w = vec![int(1); 16];
        let nested = [vec![0], vec![0, 1], vec![0, 1, 2]];
        assert!(product_measure_check(&w, 4, &nested, 2).unwrap().equality);
        let a = [vec![0, 1], vec![1, 2], vec![3]];
        let c = product_measure_check(&w, 4, &a, 2).unwrap();
        assert!(c.holds);
        assert_eq!(
            subset_order_statistics(&a, 4).unwrap(),
            vec![vec![], vec![1], vec![0, 1, 2, 3]]
        );
        assert!(product_measure_check(&w, 4, &a, 4).is_err());
        assert!(product_measure_check(&w, 4, &[vec![9]], 1).is_err());
    }
}
