use itertools::Itertools;
use latstat_core::constructions::multiadd::{
    elementary_symmetric, multiadd_symmetric_sum, permanent, symmetric_sum_rewritten, symmetrize,
};
use latstat_core::constructions::potential::{check_sorted_pair_inequality, potential_construct, Curvature};
use latstat_core::constructions::schur::SetFunctionSpec;
use latstat_core::constructions::{fn_diff, majorizes};
use latstat_core::lattice::{FnElem, FnLattice};
use latstat_core::random::{finite_fn_elem, instance_rng, matrix, multiadd_spec, potential_spec};
use latstat_core::scalar::{rat, ExtScalar, Rational, Q};
use proptest::prelude::*;

/// The permanent straight from its definition: a sum over injective maps rows → columns.
fn permanent_by_definition(b: &[Vec<Rational>]) -> Rational {
    let (d, p) = (b.len(), b[0].len());
    if d > p {
        let t: Vec<Vec<Rational>> = (0..p).map(|j| b.iter().map(|r| r[j].clone()).collect()).collect();
        return permanent_by_definition(&t);
    }
    (0..p)
        .permutations(d)
        .map(|cols| cols.iter().enumerate().map(|(i, &j)| b[i][j].clone()).product::<Rational>())
        .sum()
}

fn shuffled<T: Clone>(v: &[T], mut s: u64) -> Vec<T> {
    let mut out = v.to_vec();
    for i in (1..out.len()).rev() {
        out.swap(i, (s % (i as u64 + 1)) as usize);
        s /= i as u64 + 1;
    }
    out
}

fn transpose(b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..b[0].len()).map(|j| b.iter().map(|r| r[j].clone()).collect()).collect()
}

fn ratio() -> impl Strategy<Value = Rational> {
    (0i64..9, 1i64..5).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn permanent_matches_definition_and_symmetries(
        seed in any::<u64>(),
        d in 1usize..=4,
        p in 1usize..=5,
        rows_perm in any::<u64>(),
        cols_perm in any::<u64>(),
    ) {
        let b = matrix(&mut instance_rng(seed, 0), d, p);
        let value = permanent(&b).unwrap();
        prop_assert_eq!(&value, &permanent_by_definition(&b));
        prop_assert_eq!(&value, &permanent(&transpose(&b)).unwrap());
        let rows = shuffled(&b, rows_perm);
        let cols: Vec<Vec<Rational>> = b.iter().map(|r| shuffled(r, cols_perm)).collect();
        prop_assert_eq!(&value, &permanent(&rows).unwrap());
        prop_assert_eq!(&value, &permanent(&cols).unwrap());
    }

    #[test]
    fn elementary_symmetric_is_nondecreasing(
        xs in prop::collection::vec(ratio(), 1..=5),
        bump in ratio(),
        at in any::<prop::sample::Index>(),
        k in 1usize..=5,
    ) {
        let k = k.min(xs.len());
        let i = at.index(xs.len());
        let mut ys = xs.clone();
        ys[i] += bump;
        let ext = |v: &[Rational]| v.iter().cloned().map(ExtScalar::Finite).collect::<Vec<_>>();
        let lo = elementary_symmetric(k, &ext(&xs), None).unwrap();
        let hi = elementary_symmetric(k, &ext(&ys), None).unwrap();
        prop_assert!(lo <= hi);
    }

    #[test]
    fn majorization_is_reflexive_and_transitive_along_transfers(
        y in prop::collection::vec(ratio(), 2..=5),
        picks in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), 0i64..=4), 2),
    ) {
        // moving part of the gap from the larger entry to the smaller one makes a vector more even
        let transfer = |v: &[Rational], (a, b, t): &(prop::sample::Index, prop::sample::Index, i64)| {
            let (i, j) = (a.index(v.len()), b.index(v.len()));
            let mut out = v.to_vec();
            let (hi, lo) = if v[i] >= v[j] { (i, j) } else { (j, i) };
            let moved = (&v[hi] - &v[lo]) * rat(*t, 8);
            out[hi] -= &moved;
            out[lo] += &moved;
            out
        };
        let x = transfer(&y, &picks[0]);
        let z = transfer(&x, &picks[1]);
        prop_assert!(majorizes(&y, &y).unwrap());
        prop_assert!(majorizes(&x, &y).unwrap());
        prop_assert!(majorizes(&z, &x).unwrap());
        prop_assert!(majorizes(&z, &y).unwrap());
    }

    #[test]
    fn symmetric_sum_equals_its_rewritten_form(seed in any::<u64>(), n in 1usize..=4, size in 1usize..=3) {
        let mut rng = instance_rng(seed, 1);
        let m = multiadd_spec(&mut rng, size, n).build().unwrap();
        let f: Vec<FnElem> = (0..n).map(|_| finite_fn_elem(&mut rng, size)).collect();
        let direct = multiadd_symmetric_sum(&m, n).unwrap().eval(&f);
        prop_assert_eq!(direct, ExtScalar::Finite(symmetric_sum_rewritten(&m, &f).unwrap()));
    }

    #[test]
    fn additive_set_function_is_modular(
        weights in prop::collection::vec(ratio(), 3),
        a in prop::collection::vec(0i64..5, 3),
        b in prop::collection::vec(0i64..5, 3),
    ) {
        let spec = SetFunctionSpec::Additive { weights: weights.into_iter().map(Q).collect() };
        let lambda = spec.build(3).unwrap();
        let (f, g) = (FnElem::from_ints(&a), FnElem::from_ints(&b));
        prop_assert_eq!(lambda(&FnElem::min(&f, &g)) + lambda(&FnElem::max(&f, &g)), lambda(&f) + lambda(&g));
    }

    #[test]
    fn two_additive_symmetric_chain_identity(seed in any::<u64>(), size in 1usize..=3) {
        let mut rng = instance_rng(seed, 2);
        let m = loop {
            let m = multiadd_spec(&mut rng, size, 2).build().unwrap();
            if m.arity() == 2 {
                break symmetrize(&m);
            }
        };
        let (f, g) = (finite_fn_elem(&mut rng, size), finite_fn_elem(&mut rng, size));
        let lhs = m.eval(&[FnElem::min(&f, &g), FnElem::max(&f, &g)]);
        let rhs = m.eval(&[f.clone(), g.clone()]) - m.eval(&[fn_diff(&f, &g).unwrap(), fn_diff(&g, &f).unwrap()]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pair_inequality_holds_for_constructed_potentials(seed in any::<u64>(), convex in any::<bool>(), size in 1usize..=2) {
        let l = FnLattice::int_range(size, -2, 2).unwrap();
        let curvature = if convex { Curvature::Convex } else { Curvature::Concave };
        let spec = potential_spec(&mut instance_rng(seed, 3), size, curvature);
        let p = potential_construct(&l, spec, 3).unwrap();
        let r = check_sorted_pair_inequality(&l, &p.eval).unwrap();
        prop_assert!(r.holds, "{:?}", r.witness);
    }
}

#[test]
fn majorization_rejects_unequal_totals() {
    let x = [rat(1, 1), rat(1, 1)];
    let y = [rat(0, 1), rat(3, 1)];
    assert!(!majorizes(&x, &y).unwrap());
    assert!(!majorizes(&y, &x).unwrap());
}
