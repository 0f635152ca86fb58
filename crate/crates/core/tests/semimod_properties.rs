use std::sync::LazyLock;

use latstat_core::constructions::schur::{schur_construct, Aggregator, SetFunctionSpec};
use latstat_core::lattice::{small_distributive_lattices, FnElem, FnLattice, TableLattice};
use latstat_core::ordstats::order_statistics;
use latstat_core::random::{instance_rng, lattice_tuple, schur_functional};
use latstat_core::regression::{theorem_regression, Family, GeneratorSpec};
use latstat_core::report::CheckOptions;
use latstat_core::scalar::{int, ExtScalar, Q};
use latstat_core::semimod::{
    check_chain_steps, check_generalized_n, check_generalized_nk, check_relaxed_hypothesis, insertion_chain,
    insertion_chain_table, Functional, Relation,
};
use proptest::prelude::*;

#[test]
fn pairwise_check_implies_full_check_exhaustively() {
    let opts = CheckOptions::exhaustive();
    let configs = [(1, 3, 4), (2, 2, 4), (3, 1, 4), (3, 2, 3)];
    for family in [Family::Schur, Family::Multiadd] {
        for (seed, &(ground_size, chain_max, arity)) in configs.iter().enumerate() {
            let spec = GeneratorSpec {
                family,
                ground_size,
                chain_max,
                arity,
                curvature: None,
            };
            let r = theorem_regression(&spec, 3, seed as u64, &opts).unwrap();
            assert!(r.lattice_distributive);
            assert_eq!(r.precondition_failures, 0, "{spec:?}");
            assert!(r.report.holds, "{spec:?}: {:?}", r.report.witness);
        }
    }
}

#[test]
fn pairwise_check_implies_relaxed_hypothesis() {
    let l = FnLattice::nonneg(2, 2).unwrap();
    let opts = CheckOptions::exhaustive();
    for i in 0..8 {
        let (lambda, label) = schur_functional(&mut instance_rng(3, i), &l, 3).unwrap();
        assert!(check_generalized_nk(&l, &lambda, 2, &Relation::Ge, &opts).unwrap().holds);
        let relaxed = check_relaxed_hypothesis(&l, &lambda, &Relation::Ge, &opts).unwrap();
        assert!(relaxed.holds, "{label}");
        assert!(relaxed.instances_checked > 0);
    }
}

#[test]
fn symmetric_modular_functional_satisfies_equality() {
    let l = FnLattice::nonneg(2, 2).unwrap();
    let spec = SetFunctionSpec::Additive {
        weights: vec![Q(int(2)), Q(int(3))],
    };
    let lambda = schur_construct(&l, spec.build(2).unwrap(), Aggregator::Sum, 3).unwrap();
    let eq = Relation::parse("eq").unwrap();
    let opts = CheckOptions::exhaustive();
    assert!(check_generalized_nk(&l, &lambda, 2, &eq, &opts).unwrap().holds);
    assert!(check_generalized_n(&l, &lambda, &eq, &opts).unwrap().holds);
}

static CENSUS: LazyLock<Vec<TableLattice>> = LazyLock::new(|| small_distributive_lattices(12));

static CARRIER: LazyLock<FnLattice> = LazyLock::new(|| FnLattice::nonneg(2, 3).unwrap());

/// Schur functionals on the carrier that pass the pairwise check.
static FUNCTIONALS: LazyLock<Vec<Functional<FnElem, ExtScalar>>> = LazyLock::new(|| {
    (0..6)
        .map(|i| {
            let (lambda, _) = schur_functional(&mut instance_rng(11, i), &CARRIER, 4).unwrap();
            let k2 = check_generalized_nk(&*CARRIER, &lambda, 2, &Relation::Ge, &CheckOptions::exhaustive());
            assert!(k2.unwrap().holds);
            lambda
        })
        .collect()
});

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chain_steps_follow_the_relation(which in 0usize..6, seed in any::<u64>()) {
        let lambda = &FUNCTIONALS[which];
        let f = lattice_tuple(&mut instance_rng(seed, 0), &CARRIER, 4);
        let chain = insertion_chain(&*CARRIER, &f).unwrap();
        let r = check_chain_steps(lambda, &chain, &Relation::Ge);
        prop_assert!(r.holds, "{:?}", r.witness);
        prop_assert_eq!(chain.final_row().to_vec(), order_statistics(&*CARRIER, &f).unwrap());
    }

    #[test]
    fn table_chain_ends_in_the_order_statistics(
        idx in 0..CENSUS.len(),
        raw in prop::collection::vec(0usize..64, 1..=5),
    ) {
        let t = &CENSUS[idx];
        let f: Vec<usize> = raw.iter().map(|x| x % t.len()).collect();
        let chain = insertion_chain_table(t, &f).unwrap();
        prop_assert_eq!(chain.final_row().to_vec(), order_statistics(t, &f).unwrap());
        prop_assert_eq!(chain.rows.len(), f.len());
    }
}

#[test]
fn custom_relation_matching_ge_gives_the_same_verdict() {
    let l = FnLattice::nonneg(1, 3).unwrap();
    let (lambda, _) = schur_functional(&mut instance_rng(5, 0), &l, 3).unwrap();
    let custom: Relation<ExtScalar> = Relation::custom("at least", |a, b| a >= b);
    let opts = CheckOptions::exhaustive();
    let a = check_generalized_n(&l, &lambda, &Relation::Ge, &opts).unwrap();
    let b = check_generalized_n(&l, &lambda, &custom, &opts).unwrap();
    assert_eq!(a.holds, b.holds);
    assert_eq!(a.instances_checked, b.instances_checked);
}
