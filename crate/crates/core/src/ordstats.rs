//! Lattice order statistics.
//!
//! `f_{n:j}` is the meet, over all `j`-subsets `J` of `1..=n`, of the join of
//! `f_i` for `i` in `J`. The dual form takes the join over `(n+1-j)`-subsets of
//! the meets. Both agree on distributive lattices; on any lattice the dual is
//! below the primal. On function lattices both reduce to a per-point sort.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::{FnElem, Lattice};

fn check_tuple<L: Lattice>(l: &L, f: &[L::Elem], j: usize) -> Result<()> {
    if f.is_empty() {
        return Err(Error::input("tuple must have at least one element"));
    }
    if j == 0 || j > f.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            n: f.len(),
        });
    }
    f.iter().try_for_each(|e| l.check_member(e))
}

fn fold_subset<L: Lattice>(
    f: &[L::Elem],
    subset: &[usize],
    op: impl Fn(&L::Elem, &L::Elem) -> L::Elem,
) -> L::Elem {
    subset[1..]
        .iter()
        .fold(f[subset[0]].clone(), |acc, &i| op(&acc, &f[i]))
}

/// `f_{n:j}` for 1-based `j`, by the meet-of-joins formula.
pub fn order_statistic<L: Lattice>(l: &L, f: &[L::Elem], j: usize) -> Result<L::Elem> {
    check_tuple(l, f, j)?;
    Ok(order_statistic_unchecked(l, f, j))
}

pub(crate) fn order_statistic_unchecked<L: Lattice>(l: &L, f: &[L::Elem], j: usize) -> L::Elem {
    (0..f.len())
        .combinations(j)
        .map(|subset| fold_subset::<L>(f, &subset, |a, b| l.join(a, b)))
        .reduce(|a, b| l.meet(&a, &b))
        .expect("at least one subset")
}

/// `f_{n:j}` by the dual join-of-meets formula over `(n+1-j)`-subsets.
pub fn order_statistic_dual<L: Lattice>(l: &L, f: &[L::Elem], j: usize) -> Result<L::Elem> {
    check_tuple(l, f, j)?;
    Ok((0..f.len())
        .combinations(f.len() + 1 - j)
        .map(|subset| fold_subset::<L>(f, &subset, |a, b| l.meet(a, b)))
        .reduce(|a, b| l.join(&a, &b))
        .expect("at least one subset"))
}

/// The full tuple `(f_{n:1}, ..., f_{n:n})`.
pub fn order_statistics<L: Lattice>(l: &L, f: &[L::Elem]) -> Result<Vec<L::Elem>> {
    (1..=f.len().max(1))
        .map(|j| order_statistic(l, f, j))
        .collect()
}

pub fn order_statistics_dual<L: Lattice>(l: &L, f: &[L::Elem]) -> Result<Vec<L::Elem>> {
    (1..=f.len().max(1))
        .map(|j| order_statistic_dual(l, f, j))
        .collect()
}

/// Order statistics of functions by sorting the values at every point.
pub fn pointwise_order_statistics(f: &[FnElem]) -> Result<Vec<FnElem>> {
    let Some(first) = f.first() else {
        return Err(Error::input("tuple must have at least one element"));
    };
    let width = first.len();
    if f.iter().any(|e| e.len() != width) {
        return Err(Error::input("tuple elements are defined on different ground sets"));
    }
    let mut out = vec![Vec::with_capacity(width); f.len()];
    for s in 0..width {
        let mut column: Vec<_> = f.iter().map(|e| e.0[s].clone()).collect();
        column.sort();
        for (row, v) in out.iter_mut().zip(column) {
            row.push(v);
        }
    }
    Ok(out.into_iter().map(FnElem).collect())
}

/// Precomputed subsets of `0..n` for every size, as used by the indexed fast path.
#[derive(Clone, Debug)]
pub(crate) struct SubsetTable {
    by_size: Vec<Vec<Vec<usize>>>,
}

impl SubsetTable {
    pub fn new(n: usize) -> Self {
        SubsetTable {
            by_size: (0..=n).map(|k| (0..n).combinations(k).collect()).collect(),
        }
    }

    pub fn of_size(&self, k: usize) -> &[Vec<usize>] {
        &self.by_size[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_m3, FnLattice, TableLattice};
    use serde_json::Value;

    #[test]
    fn chain_order_statistics_sort() {
        let c = TableLattice::chain(4).unwrap();
        let f = [3, 1, 2];
        assert_eq!(order_statistics(&c, &f).unwrap(), vec![1, 2, 3]);
        assert_eq!(order_statistics_dual(&c, &f).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn m3_primal_and_dual_differ() {
        let m3 = build_m3();
        let f: Vec<usize> = [2, 3, 4]
            .iter()
            .map(|&x| m3.resolve(&Value::from(x)).unwrap())
            .collect();
        let labels = |v: Vec<usize>| v.iter().map(|x| m3.describe(x)).collect::<Vec<_>>();
        assert_eq!(
            labels(order_statistics(&m3, &f).unwrap()),
            vec![Value::from(1), Value::from(5), Value::from(5)]
        );
        assert_eq!(
            labels(order_statistics_dual(&m3, &f).unwrap()),
            vec![Value::from(1), Value::from(1), Value::from(5)]
        );
    }

    #[test]
    fn extreme_statistics_are_meet_and_join() {
        let l = FnLattice::nonneg(2, 3).unwrap();
        let f = vec![
            FnElem::from_ints(&[3, 0]),
            FnElem::from_ints(&[1, 2]),
            FnElem::from_ints(&[2, 3]),
        ];
        assert_eq!(order_statistic(&l, &f, 1).unwrap(), FnElem::from_ints(&[1, 0]));
        assert_eq!(order_statistic(&l, &f, 3).unwrap(), FnElem::from_ints(&[3, 3]));
        assert_eq!(order_statistic_dual(&l, &f, 1).unwrap(), FnElem::from_ints(&[1, 0]));
    }

    #[test]
    fn index_out_of_range() {
        let c = TableLattice::chain(3).unwrap();
        assert!(matches!(
            order_statistic(&c, &[0, 1], 3),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
        assert!(order_statistic(&c, &[0, 1], 0).is_err());
        assert!(order_statistic(&c, &[0, 7], 1).is_err());
    }

    #[test]
    fn pointwise_sort() {
        let f = [FnElem::from_ints(&[1, 0]), FnElem::from_ints(&[0, 1])];
        assert_eq!(
            pointwise_order_statistics(&f).unwrap(),
            vec![FnElem::from_ints(&[0, 0]), FnElem::from_ints(&[1, 1])]
        );
        let g = FnElem::from_ints(&[2, 5]);
        assert_eq!(
            pointwise_order_statistics(&[g.clone(), g.clone(), g.clone()]).unwrap(),
            vec![g.clone(), g.clone(), g]
        );
        assert!(pointwise_order_statistics(&[FnElem::from_ints(&[1]), FnElem::from_ints(&[1, 2])])
            .is_err());
    }

    #[test]
    fn singleton_tuple_is_its_own_statistic() {
        let c = TableLattice::chain(3).unwrap();
        assert_eq!(order_statistics(&c, &[2]).unwrap(), vec![2]);
    }
}
