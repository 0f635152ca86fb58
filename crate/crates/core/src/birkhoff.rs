//! Representation of a finite distributive lattice as a lattice of sets.
//!
//! Each element `x` maps to the set of join-irreducible elements below it,
//! written as a 0/1 function on the join-irreducibles. The map is injective and
//! turns meets and joins into pointwise min and max.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{
    is_distributive, validate_table_lattice, ExplicitLattice, FnElem, Lattice, TableLattice,
};
use crate::report::to_value;
use crate::scalar::ExtScalar;

#[derive(Clone, Debug)]
pub struct BirkhoffEmbedding {
    join_irreducibles: Vec<usize>,
    images: Vec<FnElem>,
    inverse: HashMap<FnElem, usize>,
}

impl BirkhoffEmbedding {
    /// Ids of the join-irreducible elements, in increasing order; these index
    /// the points of the image functions.
    pub fn join_irreducibles(&self) -> &[usize] {
        &self.join_irreducibles
    }

    pub fn ground_size(&self) -> usize {
        self.join_irreducibles.len()
    }

    pub fn map(&self, id: usize) -> &FnElem {
        &self.images[id]
    }

    pub fn images(&self) -> &[FnElem] {
        &self.images
    }

    /// The element whose image is `f`, if any.
    pub fn lift(&self, f: &FnElem) -> Option<usize> {
        self.inverse.get(f).copied()
    }

    /// The image as a sublattice of 0/1 functions.
    pub fn image_lattice(&self) -> ExplicitLattice {
        ExplicitLattice::new(self.images.clone()).expect("image of a lattice homomorphism")
    }
}

/// Embeds a validated distributive table lattice into a lattice of 0/1 functions.
pub fn birkhoff_embed(t: &TableLattice) -> Result<BirkhoffEmbedding> {
    let valid = validate_table_lattice(t);
    if let Some(w) = valid.witness {
        return Err(Error::input(format!(
            "table is not a lattice ({})",
            w.note.unwrap_or_default()
        )));
    }
    let dist = is_distributive(t);
    if let Some(w) = dist.witness {
        return Err(Error::NotDistributive {
            witness: to_value(&w.tuple),
        });
    }
    let n = t.len();
    let bottom = t.bottom();
    let join_irreducibles: Vec<usize> = (0..n)
        .filter(|&x| {
            if x == bottom {
                return false;
            }
            let below_join = (0..n)
                .filter(|&y| y != x && t.leq(&y, &x))
                .fold(bottom, |acc, y| t.join(&acc, &y));
            below_join != x
        })
        .collect();
    let images: Vec<FnElem> = (0..n)
        .map(|x| {
            FnElem(
                join_irreducibles
                    .iter()
                    .map(|&j| {
                        if t.leq(&j, &x) {
                            ExtScalar::one()
                        } else {
                            ExtScalar::zero()
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    let inverse: HashMap<FnElem, usize> = images
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    if inverse.len() != n {
        // Cannot happen for a distributive lattice.
        return Err(Error::input("embedding is not injective"));
    }
    Ok(BirkhoffEmbedding {
        join_irreducibles,
        images,
        inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_m3;

    #[test]
    fn three_chain() {
        let t = TableLattice::chain(3).unwrap();
        let e = birkhoff_embed(&t).unwrap();
        assert_eq!(e.join_irreducibles(), &[1, 2]);
        assert_eq!(e.map(0), &FnElem::from_ints(&[0, 0]));
        assert_eq!(e.map(1), &FnElem::from_ints(&[1, 0]));
        assert_eq!(e.map(2), &FnElem::from_ints(&[1, 1]));
    }

    #[test]
    fn boolean_lattice_embeds_on_its_atoms() {
        let t = TableLattice::boolean(2).unwrap();
        let e = birkhoff_embed(&t).unwrap();
        assert_eq!(e.join_irreducibles(), &[1, 2]);
        assert_eq!(e.map(3), &FnElem::from_ints(&[1, 1]));
        assert_eq!(e.map(2), &FnElem::from_ints(&[0, 1]));
    }

    #[test]
    fn m3_is_refused() {
        assert!(matches!(
            birkhoff_embed(&build_m3()),
            Err(Error::NotDistributive { .. })
        ));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        // the divisor lattice of 12, as an order
        let divisors = [1, 2, 3, 4, 6, 12];
        let mut pairs = vec![];
        for (i, a) in divisors.iter().enumerate() {
            for (j, b) in divisors.iter().enumerate() {
                if b % a == 0 {
                    pairs.push((i, j));
                }
            }
        }
        let t = TableLattice::from_order(6, &pairs).unwrap();
        let e = birkhoff_embed(&t).unwrap();
        assert_eq!(e.ground_size(), 3); // 2, 3, 4
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(e.map(t.meet(&a, &b)), &e.map(a).min(e.map(b)));
                assert_eq!(e.map(t.join(&a, &b)), &e.map(a).max(e.map(b)));
            }
            assert_eq!(e.lift(e.map(a)), Some(a));
        }
    }
}
