//! Element-id view of a finite lattice used by the exhaustive scanners.

use std::collections::HashMap;

use serde_json::Value;

use crate::lattice::FiniteLattice;
use crate::ordstats::SubsetTable;

const MAX_TABULATED: usize = 2048;

pub(crate) struct Indexed<'a, L: FiniteLattice> {
    pub lattice: &'a L,
    pub elems: Vec<L::Elem>,
    position: HashMap<L::Elem, u32>,
    meet: Option<Vec<u32>>,
    join: Option<Vec<u32>>,
}

impl<'a, L: FiniteLattice> Indexed<'a, L> {
    pub fn new(lattice: &'a L) -> Self {
        let elems = lattice.elements();
        let position: HashMap<L::Elem, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let n = elems.len();
        let (meet, join) = if n <= MAX_TABULATED {
            let mut meet = Vec::with_capacity(n * n);
            let mut join = Vec::with_capacity(n * n);
            for a in &elems {
                for b in &elems {
                    meet.push(position[&lattice.meet(a, b)]);
                    join.push(position[&lattice.join(a, b)]);
                }
            }
            (Some(meet), Some(join))
        } else {
            (None, None)
        };
        Indexed {
            lattice,
            elems,
            position,
            meet,
            join,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn meet(&self, a: u32, b: u32) -> u32 {
        match &self.meet {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => {
                self.position[&self
                    .lattice
                    .meet(&self.elems[a as usize], &self.elems[b as usize])]
            }
        }
    }

    pub fn join(&self, a: u32, b: u32) -> u32 {
        match &self.join {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => {
                self.position[&self
                    .lattice
                    .join(&self.elems[a as usize], &self.elems[b as usize])]
            }
        }
    }

    pub fn leq(&self, a: u32, b: u32) -> bool {
        self.meet(a, b) == a
    }

    /// Order statistics of an id tuple by the meet-of-joins formula.
    pub fn order_statistics(&self, ids: &[u32], subsets: &SubsetTable) -> Vec<u32> {
        (1..=ids.len())
            .map(|j| {
                subsets
                    .of_size(j)
                    .iter()
                    .map(|s| {
                        s[1..]
                            .iter()
                            .fold(ids[s[0]], |acc, &i| self.join(acc, ids[i]))
                    })
                    .reduce(|a, b| self.meet(a, b))
                    .expect("nonempty")
            })
            .collect()
    }

    pub fn materialize(&self, ids: &[u32]) -> Vec<L::Elem> {
        ids.iter().map(|&i| self.elems[i as usize].clone()).collect()
    }

    pub fn describe(&self, ids: &[u32]) -> Vec<Value> {
        ids.iter()
            .map(|&i| self.lattice.describe(&self.elems[i as usize]))
            .collect()
    }
}

/// Mixed-radix tuple codec with the first coordinate most significant, so that
/// increasing codes enumerate tuples lexicographically.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TupleCodec {
    pub base: u64,
    pub arity: usize,
}

impl TupleCodec {
    pub fn total(&self) -> Option<u64> {
        self.base.checked_pow(self.arity as u32)
    }

    pub fn total_u128(&self) -> u128 {
        (self.base as u128).saturating_pow(self.arity as u32)
    }

    pub fn decode(&self, mut code: u64, out: &mut [u32]) {
        for slot in out.iter_mut().rev() {
            *slot = (code % self.base) as u32;
            code /= self.base;
        }
    }

    pub fn encode(&self, ids: &[u32]) -> u64 {
        ids.iter().fold(0, |acc, &i| acc * self.base + i as u64)
    }
}
