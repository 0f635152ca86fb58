//! Finite lattice backends: explicit meet/join tables and pointwise function lattices.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::report::{to_value, CheckReport, ReportMode, Witness};
use crate::scalar::{ExtScalar, Rational};

/// A lattice given by its meet and join operations.
pub trait Lattice: Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Serialize + Send + Sync;

    fn contains(&self, a: &Self::Elem) -> bool;

    /// Greatest lower bound. Callers guarantee membership.
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Least upper bound. Callers guarantee membership.
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.meet(a, b) == *a
    }

    /// JSON rendering of an element for reports.
    fn describe(&self, a: &Self::Elem) -> Value {
        to_value(a)
    }

    /// True when distributivity is guaranteed by construction.
    fn known_distributive(&self) -> bool {
        false
    }

    fn try_meet(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.meet(a, b))
    }

    fn try_join(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.join(a, b))
    }

    fn try_leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.leq(a, b))
    }

    fn check_member(&self, a: &Self::Elem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInLattice)
        }
    }
}

/// A lattice whose elements can be enumerated.
pub trait FiniteLattice: Lattice {
    fn size(&self) -> usize;

    /// All elements in a fixed enumeration order.
    fn elements(&self) -> Vec<Self::Elem>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::input("ground set must have at least one point"));
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::input("ground set labels must be distinct"));
        }
        let mut g = GroundSet::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// A lattice element realized as a function on a finite ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FnElem(pub Vec<ExtScalar>);

impl FnElem {
    pub fn from_ints(values: &[i64]) -> Self {
        FnElem(values.iter().map(|&v| ExtScalar::from(v)).collect())
    }

    pub fn from_rationals(values: impl IntoIterator<Item = Rational>) -> Self {
        FnElem(values.into_iter().map(ExtScalar::Finite).collect())
    }

    pub fn constant(len: usize, value: ExtScalar) -> Self {
        FnElem(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[ExtScalar] {
        &self.0
    }

    pub fn min(&self, other: &FnElem) -> FnElem {
        FnElem(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        )
    }

    pub fn max(&self, other: &FnElem) -> FnElem {
        FnElem(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        )
    }

    pub fn pointwise_le(&self, other: &FnElem) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|v| !v.is_negative())
    }

    /// Finite values, or an error if any point is `inf`.
    pub fn finite_values(&self) -> Result<Vec<Rational>> {
        self.0.iter().map(|v| v.expect_finite().cloned()).collect()
    }
}

/// Enumeration caps for [`FnLattice`].
#[derive(Clone, Copy, Debug)]
pub struct FnCaps {
    pub max_ground: usize,
    pub max_chain: usize,
}

impl Default for FnCaps {
    fn default() -> Self {
        FnCaps {
            max_ground: 6,
            max_chain: 6,
        }
    }
}

/// All functions from a ground set into a finite chain, under pointwise min/max.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnLattice {
    ground: GroundSet,
    chain: Vec<ExtScalar>,
}

impl FnLattice {
    pub fn new(ground: GroundSet, chain: Vec<ExtScalar>) -> Result<Self> {
        Self::with_caps(ground, chain, FnCaps::default())
    }

    pub fn with_caps(ground: GroundSet, chain: Vec<ExtScalar>, caps: FnCaps) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::input("value chain must be nonempty"));
        }
        if chain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("value chain must be strictly ascending"));
        }
        if ground.size() > caps.max_ground {
            return Err(Error::input(format!(
                "ground set of size {} exceeds the cap {}",
                ground.size(),
                caps.max_ground
            )));
        }
        if chain.len() > caps.max_chain {
            return Err(Error::input(format!(
                "value chain of length {} exceeds the cap {}",
                chain.len(),
                caps.max_chain
            )));
        }
        Ok(FnLattice { ground, chain })
    }

    /// Functions on `ground_size` points with integer values `lo..=hi`.
    pub fn int_range(ground_size: usize, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::input("empty value range"));
        }
        Self::new(
            GroundSet::new(ground_size)?,
            (lo..=hi).map(ExtScalar::from).collect(),
        )
    }

    /// Functions into `{0, 1, ..., chain_max}`.
    pub fn nonneg(ground_size: usize, chain_max: i64) -> Result<Self> {
        Self::int_range(ground_size, 0, chain_max)
    }

    /// The Boolean lattice of subsets of a `k`-point set, as 0/1 functions.
    pub fn boolean(k: usize) -> Result<Self> {
        Self::nonneg(k, 1)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.size()
    }

    pub fn chain(&self) -> &[ExtScalar] {
        &self.chain
    }

    /// Element with enumeration index `idx`; point 0 is the least significant digit.
    pub fn element(&self, mut idx: usize) -> FnElem {
        let c = self.chain.len();
        let mut values = Vec::with_capacity(self.ground.size());
        for _ in 0..self.ground.size() {
            values.push(self.chain[idx % c].clone());
            idx /= c;
        }
        FnElem(values)
    }
}

impl Lattice for FnLattice {
    type Elem = FnElem;

    fn contains(&self, a: &FnElem) -> bool {
        a.len() == self.ground.size() && a.0.iter().all(|v| self.chain.binary_search(v).is_ok())
    }

    fn meet(&self, a: &FnElem, b: &FnElem) -> FnElem {
        a.min(b)
    }

    fn join(&self, a: &FnElem, b: &FnElem) -> FnElem {
        a.max(b)
    }

    fn leq(&self, a: &FnElem, b: &FnElem) -> bool {
        a.pointwise_le(b)
    }

    fn known_distributive(&self) -> bool {
        true
    }
}

impl FiniteLattice for FnLattice {
    fn size(&self) -> usize {
        self.chain.len().pow(self.ground.size() as u32)
    }

    fn elements(&self) -> Vec<FnElem> {
        (0..self.size()).map(|i| self.element(i)).collect()
    }
}

/// The lattice of all functions on `size` points with pointwise min/max.
/// Not enumerable; used where only meets and joins of given elements matter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctionSpace {
    pub size: usize,
}

impl Lattice for FunctionSpace {
    type Elem = FnElem;

    fn contains(&self, a: &FnElem) -> bool {
        a.len() == self.size
    }

    fn meet(&self, a: &FnElem, b: &FnElem) -> FnElem {
        a.min(b)
    }

    fn join(&self, a: &FnElem, b: &FnElem) -> FnElem {
        a.max(b)
    }

    fn leq(&self, a: &FnElem, b: &FnElem) -> bool {
        a.pointwise_le(b)
    }

    fn known_distributive(&self) -> bool {
        true
    }
}

/// A finite set of functions closed under pointwise min and max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitLattice {
    elems: Vec<FnElem>,
}

impl ExplicitLattice {
    /// Accepts `elems` only if they already form a sublattice.
    pub fn new(elems: Vec<FnElem>) -> Result<Self> {
        let set: BTreeSet<FnElem> = elems.into_iter().collect();
        let elems: Vec<FnElem> = set.into_iter().collect();
        let Some(first) = elems.first() else {
            return Err(Error::input("sublattice must be nonempty"));
        };
        let len = first.len();
        if elems.iter().any(|e| e.len() != len) {
            return Err(Error::input("sublattice elements have different ground sizes"));
        }
        for a in &elems {
            for b in &elems {
                for c in [a.min(b), a.max(b)] {
                    if elems.binary_search(&c).is_err() {
                        return Err(Error::input(format!(
                            "not closed under min/max: {} is missing",
                            to_value(&c)
                        )));
                    }
                }
            }
        }
        Ok(ExplicitLattice { elems })
    }

    /// The sublattice generated by `seeds` under pointwise min/max.
    pub fn generated_by(seeds: Vec<FnElem>, max_size: usize) -> Result<Self> {
        let mut set: BTreeSet<FnElem> = seeds.into_iter().collect();
        if set.is_empty() {
            return Err(Error::input("sublattice must be nonempty"));
        }
        loop {
            let current: Vec<FnElem> = set.iter().cloned().collect();
            let before = set.len();
            for a in &current {
                for b in &current {
                    set.insert(a.min(b));
                    set.insert(a.max(b));
                }
            }
            if set.len() > max_size {
                return Err(Error::input(format!(
                    "generated sublattice exceeds {max_size} elements"
                )));
            }
            if set.len() == before {
                break;
            }
        }
        ExplicitLattice::new(set.into_iter().collect())
    }

    pub fn elems(&self) -> &[FnElem] {
        &self.elems
    }
}

impl Lattice for ExplicitLattice {
    type Elem = FnElem;

    fn contains(&self, a: &FnElem) -> bool {
        self.elems.binary_search(a).is_ok()
    }

    fn meet(&self, a: &FnElem, b: &FnElem) -> FnElem {
        a.min(b)
    }

    fn join(&self, a: &FnElem, b: &FnElem) -> FnElem {
        a.max(b)
    }

    fn leq(&self, a: &FnElem, b: &FnElem) -> bool {
        a.pointwise_le(b)
    }

    fn known_distributive(&self) -> bool {
        true
    }
}

impl FiniteLattice for ExplicitLattice {
    fn size(&self) -> usize {
        self.elems.len()
    }

    fn elements(&self) -> Vec<FnElem> {
        self.elems.clone()
    }
}

/// An explicit finite lattice on element ids `0..n` with meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableLattice {
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

fn check_table(name: &str, t: &[Vec<usize>], n: usize) -> Result<()> {
    if t.len() != n || t.iter().any(|row| row.len() != n) {
        return Err(Error::input(format!("{name} table must be {n}x{n}")));
    }
    if let Some(bad) = t.iter().flatten().find(|&&v| v >= n) {
        return Err(Error::input(format!("{name} table entry {bad} out of range 0..{n}")));
    }
    Ok(())
}

impl TableLattice {
    /// Builds from raw tables. Shapes and id ranges are checked here; the lattice
    /// axioms are checked by [`validate_table_lattice`].
    pub fn from_tables(meet: Vec<Vec<usize>>, join: Vec<Vec<usize>>) -> Result<Self> {
        let n = meet.len();
        if n == 0 {
            return Err(Error::input("lattice must have at least one element"));
        }
        check_table("meet", &meet, n)?;
        check_table("join", &join, n)?;
        Ok(TableLattice {
            meet,
            join,
            labels: None,
        })
    }

    /// Derives meet and join from an order relation given as `a <= b` pairs.
    /// Reflexivity and transitivity are closed over; antisymmetry and the
    /// existence of all meets and joins are checked.
    pub fn from_order(n: usize, leq_pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("lattice must have at least one element"));
        }
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in leq_pairs {
            if a >= n || b >= n {
                return Err(Error::input(format!("order pair ({a}, {b}) out of range 0..{n}")));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if le[a][b] && le[b][a] {
                    return Err(Error::input(format!(
                        "order is not antisymmetric: {a} <= {b} <= {a}"
                    )));
                }
            }
        }
        let bound = |a: usize, b: usize, lower: bool| -> Result<usize> {
            let below = |x: usize, y: usize| if lower { le[x][y] } else { le[y][x] };
            let common: Vec<usize> = (0..n).filter(|&c| below(c, a) && below(c, b)).collect();
            common
                .iter()
                .copied()
                .find(|&c| common.iter().all(|&d| below(d, c)))
                .ok_or_else(|| {
                    Error::input(format!(
                        "elements {a} and {b} have no {}",
                        if lower { "meet" } else { "join" }
                    ))
                })
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = bound(a, b, true)?;
                join[a][b] = bound(a, b, false)?;
            }
        }
        Ok(TableLattice {
            meet,
            join,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::input("one label per element is required"));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::input("element labels must be distinct"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_order(n, &pairs)
    }

    /// Subsets of a `k`-set; element id is the subset bitmask.
    pub fn boolean(k: usize) -> Result<Self> {
        if k > 10 {
            return Err(Error::input("boolean lattice too large"));
        }
        let n = 1usize << k;
        let meet = (0..n).map(|a| (0..n).map(|b| a & b).collect()).collect();
        let join = (0..n).map(|a| (0..n).map(|b| a | b).collect()).collect();
        Self::from_tables(meet, join)
    }

    pub fn len(&self) -> usize {
        self.meet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.meet.is_empty()
    }

    pub fn meet_table(&self) -> &[Vec<usize>] {
        &self.meet
    }

    pub fn join_table(&self) -> &[Vec<usize>] {
        &self.join
    }

    pub fn label(&self, id: usize) -> String {
        match &self.labels {
            Some(l) => l[id].clone(),
            None => id.to_string(),
        }
    }

    /// The numeric value of an element's label, when it parses as a rational.
    pub fn label_value(&self, id: usize) -> Option<Rational> {
        crate::scalar::parse_rational(&self.label(id)).ok()
    }

    /// Resolves a JSON element literal: a label when labels are present, else an id.
    pub fn resolve(&self, v: &Value) -> Result<usize> {
        let key = match v {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            _ => return Err(Error::input(format!("bad element literal {v}"))),
        };
        match &self.labels {
            Some(labels) => labels
                .iter()
                .position(|l| *l == key)
                .ok_or_else(|| Error::input(format!("no element labelled {key}"))),
            None => key
                .parse::<usize>()
                .ok()
                .filter(|&id| id < self.len())
                .ok_or(Error::NotInLattice),
        }
    }

    pub fn bottom(&self) -> usize {
        (0..self.len()).fold(0, |acc, x| self.meet[acc][x])
    }

    pub fn top(&self) -> usize {
        (0..self.len()).fold(0, |acc, x| self.join[acc][x])
    }
}

impl Lattice for TableLattice {
    type Elem = usize;

    fn contains(&self, a: &usize) -> bool {
        *a < self.len()
    }

    fn meet(&self, a: &usize, b: &usize) -> usize {
        self.meet[*a][*b]
    }

    fn join(&self, a: &usize, b: &usize) -> usize {
        self.join[*a][*b]
    }

    fn describe(&self, a: &usize) -> Value {
        let label = self.label(*a);
        match label.parse::<i64>() {
            Ok(i) => Value::from(i),
            Err(_) => Value::from(label),
        }
    }
}

impl FiniteLattice for TableLattice {
    fn size(&self) -> usize {
        self.len()
    }

    fn elements(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

/// The diamond `M3` on labels `1..=5`: bottom 1, top 5, atoms 2, 3, 4.
pub fn build_m3() -> TableLattice {
    // ids 0..5 carry labels 1..=5
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (0, 4)];
    TableLattice::from_order(5, &pairs)
        .and_then(|t| t.with_labels((1..=5).map(|i| i.to_string()).collect()))
        .expect("M3 order relation is a lattice")
}

/// Exhaustively checks the lattice axioms of a meet/join table.
pub fn validate_table_lattice(t: &TableLattice) -> CheckReport {
    let n = t.len();
    let m = |a: usize, b: usize| t.meet[a][b];
    let j = |a: usize, b: usize| t.join[a][b];
    let mut checked = 0u64;
    let fail = |law: &str, tuple: &[usize], lhs: usize, rhs: usize| Witness {
        tuple: tuple.iter().map(|&x| t.describe(&x)).collect(),
        lhs: t.describe(&lhs),
        rhs: t.describe(&rhs),
        note: Some(law.to_string()),
    };
    let mut witness = None;
    'scan: {
        for a in 0..n {
            checked += 2;
            if m(a, a) != a {
                witness = Some(fail("meet idempotence", &[a], m(a, a), a));
                break 'scan;
            }
            if j(a, a) != a {
                witness = Some(fail("join idempotence", &[a], j(a, a), a));
                break 'scan;
            }
        }
        for a in 0..n {
            for b in 0..n {
                checked += 4;
                if m(a, b) != m(b, a) {
                    witness = Some(fail("meet commutativity", &[a, b], m(a, b), m(b, a)));
                    break 'scan;
                }
                if j(a, b) != j(b, a) {
                    witness = Some(fail("join commutativity", &[a, b], j(a, b), j(b, a)));
                    break 'scan;
                }
                if j(a, m(a, b)) != a {
                    witness = Some(fail("absorption a v (a ^ b) = a", &[a, b], j(a, m(a, b)), a));
                    break 'scan;
                }
                if m(a, j(a, b)) != a {
                    witness = Some(fail("absorption a ^ (a v b) = a", &[a, b], m(a, j(a, b)), a));
                    break 'scan;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    checked += 2;
                    if m(a, m(b, c)) != m(m(a, b), c) {
                        witness = Some(fail(
                            "meet associativity",
                            &[a, b, c],
                            m(a, m(b, c)),
                            m(m(a, b), c),
                        ));
                        break 'scan;
                    }
                    if j(a, j(b, c)) != j(j(a, b), c) {
                        witness = Some(fail(
                            "join associativity",
                            &[a, b, c],
                            j(a, j(b, c)),
                            j(j(a, b), c),
                        ));
                        break 'scan;
                    }
                }
            }
        }
    }
    CheckReport::from_scan(checked, ReportMode::Exhaustive, witness)
}

/// Checks `a ^ (b v c) = (a ^ b) v (a ^ c)` over all triples.
pub fn is_distributive<L: FiniteLattice>(l: &L) -> CheckReport {
    let elems = l.elements();
    let n = elems.len() as u64;
    let first = crate::report::first_failure(n * n * n, |idx| {
        let (a, b, c) = (
            &elems[(idx / (n * n)) as usize],
            &elems[((idx / n) % n) as usize],
            &elems[(idx % n) as usize],
        );
        let lhs = l.meet(a, &l.join(b, c));
        let rhs = l.join(&l.meet(a, b), &l.meet(a, c));
        (lhs != rhs).then(|| Witness {
            tuple: vec![l.describe(a), l.describe(b), l.describe(c)],
            lhs: l.describe(&lhs),
            rhs: l.describe(&rhs),
            note: Some("a ^ (b v c) = (a ^ b) v (a ^ c)".into()),
        })
    });
    CheckReport::from_scan(n * n * n, ReportMode::Exhaustive, first.map(|(_, w)| w))
}

/// Refuses non-distributive lattices with the distributivity witness.
pub fn require_distributive<L: FiniteLattice>(l: &L) -> Result<()> {
    if l.known_distributive() {
        return Ok(());
    }
    let report = is_distributive(l);
    match report.witness {
        None => Ok(()),
        Some(w) => Err(Error::NotDistributive {
            witness: to_value(&w.tuple),
        }),
    }
}

/// Down-set lattices of every naturally labelled poset whose lattice has at
/// most `max_size` elements. Each distributive lattice of that size occurs at
/// least once up to isomorphism.
pub fn small_distributive_lattices(max_size: usize) -> Vec<TableLattice> {
    let mut out = Vec::new();
    let mut preds: Vec<u64> = Vec::new();
    grow_posets(&mut preds, max_size.min(64), &mut out);
    out
}

fn down_sets(preds: &[u64]) -> Vec<u64> {
    let mut sets = vec![0u64];
    for (p, &below) in preds.iter().enumerate() {
        let extra: Vec<u64> = sets.iter().filter(|&&d| d & below == below).map(|d| d | 1 << p).collect();
        sets.extend(extra);
    }
    sets.sort_unstable();
    sets
}

fn grow_posets(preds: &mut Vec<u64>, max_size: usize, out: &mut Vec<TableLattice>) {
    let sets = down_sets(preds);
    if sets.len() > max_size {
        return;
    }
    let index: std::collections::HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let table = |op: fn(u64, u64) -> u64| -> Vec<Vec<usize>> {
        sets.iter().map(|&a| sets.iter().map(|&b| index[&op(a, b)]).collect()).collect()
    };
    out.push(TableLattice::from_tables(table(|a, b| a & b), table(|a, b| a | b)).expect("down-sets form a lattice"));
    if preds.len() >= 63 {
        return;
    }
    for below in sets {
        preds.push(below);
        grow_posets(preds, max_size, out);
        preds.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_meet_and_join() {
        let l = FnLattice::nonneg(2, 3).unwrap();
        let a = FnElem::from_ints(&[2, 0]);
        let b = FnElem::from_ints(&[1, 3]);
        assert_eq!(l.try_meet(&a, &b).unwrap(), FnElem::from_ints(&[1, 0]));
        assert_eq!(l.try_join(&a, &b).unwrap(), FnElem::from_ints(&[2, 3]));
        assert_eq!(l.meet(&a, &a), a);
        assert!(l.try_leq(&FnElem::from_ints(&[1, 0]), &b).unwrap());
        assert!(matches!(
            l.try_meet(&a, &FnElem::from_ints(&[4, 0])),
            Err(Error::NotInLattice)
        ));
    }

    #[test]
    fn small_distributive_lattice_census() {
        let all = small_distributive_lattices(12);
        assert_eq!(all.len(), 1044);
        assert!(all.iter().all(|t| t.len() <= 12 && is_distributive(t).holds));
        // empty poset, one point, two-point chain; the antichain has 4 down-sets
        let sizes: Vec<usize> = small_distributive_lattices(3).iter().map(TableLattice::len).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn m3_operations() {
        let m3 = build_m3();
        let id = |label: i64| m3.resolve(&Value::from(label)).unwrap();
        assert_eq!(m3.describe(&m3.meet(&id(2), &id(3))), Value::from(1));
        assert_eq!(m3.describe(&m3.join(&id(2), &id(3))), Value::from(5));
        assert_eq!(m3.describe(&m3.meet(&id(2), &id(4))), Value::from(1));
        assert_eq!(m3.describe(&m3.join(&id(3), &id(4))), Value::from(5));
        assert!(!m3.leq(&id(2), &id(3)));
        assert!(m3.leq(&id(1), &id(5)));
        assert!(m3.leq(&id(4), &id(4)));
        assert!(validate_table_lattice(&m3).holds);
    }

    #[test]
    fn m3_is_not_distributive() {
        let m3 = build_m3();
        let r = is_distributive(&m3);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.tuple, vec![Value::from(2), Value::from(3), Value::from(4)]);
        assert_eq!(r.instances_checked, 125);
    }

    #[test]
    fn products_of_chains_and_boolean_lattices_are_distributive() {
        assert!(is_distributive(&FnLattice::nonneg(2, 2).unwrap()).holds);
        assert!(is_distributive(&TableLattice::boolean(3).unwrap()).holds);
        assert!(is_distributive(&TableLattice::chain(4).unwrap()).holds);
        assert!(validate_table_lattice(&TableLattice::chain(2).unwrap()).holds);
    }

    #[test]
    fn defective_table_is_reported() {
        let mut t = TableLattice::chain(3).unwrap();
        t.join[0][1] = 2;
        let r = validate_table_lattice(&t);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().note.as_deref(), Some("join commutativity"));
    }

    #[test]
    fn order_without_join_is_rejected() {
        // two maximal elements above a common bottom
        assert!(TableLattice::from_order(3, &[(0, 1), (0, 2)]).is_err());
        assert!(TableLattice::from_order(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(TableLattice::from_tables(vec![vec![0, 1]], vec![vec![0]]).is_err());
        assert!(TableLattice::from_tables(vec![vec![3]], vec![vec![0]]).is_err());
    }

    #[test]
    fn fn_lattice_caps_and_enumeration() {
        assert!(FnLattice::nonneg(7, 1).is_err());
        assert!(FnLattice::nonneg(2, 6).is_err());
        let l = FnLattice::nonneg(2, 2).unwrap();
        let elems = l.elements();
        assert_eq!(elems.len(), 9);
        assert_eq!(elems[1], FnElem::from_ints(&[1, 0]));
        assert!(elems.iter().all(|e| l.contains(e)));
    }

    #[test]
    fn generated_sublattice_is_closed() {
        let s = ExplicitLattice::generated_by(
            vec![FnElem::from_ints(&[1, 0]), FnElem::from_ints(&[0, 1])],
            100,
        )
        .unwrap();
        assert_eq!(s.size(), 4);
        assert!(ExplicitLattice::new(vec![FnElem::from_ints(&[1, 0]), FnElem::from_ints(&[0, 1])])
            .is_err());
    }
}
