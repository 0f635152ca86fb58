//! Generalized n- and (n:k)-semimodularity checkers, the insertion chain that
//! sorts a tuple into its order statistics by adjacent meet/join swaps, and the
//! diamond-lattice counterexample.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::indexed::{Indexed, TupleCodec};
use crate::lattice::{build_m3, require_distributive, FiniteLattice, FnElem, FunctionSpace, Lattice, TableLattice};
use crate::ordstats::{order_statistics, SubsetTable};
use crate::report::{
    first_failure, scan_counted, to_value, CheckOptions, CheckReport, Instance, Mode, ReportMode,
    Witness,
};
use crate::scalar::{int, ExtScalar, Rational};

type EvalFn<E, V> = dyn Fn(&[E]) -> V + Send + Sync;

/// A total map from n-tuples of lattice elements to an ordered codomain.
pub struct Functional<E, V> {
    arity: usize,
    tag: String,
    eval: Arc<EvalFn<E, V>>,
}

impl<E, V> Clone for Functional<E, V> {
    fn clone(&self) -> Self {
        Functional {
            arity: self.arity,
            tag: self.tag.clone(),
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<E, V> fmt::Debug for Functional<E, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functional")
            .field("arity", &self.arity)
            .field("tag", &self.tag)
            .finish()
    }
}

impl<E, V> Functional<E, V> {
    pub fn new(
        arity: usize,
        tag: impl Into<String>,
        eval: impl Fn(&[E]) -> V + Send + Sync + 'static,
    ) -> Self {
        Functional {
            arity,
            tag: tag.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn eval(&self, args: &[E]) -> V {
        assert_eq!(args.len(), self.arity, "functional `{}` called with wrong arity", self.tag);
        (self.eval)(args)
    }
}

type Predicate<V> = dyn Fn(&V, &V) -> bool + Send + Sync;

/// The comparison `lhs ⪯ rhs` applied as `rel(Λ(f), Λ(order statistics of f))`.
pub enum Relation<V> {
    /// `lhs >= rhs` (submodular direction)
    Ge,
    /// `lhs <= rhs` (supermodular direction)
    Le,
    /// `lhs == rhs` (modular)
    Eq,
    /// Any predicate the caller asserts is transitive; checked on encountered values.
    Custom { name: String, pred: Arc<Predicate<V>> },
}

impl<V> Clone for Relation<V> {
    fn clone(&self) -> Self {
        match self {
            Relation::Ge => Relation::Ge,
            Relation::Le => Relation::Le,
            Relation::Eq => Relation::Eq,
            Relation::Custom { name, pred } => Relation::Custom {
                name: name.clone(),
                pred: Arc::clone(pred),
            },
        }
    }
}

impl<V: Ord> Relation<V> {
    pub fn custom(name: impl Into<String>, pred: impl Fn(&V, &V) -> bool + Send + Sync + 'static) -> Self {
        Relation::Custom {
            name: name.into(),
            pred: Arc::new(pred),
        }
    }

    pub fn holds(&self, lhs: &V, rhs: &V) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Custom { pred, .. } => pred(lhs, rhs),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Relation::Ge => "ge",
            Relation::Le => "le",
            Relation::Eq => "eq",
            Relation::Custom { name, .. } => name,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ge" | ">=" => Ok(Relation::Ge),
            "le" | "<=" => Ok(Relation::Le),
            "eq" | "=" => Ok(Relation::Eq),
            other => Err(Error::input(format!("unknown relation `{other}`"))),
        }
    }
}

/// Checks `a ⪯ b ⪯ c ⟹ a ⪯ c` over all triples of `values` (sampled past the budget).
pub fn check_transitivity<V: Ord + Serialize + Clone + Send + Sync>(
    rel: &Relation<V>,
    values: &[V],
    budget: u64,
) -> CheckReport {
    let m = values.len() as u64;
    let total = m.saturating_mul(m).saturating_mul(m);
    let check = |a: &V, b: &V, c: &V| {
        (rel.holds(a, b) && rel.holds(b, c) && !rel.holds(a, c)).then(|| Witness {
            tuple: vec![to_value(a), to_value(b), to_value(c)],
            lhs: to_value(a),
            rhs: to_value(c),
            note: Some("a ⪯ b and b ⪯ c but not a ⪯ c".into()),
        })
    };
    if total <= budget {
        let hit = first_failure(total, |i| {
            let (a, b, c) = ((i / (m * m)) as usize, ((i / m) % m) as usize, (i % m) as usize);
            check(&values[a], &values[b], &values[c])
        });
        CheckReport::from_scan(total, ReportMode::Exhaustive, hit.map(|(_, w)| w))
    } else {
        let seed = 0;
        let hit = first_failure(budget, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut pick = || &values[rng.gen_range(0..values.len())];
            let (a, b, c) = (pick(), pick(), pick());
            check(a, b, c)
        });
        CheckReport::from_scan(budget, ReportMode::Sampled { seed }, hit.map(|(_, w)| w))
    }
}

/// Which argument positions form the k-windows of an (n:k) check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Windows {
    /// Consecutive positions `j+1..=j+k`, as in the definition.
    #[default]
    Contiguous,
    /// Every k-subset of positions. Exploratory; strictly stronger than the definition.
    AnySubset,
}

const MEMO_LIMIT: u64 = 1 << 22;

/// Shared machinery for scans over `L^n`: element ids, optional memo of Λ by tuple
/// code, and collection of encountered values for custom relations.
struct Scan<'a, L: FiniteLattice, V> {
    idx: Indexed<'a, L>,
    lambda: &'a Functional<L::Elem, V>,
    rel: &'a Relation<V>,
    codec: TupleCodec,
    memo: Option<Vec<OnceLock<V>>>,
    seen: Option<Mutex<BTreeSet<V>>>,
}

impl<'a, L, V> Scan<'a, L, V>
where
    L: FiniteLattice,
    V: Clone + Ord + Serialize + Send + Sync,
{
    fn new(l: &'a L, lambda: &'a Functional<L::Elem, V>, rel: &'a Relation<V>) -> Self {
        let idx = Indexed::new(l);
        let codec = TupleCodec {
            base: idx.len() as u64,
            arity: lambda.arity(),
        };
        let memo = codec
            .total()
            .filter(|&t| t <= MEMO_LIMIT)
            .map(|t| (0..t).map(|_| OnceLock::new()).collect());
        let seen = matches!(rel, Relation::Custom { .. }).then(|| Mutex::new(BTreeSet::new()));
        Scan {
            idx,
            lambda,
            rel,
            codec,
            memo,
            seen,
        }
    }

    fn value(&self, ids: &[u32]) -> V {
        let compute = || self.lambda.eval(&self.idx.materialize(ids));
        let v = match &self.memo {
            Some(memo) => memo[self.codec.encode(ids) as usize].get_or_init(compute).clone(),
            None => compute(),
        };
        if let Some(seen) = &self.seen {
            seen.lock().expect("no panics while holding the lock").insert(v.clone());
        }
        v
    }

    fn compare(&self, f: &[u32], g: &[u32], note: impl FnOnce() -> String) -> Option<Witness> {
        let lhs = self.value(f);
        let rhs = self.value(g);
        (!self.rel.holds(&lhs, &rhs)).then(|| Witness {
            tuple: self.idx.describe(f),
            lhs: to_value(&lhs),
            rhs: to_value(&rhs),
            note: Some(note()),
        })
    }

    fn random_tuple(&self, rng: &mut ChaCha8Rng) -> Vec<u32> {
        (0..self.codec.arity)
            .map(|_| rng.gen_range(0..self.idx.len() as u32))
            .collect()
    }

    /// Fails the check if a custom relation turned out not to be transitive.
    fn finish(self, report: CheckReport, budget: u64) -> Result<CheckReport> {
        if let (Some(seen), Relation::Custom { name, .. }) = (self.seen, self.rel) {
            let values: Vec<V> = seen.into_inner().expect("lock not poisoned").into_iter().collect();
            let t = check_transitivity(self.rel, &values, budget);
            if !t.holds {
                return Err(Error::NotTransitive {
                    name: name.clone(),
                    report: Box::new(t),
                });
            }
        }
        Ok(report)
    }
}


fn describe_ids<L: FiniteLattice>(idx: &Indexed<L>, ids: &[u32]) -> String {
    Value::Array(idx.describe(ids)).to_string()
}

/// Checks `rel(Λ(f), Λ(f_{n:1}, ..., f_{n:n}))` for all (or sampled) `f ∈ L^n`.
pub fn check_generalized_n<L, V>(
    l: &L,
    lambda: &Functional<L::Elem, V>,
    rel: &Relation<V>,
    opts: &CheckOptions,
) -> Result<CheckReport>
where
    L: FiniteLattice,
    V: Clone + Ord + Serialize + Send + Sync,
{
    let n = lambda.arity();
    if n == 0 {
        return Err(Error::input("functional must have arity at least 1"));
    }
    if n == 1 {
        return Ok(CheckReport::pass(0, opts.report_mode()));
    }
    let scan = Scan::new(l, lambda, rel);
    let subsets = SubsetTable::new(n);
    let check = |ids: &[u32]| {
        let ord = scan.idx.order_statistics(ids, &subsets);
        scan.compare(ids, &ord, || {
            format!("order statistics {}", describe_ids(&scan.idx, &ord))
        })
    };
    let report = match opts.mode {
        Mode::Exhaustive => {
            let total = scan.codec.total_u128();
            opts.ensure_within_budget(total)?;
            let total = total as u64;
            let hit = first_failure(total, |code| {
                let mut ids = vec![0; n];
                scan.codec.decode(code, &mut ids);
                check(&ids)
            });
            CheckReport::from_scan(total, opts.report_mode(), hit.map(|(_, w)| w))
        }
        Mode::Sampled { seed, samples } => {
            opts.ensure_within_budget(samples as u128)?;
            let hit = first_failure(samples, |i| check(&scan.random_tuple(&mut crate::random::instance_rng(seed, i))));
            CheckReport::from_scan(samples, opts.report_mode(), hit.map(|(_, w)| w))
        }
    };
    scan.finish(report, opts.budget)
}

/// Checks generalized (n:k)-semimodularity over contiguous windows.
pub fn check_generalized_nk<L, V>(
    l: &L,
    lambda: &Functional<L::Elem, V>,
    k: usize,
    rel: &Relation<V>,
    opts: &CheckOptions,
) -> Result<CheckReport>
where
    L: FiniteLattice,
    V: Clone + Ord + Serialize + Send + Sync,
{
    check_generalized_nk_windows(l, lambda, k, rel, opts, Windows::Contiguous)
}

/// For every window of `k` positions and every tuple `f ∈ L^n`, compares Λ(f)
/// with Λ of `f` whose window is replaced by its own order statistics. With
/// contiguous windows the instance count is `(n-k+1)·|L|^n`.
pub fn check_generalized_nk_windows<L, V>(
    l: &L,
    lambda: &Functional<L::Elem, V>,
    k: usize,
    rel: &Relation<V>,
    opts: &CheckOptions,
    windows: Windows,
) -> Result<CheckReport>
where
    L: FiniteLattice,
    V: Clone + Ord + Serialize + Send + Sync,
{
    let n = lambda.arity();
    if k == 0 || k > n {
        return Err(Error::input(format!("window size k={k} must satisfy 1 <= k <= n={n}")));
    }
    if k == 1 {
        return Ok(CheckReport::pass(0, opts.report_mode()));
    }
    let positions: Vec<Vec<usize>> = match windows {
        Windows::Contiguous => (0..=n - k).map(|j| (j..j + k).collect()).collect(),
        Windows::AnySubset => (0..n).combinations(k).collect(),
    };
    let scan = Scan::new(l, lambda, rel);
    let subsets = SubsetTable::new(k);
    let check = |w: usize, ids: &[u32]| {
        let window = &positions[w];
        let sub: Vec<u32> = window.iter().map(|&p| ids[p]).collect();
        let sorted = scan.idx.order_statistics(&sub, &subsets);
        let mut g = ids.to_vec();
        for (&p, v) in window.iter().zip(sorted) {
            g[p] = v;
        }
        scan.compare(ids, &g, || {
            format!(
                "window positions {:?} replaced: {}",
                window.iter().map(|p| p + 1).collect::<Vec<_>>(),
                describe_ids(&scan.idx, &g)
            )
        })
    };
    let report = match opts.mode {
        Mode::Exhaustive => {
            let per_window = scan.codec.total_u128();
            let total = per_window.saturating_mul(positions.len() as u128);
            opts.ensure_within_budget(total)?;
            let per_window = per_window as u64;
            // window-major order: all tuples for window 1, then window 2, ...
            let hit = first_failure(total as u64, |code| {
                let mut ids = vec![0; n];
                scan.codec.decode(code % per_window, &mut ids);
                check((code / per_window) as usize, &ids)
            });
            CheckReport::from_scan(total as u64, opts.report_mode(), hit.map(|(_, w)| w))
        }
        Mode::Sampled { seed, samples } => {
            opts.ensure_within_budget(samples as u128)?;
            let hit = first_failure(samples, |i| {
                let mut rng = crate::random::instance_rng(seed, i);
                let w = rng.gen_range(0..positions.len());
                check(w, &scan.random_tuple(&mut rng))
            });
            CheckReport::from_scan(samples, opts.report_mode(), hit.map(|(_, w)| w))
        }
    };
    scan.finish(report, opts.budget)
}

/// The weakened hypothesis: for each `j ∈ 1..n` and each tuple with
/// `f_1 <= ... <= f_j`, compares Λ(f) with Λ of `f` whose positions `j, j+1`
/// are replaced by `f_j ∧ f_{j+1}, f_j ∨ f_{j+1}`. Only tuples meeting the
/// precondition are counted.
pub fn check_relaxed_hypothesis<L, V>(
    l: &L,
    lambda: &Functional<L::Elem, V>,
    rel: &Relation<V>,
    opts: &CheckOptions,
) -> Result<CheckReport>
where
    L: FiniteLattice,
    V: Clone + Ord + Serialize + Send + Sync,
{
    let n = lambda.arity();
    if n < 2 {
        return Err(Error::input("relaxed hypothesis needs arity at least 2"));
    }
    let scan = Scan::new(l, lambda, rel);
    let check = |j: usize, ids: &[u32]| -> Instance<Witness> {
        // j is 1-based; positions j-1 and j are swapped
        if !(1..j).all(|p| scan.idx.leq(ids[p - 1], ids[p])) {
            return Instance::Skipped;
        }
        let mut g = ids.to_vec();
        g[j - 1] = scan.idx.meet(ids[j - 1], ids[j]);
        g[j] = scan.idx.join(ids[j - 1], ids[j]);
        match scan.compare(ids, &g, || format!("j = {j}")) {
            Some(w) => Instance::Failed(w),
            None => Instance::Passed,
        }
    };
    let report = match opts.mode {
        Mode::Exhaustive => {
            let per_j = scan.codec.total_u128();
            let total = per_j.saturating_mul(n as u128 - 1);
            opts.ensure_within_budget(total)?;
            let per_j = per_j as u64;
            let (count, hit) = scan_counted(total as u64, |code| {
                let mut ids = vec![0; n];
                scan.codec.decode(code % per_j, &mut ids);
                check((code / per_j) as usize + 1, &ids)
            });
            CheckReport::from_scan(count, opts.report_mode(), hit.map(|(_, w)| w))
        }
        Mode::Sampled { seed, samples } => {
            opts.ensure_within_budget(samples as u128)?;
            let (count, hit) = scan_counted(samples, |i| {
                let mut rng = crate::random::instance_rng(seed, i);
                let j = rng.gen_range(1..n);
                let mut ids = scan.random_tuple(&mut rng);
                // draw the prefix as a chain so the precondition is met
                ids[..j].sort_by(|&a, &b| {
                    if a == b {
                        std::cmp::Ordering::Equal
                    } else if scan.idx.leq(a, b) {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    }
                });
                check(j, &ids)
            });
            CheckReport::from_scan(count, opts.report_mode(), hit.map(|(_, w)| w))
        }
    };
    scan.finish(report, opts.budget)
}

/// Rows `g_0, ..., g_{n-1}` of the insertion array. Row 0 is the order
/// statistics of the first `n-1` arguments followed by `f_n`; row `k` replaces
/// positions `n-k, n-k+1` (1-based) of row `k-1` by their meet and join.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionChain<E> {
    pub rows: Vec<Vec<E>>,
}

impl<E> InsertionChain<E> {
    pub fn arity(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn final_row(&self) -> &[E] {
        self.rows.last().expect("chains have at least one row")
    }
}

fn build_chain<L: Lattice>(l: &L, f: &[L::Elem]) -> InsertionChain<L::Elem> {
    let n = f.len();
    if n == 1 {
        return InsertionChain {
            rows: vec![f.to_vec()],
        };
    }
    let prefix = build_chain(l, &f[..n - 1]);
    let mut row: Vec<L::Elem> = prefix.final_row().to_vec();
    row.push(f[n - 1].clone());
    let mut rows = vec![row];
    for k in 1..n {
        let prev = rows.last().expect("row 0 exists");
        let (a, b) = (n - k - 1, n - k); // 0-based positions n-k, n-k+1
        let mut next = prev.clone();
        next[a] = l.meet(&prev[a], &prev[b]);
        next[b] = l.join(&prev[a], &prev[b]);
        rows.push(next);
    }
    InsertionChain { rows }
}

/// Builds the insertion chain of `f` in a distributive lattice.
pub fn insertion_chain<L: FiniteLattice>(l: &L, f: &[L::Elem]) -> Result<InsertionChain<L::Elem>> {
    if f.is_empty() {
        return Err(Error::input("tuple must have at least one element"));
    }
    f.iter().try_for_each(|e| l.check_member(e))?;
    require_distributive(l)?;
    Ok(build_chain(l, f))
}

/// Insertion chain of arbitrary functions on a common ground set.
pub fn insertion_chain_fn(f: &[FnElem]) -> Result<InsertionChain<FnElem>> {
    let Some(first) = f.first() else {
        return Err(Error::input("tuple must have at least one element"));
    };
    let space = FunctionSpace { size: first.len() };
    f.iter().try_for_each(|e| space.check_member(e))?;
    Ok(build_chain(&space, f))
}

/// Insertion chain in a table lattice, computed on its set representation and
/// mapped back to element ids.
pub fn insertion_chain_table(t: &TableLattice, f: &[usize]) -> Result<InsertionChain<usize>> {
    f.iter().try_for_each(|e| t.check_member(e))?;
    let emb = crate::birkhoff::birkhoff_embed(t)?;
    let images: Vec<FnElem> = f.iter().map(|&x| emb.map(x).clone()).collect();
    let chain = insertion_chain_fn(&images)?;
    let rows = chain
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|g| emb.lift(g).expect("meets and joins stay in the image"))
                .collect()
        })
        .collect();
    Ok(InsertionChain { rows })
}

/// Checks the sortedness assertions `(A_k)` at every point of the ground set:
/// `g_{k,j} <= g_{k,j+1}` for `j ∈ [1, n-k-2] ∪ [n-k, n-1]`, and
/// `g_{k,n-k-1} <= g_{k,n-k+1}` when `k <= n-2`.
pub fn verify_lemma_ak(chain: &InsertionChain<FnElem>) -> Result<CheckReport> {
    let n = chain.arity();
    if n == 0 {
        return Err(Error::input("empty chain"));
    }
    if chain.rows.len() != n || chain.rows.iter().any(|r| r.len() != n) {
        return Err(Error::input(format!(
            "chain of arity {n} must have {n} rows of length {n}"
        )));
    }
    let width = chain.rows[0][0].len();
    if chain.rows.iter().flatten().any(|g| g.len() != width) {
        return Err(Error::input("chain entries have different ground sizes"));
    }
    let g = |k: usize, j: usize, s: usize| &chain.rows[k][j - 1].0[s];
    let mut checked = 0u64;
    for k in 1..n {
        let mut pairs: Vec<(usize, usize)> = (1..=(n - k).saturating_sub(2))
            .chain(n - k..=n - 1)
            .map(|j| (j, j + 1))
            .collect();
        if k + 2 <= n {
            pairs.push((n - k - 1, n - k + 1));
        }
        for s in 0..width {
            for &(a, b) in &pairs {
                checked += 1;
                if g(k, a, s) > g(k, b, s) {
                    let w = Witness {
                        tuple: vec![Value::from(k), Value::from(a), Value::from(s)],
                        lhs: to_value(g(k, a, s)),
                        rhs: to_value(g(k, b, s)),
                        note: Some(format!("g[{k},{a}]({s}) <= g[{k},{b}]({s}) fails")),
                    };
                    return Ok(CheckReport::from_scan(checked, ReportMode::Exhaustive, Some(w)));
                }
            }
        }
    }
    Ok(CheckReport::pass(checked, ReportMode::Exhaustive))
}

/// Checks `rel(Λ(row_{k-1}), Λ(row_k))` for each consecutive pair of chain rows.
pub fn check_chain_steps<E: Clone, V: Ord + Serialize>(
    lambda: &Functional<E, V>,
    chain: &InsertionChain<E>,
    rel: &Relation<V>,
) -> CheckReport {
    let values: Vec<V> = chain.rows.iter().map(|r| lambda.eval(r)).collect();
    let witness = values.windows(2).enumerate().find_map(|(k, w)| {
        (!rel.holds(&w[0], &w[1])).then(|| Witness {
            tuple: vec![Value::from(k), Value::from(k + 1)],
            lhs: to_value(&w[0]),
            rhs: to_value(&w[1]),
            note: Some("consecutive chain rows".into()),
        })
    });
    CheckReport::from_scan(values.len().saturating_sub(1) as u64, ReportMode::Exhaustive, witness)
}

/// `Σ c · v(f_i) · v(f_j)` on a table lattice whose labels are numbers.
/// Terms are `(c, i, j)` with 1-based argument positions.
pub fn quadratic_functional(
    t: &TableLattice,
    terms: &[(Rational, usize, usize)],
    arity: usize,
) -> Result<Functional<usize, ExtScalar>> {
    let values: Vec<Rational> = (0..t.len())
        .map(|id| {
            t.label_value(id).ok_or_else(|| {
                Error::input(format!("label `{}` of element {id} is not numeric", t.label(id)))
            })
        })
        .collect::<Result<_>>()?;
    for &(_, i, j) in terms {
        if i == 0 || j == 0 || i > arity || j > arity {
            return Err(Error::input(format!("term index ({i}, {j}) out of range 1..={arity}")));
        }
    }
    let terms = terms.to_vec();
    Ok(Functional::new(arity, "quadratic", move |f: &[usize]| {
        terms
            .iter()
            .map(|(c, i, j)| c * &values[f[i - 1]] * &values[f[j - 1]])
            .sum::<Rational>()
            .into()
    }))
}

/// `Λ(f_1, f_2, f_3) = 12 f_1 f_2 + 3 f_2 f_3 + 5 f_1 f_3` on the diamond with
/// labels read as numbers.
pub fn m3_functional(m3: &TableLattice) -> Functional<usize, ExtScalar> {
    quadratic_functional(m3, &[(int(12), 1, 2), (int(3), 2, 3), (int(5), 1, 3)], 3)
        .expect("M3 labels are numeric")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct M3Report {
    pub tuple: Vec<Value>,
    pub order_statistics: Vec<Value>,
    pub order_statistics_dual: Vec<Value>,
    pub lambda_at_tuple: ExtScalar,
    pub lambda_at_order_statistics: ExtScalar,
    pub k2_check: CheckReport,
    pub n_check: CheckReport,
    pub distributivity: CheckReport,
    pub reproduced: bool,
}

/// The diamond-lattice counterexample: (3:2)-submodular but not 3-submodular.
pub fn run_counterexample_m3() -> M3Report {
    let m3 = build_m3();
    let lambda = m3_functional(&m3);
    let id = |x: i64| m3.resolve(&Value::from(x)).expect("label exists");
    let f = [id(2), id(3), id(4)];
    let ord = order_statistics(&m3, &f).expect("valid tuple");
    let dual = crate::ordstats::order_statistics_dual(&m3, &f).expect("valid tuple");
    let opts = CheckOptions::exhaustive();
    let k2 = check_generalized_nk(&m3, &lambda, 2, &Relation::Ge, &opts).expect("tiny scan");
    let n3 = check_generalized_n(&m3, &lambda, &Relation::Ge, &opts).expect("tiny scan");
    let at_f = lambda.eval(&f);
    let at_ord = lambda.eval(&ord);
    let describe = |v: &[usize]| v.iter().map(|x| m3.describe(x)).collect::<Vec<_>>();
    let reproduced = k2.holds
        && k2.instances_checked == 250
        && describe(&ord) == vec![Value::from(1), Value::from(5), Value::from(5)]
        && at_f == ExtScalar::from(148)
        && at_ord == ExtScalar::from(160)
        && !n3.holds;
    M3Report {
        tuple: describe(&f),
        order_statistics: describe(&ord),
        order_statistics_dual: describe(&dual),
        lambda_at_tuple: at_f,
        lambda_at_order_statistics: at_ord,
        k2_check: k2,
        n_check: n3,
        distributivity: crate::lattice::is_distributive(&m3),
        reproduced,
    }
}
