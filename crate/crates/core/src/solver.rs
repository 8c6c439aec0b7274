//! Exact minimal product sets by branch-and-bound over bit-vector subsets.
//!
//! The search space is normalized: for any pair `(A, B)` and `a₀ ∈ A`,
//! `b₀ ∈ B`, the translated pair `(a₀⁻¹A, B·b₀⁻¹)` has the same product
//! size, so both sets may be assumed to contain the identity. Subsets are
//! then grown by include/exclude branching — first `A` up to size `r` in
//! index order, then `B` up to size `s` with a greedy fewest-new-products
//! pivot — while the partial product `A·B_partial` only ever grows, which
//! makes its cardinality a valid pruning bound against the incumbent.
//!
//! Lower bounds: `Dkappa ≤ mu` holds for solvable groups (all metacyclic
//! groups qualify), and the search stops the moment the incumbent reaches
//! it. At the first branching level, candidates for the smallest
//! non-identity element of `A` are restricted to conjugacy-class minima:
//! conjugating a solution by `g` maps `(A, B)` to `(gAg⁻¹, gBg⁻¹)` with
//! the same product size, and some conjugate of any solution has its
//! smallest non-identity element equal to a class minimum.
//!
//! A budget turns an unfinished search into an honest
//! [`SearchStatus::UpperBoundOnly`] result, never an error.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bounds::{self, BoundsContext};
use crate::lattice::{self, LatticeError};
use crate::presentation::GroupTable;
use crate::set::ElementSet;
use crate::witness::{self, WitnessPair};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid query (r, s) = ({r}, {s}) for a group of order {order}")]
    InvalidQuery { r: u32, s: u32, order: u32 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Which lower bound prunes the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerBoundMode {
    /// `Dkappa(r, s)`, valid because every metacyclic group is solvable.
    DKappa,
    /// `max(r, s)` only.
    Trivial,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
    pub lower_bound_mode: LowerBoundMode,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_time: Duration::from_secs(600),
            lower_bound_mode: LowerBoundMode::DKappa,
        }
    }
}

impl SearchBudget {
    pub fn with_max_time(seconds: u64) -> Self {
        SearchBudget {
            max_time: Duration::from_secs(seconds),
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The value is exactly `mu(r, s)`.
    Optimal,
    /// Budget ran out; the value is the best incumbent, an upper bound.
    UpperBoundOnly,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub value: u32,
    pub witness: WitnessPair,
    pub status: SearchStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

struct Search<'a> {
    table: &'a GroupTable,
    order: usize,
    r: usize,
    s: usize,
    /// Stop as soon as the incumbent is ≤ this.
    target: u32,
    best: u32,
    best_pair: Option<(ElementSet, ElementSet)>,
    /// `A·x` for every `x`, refreshed when `A` completes.
    a_rows: Vec<ElementSet>,
    class_min: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    /// None means no reachable time limit.
    deadline: Option<Instant>,
    exhausted: bool,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(
        table: &'a GroupTable,
        r: usize,
        s: usize,
        initial_best: u32,
        target: u32,
        budget: &SearchBudget,
    ) -> Self {
        Search {
            table,
            order: table.order(),
            r,
            s,
            target,
            best: initial_best,
            best_pair: None,
            a_rows: vec![ElementSet::empty(); table.order()],
            class_min: table.conjugacy_class_min(),
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: Instant::now().checked_add(budget.max_time),
            exhausted: false,
            done: false,
        }
    }

    fn run(&mut self) {
        if self.best <= self.target {
            self.done = true;
            return;
        }
        let a = ElementSet::singleton(0);
        self.extend_a(a, ElementSet::empty(), 1, 1);
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes
            || (self.nodes & 0xfff == 0
                && self.deadline.is_some_and(|d| Instant::now() > d))
        {
            self.exhausted = true;
        }
        self.exhausted || self.done
    }

    /// Grow `A` by include/exclude on the lowest available index.
    fn extend_a(&mut self, a: ElementSet, excluded: ElementSet, count: usize, next: usize) {
        if self.tick() {
            return;
        }
        if count == self.r {
            self.start_b(&a);
            return;
        }
        let needed = self.r - count;
        let mut pivot = next;
        while pivot < self.order && (a.contains(pivot) || excluded.contains(pivot)) {
            pivot += 1;
        }
        if self.order - pivot < needed {
            return;
        }
        // First branching level: the smallest non-identity element of A can
        // be assumed to be a conjugacy-class minimum.
        if count > 1 || self.class_min[pivot] == pivot {
            let mut with = a;
            with.insert(pivot);
            self.extend_a(with, excluded, count + 1, pivot + 1);
        }
        let mut without = excluded;
        without.insert(pivot);
        self.extend_a(a, without, count, pivot + 1);
    }

    fn start_b(&mut self, a: &ElementSet) {
        for x in 0..self.order {
            self.a_rows[x] = self.table.right_translate(a, x);
        }
        // B starts at {identity}, so the partial product starts at A itself.
        self.extend_b(*a, ElementSet::singleton(0), ElementSet::empty(), 1, *a);
    }

    fn extend_b(
        &mut self,
        a: ElementSet,
        b: ElementSet,
        excluded: ElementSet,
        count: usize,
        prod: ElementSet,
    ) {
        if self.tick() {
            return;
        }
        // The product only grows with further insertions.
        if prod.len() as u32 >= self.best {
            return;
        }
        if count == self.s {
            self.best = prod.len() as u32;
            self.best_pair = Some((a, b));
            if self.best <= self.target {
                self.done = true;
            }
            return;
        }
        let needed = self.s - count;
        let mut avail = 0usize;
        let mut pivot = usize::MAX;
        let mut pivot_gain = usize::MAX;
        for x in 1..self.order {
            if b.contains(x) || excluded.contains(x) {
                continue;
            }
            avail += 1;
            let gain = prod.count_new(&self.a_rows[x]);
            if gain < pivot_gain {
                pivot_gain = gain;
                pivot = x;
            }
        }
        if avail < needed {
            return;
        }
        let mut with = b;
        with.insert(pivot);
        self.extend_b(a, with, excluded, count + 1, prod.union(&self.a_rows[pivot]));
        if self.done || self.exhausted {
            return;
        }
        let mut without = excluded;
        without.insert(pivot);
        self.extend_b(a, b, without, count, prod);
    }
}

/// Exact product size of a candidate pair.
fn pair_value(table: &GroupTable, a: &ElementSet, b: &ElementSet) -> u32 {
    table.product_set(a, b).len() as u32
}

/// Incumbent candidates: constructed witnesses where the family supports
/// them, unions of normal-subgroup cosets, and a greedy completion.
fn seed_pairs(table: &GroupTable, ctx: &BoundsContext, r: u32, s: u32) -> (ElementSet, ElementSet) {
    let params = table.params();
    let order = table.order();
    let mut best: Option<(u32, ElementSet, ElementSet)> = None;
    let mut offer = |value: u32, a: ElementSet, b: ElementSet| {
        if best.as_ref().is_none_or(|(v, _, _)| value < *v) {
            best = Some((value, a, b));
        }
    };

    if params.is_abelian() || params.kmn_view().is_some() {
        if let Ok(pair) = witness::construct_witness(params, r, s) {
            offer(pair.product_size, pair.a, pair.b);
        }
    }

    // Coset unions over each normal subgroup order, trimmed to size.
    for &h in &ctx.normal_orders {
        if let Some(d) = lattice::enumerate_gamma(params)
            .into_iter()
            .find(|d| d.k == h && lattice::is_normal_descriptor(params, d))
        {
            let Ok(sub) = lattice::psi(params, &d) else {
                continue;
            };
            let mut covered = ElementSet::empty();
            let mut elems: Vec<usize> = Vec::with_capacity(order);
            for x in 0..order {
                if !covered.contains(x) {
                    let coset = table.left_translate(x, &sub.elements);
                    covered.union_with(&coset);
                    elems.extend(coset.iter());
                }
            }
            let a: ElementSet = elems.iter().copied().take(r as usize).collect();
            let b: ElementSet = elems.iter().copied().take(s as usize).collect();
            offer(pair_value(table, &a, &b), a, b);
        }
    }

    // Greedy: A = first r indices, then grow B by fewest new products.
    let a: ElementSet = (0..r as usize).collect();
    let rows: Vec<ElementSet> = (0..order).map(|x| table.right_translate(&a, x)).collect();
    let mut b = ElementSet::singleton(0);
    let mut prod = a;
    while b.len() < s as usize {
        let pick = (0..order)
            .filter(|x| !b.contains(*x))
            .min_by_key(|&x| (prod.count_new(&rows[x]), x))
            .expect("s ≤ order");
        b.insert(pick);
        prod.union_with(&rows[pick]);
    }
    offer(prod.len() as u32, a, b);

    let (_, a, b) = best.expect("at least the greedy candidate exists");
    (a, b)
}

fn make_witness(
    table: &GroupTable,
    a: ElementSet,
    b: ElementSet,
    r: u32,
    s: u32,
    note: &str,
) -> WitnessPair {
    let value = pair_value(table, &a, &b);
    let order = table.order() as u32;
    let certificate_h = bounds::divisors(order)
        .into_iter()
        .find(|&h| bounds::f_h(h, r, s) >= value)
        .unwrap_or(order);
    WitnessPair {
        a,
        b,
        product_size: value,
        certificate_h,
        trace: vec![note.to_string()],
    }
}

/// Exact `mu(r, s)` by branch-and-bound, within a budget.
pub fn exact_mu(
    table: &GroupTable,
    r: u32,
    s: u32,
    budget: &SearchBudget,
) -> Result<SearchResult, SolverError> {
    let ctx = BoundsContext::new(table.params())?;
    exact_mu_with_floor(table, &ctx, r, s, 0, budget)
}

/// As [`exact_mu`], with an extra externally-known lower bound (e.g. a
/// neighboring optimal cell, by monotonicity).
pub fn exact_mu_with_floor(
    table: &GroupTable,
    ctx: &BoundsContext,
    r: u32,
    s: u32,
    lb_floor: u32,
    budget: &SearchBudget,
) -> Result<SearchResult, SolverError> {
    let order = table.order() as u32;
    if r < 1 || r > order || s < 1 || s > order {
        return Err(SolverError::InvalidQuery { r, s, order });
    }
    if r > s {
        // mu is symmetric through (A, B) ↦ (B⁻¹, A⁻¹).
        let mut res = exact_mu_with_floor(table, ctx, s, r, lb_floor, budget)?;
        let a = table.inverse_set(&res.witness.b);
        let b = table.inverse_set(&res.witness.a);
        res.witness = make_witness(table, a, b, r, s, "transposed branch-and-bound witness");
        debug_assert_eq!(res.witness.product_size, res.value);
        return res_ok(res);
    }

    let start = Instant::now();
    let lb = match budget.lower_bound_mode {
        LowerBoundMode::DKappa => ctx.profile(r, s).dkappa,
        LowerBoundMode::Trivial => r.max(s),
    }
    .max(lb_floor);

    let (seed_a, seed_b) = seed_pairs(table, ctx, r, s);
    let seed_value = pair_value(table, &seed_a, &seed_b);
    debug_assert!(seed_value >= lb, "lower bound exceeds an achieved value");

    let mut search = Search::new(table, r as usize, s as usize, seed_value, lb, budget);
    search.run();

    let (value, a, b) = match search.best_pair {
        Some((a, b)) => (search.best, a, b),
        None => (seed_value, seed_a, seed_b),
    };
    let status = if search.exhausted && value > lb {
        SearchStatus::UpperBoundOnly
    } else {
        SearchStatus::Optimal
    };
    let witness = make_witness(table, a, b, r, s, "branch-and-bound witness");
    debug_assert_eq!(witness.product_size, value);
    res_ok(SearchResult {
        value,
        witness,
        status,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
    })
}

fn res_ok(res: SearchResult) -> Result<SearchResult, SolverError> {
    debug_assert!(res.value >= res.witness.a.len().max(res.witness.b.len()) as u32);
    Ok(res)
}

/// Witness-free decision search: `Some(true)` proves `mu(r, s) > bound`,
/// `Some(false)` means a pair with `|A·B| ≤ bound` was found, `None` means
/// the budget ran out first.
pub fn mu_exceeds(
    table: &GroupTable,
    r: u32,
    s: u32,
    bound: u32,
    budget: &SearchBudget,
) -> Result<Option<bool>, SolverError> {
    let order = table.order() as u32;
    if r < 1 || r > order || s < 1 || s > order {
        return Err(SolverError::InvalidQuery { r, s, order });
    }
    let (r, s) = (r.min(s), r.max(s));
    let ctx = BoundsContext::new(table.params())?;
    let lb = match budget.lower_bound_mode {
        LowerBoundMode::DKappa => ctx.profile(r, s).dkappa,
        LowerBoundMode::Trivial => r.max(s),
    };
    if lb > bound {
        return Ok(Some(true));
    }
    let mut search = Search::new(table, r as usize, s as usize, bound + 1, bound, budget);
    search.run();
    if search.best <= bound {
        Ok(Some(false))
    } else if search.exhausted {
        Ok(None)
    } else {
        Ok(Some(true))
    }
}

/// Full upper-triangular table of `mu` values for `1 ≤ r ≤ s ≤ |G|`;
/// symmetry answers the rest. Optimal neighbor cells feed the next cell's
/// lower bound via the monotonicity `mu(r−1, s) ≤ mu(r, s)`.
pub struct MuTable {
    pub order: usize,
    cells: Vec<SearchResult>,
}

impl MuTable {
    fn index(&self, r: u32, s: u32) -> usize {
        let (r, s) = (r.min(s) as usize, r.max(s) as usize);
        (s - 1) * s / 2 + (r - 1)
    }

    pub fn get(&self, r: u32, s: u32) -> &SearchResult {
        &self.cells[self.index(r, s)]
    }

    /// Cells in row-major `(s, r ≤ s)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &SearchResult)> + '_ {
        (1..=self.order as u32)
            .flat_map(move |s| (1..=s).map(move |r| ((r, s), self.get(r, s))))
    }
}

pub fn mu_table(table: &GroupTable, budget: &SearchBudget) -> Result<MuTable, SolverError> {
    let order = table.order();
    let ctx = BoundsContext::new(table.params())?;
    let mut out = MuTable {
        order,
        cells: Vec::with_capacity(order * (order + 1) / 2),
    };
    for s in 1..=order as u32 {
        for r in 1..=s {
            let mut floor = 0;
            if r > 1 {
                let left = out.get(r - 1, s);
                if left.status == SearchStatus::Optimal {
                    floor = floor.max(left.value);
                }
            }
            if s > 1 && r < s {
                let down = out.get(r, s - 1);
                if down.status == SearchStatus::Optimal {
                    floor = floor.max(down.value);
                }
            }
            let res = exact_mu_with_floor(table, &ctx, r, s, floor, budget)?;
            out.cells.push(res);
        }
    }
    Ok(out)
}

/// Ground-truth oracle: minimize `|A·B|` over ALL `r`-subsets and
/// `s`-subsets, no normalization, no pruning. Only sensible for tiny
/// groups.
pub fn naive_mu(table: &GroupTable, r: u32, s: u32) -> u32 {
    let order = table.order();
    assert!(order <= 16, "naive enumeration is for |G| ≤ 16");
    assert!(1 <= r && r as usize <= order && 1 <= s && s as usize <= order);
    let mut min = u32::MAX;
    for_each_subset(order, r as usize, &mut |a| {
        for_each_subset(order, s as usize, &mut |b| {
            min = min.min(pair_value(table, a, b));
        });
    });
    min
}

/// Visit every `size`-subset of `{0, …, n−1}` in lexicographic order.
fn for_each_subset(n: usize, size: usize, f: &mut impl FnMut(&ElementSet)) {
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx.iter().copied().collect());
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The lexicographically least normalized pair achieving `value`, found by
/// plain index-order search with no symmetry reduction. For reproducible
/// artifacts.
pub fn lex_min_witness(
    table: &GroupTable,
    r: u32,
    s: u32,
    value: u32,
) -> Option<(ElementSet, ElementSet)> {
    fn grow(
        table: &GroupTable,
        set: ElementSet,
        size: usize,
        next: usize,
        check: &mut impl FnMut(&ElementSet) -> bool,
    ) -> bool {
        if set.len() == size {
            return check(&set);
        }
        let order = table.order();
        let needed = size - set.len();
        for pivot in next..order {
            if order - pivot < needed {
                return false;
            }
            let mut with = set;
            with.insert(pivot);
            if grow(table, with, size, pivot + 1, check) {
                return true;
            }
        }
        false
    }

    let mut found = None;
    grow(
        table,
        ElementSet::singleton(0),
        r as usize,
        1,
        &mut |a: &ElementSet| {
            let a = *a;
            grow(
                table,
                ElementSet::singleton(0),
                s as usize,
                1,
                &mut |b: &ElementSet| {
                    if pair_value(table, &a, b) == value {
                        found = Some((a, *b));
                        true
                    } else {
                        false
                    }
                },
            )
        },
    );
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{cyclic_params, kmn_params, validate_params, GroupTable};
    use rand::prelude::*;

    fn table_of(params: crate::presentation::PresentationParams) -> GroupTable {
        GroupTable::build(params).unwrap()
    }

    #[test]
    fn z5_cauchy_davenport_cell() {
        let t = table_of(cyclic_params(5).unwrap());
        let res = exact_mu(&t, 2, 3, &SearchBudget::default()).unwrap();
        assert_eq!(res.value, 4);
        assert_eq!(res.status, SearchStatus::Optimal);
    }

    #[test]
    fn d3_reflection_pair() {
        let t = table_of(kmn_params(3, 1, 0).unwrap().params);
        let res = exact_mu(&t, 2, 2, &SearchBudget::default()).unwrap();
        assert_eq!(res.value, 2);
        assert_eq!(res.status, SearchStatus::Optimal);
        assert_eq!(res.witness.product_size, 2);
    }

    #[test]
    fn d3_table_equals_kappa() {
        let params = kmn_params(3, 1, 0).unwrap().params;
        let t = table_of(params);
        let ctx = BoundsContext::new(&params).unwrap();
        let table = mu_table(&t, &SearchBudget::default()).unwrap();
        for ((r, s), cell) in table.iter() {
            assert_eq!(cell.status, SearchStatus::Optimal);
            assert_eq!(cell.value, ctx.profile(r, s).kappa, "at ({r}, {s})");
        }
    }

    #[test]
    fn q8_and_z4_tables_equal_kappa() {
        for params in [
            kmn_params(4, 1, 2).unwrap().params,
            cyclic_params(4).unwrap(),
        ] {
            let t = table_of(params);
            let ctx = BoundsContext::new(&params).unwrap();
            let table = mu_table(&t, &SearchBudget::default()).unwrap();
            for ((r, s), cell) in table.iter() {
                assert_eq!(cell.status, SearchStatus::Optimal);
                assert_eq!(cell.value, ctx.profile(r, s).kappa, "at ({r}, {s})");
            }
        }
    }

    #[test]
    fn naive_agreement_tiny() {
        for params in [
            kmn_params(3, 1, 0).unwrap().params,
            cyclic_params(5).unwrap(),
            kmn_params(4, 1, 2).unwrap().params,
        ] {
            let t = table_of(params);
            let order = t.order() as u32;
            for r in 1..=order {
                for s in 1..=order {
                    let res = exact_mu(&t, r, s, &SearchBudget::default()).unwrap();
                    assert_eq!(res.status, SearchStatus::Optimal);
                    assert_eq!(res.value, naive_mu(&t, r, s), "{params:?} at ({r}, {s})");
                }
            }
        }
    }

    #[test]
    fn symmetry_and_monotonicity() {
        let t = table_of(kmn_params(5, 1, 0).unwrap().params);
        let budget = SearchBudget::default();
        let order = t.order() as u32;
        let mut prev: Vec<u32> = vec![0; order as usize + 1];
        for s in 1..=order {
            for r in 1..=order {
                let v = exact_mu(&t, r, s, &budget).unwrap().value;
                let vt = exact_mu(&t, s, r, &budget).unwrap().value;
                assert_eq!(v, vt, "symmetry at ({r}, {s})");
                assert!(v >= prev[r as usize], "monotone in s at ({r}, {s})");
                prev[r as usize] = v;
            }
        }
    }

    /// Translation normalization: `|A·B| = |(a₀⁻¹A)(B·b₀⁻¹)|` for random
    /// sets and random base points.
    #[test]
    fn normalization_invariance_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for params in [
            kmn_params(3, 1, 0).unwrap().params,
            validate_params(7, 3, 0, 2).unwrap(),
        ] {
            let t = table_of(params);
            let order = t.order();
            for _ in 0..2000 {
                let a: ElementSet = (0..order).filter(|_| rng.random_bool(0.4)).collect();
                let b: ElementSet = (0..order).filter(|_| rng.random_bool(0.4)).collect();
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let a0 = a.iter().nth(rng.random_range(0..a.len())).unwrap();
                let b0 = b.iter().nth(rng.random_range(0..b.len())).unwrap();
                let na = t.left_translate(t.inv_idx(a0), &a);
                let nb = t.right_translate(&b, t.inv_idx(b0));
                assert!(na.contains(0) && nb.contains(0));
                assert_eq!(
                    t.product_set(&a, &b).len(),
                    t.product_set(&na, &nb).len()
                );
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_honest() {
        let t = table_of(validate_params(7, 3, 0, 2).unwrap());
        let budget = SearchBudget {
            max_nodes: 16,
            max_time: Duration::from_secs(60),
            lower_bound_mode: LowerBoundMode::Trivial,
        };
        let res = exact_mu(&t, 5, 9, &budget).unwrap();
        assert_eq!(res.status, SearchStatus::UpperBoundOnly);
        assert!(res.value >= 13);
        assert_eq!(
            res.value,
            pair_value(&t, &res.witness.a, &res.witness.b)
        );
    }

    #[test]
    fn mu_exceeds_decides() {
        let t = table_of(kmn_params(3, 1, 0).unwrap().params);
        // mu(2, 2) = 2 in D₃.
        assert_eq!(
            mu_exceeds(&t, 2, 2, 1, &SearchBudget::default()).unwrap(),
            Some(true)
        );
        assert_eq!(
            mu_exceeds(&t, 2, 2, 2, &SearchBudget::default()).unwrap(),
            Some(false)
        );
    }

    #[test]
    fn lex_min_witness_is_reproducible() {
        let t = table_of(kmn_params(3, 1, 0).unwrap().params);
        let value = exact_mu(&t, 2, 2, &SearchBudget::default()).unwrap().value;
        let (a, b) = lex_min_witness(&t, 2, 2, value).unwrap();
        // {1, b} is the first order-2 subgroup in index order.
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(b, a);
    }
}
