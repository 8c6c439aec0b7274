//! The subgroup lattice of a metacyclic presentation.
//!
//! Subgroups of `⟨a, b : a^m = 1, b^n = a^g, bab⁻¹ = a^h⟩` are in bijection
//! with the descriptor set
//!
//! ```text
//! Γ = { (k, l, β) : l∣m, l∣k, k∣nl, β < m/l,
//!       β · Σ_{j=0}^{k/l−1} h^{(nl/k)·j} ≡ −g (mod m/l) }
//! ```
//!
//! via `Ψ(k, l, β) = ⟨a^{m/l}, a^β b^{nl/k}⟩`, where `k` is the subgroup
//! order and `l = |Ψ ∩ ⟨a⟩|`. Normality of `Ψ(k, l, β)` is decided by two
//! congruences without touching elements, and normal subgroups yield
//! quotient presentations `(m/l, nl/k, (−β) mod m/l, h mod m/l)`.
//!
//! Everything here is cross-checked against [`brute_force_subgroups`], an
//! element-level oracle that knows nothing about Γ.
//!
//! For the family `K_{m,n}` there is a far cheaper characterization of the
//! normal subgroup orders: `k ∈ N(K_{m,n})` iff `m ∣ k` or
//! `v₂(k) < v₂(2mn)`, exposed as [`kmn_normal_order`].

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::presentation::{
    modpow, validate_params, GroupElement, GroupTable, PresentationError, PresentationParams,
};
use crate::set::ElementSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("closure of {descriptor} has {found} elements, expected {expected}")]
    ClosureMismatch {
        descriptor: SubgroupDescriptor,
        found: usize,
        expected: u32,
    },
    #[error("{0} is not normal")]
    NotNormal(SubgroupDescriptor),
    #[error("quotient by {descriptor}: {reason}")]
    IsomorphismCheckFailed {
        descriptor: SubgroupDescriptor,
        reason: String,
    },
    #[error("subgroup orders {found:?} do not exhaust the divisors of {order}")]
    LagrangeConverseViolation { order: u32, found: Vec<u32> },
    #[error("k = {k} does not divide 2mn = {order}")]
    NotADivisor { k: u32, order: u32 },
    #[error("group order {order} exceeds the brute-force limit {max}")]
    TooLarge { order: usize, max: usize },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// A triple `(k, l, β)` naming the subgroup `Ψ(k, l, β)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupDescriptor {
    /// Subgroup order.
    pub k: u32,
    /// Order of the intersection with `⟨a⟩`.
    pub l: u32,
    /// Offset of the second generator `a^β b^{nl/k}`.
    pub beta: u32,
}

impl fmt::Debug for SubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.k, self.l, self.beta)
    }
}

impl fmt::Display for SubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ψ({}, {}, {})", self.k, self.l, self.beta)
    }
}

/// A materialized subgroup: descriptor, element set, normality flag, and
/// the two generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub descriptor: SubgroupDescriptor,
    pub elements: ElementSet,
    pub is_normal: bool,
    pub generators: (GroupElement, GroupElement),
}

/// Largest 2-power exponent: the `e` with `2^e ∣ x`.
pub fn v2(x: u64) -> u32 {
    assert!(x >= 1, "v2 is defined on positive integers");
    x.trailing_zeros()
}

/// The descriptor congruence sum `Σ_{j=0}^{t−1} h^{e·j} mod modulus`,
/// with the one-term convention for `t = 1`.
fn gamma_sum(h: u32, e: u32, t: u32, modulus: u32) -> u64 {
    let mut sum = 0u64;
    for j in 0..t {
        sum = (sum + modpow(h as u64, e as u64 * j as u64, modulus as u64)) % modulus as u64;
    }
    sum
}

/// All descriptors in Γ, in lexicographic `(k, l, β)` order. This is the
/// canonical enumeration and report order.
pub fn enumerate_gamma(params: &PresentationParams) -> Vec<SubgroupDescriptor> {
    let (m, n, g) = (params.m(), params.n_exp(), params.g());
    let mut out = Vec::new();
    for l in 1..=m {
        if m % l != 0 {
            continue;
        }
        // k = l·t with t ∣ n covers exactly the k with l ∣ k and k ∣ nl.
        for t in 1..=n {
            if n % t != 0 {
                continue;
            }
            let k = l * t;
            let modulus = m / l;
            let sum = gamma_sum(params.h(), n / t, t, modulus);
            let target = (modulus as u64 - g as u64 % modulus as u64) % modulus as u64;
            for beta in 0..modulus {
                if beta as u64 * sum % modulus as u64 == target {
                    out.push(SubgroupDescriptor { k, l, beta });
                }
            }
        }
    }
    out.sort();
    out
}

/// Decide normality of `Ψ(k, l, β)` from the descriptor alone:
/// `β(h−1) ≡ 0 (mod m/l)` and `h^{nl/k} ≡ 1 (mod m/l)`.
pub fn is_normal_descriptor(params: &PresentationParams, d: &SubgroupDescriptor) -> bool {
    let modulus = (params.m() / d.l) as u64;
    let h = params.h() as u64;
    let beta_cond = d.beta as u64 * ((h + modulus - 1) % modulus) % modulus == 0;
    let exp = params.n_exp() * d.l / d.k;
    let h_cond = modpow(h, exp as u64, modulus) == 1 % modulus;
    beta_cond && h_cond
}

/// Materialize `Ψ(k, l, β)` as the closure of its two generators.
pub fn psi(params: &PresentationParams, d: &SubgroupDescriptor) -> Result<Subgroup, LatticeError> {
    let gen1 = params.pow(params.gen_a(), (params.m() / d.l) as i64);
    let gen2 = params.mul(
        params.pow(params.gen_a(), d.beta as i64),
        params.pow(params.gen_b(), (params.n_exp() * d.l / d.k) as i64),
    );
    let elements = closure(params, &[gen1, gen2]);
    if elements.len() != d.k as usize {
        return Err(LatticeError::ClosureMismatch {
            descriptor: *d,
            found: elements.len(),
            expected: d.k,
        });
    }
    let a_part = elements.intersect(&a_coset_run(params, 0));
    if a_part.len() != d.l as usize {
        return Err(LatticeError::ClosureMismatch {
            descriptor: *d,
            found: a_part.len(),
            expected: d.l,
        });
    }
    Ok(Subgroup {
        descriptor: *d,
        elements,
        is_normal: is_normal_descriptor(params, d),
        generators: (gen1, gen2),
    })
}

/// Indices of the coset `⟨a⟩·b^j`, a contiguous run under the row-major
/// element encoding.
fn a_coset_run(params: &PresentationParams, j: u32) -> ElementSet {
    let m = params.m() as usize;
    let base = j as usize * m;
    (base..base + m).collect()
}

/// Closure of a generating set under multiplication. Positive words
/// suffice in a finite group.
fn closure(params: &PresentationParams, gens: &[GroupElement]) -> ElementSet {
    let mut set = ElementSet::singleton(params.index_of(params.identity()));
    let mut frontier = vec![params.identity()];
    while let Some(x) = frontier.pop() {
        for &gen in gens {
            let y = params.mul(x, gen);
            let idx = params.index_of(y);
            if !set.contains(idx) {
                set.insert(idx);
                frontier.push(y);
            }
        }
    }
    set
}

/// Quotient presentation plus the concrete coset correspondence realizing
/// it. Built only for normal descriptors; construction verifies that the
/// claimed presentation really is isomorphic to the coset group.
pub struct QuotientMap {
    pub descriptor: SubgroupDescriptor,
    pub params: PresentationParams,
    /// For the quotient element with dense index `q`, the coset of the
    /// parent group it names.
    pub cosets: Vec<ElementSet>,
}

impl QuotientMap {
    /// Index of the coset containing the parent element `idx`.
    pub fn coset_index_of(&self, idx: usize) -> Option<usize> {
        self.cosets.iter().position(|c| c.contains(idx))
    }
}

/// The presentation of `G / Ψ(k, l, β)`:
/// `(m/l, nl/k, (−β) mod m/l, h mod m/l)`, verified concretely.
pub fn quotient_params(
    params: &PresentationParams,
    d: &SubgroupDescriptor,
) -> Result<PresentationParams, LatticeError> {
    quotient_map(params, d).map(|q| q.params)
}

/// Build the quotient presentation together with the coset map, checking
/// that `a ↦ x, b ↦ y` really induces an isomorphism onto the coset group.
pub fn quotient_map(
    params: &PresentationParams,
    d: &SubgroupDescriptor,
) -> Result<QuotientMap, LatticeError> {
    if !is_normal_descriptor(params, d) {
        return Err(LatticeError::NotNormal(*d));
    }
    let sub = psi(params, d)?;
    let modulus = params.m() / d.l;
    let q_params = validate_params(
        modulus,
        params.n_exp() * d.l / d.k,
        (modulus - d.beta % modulus) % modulus,
        params.h() % modulus,
    )
    .map_err(|e| LatticeError::IsomorphismCheckFailed {
        descriptor: *d,
        reason: format!("claimed presentation is not a valid tuple: {e}"),
    })?;

    let q_order = q_params.order() as usize;
    // φ(x^i y^j) = (a^i b^j)·K; normality makes left and right cosets agree.
    let mut cosets = Vec::with_capacity(q_order);
    let mut reps = Vec::with_capacity(q_order);
    let mut seen = BTreeSet::new();
    for idx in 0..q_order {
        let q_elem = q_params.element_at(idx);
        let rep = params.mul(
            params.pow(params.gen_a(), q_elem.i() as i64),
            params.pow(params.gen_b(), q_elem.j() as i64),
        );
        let coset: ElementSet = sub
            .elements
            .iter()
            .map(|ki| params.index_of(params.mul(rep, params.element_at(ki))))
            .collect();
        if !seen.insert(coset) {
            return Err(LatticeError::IsomorphismCheckFailed {
                descriptor: *d,
                reason: format!("generator map is not injective at {q_elem:?}"),
            });
        }
        cosets.push(coset);
        reps.push(rep);
    }
    // Homomorphism: the coset of rep(u)·rep(v) must be the coset mapped
    // from u·v. Cosets partition the group, so membership of the product
    // representative settles it.
    for u in 0..q_order {
        for v in 0..q_order {
            let uv =
                q_params.index_of(q_params.mul(q_params.element_at(u), q_params.element_at(v)));
            let prod = params.mul(reps[u], reps[v]);
            if !cosets[uv].contains(params.index_of(prod)) {
                return Err(LatticeError::IsomorphismCheckFailed {
                    descriptor: *d,
                    reason: format!("generator map is not a homomorphism at indices ({u}, {v})"),
                });
            }
        }
    }
    Ok(QuotientMap {
        descriptor: *d,
        params: q_params,
        cosets,
    })
}

/// Orders of normal subgroups, from the descriptor criterion.
pub fn normal_orders(params: &PresentationParams) -> Result<BTreeSet<u32>, LatticeError> {
    let gamma = enumerate_gamma(params);
    check_lagrange_converse(params, &gamma)?;
    Ok(gamma
        .iter()
        .filter(|d| is_normal_descriptor(params, d))
        .map(|d| d.k)
        .collect())
}

/// Orders of all subgroups. Metacyclic groups satisfy the converse of
/// Lagrange's theorem, so this must be the full divisor set of the group
/// order; anything else signals a Γ bug.
pub fn subgroup_orders(params: &PresentationParams) -> Result<BTreeSet<u32>, LatticeError> {
    let gamma = enumerate_gamma(params);
    check_lagrange_converse(params, &gamma)?;
    Ok(gamma.iter().map(|d| d.k).collect())
}

fn check_lagrange_converse(
    params: &PresentationParams,
    gamma: &[SubgroupDescriptor],
) -> Result<(), LatticeError> {
    let order = params.order();
    let found: BTreeSet<u32> = gamma.iter().map(|d| d.k).collect();
    let divisors: BTreeSet<u32> = (1..=order).filter(|d| order % d == 0).collect();
    if found != divisors {
        return Err(LatticeError::LagrangeConverseViolation {
            order,
            found: found.into_iter().collect(),
        });
    }
    Ok(())
}

/// Fast normal-order test for `K_{m,n}`: a divisor `k` of `2mn` is the
/// order of a normal subgroup iff `m ∣ k` or `v₂(k) < v₂(2mn)`.
pub fn kmn_normal_order(m: u32, n: u32, g: u32, k: u32) -> Result<bool, LatticeError> {
    crate::presentation::kmn_params(m, n, g)?;
    let order = 2 * m * n;
    if k == 0 || order % k != 0 {
        return Err(LatticeError::NotADivisor { k, order });
    }
    Ok(k % m == 0 || v2(k as u64) < v2(order as u64))
}

const BRUTE_FORCE_MAX: usize = 64;

/// All subgroups, found independently of Γ: cyclic subgroups first, then
/// joins with cyclic subgroups closed to a fixed point. Returns
/// deduplicated element sets sorted by (size, content).
pub fn brute_force_subgroups(table: &GroupTable) -> Result<Vec<ElementSet>, LatticeError> {
    let order = table.order();
    if order > BRUTE_FORCE_MAX {
        return Err(LatticeError::TooLarge {
            order,
            max: BRUTE_FORCE_MAX,
        });
    }

    let mut cyclics = BTreeSet::new();
    for x in 0..order {
        let mut set = ElementSet::singleton(table.identity_index());
        let mut y = x;
        while !set.contains(y) {
            set.insert(y);
            y = table.mul_idx(y, x);
        }
        cyclics.insert(set);
    }

    // Every subgroup is a join of cyclic subgroups, so closing the cyclic
    // ones under joins with cyclics reaches the whole lattice.
    let mut all: BTreeSet<ElementSet> = cyclics.clone();
    let mut worklist: Vec<ElementSet> = cyclics.iter().copied().collect();
    while let Some(h) = worklist.pop() {
        for c in &cyclics {
            if c.is_subset_of(&h) {
                continue;
            }
            let join = closure_of_set(table, &h.union(c));
            if all.insert(join) {
                worklist.push(join);
            }
        }
    }

    let mut out: Vec<ElementSet> = all.into_iter().collect();
    out.sort_by_key(|s| (s.len(), *s));
    Ok(out)
}

/// Close a subset containing the identity under multiplication.
fn closure_of_set(table: &GroupTable, start: &ElementSet) -> ElementSet {
    let order = table.order();
    let mut set = *start;
    let mut worklist: Vec<usize> = set.iter().collect();
    while let Some(x) = worklist.pop() {
        // A proper subgroup has at most order/2 elements; past that the
        // closure must be the whole group.
        if set.len() > order / 2 {
            return ElementSet::universe(order);
        }
        for y in set.iter() {
            for z in [table.mul_idx(x, y), table.mul_idx(y, x)] {
                if !set.contains(z) {
                    set.insert(z);
                    worklist.push(z);
                }
            }
        }
    }
    set
}

/// Conjugation-based normality, for cross-checking the descriptor
/// criterion.
pub fn is_normal_by_conjugation(table: &GroupTable, elements: &ElementSet) -> bool {
    (0..table.order()).all(|g| table.conjugate_set(elements, g) == *elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{all_presentations, cyclic_params, kmn_params};

    fn d3() -> PresentationParams {
        validate_params(3, 2, 0, 2).unwrap()
    }

    fn q8() -> PresentationParams {
        validate_params(4, 2, 2, 3).unwrap()
    }

    fn c7xc3() -> PresentationParams {
        validate_params(7, 3, 0, 2).unwrap()
    }

    #[test]
    fn gamma_of_d3() {
        let got = enumerate_gamma(&d3());
        let want: Vec<SubgroupDescriptor> = [
            (1, 1, 0),
            (2, 1, 0),
            (2, 1, 1),
            (2, 1, 2),
            (3, 3, 0),
            (6, 3, 0),
        ]
        .into_iter()
        .map(|(k, l, beta)| SubgroupDescriptor { k, l, beta })
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn gamma_of_prime_cyclic() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let params = cyclic_params(p).unwrap();
            let got = enumerate_gamma(&params);
            assert_eq!(got.len(), 2);
            assert_eq!(got[0], SubgroupDescriptor { k: 1, l: 1, beta: 0 });
            assert_eq!(got[1], SubgroupDescriptor { k: p, l: p, beta: 0 });
        }
    }

    #[test]
    fn gamma_of_q8() {
        let got = enumerate_gamma(&q8());
        let orders: Vec<u32> = got.iter().map(|d| d.k).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn psi_examples() {
        let p = d3();
        let whole_a = psi(&p, &SubgroupDescriptor { k: 3, l: 3, beta: 0 }).unwrap();
        assert_eq!(whole_a.elements, [0, 1, 2].into_iter().collect());

        let refl = psi(&p, &SubgroupDescriptor { k: 2, l: 1, beta: 1 }).unwrap();
        // {1, ab}: indices 0 and 1·3 + 1 = 4.
        assert_eq!(refl.elements, [0, 4].into_iter().collect());

        let k33 = kmn_params(3, 3, 0).unwrap().params;
        let trivial = psi(&k33, &SubgroupDescriptor { k: 1, l: 1, beta: 0 }).unwrap();
        assert_eq!(trivial.elements, ElementSet::singleton(0));
    }

    #[test]
    fn normality_examples() {
        let p = d3();
        assert!(!is_normal_descriptor(&p, &SubgroupDescriptor { k: 2, l: 1, beta: 0 }));
        assert!(is_normal_descriptor(&p, &SubgroupDescriptor { k: 3, l: 3, beta: 0 }));
        for d in enumerate_gamma(&q8()) {
            assert!(is_normal_descriptor(&q8(), &d), "{d} should be normal in Q8");
        }
    }

    #[test]
    fn quotient_examples() {
        let k33 = kmn_params(3, 3, 0).unwrap().params;
        let q = quotient_params(&k33, &SubgroupDescriptor { k: 3, l: 3, beta: 0 }).unwrap();
        assert_eq!(q, validate_params(1, 6, 0, 0).unwrap());

        // Whole-group quotient is trivial.
        let whole = SubgroupDescriptor { k: 18, l: 3, beta: 0 };
        let q = quotient_params(&k33, &whole).unwrap();
        assert_eq!(q, validate_params(1, 1, 0, 0).unwrap());

        let d9 = kmn_params(9, 1, 0).unwrap().params;
        let q = quotient_params(&d9, &SubgroupDescriptor { k: 3, l: 3, beta: 0 }).unwrap();
        assert_eq!(q, validate_params(3, 2, 0, 2).unwrap());

        assert!(matches!(
            quotient_params(&d3(), &SubgroupDescriptor { k: 2, l: 1, beta: 0 }),
            Err(LatticeError::NotNormal(_))
        ));
    }

    #[test]
    fn order_sets() {
        let n: Vec<u32> = normal_orders(&d3()).unwrap().into_iter().collect();
        assert_eq!(n, vec![1, 3, 6]);
        let h: Vec<u32> = subgroup_orders(&d3()).unwrap().into_iter().collect();
        assert_eq!(h, vec![1, 2, 3, 6]);

        let n: Vec<u32> = normal_orders(&c7xc3()).unwrap().into_iter().collect();
        assert_eq!(n, vec![1, 7, 21]);

        let d9 = kmn_params(9, 1, 0).unwrap().params;
        let n: Vec<u32> = normal_orders(&d9).unwrap().into_iter().collect();
        assert_eq!(n, vec![1, 3, 9, 18]);
    }

    #[test]
    fn v2_values() {
        assert_eq!(v2(24), 3);
        assert_eq!(v2(1), 0);
        assert_eq!(v2(18), 1);
    }

    #[test]
    fn kmn_normal_order_examples() {
        assert!(!kmn_normal_order(3, 1, 0, 2).unwrap());
        assert!(!kmn_normal_order(9, 1, 0, 6).unwrap());
        // Odd divisors always admit a normal subgroup.
        for (m, n, g) in [(3u32, 1u32, 0u32), (9, 1, 0), (4, 3, 2), (5, 3, 0)] {
            let order = 2 * m * n;
            for k in (1..=order).filter(|k| order % k == 0 && k % 2 == 1) {
                assert!(
                    kmn_normal_order(m, n, g, k).unwrap(),
                    "odd k = {k} in K_{{{m},{n}}}"
                );
            }
        }
        assert!(matches!(
            kmn_normal_order(3, 1, 0, 4),
            Err(LatticeError::NotADivisor { .. })
        ));
    }

    #[test]
    fn brute_force_counts() {
        let t = GroupTable::build(d3()).unwrap();
        assert_eq!(brute_force_subgroups(&t).unwrap().len(), 6);

        let z6 = GroupTable::build(cyclic_params(6).unwrap()).unwrap();
        assert_eq!(brute_force_subgroups(&z6).unwrap().len(), 4);

        let t = GroupTable::build(q8()).unwrap();
        assert_eq!(brute_force_subgroups(&t).unwrap().len(), 6);
    }

    /// Γ ↔ subgroup bijection plus the (k, l) cardinality claims, on every
    /// validated tuple of small order.
    #[test]
    fn gamma_bijection_small() {
        for p in all_presentations(24) {
            let table = GroupTable::build(p).unwrap();
            let gamma = enumerate_gamma(&p);
            let mut from_gamma = BTreeSet::new();
            for d in &gamma {
                let sub = psi(&p, d).unwrap();
                assert_eq!(sub.elements.len(), d.k as usize);
                assert!(
                    from_gamma.insert(sub.elements),
                    "Ψ not injective at {d} in {p:?}"
                );
            }
            let brute: BTreeSet<ElementSet> =
                brute_force_subgroups(&table).unwrap().into_iter().collect();
            assert_eq!(from_gamma, brute, "lattice mismatch for {p:?}");
        }
    }

    /// Descriptor normality must agree with element-level conjugation.
    #[test]
    fn normality_agrees_with_conjugation_small() {
        for p in all_presentations(24) {
            let table = GroupTable::build(p).unwrap();
            for d in enumerate_gamma(&p) {
                let sub = psi(&p, &d).unwrap();
                assert_eq!(
                    is_normal_descriptor(&p, &d),
                    is_normal_by_conjugation(&table, &sub.elements),
                    "normality mismatch at {d} in {p:?}"
                );
            }
        }
    }

    /// Quotient presentations validate and have the right order.
    #[test]
    fn quotients_validate_small() {
        for p in all_presentations(24) {
            for d in enumerate_gamma(&p) {
                if !is_normal_descriptor(&p, &d) {
                    continue;
                }
                let q = quotient_map(&p, &d).unwrap();
                assert_eq!(q.params.order() * d.k, p.order());
                assert_eq!(q.cosets.len() as u32, q.params.order());
            }
        }
    }
}
