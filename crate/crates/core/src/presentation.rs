//! Validated metacyclic presentations and exact normal-form arithmetic.
//!
//! Every finite metacyclic group admits a presentation
//!
//! ```text
//! ⟨a, b : a^m = 1, b^n = a^g, bab⁻¹ = a^h⟩
//! ```
//!
//! for a tuple `(m, n, g, h)` with `m, n ≥ 1`, `0 ≤ g, h < m`,
//! `g(h−1) ≡ 0 (mod m)` and `h^n ≡ 1 (mod m)`, and every element has a
//! unique normal form `a^i b^j` with `0 ≤ i < m`, `0 ≤ j < n`. This module
//! validates such tuples, multiplies elements in normal form, and builds
//! the dense translation tables the solver runs on.
//!
//! The exponent of `b` is called `n_exp` throughout to keep it apart from
//! the `n` of the family `K_{m,n}`, whose presentation has `b`-exponent
//! `2n`; members of that family are built through [`kmn_params`].

use std::fmt;

use thiserror::Error;

use crate::set::ElementSet;

/// Default cap on `m · n_exp` when materializing a dense table.
pub const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("m and n must be positive (got m = {m}, n_exp = {n_exp})")]
    NonPositive { m: u32, n_exp: u32 },
    #[error("{name} = {value} is outside [0, {m})")]
    RangeViolation {
        name: &'static str,
        value: u32,
        m: u32,
    },
    #[error("congruence {condition} fails for (m, n_exp, g, h) = ({m}, {n_exp}, {g}, {h})")]
    CongruenceViolation {
        condition: &'static str,
        m: u32,
        n_exp: u32,
        g: u32,
        h: u32,
    },
    #[error("g = {g} is not admissible for K_{{{m},{n}}} (must be 0, or m/2 when m is even)")]
    InvalidG { m: u32, n: u32, g: u32 },
    #[error("group order {order} exceeds the configured maximum {max}")]
    TooLarge { order: usize, max: usize },
}

/// `base^exp mod modulus` by repeated squaring. `modulus ≥ 1`.
pub(crate) fn modpow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 1);
    let mut result = 1 % modulus;
    let mut base = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = (result as u128 * base as u128 % modulus as u128) as u64;
        }
        base = (base as u128 * base as u128 % modulus as u128) as u64;
        exp >>= 1;
    }
    result
}

/// A validated presentation tuple `(m, n_exp, g, h)`.
///
/// Construction goes through [`validate_params`], [`kmn_params`], or
/// [`cyclic_params`], so a value of this type always satisfies all four
/// defining conditions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresentationParams {
    m: u32,
    n_exp: u32,
    g: u32,
    h: u32,
}

/// Validate a presentation tuple.
pub fn validate_params(
    m: u32,
    n_exp: u32,
    g: u32,
    h: u32,
) -> Result<PresentationParams, PresentationError> {
    if m < 1 || n_exp < 1 {
        return Err(PresentationError::NonPositive { m, n_exp });
    }
    if g >= m {
        return Err(PresentationError::RangeViolation { name: "g", value: g, m });
    }
    if h >= m {
        return Err(PresentationError::RangeViolation { name: "h", value: h, m });
    }
    // g(h−1) ≡ 0 (mod m), computed as g·(h−1+m) to stay in unsigned land.
    if (g as u64 * (h as u64 + m as u64 - 1)) % m as u64 != 0 {
        return Err(PresentationError::CongruenceViolation {
            condition: "g(h-1) ≡ 0 (mod m)",
            m,
            n_exp,
            g,
            h,
        });
    }
    if modpow(h as u64, n_exp as u64, m as u64) != 1 % m as u64 {
        return Err(PresentationError::CongruenceViolation {
            condition: "h^n ≡ 1 (mod m)",
            m,
            n_exp,
            g,
            h,
        });
    }
    Ok(PresentationParams { m, n_exp, g, h })
}

/// The canonical presentation of the cyclic group of order `n`:
/// `(n, 1, 0, 1 mod n)`.
pub fn cyclic_params(n: u32) -> Result<PresentationParams, PresentationError> {
    validate_params(n, 1, 0, 1 % n.max(1))
}

/// A member of the family `K_{m,n} = ⟨a, b : a^m = 1, b^{2n} = a^g,
/// bab⁻¹ = a⁻¹⟩` of order `2mn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KmnPresentation {
    pub m: u32,
    pub n: u32,
    pub g: u32,
    pub params: PresentationParams,
    /// `h ≡ 1 (mod m)`, i.e. `m ≤ 2`. The family degenerates to an abelian
    /// group there; callers that mean the non-abelian family should check
    /// this flag.
    pub abelian: bool,
}

/// Build `K_{m,n}` as the validated tuple `(m, 2n, g, m−1)`.
///
/// `g` must be `0` when `m` is odd and `0` or `m/2` when `m` is even.
pub fn kmn_params(m: u32, n: u32, g: u32) -> Result<KmnPresentation, PresentationError> {
    if m < 1 || n < 1 {
        return Err(PresentationError::NonPositive { m, n_exp: 2 * n });
    }
    let admissible = g == 0 || (m % 2 == 0 && g == m / 2);
    if !admissible {
        return Err(PresentationError::InvalidG { m, n, g });
    }
    let params = validate_params(m, 2 * n, g, (m - 1) % m)?;
    Ok(KmnPresentation {
        m,
        n,
        g,
        params,
        abelian: params.is_abelian(),
    })
}

/// An element `a^i b^j` in normal form: `0 ≤ i < m`, `0 ≤ j < n_exp`.
///
/// Two elements are equal iff their exponent pairs are equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    i: u32,
    j: u32,
}

impl GroupElement {
    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} b^{}", self.i, self.j)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => write!(f, "1"),
            (i, 0) => write!(f, "a^{i}"),
            (0, j) => write!(f, "b^{j}"),
            (i, j) => write!(f, "a^{i}b^{j}"),
        }
    }
}

impl PresentationParams {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_exp(&self) -> u32 {
        self.n_exp
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn order(&self) -> u32 {
        self.m * self.n_exp
    }

    /// Conjugation by `b` is trivial, i.e. `h ≡ 1 (mod m)`.
    pub fn is_abelian(&self) -> bool {
        self.h % self.m == 1 % self.m
    }

    /// The tuple is literally the canonical cyclic form produced by
    /// [`cyclic_params`].
    pub fn is_canonical_cyclic(&self) -> bool {
        self.n_exp == 1 && self.g == 0
    }

    /// Recover `(m, n, g)` when this tuple has the `K_{m,n}` shape
    /// `(m, 2n, g, m−1)`.
    pub fn kmn_view(&self) -> Option<(u32, u32, u32)> {
        if self.n_exp % 2 == 0 && self.h == (self.m - 1) % self.m {
            Some((self.m, self.n_exp / 2, self.g))
        } else {
            None
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { i: 0, j: 0 }
    }

    /// Normal form of `a^i b^j` for arbitrary exponents.
    pub fn element(&self, i: u32, j: u32) -> GroupElement {
        GroupElement {
            i: i % self.m,
            j: j % self.n_exp,
        }
    }

    pub fn gen_a(&self) -> GroupElement {
        self.element(1 % self.m, 0)
    }

    /// The generator `b`. For `n_exp = 1` the relation `b = a^g` collapses
    /// it into `⟨a⟩`.
    pub fn gen_b(&self) -> GroupElement {
        if self.n_exp == 1 {
            self.element(self.g, 0)
        } else {
            GroupElement { i: 0, j: 1 }
        }
    }

    /// Normal form of the product `x · y`.
    ///
    /// From `bab⁻¹ = a^h` one gets `b^j a^r = a^{r h^j} b^j`, so with
    /// `x = a^i b^j` and `y = a^r b^s`:
    ///
    /// ```text
    /// x·y = a^{i + r·h^j + g·q} b^{(j+s) mod n},   q = ⌊(j+s)/n⌋ ∈ {0, 1}
    /// ```
    ///
    /// where the `g·q` term absorbs one application of `b^n = a^g`.
    pub fn mul(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        let m = self.m as u64;
        let q = (x.j + y.j) / self.n_exp;
        debug_assert!(q <= 1);
        let hj = modpow(self.h as u64, x.j as u64, m);
        let i = (x.i as u64 + y.i as u64 * hj % m + self.g as u64 * q as u64) % m;
        GroupElement {
            i: i as u32,
            j: (x.j + y.j) % self.n_exp,
        }
    }

    /// Inverse in normal form. `h` is invertible mod `m` (its inverse is
    /// `h^{n−1}`), which makes the `j > 0` case solvable directly.
    pub fn inv(&self, x: GroupElement) -> GroupElement {
        let m = self.m as u64;
        if x.j == 0 {
            return GroupElement {
                i: ((m - x.i as u64) % m) as u32,
                j: 0,
            };
        }
        // Want (i + r·h^j + g) ≡ 0 (mod m) with the b-exponent wrapping once.
        let hinv_j = modpow(self.h as u64, (self.n_exp - x.j) as u64, m);
        let r = (2 * m - x.i as u64 - self.g as u64 % m) % m * hinv_j % m;
        let y = GroupElement {
            i: r as u32,
            j: self.n_exp - x.j,
        };
        debug_assert_eq!(self.mul(x, y), self.identity());
        y
    }

    /// `x^e` for any integer exponent, by repeated squaring.
    pub fn pow(&self, x: GroupElement, e: i64) -> GroupElement {
        if e < 0 {
            return self.pow(self.inv(x), -e);
        }
        let mut result = self.identity();
        let mut base = x;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Least `t ≥ 1` with `x^t = 1`.
    pub fn element_order(&self, x: GroupElement) -> u32 {
        let mut y = x;
        let mut t = 1;
        while y != self.identity() {
            y = self.mul(y, x);
            t += 1;
        }
        t
    }

    /// Dense index of an element: `j·m + i`, so each `⟨a⟩`-coset is a
    /// contiguous run of `m` indices.
    pub fn index_of(&self, x: GroupElement) -> usize {
        (x.j * self.m + x.i) as usize
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        debug_assert!(index < self.order() as usize);
        GroupElement {
            i: index as u32 % self.m,
            j: index as u32 / self.m,
        }
    }
}

impl fmt::Debug for PresentationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.m, self.n_exp, self.g, self.h
        )
    }
}

impl fmt::Display for PresentationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟨a,b : a^{} = 1, b^{} = a^{}, bab⁻¹ = a^{}⟩",
            self.m, self.n_exp, self.g, self.h
        )
    }
}

/// Dense group structure: the element index bijection plus left and right
/// translation rows.
///
/// `left` row `g` is the permutation `x ↦ g·x` as an index array; `right`
/// row `g` is `x ↦ x·g`. Product sets are unions of translation images,
/// which is the innermost loop of everything downstream.
pub struct GroupTable {
    params: PresentationParams,
    order: usize,
    left: Vec<u16>,
    right: Vec<u16>,
    inv: Vec<u16>,
}

impl GroupTable {
    pub fn build(params: PresentationParams) -> Result<GroupTable, PresentationError> {
        Self::build_with_limit(params, DEFAULT_MAX_ORDER)
    }

    pub fn build_with_limit(
        params: PresentationParams,
        max_order: usize,
    ) -> Result<GroupTable, PresentationError> {
        let order = params.order() as usize;
        if order > max_order || order > ElementSet::MAX_ELEMENTS {
            return Err(PresentationError::TooLarge {
                order,
                max: max_order.min(ElementSet::MAX_ELEMENTS),
            });
        }
        let mut left = vec![0u16; order * order];
        let mut right = vec![0u16; order * order];
        let mut inv = vec![0u16; order];
        for gi in 0..order {
            let g = params.element_at(gi);
            for xi in 0..order {
                let x = params.element_at(xi);
                left[gi * order + xi] = params.index_of(params.mul(g, x)) as u16;
                right[gi * order + xi] = params.index_of(params.mul(x, g)) as u16;
            }
            inv[gi] = params.index_of(params.inv(g)) as u16;
        }
        Ok(GroupTable {
            params,
            order,
            left,
            right,
            inv,
        })
    }

    pub fn params(&self) -> &PresentationParams {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity_index(&self) -> usize {
        0
    }

    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        self.left[x * self.order + y] as usize
    }

    pub fn inv_idx(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// `{g·x : x ∈ set}`.
    pub fn left_translate(&self, g: usize, set: &ElementSet) -> ElementSet {
        let row = &self.left[g * self.order..(g + 1) * self.order];
        set.iter().map(|x| row[x] as usize).collect()
    }

    /// `{x·g : x ∈ set}`.
    pub fn right_translate(&self, set: &ElementSet, g: usize) -> ElementSet {
        let row = &self.right[g * self.order..(g + 1) * self.order];
        set.iter().map(|x| row[x] as usize).collect()
    }

    /// The product set `A·B`.
    pub fn product_set(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty();
        for x in a.iter() {
            out.union_with(&self.left_translate(x, b));
        }
        out
    }

    pub fn inverse_set(&self, a: &ElementSet) -> ElementSet {
        a.iter().map(|x| self.inv[x] as usize).collect()
    }

    /// `g · A · g⁻¹`.
    pub fn conjugate_set(&self, a: &ElementSet, g: usize) -> ElementSet {
        self.right_translate(&self.left_translate(g, a), self.inv_idx(g))
    }

    /// For each element, the smallest index in its conjugacy class.
    pub fn conjugacy_class_min(&self) -> Vec<usize> {
        let mut min = vec![usize::MAX; self.order];
        for x in 0..self.order {
            if min[x] != usize::MAX {
                continue;
            }
            // x is the smallest not-yet-classified index, hence the minimum
            // of its whole class; flood the orbit under conjugation.
            let mut orbit = vec![x];
            let mut seen = ElementSet::singleton(x);
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                i += 1;
                for g in 0..self.order {
                    let z = self.mul_idx(self.mul_idx(g, y), self.inv_idx(g));
                    if !seen.contains(z) {
                        seen.insert(z);
                        orbit.push(z);
                    }
                }
            }
            for &y in &orbit {
                min[y] = x;
            }
        }
        min
    }
}

/// Every validated presentation tuple with `m·n_exp ≤ max_order`, in
/// lexicographic `(m·n_exp, m, h, g)` order. Drives the exhaustive sweeps.
pub fn all_presentations(max_order: u32) -> Vec<PresentationParams> {
    let mut out = Vec::new();
    for order in 1..=max_order {
        for m in 1..=order {
            if order % m != 0 {
                continue;
            }
            let n_exp = order / m;
            for h in 0..m {
                if modpow(h as u64, n_exp as u64, m as u64) != 1 % m as u64 {
                    continue;
                }
                for g in 0..m {
                    if let Ok(p) = validate_params(m, n_exp, g, h) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Every valid `K_{m,n}` tuple with `2mn ≤ max_order`, each admissible `g`.
/// Abelian members (`m ≤ 2`) are included; filter on
/// [`KmnPresentation::abelian`] where only the non-abelian family is meant.
pub fn all_kmn(max_order: u32) -> Vec<KmnPresentation> {
    let mut out = Vec::new();
    for m in 1..=max_order / 2 {
        for n in 1..=max_order / (2 * m) {
            out.push(kmn_params(m, n, 0).expect("g = 0 is always admissible"));
            if m % 2 == 0 {
                out.push(kmn_params(m, n, m / 2).expect("g = m/2 is admissible for even m"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> PresentationParams {
        validate_params(3, 2, 0, 2).unwrap()
    }

    fn q8() -> PresentationParams {
        validate_params(4, 2, 2, 3).unwrap()
    }

    #[test]
    fn validate_accepts_d3_and_q8() {
        assert!(validate_params(3, 2, 0, 2).is_ok());
        assert!(validate_params(4, 2, 2, 3).is_ok());
    }

    #[test]
    fn validate_rejects_bad_tuples() {
        assert!(matches!(
            validate_params(5, 2, 1, 2),
            Err(PresentationError::CongruenceViolation { .. })
        ));
        assert!(matches!(
            validate_params(0, 1, 0, 0),
            Err(PresentationError::NonPositive { .. })
        ));
        assert!(matches!(
            validate_params(3, 2, 3, 2),
            Err(PresentationError::RangeViolation { .. })
        ));
        // g(h−1) = 1·1 = 1 ≢ 0 (mod 3) with h = 2... pick one hitting the
        // first congruence: m = 4, h = 3, g = 1: 1·2 = 2 ≢ 0 (mod 4).
        assert!(matches!(
            validate_params(4, 2, 1, 3),
            Err(PresentationError::CongruenceViolation { .. })
        ));
    }

    #[test]
    fn kmn_examples() {
        let d3 = kmn_params(3, 1, 0).unwrap();
        assert_eq!(d3.params, validate_params(3, 2, 0, 2).unwrap());
        assert!(!d3.abelian);
        assert_eq!(d3.params.order(), 6);

        let q8 = kmn_params(4, 1, 2).unwrap();
        assert_eq!(q8.params, validate_params(4, 2, 2, 3).unwrap());
        assert!(!q8.abelian);
        assert_eq!(q8.params.order(), 8);

        let ab = kmn_params(2, 3, 1).unwrap();
        assert_eq!(ab.params, validate_params(2, 6, 1, 1).unwrap());
        assert!(ab.abelian);

        assert!(matches!(
            kmn_params(3, 1, 1),
            Err(PresentationError::InvalidG { .. })
        ));
        assert!(matches!(
            kmn_params(4, 1, 1),
            Err(PresentationError::InvalidG { .. })
        ));
    }

    #[test]
    fn cyclic_form_is_valid() {
        for n in 1..=30 {
            let p = cyclic_params(n).unwrap();
            assert_eq!(p.order(), n);
            assert!(p.is_abelian());
            assert!(p.is_canonical_cyclic());
        }
    }

    #[test]
    fn mul_examples() {
        let p = d3();
        // (a b)·a = b, since 1 + 1·2 = 3 ≡ 0 (mod 3).
        assert_eq!(p.mul(p.element(1, 1), p.element(1, 0)), p.element(0, 1));
        // identity
        for idx in 0..p.order() as usize {
            let x = p.element_at(idx);
            assert_eq!(p.mul(p.identity(), x), x);
            assert_eq!(p.mul(x, p.identity()), x);
        }
        // Q₈: b² = a^g = a².
        let q = q8();
        assert_eq!(q.mul(q.element(0, 1), q.element(0, 1)), q.element(2, 0));
    }

    #[test]
    fn inv_pow_order_examples() {
        let p = d3();
        assert_eq!(p.inv(p.element(2, 0)), p.element(1, 0));
        assert_eq!(p.element_order(p.element(1, 1)), 2);

        let q = q8();
        assert_eq!(q.element_order(q.element(0, 1)), 4);
        assert_eq!(q.pow(q.element(0, 1), 4), q.identity());
        assert_eq!(q.pow(q.element(0, 1), -1), q.inv(q.element(0, 1)));
    }

    #[test]
    fn table_orders() {
        assert_eq!(GroupTable::build(d3()).unwrap().order(), 6);
        let k33 = kmn_params(3, 3, 0).unwrap();
        assert_eq!(GroupTable::build(k33.params).unwrap().order(), 18);
        let big = validate_params(17, 16, 0, 1).unwrap();
        assert!(matches!(
            GroupTable::build(big),
            Err(PresentationError::TooLarge { .. })
        ));
    }

    /// Group axioms, exhaustively, for every validated tuple of order ≤ 24:
    /// the index map is a bijection, rows are permutations, associativity
    /// holds on all triples, and inverses are two-sided.
    #[test]
    fn group_axioms_exhaustive_small() {
        for p in all_presentations(24) {
            let t = GroupTable::build(p).unwrap();
            let n = t.order();
            for x in 0..n {
                assert_eq!(p.index_of(p.element_at(x)), x);
                let row: ElementSet = (0..n).map(|y| t.mul_idx(x, y)).collect();
                assert_eq!(row.len(), n, "left row {x} of {p:?} is not a permutation");
                assert_eq!(t.mul_idx(x, t.inv_idx(x)), 0);
                assert_eq!(t.mul_idx(t.inv_idx(x), x), 0);
            }
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        assert_eq!(
                            t.mul_idx(t.mul_idx(x, y), z),
                            t.mul_idx(x, t.mul_idx(y, z)),
                            "associativity fails in {p:?}"
                        );
                    }
                }
            }
        }
    }

    /// `bab⁻¹ = a^h` for every validated tuple.
    #[test]
    fn conjugation_relation() {
        for p in all_presentations(32) {
            let b = p.gen_b();
            let conj = p.mul(p.mul(b, p.gen_a()), p.inv(b));
            assert_eq!(conj, p.element(p.h(), 0), "in {p:?}");
        }
    }

    #[test]
    fn element_order_divides_group_order() {
        for p in all_presentations(24) {
            for idx in 0..p.order() as usize {
                let x = p.element_at(idx);
                let t = p.element_order(x);
                assert_eq!(p.pow(x, t as i64), p.identity());
                assert_eq!(p.order() % t, 0);
            }
        }
    }

    #[test]
    fn conjugacy_classes_of_d3() {
        let t = GroupTable::build(d3()).unwrap();
        let min = t.conjugacy_class_min();
        // {1}, {a, a²}, {b, ab, a²b}
        assert_eq!(min, vec![0, 1, 1, 3, 3, 3]);
    }

    mod random {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// Group laws on random validated tuples, beyond the
            /// exhaustive small-order sweep.
            #[test]
            fn laws_hold_on_random_params(
                m in 1u32..48,
                n_exp in 1u32..48,
                g_raw in 0u32..48,
                h_raw in 0u32..48,
                picks in proptest::collection::vec(0usize..4096, 3),
            ) {
                prop_assume!(m * n_exp <= 256);
                let Ok(p) = validate_params(m, n_exp, g_raw % m, h_raw % m) else {
                    return Ok(());
                };
                let order = p.order() as usize;
                let x = p.element_at(picks[0] % order);
                let y = p.element_at(picks[1] % order);
                let z = p.element_at(picks[2] % order);
                prop_assert_eq!(p.mul(p.mul(x, y), z), p.mul(x, p.mul(y, z)));
                prop_assert_eq!(p.mul(x, p.inv(x)), p.identity());
                prop_assert_eq!(p.mul(p.inv(x), x), p.identity());
                let t = p.element_order(x);
                prop_assert_eq!(p.pow(x, t as i64), p.identity());
                prop_assert_eq!(p.order() % t, 0);
                prop_assert_eq!(p.index_of(p.element_at(picks[0] % order)), picks[0] % order);
            }
        }
    }
}
