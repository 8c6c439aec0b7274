//! Explicit set pairs realizing the `kappa` upper bound.
//!
//! For the family `K_{m,n}` (and for abelian metacyclic groups) this
//! module constructs, for every query `(r, s)`, subsets `A`, `B` with
//! `|A| = r`, `|B| = s`, and `|A·B| ≤ kappa(r, s)`. Combined with the
//! lower bound `Dkappa ≤ mu` for solvable groups and `kappa = Dkappa` for
//! metacyclic groups, a verified pair certifies `mu(r, s) = kappa(r, s)`
//! without any search.
//!
//! The construction dispatches on the smallest divisor `h` attaining
//! `kappa`:
//!
//! 1. `h = 1` — initial segments in index order. Cosets of `⟨a⟩` are
//!    consecutive index runs and conjugation by `b` maps `a`-power
//!    segments to `a`-power intervals, so `|A·B| ≤ r + s − 1`.
//! 2. `h` the order of a normal subgroup — lift a recursively built
//!    witness from the quotient through the coset map and trim.
//! 3. `h = 2` with no normal subgroup of order 2 (so `m, n` odd) — the
//!    coset-segment doubling construction: build half-size sets from
//!    `⟨a⟩`-coset segments `I(q)` and `a`-power runs `K_x`, then double
//!    with `A = A′ ∪ A′a^{y−1}b^n`, `B = B′ ∪ B′b^n`.
//! 4. `h = 2k`, `k > 1`, `h` not a normal order — then `k` is, and a
//!    quotient witness for `(2⌈r/2k⌉, 2⌈s/2k⌉)` lifts through a normal
//!    subgroup of order `k` and trims down to `(r, s)`.
//!
//! Every branch re-verifies the product size of what it built; a bound
//! miss is reported as [`WitnessError::ConstructionFailed`], never
//! silently returned.

use thiserror::Error;

use crate::bounds::{self, BoundsContext};
use crate::lattice::{self, LatticeError, QuotientMap, SubgroupDescriptor};
use crate::presentation::{
    kmn_params, GroupTable, KmnPresentation, PresentationError, PresentationParams,
};
use crate::set::ElementSet;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("{0} is not normal")]
    NotNormal(SubgroupDescriptor),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("argument out of range: {0}")]
    RangeViolation(String),
    #[error("no witness construction for {0:?} (supported: K_{{m,n}} and abelian metacyclic)")]
    UnsupportedGroup(PresentationParams),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// A constructed pair `(A, B)` with its verified product size.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub a: ElementSet,
    pub b: ElementSet,
    /// `|A·B|`, recomputed by the verifier, never trusted from the
    /// construction.
    pub product_size: u32,
    /// A divisor `h` with `product_size ≤ f_h(r, s)`.
    pub certificate_h: u32,
    /// Construction steps, for diagnostics.
    pub trace: Vec<String>,
}

/// Euclidean data for the half-size sets of the doubling construction:
/// `r = 2r₁`, `s = 2s₁`, `r₁ = mp + x`, `s₁ = mq + y` with `0 ≤ x, y < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegmentPlan {
    pub r1: u32,
    pub s1: u32,
    pub p: u32,
    pub q: u32,
    pub x: u32,
    pub y: u32,
}

impl SegmentPlan {
    /// Requires `r`, `s` even.
    pub fn new(m: u32, r: u32, s: u32) -> SegmentPlan {
        debug_assert!(r % 2 == 0 && s % 2 == 0);
        let (r1, s1) = (r / 2, s / 2);
        SegmentPlan {
            r1,
            s1,
            p: r1 / m,
            q: s1 / m,
            x: r1 % m,
            y: s1 % m,
        }
    }
}

/// Data for a quotient lift: the normal subgroup, the quotient sizes, and
/// the quotient presentation.
#[derive(Clone, Debug)]
pub struct LiftPlan {
    pub descriptor: SubgroupDescriptor,
    pub w: u32,
    pub z: u32,
    pub quotient_params: PresentationParams,
}

/// `I(q) = F₀ ∪ F₁ ∪ … ∪ F_{q−1}` where `F = ⟨a⟩` and `F_i = b^{2i}F`:
/// the first `q` even cosets. Requires `0 ≤ q ≤ n`.
pub fn build_segments(kmn: &KmnPresentation, q: u32) -> Result<ElementSet, WitnessError> {
    if q > kmn.n {
        return Err(WitnessError::RangeViolation(format!(
            "I({q}) needs q ≤ n = {}",
            kmn.n
        )));
    }
    let m = kmn.m as usize;
    let mut set = ElementSet::empty();
    for i in 0..q as usize {
        let base = 2 * i * m;
        for idx in base..base + m {
            set.insert(idx);
        }
    }
    Ok(set)
}

/// `K_x = {1, a, …, a^{x−1}}`, empty for `x ≤ 0`. Requires `x ≤ m`.
pub fn build_kx(params: &PresentationParams, x: i64) -> ElementSet {
    if x <= 0 {
        return ElementSet::empty();
    }
    assert!(x as u64 <= params.m() as u64);
    (0..x as usize).collect()
}

/// Exact `|A·B|` via the translation table, checking the claimed sizes.
pub fn verify_witness(
    table: &GroupTable,
    pair: &WitnessPair,
    r: u32,
    s: u32,
) -> Result<u32, WitnessError> {
    if pair.a.len() != r as usize || pair.b.len() != s as usize {
        return Err(WitnessError::SizeMismatch(format!(
            "|A| = {}, |B| = {}, expected ({r}, {s})",
            pair.a.len(),
            pair.b.len()
        )));
    }
    Ok(table.product_set(&pair.a, &pair.b).len() as u32)
}

/// Smallest divisor `h` of `order` with `f_h(r, s) ≥ value`; `h = order`
/// always qualifies since `f_{|G|} = |G| ≥ |AB|`.
fn certificate_for(order: u32, r: u32, s: u32, value: u32) -> u32 {
    bounds::divisors(order)
        .into_iter()
        .find(|&h| bounds::f_h(h, r, s) >= value)
        .unwrap_or(order)
}

fn finish_pair(
    table: &GroupTable,
    a: ElementSet,
    b: ElementSet,
    r: u32,
    s: u32,
    certificate_h: u32,
    trace: Vec<String>,
) -> Result<WitnessPair, WitnessError> {
    let mut pair = WitnessPair {
        a,
        b,
        product_size: 0,
        certificate_h,
        trace,
    };
    pair.product_size = verify_witness(table, &pair, r, s)?;
    Ok(pair)
}

/// Initial-segment pair: `A` = first `r` element indices, `B` = first `s`.
///
/// With `h ≡ ±1 (mod m)` the partial-coset products stay inside single
/// `a`-power intervals, so `|A·B| ≤ r + s − 1` (capped by the order).
fn initial_segment_pair(order: usize, r: u32, s: u32) -> (ElementSet, ElementSet) {
    debug_assert!(r as usize <= order && s as usize <= order);
    ((0..r as usize).collect(), (0..s as usize).collect())
}

/// Realize `kappa` in the cyclic group of order `n`: with `h` the best
/// divisor, both sets are unions of consecutive cosets of the order-`h`
/// subgroup, the last coset trimmed to an initial run.
pub fn construct_cyclic(n: u32, r: u32, s: u32) -> Result<WitnessPair, WitnessError> {
    let params = crate::presentation::cyclic_params(n)?;
    if r < 1 || r > n || s < 1 || s > n {
        return Err(WitnessError::RangeViolation(format!(
            "(r, s) = ({r}, {s}) outside [1, {n}]"
        )));
    }
    let table = GroupTable::build(params)?;
    let (kappa, h) = bounds::min_f_over(&bounds::divisors(n), r, s);
    let stride = (n / h) as usize;
    // Element c + t·(n/h) is position t of coset c of ⟨a^{n/h}⟩; filling
    // positions coset-major yields consecutive cosets with a trimmed tail.
    let segment = |count: u32| -> ElementSet {
        (0..count as usize)
            .map(|e| {
                let (coset, t) = (e / h as usize, e % h as usize);
                coset + t * stride
            })
            .collect()
    };
    let pair = finish_pair(
        &table,
        segment(r),
        segment(s),
        r,
        s,
        h,
        vec![format!(
            "cyclic segments in Z_{n}: {} + {} cosets of the order-{h} subgroup",
            r.div_ceil(h),
            s.div_ceil(h)
        )],
    )?;
    if pair.product_size > kappa {
        return Err(WitnessError::ConstructionFailed(format!(
            "cyclic segments in Z_{n} gave |AB| = {} > kappa = {kappa} at ({r}, {s})",
            pair.product_size
        )));
    }
    Ok(pair)
}

/// The doubling construction for `K_{m,n}` with `m, n` odd, at even sizes
/// `(r, s)` where `kappa = f₂`. Produces `|A·B| ≤ r + s − 2`.
pub fn construct_f2(kmn: &KmnPresentation, r: u32, s: u32) -> Result<WitnessPair, WitnessError> {
    if kmn.m % 2 == 0 || kmn.n % 2 == 0 {
        return Err(WitnessError::PreconditionViolation(format!(
            "K_{{{},{}}}: m and n must be odd",
            kmn.m, kmn.n
        )));
    }
    if r % 2 != 0 || s % 2 != 0 {
        return Err(WitnessError::PreconditionViolation(format!(
            "(r, s) = ({r}, {s}) must be even"
        )));
    }
    let f2 = bounds::f_h(2, r, s);
    let profile = bounds::kappa(&kmn.params, r, s)?;
    if profile.kappa != f2 {
        return Err(WitnessError::PreconditionViolation(format!(
            "kappa({r}, {s}) = {} ≠ f₂ = {f2}",
            profile.kappa
        )));
    }
    let table = GroupTable::build(kmn.params)?;

    if let Some((a, b, trace)) = f2_candidate(kmn, &table, r, s)? {
        let pair = finish_pair(&table, a, b, r, s, 2, trace)?;
        if pair.product_size <= f2 {
            return Ok(pair);
        }
    }
    // The half-size construction assumes p ≤ q; otherwise (and for the
    // mirrored x/y corner) swap the roles of A and B and transpose via the
    // anti-isomorphism (A, B) ↦ (B⁻¹, A⁻¹), which preserves |AB|.
    if let Some((a0, b0, mut trace)) = f2_candidate(kmn, &table, s, r)? {
        trace.push("transposed via (A, B) ↦ (B⁻¹, A⁻¹)".to_string());
        let pair = finish_pair(
            &table,
            table.inverse_set(&b0),
            table.inverse_set(&a0),
            r,
            s,
            2,
            trace,
        )?;
        if pair.product_size <= f2 {
            return Ok(pair);
        }
    }
    Err(WitnessError::ConstructionFailed(format!(
        "f₂ doubling missed the bound in K_{{{},{}}} at ({r}, {s})",
        kmn.m, kmn.n
    )))
}

/// Half-size sets plus doubling, for `p ≤ q`. Returns `None` when `p > q`
/// or a size check fails, so the caller can try the transposed query.
#[allow(clippy::type_complexity)]
fn f2_candidate(
    kmn: &KmnPresentation,
    table: &GroupTable,
    r: u32,
    s: u32,
) -> Result<Option<(ElementSet, ElementSet, Vec<String>)>, WitnessError> {
    let params = &kmn.params;
    let m = kmn.m;
    let plan = SegmentPlan::new(m, r, s);
    let SegmentPlan { r1, s1, p, q, x, y } = plan;
    if p > q {
        return Ok(None);
    }
    // x = y = 0 would make f_{2m} < f₂ for m > 1, contradicting the kappa
    // precondition; for m = 1 it is the normal state of affairs.
    debug_assert!(m == 1 || x > 0 || y > 0 || (p == q && r1 == kmn.n * m));

    let b2 = params.pow(params.gen_b(), 2);
    let (a_half, b_half, case) = if p == q {
        let shifted = table.right_translate(&build_segments(kmn, p)?, params.index_of(b2));
        (
            shifted.union(&build_kx(params, x as i64)),
            shifted.union(&build_kx(params, y as i64)),
            "p = q",
        )
    } else {
        let b2p = params.index_of(params.pow(params.gen_b(), 2 * p as i64));
        let b2q = params.index_of(params.pow(params.gen_b(), 2 * q as i64));
        let a_half = build_segments(kmn, p)?
            .union(&table.left_translate(b2p, &build_kx(params, x as i64)));
        let b_half = build_segments(kmn, q)?
            .union(&table.right_translate(&build_kx(params, y as i64), b2q));
        (a_half, b_half, "p < q")
    };
    if a_half.len() != r1 as usize || b_half.len() != s1 as usize {
        return Ok(None);
    }

    // Double into the odd cosets: A = A′ ∪ A′·a^{y−1}b^n, B = B′ ∪ B′·b^n.
    let bn = params.pow(params.gen_b(), kmn.n as i64);
    let a_shift = params.mul(params.pow(params.gen_a(), y as i64 - 1), bn);
    let a = a_half.union(&table.right_translate(&a_half, params.index_of(a_shift)));
    let b = b_half.union(&table.right_translate(&b_half, params.index_of(bn)));
    if a.len() != r as usize || b.len() != s as usize {
        return Ok(None);
    }
    let trace = vec![format!(
        "f₂ doubling in K_{{{},{}}}: r₁ = {r1} = {m}·{p} + {x}, s₁ = {s1} = {m}·{q} + {y}, case {case}",
        kmn.m, kmn.n
    )];
    Ok(Some((a, b, trace)))
}

/// Pull a quotient witness back through a normal subgroup: `S`, `T` are
/// the full coset preimages (so `|S·T| = k·|S̄·T̄|`), then `A ⊆ S`,
/// `B ⊆ T` are trimmed to `(r, s)` by dropping elements of the last-added
/// coset.
pub fn construct_lift(
    params: &PresentationParams,
    descriptor: &SubgroupDescriptor,
    quotient_witness: &WitnessPair,
    r: u32,
    s: u32,
) -> Result<WitnessPair, WitnessError> {
    let qmap = match lattice::quotient_map(params, descriptor) {
        Err(LatticeError::NotNormal(d)) => return Err(WitnessError::NotNormal(d)),
        other => other?,
    };
    let table = GroupTable::build(*params)?;
    let pair = lift_through(&table, &qmap, quotient_witness, r, s)?;
    Ok(pair)
}

fn lift_through(
    table: &GroupTable,
    qmap: &QuotientMap,
    quotient_witness: &WitnessPair,
    r: u32,
    s: u32,
) -> Result<WitnessPair, WitnessError> {
    let k = qmap.descriptor.k;
    for qset in [&quotient_witness.a, &quotient_witness.b] {
        if qset.iter().any(|qi| qi >= qmap.cosets.len()) {
            return Err(WitnessError::SizeMismatch(format!(
                "quotient witness uses element indices outside the order-{} quotient",
                qmap.cosets.len()
            )));
        }
    }
    let expand = |qset: &ElementSet, size: u32| -> Result<ElementSet, WitnessError> {
        let full = qset.len() as u32 * k;
        if size > full || full - size >= k {
            return Err(WitnessError::SizeMismatch(format!(
                "cannot trim {full} lifted elements to {size} within the last coset (k = {k})"
            )));
        }
        // Cosets join in ascending quotient-index order; the trim drops
        // the largest indices of the final coset.
        let mut out = Vec::with_capacity(full as usize);
        for qi in qset.iter() {
            out.extend(qmap.cosets[qi].iter());
        }
        Ok(out.into_iter().take(size as usize).collect())
    };

    let s_full = expand(&quotient_witness.a, quotient_witness.a.len() as u32 * k)?;
    let t_full = expand(&quotient_witness.b, quotient_witness.b.len() as u32 * k)?;
    debug_assert_eq!(
        table.product_set(&s_full, &t_full).len() as u32,
        k * quotient_witness.product_size,
        "|S·T| must equal k·|S̄·T̄| for full coset preimages"
    );

    let a = expand(&quotient_witness.a, r)?;
    let b = expand(&quotient_witness.b, s)?;
    let mut trace = vec![format!(
        "lift through {} of order {k}: quotient sizes ({}, {}), quotient product {}",
        qmap.descriptor,
        quotient_witness.a.len(),
        quotient_witness.b.len(),
        quotient_witness.product_size
    )];
    trace.extend(quotient_witness.trace.iter().map(|t| format!("  {t}")));
    let certificate = certificate_for(
        table.order() as u32,
        r,
        s,
        k * quotient_witness.product_size,
    );
    finish_pair(table, a, b, r, s, certificate, trace)
}

/// Smallest `(k, l, β)` naming a normal subgroup of order `k`.
fn least_normal_descriptor(
    params: &PresentationParams,
    k: u32,
) -> Option<SubgroupDescriptor> {
    lattice::enumerate_gamma(params)
        .into_iter()
        .find(|d| d.k == k && lattice::is_normal_descriptor(params, d))
}

/// Construct a witness pair with `|A·B| ≤ kappa(r, s)` for any `K_{m,n}`
/// or abelian metacyclic presentation.
pub fn construct_witness(
    params: &PresentationParams,
    r: u32,
    s: u32,
) -> Result<WitnessPair, WitnessError> {
    let order = params.order();
    if r < 1 || r > order || s < 1 || s > order {
        return Err(WitnessError::RangeViolation(format!(
            "(r, s) = ({r}, {s}) outside [1, {order}]"
        )));
    }
    if order == 1 {
        let table = GroupTable::build(*params)?;
        return finish_pair(
            &table,
            ElementSet::singleton(0),
            ElementSet::singleton(0),
            1,
            1,
            1,
            vec!["trivial group".to_string()],
        );
    }
    if !params.is_abelian() && params.kmn_view().is_none() {
        return Err(WitnessError::UnsupportedGroup(*params));
    }

    let ctx = BoundsContext::new(params)?;
    let profile = ctx.profile(r, s);
    let h_star = profile.kappa_argmin_h;
    let table = GroupTable::build(*params)?;

    let pair = if h_star == 1 {
        // kappa = r + s − 1: initial segments in index order suffice since
        // h ≡ ±1 keeps partial products inside a-power intervals.
        let (a, b) = initial_segment_pair(order as usize, r, s);
        finish_pair(
            &table,
            a,
            b,
            r,
            s,
            1,
            vec![format!("initial segments of {:?} (h = 1)", params)],
        )?
    } else if ctx.normal_orders.contains(&h_star) {
        // Lift a quotient witness through a normal subgroup of order h.
        let d = least_normal_descriptor(params, h_star).expect("order is in normal_orders");
        let qmap = lattice::quotient_map(params, &d)?;
        let (w, z) = (r.div_ceil(h_star), s.div_ceil(h_star));
        let qw = construct_witness(&qmap.params, w, z)?;
        lift_through(&table, &qmap, &qw, r, s)?
    } else if h_star == 2 {
        // No normal subgroup of order 2 forces m ≥ 3 and mn odd.
        let (m, n, g) = params.kmn_view().expect("non-abelian cases are K-form");
        construct_f2(&kmn_params(m, n, g)?, r, s)?
    } else {
        // h = 2k with k > 1 and no normal subgroup of order 2k; then
        // v₂(k) < v₂(2mn), so a normal subgroup of order k exists. Lift a
        // quotient witness of even sizes (2w, 2z) and trim.
        debug_assert_eq!(h_star % 2, 0);
        let k = h_star / 2;
        let d = least_normal_descriptor(params, k).ok_or_else(|| {
            WitnessError::ConstructionFailed(format!(
                "no normal subgroup of order {k} in {params:?}"
            ))
        })?;
        let qmap = lattice::quotient_map(params, &d)?;
        let plan = LiftPlan {
            descriptor: d,
            w: r.div_ceil(h_star),
            z: s.div_ceil(h_star),
            quotient_params: qmap.params,
        };
        let qw = construct_witness(&qmap.params, 2 * plan.w, 2 * plan.z)?;
        lift_through(&table, &qmap, &qw, r, s)?
    };

    if pair.product_size > profile.kappa {
        return Err(WitnessError::ConstructionFailed(format!(
            "witness for {params:?} at ({r}, {s}) has |AB| = {} > kappa = {}",
            pair.product_size, profile.kappa
        )));
    }
    let mut pair = pair;
    pair.certificate_h = h_star;
    Ok(pair)
}
