//! Minimal product sets in finite metacyclic groups.
//!
//! Given a finite group `G` and sizes `r`, `s`, the quantity of interest is
//! the smallest possible product set
//!
//! ```text
//! mu_G(r, s) = min { |A·B| : A, B ⊆ G, |A| = r, |B| = s }
//! ```
//!
//! together with the arithmetic bound `kappa_G(r, s)`, the minimum of
//! `f_h(r, s) = ⌈r⌉_h + ⌈s⌉_h − h` over subgroup orders `h`. This crate
//! provides the pieces needed to compute, bound, construct, and certify
//! these quantities for metacyclic presentations at small order:
//!
//! - [`presentation`] — validated presentations `⟨a, b : a^m = 1,
//!   b^n = a^g, bab⁻¹ = a^h⟩`, normal-form element arithmetic, and dense
//!   Cayley tables.
//! - [`lattice`] — the full subgroup lattice via the `(k, l, β)` descriptor
//!   bijection, normality tests, quotient presentations, and a brute-force
//!   cross-check oracle.
//! - [`bounds`] — `f_h`, `kappa`, and its divisor/normal-order variants.
//! - [`witness`] — explicit set pairs realizing the `kappa` upper bound in
//!   the family `K_{m,n} = ⟨a, b : a^m = 1, b^{2n} = a^g, bab⁻¹ = a⁻¹⟩`
//!   and in abelian metacyclic groups.
//! - [`solver`] — exact `mu` by branch-and-bound over bit-vector subsets.
//!
//! The dihedral group `D_m` is `K_{m,1}` with `g = 0` and the dicyclic
//! group `Q_{4n}` is `K_{2n,1}` with `g = n`, so both corollary families
//! are covered by the same machinery.

pub mod bounds;
pub mod lattice;
pub mod presentation;
pub mod set;
pub mod solver;
pub mod witness;

pub use bounds::{f_h, BoundsProfile, SizeQuery};
pub use lattice::{Subgroup, SubgroupDescriptor};
pub use presentation::{
    kmn_params, validate_params, GroupElement, GroupTable, KmnPresentation, PresentationParams,
};
pub use set::ElementSet;
pub use solver::{SearchBudget, SearchResult, SearchStatus};
pub use witness::WitnessPair;
