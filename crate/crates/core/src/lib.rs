//! Decomposition of loops in finite, possibly non-Galois, covers via
//! monodromy permutations, and Chebotarev-type equidistribution of the
//! periodic orbits of group-labeled subshifts of finite type.
//!
//! * [`permgroup`]: permutations, finite groups, conjugacy classes, coset action.
//! * [`freewords`]: free-group words, braid-closure presentations, homomorphisms.
//! * [`covers`]: coset-graph covers and loop lifting.
//! * [`sft`]: orbit enumeration, transfer counts and density reports.
//! * [`quotients`]: Smith normal form, H₁ generation, quotient search.
//! * [`experiment`]: the A₅ decomposition-type table.

pub mod covers;
pub mod experiment;
pub mod freewords;
pub mod permgroup;
pub mod quotients;
pub mod sft;

pub use covers::{build_cover, decompose_loop, verify_artin, verify_component_bijection, CoveringGraph, LiftResult};
pub use freewords::{braid_presentation, cyclic_reduce, BraidWord, CyclicWord, GroupHom, Presentation, Word};
pub use permgroup::{coset_action, CosetAction, CycleType, FiniteGroup, Permutation, Subgroup};
pub use quotients::{generic_check, quotient_search, smith_normal_form, IntMatrix, SmithForm};
pub use sft::{chebotarev_report, enumerate_orbits, exact_counts, realization_check, LabeledSFT, Orbit};
