//! Finite-horizon analysis of shift spaces represented by sampled orbits.

mod bits;
pub mod examples;
mod hitting;
mod model;
mod pairs;
mod recurrence;

pub use examples::{
    block_family_model, default_choosers, family_member, growing_zeros_eqp_refutation,
    growing_zeros_model, growing_zeros_word, truncated_growing_zeros, zero_block_schedule,
    zero_membership_is_member_independent, Chooser, FamilyMember, GrowingZeros,
};
pub use hitting::{
    classify, classify_times, hitting_times, sensitivity_times, splitting_times, Classification,
    EntourageDepth, HittingReport, MAX_HORIZON,
};
pub use model::{construction_model, SampleInfo, SpaceModel};
pub use pairs::{
    check_pair, check_pair_at, search_order, trivial_pair_scan, PairCheck, PairKind, PairStatus,
    PairViolation, TrivialPairScan, Verdict,
};
pub use recurrence::{omega_membership_evidence, periodic_scan, PeriodicScan, RepetitionCap};
