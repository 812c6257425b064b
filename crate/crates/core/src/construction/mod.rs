//! The recursive construction: words `C_n`, `Q_n`, `W_n`, the points `x`
//! and `y`, exact length arithmetic, hitting times and refutation
//! certificates.

pub mod blocks;
mod certificates;
mod evidence;
pub mod lengths;
mod verify;
mod words;

pub use blocks::Stream;
pub use certificates::{
    validate_certificate, witness_not_eqp_y_fixed, witness_not_eqp_y_general,
    witness_not_evp_x_10inf, CheckedFact, Claim, Fact, FixedTarget, Validation, WitnessCertificate,
};
pub use evidence::{check_evp_x_0inf, EvidenceReport, EvpViolation};
pub use lengths::{cum_c, cum_w, len_c, len_q, len_w, lengths, one_part, zero_part, LengthRow};
pub use verify::{
    verify_claim1, verify_corollary, verify_hitting_order, verify_one_part_remark, HittingOrderRow,
    LemmaReport, OnePartReport,
};
pub use words::{c_prefix, c_runs, closing_point, point_x, point_y, q_word, tau, w_prefix, w_word};
