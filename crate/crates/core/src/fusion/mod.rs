//! Centric subgroups, automorphism sets, fusion fingerprints and the
//! identification of block fusion systems of symmetric and alternating
//! groups.

mod aut;
mod identify;

pub use aut::{aut_group, all_centric_subgroups, centric_subgroups, is_centric, p_part_of_order, AutSet};
pub use identify::{
    fingerprint_group, CentricEntry, DefectSummary, FusionFingerprint, FusionReport, Matches, PairCensus, ParityCheck,
    Verdict,
};
