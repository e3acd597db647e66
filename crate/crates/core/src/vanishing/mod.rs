//! The coefficient formula for `p`-regular powers of class sums, the
//! zero-coefficient hypothesis, and the cycle-type vanishing criterion for
//! block idempotents, each with a brute-force cross-check.

mod coef;
mod criterion;

pub use coef::{
    coef_formula, coef_sweep, direct_power_coefficient, zero_hypothesis, CoefReport, CountingData, ZeroWitness,
};
pub use criterion::{vanishing_criterion, verify_vanishing, Kind, VanishingEvent, VanishingReport};
