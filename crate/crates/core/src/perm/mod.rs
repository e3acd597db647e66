//! Permutations, permutation groups, conjugacy classes and the structural
//! centralizer and Sylow constructions for symmetric and alternating groups.

mod centralizer;
mod classes;
mod group;
mod parts;
mod permutation;
mod sylow;

pub use centralizer::{centralizer_structure, CentralizerStructure, WreathFactor};
pub use classes::{ClassTable, ConjClass, SplitTag};
pub use group::{all_permutations, closure, Elements, GroupKind, PermGroup, DEFAULT_MAX_ORDER};
pub use parts::{p_parts, p_regular_exponent, RegularExponent};
pub use permutation::{factorial, gcd, lcm, CycleType, Parity, Permutation};
pub use sylow::{
    is_prime, p_part, p_valuation, sylow_alternating, sylow_alternating_on, sylow_layout,
    sylow_subgroup, sylow_symmetric, sylow_symmetric_on, symmetric_sylow_order, SylowFactor,
};
