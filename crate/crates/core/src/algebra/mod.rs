//! The center of the group algebra `kG` on the class-sum basis.

mod context;
mod idempotents;
mod sparse;

pub use context::{AlgebraContext, CentralElement, LabeledCoefficient, StructureConstants};
pub use idempotents::{
    brute_force_idempotents, primitive_among, primitive_idempotents, primitive_idempotents_in_order, Component,
    IdempotentDecomposition,
};
pub use sparse::AlgebraElement;
