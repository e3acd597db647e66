//! Block idempotents with automatic splitting-field selection, Brauer
//! pairs, and defect groups.

mod brauer;
mod catalog;
mod defect;
mod system;

pub use brauer::{brauer_sparse, BrauerPair};
pub use catalog::{
    conjugating_element, signature, subconjugating_element, SubgroupCatalog, SubgroupEntry, DEFAULT_MAX_SYLOW,
};
pub use defect::DefectGroup;
pub use system::{Block, BlockConfig, BlockSystem, LocalBlocks};
