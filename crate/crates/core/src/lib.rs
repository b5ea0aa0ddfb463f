//! Exact verification of fixed-point-space identities for free orthogonal
//! quantum groups: partition enumeration, diagram tensors, certified Gram
//! ranks, fixed-space intersections and alternating-projection dynamics.

pub mod cli;
pub mod counting;
pub mod dynamics;
pub mod error;
pub mod fix;
pub mod generation;
pub mod linalg;
pub mod partition;
pub mod tensor;

pub use error::{QgvError, Result};
pub use fix::{generator_family, GeneratorFamily, SubgroupDescriptor};
pub use partition::{FamilyKind, Partition};
pub use tensor::SparseTensor;
