//! Spanning families of fixed-point spaces for the supported subgroups, and
//! brute-force oracles to validate them.

mod descriptor;
mod families;
mod family;
mod oracle;

pub use descriptor::{SubgroupDescriptor, SubgroupKind};
pub use families::{generator_family, target_family};
pub(crate) use families::filled_members;
pub use family::GeneratorFamily;
pub use oracle::{sn_average_oracle, so_invariance_check, DEFAULT_SN_BUDGET};
