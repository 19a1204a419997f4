//! Brute-force checks over actual finite fields.

pub mod additive;
pub mod characters;
pub mod counting;
pub mod field;
pub mod group;
pub mod matrix;

pub use additive::{additive_side, Endpoint};
pub use characters::{
    alpha_character, inner_product, multiplicity_oracle, verify_om, ClassFunction, Which,
};
pub use counting::{burnside_count, orbit_count};
pub use field::Fq;
pub use group::{
    enumerate_group, fixed_count, ClassTable, ConjClassDescriptor, GroupElement, DEFAULT_BUDGET,
};
