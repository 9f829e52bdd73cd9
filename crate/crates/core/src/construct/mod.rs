//! Constructions of 1-perfect, distance-2 MDS and Reed-Muller-like codes.
//!
//! Nothing here certifies its own output; the verifiers live in
//! [`crate::space`], [`crate::grm`] and [`crate::mdsq`].

mod concat;
mod mixed;
mod product;
mod subgroup;

pub use concat::{doubling, heden_chain, heden_substitute, theorem5_concatenate};
pub use mixed::{theorem4_construct, theorem4_extract};
pub use product::{
    cyclic_sum_quasigroup, default_inner_partitions, prop1_product, theorem6_family,
    theorem6_product, ProductSpec, PRODUCT_LIMIT,
};
pub use subgroup::{herzog_schonheim, hs_subgroup_partition, SubgroupPartition, AMBIENT_LIMIT};
