mod partition;
mod rel;
mod uniform;
mod vec;

pub use partition::{all_partitions, join, quotient_partition, Partition};
pub use rel::{
    arrow_left, arrow_right, biarrow, rel_vec, residual_left, residual_right, transitive_closure, vec_rel, BoolRel,
};
pub use uniform::{
    cokernel, functional_descriptions, induced_bijection, is_complete, is_partial_uniform, is_surjective, is_uniform,
    kernel, uniformity_violation, FunctionalDescriptions, InducedBijection,
};
pub use vec::BoolVec;
