//! Braid-algebra relation sets, representation series and pair operators.

mod block;
mod pairs;
mod relations;

pub use block::{
    block_generator_matrix, burau_quadratic_check, rep_from_word, series_constructor, signed_generator_matrix,
    simplified_commutative_slots, BlockRep, SeriesParams,
};
pub use pairs::{
    is_nilpotent, is_periodic, pair_to_triangle_rep, triangle_block_rep, type_i_pair, type_ii_pair, PairOperators,
};
pub use relations::{assignment, check_relation_set, check_relations, RelationSetId};
