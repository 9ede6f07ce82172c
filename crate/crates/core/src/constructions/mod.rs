//! Named algebras and word families.

mod bracket;
mod embedding;
mod groups;
mod limit;
mod word;

pub use bracket::{bracket_elements, Bracket, BracketMap};
pub use embedding::{
    kni_generator_images, scab_power_embedding, t_subsemiring, verify_kni_embedding,
};
pub use groups::{
    abelian_group, abelian_types, cyclic_group, flat_extension, group_by_name, group_metacyclic,
    group_nonmetacyclic, group_q8,
};
pub use limit::{pair_subgroup, PairCase, PairSubgroup};
pub use word::{
    generate_pattern, word_semiring, word_semiring_of, Family, Symbol, Word, WordSemiring,
};
