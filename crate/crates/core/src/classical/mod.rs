//! Classical crystals of types A, C and D on words of letters.

mod graph;
mod letter;
mod tableau;
mod word;

pub use graph::{check_shape, generate_component, highest_word, CrystalGraph};
pub use letter::{ClassicalType, Letter, Op, Word};
pub use tableau::{check_column, KnTableau};
pub use word::{
    is_highest, lower_along, path_string, raise_to_highest, signature_rule, tensor_apply,
    to_highest, word_apply, word_e, word_eps, word_f, word_phi, word_signature, Signature,
};
