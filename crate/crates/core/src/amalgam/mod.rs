//! Generalized free products of finite groups amalgamating a common subgroup.
//!
//! Elements are words of syllables `(copy, element)`; equality is decided by
//! reduction to the canonical form `h · t_1 ⋯ t_s` (head in the amalgamated
//! subgroup, tail of canonical right-coset representatives from alternating
//! copies).

mod epsilon;
mod family;
mod scheme;
mod word;

pub use epsilon::EpsilonMap;
pub use family::{eval_hom_family, HomFamily};
pub use scheme::{AmalgamScheme, IsoSpec};
pub use word::{inverse_word, NormalForm, Syllable, Word};
