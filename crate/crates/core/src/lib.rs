//! Executable residuality theory for generalized free products of finite
//! groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`perm`], [`group`], [`subgroup`], [`hom`]: exact arithmetic in finite
//!   permutation groups.
//! * [`class`]: the three decidable root classes (all finite groups, finite
//!   `p`-groups, finite solvable groups), residual cores and axiom checks.
//! * [`amalgam`]: normal forms in generalized free products amalgamating a
//!   common subgroup, copy-permuting automorphisms and the quotient powers
//!   `Q_N`.
//! * [`magnus`]: truncated noncommutative power series separating free-group
//!   words in finite `p`-groups and torsion-free nilpotent groups.
//! * [`residuality`]: closedness decisions, separation certificates and their
//!   independent verification.

pub mod amalgam;
pub mod axioms;
pub mod catalog;
pub mod certificate;
pub mod class;
pub mod error;
pub mod format;
pub mod group;
pub mod hom;
pub mod magnus;
pub mod perm;
pub mod residuality;
pub mod subgroup;

pub use certificate::SeparationCertificate;
pub use class::{residual_core, ResidualCore, RootClassSpec};
pub use error::{Error, Result};
pub use group::{classify, direct_product, Classification, PermGroup, DEFAULT_ORDER_CAP};
pub use hom::{quotient, Homomorphism};
pub use magnus::{separate_free_word, FreeWord, TruncatedSeries};
pub use perm::Perm;
pub use residuality::{
    check_theorem5, derive_closedness_witness, is_k_closed, separate_in_power,
    verify_certificate, ClosednessReport,
};
pub use subgroup::{all_subgroups, normal_subgroups, transversal, Subgroup};
