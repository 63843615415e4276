use thiserror::Error;

use crate::perm::Perm;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("group order cap {cap} exceeded (closure reached {partial} elements)")]
    OrderCapExceeded { cap: usize, partial: usize },

    #[error("element {0} does not belong to the group")]
    NotInGroup(Perm),

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("subgroup is not normal: conjugate by {conjugator} leaves it")]
    NotNormal { conjugator: Perm },

    #[error("subgroup is not contained in {0}")]
    NotContained(String),

    #[error("generator images do not extend to a homomorphism (graph exceeds source at {source_elt})")]
    NotAHomomorphism { source_elt: Perm },

    #[error("expected {expected} generator images, got {found}")]
    ImageCount { expected: usize, found: usize },

    #[error("root-class precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("amalgam coherence violated on ({0}, {1}, {2}) at {witness}", triple.0, triple.1, triple.2)]
    Coherence { triple: (usize, usize, usize), witness: Perm },

    #[error("missing isomorphism from copy {from} to copy {to}")]
    MissingIso { from: usize, to: usize },

    #[error("invalid scheme: {0}")]
    Scheme(String),

    #[error("scheme is not a generalized free power")]
    NotAPower,

    #[error("syllable {position}: {reason}")]
    BadSyllable { position: usize, reason: String },

    #[error("homomorphism family disagrees on amalgamated subgroup: copies {lambda} and {mu} at {witness}")]
    FamilyDisagrees { lambda: usize, mu: usize, witness: Perm },

    #[error("malformed homomorphism family: {0}")]
    Family(String),

    #[error("series parameters do not match: {0}")]
    SeriesMismatch(String),

    #[error("series is not a unit (constant term {0})")]
    NotAUnit(i128),

    #[error("coefficient overflow in truncated series arithmetic")]
    CoefficientOverflow,

    #[error("series limits exceeded: {0}")]
    SeriesLimit(String),

    #[error("word is trivial")]
    TrivialWord,

    #[error("word {word} not separated at any degree up to {max_degree}")]
    DegreeExhausted { word: String, max_degree: usize },

    #[error("hypothesis fails: {0}")]
    Hypothesis(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
