//! Closedness decisions, separation through quotient powers, the converse
//! witness construction, hypothesis checks for families of homomorphisms, and
//! certificate verification.

mod closedness;
mod converse;
mod separate;
mod theorem5;
mod verify;

pub use closedness::{
    closedness_certificate, is_k_closed, ClosednessReport, ClosednessSummary, WitnessEntry,
};
pub use converse::derive_closedness_witness;
pub use separate::separate_in_power;
pub use theorem5::{check_theorem5, Theorem5Verdict};
pub use verify::{verify_certificate, verify_json};
