//! Serialized separation certificates.
//!
//! A certificate carries its inputs, the producer's data and a list of
//! human-readable claims. Claims are rendered from plain values by the
//! helpers below; the verifier recomputes every value and requires the
//! rendered claims to match exactly.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::amalgam::{Syllable, Word};
use crate::class::RootClassSpec;
use crate::error::Result;
use crate::perm::Perm;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    PowerStage,
    FreeWord,
    ClosednessWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationCertificate {
    pub format_version: u32,
    pub kind: CertificateKind,
    pub class: Option<RootClassSpec>,
    pub inputs: CertificateInputs,
    pub data: CertificateData,
    pub claims: Vec<String>,
}

impl SeparationCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertificateInputs {
    PowerStage(PowerStageInputs),
    FreeWord(FreeWordInputs),
    ClosednessWitness(ClosednessInputs),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertificateData {
    PowerStage(PowerStageData),
    FreeWord(FreeWordData),
    ClosednessWitness(ClosednessData),
}

/// A permutation group given by named generators, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRecord {
    pub degree: usize,
    pub generators: IndexMap<String, Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSchemeRecord {
    pub power: usize,
    pub factor: GroupRecord,
    /// Canonical generators of the amalgamated subgroup.
    pub subgroup: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerStageInputs {
    pub scheme: PowerSchemeRecord,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeWordInputs {
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosednessInputs {
    pub group: GroupRecord,
    pub subgroup: Vec<Perm>,
}

/// Image normal form in `Q_N`: head in `HN/N`, tail of canonical coset
/// representatives of `HN/N` in `A/N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageForm {
    pub head: Perm,
    pub tail: Vec<Syllable>,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerStageData {
    pub kernel: Vec<Perm>,
    /// One kernel per tail syllable when the source length exceeds 1.
    pub syllable_witnesses: Vec<Vec<Perm>>,
    pub quotient_order: usize,
    pub source_length: usize,
    pub image: ImageForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeWordData {
    pub rank: usize,
    pub degree: usize,
    pub modulus: u64,
    /// 1-based variable indices.
    pub monomial: Vec<u32>,
    /// Reduced into `[0, modulus)` when the modulus is nonzero.
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosednessData {
    pub kernel: Vec<Perm>,
    pub element: Perm,
}

/// Verifier outcome on a well-formed certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub failures: Vec<String>,
}

pub fn fmt_group(group: &GroupRecord) -> String {
    let gens: Vec<String> = group
        .generators
        .iter()
        .map(|(name, p)| format!("{name}={p}"))
        .collect();
    format!("<{}> on {} points", gens.join(", "), group.degree)
}

pub fn fmt_generators(gens: &[Perm]) -> String {
    let gens: Vec<String> = gens.iter().map(|p| p.to_string()).collect();
    format!("<{}>", gens.join(", "))
}

pub fn fmt_syllables(tail: &[Syllable]) -> String {
    tail.iter().map(|s| format!("[{}:{}]", s.copy, s.elt)).collect()
}

pub fn fmt_monomial(monomial: &[u32]) -> String {
    let parts: Vec<String> = monomial.iter().map(|v| format!("t{v}")).collect();
    parts.join("*")
}

fn ring_name(modulus: u64) -> String {
    if modulus == 0 {
        "Z".to_string()
    } else {
        format!("Z/{modulus}")
    }
}

/// Values bound by the claims of a power-stage certificate.
pub struct PowerStageFacts<'a> {
    pub group: &'a GroupRecord,
    pub group_order: usize,
    pub subgroup: &'a [Perm],
    pub subgroup_order: usize,
    pub copies: usize,
    pub word: &'a Word,
    pub class: RootClassSpec,
    pub source_length: usize,
    pub witnesses: &'a [Vec<Perm>],
    pub witness_quotient_orders: &'a [usize],
    pub kernel: &'a [Perm],
    pub quotient_order: usize,
    pub image: &'a ImageForm,
}

pub fn power_stage_claims(f: &PowerStageFacts<'_>) -> Vec<String> {
    let mut claims = vec![
        format!("A = {} has order {}", fmt_group(f.group), f.group_order),
        format!("H = {} has order {}", fmt_generators(f.subgroup), f.subgroup_order),
        format!("Q is the free power of {} copies of A amalgamating H", f.copies),
        format!("g = {} has normal-form length {} in Q", f.word, f.source_length),
    ];
    for (i, (n, q)) in f.witnesses.iter().zip(f.witness_quotient_orders).enumerate() {
        claims.push(format!(
            "syllable {}: N_{} = {} is normal in A, A/N_{} has order {} in class {}, and the syllable lies outside H N_{}",
            i + 1,
            i + 1,
            fmt_generators(n),
            i + 1,
            q,
            f.class,
            i + 1
        ));
    }
    if f.witnesses.is_empty() {
        claims.push(format!(
            "the element of A represented by g lies outside N = {}",
            fmt_generators(f.kernel)
        ));
    } else {
        claims.push(format!(
            "N = {} is the intersection of N_1..N_{}",
            fmt_generators(f.kernel),
            f.witnesses.len()
        ));
    }
    claims.push(format!(
        "N is normal in A and A/N has order {} in class {}",
        f.quotient_order, f.class
    ));
    claims.push(format!(
        "g maps to {}{} in Q_N, of length {} and not the identity",
        f.image.head,
        fmt_syllables(&f.image.tail),
        f.image.length
    ));
    claims.push(format!(
        "Q_N is an extension of a free group by A/N, hence residually in class {}",
        f.class
    ));
    claims
}

pub fn free_word_claims(
    word: &str,
    rank: usize,
    degree: usize,
    modulus: u64,
    monomial: &[u32],
    coefficient: i64,
) -> Vec<String> {
    let ring = ring_name(modulus);
    let target = if modulus == 0 {
        format!("the unit group 1 + D of Z<t1..t{rank}> truncated past degree {degree} is finitely generated, torsion-free and nilpotent")
    } else {
        format!("the unit group 1 + D of {ring}<t1..t{rank}> truncated past degree {degree} is a finite {modulus}-group")
    };
    vec![
        format!("w = {word} is freely reduced and nontrivial in the free group of rank {rank}"),
        format!("under x_i -> 1 + t_i over {ring}, every monomial of degree below {degree} has coefficient 0"),
        format!(
            "{} is the first monomial of degree {degree} with nonzero coefficient, equal to {coefficient}",
            fmt_monomial(monomial)
        ),
        target,
    ]
}

/// Values bound by the claims of a closedness-witness certificate.
pub struct ClosednessFacts<'a> {
    pub group: &'a GroupRecord,
    pub group_order: usize,
    pub subgroup: &'a [Perm],
    pub subgroup_order: usize,
    pub class: RootClassSpec,
    pub kernel: &'a [Perm],
    pub quotient_order: usize,
    pub element: &'a Perm,
}

pub fn closedness_claims(f: &ClosednessFacts<'_>) -> Vec<String> {
    vec![
        format!("A = {} has order {}", fmt_group(f.group), f.group_order),
        format!("H = {} has order {}", fmt_generators(f.subgroup), f.subgroup_order),
        format!(
            "N = {} is normal in A and A/N has order {} in class {}",
            fmt_generators(f.kernel),
            f.quotient_order,
            f.class
        ),
        format!("a = {} lies in A outside H", f.element),
        "a lies outside H N".to_string(),
    ]
}
