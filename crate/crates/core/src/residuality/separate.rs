use crate::amalgam::{AmalgamScheme, Word};
use crate::certificate::{
    power_stage_claims, CertificateData, CertificateInputs, CertificateKind, ImageForm,
    PowerSchemeRecord, PowerStageData, PowerStageFacts, PowerStageInputs, SeparationCertificate,
    FORMAT_VERSION,
};
use crate::class::{lemma_prop3_check, RootClassSpec};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::subgroup::{normal_subgroups, Subgroup};

use super::closedness::group_record;

/// Separates a nontrivial element of a generalized free power
/// `A *_H ... *_H A` through `Q_N = A/N *_{HN/N} ... *_{HN/N} A/N`.
///
/// For tail length `s > 1` each syllable `a_i` gets the first normal `N_i`
/// with `A/N_i` in the class and `a_i ∉ H N_i`, and `N = N_1 ∩ ... ∩ N_s`.
/// For `s <= 1` the element `x` of `A` represented by `g` gets the first
/// normal `N` with `A/N` in the class and `x ∉ N`.
pub fn separate_in_power(
    scheme: &AmalgamScheme,
    g: &Word,
    class: RootClassSpec,
) -> Result<SeparationCertificate> {
    if !scheme.is_power() {
        return Err(Error::NotAPower);
    }
    let nf = scheme.reduce(g)?;
    if nf.is_identity() {
        return Err(Error::TrivialWord);
    }
    let a = scheme.factor(0);
    let h = scheme.subgroup(0);
    let candidates: Vec<Subgroup> = normal_subgroups(a)
        .into_iter()
        .filter(|n| class.contains_quotient(n))
        .collect();
    let s = nf.length();

    let mut witnesses: Vec<Subgroup> = Vec::new();
    let kernel = if s > 1 {
        for (i, syl) in nf.tail.iter().enumerate() {
            let x = a.idx(&syl.elt);
            let n = candidates
                .iter()
                .find(|n| !h.product_mask(n)[x])
                .ok_or_else(|| {
                    Error::Hypothesis(format!(
                        "syllable {} ({}:{}) has no closedness witness in class {class}: \
                         H is not closed in A at it, so Q is not residually in the class",
                        i + 1,
                        syl.copy,
                        syl.elt
                    ))
                })?;
            witnesses.push(n.clone());
        }
        let mut acc = witnesses[0].clone();
        for n in &witnesses[1..] {
            let verdict = lemma_prop3_check(&acc, n, class)?;
            debug_assert!(verdict.holds);
            acc = acc.intersect(n)?;
        }
        acc
    } else {
        let x = match nf.tail.first() {
            Some(t) => a.mul_idx(a.idx(&nf.head), a.idx(&t.elt)),
            None => a.idx(&nf.head),
        };
        candidates
            .iter()
            .find(|n| !n.contains_idx(x))
            .cloned()
            .ok_or_else(|| {
                Error::Hypothesis(format!(
                    "{} lies in the residual core of A for class {class}: \
                     A is not residually in the class at g",
                    a.element(x)
                ))
            })?
    };

    let eps = scheme.epsilon(&kernel)?;
    let image = eps.map_form(&nf)?;
    if image.is_identity() || (s > 1 && image.length() != s) {
        return Err(Error::Inconsistency(format!(
            "image {image} of g in Q_N does not keep length {s}"
        )));
    }

    let record = PowerSchemeRecord {
        power: scheme.copies(),
        factor: group_record(a),
        subgroup: h.generators().to_vec(),
    };
    let witness_gens: Vec<Vec<Perm>> = witnesses.iter().map(|n| n.generators().to_vec()).collect();
    let witness_orders: Vec<usize> = witnesses.iter().map(|n| n.index()).collect();
    let image = ImageForm {
        length: image.length(),
        head: image.head,
        tail: image.tail,
    };
    let claims = power_stage_claims(&PowerStageFacts {
        group: &record.factor,
        group_order: a.order(),
        subgroup: &record.subgroup,
        subgroup_order: h.order(),
        copies: record.power,
        word: g,
        class,
        source_length: s,
        witnesses: &witness_gens,
        witness_quotient_orders: &witness_orders,
        kernel: kernel.generators(),
        quotient_order: kernel.index(),
        image: &image,
    });
    Ok(SeparationCertificate {
        format_version: FORMAT_VERSION,
        kind: CertificateKind::PowerStage,
        class: Some(class),
        inputs: CertificateInputs::PowerStage(PowerStageInputs {
            scheme: record,
            word: g.clone(),
        }),
        data: CertificateData::PowerStage(PowerStageData {
            kernel: kernel.generators().to_vec(),
            syllable_witnesses: witness_gens,
            quotient_order: kernel.index(),
            source_length: s,
            image,
        }),
        claims,
    })
}
