use std::sync::Arc;

use serde::Serialize;

use crate::certificate::{
    closedness_claims, CertificateData, CertificateInputs, CertificateKind, ClosednessData,
    ClosednessFacts, ClosednessInputs, GroupRecord, SeparationCertificate, FORMAT_VERSION,
};
use crate::class::RootClassSpec;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::subgroup::{normal_subgroups, Subgroup};

/// Outcome of the closedness decision for `H <= A`.
#[derive(Debug, Clone)]
pub struct ClosednessReport {
    pub group: Arc<PermGroup>,
    pub subgroup: Subgroup,
    pub class: RootClassSpec,
    pub closed: bool,
    /// `(a, N_a)` for every `a` in `A \ H` that has a witness, in canonical order.
    pub witnesses: Vec<(Perm, Subgroup)>,
    /// Every `a` in `A \ H` without a witness, in canonical order.
    pub failing_elements: Vec<Perm>,
}

impl ClosednessReport {
    /// The canonically first element without a witness.
    pub fn failing_element(&self) -> Option<&Perm> {
        self.failing_elements.first()
    }

    pub fn witness(&self, a: &Perm) -> Option<&Subgroup> {
        self.witnesses.iter().find(|(x, _)| x == a).map(|(_, n)| n)
    }

    pub fn summary(&self) -> ClosednessSummary {
        ClosednessSummary {
            group_order: self.group.order(),
            subgroup: self.subgroup.generators().to_vec(),
            subgroup_order: self.subgroup.order(),
            class: self.class,
            closed: self.closed,
            witnesses: self
                .witnesses
                .iter()
                .map(|(a, n)| WitnessEntry {
                    element: a.clone(),
                    kernel: n.generators().to_vec(),
                    kernel_order: n.order(),
                })
                .collect(),
            failing_element: self.failing_element().cloned(),
            failing_elements: self.failing_elements.clone(),
        }
    }

    /// A standalone certificate that `a` is separated from `H` by a quotient
    /// in the class.
    pub fn certificate(&self, a: &Perm) -> Result<SeparationCertificate> {
        let n = self.witness(a).ok_or_else(|| {
            Error::Hypothesis(format!("{a} has no closedness witness in class {}", self.class))
        })?;
        closedness_certificate(&self.subgroup, n, a, self.class)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEntry {
    pub element: Perm,
    pub kernel: Vec<Perm>,
    pub kernel_order: usize,
}

/// Serializable view of a [`ClosednessReport`].
#[derive(Debug, Clone, Serialize)]
pub struct ClosednessSummary {
    pub group_order: usize,
    pub subgroup: Vec<Perm>,
    pub subgroup_order: usize,
    pub class: RootClassSpec,
    pub closed: bool,
    pub witnesses: Vec<WitnessEntry>,
    pub failing_element: Option<Perm>,
    pub failing_elements: Vec<Perm>,
}

/// Decides whether `H` is closed in `A` for the class: every `a` outside `H`
/// must avoid `HN` for some normal `N` with `A/N` in the class. Candidates are
/// tried in canonical normal-subgroup order.
pub fn is_k_closed(
    group: &Arc<PermGroup>,
    subgroup: &Subgroup,
    class: RootClassSpec,
) -> Result<ClosednessReport> {
    let h = subgroup
        .within(group)
        .map_err(|_| Error::NotContained("A".into()))?;
    let candidates: Vec<(Subgroup, Vec<bool>)> = normal_subgroups(group)
        .into_iter()
        .filter(|n| class.contains_quotient(n))
        .map(|n| {
            let hn = h.product_mask(&n);
            (n, hn)
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut failing_elements = Vec::new();
    for a in 0..group.order() {
        if h.contains_idx(a) {
            continue;
        }
        let elt = group.element(a).clone();
        match candidates.iter().find(|(_, hn)| !hn[a]) {
            Some((n, _)) => witnesses.push((elt, n.clone())),
            None => failing_elements.push(elt),
        }
    }
    Ok(ClosednessReport {
        group: Arc::clone(group),
        subgroup: h,
        class,
        closed: failing_elements.is_empty(),
        witnesses,
        failing_elements,
    })
}

pub(crate) fn group_record(group: &PermGroup) -> GroupRecord {
    GroupRecord {
        degree: group.degree(),
        generators: group
            .generator_names()
            .iter()
            .cloned()
            .zip(group.generators().iter().cloned())
            .collect(),
    }
}

/// Certificate for `a ∉ HN` with `N` normal and `A/N` in the class.
pub fn closedness_certificate(
    h: &Subgroup,
    n: &Subgroup,
    a: &Perm,
    class: RootClassSpec,
) -> Result<SeparationCertificate> {
    let group = h.parent();
    let n = n.within(group)?;
    n.require_normal()?;
    if !class.contains_quotient(&n) {
        return Err(Error::Hypothesis(format!("A/N is not in class {class}")));
    }
    if !group.contains(a) || h.contains(a) {
        return Err(Error::Precondition(format!("{a} does not lie in A outside H")));
    }
    if h.product_mask(&n)[group.idx(a)] {
        return Err(Error::Hypothesis(format!("{a} lies in H N")));
    }
    let record = group_record(group);
    let claims = closedness_claims(&ClosednessFacts {
        group: &record,
        group_order: group.order(),
        subgroup: h.generators(),
        subgroup_order: h.order(),
        class,
        kernel: n.generators(),
        quotient_order: n.index(),
        element: a,
    });
    Ok(SeparationCertificate {
        format_version: FORMAT_VERSION,
        kind: CertificateKind::ClosednessWitness,
        class: Some(class),
        inputs: CertificateInputs::ClosednessWitness(ClosednessInputs {
            group: record,
            subgroup: h.generators().to_vec(),
        }),
        data: CertificateData::ClosednessWitness(ClosednessData {
            kernel: n.generators().to_vec(),
            element: a.clone(),
        }),
        claims,
    })
}
