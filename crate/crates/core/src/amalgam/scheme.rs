use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::perm::Perm;
use crate::subgroup::{Subgroup, Transversal};

/// Images of the canonical generators of `H_from` in factor `to`.
#[derive(Debug, Clone)]
pub struct IsoSpec {
    pub from: usize,
    pub to: usize,
    pub images: Vec<Perm>,
}

/// A generalized free product of finitely many finite factors amalgamating a
/// common subgroup through a coherent table of isomorphisms.
///
/// The table is stored element-wise: `isos[l][m][k]` is the factor-`m` index
/// of the image of the `k`-th member of `H_l`. The amalgamated subgroup is
/// represented authoritatively inside factor 0.
#[derive(Debug, Clone)]
pub struct AmalgamScheme {
    factors: Vec<Arc<PermGroup>>,
    subgroups: Vec<Subgroup>,
    isos: Vec<Vec<Vec<usize>>>,
    transversals: Vec<Transversal>,
    is_power: bool,
}

impl AmalgamScheme {
    /// Validates and builds a scheme.
    ///
    /// Missing table entries are filled in: `(l, l)` by the identity, `(m, l)`
    /// by inverting `(l, m)`, and otherwise `(l, m)` by composing through
    /// copy 0. Every entry is then checked for the identity, inverse and
    /// composition laws.
    pub fn new(
        factors: Vec<Arc<PermGroup>>,
        subgroups: Vec<Subgroup>,
        isos: Vec<IsoSpec>,
    ) -> Result<AmalgamScheme> {
        let k = factors.len();
        if k < 2 {
            return Err(Error::Scheme(format!("need at least two factors, got {k}")));
        }
        if subgroups.len() != k {
            return Err(Error::Scheme(format!(
                "{} subgroups for {k} factors",
                subgroups.len()
            )));
        }
        let subgroups = subgroups
            .into_iter()
            .zip(&factors)
            .enumerate()
            .map(|(l, (h, g))| {
                h.within(g)
                    .map_err(|_| Error::NotContained(format!("factor {l}")))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut table: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; k]; k];
        for spec in isos {
            if spec.from >= k || spec.to >= k {
                return Err(Error::Scheme(format!(
                    "isomorphism ({}, {}) references a missing copy",
                    spec.from, spec.to
                )));
            }
            let (from, to) = (spec.from, spec.to);
            let h = &subgroups[from];
            let hg = h.to_group();
            let hom = Homomorphism::new(&hg, &factors[to], spec.images)?;
            let map = h
                .elements()
                .map(|x| {
                    let y = hom.apply(x)?;
                    if !subgroups[to].contains(&y) {
                        return Err(Error::Scheme(format!(
                            "isomorphism ({from}, {to}) sends {x} outside H_{to}"
                        )));
                    }
                    Ok(factors[to].idx(&y))
                })
                .collect::<Result<Vec<_>>>()?;
            table[from][to] = Some(map);
        }
        for (l, h) in subgroups.iter().enumerate() {
            if table[l][l].is_none() {
                table[l][l] = Some(h.member_indices().to_vec());
            }
        }
        for l in 0..k {
            for m in 0..k {
                if table[l][m].is_none() {
                    if let Some(back) = &table[m][l] {
                        table[l][m] = Some(invert_map(&subgroups[m], &subgroups[l], back));
                    }
                }
            }
        }
        for l in 0..k {
            for m in 0..k {
                if table[l][m].is_none() {
                    if let (Some(to0), Some(from0)) = (&table[l][0], &table[0][m]) {
                        let composed = to0
                            .iter()
                            .map(|&x| {
                                subgroups[0]
                                    .member_indices()
                                    .binary_search(&x)
                                    .map_or(usize::MAX, |p| from0[p])
                            })
                            .collect();
                        table[l][m] = Some(composed);
                    }
                }
            }
        }
        let mut isos = Vec::with_capacity(k);
        for (l, row) in table.into_iter().enumerate() {
            let mut out = Vec::with_capacity(k);
            for (m, entry) in row.into_iter().enumerate() {
                out.push(entry.ok_or(Error::MissingIso { from: l, to: m })?);
            }
            isos.push(out);
        }

        let transversals = subgroups.iter().map(Transversal::new).collect();
        let mut scheme = AmalgamScheme {
            factors,
            subgroups,
            isos,
            transversals,
            is_power: false,
        };
        scheme.check_coherence()?;
        scheme.is_power = scheme.detect_power();
        Ok(scheme)
    }

    /// `copies` copies of `base` amalgamating `sub` with identity identifications.
    pub fn power(base: &Arc<PermGroup>, sub: &Subgroup, copies: usize) -> Result<AmalgamScheme> {
        let sub = sub
            .within(base)
            .map_err(|_| Error::NotContained("the base group".into()))?;
        let isos = (1..copies)
            .map(|m| IsoSpec {
                from: 0,
                to: m,
                images: sub.generators().to_vec(),
            })
            .collect();
        Self::new(vec![Arc::clone(base); copies], vec![sub; copies], isos)
    }

    fn check_coherence(&self) -> Result<()> {
        let k = self.factors.len();
        let order = self.subgroups[0].order();
        if let Some(m) = (1..k).find(|&m| self.subgroups[m].order() != order) {
            return Err(Error::Scheme(format!(
                "H_0 and H_{m} have different orders"
            )));
        }
        // image of the member at `pos` of H_l, then located inside H_m
        let step = |l: usize, m: usize, x: usize| -> Option<usize> {
            let pos = self.subgroups[l].member_indices().binary_search(&x).ok()?;
            let y = self.isos[l][m][pos];
            (y != usize::MAX).then_some(y)
        };
        for l in 0..k {
            for &x in self.subgroups[l].member_indices() {
                let fail = |triple| Error::Coherence {
                    triple,
                    witness: self.factors[l].element(x).clone(),
                };
                if step(l, l, x) != Some(x) {
                    return Err(fail((l, l, l)));
                }
                for m in 0..k {
                    let y = step(l, m, x).ok_or_else(|| fail((l, m, m)))?;
                    if step(m, l, y) != Some(x) {
                        return Err(fail((l, m, l)));
                    }
                    for n in 0..k {
                        if step(m, n, y) != step(l, n, x) {
                            return Err(fail((l, m, n)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn detect_power(&self) -> bool {
        let base = &self.factors[0];
        let h0 = &self.subgroups[0];
        self.factors.iter().all(|g| g.same_elements(base))
            && self
                .subgroups
                .iter()
                .all(|h| h.member_indices() == h0.member_indices())
            && self
                .isos
                .iter()
                .all(|row| row.iter().all(|map| map == h0.member_indices()))
    }

    pub fn copies(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, copy: usize) -> &Arc<PermGroup> {
        &self.factors[copy]
    }

    pub fn factors(&self) -> &[Arc<PermGroup>] {
        &self.factors
    }

    pub fn subgroup(&self, copy: usize) -> &Subgroup {
        &self.subgroups[copy]
    }

    pub fn is_power(&self) -> bool {
        self.is_power
    }

    /// Canonical right transversal of `H_copy` in factor `copy`.
    pub fn transversal(&self, copy: usize) -> Vec<Perm> {
        self.transversals[copy]
            .rep_indices()
            .iter()
            .map(|&i| self.factors[copy].element(i).clone())
            .collect()
    }

    /// `φ_{from,to}(h)`; `None` when `h` is not in `H_from`.
    pub fn iso_apply(&self, from: usize, to: usize, h: &Perm) -> Option<Perm> {
        let i = self.factors[from].index_of(h)?;
        let pos = self.subgroups[from].member_indices().binary_search(&i).ok()?;
        Some(self.factors[to].element(self.isos[from][to][pos]).clone())
    }

    pub(crate) fn transport_idx(&self, from: usize, to: usize, x: usize) -> usize {
        self.isos[from][to][position(&self.subgroups[from], x)]
    }

    pub(crate) fn transversal_data(&self, copy: usize) -> &Transversal {
        &self.transversals[copy]
    }
}

fn position(h: &Subgroup, x: usize) -> usize {
    h.member_indices()
        .binary_search(&x)
        .expect("element of the amalgamated subgroup")
}

/// Inverts an element map `H_m -> H_l` given as images of `H_m`'s members.
fn invert_map(hm: &Subgroup, hl: &Subgroup, forward: &[usize]) -> Vec<usize> {
    let mut out = vec![usize::MAX; hl.order()];
    for (pos, &y) in forward.iter().enumerate() {
        if let Ok(q) = hl.member_indices().binary_search(&y) {
            out[q] = hm.member_indices()[pos];
        }
    }
    out
}
