use std::sync::Arc;

use super::scheme::AmalgamScheme;
use super::word::{NormalForm, Syllable, Word};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::{quotient, Homomorphism};
use crate::subgroup::Subgroup;

/// The map `Q -> Q_N` induced by `A -> A/N` on every copy, where
/// `Q_N = A/N *_{HN/N} ... *_{HN/N} A/N` has the same number of copies.
#[derive(Debug, Clone)]
pub struct EpsilonMap {
    kernel: Subgroup,
    projection: Homomorphism,
    target: AmalgamScheme,
}

impl EpsilonMap {
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn projection(&self) -> &Homomorphism {
        &self.projection
    }

    pub fn quotient_group(&self) -> &Arc<PermGroup> {
        self.projection.target()
    }

    /// The scheme of `Q_N`.
    pub fn target(&self) -> &AmalgamScheme {
        &self.target
    }

    /// Sends each syllable `(λ, a)` to `(λ, aN)`.
    pub fn map_word(&self, w: &Word) -> Result<Word> {
        w.syllables
            .iter()
            .map(|s| Ok(Syllable::new(s.copy, self.projection.apply(&s.elt)?)))
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }

    pub fn map_form(&self, nf: &NormalForm) -> Result<NormalForm> {
        self.target.reduce(&self.map_word(&nf.to_word())?)
    }
}

impl AmalgamScheme {
    /// Builds `Q_N` and `ε_N` for a normal subgroup `N` of the base group of a
    /// generalized free power.
    pub fn epsilon(&self, n: &Subgroup) -> Result<EpsilonMap> {
        if !self.is_power() {
            return Err(Error::NotAPower);
        }
        let base = self.factor(0);
        let n = n
            .within(base)
            .map_err(|_| Error::NotContained("the base group".into()))?;
        n.require_normal()?;
        let (q, projection) = quotient(&n)?;
        let image_h = projection.map_subgroup(self.subgroup(0))?;
        let target = AmalgamScheme::power(&q, &image_h, self.copies())?;
        Ok(EpsilonMap {
            kernel: n,
            projection,
            target,
        })
    }
}
