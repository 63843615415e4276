use std::sync::Arc;

use super::scheme::AmalgamScheme;
use super::word::Word;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::perm::Perm;

/// One homomorphism per copy into a common target, agreeing on the
/// amalgamated subgroup; it induces a homomorphism out of the amalgam.
#[derive(Debug, Clone)]
pub struct HomFamily {
    homs: Vec<Homomorphism>,
}

impl HomFamily {
    pub fn new(scheme: &AmalgamScheme, homs: Vec<Homomorphism>) -> Result<HomFamily> {
        Self::check_shape(scheme, &homs)?;
        if let Some((lambda, mu, witness)) = Self::disagreement(scheme, &homs) {
            return Err(Error::FamilyDisagrees { lambda, mu, witness });
        }
        Ok(HomFamily { homs })
    }

    pub(crate) fn check_shape(scheme: &AmalgamScheme, homs: &[Homomorphism]) -> Result<()> {
        if homs.len() != scheme.copies() {
            return Err(Error::Family(format!(
                "{} homomorphisms for {} copies",
                homs.len(),
                scheme.copies()
            )));
        }
        let target = homs[0].target();
        for (l, hom) in homs.iter().enumerate() {
            if !hom.source().same_elements(scheme.factor(l)) {
                return Err(Error::Family(format!("homomorphism {l} is not defined on factor {l}")));
            }
            if !hom.target().same_elements(target) {
                return Err(Error::Family(format!("homomorphism {l} has a different target")));
            }
        }
        Ok(())
    }

    /// First `(λ, μ, h)` with `homs[λ](h) != homs[μ](φ_λμ(h))`.
    pub(crate) fn disagreement(
        scheme: &AmalgamScheme,
        homs: &[Homomorphism],
    ) -> Option<(usize, usize, Perm)> {
        for l in 0..scheme.copies() {
            for h in scheme.subgroup(l).elements() {
                let here = homs[l].apply(h).expect("h lies in factor l");
                for m in 0..scheme.copies() {
                    let moved = scheme.iso_apply(l, m, h).expect("h lies in H_l");
                    if homs[m].apply(&moved).expect("image lies in factor m") != here {
                        return Some((l, m, h.clone()));
                    }
                }
            }
        }
        None
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        self.homs[0].target()
    }

    pub fn homs(&self) -> &[Homomorphism] {
        &self.homs
    }

    /// Image of a word under the induced homomorphism, syllable by syllable.
    pub fn eval(&self, scheme: &AmalgamScheme, w: &Word) -> Result<Perm> {
        scheme.check_word(w)?;
        let mut acc = self.target().identity().clone();
        for s in &w.syllables {
            acc = acc.mul(&self.homs[s.copy].apply(&s.elt)?);
        }
        Ok(acc)
    }
}

/// Evaluates the homomorphism out of the amalgam induced by `homs`.
pub fn eval_hom_family(scheme: &AmalgamScheme, homs: &[Homomorphism], w: &Word) -> Result<Perm> {
    HomFamily::new(scheme, homs.to_vec())?.eval(scheme, w)
}
