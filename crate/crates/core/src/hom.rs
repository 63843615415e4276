//! Homomorphisms between permutation groups, validated by the graph-subgroup
//! order test, and quotients by normal subgroups via the coset action.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::subgroup::{Subgroup, Transversal};

#[derive(Clone)]
pub struct Homomorphism {
    source: Arc<PermGroup>,
    target: Arc<PermGroup>,
    generator_images: Vec<Perm>,
    /// `table[i]` is the target index of the image of source element `i`.
    table: Vec<usize>,
}

impl Homomorphism {
    /// Validates that the generator assignment extends to a homomorphism.
    ///
    /// The graph subgroup generated by the pairs `(g_i, image_i)` is explored
    /// from the identity; the assignment is well defined exactly when the
    /// graph has the same order as the source, i.e. no source element is
    /// reached with two different images.
    pub fn new(
        source: &Arc<PermGroup>,
        target: &Arc<PermGroup>,
        images: Vec<Perm>,
    ) -> Result<Homomorphism> {
        if images.len() != source.generators().len() {
            return Err(Error::ImageCount {
                expected: source.generators().len(),
                found: images.len(),
            });
        }
        let image_idx = images
            .iter()
            .map(|p| target.index_of(p).ok_or_else(|| Error::NotInGroup(p.clone())))
            .collect::<Result<Vec<_>>>()?;
        let gen_idx = source.generator_indices();
        let mut table = vec![usize::MAX; source.order()];
        table[0] = 0;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for (&g, &img) in gen_idx.iter().zip(&image_idx) {
                let y = source.mul_idx(x, g);
                let fy = target.mul_idx(table[x], img);
                if table[y] == usize::MAX {
                    table[y] = fy;
                    stack.push(y);
                } else if table[y] != fy {
                    return Err(Error::NotAHomomorphism {
                        source_elt: source.element(y).clone(),
                    });
                }
            }
        }
        Ok(Homomorphism {
            source: Arc::clone(source),
            target: Arc::clone(target),
            generator_images: images,
            table,
        })
    }

    /// Generator images given as a name-to-element map.
    pub fn from_map(
        source: &Arc<PermGroup>,
        target: &Arc<PermGroup>,
        images: &HashMap<String, Perm>,
    ) -> Result<Homomorphism> {
        let ordered = source
            .generator_names()
            .iter()
            .map(|n| {
                images
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::Malformed(format!("no image for generator {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, ordered)
    }

    pub fn identity(group: &Arc<PermGroup>) -> Homomorphism {
        Self::new(group, group, group.generators().to_vec()).expect("identity is a homomorphism")
    }

    pub fn trivial(source: &Arc<PermGroup>, target: &Arc<PermGroup>) -> Homomorphism {
        let images = vec![target.identity().clone(); source.generators().len()];
        Self::new(source, target, images).expect("trivial map is a homomorphism")
    }

    pub fn source(&self) -> &Arc<PermGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        &self.target
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.generator_images
    }

    pub fn apply(&self, x: &Perm) -> Result<Perm> {
        let i = self
            .source
            .index_of(x)
            .ok_or_else(|| Error::NotInGroup(x.clone()))?;
        Ok(self.target.element(self.table[i]).clone())
    }

    pub fn kernel(&self) -> Subgroup {
        let members = (0..self.source.order())
            .filter(|&i| self.table[i] == 0)
            .collect();
        Subgroup::from_members(&self.source, members)
    }

    pub fn image(&self) -> Subgroup {
        let mut members: Vec<usize> = self.table.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_members(&self.target, members)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// Image of a subgroup of the source.
    pub fn map_subgroup(&self, sub: &Subgroup) -> Result<Subgroup> {
        let images = sub
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::generated(&self.target, &images)
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homomorphism")
            .field("source_order", &self.source.order())
            .field("target_order", &self.target.order())
            .field("generator_images", &self.generator_images)
            .finish()
    }
}

/// `G/N` as the permutation group induced on the right cosets of `N`, together
/// with the projection. Cosets are numbered by their canonical (minimal)
/// representatives, so the result is deterministic.
pub fn quotient(n: &Subgroup) -> Result<(Arc<PermGroup>, Homomorphism)> {
    n.require_normal()?;
    let group = n.parent();
    let cosets = Transversal::new(n);
    let degree = cosets.len();
    let action = |g: &Perm| -> Perm {
        let gi = group.idx(g);
        let images: Vec<u32> = cosets
            .rep_indices()
            .iter()
            .map(|&r| cosets.coset_id(group.mul_idx(r, gi)) as u32 + 1)
            .collect();
        Perm::from_images(&images).expect("coset action is a permutation")
    };
    let images: Vec<Perm> = group.generators().iter().map(action).collect();
    let q = PermGroup::generate_named(
        degree,
        group.generator_names().to_vec(),
        images.clone(),
        group.cap(),
    )?;
    let projection = Homomorphism::new(group, &q, images)?;
    Ok((q, projection))
}
