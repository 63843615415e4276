//! Subgroups of a [`PermGroup`], normal-subgroup enumeration, intersections
//! and right transversals.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{canonical_generators, PermGroup};
use crate::perm::Perm;

#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<PermGroup>,
    generators: Vec<Perm>,
    members: Vec<usize>,
}

impl Subgroup {
    /// Subgroup generated by the given elements; generators are replaced by the
    /// canonical choice for the resulting element set.
    pub fn generated(parent: &Arc<PermGroup>, gens: &[Perm]) -> Result<Subgroup> {
        let mut idx = Vec::with_capacity(gens.len());
        for g in gens {
            if g.degree() != parent.degree() {
                return Err(Error::DegreeMismatch {
                    expected: parent.degree(),
                    found: g.degree(),
                });
            }
            idx.push(parent.index_of(g).ok_or_else(|| Error::NotInGroup(g.clone()))?);
        }
        Ok(Self::from_members(parent, parent.close(&idx)))
    }

    pub fn trivial(parent: &Arc<PermGroup>) -> Subgroup {
        Self::from_members(parent, vec![0])
    }

    pub fn full(parent: &Arc<PermGroup>) -> Subgroup {
        Self::from_members(parent, (0..parent.order()).collect())
    }

    /// `members` must be a sorted, multiplicatively closed index list.
    pub(crate) fn from_members(parent: &Arc<PermGroup>, members: Vec<usize>) -> Subgroup {
        let generators = canonical_generators(parent, &members);
        Subgroup {
            parent: Arc::clone(parent),
            generators,
            members,
        }
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub(crate) fn member_indices(&self) -> &[usize] {
        &self.members
    }

    pub(crate) fn contains_idx(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.parent
            .index_of(p)
            .is_some_and(|i| self.contains_idx(i))
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = &Perm> + '_ {
        self.members.iter().map(|&i| self.parent.element(i))
    }

    fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) || self.parent.same_elements(&other.parent)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.same_parent(other) && self.members.iter().all(|&m| other.contains_idx(m))
    }

    /// Checks `g^-1 N g = N` for every generator `g` of the parent.
    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    fn normality_witness(&self) -> Option<Perm> {
        self.parent.generators().iter().find_map(|g| {
            let leaves = self
                .generators
                .iter()
                .any(|x| !self.contains(&g.conjugate(x)));
            leaves.then(|| g.clone())
        })
    }

    pub fn require_normal(&self) -> Result<()> {
        match self.normality_witness() {
            None => Ok(()),
            Some(conjugator) => Err(Error::NotNormal { conjugator }),
        }
    }

    /// Is `self` normal in the subgroup `within` (both in the same parent)?
    pub fn is_normal_in(&self, within: &Subgroup) -> bool {
        self.is_subgroup_of(within)
            && within
                .generators
                .iter()
                .all(|g| self.generators.iter().all(|x| self.contains(&g.conjugate(x))))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains_idx(m))
            .collect();
        Ok(Self::from_members(&self.parent, members))
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        let gens: Vec<usize> = self
            .generators
            .iter()
            .chain(&other.generators)
            .map(|g| self.parent.idx(g))
            .collect();
        Ok(Self::from_members(&self.parent, self.parent.close(&gens)))
    }

    /// Membership mask of the product set `self * other`.
    pub(crate) fn product_mask(&self, other: &Subgroup) -> Vec<bool> {
        let mut mask = vec![false; self.parent.order()];
        for &h in &self.members {
            for &n in &other.members {
                mask[self.parent.mul_idx(h, n)] = true;
            }
        }
        mask
    }

    /// The subgroup as a group in its own right, generated by its canonical
    /// generators on the same points.
    pub fn to_group(&self) -> Arc<PermGroup> {
        PermGroup::generate_with_cap(
            self.parent.degree(),
            self.generators.clone(),
            self.parent.cap(),
        )
        .expect("subgroup fits the parent's cap")
    }

    /// Re-homes this subgroup inside another group containing all its elements.
    pub fn within(&self, group: &Arc<PermGroup>) -> Result<Subgroup> {
        Subgroup::generated(group, &self.generators)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.members == other.members
    }
}

impl Eq for Subgroup {}

/// Ascending order, then lexicographic on canonically ordered members.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens [", self.order())?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Every normal subgroup of `group`, sorted ascending by order and then by
/// canonical element order.
///
/// The lattice is built from the normal closures of conjugacy-class
/// representatives, closed under joins; every normal subgroup is a join of
/// such closures, and intersections come along for free.
pub fn normal_subgroups(group: &Arc<PermGroup>) -> Vec<Subgroup> {
    let lists = group.normal_cache.get_or_init(|| {
        let mut base: Vec<Vec<usize>> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for rep in group.class_reps_idx() {
            let closure = group.normal_closure_idx(&[rep]);
            if seen.insert(closure.clone()) {
                base.push(closure);
            }
        }
        let mut found: Vec<Vec<usize>> = base.clone();
        let mut k = 0;
        while k < found.len() {
            for b in &base {
                if b.iter().all(|m| found[k].binary_search(m).is_ok()) {
                    continue;
                }
                let mut gens: Vec<usize> = canonical_generators(group, &found[k])
                    .iter()
                    .chain(canonical_generators(group, b).iter())
                    .map(|p| group.idx(p))
                    .collect();
                gens.dedup();
                let join = group.close(&gens);
                if seen.insert(join.clone()) {
                    found.push(join);
                }
            }
            k += 1;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    });
    lists
        .iter()
        .map(|m| Subgroup::from_members(group, m.clone()))
        .collect()
}

/// Every subgroup, in canonical order (ascending order, then members). Each
/// subgroup is the join of its cyclic subgroups, so closing the cyclic ones
/// under joins with a cyclic subgroup reaches all of them.
pub fn all_subgroups(group: &Arc<PermGroup>) -> Vec<Subgroup> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    for x in 0..group.order() {
        let members = group.close(&[x]);
        if seen.insert(members.clone()) {
            cyclic.push((x, members));
        }
    }
    let mut found: Vec<Vec<usize>> = cyclic.iter().map(|(_, m)| m.clone()).collect();
    let mut k = 0;
    while k < found.len() {
        for (x, members) in &cyclic {
            if found[k].binary_search(x).is_ok() {
                continue;
            }
            let mut gens: Vec<usize> = canonical_generators(group, &found[k])
                .iter()
                .map(|p| group.idx(p))
                .collect();
            gens.push(*x);
            let join = group.close(&gens);
            debug_assert!(members.iter().all(|m| join.binary_search(m).is_ok()));
            if seen.insert(join.clone()) {
                found.push(join);
            }
        }
        k += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|m| Subgroup::from_members(group, m))
        .collect()
}

/// Normal closure of a set of elements.
pub fn normal_closure(group: &Arc<PermGroup>, elements: &[Perm]) -> Result<Subgroup> {
    let idx = elements
        .iter()
        .map(|p| group.index_of(p).ok_or_else(|| Error::NotInGroup(p.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subgroup::from_members(group, group.normal_closure_idx(&idx)))
}

/// Commutator subgroup of the whole group.
pub fn derived_subgroup(group: &Arc<PermGroup>) -> Subgroup {
    Subgroup::from_members(group, group.derived_idx())
}

/// Right-coset representatives of `sub` in its parent.
#[derive(Debug, Clone)]
pub struct Transversal {
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl Transversal {
    pub fn new(sub: &Subgroup) -> Transversal {
        let parent = sub.parent();
        let mut coset_of = vec![usize::MAX; parent.order()];
        let mut reps = Vec::new();
        for x in 0..parent.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &h in sub.member_indices() {
                coset_of[parent.mul_idx(h, x)] = id;
            }
        }
        Transversal { reps, coset_of }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub(crate) fn rep_indices(&self) -> &[usize] {
        &self.reps
    }

    /// Index of the coset `Hx` containing element index `x`.
    pub(crate) fn coset_id(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Representative element index of the coset containing `x`.
    pub(crate) fn rep_of(&self, x: usize) -> usize {
        self.reps[self.coset_of[x]]
    }
}

/// One representative per right coset `Hx`, each minimal in its coset; the
/// identity represents `H` itself and comes first.
pub fn transversal(sub: &Subgroup) -> Vec<Perm> {
    Transversal::new(sub)
        .reps
        .iter()
        .map(|&i| sub.parent().element(i).clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Perm {
        Perm::from_cycles(n, s).unwrap()
    }

    fn s3() -> Arc<PermGroup> {
        PermGroup::generate(3, vec![cyc(3, "(1 2 3)"), cyc(3, "(1 2)")]).unwrap()
    }

    #[test]
    fn normal_subgroups_of_s3() {
        let g = s3();
        let ns = normal_subgroups(&g);
        assert_eq!(
            ns.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 3, 6]
        );
        assert!(ns[1].contains(&cyc(3, "(1 2 3)")));
    }

    #[test]
    fn normal_subgroups_small_cases() {
        let triv = PermGroup::trivial(2);
        assert_eq!(normal_subgroups(&triv).len(), 1);
        let v4 = PermGroup::generate(4, vec![cyc(4, "(1 2)"), cyc(4, "(3 4)")]).unwrap();
        assert_eq!(normal_subgroups(&v4).len(), 5);
    }

    #[test]
    fn intersections() {
        let g = s3();
        let a3 = Subgroup::generated(&g, &[cyc(3, "(1 2 3)")]).unwrap();
        let c2 = Subgroup::generated(&g, &[cyc(3, "(1 2)")]).unwrap();
        assert!(a3.intersect(&c2).unwrap().is_trivial());
        assert_eq!(a3.intersect(&a3).unwrap(), a3);
        assert_eq!(a3.intersect(&Subgroup::full(&g)).unwrap(), a3);

        let other = PermGroup::generate(4, vec![cyc(4, "(1 2)")]).unwrap();
        let foreign = Subgroup::full(&other);
        assert!(matches!(a3.intersect(&foreign), Err(Error::ParentMismatch)));
    }

    #[test]
    fn transversal_examples() {
        let g = s3();
        let a3 = Subgroup::generated(&g, &[cyc(3, "(1 2 3)")]).unwrap();
        let reps = transversal(&a3);
        assert_eq!(reps, vec![Perm::identity(3), cyc(3, "(2 3)")]);
        assert_eq!(transversal(&Subgroup::full(&g)), vec![Perm::identity(3)]);
        let c2 = Subgroup::generated(&g, &[cyc(3, "(1 2)")]).unwrap();
        assert_eq!(transversal(&c2).len(), 3);
    }

    #[test]
    fn canonical_generators_are_greedy() {
        let g = s3();
        let a3 = Subgroup::generated(&g, &[cyc(3, "(1 3 2)")]).unwrap();
        assert_eq!(a3.generators(), &[cyc(3, "(1 2 3)")]);
    }

    #[test]
    fn subgroup_counts() {
        let counts: Vec<(&str, usize)> = vec![("S3", 6), ("S4", 30), ("D4", 10), ("Q8", 6), ("C2xC2", 5)];
        for (name, n) in counts {
            let g = crate::catalog::lookup(name).unwrap().group;
            assert_eq!(all_subgroups(&g).len(), n, "{name}");
        }
    }
}
