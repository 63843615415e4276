//! Finite permutation groups with a fully enumerated, canonically ordered
//! element list.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A finite group given by permutation generators.
///
/// Elements are sorted in the canonical (lexicographic) order, so the identity
/// always has index 0. Derived data computed on demand is cached behind
/// `OnceLock`s and never changes afterwards.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    names: Vec<String>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    cap: usize,
    pub(crate) normal_cache: OnceLock<Vec<Vec<usize>>>,
    pub(crate) perfect_core_cache: OnceLock<Vec<usize>>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Arc<PermGroup>> {
        Self::generate_with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn generate_with_cap(
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Arc<PermGroup>> {
        let names = default_names(generators.len());
        Self::generate_named(degree, names, generators, cap)
    }

    pub fn generate_named(
        degree: usize,
        names: Vec<String>,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Arc<PermGroup>> {
        assert_eq!(names.len(), generators.len(), "one name per generator");
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut frontier = vec![identity];
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = x.mul(g);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    if seen.len() > cap {
                        return Err(Error::OrderCapExceeded {
                            cap,
                            partial: seen.len(),
                        });
                    }
                    frontier.push(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_keys().collect();
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(Arc::new(PermGroup {
            degree,
            generators,
            names,
            elements,
            index,
            cap,
            normal_cache: OnceLock::new(),
            perfect_core_cache: OnceLock::new(),
        }))
    }

    pub fn trivial(degree: usize) -> Arc<PermGroup> {
        Self::generate(degree, Vec::new()).expect("trivial group fits any cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn identity(&self) -> &Perm {
        &self.elements[0]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub(crate) fn idx(&self, p: &Perm) -> usize {
        self.index[p]
    }

    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.idx(&self.elements[a].mul(&self.elements[b]))
    }

    pub(crate) fn inv_idx(&self, a: usize) -> usize {
        self.idx(&self.elements[a].inv())
    }

    pub(crate) fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.idx(g)).collect()
    }

    /// Same element set (the generating sets may differ).
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }

    /// Closure of a set of element indices under multiplication; returns the
    /// sorted member list.
    pub(crate) fn close(&self, gens: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in gens {
                let y = self.mul_idx(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        members
    }

    /// Normal closure of a set of element indices.
    pub(crate) fn normal_closure_idx(&self, seeds: &[usize]) -> Vec<usize> {
        let group_gens = self.generator_indices();
        let mut gens: Vec<usize> = seeds.to_vec();
        loop {
            let members = self.close(&gens);
            let mut mask = vec![false; self.order()];
            for &m in &members {
                mask[m] = true;
            }
            let mut extra = None;
            'search: for &x in &gens {
                for &g in &group_gens {
                    let c = self.idx(&self.elements[g].conjugate(&self.elements[x]));
                    if !mask[c] {
                        extra = Some(c);
                        break 'search;
                    }
                }
            }
            match extra {
                Some(c) => gens.push(c),
                None => return members,
            }
        }
    }

    /// Derived subgroup as a sorted member list.
    pub(crate) fn derived_idx(&self) -> Vec<usize> {
        let gens = &self.generators;
        let mut seeds = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                seeds.push(self.idx(&a.commutator(b)));
            }
        }
        self.normal_closure_idx(&seeds)
    }

    /// Last term of the derived series (the perfect core); trivial exactly when
    /// the group is solvable.
    pub(crate) fn perfect_core_idx(self: &Arc<Self>) -> &[usize] {
        self.perfect_core_cache.get_or_init(|| {
            let mut current: Arc<PermGroup> = Arc::clone(self);
            loop {
                let derived = current.derived_idx();
                if derived.len() == current.order() {
                    let mut core: Vec<usize> =
                        current.elements().iter().map(|p| self.idx(p)).collect();
                    core.sort_unstable();
                    return core;
                }
                let gens = canonical_generators(&current, &derived);
                current = PermGroup::generate_with_cap(self.degree, gens, self.cap)
                    .expect("subgroup of a capped group fits the cap");
            }
        })
    }

    /// Conjugacy-class representatives (the least element of each class), in
    /// canonical order.
    pub fn conjugacy_class_reps(&self) -> Vec<Perm> {
        self.class_reps_idx()
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect()
    }

    pub(crate) fn class_reps_idx(&self) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for start in 0..self.order() {
            if seen[start] {
                continue;
            }
            reps.push(start);
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for g in &self.generators {
                    let c = self.idx(&g.conjugate(&self.elements[x]));
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
        }
        reps
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn element_order(&self, p: &Perm) -> usize {
        let mut k = 1;
        let mut x = p.clone();
        while !x.is_identity() {
            x = x.mul(p);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements
            .iter()
            .map(|p| self.element_order(p))
            .fold(1, lcm)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("g{i}")).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Greedy generating set: walk the members in canonical order and keep each
/// one not already in the span of those kept so far.
pub(crate) fn canonical_generators(group: &PermGroup, members: &[usize]) -> Vec<Perm> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; group.order()];
    span[0] = true;
    for &m in members {
        if span[m] {
            continue;
        }
        gens.push(m);
        for x in group.close(&gens) {
            span[x] = true;
        }
    }
    gens.into_iter().map(|i| group.element(i).clone()).collect()
}

/// Order and class-membership facts about a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub order: usize,
    pub prime_divisors: Vec<u64>,
    pub is_solvable: bool,
}

impl Classification {
    /// True when the order is a power of `p` (including the trivial group).
    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order as u64, p)
    }
}

pub fn classify(group: &Arc<PermGroup>) -> Classification {
    Classification {
        order: group.order(),
        prime_divisors: prime_divisors(group.order() as u64),
        is_solvable: group.perfect_core_idx().len() == 1,
    }
}

pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Direct product on disjoint point sets: `g1` acts on the first block,
/// `g2` on the second.
pub fn direct_product(g1: &PermGroup, g2: &PermGroup) -> Result<Arc<PermGroup>> {
    let id1 = Perm::identity(g1.degree());
    let id2 = Perm::identity(g2.degree());
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for (g, n) in g1.generators().iter().zip(g1.generator_names()) {
        gens.push(g.disjoint_sum(&id2));
        names.push(n.clone());
    }
    for (g, n) in g2.generators().iter().zip(g2.generator_names()) {
        gens.push(id1.disjoint_sum(g));
        let mut name = n.clone();
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    PermGroup::generate_named(
        g1.degree() + g2.degree(),
        names,
        gens,
        g1.cap().max(g2.cap()),
    )
}
