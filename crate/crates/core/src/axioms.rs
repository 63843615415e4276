//! Instance sweeps of the root-class axioms and the standard consequences
//! over the built-in catalog.

use serde::Serialize;

use crate::catalog::{catalog, CatalogEntry};
use crate::class::{
    axiom3_witness, extension_closure_check, lemma_prop3_check, residual_core, RootClassSpec,
};
use crate::error::Result;
use crate::group::direct_product;
use crate::subgroup::{all_subgroups, normal_subgroups, Subgroup};

/// Tally for one family of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckTally {
    fn new(name: &str) -> Self {
        CheckTally {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub class: RootClassSpec,
    pub max_order: usize,
    pub groups: Vec<String>,
    pub tallies: Vec<CheckTally>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failures.is_empty())
    }
}

/// Sweeps every catalog group of order at most `max_order`:
///
/// * subgroup closure: members of the class have all subgroups in it;
/// * product closure: the direct product of two members is a member;
/// * axiom 3: a witness exists for every triple `C ⊴ B ⊴ A` with `A/B` and
///   `B/C` in the class;
/// * intersections: `G/(A ∩ B)` is in the class for normal `A`, `B` with
///   quotients in it;
/// * extensions: `N ⊴ G` with `N` and `G/N` in the class puts `G` in it;
/// * residual extensions: `F ⊴ G` with `G/F` in the class and `F` residually
///   in it makes `G` residually in it.
pub fn axiom_sweep(class: RootClassSpec, max_order: usize, cap: usize) -> Result<AxiomReport> {
    let entries: Vec<CatalogEntry> = catalog()
        .into_iter()
        .filter(|e| e.group.order() <= max_order)
        .collect();
    let mut sub_closure = CheckTally::new("subgroup closure");
    let mut products = CheckTally::new("direct-product closure");
    let mut axiom3 = CheckTally::new("axiom 3 witnesses");
    let mut intersections = CheckTally::new("quotients by intersections");
    let mut extensions = CheckTally::new("closure under extensions");
    let mut residual_ext = CheckTally::new("residuality through extensions");

    for e in &entries {
        let g = &e.group;
        let subs = all_subgroups(g);
        let normals = normal_subgroups(g);
        if class.member(g) {
            for s in &subs {
                sub_closure.record(class.member_subgroup(s), || {
                    format!("{}: subgroup {s} is not in {class}", e.name)
                });
            }
        }

        for b in normals.iter().filter(|b| class.contains_quotient(b)) {
            for c in subs.iter().filter(|c| c.is_normal_in(b)) {
                if !class.contains_section(b, c)? {
                    continue;
                }
                let found = axiom3_witness(b, c, class);
                axiom3.record(found.is_ok(), || {
                    format!("{}: no witness for B = {b}, C = {c}", e.name)
                });
            }
        }

        let good: Vec<&Subgroup> = normals.iter().filter(|n| class.contains_quotient(n)).collect();
        for (i, a) in good.iter().enumerate() {
            for b in &good[i..] {
                let ok = lemma_prop3_check(a, b, class).is_ok_and(|v| v.holds);
                intersections.record(ok, || format!("{}: A = {a}, B = {b}", e.name));
            }
        }

        for n in &normals {
            if class.member_subgroup(n) && class.contains_quotient(n) {
                let chain = if n.is_trivial() || n.is_full() {
                    vec![Subgroup::trivial(g), Subgroup::full(g)]
                } else {
                    vec![Subgroup::trivial(g), n.clone(), Subgroup::full(g)]
                };
                let ok = extension_closure_check(&chain, class).unwrap_or(false);
                extensions.record(ok && class.member(g), || {
                    format!("{}: extension through {n}", e.name)
                });
            }
            if class.contains_quotient(n) && residual_core(&n.to_group(), class).is_residual() {
                residual_ext.record(residual_core(g, class).is_residual(), || {
                    format!("{}: F = {n} residual, G/F in {class}, G not residual", e.name)
                });
            }
        }
    }

    let members: Vec<&CatalogEntry> = entries.iter().filter(|e| class.member(&e.group)).collect();
    for (i, x) in members.iter().enumerate() {
        for y in &members[i..] {
            if x.group.order() * y.group.order() > cap {
                continue;
            }
            let p = direct_product(&x.group, &y.group)?;
            products.record(class.member(&p), || {
                format!("{} x {} is not in {class}", x.name, y.name)
            });
        }
    }

    Ok(AxiomReport {
        class,
        max_order,
        groups: entries.iter().map(|e| e.name.clone()).collect(),
        tallies: vec![sub_closure, products, axiom3, intersections, extensions, residual_ext],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        for (class, max) in [
            (RootClassSpec::FiniteP(2), 8),
            (RootClassSpec::FiniteSolvable, 12),
            (RootClassSpec::FiniteP(5), 4),
        ] {
            let r = axiom_sweep(class, max, 10_000).unwrap();
            assert!(r.passed(), "{class}: {:?}", r.tallies);
        }
    }
}
