mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rootres::catalog::catalog;
use rootres::{all_subgroups, normal_subgroups, quotient, residual_core, Subgroup};

use common::*;

fn entry_index() -> impl Strategy<Value = usize> {
    0..catalog().len()
}

fn as_set(s: &Subgroup) -> Set {
    s.elements().cloned().collect()
}

#[test]
fn subgroup_lattices_match_oracle() {
    for e in catalog() {
        let lib: BTreeSet<Set> = all_subgroups(&e.group).iter().map(as_set).collect();
        let oracle: BTreeSet<Set> = subgroups(&e.group).into_iter().collect();
        assert_eq!(lib, oracle, "{}", e.name);
        let lib: BTreeSet<Set> = normal_subgroups(&e.group).iter().map(as_set).collect();
        let oracle: BTreeSet<Set> = normal_subgroups_oracle(&e.group);
        assert_eq!(lib, oracle, "{}", e.name);
    }
}

fn normal_subgroups_oracle(g: &rootres::PermGroup) -> BTreeSet<Set> {
    common::normal_subgroups(g).into_iter().collect()
}

#[test]
fn residual_core_is_the_meet_of_good_normals() {
    for e in catalog() {
        for class in classes() {
            let mut meet: Set = elements(&e.group).into_iter().collect();
            for n in common::normal_subgroups(&e.group) {
                if quotient_in_class(&e.group, &n, class) {
                    meet = meet.intersection(&n).cloned().collect();
                }
            }
            let core = residual_core(&e.group, class);
            assert_eq!(as_set(&core.core), meet, "{} in {class}", e.name);
            assert!(class.contains_quotient(&core.core), "{} in {class}", e.name);
        }
    }
}

proptest! {
    #[test]
    fn elements_are_sorted_and_closed(i in entry_index()) {
        let g = &catalog()[i].group;
        let elts = g.elements();
        prop_assert!(elts[0].is_identity());
        prop_assert!(elts.windows(2).all(|w| w[0] < w[1]));
        let oracle = close(g.degree(), g.generators());
        prop_assert_eq!(elts.iter().cloned().collect::<Set>(), oracle);
    }

    #[test]
    fn quotient_kernels_and_orders(i in entry_index(), j in any::<prop::sample::Index>()) {
        let g = &catalog()[i].group;
        let normals = normal_subgroups(g);
        let n = &normals[j.index(normals.len())];
        let (q, proj) = quotient(n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert_eq!(&proj.kernel(), n);
        prop_assert!(proj.image().is_full());
    }

    #[test]
    fn intersection_and_join_are_lattice_operations(
        i in entry_index(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
    ) {
        let g = &catalog()[i].group;
        let subs = all_subgroups(g);
        let (a, b) = (&subs[a.index(subs.len())], &subs[b.index(subs.len())]);
        let meet = a.intersect(b).unwrap();
        let expected: Set = as_set(a).intersection(&as_set(b)).cloned().collect();
        prop_assert_eq!(as_set(&meet), expected);
        let join = a.join(b).unwrap();
        let union: Vec<_> = as_set(a).union(&as_set(b)).cloned().collect();
        prop_assert_eq!(as_set(&join), close(g.degree(), &union));
    }
}
