//! Decidable root classes of finite groups, residual cores, and instance
//! checks of the root-class axioms and their standard consequences.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{classify, is_power_of, is_prime, PermGroup};
use crate::hom::quotient;
use crate::subgroup::{normal_subgroups, Subgroup};

/// One of the three root classes with a total membership test on finite
/// groups: all finite groups, finite `p`-groups, finite solvable groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootClassSpec {
    AllFinite,
    FiniteP(u64),
    FiniteSolvable,
}

impl RootClassSpec {
    pub fn finite_p(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RootClassSpec::FiniteP(p))
        } else {
            Err(Error::Malformed(format!("{p} is not prime")))
        }
    }

    pub fn member(&self, group: &Arc<PermGroup>) -> bool {
        match *self {
            RootClassSpec::AllFinite => true,
            RootClassSpec::FiniteP(p) => is_power_of(group.order() as u64, p),
            RootClassSpec::FiniteSolvable => classify(group).is_solvable,
        }
    }

    /// Membership of a subgroup viewed as a group.
    pub fn member_subgroup(&self, sub: &Subgroup) -> bool {
        match *self {
            RootClassSpec::AllFinite => true,
            RootClassSpec::FiniteP(p) => is_power_of(sub.order() as u64, p),
            RootClassSpec::FiniteSolvable => self.member(&sub.to_group()),
        }
    }

    /// Is `G/N` in the class, for `N` normal in `G`? Solvability of the
    /// quotient is read off the derived series: `G/N` is solvable exactly when
    /// the perfect core of `G` lies in `N`.
    pub fn contains_quotient(&self, n: &Subgroup) -> bool {
        match *self {
            RootClassSpec::AllFinite => true,
            RootClassSpec::FiniteP(p) => is_power_of(n.index() as u64, p),
            RootClassSpec::FiniteSolvable => n
                .parent()
                .perfect_core_idx()
                .iter()
                .all(|&i| n.contains_idx(i)),
        }
    }

    /// Membership of `B/C` for `C` normal in the subgroup `B`.
    pub fn contains_section(&self, b: &Subgroup, c: &Subgroup) -> Result<bool> {
        if !c.is_normal_in(b) {
            return Err(Error::Precondition(format!("{c} is not normal in {b}")));
        }
        let bg = b.to_group();
        let cb = c.within(&bg)?;
        Ok(self.contains_quotient(&cb))
    }
}

impl fmt::Display for RootClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootClassSpec::AllFinite => f.write_str("finite"),
            RootClassSpec::FiniteP(p) => write!(f, "p:{p}"),
            RootClassSpec::FiniteSolvable => f.write_str("solvable"),
        }
    }
}

impl FromStr for RootClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "finite" => Ok(RootClassSpec::AllFinite),
            "solvable" => Ok(RootClassSpec::FiniteSolvable),
            other => {
                let p = other
                    .strip_prefix("p:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| {
                        Error::Malformed(format!(
                            "class {other:?}: expected finite, p:<prime> or solvable"
                        ))
                    })?;
                RootClassSpec::finite_p(p)
            }
        }
    }
}

impl Serialize for RootClassSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootClassSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Intersection of all normal subgroups with quotient in the class.
#[derive(Debug, Clone)]
pub struct ResidualCore {
    pub group: Arc<PermGroup>,
    pub class: RootClassSpec,
    pub core: Subgroup,
}

impl ResidualCore {
    /// A finite group is residually in the class exactly when its core is trivial.
    pub fn is_residual(&self) -> bool {
        self.core.is_trivial()
    }
}

pub fn residual_core(group: &Arc<PermGroup>, class: RootClassSpec) -> ResidualCore {
    let mut core = Subgroup::full(group);
    for n in normal_subgroups(group) {
        if class.contains_quotient(&n) {
            core = core.intersect(&n).expect("same parent");
        }
    }
    ResidualCore {
        group: Arc::clone(group),
        class,
        core,
    }
}

/// Finds `D` normal in `A` with `D <= C` and `A/D` in the class, for a
/// subnormal chain `C ⊴ B ⊴ A` whose factors lie in the class. The first
/// qualifying normal subgroup in canonical order is returned.
pub fn axiom3_witness(b: &Subgroup, c: &Subgroup, class: RootClassSpec) -> Result<Subgroup> {
    let a = b.parent();
    if !b.is_normal() {
        return Err(Error::Precondition(format!("{b} is not normal in A")));
    }
    if !c.is_subgroup_of(b) {
        return Err(Error::Precondition(format!("{c} is not contained in {b}")));
    }
    if !class.contains_quotient(b) {
        return Err(Error::Precondition(format!("A/B is not in {class}")));
    }
    if !class.contains_section(b, c)? {
        return Err(Error::Precondition(format!("B/C is not in {class}")));
    }
    normal_subgroups(a)
        .into_iter()
        .find(|d| d.is_subgroup_of(c) && class.contains_quotient(d))
        .ok_or_else(|| {
            Error::Inconsistency(format!(
                "no normal D <= {c} with A/D in {class}: root-class axiom 3 falsified"
            ))
        })
}

/// Outcome of a lemma-property check: the quotient examined and its verdict.
#[derive(Debug, Clone)]
pub struct LemmaVerdict {
    pub quotient: Arc<PermGroup>,
    pub holds: bool,
}

/// For normal `A`, `B` with `G/A`, `G/B` in the class, confirms `G/(A ∩ B)` is
/// in the class.
pub fn lemma_prop3_check(a: &Subgroup, b: &Subgroup, class: RootClassSpec) -> Result<LemmaVerdict> {
    for (name, n) in [("A", a), ("B", b)] {
        if !n.is_normal() {
            return Err(Error::Precondition(format!("{name} = {n} is not normal")));
        }
        if !class.contains_quotient(n) {
            return Err(Error::Precondition(format!("G/{name} is not in {class}")));
        }
    }
    let meet = a.intersect(b)?;
    let (q, _) = quotient(&meet)?;
    let holds = class.member(&q);
    if !holds {
        return Err(Error::Inconsistency(format!(
            "G/(A ∩ B) of order {} is not in {class}",
            q.order()
        )));
    }
    Ok(LemmaVerdict { quotient: q, holds })
}

/// Given a chain `1 = N_0 ⊴ N_1 ⊴ ... ⊴ N_k = G` (each term normal in the
/// next) whose factors lie in the class, confirms `G` is in the class.
pub fn extension_closure_check(chain: &[Subgroup], class: RootClassSpec) -> Result<bool> {
    let Some(top) = chain.last() else {
        return Err(Error::Precondition("empty chain".into()));
    };
    if !top.is_full() {
        return Err(Error::Precondition("chain does not end at G".into()));
    }
    if chain.len() > 1 && !chain[0].is_trivial() {
        return Err(Error::Precondition("chain does not start at 1".into()));
    }
    if chain.len() == 1 && !class.member_subgroup(top) {
        return Err(Error::Precondition(format!("G is not in {class}")));
    }
    for pair in chain.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        if !lower.is_normal_in(upper) {
            return Err(Error::Precondition(format!(
                "{lower} is not normal in {upper}"
            )));
        }
        if !class.contains_section(upper, lower)? {
            return Err(Error::Precondition(format!(
                "factor {upper}/{lower} is not in {class}"
            )));
        }
    }
    if class.member(top.parent()) {
        Ok(true)
    } else {
        Err(Error::Inconsistency(format!(
            "extension of {class} groups left the class"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn cyc(n: usize, s: &str) -> Perm {
        Perm::from_cycles(n, s).unwrap()
    }

    fn s3() -> Arc<PermGroup> {
        PermGroup::generate(3, vec![cyc(3, "(1 2 3)"), cyc(3, "(1 2)")]).unwrap()
    }

    fn d4() -> Arc<PermGroup> {
        PermGroup::generate(4, vec![cyc(4, "(1 2 3 4)"), cyc(4, "(1 3)")]).unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["finite", "p:2", "p:3", "solvable"] {
            assert_eq!(s.parse::<RootClassSpec>().unwrap().to_string(), s);
        }
        assert!("p:4".parse::<RootClassSpec>().is_err());
        assert!("nilpotent".parse::<RootClassSpec>().is_err());
    }

    #[test]
    fn membership() {
        assert!(RootClassSpec::FiniteP(2).member(&d4()));
        assert!(!RootClassSpec::FiniteP(3).member(&s3()));
        let t = PermGroup::trivial(1);
        for k in [
            RootClassSpec::AllFinite,
            RootClassSpec::FiniteP(5),
            RootClassSpec::FiniteSolvable,
        ] {
            assert!(k.member(&t));
        }
    }

    #[test]
    fn residual_cores_of_s3() {
        let g = s3();
        let core = residual_core(&g, RootClassSpec::FiniteP(2));
        assert_eq!(core.core.order(), 3);
        assert!(residual_core(&g, RootClassSpec::AllFinite).is_residual());
        assert!(residual_core(&g, RootClassSpec::FiniteP(3)).core.is_full());
    }

    #[test]
    fn axiom3_examples() {
        let a = d4();
        let c4 = Subgroup::generated(&a, &[cyc(4, "(1 2 3 4)")]).unwrap();
        let c2 = Subgroup::generated(&a, &[cyc(4, "(1 3)(2 4)")]).unwrap();
        let d = axiom3_witness(&c4, &c2, RootClassSpec::FiniteP(2)).unwrap();
        assert!(d.is_trivial());

        let g = s3();
        let a3 = Subgroup::generated(&g, &[cyc(3, "(1 2 3)")]).unwrap();
        let d = axiom3_witness(&a3, &a3, RootClassSpec::FiniteP(2)).unwrap();
        assert_eq!(d, a3);

        let full = Subgroup::full(&g);
        let d = axiom3_witness(&full, &a3, RootClassSpec::FiniteSolvable).unwrap();
        assert!(d.is_trivial());

        // B/C = A3 is not a 2-group
        let triv = Subgroup::trivial(&g);
        assert!(matches!(
            axiom3_witness(&a3, &triv, RootClassSpec::FiniteP(2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lemma_prop3_examples() {
        let v4 = PermGroup::generate(4, vec![cyc(4, "(1 2)"), cyc(4, "(3 4)")]).unwrap();
        let a = Subgroup::generated(&v4, &[cyc(4, "(1 2)")]).unwrap();
        let b = Subgroup::generated(&v4, &[cyc(4, "(3 4)")]).unwrap();
        let v = lemma_prop3_check(&a, &b, RootClassSpec::FiniteP(2)).unwrap();
        assert!(v.holds);
        assert_eq!(v.quotient.order(), 4);
        assert!(lemma_prop3_check(&a, &a, RootClassSpec::FiniteP(2)).unwrap().holds);

        let c6 = PermGroup::generate(6, vec![cyc(6, "(1 2 3 4 5 6)")]).unwrap();
        let two = Subgroup::generated(&c6, &[cyc(6, "(1 4)(2 5)(3 6)")]).unwrap();
        let three = Subgroup::generated(&c6, &[cyc(6, "(1 3 5)(2 4 6)")]).unwrap();
        let v = lemma_prop3_check(&two, &three, RootClassSpec::FiniteSolvable).unwrap();
        assert_eq!(v.quotient.order(), 6);
    }

    #[test]
    fn extension_closure_examples() {
        let a = d4();
        let chain = vec![
            Subgroup::trivial(&a),
            Subgroup::generated(&a, &[cyc(4, "(1 3)(2 4)")]).unwrap(),
            Subgroup::generated(&a, &[cyc(4, "(1 2 3 4)")]).unwrap(),
            Subgroup::full(&a),
        ];
        assert!(extension_closure_check(&chain, RootClassSpec::FiniteP(2)).unwrap());
        assert!(extension_closure_check(&chain[3..], RootClassSpec::FiniteP(2)).unwrap());

        let g = s3();
        let chain = vec![
            Subgroup::trivial(&g),
            Subgroup::generated(&g, &[cyc(3, "(1 2 3)")]).unwrap(),
            Subgroup::full(&g),
        ];
        assert!(extension_closure_check(&chain, RootClassSpec::FiniteSolvable).unwrap());
        assert!(extension_closure_check(&chain, RootClassSpec::FiniteP(2)).is_err());
    }
}
