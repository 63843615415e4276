use std::collections::HashSet;

use serde::Serialize;

use crate::amalgam::{AmalgamScheme, HomFamily};
use crate::class::{residual_core, RootClassSpec};
use crate::error::Result;
use crate::hom::Homomorphism;

/// Hypotheses of the sufficient condition for residuality of a generalized
/// free product with a finite amalgamated subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem5Verdict {
    pub class: RootClassSpec,
    pub target_in_class: bool,
    pub agreement: bool,
    pub injective_on_h: bool,
    pub factors_residual: bool,
    pub failures: Vec<String>,
    pub positive: bool,
}

/// Checks: the common target lies in the class, the family agrees on `H`,
/// it is injective on `H`, and every factor is residually in the class.
/// A malformed family (wrong count, sources or targets) is an error.
pub fn check_theorem5(
    scheme: &AmalgamScheme,
    homs: &[Homomorphism],
    class: RootClassSpec,
) -> Result<Theorem5Verdict> {
    HomFamily::check_shape(scheme, homs)?;
    let mut failures = Vec::new();

    let target = homs[0].target();
    let target_in_class = class.member(target);
    if !target_in_class {
        failures.push(format!(
            "target of order {} is not in class {class}",
            target.order()
        ));
    }

    let disagreement = HomFamily::disagreement(scheme, homs);
    if let Some((l, m, h)) = &disagreement {
        failures.push(format!(
            "homomorphisms {l} and {m} disagree on {h} in the amalgamated subgroup"
        ));
    }

    let mut injective_on_h = true;
    for (l, hom) in homs.iter().enumerate() {
        let mut seen = HashSet::new();
        if let Some(h) = scheme
            .subgroup(l)
            .elements()
            .find(|h| !seen.insert(hom.apply(h).expect("h lies in factor l")))
        {
            injective_on_h = false;
            failures.push(format!(
                "homomorphism {l} is not injective on H: {h} collides with another element"
            ));
            break;
        }
    }

    let bad_factors: Vec<String> = (0..scheme.copies())
        .filter_map(|l| {
            let core = residual_core(scheme.factor(l), class);
            (!core.is_residual()).then(|| format!("{l} (core of order {})", core.core.order()))
        })
        .collect();
    let factors_residual = bad_factors.is_empty();
    if !factors_residual {
        failures.push(format!(
            "factors not residually in class {class}: {}",
            bad_factors.join(", ")
        ));
    }

    Ok(Theorem5Verdict {
        class,
        target_in_class,
        agreement: disagreement.is_none(),
        injective_on_h,
        factors_residual,
        positive: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::error::Error;

    #[test]
    fn c4_cube_is_positive() {
        let e = lookup("C4").unwrap();
        let q = AmalgamScheme::power(&e.group, e.subgroup("C2").unwrap(), 3).unwrap();
        let id = Homomorphism::identity(&e.group);
        let v = check_theorem5(&q, &[id.clone(), id.clone(), id], RootClassSpec::FiniteP(2)).unwrap();
        assert!(v.positive, "{:?}", v.failures);
    }

    #[test]
    fn s3_square_with_sign_is_negative_twice() {
        let e = lookup("S3").unwrap();
        let c2 = lookup("C2").unwrap().group;
        let q = AmalgamScheme::power(&e.group, e.subgroup("A3").unwrap(), 2).unwrap();
        let t = c2.generators()[0].clone();
        let one = c2.identity().clone();
        let sgn = Homomorphism::new(&e.group, &c2, vec![one, t.clone(), t]).unwrap();
        let v = check_theorem5(&q, &[sgn.clone(), sgn], RootClassSpec::FiniteP(2)).unwrap();
        assert!(!v.positive);
        assert!(v.target_in_class && v.agreement);
        assert!(!v.injective_on_h && !v.factors_residual);
        assert_eq!(v.failures.len(), 2);
    }

    #[test]
    fn plain_free_product_is_positive() {
        let e = lookup("C2xC2").unwrap();
        let q = AmalgamScheme::power(&e.group, e.subgroup("1").unwrap(), 2).unwrap();
        let id = Homomorphism::identity(&e.group);
        let triv = Homomorphism::trivial(&e.group, &e.group);
        let v = check_theorem5(&q, &[id, triv], RootClassSpec::FiniteP(2)).unwrap();
        assert!(v.positive, "{:?}", v.failures);
    }

    #[test]
    fn malformed_family_is_an_error() {
        let e = lookup("C4").unwrap();
        let q = AmalgamScheme::power(&e.group, e.subgroup("C2").unwrap(), 2).unwrap();
        let id = Homomorphism::identity(&e.group);
        assert!(matches!(
            check_theorem5(&q, &[id], RootClassSpec::FiniteP(2)),
            Err(Error::Family(_))
        ));
    }
}
