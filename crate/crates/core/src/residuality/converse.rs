use crate::class::RootClassSpec;
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::perm::Perm;
use crate::subgroup::Subgroup;

/// From homomorphisms `α, β: A -> X` that agree on `H` and separate `a`
/// (`α(a) != β(a)`), with `X` in the class, returns
/// `N_A = ker α ∩ ker β`, which satisfies `A/N_A` in the class and
/// `a ∉ H N_A`.
pub fn derive_closedness_witness(
    h: &Subgroup,
    a: &Perm,
    alpha: &Homomorphism,
    beta: &Homomorphism,
    class: RootClassSpec,
) -> Result<Subgroup> {
    let group = h.parent();
    if !group.contains(a) {
        return Err(Error::Precondition(format!("{a} does not lie in A")));
    }
    if h.contains(a) {
        return Err(Error::Precondition(format!("{a} lies in H")));
    }
    for (name, hom) in [("alpha", alpha), ("beta", beta)] {
        if !hom.source().same_elements(group) {
            return Err(Error::Precondition(format!("{name} is not defined on A")));
        }
    }
    if !alpha.target().same_elements(beta.target()) {
        return Err(Error::Precondition("alpha and beta have different targets".into()));
    }
    if !class.member(alpha.target()) {
        return Err(Error::Precondition(format!(
            "target of order {} is not in class {class}",
            alpha.target().order()
        )));
    }
    for x in h.elements() {
        let (ax, bx) = (alpha.apply(x)?, beta.apply(x)?);
        if ax != bx {
            return Err(Error::Precondition(format!(
                "alpha and beta disagree on {x} in H: {ax} vs {bx}"
            )));
        }
    }
    let (aa, ba) = (alpha.apply(a)?, beta.apply(a)?);
    if aa == ba {
        return Err(Error::Precondition(format!(
            "alpha and beta agree on {a} (both {aa}), so the induced map does not separate it"
        )));
    }
    let n = alpha
        .kernel()
        .intersect(&beta.kernel())?
        .within(group)?;
    if !class.contains_quotient(&n) {
        return Err(Error::Inconsistency(format!("A/N_A is not in class {class}")));
    }
    if h.product_mask(&n)[group.idx(a)] {
        return Err(Error::Inconsistency(format!("{a} lies in H N_A")));
    }
    Ok(n)
}
