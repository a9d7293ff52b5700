//! Adding two win-stay preference functions over a disjoint union.

use serde::Serialize;

use crate::class::{disjoint_union, HypothesisClass};
use crate::engines::{td_of_sigma, Cost, TdOptions};
use crate::error::{Error, Result};
use crate::preference::{check_family, Family, PreferenceFunction, DEFAULT_SPACE_BUDGET};

fn require_wsls(class: &HypothesisClass, sigma: &PreferenceFunction, side: &str) -> Result<()> {
    let v = check_family(sigma, Family::Wsls, class, DEFAULT_SPACE_BUDGET)?;
    match v.counterexample {
        Some(cx) => Err(Error::Precondition(format!("{side} operand is not wsls: {}", cx.detail))),
        None => Ok(()),
    }
}

/// `σ(a′⊎b′; H, a⊎b) = σa(a′; Hᵃ, a) + σb(b′; Hᵇ, b)` over `disjoint_union(A, B)`.
pub fn wsls_disjoint_union_sigma(
    class_a: &HypothesisClass,
    sigma_a: &PreferenceFunction,
    class_b: &HypothesisClass,
    sigma_b: &PreferenceFunction,
) -> Result<(HypothesisClass, PreferenceFunction)> {
    require_wsls(class_a, sigma_a, "left")?;
    require_wsls(class_b, sigma_b, "right")?;
    let union = disjoint_union(class_a, class_b)?;
    let sigma = wsls_disjoint_union_sigma_unchecked(class_a, sigma_a.clone(), class_b, sigma_b.clone(), &union)?;
    Ok((union, sigma))
}

/// The same sum bound to an existing `union` class, without the wsls check.
/// Used when reloading a saved composite.
pub fn wsls_disjoint_union_sigma_unchecked(
    class_a: &HypothesisClass,
    sigma_a: PreferenceFunction,
    class_b: &HypothesisClass,
    sigma_b: PreferenceFunction,
    union: &HypothesisClass,
) -> Result<PreferenceFunction> {
    sigma_a.check_bound(class_a)?;
    sigma_b.check_bound(class_b)?;
    let expected = disjoint_union(class_a, class_b)?;
    if expected.instance_count() != union.instance_count()
        || expected.hypothesis_count() != union.hypothesis_count()
        || (0..union.hypothesis_count()).any(|h| expected.row(h) != union.row(h))
    {
        return Err(Error::Binding("class is not the disjoint union of the two factors".into()));
    }
    Ok(PreferenceFunction::build_sum(
        union,
        class_a.clone(),
        sigma_a,
        class_b.clone(),
        sigma_b,
    ))
}

/// Engine-checked teaching costs of both factors and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubadditivityCertificate {
    pub td_a: Cost,
    pub td_b: Cost,
    pub td_union: Cost,
    pub holds: bool,
}

/// Check `TD(σ) ≤ TD(σa) + TD(σb)` from `h0a ⊎ h0b`.
pub fn verify_subadditive(
    class_a: &HypothesisClass,
    sigma_a: &PreferenceFunction,
    h0a: usize,
    class_b: &HypothesisClass,
    sigma_b: &PreferenceFunction,
    h0b: usize,
    opts: &TdOptions,
) -> Result<SubadditivityCertificate> {
    let (union, sigma) = wsls_disjoint_union_sigma(class_a, sigma_a, class_b, sigma_b)?;
    let h0 = h0a * class_b.hypothesis_count() + h0b;
    let td_a = td_of_sigma(class_a, sigma_a, h0a, opts)?.value;
    let td_b = td_of_sigma(class_b, sigma_b, h0b, opts)?.value;
    let td_union = td_of_sigma(&union, &sigma, h0, opts)?.value;
    let bound = match (td_a, td_b) {
        (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
        _ => Cost::Infinite,
    };
    Ok(SubadditivityCertificate {
        td_a,
        td_b,
        td_union,
        holds: td_union <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::powerset_class;
    use crate::constructions::tree::{star_tree, tree_to_local_sigma};

    #[test]
    fn singletons_and_stars() {
        let s = HypothesisClass::from_strings(&["0"]).unwrap();
        let c = PreferenceFunction::build_const(&s);
        let o = TdOptions::default();
        let cert = verify_subadditive(&s, &c, 0, &s, &c, 0, &o).unwrap();
        assert_eq!(cert.td_union, Cost::Finite(0));

        let p = powerset_class(1).unwrap();
        let star = tree_to_local_sigma(&p, &star_tree(&p).unwrap()).unwrap();
        let cert = verify_subadditive(&p, &star, 0, &p, &star, 0, &o).unwrap();
        assert!(cert.holds);
        assert!(cert.td_union <= Cost::Finite(2));
    }

    #[test]
    fn rejects_non_wsls() {
        let p = powerset_class(1).unwrap();
        let c = PreferenceFunction::build_const(&p);
        let star = tree_to_local_sigma(&p, &star_tree(&p).unwrap()).unwrap();
        assert!(matches!(
            wsls_disjoint_union_sigma(&p, &c, &p, &star),
            Err(Error::Precondition(_))
        ));
    }
}
