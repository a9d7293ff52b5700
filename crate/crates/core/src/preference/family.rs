use std::collections::HashMap;

use serde::Serialize;

use super::{Family, PreferenceFunction, Rank};
use crate::class::{realizable_version_spaces, HypothesisClass, LabeledExample, VersionSpace};
use crate::error::Result;

/// One evaluated point `σ(h′; H, h) = rank`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub candidate: usize,
    pub version_space: Vec<usize>,
    pub current: usize,
    pub rank: Rank,
}

impl Triple {
    fn new(candidate: usize, vs: &VersionSpace, current: usize, rank: Rank) -> Self {
        Triple {
            candidate,
            version_space: vs.to_vec(),
            current,
            rank,
        }
    }
}

/// Evidence that a property fails. Every triple can be re-evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub detail: String,
    pub triples: Vec<Triple>,
    /// Examples involved in the violation (collusion checks only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<LabeledExample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyVerdict {
    pub property: String,
    pub holds: bool,
    /// What the check quantified over.
    pub scope: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl FamilyVerdict {
    pub(crate) fn pass(property: impl Into<String>, scope: impl Into<String>) -> Self {
        FamilyVerdict {
            property: property.into(),
            holds: true,
            scope: scope.into(),
            counterexample: None,
        }
    }

    pub(crate) fn fail(property: impl Into<String>, scope: impl Into<String>, cx: Counterexample) -> Self {
        FamilyVerdict {
            property: property.into(),
            holds: false,
            scope: scope.into(),
            counterexample: Some(cx),
        }
    }
}

/// Default cap on realizable version spaces enumerated by the checks.
pub const DEFAULT_SPACE_BUDGET: usize = 1 << 18;

const SCOPE: &str = "realizable version spaces H(Z); candidates h' in H; all current h";

/// Does `σ` behave like a member of `family` on `class`?
///
/// Version spaces range over the realizable ones (`H(Z)` for consistent `Z`),
/// which are the only ones any learner ever sees.
pub fn check_family(
    sigma: &PreferenceFunction,
    family: Family,
    class: &HypothesisClass,
    budget: usize,
) -> Result<FamilyVerdict> {
    sigma.check_bound(class)?;
    let property = family.name();
    if family == Family::Lvs {
        return Ok(FamilyVerdict::pass(property, SCOPE));
    }
    let spaces = realizable_version_spaces(class, budget)?;
    let m = class.hypothesis_count();

    let mismatch = |what: &str, a: Triple, b: Triple| {
        Counterexample {
            detail: format!("rank depends on {what}"),
            triples: vec![a, b],
            examples: vec![],
        }
    };

    match family {
        Family::Wsls => {
            for vs in &spaces {
                for h in vs.iter() {
                    let best = sigma.argmin(class, vs, h);
                    if best.single() != Some(h) {
                        let other = best.iter().find(|&g| g != h).unwrap_or(h);
                        let cx = Counterexample {
                            detail: "current hypothesis is consistent but not the unique argmin".into(),
                            triples: vec![
                                Triple::new(h, vs, h, sigma.rank(class, h, vs, h)),
                                Triple::new(other, vs, h, sigma.rank(class, other, vs, h)),
                            ],
                            examples: vec![],
                        };
                        return Ok(FamilyVerdict::fail(property, SCOPE, cx));
                    }
                }
            }
        }
        Family::Const => {
            let mut first: Option<Triple> = None;
            for vs in &spaces {
                for h in 0..m {
                    for hp in vs.iter() {
                        let t = Triple::new(hp, vs, h, sigma.rank(class, hp, vs, h));
                        match &first {
                            None => first = Some(t),
                            Some(f) if f.rank != t.rank => {
                                let cx = mismatch("its arguments", f.clone(), t);
                                return Ok(FamilyVerdict::fail(property, SCOPE, cx));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        Family::Global | Family::Gvs | Family::Local => {
            // Key on what the family allows the rank to depend on.
            let mut seen: HashMap<(usize, Option<usize>, Option<&VersionSpace>), Triple> = HashMap::new();
            let what = match family {
                Family::Global => "the version space or current hypothesis",
                Family::Gvs => "the current hypothesis",
                _ => "the version space",
            };
            for vs in &spaces {
                for h in 0..m {
                    for hp in vs.iter() {
                        let key = match family {
                            Family::Global => (hp, None, None),
                            Family::Gvs => (hp, None, Some(vs)),
                            _ => (hp, Some(h), None),
                        };
                        let t = Triple::new(hp, vs, h, sigma.rank(class, hp, vs, h));
                        match seen.get(&key) {
                            None => {
                                seen.insert(key, t);
                            }
                            Some(f) if f.rank != t.rank => {
                                let cx = mismatch(what, f.clone(), t);
                                return Ok(FamilyVerdict::fail(property, SCOPE, cx));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        Family::Lvs => unreachable!(),
    }
    Ok(FamilyVerdict::pass(property, SCOPE))
}
