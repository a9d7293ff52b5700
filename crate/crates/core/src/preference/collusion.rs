use std::collections::{HashMap, HashSet, VecDeque};

use super::family::{Counterexample, FamilyVerdict, Triple};
use super::PreferenceFunction;
use crate::class::{HypothesisClass, LabeledExample, VersionSpace};
use crate::error::{Error, Result};

const SCOPE: &str = "all states reachable from (H, h0) under every labeling and tie choice; \
                     example sets S consistent with the adopted hypothesis";

/// Explores stability of `ĥ` on everything reachable by adding `ĥ`-consistent
/// examples. Returns the examples leading to the first unstable space.
struct Stability<'a> {
    class: &'a HypothesisClass,
    sigma: &'a PreferenceFunction,
    stable: HashSet<(VersionSpace, usize)>,
    budget: usize,
}

impl Stability<'_> {
    fn check(&mut self, vs: &VersionSpace, hat: usize) -> Result<Option<Vec<LabeledExample>>> {
        if self.stable.contains(&(vs.clone(), hat)) {
            return Ok(None);
        }
        if self.sigma.argmin(self.class, vs, hat).single() != Some(hat) {
            return Ok(Some(vec![]));
        }
        for x in 0..self.class.instance_count() {
            let z = self.class.example_of(hat, x);
            let next = vs.intersection(self.class.agreeing(z));
            if next == *vs {
                continue;
            }
            if let Some(mut path) = self.check(&next, hat)? {
                path.insert(0, z);
                return Ok(Some(path));
            }
        }
        if self.stable.len() >= self.budget {
            return Err(Error::Resource(format!(
                "collusion check exceeded {} stability states",
                self.budget
            )));
        }
        self.stable.insert((vs.clone(), hat));
        Ok(None)
    }
}

/// A version space and the learner's current hypothesis.
type State = (VersionSpace, usize);

/// Sequential collusion-freeness from start hypothesis `h0`.
///
/// Every state `(H_t, h_{t−1})` reachable from `(H, h0)` is explored, over all
/// labeled examples and all tie resolutions. Wherever the learner uniquely
/// adopts some `ĥ`, every set `S` of `ĥ`-consistent examples (including the
/// empty one) must leave `ĥ` the unique argmin of `σ(·; H_t ∩ H(S), ĥ)`.
/// Only the induced version space matters, so sets rather than sequences are
/// enumerated.
pub fn is_collusion_free(
    sigma: &PreferenceFunction,
    class: &HypothesisClass,
    h0: usize,
    budget: usize,
) -> Result<FamilyVerdict> {
    sigma.check_bound(class)?;
    class.check_hypothesis(h0)?;
    let mut stab = Stability {
        class,
        sigma,
        stable: HashSet::new(),
        budget,
    };
    // state -> (parent state, example) for witness reconstruction
    let mut parent: HashMap<State, Option<(State, LabeledExample)>> = HashMap::new();
    let start = (class.full(), h0);
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);

    while let Some((vs, prev)) = queue.pop_front() {
        for x in 0..class.instance_count() {
            for label in [false, true] {
                let z = LabeledExample::new(x, label);
                let next = vs.intersection(class.agreeing(z));
                if next.is_empty() {
                    continue;
                }
                let chosen = sigma.argmin(class, &next, prev);
                if let Some(hat) = chosen.single() {
                    if let Some(extra) = stab.check(&next, hat)? {
                        let mut history = vec![z];
                        let mut cur = (vs.clone(), prev);
                        while let Some(Some((p, e))) = parent.get(&cur) {
                            history.push(*e);
                            cur = p.clone();
                        }
                        history.reverse();
                        let mut after = next.clone();
                        for e in &extra {
                            after.intersect_with(class.agreeing(*e));
                        }
                        let best = sigma.argmin(class, &after, hat);
                        let other = best.iter().find(|&g| g != hat).unwrap_or(hat);
                        let cx = Counterexample {
                            detail: format!(
                                "after {} the learner uniquely adopts {}, but {} further consistent example(s) move it",
                                fmt_seq(class, &history),
                                class.hypothesis_name(hat),
                                extra.len()
                            ),
                            triples: vec![
                                Triple {
                                    candidate: hat,
                                    version_space: after.to_vec(),
                                    current: hat,
                                    rank: sigma.rank(class, hat, &after, hat),
                                },
                                Triple {
                                    candidate: other,
                                    version_space: after.to_vec(),
                                    current: hat,
                                    rank: sigma.rank(class, other, &after, hat),
                                },
                            ],
                            examples: extra,
                        };
                        return Ok(FamilyVerdict::fail("collusion-free", SCOPE, cx));
                    }
                }
                for c in chosen.iter() {
                    let key = (next.clone(), c);
                    if !parent.contains_key(&key) {
                        if parent.len() >= budget {
                            return Err(Error::Resource(format!(
                                "collusion check exceeded {budget} protocol states"
                            )));
                        }
                        parent.insert(key.clone(), Some(((vs.clone(), prev), z)));
                        queue.push_back(key);
                    }
                }
            }
        }
    }
    Ok(FamilyVerdict::pass("collusion-free", SCOPE))
}

fn fmt_seq(class: &HypothesisClass, seq: &[LabeledExample]) -> String {
    let parts: Vec<String> = seq
        .iter()
        .map(|z| format!("({},{})", class.instance_name(z.instance), z.label as u8))
        .collect();
    format!("[{}]", parts.join(" "))
}
