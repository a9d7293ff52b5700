//! Exact minimax teaching cost `D_σ(H, h, h*)` against an adversarial learner.
//!
//! The teacher picks an example labeled by the target; the learner moves to
//! some argmin of `σ` over the shrunken version space, ties resolved against
//! the teacher. Play ends when the learner adopts the target.
//!
//! Examples that do not shrink the version space are allowed, since a learner
//! whose preferences depend on its current hypothesis may still move. Those
//! moves can revisit states, so each version space is solved as a small
//! fixed point over the current hypotheses reachable inside it; strictly
//! smaller version spaces are solved first by recursion.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{BoundKind, Cost, DimensionResult, InitialTarget, TdOptions, Witness};
use crate::bitset::BitSet;
use crate::class::{HypothesisClass, LabeledExample, TeachingSequence, VersionSpace};
use crate::error::{Error, Result};
use crate::learner::TieMode;
use crate::preference::PreferenceFunction;

#[derive(Clone, Copy)]
enum Succ {
    Done,
    Known(Cost),
    InLayer(usize),
}

#[derive(Default)]
struct Layer {
    values: HashMap<usize, (Cost, usize)>,
}

/// Per-target solver with its own transposition table.
pub struct Solver<'a> {
    class: &'a HypothesisClass,
    sigma: &'a PreferenceFunction,
    target: usize,
    collapse: bool,
    examples: Vec<LabeledExample>,
    memo: HashMap<VersionSpace, Layer>,
    nodes: usize,
    budget: usize,
}

impl<'a> Solver<'a> {
    pub fn new(class: &'a HypothesisClass, sigma: &'a PreferenceFunction, target: usize, budget: usize) -> Self {
        Solver {
            class,
            sigma,
            target,
            collapse: sigma.ignores_current(),
            examples: (0..class.instance_count()).map(|x| class.example_of(target, x)).collect(),
            memo: HashMap::new(),
            nodes: 0,
            budget,
        }
    }

    #[inline]
    fn key(&self, h: usize) -> usize {
        if self.collapse {
            0
        } else {
            h
        }
    }

    fn lookup(&self, vs: &VersionSpace, h: usize) -> Option<(Cost, usize)> {
        self.memo.get(vs).and_then(|l| l.values.get(&self.key(h)).copied())
    }

    /// Cost of play from `(vs, h)` where the learner has not yet reached the
    /// target (or must be re-taught it). At least one example is always spent.
    pub fn value(&mut self, vs: &VersionSpace, h: usize) -> Result<Cost> {
        if let Some((c, _)) = self.lookup(vs, h) {
            return Ok(c);
        }
        self.solve_layer(vs, h)?;
        Ok(self.lookup(vs, h).expect("layer solved").0)
    }

    fn solve_layer(&mut self, vs: &VersionSpace, start: usize) -> Result<()> {
        let n = self.examples.len();
        let mut states = vec![start];
        let mut pos: HashMap<usize, usize> = HashMap::from([(self.key(start), 0)]);
        let mut trans: Vec<Vec<Vec<Succ>>> = Vec::new();

        let mut i = 0;
        while i < states.len() {
            let h = states[i];
            let mut per_x = Vec::with_capacity(n);
            for x in 0..n {
                let next = vs.intersection(self.class.agreeing(self.examples[x]));
                let cands = self.sigma.argmin(self.class, &next, h);
                let mut succ = Vec::with_capacity(cands.count());
                for c in cands.iter() {
                    if c == self.target {
                        succ.push(Succ::Done);
                    } else if next != *vs {
                        succ.push(Succ::Known(self.value(&next, c)?));
                    } else if let Some((v, _)) = self.lookup(vs, c) {
                        succ.push(Succ::Known(v));
                    } else {
                        let k = self.key(c);
                        let j = *pos.entry(k).or_insert_with(|| {
                            states.push(c);
                            states.len() - 1
                        });
                        succ.push(Succ::InLayer(j));
                    }
                }
                per_x.push(succ);
            }
            trans.push(per_x);
            i += 1;
        }

        self.nodes += states.len();
        if self.nodes > self.budget {
            return Err(Error::Resource(format!(
                "teaching-cost search exceeded {} states",
                self.budget
            )));
        }

        let eval = |succ: &[Succ], vals: &[Cost]| -> Cost {
            succ.iter()
                .map(|s| match *s {
                    Succ::Done => Cost::Finite(1),
                    Succ::Known(c) => c.plus_one(),
                    Succ::InLayer(j) => vals[j].plus_one(),
                })
                .max()
                .unwrap_or(Cost::Infinite)
        };

        // Iterate down from infinity: after k sweeps every value is at most
        // the best cost achievable within k in-layer moves.
        let mut vals = vec![Cost::Infinite; states.len()];
        loop {
            let mut changed = false;
            for s in 0..states.len() {
                let best = trans[s].iter().map(|succ| eval(succ, &vals)).min().unwrap_or(Cost::Infinite);
                if best < vals[s] {
                    vals[s] = best;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let layer = self.memo.entry(vs.clone()).or_default();
        for (s, &h) in states.iter().enumerate() {
            let best_x = (0..n)
                .min_by_key(|&x| (eval(&trans[s][x], &vals), x))
                .unwrap_or(0);
            let key = if self.collapse { 0 } else { h };
            layer.values.insert(key, (vals[s], best_x));
        }
        Ok(())
    }

    /// Principal variation from `(vs, h)` when ties go against the teacher
    /// in the simulator's deterministic way (lowest-index non-target).
    pub fn witness(&mut self, vs: &VersionSpace, h: usize) -> Result<TeachingSequence> {
        let mut seq = Vec::new();
        let (mut vs, mut h) = (vs.clone(), h);
        let start = self.value(&vs, h)?;
        let Cost::Finite(limit) = start else {
            return Ok(seq);
        };
        let tie = TieMode::AdversarialAgainst(self.target);
        loop {
            let (_, x) = self.lookup(&vs, h).expect("solved");
            let z = self.examples[x];
            seq.push(z);
            let next = vs.intersection(self.class.agreeing(z));
            let chosen = tie.choose(&self.sigma.argmin(self.class, &next, h)).expect("nonempty");
            if chosen == self.target || seq.len() >= limit as usize {
                break;
            }
            self.value(&next, chosen)?;
            vs = next;
            h = chosen;
        }
        Ok(seq)
    }
}

/// `D_σ(H, h, h*)`: zero when the learner already holds the target.
pub fn d_sigma(
    class: &HypothesisClass,
    sigma: &PreferenceFunction,
    vs: &VersionSpace,
    h: usize,
    target: usize,
    budget: usize,
) -> Result<Cost> {
    sigma.check_bound(class)?;
    class.check_hypothesis(h)?;
    class.check_hypothesis(target)?;
    if vs.capacity() != class.hypothesis_count() {
        return Err(Error::Binding("version space over a different class".into()));
    }
    if !vs.contains(target) {
        return Err(Error::domain(format!(
            "target {} is not in the version space",
            class.hypothesis_name(target)
        )));
    }
    if h == target {
        return Ok(Cost::Finite(0));
    }
    Solver::new(class, sigma, target, budget).value(vs, h)
}

/// One row of a teaching-cost computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetCost {
    pub target: usize,
    pub cost: Cost,
    /// Left out of the maximum (start hypothesis under [`InitialTarget::Exclude`]).
    pub excluded: bool,
    pub witness: TeachingSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdResult {
    pub value: Cost,
    pub h0: usize,
    pub initial_target: InitialTarget,
    pub per_target: Vec<TargetCost>,
}

impl TdResult {
    pub fn cost_of(&self, target: usize) -> Cost {
        self.per_target[target].cost
    }

    pub fn to_dimension(&self, measure: impl Into<String>) -> DimensionResult {
        DimensionResult {
            measure: measure.into(),
            value: self.value,
            bound_kind: BoundKind::Exact,
            witness: Witness::Sequences(
                self.per_target
                    .iter()
                    .map(|t| (t.target, t.witness.clone()))
                    .collect(),
            ),
        }
    }
}

/// `TD(σ) = max_{h*} D_σ(H, h0, h*)` with per-target witnesses.
pub fn td_of_sigma(
    class: &HypothesisClass,
    sigma: &PreferenceFunction,
    h0: usize,
    opts: &TdOptions,
) -> Result<TdResult> {
    sigma.check_bound(class)?;
    class.check_hypothesis(h0)?;
    let m = class.hypothesis_count();
    let full = class.full();
    let one = |t: usize| -> Result<TargetCost> {
        let mut row = TargetCost {
            target: t,
            cost: Cost::Finite(0),
            excluded: false,
            witness: Vec::new(),
        };
        if t == h0 {
            match opts.initial_target {
                InitialTarget::Exclude => {
                    row.excluded = true;
                    return Ok(row);
                }
                InitialTarget::Zero => return Ok(row),
                // a single hypothesis is known without any teaching
                InitialTarget::Reteach if m == 1 => return Ok(row),
                InitialTarget::Reteach => {}
            }
        }
        let mut solver = Solver::new(class, sigma, t, opts.budget_nodes);
        row.cost = solver.value(&full, h0)?;
        row.witness = solver.witness(&full, h0)?;
        Ok(row)
    };
    let per_target: Vec<TargetCost> = if opts.parallel {
        (0..m).into_par_iter().map(one).collect::<Result<_>>()?
    } else {
        (0..m).map(one).collect::<Result<_>>()?
    };
    let value = per_target
        .iter()
        .filter(|t| !t.excluded)
        .map(|t| t.cost)
        .max()
        .unwrap_or(Cost::Finite(0));
    Ok(TdResult {
        value,
        h0,
        initial_target: opts.initial_target,
        per_target,
    })
}

/// `C_σ(H, h, z)`: the learner's candidates after adding `z` to `H`.
pub fn candidate_set(
    class: &HypothesisClass,
    sigma: &PreferenceFunction,
    vs: &VersionSpace,
    h: usize,
    z: LabeledExample,
) -> Result<BitSet> {
    class.check_example(&z)?;
    let next = vs.intersection(class.agreeing(z));
    if next.is_empty() {
        return Err(Error::domain(format!("example {z} eliminates all hypotheses")));
    }
    sigma.argmin_set(class, &next, h)
}
