//! Step-by-step simulation of the teacher–learner protocol.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::class::{HypothesisClass, LabeledExample, TeachingSequence, VersionSpace};
use crate::error::{Error, Result};
use crate::preference::PreferenceFunction;

/// How the learner breaks ties among equally preferred candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieMode {
    /// Lowest-index candidate other than the given hypothesis, if any.
    AdversarialAgainst(usize),
    LowestIndex,
}

impl TieMode {
    pub fn choose(self, candidates: &BitSet) -> Option<usize> {
        match self {
            TieMode::AdversarialAgainst(t) => candidates.iter().find(|&c| c != t).or_else(|| candidates.first()),
            TieMode::LowestIndex => candidates.first(),
        }
    }
}

/// The tie mode as chosen on a command line, before a target is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    #[default]
    Adversarial,
    LowestIndex,
}

impl TieRule {
    pub fn against(self, target: usize) -> TieMode {
        match self {
            TieRule::Adversarial => TieMode::AdversarialAgainst(target),
            TieRule::LowestIndex => TieMode::LowestIndex,
        }
    }
}

impl FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adversarial" => Ok(TieRule::Adversarial),
            "lowest-index" | "lowest" => Ok(TieRule::LowestIndex),
            _ => Err(Error::input(format!("unknown tie mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnerState {
    pub current: usize,
    pub version_space: VersionSpace,
    pub history: TeachingSequence,
}

impl LearnerState {
    pub fn initial(class: &HypothesisClass, h0: usize) -> Self {
        LearnerState {
            current: h0,
            version_space: class.full(),
            history: Vec::new(),
        }
    }
}

/// Feed one example. Returns the new state and the candidate set the learner
/// chose from.
pub fn learner_step(
    class: &HypothesisClass,
    sigma: &PreferenceFunction,
    state: &LearnerState,
    z: LabeledExample,
    tie: TieMode,
) -> Result<(LearnerState, BitSet)> {
    class.check_example(&z)?;
    let vs = state.version_space.intersection(class.agreeing(z));
    if vs.is_empty() {
        return Err(Error::input(format!(
            "example {z} is inconsistent with every remaining hypothesis"
        )));
    }
    let candidates = sigma.argmin(class, &vs, state.current);
    let current = tie.choose(&candidates).expect("argmin of a nonempty set is nonempty");
    let mut history = state.history.clone();
    history.push(z);
    Ok((
        LearnerState {
            current,
            version_space: vs,
            history,
        },
        candidates,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub example: LabeledExample,
    pub version_space_size: usize,
    pub candidates: Vec<usize>,
    pub chosen: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub steps: Vec<Step>,
    pub terminated: bool,
    pub steps_used: usize,
}

impl Trajectory {
    /// One line per step: `t=<k> z=(<x>,<y>) H=<count> candidates={...} chosen=<h>`.
    pub fn dump(&self, class: &HypothesisClass) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            let names: Vec<String> = s.candidates.iter().map(|&c| class.hypothesis_name(c)).collect();
            let _ = writeln!(
                out,
                "t={} z=({},{}) H={} candidates={{{}}} chosen={}",
                k + 1,
                class.instance_name(s.example.instance),
                s.example.label as u8,
                s.version_space_size,
                names.join(","),
                class.hypothesis_name(s.chosen)
            );
        }
        out
    }
}

/// Replay `sequence` from `h0`, stopping as soon as the learner reaches `target`.
///
/// An empty sequence succeeds immediately when `target == h0`.
pub fn run_protocol(
    class: &HypothesisClass,
    sigma: &PreferenceFunction,
    h0: usize,
    target: usize,
    sequence: &[LabeledExample],
    tie: TieMode,
) -> Result<Trajectory> {
    sigma.check_bound(class)?;
    class.check_hypothesis(h0)?;
    class.check_hypothesis(target)?;
    for z in sequence {
        class.check_example(z)?;
        if class.label(target, z.instance) != z.label {
            return Err(Error::input(format!(
                "example {z} disagrees with the target {}",
                class.hypothesis_name(target)
            )));
        }
    }
    let mut traj = Trajectory {
        steps: Vec::new(),
        terminated: sequence.is_empty() && h0 == target,
        steps_used: 0,
    };
    let mut state = LearnerState::initial(class, h0);
    for &z in sequence {
        if traj.terminated {
            break;
        }
        let (next, candidates) = learner_step(class, sigma, &state, z, tie)?;
        traj.steps.push(Step {
            example: z,
            version_space_size: next.version_space.count(),
            candidates: candidates.to_vec(),
            chosen: next.current,
        });
        traj.steps_used += 1;
        traj.terminated = next.current == target;
        state = next;
    }
    Ok(traj)
}
