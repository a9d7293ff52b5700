//! Exact teaching-complexity engines.

mod classical;
mod counting;
mod dsigma;
mod global;
mod nctd;
mod teacher;

pub use classical::{
    is_nonclashing, min_teaching_set, rtd, rtd_by_orderings, vcd, wc_td, RtdRound, TeacherMapping,
};
pub use counting::{count_pref_relations, count_pref_relations_by_compositions, powerset_td_lower_bound};
pub use dsigma::{candidate_set, d_sigma, td_of_sigma, Solver, TargetCost, TdResult};
pub use global::{sigma_td_global, weak_orders, MAX_GLOBAL_ENUMERATION};
pub use nctd::{nctd, nctd_edge_lower_bound, NctdOptions};
pub use teacher::sigma_from_teacher;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::class::{LabeledExample, TeachingSequence};
use crate::error::{Error, Result};

/// A teaching cost: a number of examples, or unreachable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost {
    Finite(u32),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<u32> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    #[inline]
    pub fn plus_one(self) -> Cost {
        match self {
            Cost::Finite(v) => Cost::Finite(v + 1),
            Cost::Infinite => Cost::Infinite,
        }
    }
}

impl From<usize> for Cost {
    fn from(v: usize) -> Self {
        Cost::Finite(v as u32)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => f.pad(&v.to_string()),
            Cost::Infinite => f.pad("infinity"),
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cost::Finite(v) => s.serialize_u32(*v),
            Cost::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Cost::Finite(v)),
            Raw::S(s) if s == "infinity" => Ok(Cost::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad cost {s:?}"))),
        }
    }
}

/// How the start hypothesis counts when it is itself the target.
///
/// The protocol only checks for success after an example, so by default the
/// teacher must still spend at least one example to (re)confirm it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialTarget {
    /// Teach it like any other target (at least one example).
    #[default]
    Reteach,
    /// Leave it out of the maximum.
    Exclude,
    /// Count it as already taught, at cost 0.
    Zero,
}

impl FromStr for InitialTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reteach" => Ok(InitialTarget::Reteach),
            "exclude" => Ok(InitialTarget::Exclude),
            "zero" => Ok(InitialTarget::Zero),
            _ => Err(Error::input(format!("unknown initial-target mode {s:?}"))),
        }
    }
}

/// Default cap on solved states per target.
pub const DEFAULT_BUDGET_NODES: usize = 5_000_000;

#[derive(Debug, Clone)]
pub struct TdOptions {
    pub initial_target: InitialTarget,
    pub budget_nodes: usize,
    /// Solve targets on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl Default for TdOptions {
    fn default() -> Self {
        TdOptions {
            initial_target: InitialTarget::default(),
            budget_nodes: DEFAULT_BUDGET_NODES,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Exact,
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Per-target teaching sequences.
    Sequences(Vec<(usize, TeachingSequence)>),
    /// A teacher mapping, one example set per hypothesis.
    Mapping(Vec<Vec<LabeledExample>>),
    /// Peeling rounds of a recursive teaching plan.
    Ordering(Vec<RtdRound>),
    /// A largest shattered instance set.
    Shattered(Vec<usize>),
    /// A single teaching set.
    TeachingSet(Vec<LabeledExample>),
    /// A rank vector realizing the value.
    Ranks(Vec<i64>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionResult {
    pub measure: String,
    pub value: Cost,
    pub bound_kind: BoundKind,
    pub witness: Witness,
}

impl DimensionResult {
    pub fn exact(measure: impl Into<String>, value: usize, witness: Witness) -> Self {
        DimensionResult {
            measure: measure.into(),
            value: Cost::Finite(value as u32),
            bound_kind: BoundKind::Exact,
            witness,
        }
    }

    /// The value as an integer, if finite.
    pub fn int(&self) -> Option<u32> {
        self.value.finite()
    }
}
