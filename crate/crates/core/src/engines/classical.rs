//! Classical batch measures: teaching sets, wc-TD, RTD, VCD and non-clashing
//! teacher mappings.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{DimensionResult, Witness};
use crate::bitset::BitSet;
use crate::class::{HypothesisClass, LabeledExample, VersionSpace};
use crate::error::{Error, Result};
use crate::preference::{Counterexample, FamilyVerdict};

/// `T(h)` for every hypothesis, each set labeled by its own hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeacherMapping {
    pub sets: Vec<Vec<LabeledExample>>,
}

impl TeacherMapping {
    /// Build from instance sets, labeling each by its hypothesis.
    pub fn from_instances(class: &HypothesisClass, instances: &[Vec<usize>]) -> Self {
        TeacherMapping {
            sets: instances
                .iter()
                .enumerate()
                .map(|(h, xs)| xs.iter().map(|&x| class.example_of(h, x)).collect())
                .collect(),
        }
    }

    pub fn validate(&self, class: &HypothesisClass) -> Result<()> {
        if self.sets.len() != class.hypothesis_count() {
            return Err(Error::input(format!(
                "mapping covers {} hypotheses, class has {}",
                self.sets.len(),
                class.hypothesis_count()
            )));
        }
        for (h, t) in self.sets.iter().enumerate() {
            if !class.consistent(h, t)? {
                return Err(Error::input(format!(
                    "T({}) is not labeled by {}",
                    class.hypothesis_name(h),
                    class.hypothesis_name(h)
                )));
            }
        }
        Ok(())
    }

    pub fn max_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn instance_set(&self, h: usize, n: usize) -> BitSet {
        BitSet::from_indices(n, self.sets[h].iter().map(|z| z.instance))
    }
}

/// Smallest instance set on which only `h` (within `within`) agrees with `h`.
///
/// Every other hypothesis must be hit on some instance where it disagrees
/// with `h`; this is a hitting-set search by iterative deepening, branching on
/// the other hypothesis with the fewest disagreements.
pub(crate) fn teaching_set_instances(class: &HypothesisClass, h: usize, within: &VersionSpace) -> Vec<usize> {
    let diffs: Vec<BitSet> = within
        .iter()
        .filter(|&g| g != h)
        .map(|g| class.disagreement(h, g))
        .collect();

    fn search(diffs: &[&BitSet], budget: usize, chosen: &mut Vec<usize>) -> bool {
        let Some(pick) = diffs.iter().min_by_key(|d| d.count()) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for x in pick.iter() {
            let rest: Vec<&BitSet> = diffs.iter().copied().filter(|d| !d.contains(x)).collect();
            chosen.push(x);
            if search(&rest, budget - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let refs: Vec<&BitSet> = diffs.iter().collect();
    for k in 0..=class.instance_count() {
        let mut chosen = Vec::new();
        if search(&refs, k, &mut chosen) {
            chosen.sort_unstable();
            return chosen;
        }
    }
    unreachable!("distinct rows are separated by the full instance set")
}

/// Minimum teaching set of `h` relative to the hypotheses in `within`.
pub fn min_teaching_set(class: &HypothesisClass, h: usize, within: &VersionSpace) -> Result<DimensionResult> {
    class.check_hypothesis(h)?;
    if !within.contains(h) {
        return Err(Error::domain(format!(
            "{} is not in the given version space",
            class.hypothesis_name(h)
        )));
    }
    let xs = teaching_set_instances(class, h, within);
    let set = xs.iter().map(|&x| class.example_of(h, x)).collect();
    Ok(DimensionResult::exact("teaching-set", xs.len(), Witness::TeachingSet(set)))
}

/// Worst-case teaching dimension; the witness is a mapping of minimum sets.
pub fn wc_td(class: &HypothesisClass) -> DimensionResult {
    let full = class.full();
    let sets: Vec<Vec<usize>> = (0..class.hypothesis_count())
        .map(|h| teaching_set_instances(class, h, &full))
        .collect();
    let value = sets.iter().map(Vec::len).max().unwrap_or(0);
    let mapping = TeacherMapping::from_instances(class, &sets);
    DimensionResult::exact("wc-td", value, Witness::Mapping(mapping.sets))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RtdRound {
    pub hypotheses: Vec<usize>,
    pub cost: usize,
}

/// Recursive teaching dimension by peeling off, round by round, every
/// hypothesis that is cheapest to teach among those remaining.
pub fn rtd(class: &HypothesisClass) -> DimensionResult {
    let mut remaining = class.full();
    let mut rounds = Vec::new();
    while !remaining.is_empty() {
        let costs: Vec<(usize, usize)> = remaining
            .iter()
            .map(|h| (h, teaching_set_instances(class, h, &remaining).len()))
            .collect();
        let cost = costs.iter().map(|&(_, c)| c).min().expect("nonempty");
        let peeled: Vec<usize> = costs.iter().filter(|&&(_, c)| c == cost).map(|&(h, _)| h).collect();
        for &h in &peeled {
            remaining.remove(h);
        }
        rounds.push(RtdRound {
            hypotheses: peeled,
            cost,
        });
    }
    let value = rounds.iter().map(|r| r.cost).max().unwrap_or(0);
    DimensionResult::exact("rtd", value, Witness::Ordering(rounds))
}

/// Brute force over all orderings (`m ≤ 8`): `min_order max_i TS(h_i, {h_i, …, h_m})`.
pub fn rtd_by_orderings(class: &HypothesisClass) -> Result<usize> {
    let m = class.hypothesis_count();
    if m > 8 {
        return Err(Error::Resource(format!("{m}! orderings is too many")));
    }
    let mut best = usize::MAX;
    let mut order: Vec<usize> = (0..m).collect();
    permute(&mut order, 0, &mut |ord| {
        let mut rest = class.full();
        let mut worst = 0;
        for &h in ord {
            worst = worst.max(teaching_set_instances(class, h, &rest).len());
            rest.remove(h);
            if worst >= best {
                return;
            }
        }
        best = best.min(worst);
    });
    Ok(best)
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Visit every `k`-subset of `items` in lexicographic order until `f` returns true.
pub(crate) fn any_combination(items: &[usize], k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(items: &[usize], k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if acc.len() == k {
            return f(acc);
        }
        for i in start..items.len() {
            if items.len() - i < k - acc.len() {
                break;
            }
            acc.push(items[i]);
            if go(items, k, i + 1, acc, f) {
                return true;
            }
            acc.pop();
        }
        false
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// VC dimension over `instances` (all instances when `None`); the witness is
/// a largest shattered set.
pub fn vcd(class: &HypothesisClass, instances: Option<&[usize]>) -> Result<DimensionResult> {
    let all: Vec<usize> = match instances {
        Some(xs) => {
            for &x in xs {
                class.check_example(&LabeledExample::new(x, false))?;
            }
            let mut v = xs.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        }
        None => (0..class.instance_count()).collect(),
    };
    let m = class.hypothesis_count();
    let max_k = all.len().min(usize::BITS as usize - 1 - m.leading_zeros() as usize);
    for k in (1..=max_k).rev() {
        let mut found = None;
        any_combination(&all, k, &mut |xs| {
            let mut seen = HashSet::with_capacity(1 << k);
            for h in 0..m {
                let pattern = xs.iter().fold(0u64, |acc, &x| (acc << 1) | class.label(h, x) as u64);
                seen.insert(pattern);
            }
            if seen.len() == 1 << k {
                found = Some(xs.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(xs) = found {
            return Ok(DimensionResult::exact("vcd", k, Witness::Shattered(xs)));
        }
    }
    Ok(DimensionResult::exact("vcd", 0, Witness::Shattered(vec![])))
}

/// No two distinct hypotheses may each be consistent with the other's set.
pub fn is_nonclashing(class: &HypothesisClass, mapping: &TeacherMapping) -> Result<FamilyVerdict> {
    mapping.validate(class)?;
    let n = class.instance_count();
    let m = class.hypothesis_count();
    let sets: Vec<BitSet> = (0..m).map(|h| mapping.instance_set(h, n)).collect();
    for h in 0..m {
        for g in h + 1..m {
            let d = class.disagreement(h, g);
            if sets[h].is_disjoint(&d) && sets[g].is_disjoint(&d) {
                let mut examples = mapping.sets[h].clone();
                examples.extend(mapping.sets[g].iter().copied());
                let cx = Counterexample {
                    detail: format!(
                        "T({}) is consistent with {} and T({}) is consistent with {}",
                        class.hypothesis_name(h),
                        class.hypothesis_name(g),
                        class.hypothesis_name(g),
                        class.hypothesis_name(h)
                    ),
                    triples: vec![],
                    examples,
                };
                return Ok(FamilyVerdict::fail("non-clashing", "all pairs of hypotheses", cx));
            }
        }
    }
    Ok(FamilyVerdict::pass("non-clashing", "all pairs of hypotheses"))
}
