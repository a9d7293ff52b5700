//! No-clash teaching dimension by constraint search.
//!
//! For a size bound `k`, each hypothesis gets a `k`-subset of instances
//! (larger sets never hurt: they can only separate more pairs). A pair
//! `(h, g)` clashes iff neither set touches an instance where they disagree,
//! so every pair is a binary "at least one side hits `diff(h, g)`" constraint.
//! Variables are chosen by smallest remaining domain and constraints are
//! propagated as soon as one side is fixed.

use super::classical::{any_combination, teaching_set_instances, TeacherMapping};
use super::{BoundKind, Cost, DimensionResult, Witness};
use crate::class::HypothesisClass;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct NctdOptions {
    /// Search nodes before giving up with a resource error.
    pub budget_nodes: usize,
    /// Do not try sizes above this; report a lower bound instead.
    pub max_size_hint: Option<usize>,
}

impl Default for NctdOptions {
    fn default() -> Self {
        NctdOptions {
            budget_nodes: 20_000_000,
            max_size_hint: None,
        }
    }
}

struct Search<'a> {
    diff: &'a [Vec<u64>],
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn run(&mut self, assigned: &mut [Option<u64>], domains: &[Vec<u64>]) -> Result<bool> {
        let Some(v) = (0..assigned.len())
            .filter(|&h| assigned[h].is_none())
            .min_by_key(|&h| domains[h].len())
        else {
            return Ok(true);
        };
        for &val in &domains[v] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Resource(String::new()));
            }
            let mut next = domains.to_vec();
            let mut dead = false;
            for g in 0..assigned.len() {
                if g == v || assigned[g].is_some() {
                    continue;
                }
                let d = self.diff[v][g];
                if val & d == 0 {
                    next[g].retain(|&mask| mask & d != 0);
                    if next[g].is_empty() {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            assigned[v] = Some(val);
            if self.run(assigned, &next)? {
                return Ok(true);
            }
            assigned[v] = None;
        }
        Ok(false)
    }
}

fn mask_of(xs: &[usize]) -> u64 {
    xs.iter().fold(0, |m, &x| m | 1 << x)
}

fn instances_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|x| mask >> x & 1 == 1).collect()
}

/// Exact NCTD with a minimizing non-clashing mapping as witness.
pub fn nctd(class: &HypothesisClass, opts: &NctdOptions) -> Result<DimensionResult> {
    let n = class.instance_count();
    let m = class.hypothesis_count();
    if n > 64 {
        return Err(Error::Resource(format!("{n} instances exceeds the 64 supported by the search")));
    }
    if m == 1 {
        return Ok(DimensionResult::exact("nctd", 0, Witness::Mapping(vec![vec![]])));
    }
    let full = class.full();
    let teaching_sets: Vec<Vec<usize>> = (0..m).map(|h| teaching_set_instances(class, h, &full)).collect();
    let upper = teaching_sets.iter().map(Vec::len).max().unwrap_or(0);

    let diff: Vec<Vec<u64>> = (0..m)
        .map(|h| {
            (0..m)
                .map(|g| mask_of(&class.disagreement(h, g).to_vec()))
                .collect()
        })
        .collect();
    let instances: Vec<usize> = (0..n).collect();
    let cap = opts.max_size_hint.map_or(upper, |c| c.min(upper));

    let mut search = Search {
        diff: &diff,
        nodes: 0,
        budget: opts.budget_nodes,
    };
    for k in 1..=cap {
        let mut masks = Vec::new();
        any_combination(&instances, k.min(n), &mut |xs| {
            masks.push(mask_of(xs));
            false
        });
        // try masks that separate the most hypotheses first
        let domains: Vec<Vec<u64>> = (0..m)
            .map(|h| {
                let mut d = masks.clone();
                d.sort_by_key(|&mask| {
                    std::cmp::Reverse((0..m).filter(|&g| g != h && mask & diff[h][g] != 0).count())
                });
                d
            })
            .collect();
        let mut assigned = vec![None; m];
        match search.run(&mut assigned, &domains) {
            Ok(true) => {
                let sets: Vec<Vec<usize>> = assigned.iter().map(|a| instances_of(a.expect("assigned"))).collect();
                let mapping = TeacherMapping::from_instances(class, &sets);
                return Ok(DimensionResult::exact("nctd", k, Witness::Mapping(mapping.sets)));
            }
            Ok(false) => {}
            Err(_) => {
                return Err(Error::Resource(format!(
                    "nctd search exceeded {} nodes; bounds {k} <= NCTD <= {upper}",
                    opts.budget_nodes
                )))
            }
        }
    }
    if cap < upper {
        return Ok(DimensionResult {
            measure: "nctd".into(),
            value: Cost::Finite(cap as u32 + 1),
            bound_kind: BoundKind::Lower,
            witness: Witness::None,
        });
    }
    // minimum teaching sets never clash, so the search cannot fail at `upper`
    let mapping = TeacherMapping::from_instances(class, &teaching_sets);
    Ok(DimensionResult::exact("nctd", upper, Witness::Mapping(mapping.sets)))
}

/// `⌈E / m⌉` where `E` counts pairs of hypotheses differing on one instance.
///
/// A non-clashing teacher must show the separating instance to at least one
/// side of every such pair, so the sets have total size at least `E`.
pub fn nctd_edge_lower_bound(class: &HypothesisClass) -> u32 {
    let m = class.hypothesis_count();
    let edges = (0..m)
        .flat_map(|h| (h + 1..m).map(move |g| (h, g)))
        .filter(|&(h, g)| class.hamming(h, g) == 1)
        .count();
    edges.div_ceil(m) as u32
}
