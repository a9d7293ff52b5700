//! Exhaustive one-example feasibility checks and a small search for a class
//! where version-space preferences beat local ones.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::class::{HypothesisClass, LabeledExample};
use crate::engines::{
    nctd, rtd, sigma_from_teacher, td_of_sigma, weak_orders, Cost, NctdOptions, TdOptions, TeacherMapping, Witness,
};
use crate::error::Result;
use crate::preference::Rank;

fn all_examples(class: &HypothesisClass) -> Vec<LabeledExample> {
    (0..class.instance_count())
        .flat_map(|x| [LabeledExample::new(x, false), LabeledExample::new(x, true)])
        .collect()
}

/// Does some ranking of the learner's first move teach every hypothesis with
/// one example from `h0`?
///
/// A local learner's first move depends only on its row at `h0`, so it is
/// enough to try every weak order as that row. `h0` itself must also be
/// re-taught by one example. Returns a working row if there is one.
pub fn local_td_one_row(class: &HypothesisClass, h0: usize) -> Result<Option<Vec<Rank>>> {
    class.check_hypothesis(h0)?;
    let m = class.hypothesis_count();
    if m > crate::engines::MAX_GLOBAL_ENUMERATION {
        return Err(crate::Error::Resource(format!("{m} hypotheses is too many to enumerate rows")));
    }
    let spaces: Vec<BitSet> = all_examples(class)
        .into_iter()
        .map(|z| class.agreeing(z).clone())
        .filter(|vs| !vs.is_empty())
        .collect();
    for row in weak_orders(m) {
        let mut taught = BitSet::new(m);
        for vs in &spaces {
            let best = vs.iter().map(|h| row[h]).min().expect("nonempty");
            let winners: Vec<usize> = vs.iter().filter(|&h| row[h] == best).collect();
            if let [w] = winners[..] {
                taught.insert(w);
            }
        }
        if taught.count() == m || m == 1 {
            return Ok(Some(row));
        }
    }
    Ok(None)
}

/// Can any win-stay learner be taught every `t ≠ h0` with one example?
///
/// From `h0` an example consistent with `h0` keeps the learner in place, so
/// each other target needs its own version space `H({z})` with `z`
/// inconsistent with `h0`, and distinct targets need distinct spaces. That is
/// a bipartite matching, and any complete matching is realized by a win-stay
/// learner that picks the matched target on that space. Returns the matching
/// as `(target, example)` pairs when it exists.
pub fn wsls_td_one_matching(class: &HypothesisClass, h0: usize) -> Result<Option<Vec<(usize, LabeledExample)>>> {
    class.check_hypothesis(h0)?;
    let m = class.hypothesis_count();
    let mut spaces: Vec<(BitSet, LabeledExample)> = Vec::new();
    for z in all_examples(class) {
        let vs = class.agreeing(z);
        if vs.contains(h0) || vs.is_empty() || spaces.iter().any(|(s, _)| s == vs) {
            continue;
        }
        spaces.push((vs.clone(), z));
    }
    let targets: Vec<usize> = (0..m).filter(|&t| t != h0).collect();
    if targets.len() > spaces.len() {
        return Ok(None);
    }
    let adj: Vec<Vec<usize>> = targets
        .iter()
        .map(|&t| (0..spaces.len()).filter(|&s| spaces[s].0.contains(t)).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; spaces.len()];
    fn augment(t: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &s in &adj[t] {
            if !seen[s] {
                seen[s] = true;
                if owner[s].is_none_or(|o| augment(o, adj, seen, owner)) {
                    owner[s] = Some(t);
                    return true;
                }
            }
        }
        false
    }
    for t in 0..targets.len() {
        let mut seen = vec![false; spaces.len()];
        if !augment(t, &adj, &mut seen, &mut owner) {
            return Ok(None);
        }
    }
    let mut pairs: Vec<(usize, LabeledExample)> = owner
        .iter()
        .enumerate()
        .filter_map(|(s, o)| o.map(|t| (targets[t], spaces[s].1)))
        .collect();
    pairs.sort();
    Ok(Some(pairs))
}

#[derive(Debug, Clone, Copy)]
pub struct GapSearchBounds {
    pub max_instances: usize,
    pub max_hypotheses: usize,
}

impl Default for GapSearchBounds {
    fn default() -> Self {
        GapSearchBounds {
            max_instances: 3,
            max_hypotheses: 6,
        }
    }
}

/// A class where a gvs learner needs one example and no local learner does.
#[derive(Debug, Clone, Serialize)]
pub struct GapCertificate {
    #[serde(skip)]
    pub class: HypothesisClass,
    pub rows: Vec<String>,
    pub nctd: u32,
    pub mapping: Vec<Vec<LabeledExample>>,
    pub rtd: u32,
    /// `TD` of the gvs learner built from `mapping`, per start hypothesis.
    pub gvs_td: Vec<Cost>,
    /// Start hypotheses from which a one-example local learner exists (none).
    pub local_td_one: Vec<usize>,
}

/// Search classes with `n ≤ max_instances` and `m ≤ max_hypotheses` for
/// `NCTD = 1` and `RTD = 2`, smallest first.
pub fn find_gvs_beats_local_class(bounds: GapSearchBounds) -> Result<Option<GapCertificate>> {
    let opts = TdOptions {
        parallel: false,
        ..TdOptions::default()
    };
    for n in 1..=bounds.max_instances {
        let rows = 1usize << n;
        for m in 2..=bounds.max_hypotheses.min(rows) {
            // m-subsets of the 2^n rows in lexicographic order
            let mut pick: Vec<usize> = (0..m).collect();
            loop {
                let labels: Vec<Vec<bool>> = pick
                    .iter()
                    .map(|&r| (0..n).map(|x| r >> (n - 1 - x) & 1 == 1).collect())
                    .collect();
                let class = HypothesisClass::new(n, labels)?;
                if let Some(cert) = certify(&class, &opts)? {
                    return Ok(Some(cert));
                }
                let Some(i) = (0..m).rev().find(|&i| pick[i] < rows - m + i) else {
                    break;
                };
                pick[i] += 1;
                for j in i + 1..m {
                    pick[j] = pick[j - 1] + 1;
                }
            }
        }
    }
    Ok(None)
}

fn certify(class: &HypothesisClass, opts: &TdOptions) -> Result<Option<GapCertificate>> {
    let r = rtd(class).int().expect("finite");
    if r != 2 {
        return Ok(None);
    }
    let nc = nctd(class, &NctdOptions::default())?;
    if nc.int() != Some(1) {
        return Ok(None);
    }
    let Witness::Mapping(sets) = nc.witness else {
        unreachable!("nctd always returns a mapping")
    };
    let mapping = TeacherMapping { sets };
    let gvs = sigma_from_teacher(class, &mapping)?;
    let m = class.hypothesis_count();
    let mut gvs_td = Vec::with_capacity(m);
    let mut local_td_one = Vec::new();
    for h0 in 0..m {
        gvs_td.push(td_of_sigma(class, &gvs, h0, opts)?.value);
        if local_td_one_row(class, h0)?.is_some() {
            local_td_one.push(h0);
        }
    }
    Ok(Some(GapCertificate {
        rows: (0..m).map(|h| class.row_string(h)).collect(),
        class: class.clone(),
        nctd: 1,
        mapping: mapping.sets,
        rtd: r,
        gvs_td,
        local_td_one,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::powerset_class;
    use crate::engines::sigma_td_global;

    #[test]
    fn wsls_one_example_is_infeasible_on_powersets() {
        for k in [3, 4] {
            let p = powerset_class(k).unwrap();
            for h0 in 0..p.hypothesis_count() {
                assert!(wsls_td_one_matching(&p, h0).unwrap().is_none());
            }
        }
        let p = powerset_class(1).unwrap();
        assert!(wsls_td_one_matching(&p, 0).unwrap().is_some());
        let chain = HypothesisClass::from_strings(&["00", "10", "01"]).unwrap();
        assert_eq!(wsls_td_one_matching(&chain, 0).unwrap().unwrap().len(), 2);
    }

    #[test]
    fn local_row_agrees_with_global_search() {
        for rows in [&["00", "01", "11"][..], &["00", "01", "10", "11"], &["000", "100", "110", "111"]] {
            let c = HypothesisClass::from_strings(rows).unwrap();
            for h0 in 0..c.hypothesis_count() {
                let g = sigma_td_global(&c, h0, &TdOptions::default()).unwrap().int().unwrap();
                assert_eq!(local_td_one_row(&c, h0).unwrap().is_some(), g <= 1, "{rows:?} h0={h0}");
            }
        }
    }

    #[test]
    fn gap_class_is_found() {
        let cert = find_gvs_beats_local_class(GapSearchBounds::default()).unwrap().unwrap();
        assert_eq!(cert.rtd, 2);
        assert!(cert.local_td_one.is_empty());
        assert!(cert.gvs_td.iter().all(|&c| c == Cost::Finite(1)));
    }
}
