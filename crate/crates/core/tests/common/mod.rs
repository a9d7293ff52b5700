//! Test-only oracles, written against the definitions rather than the engines.
//!
//! Version spaces are plain `u64` masks here so nothing is shared with the
//! library's search code beyond evaluating `σ` itself.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teachdim::class::LabeledExample;
use teachdim::preference::PreferenceFunction;
use teachdim::{BitSet, HypothesisClass};

pub type Mask = u64;

pub fn full_mask(class: &HypothesisClass) -> Mask {
    let m = class.hypothesis_count();
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

pub fn agree(class: &HypothesisClass, x: usize, label: bool) -> Mask {
    (0..class.hypothesis_count())
        .filter(|&h| class.label(h, x) == label)
        .fold(0, |acc, h| acc | 1 << h)
}

pub fn to_bitset(class: &HypothesisClass, mask: Mask) -> BitSet {
    let m = class.hypothesis_count();
    BitSet::from_indices(m, (0..m).filter(|&h| mask >> h & 1 == 1))
}

pub fn members(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&h| mask >> h & 1 == 1)
}

/// Hypotheses in `space` agreeing with `h` on every instance in `xs`.
pub fn agreeing_on(class: &HypothesisClass, space: Mask, h: usize, xs: &[usize]) -> Mask {
    members(space)
        .filter(|&g| xs.iter().all(|&x| class.label(g, x) == class.label(h, x)))
        .fold(0, |acc, g| acc | 1 << g)
}

fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0..1usize << n)
        .map(|s| (0..n).filter(|&x| s >> x & 1 == 1).collect())
        .collect();
    all.sort_by_key(Vec::len);
    all
}

/// Smallest number of `h`-labeled examples leaving only `h` in `space`.
pub fn teaching_set_size(class: &HypothesisClass, space: Mask, h: usize) -> usize {
    subsets_by_size(class.instance_count())
        .into_iter()
        .find(|xs| agreeing_on(class, space, h, xs) == 1 << h)
        .map(|xs| xs.len())
        .expect("rows are distinct")
}

pub fn wc_td(class: &HypothesisClass) -> usize {
    let full = full_mask(class);
    (0..class.hypothesis_count())
        .map(|h| teaching_set_size(class, full, h))
        .max()
        .unwrap_or(0)
}

/// Minimum over all orderings of the hypotheses of the largest teaching set
/// of each one among those not yet removed, as a DP over remaining sets.
pub fn rtd_by_orderings(class: &HypothesisClass) -> usize {
    let m = class.hypothesis_count();
    let mut best = vec![usize::MAX; 1 << m];
    best[0] = 0;
    for rest in 1..1usize << m {
        let rest_mask = rest as Mask;
        best[rest] = members(rest_mask)
            .map(|h| teaching_set_size(class, rest_mask, h).max(best[rest & !(1 << h)]))
            .min()
            .expect("nonempty");
    }
    best[(1 << m) - 1]
}

pub fn vcd(class: &HypothesisClass) -> usize {
    subsets_by_size(class.instance_count())
        .into_iter()
        .filter(|xs| {
            let mut seen = std::collections::HashSet::new();
            for h in 0..class.hypothesis_count() {
                seen.insert(xs.iter().map(|&x| class.label(h, x)).collect::<Vec<_>>());
            }
            seen.len() == 1 << xs.len()
        })
        .map(|xs| xs.len())
        .max()
        .unwrap_or(0)
}

pub fn is_nonclashing(class: &HypothesisClass, sets: &[Vec<LabeledExample>]) -> bool {
    let consistent = |h: usize, s: &[LabeledExample]| s.iter().all(|z| class.label(h, z.instance) == z.label);
    let m = class.hypothesis_count();
    (0..m).all(|a| (a + 1..m).all(|b| !(consistent(b, &sets[a]) && consistent(a, &sets[b]))))
}

/// Every dense rank vector over `m` items, one per weak order.
pub fn weak_orders_brute(m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = m.pow(m as u32);
    for code in 0..total.max(1) {
        let mut c = code;
        let v: Vec<i64> = (0..m)
            .map(|_| {
                let r = c % m;
                c /= m;
                r as i64
            })
            .collect();
        let top = v.iter().copied().max().unwrap_or(-1);
        if (0..=top).all(|r| v.contains(&r)) {
            out.push(v);
        }
    }
    out
}

/// The learner's candidates in `space` from current hypothesis `h`.
pub fn argmin(class: &HypothesisClass, sigma: &PreferenceFunction, space: Mask, h: usize) -> Mask {
    let vs = to_bitset(class, space);
    let ranked: Vec<(usize, i64)> = members(space).map(|g| (g, sigma.rank(class, g, &vs, h))).collect();
    let best = ranked.iter().map(|&(_, r)| r).min().expect("nonempty");
    ranked
        .iter()
        .filter(|&&(_, r)| r == best)
        .fold(0, |acc, &(g, _)| acc | 1 << g)
}

/// Straight-line minimax: can the teacher force `target` within `budget`
/// more examples, whatever candidate the learner picks?
pub struct Minimax<'a> {
    class: &'a HypothesisClass,
    sigma: &'a PreferenceFunction,
    target: usize,
    memo: HashMap<(Mask, usize, usize), bool>,
}

impl<'a> Minimax<'a> {
    pub fn new(class: &'a HypothesisClass, sigma: &'a PreferenceFunction, target: usize) -> Self {
        Minimax {
            class,
            sigma,
            target,
            memo: HashMap::new(),
        }
    }

    fn examples(&self) -> Vec<(usize, bool)> {
        (0..self.class.instance_count())
            .map(|x| (x, self.class.label(self.target, x)))
            .collect()
    }

    /// One forced step: every candidate after `z` must then finish in `budget`.
    fn step_wins(&mut self, space: Mask, h: usize, budget: usize) -> bool {
        for (x, y) in self.examples() {
            let next = space & agree(self.class, x, y);
            let cands = argmin(self.class, self.sigma, next, h);
            if members(cands).all(|c| self.within(next, c, budget)) {
                return true;
            }
        }
        false
    }

    pub fn within(&mut self, space: Mask, h: usize, budget: usize) -> bool {
        if h == self.target {
            return true;
        }
        if budget == 0 {
            return false;
        }
        if let Some(&v) = self.memo.get(&(space, h, budget)) {
            return v;
        }
        let v = self.step_wins(space, h, budget - 1);
        self.memo.insert((space, h, budget), v);
        v
    }

    /// Shortest forced horizon from `(H, h0)`, or `None` if none exists.
    /// With `reteach`, a target equal to `h0` still needs one example.
    pub fn horizon(&mut self, h0: usize, reteach: bool) -> Option<usize> {
        let full = full_mask(self.class);
        let m = self.class.hypothesis_count();
        if h0 == self.target && (!reteach || m == 1) {
            return Some(0);
        }
        // an optimal line never repeats a state, so this many steps suffice
        let cap = m * 3usize.pow(self.class.instance_count() as u32) + 1;
        (1..=cap).find(|&l| self.step_wins(full, h0, l - 1))
    }
}

/// `TD(σ)` from `h0` by the straight-line oracle (targets equal to `h0` retaught).
pub fn td_oracle(class: &HypothesisClass, sigma: &PreferenceFunction, h0: usize) -> Option<usize> {
    let mut worst = 0;
    for t in 0..class.hypothesis_count() {
        worst = worst.max(Minimax::new(class, sigma, t).horizon(h0, true)?);
    }
    Some(worst)
}

/// A class with distinct random rows.
pub fn random_class(rng: &mut ChaCha8Rng, n: usize, m: usize) -> HypothesisClass {
    assert!(m <= 1 << n);
    let mut rows: Vec<usize> = (0..1usize << n).collect();
    for i in 0..m {
        let j = rng.gen_range(i..rows.len());
        rows.swap(i, j);
    }
    let labels = rows[..m]
        .iter()
        .map(|&r| (0..n).map(|x| r >> x & 1 == 1).collect())
        .collect();
    HypothesisClass::new(n, labels).expect("distinct rows")
}

/// The randomized corpus: `count` classes with `n ≤ max_n` and `m ≤ max_m`.
pub fn corpus(seed: u64, count: usize, max_n: usize, max_m: usize) -> Vec<HypothesisClass> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let m = rng.gen_range(1..=max_m.min(1 << n));
            random_class(&mut rng, n, m)
        })
        .collect()
}
