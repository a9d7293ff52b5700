//! Preference trees: a root, ordered children, and one labeled example per
//! edge. Compiled into a local preference function whose learner walks the
//! tree one edge per example.

use crate::bitset::BitSet;
use crate::class::{HypothesisClass, LabeledExample, TeachingSequence};
use crate::error::{Error, Result};
use crate::preference::{PreferenceFunction, Rank};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceTree {
    pub root: usize,
    /// `children[v]` in preference order, each with the example that selects it.
    pub children: Vec<Vec<(usize, LabeledExample)>>,
    parent: Vec<Option<usize>>,
    placed: BitSet,
}

impl PreferenceTree {
    /// A tree holding only `root` over `m` hypotheses.
    pub fn new(m: usize, root: usize) -> Self {
        let mut placed = BitSet::new(m);
        placed.insert(root);
        PreferenceTree {
            root,
            children: vec![Vec::new(); m],
            parent: vec![None; m],
            placed,
        }
    }

    pub fn hypothesis_count(&self) -> usize {
        self.children.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.placed.contains(h)
    }

    pub fn node_count(&self) -> usize {
        self.placed.count()
    }

    pub fn parent(&self, h: usize) -> Option<usize> {
        self.parent[h]
    }

    /// Edges from the root down to `h`; `None` if `h` is not in the tree.
    pub fn sequence(&self, h: usize) -> Option<TeachingSequence> {
        if !self.contains(h) {
            return None;
        }
        let mut seq = Vec::new();
        let mut v = h;
        while let Some(p) = self.parent[v] {
            let (_, z) = self.children[p].iter().find(|(c, _)| *c == v).expect("parent lists child");
            seq.push(*z);
            v = p;
        }
        seq.reverse();
        Some(seq)
    }

    pub fn depth_of(&self, h: usize) -> Option<usize> {
        self.sequence(h).map(|s| s.len())
    }

    pub fn depth(&self) -> usize {
        self.placed.iter().filter_map(|h| self.depth_of(h)).max().unwrap_or(0)
    }

    /// Nodes at exactly depth `d`, in breadth-first order.
    pub fn level(&self, d: usize) -> Vec<usize> {
        let mut frontier = vec![self.root];
        for _ in 0..d {
            frontier = frontier
                .iter()
                .flat_map(|&v| self.children[v].iter().map(|(c, _)| *c))
                .collect();
        }
        frontier
    }

    /// Append `child` under `parent`, selected by `edge`, if that keeps the
    /// walk well defined: the child survives the parent's path plus `edge`,
    /// while the parent and all earlier siblings do not.
    pub fn try_add_child(
        &mut self,
        class: &HypothesisClass,
        parent: usize,
        child: usize,
        edge: LabeledExample,
    ) -> Result<()> {
        class.check_hypothesis(child)?;
        class.check_example(&edge)?;
        if !self.contains(parent) {
            return Err(Error::input(format!("{} is not in the tree", class.hypothesis_name(parent))));
        }
        if self.contains(child) {
            return Err(Error::input(format!("{} is already in the tree", class.hypothesis_name(child))));
        }
        let mut path = self.sequence(parent).expect("parent placed");
        path.push(edge);
        if !class.consistent(child, &path)? {
            return Err(Error::input(format!(
                "{} is inconsistent with its path {}",
                class.hypothesis_name(child),
                show(&path)
            )));
        }
        let blocked = std::iter::once(parent).chain(self.children[parent].iter().map(|(c, _)| *c));
        for g in blocked {
            if class.consistent(g, &[edge])? {
                return Err(Error::input(format!(
                    "edge {edge} to {} does not rule out {}",
                    class.hypothesis_name(child),
                    class.hypothesis_name(g)
                )));
            }
        }
        self.children[parent].push((child, edge));
        self.parent[child] = Some(parent);
        self.placed.insert(child);
        Ok(())
    }

    /// Full structural check: covers the class, every edge valid, depth bound.
    pub fn validate(&self, class: &HypothesisClass, max_depth: Option<usize>) -> Result<()> {
        let m = class.hypothesis_count();
        if self.hypothesis_count() != m {
            return Err(Error::input(format!("tree over {} hypotheses, class has {m}", self.hypothesis_count())));
        }
        let mut rebuilt = PreferenceTree::new(m, self.root);
        let mut queue = std::collections::VecDeque::from([self.root]);
        while let Some(v) = queue.pop_front() {
            for &(c, z) in &self.children[v] {
                rebuilt.try_add_child(class, v, c, z)?;
                queue.push_back(c);
            }
        }
        if let Some(h) = (0..m).find(|&h| !rebuilt.contains(h)) {
            return Err(Error::input(format!("tree does not cover {}", class.hypothesis_name(h))));
        }
        if let Some(d) = max_depth {
            if rebuilt.depth() > d {
                return Err(Error::input(format!("tree depth {} exceeds {d}", rebuilt.depth())));
            }
        }
        Ok(())
    }
}

fn show(seq: &[LabeledExample]) -> String {
    let parts: Vec<String> = seq.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// `σ(h; ·, h) = 0`, the children of `h` ranked `1..=deg` in order, everything
/// else `|H| − 1`.
pub fn tree_to_local_sigma(class: &HypothesisClass, tree: &PreferenceTree) -> Result<PreferenceFunction> {
    tree.validate(class, None)?;
    let m = class.hypothesis_count();
    let far = m.saturating_sub(1) as Rank;
    let matrix = (0..m)
        .map(|h| {
            let mut row = vec![far; m];
            row[h] = 0;
            for (i, (c, _)) in tree.children[h].iter().enumerate() {
                row[*c] = i as Rank + 1;
            }
            row
        })
        .collect();
    PreferenceFunction::build_local_table(class, matrix)
}

/// Fill in every hypothesis not yet placed, level by level up to `max_depth`.
///
/// Only childless nodes outside `frozen` receive children. A node `v` offers
/// one slot per instance `k` off its path; hypothesis `c` fits the slot when it
/// is consistent with `v`'s path, disagrees with `v` on `x_k`, and agrees with
/// `v` on every off-path instance after `k` in `order`. Slots are filled in
/// that order, so each earlier sibling still agrees with `v` on `x_k` and the
/// edge `(x_k, c(x_k))` rules it out. Each level is a maximum bipartite
/// matching.
pub fn complete_tree(
    class: &HypothesisClass,
    tree: PreferenceTree,
    frozen: &BitSet,
    max_depth: usize,
) -> Result<PreferenceTree> {
    let order: Vec<usize> = (0..class.instance_count()).collect();
    complete_tree_in_order(class, tree, frozen, max_depth, &order)
}

/// [`complete_tree`] with the slot order given as a permutation of instances.
pub fn complete_tree_in_order(
    class: &HypothesisClass,
    mut tree: PreferenceTree,
    frozen: &BitSet,
    max_depth: usize,
    order: &[usize],
) -> Result<PreferenceTree> {
    let m = class.hypothesis_count();
    let n = class.instance_count();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(Error::input("slot order must be a permutation of the instances"));
    }
    for d in 1..=max_depth {
        let mut slots: Vec<(usize, usize)> = Vec::new();
        for v in tree.level(d - 1) {
            if frozen.contains(v) {
                continue;
            }
            if !tree.children[v].is_empty() {
                return Err(Error::input(format!(
                    "{} already has children; freeze it or leave it empty",
                    class.hypothesis_name(v)
                )));
            }
            let path = tree.sequence(v).expect("placed");
            for &k in order {
                if path.iter().all(|z| z.instance != k) {
                    slots.push((v, k));
                }
            }
        }
        let unplaced: Vec<usize> = (0..m).filter(|&h| !tree.contains(h)).collect();
        if unplaced.is_empty() {
            break;
        }
        let fits = |v: usize, k: usize, c: usize| -> bool {
            let path = tree.sequence(v).expect("placed");
            let after = order.iter().skip_while(|&&x| x != k).skip(1);
            class.label(c, k) != class.label(v, k)
                && path.iter().all(|z| class.label(c, z.instance) == z.label)
                && after
                    .filter(|&&x| path.iter().all(|z| z.instance != x))
                    .all(|&x| class.label(c, x) == class.label(v, x))
        };
        let adj: Vec<Vec<usize>> = slots
            .iter()
            .map(|&(v, k)| (0..unplaced.len()).filter(|&i| fits(v, k, unplaced[i])).collect())
            .collect();
        let matched = max_matching(&adj, unplaced.len());
        for (s, &(v, k)) in slots.iter().enumerate() {
            if let Some(i) = matched[s] {
                let c = unplaced[i];
                tree.try_add_child(class, v, c, class.example_of(c, k))?;
            }
        }
    }
    if let Some(h) = (0..m).find(|&h| !tree.contains(h)) {
        return Err(Error::Resource(format!(
            "could not place {} within depth {max_depth}",
            class.hypothesis_name(h)
        )));
    }
    Ok(tree)
}

/// Kuhn's augmenting paths. `adj[s]` lists the right vertices slot `s` accepts;
/// returns the right vertex matched to each slot.
fn max_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(s: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &adj[s] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|o| augment(o, adj, seen, owner)) {
                owner[r] = Some(s);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for s in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(s, adj, &mut seen, &mut owner);
    }
    let mut out = vec![None; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(s) = o {
            out[*s] = Some(r);
        }
    }
    out
}

/// A tree over the whole class rooted at `root`, no deeper than `max_depth`.
///
/// Tries slot orders in lexicographic permutation order (all of them for up
/// to 7 instances, otherwise only the identity).
pub fn build_tree(class: &HypothesisClass, root: usize, max_depth: usize) -> Result<PreferenceTree> {
    class.check_hypothesis(root)?;
    let m = class.hypothesis_count();
    let n = class.instance_count();
    let mut order: Vec<usize> = (0..n).collect();
    let first = complete_tree_in_order(class, PreferenceTree::new(m, root), &BitSet::new(m), max_depth, &order);
    if first.is_ok() || n > 7 {
        return first;
    }
    while next_permutation(&mut order) {
        let t = complete_tree_in_order(class, PreferenceTree::new(m, root), &BitSet::new(m), max_depth, &order);
        if t.is_ok() {
            return t;
        }
    }
    first
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Root `0` with the single child `1`, for the two-hypothesis powerset.
pub fn star_tree(class: &HypothesisClass) -> Result<PreferenceTree> {
    if class.hypothesis_count() != 2 {
        return Err(Error::input("the star tree needs exactly two hypotheses"));
    }
    let x = class
        .disagreement(0, 1)
        .first()
        .ok_or_else(|| Error::input("the two hypotheses are identical"))?;
    let mut t = PreferenceTree::new(2, 0);
    t.try_add_child(class, 0, 1, class.example_of(1, x))?;
    Ok(t)
}
