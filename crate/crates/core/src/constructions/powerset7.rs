//! A depth-3 preference tree over `{0,1}^7`.
//!
//! The root's first child and its whole subtree follow a published table; the
//! remaining six branches are filled in by [`complete_tree`].

use super::tree::{complete_tree, PreferenceTree};
use crate::bitset::BitSet;
use crate::class::{powerset_class, powerset_index, HypothesisClass, LabeledExample};
use crate::error::Result;

/// `(name, bits, parent name, edge instance, edge label)` for the fixed branch,
/// in the order children are ranked.
const FIXED: &[(&str, &str, &str, usize, bool)] = &[
    ("h1", "1000000", "h0", 0, true),
    ("h8", "1100000", "h1", 1, true),
    ("h9", "1110000", "h1", 2, true),
    ("h10", "1111000", "h1", 3, true),
    ("h11", "1111100", "h1", 4, true),
    ("h12", "1111110", "h1", 5, true),
    ("h13", "1111111", "h1", 6, true),
    ("h44", "1101000", "h8", 3, true),
    ("h45", "1101100", "h8", 4, true),
    ("h46", "1110100", "h8", 2, true),
    ("h47", "1100010", "h8", 5, true),
    ("h48", "1100101", "h8", 6, true),
    ("h79", "1010000", "h9", 1, false),
    ("h80", "1010100", "h9", 4, true),
    ("h81", "1010110", "h9", 5, true),
    ("h82", "1111010", "h9", 3, true),
    ("h83", "1011101", "h9", 6, true),
    ("h114", "1001000", "h10", 1, false),
    ("h115", "1001100", "h10", 4, true),
];

/// The root's other children `h2..h7`: the unit vectors on `x1..x6`.
const UNIT_CHILDREN: usize = 6;

fn index_of(bits: &str) -> usize {
    powerset_index(&bits.bytes().map(|b| b == b'1').collect::<Vec<_>>())
}

/// Names used for the fixed nodes, mapped to binary-order indices.
pub fn powerset7_names() -> Vec<(String, usize)> {
    let mut out = vec![("h0".to_string(), 0)];
    out.extend(FIXED.iter().map(|&(name, bits, ..)| (name.to_string(), index_of(bits))));
    for i in 1..=UNIT_CHILDREN {
        out.push((format!("h{}", i + 1), 1 << (6 - i)));
    }
    out
}

/// Look up a fixed node by name.
pub fn powerset7_node(name: &str) -> Option<usize> {
    powerset7_names().into_iter().find(|(n, _)| n == name).map(|(_, i)| i)
}

/// The class and its depth-3 tree rooted at `0000000`.
pub fn powerset7_tree() -> Result<(HypothesisClass, PreferenceTree)> {
    let class = powerset_class(7)?;
    let m = class.hypothesis_count();
    let mut tree = PreferenceTree::new(m, 0);
    let mut frozen = BitSet::new(m);
    frozen.insert(0);
    for &(_, bits, parent, x, label) in FIXED {
        let p = powerset7_node(parent).expect("parent listed earlier");
        tree.try_add_child(&class, p, index_of(bits), LabeledExample::new(x, label))?;
        frozen.insert(p);
        frozen.insert(index_of(bits));
    }
    for i in 1..=UNIT_CHILDREN {
        let c = 1 << (6 - i);
        tree.try_add_child(&class, 0, c, LabeledExample::new(i, true))?;
    }
    let tree = complete_tree(&class, tree, &frozen, 3)?;
    tree.validate(&class, Some(3))?;
    Ok((class, tree))
}
