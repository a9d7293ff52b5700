//! Explicit preference functions with known teaching cost.

mod doubling;
mod gap_search;
mod powerset7;
mod tree;
mod union;

pub use doubling::{double_sigma, normalized_local_matrix, pivots};
pub use gap_search::{
    find_gvs_beats_local_class, local_td_one_row, wsls_td_one_matching, GapCertificate, GapSearchBounds,
};
pub use powerset7::{powerset7_names, powerset7_node, powerset7_tree};
pub use tree::{build_tree, complete_tree, complete_tree_in_order, star_tree, tree_to_local_sigma, PreferenceTree};
pub use union::{
    verify_subadditive, wsls_disjoint_union_sigma, wsls_disjoint_union_sigma_unchecked, SubadditivityCertificate,
};

use crate::class::HypothesisClass;
use crate::error::Result;
use crate::preference::{PreferenceFunction, Rank};

/// A global function ranking hypotheses by `ranks` (lower is preferred).
pub fn order_to_global_sigma(class: &HypothesisClass, ranks: &[Rank]) -> Result<PreferenceFunction> {
    PreferenceFunction::build_global(class, ranks.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{chain_class, warmuth_class};
    use crate::engines::{rtd, td_of_sigma, TdOptions};

    #[test]
    fn orders() {
        let o = TdOptions::default();
        let c = chain_class();
        let ones: Vec<Rank> = (0..4).map(|h| c.row(h).count() as Rank).collect();
        let s = order_to_global_sigma(&c, &ones).unwrap();
        assert_eq!(td_of_sigma(&c, &s, 0, &o).unwrap().value.finite(), Some(1));

        let w = warmuth_class();
        let s = order_to_global_sigma(&w, &(0..10).collect::<Vec<_>>()).unwrap();
        let td = td_of_sigma(&w, &s, 0, &o).unwrap().value.finite().unwrap();
        assert!(td >= rtd(&w).int().unwrap());
        assert!(order_to_global_sigma(&w, &[0, 1]).is_err());
    }
}
