//! Teaching cost over a disjoint union can be strictly below the sum.
//!
//! No win-stay learner teaches {0,1}^3 or {0,1}^4 with one example, so each
//! factor costs at least two. Their union is {0,1}^7, where a tree learner
//! needs three.

use teachdim::class::{disjoint_union, powerset_class};
use teachdim::constructions::{
    build_tree, powerset7_tree, tree_to_local_sigma, verify_subadditive, wsls_td_one_matching,
};
use teachdim::engines::td_of_sigma;
use teachdim::TdOptions;

fn main() -> teachdim::Result<()> {
    let opts = TdOptions::default();
    let p3 = powerset_class(3)?;
    let p4 = powerset_class(4)?;
    for p in [&p3, &p4] {
        let none = (0..p.hypothesis_count()).all(|h0| matches!(wsls_td_one_matching(p, h0), Ok(None)));
        println!("powerset({}): one-example win-stay learner exists: {}", p.instance_count(), !none);
    }

    let sa = tree_to_local_sigma(&p3, &build_tree(&p3, 0, 2)?)?;
    let sb = tree_to_local_sigma(&p4, &build_tree(&p4, 0, 3)?)?;
    let cert = verify_subadditive(&p3, &sa, 0, &p4, &sb, 0, &opts)?;
    println!("sum learner: {} <= {} + {}", cert.td_union, cert.td_a, cert.td_b);

    let union = disjoint_union(&p3, &p4)?;
    let (_, tree) = powerset7_tree()?;
    let sigma = tree_to_local_sigma(&union, &tree)?;
    println!("tree learner on the union: {}", td_of_sigma(&union, &sigma, 0, &opts)?.value);
    Ok(())
}
