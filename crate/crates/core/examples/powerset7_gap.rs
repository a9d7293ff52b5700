//! A local learner on {0,1}^7 that needs only three examples, below the
//! no-clash lower bound of four.

use teachdim::constructions::{powerset7_names, powerset7_node, powerset7_tree, tree_to_local_sigma};
use teachdim::engines::{nctd_edge_lower_bound, td_of_sigma};
use teachdim::preference::{check_family, is_collusion_free, Family, DEFAULT_SPACE_BUDGET};
use teachdim::TdOptions;

fn main() -> teachdim::Result<()> {
    let (class, tree) = powerset7_tree()?;
    let sigma = tree_to_local_sigma(&class, &tree)?;
    println!("{} hypotheses, tree depth {}", tree.node_count(), tree.depth());

    for (name, _) in powerset7_names().iter().take(8) {
        let h = powerset7_node(name).expect("named node");
        let seq = tree.sequence(h).expect("in tree");
        let zs: Vec<String> = seq.iter().map(|z| z.to_string()).collect();
        println!("  {name:<4} {}  {}", class.row_string(h), zs.join(" "));
    }

    let td = td_of_sigma(&class, &sigma, tree.root, &TdOptions::default())?;
    println!("TD from the root: {}", td.value);
    for f in [Family::Local, Family::Wsls] {
        println!("{}: {}", f.name(), check_family(&sigma, f, &class, DEFAULT_SPACE_BUDGET)?.holds);
    }
    println!("collusion-free: {}", is_collusion_free(&sigma, &class, tree.root, DEFAULT_SPACE_BUDGET)?.holds);
    println!("NCTD is at least {}", nctd_edge_lower_bound(&class));
    Ok(())
}
