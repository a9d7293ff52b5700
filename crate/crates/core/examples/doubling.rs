//! Double a local learner from {0,1}^k to {0,1}^2k, starting from the star on
//! one instance, and watch the teaching cost at most double.

use teachdim::class::powerset_class;
use teachdim::constructions::{double_sigma, star_tree, tree_to_local_sigma};
use teachdim::engines::td_of_sigma;
use teachdim::TdOptions;

fn main() -> teachdim::Result<()> {
    let mut class = powerset_class(1)?;
    let mut sigma = tree_to_local_sigma(&class, &star_tree(&class)?)?;
    let opts = TdOptions::default();
    println!("k=1: TD {}", td_of_sigma(&class, &sigma, 0, &opts)?.value);
    for _ in 0..2 {
        (class, sigma) = double_sigma(&class, &sigma)?;
        let td = td_of_sigma(&class, &sigma, 0, &opts)?;
        println!("k={}: TD {}", class.instance_count(), td.value);
    }
    Ok(())
}
