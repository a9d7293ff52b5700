//! Collusion-freeness and family membership of learners, with a counterexample.

use teachdim::class::warmuth_class;
use teachdim::fixtures::{colluding_learner, warmuth_reference_sigmas};
use teachdim::preference::{check_family, is_collusion_free, Family, DEFAULT_SPACE_BUDGET};

fn main() -> teachdim::Result<()> {
    let class = warmuth_class();
    for (name, sigma) in warmuth_reference_sigmas(&class) {
        let families: Vec<&str> = Family::ALL
            .iter()
            .filter(|&&f| check_family(&sigma, f, &class, DEFAULT_SPACE_BUDGET).map(|v| v.holds).unwrap_or(false))
            .map(|f| f.name())
            .collect();
        let cf = is_collusion_free(&sigma, &class, 0, DEFAULT_SPACE_BUDGET)?;
        println!("{name:<7} families [{}] collusion-free {}", families.join(", "), cf.holds);
    }

    let (class, sigma, h0) = colluding_learner();
    let v = is_collusion_free(&sigma, &class, h0, DEFAULT_SPACE_BUDGET)?;
    println!("trap learner collusion-free: {}", v.holds);
    if let Some(cx) = v.counterexample {
        println!("  {}", cx.detail);
    }
    Ok(())
}
