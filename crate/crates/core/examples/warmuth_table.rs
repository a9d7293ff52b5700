//! Teaching cost of the five reference learners on the Warmuth class.
//!
//! Each learner starts at h1. Alongside the engine's value, the published
//! teaching sequences are replayed through the simulator.

use teachdim::class::warmuth_class;
use teachdim::engines::td_of_sigma;
use teachdim::fixtures::{warmuth_reference_sigmas, warmuth_sequence};
use teachdim::learner::{run_protocol, TieMode};
use teachdim::TdOptions;

fn main() -> teachdim::Result<()> {
    let class = warmuth_class();
    let h0 = 0;
    println!("{:<8} {:>3}  longest listed sequence", "learner", "TD");
    for (name, sigma) in warmuth_reference_sigmas(&class) {
        let res = td_of_sigma(&class, &sigma, h0, &TdOptions::default())?;
        let mut longest = None;
        for t in 0..class.hypothesis_count() {
            let Some(seq) = warmuth_sequence(&class, name, t) else { continue };
            let traj = run_protocol(&class, &sigma, h0, t, &seq, TieMode::AdversarialAgainst(t))?;
            assert!(traj.terminated, "{name}: listed sequence for {} fails", class.hypothesis_name(t));
            longest = longest.max(Some(seq.len()));
        }
        let longest = longest.map_or("-".to_string(), |l| l.to_string());
        println!("{name:<8} {:>3}  {longest}", res.value);
    }
    Ok(())
}
