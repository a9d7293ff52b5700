//! Step a learner through a teaching sequence and print each move.

use teachdim::class::warmuth_class;
use teachdim::fixtures::{example, warmuth_const, warmuth_local};
use teachdim::learner::{run_protocol, TieMode};

fn main() -> teachdim::Result<()> {
    let class = warmuth_class();
    let (h1, h3) = (0, 2);

    // the constant learner needs three examples to pin down h1
    let sigma = warmuth_const(&class);
    let seq = [example(0, 1), example(1, 1), example(3, 0)];
    let traj = run_protocol(&class, &sigma, h1, h1, &seq, TieMode::AdversarialAgainst(h1))?;
    println!("const learner, target h1:");
    print!("{}", traj.dump(&class));

    // the Hamming learner walks to a nearby hypothesis first
    let sigma = warmuth_local(&class);
    let seq = [example(2, 1), example(3, 1)];
    let traj = run_protocol(&class, &sigma, h1, h3, &seq, TieMode::LowestIndex)?;
    println!("local learner, target h3:");
    print!("{}", traj.dump(&class));
    println!("terminated: {}", traj.terminated);
    Ok(())
}
