//! Number of global preference orders on m hypotheses, and the exact lower
//! bound on teaching {0,1}^d collusion-free.

use teachdim::engines::{count_pref_relations, powerset_td_lower_bound};

fn main() -> teachdim::Result<()> {
    for m in 1..=10 {
        println!("C({m}) = {}", count_pref_relations(m));
    }
    for d in [7u64, 64, 1_000, 1_000_000] {
        println!("d = {d}: at least {} examples", powerset_td_lower_bound(d)?);
    }
    Ok(())
}
