//! Exact counting: the number of preference relations on `m` hypotheses
//! and the counting lower bound for powerset classes.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn binomials(m: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for i in 1..=m {
        let prev = &rows[i - 1];
        let mut row = vec![BigUint::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// `C(m) = Σ_k Σ_{t1+…+tk=m} m! / (t1!⋯tk!)`, the number of weak orders.
///
/// Grouping compositions by their first part gives
/// `C(m) = Σ_{t=1}^{m} binom(m, t) · C(m − t)` with `C(0) = 1`, which sums
/// the same terms without listing the `2^(m−1)` compositions.
pub fn count_pref_relations(m: usize) -> BigUint {
    let binom = binomials(m);
    let mut c: Vec<BigUint> = vec![BigUint::one()];
    for i in 1..=m {
        let mut total = BigUint::zero();
        for t in 1..=i {
            total += &binom[i][t] * &c[i - t];
        }
        c.push(total);
    }
    c.swap_remove(m)
}

/// The same double sum evaluated literally, one composition at a time.
/// Exponential in `m`; meant for cross-checking small values.
pub fn count_pref_relations_by_compositions(m: usize) -> Result<BigUint> {
    if m == 0 || m > 24 {
        return Err(Error::input(format!("composition listing supports 1..=24, got {m}")));
    }
    let mut fact = vec![BigUint::one()];
    for i in 1..=m {
        let next = &fact[i - 1] * BigUint::from(i);
        fact.push(next);
    }
    let mut total = BigUint::zero();
    // composition <-> subset of the m-1 cut points
    for cuts in 0u32..(1 << (m - 1)) {
        let mut denom = BigUint::one();
        let mut run = 1;
        for i in 0..m - 1 {
            if cuts >> i & 1 == 1 {
                denom *= &fact[run];
                run = 1;
            } else {
                run += 1;
            }
        }
        denom *= &fact[run];
        total += &fact[m] / denom;
    }
    Ok(total)
}

/// Smallest `k` with `(2d)^(k+1) > 2^d`.
///
/// At most `(2d)^(k+1)` distinct hypotheses are reachable with `k` examples
/// by a collusion-free learner on `{0,1}^d`, so every such learner needs at
/// least this many examples for some target. Evaluated exactly.
pub fn powerset_td_lower_bound(d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::input("d must be positive"));
    }
    let base = BigUint::from(2 * d);
    let target = BigUint::one() << d;
    let exceeds = |k: u64| -> bool { base.pow((k + 1) as u32) > target };
    // k + 1 ≈ d / log2(2d), then correct by exact comparison
    let estimate = (d as f64 / (2.0 * d as f64).log2()).floor() as u64;
    let mut k = estimate.saturating_sub(1);
    while k > 0 && exceeds(k - 1) {
        k -= 1;
    }
    while !exceeds(k) {
        k += 1;
    }
    Ok(k)
}
