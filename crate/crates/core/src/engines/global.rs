//! Best global preference function by exhaustive search over weak orders.

use rayon::prelude::*;

use super::{count_pref_relations, td_of_sigma, Cost, DimensionResult, TdOptions, Witness};
use crate::class::HypothesisClass;
use crate::error::{Error, Result};
use crate::preference::PreferenceFunction;

/// Largest class for which [`sigma_td_global`] enumerates.
pub const MAX_GLOBAL_ENUMERATION: usize = 7;

/// Every weak order on `m` elements as a rank vector with ranks `0..k`
/// (each rank used), i.e. every ordered set partition.
pub fn weak_orders(m: usize) -> Vec<Vec<i64>> {
    fn go(remaining: u32, level: i64, ranks: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            out.push(ranks.clone());
            return;
        }
        // every nonempty subset of `remaining` takes the next rank
        let mut s = remaining;
        while s != 0 {
            for (i, r) in ranks.iter_mut().enumerate() {
                if s >> i & 1 == 1 {
                    *r = level;
                }
            }
            go(remaining & !s, level + 1, ranks, out);
            s = (s - 1) & remaining;
        }
    }
    assert!(m < 32, "weak orders on {m} elements cannot be listed");
    let mut out = Vec::new();
    if m == 0 {
        return vec![vec![]];
    }
    go((1u32 << m) - 1, 0, &mut vec![0; m], &mut out);
    out
}

/// `min_σ TD(σ)` over all global σ, one per weak order on the hypotheses.
pub fn sigma_td_global(class: &HypothesisClass, h0: usize, opts: &TdOptions) -> Result<DimensionResult> {
    let m = class.hypothesis_count();
    class.check_hypothesis(h0)?;
    if m > MAX_GLOBAL_ENUMERATION {
        return Err(Error::Resource(format!(
            "{m} hypotheses exceeds the weak-order enumeration cap of {MAX_GLOBAL_ENUMERATION}; \
             RTD gives the same value"
        )));
    }
    let orders = weak_orders(m);
    let expected = count_pref_relations(m);
    assert_eq!(
        num_bigint::BigUint::from(orders.len()),
        expected,
        "weak-order enumeration disagrees with the closed-form count"
    );
    let inner = TdOptions {
        parallel: false,
        ..opts.clone()
    };
    let values: Vec<Cost> = orders
        .par_iter()
        .map(|ranks| {
            let sigma = PreferenceFunction::build_global(class, ranks.clone())?;
            Ok(td_of_sigma(class, &sigma, h0, &inner)?.value)
        })
        .collect::<Result<_>>()?;
    let (best, value) = values
        .iter()
        .enumerate()
        .min_by_key(|&(i, v)| (*v, i))
        .expect("at least one order");
    Ok(DimensionResult {
        measure: "sigma-td-global".into(),
        value: *value,
        bound_kind: super::BoundKind::Exact,
        witness: Witness::Ranks(orders[best].clone()),
    })
}
