//! From a local preference function on `{0,1}^k` to one on `{0,1}^(2k)`
//! costing at most twice as many examples.

use crate::class::{powerset_class, HypothesisClass};
use crate::error::{Error, Result};
use crate::preference::{check_family, Family, PreferenceFunction, Rank, DEFAULT_SPACE_BUDGET};

/// The rank matrix `M[h][h′] = σ(h′; ·, h)` of a local function, after checking
/// it is local and wsls with `M[h][h] = 0` and off-diagonal ranks in
/// `1..=|H| − 1`.
pub fn normalized_local_matrix(class: &HypothesisClass, sigma: &PreferenceFunction) -> Result<Vec<Vec<Rank>>> {
    for family in [Family::Local, Family::Wsls] {
        let v = check_family(sigma, family, class, DEFAULT_SPACE_BUDGET)?;
        if let Some(cx) = v.counterexample {
            return Err(Error::Precondition(format!("input is not {family}: {}", cx.detail)));
        }
    }
    let m = class.hypothesis_count();
    let full = class.full();
    let top = m as Rank - 1;
    let mut matrix = vec![vec![0; m]; m];
    for (h, row) in matrix.iter_mut().enumerate() {
        for (hp, cell) in row.iter_mut().enumerate() {
            let r = sigma.rank(class, hp, &full, h);
            let ok = if h == hp { r == 0 } else { (1..=top).contains(&r) };
            if !ok {
                return Err(Error::Precondition(format!(
                    "rank of {} from {} is {r}, outside the normalized range",
                    class.hypothesis_name(hp),
                    class.hypothesis_name(h)
                )));
            }
            *cell = r;
        }
    }
    Ok(matrix)
}

/// Pivot indices of `{0,1}^(2k)`: rows whose last `k` labels are zero.
pub fn pivots(k: usize) -> Vec<usize> {
    (0..1usize << k).map(|a| a << k).collect()
}

/// Build `σ_2k` over `powerset(2k)` from `σ_k` over `powerset(k)`.
///
/// Hypothesis `(a, b)` has first half `a` and second half `b`, index
/// `a · 2^k + b`. Every off-diagonal rank starts at `4^k − 1`; pivots `(a, 0)`
/// rank each other by `σ_k` on the first half; within a group sharing `a`,
/// ranks are `σ_k` on the second half plus `2^k`.
pub fn double_sigma(
    class_k: &HypothesisClass,
    sigma_k: &PreferenceFunction,
) -> Result<(HypothesisClass, PreferenceFunction)> {
    let k = class_k.instance_count();
    let reference = powerset_class(k)?;
    if class_k.hypothesis_count() != reference.hypothesis_count()
        || (0..reference.hypothesis_count()).any(|h| class_k.row(h) != reference.row(h))
    {
        return Err(Error::Precondition(format!("input class is not powerset({k}) in binary order")));
    }
    let mk = class_k.hypothesis_count();
    let small = normalized_local_matrix(class_k, sigma_k)?;
    let class = powerset_class(2 * k)?;
    let m = class.hypothesis_count();
    let mut big = vec![vec![m as Rank - 1; m]; m];
    for (h, row) in big.iter_mut().enumerate() {
        row[h] = 0;
    }
    for a in 0..mk {
        for ap in 0..mk {
            big[a * mk][ap * mk] = small[a][ap];
        }
    }
    for a in 0..mk {
        for b in 0..mk {
            for bp in 0..mk {
                if b != bp {
                    big[a * mk + b][a * mk + bp] = small[b][bp] + mk as Rank;
                }
            }
        }
    }
    let sigma = PreferenceFunction::build_local_table(&class, big)?;
    normalized_local_matrix(&class, &sigma)?;
    Ok((class, sigma))
}
