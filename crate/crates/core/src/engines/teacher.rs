use super::classical::{is_nonclashing, TeacherMapping};
use crate::class::HypothesisClass;
use crate::error::{Error, Result};
use crate::preference::{PatternEntry, PreferenceFunction, VersionSpacePattern};

/// A version-space learner that is taught each `h` by the set `T(h)`.
///
/// `σ(h; H, ·) = 0` whenever `h ∈ H ⊆ H(T(h))`, and 1 otherwise. On
/// realizable spaces those are exactly the `H(S)` with `T(h) ⊆ S` and `S`
/// consistent with `h`. Non-clashing guarantees no two hypotheses share rank 0
/// on such a space, so `T(h)` in any order ends with the learner on `h`.
pub fn sigma_from_teacher(class: &HypothesisClass, mapping: &TeacherMapping) -> Result<PreferenceFunction> {
    let verdict = is_nonclashing(class, mapping)?;
    if let Some(cx) = verdict.counterexample {
        return Err(Error::Precondition(format!("teacher mapping clashes: {}", cx.detail)));
    }
    let m = class.hypothesis_count();
    let mut entries = Vec::with_capacity(m);
    for (h, set) in mapping.sets.iter().enumerate() {
        let mut optional = class.version_space(set)?;
        optional.remove(h);
        let pattern = VersionSpacePattern::new(crate::bitset::BitSet::singleton(m, h), optional)?;
        entries.push(PatternEntry::sparse(m, None, pattern, &[(h, 0)]));
    }
    PreferenceFunction::build_gvs(class, entries, 1)
}
