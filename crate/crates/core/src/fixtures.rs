//! Named fixtures: the Warmuth class with its five reference preference
//! functions and teaching sequences, and a hand-built colluding learner.

use crate::bitset::BitSet;
use crate::class::{HypothesisClass, LabeledExample, TeachingSequence};
use crate::preference::{PatternEntry, PreferenceFunction, VersionSpacePattern};

/// Zero-based hypothesis index of Warmuth `h<i>`.
const fn w(i: usize) -> usize {
    i - 1
}

/// `σ_const ≡ 0`.
pub fn warmuth_const(class: &HypothesisClass) -> PreferenceFunction {
    PreferenceFunction::build_const(class)
}

/// The global reference function assigns every hypothesis rank 0.
pub fn warmuth_global(class: &HypothesisClass) -> PreferenceFunction {
    PreferenceFunction::build_global(class, vec![0; class.hypothesis_count()])
        .expect("ten ranks for ten hypotheses")
}

/// Pairs `{h_i, partner}` whose exact version space makes `h_i` preferred.
const GVS_PARTNERS: [(usize, usize); 10] = [
    (1, 6),
    (2, 7),
    (3, 8),
    (4, 9),
    (5, 10),
    (6, 9),
    (7, 10),
    (8, 6),
    (9, 7),
    (10, 8),
];

/// `σ_gvs(h_i; H, ·) = 0` for `H = {h_i, partner}` and `H = {h_i}`, else 1.
pub fn warmuth_gvs(class: &HypothesisClass) -> PreferenceFunction {
    let m = class.hypothesis_count();
    let mut entries = Vec::new();
    for (i, p) in GVS_PARTNERS {
        for members in [vec![w(i), w(p)], vec![w(i)]] {
            entries.push(PatternEntry::sparse(
                m,
                None,
                VersionSpacePattern::exact(BitSet::from_indices(m, members)),
                &[(w(i), 0)],
            ));
        }
    }
    PreferenceFunction::build_gvs(class, entries, 1).expect("fixture is well formed")
}

/// Hamming distance to the current hypothesis.
pub fn warmuth_local(class: &HypothesisClass) -> PreferenceFunction {
    PreferenceFunction::build_local_hamming(class)
}

/// Optional members of the `h_i` pattern: `H = {h_i} ∪ S` for any `S ⊆ LVS_OPTIONAL[i]`.
const LVS_OPTIONAL: [[usize; 4]; 10] = [
    [5, 6, 8, 10],
    [1, 7, 6, 9],
    [2, 7, 8, 10],
    [3, 6, 8, 9],
    [4, 7, 9, 10],
    [1, 4, 5, 9],
    [1, 2, 5, 10],
    [1, 2, 3, 6],
    [2, 3, 4, 7],
    [3, 4, 5, 8],
];

/// `σ_lvs(h_i; H, h) = 0` when `H` matches the `h_i` pattern and `h ∈ {h1, h_i}`, else 1.
pub fn warmuth_lvs(class: &HypothesisClass) -> PreferenceFunction {
    let m = class.hypothesis_count();
    let mut entries = Vec::new();
    for (k, optional) in LVS_OPTIONAL.iter().enumerate() {
        let i = k + 1;
        let optional: Vec<usize> = optional.iter().map(|&j| w(j)).collect();
        let pattern = VersionSpacePattern::from_indices(m, &[w(i)], &optional)
            .expect("fixture is well formed");
        let mut currents = vec![w(1)];
        if i != 1 {
            currents.push(w(i));
        }
        for c in currents {
            entries.push(PatternEntry::sparse(m, Some(c), pattern.clone(), &[(w(i), 0)]));
        }
    }
    PreferenceFunction::build_lvs(class, entries, 1).expect("fixture is well formed")
}

/// Reference preference functions in table order: const, global, gvs, local, lvs.
pub fn warmuth_reference_sigmas(class: &HypothesisClass) -> Vec<(&'static str, PreferenceFunction)> {
    vec![
        ("const", warmuth_const(class)),
        ("global", warmuth_global(class)),
        ("gvs", warmuth_gvs(class)),
        ("local", warmuth_local(class)),
        ("lvs", warmuth_lvs(class)),
    ]
}

/// Published optimal teaching sequences as 1-based instance numbers, per family
/// (const, gvs, local, lvs), for targets `h1..h10`. Labels come from the target.
pub const WARMUTH_SEQUENCES: [(&str, [&[usize]; 10]); 4] = [
    (
        "const",
        [
            &[1, 2, 4],
            &[2, 3, 5],
            &[1, 3, 4],
            &[2, 4, 5],
            &[1, 3, 5],
            &[1, 2, 4],
            &[2, 3, 5],
            &[1, 3, 4],
            &[2, 4, 5],
            &[1, 3, 5],
        ],
    ),
    (
        "gvs",
        [
            &[1, 2],
            &[2, 3],
            &[3, 4],
            &[4, 5],
            &[1, 5],
            &[2, 4],
            &[3, 5],
            &[1, 4],
            &[2, 5],
            &[1, 3],
        ],
    ),
    (
        "local",
        [
            &[1],
            &[3],
            &[3, 4],
            &[5, 4],
            &[5],
            &[4],
            &[3, 5],
            &[4, 3],
            &[4, 5],
            &[5, 3],
        ],
    ),
    (
        "lvs",
        [&[1], &[2], &[3], &[4], &[5], &[3], &[4], &[5], &[1], &[2]],
    ),
];

/// The published sequence of `family` for zero-based target `t`, labeled by `t`.
pub fn warmuth_sequence(class: &HypothesisClass, family: &str, t: usize) -> Option<TeachingSequence> {
    let (_, seqs) = WARMUTH_SEQUENCES.iter().find(|(f, _)| *f == family)?;
    Some(seqs[t].iter().map(|&x| class.example_of(t, x - 1)).collect())
}

/// Three hypotheses `a=000, b=001, c=010` plus `d=111` as the start. After
/// `(x0,0)` the learner at `d` uniquely moves to `a`, but the further
/// `a`-consistent example `(x2,0)` makes it abandon `a` for `c`.
pub fn colluding_learner() -> (HypothesisClass, PreferenceFunction, usize) {
    let class = HypothesisClass::from_strings(&["000", "001", "010", "111"])
        .and_then(|c| c.with_hypothesis_names(vec!["a".into(), "b".into(), "c".into(), "d".into()]))
        .expect("fixture is well formed");
    let (a, b, c, d) = (0, 1, 2, 3);
    let m = 4;
    let exact = |hs: &[usize]| VersionSpacePattern::exact(BitSet::from_indices(m, hs.iter().copied()));
    let any = VersionSpacePattern::any(m);
    let entries = vec![
        PatternEntry::sparse(m, Some(a), exact(&[a, c]), &[(a, 1), (c, 0)]),
        PatternEntry::sparse(m, Some(d), exact(&[a, b, c]), &[(a, 0)]),
        PatternEntry::sparse(m, Some(a), any.clone(), &[(a, 0)]),
        PatternEntry::sparse(m, Some(b), any.clone(), &[(b, 0)]),
        PatternEntry::sparse(m, Some(c), any.clone(), &[(c, 0)]),
        PatternEntry::sparse(m, Some(d), any, &[(d, 0)]),
    ];
    let sigma = PreferenceFunction::build_lvs(&class, entries, 1).expect("fixture is well formed");
    (class, sigma, d)
}

/// Smallest form of the same trap: `a=00, b=01, c=11`, start at `c`. After
/// `(x0,0)` the learner picks `a`, yet from `a` it prefers `b` on the very
/// same version space.
pub fn colluding_learner_small() -> (HypothesisClass, PreferenceFunction, usize) {
    let class = crate::class::tiny_chain_class();
    let (a, b, c) = (0, 1, 2);
    let m = 3;
    let ab = VersionSpacePattern::exact(BitSet::from_indices(m, [a, b]));
    let entries = vec![
        PatternEntry::sparse(m, Some(c), ab.clone(), &[(a, 0), (b, 1)]),
        PatternEntry::sparse(m, Some(a), ab, &[(a, 1), (b, 0)]),
    ];
    let sigma = PreferenceFunction::build_lvs(&class, entries, 0).expect("fixture is well formed");
    (class, sigma, c)
}

pub fn example(x: usize, y: u8) -> LabeledExample {
    LabeledExample::new(x, y == 1)
}
