//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use teachdim::class::{powerset_class, realizable_version_spaces, warmuth_class, LabeledExample};
use teachdim::constructions::{
    build_tree, double_sigma, normalized_local_matrix, order_to_global_sigma, powerset7_node, powerset7_tree,
    star_tree, tree_to_local_sigma, verify_subadditive, wsls_disjoint_union_sigma, wsls_td_one_matching,
    local_td_one_row,
};
use teachdim::engines::{
    count_pref_relations, is_nonclashing, nctd, nctd_edge_lower_bound, powerset_td_lower_bound, rtd,
    sigma_from_teacher, td_of_sigma, vcd, wc_td, Cost, NctdOptions, TeacherMapping, Witness,
};
use teachdim::fixtures::{colluding_learner, colluding_learner_small, warmuth_reference_sigmas};
use teachdim::preference::{
    check_family, is_collusion_free, Family, PatternEntry, PreferenceFunction, VersionSpacePattern,
    DEFAULT_SPACE_BUDGET,
};
use teachdim::{HypothesisClass, TdOptions};

const CORPUS_SEED: u64 = 0x007e_acd1;
const CORPUS_SIZE: usize = 240;

fn serial() -> TdOptions {
    TdOptions {
        parallel: false,
        ..TdOptions::default()
    }
}

fn td(class: &HypothesisClass, sigma: &PreferenceFunction, h0: usize) -> Cost {
    td_of_sigma(class, sigma, h0, &serial()).unwrap().value
}

fn fin(c: Cost) -> Option<u32> {
    c.finite()
}

fn collusion_free(class: &HypothesisClass, sigma: &PreferenceFunction, h0: usize) -> bool {
    is_collusion_free(sigma, class, h0, DEFAULT_SPACE_BUDGET).unwrap().holds
}

fn in_family(class: &HypothesisClass, sigma: &PreferenceFunction, f: Family) -> bool {
    check_family(sigma, f, class, DEFAULT_SPACE_BUDGET).unwrap().holds
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(n: usize, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if let Some(l) = limit {
        if took > l {
            out.ok = false;
            out.detail.push_str(&format!("; took {took:.2?}, limit {l:?}"));
        }
    }
    println!(
        "{} criterion {n}: {title} ({}) [{took:.2?}]",
        if out.ok { "PASS" } else { "FAIL" },
        out.detail
    );
    out.ok
}

fn random_gvs(class: &HypothesisClass, rng: &mut ChaCha8Rng) -> PreferenceFunction {
    let m = class.hypothesis_count();
    let entries = realizable_version_spaces(class, DEFAULT_SPACE_BUDGET)
        .unwrap()
        .into_iter()
        .map(|vs| {
            let ranks = (0..m).map(|_| Some(rng.gen_range(0..m as i64))).collect();
            PatternEntry::new(None, VersionSpacePattern::exact(vs), ranks)
        })
        .collect();
    PreferenceFunction::build_gvs(class, entries, 0).unwrap()
}

fn random_local(class: &HypothesisClass, rng: &mut ChaCha8Rng) -> PreferenceFunction {
    let m = class.hypothesis_count();
    let matrix = (0..m)
        .map(|_| (0..m).map(|_| rng.gen_range(0..m as i64)).collect())
        .collect();
    PreferenceFunction::build_local_table(class, matrix).unwrap()
}

fn criterion_1() -> Outcome {
    let w = warmuth_class();
    let expected = [("const", 3), ("global", 3), ("gvs", 2), ("local", 2), ("lvs", 1)];
    let got: Vec<(&str, Option<u32>)> = warmuth_reference_sigmas(&w)
        .iter()
        .map(|(name, s)| (*name, fin(td(&w, s, 0))))
        .collect();
    let ok = expected.iter().all(|(n, v)| got.contains(&(n, Some(*v))));
    Outcome {
        ok,
        detail: format!("{got:?}"),
    }
}

fn criterion_2() -> Outcome {
    let w = warmuth_class();
    let start = Instant::now();
    let nc = nctd(&w, &NctdOptions::default()).unwrap();
    let search_time = start.elapsed();
    let Witness::Mapping(sets) = nc.witness.clone() else {
        return Outcome {
            ok: false,
            detail: "nctd returned no mapping".into(),
        };
    };
    let mapping = TeacherMapping { sets };
    let library_ok = is_nonclashing(&w, &mapping).unwrap().holds;
    let oracle_ok = common::is_nonclashing(&w, &mapping.sets);
    let values = (
        wc_td(&w).int(),
        rtd(&w).int(),
        nc.int(),
        vcd(&w, None).unwrap().int(),
        common::vcd(&w),
    );
    let ok = values == (Some(3), Some(3), Some(2), Some(2), 2)
        && mapping.max_size() == 2
        && library_ok
        && oracle_ok
        && common::wc_td(&w) == 3
        && common::rtd_by_orderings(&w) == 3
        && search_time < Duration::from_secs(30);
    Outcome {
        ok,
        detail: format!(
            "wc-TD {:?} RTD {:?} NCTD {:?} in {search_time:.2?}, VCD {:?} (oracle {}), mapping non-clashing {library_ok}/{oracle_ok}",
            values.0, values.1, values.2, values.3, values.4
        ),
    }
}

#[derive(Default)]
struct Violations {
    checked: [usize; 4],
    failed: Vec<String>,
}

fn criterion_3() -> Outcome {
    let corpus = common::corpus(CORPUS_SEED, CORPUS_SIZE, 4, 6);
    let results: Vec<Violations> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, class)| {
            let mut v = Violations::default();
            let m = class.hypothesis_count();
            let tag = |what: &str| format!("class {i} {:?}: {what}", (0..m).map(|h| class.row_string(h)).collect::<Vec<_>>());

            // (a) const learner against wc-TD
            let wc = common::wc_td(class);
            let wc_engine = wc_td(class).int().unwrap() as usize;
            let constant = PreferenceFunction::build_const(class);
            for h0 in 0..m {
                v.checked[0] += 1;
                if fin(td(class, &constant, h0)) != Some(wc as u32) || wc_engine != wc {
                    v.failed.push(tag(&format!("(a) h0={h0}")));
                }
            }

            // (b) best global order against RTD
            let r = common::rtd_by_orderings(class);
            let best = common::weak_orders_brute(m)
                .into_iter()
                .filter_map(|ranks| fin(td(class, &order_to_global_sigma(class, &ranks).unwrap(), 0)))
                .min()
                .unwrap();
            v.checked[1] += 1;
            if best as usize != r || rtd(class).int() != Some(r as u32) {
                v.failed.push(tag(&format!("(b) best global {best} rtd {r}")));
            }

            // (c) successful collusion-free gvs learners induce non-clashing teachers
            let nc = nctd(class, &NctdOptions::default()).unwrap();
            let Witness::Mapping(sets) = nc.witness else { unreachable!() };
            let mapping = TeacherMapping { sets };
            let from_teacher = sigma_from_teacher(class, &mapping).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ i as u64);
            let mut gvs = vec![from_teacher.clone()];
            gvs.extend((0..4).map(|_| random_gvs(class, &mut rng)));
            for sigma in &gvs {
                for h0 in 0..m {
                    if !collusion_free(class, sigma, h0) {
                        continue;
                    }
                    let res = td_of_sigma(class, sigma, h0, &serial()).unwrap();
                    if res.value.finite().is_none() {
                        continue;
                    }
                    v.checked[2] += 1;
                    let induced: Vec<Vec<LabeledExample>> = res.per_target.iter().map(|t| t.witness.clone()).collect();
                    if !common::is_nonclashing(class, &induced) {
                        v.failed.push(tag(&format!("(c) h0={h0} {induced:?}")));
                    }
                }
            }

            // (d) the learner built from an optimal no-clash teacher
            for h0 in 0..m {
                v.checked[3] += 1;
                let t = fin(td(class, &from_teacher, h0));
                if !common::is_nonclashing(class, &mapping.sets)
                    || t.is_none_or(|t| t as usize > mapping.max_size())
                {
                    v.failed.push(tag(&format!("(d) h0={h0} td {t:?} max|T| {}", mapping.max_size())));
                }
            }
            v
        })
        .collect();
    let mut checked = [0; 4];
    let mut failed = Vec::new();
    for v in results {
        for (total, c) in checked.iter_mut().zip(v.checked) {
            *total += c;
        }
        failed.extend(v.failed);
    }
    for f in failed.iter().take(5) {
        println!("  violation: {f}");
    }
    Outcome {
        ok: failed.is_empty() && checked.iter().all(|&c| c > 0),
        detail: format!(
            "{} classes; checks (a) {} (b) {} (c) {} (d) {}; {} violations",
            corpus.len(),
            checked[0],
            checked[1],
            checked[2],
            checked[3],
            failed.len()
        ),
    }
}

fn criterion_4() -> Outcome {
    let (class, tree) = powerset7_tree().unwrap();
    let sigma = tree_to_local_sigma(&class, &tree).unwrap();
    let root = tree.root;
    let value = fin(td_of_sigma(&class, &sigma, root, &TdOptions::default()).unwrap().value);
    let local = in_family(&class, &sigma, Family::Local);
    let wsls = in_family(&class, &sigma, Family::Wsls);
    let cf = collusion_free(&class, &sigma, root);
    let h9 = powerset7_node("h9").unwrap();
    let seq = tree.sequence(h9).unwrap();
    let seq_ok = seq == vec![LabeledExample::new(0, true), LabeledExample::new(2, true)];
    let bound = nctd_edge_lower_bound(&class);
    let ok = value == Some(3) && local && wsls && cf && seq_ok && bound == 4 && bound > 3;
    Outcome {
        ok,
        detail: format!(
            "TD {value:?}, local {local}, wsls {wsls}, collusion-free {cf}, h9 sequence {seq:?}, NCTD >= {bound}, gap >= {}",
            bound as i64 - value.map_or(0, i64::from)
        ),
    }
}

fn criterion_5() -> Outcome {
    let p1 = powerset_class(1).unwrap();
    let star = tree_to_local_sigma(&p1, &star_tree(&p1).unwrap()).unwrap();
    let t1 = fin(td(&p1, &star, 0));
    let (p2, s2) = double_sigma(&p1, &star).unwrap();
    let (p4, s4) = double_sigma(&p2, &s2).unwrap();
    let t2 = fin(td(&p2, &s2, 0));
    let t4 = fin(td_of_sigma(&p4, &s4, 0, &TdOptions::default()).unwrap().value);
    let mut props = true;
    for (c, s) in [(&p2, &s2), (&p4, &s4)] {
        props &= normalized_local_matrix(c, s).is_ok();
        props &= in_family(c, s, Family::Local) && in_family(c, s, Family::Wsls);
        props &= collusion_free(c, s, 0);
    }
    let ok = t1 == Some(1)
        && p4.instance_count() == 4
        && p4.hypothesis_count() == 16
        && t2.is_some_and(|t| t <= 2)
        && t4.is_some_and(|t| t <= 4)
        && props;
    Outcome {
        ok,
        detail: format!("TD star {t1:?}, after one doubling {t2:?}, after two {t4:?}, properties intact {props}"),
    }
}

fn criterion_6() -> Outcome {
    let opts = TdOptions::default();
    let p3 = powerset_class(3).unwrap();
    let p4 = powerset_class(4).unwrap();

    // one example cannot reach 2^k − 1 targets through at most k distinct spaces
    let mut factor_lb = Vec::new();
    for p in [&p3, &p4] {
        let m = p.hypothesis_count();
        let none = (0..m).all(|h0| wsls_td_one_matching(p, h0).unwrap().is_none());
        let pigeonhole = (0..m).all(|h0| {
            let spaces: std::collections::BTreeSet<common::Mask> = (0..p.instance_count())
                .map(|x| common::agree(p, x, !p.label(h0, x)))
                .collect();
            spaces.len() < m - 1
        });
        factor_lb.push(none && pigeonhole);
    }

    let sa = tree_to_local_sigma(&p3, &build_tree(&p3, 0, 2).unwrap()).unwrap();
    let sb = tree_to_local_sigma(&p4, &build_tree(&p4, 0, 3).unwrap()).unwrap();
    let (union, sum) = wsls_disjoint_union_sigma(&p3, &sa, &p4, &sb).unwrap();
    let sum_wsls = in_family(&union, &sum, Family::Wsls);
    let cert = verify_subadditive(&p3, &sa, 0, &p4, &sb, 0, &opts).unwrap();

    let (p7, tree) = powerset7_tree().unwrap();
    let same = union.hypothesis_count() == p7.hypothesis_count()
        && (0..union.hypothesis_count()).all(|h| union.row(h) == p7.row(h));
    let sigma = tree_to_local_sigma(&union, &tree).unwrap();
    let td_union = fin(td_of_sigma(&union, &sigma, 0, &opts).unwrap().value);
    let wsls = in_family(&union, &sigma, Family::Wsls);
    let ok = factor_lb == [true, true]
        && cert.holds
        && sum_wsls
        && same
        && wsls
        && td_union == Some(3);
    Outcome {
        ok,
        detail: format!(
            "factor wsls TD >= 2: {factor_lb:?}; sum sigma wsls {sum_wsls}, {} <= {} + {}; union tree TD {td_union:?} < 2 + 2, wsls {wsls}",
            cert.td_union, cert.td_a, cert.td_b
        ),
    }
}

fn criterion_7() -> Outcome {
    let counts: Vec<usize> = (1..=5).map(|m| common::weak_orders_brute(m).len()).collect();
    let formula: Vec<BigUint> = (1..=5).map(count_pref_relations).collect();
    let counts_ok = counts == [1, 3, 13, 75, 541]
        && formula.iter().zip(&counts).all(|(f, &c)| *f == BigUint::from(c));

    let mut consistent = true;
    let mut exercised = 0;
    for d in 1..=3usize {
        let p = powerset_class(d).unwrap();
        let k = powerset_td_lower_bound(d as u64).unwrap();
        let mut sigmas = vec![
            PreferenceFunction::build_const(&p),
            order_to_global_sigma(&p, &(0..p.hypothesis_count() as i64).collect::<Vec<_>>()).unwrap(),
            PreferenceFunction::build_local_hamming(&p),
        ];
        for depth in d..=d + 1 {
            if let Ok(t) = build_tree(&p, 0, depth) {
                sigmas.push(tree_to_local_sigma(&p, &t).unwrap());
            }
        }
        for s in &sigmas {
            for h0 in 0..p.hypothesis_count() {
                if !collusion_free(&p, s, h0) {
                    continue;
                }
                exercised += 1;
                consistent &= td(&p, s, h0) >= Cost::Finite(k as u32);
            }
        }
    }

    let d = 1_000_000u64;
    let k = powerset_td_lower_bound(d).unwrap();
    let base = BigUint::from(2 * d);
    let target = BigUint::from(1u8) << d;
    let exact = base.pow(k as u32 + 1) > target && base.pow(k as u32) <= target;
    let ok = counts_ok && consistent && exercised > 0 && exact;
    Outcome {
        ok,
        detail: format!(
            "weak orders {counts:?}; lower bound below TD on {exercised} collusion-free runs: {consistent}; d=10^6 gives k={k}, exact check {exact}"
        ),
    }
}

fn criterion_8() -> Outcome {
    let corpus = common::corpus(CORPUS_SEED + 1, CORPUS_SIZE, 4, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 2);

    // version spaces shrink along random example chains
    let mut antitone = 0;
    let mut antitone_bad = 0;
    for class in &corpus {
        let t = rng.gen_range(0..class.hypothesis_count());
        let mut z = Vec::new();
        let mut prev = class.version_space(&z).unwrap();
        for _ in 0..6 {
            z.push(class.example_of(t, rng.gen_range(0..class.instance_count())));
            let next = class.version_space(&z).unwrap();
            antitone += 1;
            if !next.is_subset(&prev) || !next.contains(t) {
                antitone_bad += 1;
            }
            prev = next;
        }
    }

    // engine against the straight-line oracle
    let mut minimax = 0;
    let mut minimax_bad = 0;
    for class in corpus.iter().filter(|c| c.instance_count() <= 3) {
        let sigmas = [
            PreferenceFunction::build_const(class),
            PreferenceFunction::build_local_hamming(class),
            random_local(class, &mut rng),
            random_gvs(class, &mut rng),
        ];
        for s in &sigmas {
            let h0 = rng.gen_range(0..class.hypothesis_count());
            minimax += 1;
            let engine = fin(td(class, s, h0)).map(|v| v as usize);
            if engine != common::td_oracle(class, s, h0) {
                minimax_bad += 1;
            }
        }
    }

    // collusion: constructed learners accepted, the traps rejected
    let mut accepted = 0;
    let mut constructed: Vec<(HypothesisClass, PreferenceFunction)> = Vec::new();
    for k in 1..=4 {
        let p = powerset_class(k).unwrap();
        let depth = if k == 4 { 3 } else { k.min(2) };
        let s = tree_to_local_sigma(&p, &build_tree(&p, 0, depth).unwrap()).unwrap();
        constructed.push((p, s));
    }
    let p1 = powerset_class(1).unwrap();
    let star = tree_to_local_sigma(&p1, &star_tree(&p1).unwrap()).unwrap();
    let (p2, s2) = double_sigma(&p1, &star).unwrap();
    let (p4, s4) = double_sigma(&p2, &s2).unwrap();
    constructed.push((p1.clone(), star.clone()));
    constructed.push((p2.clone(), s2.clone()));
    constructed.push((p4, s4));
    constructed.push(wsls_disjoint_union_sigma(&p2, &s2, &p1, &star).unwrap());
    let (p7, tree) = powerset7_tree().unwrap();
    constructed.push((p7.clone(), tree_to_local_sigma(&p7, &tree).unwrap()));
    let all_accepted = constructed.iter().all(|(c, s)| {
        accepted += 1;
        collusion_free(c, s, 0)
    });
    let (c1, s1, h1) = colluding_learner();
    let (c2, s2_, h2) = colluding_learner_small();
    let rejected = !collusion_free(&c1, &s1, h1) && !collusion_free(&c2, &s2_, h2);

    // one-example local learners only exist where RTD is 1
    let mut local_one = 0;
    let mut local_bad = 0;
    for class in corpus.iter().filter(|c| c.hypothesis_count() >= 2) {
        let r = common::rtd_by_orderings(class);
        for h0 in 0..class.hypothesis_count() {
            if local_td_one_row(class, h0).unwrap().is_some() {
                local_one += 1;
                if r != 1 {
                    local_bad += 1;
                }
            }
        }
    }

    let ok = antitone_bad == 0
        && minimax_bad == 0
        && minimax > 0
        && all_accepted
        && rejected
        && local_bad == 0
        && local_one > 0;
    Outcome {
        ok,
        detail: format!(
            "antitone {antitone_bad}/{antitone} bad; minimax {minimax_bad}/{minimax} bad; {accepted} constructed learners accepted {all_accepted}; traps rejected {rejected}; one-example local learners {local_one}, {local_bad} on classes with RTD != 1"
        ),
    }
}

#[test]
fn acceptance() {
    let results = [
        run(1, "Warmuth table TD values", Some(Duration::from_secs(1)), criterion_1),
        run(2, "classical dimensions on Warmuth", None, criterion_2),
        run(3, "batch models on a random corpus", None, criterion_3),
        run(4, "powerset(7) local tree learner", Some(Duration::from_secs(10)), criterion_4),
        run(5, "doubling from the star", Some(Duration::from_secs(60)), criterion_5),
        run(6, "strict sub-additivity", None, criterion_6),
        run(7, "counting and lower bounds", None, criterion_7),
        run(8, "property suites", None, criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    assert!(results.iter().all(|&ok| ok));
}
