//! Learner preference functions `σ(h′; H, h)`.
//!
//! A preference function ranks a candidate `h′` given the current version
//! space `H` and the learner's current hypothesis `h`; the learner moves to
//! an argmin. Ranks are integers so ties are exact.

mod collusion;
mod family;
pub mod file;

pub use collusion::is_collusion_free;
pub use family::{check_family, Counterexample, FamilyVerdict, Triple, DEFAULT_SPACE_BUDGET};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::class::{HypothesisClass, VersionSpace};
use crate::error::{Error, Result};

pub type Rank = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Const,
    Global,
    Gvs,
    Local,
    Lvs,
    Wsls,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Const,
        Family::Global,
        Family::Gvs,
        Family::Local,
        Family::Lvs,
        Family::Wsls,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Const => "const",
            Family::Global => "global",
            Family::Gvs => "gvs",
            Family::Local => "local",
            Family::Lvs => "lvs",
            Family::Wsls => "wsls",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::input(format!("unknown family {s:?}")))
    }
}

/// Matches every `H` with `required ⊆ H ⊆ required ∪ optional`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VersionSpacePattern {
    required: BitSet,
    optional: BitSet,
    allowed: BitSet,
}

impl VersionSpacePattern {
    pub fn new(required: BitSet, optional: BitSet) -> Result<Self> {
        if required.capacity() != optional.capacity() {
            return Err(Error::input("pattern masks over different universes"));
        }
        if !required.is_disjoint(&optional) {
            return Err(Error::input(format!(
                "required {:?} and optional {:?} overlap",
                required.to_vec(),
                optional.to_vec()
            )));
        }
        let allowed = required.union(&optional);
        Ok(VersionSpacePattern {
            required,
            optional,
            allowed,
        })
    }

    /// Matches exactly one version space.
    pub fn exact(members: BitSet) -> Self {
        let optional = BitSet::new(members.capacity());
        VersionSpacePattern::new(members, optional).expect("disjoint by construction")
    }

    /// Matches every version space.
    pub fn any(m: usize) -> Self {
        VersionSpacePattern::new(BitSet::new(m), BitSet::full(m)).expect("disjoint by construction")
    }

    pub fn from_indices(m: usize, required: &[usize], optional: &[usize]) -> Result<Self> {
        if let Some(&i) = required.iter().chain(optional).find(|&&i| i >= m) {
            return Err(Error::input(format!("pattern index {i} out of range ({m})")));
        }
        VersionSpacePattern::new(
            BitSet::from_indices(m, required.iter().copied()),
            BitSet::from_indices(m, optional.iter().copied()),
        )
    }

    #[inline]
    pub fn matches(&self, vs: &VersionSpace) -> bool {
        self.required.is_subset(vs) && vs.is_subset(&self.allowed)
    }

    pub fn required(&self) -> &BitSet {
        &self.required
    }

    pub fn optional(&self) -> &BitSet {
        &self.optional
    }
}

/// One row of a pattern table. `ranks[h′] = None` defers to later entries
/// (and finally the default) for that candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternEntry {
    /// `None` matches any current hypothesis (always `None` for gvs tables).
    pub current: Option<usize>,
    pub pattern: VersionSpacePattern,
    pub ranks: Vec<Option<Rank>>,
}

impl PatternEntry {
    pub fn new(current: Option<usize>, pattern: VersionSpacePattern, ranks: Vec<Option<Rank>>) -> Self {
        PatternEntry {
            current,
            pattern,
            ranks,
        }
    }

    /// Entry that assigns `rank` to each listed candidate and defers elsewhere.
    pub fn sparse(
        m: usize,
        current: Option<usize>,
        pattern: VersionSpacePattern,
        ranks: &[(usize, Rank)],
    ) -> Self {
        let mut v = vec![None; m];
        for &(h, r) in ranks {
            v[h] = Some(r);
        }
        PatternEntry::new(current, pattern, v)
    }
}

/// A disjoint-union composite: `σ(a′⊎b′; H, a⊎b) = σa(a′; Hᵃ, a) + σb(b′; Hᵇ, b)`
/// where `Hᵃ`, `Hᵇ` are the projections of `H` onto the factors.
#[derive(Debug, Clone)]
pub struct DisjointSum {
    pub(crate) class_a: HypothesisClass,
    pub(crate) sigma_a: PreferenceFunction,
    pub(crate) class_b: HypothesisClass,
    pub(crate) sigma_b: PreferenceFunction,
}

impl DisjointSum {
    fn project(&self, vs: &VersionSpace) -> (BitSet, BitSet) {
        let mb = self.class_b.hypothesis_count();
        let mut a = BitSet::new(self.class_a.hypothesis_count());
        let mut b = BitSet::new(mb);
        for h in vs.iter() {
            a.insert(h / mb);
            b.insert(h % mb);
        }
        (a, b)
    }

    pub fn factors(&self) -> (&HypothesisClass, &PreferenceFunction, &HypothesisClass, &PreferenceFunction) {
        (&self.class_a, &self.sigma_a, &self.class_b, &self.sigma_b)
    }
}

#[derive(Debug, Clone)]
pub enum Ranking {
    Const(Rank),
    Global(Vec<Rank>),
    /// `matrix[h][h′]`.
    LocalTable(Vec<Vec<Rank>>),
    LocalHamming,
    Table {
        entries: Vec<PatternEntry>,
        default: Rank,
    },
    Sum(Box<DisjointSum>),
}

#[derive(Debug, Clone)]
pub struct PreferenceFunction {
    family: Family,
    m: usize,
    n: usize,
    binding: String,
    ranking: Ranking,
}

/// Fingerprint of the label matrix a preference function is bound to.
fn binding_of(class: &HypothesisClass) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update((class.instance_count() as u64).to_le_bytes());
    for h in 0..class.hypothesis_count() {
        hasher.update(class.row_string(h).as_bytes());
        hasher.update(b"\n");
    }
    hex::encode(&hasher.finalize()[..16])
}

impl PreferenceFunction {
    fn bound(class: &HypothesisClass, family: Family, ranking: Ranking) -> Self {
        PreferenceFunction {
            family,
            m: class.hypothesis_count(),
            n: class.instance_count(),
            binding: binding_of(class),
            ranking,
        }
    }

    /// `σ ≡ 0`.
    pub fn build_const(class: &HypothesisClass) -> Self {
        Self::build_const_value(class, 0)
    }

    pub fn build_const_value(class: &HypothesisClass, c: Rank) -> Self {
        Self::bound(class, Family::Const, Ranking::Const(c))
    }

    pub fn build_global(class: &HypothesisClass, ranks: Vec<Rank>) -> Result<Self> {
        check_len(class, ranks.len(), "rank vector")?;
        Ok(Self::bound(class, Family::Global, Ranking::Global(ranks)))
    }

    pub fn build_local_table(class: &HypothesisClass, matrix: Vec<Vec<Rank>>) -> Result<Self> {
        check_len(class, matrix.len(), "rank matrix")?;
        for row in &matrix {
            check_len(class, row.len(), "rank matrix row")?;
        }
        Ok(Self::bound(class, Family::Local, Ranking::LocalTable(matrix)))
    }

    /// `σ(h′; ·, h) = hamming(h, h′)`.
    pub fn build_local_hamming(class: &HypothesisClass) -> Self {
        Self::bound(class, Family::Local, Ranking::LocalHamming)
    }

    pub fn build_gvs(class: &HypothesisClass, entries: Vec<PatternEntry>, default: Rank) -> Result<Self> {
        if entries.iter().any(|e| e.current.is_some()) {
            return Err(Error::input("gvs entries cannot depend on the current hypothesis"));
        }
        Self::build_table(class, Family::Gvs, entries, default)
    }

    pub fn build_lvs(class: &HypothesisClass, entries: Vec<PatternEntry>, default: Rank) -> Result<Self> {
        Self::build_table(class, Family::Lvs, entries, default)
    }

    fn build_table(
        class: &HypothesisClass,
        family: Family,
        entries: Vec<PatternEntry>,
        default: Rank,
    ) -> Result<Self> {
        let m = class.hypothesis_count();
        for (i, e) in entries.iter().enumerate() {
            check_len(class, e.ranks.len(), "entry rank array")?;
            if e.pattern.required.capacity() != m {
                return Err(Error::input(format!("entry {i}: pattern over {} hypotheses", e.pattern.required.capacity())));
            }
            if let Some(c) = e.current {
                class.check_hypothesis(c)?;
            }
        }
        Ok(Self::bound(class, family, Ranking::Table { entries, default }))
    }

    /// Composite over `disjoint_union(class_a, class_b)`.
    pub(crate) fn build_sum(
        union: &HypothesisClass,
        class_a: HypothesisClass,
        sigma_a: PreferenceFunction,
        class_b: HypothesisClass,
        sigma_b: PreferenceFunction,
    ) -> Self {
        Self::bound(
            union,
            Family::Lvs,
            Ranking::Sum(Box::new(DisjointSum {
                class_a,
                sigma_a,
                class_b,
                sigma_b,
            })),
        )
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn hypothesis_count(&self) -> usize {
        self.m
    }

    /// Rank given to anything no table entry covers.
    pub fn default_rank(&self) -> Rank {
        match &self.ranking {
            Ranking::Table { default, .. } => *default,
            Ranking::Const(c) => *c,
            _ => 0,
        }
    }

    /// True when the ranking never looks at the current hypothesis, so the
    /// engines may collapse states that differ only in `h`.
    pub fn ignores_current(&self) -> bool {
        match &self.ranking {
            Ranking::Const(_) | Ranking::Global(_) => true,
            Ranking::Table { entries, .. } => entries.iter().all(|e| e.current.is_none()),
            Ranking::LocalTable(_) | Ranking::LocalHamming => false,
            Ranking::Sum(s) => s.sigma_a.ignores_current() && s.sigma_b.ignores_current(),
        }
    }

    pub fn is_bound_to(&self, class: &HypothesisClass) -> bool {
        self.m == class.hypothesis_count() && self.n == class.instance_count() && self.binding == binding_of(class)
    }

    pub fn check_bound(&self, class: &HypothesisClass) -> Result<()> {
        if self.is_bound_to(class) {
            Ok(())
        } else {
            Err(Error::Binding(format!(
                "{} preference function over {} hypotheses is not bound to this class",
                self.family, self.m
            )))
        }
    }

    /// `σ(h′; H, h)` with full validation.
    pub fn eval(&self, class: &HypothesisClass, hp: usize, vs: &VersionSpace, h: usize) -> Result<Rank> {
        self.check_bound(class)?;
        class.check_hypothesis(hp)?;
        class.check_hypothesis(h)?;
        if vs.capacity() != self.m {
            return Err(Error::Binding("version space over a different class".into()));
        }
        Ok(self.rank(class, hp, vs, h))
    }

    /// Unchecked evaluation for callers that validated their inputs.
    pub fn rank(&self, class: &HypothesisClass, hp: usize, vs: &VersionSpace, h: usize) -> Rank {
        match &self.ranking {
            Ranking::Const(c) => *c,
            Ranking::Global(r) => r[hp],
            Ranking::LocalTable(t) => t[h][hp],
            Ranking::LocalHamming => class.hamming(h, hp) as Rank,
            Ranking::Table { entries, default } => table_rank(entries, *default, hp, vs, h),
            Ranking::Sum(s) => {
                let (a, b) = s.project(vs);
                let mb = s.class_b.hypothesis_count();
                s.sigma_a.rank(&s.class_a, hp / mb, &a, h / mb)
                    + s.sigma_b.rank(&s.class_b, hp % mb, &b, h % mb)
            }
        }
    }

    /// `argmin_{h′ ∈ H} σ(h′; H, h)` with ties preserved. `H` must be nonempty.
    pub fn argmin(&self, class: &HypothesisClass, vs: &VersionSpace, h: usize) -> BitSet {
        let mut out = BitSet::new(self.m);
        let mut best = Rank::MAX;
        let mut consider = |hp: usize, r: Rank| {
            if r < best {
                best = r;
                out = BitSet::singleton(self.m, hp);
            } else if r == best {
                out.insert(hp);
            }
        };
        match &self.ranking {
            Ranking::Table { entries, default } => {
                let active: Vec<&PatternEntry> = entries
                    .iter()
                    .filter(|e| e.current.is_none_or(|c| c == h) && e.pattern.matches(vs))
                    .collect();
                for hp in vs.iter() {
                    let r = active.iter().find_map(|e| e.ranks[hp]).unwrap_or(*default);
                    consider(hp, r);
                }
            }
            Ranking::Sum(s) => {
                let (a, b) = s.project(vs);
                let mb = s.class_b.hypothesis_count();
                let ra: Vec<Rank> = (0..s.class_a.hypothesis_count())
                    .map(|i| if a.contains(i) { s.sigma_a.rank(&s.class_a, i, &a, h / mb) } else { 0 })
                    .collect();
                let rb: Vec<Rank> = (0..mb)
                    .map(|j| if b.contains(j) { s.sigma_b.rank(&s.class_b, j, &b, h % mb) } else { 0 })
                    .collect();
                for hp in vs.iter() {
                    consider(hp, ra[hp / mb] + rb[hp % mb]);
                }
            }
            _ => {
                for hp in vs.iter() {
                    consider(hp, self.rank(class, hp, vs, h));
                }
            }
        }
        out
    }

    /// Checked variant of [`argmin`](Self::argmin).
    pub fn argmin_set(&self, class: &HypothesisClass, vs: &VersionSpace, h: usize) -> Result<BitSet> {
        self.check_bound(class)?;
        class.check_hypothesis(h)?;
        if vs.capacity() != self.m {
            return Err(Error::Binding("version space over a different class".into()));
        }
        if vs.is_empty() {
            return Err(Error::domain("argmin over an empty version space"));
        }
        Ok(self.argmin(class, vs, h))
    }
}

fn table_rank(entries: &[PatternEntry], default: Rank, hp: usize, vs: &VersionSpace, h: usize) -> Rank {
    entries
        .iter()
        .filter(|e| e.current.is_none_or(|c| c == h))
        .find_map(|e| e.ranks[hp].filter(|_| e.pattern.matches(vs)))
        .unwrap_or(default)
}

fn check_len(class: &HypothesisClass, len: usize, what: &str) -> Result<()> {
    if len != class.hypothesis_count() {
        return Err(Error::input(format!(
            "{what} has length {len}, class has {} hypotheses",
            class.hypothesis_count()
        )));
    }
    Ok(())
}
