//! The `.pref` JSON format.
//!
//! ```json
//! {"family":"gvs","class_hash":"…","default_rank":1,
//!  "entries":{"table":[{"pattern":{"required":[0,5],"optional":[]},"ranks":[0,null,…]}]}}
//! ```

use serde::{Deserialize, Serialize};

use super::{Family, PatternEntry, PreferenceFunction, Rank, Ranking, VersionSpacePattern};
use crate::class::HypothesisClass;
use crate::error::{Error, Result};
use crate::hc;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrefFile {
    pub family: Family,
    pub class_hash: String,
    pub default_rank: Rank,
    pub entries: Entries,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entries {
    Const(Rank),
    Global(Vec<Rank>),
    Local(LocalEntries),
    Table(Vec<EntryFile>),
    DisjointSum {
        left: Box<Factor>,
        right: Box<Factor>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalEntries {
    Marker(HammingMarker),
    Matrix(Vec<Vec<Rank>>),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HammingMarker {
    Hamming,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternFile {
    pub required: Vec<usize>,
    pub optional: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub current: Option<usize>,
    pub pattern: PatternFile,
    pub ranks: Vec<Option<Rank>>,
}

/// A factor of a disjoint-union composite: its class (in `.hc` text) and σ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Factor {
    pub class: String,
    pub pref: PrefFile,
}

impl PrefFile {
    pub fn from_sigma(sigma: &PreferenceFunction, class: &HypothesisClass) -> Result<Self> {
        sigma.check_bound(class)?;
        let entries = match sigma.ranking() {
            Ranking::Const(c) => Entries::Const(*c),
            Ranking::Global(r) => Entries::Global(r.clone()),
            Ranking::LocalTable(t) => Entries::Local(LocalEntries::Matrix(t.clone())),
            Ranking::LocalHamming => Entries::Local(LocalEntries::Marker(HammingMarker::Hamming)),
            Ranking::Table { entries, .. } => Entries::Table(
                entries
                    .iter()
                    .map(|e| EntryFile {
                        current: e.current,
                        pattern: PatternFile {
                            required: e.pattern.required().to_vec(),
                            optional: e.pattern.optional().to_vec(),
                        },
                        ranks: e.ranks.clone(),
                    })
                    .collect(),
            ),
            Ranking::Sum(s) => Entries::DisjointSum {
                left: Box::new(Factor {
                    class: hc::serialize(&s.class_a),
                    pref: PrefFile::from_sigma(&s.sigma_a, &s.class_a)?,
                }),
                right: Box::new(Factor {
                    class: hc::serialize(&s.class_b),
                    pref: PrefFile::from_sigma(&s.sigma_b, &s.class_b)?,
                }),
            },
        };
        Ok(PrefFile {
            family: sigma.family(),
            class_hash: hc::class_hash(class),
            default_rank: sigma.default_rank(),
            entries,
        })
    }

    /// Rebuild the preference function, rejecting a hash mismatch with `class`.
    pub fn to_sigma(&self, class: &HypothesisClass) -> Result<PreferenceFunction> {
        let expected = hc::class_hash(class);
        if self.class_hash != expected {
            return Err(Error::Binding(format!(
                "preference file is bound to class {}, given class hashes to {expected}",
                self.class_hash
            )));
        }
        let m = class.hypothesis_count();
        let sigma = match &self.entries {
            Entries::Const(c) => PreferenceFunction::build_const_value(class, *c),
            Entries::Global(r) => PreferenceFunction::build_global(class, r.clone())?,
            Entries::Local(LocalEntries::Marker(_)) => PreferenceFunction::build_local_hamming(class),
            Entries::Local(LocalEntries::Matrix(t)) => PreferenceFunction::build_local_table(class, t.clone())?,
            Entries::Table(list) => {
                let mut entries = Vec::with_capacity(list.len());
                for e in list {
                    let pattern = VersionSpacePattern::from_indices(m, &e.pattern.required, &e.pattern.optional)?;
                    entries.push(PatternEntry::new(e.current, pattern, e.ranks.clone()));
                }
                match self.family {
                    Family::Gvs => PreferenceFunction::build_gvs(class, entries, self.default_rank)?,
                    Family::Lvs => PreferenceFunction::build_lvs(class, entries, self.default_rank)?,
                    f => return Err(Error::input(format!("a pattern table cannot have family {f}"))),
                }
            }
            Entries::DisjointSum { left, right } => {
                let ca = hc::parse(&left.class)?;
                let cb = hc::parse(&right.class)?;
                let sa = left.pref.to_sigma(&ca)?;
                let sb = right.pref.to_sigma(&cb)?;
                crate::constructions::wsls_disjoint_union_sigma_unchecked(&ca, sa, &cb, sb, class)?
            }
        };
        if sigma.family() != self.family {
            return Err(Error::input(format!(
                "entries describe a {} function but family says {}",
                sigma.family(),
                self.family
            )));
        }
        Ok(sigma)
    }
}

pub fn to_json(sigma: &PreferenceFunction, class: &HypothesisClass) -> Result<String> {
    let file = PrefFile::from_sigma(sigma, class)?;
    Ok(serde_json::to_string_pretty(&file).expect("plain data serializes"))
}

pub fn from_json(text: &str, class: &HypothesisClass) -> Result<PreferenceFunction> {
    let file: PrefFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    file.to_sigma(class)
}

pub fn load(path: &std::path::Path, class: &HypothesisClass) -> Result<PreferenceFunction> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text, class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::warmuth_class;
    use crate::fixtures;

    #[test]
    fn reference_sigmas_round_trip() {
        let w = warmuth_class();
        let spaces = crate::class::realizable_version_spaces(&w, 10_000).unwrap();
        for (name, s) in fixtures::warmuth_reference_sigmas(&w) {
            let text = to_json(&s, &w).unwrap();
            let back = from_json(&text, &w).unwrap();
            assert_eq!(back.family(), s.family(), "{name}");
            for vs in &spaces {
                for h in 0..10 {
                    for hp in vs.iter() {
                        assert_eq!(back.rank(&w, hp, vs, h), s.rank(&w, hp, vs, h));
                    }
                }
            }
            assert_eq!(to_json(&back, &w).unwrap(), text);
        }
    }

    #[test]
    fn hash_mismatch_is_rejected() {
        let w = warmuth_class();
        let text = to_json(&fixtures::warmuth_gvs(&w), &w).unwrap();
        let other = crate::class::powerset_class(3).unwrap();
        assert!(matches!(from_json(&text, &other), Err(Error::Binding(_))));
        assert!(matches!(from_json("{", &w), Err(Error::Parse { .. })));
    }

    #[test]
    fn hamming_marker_is_a_string() {
        let w = warmuth_class();
        let text = to_json(&fixtures::warmuth_local(&w), &w).unwrap();
        assert!(text.contains("\"local\": \"hamming\""));
    }
}
