//! Finite hypothesis classes, labeled examples and version spaces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A set of hypothesis indices into some [`HypothesisClass`].
pub type VersionSpace = BitSet;

/// Default cap on the number of hypotheses a class may hold.
pub const DEFAULT_MAX_HYPOTHESES: usize = 1 << 20;

/// Largest `k` accepted by [`powerset_class`].
pub const MAX_POWERSET_K: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledExample {
    pub instance: usize,
    pub label: bool,
}

impl LabeledExample {
    pub fn new(instance: usize, label: bool) -> Self {
        LabeledExample { instance, label }
    }
}

impl fmt::Display for LabeledExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x{},{})", self.instance, self.label as u8)
    }
}

pub type TeachingSequence = Vec<LabeledExample>;

/// An extensional class of boolean hypotheses over `n` instances.
///
/// Rows are stored both as label vectors (one bitset per hypothesis) and as
/// per-instance columns (the hypotheses labeling that instance 1), so that
/// `H ∩ H({z})` is a single bitset intersection.
#[derive(Clone, PartialEq, Eq)]
pub struct HypothesisClass {
    n: usize,
    rows: Vec<BitSet>,
    ones: Vec<BitSet>,
    zeros: Vec<BitSet>,
    instance_names: Option<Vec<String>>,
    hypothesis_names: Option<Vec<String>>,
}

impl fmt::Debug for HypothesisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HypothesisClass")
            .field("instances", &self.n)
            .field("hypotheses", &self.rows.len())
            .finish()
    }
}

impl HypothesisClass {
    /// Build a class from label rows, enforcing the default size cap.
    pub fn new(n: usize, rows: Vec<Vec<bool>>) -> Result<Self> {
        Self::with_cap(n, rows, DEFAULT_MAX_HYPOTHESES)
    }

    pub fn with_cap(n: usize, rows: Vec<Vec<bool>>, max_hypotheses: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("a class needs at least one instance"));
        }
        if rows.is_empty() {
            return Err(Error::input("a class needs at least one hypothesis"));
        }
        if rows.len() > max_hypotheses {
            return Err(Error::Resource(format!(
                "{} hypotheses exceeds the cap of {max_hypotheses}",
                rows.len()
            )));
        }
        let mut bits = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::input(format!(
                    "hypothesis {i} has {} labels, expected {n}",
                    r.len()
                )));
            }
            bits.push(BitSet::from_indices(
                n,
                r.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j),
            ));
        }
        Self::from_bitsets(n, bits)
    }

    pub(crate) fn from_bitsets(n: usize, rows: Vec<BitSet>) -> Result<Self> {
        let mut seen = std::collections::HashMap::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if let Some(j) = seen.insert(r.clone(), i) {
                return Err(Error::input(format!(
                    "hypotheses {j} and {i} are identical"
                )));
            }
        }
        let m = rows.len();
        let mut ones = vec![BitSet::new(m); n];
        for (i, r) in rows.iter().enumerate() {
            for x in r.iter() {
                ones[x].insert(i);
            }
        }
        let zeros = ones.iter().map(|c| c.complement()).collect();
        Ok(HypothesisClass {
            n,
            rows,
            ones,
            zeros,
            instance_names: None,
            hypothesis_names: None,
        })
    }

    /// Parse rows written as strings of `0`/`1`, e.g. `["110", "011"]`.
    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut parsed = Vec::with_capacity(rows.len());
        for r in rows {
            let mut row = Vec::with_capacity(r.len());
            for c in r.chars() {
                match c {
                    '0' => row.push(false),
                    '1' => row.push(true),
                    _ => return Err(Error::input(format!("non-bit character {c:?} in {r:?}"))),
                }
            }
            parsed.push(row);
        }
        Self::new(n, parsed)
    }

    pub fn with_instance_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::input(format!(
                "{} instance names for {} instances",
                names.len(),
                self.n
            )));
        }
        self.instance_names = Some(names);
        Ok(self)
    }

    pub fn with_hypothesis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rows.len() {
            return Err(Error::input(format!(
                "{} hypothesis names for {} hypotheses",
                names.len(),
                self.rows.len()
            )));
        }
        self.hypothesis_names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn instance_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn hypothesis_count(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn label(&self, h: usize, x: usize) -> bool {
        self.rows[h].contains(x)
    }

    pub fn row(&self, h: usize) -> &BitSet {
        &self.rows[h]
    }

    pub fn row_bits(&self, h: usize) -> Vec<bool> {
        (0..self.n).map(|x| self.label(h, x)).collect()
    }

    /// Row rendered as a `0`/`1` string.
    pub fn row_string(&self, h: usize) -> String {
        (0..self.n)
            .map(|x| if self.label(h, x) { '1' } else { '0' })
            .collect()
    }

    pub fn instance_names(&self) -> Option<&[String]> {
        self.instance_names.as_deref()
    }

    pub fn hypothesis_names(&self) -> Option<&[String]> {
        self.hypothesis_names.as_deref()
    }

    pub fn hypothesis_name(&self, h: usize) -> String {
        match &self.hypothesis_names {
            Some(names) => names[h].clone(),
            None => format!("h{h}"),
        }
    }

    pub fn instance_name(&self, x: usize) -> String {
        match &self.instance_names {
            Some(names) => names[x].clone(),
            None => format!("x{x}"),
        }
    }

    /// Index of the hypothesis with the given name (or `h<index>` when unnamed).
    pub fn hypothesis_by_name(&self, name: &str) -> Option<usize> {
        match &self.hypothesis_names {
            Some(names) => names.iter().position(|n| n == name),
            None => name
                .strip_prefix('h')
                .and_then(|s| s.parse().ok())
                .filter(|&i: &usize| i < self.hypothesis_count()),
        }
    }

    pub fn instance_by_name(&self, name: &str) -> Option<usize> {
        match &self.instance_names {
            Some(names) => names.iter().position(|n| n == name),
            None => name
                .strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .filter(|&i: &usize| i < self.n),
        }
    }

    pub fn row_index(&self, bits: &BitSet) -> Option<usize> {
        self.rows.iter().position(|r| r == bits)
    }

    pub fn full(&self) -> VersionSpace {
        BitSet::full(self.hypothesis_count())
    }

    /// `H({z})`: the hypotheses agreeing with one example.
    #[inline]
    pub fn agreeing(&self, z: LabeledExample) -> &BitSet {
        if z.label {
            &self.ones[z.instance]
        } else {
            &self.zeros[z.instance]
        }
    }

    /// The example `(x, h(x))`.
    #[inline]
    pub fn example_of(&self, h: usize, x: usize) -> LabeledExample {
        LabeledExample::new(x, self.label(h, x))
    }

    pub fn check_hypothesis(&self, h: usize) -> Result<()> {
        if h >= self.hypothesis_count() {
            return Err(Error::input(format!(
                "hypothesis index {h} out of range (class has {})",
                self.hypothesis_count()
            )));
        }
        Ok(())
    }

    pub fn check_example(&self, z: &LabeledExample) -> Result<()> {
        if z.instance >= self.n {
            return Err(Error::input(format!(
                "instance index {} out of range (class has {})",
                z.instance, self.n
            )));
        }
        Ok(())
    }

    /// Does hypothesis `h` agree with every example in `z`?
    pub fn consistent(&self, h: usize, z: &[LabeledExample]) -> Result<bool> {
        self.check_hypothesis(h)?;
        for e in z {
            self.check_example(e)?;
        }
        Ok(z.iter().all(|e| self.label(h, e.instance) == e.label))
    }

    /// `H(Z)`: every hypothesis consistent with `z`.
    pub fn version_space(&self, z: &[LabeledExample]) -> Result<VersionSpace> {
        let mut vs = self.full();
        for e in z {
            self.check_example(e)?;
            vs.intersect_with(self.agreeing(*e));
        }
        Ok(vs)
    }

    /// Number of instances on which `h` and `g` disagree.
    pub fn hamming(&self, h: usize, g: usize) -> usize {
        let a = &self.rows[h];
        let b = &self.rows[g];
        a.difference(b).count() + b.difference(a).count()
    }

    /// Instances on which `h` and `g` disagree.
    pub fn disagreement(&self, h: usize, g: usize) -> BitSet {
        let a = &self.rows[h];
        let b = &self.rows[g];
        a.difference(b).union(&b.difference(a))
    }

    /// Restrict to a subset of hypotheses, keeping their relative order.
    pub fn subclass(&self, members: &VersionSpace) -> Result<HypothesisClass> {
        let rows: Vec<BitSet> = members.iter().map(|h| self.rows[h].clone()).collect();
        if rows.is_empty() {
            return Err(Error::domain("empty subclass"));
        }
        let mut c = HypothesisClass::from_bitsets(self.n, rows)?;
        c.instance_names = self.instance_names.clone();
        if let Some(names) = &self.hypothesis_names {
            c.hypothesis_names = Some(members.iter().map(|h| names[h].clone()).collect());
        }
        Ok(c)
    }
}

/// `H^a ⊎ H^b`: hypothesis `(i, j)` sits at index `i * m_b + j`; b's instances
/// follow a's.
pub fn disjoint_union(a: &HypothesisClass, b: &HypothesisClass) -> Result<HypothesisClass> {
    let n = a.n + b.n;
    let m = a
        .hypothesis_count()
        .checked_mul(b.hypothesis_count())
        .filter(|&m| m <= DEFAULT_MAX_HYPOTHESES)
        .ok_or_else(|| Error::Resource("disjoint union exceeds the class size cap".into()))?;
    let mut rows = Vec::with_capacity(m);
    for i in 0..a.hypothesis_count() {
        for j in 0..b.hypothesis_count() {
            let mut r = BitSet::new(n);
            for x in a.rows[i].iter() {
                r.insert(x);
            }
            for x in b.rows[j].iter() {
                r.insert(a.n + x);
            }
            rows.push(r);
        }
    }
    let mut c = HypothesisClass::from_bitsets(n, rows)?;
    let an: Vec<String> = (0..a.n).map(|x| a.instance_name(x)).collect();
    let bn: Vec<String> = (0..b.n).map(|x| b.instance_name(x)).collect();
    if a.instance_names.is_some() || b.instance_names.is_some() {
        let mut names: Vec<String> = an.iter().map(|s| format!("a.{s}")).collect();
        names.extend(bn.iter().map(|s| format!("b.{s}")));
        c.instance_names = Some(names);
    }
    Ok(c)
}

/// `{0,1}^k` in increasing binary order, most significant bit on instance 0.
pub fn powerset_class(k: usize) -> Result<HypothesisClass> {
    if k == 0 {
        return Err(Error::input("powerset size must be at least 1"));
    }
    if k > MAX_POWERSET_K {
        return Err(Error::Resource(format!(
            "powerset({k}) exceeds the cap of {MAX_POWERSET_K}"
        )));
    }
    let rows = (0..1usize << k)
        .map(|i| BitSet::from_indices(k, (0..k).filter(|x| (i >> (k - 1 - x)) & 1 == 1)))
        .collect();
    HypothesisClass::from_bitsets(k, rows)
}

/// Binary-order index of a powerset row given as bits (instance 0 first).
pub fn powerset_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// The 10-hypothesis, 5-instance Warmuth class with names `h1..h10`, `x1..x5`.
pub fn warmuth_class() -> HypothesisClass {
    HypothesisClass::from_strings(&[
        "11000", "01100", "00110", "00011", "10001", "11010", "01101", "10110", "01011", "10101",
    ])
    .and_then(|c| c.with_hypothesis_names((1..=10).map(|i| format!("h{i}")).collect()))
    .and_then(|c| c.with_instance_names((1..=5).map(|i| format!("x{i}")).collect()))
    .expect("fixture is well formed")
}

/// Two-instance three-hypothesis class `a=00, b=01, c=11`.
pub fn tiny_chain_class() -> HypothesisClass {
    HypothesisClass::from_strings(&["00", "01", "11"])
        .and_then(|c| c.with_hypothesis_names(vec!["a".into(), "b".into(), "c".into()]))
        .expect("fixture is well formed")
}

/// The chain `000, 100, 110, 111`.
pub fn chain_class() -> HypothesisClass {
    HypothesisClass::from_strings(&["000", "100", "110", "111"]).expect("fixture is well formed")
}

/// Every version space `H(Z)` obtainable from a consistent sample `Z`,
/// in a deterministic order. Fails once more than `budget` are found.
pub fn realizable_version_spaces(
    class: &HypothesisClass,
    budget: usize,
) -> Result<Vec<VersionSpace>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, class.full())];
    while let Some((x, vs)) = stack.pop() {
        if x == class.instance_count() {
            if seen.insert(vs.clone()) {
                if out.len() >= budget {
                    return Err(Error::Resource(format!(
                        "more than {budget} realizable version spaces"
                    )));
                }
                out.push(vs);
            }
            continue;
        }
        for label in [true, false] {
            let next = vs.intersection(class.agreeing(LabeledExample::new(x, label)));
            if !next.is_empty() && next != vs {
                stack.push((x + 1, next));
            }
        }
        stack.push((x + 1, vs));
    }
    out.sort_by(|a, b| b.count().cmp(&a.count()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(x: usize, y: u8) -> LabeledExample {
        LabeledExample::new(x, y == 1)
    }

    #[test]
    fn warmuth_rows() {
        let w = warmuth_class();
        assert_eq!(w.hypothesis_count(), 10);
        assert_eq!(w.instance_count(), 5);
        assert_eq!(w.row_string(5), "11010");
        assert_eq!(w.hypothesis_by_name("h6"), Some(5));
        assert_eq!(w.instance_by_name("x3"), Some(2));
    }

    #[test]
    fn consistency_and_version_spaces() {
        let w = warmuth_class();
        // x3, x4 are indices 2, 3
        assert!(w.consistent(2, &[z(2, 1), z(3, 1)]).unwrap());
        assert!(w.consistent(7, &[]).unwrap());
        assert!(!w.consistent(0, &[z(2, 1)]).unwrap());
        assert_eq!(w.version_space(&[z(0, 1)]).unwrap().to_vec(), vec![0, 4, 5, 7, 9]);
        assert_eq!(w.version_space(&[]).unwrap().count(), 10);
        assert!(w.consistent(10, &[]).is_err());
        assert!(w.version_space(&[z(5, 0)]).is_err());

        let p2 = powerset_class(2).unwrap();
        assert_eq!(p2.version_space(&[z(0, 0), z(1, 0)]).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn hamming_distances() {
        let w = warmuth_class();
        assert_eq!(w.hamming(0, 0), 0);
        assert_eq!(w.hamming(0, 1), 2);
        assert_eq!(w.hamming(0, 2), 4);
        let row: Vec<usize> = (0..10).map(|g| w.hamming(0, g)).collect();
        assert_eq!(row, vec![0, 2, 4, 4, 2, 1, 3, 3, 3, 3]);
    }

    #[test]
    fn powerset_layout() {
        let p1 = powerset_class(1).unwrap();
        assert_eq!(p1.row_string(0), "0");
        assert_eq!(p1.row_string(1), "1");
        let p7 = powerset_class(7).unwrap();
        assert_eq!(p7.hypothesis_count(), 128);
        assert_eq!(p7.row_string(0b1110000), "1110000");
        assert_eq!(powerset_index(&[true, true, true, false, false, false, false]), 112);
        assert!(matches!(powerset_class(17), Err(Error::Resource(_))));
    }

    #[test]
    fn disjoint_union_of_powersets_is_a_powerset() {
        let u = disjoint_union(&powerset_class(3).unwrap(), &powerset_class(4).unwrap()).unwrap();
        let p = powerset_class(7).unwrap();
        assert_eq!(u.instance_count(), 7);
        for h in 0..128 {
            assert_eq!(u.row(h), p.row(h));
        }
        let s = HypothesisClass::from_strings(&["1"]).unwrap();
        let ss = disjoint_union(&s, &s).unwrap();
        assert_eq!(ss.hypothesis_count(), 1);
        assert_eq!(ss.row_string(0), "11");
    }

    #[test]
    fn rejects_bad_classes() {
        assert!(HypothesisClass::from_strings(&["01", "01"]).is_err());
        assert!(HypothesisClass::from_strings(&["01", "0"]).is_err());
        assert!(HypothesisClass::from_strings(&["0x"]).is_err());
        assert!(HypothesisClass::new(0, vec![vec![]]).is_err());
    }

    #[test]
    fn realizable_spaces_of_powerset_are_subcubes() {
        let p = powerset_class(3).unwrap();
        let spaces = realizable_version_spaces(&p, 1000).unwrap();
        assert_eq!(spaces.len(), 27);
        assert_eq!(spaces[0].count(), 8);
    }
}
