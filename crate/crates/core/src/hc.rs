//! The `.hc` text format for hypothesis classes.
//!
//! ```text
//! # comment
//! instances 3
//! instance-names a b c
//! h0: 0 0 1
//! h1: 1 0 1
//! ```

use sha2::{Digest, Sha256};

use crate::class::HypothesisClass;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<HypothesisClass> {
    let mut n: Option<usize> = None;
    let mut instance_names: Option<Vec<String>> = None;
    let mut names = Vec::new();
    let mut rows = Vec::new();
    let mut row_lines: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("instances ") {
            if n.is_some() {
                return Err(parse_err(lineno, "duplicate `instances` line"));
            }
            let v: usize = rest
                .trim()
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad instance count {rest:?}")))?;
            if v == 0 {
                return Err(parse_err(lineno, "instance count must be positive"));
            }
            n = Some(v);
            continue;
        }
        let Some(n) = n else {
            return Err(parse_err(lineno, "expected `instances <n>` first"));
        };
        if let Some(rest) = line.strip_prefix("instance-names") {
            if !rows.is_empty() || instance_names.is_some() {
                return Err(parse_err(lineno, "`instance-names` must precede hypotheses"));
            }
            let v: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if v.len() != n {
                return Err(parse_err(
                    lineno,
                    format!("{} instance names for {n} instances", v.len()),
                ));
            }
            instance_names = Some(v);
            continue;
        }
        let (name, bits) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, "expected `<name>: <bits>`"))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(parse_err(lineno, format!("bad hypothesis name {name:?}")));
        }
        let mut row = Vec::with_capacity(n);
        for tok in bits.split_whitespace() {
            match tok {
                "0" => row.push(false),
                "1" => row.push(true),
                _ => return Err(parse_err(lineno, format!("non-bit token {tok:?}"))),
            }
        }
        if row.len() != n {
            return Err(parse_err(
                lineno,
                format!("{} labels, expected {n}", row.len()),
            ));
        }
        if let Some(prev) = rows.iter().position(|r| *r == row) {
            return Err(parse_err(
                lineno,
                format!("duplicate of hypothesis on line {}", row_lines[prev]),
            ));
        }
        if names.iter().any(|x| x == name) {
            return Err(parse_err(lineno, format!("duplicate hypothesis name {name:?}")));
        }
        names.push(name.to_owned());
        rows.push(row);
        row_lines.push(lineno);
    }

    let n = n.ok_or_else(|| parse_err(1, "missing `instances <n>` line"))?;
    if rows.is_empty() {
        return Err(parse_err(text.lines().count().max(1), "no hypotheses"));
    }
    let mut class = HypothesisClass::new(n, rows)?.with_hypothesis_names(names)?;
    if let Some(v) = instance_names {
        class = class.with_instance_names(v)?;
    }
    Ok(class)
}

/// Canonical serialization: hypotheses in stored order, LF line endings.
pub fn serialize(class: &HypothesisClass) -> String {
    let mut out = format!("instances {}\n", class.instance_count());
    if let Some(names) = class.instance_names() {
        out.push_str("instance-names ");
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    for h in 0..class.hypothesis_count() {
        out.push_str(&class.hypothesis_name(h));
        out.push(':');
        for x in 0..class.instance_count() {
            out.push_str(if class.label(h, x) { " 1" } else { " 0" });
        }
        out.push('\n');
    }
    out
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn class_hash(class: &HypothesisClass) -> String {
    hex::encode(Sha256::digest(serialize(class).as_bytes()))
}

pub fn load(path: &std::path::Path) -> Result<HypothesisClass> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::warmuth_class;

    #[test]
    fn warmuth_round_trips() {
        let w = warmuth_class();
        let text = serialize(&w);
        let back = parse(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!(serialize(&back), text);
        assert!(text.starts_with("instances 5\ninstance-names x1 x2 x3 x4 x5\nh1: 1 1 0 0 0\n"));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let dup = "instances 2\na: 0 1\n# c\nb: 0 1\n";
        assert_eq!(
            parse(dup).unwrap_err(),
            Error::Parse {
                line: 4,
                message: "duplicate of hypothesis on line 2".into()
            }
        );
        assert!(matches!(
            parse("instances 2\na: 0 1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("instances 2\na: 0 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse("a: 0 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn hash_tracks_content() {
        let w = warmuth_class();
        let h = class_hash(&w);
        assert_eq!(h.len(), 64);
        assert_eq!(h, class_hash(&parse(&serialize(&w)).unwrap()));
        assert_ne!(h, class_hash(&crate::class::chain_class()));
    }
}
