//! Line-based text formats for posets, embeddings, certificates, core
//! traces and census reports.
//!
//! Poset files:
//!
//! ```text
//! # comment
//! elem a
//! elem b
//! a < b
//! ```
//!
//! `elem NAME` declares an element; `A < B` asserts `A <= B` and declares
//! any element not seen yet, in order of first appearance. The transitive
//! closure is taken. [`write_poset`] emits every element and then the cover
//! pairs, and reading that output back reproduces it byte for byte.

use std::fmt::Write as _;

use posetdim_core::census::CensusReport;
use posetdim_core::dimension::{CubeEmbedding, DimCertificate};
use posetdim_core::homotopy::CoreTrace;
use posetdim_core::Poset;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Poset(#[from] posetdim_core::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.starts_with('#') && !name.contains('<')
}

/// Non-blank lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_poset(text: &str) -> Result<Poset, FormatError> {
    let mut names: Vec<String> = Vec::new();
    let mut index = std::collections::BTreeMap::new();
    let mut explicit = std::collections::BTreeSet::new();
    let mut pairs = Vec::new();
    let mut declare = |name: &str, names: &mut Vec<String>| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["elem", name] => {
                if !valid_name(name) {
                    return Err(syntax(line, format!("invalid element name `{name}`")));
                }
                if !explicit.insert(name.to_string()) {
                    return Err(posetdim_core::Error::DuplicateElement(name.to_string()).into());
                }
                declare(name, &mut names);
            }
            [a, "<", b] => {
                for name in [a, b] {
                    if !valid_name(name) {
                        return Err(syntax(line, format!("invalid element name `{name}`")));
                    }
                }
                let ia = declare(a, &mut names);
                let ib = declare(b, &mut names);
                pairs.push((ia, ib));
            }
            _ => {
                return Err(syntax(
                    line,
                    format!("expected `elem NAME` or `A < B`, found `{content}`"),
                ))
            }
        }
    }
    Ok(Poset::from_pairs(names, &pairs)?)
}

pub fn write_poset(p: &Poset) -> String {
    let mut out = String::new();
    for name in p.names() {
        writeln!(out, "elem {name}").unwrap();
    }
    for (a, b) in p.cover_names() {
        writeln!(out, "{a} < {b}").unwrap();
    }
    out
}

pub fn write_embedding(e: &CubeEmbedding) -> String {
    let mut out = format!("width {}\n", e.width());
    for (i, name) in e.poset().names().iter().enumerate() {
        let bits = e.bitstring(i);
        if bits.is_empty() {
            writeln!(out, "{name}").unwrap();
        } else {
            writeln!(out, "{name} {bits}").unwrap();
        }
    }
    out
}

pub fn write_certificate(c: &DimCertificate) -> String {
    format!(
        "value {}\nexhausted_below {}\n{}",
        c.value,
        c.exhausted_below,
        write_embedding(&c.witness)
    )
}

/// An embedding or certificate file before it is matched against a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingFile {
    pub width: usize,
    /// `(name, bitstring)` in file order.
    pub masks: Vec<(String, String)>,
    pub value: Option<usize>,
    pub exhausted_below: Option<bool>,
}

pub fn parse_embedding(text: &str) -> Result<EmbeddingFile, FormatError> {
    let mut width = None;
    let mut value = None;
    let mut exhausted_below = None;
    let mut masks = Vec::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["width", n] => {
                width = Some(n.parse().map_err(|_| syntax(line, "width is not a number"))?)
            }
            ["value", n] => {
                value = Some(n.parse().map_err(|_| syntax(line, "value is not a number"))?)
            }
            ["exhausted_below", b] => {
                exhausted_below = Some(match *b {
                    "true" => true,
                    "false" => false,
                    _ => return Err(syntax(line, "exhausted_below must be true or false")),
                })
            }
            [name, rest @ ..] if rest.len() <= 1 => {
                let Some(w) = width else {
                    return Err(syntax(line, "mask line before `width`"));
                };
                let bits = rest.first().copied().unwrap_or("");
                if bits.len() != w || !bits.chars().all(|c| c == '0' || c == '1') {
                    return Err(syntax(
                        line,
                        format!("`{bits}` is not a bitstring of length {w}"),
                    ));
                }
                masks.push((name.to_string(), bits.to_string()));
            }
            _ => return Err(syntax(line, format!("unrecognized line `{content}`"))),
        }
    }
    let width = width.ok_or_else(|| syntax(0, "missing `width` line"))?;
    Ok(EmbeddingFile {
        width,
        masks,
        value,
        exhausted_below,
    })
}

impl EmbeddingFile {
    /// Attaches the masks to `p` by element name. Every element needs
    /// exactly one mask.
    pub fn into_embedding(self, p: &Poset) -> Result<CubeEmbedding, FormatError> {
        let mut masks = vec![None; p.len()];
        for (name, bits) in &self.masks {
            let i = p.require(name)?;
            let mask = bits
                .chars()
                .enumerate()
                .filter(|&(_, c)| c == '1')
                .fold(0u64, |m, (b, _)| m | 1 << b);
            if masks[i].replace(mask).is_some() {
                return Err(posetdim_core::Error::InvalidEmbedding(format!(
                    "{name} has two masks"
                ))
                .into());
            }
        }
        let masks = masks
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    posetdim_core::Error::InvalidEmbedding(format!("no mask for {}", p.name(i)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CubeEmbedding::new(p.clone(), self.width, masks)?)
    }
}

/// One `REMOVE point kind witness` line per removal, then `CORE n`.
pub fn write_trace(t: &CoreTrace) -> String {
    let mut out = String::new();
    for w in &t.removals {
        writeln!(out, "REMOVE {} {} {}", w.point, w.kind, w.witness).unwrap();
    }
    writeln!(out, "CORE {}", t.core.len()).unwrap();
    out
}

/// One `CHECK` line per check; offending posets follow their line as
/// commented-out poset files.
pub fn write_report(r: &CensusReport) -> String {
    let mut out = String::new();
    for o in &r.outcomes {
        writeln!(
            out,
            "CHECK {} posets={} counterexamples={}",
            o.check,
            o.posets,
            o.counterexamples.len()
        )
        .unwrap();
        for (k, p) in o.counterexamples.iter().enumerate() {
            writeln!(out, "# counterexample {} for {}", k + 1, o.check).unwrap();
            for line in write_poset(p).lines() {
                writeln!(out, "#   {line}").unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use posetdim_core::constructions::chain;
    use posetdim_core::dimension::two_dimension;
    use posetdim_core::homotopy::core;

    const EXAMPLE: &str = "elem a\nelem b\nelem c\nelem d\nc < a\nd < b\nd < c\n";

    #[test]
    fn example_round_trips() {
        let p = parse_poset(EXAMPLE).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.leq(3, 0));
        assert_eq!(write_poset(&p), EXAMPLE);
    }

    #[test]
    fn relations_auto_declare() {
        let p = parse_poset("# a chain\nx < y\n\ny < z # trailing comment\n").unwrap();
        assert_eq!(p.names(), ["x", "y", "z"]);
        assert!(p.leq(0, 2));
        let p = parse_poset("x < y\nelem x\nelem w\n").unwrap();
        assert_eq!(p.names(), ["x", "y", "w"]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_poset("a <= b\n"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_poset("elem a\nelem a\n"),
            Err(FormatError::Poset(posetdim_core::Error::DuplicateElement(_)))
        ));
        assert!(matches!(
            parse_poset("a < b\nb < a\n"),
            Err(FormatError::Poset(posetdim_core::Error::Cycle { .. }))
        ));
        assert!(matches!(
            parse_poset("elem\n"),
            Err(FormatError::Syntax { .. })
        ));
    }

    #[test]
    fn certificate_round_trip() {
        let p = chain(3);
        let cert = two_dimension(&p).unwrap();
        let text = write_certificate(&cert);
        assert_eq!(
            text,
            "value 2\nexhausted_below true\nwidth 2\nc0 00\nc1 10\nc2 11\n"
        );
        let parsed = parse_embedding(&text).unwrap();
        assert_eq!(parsed.value, Some(2));
        assert_eq!(parsed.exhausted_below, Some(true));
        let e = parsed.into_embedding(&p).unwrap();
        assert_eq!(e, cert.witness);
    }

    #[test]
    fn zero_width_embedding() {
        let p = chain(1);
        let cert = two_dimension(&p).unwrap();
        let text = write_embedding(&cert.witness);
        assert_eq!(text, "width 0\nc0\n");
        let e = parse_embedding(&text).unwrap().into_embedding(&p).unwrap();
        assert!(e.verify());
    }

    #[test]
    fn embedding_errors() {
        assert!(parse_embedding("a 01\n").is_err());
        assert!(parse_embedding("width 2\na 011\n").is_err());
        assert!(parse_embedding("width 2\na 0x\n").is_err());
        let p = chain(2);
        let missing = parse_embedding("width 1\nc0 0\n").unwrap();
        assert!(missing.into_embedding(&p).is_err());
    }

    #[test]
    fn trace_text() {
        let t = core(&chain(3)).unwrap();
        assert_eq!(
            write_trace(&t),
            "REMOVE c0 up c1\nREMOVE c1 up c2\nCORE 1\n"
        );
    }
}
