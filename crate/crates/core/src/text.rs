//! Line-oriented poset text format.
//!
//! ```text
//! # comment
//! elements: a b c
//! rel: a b
//! rel: b c
//! ```
//!
//! `rel: A B` means `A < B`; the relation is closed transitively on load.
//! Serialization writes the covering pairs only.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::Poset;

pub fn parse_poset(input: &str) -> Result<Poset> {
    let mut elements: Option<Vec<&str>> = None;
    let mut pairs = Vec::new();
    for (number, raw) in input.lines().enumerate() {
        let line_no = number + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if let Some(rest) = line.strip_prefix("elements:") {
            if elements.is_some() {
                return Err(err("duplicate `elements:` line".into()));
            }
            elements = Some(rest.split_whitespace().collect());
        } else if let Some(rest) = line.strip_prefix("rel:") {
            if elements.is_none() {
                return Err(err("`rel:` before `elements:`".into()));
            }
            let ids: Vec<&str> = rest.split_whitespace().collect();
            let [a, b] = ids[..] else {
                return Err(err(format!(
                    "expected two identifiers, found {}",
                    ids.len()
                )));
            };
            pairs.push((a, b));
        } else {
            return Err(err(format!("unrecognized line `{line}`")));
        }
    }
    let elements = elements.ok_or(Error::Parse {
        line: 0,
        message: "missing `elements:` line".into(),
    })?;
    Poset::build(&elements, &pairs)
}

pub fn to_text(poset: &Poset) -> String {
    let mut out = String::from("elements:");
    for l in poset.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for (a, b) in poset.cover_relations() {
        let _ = writeln!(out, "rel: {} {}", poset.label(a), poset.label(b));
    }
    out
}

impl std::fmt::Display for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&to_text(self))
    }
}

impl std::str::FromStr for Poset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poset> {
        parse_poset(s)
    }
}
