//! The line-oriented text format shared by presentation, Curv and morphism
//! manifests: `key = value` header lines, then `[section]` blocks. `#` starts
//! a comment.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operad::{Generator, Symmetry};

#[derive(Debug, Default)]
pub(crate) struct Sections {
    pub header: BTreeMap<String, String>,
    pub sections: BTreeMap<String, Vec<String>>,
}

impl Sections {
    pub fn parse(text: &str) -> Result<Sections> {
        let mut out = Sections::default();
        let mut current: Option<String> = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim().to_string();
                if out.sections.contains_key(&name) {
                    return Err(Error::Manifest(format!("section [{name}] appears twice")));
                }
                out.sections.insert(name.clone(), Vec::new());
                current = Some(name);
                continue;
            }
            match &current {
                Some(s) => out.sections.get_mut(s).expect("section exists").push(line.to_string()),
                None => {
                    let (k, v) = line
                        .split_once('=')
                        .ok_or_else(|| Error::Manifest(format!("expected `key = value`, found `{line}`")))?;
                    out.header.insert(k.trim().to_string(), v.trim().to_string());
                }
            }
        }
        Ok(out)
    }

    pub fn header(&self, key: &str) -> Result<&str> {
        self.header
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Manifest(format!("missing `{key}`")))
    }

    pub fn header_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.header(key)?
            .parse()
            .map_err(|_| Error::Manifest(format!("bad value for `{key}`")))
    }

    pub fn section(&self, name: &str) -> &[String] {
        self.sections.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `name = expression` lines of a section.
    pub fn assignments(&self, name: &str) -> Result<Vec<(String, String)>> {
        self.section(name)
            .iter()
            .map(|l| {
                l.split_once('=')
                    .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                    .ok_or_else(|| Error::Manifest(format!("expected `name = expression`, found `{l}`")))
            })
            .collect()
    }
}

pub(crate) fn parse_generator_line(line: &str) -> Result<Arc<Generator>> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() < 3 {
        return Err(Error::Manifest(format!("expected `name arity degree [flags]`, found `{line}`")));
    }
    let arity = parts[1]
        .parse()
        .map_err(|_| Error::Manifest(format!("bad arity in `{line}`")))?;
    let degree = parts[2]
        .parse()
        .map_err(|_| Error::Manifest(format!("bad degree in `{line}`")))?;
    let mut g = Generator::new(parts[0], arity, degree);
    for flag in &parts[3..] {
        match *flag {
            "invariant" => g.symmetry = Symmetry::FullyInvariant,
            "filtered" => g.filtered = true,
            other => return Err(Error::Manifest(format!("unknown generator flag `{other}`"))),
        }
    }
    Ok(g.shared())
}

pub(crate) fn generator_line(g: &Generator) -> String {
    let mut s = format!("{} {} {}", g.name, g.arity, g.degree);
    if g.symmetry == Symmetry::FullyInvariant {
        s.push_str(" invariant");
    }
    if g.filtered {
        s.push_str(" filtered");
    }
    s
}
