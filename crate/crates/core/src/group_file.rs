//! Text format for permutation groups and quotients.
//!
//! ```text
//! # comment
//! degree 5
//! gen (1,2,3,4,5)
//! gen (1,2,3)
//! kernel
//! gen (1,2)(3,4)
//! ```
//!
//! Generators after a `kernel` line belong to the normal subgroup K.

use std::fmt::Write as _;

use crate::bsgs::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::small_group::QuotientGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    /// Generators of the kernel block, if the file has one.
    pub kernel: Option<Vec<Permutation>>,
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut generators = Vec::new();
        let mut kernel: Option<Vec<Permutation>> = None;
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "degree" => {
                    if degree.is_some() {
                        return Err(parse_err(n, "degree given twice"));
                    }
                    let d: usize = rest.parse().map_err(|_| parse_err(n, format!("bad degree {rest:?}")))?;
                    if d == 0 {
                        return Err(parse_err(n, "degree must be positive"));
                    }
                    degree = Some(d);
                }
                "gen" => {
                    let d = degree.ok_or_else(|| parse_err(n, "gen before degree"))?;
                    let p = Permutation::parse(rest, d).map_err(|e| parse_err(n, e))?;
                    match kernel.as_mut() {
                        Some(k) => k.push(p),
                        None => generators.push(p),
                    }
                }
                "kernel" => {
                    if degree.is_none() {
                        return Err(parse_err(n, "kernel before degree"));
                    }
                    if !rest.is_empty() {
                        return Err(parse_err(n, "kernel takes no arguments"));
                    }
                    if kernel.is_some() {
                        return Err(parse_err(n, "second kernel block"));
                    }
                    kernel = Some(Vec::new());
                }
                other => return Err(parse_err(n, format!("unknown keyword {other:?}"))),
            }
        }
        let degree = degree.ok_or_else(|| Error::Parse("missing degree line".into()))?;
        Ok(GroupFile {
            degree,
            generators,
            kernel,
        })
    }

    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree, self.generators.clone())
    }

    /// G/K, with K required to be normal in G. Without a kernel block K = 1.
    pub fn quotient(&self) -> Result<QuotientGroup> {
        let g = self.group()?;
        let k = PermGroup::new(self.degree, self.kernel.clone().unwrap_or_default())?;
        QuotientGroup::new(g, k)
    }

    /// The file text, with optional leading comment lines.
    pub fn render(&self, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "degree {}", self.degree);
        for g in &self.generators {
            let _ = writeln!(out, "gen {g}");
        }
        if let Some(k) = &self.kernel {
            out.push_str("kernel\n");
            for g in k {
                let _ = writeln!(out, "gen {g}");
            }
        }
        out
    }

    pub fn from_group(g: &PermGroup) -> Self {
        GroupFile {
            degree: g.degree(),
            generators: g.generators().to_vec(),
            kernel: None,
        }
    }
}
