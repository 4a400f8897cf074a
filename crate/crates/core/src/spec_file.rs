//! Plain-text group spec files.
//!
//! ```text
//! # comments start with '#'
//! name: AGL(1,5)
//! degree: 5
//! generators: (0 1 2 3 4), (1 2 4 3)
//! expected_sigma: 6 [published]
//! tags: table1, solvable
//! note: affine group of the line over F_5
//! maximal_subgroups:
//!   - (0 1 2 3 4), (1 4)(2 3)
//!   - (1 2 4 3)
//! ```
//!
//! Cycle words are 0-based and separated by commas; `()` is the identity.
//! `expected_sigma` is an integer or `inf`, followed by its source in
//! brackets. Every `maximal_subgroups` entry is one generator list.

use std::fmt;
use std::path::Path;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedSigma {
    /// `None` means infinite.
    pub value: Option<u64>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub expected_sigma: Option<ExpectedSigma>,
    pub tags: Vec<String>,
    pub note: Option<String>,
    pub maximal_subgroups: Option<Vec<Vec<Perm>>>,
}

fn split_words(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .collect()
}

impl GroupSpec {
    pub fn new(name: &str, degree: usize, generators: Vec<Perm>) -> Self {
        GroupSpec {
            name: name.to_string(),
            degree,
            generators,
            expected_sigma: None,
            tags: Vec::new(),
            note: None,
            maximal_subgroups: None,
        }
    }

    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut name = None;
        let mut degree = None;
        let mut gens_line = None;
        let mut expected = None;
        let mut tags = Vec::new();
        let mut note = None;
        let mut maximals: Option<Vec<(usize, String)>> = None;
        let mut in_maximals = false;

        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(item) = line.strip_prefix('-') {
                if !in_maximals {
                    return Err(Error::SpecFile {
                        line: line_no,
                        reason: "list item outside maximal_subgroups".into(),
                    });
                }
                maximals
                    .get_or_insert_with(Vec::new)
                    .push((line_no, item.trim().to_string()));
                continue;
            }
            in_maximals = false;
            let (key, value) = line.split_once(':').ok_or_else(|| Error::SpecFile {
                line: line_no,
                reason: "expected `key: value`".into(),
            })?;
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "degree" => {
                    degree = Some(value.parse::<usize>().map_err(|_| Error::SpecFile {
                        line: line_no,
                        reason: format!("bad degree `{value}`"),
                    })?)
                }
                "generators" => gens_line = Some((line_no, value.to_string())),
                "expected_sigma" => {
                    let (v, prov) = match value.split_once('[') {
                        Some((v, p)) => (v.trim(), p.trim_end_matches(']').trim().to_string()),
                        None => (value, String::new()),
                    };
                    let value = if v == "inf" {
                        None
                    } else {
                        Some(v.parse::<u64>().map_err(|_| Error::SpecFile {
                            line: line_no,
                            reason: format!("bad expected_sigma `{v}`"),
                        })?)
                    };
                    expected = Some(ExpectedSigma {
                        value,
                        source: prov,
                    });
                }
                "tags" => tags = split_words(value).into_iter().map(String::from).collect(),
                "note" => note = Some(value.to_string()),
                "maximal_subgroups" => {
                    in_maximals = true;
                    maximals.get_or_insert_with(Vec::new);
                }
                other => {
                    return Err(Error::SpecFile {
                        line: line_no,
                        reason: format!("unknown key `{other}`"),
                    })
                }
            }
        }

        let missing = |what: &str| Error::SpecFile {
            line: 0,
            reason: format!("missing `{what}`"),
        };
        let degree = degree.ok_or_else(|| missing("degree"))?;
        let (gl, gens) = gens_line.ok_or_else(|| missing("generators"))?;
        let parse_list = |line: usize, s: &str| -> Result<Vec<Perm>> {
            split_words(s)
                .into_iter()
                .map(|w| {
                    Perm::parse(degree, w).map_err(|e| Error::SpecFile {
                        line,
                        reason: e.to_string(),
                    })
                })
                .collect()
        };
        let generators = parse_list(gl, &gens)?;
        let maximal_subgroups = maximals
            .map(|items| {
                items
                    .iter()
                    .map(|(l, s)| parse_list(*l, s))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(GroupSpec {
            name: name.ok_or_else(|| missing("name"))?,
            degree,
            generators,
            expected_sigma: expected,
            tags,
            note,
            maximal_subgroups,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<GroupSpec> {
        GroupSpec::parse(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self, caps: &Caps) -> Result<Group> {
        Group::from_perms(self.degree, self.generators.clone(), caps)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

fn join_perms(ps: &[Perm]) -> String {
    ps.iter()
        .map(Perm::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        writeln!(f, "degree: {}", self.degree)?;
        writeln!(f, "generators: {}", join_perms(&self.generators))?;
        if let Some(e) = &self.expected_sigma {
            let v = e.value.map_or("inf".to_string(), |v| v.to_string());
            if e.source.is_empty() {
                writeln!(f, "expected_sigma: {v}")?;
            } else {
                writeln!(f, "expected_sigma: {v} [{}]", e.source)?;
            }
        }
        if !self.tags.is_empty() {
            writeln!(f, "tags: {}", self.tags.join(", "))?;
        }
        if let Some(n) = &self.note {
            writeln!(f, "note: {n}")?;
        }
        if let Some(ms) = &self.maximal_subgroups {
            writeln!(f, "maximal_subgroups:")?;
            for m in ms {
                writeln!(f, "  - {}", join_perms(m))?;
            }
        }
        Ok(())
    }
}
