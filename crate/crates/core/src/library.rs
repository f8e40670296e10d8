//! Permutation-group descriptions and the bundled group library.
//!
//! A description is the JSON document `{"name", "degree", "generators"}` with
//! 0-indexed image arrays. The bundled library lives in `data/groups/` as plain
//! files of that shape; [`load_dir`] reads any directory laid out the same way.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescription {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_capped(DEFAULT_ORDER_CAP)
    }

    pub fn build_capped(&self, cap: usize) -> Result<FiniteGroup> {
        FiniteGroup::from_permutations_capped(&self.name, self.degree, &self.generators, cap)
    }
}

const BUILTIN: &[(&str, &str)] = &[
    ("a4", include_str!("../data/groups/a4.json")),
    ("a5", include_str!("../data/groups/a5.json")),
    ("a6", include_str!("../data/groups/a6.json")),
    ("c2", include_str!("../data/groups/c2.json")),
    ("c3", include_str!("../data/groups/c3.json")),
    ("c4", include_str!("../data/groups/c4.json")),
    ("d10", include_str!("../data/groups/d10.json")),
    ("d12", include_str!("../data/groups/d12.json")),
    ("d16", include_str!("../data/groups/d16.json")),
    ("d6", include_str!("../data/groups/d6.json")),
    ("d8", include_str!("../data/groups/d8.json")),
    ("elemab_2_3", include_str!("../data/groups/elemab_2_3.json")),
    ("elemab_3_2", include_str!("../data/groups/elemab_3_2.json")),
    (
        "extraspecial_27_minus",
        include_str!("../data/groups/extraspecial_27_minus.json"),
    ),
    (
        "extraspecial_27_plus",
        include_str!("../data/groups/extraspecial_27_plus.json"),
    ),
    (
        "extraspecial_32_minus",
        include_str!("../data/groups/extraspecial_32_minus.json"),
    ),
    (
        "extraspecial_32_plus",
        include_str!("../data/groups/extraspecial_32_plus.json"),
    ),
    ("klein4", include_str!("../data/groups/klein4.json")),
    ("q16", include_str!("../data/groups/q16.json")),
    ("q8", include_str!("../data/groups/q8.json")),
    ("s3", include_str!("../data/groups/s3.json")),
    ("s4", include_str!("../data/groups/s4.json")),
    ("s5", include_str!("../data/groups/s5.json")),
    ("s6", include_str!("../data/groups/s6.json")),
    ("sd16", include_str!("../data/groups/sd16.json")),
    ("trivial", include_str!("../data/groups/trivial.json")),
    (
        "wreath_c2_c2",
        include_str!("../data/groups/wreath_c2_c2.json"),
    ),
    (
        "wreath_c3_c3",
        include_str!("../data/groups/wreath_c3_c3.json"),
    ),
];

/// Names of the bundled groups, alphabetically.
pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

pub fn builtin(name: &str) -> Option<GroupDescription> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, text)| {
        GroupDescription::from_json(text).expect("bundled group file is valid JSON")
    })
}

/// Every bundled group description.
pub fn builtin_library() -> Vec<GroupDescription> {
    BUILTIN
        .iter()
        .map(|(_, text)| {
            GroupDescription::from_json(text).expect("bundled group file is valid JSON")
        })
        .collect()
}

/// Loads every `*.json` file of a directory, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<GroupDescription>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| GroupDescription::from_file(p))
        .collect()
}

/// Resolves either a bundled group name or a path to a group file.
pub fn resolve(spec: &str) -> Result<GroupDescription> {
    if let Some(d) = builtin(spec) {
        return Ok(d);
    }
    let path = Path::new(spec);
    if path.exists() {
        return GroupDescription::from_file(path);
    }
    Err(Error::Unsupported(format!(
        "`{spec}` is neither a bundled group nor a readable file"
    )))
}
