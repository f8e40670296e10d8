//! Restriction-defined categories `C_R` for subrings of mod-2 group cohomology
//! presented by invariant polynomials on an elementary abelian Sylow subgroup.
//!
//! The morphism condition `f* Res_V(x) = Res_W(x)` is checked exactly on the
//! listed generators, not modulo nilpotents.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chromcat::{CategoryKind, ChromCategory};
use crate::elemab::{conjugation_matrix, LinearMorphism, SubgroupFamily};
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::group::GroupElem;
use crate::invariants::LinearAction;
use crate::poly::{default_names, PolyFp};

/// On-disk description of a subring: polynomial strings in the Sylow variables and,
/// optionally, the Weyl matrices the author expects (validated against the group).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl: Option<Vec<Vec<Vec<u32>>>>,
}

impl GeneratorFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

const BUILTIN: &[(&str, &str)] = &[
    ("a4_full", include_str!("../data/subrings/a4_full.json")),
    ("a4_chern", include_str!("../data/subrings/a4_chern.json")),
];

pub fn builtin_generator_file(name: &str) -> Option<GeneratorFile> {
    BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| GeneratorFile::from_json(text).expect("bundled generator file parses"))
}

pub fn builtin_generator_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

/// Bundled name or filesystem path.
pub fn resolve_generator_file(spec: &str) -> Result<GeneratorFile> {
    if let Some(f) = builtin_generator_file(spec) {
        return Ok(f);
    }
    let path = Path::new(spec);
    if path.exists() {
        return GeneratorFile::from_file(path);
    }
    Err(Error::Unsupported(format!(
        "`{spec}` is neither a bundled generator set ({}) nor a readable file",
        builtin_generator_names().join(", ")
    )))
}

#[derive(Debug, Clone)]
pub struct SubringPresentation {
    pub family: Arc<SubgroupFamily>,
    /// Object id of the elementary abelian Sylow subgroup `P`.
    pub sylow: usize,
    pub weyl: LinearAction,
    /// Elements of `N_G(P)` inducing each Weyl matrix (least index first).
    pub normalizer_witnesses: Vec<(FpMatrix, GroupElem)>,
    pub generators: Vec<PolyFp>,
    /// For each object `V`, a matrix embedding `V` into `P` through a conjugation.
    embeddings: Vec<FpMatrix>,
}

fn two_part(n: usize) -> usize {
    1 << n.trailing_zeros()
}

impl SubringPresentation {
    pub fn new(family: Arc<SubgroupFamily>, generators: Vec<PolyFp>) -> Result<Self> {
        if family.p != 2 {
            return Err(Error::Unsupported(format!(
                "restriction categories are implemented for p = 2 only, got p = {}",
                family.p
            )));
        }
        let group = family.group.clone();
        let sylow = family
            .subgroups
            .iter()
            .filter(|s| s.order() == two_part(group.order()))
            .map(|s| s.id)
            .next()
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "{} has no elementary abelian Sylow 2-subgroup",
                    group.name()
                ))
            })?;
        let p_obj = family.get(sylow);
        let rank = p_obj.rank();

        let mut embeddings = Vec::with_capacity(family.len());
        for v in &family.subgroups {
            let h = group
                .elements()
                .find(|&h| {
                    v.elements
                        .iter()
                        .all(|&x| p_obj.contains(group.conjugate(x, h)))
                })
                .ok_or_else(|| {
                    Error::Unsupported(format!(
                        "subgroup {} is not conjugate into the Sylow subgroup",
                        v.id
                    ))
                })?;
            embeddings.push(conjugation_matrix(&group, v, p_obj, h).expect("conjugate lies in P"));
        }

        let mut seen = BTreeSet::new();
        let mut normalizer_witnesses = Vec::new();
        for g in group.elements() {
            if let Some(a) = conjugation_matrix(&group, p_obj, p_obj, g) {
                let sigma = a.transpose();
                if seen.insert(sigma.clone()) {
                    normalizer_witnesses.push((sigma, g));
                }
            }
        }
        let weyl = LinearAction::new(
            2,
            rank,
            normalizer_witnesses
                .iter()
                .map(|(m, _)| m.clone())
                .collect(),
        )?;

        for (i, x) in generators.iter().enumerate() {
            if x.prime() != 2 || x.nvars() != rank {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} lives in {} variables over F_{}, the Sylow subgroup has rank {rank}",
                    x.nvars(),
                    x.prime()
                )));
            }
            if !x.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if !weyl.is_invariant(x)? {
                return Err(Error::Unsupported(format!(
                    "generator `{x}` is not Weyl-invariant"
                )));
            }
        }
        Ok(SubringPresentation {
            family,
            sylow,
            weyl,
            normalizer_witnesses,
            generators,
            embeddings,
        })
    }

    /// Parses a generator file against this group, checking any declared Weyl matrices.
    pub fn from_generator_file(family: Arc<SubgroupFamily>, file: &GeneratorFile) -> Result<Self> {
        let probe = Self::new(family.clone(), Vec::new())?;
        let rank = probe.rank();
        let names = match &file.variables {
            Some(v) if v.len() != rank => {
                return Err(Error::DimensionMismatch(format!(
                    "{} variable names for a Sylow subgroup of rank {rank}",
                    v.len()
                )))
            }
            Some(v) => v.clone(),
            None => default_names(rank),
        };
        if let Some(declared) = &file.weyl {
            let mats = declared
                .iter()
                .map(|rows| {
                    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                        Err(Error::DimensionMismatch(format!(
                            "Weyl matrix must be {rank}×{rank}"
                        )))
                    } else {
                        Ok(FpMatrix::from_rows(2, rows))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let declared_action = LinearAction::new(2, rank, mats)?;
            let a: BTreeSet<&FpMatrix> = declared_action.elements().iter().collect();
            let b: BTreeSet<&FpMatrix> = probe.weyl.elements().iter().collect();
            if a != b {
                return Err(Error::Parse(format!(
                    "declared Weyl action (order {}) does not match the normalizer action (order {})",
                    a.len(),
                    b.len()
                )));
            }
        }
        let generators = file
            .generators
            .iter()
            .map(|s| PolyFp::parse(s, &names, 2))
            .collect::<Result<Vec<_>>>()?;
        Self::new(family, generators)
    }

    pub fn rank(&self) -> usize {
        self.family.get(self.sylow).rank()
    }

    /// `Res_V` for `V ≤ P`: substitution along the transpose of the inclusion matrix.
    pub fn restriction(&self, v: usize, f: &PolyFp) -> Result<PolyFp> {
        let p_obj = self.family.get(self.sylow);
        let obj = self.family.get(v);
        if !obj.is_subgroup_of(p_obj) {
            return Err(Error::NotInSubgroup(v));
        }
        f.substitute_linear(&obj.inclusion_matrix(p_obj)?.transpose())
    }

    /// `Res_V` for any object, conjugating it into `P` first.
    pub fn restriction_to_object(&self, v: usize, f: &PolyFp) -> Result<PolyFp> {
        f.substitute_linear(&self.embeddings[v].transpose())
    }

    /// Every conjugation-embedding of `V` into `P`.
    pub fn embedding_choices(&self, v: usize) -> BTreeSet<FpMatrix> {
        let group = &self.family.group;
        let p_obj = self.family.get(self.sylow);
        let obj = self.family.get(v);
        group
            .elements()
            .filter_map(|h| conjugation_matrix(group, obj, p_obj, h))
            .collect()
    }

    /// Whether `Res_V` of every generator is independent of the embedding chosen.
    pub fn restriction_well_defined(&self) -> Result<bool> {
        for v in 0..self.family.len() {
            for k in self.embedding_choices(v) {
                for x in &self.generators {
                    if x.substitute_linear(&k.transpose())? != self.restriction_to_object(v, x)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// A generator `x` with `f* Res_V(x) ≠ Res_W(x)`.
    pub fn distinguishing_generator(&self, f: &LinearMorphism) -> Option<&PolyFp> {
        let along = self.embeddings[f.target].mul(&f.matrix).transpose();
        let w_embedding = self.embeddings[f.source].transpose();
        self.generators.iter().find(|x| {
            x.substitute_linear(&along).expect("dimensions agree")
                != x.substitute_linear(&w_embedding).expect("dimensions agree")
        })
    }

    pub fn accepts(&self, f: &LinearMorphism) -> bool {
        self.distinguishing_generator(f).is_none()
    }
}

/// The category `C_R`: every injective `f: W → V` with `f* Res_V = Res_W` on the generators.
pub fn build_cr(presentation: &SubringPresentation) -> ChromCategory {
    ChromCategory::from_predicate(
        presentation.family.clone(),
        CategoryKind::Restriction {
            generators: presentation.generators.len(),
        },
        |f| presentation.accepts(f),
    )
}

/// `D_1`, `D_0` and `η` in `F_2[x, y]`.
pub fn a4_invariants() -> (PolyFp, PolyFp, PolyFp) {
    let names = default_names(2);
    let parse = |s: &str| PolyFp::parse(s, &names, 2).expect("fixed polynomial");
    (
        parse("x^2 + x*y + y^2"),
        parse("x^2*y + x*y^2"),
        parse("x^3 + x^2*y + y^3"),
    )
}
