//! The categories `A^(n)(G)` and the Quillen category.
//!
//! Objects are the elementary abelian p-subgroups of `G` (trivial one included).
//! A morphism `f : W → V` is at level `n` when every n-tuple of `W` is carried by
//! `f` to a tuple simultaneously conjugate to it. Level 0 admits every injective
//! homomorphism; level ∞ is the Quillen category of conjugation-induced maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::elemab::{conjugation_matrix, injective_homs, LinearMorphism, SubgroupFamily};
use crate::error::{Error, Result};
use crate::fp::{self, FpMatrix};
use crate::group::GroupElem;
use crate::library::GroupDescription;

/// Level of a chromatic category; `Infinity` is the Quillen category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Finite(u32),
    Infinity,
}

impl Level {
    /// Rank of the subgroups whose generating tuples decide membership in `W`.
    fn test_rank(self, rank_w: usize) -> usize {
        match self {
            Level::Finite(n) => (n as usize).min(rank_w),
            Level::Infinity => rank_w,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Level::Infinity),
            other => other.parse::<u32>().map(Level::Finite).map_err(|_| {
                Error::Parse(format!(
                    "level must be a non-negative integer or `inf`, got `{other}`"
                ))
            }),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Level::Finite(n) => serializer.serialize_u32(*n),
            Level::Infinity => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CategoryKind {
    Chromatic(Level),
    Quillen,
    /// Restriction-defined category of a subring with the given number of generators.
    Restriction {
        generators: usize,
    },
}

/// Outcome of the level-n test for one morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelCertificate {
    /// One witness per tested subgroup `S ≤ W`, keyed by the basis of `S`.
    Holds(Vec<(Vec<GroupElem>, GroupElem)>),
    /// Basis of a subgroup `S ≤ W` whose basis tuple and image admit no witness.
    Fails(Vec<GroupElem>),
}

impl LevelCertificate {
    pub fn holds(&self) -> bool {
        matches!(self, LevelCertificate::Holds(_))
    }
}

/// Decides whether `f` lies in `A^(n)`.
///
/// Only the subgroups `S ≤ W` of rank exactly `min(n, rank W)` are tested: a
/// witness conjugating a basis of `S` conjugates all of `S`, and a witness for
/// `S` also serves every subgroup of `S`.
pub fn is_level_n_morphism(
    family: &SubgroupFamily,
    f: &LinearMorphism,
    n: Level,
) -> LevelCertificate {
    let group = &family.group;
    let w = family.get(f.source);
    let v = family.get(f.target);
    let k = n.test_rank(w.rank());
    let mut witnesses = Vec::new();
    for basis in fp::subspaces(family.p, w.rank(), k) {
        let tuple: Vec<GroupElem> = basis.iter().map(|c| w.element_at(c)).collect();
        let image: Vec<GroupElem> = basis
            .iter()
            .map(|c| v.element_at(&f.matrix.mul_vec(c)))
            .collect();
        match group.simultaneous_conjugacy(&tuple, &image) {
            Some(g) => witnesses.push((tuple, g)),
            None => return LevelCertificate::Fails(tuple),
        }
    }
    LevelCertificate::Holds(witnesses)
}

/// Cheap necessary condition for every level `n ≥ 1`: each element is sent to a conjugate.
fn preserves_classes(family: &SubgroupFamily, f: &LinearMorphism) -> bool {
    let group = &family.group;
    let w = family.get(f.source);
    let v = family.get(f.target);
    fp::all_vectors(family.p, w.rank()).all(|c| {
        let x = w.element_at(&c);
        let y = v.element_at(&f.matrix.mul_vec(&c));
        group.are_conjugate(x, y)
    })
}

/// A category on the elementary abelian p-subgroups of a group.
#[derive(Debug, Clone)]
pub struct ChromCategory {
    pub family: Arc<SubgroupFamily>,
    pub kind: CategoryKind,
    homs: BTreeMap<(usize, usize), BTreeSet<FpMatrix>>,
    witnesses: BTreeMap<(usize, usize, FpMatrix), GroupElem>,
}

/// Conjugation-induced morphisms, each with its least-index inducing element.
fn conjugation_morphisms(family: &SubgroupFamily) -> BTreeMap<(usize, usize, FpMatrix), GroupElem> {
    let group = &family.group;
    let supers: Vec<Vec<usize>> = (0..family.len()).map(|id| family.supergroups(id)).collect();
    let per_source: Vec<Vec<((usize, usize, FpMatrix), GroupElem)>> = (0..family.len())
        .into_par_iter()
        .map(|wid| {
            let w = family.get(wid);
            let mut found: BTreeMap<(usize, usize, FpMatrix), GroupElem> = BTreeMap::new();
            for h in group.elements() {
                let uid = family.conjugate_subgroup(wid, h);
                let u = family.get(uid);
                let into_u = conjugation_matrix(group, w, u, h).expect("h W h⁻¹ = U");
                for &vid in &supers[uid] {
                    let incl = u.inclusion_matrix(family.get(vid)).expect("U ≤ V");
                    found.entry((wid, vid, incl.mul(&into_u))).or_insert(h);
                }
            }
            found.into_iter().collect()
        })
        .collect();
    per_source.into_iter().flatten().collect()
}

impl ChromCategory {
    fn from_parts(
        family: Arc<SubgroupFamily>,
        kind: CategoryKind,
        homs: BTreeMap<(usize, usize), BTreeSet<FpMatrix>>,
        witnesses: BTreeMap<(usize, usize, FpMatrix), GroupElem>,
    ) -> Self {
        ChromCategory {
            family,
            kind,
            homs,
            witnesses,
        }
    }

    /// Builds a category from an arbitrary morphism predicate over all injective
    /// homomorphisms. Conjugation witnesses are recorded for the members they induce.
    pub fn from_predicate<F>(family: Arc<SubgroupFamily>, kind: CategoryKind, keep: F) -> Self
    where
        F: Fn(&LinearMorphism) -> bool + Sync,
    {
        let n = family.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| family.get(a).rank() <= family.get(b).rank())
            .collect();
        let homs: BTreeMap<(usize, usize), BTreeSet<FpMatrix>> = pairs
            .par_iter()
            .filter_map(|&(a, b)| {
                let set: BTreeSet<FpMatrix> = injective_homs(family.get(a), family.get(b))
                    .into_iter()
                    .filter(|f| keep(f))
                    .map(|f| f.matrix)
                    .collect();
                (!set.is_empty()).then_some(((a, b), set))
            })
            .collect();
        let witnesses = conjugation_morphisms(&family)
            .into_iter()
            .filter(|((a, b, m), _)| homs.get(&(*a, *b)).is_some_and(|s| s.contains(m)))
            .collect();
        Self::from_parts(family, kind, homs, witnesses)
    }

    pub fn objects(&self) -> &[crate::elemab::ElemAbelian] {
        &self.family.subgroups
    }

    pub fn p(&self) -> u32 {
        self.family.p
    }

    /// `A^(n)`, `A` or `C_R` with the generator count.
    pub fn kind_label(&self) -> String {
        match &self.kind {
            CategoryKind::Chromatic(n) => format!("A^({n})"),
            CategoryKind::Quillen => "A".to_string(),
            CategoryKind::Restriction { generators } => format!("C_R ({generators} generators)"),
        }
    }

    pub fn hom(&self, w: usize, v: usize) -> impl Iterator<Item = &FpMatrix> + '_ {
        self.homs.get(&(w, v)).into_iter().flatten()
    }

    pub fn hom_size(&self, w: usize, v: usize) -> usize {
        self.homs.get(&(w, v)).map_or(0, BTreeSet::len)
    }

    pub fn hom_morphisms(&self, w: usize, v: usize) -> Vec<LinearMorphism> {
        self.hom(w, v)
            .map(|m| LinearMorphism {
                source: w,
                target: v,
                matrix: m.clone(),
            })
            .collect()
    }

    /// Every morphism, ordered by (source, target, matrix).
    pub fn morphisms(&self) -> impl Iterator<Item = LinearMorphism> + '_ {
        self.homs.iter().flat_map(|(&(w, v), set)| {
            set.iter().map(move |m| LinearMorphism {
                source: w,
                target: v,
                matrix: m.clone(),
            })
        })
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.values().map(BTreeSet::len).sum()
    }

    pub fn contains(&self, f: &LinearMorphism) -> bool {
        self.homs
            .get(&(f.source, f.target))
            .is_some_and(|s| s.contains(&f.matrix))
    }

    /// A conjugating element inducing `f`, if `f` is conjugation-induced.
    pub fn witness(&self, f: &LinearMorphism) -> Option<GroupElem> {
        self.witnesses
            .get(&(f.source, f.target, f.matrix.clone()))
            .copied()
    }

    pub fn witness_count(&self) -> usize {
        self.witnesses.len()
    }

    /// Hom-set-by-hom-set equality over the same object list.
    pub fn same_homs(&self, other: &ChromCategory) -> bool {
        self.family.len() == other.family.len() && self.homs == other.homs
    }

    pub fn is_subcategory_of(&self, other: &ChromCategory) -> bool {
        self.homs
            .iter()
            .all(|(k, set)| other.homs.get(k).is_some_and(|o| set.is_subset(o)))
    }

    /// Morphisms of `self` missing from `other`.
    pub fn difference(&self, other: &ChromCategory) -> Vec<LinearMorphism> {
        self.morphisms().filter(|f| !other.contains(f)).collect()
    }

    /// Whether `W` and `V` are isomorphic in this category.
    pub fn isomorphic(&self, w: usize, v: usize) -> bool {
        if self.family.get(w).rank() != self.family.get(v).rank() {
            return false;
        }
        self.hom_morphisms(w, v)
            .iter()
            .any(|f| f.inverse().is_some_and(|g| self.contains(&g)))
    }
}

/// `A^(n)(G)`; level ∞ delegates to [`quillen_category`].
pub fn build_category(family: &Arc<SubgroupFamily>, n: Level) -> ChromCategory {
    match n {
        Level::Infinity => {
            let mut c = quillen_category(family);
            c.kind = CategoryKind::Chromatic(Level::Infinity);
            c
        }
        Level::Finite(0) => {
            ChromCategory::from_predicate(family.clone(), CategoryKind::Chromatic(n), |_| true)
        }
        Level::Finite(_) => {
            ChromCategory::from_predicate(family.clone(), CategoryKind::Chromatic(n), |f| {
                preserves_classes(family, f) && is_level_n_morphism(family, f, n).holds()
            })
        }
    }
}

/// Morphisms `x ↦ g x g⁻¹` followed by inclusion, found by scanning `g ∈ G`.
pub fn quillen_category(family: &Arc<SubgroupFamily>) -> ChromCategory {
    let witnesses = conjugation_morphisms(family);
    let mut homs: BTreeMap<(usize, usize), BTreeSet<FpMatrix>> = BTreeMap::new();
    for (w, v, m) in witnesses.keys() {
        homs.entry((*w, *v)).or_default().insert(m.clone());
    }
    ChromCategory::from_parts(family.clone(), CategoryKind::Quillen, homs, witnesses)
}

/// Smallest `n ≥ 1` with `A^(n) = A`.
pub fn stabilization_rank(family: &Arc<SubgroupFamily>) -> u32 {
    let quillen = quillen_category(family);
    let top = family.p_rank().max(1) as u32;
    (1..=top)
        .find(|&n| build_category(family, Level::Finite(n)).same_homs(&quillen))
        .unwrap_or(top)
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelComparison {
    pub n: u32,
    pub morphisms: usize,
    pub morphisms_next: usize,
    /// `A^(n) ⊋ A^(n+1)`.
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomChainReport {
    pub group: String,
    pub p: u32,
    pub p_rank: usize,
    pub stabilization_rank: u32,
    pub levels: Vec<LevelComparison>,
}

/// Per-level strictness of the chain `A^(1) ⊇ A^(2) ⊇ … ⊇ A^(t+1) = A`, `t` the p-rank.
pub fn hom_chain_report(family: &Arc<SubgroupFamily>) -> HomChainReport {
    let t = family.p_rank();
    let cats: Vec<ChromCategory> = (1..=t as u32 + 1)
        .map(|n| build_category(family, Level::Finite(n)))
        .collect();
    let levels = (0..t)
        .map(|i| LevelComparison {
            n: i as u32 + 1,
            morphisms: cats[i].morphism_count(),
            morphisms_next: cats[i + 1].morphism_count(),
            strict: !cats[i].same_homs(&cats[i + 1]),
        })
        .collect();
    let quillen = quillen_category(family);
    let stabilization = cats
        .iter()
        .position(|c| c.same_homs(&quillen))
        .map_or(t.max(1) as u32, |i| i as u32 + 1);
    HomChainReport {
        group: family.group.name().to_string(),
        p: family.p,
        p_rank: t,
        stabilization_rank: stabilization,
        levels,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessScanReport {
    pub p: u32,
    pub n: u32,
    /// Groups with `A^(n) ≠ A^(n+1)`.
    pub witnesses: Vec<String>,
    pub examined: Vec<String>,
    pub skipped: Vec<(String, String)>,
}

/// Scans a library for groups separating level `n` from level `n + 1`.
pub fn witness_scan(
    library: &[GroupDescription],
    p: u32,
    n: u32,
    cap: usize,
) -> Result<WitnessScanReport> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut report = WitnessScanReport {
        p,
        n,
        witnesses: Vec::new(),
        examined: Vec::new(),
        skipped: Vec::new(),
    };
    for desc in library {
        let group = match desc.build_capped(cap) {
            Ok(g) => g,
            Err(e) => {
                log::warn!("skipping {}: {e}", desc.name);
                report.skipped.push((desc.name.clone(), e.to_string()));
                continue;
            }
        };
        let family = Arc::new(SubgroupFamily::new(Arc::new(group), p)?);
        report.examined.push(desc.name.clone());
        // both levels coincide with the Quillen category once n reaches the p-rank
        if n as usize >= family.p_rank() {
            continue;
        }
        let lower = build_category(&family, Level::Finite(n));
        let upper = build_category(&family, Level::Finite(n + 1));
        if !lower.same_homs(&upper) {
            report.witnesses.push(desc.name.clone());
        }
    }
    Ok(report)
}
