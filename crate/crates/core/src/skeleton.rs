//! Skeleta of the categories in [`crate::chromcat`]: isomorphism classes of
//! objects, automorphism data and hom-set orbit structure.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::chromcat::ChromCategory;
use crate::fp::FpMatrix;

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonClass {
    pub rank: usize,
    pub representative: usize,
    pub members: Vec<usize>,
    pub aut_order: usize,
    pub aut_abelian: bool,
    pub aut_exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub size: usize,
    pub stabilizer: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonEdge {
    pub source: usize,
    pub target: usize,
    pub morphisms: usize,
    /// Orbits under post-composition by `Aut(target)`.
    pub orbits: Vec<Orbit>,
    /// Number of orbits under `Aut(target) × Aut(source)` acting on both sides.
    pub two_sided_orbits: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonReport {
    pub group: String,
    pub p: u32,
    pub category: String,
    pub classes: Vec<SkeletonClass>,
    pub edges: Vec<SkeletonEdge>,
}

fn matrix_order(m: &FpMatrix) -> u64 {
    let mut power = m.clone();
    let mut k = 1;
    while !power.is_identity() {
        power = power.mul(m);
        k += 1;
    }
    k
}

/// Isomorphism classes of objects and the orbit structure of hom-sets between
/// class representatives. The rank-0 object is left out unless it is the only one.
pub fn skeleton(category: &ChromCategory) -> SkeletonReport {
    let objects = category.objects();
    let candidates: Vec<usize> = if objects.len() == 1 {
        vec![0]
    } else {
        (0..objects.len())
            .filter(|&v| objects[v].rank() > 0)
            .collect()
    };

    let mut classes: Vec<SkeletonClass> = Vec::new();
    for &v in &candidates {
        if let Some(c) = classes
            .iter_mut()
            .find(|c| category.isomorphic(c.representative, v))
        {
            c.members.push(v);
            continue;
        }
        let aut: Vec<&FpMatrix> = category.hom(v, v).collect();
        let abelian = aut.iter().all(|a| aut.iter().all(|b| a.mul(b) == b.mul(a)));
        let exponent = aut
            .iter()
            .map(|a| matrix_order(a))
            .fold(1u64, |acc, k| acc.lcm(&k));
        classes.push(SkeletonClass {
            rank: objects[v].rank(),
            representative: v,
            members: vec![v],
            aut_order: aut.len(),
            aut_abelian: abelian,
            aut_exponent: exponent,
        });
    }

    let mut edges = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            if i == j {
                continue;
            }
            let homs: BTreeSet<&FpMatrix> =
                category.hom(a.representative, b.representative).collect();
            if homs.is_empty() {
                continue;
            }
            let aut_target: Vec<&FpMatrix> =
                category.hom(b.representative, b.representative).collect();
            let aut_source: Vec<&FpMatrix> =
                category.hom(a.representative, a.representative).collect();

            let mut orbits = Vec::new();
            let mut seen: BTreeSet<FpMatrix> = BTreeSet::new();
            for f in &homs {
                if seen.contains(*f) {
                    continue;
                }
                let orbit: BTreeSet<FpMatrix> = aut_target.iter().map(|g| g.mul(f)).collect();
                orbits.push(Orbit {
                    size: orbit.len(),
                    stabilizer: aut_target.len() / orbit.len(),
                });
                seen.extend(orbit);
            }

            let mut two_sided = 0;
            let mut seen: BTreeSet<FpMatrix> = BTreeSet::new();
            for f in &homs {
                if seen.contains(*f) {
                    continue;
                }
                two_sided += 1;
                for g in &aut_target {
                    for h in &aut_source {
                        seen.insert(g.mul(f).mul(h));
                    }
                }
            }

            edges.push(SkeletonEdge {
                source: i,
                target: j,
                morphisms: homs.len(),
                orbits,
                two_sided_orbits: two_sided,
            });
        }
    }

    SkeletonReport {
        group: category.family.group.name().to_string(),
        p: category.p(),
        category: category.kind_label(),
        classes,
        edges,
    }
}

impl SkeletonReport {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph skeleton {{");
        let _ = writeln!(
            out,
            "  label=\"{} p={} {}\";",
            self.group, self.p, self.category
        );
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  V{i} [label=\"rank={} |Aut|={}\"];",
                c.rank, c.aut_order
            );
        }
        for e in &self.edges {
            let stabs: Vec<String> = e.orbits.iter().map(|o| o.stabilizer.to_string()).collect();
            let _ = writeln!(
                out,
                "  V{} -> V{} [label=\"{} morphisms, stab={}\"];",
                e.source,
                e.target,
                e.morphisms,
                stabs.join(",")
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} at p = {}, {}", self.group, self.p, self.category);
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  class {i}: rank {}, {} object(s), |Aut| = {} ({}, exponent {})",
                c.rank,
                c.members.len(),
                c.aut_order,
                if c.aut_abelian {
                    "abelian"
                } else {
                    "non-abelian"
                },
                c.aut_exponent
            );
        }
        for e in &self.edges {
            let stabs: Vec<String> = e.orbits.iter().map(|o| o.stabilizer.to_string()).collect();
            let _ = writeln!(
                out,
                "  {} -> {}: {} morphisms, {} orbit(s) under Aut(target) with stabilizers [{}], {} two-sided orbit(s)",
                e.source,
                e.target,
                e.morphisms,
                e.orbits.len(),
                stabs.join(", "),
                e.two_sided_orbits
            );
        }
        out
    }
}
