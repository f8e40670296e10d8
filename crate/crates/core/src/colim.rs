//! F_q-rational points of colimits of `V ⊗ F_q` over the categories of [`crate::chromcat`].
//!
//! Point counts are reported as counts of F_q-points; equal counts are never
//! taken to mean equal varieties.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::chromcat::{build_category, ChromCategory, Level};
use crate::elemab::{ElemAbelian, SubgroupFamily};
use crate::error::{Error, Result};
use crate::fp::{vector_from_index, vector_index};
use crate::fq::GaloisField;

/// Disjoint sets whose root is always the least member.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// All `q^rank` points of `V ⊗ F_q`, each a vector of field-element indices.
pub fn fq_points(v: &ElemAbelian, q: u64) -> Result<Vec<Vec<usize>>> {
    GaloisField::new(q, v.p)?;
    Ok((0..(q as usize).pow(v.rank() as u32))
        .map(|i| {
            vector_from_index(i, q as u32, v.rank())
                .into_iter()
                .map(|c| c as usize)
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub object: usize,
    pub point: String,
    pub members: usize,
}

#[derive(Debug, Clone)]
pub struct ColimResult {
    pub field: GaloisField,
    pub q: u64,
    pub object_sizes: Vec<usize>,
    ranks: Vec<usize>,
    offsets: Vec<usize>,
    /// Class id of every point of the disjoint union, in global order.
    pub class_of: Vec<usize>,
    /// Least (object, point index) in each class; classes are numbered in this order.
    pub representatives: Vec<(usize, usize)>,
    pub class_sizes: Vec<usize>,
}

impl ColimResult {
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    pub fn total_points(&self) -> usize {
        self.class_of.len()
    }

    pub fn global_index(&self, object: usize, point: usize) -> usize {
        self.offsets[object] + point
    }

    pub fn class_of_point(&self, object: usize, point: usize) -> usize {
        self.class_of[self.global_index(object, point)]
    }

    pub fn render_point(&self, object: usize, point: usize) -> String {
        let coords = vector_from_index(point, self.q as u32, self.ranks[object]);
        let parts: Vec<String> = coords
            .iter()
            .map(|&c| self.field.render(c as usize))
            .collect();
        format!("({})", parts.join(", "))
    }

    pub fn classes(&self) -> Vec<ClassSummary> {
        self.representatives
            .iter()
            .zip(&self.class_sizes)
            .map(|(&(object, point), &members)| ClassSummary {
                object,
                point: self.render_point(object, point),
                members,
            })
            .collect()
    }
}

/// Image under `f_*` of a point index of `W ⊗ F_q`.
fn push_point(matrix: &crate::fp::FpMatrix, field: &GaloisField, q: u64, point: usize) -> usize {
    let src = vector_from_index(point, q as u32, matrix.cols());
    let m = field.m as usize;
    let p = field.p;
    let src_coords: Vec<Vec<u32>> = src.iter().map(|&c| field.coords(c as usize)).collect();
    let image: Vec<u32> = (0..matrix.rows())
        .map(|i| {
            let mut acc = vec![0u32; m];
            for (j, cj) in src_coords.iter().enumerate() {
                let a = matrix.get(i, j);
                if a != 0 {
                    for (slot, &c) in acc.iter_mut().zip(cj) {
                        *slot = (*slot + a * c) % p;
                    }
                }
            }
            field.from_coords(&acc) as u32
        })
        .collect();
    vector_index(&image, q as u32)
}

/// Points of the disjoint union glued along `x ∼ f_*(x)` for every morphism `f`.
pub fn colim_points(category: &ChromCategory, q: u64) -> Result<ColimResult> {
    let field = GaloisField::new(q, category.p())?;
    let objects = category.objects();
    let object_sizes: Vec<usize> = objects
        .iter()
        .map(|v| (q as usize).pow(v.rank() as u32))
        .collect();
    let mut offsets = Vec::with_capacity(objects.len());
    let mut total = 0;
    for s in &object_sizes {
        offsets.push(total);
        total += s;
    }
    let morphisms: Vec<_> = category.morphisms().filter(|f| !f.is_identity()).collect();
    let relations: Vec<Vec<(usize, usize)>> = morphisms
        .par_iter()
        .map(|f| {
            (0..object_sizes[f.source])
                .map(|x| {
                    (
                        offsets[f.source] + x,
                        offsets[f.target] + push_point(&f.matrix, &field, q, x),
                    )
                })
                .collect()
        })
        .collect();
    let mut uf = UnionFind::new(total);
    for batch in relations {
        for (a, b) in batch {
            uf.union(a, b);
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut representatives = Vec::new();
    let mut class_sizes = Vec::new();
    let object_of = |g: usize| offsets.partition_point(|&o| o <= g) - 1;
    for g in 0..total {
        let root = uf.find(g);
        if root == g {
            class_of[g] = representatives.len();
            let obj = object_of(g);
            representatives.push((obj, g - offsets[obj]));
            class_sizes.push(0);
        } else {
            class_of[g] = class_of[root];
        }
        class_sizes[class_of[g]] += 1;
    }
    Ok(ColimResult {
        field,
        q,
        object_sizes,
        ranks: objects.iter().map(ElemAbelian::rank).collect(),
        offsets,
        class_of,
        representatives,
        class_sizes,
    })
}

#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub n: u32,
    pub result: ColimResult,
}

/// Colimits at levels `n = p_rank, …, 1` with the connecting maps between them.
#[derive(Debug, Clone)]
pub struct FiltrationTower {
    pub q: u64,
    pub levels: Vec<TowerLevel>,
    /// `surjections[i][c]` is the level-`(i+1)` class of level-`i` class `c`.
    pub surjections: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct LevelJson {
    n: u32,
    size: usize,
    classes: Vec<ClassSummary>,
}

#[derive(Serialize)]
struct TowerJson {
    q: u64,
    levels: Vec<LevelJson>,
    surjections: Vec<Vec<usize>>,
}

impl FiltrationTower {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.result.size()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TowerJson {
            q: self.q,
            levels: self
                .levels
                .iter()
                .map(|l| LevelJson {
                    n: l.n,
                    size: l.result.size(),
                    classes: l.result.classes(),
                })
                .collect(),
            surjections: self.surjections.clone(),
        })
        .expect("tower serializes")
    }
}

/// Map of classes from a finer colimit to a coarser one over the same objects,
/// checked to be well defined and surjective.
pub fn connecting_map(finer: &ColimResult, coarser: &ColimResult) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; finer.size()];
    for (g, &c) in finer.class_of.iter().enumerate() {
        let target = coarser.class_of[g];
        if map[c] == usize::MAX {
            map[c] = target;
        } else if map[c] != target {
            return Err(Error::Assertion(format!(
                "class {c} splits under the connecting map"
            )));
        }
    }
    let mut hit = vec![false; coarser.size()];
    for &t in &map {
        hit[t] = true;
    }
    if let Some(missed) = hit.iter().position(|h| !h) {
        return Err(Error::Assertion(format!(
            "connecting map misses class {missed}"
        )));
    }
    Ok(map)
}

pub fn filtration_tower(family: &Arc<SubgroupFamily>, q: u64) -> Result<FiltrationTower> {
    let top = family.p_rank().max(1) as u32;
    let mut levels = Vec::new();
    for n in (1..=top).rev() {
        let cat = build_category(family, Level::Finite(n));
        levels.push(TowerLevel {
            n,
            result: colim_points(&cat, q)?,
        });
    }
    let surjections = levels
        .windows(2)
        .map(|w| connecting_map(&w[0].result, &w[1].result))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiltrationTower {
        q,
        levels,
        surjections,
    })
}

/// Isomorphism classes of maximal objects (those with no morphism to a larger rank).
pub fn component_count(category: &ChromCategory) -> usize {
    let objects = category.objects();
    let maximal: Vec<usize> = (0..objects.len())
        .filter(|&v| {
            !(0..objects.len())
                .any(|x| objects[x].rank() > objects[v].rank() && category.hom_size(v, x) > 0)
        })
        .collect();
    let mut reps: Vec<usize> = Vec::new();
    for &v in &maximal {
        if !reps.iter().any(|&r| category.isomorphic(r, v)) {
            reps.push(v);
        }
    }
    reps.len()
}
