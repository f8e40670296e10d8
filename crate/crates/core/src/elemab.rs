//! Elementary abelian p-subgroups as F_p vector spaces with explicit bases.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::{self, FpMatrix};
use crate::group::{FiniteGroup, GroupElem};

/// An elementary abelian p-subgroup with a chosen basis.
///
/// `by_coordinate[i]` is the element with little-endian coordinate index `i`
/// with respect to `basis`. The basis is the lexicographically least one by
/// element index.
#[derive(Debug, Clone, Serialize)]
pub struct ElemAbelian {
    pub id: usize,
    pub p: u32,
    pub basis: Vec<GroupElem>,
    /// Sorted element list; subgroup identity is by this set.
    pub elements: Vec<GroupElem>,
    #[serde(skip)]
    by_coordinate: Vec<GroupElem>,
    #[serde(skip)]
    coordinate_of: HashMap<GroupElem, usize>,
}

impl ElemAbelian {
    /// Wraps an element set that is known to be an elementary abelian p-group.
    pub fn from_element_set(
        group: &FiniteGroup,
        p: u32,
        id: usize,
        mut elements: Vec<GroupElem>,
    ) -> Self {
        elements.sort();
        let mut basis = Vec::new();
        let mut span: Vec<GroupElem> = vec![GroupElem::IDENTITY];
        let mut in_span: HashSet<GroupElem> = span.iter().copied().collect();
        while span.len() < elements.len() {
            let next = *elements
                .iter()
                .find(|g| !in_span.contains(g))
                .expect("element set is closed");
            span = extend_span(group, &span, next, p);
            in_span = span.iter().copied().collect();
            basis.push(next);
        }
        assert_eq!(
            span.len(),
            elements.len(),
            "element set is not an elementary abelian p-group"
        );
        let coordinate_of = span.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        ElemAbelian {
            id,
            p,
            basis,
            elements,
            by_coordinate: span,
            coordinate_of,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: GroupElem) -> bool {
        self.coordinate_of.contains_key(&g)
    }

    /// Coordinate vector of `g` with respect to the stored basis.
    pub fn coordinates(&self, g: GroupElem) -> Result<Vec<u32>> {
        let idx = *self
            .coordinate_of
            .get(&g)
            .ok_or(Error::NotInSubgroup(g.index()))?;
        Ok(fp::vector_from_index(idx, self.p, self.rank()))
    }

    pub fn element_at(&self, coordinates: &[u32]) -> GroupElem {
        self.by_coordinate[fp::vector_index(coordinates, self.p)]
    }

    pub fn by_coordinate(&self) -> &[GroupElem] {
        &self.by_coordinate
    }

    pub fn is_subgroup_of(&self, other: &ElemAbelian) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// Matrix of the inclusion into `other` (columns are the coordinates of our basis).
    pub fn inclusion_matrix(&self, other: &ElemAbelian) -> Result<FpMatrix> {
        let cols = self
            .basis
            .iter()
            .map(|&b| other.coordinates(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpMatrix::from_columns(self.p, other.rank(), &cols))
    }
}

fn extend_span(group: &FiniteGroup, span: &[GroupElem], x: GroupElem, p: u32) -> Vec<GroupElem> {
    let mut out = Vec::with_capacity(span.len() * p as usize);
    let mut power = GroupElem::IDENTITY;
    for _ in 0..p {
        out.extend(span.iter().map(|&s| group.mul(s, power)));
        power = group.mul(power, x);
    }
    out
}

/// All elementary abelian p-subgroups (trivial subgroup included), ordered by
/// rank and then by sorted element lists.
pub fn enumerate_elem_abelians(group: &FiniteGroup, p: u32) -> Vec<ElemAbelian> {
    assert!(fp::is_prime(p), "{p} is not prime");
    let order_p: Vec<GroupElem> = group
        .elements()
        .filter(|&g| group.element_order(g) == p)
        .collect();
    let mut layers: Vec<Vec<Vec<GroupElem>>> = vec![vec![vec![GroupElem::IDENTITY]]];
    loop {
        let current = layers.last().unwrap();
        let mut seen: HashSet<Vec<GroupElem>> = HashSet::new();
        for set in current {
            let members: HashSet<GroupElem> = set.iter().copied().collect();
            for &x in &order_p {
                if members.contains(&x) || !set.iter().all(|&s| group.commutes(s, x)) {
                    continue;
                }
                let mut bigger = extend_span(group, set, x, p);
                bigger.sort();
                seen.insert(bigger);
            }
        }
        if seen.is_empty() {
            break;
        }
        let mut next: Vec<_> = seen.into_iter().collect();
        next.sort();
        layers.push(next);
    }
    layers
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(id, set)| ElemAbelian::from_element_set(group, p, id, set))
        .collect()
}

pub fn p_rank(group: &FiniteGroup, p: u32) -> usize {
    enumerate_elem_abelians(group, p)
        .iter()
        .map(ElemAbelian::rank)
        .max()
        .unwrap_or(0)
}

/// An injective homomorphism `W → V`, stored as an `rank V × rank W` matrix
/// whose j-th column holds the V-coordinates of the image of W's j-th basis element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearMorphism {
    pub source: usize,
    pub target: usize,
    pub matrix: FpMatrix,
}

impl LinearMorphism {
    pub fn identity(w: &ElemAbelian) -> Self {
        LinearMorphism {
            source: w.id,
            target: w.id,
            matrix: FpMatrix::identity(w.p, w.rank()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LinearMorphism) -> LinearMorphism {
        assert_eq!(first.target, self.source, "morphisms are not composable");
        LinearMorphism {
            source: first.source,
            target: self.target,
            matrix: self.matrix.mul(&first.matrix),
        }
    }

    pub fn inverse(&self) -> Option<LinearMorphism> {
        self.matrix.inverse().map(|m| LinearMorphism {
            source: self.target,
            target: self.source,
            matrix: m,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }
}

/// All injective homomorphisms `W → V` in deterministic order; their number is
/// `∏_{i<rank W} (p^{rank V} − p^i)`.
pub fn injective_homs(w: &ElemAbelian, v: &ElemAbelian) -> Vec<LinearMorphism> {
    assert_eq!(w.p, v.p, "subgroups for different primes");
    let p = w.p;
    let (rw, rv) = (w.rank(), v.rank());
    let mut out = Vec::new();
    if rw > rv {
        return out;
    }
    let vectors: Vec<Vec<u32>> = fp::all_vectors(p, rv).collect();
    let mut columns: Vec<Vec<u32>> = Vec::new();
    fn go(
        p: u32,
        rv: usize,
        rw: usize,
        vectors: &[Vec<u32>],
        columns: &mut Vec<Vec<u32>>,
        emit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        if columns.len() == rw {
            emit(columns);
            return;
        }
        for v in vectors {
            columns.push(v.clone());
            if FpMatrix::from_columns(p, rv, columns).has_full_column_rank() {
                go(p, rv, rw, vectors, columns, emit);
            }
            columns.pop();
        }
    }
    go(p, rv, rw, &vectors, &mut columns, &mut |cols| {
        out.push(LinearMorphism {
            source: w.id,
            target: v.id,
            matrix: FpMatrix::from_columns(p, rv, cols),
        })
    });
    out
}

/// Image of a group element under `f : W → V`.
pub fn morphism_on_elements(
    f: &LinearMorphism,
    w: &ElemAbelian,
    v: &ElemAbelian,
    x: GroupElem,
) -> Result<GroupElem> {
    let c = w.coordinates(x)?;
    Ok(v.element_at(&f.matrix.mul_vec(&c)))
}

/// Matrix of `x ↦ h·x·h⁻¹` from `W` into `V`, if `h W h⁻¹ ⊆ V`.
pub fn conjugation_matrix(
    group: &FiniteGroup,
    w: &ElemAbelian,
    v: &ElemAbelian,
    h: GroupElem,
) -> Option<FpMatrix> {
    let cols = w
        .basis
        .iter()
        .map(|&b| v.coordinates(group.conjugate(b, h)).ok())
        .collect::<Option<Vec<_>>>()?;
    Some(FpMatrix::from_columns(w.p, v.rank(), &cols))
}

/// The elementary abelian p-subgroups of a group, with lookup by element set.
#[derive(Debug)]
pub struct SubgroupFamily {
    pub group: Arc<FiniteGroup>,
    pub p: u32,
    pub subgroups: Vec<ElemAbelian>,
    by_elements: HashMap<Vec<GroupElem>, usize>,
}

impl SubgroupFamily {
    pub fn new(group: Arc<FiniteGroup>, p: u32) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let subgroups = enumerate_elem_abelians(&group, p);
        let by_elements = subgroups
            .iter()
            .map(|s| (s.elements.clone(), s.id))
            .collect();
        Ok(SubgroupFamily {
            group,
            p,
            subgroups,
            by_elements,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, id: usize) -> &ElemAbelian {
        &self.subgroups[id]
    }

    pub fn find(&self, sorted_elements: &[GroupElem]) -> Option<usize> {
        self.by_elements.get(sorted_elements).copied()
    }

    pub fn p_rank(&self) -> usize {
        self.subgroups
            .iter()
            .map(ElemAbelian::rank)
            .max()
            .unwrap_or(0)
    }

    /// Id of `h W h⁻¹`.
    pub fn conjugate_subgroup(&self, id: usize, h: GroupElem) -> usize {
        let mut set: Vec<GroupElem> = self.subgroups[id]
            .elements
            .iter()
            .map(|&x| self.group.conjugate(x, h))
            .collect();
        set.sort();
        self.find(&set)
            .expect("conjugate of an elementary abelian subgroup is enumerated")
    }

    /// Ids of all subgroups containing `id` (itself included).
    pub fn supergroups(&self, id: usize) -> Vec<usize> {
        let w = &self.subgroups[id];
        self.subgroups
            .iter()
            .filter(|v| v.rank() >= w.rank() && w.is_subgroup_of(v))
            .map(|v| v.id)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    fn a4() -> FiniteGroup {
        library::builtin("a4").unwrap().build().unwrap()
    }

    #[test]
    fn a4_subgroup_counts() {
        let g = a4();
        let two = enumerate_elem_abelians(&g, 2);
        let ranks: Vec<usize> = two.iter().map(|s| s.rank()).collect();
        assert_eq!(ranks, vec![0, 1, 1, 1, 2]);
        let three = enumerate_elem_abelians(&g, 3);
        assert_eq!(
            three.iter().map(|s| s.rank()).collect::<Vec<_>>(),
            vec![0, 1, 1, 1, 1]
        );
        assert_eq!(p_rank(&g, 2), 2);
        assert_eq!(p_rank(&g, 3), 1);
    }

    #[test]
    fn trivial_group_has_only_the_trivial_subgroup() {
        let g = FiniteGroup::from_permutations("1", 1, &[]).unwrap();
        for p in [2, 3, 5] {
            let s = enumerate_elem_abelians(&g, p);
            assert_eq!(s.len(), 1);
            assert_eq!(s[0].rank(), 0);
        }
        assert_eq!(p_rank(&g, 2), 0);
    }

    #[test]
    fn injective_hom_counts() {
        let g = a4();
        let s = enumerate_elem_abelians(&g, 2);
        let (c, v) = (&s[1], &s[4]);
        assert_eq!(injective_homs(c, c).len(), 1);
        assert_eq!(injective_homs(c, v).len(), 3);
        assert_eq!(injective_homs(v, v).len(), 6);
        assert!(injective_homs(v, c).is_empty());
    }

    #[test]
    fn coordinates_and_images() {
        let g = a4();
        let s = enumerate_elem_abelians(&g, 2);
        let v = &s[4];
        let (u, w) = (v.basis[0], v.basis[1]);
        assert_eq!(v.coordinates(GroupElem::IDENTITY).unwrap(), vec![0, 0]);
        assert_eq!(v.coordinates(g.mul(u, w)).unwrap(), vec![1, 1]);
        let r = g.find_label("(0 1 2)").unwrap();
        assert!(matches!(v.coordinates(r), Err(Error::NotInSubgroup(_))));
        let id = LinearMorphism::identity(v);
        for &x in &v.elements {
            assert_eq!(morphism_on_elements(&id, v, v, x).unwrap(), x);
        }
    }

    #[test]
    fn basis_is_lexicographically_least() {
        let g = a4();
        let v = &enumerate_elem_abelians(&g, 2)[4];
        let nontrivial: Vec<GroupElem> = v.elements[1..].to_vec();
        assert_eq!(v.basis, nontrivial[..2].to_vec());
    }
}
