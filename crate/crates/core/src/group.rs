//! Finite groups materialized as Cayley tables.
//!
//! Conjugation convention used everywhere in the crate: `conjugate(g, h) = h·g·h⁻¹`.
//! A morphism `f` of elementary abelian subgroups is induced by `h` when
//! `f(w) = conjugate(w, h)` for every `w`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the order of a group built from permutations.
pub const DEFAULT_ORDER_CAP: usize = 2048;

/// Index of an element in its owning [`FiniteGroup`]. The identity is always `GroupElem(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct GroupElem(pub usize);

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct ConjugacyData {
    class_of: Vec<u32>,
    /// `transversal[g]` conjugates the class representative of `g` onto `g`.
    transversal: Vec<u32>,
    class_count: usize,
}

pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    labels: Vec<String>,
    element_orders: Vec<u32>,
    conjugacy: OnceLock<ConjugacyData>,
    centralizers: OnceLock<Vec<Vec<GroupElem>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// Cycle notation for a permutation given as an image array, `()` for the identity.
pub fn cycle_string(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i.to_string());
            i = perm[i] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // (a·b)(i) = a(b(i))
    b.iter().map(|&i| a[i as usize]).collect()
}

impl FiniteGroup {
    /// Closure of the given permutations under composition, identity first,
    /// with the default order cap.
    pub fn from_permutations(name: &str, degree: usize, generators: &[Vec<u32>]) -> Result<Self> {
        Self::from_permutations_capped(name, degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(
        name: &str,
        degree: usize,
        generators: &[Vec<u32>],
        cap: usize,
    ) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            let mut hit = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| {
                    let fresh = (x as usize) < degree && !hit[x as usize];
                    if fresh {
                        hit[x as usize] = true;
                    }
                    fresh
                });
            if !ok {
                return Err(Error::NotAPermutation { index, degree });
            }
        }

        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut lookup: HashMap<Vec<u32>, u32> = HashMap::new();
        lookup.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = compose(&elements[i], g);
                if !lookup.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    lookup.insert(next.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }

        let order = elements.len();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = lookup[&compose(&elements[a], &elements[b])];
            }
        }
        let labels = elements.iter().map(|e| cycle_string(e)).collect();
        Ok(Self::assemble(name, order, table, labels))
    }

    /// Builds a group from an explicit Cayley table (row `a`, column `b` holds `a·b`).
    /// Index 0 must be the identity; all group axioms are verified.
    pub fn from_table(
        name: &str,
        table: Vec<Vec<u32>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let order = table.len();
        if order == 0 || table.iter().any(|row| row.len() != order) {
            return Err(Error::DimensionMismatch(
                "Cayley table must be square and non-empty".into(),
            ));
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|i| format!("g{i}")).collect());
        if labels.len() != order {
            return Err(Error::DimensionMismatch(
                "one label per element required".into(),
            ));
        }
        let flat: Vec<u32> = table.into_iter().flatten().collect();
        if flat.iter().any(|&x| x as usize >= order) {
            return Err(Error::Assertion("Cayley table is not closed".into()));
        }
        for a in 0..order {
            if flat[a] as usize != a || flat[a * order] as usize != a {
                return Err(Error::Assertion(
                    "index 0 is not a two-sided identity".into(),
                ));
            }
            if !(0..order).any(|b| flat[a * order + b] == 0) {
                return Err(Error::Assertion(format!("element {a} has no inverse")));
            }
        }
        let g = Self::assemble(name, order, flat, labels);
        g.validate()?;
        Ok(g)
    }

    fn assemble(name: &str, order: usize, table: Vec<u32>, labels: Vec<String>) -> Self {
        let inverses: Vec<u32> = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == 0).unwrap_or(0) as u32)
            .collect();
        let element_orders = (0..order)
            .map(|a| {
                let mut k = 1u32;
                let mut x = a;
                while x != 0 {
                    x = table[x * order + a] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        FiniteGroup {
            name: name.to_string(),
            order,
            table,
            inverses,
            labels,
            element_orders,
            conjugacy: OnceLock::new(),
            centralizers: OnceLock::new(),
        }
    }

    /// Checks closure, identity, inverses and associativity (exhaustive up to
    /// order 64, 10⁴ random triples above).
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if self.table.iter().any(|&x| x as usize >= n) {
            return Err(Error::Assertion("table is not closed".into()));
        }
        for a in 0..n {
            let e = GroupElem(a);
            if self.mul(GroupElem::IDENTITY, e) != e || self.mul(e, GroupElem::IDENTITY) != e {
                return Err(Error::Assertion(
                    "index 0 is not a two-sided identity".into(),
                ));
            }
            if self.mul(e, self.inv(e)) != GroupElem::IDENTITY {
                return Err(Error::Assertion(format!("bad inverse for element {a}")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            let (a, b, c) = (GroupElem(a), GroupElem(b), GroupElem(c));
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::Assertion(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(a, b, c) {
                    return Err(Error::Assertion(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order).map(GroupElem)
    }

    pub fn label(&self, g: GroupElem) -> &str {
        &self.labels[g.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks up an element by its label (cycle notation for permutation groups).
    pub fn find_label(&self, label: &str) -> Option<GroupElem> {
        self.labels.iter().position(|l| l == label).map(GroupElem)
    }

    #[inline]
    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        GroupElem(self.table[a.0 * self.order + b.0] as usize)
    }

    #[inline]
    pub fn inv(&self, a: GroupElem) -> GroupElem {
        GroupElem(self.inverses[a.0] as usize)
    }

    /// `h·g·h⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: GroupElem, h: GroupElem) -> GroupElem {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn pow(&self, g: GroupElem, k: u32) -> GroupElem {
        (0..k).fold(GroupElem::IDENTITY, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: GroupElem) -> u32 {
        self.element_orders[g.0]
    }

    #[inline]
    pub fn commutes(&self, a: GroupElem, b: GroupElem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Pointwise centralizer of a tuple, in index order.
    pub fn centralizer(&self, elements: &[GroupElem]) -> Vec<GroupElem> {
        match elements.split_first() {
            None => self.elements().collect(),
            Some((first, rest)) => self
                .element_centralizer(*first)
                .iter()
                .copied()
                .filter(|&h| rest.iter().all(|&x| self.commutes(h, x)))
                .collect(),
        }
    }

    fn element_centralizer(&self, g: GroupElem) -> &[GroupElem] {
        let all = self.centralizers.get_or_init(|| {
            (0..self.order)
                .map(|a| {
                    self.elements()
                        .filter(|&h| self.commutes(GroupElem(a), h))
                        .collect()
                })
                .collect()
        });
        &all[g.0]
    }

    fn conjugacy(&self) -> &ConjugacyData {
        self.conjugacy.get_or_init(|| {
            let n = self.order;
            let mut class_of = vec![u32::MAX; n];
            let mut transversal = vec![0u32; n];
            let mut class_count = 0usize;
            for rep in 0..n {
                if class_of[rep] != u32::MAX {
                    continue;
                }
                for h in self.elements() {
                    let c = self.conjugate(GroupElem(rep), h).0;
                    if class_of[c] == u32::MAX {
                        class_of[c] = class_count as u32;
                        transversal[c] = h.0 as u32;
                    }
                }
                class_count += 1;
            }
            ConjugacyData {
                class_of,
                transversal,
                class_count,
            }
        })
    }

    /// Conjugacy class index; classes are numbered by their least element.
    pub fn class_of(&self, g: GroupElem) -> usize {
        self.conjugacy().class_of[g.0] as usize
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy().class_count
    }

    pub fn are_conjugate(&self, a: GroupElem, b: GroupElem) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    /// Least-index `g` with `g·a_i·g⁻¹ = b_i` for all `i`, scanning the whole group.
    pub fn simultaneous_conjugacy_brute(
        &self,
        a: &[GroupElem],
        b: &[GroupElem],
    ) -> Option<GroupElem> {
        assert_eq!(a.len(), b.len(), "tuples must have equal length");
        self.elements()
            .find(|&g| a.iter().zip(b).all(|(&x, &y)| self.conjugate(x, g) == y))
    }

    /// Same answer as [`simultaneous_conjugacy_brute`](Self::simultaneous_conjugacy_brute),
    /// searching only the coset `x·C(a_1)` of witnesses for `a_1 ↦ b_1`.
    pub fn simultaneous_conjugacy(&self, a: &[GroupElem], b: &[GroupElem]) -> Option<GroupElem> {
        assert_eq!(a.len(), b.len(), "tuples must have equal length");
        let Some((&a1, _)) = a.split_first() else {
            return Some(GroupElem::IDENTITY);
        };
        let b1 = b[0];
        let data = self.conjugacy();
        if data.class_of[a1.0] != data.class_of[b1.0]
            || self.element_order(a1) != self.element_order(b1)
        {
            return None;
        }
        // t_a·rep·t_a⁻¹ = a, so x = t_b·t_a⁻¹ carries a1 to b1
        let ta = GroupElem(data.transversal[a1.0] as usize);
        let tb = GroupElem(data.transversal[b1.0] as usize);
        let x = self.mul(tb, self.inv(ta));
        debug_assert_eq!(self.conjugate(a1, x), b1);
        self.element_centralizer(a1)
            .iter()
            .map(|&c| self.mul(x, c))
            .filter(|&g| {
                a[1..]
                    .iter()
                    .zip(&b[1..])
                    .all(|(&u, &v)| self.conjugate(u, g) == v)
            })
            .min()
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[GroupElem]) -> Vec<GroupElem> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![GroupElem::IDENTITY];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y.0] {
                    seen[y.0] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }
}
