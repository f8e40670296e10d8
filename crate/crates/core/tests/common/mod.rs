//! Brute-force oracles shared by the integration tests and the acceptance runner.
//!
//! Nothing here calls the library's search or reduction code: conjugacy is found by
//! scanning the whole group, colimits by graph search, polynomials by evaluation.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use chromatic_core::chromcat::ChromCategory;
use chromatic_core::elemab::{
    injective_homs, morphism_on_elements, LinearMorphism, SubgroupFamily,
};
use chromatic_core::fgl::OrbitExpansion;
use chromatic_core::fp::FpMatrix;
use chromatic_core::group::{FiniteGroup, GroupElem};
use chromatic_core::library;
use chromatic_core::poly::PolyFp;

pub fn family(name: &str, p: u32) -> Arc<SubgroupFamily> {
    let g = library::builtin(name)
        .expect("bundled group")
        .build()
        .expect("group builds");
    Arc::new(SubgroupFamily::new(Arc::new(g), p).expect("family"))
}

/// Bundled groups of order at most `max_order`, by name.
pub fn bundled_up_to(max_order: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    library::builtin_library()
        .into_iter()
        .filter_map(|d| {
            d.build_capped(max_order)
                .ok()
                .map(|g| (d.name.clone(), Arc::new(g)))
        })
        .collect()
}

/// Some `g` with `g x_i g⁻¹ = y_i` for all `i`, by scanning every element.
pub fn conjugator(group: &FiniteGroup, xs: &[GroupElem], ys: &[GroupElem]) -> Option<GroupElem> {
    group.elements().find(|&g| {
        let gi = group.inv(g);
        xs.iter()
            .zip(ys)
            .all(|(&x, &y)| group.mul(group.mul(g, x), gi) == y)
    })
}

fn images(family: &SubgroupFamily, f: &LinearMorphism) -> (Vec<GroupElem>, Vec<GroupElem>) {
    let w = family.get(f.source);
    let v = family.get(f.target);
    let xs: Vec<GroupElem> = w.by_coordinate().to_vec();
    let ys = xs
        .iter()
        .map(|&x| morphism_on_elements(f, w, v, x).unwrap())
        .collect();
    (xs, ys)
}

/// `f ∈ A^(n)` decided over every subset of `W` with at most `n` elements, each
/// subset a bitmask over the elements of `W`.
pub fn level_oracle(family: &SubgroupFamily, f: &LinearMorphism, n: usize) -> bool {
    let (xs, ys) = images(family, f);
    assert!(xs.len() <= 27, "subset oracle is meant for small subgroups");
    (0u64..1 << xs.len())
        .filter(|m| m.count_ones() as usize <= n)
        .all(|mask| {
            let idx: Vec<usize> = (0..xs.len()).filter(|i| mask >> i & 1 == 1).collect();
            let a: Vec<GroupElem> = idx.iter().map(|&i| xs[i]).collect();
            let b: Vec<GroupElem> = idx.iter().map(|&i| ys[i]).collect();
            conjugator(&family.group, &a, &b).is_some()
        })
}

/// The literal description of `A^(1)`: every element goes to a conjugate of itself.
pub fn elementwise_conjugate(family: &SubgroupFamily, f: &LinearMorphism) -> bool {
    let (xs, ys) = images(family, f);
    xs.iter()
        .zip(&ys)
        .all(|(&x, &y)| conjugator(&family.group, &[x], &[y]).is_some())
}

/// Compares every hom-set of `category` with the set of injective homomorphisms
/// accepted by `accept`; returns the first disagreement.
pub fn compare_homs(
    category: &ChromCategory,
    mut accept: impl FnMut(&LinearMorphism) -> bool,
) -> Result<(), String> {
    let objects = category.objects();
    for w in objects {
        for v in objects {
            let expected: BTreeSet<FpMatrix> = injective_homs(w, v)
                .into_iter()
                .filter(|f| accept(f))
                .map(|f| f.matrix)
                .collect();
            let actual: BTreeSet<FpMatrix> = category.hom(w.id, v.id).cloned().collect();
            if expected != actual {
                return Err(format!(
                    "hom(V{}, V{}): oracle {} morphisms, category {}",
                    w.id,
                    v.id,
                    expected.len(),
                    actual.len()
                ));
            }
        }
    }
    Ok(())
}

/// Multiplication in F_q for q ∈ {2, 3, 4, 5, 7, 8, 9}: primes directly, F_4 as
/// `F_2[w]/(w^2 + w + 1)`, F_8 as `F_2[u]/(u^3 + u + 1)`, F_9 as `F_3[i]/(i^2 + 1)`,
/// elements written as digit vectors in base p, least significant first.
#[derive(Debug, Clone, Copy)]
pub struct SmallField {
    pub q: u32,
    pub p: u32,
}

impl SmallField {
    pub fn new(q: u32) -> Self {
        let p = match q {
            2 | 4 | 8 => 2,
            3 | 9 => 3,
            5 | 7 => q,
            _ => panic!("oracle field of order {q} not tabulated"),
        };
        SmallField { q, p }
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let m = std::iter::successors(Some(1), |&k| Some(k * self.p))
            .take_while(|&k| k < self.q)
            .count() as u32;
        (0..m).map(|i| a / self.p.pow(i) % self.p).collect()
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter()
            .enumerate()
            .map(|(i, &c)| c * self.p.pow(i as u32))
            .sum()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&s)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let m = da.len();
        let mut prod = vec![0u32; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // reduce by the defining polynomial: x^m = -(lower terms)
        let tail: &[u32] = match self.q {
            4 => &[1, 1],
            8 => &[1, 1, 0],
            9 => &[1, 0],
            _ => &[],
        };
        for k in (m..2 * m).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &t) in tail.iter().enumerate() {
                prod[k - m + i] = (prod[k - m + i] + self.p * self.p - c * t % self.p) % self.p;
            }
        }
        self.undigits(&prod[..m])
    }

    pub fn pow(&self, a: u32, k: u32) -> u32 {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }
}

/// Number of points of the colimit of `V ⊗ F_q` over `category`, by breadth-first
/// search on the graph with an edge `x → f(x)` for every morphism and point.
pub fn colim_oracle(category: &ChromCategory, q: u32) -> usize {
    let field = SmallField::new(q);
    let objects = category.objects();
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for v in objects {
        offsets.push(total);
        total += (q as usize).pow(v.rank() as u32);
    }
    let point = |rank: usize, index: usize| -> Vec<u32> {
        (0..rank)
            .map(|i| (index / (q as usize).pow(i as u32) % q as usize) as u32)
            .collect()
    };
    let index = |coords: &[u32]| -> usize {
        coords
            .iter()
            .enumerate()
            .map(|(i, &c)| c as usize * (q as usize).pow(i as u32))
            .sum()
    };
    let mut adjacency = vec![Vec::new(); total];
    for w in objects {
        for v in objects {
            for m in category.hom(w.id, v.id) {
                for i in 0..(q as usize).pow(w.rank() as u32) {
                    let x = point(w.rank(), i);
                    let y: Vec<u32> = (0..v.rank())
                        .map(|r| {
                            (0..w.rank())
                                .fold(0, |acc, c| field.add(acc, field.mul(m.get(r, c), x[c])))
                        })
                        .collect();
                    let (a, b) = (offsets[w.id] + i, offsets[v.id] + index(&y));
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
    }
    let mut seen = vec![false; total];
    let mut components = 0;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &b in &adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    components
}

/// Value of `f` at a point of F_q^k by direct evaluation of every term.
pub fn evaluate(f: &PolyFp, field: SmallField, point: &[u32]) -> u32 {
    f.terms().fold(0, |acc, (m, c)| {
        let v =
            m.0.iter()
                .zip(point)
                .fold(c % field.p, |t, (&e, &x)| field.mul(t, field.pow(x, e)));
        field.add(acc, v)
    })
}

/// Whether `f` vanishes on all of F_q^k; conclusive for `f = 0` when every
/// exponent of `f` is below `q`.
pub fn vanishes_everywhere(f: &PolyFp, q: u32) -> bool {
    let field = SmallField::new(q);
    let k = f.nvars();
    (0..(q as usize).pow(k as u32)).all(|i| {
        let point: Vec<u32> = (0..k)
            .map(|j| (i / (q as usize).pow(j as u32) % q as usize) as u32)
            .collect();
        evaluate(f, field, &point) == 0
    })
}

/// Coefficient of `b_1^{∘r}` in degree `r` read off an orbit expansion with
/// `F(s, t) ≡ s + t`: each orbit summand `c · Π u_k^{e_k}` contributes
/// `c · Π ℓ_k^{e_k}` when `Σ e_k = r`, `ℓ_k` the linear form of its argument.
pub fn circ_coefficient_by_expansion(expansion: &OrbitExpansion, p: u32, r: u32) -> PolyFp {
    let mut total = PolyFp::zero(p, 2);
    for m in &expansion.monomials {
        if m.factors.iter().map(|f| f.exponent).sum::<u32>() != r {
            continue;
        }
        let mut term = PolyFp::constant(p, 2, m.coefficient);
        for f in &m.factors {
            let linear = PolyFp::var(p, 2, 0)
                .scale(f.argument[0])
                .add(&PolyFp::var(p, 2, 1).scale(f.argument[1]));
            term = term.mul(&linear.pow(f.exponent));
        }
        total = total.add(&term);
    }
    total
}

/// Identities, closure under composition, and presence of every inclusion and
/// every conjugation map.
pub fn category_axioms(category: &ChromCategory) -> Result<(), String> {
    let family = &category.family;
    let group = &family.group;
    let objects = category.objects();
    for w in objects {
        if !category.hom(w.id, w.id).any(|m| m.is_identity()) {
            return Err(format!("V{} has no identity", w.id));
        }
        for v in objects {
            if w.is_subgroup_of(v) {
                let inclusion = w.inclusion_matrix(v).unwrap();
                if !category.hom(w.id, v.id).any(|m| *m == inclusion) {
                    return Err(format!("inclusion V{} ≤ V{} missing", w.id, v.id));
                }
            }
        }
        for g in group.elements() {
            let v = family.conjugate_subgroup(w.id, g);
            let m = chromatic_core::elemab::conjugation_matrix(group, w, family.get(v), g)
                .ok_or_else(|| format!("conjugation by {g:?} does not map V{} to V{v}", w.id))?;
            if !category.hom(w.id, v).any(|x| *x == m) {
                return Err(format!("conjugation V{} → V{v} missing", w.id));
            }
        }
    }
    for a in objects {
        for b in objects {
            for f in category.hom(a.id, b.id) {
                for c in objects {
                    for g in category.hom(b.id, c.id) {
                        let gf = g.mul(f);
                        if !category.hom(a.id, c.id).any(|x| *x == gf) {
                            return Err(format!(
                                "composite V{} → V{} → V{} missing",
                                a.id, b.id, c.id
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
