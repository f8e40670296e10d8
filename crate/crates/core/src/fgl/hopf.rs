//! Hopf-ring expressions in the `b_i` and grouplikes `[c]`, with coefficients in
//! `F_p[s, t]`, and their reduction modulo `*`-decomposables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::cyc::OrbitExpansion;
use super::honda::Fgl;
use crate::error::{Error, Result};
use crate::fp::ipow;
use crate::poly::PolyFp;

/// `[tag] ∘ b_{i_1} ∘ … ∘ b_{i_k}` with positive sorted indices; no indices means the
/// grouplike `[tag]`, and `b_0 = [0]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub tag: u32,
    pub indices: Vec<u32>,
}

impl Atom {
    pub fn grouplike(c: u32) -> Self {
        Atom {
            tag: c,
            indices: Vec::new(),
        }
    }

    pub fn b(indices: &[u32]) -> Self {
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        Atom { tag: 1, indices }
    }

    pub fn is_grouplike(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.indices.iter().sum()
    }

    /// `∘`-product, `None` when it vanishes (`b_i ∘ b_0 = 0` for `i > 0`).
    pub fn circ(&self, other: &Atom, p: u32) -> Option<Atom> {
        let tag = self.tag * other.tag % p;
        let mut indices = self.indices.clone();
        indices.extend_from_slice(&other.indices);
        indices.sort_unstable();
        if tag == 0 && !indices.is_empty() {
            return None;
        }
        Some(Atom { tag, indices })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self.indices.iter().map(|i| format!("b_{i}")).collect();
        match (self.is_grouplike(), self.tag) {
            (true, c) => write!(f, "[{c}]"),
            (false, 1) => write!(f, "{}", bs.join("∘")),
            (false, c) => write!(f, "[{c}]∘{}", bs.join("∘")),
        }
    }
}

/// A `*`-product of atoms, sorted, with the unit `[0]` dropped next to other factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term(Vec<Atom>);

impl Term {
    pub fn new(mut atoms: Vec<Atom>) -> Self {
        atoms.retain(|a| *a != Atom::grouplike(0));
        if atoms.is_empty() {
            atoms.push(Atom::grouplike(0));
        }
        atoms.sort();
        Term(atoms)
    }

    pub fn unit() -> Self {
        Term(vec![Atom::grouplike(0)])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn single(&self) -> Option<&Atom> {
        match self.0.as_slice() {
            [a] => Some(a),
            _ => None,
        }
    }

    pub fn is_grouplike(&self) -> bool {
        self.0.iter().all(Atom::is_grouplike)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Sum of terms with coefficients in `F_p[s, t]` truncated above `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfExpr {
    pub p: u32,
    pub height: u32,
    pub degree: u32,
    terms: BTreeMap<Term, PolyFp>,
}

fn min_degree(f: &PolyFp) -> u32 {
    f.terms().next().map_or(u32::MAX, |(m, _)| m.degree())
}

impl HopfExpr {
    pub fn zero(p: u32, height: u32, degree: u32) -> Self {
        HopfExpr {
            p,
            height,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(p: u32, height: u32, degree: u32, term: Term, coefficient: PolyFp) -> Self {
        let mut e = Self::zero(p, height, degree);
        e.add_term(term, coefficient);
        e
    }

    /// The `*`-unit `[0] = b_0`.
    pub fn unit(p: u32, height: u32, degree: u32) -> Self {
        Self::grouplike(p, height, degree, 0)
    }

    pub fn grouplike(p: u32, height: u32, degree: u32, c: u32) -> Self {
        Self::from_term(
            p,
            height,
            degree,
            Term::new(vec![Atom::grouplike(c % p)]),
            PolyFp::one(p, 2),
        )
    }

    /// `b(u) = Σ_{i ≥ 0} b_i u^i` for a series `u(s, t)` without constant term.
    pub fn b_series(p: u32, height: u32, degree: u32, u: &PolyFp) -> Self {
        let mut e = Self::unit(p, height, degree);
        let mut power = PolyFp::one(p, 2);
        for i in 1..=degree {
            power = power.mul(u).truncate(degree);
            if power.is_zero() {
                break;
            }
            e.add_term(Term::new(vec![Atom::b(&[i])]), power.clone());
        }
        e
    }

    fn add_term(&mut self, term: Term, coefficient: PolyFp) {
        let coefficient = coefficient.truncate(self.degree);
        if coefficient.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(term)
            .or_insert_with(|| PolyFp::zero(coefficient.prime(), 2));
        *slot = slot.add(&coefficient);
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &PolyFp)> + '_ {
        self.terms.iter()
    }

    pub fn exponent_bound(&self) -> u32 {
        ipow(self.p as u64, self.height) as u32
    }

    pub fn add(&self, other: &HopfExpr) -> HopfExpr {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &PolyFp) -> HopfExpr {
        let mut out = Self::zero(self.p, self.height, self.degree);
        for (t, a) in &self.terms {
            out.add_term(t.clone(), a.mul(c));
        }
        out
    }

    /// `*`-product, bilinear over the coefficients.
    pub fn star(&self, other: &HopfExpr) -> HopfExpr {
        let mut out = Self::zero(self.p, self.height, self.degree);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                if min_degree(c1).saturating_add(min_degree(c2)) > self.degree {
                    continue;
                }
                let mut atoms = t1.0.clone();
                atoms.extend(t2.0.iter().cloned());
                out.add_term(Term::new(atoms), c1.mul(c2));
            }
        }
        out
    }

    /// `∘`-product of expressions whose terms are single atoms.
    pub fn circ(&self, other: &HopfExpr) -> Result<HopfExpr> {
        let mut out = Self::zero(self.p, self.height, self.degree);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let (Some(a), Some(b)) = (t1.single(), t2.single()) else {
                    return Err(Error::Unsupported(
                        "∘ is only expanded between atoms, not *-products".into(),
                    ));
                };
                if min_degree(c1).saturating_add(min_degree(c2)) > self.degree {
                    continue;
                }
                if let Some(atom) = a.circ(b, self.p) {
                    out.add_term(Term::new(vec![atom]), c1.mul(c2));
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `term` in total `(s, t)`-degree `d`.
    pub fn coefficient_of(&self, term: &Term, d: u32) -> PolyFp {
        self.terms
            .get(term)
            .map_or_else(|| PolyFp::zero(self.p, 2), |c| c.homogeneous_part(d))
    }

    /// Coefficient of `b_{i_1} ∘ … ∘ b_{i_k}` in degree `d`.
    pub fn coefficient_of_circ(&self, indices: &[u32], d: u32) -> PolyFp {
        self.coefficient_of(&Term::new(vec![Atom::b(indices)]), d)
    }

    pub fn homogeneous_part(&self, d: u32) -> HopfExpr {
        let mut out = Self::zero(self.p, self.height, self.degree);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.homogeneous_part(d));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = ["s".to_string(), "t".to_string()];
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let coef = c.render(&names);
                if coef == "1" {
                    t.to_string()
                } else {
                    format!("({coef})·{t}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for HopfExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for HopfExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

/// Reduction modulo `*`-decomposables:
/// `[c]∘m ↦ c·m` for `m` of positive degree, pure `b_1`-powers of weight `≥ p^n` vanish,
/// `*`-products of two or more non-grouplike factors vanish, grouplikes next to a single
/// non-grouplike factor drop out, and grouplikes combine by `[c] * [d] = [c + d]`.
pub fn mod_indecomposables(e: &HopfExpr) -> HopfExpr {
    let bound = e.exponent_bound();
    let mut out = HopfExpr::zero(e.p, e.height, e.degree);
    'terms: for (term, coefficient) in &e.terms {
        let mut coefficient = coefficient.clone();
        let mut grouplike_sum = 0;
        let mut positive: Vec<Atom> = Vec::new();
        for atom in term.atoms() {
            if atom.is_grouplike() {
                grouplike_sum = (grouplike_sum + atom.tag) % e.p;
                continue;
            }
            if atom.tag == 0 {
                continue 'terms;
            }
            if atom.indices.iter().all(|&i| i == 1) && atom.indices.len() as u32 >= bound {
                continue 'terms;
            }
            coefficient = coefficient.scale(atom.tag);
            positive.push(Atom {
                tag: 1,
                indices: atom.indices.clone(),
            });
        }
        let reduced = match positive.len() {
            0 => Term::new(vec![Atom::grouplike(grouplike_sum)]),
            1 => Term::new(positive),
            _ => continue,
        };
        out.add_term(reduced, coefficient);
    }
    out
}

/// Image of `β(s) ⊗ β(t)` under the map classified by an orbit sum: each factor
/// `u^a` becomes `b(u)^{∘a}`, factors of a monomial combine by `∘` and monomials by `*`.
/// A monomial without factors contributes the `*`-unit.
pub fn beta_pushforward(expansion: &OrbitExpansion, fgl: &Fgl, degree: u32) -> Result<HopfExpr> {
    if expansion.rank != 2 {
        return Err(Error::DimensionMismatch(format!(
            "generating functions in s, t need rank 2, got {}",
            expansion.rank
        )));
    }
    if degree > fgl.degree {
        return Err(Error::Truncation {
            degree,
            reason: format!("the formal group law is known to degree {}", fgl.degree),
        });
    }
    let (p, n) = (fgl.p, fgl.height);
    let mut total = HopfExpr::unit(p, n, degree);
    for m in &expansion.monomials {
        let mut image = if m.factors.is_empty() {
            HopfExpr::unit(p, n, degree)
        } else {
            HopfExpr::grouplike(p, n, degree, m.coefficient)
        };
        for f in &m.factors {
            let u = fgl.linear_combination(&f.argument, 2)?.truncate(degree);
            let b = HopfExpr::b_series(p, n, degree, &u);
            for _ in 0..f.exponent {
                image = image.circ(&b)?;
            }
        }
        total = total.star(&image);
    }
    Ok(total)
}
