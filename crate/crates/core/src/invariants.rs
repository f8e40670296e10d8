//! Linear group actions on polynomial rings, invariants and graded subring membership.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::poly::{Monomial, PolyFp};

/// Default cap on the total degree accepted by [`subring_membership`].
pub const DEFAULT_DEGREE_BOUND: u32 = 12;

const CLOSURE_CAP: usize = 1 << 16;

/// A finite matrix group acting on the variables: `σ` sends `x_j` to `Σ_i σ_ij x_i`.
#[derive(Debug, Clone)]
pub struct LinearAction {
    p: u32,
    nvars: usize,
    generators: Vec<FpMatrix>,
    elements: Vec<FpMatrix>,
}

impl LinearAction {
    pub fn new(p: u32, nvars: usize, generators: Vec<FpMatrix>) -> Result<Self> {
        for g in &generators {
            if g.rows() != nvars || g.cols() != nvars || g.prime() != p {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix is {}×{} over F_{}, expected {nvars}×{nvars} over F_{p}",
                    g.rows(),
                    g.cols(),
                    g.prime()
                )));
            }
            if g.inverse().is_none() {
                return Err(Error::DimensionMismatch("action matrix is singular".into()));
            }
        }
        let identity = FpMatrix::identity(p, nvars);
        let mut seen: BTreeSet<FpMatrix> = BTreeSet::from([identity.clone()]);
        let mut elements = vec![identity.clone()];
        let mut queue = VecDeque::from([identity]);
        while let Some(a) = queue.pop_front() {
            for g in &generators {
                let b = a.mul(g);
                if seen.insert(b.clone()) {
                    if seen.len() > CLOSURE_CAP {
                        return Err(Error::ActionDoesNotClose(CLOSURE_CAP));
                    }
                    elements.push(b.clone());
                    queue.push_back(b);
                }
            }
        }
        Ok(LinearAction {
            p,
            nvars,
            generators,
            elements,
        })
    }

    /// The cyclic action `x ↦ y ↦ x + y` on `F_2[x, y]`.
    pub fn c3_on_f2_plane() -> Self {
        Self::new(
            2,
            2,
            vec![FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]])],
        )
        .unwrap()
    }

    /// All of `GL_2(F_2)` acting on `F_2[x, y]`.
    pub fn gl2_f2() -> Self {
        Self::new(
            2,
            2,
            vec![
                FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]]),
                FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]),
            ],
        )
        .unwrap()
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    /// Every group element, identity first, in breadth-first order.
    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn apply(&self, sigma: &FpMatrix, f: &PolyFp) -> Result<PolyFp> {
        f.substitute_linear(sigma)
    }

    /// Distinct images of `f`, in order of first appearance.
    pub fn orbit(&self, f: &PolyFp) -> Result<Vec<PolyFp>> {
        let mut orbit: Vec<PolyFp> = Vec::new();
        for sigma in &self.elements {
            let image = f.substitute_linear(sigma)?;
            if !orbit.contains(&image) {
                orbit.push(image);
            }
        }
        Ok(orbit)
    }

    pub fn is_invariant(&self, f: &PolyFp) -> Result<bool> {
        for g in &self.generators {
            if &f.substitute_linear(g)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sum over the distinct polynomials in the orbit of `f`.
pub fn orbit_sum(f: &PolyFp, action: &LinearAction) -> Result<PolyFp> {
    Ok(action
        .orbit(f)?
        .iter()
        .fold(PolyFp::zero(f.prime(), f.nvars()), |acc, g| acc.add(g)))
}

/// Exponent vectors of total degree `d`, in descending graded-lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of homogeneous forms of one degree against the monomial basis.
struct FormSpace {
    p: u32,
    nvars: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl FormSpace {
    fn new(p: u32, nvars: usize, d: u32) -> Self {
        let monomials = monomials_of_degree(nvars, d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        FormSpace {
            p,
            nvars,
            monomials,
            index,
        }
    }

    fn dim(&self) -> usize {
        self.monomials.len()
    }

    fn coords(&self, f: &PolyFp) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for (m, c) in f.terms() {
            v[self.index[&m.0]] = c;
        }
        v
    }

    fn poly(&self, v: &[u32]) -> PolyFp {
        let mut f = PolyFp::zero(self.p, self.nvars);
        for (m, &c) in self.monomials.iter().zip(v) {
            if c != 0 {
                f = f.add(&PolyFp::monomial(self.p, self.nvars, m.clone(), c));
            }
        }
        f
    }

    /// Reduced echelon basis of the span of `vectors`.
    fn echelon(&self, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let (r, pivots) = FpMatrix::from_rows(self.p, vectors).rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }
}

/// Basis of the invariant degree-`d` forms, in reduced echelon form against the
/// descending monomial order (so leading monomials are distinct and coefficients monic).
pub fn invariant_basis(action: &LinearAction, d: u32) -> Result<Vec<PolyFp>> {
    let space = FormSpace::new(action.p, action.nvars, d);
    let n = space.dim();
    let mut stacked: Vec<Vec<u32>> = Vec::new();
    for g in &action.generators {
        // column k of (σ − id) is the image of the k-th monomial minus itself
        let mut columns = Vec::with_capacity(n);
        for (k, m) in space.monomials.iter().enumerate() {
            let image =
                PolyFp::monomial(action.p, action.nvars, m.clone(), 1).substitute_linear(g)?;
            let mut col = space.coords(&image);
            col[k] = (col[k] + action.p - 1) % action.p;
            columns.push(col);
        }
        let block = FpMatrix::from_columns(action.p, n, &columns);
        stacked.extend(block.to_rows());
    }
    let kernel = if stacked.is_empty() {
        (0..n)
            .map(|k| {
                let mut e = vec![0; n];
                e[k] = 1;
                e
            })
            .collect()
    } else {
        FpMatrix::from_rows(action.p, &stacked).kernel()
    };
    Ok(space
        .echelon(&kernel)
        .iter()
        .map(|v| space.poly(v))
        .collect())
}

fn check_homogeneous(f: &PolyFp) -> Result<()> {
    if f.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// Echelon basis of the degree-`d` piece of the subring generated by `generators`.
pub fn graded_piece(generators: &[PolyFp], p: u32, nvars: usize, d: u32) -> Result<Vec<PolyFp>> {
    for g in generators {
        check_homogeneous(g)?;
    }
    let space = FormSpace::new(p, nvars, d);
    if d == 0 {
        return Ok(vec![PolyFp::one(p, nvars)]);
    }
    let positive: Vec<(&PolyFp, u32)> = generators
        .iter()
        .filter_map(|g| g.degree().filter(|&e| e > 0).map(|e| (g, e)))
        .collect();
    let mut products: Vec<Vec<u32>> = Vec::new();
    // multisets of generators (non-decreasing index) with degrees summing to d
    fn rec(
        gens: &[(&PolyFp, u32)],
        start: usize,
        remaining: u32,
        acc: PolyFp,
        space: &FormSpace,
        out: &mut Vec<Vec<u32>>,
    ) {
        if remaining == 0 {
            if !acc.is_zero() {
                out.push(space.coords(&acc));
            }
            return;
        }
        for i in start..gens.len() {
            let (g, e) = gens[i];
            if e <= remaining {
                rec(gens, i, remaining - e, acc.mul(g), space, out);
            }
        }
    }
    rec(
        &positive,
        0,
        d,
        PolyFp::one(p, nvars),
        &space,
        &mut products,
    );
    Ok(space
        .echelon(&products)
        .iter()
        .map(|v| space.poly(v))
        .collect())
}

/// Whether homogeneous `f` lies in the degree-`deg f` piece of the subring generated
/// by `generators`.
pub fn subring_membership(f: &PolyFp, generators: &[PolyFp], degree_bound: u32) -> Result<bool> {
    check_homogeneous(f)?;
    for g in generators {
        check_homogeneous(g)?;
    }
    let Some(d) = f.degree() else {
        return Ok(true);
    };
    if d > degree_bound {
        return Err(Error::DegreeBound {
            degree: d,
            bound: degree_bound,
        });
    }
    let piece = graded_piece(generators, f.prime(), f.nvars(), d)?;
    Ok(in_span(f, &piece))
}

/// Whether `f` is an F_p-combination of the homogeneous forms `basis` (all of `f`'s degree).
pub fn in_span(f: &PolyFp, basis: &[PolyFp]) -> bool {
    let Some(d) = f.degree() else {
        return true;
    };
    let space = FormSpace::new(f.prime(), f.nvars(), d);
    let rows: Vec<Vec<u32>> = basis
        .iter()
        .filter(|b| b.degree() == Some(d))
        .map(|b| space.coords(b))
        .collect();
    let base_rank = if rows.is_empty() {
        0
    } else {
        FpMatrix::from_rows(f.prime(), &rows).rank()
    };
    let mut with_f = rows;
    with_f.push(space.coords(f));
    FpMatrix::from_rows(f.prime(), &with_f).rank() == base_rank
}

/// Leading monomial in graded-lex order.
pub fn leading_monomial(f: &PolyFp) -> Option<&Monomial> {
    f.terms().next_back().map(|(m, _)| m)
}
