//! Sparse multivariate polynomials over F_p.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fp::{inv_mod, FpMatrix};

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then the first variable dominating).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u32,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

/// `x, y, z, w` for up to four variables, `x0, x1, …` beyond.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 4 {
        ["x", "y", "z", "w"][..nvars]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl PolyFp {
    pub fn zero(p: u32, nvars: usize) -> Self {
        PolyFp {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u32, nvars: usize, c: u32) -> Self {
        Self::monomial(p, nvars, vec![0; nvars], c)
    }

    pub fn one(p: u32, nvars: usize) -> Self {
        Self::constant(p, nvars, 1)
    }

    pub fn var(p: u32, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(p, nvars, e, 1)
    }

    pub fn monomial(p: u32, nvars: usize, exponents: Vec<u32>, c: u32) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut out = Self::zero(p, nvars);
        out.add_term(Monomial(exponents), c);
        out
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> u32 {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> PolyFp {
        self.filter(|m| m.degree() == d)
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: u32) -> PolyFp {
        self.filter(|m| m.degree() <= d)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> PolyFp {
        PolyFp {
            p: self.p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &PolyFp) {
        assert_eq!(self.p, other.p, "polynomials over different primes");
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials in different variable counts"
        );
    }

    pub fn add(&self, other: &PolyFp) -> PolyFp {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> PolyFp {
        self.scale(self.p - 1)
    }

    pub fn sub(&self, other: &PolyFp) -> PolyFp {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> PolyFp {
        let mut out = Self::zero(self.p, self.nvars);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), (a as u64 * c as u64 % self.p as u64) as u32);
        }
        out
    }

    pub fn mul(&self, other: &PolyFp) -> PolyFp {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only the monomials accepted by `keep` (used for truncated rings).
    pub fn mul_filtered(&self, other: &PolyFp, keep: impl Fn(&[u32]) -> bool) -> PolyFp {
        self.check_compatible(other);
        let mut out = Self::zero(self.p, self.nvars);
        let p = self.p as u64;
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<u32> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                if keep(&e) {
                    out.add_term(Monomial(e), (ca as u64 * cb as u64 % p) as u32);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> PolyFp {
        (0..k).fold(Self::one(self.p, self.nvars), |acc, _| acc.mul(self))
    }

    /// Linear change of variables: old variable `x_j` becomes `Σ_i M_ij y_i`,
    /// where `M` has one row per new variable and one column per old variable.
    pub fn substitute_linear(&self, m: &FpMatrix) -> Result<PolyFp> {
        if m.cols() != self.nvars || m.prime() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix is {}×{} over F_{}, polynomial has {} variables over F_{}",
                m.rows(),
                m.cols(),
                m.prime(),
                self.nvars,
                self.p
            )));
        }
        let images: Vec<PolyFp> = (0..m.cols())
            .map(|j| {
                let mut img = Self::zero(self.p, m.rows());
                for i in 0..m.rows() {
                    img = img.add(&Self::var(self.p, m.rows(), i).scale(m.get(i, j)));
                }
                img
            })
            .collect();
        self.compose(&images, None)
    }

    /// Substitutes `args[i]` for the i-th variable, optionally truncating every
    /// intermediate product above total degree `truncate`.
    pub fn compose(&self, args: &[PolyFp], truncate: Option<u32>) -> Result<PolyFp> {
        self.compose_filtered(args, |e: &[u32]| {
            truncate.is_none_or(|d| e.iter().sum::<u32>() <= d)
        })
    }

    /// Substitution where every intermediate product keeps only monomials accepted
    /// by `keep`. `keep` must describe a monomial ideal's complement.
    pub fn compose_filtered(
        &self,
        args: &[PolyFp],
        keep: impl Fn(&[u32]) -> bool + Copy,
    ) -> Result<PolyFp> {
        if args.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} arguments for {} variables",
                args.len(),
                self.nvars
            )));
        }
        let target_vars = args.first().map_or(0, |a| a.nvars);
        if args.iter().any(|a| a.nvars != target_vars || a.p != self.p) {
            return Err(Error::DimensionMismatch(
                "substituted polynomials disagree".into(),
            ));
        }
        // powers[i][k] = args[i]^k
        let mut powers: Vec<Vec<PolyFp>> = args
            .iter()
            .map(|_| vec![Self::one(self.p, target_vars)])
            .collect();
        let mut out = Self::zero(self.p, target_vars);
        for (m, &c) in &self.terms {
            let mut term = Self::constant(self.p, target_vars, c);
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_filtered(&args[i], keep);
                    powers[i].push(next);
                }
                term = term.mul_filtered(&powers[i][e as usize], keep);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Renders with the given variable names, highest terms first, e.g. `x^2*y + x*y^2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| {
                let mut factors: Vec<String> = Vec::new();
                if c != 1 || m.degree() == 0 {
                    factors.push(c.to_string());
                }
                for (i, &e) in m.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(names[i].clone()),
                        _ => factors.push(format!("{}^{}", names[i], e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses a sum of terms such as `x^2*y + 2*x*y^2 - y^3`.
    pub fn parse(text: &str, names: &[String], p: u32) -> Result<PolyFp> {
        let nvars = names.len();
        let mut out = Self::zero(p, nvars);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in cleaned.chars() {
            if ch == '+' || ch == '-' {
                if !current.is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                } else if !terms.is_empty() || negative {
                    return Err(Error::Parse(format!("dangling sign in `{text}`")));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("trailing sign in `{text}`")));
        }
        terms.push((negative, current));

        for (negative, term) in terms {
            let mut coeff: u64 = 1;
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{term}`")));
                }
                if let Ok(n) = factor.parse::<u64>() {
                    coeff = coeff * (n % p as u64) % p as u64;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let idx = names
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                exps[idx] += exp;
            }
            let c = if negative {
                (p as u64 - coeff) % p as u64
            } else {
                coeff
            };
            out.add_term(Monomial(exps), c as u32);
        }
        Ok(out)
    }

    /// Divides by the leading coefficient (no-op on zero).
    pub fn monic(&self) -> PolyFp {
        match self.terms.values().next_back() {
            Some(&lc) => self.scale(inv_mod(lc, self.p)),
            None => self.clone(),
        }
    }
}

/// Exact equality of canonical forms.
pub fn relation_check(lhs: &PolyFp, rhs: &PolyFp) -> bool {
    lhs == rhs
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars)))
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFp[F_{}]({})", self.p, self)
    }
}

impl Serialize for PolyFp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl Add for &PolyFp {
    type Output = PolyFp;
    fn add(self, rhs: &PolyFp) -> PolyFp {
        PolyFp::add(self, rhs)
    }
}

impl Sub for &PolyFp {
    type Output = PolyFp;
    fn sub(self, rhs: &PolyFp) -> PolyFp {
        PolyFp::sub(self, rhs)
    }
}

impl Mul for &PolyFp {
    type Output = PolyFp;
    fn mul(self, rhs: &PolyFp) -> PolyFp {
        PolyFp::mul(self, rhs)
    }
}

impl Neg for &PolyFp {
    type Output = PolyFp;
    fn neg(self) -> PolyFp {
        PolyFp::neg(self)
    }
}
