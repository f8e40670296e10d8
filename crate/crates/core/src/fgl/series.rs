//! Dense truncated power series in one or two variables over an exact coefficient ring.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fp::inv_mod;
use crate::poly::PolyFp;

pub trait CoeffRing: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u32,
}

impl CoeffRing for PrimeField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p as u64) as u32
    }
}

/// Series truncated above total degree `degree`; `coeffs[i][j]` is the coefficient
/// of `x^i y^j` (with `j = 0` only when there is one variable).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<R: CoeffRing> {
    pub ring: R,
    pub nvars: usize,
    pub degree: u32,
    coeffs: Vec<Vec<R::Elem>>,
}

impl<R: CoeffRing> TruncSeries<R> {
    pub fn zero(ring: R, nvars: usize, degree: u32) -> Self {
        assert!(nvars == 1 || nvars == 2, "series in one or two variables");
        let d = degree as usize;
        let coeffs = (0..=d)
            .map(|i| vec![ring.zero(); if nvars == 1 { 1 } else { d - i + 1 }])
            .collect();
        TruncSeries {
            ring,
            nvars,
            degree,
            coeffs,
        }
    }

    pub fn var(ring: R, nvars: usize, degree: u32, which: usize) -> Self {
        let mut s = Self::zero(ring.clone(), nvars, degree);
        if degree >= 1 {
            let one = ring.one();
            if which == 0 {
                s.set(1, 0, one);
            } else {
                s.set(0, 1, one);
            }
        }
        s
    }

    pub fn constant(ring: R, nvars: usize, degree: u32, c: R::Elem) -> Self {
        let mut s = Self::zero(ring, nvars, degree);
        s.set(0, 0, c);
        s
    }

    pub fn get(&self, i: u32, j: u32) -> R::Elem {
        if i + j > self.degree || (self.nvars == 1 && j > 0) {
            return self.ring.zero();
        }
        self.coeffs[i as usize][j as usize].clone()
    }

    pub fn set(&mut self, i: u32, j: u32, c: R::Elem) {
        assert!(i + j <= self.degree && (self.nvars == 2 || j == 0));
        self.coeffs[i as usize][j as usize] = c;
    }

    /// `(i, j, coefficient)` for every nonzero coefficient.
    pub fn nonzero_terms(&self) -> Vec<(u32, u32, R::Elem)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !self.ring.is_zero(c) {
                    out.push((i as u32, j as u32, c.clone()));
                }
            }
        }
        out
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars);
        assert_eq!(self.degree, other.degree);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (i, row) in other.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.coeffs[i][j] = self.ring.add(&out.coeffs[i][j], c);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for c in row {
                *c = self.ring.neg(c);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for x in row {
                *x = self.ring.mul(x, c);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.ring.clone(), self.nvars, self.degree);
        let a = self.nonzero_terms();
        let b = other.nonzero_terms();
        for (i1, j1, c1) in &a {
            for (i2, j2, c2) in &b {
                let (i, j) = (i1 + i2, j1 + j2);
                if i + j <= self.degree {
                    let cur = &out.coeffs[i as usize][j as usize];
                    out.coeffs[i as usize][j as usize] = self.ring.add(cur, &self.ring.mul(c1, c2));
                }
            }
        }
        out
    }

    /// `self(arg)` for a univariate `self` and an argument without constant term.
    pub fn compose(&self, arg: &TruncSeries<R>) -> Result<TruncSeries<R>> {
        if self.nvars != 1 {
            return Err(Error::DimensionMismatch(
                "only univariate series can be composed".into(),
            ));
        }
        if !self.ring.is_zero(&arg.get(0, 0)) {
            return Err(Error::Truncation {
                degree: 0,
                reason: "composition argument has a constant term".into(),
            });
        }
        let mut out = Self::zero(self.ring.clone(), arg.nvars, arg.degree);
        let mut power = Self::constant(self.ring.clone(), arg.nvars, arg.degree, self.ring.one());
        for k in 0..=self.degree.min(arg.degree) {
            let c = self.get(k, 0);
            if !self.ring.is_zero(&c) {
                out = out.add(&power.scale(&c));
            }
            power = power.mul(arg);
        }
        Ok(out)
    }

    /// Compositional inverse of a univariate series `x + O(x^2)`.
    pub fn reversion(&self) -> Result<TruncSeries<R>> {
        if self.nvars != 1
            || !self.ring.is_zero(&self.get(0, 0))
            || self.get(1, 0) != self.ring.one()
        {
            return Err(Error::Truncation {
                degree: 1,
                reason: "reversion needs a series of the form x + O(x^2)".into(),
            });
        }
        let x = Self::var(self.ring.clone(), 1, self.degree, 0);
        let mut e = x.clone();
        // each pass fixes at least one more degree
        for _ in 0..self.degree {
            let err = self.compose(&e)?.sub(&x);
            if err.nonzero_terms().is_empty() {
                break;
            }
            e = e.sub(&err);
        }
        Ok(e)
    }
}

impl TruncSeries<Rationals> {
    /// Reduction to F_p; fails unless every coefficient is p-integral.
    pub fn reduce_mod(&self, p: u32) -> Result<TruncSeries<PrimeField>> {
        let field = PrimeField { p };
        let mut out = TruncSeries::zero(field, self.nvars, self.degree);
        let bp = BigInt::from(p);
        for (i, j, c) in self.nonzero_terms() {
            if c.denom().is_multiple_of(&bp) {
                return Err(Error::NotIntegral(format!(
                    "coefficient {c} of x^{i} y^{j}"
                )));
            }
            let num = (c.numer().mod_floor(&bp))
                .to_string()
                .parse::<u32>()
                .expect("small residue");
            let den = (c.denom().abs().mod_floor(&bp))
                .to_string()
                .parse::<u32>()
                .expect("small residue");
            let den = if c.denom().is_negative() {
                (p - den) % p
            } else {
                den
            };
            out.set(
                i,
                j,
                (num as u64 * inv_mod(den, p) as u64 % p as u64) as u32,
            );
        }
        Ok(out)
    }
}

impl TruncSeries<PrimeField> {
    pub fn to_poly(&self) -> PolyFp {
        let p = self.ring.p;
        let mut out = PolyFp::zero(p, self.nvars);
        for (i, j, c) in self.nonzero_terms() {
            let e = if self.nvars == 1 { vec![i] } else { vec![i, j] };
            out = out.add(&PolyFp::monomial(p, self.nvars, e, c));
        }
        out
    }
}
