//! Finite fields `F_q = F_p[w]/(c(w))` with fixed Conway polynomials.

use crate::error::{Error, Result};
use crate::fp::{inv_mod, is_prime};

/// Conway polynomials, coefficients from the constant term up.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
];

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead as u64 * c as u64 % p as u64) as u32) % p;
        }
        r = trim(r);
    }
    r
}

fn monic_of_degree(p: u32, d: usize, index: u64) -> Vec<u32> {
    let mut v = Vec::with_capacity(d + 1);
    let mut i = index;
    for _ in 0..d {
        v.push((i % p as u64) as u32);
        i /= p as u64;
    }
    v.push(1);
    v
}

/// Irreducibility over F_p by trial division with every monic polynomial of degree ≤ deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    let d = poly.len().saturating_sub(1);
    if d == 0 {
        return false;
    }
    for e in 1..=d / 2 {
        for idx in 0..(p as u64).pow(e as u32) {
            if poly_rem(&poly, &monic_of_degree(p, e, idx), p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The tabulated Conway polynomial if it checks out, else the lexicographically
/// least monic irreducible polynomial of degree `m`.
pub fn defining_polynomial(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    if let Some((_, _, c)) = CONWAY.iter().find(|(q, d, _)| *q == p && *d == m) {
        if is_irreducible(c, p) {
            return c.to_vec();
        }
        log::warn!(
            "tabulated polynomial for F_{}^{} is reducible; searching instead",
            p,
            m
        );
    }
    (0..(p as u64).pow(m))
        .map(|i| monic_of_degree(p, m as usize, i))
        .find(|c| is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Splits `q` as `p^m`.
pub fn prime_power(q: u64, p: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut m = 0;
    let mut r = q;
    while r > 1 && r.is_multiple_of(p as u64) {
        r /= p as u64;
        m += 1;
    }
    if r != 1 || m == 0 {
        return Err(Error::NotAPrimePower { q, p });
    }
    Ok(m)
}

/// `F_q`; elements are indices `Σ c_i p^i` of their coordinates in the basis `1, w, …, w^{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl GaloisField {
    pub fn new(q: u64, p: u32) -> Result<Self> {
        let m = prime_power(q, p)?;
        Ok(GaloisField {
            p,
            m,
            modulus: defining_polynomial(p, m),
        })
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.m)
    }

    pub fn coords(&self, a: usize) -> Vec<u32> {
        crate::fp::vector_from_index(a, self.p, self.m as usize)
    }

    pub fn from_coords(&self, c: &[u32]) -> usize {
        crate::fp::vector_index(c, self.p)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.from_coords(&s)
    }

    pub fn scale(&self, a: usize, c: u32) -> usize {
        let x: Vec<u32> = self.coords(a).iter().map(|u| (u * c) % self.p).collect();
        self.from_coords(&x)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let mut prod = vec![0u32; x.len() + y.len()];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.m as usize, 0);
        self.from_coords(&r)
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        if a == 0 {
            return None;
        }
        if self.m == 1 {
            return Some(inv_mod(a as u32, self.p) as usize);
        }
        (1..self.order()).find(|&b| self.mul(a, b) == 1)
    }

    /// `0`, `1`, `w`, `w^2 + 2*w + 1`, …; plain residues when `m = 1`.
    pub fn render(&self, a: usize) -> String {
        let c = self.coords(a);
        let parts: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| {
                let power = match i {
                    0 => String::new(),
                    1 => "w".to_string(),
                    _ => format!("w^{i}"),
                };
                match (v, i) {
                    (_, 0) => v.to_string(),
                    (1, _) => power,
                    _ => format!("{v}*{power}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}
