//! Honda formal group laws from the logarithm `Σ x^{p^{ni}} / p^i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::series::{Rationals, TruncSeries};
use crate::error::{Error, Result};
use crate::fp::{ipow, is_prime};
use crate::poly::PolyFp;

pub const MAX_DEGREE: u32 = 16;

/// A formal group law over F_p, truncated above total degree `degree`.
#[derive(Debug, Clone)]
pub struct Fgl {
    pub p: u32,
    pub height: u32,
    pub degree: u32,
    /// `F(x, y)`.
    pub law: PolyFp,
}

pub fn honda_fgl(p: u32, n: u32, degree: u32) -> Result<Fgl> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Unsupported("height must be positive".into()));
    }
    if degree > MAX_DEGREE {
        return Err(Error::Truncation {
            degree,
            reason: format!("Honda laws are built up to degree {MAX_DEGREE}"),
        });
    }
    let mut log = TruncSeries::zero(Rationals, 1, degree);
    let mut i = 0u32;
    loop {
        let e = ipow(p as u64, n * i);
        if e > degree as u64 {
            break;
        }
        let denom = BigInt::from(ipow(p as u64, i));
        log.set(e as u32, 0, BigRational::new(BigInt::one(), denom));
        i += 1;
    }
    let exp = log.reversion()?;
    let x = TruncSeries::var(Rationals, 2, degree, 0);
    let y = TruncSeries::var(Rationals, 2, degree, 1);
    let sum = log.compose(&x)?.add(&log.compose(&y)?);
    let law = exp.compose(&sum)?.reduce_mod(p)?.to_poly();
    Ok(Fgl {
        p,
        height: n,
        degree,
        law,
    })
}

impl Fgl {
    /// `F(a, b)` for polynomials in a common variable set, truncated at the law's degree.
    pub fn add_series(&self, a: &PolyFp, b: &PolyFp) -> Result<PolyFp> {
        self.law.compose(&[a.clone(), b.clone()], Some(self.degree))
    }

    /// `[k]_F(a)`.
    pub fn multiply(&self, k: u32, a: &PolyFp) -> Result<PolyFp> {
        let mut acc = PolyFp::zero(a.prime(), a.nvars());
        for _ in 0..k {
            acc = self.add_series(a, &acc)?;
        }
        Ok(acc)
    }

    /// `[p]_F(x)` as a polynomial in one variable.
    pub fn p_series(&self) -> Result<PolyFp> {
        self.multiply(self.p, &PolyFp::var(self.p, 1, 0))
    }

    /// The F-linear combination `[a_1](v_1) +_F … +_F [a_r](v_r)` of the variables.
    pub fn linear_combination(&self, coefficients: &[u32], nvars: usize) -> Result<PolyFp> {
        let mut acc = PolyFp::zero(self.p, nvars);
        for (i, &a) in coefficients.iter().enumerate() {
            if a % self.p != 0 {
                let term = self.multiply(a % self.p, &PolyFp::var(self.p, nvars, i))?;
                acc = self.add_series(&acc, &term)?;
            }
        }
        Ok(acc)
    }

    /// Unit, commutativity and associativity up to the truncation degree.
    pub fn check_axioms(&self) -> Result<()> {
        let p = self.p;
        let x = PolyFp::var(p, 1, 0);
        let zero = PolyFp::zero(p, 1);
        if self.add_series(&x, &zero)? != x || self.add_series(&zero, &x)? != x {
            return Err(Error::Assertion("F(x, 0) = x fails".into()));
        }
        let swapped = self
            .law
            .compose(&[PolyFp::var(p, 2, 1), PolyFp::var(p, 2, 0)], None)?;
        if swapped != self.law {
            return Err(Error::Assertion("F is not commutative".into()));
        }
        let v = |i| PolyFp::var(p, 3, i);
        let lhs = self.add_series(&self.add_series(&v(0), &v(1))?, &v(2))?;
        let rhs = self.add_series(&v(0), &self.add_series(&v(1), &v(2))?)?;
        if lhs != rhs {
            return Err(Error::Assertion("F is not associative".into()));
        }
        Ok(())
    }

    /// Lowest degree of `[p]_F(x)`, which is `p^height` for a Honda law seen far enough.
    pub fn p_series_valuation(&self) -> Result<Option<u32>> {
        Ok(self.p_series()?.terms().next().map(|(m, _)| m.degree()))
    }
}
