//! The Hurewicz map on `BZ/p` for the model `F_p[x]/(x^{p^n})`, evaluated on the
//! homology basis `β_t`, and the injectivity check built on it.

use serde::Serialize;

use super::hopf::{mod_indecomposables, Atom, HopfExpr, Term};
use crate::error::{Error, Result};
use crate::fp::{ipow, is_prime};
use crate::poly::{default_names, PolyFp};

/// Image of `β_t` under the map classified by `element = Σ c_i x^i`, reduced modulo
/// decomposables. The class is `*_i [c_i] ∘ b(s)^{∘i}` on `β(s)`, read off at `s^t`.
pub fn hurewicz_eval(element: &PolyFp, t: u32, p: u32, height: u32) -> Result<HopfExpr> {
    let bound = ipow(p as u64, height) as u32;
    if t >= bound {
        return Err(Error::Truncation {
            degree: t,
            reason: format!("β_t is defined for t < p^n = {bound}"),
        });
    }
    if element.nvars() != 1 || element.prime() != p {
        return Err(Error::DimensionMismatch(
            "expected a polynomial in one variable over F_p".into(),
        ));
    }
    if let Some((m, _)) = element.terms().find(|(m, _)| m.0[0] >= bound) {
        return Err(Error::Truncation {
            degree: m.0[0],
            reason: format!("x^{} is zero in the ring", m.0[0]),
        });
    }
    let s = PolyFp::var(p, 2, 0);
    let b = HopfExpr::b_series(p, height, t, &s);
    let mut total = HopfExpr::unit(p, height, t);
    for (m, c) in element.terms() {
        let mut image = HopfExpr::grouplike(p, height, t, c);
        for _ in 0..m.0[0] {
            image = image.circ(&b)?;
        }
        total = total.star(&image);
    }
    let mut at_t = HopfExpr::zero(p, height, t);
    for (term, coefficient) in total.terms() {
        let c = coefficient.coeff(&[t, 0]);
        if c != 0 {
            at_t = at_t.add(&HopfExpr::from_term(
                p,
                height,
                t,
                term.clone(),
                PolyFp::constant(p, 2, c),
            ));
        }
    }
    Ok(mod_indecomposables(&at_t))
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityWitness {
    pub element: String,
    pub beta: u32,
    pub image: HopfExpr,
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityReport {
    pub p: u32,
    pub height: u32,
    pub witnesses: Vec<InjectivityWitness>,
}

/// For every `c·x^i` and every `c_0 + c·x^{p^n − 1}` finds `β_t` on which the element
/// and zero have different images. The expected witness is tried first: `β_i` for
/// `c·x^i` and `β_{p^n − 1}` for the two-term elements.
pub fn verify_kn_injectivity(p: u32, height: u32) -> Result<InjectivityReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bound = ipow(p as u64, height);
    if bound > 16 {
        return Err(Error::Unsupported(format!("p^n = {bound} exceeds 16")));
    }
    let bound = bound as u32;
    let names = default_names(1);
    let mut candidates: Vec<(PolyFp, u32)> = Vec::new();
    for i in 0..bound {
        for c in 1..p {
            candidates.push((PolyFp::monomial(p, 1, vec![i], c), i));
        }
    }
    for c0 in 1..p {
        for c in 1..p {
            let f = PolyFp::constant(p, 1, c0).add(&PolyFp::monomial(p, 1, vec![bound - 1], c));
            candidates.push((f, bound - 1));
        }
    }
    let zero = PolyFp::zero(p, 1);
    let mut witnesses = Vec::new();
    for (f, preferred) in candidates {
        let order = std::iter::once(preferred).chain((0..bound).filter(|&t| t != preferred));
        let mut found = None;
        for t in order {
            let image = hurewicz_eval(&f, t, p, height)?;
            if image != hurewicz_eval(&zero, t, p, height)? {
                found = Some((t, image));
                break;
            }
        }
        let (beta, image) = found.ok_or_else(|| {
            Error::Assertion(format!("{} has zero image on every β_t", f.render(&names)))
        })?;
        witnesses.push(InjectivityWitness {
            element: f.render(&names),
            beta,
            image,
        });
    }
    Ok(InjectivityReport {
        p,
        height,
        witnesses,
    })
}

/// The `∘`-monomial `b_1^{∘r}` as a term.
pub fn b1_power(r: usize) -> Term {
    Term::new(vec![Atom::b(&vec![1; r])])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str, p: u32) -> PolyFp {
        PolyFp::parse(s, &default_names(1), p).unwrap()
    }

    #[test]
    fn monomials_hit_b1_powers() {
        for r in 1..4u32 {
            let e = hurewicz_eval(&x(&format!("x^{r}"), 2), r, 2, 2).unwrap();
            assert_eq!(
                e,
                HopfExpr::from_term(2, 2, r, b1_power(r as usize), PolyFp::one(2, 2))
            );
            for t in 1..r {
                assert!(hurewicz_eval(&x(&format!("x^{r}"), 2), t, 2, 2)
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn constants_are_grouplike() {
        let e = hurewicz_eval(&x("2", 3), 0, 3, 1).unwrap();
        assert_eq!(e, HopfExpr::grouplike(3, 1, 0, 2));
        assert!(hurewicz_eval(&x("2", 3), 1, 3, 1).unwrap().is_zero());
        assert_eq!(
            hurewicz_eval(&PolyFp::zero(3, 1), 0, 3, 1).unwrap(),
            HopfExpr::unit(3, 1, 0)
        );
    }

    #[test]
    fn injectivity_at_small_heights() {
        let r = verify_kn_injectivity(2, 2).unwrap();
        let x2 = r.witnesses.iter().find(|w| w.element == "x^2").unwrap();
        assert_eq!(x2.beta, 2);
        let special = r.witnesses.iter().find(|w| w.element == "x^3 + 1").unwrap();
        assert_eq!(special.beta, 3);
        assert_eq!(special.image.render(), "b_1∘b_1∘b_1");
        for (p, n) in [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let r = verify_kn_injectivity(p, n).unwrap();
            assert_eq!(
                r.witnesses.len() as u64,
                (ipow(p as u64, n) + (p as u64 - 1)) * (p as u64 - 1)
            );
        }
        assert!(verify_kn_injectivity(2, 5).is_err());
    }
}
