//! Truncated polynomial rings `F_p[x_1, …, x_r]/(x_i^{p^n})` and Weyl-orbit sums
//! whose group acts through formal-group-law combinations of the variables.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::honda::Fgl;
use crate::error::{Error, Result};
use crate::fp::{ipow, FpMatrix};
use crate::poly::{default_names, PolyFp};

const ACTION_CLOSURE_LIMIT: usize = 24;

#[derive(Debug, Clone)]
pub struct CycRing {
    pub p: u32,
    pub height: u32,
    pub rank: usize,
    /// Total-degree bound used while substituting series.
    pub degree: u32,
}

impl CycRing {
    /// Needs `degree ≥ rank·(p^n − 1)` so that no surviving monomial is lost to truncation.
    pub fn new(p: u32, height: u32, rank: usize, degree: u32) -> Result<Self> {
        let ring = CycRing {
            p,
            height,
            rank,
            degree,
        };
        let needed = rank as u32 * (ring.exponent_bound() - 1);
        if degree < needed {
            return Err(Error::Truncation {
                degree,
                reason: format!("the ring has monomials up to degree {needed}"),
            });
        }
        Ok(ring)
    }

    /// `p^n`: every exponent in the ring is below this.
    pub fn exponent_bound(&self) -> u32 {
        ipow(self.p as u64, self.height) as u32
    }

    /// F_p-dimension `p^{n r}`.
    pub fn dimension(&self) -> u64 {
        ipow(self.p as u64, self.height * self.rank as u32)
    }

    fn keep(&self) -> impl Fn(&[u32]) -> bool + Copy {
        let bound = self.exponent_bound();
        let degree = self.degree;
        move |e: &[u32]| e.iter().all(|&k| k < bound) && e.iter().sum::<u32>() <= degree
    }

    pub fn reduce(&self, f: &PolyFp) -> PolyFp {
        let keep = self.keep();
        f.filter(|m| keep(&m.0))
    }

    pub fn mul(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        a.mul_filtered(b, self.keep())
    }

    /// Substitutes `args` for the variables of `f`, reducing as it goes.
    pub fn substitute(&self, f: &PolyFp, args: &[PolyFp]) -> Result<PolyFp> {
        f.compose_filtered(args, self.keep())
    }

    pub fn names(&self) -> Vec<String> {
        if self.rank == 2 {
            vec!["w".into(), "z".into()]
        } else {
            default_names(self.rank)
        }
    }
}

/// A variable `v` in a product, sent to the F-linear combination with these coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SeriesFactor {
    pub argument: Vec<u32>,
    pub exponent: u32,
}

/// `coefficient · Π argument_k^{exponent_k}`, each argument an F-linear combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitMonomial {
    pub coefficient: u32,
    pub factors: Vec<SeriesFactor>,
}

/// The orbit sum `Σ_σ σ(expr)` kept term by term, before expansion.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitExpansion {
    pub rank: usize,
    pub monomials: Vec<OrbitMonomial>,
}

/// The finite group generated by matrices acting on variables: `σ(v_j) = Σ_i σ_ij v_i`
/// read through the formal group law.
pub fn close_action(p: u32, rank: usize, generators: &[FpMatrix]) -> Result<Vec<FpMatrix>> {
    if let Some(g) = generators
        .iter()
        .find(|g| g.rows() != rank || g.cols() != rank)
    {
        return Err(Error::DimensionMismatch(format!(
            "{}×{} action matrix on {rank} variables",
            g.rows(),
            g.cols()
        )));
    }
    let identity = FpMatrix::identity(p, rank);
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(a) = queue.pop_front() {
        for g in generators {
            let b = g.mul(&a);
            if seen.insert(b.clone()) {
                if seen.len() > ACTION_CLOSURE_LIMIT {
                    return Err(Error::ActionDoesNotClose(ACTION_CLOSURE_LIMIT));
                }
                elements.push(b.clone());
                queue.push_back(b);
            }
        }
    }
    Ok(elements)
}

/// The C_3 action on `w, z` with `w ↦ z`, `z ↦ w +_F z`.
pub fn a4_weyl_generator() -> FpMatrix {
    FpMatrix::from_columns(2, 2, &[vec![0, 1], vec![1, 1]])
}

/// Orbit sum of `expr` over every group element, one summand per element and monomial.
pub fn weyl_orbit_expansion(expr: &PolyFp, generators: &[FpMatrix]) -> Result<OrbitExpansion> {
    let rank = expr.nvars();
    let elements = close_action(expr.prime(), rank, generators)?;
    let mut monomials = Vec::new();
    for sigma in &elements {
        for (m, c) in expr.terms().rev() {
            let factors =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| SeriesFactor {
                        argument: sigma.column(j),
                        exponent: e,
                    })
                    .collect();
            monomials.push(OrbitMonomial {
                coefficient: c,
                factors,
            });
        }
    }
    Ok(OrbitExpansion { rank, monomials })
}

impl OrbitExpansion {
    /// Evaluates in `ring`, every argument expanded through `fgl`.
    pub fn evaluate(&self, ring: &CycRing, fgl: &Fgl) -> Result<PolyFp> {
        let mut total = PolyFp::zero(ring.p, self.rank);
        for m in &self.monomials {
            let mut term = PolyFp::constant(ring.p, self.rank, m.coefficient);
            for f in &m.factors {
                let arg = ring.reduce(&fgl.linear_combination(&f.argument, self.rank)?);
                for _ in 0..f.exponent {
                    term = ring.mul(&term, &arg);
                }
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// Renders arguments as `w`, `z`, `F(w, z)`, ….
    pub fn render(&self, names: &[String]) -> String {
        let arg = |a: &[u32]| {
            let parts: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| {
                    if c == 1 {
                        names[i].clone()
                    } else {
                        format!("[{c}]{}", names[i])
                    }
                })
                .collect();
            match parts.len() {
                0 => "0".to_string(),
                1 => parts[0].clone(),
                _ => format!("F({})", parts.join(", ")),
            }
        };
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                let mut fs: Vec<String> = m
                    .factors
                    .iter()
                    .map(|f| {
                        let a = arg(&f.argument);
                        if f.exponent == 1 {
                            a
                        } else {
                            format!("{a}^{}", f.exponent)
                        }
                    })
                    .collect();
                if m.coefficient != 1 || fs.is_empty() {
                    fs.insert(0, m.coefficient.to_string());
                }
                fs.join("*")
            })
            .collect();
        terms.join(" + ")
    }
}

/// Orbit sum of `expr` evaluated directly in the ring: each group element substitutes
/// F-series for the variables.
pub fn weyl_orbit_restriction(
    ring: &CycRing,
    fgl: &Fgl,
    expr: &PolyFp,
    generators: &[FpMatrix],
) -> Result<PolyFp> {
    let elements = close_action(ring.p, ring.rank, generators)?;
    let mut total = PolyFp::zero(ring.p, ring.rank);
    for sigma in &elements {
        let args = (0..ring.rank)
            .map(|j| {
                fgl.linear_combination(&sigma.column(j), ring.rank)
                    .map(|s| ring.reduce(&s))
            })
            .collect::<Result<Vec<_>>>()?;
        total = total.add(&ring.substitute(expr, &args)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::honda::honda_fgl;

    fn wz(s: &str) -> PolyFp {
        PolyFp::parse(s, &["w".to_string(), "z".to_string()], 2).unwrap()
    }

    #[test]
    fn ring_dimensions() {
        let r = CycRing::new(2, 2, 2, 8).unwrap();
        assert_eq!(r.exponent_bound(), 4);
        assert_eq!(r.dimension(), 16);
        assert!(CycRing::new(2, 2, 2, 5).is_err());
        assert!(r.mul(&wz("w^2"), &wz("w^2")).is_zero());
    }

    #[test]
    fn a4_orbit() {
        let fgl = honda_fgl(2, 2, 8).unwrap();
        let ring = CycRing::new(2, 2, 2, 8).unwrap();
        let g = [a4_weyl_generator()];
        assert_eq!(close_action(2, 2, &g).unwrap().len(), 3);

        let one = PolyFp::one(2, 2);
        assert_eq!(weyl_orbit_restriction(&ring, &fgl, &one, &g).unwrap(), one);

        let w = wz("w");
        let expected =
            wz("w + z").add(&ring.reduce(&fgl.law.compose(&[wz("w"), wz("z")], Some(8)).unwrap()));
        assert_eq!(
            weyl_orbit_restriction(&ring, &fgl, &w, &g).unwrap(),
            expected
        );

        let theta = wz("w^2*z");
        let direct = weyl_orbit_restriction(&ring, &fgl, &theta, &g).unwrap();
        let expansion = weyl_orbit_expansion(&theta, &g).unwrap();
        assert_eq!(expansion.evaluate(&ring, &fgl).unwrap(), direct);
        assert_eq!(
            expansion.render(&ring.names()),
            "w^2*z + z^2*F(w, z) + F(w, z)^2*w"
        );
        // w^2 z + z^2 (w + z + w^2 z^2) + (w^2 + z^2) w, the w^2 z^4 term dying in the ring
        assert_eq!(direct, wz("w^3 + w^2*z + z^3"));
    }
}
