//! Formal group laws, `K(n)`-style truncated rings and the Hopf-ring rewrite engine.
//!
//! `v_n` is set to 1 throughout and all coefficients live in F_p.

pub mod cyc;
pub mod demo;
pub mod honda;
pub mod hopf;
pub mod hurewicz;
pub mod series;

pub use cyc::{weyl_orbit_expansion, weyl_orbit_restriction, CycRing, OrbitExpansion};
pub use demo::{a4_demo, run_pipeline, DemoReport, PipelineOptions};
pub use honda::{honda_fgl, Fgl};
pub use hopf::{beta_pushforward, mod_indecomposables, Atom, HopfExpr, Term};
pub use hurewicz::{hurewicz_eval, verify_kn_injectivity, InjectivityReport};
pub use series::{CoeffRing, PrimeField, Rationals, TruncSeries};
