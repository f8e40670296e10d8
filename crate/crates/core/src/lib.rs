//! Chromatic categories of elementary abelian p-subgroups of finite groups.
//!
//! The crate builds, for a finite permutation group `G` and a prime `p`:
//!
//! * the categories `A^(n)(G)` whose morphisms carry every n-tuple to a
//!   simultaneously conjugate n-tuple, the Quillen category, their skeletons
//!   and the level at which they stabilize ([`chromcat`]);
//! * F_q-rational points of colimits of `V ⊗ F_q` over those categories ([`colim`]);
//! * sparse polynomial invariant theory over F_p ([`poly`], [`invariants`]) and
//!   the restriction-defined categories of generator-presented subrings ([`subring`]);
//! * Honda formal group laws, truncated cyclic rings and a Hopf-ring rewrite
//!   engine modulo decomposables ([`fgl`]).

pub mod chromcat;
pub mod colim;
pub mod elemab;
pub mod error;
pub mod fgl;
pub mod fp;
pub mod fq;
pub mod group;
pub mod invariants;
pub mod library;
pub mod poly;
pub mod skeleton;
pub mod subring;

pub use error::{Error, Result};
