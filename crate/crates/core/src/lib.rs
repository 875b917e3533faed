//! Reduced symplectic symmetric spaces of Ricci type.
//!
//! A characteristic element `A` of `sp(2(n+1))` with `A² = μ·Id` defines the
//! quadric `Σ_A = {x : Ω(x, Ax) = 1}` and its quotient `M_A = Σ_A / exp(tA)`,
//! a `2n`-dimensional symplectic symmetric space whose curvature is of Ricci
//! type. This crate builds the three normal forms of `A`, checks the geometry
//! of `M_A` numerically, computes the transvection algebra and constructs and
//! certifies simply transitive subgroups where they exist.
//!
//! Every check produces a [`report::CertificateReport`] with named residuals
//! and thresholds, so the same code backs the library tests and the CLI.

pub mod cli;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod model;
pub mod report;
pub mod tol;
pub mod transitive;
pub mod transvection;

pub use error::{Error, Result};
pub use linalg::{Mat, Vector};
pub use model::{build_a_from_ricci, build_model, exp_ta, sample_sigma, sigma_value};
pub use model::{Case, CharacteristicElement, SigmaPoint, SymplecticModel};
pub use report::{CertificateReport, Verdict};
