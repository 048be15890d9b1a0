//! Numerics for a generalized Ginzburg-Landau model of a superconductor/normal
//! junction: a superconducting disk `Ω₁` of radius `R1` embedded in a normal
//! material filling the annulus `Ω₂` up to radius `R2`. The order parameter
//! `u` minimizes
//!
//! ```text
//! G₀(u) = ∫_{Ω₁} |∇u|² + (1/(2ε²))(1−u²)²  +  ∫_{Ω₂} (1/m)|∇u|² + (a/ε²)u²
//! ```
//!
//! whose Euler-Lagrange system couples `−Δu = (1/ε²)(1−u²)u` in `Ω₁` to
//! `−(1/m)Δu = −(a/ε²)u` in `Ω₂` through the flux transmission condition
//! `∂u/∂ν = (1/m) ∂u/∂ν` across the interface, with a natural Neumann
//! condition on the outer boundary.
//!
//! The crate provides:
//!
//! - [`params`]: physical parameters `(a, m, ε)` and the closed-form constants
//!   of the one-dimensional junction profile (`ℓ`, `β`, `A`, de Gennes `γ`,
//!   extrapolation length `b`, energy constants `c₁`, `c₂`);
//! - [`profile1d`]: the explicit profile `U(t)`, its ODE/transmission
//!   residuals, quadrature of `c₁`/`c₂`, and a variational minimizer of the
//!   1D energy on a truncated line;
//! - [`geometry`]: the disk-in-disk domain, signed distance to the interface,
//!   curvature, and the boundary coordinate map;
//! - [`assembly`]: radial and Cartesian finite-difference discretizations of
//!   `G₀` with exact discrete gradients and Hessians;
//! - [`solver`]: damped-Newton energy minimization with verification hooks
//!   (strict `0 < u < 1` bounds, interior lower bound, energy comparisons);
//! - [`eigen`]: the smallest eigenvalue `λ₁(a,m,ε)` of the linearized form,
//!   whose sign separates the trivial and superconducting regimes;
//! - [`asymptotics`]: boundary-layer error, Agmon decay-rate fits, and the
//!   two-term energy expansion fit `G₀ ≈ p/ε + q`;
//! - [`report`]: flat JSON/CSV emission with reproducible formatting.

pub mod asymptotics;
pub mod assembly;
pub mod eigen;
pub mod geometry;
pub mod params;
pub mod profile1d;
pub mod report;
pub mod solver;

mod linalg;
mod rng;

pub use params::{derive_constants, Params, ProfileConstants};
