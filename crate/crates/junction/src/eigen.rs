//! Principal eigenvalue of the linearized junction operator and the
//! Dirichlet comparison eigenvalues entering its min-max bound.
//!
//! The linearization of the energy at u ≡ 0 is the quadratic form
//!
//! ```text
//! Q(v) = ∫_{Ω₁} |∇v|² − (1/ε²)v²  +  ∫_{Ω₂} (1/m)|∇v|² + (a/ε²)v²
//! ```
//!
//! whose ground state λ₁ = min Q(v)/‖v‖² decides the phase: λ₁ < 0 iff a
//! nontrivial minimizer exists. Discretely, K = ½H(0) and M is the lumped
//! mass; λ₁ is computed by inverse iteration with the certified shift
//! σ = −1/ε² − 1 (Q is bounded below by −1/ε², so K − σM is positive
//! definite and the solves cannot break down).

use crate::assembly::{Problem, RadialProblem};
use crate::linalg;
use std::fmt;

/// Sign dead band for [`classify`].
pub const DEAD_BAND: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct EigenResult {
    pub lambda1: f64,
    /// M⁻¹-norm of Kφ − λMφ at the returned pair.
    pub residual: f64,
    pub iterations: usize,
    /// M-normalized, nonnegative M-mean.
    pub eigenfunction: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EigenError {
    NoConvergence { iterations: usize, residual: f64 },
    SolveFailed { iteration: usize },
    InvalidDomain { reason: String },
}

impl fmt::Display for EigenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenError::NoConvergence { iterations, residual } => write!(
                f,
                "inverse iteration stalled after {iterations} iterations (residual {residual:.3e})"
            ),
            EigenError::SolveFailed { iteration } => {
                write!(f, "shifted solve failed at iteration {iteration}")
            }
            EigenError::InvalidDomain { reason } => write!(f, "invalid domain: {reason}"),
        }
    }
}

impl std::error::Error for EigenError {}

/// Inverse iteration for the generalized problem K φ = λ M φ with diagonal
/// mass `w` and a prefactored shifted solve. Converges to the eigenvalue
/// nearest the shift, which the callers certify to be λ₁.
fn inverse_iteration(
    w: &[f64],
    apply_k: &mut dyn FnMut(&[f64], &mut [f64]),
    solve_shifted: &mut dyn FnMut(&[f64], &mut [f64]) -> bool,
    max_iters: usize,
) -> Result<(f64, f64, usize, Vec<f64>), EigenError> {
    let n = w.len();
    let mnorm = |v: &[f64]| -> f64 {
        v.iter().zip(w).map(|(&x, &wi)| wi * x * x).sum::<f64>().sqrt()
    };
    let mut x = vec![1.0; n];
    let nx = mnorm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut y = vec![0.0; n];
    let mut ky = vec![0.0; n];
    let mut lambda_prev = f64::INFINITY;
    let mut stagnant = 0;
    let mut best: Option<(f64, f64, usize, Vec<f64>)> = None;

    for it in 0..max_iters {
        let rhs: Vec<f64> = x.iter().zip(w).map(|(&v, &wi)| wi * v).collect();
        if !solve_shifted(&rhs, &mut y) {
            return Err(EigenError::SolveFailed { iteration: it });
        }
        let ny = mnorm(&y);
        if !(ny.is_finite() && ny > 0.0) {
            return Err(EigenError::SolveFailed { iteration: it });
        }
        y.iter_mut().for_each(|v| *v /= ny);
        apply_k(&y, &mut ky);
        let lambda = linalg::dot(&y, &ky);
        let mut res2 = 0.0;
        for i in 0..n {
            let r = ky[i] - lambda * w[i] * y[i];
            res2 += r * r / w[i];
        }
        let residual = res2.sqrt();
        let scale = lambda.abs().max(1.0);
        match &best {
            Some((_, r, _, _)) if *r <= residual => {}
            _ => best = Some((lambda, residual, it + 1, y.clone())),
        }
        if residual <= 1e-10 * scale {
            break;
        }
        if (lambda - lambda_prev).abs() <= 1e-15 * scale {
            stagnant += 1;
            if stagnant >= 3 {
                break;
            }
        } else {
            stagnant = 0;
        }
        lambda_prev = lambda;
        std::mem::swap(&mut x, &mut y);
    }

    let (lambda, residual, iterations, mut phi) =
        best.ok_or(EigenError::NoConvergence { iterations: 0, residual: f64::INFINITY })?;
    if residual > 1e-8 * lambda.abs().max(1.0) {
        return Err(EigenError::NoConvergence { iterations, residual });
    }
    let mean: f64 = phi.iter().zip(w).map(|(&x, &wi)| wi * x).sum();
    if mean < 0.0 {
        phi.iter_mut().for_each(|v| *v = -*v);
    }
    Ok((lambda, residual, iterations, phi))
}

/// Principal eigenvalue of the linearized operator on a discretization.
pub fn lambda1<P: Problem>(problem: &P) -> Result<EigenResult, EigenError> {
    let n = problem.dof();
    let p = problem.params();
    let sigma = -1.0 / (p.eps * p.eps) - 1.0;
    let zeros = vec![0.0; n];
    let w = problem.mass_weights().to_vec();
    let mut apply_k = |v: &[f64], out: &mut [f64]| {
        problem.hessian_apply(&zeros, v, out);
        out.iter_mut().for_each(|x| *x *= 0.5);
    };
    let mut solve = |rhs: &[f64], out: &mut [f64]| problem.shifted_solve(&zeros, sigma, rhs, out);
    let (lambda1, residual, iterations, eigenfunction) =
        inverse_iteration(&w, &mut apply_k, &mut solve, 3000)?;
    Ok(EigenResult { lambda1, residual, iterations, eigenfunction })
}

/// Rayleigh quotient of a trial function in the linearized form:
/// vᵀKv / vᵀMv ≥ λ₁ up to solver tolerance.
pub fn rayleigh_quotient<P: Problem>(problem: &P, v: &[f64]) -> f64 {
    let n = problem.dof();
    let zeros = vec![0.0; n];
    let mut kv = vec![0.0; n];
    problem.hessian_apply(&zeros, v, &mut kv);
    let num = 0.5 * linalg::dot(v, &kv);
    let den: f64 = v
        .iter()
        .zip(problem.mass_weights())
        .map(|(&x, &w)| w * x * x)
        .sum();
    num / den
}

// ---------------------------------------------------------------------------
// Dirichlet comparison problems.

#[derive(Clone, Copy, Debug)]
pub enum DirichletDomain {
    Disk { r: f64 },
    Annulus { r1: f64, r2: f64 },
}

/// First Dirichlet eigenvalue of −Δ on a disk or annulus, radial grid with
/// n cells, by node restriction (boundary nodes removed from the space).
pub fn dirichlet_lambda1(domain: DirichletDomain, n: usize) -> Result<f64, EigenError> {
    if n < 4 {
        return Err(EigenError::InvalidDomain { reason: format!("n = {n} too small") });
    }
    // Full-grid nodes and the retained (interior) index range.
    let (r_lo, r_hi, keep_lo) = match domain {
        DirichletDomain::Disk { r } => {
            if !(r.is_finite() && r > 0.0) {
                return Err(EigenError::InvalidDomain { reason: format!("disk radius {r}") });
            }
            // the origin is a natural (regular) endpoint, kept in the space
            (0.0, r, 0_usize)
        }
        DirichletDomain::Annulus { r1, r2 } => {
            if !(r1.is_finite() && r2.is_finite() && 0.0 < r1 && r1 < r2) {
                return Err(EigenError::InvalidDomain {
                    reason: format!("annulus radii {r1}, {r2}"),
                });
            }
            (r1, r2, 1)
        }
    };
    let h = (r_hi - r_lo) / n as f64;
    let r = |i: usize| r_lo + i as f64 * h;
    let keep_hi = n - 1; // outer boundary node always removed
    let dim = keep_hi - keep_lo + 1;

    // K: form Σ_e r_mid (Δφ)²/h restricted; M: exact cell ∫ r dr.
    let mut kdiag = vec![0.0; dim];
    let mut koff = vec![0.0; dim - 1];
    for e in 0..n {
        let c = 0.5 * (r(e) + r(e + 1)) / h;
        let (i, j) = (e as i64 - keep_lo as i64, e as i64 + 1 - keep_lo as i64);
        if (0..dim as i64).contains(&i) {
            kdiag[i as usize] += c;
        }
        if (0..dim as i64).contains(&j) {
            kdiag[j as usize] += c;
        }
        if (0..dim as i64).contains(&i) && (0..dim as i64).contains(&j) {
            koff[i as usize] = -c;
        }
    }
    let mut w = vec![0.0; dim];
    for (idx, wi) in w.iter_mut().enumerate() {
        let i = idx + keep_lo;
        let lo = (r(i) - 0.5 * h).max(r_lo);
        let hi = (r(i) + 0.5 * h).min(r_hi);
        *wi = 0.5 * (hi * hi - lo * lo);
    }

    // K is positive semidefinite, so K + M is definite: shift σ = −1.
    let sigma = -1.0;
    let sdiag: Vec<f64> = kdiag.iter().zip(&w).map(|(&k, &wi)| k - sigma * wi).collect();
    let (dpiv, lsub, _) = linalg::tridiag_ldlt(&sdiag, &koff)
        .ok_or(EigenError::SolveFailed { iteration: 0 })?;

    let mut apply_k = |v: &[f64], out: &mut [f64]| {
        for i in 0..dim {
            let mut s = kdiag[i] * v[i];
            if i > 0 {
                s += koff[i - 1] * v[i - 1];
            }
            if i + 1 < dim {
                s += koff[i] * v[i + 1];
            }
            out[i] = s;
        }
    };
    let mut solve = |rhs: &[f64], out: &mut [f64]| {
        out.copy_from_slice(rhs);
        linalg::tridiag_ldlt_solve(&dpiv, &lsub, out);
        true
    };
    let (lambda, _, _, _) = inverse_iteration(&w, &mut apply_k, &mut solve, 3000)?;
    Ok(lambda)
}

/// Min-max upper bound for λ₁ from same-resolution Dirichlet sub-problems:
/// λ₁ ≤ min(λ₁ᴰ(Ω₁) − 1/ε², (1/m)λ₁ᴰ(Ω₂) + a/ε²).
pub fn minmax_bound(d: &RadialProblem) -> Result<f64, EigenError> {
    let p = d.params();
    let g = d.geometry();
    let n1 = d.interface_index;
    let n2 = d.n - n1;
    let inner = dirichlet_lambda1(DirichletDomain::Disk { r: g.r1 }, n1)?;
    let outer = dirichlet_lambda1(DirichletDomain::Annulus { r1: g.r1, r2: g.r2 }, n2)?;
    let inv_e2 = 1.0 / (p.eps * p.eps);
    Ok((inner - inv_e2).min(outer / p.m + p.a * inv_e2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// λ₁ > 0: only the zero state; superconductivity is destroyed.
    Trivial,
    /// λ₁ < 0: a nontrivial minimizer 0 < u < 1 exists.
    Nontrivial,
    /// |λ₁| within the dead band: the discrete sign is not trustworthy.
    Indeterminate,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Trivial => "trivial",
            Regime::Nontrivial => "nontrivial",
            Regime::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// Phase classification by the sign of λ₁ with a [`DEAD_BAND`] guard.
pub fn classify(lambda1: f64) -> Regime {
    if lambda1 < -DEAD_BAND {
        Regime::Nontrivial
    } else if lambda1 > DEAD_BAND {
        Regime::Trivial
    } else {
        Regime::Indeterminate
    }
}
