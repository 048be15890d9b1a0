//! The explicit 1D junction profile, its ODE/transmission residuals,
//! quadrature of the energy constants c₁/c₂, and a variational minimizer of
//! the 1D energy on a truncated line.
//!
//! The profile solves the half-plane reduction of the junction system:
//!
//! ```text
//! −U'' = (1−U²)U          (t > 0, superconducting side)
//! −U'' + a m U = 0        (t < 0, normal side)
//! U(0⁻) = U(0⁺) = A,   U'(0⁺) = (1/m) U'(0⁻)
//! ```
//!
//! with the closed form `U(t) = (βe^{√2 t}−1)/(βe^{√2 t}+1)` for t ≥ 0 and
//! `A e^{√(am) t}` for t < 0. On the upper branch everything is evaluated
//! through the logistic variable `q = 1/(1+βe^{√2 t})`, which stays accurate
//! over the whole line (the naive exponential ratio overflows near t ≈ 500).

use crate::linalg;
use crate::params::{derive_constants, Params, ProfileConstants};
use crate::rng::SplitMix64;
use std::fmt;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Evaluator for the closed-form profile at fixed parameters.
#[derive(Clone, Copy, Debug)]
pub struct Profile {
    pub params: Params,
    pub constants: ProfileConstants,
    ln_beta: f64,
    sqrt_am: f64,
}

impl Profile {
    pub fn new(params: Params) -> Self {
        let constants = derive_constants(params);
        Profile {
            params,
            constants,
            ln_beta: constants.beta.ln(),
            sqrt_am: (params.a * params.m).sqrt(),
        }
    }

    /// q = 1/(1 + βe^{√2 t}), evaluated without overflow for any t.
    fn q(&self, t: f64) -> f64 {
        let w = SQRT2 * t + self.ln_beta;
        if w >= 0.0 {
            let e = (-w).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + w.exp())
        }
    }

    /// U(t): in (0, 1), strictly increasing, U(0) = A.
    pub fn u(&self, t: f64) -> f64 {
        if t >= 0.0 {
            1.0 - 2.0 * self.q(t)
        } else {
            self.constants.amp * (self.sqrt_am * t).exp()
        }
    }

    /// U'(t); at t = 0 returns the upper-branch one-sided derivative.
    pub fn u_prime(&self, t: f64) -> f64 {
        if t >= 0.0 {
            let q = self.q(t);
            2.0 * SQRT2 * q * (1.0 - q)
        } else {
            self.sqrt_am * self.u(t)
        }
    }

    /// U''(t); at t = 0 returns the upper-branch one-sided value.
    pub fn u_second(&self, t: f64) -> f64 {
        if t >= 0.0 {
            let q = self.q(t);
            // 4q(1−q)(2q−1), split so the ODE residual is a real float check
            8.0 * q * q * (1.0 - q) - 4.0 * q * (1.0 - q)
        } else {
            (self.sqrt_am * self.sqrt_am) * self.u(t)
        }
    }

    /// One-sided derivative from the superconducting side: 2√2 β/(β+1)².
    pub fn u_prime_at_zero_pos(&self) -> f64 {
        let beta = self.constants.beta;
        2.0 * SQRT2 * beta / ((beta + 1.0) * (beta + 1.0))
    }

    /// One-sided derivative from the normal side: √(am)·A.
    pub fn u_prime_at_zero_neg(&self) -> f64 {
        self.sqrt_am * self.constants.amp
    }

    /// Pointwise energy density of the 1D functional:
    /// `U'² + (1−U²)²/2` for t > 0, `U'²/m + aU²` for t < 0.
    pub fn energy_density(&self, t: f64) -> f64 {
        let du = self.u_prime(t);
        if t >= 0.0 {
            let u = self.u(t);
            let w = 1.0 - u * u;
            du * du + 0.5 * w * w
        } else {
            let u = self.u(t);
            du * du / self.params.m + self.params.a * u * u
        }
    }
}

/// U(t) per the closed form.
pub fn eval_u(t: f64, p: Params) -> f64 {
    Profile::new(p).u(t)
}

/// U'(t) (one-sided upper value at t = 0).
pub fn eval_u_prime(t: f64, p: Params) -> f64 {
    Profile::new(p).u_prime(t)
}

/// Max over `samples` of the pointwise ODE residual
/// `|−U'' − (1−U²)U|` (t > 0) or `|−U'' + amU|` (t < 0),
/// with analytic second derivatives. Samples at exactly t = 0 are evaluated
/// on the upper branch; the one-sided matching there is covered by
/// [`de_gennes_gap`] and [`transmission_gap`] instead.
pub fn ode_residual(p: Params, samples: &[f64]) -> f64 {
    let prof = Profile::new(p);
    let mut worst = 0.0_f64;
    for &t in samples {
        let r = if t >= 0.0 {
            let u = prof.u(t);
            -prof.u_second(t) - (1.0 - u * u) * u
        } else {
            -prof.u_second(t) + p.a * p.m * prof.u(t)
        };
        worst = worst.max(r.abs());
    }
    worst
}

/// U'(0⁺)/U(0) − √(a/m): zero when the de Gennes condition holds.
pub fn de_gennes_gap(p: Params) -> f64 {
    let prof = Profile::new(p);
    prof.u_prime_at_zero_pos() / prof.constants.amp - prof.constants.gamma
}

/// U'(0⁺) − (1/m)·U'(0⁻): zero when the flux transmission condition holds.
pub fn transmission_gap(p: Params) -> f64 {
    let prof = Profile::new(p);
    prof.u_prime_at_zero_pos() - prof.u_prime_at_zero_neg() / p.m
}

// ---------------------------------------------------------------------------
// Quadrature of the defining integrals for c1 and c2.

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre integral of `f` over [lo, hi] with unit-length
/// panels (24 points each): abs error far below 1e-10 for the smooth
/// exponentially decaying integrands here.
fn integrate(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (xs, ws) = gauss_legendre(24);
    let panels = ((hi - lo).ceil() as usize).max(1);
    let step = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = lo + p as f64 * step;
        let mid = a + 0.5 * step;
        let half = 0.5 * step;
        let mut s = 0.0;
        for (&x, &w) in xs.iter().zip(&ws) {
            s += w * f(mid + half * x);
        }
        total += half * s;
    }
    total
}

/// Truncation point: both branch integrands have decayed below 1e-14 here
/// (rates √8 on the right, 2√(am) on the left).
fn truncation(p: Params) -> f64 {
    40.0 / f64::min(SQRT2, 2.0 * (p.a * p.m).sqrt())
}

/// The two sides of the defining c₁ integral `∫ e₁(U) dt`:
/// (t > 0 part, t < 0 part). The t > 0 part matches the closed form
/// `4√2(3β+1)/(3(β+1)³)`; the t < 0 part evaluates analytically to
/// `√(a/m)A²` (see the Ω₂-side note on [`crate::params::c1_closed_parts`]).
pub fn quadrature_c1_parts(p: Params) -> (f64, f64) {
    let prof = Profile::new(p);
    let t = truncation(p);
    let f = |x: f64| prof.energy_density(x);
    (integrate(&f, 0.0, t), integrate(&f, -t, 0.0))
}

/// The two sides of the defining c₂ integral `∫ t·e₁(U) dt`. The weight t is
/// negative on the Ω₂ side, so that part is negative: analytically
/// `−A²/(2m)`, opposite in sign to the published closed-form summand.
pub fn quadrature_c2_parts(p: Params) -> (f64, f64) {
    let prof = Profile::new(p);
    let t = truncation(p);
    let f = |x: f64| x * prof.energy_density(x);
    (integrate(&f, 0.0, t), integrate(&f, -t, 0.0))
}

/// c₁ by quadrature of its defining integral (authoritative value).
pub fn quadrature_c1(p: Params) -> f64 {
    let (a, b) = quadrature_c1_parts(p);
    a + b
}

/// c₂ by quadrature of its defining integral (authoritative value).
pub fn quadrature_c2(p: Params) -> f64 {
    let (a, b) = quadrature_c2_parts(p);
    a + b
}

/// Closed-form constants with the quadrature fields filled.
pub fn constants_with_quadrature(p: Params) -> ProfileConstants {
    let mut c = derive_constants(p);
    c.c1_quad = Some(quadrature_c1(p));
    c.c2_quad = Some(quadrature_c2(p));
    c
}

// ---------------------------------------------------------------------------
// Limit checks.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitSide {
    /// m → ∞: the profile degenerates to the constant 1 (Neumann problem).
    Neumann,
    /// m → 0: the profile degenerates to tanh(t/√2) (Dirichlet problem).
    Dirichlet,
}

/// Default sample range for [`limit_check`].
pub const DEFAULT_LIMIT_T: f64 = 20.0;

/// Sup over t ∈ [0, t_max] of the distance to the named limit profile,
/// sampled on 2001 points.
pub fn limit_check(p: Params, side: LimitSide, t_max: f64) -> f64 {
    let prof = Profile::new(p);
    let n = 2000;
    let mut sup = 0.0_f64;
    for i in 0..=n {
        let t = t_max * i as f64 / n as f64;
        let d = match side {
            LimitSide::Neumann => (prof.u(t) - 1.0).abs(),
            LimitSide::Dirichlet => (prof.u(t) - (t / SQRT2).tanh()).abs(),
        };
        sup = sup.max(d);
    }
    sup
}

// ---------------------------------------------------------------------------
// Discrete 1D minimization.

/// Uniform grid t_i = −L + i·h with the interface t = 0 on-node.
#[derive(Clone, Copy, Debug)]
pub struct Grid1d {
    pub l: f64,
    pub h: f64,
    /// Number of cells; nodes are 0..=n.
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Grid1dError {
    /// L/h must be an integer so that t = 0 is a node.
    InterfaceOffNode { l: f64, h: f64 },
    NonPositive { l: f64, h: f64 },
}

impl fmt::Display for Grid1dError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid1dError::InterfaceOffNode { l, h } => {
                write!(f, "L/h = {} is not an integer; t = 0 must be a node", l / h)
            }
            Grid1dError::NonPositive { l, h } => {
                write!(f, "grid requires L > 0 and h > 0 (got L = {l}, h = {h})")
            }
        }
    }
}

impl std::error::Error for Grid1dError {}

impl Grid1d {
    pub fn new(l: f64, h: f64) -> Result<Self, Grid1dError> {
        if !(l > 0.0 && h > 0.0) {
            return Err(Grid1dError::NonPositive { l, h });
        }
        let half = l / h;
        if (half - half.round()).abs() > 1e-9 * half.max(1.0) {
            return Err(Grid1dError::InterfaceOffNode { l, h });
        }
        let n = 2 * half.round() as usize;
        Ok(Grid1d { l, h, n })
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.l + i as f64 * self.h
    }

    /// Index of the interface node t = 0.
    pub fn interface_index(&self) -> usize {
        self.n / 2
    }

    /// Default truncation: large enough that both exponential tails are below
    /// 1e-14 relative under natural end conditions.
    pub fn default_l(p: Params) -> f64 {
        let am = (p.a * p.m).sqrt();
        (40.0_f64).max(20.0 / am).max(20.0 / SQRT2)
    }
}

/// Nodal values of a 1D profile plus its discrete energy.
#[derive(Clone, Debug)]
pub struct DiscreteProfile {
    pub values: Vec<f64>,
    pub energy: f64,
}

impl DiscreteProfile {
    /// The exact profile sampled on the grid.
    pub fn sample_exact(grid: &Grid1d, p: Params) -> Self {
        let prof = Profile::new(p);
        let values: Vec<f64> = (0..=grid.n).map(|i| prof.u(grid.node(i))).collect();
        DiscreteProfile { values, energy: f64::NAN }
    }

    pub fn constant(grid: &Grid1d, c: f64) -> Self {
        DiscreteProfile { values: vec![c; grid.n + 1], energy: f64::NAN }
    }

    /// Uniform (0,1) values from a recorded seed.
    pub fn random(grid: &Grid1d, seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let values: Vec<f64> = (0..=grid.n).map(|_| rng.next_unit()).collect();
        DiscreteProfile { values, energy: f64::NAN }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MinimizeOptions {
    /// Convergence: sup-norm of the discrete gradient below this.
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions { tol: 1e-10, max_iters: 500 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TraceStep {
    pub f: f64,
    pub grad_norm: f64,
}

#[derive(Clone, Debug)]
pub struct MinimizeOutcome {
    pub profile: DiscreteProfile,
    pub iterations: usize,
    pub grad_norm: f64,
    /// (F, sup-gradient) per iteration, including the initial state.
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MinimizeError {
    NonConvergence { iterations: usize, grad_norm: f64 },
    /// The converged profile left [0,1] by more than the clamp tolerance.
    OvershootBeyondTolerance { overshoot: f64 },
}

impl fmt::Display for MinimizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimizeError::NonConvergence { iterations, grad_norm } => write!(
                f,
                "1D minimization did not converge in {iterations} iterations (grad norm {grad_norm:.3e})"
            ),
            MinimizeError::OvershootBeyondTolerance { overshoot } => write!(
                f,
                "converged profile leaves [0,1] by {overshoot:.3e}, beyond the 1e-12 clamp tolerance"
            ),
        }
    }
}

impl std::error::Error for MinimizeError {}

/// Discrete 1D energy: trapezoid weights, natural end conditions, interface
/// node carrying half a cell of each potential.
struct Discrete1d {
    h: f64,
    a: f64,
    /// Edge coefficient: 1 on t > 0 cells, 1/m on t < 0 cells.
    edge_coef: Vec<f64>,
    w_in: Vec<f64>,
    w_out: Vec<f64>,
}

impl Discrete1d {
    fn new(grid: &Grid1d, p: Params) -> Self {
        let n = grid.n;
        let iz = grid.interface_index();
        let mut edge_coef = vec![0.0; n];
        for (e, c) in edge_coef.iter_mut().enumerate() {
            let mid = grid.node(e) + 0.5 * grid.h;
            *c = if mid > 0.0 { 1.0 } else { 1.0 / p.m };
        }
        let mut w_in = vec![0.0; n + 1];
        let mut w_out = vec![0.0; n + 1];
        for i in 0..=n {
            let w = if i == 0 || i == n { grid.h / 2.0 } else { grid.h };
            if i == iz {
                w_in[i] = grid.h / 2.0;
                w_out[i] = grid.h / 2.0;
            } else if grid.node(i) > 0.0 {
                w_in[i] = w;
            } else {
                w_out[i] = w;
            }
        }
        Discrete1d { h: grid.h, a: p.a, edge_coef, w_in, w_out }
    }

    fn energy(&self, u: &[f64]) -> f64 {
        let mut e = 0.0;
        for i in 0..self.edge_coef.len() {
            let du = u[i + 1] - u[i];
            e += self.edge_coef[i] * du * du / self.h;
        }
        for i in 0..u.len() {
            let w = 1.0 - u[i] * u[i];
            e += 0.5 * self.w_in[i] * w * w + self.a * self.w_out[i] * u[i] * u[i];
        }
        e
    }

    fn gradient(&self, u: &[f64], g: &mut [f64]) {
        g.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.edge_coef.len() {
            let flux = 2.0 * self.edge_coef[i] * (u[i + 1] - u[i]) / self.h;
            g[i] -= flux;
            g[i + 1] += flux;
        }
        for i in 0..u.len() {
            g[i] += -2.0 * self.w_in[i] * (1.0 - u[i] * u[i]) * u[i]
                + 2.0 * self.a * self.w_out[i] * u[i];
        }
    }

    fn hessian(&self, u: &[f64], diag: &mut [f64], off: &mut [f64]) {
        diag.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.edge_coef.len() {
            let c = 2.0 * self.edge_coef[i] / self.h;
            diag[i] += c;
            diag[i + 1] += c;
            off[i] = -c;
        }
        for i in 0..u.len() {
            diag[i] += -2.0 * self.w_in[i] * (1.0 - 3.0 * u[i] * u[i])
                + 2.0 * self.a * self.w_out[i];
        }
    }
}

/// Minimize the discrete 1D energy from `init` (values must lie in [0,1]).
///
/// Damped Newton: the tridiagonal Hessian is factored by LDLᵀ, shifted by τI
/// when indefinite, with Armijo backtracking on F and a steepest-descent
/// fallback. Gradient-converged points are accepted only when the Hessian is
/// positive semidefinite; at a saddle (u ≡ 0 is one) a negative-curvature
/// direction from the factorization restarts descent. A converged profile
/// with negative mean is replaced by |u| (both signs minimize F; the
/// nonnegative representative is returned).
pub fn minimize_f(
    grid: &Grid1d,
    p: Params,
    init: &DiscreteProfile,
) -> Result<MinimizeOutcome, MinimizeError> {
    minimize_f_opts(grid, p, init, MinimizeOptions::default())
}

pub fn minimize_f_opts(
    grid: &Grid1d,
    p: Params,
    init: &DiscreteProfile,
    opts: MinimizeOptions,
) -> Result<MinimizeOutcome, MinimizeError> {
    debug_assert_eq!(init.values.len(), grid.n + 1);
    debug_assert!(init.values.iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v)));
    let model = Discrete1d::new(grid, p);
    let n = grid.n + 1;
    let mut u = init.values.clone();
    let mut f = model.energy(&u);
    let mut g = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1];
    let mut dir = vec![0.0; n];
    let mut trace = Vec::new();

    for it in 0..opts.max_iters {
        model.gradient(&u, &mut g);
        let gnorm = g.iter().fold(0.0_f64, |s, &v| s.max(v.abs()));
        trace.push(TraceStep { f, grad_norm: gnorm });
        if gnorm < opts.tol {
            model.hessian(&u, &mut diag, &mut off);
            if let Some(d) = linalg::tridiag_negative_curvature(&diag, &off) {
                // Saddle: descend along the curvature direction.
                let mut step = 1.0;
                let mut moved = false;
                for _ in 0..60 {
                    let cand: Vec<f64> =
                        u.iter().zip(&d).map(|(&ui, &di)| ui + step * di).collect();
                    let fc = model.energy(&cand);
                    if fc < f {
                        u = cand;
                        f = fc;
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if moved {
                    continue;
                }
                // No descent along either curvature sign: numerically flat.
                return finish(u, f, gnorm, it, trace, &model);
            }
            if mean(&u) < 0.0 {
                // Negative branch: |u| has the same energy; re-verify.
                u.iter_mut().for_each(|v| *v = v.abs());
                f = model.energy(&u);
                model.gradient(&u, &mut g);
                let gnorm = g.iter().fold(0.0_f64, |s, &v| s.max(v.abs()));
                if gnorm >= opts.tol {
                    continue;
                }
            }
            // Polish with undamped Newton so values sit within the 1e-12
            // clamp band of [0,1], not just within gradient tolerance.
            let mut gn = gnorm;
            for _ in 0..3 {
                model.gradient(&u, &mut g);
                model.hessian(&u, &mut diag, &mut off);
                linalg::damped_tridiag_direction(&diag, &off, &g, &mut dir);
                let cand: Vec<f64> = u.iter().zip(&dir).map(|(&ui, &di)| ui + di).collect();
                let mut gc = vec![0.0; n];
                model.gradient(&cand, &mut gc);
                let gcn = gc.iter().fold(0.0_f64, |s, &v| s.max(v.abs()));
                if gcn < gn {
                    u = cand;
                    f = model.energy(&u);
                    gn = gcn;
                } else {
                    break;
                }
            }
            return finish(u, f, gn, it, trace, &model);
        }

        model.hessian(&u, &mut diag, &mut off);
        linalg::damped_tridiag_direction(&diag, &off, &g, &mut dir);
        let mut gd = linalg::dot(&g, &dir);
        if gd >= 0.0 {
            for (d, &gi) in dir.iter_mut().zip(&g) {
                *d = -gi;
            }
            gd = -linalg::dot(&g, &g);
        }
        // Below the floating-point resolution of F the Armijo test cannot
        // certify progress (bit-equal energies would pass it with a null
        // decrease); accept the full step on strict gradient decrease instead.
        if -gd <= 1e-15 * f.abs() {
            let cand: Vec<f64> = u.iter().zip(&dir).map(|(&ui, &di)| ui + di).collect();
            let fc = model.energy(&cand);
            let mut gc = vec![0.0; n];
            model.gradient(&cand, &mut gc);
            let gcn = gc.iter().fold(0.0_f64, |s, &v| s.max(v.abs()));
            if fc.is_finite() && gcn < gnorm {
                u = cand;
                f = fc;
                continue;
            }
            return Err(MinimizeError::NonConvergence { iterations: it, grad_norm: gnorm });
        }
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let cand: Vec<f64> = u.iter().zip(&dir).map(|(&ui, &di)| ui + step * di).collect();
            let fc = model.energy(&cand);
            if fc <= f + 1e-4 * step * gd {
                u = cand;
                f = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return Err(MinimizeError::NonConvergence { iterations: it, grad_norm: gnorm });
        }
    }
    model.gradient(&u, &mut g);
    let gnorm = g.iter().fold(0.0_f64, |s, &v| s.max(v.abs()));
    Err(MinimizeError::NonConvergence { iterations: opts.max_iters, grad_norm: gnorm })
}

fn mean(u: &[f64]) -> f64 {
    u.iter().sum::<f64>() / u.len() as f64
}

fn finish(
    mut u: Vec<f64>,
    f: f64,
    grad_norm: f64,
    iterations: usize,
    trace: Vec<TraceStep>,
    model: &Discrete1d,
) -> Result<MinimizeOutcome, MinimizeError> {
    let mut overshoot = 0.0_f64;
    for v in &u {
        overshoot = overshoot.max(-v).max(v - 1.0);
    }
    if overshoot > 1e-12 {
        return Err(MinimizeError::OvershootBeyondTolerance { overshoot });
    }
    for v in &mut u {
        *v = v.clamp(0.0, 1.0);
    }
    let energy = model.energy(&u);
    let _ = f;
    Ok(MinimizeOutcome {
        profile: DiscreteProfile { values: u, energy },
        iterations,
        grad_norm,
        trace,
    })
}

// ---------------------------------------------------------------------------
// CSV emitters.

/// CSV with columns t, U, U_prime, residual at the given sample points.
pub fn profile_csv(p: Params, samples: &[f64]) -> String {
    let prof = Profile::new(p);
    let mut out = String::from("t,U,U_prime,residual\n");
    for &t in samples {
        let r = ode_residual(p, &[t]);
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            t,
            prof.u(t),
            prof.u_prime(t),
            r
        ));
    }
    out
}

/// CSV with columns iteration, F, grad_norm.
pub fn trace_csv(trace: &[TraceStep]) -> String {
    let mut out = String::from("iteration,F,grad_norm\n");
    for (i, s) in trace.iter().enumerate() {
        out.push_str(&format!("{},{:.16e},{:.16e}\n", i, s.f, s.grad_norm));
    }
    out
}
