//! Damped-Newton minimization of the junction energy on a discretization.
//!
//! The solver works on any [`Problem`]: the discretization supplies its own
//! (damped) Newton direction, the loop adds Armijo backtracking, escape from
//! the u ≡ 0 saddle along a negative-curvature direction when the
//! discretization can produce one, recovery from the −u branch (the energy
//! is even, so |u| never costs energy), and a couple of undamped polish
//! steps after the tolerance is met so that trivial-regime solutions land at
//! machine-precision zero.

use crate::assembly::{Field, Problem};
use crate::profile1d::Profile;
use crate::rng::SplitMix64;
use std::fmt;

/// Starting field for the solver.
#[derive(Clone, Debug)]
pub enum Init {
    /// The 1D profile composed with signed distance: u = U(t/ε).
    Profile,
    Constant(f64),
    /// Uniform (0,1) nodal values from the seed.
    Random(u64),
    Field(Field),
}

impl Init {
    pub fn label(&self) -> String {
        match self {
            Init::Profile => "profile".to_string(),
            Init::Constant(c) => format!("constant:{c}"),
            Init::Random(s) => format!("random:{s}"),
            Init::Field(_) => "field".to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Gradient sup-norm target; `None` uses the discretization default.
    pub tol: Option<f64>,
    pub max_iters: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: None, max_iters: 200 }
    }
}

/// Interior region for [`verify_interior_bound`]: t ≥ k₀·ε.
pub const DEFAULT_INTERIOR_K0: f64 = 5.0;

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub converged: bool,
    pub iterations: usize,
    pub grad_norm: f64,
    pub energy: f64,
    pub min_u: f64,
    pub max_u: f64,
    /// inf of u over {t ≥ 5ε}; `None` when that region has no nodes.
    pub interior_inf: Option<f64>,
    pub init: String,
    pub tol: f64,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub field: Field,
    pub report: SolveReport,
}

#[derive(Clone, Debug)]
pub enum SolveError {
    NonConvergence { report: SolveReport, field: Field },
    DivergedEnergy { iterations: usize, energy: f64 },
    InvalidInit { reason: String },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::NonConvergence { report, .. } => write!(
                f,
                "solve did not converge in {} iterations (grad norm {:.3e})",
                report.iterations, report.grad_norm
            ),
            SolveError::DivergedEnergy { iterations, energy } => {
                write!(f, "energy became non-finite at iteration {iterations} ({energy})")
            }
            SolveError::InvalidInit { reason } => write!(f, "invalid init: {reason}"),
        }
    }
}

impl std::error::Error for SolveError {}

fn build_init<P: Problem>(problem: &P, init: &Init) -> Result<Field, SolveError> {
    let n = problem.dof();
    match init {
        Init::Profile => {
            let prof = Profile::new(problem.params());
            let eps = problem.params().eps;
            Ok((0..n).map(|i| prof.u(problem.node_distance(i) / eps)).collect())
        }
        Init::Constant(c) => {
            if !c.is_finite() {
                return Err(SolveError::InvalidInit { reason: format!("constant {c} not finite") });
            }
            Ok(vec![*c; n])
        }
        Init::Random(seed) => {
            let mut rng = SplitMix64::new(*seed);
            Ok((0..n).map(|_| rng.next_unit()).collect())
        }
        Init::Field(v) => {
            if v.len() != n {
                return Err(SolveError::InvalidInit {
                    reason: format!("field has {} values, problem has {n} dofs", v.len()),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(SolveError::InvalidInit { reason: "field has non-finite values".into() });
            }
            Ok(v.clone())
        }
    }
}

fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |s, &x| s.max(x.abs()))
}

fn make_report<P: Problem>(
    problem: &P,
    u: &[f64],
    converged: bool,
    iterations: usize,
    grad_norm: f64,
    init: &Init,
    tol: f64,
) -> SolveReport {
    let (mut min_u, mut max_u) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in u {
        min_u = min_u.min(v);
        max_u = max_u.max(v);
    }
    SolveReport {
        converged,
        iterations,
        grad_norm,
        energy: problem.energy(u),
        min_u,
        max_u,
        interior_inf: verify_interior_bound(problem, u, DEFAULT_INTERIOR_K0).ok(),
        init: init.label(),
        tol,
    }
}

/// Minimize the energy from `init`.
pub fn solve<P: Problem>(
    problem: &P,
    init: &Init,
    opts: &SolveOptions,
) -> Result<SolveOutcome, SolveError> {
    let tol = opts.tol.unwrap_or_else(|| problem.default_tol());
    let n = problem.dof();
    let mut u = build_init(problem, init)?;
    let mut f = problem.energy(&u);
    let mut g = vec![0.0; n];
    let mut dir = vec![0.0; n];

    let mut it = 0;
    while it < opts.max_iters {
        if !f.is_finite() {
            return Err(SolveError::DivergedEnergy { iterations: it, energy: f });
        }
        problem.gradient(&u, &mut g);
        let gnorm = sup_norm(&g);

        if gnorm < tol {
            // Negative branch: |u| has the same (or lower) energy.
            if u.iter().cloned().fold(f64::INFINITY, f64::min) < -1e-8 {
                u.iter_mut().for_each(|v| *v = v.abs());
                f = problem.energy(&u);
                problem.gradient(&u, &mut g);
                if sup_norm(&g) >= tol {
                    it += 1;
                    continue;
                }
            }
            // Saddle point (u ≡ 0 in the nontrivial regime): escape along
            // a negative-curvature direction when one is available.
            if let Some(d) = problem.negative_curvature(&u) {
                let mut step = 1.0;
                let mut moved = false;
                for _ in 0..60 {
                    let cand: Vec<f64> =
                        u.iter().zip(&d).map(|(&ui, &di)| ui + step * di).collect();
                    let fc = problem.energy(&cand);
                    if fc < f {
                        u = cand;
                        f = fc;
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if moved {
                    it += 1;
                    continue;
                }
            }
            // Polish: up to two undamped Newton steps, kept only while the
            // gradient norm strictly decreases.
            let mut gn = gnorm;
            for _ in 0..2 {
                problem.gradient(&u, &mut g);
                problem.descent_direction(&u, &g, &mut dir);
                let cand: Vec<f64> = u.iter().zip(&dir).map(|(&ui, &di)| ui + di).collect();
                let mut gc = vec![0.0; n];
                problem.gradient(&cand, &mut gc);
                let gcn = sup_norm(&gc);
                if gcn < gn && problem.energy(&cand).is_finite() {
                    u = cand;
                    gn = gcn;
                } else {
                    break;
                }
            }
            let report = make_report(problem, &u, true, it, gn, init, tol);
            return Ok(SolveOutcome { field: u, report });
        }

        let gd = problem.descent_direction(&u, &g, &mut dir);

        // Once the predicted decrease |g·d| drops below the floating-point
        // resolution of the total energy, the Armijo comparison can no longer
        // certify progress (and would accept bit-equal energies forever).
        // Switch to the polish rule: full step, kept on strict gradient-norm
        // decrease.
        if -gd <= 1e-15 * f.abs() {
            let cand: Vec<f64> = u.iter().zip(&dir).map(|(&ui, &di)| ui + di).collect();
            let fc = problem.energy(&cand);
            let mut gc = vec![0.0; n];
            problem.gradient(&cand, &mut gc);
            if fc.is_finite() && sup_norm(&gc) < gnorm {
                u = cand;
                f = fc;
                it += 1;
                continue;
            }
            let report = make_report(problem, &u, false, it, gnorm, init, tol);
            return Err(SolveError::NonConvergence { report, field: u });
        }

        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let cand: Vec<f64> = u.iter().zip(&dir).map(|(&ui, &di)| ui + step * di).collect();
            let fc = problem.energy(&cand);
            if fc.is_finite() && fc <= f + 1e-4 * step * gd {
                u = cand;
                f = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            let report = make_report(problem, &u, false, it, gnorm, init, tol);
            return Err(SolveError::NonConvergence { report, field: u });
        }
        it += 1;
    }
    problem.gradient(&u, &mut g);
    let gnorm = sup_norm(&g);
    let report = make_report(problem, &u, false, opts.max_iters, gnorm, init, tol);
    Err(SolveError::NonConvergence { report, field: u })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmptyRegion {
    pub k0: f64,
    pub eps: f64,
    pub r1: f64,
}

impl fmt::Display for EmptyRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "interior region t >= {}*eps is empty (eps = {}, R1 = {})",
            self.k0, self.eps, self.r1
        )
    }
}

impl std::error::Error for EmptyRegion {}

/// inf of u over the deep interior {t ≥ k₀·ε}, where the solution should be
/// exponentially close to 1.
pub fn verify_interior_bound<P: Problem>(
    problem: &P,
    u: &[f64],
    k0: f64,
) -> Result<f64, EmptyRegion> {
    let eps = problem.params().eps;
    let cut = k0 * eps;
    let mut inf = f64::INFINITY;
    for (i, &v) in u.iter().enumerate() {
        if problem.node_distance(i) >= cut {
            inf = inf.min(v);
        }
    }
    if inf.is_finite() {
        Ok(inf)
    } else {
        Err(EmptyRegion { k0, eps, r1: problem.geometry().r1 })
    }
}
