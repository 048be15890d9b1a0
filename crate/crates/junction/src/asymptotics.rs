//! Quantitative checks of the ε → 0 asymptotics on computed minimizers:
//! distance to the composed layer profile, Agmon-type exponential decay
//! rates on both sides of the interface, and the two-term energy expansion
//!
//! ```text
//! G(u_ε) ≈ c₁·|Γ|/ε − c₂·∫_Γ κ ds  =  p/ε + q,
//! ```
//!
//! fitted over a sweep of ε and compared against the quadrature values of
//! c₁ and c₂.

use crate::assembly::Problem;
use crate::geometry::DiskInDisk;
use crate::params::Params;
use crate::profile1d::{quadrature_c1, quadrature_c2, Profile};
use std::fmt;

/// Default half-width (in units of ε) of the interface tube for
/// [`layer_error`].
pub const DEFAULT_TUBE_EPS: f64 = 10.0;

#[derive(Clone, Copy, Debug)]
pub struct LayerError {
    /// sup over all nodes of |u − U(t/ε)|.
    pub sup_global: f64,
    /// Same sup restricted to the tube |t| ≤ tube·ε.
    pub sup_tube: f64,
    pub tube_eps: f64,
}

/// Distance from a computed field to the composed profile U(t/ε).
pub fn layer_error<P: Problem>(problem: &P, u: &[f64], tube_eps: f64) -> LayerError {
    let p = problem.params();
    let prof = Profile::new(p);
    let cut = tube_eps * p.eps;
    let (mut global, mut tube) = (0.0_f64, 0.0_f64);
    for (i, &v) in u.iter().enumerate() {
        let t = problem.node_distance(i);
        let d = (v - prof.u(t / p.eps)).abs();
        global = global.max(d);
        if t.abs() <= cut {
            tube = tube.max(d);
        }
    }
    LayerError { sup_global: global, sup_tube: tube, tube_eps }
}

#[derive(Clone, Copy, Debug)]
pub struct AgmonRates {
    /// Fitted decay rate of 1 − u inside Ω₁ (target √2/ε).
    pub inner_rate: f64,
    pub inner_target: f64,
    pub inner_nodes: usize,
    /// Fitted decay rate of u inside Ω₂ (target √(am)/ε).
    pub outer_rate: f64,
    pub outer_target: f64,
    pub outer_nodes: usize,
    /// The |t| window [lo, hi] the log-linear fits used.
    pub window: (f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum AgmonError {
    /// Fewer than 10 nodes fell in the window on the named side.
    WindowTooNarrow { side: &'static str, nodes: usize },
    /// The logarithm is undefined: u ≥ 1 inside or u ≤ 0 outside.
    NonPositiveValues { side: &'static str },
}

impl fmt::Display for AgmonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgmonError::WindowTooNarrow { side, nodes } => {
                write!(f, "agmon window holds only {nodes} nodes on the {side} side (need 10)")
            }
            AgmonError::NonPositiveValues { side } => {
                write!(f, "log fit impossible on the {side} side: values hit the bound")
            }
        }
    }
}

impl std::error::Error for AgmonError {}

/// Least-squares slope of y against x.
fn lsq_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Fit the exponential decay rates of a minimizer on the window
/// |t| ∈ [lo, hi]; default window [5ε, min(20ε, R1/2)] keeps clear of both
/// the interface and the far field (where 1 − u reaches roundoff).
pub fn agmon_rates<P: Problem>(
    problem: &P,
    u: &[f64],
    window: Option<(f64, f64)>,
) -> Result<AgmonRates, AgmonError> {
    let p = problem.params();
    let r1 = problem.geometry().r1;
    let (lo, hi) = window.unwrap_or((5.0 * p.eps, (20.0 * p.eps).min(0.5 * r1)));

    let mut ti = Vec::new();
    let mut yi = Vec::new();
    let mut to = Vec::new();
    let mut yo = Vec::new();
    for (i, &v) in u.iter().enumerate() {
        let t = problem.node_distance(i);
        if t >= lo && t <= hi {
            let d = 1.0 - v;
            if d <= 0.0 {
                return Err(AgmonError::NonPositiveValues { side: "inner" });
            }
            ti.push(t);
            yi.push(d.ln());
        } else if t <= -lo && t >= -hi {
            if v <= 0.0 {
                return Err(AgmonError::NonPositiveValues { side: "outer" });
            }
            to.push(t);
            yo.push(v.ln());
        }
    }
    if ti.len() < 10 {
        return Err(AgmonError::WindowTooNarrow { side: "inner", nodes: ti.len() });
    }
    if to.len() < 10 {
        return Err(AgmonError::WindowTooNarrow { side: "outer", nodes: to.len() });
    }
    // inside: 1−u ~ e^{−√2 t/ε}; outside: u ~ e^{√(am) t/ε} (t < 0)
    let inner_rate = -lsq_slope(&ti, &yi);
    let outer_rate = lsq_slope(&to, &yo);
    Ok(AgmonRates {
        inner_rate,
        inner_target: std::f64::consts::SQRT_2 / p.eps,
        inner_nodes: ti.len(),
        outer_rate,
        outer_target: (p.a * p.m).sqrt() / p.eps,
        outer_nodes: to.len(),
        window: (lo, hi),
    })
}

// ---------------------------------------------------------------------------
// Two-term energy expansion fit.

#[derive(Clone, Copy, Debug)]
pub struct EnergyRun {
    pub eps: f64,
    pub energy: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct EnergyFit {
    pub p: f64,
    pub q: f64,
    /// c₁·|Γ| from quadrature.
    pub p_target: f64,
    /// −c₂·∫κ ds from quadrature.
    pub q_target: f64,
    pub p_rel_dev: f64,
    pub q_rel_dev: f64,
    /// RMS of the fit residuals.
    pub residual_rms: f64,
    pub sigma_p: f64,
    pub sigma_q: f64,
    /// True when σ_q exceeds 10% of max(|q|, |q_target|): the sweep cannot
    /// pin the O(1) coefficient down.
    pub flagged: bool,
    pub runs: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FitError {
    /// Need at least 3 distinct ε values.
    InsufficientRuns { distinct: usize },
    InvalidRun { eps: f64, energy: f64 },
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::InsufficientRuns { distinct } => {
                write!(f, "energy fit needs at least 3 distinct epsilon values (got {distinct})")
            }
            FitError::InvalidRun { eps, energy } => {
                write!(f, "invalid run: eps = {eps}, energy = {energy}")
            }
        }
    }
}

impl std::error::Error for FitError {}

/// Least-squares fit G ≈ p/ε + q over the runs, with targets from the
/// quadrature constants at (a, m). Runs are sorted internally, so the result
/// is bit-identical under permutation of the input.
pub fn energy_expansion_fit(
    runs: &[EnergyRun],
    a: f64,
    m: f64,
    geom: DiskInDisk,
) -> Result<EnergyFit, FitError> {
    for r in runs {
        if !(r.eps.is_finite() && r.eps > 0.0 && r.energy.is_finite()) {
            return Err(FitError::InvalidRun { eps: r.eps, energy: r.energy });
        }
    }
    let mut sorted: Vec<EnergyRun> = runs.to_vec();
    sorted.sort_by(|x, y| x.eps.total_cmp(&y.eps).then(x.energy.total_cmp(&y.energy)));
    let mut distinct = 0;
    for (i, r) in sorted.iter().enumerate() {
        if i == 0 || r.eps > sorted[i - 1].eps {
            distinct += 1;
        }
    }
    if distinct < 3 {
        return Err(FitError::InsufficientRuns { distinct });
    }

    let n = sorted.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for r in &sorted {
        let x = 1.0 / r.eps;
        sx += x;
        sy += r.energy;
        sxx += x * x;
        sxy += x * r.energy;
    }
    let delta = n * sxx - sx * sx;
    let p = (n * sxy - sx * sy) / delta;
    let q = (sy * sxx - sx * sxy) / delta;

    let mut ssr = 0.0;
    for r in &sorted {
        let res = r.energy - (p / r.eps + q);
        ssr += res * res;
    }
    let residual_rms = (ssr / n).sqrt();
    let dof = sorted.len() as f64 - 2.0;
    let sigma2 = if dof > 0.0 { ssr / dof } else { 0.0 };
    let sigma_p = (sigma2 * n / delta).sqrt();
    let sigma_q = (sigma2 * sxx / delta).sqrt();

    // The quadrature constants depend only on (a, m).
    let pc = Params::new(a, m, 1.0).map_err(|_| FitError::InvalidRun { eps: a, energy: m })?;
    let p_target = quadrature_c1(pc) * geom.perimeter();
    let q_target = -quadrature_c2(pc) * geom.total_curvature();
    let flagged = sigma_q > 0.1 * q.abs().max(q_target.abs());

    Ok(EnergyFit {
        p,
        q,
        p_target,
        q_target,
        p_rel_dev: (p - p_target) / p_target,
        q_rel_dev: (q - q_target) / q_target,
        residual_rms,
        sigma_p,
        sigma_q,
        flagged,
        runs: sorted.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::RadialProblem;
    use crate::solver::{solve, Init, SolveOptions};
    use approx::assert_relative_eq;

    fn radial(eps: f64, n: usize) -> RadialProblem {
        let geom = DiskInDisk::new(1.0, 2.0).unwrap();
        let params = Params::new(1.0, 1.0, eps).unwrap();
        RadialProblem::new(geom, params, n).unwrap()
    }

    #[test]
    fn layer_error_vanishes_on_sampled_profile() {
        let d = radial(0.1, 400);
        let prof = Profile::new(d.params());
        let u: Vec<f64> = (0..d.dof())
            .map(|i| prof.u(d.node_distance(i) / 0.1))
            .collect();
        let le = layer_error(&d, &u, DEFAULT_TUBE_EPS);
        assert_eq!(le.sup_global, 0.0);
        assert_eq!(le.sup_tube, 0.0);
    }

    #[test]
    fn layer_error_decreases_with_eps() {
        let mut prev = f64::INFINITY;
        for (eps, n) in [(0.16, 200), (0.08, 400), (0.04, 800)] {
            let d = radial(eps, n);
            let out = solve(&d, &Init::Profile, &SolveOptions::default()).unwrap();
            let le = layer_error(&d, &out.field, DEFAULT_TUBE_EPS);
            assert!(le.sup_global < prev, "not decreasing at eps = {eps}");
            assert!(le.sup_tube <= le.sup_global);
            prev = le.sup_global;
        }
    }

    #[test]
    fn agmon_rates_on_sampled_profile() {
        let d = radial(0.05, 1600);
        let prof = Profile::new(d.params());
        let u: Vec<f64> = (0..d.dof())
            .map(|i| prof.u(d.node_distance(i) / 0.05))
            .collect();
        let r = agmon_rates(&d, &u, None).unwrap();
        assert_relative_eq!(r.inner_rate, r.inner_target, max_relative = 0.02);
        assert_relative_eq!(r.outer_rate, r.outer_target, max_relative = 1e-6);
        assert!(r.inner_nodes >= 10 && r.outer_nodes >= 10);
    }

    #[test]
    fn agmon_window_errors() {
        let d = radial(0.1, 100);
        let u = vec![0.5; d.dof()];
        // tiny window: no nodes
        let err = agmon_rates(&d, &u, Some((0.101, 0.102))).unwrap_err();
        assert!(matches!(err, AgmonError::WindowTooNarrow { .. }));
        // u = 1 inside breaks the inner log
        let one = vec![1.0; d.dof()];
        let err = agmon_rates(&d, &one, None).unwrap_err();
        assert!(matches!(err, AgmonError::NonPositiveValues { side: "inner" }));
    }

    #[test]
    fn fit_recovers_exact_two_term_law() {
        let geom = DiskInDisk::new(1.0, 2.0).unwrap();
        let runs: Vec<EnergyRun> = [0.04, 0.02, 0.01]
            .iter()
            .map(|&eps| EnergyRun { eps, energy: 3.4 / eps + 0.06 })
            .collect();
        let fit = energy_expansion_fit(&runs, 1.0, 1.0, geom).unwrap();
        assert_relative_eq!(fit.p, 3.4, epsilon = 1e-12);
        assert_relative_eq!(fit.q, 0.06, epsilon = 1e-10);
        assert!(fit.sigma_q < 1e-10);
        assert!(!fit.flagged);
        assert_relative_eq!(fit.p_target, 3.4186281417, epsilon = 1e-6);
        assert_relative_eq!(fit.q_target, 0.0628461519, epsilon = 1e-6);
    }

    #[test]
    fn fit_is_permutation_invariant() {
        let geom = DiskInDisk::new(1.0, 2.0).unwrap();
        let runs = [
            EnergyRun { eps: 0.04, energy: 85.4321 },
            EnergyRun { eps: 0.02, energy: 170.9876 },
            EnergyRun { eps: 0.01, energy: 341.5432 },
        ];
        let fit1 = energy_expansion_fit(&runs, 1.0, 1.0, geom).unwrap();
        let rev: Vec<EnergyRun> = runs.iter().rev().cloned().collect();
        let fit2 = energy_expansion_fit(&rev, 1.0, 1.0, geom).unwrap();
        assert_eq!(fit1.p.to_bits(), fit2.p.to_bits());
        assert_eq!(fit1.q.to_bits(), fit2.q.to_bits());
        assert_eq!(fit1.sigma_q.to_bits(), fit2.sigma_q.to_bits());
    }

    #[test]
    fn fit_requires_three_distinct_eps() {
        let geom = DiskInDisk::new(1.0, 2.0).unwrap();
        let runs = [
            EnergyRun { eps: 0.04, energy: 100.0 },
            EnergyRun { eps: 0.04, energy: 100.0 },
            EnergyRun { eps: 0.02, energy: 200.0 },
        ];
        let err = energy_expansion_fit(&runs, 1.0, 1.0, geom).unwrap_err();
        assert_eq!(err, FitError::InsufficientRuns { distinct: 2 });
        let bad = [EnergyRun { eps: -0.1, energy: 1.0 }];
        assert!(matches!(
            energy_expansion_fit(&bad, 1.0, 1.0, geom).unwrap_err(),
            FitError::InvalidRun { .. }
        ));
    }

    #[test]
    fn fit_flags_unresolved_intercept() {
        let geom = DiskInDisk::new(1.0, 2.0).unwrap();
        // strong curvature in eps: the affine model cannot fit it
        let runs: Vec<EnergyRun> = [0.4, 0.2, 0.1, 0.05]
            .iter()
            .map(|&eps| EnergyRun { eps, energy: 3.4 / eps + 0.06 - 40.0 * eps })
            .collect();
        let fit = energy_expansion_fit(&runs, 1.0, 1.0, geom).unwrap();
        assert!(fit.flagged, "sigma_q = {}", fit.sigma_q);
    }
}
