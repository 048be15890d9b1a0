//! Finite-difference discretizations of the junction energy
//!
//! ```text
//! G(u) = ∫_{Ω₁} |∇u|² + (1/2ε²)(1−u²)²  +  ∫_{Ω₂} (1/m)|∇u|² + (a/ε²)u²
//! ```
//!
//! on the disk-in-disk geometry, in two flavors: a radial grid for
//! rotationally symmetric states (the workhorse) and a full Cartesian grid
//! for cross-validation. Both expose energy, gradient, and Hessian action
//! through the [`Problem`] trait consumed by the solver and eigensolver.
//!
//! Potential terms use exact cell integrals of the radial measure, so the
//! energies of u ≡ 0 and u ≡ 1 are exact up to roundoff. Edge (kinetic)
//! terms take their coefficient from the edge midpoint, which keeps the
//! discrete transmission mismatch at the interface O(h).

use crate::geometry::DiskInDisk;
use crate::linalg;
use crate::params::Params;
use std::f64::consts::PI;
use std::fmt;

/// Nodal values on a discretization, in its node order.
pub type Field = Vec<f64>;

#[derive(Clone, Debug, PartialEq)]
pub enum AssemblyError {
    /// R1 must land on a grid node so the interface is resolved exactly.
    InterfaceOffNode { r1: f64, h: f64 },
    /// Interpolation requires both problems to share geometry and parameters.
    IncompatibleProblems,
    NonPositiveStep { h: f64 },
}

impl fmt::Display for AssemblyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssemblyError::InterfaceOffNode { r1, h } => {
                write!(f, "R1/h = {} is not an integer; the interface must be a node", r1 / h)
            }
            AssemblyError::IncompatibleProblems => {
                write!(f, "source and target problems differ in geometry or parameters")
            }
            AssemblyError::NonPositiveStep { h } => write!(f, "grid step must be positive (got {h})"),
        }
    }
}

impl std::error::Error for AssemblyError {}

/// Common interface of the two discretizations.
pub trait Problem {
    fn dof(&self) -> usize;
    fn params(&self) -> Params;
    fn geometry(&self) -> DiskInDisk;
    /// Full (physical) energy G(u).
    fn energy(&self, u: &[f64]) -> f64;
    fn gradient(&self, u: &[f64], g: &mut [f64]);
    /// out = H(u)·v where H is the Hessian of [`Problem::energy`].
    fn hessian_apply(&self, u: &[f64], v: &[f64], out: &mut [f64]);
    /// Lumped L² cell measures (the diagonal mass matrix).
    fn mass_weights(&self) -> &[f64];
    /// Signed distance of node i to the interface, positive inside Ω₁.
    fn node_distance(&self, i: usize) -> f64;
    /// Default gradient sup-norm tolerance for the solver.
    fn default_tol(&self) -> f64;
    /// Fill a damped Newton (or fallback) descent direction; returns gᵀd < 0.
    fn descent_direction(&self, u: &[f64], g: &[f64], out: &mut [f64]) -> f64;
    /// Solve (½H(u) − σM)x = rhs; false when the factorization/iteration fails.
    fn shifted_solve(&self, u: &[f64], sigma: f64, rhs: &[f64], out: &mut [f64]) -> bool;
    /// A unit negative-curvature direction of H(u) when one is detectable.
    fn negative_curvature(&self, u: &[f64]) -> Option<Vec<f64>>;
}

/// Warn (do not fail) when the interface layer is under-resolved.
pub const MIN_NODES_PER_EPS: f64 = 12.0;

/// `Some(message)` when ε/h < 12, i.e. fewer than 12 nodes across the layer.
pub fn resolution_warning(h: f64, eps: f64) -> Option<String> {
    let npe = eps / h;
    if npe < MIN_NODES_PER_EPS {
        Some(format!(
            "resolution warning: {npe:.2} nodes per layer width (epsilon/h), below {MIN_NODES_PER_EPS}"
        ))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Radial discretization.

/// Radial grid r_i = i·h on [0, R2] with R1 on-node. All stored coefficients
/// carry the 2π angular factor, so energies are the physical 2D energies.
pub struct RadialProblem {
    pub geom: DiskInDisk,
    pub parameters: Params,
    pub n: usize,
    pub h: f64,
    pub interface_index: usize,
    r: Vec<f64>,
    /// 2π·c_e·r_mid per edge, c_e ∈ {1, 1/m} by midpoint side.
    edge_coef: Vec<f64>,
    w_in: Vec<f64>,
    w_out: Vec<f64>,
    w: Vec<f64>,
}

impl RadialProblem {
    pub fn new(geom: DiskInDisk, params: Params, n: usize) -> Result<Self, AssemblyError> {
        let h = geom.r2 / n as f64;
        let k = geom.r1 / h;
        if (k - k.round()).abs() > 1e-12 * k.max(1.0) {
            return Err(AssemblyError::InterfaceOffNode { r1: geom.r1, h });
        }
        let interface_index = k.round() as usize;
        let mut r: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
        r[n] = geom.r2;
        let two_pi = 2.0 * PI;
        let mut edge_coef = vec![0.0; n];
        for (e, c) in edge_coef.iter_mut().enumerate() {
            let mid = 0.5 * (r[e] + r[e + 1]);
            let ce = if mid < geom.r1 { 1.0 } else { 1.0 / params.m };
            *c = two_pi * ce * mid;
        }
        let mut w_in = vec![0.0; n + 1];
        let mut w_out = vec![0.0; n + 1];
        let mut w = vec![0.0; n + 1];
        for i in 0..=n {
            let lo = (r[i] - 0.5 * h).max(0.0);
            let hi = (r[i] + 0.5 * h).min(geom.r2);
            // exact ∫ r dr over the cell parts on each side of R1
            if lo < geom.r1 {
                let cap = hi.min(geom.r1);
                w_in[i] = two_pi * 0.5 * (cap * cap - lo * lo);
            }
            if hi > geom.r1 {
                let base = lo.max(geom.r1);
                w_out[i] = two_pi * 0.5 * (hi * hi - base * base);
            }
            w[i] = w_in[i] + w_out[i];
        }
        Ok(RadialProblem { geom, parameters: params, n, h, interface_index, r, edge_coef, w_in, w_out, w })
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.r[i]
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    /// Tridiagonal Hessian of the energy at u.
    pub fn hessian_tridiag(&self, u: &[f64], diag: &mut [f64], off: &mut [f64]) {
        let p = self.parameters;
        let inv_e2 = 1.0 / (p.eps * p.eps);
        diag.iter_mut().for_each(|v| *v = 0.0);
        for e in 0..self.n {
            let c = 2.0 * self.edge_coef[e] / self.h;
            diag[e] += c;
            diag[e + 1] += c;
            off[e] = -c;
        }
        for i in 0..=self.n {
            diag[i] += -2.0 * self.w_in[i] * inv_e2 * (1.0 - 3.0 * u[i] * u[i])
                + 2.0 * self.w_out[i] * p.a * inv_e2;
        }
    }

    /// ½H(0) − σM as a tridiagonal pair (the linearized operator).
    pub fn linearized_tridiag(&self, sigma: f64, diag: &mut [f64], off: &mut [f64]) {
        let p = self.parameters;
        let inv_e2 = 1.0 / (p.eps * p.eps);
        diag.iter_mut().for_each(|v| *v = 0.0);
        for e in 0..self.n {
            let c = self.edge_coef[e] / self.h;
            diag[e] += c;
            diag[e + 1] += c;
            off[e] = -c;
        }
        for i in 0..=self.n {
            diag[i] += -self.w_in[i] * inv_e2 + self.w_out[i] * p.a * inv_e2 - sigma * self.w[i];
        }
    }

    /// Discrete Laplacian at the origin; equals 4 to machine precision for
    /// u = r² (the cell-measure normalization of the kinetic gradient).
    pub fn origin_laplacian(&self, u: &[f64]) -> f64 {
        4.0 * (u[1] - u[0]) / (self.h * self.h)
    }

    /// |D⁻u − (1/m)D⁺u| at the interface node: the discrete transmission
    /// mismatch, O(h) for smooth transmitted fields.
    pub fn transmission_mismatch(&self, u: &[f64]) -> f64 {
        let iz = self.interface_index;
        let d_in = (u[iz] - u[iz - 1]) / self.h;
        let d_out = (u[iz + 1] - u[iz]) / self.h;
        (d_in - d_out / self.parameters.m).abs()
    }

    /// CSV with columns r, t, u.
    pub fn solution_csv(&self, u: &[f64]) -> String {
        let mut out = String::from("r,t,u\n");
        for i in 0..=self.n {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                self.r[i],
                self.geom.r1 - self.r[i],
                u[i]
            ));
        }
        out
    }
}

impl Problem for RadialProblem {
    fn dof(&self) -> usize {
        self.n + 1
    }

    fn params(&self) -> Params {
        self.parameters
    }

    fn geometry(&self) -> DiskInDisk {
        self.geom
    }

    fn energy(&self, u: &[f64]) -> f64 {
        let p = self.parameters;
        let inv_e2 = 1.0 / (p.eps * p.eps);
        let mut e = 0.0;
        for i in 0..self.n {
            let du = u[i + 1] - u[i];
            e += self.edge_coef[i] * du * du / self.h;
        }
        for i in 0..=self.n {
            let wv = 1.0 - u[i] * u[i];
            e += self.w_in[i] * 0.5 * inv_e2 * wv * wv + self.w_out[i] * p.a * inv_e2 * u[i] * u[i];
        }
        e
    }

    fn gradient(&self, u: &[f64], g: &mut [f64]) {
        let p = self.parameters;
        let inv_e2 = 1.0 / (p.eps * p.eps);
        g.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.n {
            let flux = 2.0 * self.edge_coef[i] * (u[i + 1] - u[i]) / self.h;
            g[i] -= flux;
            g[i + 1] += flux;
        }
        for i in 0..=self.n {
            g[i] += -2.0 * self.w_in[i] * inv_e2 * (1.0 - u[i] * u[i]) * u[i]
                + 2.0 * self.w_out[i] * p.a * inv_e2 * u[i];
        }
    }

    fn hessian_apply(&self, u: &[f64], v: &[f64], out: &mut [f64]) {
        let mut diag = vec![0.0; self.n + 1];
        let mut off = vec![0.0; self.n];
        self.hessian_tridiag(u, &mut diag, &mut off);
        for i in 0..=self.n {
            let mut s = diag[i] * v[i];
            if i > 0 {
                s += off[i - 1] * v[i - 1];
            }
            if i < self.n {
                s += off[i] * v[i + 1];
            }
            out[i] = s;
        }
    }

    fn mass_weights(&self) -> &[f64] {
        &self.w
    }

    fn node_distance(&self, i: usize) -> f64 {
        self.geom.r1 - self.r[i]
    }

    fn default_tol(&self) -> f64 {
        1e-9
    }

    fn descent_direction(&self, u: &[f64], g: &[f64], out: &mut [f64]) -> f64 {
        let mut diag = vec![0.0; self.n + 1];
        let mut off = vec![0.0; self.n];
        self.hessian_tridiag(u, &mut diag, &mut off);
        linalg::damped_tridiag_direction(&diag, &off, g, out);
        let gd = linalg::dot(g, out);
        if gd < 0.0 {
            return gd;
        }
        for (d, &gi) in out.iter_mut().zip(g) {
            *d = -gi;
        }
        -linalg::dot(g, g)
    }

    fn shifted_solve(&self, u: &[f64], sigma: f64, rhs: &[f64], out: &mut [f64]) -> bool {
        let np = self.n + 1;
        let mut diag = vec![0.0; np];
        let mut off = vec![0.0; self.n];
        if u.iter().all(|&v| v == 0.0) {
            self.linearized_tridiag(sigma, &mut diag, &mut off);
        } else {
            self.hessian_tridiag(u, &mut diag, &mut off);
            for i in 0..np {
                diag[i] = 0.5 * diag[i] - sigma * self.w[i];
            }
            off.iter_mut().for_each(|v| *v *= 0.5);
        }
        match linalg::tridiag_ldlt(&diag, &off) {
            Some((dpiv, lsub, _)) => {
                out.copy_from_slice(rhs);
                linalg::tridiag_ldlt_solve(&dpiv, &lsub, out);
                true
            }
            None => false,
        }
    }

    fn negative_curvature(&self, u: &[f64]) -> Option<Vec<f64>> {
        let mut diag = vec![0.0; self.n + 1];
        let mut off = vec![0.0; self.n];
        self.hessian_tridiag(u, &mut diag, &mut off);
        linalg::tridiag_negative_curvature(&diag, &off)
    }
}

// ---------------------------------------------------------------------------
// Cartesian discretization.

/// Uniform Cartesian grid over Ω = {|x| ≤ R2}: nodes ((i−K)h, (j−K)h) with
/// ρ² ≤ R2²(1+1e−14), 5-point kinetic stencil with edge-midpoint
/// coefficients, nodal potential weights h² split at the interface.
pub struct CartesianProblem {
    pub geom: DiskInDisk,
    pub parameters: Params,
    pub h: f64,
    /// Half-extent in cells: node indices run over [−K, K]².
    pub k: usize,
    nodes: Vec<(i32, i32)>,
    pos: Vec<[f64; 2]>,
    /// (i, j, c): energy term c·(u_j − u_i)².
    edges: Vec<(u32, u32, f64)>,
    w_in: Vec<f64>,
    w_out: Vec<f64>,
    w: Vec<f64>,
    dist: Vec<f64>,
}

impl CartesianProblem {
    pub fn new(geom: DiskInDisk, params: Params, h: f64) -> Result<Self, AssemblyError> {
        if !(h.is_finite() && h > 0.0) {
            return Err(AssemblyError::NonPositiveStep { h });
        }
        let k = (geom.r2 / h - 1e-12).ceil() as usize;
        let side = 2 * k + 1;
        let r2sq = geom.r2 * geom.r2 * (1.0 + 1e-14);
        let mut index = vec![-1_i64; side * side];
        let mut nodes = Vec::new();
        let mut pos = Vec::new();
        for j in 0..side {
            for i in 0..side {
                let x = (i as i64 - k as i64) as f64 * h;
                let y = (j as i64 - k as i64) as f64 * h;
                if x * x + y * y <= r2sq {
                    index[j * side + i] = nodes.len() as i64;
                    nodes.push((i as i32, j as i32));
                    pos.push([x, y]);
                }
            }
        }
        let n = nodes.len();
        let mut edges = Vec::with_capacity(2 * n);
        let at = |i: i64, j: i64| -> i64 {
            if i < 0 || j < 0 || i >= side as i64 || j >= side as i64 {
                -1
            } else {
                index[(j as usize) * side + i as usize]
            }
        };
        for (id, &(i, j)) in nodes.iter().enumerate() {
            for (di, dj) in [(1_i64, 0_i64), (0, 1)] {
                let nb = at(i as i64 + di, j as i64 + dj);
                if nb >= 0 {
                    let a = pos[id];
                    let b = pos[nb as usize];
                    let mx = 0.5 * (a[0] + b[0]);
                    let my = 0.5 * (a[1] + b[1]);
                    let c = if mx * mx + my * my < geom.r1 * geom.r1 {
                        1.0
                    } else {
                        1.0 / params.m
                    };
                    edges.push((id as u32, nb as u32, c));
                }
            }
        }
        let mut w_in = vec![0.0; n];
        let mut w_out = vec![0.0; n];
        let mut w = vec![0.0; n];
        let mut dist = vec![0.0; n];
        let cell = h * h;
        for id in 0..n {
            let rho = (pos[id][0] * pos[id][0] + pos[id][1] * pos[id][1]).sqrt();
            let d = geom.r1 - rho;
            dist[id] = d;
            if d.abs() <= 1e-12 {
                w_in[id] = 0.5 * cell;
                w_out[id] = 0.5 * cell;
            } else if d > 0.0 {
                w_in[id] = cell;
            } else {
                w_out[id] = cell;
            }
            w[id] = cell;
        }
        Ok(CartesianProblem { geom, parameters: params, h, k, nodes, pos, edges, w_in, w_out, w, dist })
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.pos
    }

    /// Jacobi preconditioner entries: the Hessian diagonal at u.
    fn hessian_diag(&self, u: &[f64], diag: &mut [f64]) {
        let p = self.parameters;
        let inv_e2 = 1.0 / (p.eps * p.eps);
        diag.iter_mut().for_each(|v| *v = 0.0);
        for &(i, j, c) in &self.edges {
            diag[i as usize] += 2.0 * c;
            diag[j as usize] += 2.0 * c;
        }
        for i in 0..u.len() {
            diag[i] += -2.0 * self.w_in[i] * inv_e2 * (1.0 - 3.0 * u[i] * u[i])
                + 2.0 * self.w_out[i] * p.a * inv_e2;
        }
    }

    /// CSV with columns x, y, t, u.
    pub fn solution_csv(&self, u: &[f64]) -> String {
        let mut out = String::from("x,y,t,u\n");
        for i in 0..self.pos.len() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                self.pos[i][0], self.pos[i][1], self.dist[i], u[i]
            ));
        }
        out
    }
}

impl Problem for CartesianProblem {
    fn dof(&self) -> usize {
        self.nodes.len()
    }

    fn params(&self) -> Params {
        self.parameters
    }

    fn geometry(&self) -> DiskInDisk {
        self.geom
    }

    fn energy(&self, u: &[f64]) -> f64 {
        let p = self.parameters;
        let inv_e2 = 1.0 / (p.eps * p.eps);
        let mut e = 0.0;
        for &(i, j, c) in &self.edges {
            let du = u[j as usize] - u[i as usize];
            e += c * du * du;
        }
        for i in 0..u.len() {
            let wv = 1.0 - u[i] * u[i];
            e += self.w_in[i] * 0.5 * inv_e2 * wv * wv + self.w_out[i] * p.a * inv_e2 * u[i] * u[i];
        }
        e
    }

    fn gradient(&self, u: &[f64], g: &mut [f64]) {
        let p = self.parameters;
        let inv_e2 = 1.0 / (p.eps * p.eps);
        g.iter_mut().for_each(|v| *v = 0.0);
        for &(i, j, c) in &self.edges {
            let flux = 2.0 * c * (u[j as usize] - u[i as usize]);
            g[i as usize] -= flux;
            g[j as usize] += flux;
        }
        for i in 0..u.len() {
            g[i] += -2.0 * self.w_in[i] * inv_e2 * (1.0 - u[i] * u[i]) * u[i]
                + 2.0 * self.w_out[i] * p.a * inv_e2 * u[i];
        }
    }

    fn hessian_apply(&self, u: &[f64], v: &[f64], out: &mut [f64]) {
        let p = self.parameters;
        let inv_e2 = 1.0 / (p.eps * p.eps);
        out.iter_mut().for_each(|x| *x = 0.0);
        for &(i, j, c) in &self.edges {
            let dv = 2.0 * c * (v[j as usize] - v[i as usize]);
            out[i as usize] -= dv;
            out[j as usize] += dv;
        }
        for i in 0..u.len() {
            out[i] += (-2.0 * self.w_in[i] * inv_e2 * (1.0 - 3.0 * u[i] * u[i])
                + 2.0 * self.w_out[i] * p.a * inv_e2)
                * v[i];
        }
    }

    fn mass_weights(&self) -> &[f64] {
        &self.w
    }

    fn node_distance(&self, i: usize) -> f64 {
        self.dist[i]
    }

    fn default_tol(&self) -> f64 {
        1e-7
    }

    fn descent_direction(&self, u: &[f64], g: &[f64], out: &mut [f64]) -> f64 {
        let n = u.len();
        let gnorm = linalg::dot(g, g).sqrt();
        let mut diag = vec![0.0; n];
        self.hessian_diag(u, &mut diag);
        let precond = if diag.iter().all(|&d| d > 0.0) {
            Some(diag)
        } else {
            None
        };
        let mut apply = |v: &[f64], hv: &mut [f64]| self.hessian_apply(u, v, hv);
        // Newton-CG with an Eisenstat-Walker style forcing term.
        let cg_tol = (0.5_f64).min(gnorm.sqrt()) * gnorm;
        let rhs: Vec<f64> = g.iter().map(|&x| -x).collect();
        let (_stop, _iters) = linalg::cg_solve(
            &mut apply,
            &rhs,
            out,
            cg_tol,
            400,
            precond.as_deref(),
        );
        let gd = linalg::dot(g, out);
        if gd < 0.0 {
            return gd;
        }
        for (d, &gi) in out.iter_mut().zip(g) {
            *d = -gi;
        }
        -linalg::dot(g, g)
    }

    fn shifted_solve(&self, u: &[f64], sigma: f64, rhs: &[f64], out: &mut [f64]) -> bool {
        let n = u.len();
        let mut apply = |v: &[f64], hv: &mut [f64]| {
            self.hessian_apply(u, v, hv);
            for i in 0..n {
                hv[i] = 0.5 * hv[i] - sigma * self.w[i] * v[i];
            }
        };
        let mut diag = vec![0.0; n];
        self.hessian_diag(u, &mut diag);
        for i in 0..n {
            diag[i] = 0.5 * diag[i] - sigma * self.w[i];
        }
        let precond = if diag.iter().all(|&d| d > 0.0) {
            Some(diag)
        } else {
            None
        };
        let rnorm = linalg::dot(rhs, rhs).sqrt();
        let (stop, _) = linalg::cg_solve(
            &mut apply,
            rhs,
            out,
            1e-12 * rnorm.max(1e-300),
            20 * n,
            precond.as_deref(),
        );
        !matches!(stop, linalg::CgStop::NegativeCurvature)
    }

    fn negative_curvature(&self, _u: &[f64]) -> Option<Vec<f64>> {
        // Not offered on the Cartesian grid; start from a nonzero init.
        None
    }
}

/// Linear-in-r interpolation of a radial field onto a Cartesian grid over
/// the same geometry and parameters.
pub fn interpolate_radial_to_cartesian(
    radial: &RadialProblem,
    u: &[f64],
    cart: &CartesianProblem,
) -> Result<Field, AssemblyError> {
    let pr = radial.parameters;
    let pc = cart.parameters;
    let (gr, gc) = (radial.geom, cart.geom);
    if pr.a != pc.a || pr.m != pc.m || pr.eps != pc.eps || gr.r1 != gc.r1 || gr.r2 != gc.r2 {
        return Err(AssemblyError::IncompatibleProblems);
    }
    let h = radial.h;
    let n = radial.n;
    let mut out = vec![0.0; cart.dof()];
    for (i, p) in cart.positions().iter().enumerate() {
        let rho = (p[0] * p[0] + p[1] * p[1]).sqrt().min(gr.r2);
        let cell = ((rho / h).floor() as usize).min(n - 1);
        let theta = (rho - radial.radius(cell)) / h;
        out[i] = (1.0 - theta) * u[cell] + theta * u[cell + 1];
    }
    Ok(out)
}
