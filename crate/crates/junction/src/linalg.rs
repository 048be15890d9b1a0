//! Internal dependency-free linear algebra: tridiagonal LDLᵀ and matrix-free
//! conjugate gradients with negative-curvature detection.

/// LDLᵀ factorization of a symmetric tridiagonal matrix.
///
/// Returns `(pivots, subdiagonal of L, min pivot)`, or `None` when a pivot is
/// zero or the factorization leaves the finite range (possible for strongly
/// indefinite matrices; callers treat that the same as an indefinite result).
pub(crate) fn tridiag_ldlt(diag: &[f64], off: &[f64]) -> Option<(Vec<f64>, Vec<f64>, f64)> {
    let n = diag.len();
    debug_assert_eq!(off.len(), n - 1);
    let mut dpiv = vec![0.0; n];
    let mut lsub = vec![0.0; n - 1];
    dpiv[0] = diag[0];
    let mut min_pivot = dpiv[0];
    for i in 1..n {
        if dpiv[i - 1] == 0.0 {
            return None;
        }
        lsub[i - 1] = off[i - 1] / dpiv[i - 1];
        dpiv[i] = diag[i] - off[i - 1] * lsub[i - 1];
        if !dpiv[i].is_finite() {
            return None;
        }
        min_pivot = min_pivot.min(dpiv[i]);
    }
    Some((dpiv, lsub, min_pivot))
}

/// Solve L D Lᵀ x = rhs in place.
pub(crate) fn tridiag_ldlt_solve(dpiv: &[f64], lsub: &[f64], x: &mut [f64]) {
    let n = dpiv.len();
    for i in 1..n {
        x[i] -= lsub[i - 1] * x[i - 1];
    }
    for i in 0..n {
        x[i] /= dpiv[i];
    }
    for i in (0..n - 1).rev() {
        x[i] -= lsub[i] * x[i + 1];
    }
}

/// Newton direction for a symmetric tridiagonal Hessian, damping with +τI
/// (τ grown geometrically) until the factorization is positive definite.
/// Writes the direction for right-hand side `-g` into `out` and returns the
/// damping τ that was used; falls back to steepest descent (τ = ∞) if no τ in
/// range produces a definite factorization.
pub(crate) fn damped_tridiag_direction(
    diag: &[f64],
    off: &[f64],
    g: &[f64],
    out: &mut [f64],
) -> f64 {
    let scale = diag.iter().fold(0.0_f64, |s, &d| s.max(d.abs())).max(1e-300);
    let tol_pd = 1e-12 * scale;
    let solve_with = |fac: (Vec<f64>, Vec<f64>, f64), out: &mut [f64]| {
        for (o, &gi) in out.iter_mut().zip(g) {
            *o = -gi;
        }
        tridiag_ldlt_solve(&fac.0, &fac.1, out);
    };
    if let Some(fac) = tridiag_ldlt(diag, off) {
        if fac.2 > tol_pd {
            solve_with(fac, out);
            return 0.0;
        }
    }
    let mut tau = 1e-4 * scale;
    let mut shifted = vec![0.0; diag.len()];
    while tau < 1e6 * scale {
        for (s, &d) in shifted.iter_mut().zip(diag) {
            *s = d + tau;
        }
        if let Some(fac) = tridiag_ldlt(&shifted, off) {
            if fac.2 > tol_pd {
                solve_with(fac, out);
                return tau;
            }
        }
        tau *= 10.0;
    }
    for (o, &gi) in out.iter_mut().zip(g) {
        *o = -gi;
    }
    f64::INFINITY
}

/// A direction of nonpositive curvature of a symmetric tridiagonal matrix,
/// or `None` when the matrix is positive definite (or the factorization
/// failed, in which case a steepest-descent step elsewhere will make
/// progress). The direction is normalized to unit max-norm with nonnegative
/// sum, so the choice between the ±d pair is deterministic.
pub(crate) fn tridiag_negative_curvature(diag: &[f64], off: &[f64]) -> Option<Vec<f64>> {
    let (dpiv, lsub, min_pivot) = tridiag_ldlt(diag, off)?;
    if min_pivot > 0.0 {
        return None;
    }
    let neg = dpiv
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    // With H = L D Lᵀ and Lᵀ d = e_neg, dᵀHd = D[neg] ≤ 0.
    let n = diag.len();
    let mut d = vec![0.0; n];
    d[neg] = 1.0;
    for i in (0..neg).rev() {
        d[i] = -lsub[i] * d[i + 1];
    }
    let max = d.iter().fold(0.0_f64, |s, &v| s.max(v.abs()));
    if !(max > 0.0) || !max.is_finite() {
        return None;
    }
    let sum: f64 = d.iter().sum();
    let sign = if sum < 0.0 { -1.0 } else { 1.0 };
    for v in &mut d {
        *v *= sign / max;
    }
    Some(d)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) enum CgStop {
    Converged,
    NegativeCurvature,
    MaxIterations,
}

/// Conjugate gradients for `H x = b` from `x = 0`, matrix-free.
///
/// `apply(v, out)` writes `H v`. An optional positive diagonal is used as a
/// Jacobi preconditioner. Stops on absolute residual `tol`, iteration budget,
/// or when a search direction has nonpositive curvature; in the latter case
/// the current iterate is returned (or `b` itself on the first iteration), so
/// the result is always a descent direction for `b = -gradient`.
pub(crate) fn cg_solve(
    apply: &mut dyn FnMut(&[f64], &mut [f64]),
    b: &[f64],
    x: &mut [f64],
    tol: f64,
    max_iters: usize,
    precond: Option<&[f64]>,
) -> (CgStop, usize) {
    let n = b.len();
    x.iter_mut().for_each(|v| *v = 0.0);
    let mut r = b.to_vec();
    let mut z = vec![0.0; n];
    let psolve = |r: &[f64], z: &mut [f64]| match precond {
        Some(dg) => {
            for i in 0..r.len() {
                z[i] = r[i] / dg[i];
            }
        }
        None => z.copy_from_slice(r),
    };
    psolve(&r, &mut z);
    let mut p = z.clone();
    let mut hp = vec![0.0; n];
    let mut rz = dot(&r, &z);
    for it in 0..max_iters {
        if dot(&r, &r).sqrt() <= tol {
            return (CgStop::Converged, it);
        }
        apply(&p, &mut hp);
        let php = dot(&p, &hp);
        if php <= 0.0 {
            if it == 0 {
                x.copy_from_slice(b);
            }
            return (CgStop::NegativeCurvature, it);
        }
        let alpha = rz / php;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * hp[i];
        }
        psolve(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    (CgStop::MaxIterations, max_iters)
}
