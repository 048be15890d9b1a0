//! The five subcommands: profile, solve, eigen, sweep, asymptotics.

use crate::config::{config_err, parse_number_list, CliError, Flags};
use junction::assembly::{
    resolution_warning, CartesianProblem, Problem, RadialProblem,
};
use junction::asymptotics::{
    agmon_rates, energy_expansion_fit, layer_error, EnergyRun, FitError, DEFAULT_TUBE_EPS,
};
use junction::eigen::{classify, lambda1, minmax_bound, rayleigh_quotient, EigenResult};
use junction::geometry::DiskInDisk;
use junction::params::Params;
use junction::profile1d::{
    constants_with_quadrature, de_gennes_gap, limit_check, ode_residual, profile_csv,
    transmission_gap, LimitSide, Profile, DEFAULT_LIMIT_T,
};
use junction::report::JsonReport;
use junction::solver::{solve, Init, SolveError, SolveOptions, SolveReport};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

fn out_dir(flags: &Flags) -> Result<PathBuf, CliError> {
    let dir = PathBuf::from(flags.str_or("out", "."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Config(format!("cannot create output dir {}: {e}", dir.display())))?;
    Ok(dir)
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn stamp(flags: &Flags, report: &mut JsonReport) {
    if !flags.flag("no-timestamp") {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs() as i64)
            .unwrap_or(0);
        report.int("timestamp", secs);
    }
}

fn params_from(flags: &Flags, eps: f64) -> Result<Params, CliError> {
    let a = flags.f64_or("a", 1.0)?;
    let m = flags.f64_or("m", 1.0)?;
    Params::new(a, m, eps).map_err(|e| CliError::Config(e.to_string()))
}

fn geom_from(flags: &Flags) -> Result<DiskInDisk, CliError> {
    let r1 = flags.f64_or("r1", 1.0)?;
    let r2 = flags.f64_or("r2", 2.0)?;
    DiskInDisk::new(r1, r2).map_err(|e| CliError::Config(e.to_string()))
}

fn parse_init(s: &str) -> Result<Init, CliError> {
    if s == "profile" {
        return Ok(Init::Profile);
    }
    if let Some(v) = s.strip_prefix("constant:") {
        let c: f64 = v
            .parse()
            .map_err(|_| CliError::Config(format!("init constant '{v}' is not a number")))?;
        return Ok(Init::Constant(c));
    }
    if let Some(v) = s.strip_prefix("random:") {
        let seed: u64 = v
            .parse()
            .map_err(|_| CliError::Config(format!("init seed '{v}' is not an integer")))?;
        return Ok(Init::Random(seed));
    }
    config_err(format!(
        "unknown init '{s}' (expected profile, constant:<value>, or random:<seed>)"
    ))
}

// ---------------------------------------------------------------------------

pub fn cmd_profile(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(
        args,
        &["a", "m", "out", "limit", "limit-tmax", "tmax", "samples", "config", "no-timestamp"],
    )?;
    let params = params_from(&flags, 1.0)?;
    let dir = out_dir(&flags)?;
    let c = constants_with_quadrature(params);

    // residual over 100 samples per branch, t in (0, 10]
    let samples: Vec<f64> = (1..=100)
        .flat_map(|i| {
            let t = 10.0 * i as f64 / 100.0;
            [t, -t]
        })
        .collect();
    let residual_max = ode_residual(params, &samples);

    let mut r = JsonReport::new();
    r.str("command", "profile");
    r.num("a", params.a).num("m", params.m);
    r.num("ell", c.ell)
        .num("beta", c.beta)
        .num("amp", c.amp)
        .num("gamma", c.gamma)
        .num("b", c.b)
        .num("c1_closed", c.c1_closed)
        .num("c2_closed", c.c2_closed)
        .opt_num("c1_quad", c.c1_quad)
        .opt_num("c2_quad", c.c2_quad)
        .num("c1_gap", c.c1_quad.unwrap() - c.c1_closed)
        .num("c2_gap", c.c2_quad.unwrap() - c.c2_closed)
        .num("de_gennes_gap", de_gennes_gap(params))
        .num("transmission_gap", transmission_gap(params))
        .num("ode_residual_max", residual_max);

    if let Some(side) = flags.opt_str("limit") {
        let tmax = flags.f64_or("limit-tmax", DEFAULT_LIMIT_T)?;
        let (side, key) = match side.as_str() {
            "neumann" => (LimitSide::Neumann, "limit_neumann_sup"),
            "dirichlet" => (LimitSide::Dirichlet, "limit_dirichlet_sup"),
            other => return config_err(format!("unknown limit '{other}' (neumann or dirichlet)")),
        };
        r.num(key, limit_check(params, side, tmax));
    }
    stamp(&flags, &mut r);
    write_file(&dir, "constants.json", &r.render())?;

    let tmax = flags.f64_or("tmax", 10.0)?;
    let ns = flags.usize_or("samples", 401)?.max(3);
    let ts: Vec<f64> = (0..ns)
        .map(|i| -tmax + 2.0 * tmax * i as f64 / (ns - 1) as f64)
        .collect();
    write_file(&dir, "profile.csv", &profile_csv(params, &ts))?;

    let prof = Profile::new(params);
    let mut dat = String::new();
    for &t in &ts {
        dat.push_str(&format!("{:.16e} {:.16e}\n", t, prof.u(t)));
    }
    write_file(&dir, "profile.dat", &dat)?;
    Ok(())
}

// ---------------------------------------------------------------------------

fn solve_report_json(
    flags: &Flags,
    mode: &str,
    p: Params,
    g: DiskInDisk,
    counts: &[(&str, usize)],
    h: f64,
    rep: &SolveReport,
    eigen: Option<&EigenResult>,
) -> String {
    let mut r = JsonReport::new();
    r.str("command", "solve").str("mode", mode);
    r.num("a", p.a).num("m", p.m).num("eps", p.eps).num("r1", g.r1).num("r2", g.r2);
    for (k, v) in counts {
        r.int(k, *v as i64);
    }
    r.num("h", h);
    r.str("init", &rep.init)
        .num("tol", rep.tol)
        .bool("converged", rep.converged)
        .int("iterations", rep.iterations as i64)
        .num("grad_norm", rep.grad_norm)
        .num("energy", rep.energy)
        .num("min_u", rep.min_u)
        .num("max_u", rep.max_u)
        .opt_num("interior_inf", rep.interior_inf)
        .bool("strictly_inside", rep.min_u > 0.0 && rep.max_u < 1.0);
    let normal = g.area_inner() / (2.0 * p.eps * p.eps);
    r.num("normal_state_energy", normal)
        .bool("below_normal_state", rep.energy < normal);
    if let Some(e) = eigen {
        r.num("lambda1", e.lambda1)
            .num("eigen_residual", e.residual)
            .str("regime", &classify(e.lambda1).to_string());
    }
    stamp(flags, &mut r);
    r.render()
}

pub fn cmd_solve(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(
        args,
        &[
            "mode", "a", "m", "eps", "r1", "r2", "n", "h", "init", "tol", "max-iters", "out",
            "config", "no-timestamp",
        ],
    )?;
    let mode = flags.str_or("mode", "radial");
    let eps = flags.f64_or("eps", 0.1)?;
    let params = params_from(&flags, eps)?;
    let geom = geom_from(&flags)?;
    let dir = out_dir(&flags)?;
    let init = parse_init(&flags.str_or("init", "profile"))?;
    let mut opts = SolveOptions::default();
    if let Some(t) = flags.opt_str("tol") {
        opts.tol = Some(
            t.parse()
                .map_err(|_| CliError::Config(format!("flag --tol: '{t}' is not a number")))?,
        );
    }
    opts.max_iters = flags.usize_or("max-iters", opts.max_iters)?;

    match mode.as_str() {
        "radial" => {
            let n = flags.usize_or("n", 1000)?;
            if n == 0 {
                return config_err("flag --n must be positive");
            }
            let problem = RadialProblem::new(geom, params, n)
                .map_err(|e| CliError::Config(e.to_string()))?;
            if let Some(w) = resolution_warning(problem.h, params.eps) {
                eprintln!("warning: {w}");
            }
            let eigen = lambda1(&problem).ok();
            let counts = [("n", n)];
            match solve(&problem, &init, &opts) {
                Ok(out) => {
                    let json = solve_report_json(
                        &flags, "radial", params, geom, &counts, problem.h, &out.report,
                        eigen.as_ref(),
                    );
                    write_file(&dir, "report.json", &json)?;
                    write_file(&dir, "solution.csv", &problem.solution_csv(&out.field))?;
                    Ok(())
                }
                Err(SolveError::NonConvergence { report, field }) => {
                    let json = solve_report_json(
                        &flags, "radial", params, geom, &counts, problem.h, &report,
                        eigen.as_ref(),
                    );
                    write_file(&dir, "report.json", &json)?;
                    write_file(&dir, "solution.csv", &problem.solution_csv(&field))?;
                    Err(CliError::Numerical(format!(
                        "solve did not converge in {} iterations (grad norm {:.3e})",
                        report.iterations, report.grad_norm
                    )))
                }
                Err(SolveError::InvalidInit { reason }) => config_err(reason),
                Err(e) => Err(CliError::Numerical(e.to_string())),
            }
        }
        "cart" => {
            let h = flags.f64_or("h", 1.0 / 64.0)?;
            let problem = CartesianProblem::new(geom, params, h)
                .map_err(|e| CliError::Config(e.to_string()))?;
            if let Some(w) = resolution_warning(h, params.eps) {
                eprintln!("warning: {w}");
            }
            let counts = [("dof", problem.dof())];
            match solve(&problem, &init, &opts) {
                Ok(out) => {
                    let json =
                        solve_report_json(&flags, "cart", params, geom, &counts, h, &out.report, None);
                    write_file(&dir, "report.json", &json)?;
                    write_file(&dir, "solution.csv", &problem.solution_csv(&out.field))?;
                    Ok(())
                }
                Err(SolveError::NonConvergence { report, field }) => {
                    let json =
                        solve_report_json(&flags, "cart", params, geom, &counts, h, &report, None);
                    write_file(&dir, "report.json", &json)?;
                    write_file(&dir, "solution.csv", &problem.solution_csv(&field))?;
                    Err(CliError::Numerical(format!(
                        "solve did not converge in {} iterations (grad norm {:.3e})",
                        report.iterations, report.grad_norm
                    )))
                }
                Err(SolveError::InvalidInit { reason }) => config_err(reason),
                Err(e) => Err(CliError::Numerical(e.to_string())),
            }
        }
        other => config_err(format!("unknown mode '{other}' (radial or cart)")),
    }
}

// ---------------------------------------------------------------------------

pub fn cmd_eigen(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(
        args,
        &["a", "m", "eps", "r1", "r2", "n", "out", "config", "no-timestamp"],
    )?;
    let eps = flags.f64_or("eps", 0.1)?;
    let params = params_from(&flags, eps)?;
    let geom = geom_from(&flags)?;
    let n = flags.usize_or("n", 1000)?;
    let dir = out_dir(&flags)?;
    let problem =
        RadialProblem::new(geom, params, n).map_err(|e| CliError::Config(e.to_string()))?;

    let res = lambda1(&problem).map_err(|e| CliError::Numerical(e.to_string()))?;
    let bound = minmax_bound(&problem).map_err(|e| CliError::Numerical(e.to_string()))?;
    let ones = vec![1.0; problem.dof()];
    let trial = rayleigh_quotient(&problem, &ones);

    let mut r = JsonReport::new();
    r.str("command", "eigen");
    r.num("a", params.a)
        .num("m", params.m)
        .num("eps", params.eps)
        .num("r1", geom.r1)
        .num("r2", geom.r2)
        .int("n", n as i64)
        .num("lambda1", res.lambda1)
        .num("residual", res.residual)
        .int("iterations", res.iterations as i64)
        .num("minmax_bound", bound)
        .bool("bound_satisfied", res.lambda1 <= bound + 1e-8)
        .num("constant_trial_quotient", trial)
        .str("regime", &classify(res.lambda1).to_string());
    stamp(&flags, &mut r);
    write_file(&dir, "eigen.json", &r.render())?;

    let mut csv = String::from("r,phi\n");
    let mut dat = String::new();
    for i in 0..problem.dof() {
        let row = (problem.radius(i), res.eigenfunction[i]);
        csv.push_str(&format!("{:.16e},{:.16e}\n", row.0, row.1));
        dat.push_str(&format!("{:.16e} {:.16e}\n", row.0, row.1));
    }
    write_file(&dir, "eigenfunction.csv", &csv)?;
    write_file(&dir, "eigenfunction.dat", &dat)?;
    Ok(())
}

// ---------------------------------------------------------------------------

/// Cells for a radial grid with step near `target_h` and R1 on a node.
fn pick_n(geom: DiskInDisk, target_h: f64) -> Option<usize> {
    let n0 = (geom.r2 / target_h).round().max(8.0) as i64;
    for d in 0..=64_i64 {
        for cand in [n0 + d, n0 - d] {
            if cand < 8 {
                continue;
            }
            let k = cand as f64 * geom.r1 / geom.r2;
            if (k - k.round()).abs() <= 1e-9 * k.max(1.0) && k.round() >= 4.0 {
                return Some(cand as usize);
            }
        }
    }
    None
}

struct SweepRow {
    eps: f64,
    n: usize,
    h: f64,
    energy: f64,
    lambda1: f64,
    min_u: f64,
    max_u: f64,
    grad_norm: f64,
    iterations: usize,
    layer_sup_global: f64,
    layer_sup_tube: f64,
    agmon_inner_rate: f64,
    agmon_outer_rate: f64,
}

fn run_indexed<T, F>(count: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let results: Vec<Mutex<Option<T>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = jobs.min(count).max(1);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let value = f(i);
                *results[i].lock().unwrap() = Some(value);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker filled every slot"))
        .collect()
}

pub fn cmd_sweep(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(
        args,
        &[
            "eps", "a", "m", "r1", "r2", "nodes-per-eps", "init", "jobs", "tol", "max-iters",
            "out", "config", "no-timestamp",
        ],
    )?;
    let eps_arg = flags.req_str("eps")?;
    let mut eps_list = parse_number_list(&eps_arg)
        .ok_or_else(|| CliError::Config(format!("flag --eps: cannot parse list '{eps_arg}'")))?;
    if eps_list.is_empty() {
        return config_err("flag --eps: empty list");
    }
    if eps_list.iter().any(|&e| !(e.is_finite() && e > 0.0)) {
        return config_err("flag --eps: all values must be positive");
    }
    // table assembled in descending-eps order regardless of input order
    eps_list.sort_by(|x, y| y.total_cmp(x));

    let geom = geom_from(&flags)?;
    let npe = flags.f64_or("nodes-per-eps", 16.0)?;
    if !(npe.is_finite() && npe > 0.0) {
        return config_err("flag --nodes-per-eps must be positive");
    }
    let jobs = flags.usize_or("jobs", 1)?.max(1);
    let init = parse_init(&flags.str_or("init", "profile"))?;
    let mut opts = SolveOptions::default();
    if let Some(t) = flags.opt_str("tol") {
        opts.tol = Some(
            t.parse()
                .map_err(|_| CliError::Config(format!("flag --tol: '{t}' is not a number")))?,
        );
    }
    opts.max_iters = flags.usize_or("max-iters", opts.max_iters)?;
    let dir = out_dir(&flags)?;
    let a = flags.f64_or("a", 1.0)?;
    let m = flags.f64_or("m", 1.0)?;

    if npe < 12.0 {
        eprintln!(
            "warning: resolution warning: {npe:.2} nodes per layer width (epsilon/h), below 12"
        );
    }

    let run_one = |i: usize| -> Result<SweepRow, CliError> {
        let eps = eps_list[i];
        let params = Params::new(a, m, eps).map_err(|e| CliError::Config(e.to_string()))?;
        let n = pick_n(geom, eps / npe).ok_or_else(|| {
            CliError::Config(format!("no grid near h = {} puts R1 on a node", eps / npe))
        })?;
        let problem =
            RadialProblem::new(geom, params, n).map_err(|e| CliError::Config(e.to_string()))?;
        let out = match solve(&problem, &init, &opts) {
            Ok(out) => out,
            Err(SolveError::InvalidInit { reason }) => return config_err(reason),
            Err(e) => {
                return Err(CliError::Numerical(format!("eps = {eps}: {e}")));
            }
        };
        let eig = lambda1(&problem)
            .map_err(|e| CliError::Numerical(format!("eps = {eps}: {e}")))?;
        let le = layer_error(&problem, &out.field, DEFAULT_TUBE_EPS);
        let (agm_in, agm_out) = match agmon_rates(&problem, &out.field, None) {
            Ok(r) => (r.inner_rate, r.outer_rate),
            Err(_) => (f64::NAN, f64::NAN),
        };
        Ok(SweepRow {
            eps,
            n,
            h: problem.h,
            energy: out.report.energy,
            lambda1: eig.lambda1,
            min_u: out.report.min_u,
            max_u: out.report.max_u,
            grad_norm: out.report.grad_norm,
            iterations: out.report.iterations,
            layer_sup_global: le.sup_global,
            layer_sup_tube: le.sup_tube,
            agmon_inner_rate: agm_in,
            agmon_outer_rate: agm_out,
        })
    };

    let results = run_indexed(eps_list.len(), jobs, run_one);

    let mut csv = String::from(
        "eps,n,h,energy,lambda1,min_u,max_u,grad_norm,iterations,layer_sup_global,layer_sup_tube,agmon_inner_rate,agmon_outer_rate\n",
    );
    let mut dat = String::new();
    let mut first_err: Option<CliError> = None;
    for res in results {
        match res {
            Ok(row) => {
                csv.push_str(&format!(
                    "{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    row.eps,
                    row.n,
                    row.h,
                    row.energy,
                    row.lambda1,
                    row.min_u,
                    row.max_u,
                    row.grad_norm,
                    row.iterations,
                    row.layer_sup_global,
                    row.layer_sup_tube,
                    row.agmon_inner_rate,
                    row.agmon_outer_rate,
                ));
                dat.push_str(&format!("{:.16e} {:.16e}\n", row.eps, row.energy));
            }
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    write_file(&dir, "sweep.csv", &csv)?;
    write_file(&dir, "sweep.dat", &dat)?;
    match first_err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------------------

fn parse_sweep_table(text: &str) -> Result<Vec<EnergyRun>, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Config("table is empty".to_string()))?;
    let cols: Vec<&str> = header.split(',').map(|s| s.trim()).collect();
    let eps_idx = cols
        .iter()
        .position(|&c| c == "eps")
        .ok_or_else(|| CliError::Config("table has no 'eps' column".to_string()))?;
    let energy_idx = cols
        .iter()
        .position(|&c| c == "energy")
        .ok_or_else(|| CliError::Config("table has no 'energy' column".to_string()))?;
    let mut runs = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        let get = |idx: usize| -> Result<f64, CliError> {
            fields
                .get(idx)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| {
                    CliError::Config(format!("table row {}: bad number", lineno + 2))
                })
        };
        runs.push(EnergyRun { eps: get(eps_idx)?, energy: get(energy_idx)? });
    }
    Ok(runs)
}

pub fn cmd_asymptotics(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(
        args,
        &["table", "a", "m", "r1", "r2", "out", "config", "no-timestamp"],
    )?;
    let table = flags.req_str("table")?;
    let geom = geom_from(&flags)?;
    let a = flags.f64_or("a", 1.0)?;
    let m = flags.f64_or("m", 1.0)?;
    let dir = out_dir(&flags)?;
    let text = std::fs::read_to_string(&table)
        .map_err(|e| CliError::Config(format!("cannot read table {table}: {e}")))?;
    let runs = parse_sweep_table(&text)?;

    let fit = energy_expansion_fit(&runs, a, m, geom).map_err(|e| match e {
        FitError::InsufficientRuns { .. } | FitError::InvalidRun { .. } => {
            CliError::Config(e.to_string())
        }
    })?;

    let mut r = JsonReport::new();
    r.str("command", "asymptotics");
    r.num("a", a).num("m", m).num("r1", geom.r1).num("r2", geom.r2);
    r.int("runs", fit.runs as i64)
        .num("p", fit.p)
        .num("q", fit.q)
        .num("p_target", fit.p_target)
        .num("q_target", fit.q_target)
        .num("p_rel_dev", fit.p_rel_dev)
        .num("q_rel_dev", fit.q_rel_dev)
        .num("sigma_p", fit.sigma_p)
        .num("sigma_q", fit.sigma_q)
        .num("residual_rms", fit.residual_rms)
        .bool("flagged", fit.flagged);
    stamp(&flags, &mut r);
    write_file(&dir, "fit.json", &r.render())?;

    let mut sorted = runs.clone();
    sorted.sort_by(|x, y| y.eps.total_cmp(&x.eps));
    let mut dat = String::new();
    for run in &sorted {
        dat.push_str(&format!("{:.16e} {:.16e}\n", 1.0 / run.eps, run.energy));
    }
    write_file(&dir, "fit.dat", &dat)?;
    Ok(())
}
