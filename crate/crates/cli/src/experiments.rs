use std::f64::consts::PI;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use jcsim_core::dynamics::{check_conditions, ConditionThresholds};
use jcsim_core::fock::{make_coherent, make_mcs, make_tophat, McsLabel};
use jcsim_core::metrics::{
    dissipation_factor, loschmidt_echo, read_fidelity, write_fidelity, DissipationParams,
};
use jcsim_core::phase_space::{
    distribution_overlap, gea_banacloche_overlap, momentum_distribution, wigner, QuadratureGrid,
    WignerQuadrature,
};
use jcsim_core::protocol::peak_fidelity;
use jcsim_core::two_cavity::{fitted_pa, fitted_pab, purity_curve, revival_width};
use jcsim_core::{C64, FieldState64, FockBasisSpec64, JcParams64, QubitState64};

use crate::spec::{ExperimentSpec, SpecError, SpecResult};
use crate::table::{sig, ResultTable};

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn basis_for(n_bar: f64, n_max: Option<usize>) -> FockBasisSpec64 {
    match n_max {
        Some(n) => FockBasisSpec64::new(n, 1e-12),
        None => FockBasisSpec64::for_mean_photon(n_bar),
    }
}

/// Run an experiment and write `<name>.csv` plus `<name>.meta.json` into the
/// output directory.
pub fn run(spec: &ExperimentSpec) -> SpecResult<()> {
    let start = Instant::now();
    std::fs::create_dir_all(&spec.out_dir)?;
    let (table, summary) = dispatch(spec)?;
    table.write_csv(&spec.out_dir.join(format!("{}.csv", spec.name)))?;
    let meta = json!({
        "experiment": spec.name,
        "params": spec.params,
        "version": env!("CARGO_PKG_VERSION"),
        "wall_time_s": start.elapsed().as_secs_f64(),
        "summary": summary,
    });
    std::fs::write(
        spec.out_dir.join(format!("{}.meta.json", spec.name)),
        serde_json::to_string_pretty(&meta).expect("meta is serializable"),
    )?;
    Ok(())
}

fn dispatch(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    match spec.name.as_str() {
        "mcs-distinguish" => mcs_distinguish(spec),
        "wigner-panel" => wigner_panel(spec),
        "write-read" => write_read(spec),
        "loschmidt" => loschmidt(spec),
        "tophat-table" => tophat_table(spec),
        "entanglement" => entanglement(spec),
        "dissipation-table" => dissipation_table(spec),
        "gea-overlap" => gea_overlap(spec),
        other => Err(SpecError::Invalid(format!("unknown experiment '{other}'"))),
    }
}

/// Momentum density of `|alpha, gamma>` over a gamma sweep, plus the
/// overlap of the two cat-component densities at `gamma = +- alpha pi`.
fn mcs_distinguish(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    let alpha = spec.f64("alpha")?;
    let gamma_points = spec.usize("gamma_points")?;
    let p_points = spec.usize("p_points")?;
    let basis = FockBasisSpec64::for_mean_photon(alpha * alpha);
    let gammas = linspace(-4.0 * alpha * PI, 4.0 * alpha * PI, gamma_points);
    let half = 2.0_f64.sqrt() * alpha + 6.0;
    let p_grid = linspace(-half, half, p_points);
    let mut table = ResultTable::new(&["gamma", "p", "density"]);
    let blocks: Vec<Vec<Vec<String>>> = gammas
        .par_iter()
        .map(|&gamma| -> SpecResult<Vec<Vec<String>>> {
            let label = McsLabel::sqrt(C64::new(alpha, 0.0), gamma);
            let dist = momentum_distribution(&label, &p_grid, basis)?;
            Ok(p_grid
                .iter()
                .zip(&dist.values)
                .map(|(&p, &v)| vec![sig(gamma), sig(p), sig(v)])
                .collect())
        })
        .collect::<SpecResult<_>>()?;
    for block in blocks {
        table.extend(block);
    }
    // distinguishability of the two cat components on a finer grid
    let fine = linspace(-half, half, 4 * p_points + 1);
    let plus = momentum_distribution(&McsLabel::sqrt(C64::new(alpha, 0.0), alpha * PI), &fine, basis)?;
    let minus =
        momentum_distribution(&McsLabel::sqrt(C64::new(alpha, 0.0), -alpha * PI), &fine, basis)?;
    let summary = json!({
        "alpha": alpha,
        "cat_component_momentum_overlap": distribution_overlap(&plus, &minus),
    });
    Ok((table, summary))
}

/// Wigner functions of the coherent state, the two cat components, and their
/// even superposition, on a common grid.
fn wigner_panel(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    let alpha = spec.f64("alpha")?;
    let grid_points = spec.usize("grid_points")?;
    let quad_points = spec.usize("quad_points")?;
    let basis = FockBasisSpec64::for_mean_photon(alpha * alpha);
    let gamma = alpha * PI;
    let coherent = make_coherent(C64::new(alpha, 0.0), basis)?;
    let plus = make_mcs(&McsLabel::sqrt(C64::new(alpha, 0.0), gamma), basis)?;
    let minus = make_mcs(&McsLabel::sqrt(C64::new(alpha, 0.0), -gamma), basis)?;
    let mut cat = plus.clone();
    for (c, m) in cat.amps.iter_mut().zip(&minus.amps) {
        *c = *c + *m;
    }
    cat.renormalize()?;
    let states: Vec<(&str, &FieldState64)> = vec![
        ("coherent", &coherent),
        ("mcs_plus", &plus),
        ("mcs_minus", &minus),
        ("cat", &cat),
    ];
    let half = 2.0_f64.sqrt() * alpha + 5.0;
    let grid = QuadratureGrid::new(-half, half, -half, half, grid_points, grid_points);
    let quad = WignerQuadrature { y_half_range: 8.0, n_y: quad_points };
    let mut table = ResultTable::new(&["state", "x", "p", "wigner"]);
    let mut integrals = serde_json::Map::new();
    let panels: Vec<(String, Vec<Vec<String>>, f64)> = states
        .par_iter()
        .map(|(name, state)| {
            let w = wigner(state, &grid, &quad);
            let np = w.p_axis.len();
            let mut rows = Vec::with_capacity(w.values.len());
            for (i, &x) in w.x_axis.iter().enumerate() {
                for (j, &p) in w.p_axis.iter().enumerate() {
                    rows.push(vec![
                        name.to_string(),
                        sig(x),
                        sig(p),
                        sig(w.values[i * np + j]),
                    ]);
                }
            }
            (name.to_string(), rows, w.integral())
        })
        .collect();
    for (name, rows, integral) in panels {
        table.extend(rows);
        integrals.insert(name, json!(integral));
    }
    Ok((table, json!({ "alpha": alpha, "integrals": integrals })))
}

fn build_field(spec: &ExperimentSpec, alpha: f64, basis: FockBasisSpec64) -> SpecResult<FieldState64> {
    match spec.params.get("field").map(String::as_str).unwrap_or("coherent") {
        "coherent" => Ok(make_coherent(C64::new(alpha, 0.0), basis)?),
        "fock" => {
            let n = (alpha * alpha).round() as usize;
            if n > basis.n_max {
                return Err(SpecError::Invalid(format!(
                    "fock level {n} exceeds n_max {}",
                    basis.n_max
                )));
            }
            Ok(FieldState64::fock(n, basis))
        }
        other => Err(SpecError::Invalid(format!("unknown field kind '{other}'"))),
    }
}

/// Write and read fidelity curves over `[0, 2 tau]` for each alpha, with the
/// located fidelity peak per alpha in the summary.
fn write_read(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    let alphas = spec.f64_list("alphas")?;
    let grid_points = spec.usize("grid_points")?;
    let lambda = spec.f64("lambda")?;
    let n_max = spec.n_max_override()?;
    let params = JcParams64::interaction(lambda);
    let qubit = QubitState64::plus();
    let mut table = ResultTable::new(&["alpha", "t_over_tau", "f_w", "f_r"]);
    let mut summaries = Vec::new();
    let per_alpha: Vec<(Vec<Vec<String>>, serde_json::Value)> = alphas
        .par_iter()
        .map(|&alpha| -> SpecResult<_> {
            let basis = basis_for(alpha * alpha, n_max);
            let field = build_field(spec, alpha, basis)?;
            let tau = jcsim_core::dynamics::attractor_time(&field, &params)?;
            let mut rows = Vec::with_capacity(grid_points);
            for &u in &linspace(0.0, 2.0, grid_points) {
                let t = u * tau;
                let f_w = write_fidelity(t, &qubit, &field, &params)?;
                let f_r = read_fidelity(t, &qubit, &field, &params)?;
                rows.push(vec![sig(alpha), sig(u), sig(f_w), sig(f_r)]);
            }
            let (t_m, f_peak) = peak_fidelity(
                |t| write_fidelity(t, &qubit, &field, &params).unwrap_or(f64::NEG_INFINITY),
                tau,
            );
            let summary = json!({
                "alpha": alpha,
                "tau": tau,
                "t_m": t_m,
                "t_m_over_tau": t_m / tau,
                "f_peak": f_peak,
            });
            Ok((rows, summary))
        })
        .collect::<SpecResult<_>>()?;
    for (rows, summary) in per_alpha {
        table.extend(rows);
        summaries.push(summary);
    }
    Ok((table, json!({ "per_alpha": summaries })))
}

/// Loschmidt echo between exact and effective evolution over `[0, t_max]`.
fn loschmidt(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    let alphas = spec.f64_list("alphas")?;
    let grid_points = spec.usize("grid_points")?;
    let t_max = spec.f64("t_max_over_tau")?;
    let lambda = spec.f64("lambda")?;
    let n_max = spec.n_max_override()?;
    let params = JcParams64::interaction(lambda);
    let qubit = QubitState64::plus();
    let mut table = ResultTable::new(&["alpha", "t_over_tau", "echo"]);
    let mut summaries = Vec::new();
    let per_alpha: Vec<(Vec<Vec<String>>, serde_json::Value)> = alphas
        .par_iter()
        .map(|&alpha| -> SpecResult<_> {
            let basis = basis_for(alpha * alpha, n_max);
            let field = make_coherent(C64::new(alpha, 0.0), basis)?;
            let tau = jcsim_core::dynamics::attractor_time(&field, &params)?;
            let mut rows = Vec::with_capacity(grid_points);
            let mut min_echo = f64::INFINITY;
            let mut report = None;
            for &u in &linspace(0.0, t_max, grid_points) {
                let (echo, rep) = loschmidt_echo(&qubit, &field, u * tau, &params)?;
                min_echo = min_echo.min(echo);
                report = Some(rep);
                rows.push(vec![sig(alpha), sig(u), sig(echo)]);
            }
            let report = report.expect("grid is nonempty");
            let summary = json!({
                "alpha": alpha,
                "min_echo": min_echo,
                "conditions": {
                    "phi": report.phi,
                    "residual": report.residual,
                    "n_bar": report.n_bar,
                    "spread": report.spread,
                    "passed": report.passed(),
                },
            });
            Ok((rows, summary))
        })
        .collect::<SpecResult<_>>()?;
    for (rows, summary) in per_alpha {
        table.extend(rows);
        summaries.push(summary);
    }
    Ok((table, json!({ "per_alpha": summaries })))
}

/// Attractor-time write fidelity for flat photon windows of several widths.
/// `f_tau` uses the unit-normalized window state; `f_tau_flat` rescales the
/// overlap to the flat `1/delta` weighting of the same window.
fn tophat_table(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    let n_bar = spec.usize("n_bar")?;
    let deltas = spec.usize_list("deltas")?;
    let lambda = spec.f64("lambda")?;
    let basis = FockBasisSpec64::for_mean_photon(n_bar as f64);
    let params = JcParams64::interaction(lambda);
    let qubit = QubitState64::plus();
    let mut table =
        ResultTable::new(&["delta", "f_tau", "f_tau_flat", "t_m_over_tau", "f_peak"]);
    let mut conditions = Vec::new();
    for &delta in &deltas {
        let field = make_tophat(n_bar, delta, basis)?;
        let tau = jcsim_core::dynamics::attractor_time(&field, &params)?;
        let f_tau = write_fidelity(tau, &qubit, &field, &params)?;
        let (t_m, f_peak) = peak_fidelity(
            |t| write_fidelity(t, &qubit, &field, &params).unwrap_or(f64::NEG_INFINITY),
            tau,
        );
        table.push(vec![
            delta.to_string(),
            sig(f_tau),
            sig(f_tau / (delta as f64).sqrt()),
            sig(t_m / tau),
            sig(f_peak),
        ]);
        let report = check_conditions(&field, &ConditionThresholds::default());
        conditions.push(json!({
            "delta": delta,
            "residual": report.residual,
            "spread": report.spread,
            "passed": report.passed(),
        }));
    }
    Ok((table, json!({ "n_bar": n_bar, "conditions": conditions })))
}

/// Field purity sweep of the two-cavity entanglement transfer, with the
/// fitted analytic forms alongside for comparison.
fn entanglement(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    let alphas = spec.f64_list("alphas")?;
    let grid_points = spec.usize("grid_points")?;
    let t_max = spec.f64("t_max_over_tau")?;
    let lambda = spec.f64("lambda")?;
    let params = JcParams64::interaction(lambda);
    let grid = linspace(0.0, t_max, grid_points);
    let mut table =
        ResultTable::new(&["alpha", "t_over_tau", "p_ab", "p_a", "p_b", "fit_pa", "fit_pab"]);
    let mut summaries = Vec::new();
    let per_alpha: Vec<(Vec<Vec<String>>, serde_json::Value)> = alphas
        .par_iter()
        .map(|&alpha| -> SpecResult<_> {
            let curve = purity_curve(alpha, &grid, &params)?;
            let mut rows = Vec::with_capacity(curve.rows.len());
            let mut pab_samples = Vec::with_capacity(curve.rows.len());
            for row in &curve.rows {
                let t = row.t_over_tau * curve.tau;
                rows.push(vec![
                    sig(alpha),
                    sig(row.t_over_tau),
                    sig(row.p_ab),
                    sig(row.p_a),
                    sig(row.p_b),
                    sig(fitted_pa(t, alpha, lambda)),
                    sig(fitted_pab(t, alpha, lambda)),
                ]);
                pab_samples.push((row.t_over_tau, row.p_ab));
            }
            let width = revival_width(&pab_samples);
            let summary = json!({
                "alpha": alpha,
                "tau": curve.tau,
                "revival_width_over_tau": width,
            });
            Ok((rows, summary))
        })
        .collect::<SpecResult<_>>()?;
    for (rows, summary) in per_alpha {
        table.extend(rows);
        summaries.push(summary);
    }
    Ok((table, json!({ "per_alpha": summaries })))
}

/// Closed-form revival-time coherence factor for three damping regimes.
fn dissipation_table(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    let n_bar = spec.f64("n_bar")?;
    let two_pi = 2.0 * PI;
    let cases: [(&str, f64, f64); 3] = [
        ("ideal_ratio", 1e-5, 1.0),
        ("fiber", 0.152, two_pi * 75.0),
        ("optical_cavity", two_pi * 3.5, two_pi * 75.0),
    ];
    let mut table = ResultTable::new(&["case", "kappa", "lambda", "n_bar", "factor"]);
    for (name, kappa, lambda) in cases {
        let factor = dissipation_factor(&DissipationParams::new(kappa, lambda, n_bar));
        table.push(vec![
            name.to_string(),
            sig(kappa),
            sig(lambda),
            sig(n_bar),
            sig(factor),
        ]);
    }
    Ok((table, json!({ "n_bar": n_bar })))
}

/// Exact-vs-linearized evolution overlap and its stationary-phase closed form.
fn gea_overlap(spec: &ExperimentSpec) -> SpecResult<(ResultTable, serde_json::Value)> {
    let alphas = spec.f64_list("alphas")?;
    let mut table = ResultTable::new(&["alpha", "exact", "closed_form", "gap"]);
    for &alpha in &alphas {
        let (exact, closed) = gea_banacloche_overlap(alpha);
        table.push(vec![sig(alpha), sig(exact), sig(closed), sig((exact - closed).abs())]);
    }
    Ok((table, json!({})))
}

/// Dry-run checks: truncation sizing, field-condition previews, and memory
/// estimates. Returns human-readable warnings; an empty list means clean.
pub fn validate(spec: &ExperimentSpec) -> Vec<String> {
    let mut warnings = Vec::new();
    let warn_truncation = |n_bar: f64, n_max: Option<usize>, warnings: &mut Vec<String>| {
        let recommended = (n_bar + 12.0 * n_bar.sqrt()).ceil() as usize;
        if let Some(n) = n_max {
            if n < recommended {
                warnings.push(format!(
                    "n_max = {n} is below the recommended n_bar + 12 sqrt(n_bar) = {recommended}"
                ));
            }
        }
    };
    match spec.name.as_str() {
        "write-read" | "loschmidt" => {
            let alphas = match spec.f64_list("alphas") {
                Ok(v) => v,
                Err(e) => return vec![e.to_string()],
            };
            let n_max = spec.n_max_override().unwrap_or(None);
            for &alpha in &alphas {
                warn_truncation(alpha * alpha, n_max, &mut warnings);
                let basis = basis_for(alpha * alpha, n_max);
                let field = match build_field(spec, alpha, basis) {
                    Ok(f) => f,
                    Err(e) => {
                        warnings.push(format!("alpha = {alpha}: {e}"));
                        continue;
                    }
                };
                let report = check_conditions(&field, &ConditionThresholds::default());
                if !report.phase_ok {
                    warnings.push(format!(
                        "alpha = {alpha}: neighboring-level phase condition fails \
                         (residual = {:.3})",
                        report.residual
                    ));
                }
                if !report.spread_ok {
                    warnings.push(format!(
                        "alpha = {alpha}: photon-spread condition fails \
                         (n_bar = {:.1}, spread = {:.2})",
                        report.n_bar, report.spread
                    ));
                }
            }
        }
        "tophat-table" => {
            let (n_bar, deltas) = match (spec.usize("n_bar"), spec.usize_list("deltas")) {
                (Ok(n), Ok(d)) => (n, d),
                (Err(e), _) | (_, Err(e)) => return vec![e.to_string()],
            };
            let basis = FockBasisSpec64::for_mean_photon(n_bar as f64);
            for &delta in &deltas {
                match make_tophat::<f64>(n_bar, delta, basis) {
                    Ok(field) => {
                        let report = check_conditions(&field, &ConditionThresholds::default());
                        if !report.passed() {
                            warnings.push(format!(
                                "delta = {delta}: separation conditions fail \
                                 (residual = {:.3}, spread = {:.2}, n_bar/spread = {:.2})",
                                report.residual,
                                report.spread,
                                report.n_bar / report.spread.max(f64::MIN_POSITIVE)
                            ));
                        }
                    }
                    Err(e) => warnings.push(format!("delta = {delta}: {e}")),
                }
            }
        }
        "entanglement" => {
            if let Ok(alphas) = spec.f64_list("alphas") {
                for &alpha in &alphas {
                    let dim = FockBasisSpec64::for_mean_photon(alpha * alpha).dim();
                    // four complex blocks, two live copies during propagation
                    let bytes = 4 * dim * dim * 16 * 2;
                    if bytes > 1 << 30 {
                        warnings.push(format!(
                            "alpha = {alpha}: state storage is about {} MiB",
                            bytes >> 20
                        ));
                    }
                }
            }
        }
        "wigner-panel" => {
            if let Ok(q) = spec.usize("quad_points") {
                if q % 2 == 0 {
                    warnings.push(format!(
                        "quad_points = {q} is even; the transform will use {}",
                        q + 1
                    ));
                }
            }
        }
        _ => {}
    }
    warnings
}
