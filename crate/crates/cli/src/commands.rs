use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use qgeo::bloch::{geodesic_length_radial, MetricConfig};
use qgeo::catalog::{self, Family, GsdCoefficients};
use qgeo::measures::{bures_distance_to_max_mixed, rem_closed_form, two_qubit_radius};
use qgeo::oracle::{bures_distance, closest_product_state_search};
use qgeo::state::{enumerate_bipartitions, read_state_file, reduced_for_bipartition};
use qgeo::{measure_report, DensityOperator, Measure, PureState};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::format::{csv_row, round_significant};
use crate::{FigureArgs, FigureName, MeasureArgs, MetricArgs, SweepArgs};

/// Oracle agreement required by `--verify`.
const VERIFY_TOL: f64 = 1e-6;
const VERIFY_GRID: usize = 50;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    StateFile(String),
    Numerical(String),
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::StateFile(_) => 3,
            CliError::Numerical(_) => 4,
            CliError::Output(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::StateFile(m) | CliError::Numerical(m) => f.write_str(m),
            CliError::Output(m) => write!(f, "cannot write output: {m}"),
        }
    }
}

impl From<qgeo::Error> for CliError {
    fn from(e: qgeo::Error) -> Self {
        match e {
            qgeo::Error::StateFile(_) => CliError::StateFile(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn metric_config(m: &MetricArgs, quarter: bool) -> Result<MetricConfig, CliError> {
    let mut cfg = MetricConfig::default()
        .with_epsilon(m.eps)
        .map_err(|_| CliError::Usage(format!("--eps must lie in (0, 1e-4], got {}", m.eps)))?
        .with_quad_tol(m.tol)
        .map_err(|_| CliError::Usage(format!("--tol must be positive, got {}", m.tol)))?;
    cfg.include_quarter_prefactor = quarter;
    Ok(cfg)
}

fn family_state(a: &MeasureArgs, family: Family) -> Result<(String, PureState), CliError> {
    let sized = matches!(family, Family::Ghz | Family::W);
    if a.n.is_some() && !sized {
        return Err(CliError::Usage(format!(
            "--n does not apply to family {family}"
        )));
    }
    if a.theta.is_some() && !family.takes_theta() {
        return Err(CliError::Usage(format!(
            "--theta does not apply to family {family}"
        )));
    }
    if a.gsd.is_some() != (family == Family::Gsd) {
        return Err(CliError::Usage("--gsd goes with --family gsd".into()));
    }
    let n = a.n.unwrap_or(3);
    let bad_n = |_| CliError::Usage(format!("--n must lie in 2..=6, got {n}"));
    let state = match family {
        Family::Ghz => catalog::ghz(n).map_err(bad_n)?,
        Family::W => catalog::w(n).map_err(bad_n)?,
        Family::Bell => catalog::bell(),
        Family::Gsd => {
            let l = a.gsd.as_deref().unwrap_or_default();
            let l: [f64; 5] = l
                .try_into()
                .map_err(|_| CliError::Usage("--gsd needs five coefficients".into()))?;
            let c = GsdCoefficients::new(l).map_err(|e| CliError::Usage(e.to_string()))?;
            catalog::from_gsd(&c)
        }
        _ => {
            let theta = a
                .theta
                .ok_or_else(|| CliError::Usage(format!("family {family} needs --theta")))?;
            family.at(theta).expect("family takes theta")
        }
    };
    let label = match (family, a.theta) {
        (Family::Ghz | Family::W, _) => format!("{family}{n}"),
        (_, Some(t)) => format!("{family}({t})"),
        _ => family.to_string(),
    };
    Ok((label, state))
}

fn resolve_measures(requested: Option<&[Measure]>, n: usize) -> Result<Vec<Measure>, CliError> {
    match requested {
        None => Ok(Measure::ALL
            .into_iter()
            .filter(|m| m.applies_to(n))
            .collect()),
        Some(list) => {
            if let Some(m) = list.iter().find(|m| !m.applies_to(n)) {
                return Err(CliError::Usage(format!(
                    "measure {m} is not defined for {n} qubits"
                )));
            }
            Ok(list.to_vec())
        }
    }
}

fn verify(psi: &PureState, cfg: &MetricConfig) -> Result<(), CliError> {
    let n = psi.n_qubits();
    let mut worst: f64 = 0.0;
    for p in enumerate_bipartitions(n)? {
        let rho = reduced_for_bipartition(psi, &p)?;
        let closed = bures_distance_to_max_mixed(&rho)?;
        let oracle = bures_distance(
            &DensityOperator::maximally_mixed(p.block_large().len()),
            &rho,
        )?;
        let diff = (closed - oracle).abs();
        worst = worst.max(diff);
        eprintln!("verify {p}: closed form {closed:.12} oracle {oracle:.12} diff {diff:.1e}");
    }
    if n == 2 {
        let r = two_qubit_radius(psi)?;
        let search = closest_product_state_search(psi, VERIFY_GRID)?;
        let geo = 1.0 - search.overlap.powi(2);
        let diff = (geo - (1.0 - r) / 2.0).abs();
        worst = worst.max(diff);
        eprintln!(
            "verify product search: 1-overlap^2 {geo:.12} expected {:.12} diff {diff:.1e}",
            (1.0 - r) / 2.0
        );
        let rem = qgeo::rem_two_qubit(psi, cfg)?.value;
        let diff = (rem - rem_closed_form(r)).abs();
        worst = worst.max(diff);
        eprintln!(
            "verify rem: quadrature {rem:.12} closed form {:.12} diff {diff:.1e}",
            rem_closed_form(r)
        );
    }
    if worst > VERIFY_TOL {
        return Err(CliError::Numerical(format!(
            "oracle disagreement {worst:.2e} exceeds {VERIFY_TOL:e}"
        )));
    }
    Ok(())
}

pub fn measure(a: MeasureArgs) -> Result<(), CliError> {
    let cfg = metric_config(&a.metric, false)?;
    let (label, psi) = match (&a.state, a.family) {
        (Some(path), _) => (path.display().to_string(), read_state_file(path)?),
        (None, Some(f)) => family_state(&a, f)?,
        (None, None) => return Err(CliError::Usage("give --state or --family".into())),
    };
    let measures = resolve_measures(a.measures.as_deref(), psi.n_qubits())?;
    if a.verify {
        verify(&psi, &cfg)?;
    }
    let report = measure_report(&label, &psi, &measures, &cfg)?;
    let mut obj = Map::new();
    for (m, v) in &report.values {
        obj.insert(m.name().to_string(), Value::from(round_significant(*v)));
    }
    let text = serde_json::to_string(&Value::Object(obj)).expect("plain JSON object");
    write_output(None, &format!("{text}\n"))
}

/// Inclusive uniform grid; the last point is exactly `to`.
fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| {
            if k + 1 == steps {
                to
            } else {
                from + (to - from) * k as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

fn family_rows(
    family: Family,
    thetas: &[f64],
    measures: &[Measure],
    cfg: &MetricConfig,
) -> Result<Vec<Vec<f64>>, CliError> {
    thetas
        .par_iter()
        .map(|&t| {
            let psi = family.at(t).expect("family takes theta");
            measures
                .iter()
                .map(|m| m.evaluate(&psi, cfg).map_err(CliError::from))
                .collect()
        })
        .collect()
}

fn csv_text(header: &[String], thetas: &[f64], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for (t, row) in thetas.iter().zip(rows) {
        let mut values = vec![*t];
        values.extend(row);
        out.push_str(&csv_row(&values));
        out.push('\n');
    }
    out
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Output(format!("stdout: {e}")))
        }
    }
}

pub fn sweep(a: SweepArgs) -> Result<(), CliError> {
    if !a.family.takes_theta() {
        return Err(CliError::Usage(format!(
            "family {} has no theta parameter",
            a.family
        )));
    }
    if !a.theta_from.is_finite() || !a.theta_to.is_finite() {
        return Err(CliError::Usage("theta bounds must be finite".into()));
    }
    let cfg = metric_config(&a.metric, false)?;
    let n = a
        .family
        .at(a.theta_from)
        .expect("family takes theta")
        .n_qubits();
    let measures = resolve_measures(a.measures.as_deref(), n)?;
    let thetas = grid(a.theta_from, a.theta_to, a.steps as usize);
    let rows = family_rows(a.family, &thetas, &measures, &cfg)?;
    let mut header = vec!["theta".to_string()];
    header.extend(measures.iter().map(|m| m.name().to_string()));
    write_output(a.out.as_deref(), &csv_text(&header, &thetas, &rows))
}

fn figure_file(dir: &Path, name: FigureName) -> PathBuf {
    let stem = match name {
        FigureName::Fig1 => "fig1",
        FigureName::Psi1 => "psi1",
        FigureName::Psi2 => "psi2",
        FigureName::ChiCompare => "chi-compare",
        FigureName::Chi3Smooth => "chi3-smooth",
    };
    dir.join(format!("{stem}.csv"))
}

pub fn figure(a: FigureArgs) -> Result<(), CliError> {
    let cfg = metric_config(&a.metric, a.quarter_prefactor)?;
    let points = a.points as usize;
    let text = match a.name {
        FigureName::Fig1 => {
            let mut rs = grid(0.0, 0.999, points);
            let mut lengths: Vec<Vec<f64>> = rs
                .par_iter()
                .map(|&r| Ok(vec![geodesic_length_radial(0.0, r, &cfg)?]))
                .collect::<Result<_, CliError>>()?;
            rs.push(1.0);
            lengths.push(vec![geodesic_length_radial(0.0, 1.0, &cfg)?]);
            csv_text(&["r".into(), "length".into()], &rs, &lengths)
        }
        FigureName::Psi1 | FigureName::Psi2 => {
            let family = if a.name == FigureName::Psi1 {
                Family::Psi1
            } else {
                Family::Psi2
            };
            let thetas = grid(0.0, PI, points);
            let measures = [Measure::Rem, Measure::S, Measure::C];
            let rows = family_rows(family, &thetas, &measures, &cfg)?;
            csv_text(
                &["theta".into(), "rem".into(), "s".into(), "c".into()],
                &thetas,
                &rows,
            )
        }
        FigureName::ChiCompare => {
            let thetas = grid(0.0, FRAC_PI_2, points);
            let measures = [Measure::Ggm, Measure::Gmc, Measure::Fill, Measure::Gbr];
            let a_rows = family_rows(Family::Chi1, &thetas, &measures, &cfg)?;
            let b_rows = family_rows(Family::Chi2, &thetas, &measures, &cfg)?;
            let rows: Vec<Vec<f64>> = a_rows
                .into_iter()
                .zip(b_rows)
                .map(|(mut x, y)| {
                    x.extend(y);
                    x
                })
                .collect();
            let mut header = vec!["theta".to_string()];
            for suffix in ["chi1", "chi2"] {
                header.extend(measures.iter().map(|m| format!("{m}_{suffix}")));
            }
            csv_text(&header, &thetas, &rows)
        }
        FigureName::Chi3Smooth => {
            let thetas = grid(0.0, FRAC_PI_2, points);
            let measures = [Measure::Ggm, Measure::Gmc, Measure::Gbc, Measure::Gbr];
            let rows = family_rows(Family::Chi3, &thetas, &measures, &cfg)?;
            let mut header = vec!["theta".to_string()];
            header.extend(measures.iter().map(|m| m.name().to_string()));
            csv_text(&header, &thetas, &rows)
        }
    };
    fs::create_dir_all(&a.out_dir)
        .map_err(|e| CliError::Output(format!("{}: {e}", a.out_dir.display())))?;
    let path = figure_file(&a.out_dir, a.name);
    write_output(Some(&path), &text)?;
    println!("{}", path.display());
    Ok(())
}

pub fn bipartitions(n: usize) -> Result<(), CliError> {
    let parts = enumerate_bipartitions(n).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut text = format!("m={}\n", parts.len());
    for p in parts {
        text.push_str(&format!("{p}\n"));
    }
    write_output(None, &text)
}
