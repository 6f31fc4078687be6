//! The seven analysis commands.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::json;
use sswalk::birth::{birth_vector, finite_support_family, gram_smallest_eigenvalue};
use sswalk::dense::build_dense_u;
use sswalk::measure::{analytic_measure, compare, empirical_measure};
use sswalk::spectral::{
    band_coverage, divergence_probe, resolvent_closed_form, resolvent_integral, summarize,
    torus_spectrum, Spectrum,
};
use sswalk::walk::evolve;
use sswalk::{Complex64, LatticeWindow, Sign, WalkParameters, WaveFunction};

use crate::output::{float, print_json, write_atomic};
use crate::CliError;

/// Fully merged knobs (config file overridden by command-line flags).
pub struct Effective {
    pub params: WalkParameters,
    pub torus: i64,
    pub steps: Option<usize>,
    pub sign: Sign,
    pub radius: Option<i64>,
    pub sites: (i64, i64),
    pub lambda: Option<f64>,
    pub levels: usize,
    pub exclusion: f64,
    pub anchors: Option<Vec<(i64, i64)>>,
    pub state_terms: Option<Vec<(Vec<i64>, Vec<Complex64>)>>,
    pub sweep_p: Vec<f64>,
    pub out: Option<PathBuf>,
}

impl Effective {
    fn out_path(&self, default_name: &str) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from(default_name))
    }

    /// The configured initial state, by default δ₀ with a single unit entry
    /// in component (j=1, k=2).
    fn initial_state(&self) -> Result<WaveFunction, CliError> {
        let n = self.params.n();
        let terms = match &self.state_terms {
            Some(terms) => terms.clone(),
            None => {
                let mut comps = vec![Complex64::ZERO; 2 * n];
                comps[1] = Complex64::ONE;
                vec![(vec![0i64; n], comps)]
            }
        };
        let radius = terms
            .iter()
            .flat_map(|(site, _)| site.iter().map(|c| c.abs()))
            .max()
            .unwrap_or(0)
            + 1;
        let window = LatticeWindow::cube(n, radius);
        let mut state = WaveFunction::zeros(window.clone(), n);
        for (site, comps) in &terms {
            let idx = window.index_of(site).expect("window covers every term");
            for (slot, value) in comps.iter().enumerate() {
                let prev = state.get(idx, slot / 2, slot % 2);
                state.set(idx, slot / 2, slot % 2, prev + value);
            }
        }
        Ok(state)
    }
}

fn multiplicity_json(summary: &sswalk::spectral::SpectralSummary) -> serde_json::Value {
    json!({
        "plus": summary.m_plus.label(),
        "minus": summary.m_minus.label(),
    })
}

pub fn cmd_info(eff: &Effective) -> Result<(), CliError> {
    let summary = summarize(&eff.params);
    let report = json!({
        "n": eff.params.n(),
        "mu_j": summary.mu_j.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
        "mu": summary.mu,
        "v0": summary.v0,
        "band": [summary.band.0, summary.band.1],
        "arc": {
            "xi_min": summary.arc.xi_min,
            "xi_max": summary.arc.xi_max,
            "full_circle": summary.arc.full_circle,
        },
        "multiplicity": multiplicity_json(&summary),
    });
    if eff.out.is_some() {
        write_atomic(
            &eff.out_path("info.json"),
            &format!("{}\n", serde_json::to_string_pretty(&report).expect("valid json")),
        )?;
    }
    print_json(&report);
    Ok(())
}

pub fn cmd_spectrum(eff: &Effective) -> Result<(), CliError> {
    let summary = summarize(&eff.params);
    let op = build_dense_u(&eff.params, eff.torus)?;
    let Spectrum::Unitary(eigenvalues) = torus_spectrum(&op)? else {
        unreachable!("U spectra are complex")
    };
    let margin = 10.0 / eff.torus as f64;
    let metrics = band_coverage(&eigenvalues, summary.band, eff.exclusion, margin)?;
    let mut csv = String::from("index,re,im,cos_arg,classification\n");
    let mut near_plus = 0usize;
    let mut near_minus = 0usize;
    for (index, z) in eigenvalues.iter().enumerate() {
        let cos_arg = z.arg().cos();
        let class = if (z - Complex64::ONE).norm() <= eff.exclusion {
            near_plus += 1;
            "plus_one"
        } else if (z + Complex64::ONE).norm() <= eff.exclusion {
            near_minus += 1;
            "minus_one"
        } else if cos_arg >= summary.band.0 - margin && cos_arg <= summary.band.1 + margin {
            "band"
        } else {
            "outlier"
        };
        writeln!(csv, "{index},{},{},{},{class}", float(z.re), float(z.im), float(cos_arg))
            .expect("string write");
    }
    write_atomic(&eff.out_path("spectrum.csv"), &csv)?;
    print_json(&json!({
        "torus": eff.torus,
        "dimension": op.dimension(),
        "band": [summary.band.0, summary.band.1],
        "hausdorff": metrics.hausdorff,
        "max_gap": metrics.max_gap,
        "outliers": metrics.outliers,
        "near_plus_one": near_plus,
        "near_minus_one": near_minus,
    }));
    Ok(())
}

fn state_csv(state: &WaveFunction, profile: Option<&std::collections::BTreeMap<Vec<i64>, f64>>, clip: Option<i64>) -> String {
    let n = state.n();
    let mut csv = String::new();
    if n == 1 {
        csv.push_str("x,j,k,re,im");
    } else {
        for axis in 1..=n {
            let _ = write!(csv, "{}x{axis}", if axis > 1 { "," } else { "" });
        }
        csv.push_str(",j,k,re,im");
    }
    if profile.is_some() {
        csv.push_str(",profile");
    }
    csv.push('\n');
    for (i, site) in state.window().sites() {
        if let Some(r) = clip {
            if site.iter().any(|c| c.abs() > r) {
                continue;
            }
        }
        for j in 0..n {
            for k in 0..2 {
                let z = state.get(i, j, k);
                let coords = site
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let _ = write!(csv, "{coords},{},{},{},{}", j + 1, k + 1, float(z.re), float(z.im));
                if let Some(map) = profile {
                    let _ = write!(csv, ",{}", float(map.get(&site).copied().unwrap_or(0.0)));
                }
                csv.push('\n');
            }
        }
    }
    csv
}

pub fn cmd_birth(eff: &Effective) -> Result<(), CliError> {
    if let Some(anchors) = &eff.anchors {
        let family = finite_support_family(&eff.params, eff.sign, anchors)?;
        let gram = gram_smallest_eigenvalue(&family)?;
        let report = json!({
            "sign": eff.sign.label(),
            "anchors": anchors.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "residuals": family.iter().map(|v| v.residual).collect::<Vec<_>>(),
            "gram_smallest_eigenvalue": gram,
        });
        write_atomic(
            &eff.out_path("birth_family.json"),
            &format!("{}\n", serde_json::to_string_pretty(&report).expect("valid json")),
        )?;
        print_json(&report);
        return Ok(());
    }
    let vector = birth_vector(&eff.params, eff.sign)?;
    let csv = state_csv(&vector.state, Some(&vector.profile), None);
    write_atomic(&eff.out_path("birth.csv"), &csv)?;
    print_json(&json!({
        "sign": eff.sign.label(),
        "residual": vector.residual,
        "shift_residual": vector.shift_residual,
        "defect_orthogonality": vector.defect_orthogonality,
        "profile_mass": vector.profile.values().sum::<f64>(),
    }));
    Ok(())
}

pub fn cmd_evolve(eff: &Effective) -> Result<(), CliError> {
    let steps = eff.steps.unwrap_or(100);
    let initial = eff.initial_state()?;
    let state = evolve(&eff.params, &initial, steps)?;
    let csv = state_csv(&state, None, eff.radius);
    write_atomic(&eff.out_path("evolve.csv"), &csv)?;
    print_json(&json!({
        "steps": steps,
        "norm": state.norm(),
        "support_radii": state.support_radii(),
    }));
    Ok(())
}

pub fn cmd_measure(eff: &Effective) -> Result<(), CliError> {
    let horizon = eff.steps.unwrap_or(4000);
    let initial = eff.initial_state()?;
    let (lo, hi) = eff.sites;
    let analytic = analytic_measure(&eff.params, &initial, lo..=hi)?;
    let empirical = empirical_measure(&eff.params, &initial, horizon)?;
    let report = compare(&analytic, &empirical, lo..=hi, horizon);
    let mut csv = String::from("x,nu_analytic,nu_empirical,abs_err\n");
    for x in lo..=hi {
        let a = report.nu_analytic[&x];
        let e = report.nu_empirical[&x];
        writeln!(csv, "{x},{},{},{}", float(a), float(e), float((a - e).abs()))
            .expect("string write");
    }
    write_atomic(&eff.out_path("measure.csv"), &csv)?;
    print_json(&json!({
        "horizon": horizon,
        "sites": [lo, hi],
        "overlaps": [report.overlaps.0, report.overlaps.1],
        "total_mass_analytic": report.total_mass_analytic,
        "sup_error": report.sup_error,
    }));
    Ok(())
}

pub fn cmd_probe(eff: &Effective) -> Result<(), CliError> {
    let lambda = eff
        .lambda
        .ok_or_else(|| CliError::Config("probe needs --lambda or a config lambda".into()))?;
    let summary = summarize(&eff.params);
    let inside_open_band = lambda > summary.band.0 && lambda < summary.band.1;
    let (kind, report, closed_form) = if inside_open_band {
        let report = divergence_probe(&eff.params, lambda, eff.levels)?;
        ("divergence", report, None)
    } else {
        let report = resolvent_integral(&eff.params, lambda)?;
        let exact = resolvent_closed_form(&eff.params, lambda)?;
        ("resolvent", report, Some(exact))
    };
    let mut csv = String::from("level,nodes,value\n");
    for (level, (nodes, value)) in report
        .nodes
        .iter()
        .zip(&report.refinement_values)
        .enumerate()
    {
        writeln!(csv, "{},{},{}", level + 1, nodes, float(*value)).expect("string write");
    }
    write_atomic(&eff.out_path("probe.csv"), &csv)?;
    let mut body = json!({
        "lambda": lambda,
        "kind": kind,
        "band": [summary.band.0, summary.band.1],
        "value": report.integral_value,
        "verdict": report.verdict.label(),
    });
    if let Some(exact) = closed_form {
        body["closed_form"] = json!(exact);
        body["quadrature_error"] = json!((report.integral_value - exact).abs());
    }
    print_json(&body);
    Ok(())
}

pub fn cmd_sweep(eff: &Effective) -> Result<(), CliError> {
    let mut csv = String::from("p,mu,v0,band_lo,band_hi,band_width,m_plus,m_minus\n");
    let mut rows = Vec::new();
    for &p in &eff.sweep_p {
        let mut ps: Vec<f64> = (0..eff.params.n()).map(|j| eff.params.p(j)).collect();
        let mut qs: Vec<Complex64> = (0..eff.params.n()).map(|j| eff.params.q(j)).collect();
        let phis: Vec<[Complex64; 2]> =
            (0..eff.params.n()).map(|j| eff.params.phi(j)).collect();
        ps[0] = p;
        qs[0] = Complex64::new((1.0 - p * p).sqrt(), 0.0);
        let params = WalkParameters::new(ps, qs, phis)?;
        let summary = summarize(&params);
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            float(p),
            float(summary.mu),
            float(summary.v0),
            float(summary.band.0),
            float(summary.band.1),
            float(summary.band.1 - summary.band.0),
            summary.m_plus.label(),
            summary.m_minus.label()
        )
        .expect("string write");
        rows.push(json!({
            "p": p,
            "band_width": summary.band.1 - summary.band.0,
            "multiplicity": multiplicity_json(&summary),
        }));
    }
    write_atomic(&eff.out_path("sweep.csv"), &csv)?;
    print_json(&json!({ "points": rows.len(), "rows": rows }));
    Ok(())
}
