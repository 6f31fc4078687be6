//! The time-averaged limit measure ν∞ for n = 1 and its empirical check.
//!
//! ν∞(x) = |⟨Ψ₊,Ψ₀⟩|²‖Ψ₊(x)‖² + |⟨Ψ₋,Ψ₀⟩|²‖Ψ₋(x)‖², with Ψ± the
//! normalized birth vectors and Ψ± = 0 when M± = 0; the Cesàro average
//! ν̄_T(x) = (1/T)Σ_{t<T}‖(UᵗΨ₀)(x)‖² converges to it sitewise. The
//! empirical side runs on exact light-cone windows, so its total mass is 1
//! for every horizon.

use std::collections::BTreeMap;

use crate::birth::{birth_vector, classify_multiplicity, Multiplicity};
use crate::error::{Error, Result};
use crate::params::{Sign, WalkParameters};
use crate::state::WaveFunction;
use crate::walk::{evolve_fold, DEFAULT_AMPLITUDE_BUDGET};

/// Tolerance on ‖Ψ₀‖ = 1 for the analytic measure.
pub const INITIAL_NORM_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct AnalyticMeasure {
    /// ν∞ restricted to the requested sites.
    pub nu: BTreeMap<i64, f64>,
    /// |⟨Ψ₊, Ψ₀⟩|².
    pub overlap_plus: f64,
    /// |⟨Ψ₋, Ψ₀⟩|².
    pub overlap_minus: f64,
    /// Σₓ ν∞(x) over the whole lattice = overlap_plus + overlap_minus.
    pub total_mass: f64,
}

#[derive(Clone, Debug)]
pub struct MeasureReport {
    pub sites: (i64, i64),
    pub nu_analytic: BTreeMap<i64, f64>,
    pub nu_empirical: BTreeMap<i64, f64>,
    pub overlaps: (f64, f64),
    pub horizon: usize,
    pub sup_error: f64,
    pub total_mass_analytic: f64,
}

/// ν∞ over `sites` for a normalized initial state (n = 1). Absent birth
/// vectors (M± = 0) contribute nothing.
pub fn analytic_measure(
    params: &WalkParameters,
    psi0: &WaveFunction,
    sites: std::ops::RangeInclusive<i64>,
) -> Result<AnalyticMeasure> {
    if params.n() != 1 {
        return Err(Error::DimensionError {
            required: 1,
            actual: params.n(),
        });
    }
    let norm = psi0.norm();
    if (norm - 1.0).abs() > INITIAL_NORM_TOL {
        return Err(Error::UnnormalizedInitial {
            norm,
            tol: INITIAL_NORM_TOL,
        });
    }
    let mut terms = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        if classify_multiplicity(params, sign) == Multiplicity::Zero {
            terms.push(None);
            continue;
        }
        let vector = birth_vector(params, sign)?;
        let overlap = vector.state.inner_by_sites(psi0).norm_sqr();
        terms.push(Some((vector, overlap)));
    }
    let overlap_of = |slot: &Option<(crate::birth::BirthVector, f64)>| {
        slot.as_ref().map_or(0.0, |(_, o)| *o)
    };
    let overlap_plus = overlap_of(&terms[0]);
    let overlap_minus = overlap_of(&terms[1]);
    let mut nu = BTreeMap::new();
    for x in sites {
        let mut value = 0.0;
        for slot in terms.iter().flatten() {
            let (vector, overlap) = slot;
            let site_norm = vector.state.amplitude(&[x], 0, 0).norm_sqr()
                + vector.state.amplitude(&[x], 0, 1).norm_sqr();
            value += overlap * site_norm;
        }
        nu.insert(x, value);
    }
    Ok(AnalyticMeasure {
        nu,
        overlap_plus,
        overlap_minus,
        total_mass: overlap_plus + overlap_minus,
    })
}

/// ν̄_T over the full light cone: (1/T) Σ_{t=0}^{T−1} ‖(UᵗΨ₀)(x)‖².
pub fn empirical_measure(
    params: &WalkParameters,
    psi0: &WaveFunction,
    horizon: usize,
) -> Result<BTreeMap<Vec<i64>, f64>> {
    if horizon == 0 {
        return Err(Error::InvalidArgument(
            "the Cesàro horizon must be at least 1".into(),
        ));
    }
    let folded = evolve_fold(
        params,
        psi0,
        horizon - 1,
        DEFAULT_AMPLITUDE_BUDGET,
        None::<(crate::lattice::LatticeWindow, Vec<f64>)>,
        |acc, _t, state| {
            let (window, mut mass) = acc.unwrap_or_else(|| {
                (
                    state.window().clone(),
                    vec![0.0; state.window().num_sites()],
                )
            });
            for (slot, m) in mass.iter_mut().enumerate() {
                *m += state.site_norm_sqr(slot);
            }
            Some((window, mass))
        },
    )?;
    let (window, mass) = folded.expect("fold visits t = 0");
    Ok(window
        .sites()
        .map(|(i, site)| (site, mass[i] / horizon as f64))
        .collect())
}

/// Align the analytic and empirical measures on a site range and measure
/// the sup error.
pub fn compare(
    analytic: &AnalyticMeasure,
    empirical: &BTreeMap<Vec<i64>, f64>,
    sites: std::ops::RangeInclusive<i64>,
    horizon: usize,
) -> MeasureReport {
    let mut nu_analytic = BTreeMap::new();
    let mut nu_empirical = BTreeMap::new();
    let mut sup_error = 0.0f64;
    for x in sites.clone() {
        let a = analytic.nu.get(&x).copied().unwrap_or(0.0);
        let e = empirical.get(&vec![x]).copied().unwrap_or(0.0);
        sup_error = sup_error.max((a - e).abs());
        nu_analytic.insert(x, a);
        nu_empirical.insert(x, e);
    }
    MeasureReport {
        sites: (*sites.start(), *sites.end()),
        nu_analytic,
        nu_empirical,
        overlaps: (analytic.overlap_plus, analytic.overlap_minus),
        horizon,
        sup_error,
        total_mass_analytic: analytic.total_mass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeWindow;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reference_params() -> WalkParameters {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        WalkParameters::new(vec![0.6], vec![c(0.8, 0.0)], vec![[c(s, 0.0), c(s, 0.0)]]).unwrap()
    }

    fn delta_state() -> WaveFunction {
        WaveFunction::delta(
            LatticeWindow::zero_padded(vec![1]),
            &[0],
            &[c(0.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn analytic_measure_at_reference_point() {
        let params = reference_params();
        let measure = analytic_measure(&params, &delta_state(), -5..=5).unwrap();
        assert!((measure.overlap_plus - 0.6).abs() < 1e-12);
        assert!(measure.overlap_minus.abs() < 1e-12);
        assert!((measure.nu[&0] - 0.36).abs() < 1e-12);
        assert!((measure.nu[&-1] - 0.18).abs() < 1e-12);
        assert!(measure.nu[&1].abs() < 1e-12);
        assert!((measure.total_mass - 0.6).abs() < 1e-12);
    }

    #[test]
    fn analytic_measure_vanishes_without_point_spectrum() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let params =
            WalkParameters::new(vec![0.0], vec![c(1.0, 0.0)], vec![[c(s, 0.0), c(s, 0.0)]])
                .unwrap();
        let measure = analytic_measure(&params, &delta_state(), -5..=5).unwrap();
        assert_eq!(measure.total_mass, 0.0);
        assert!(measure.nu.values().all(|v| *v == 0.0));
    }

    #[test]
    fn analytic_measure_of_a_birth_vector_is_its_profile() {
        let params = reference_params();
        let plus = birth_vector(&params, Sign::Plus).unwrap();
        let measure = analytic_measure(&params, &plus.state, -10..=10).unwrap();
        assert!((measure.total_mass - 1.0).abs() < 1e-10);
        for x in -10..=5 {
            let profile = plus.state.amplitude(&[x], 0, 0).norm_sqr()
                + plus.state.amplitude(&[x], 0, 1).norm_sqr();
            assert!((measure.nu[&x] - profile).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn analytic_measure_rejects_unnormalized_input() {
        let params = reference_params();
        let psi = WaveFunction::delta(
            LatticeWindow::zero_padded(vec![1]),
            &[0],
            &[c(0.0, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            analytic_measure(&params, &psi, -2..=2),
            Err(Error::UnnormalizedInitial { .. })
        ));
    }

    #[test]
    fn empirical_measure_single_step_is_the_initial_density() {
        let params = reference_params();
        let nu = empirical_measure(&params, &delta_state(), 1).unwrap();
        assert!((nu[&vec![0]] - 1.0).abs() < 1e-15);
        let mass: f64 = nu.values().sum();
        assert!((mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empirical_measure_conserves_mass() {
        let params = reference_params();
        let nu = empirical_measure(&params, &delta_state(), 50).unwrap();
        let mass: f64 = nu.values().sum();
        assert!((mass - 1.0).abs() < 1e-10);
    }

    #[test]
    fn phase_rotation_leaves_measures_unchanged() {
        let params = reference_params();
        let mut rotated = delta_state();
        rotated.scale(Complex64::from_polar(1.0, 1.234));
        let base = analytic_measure(&params, &delta_state(), -5..=5).unwrap();
        let turned = analytic_measure(&params, &rotated, -5..=5).unwrap();
        for x in -5..=5 {
            assert!((base.nu[&x] - turned.nu[&x]).abs() < 1e-14);
        }
        let nu_a = empirical_measure(&params, &delta_state(), 20).unwrap();
        let nu_b = empirical_measure(&params, &rotated, 20).unwrap();
        for (site, value) in &nu_a {
            assert!((value - nu_b[site]).abs() < 1e-14);
        }
    }

    #[test]
    fn compare_identical_maps_has_zero_error() {
        let params = reference_params();
        let analytic = analytic_measure(&params, &delta_state(), -3..=3).unwrap();
        let empirical: BTreeMap<Vec<i64>, f64> = analytic
            .nu
            .iter()
            .map(|(x, v)| (vec![*x], *v))
            .collect();
        let report = compare(&analytic, &empirical, -3..=3, 1);
        assert_eq!(report.sup_error, 0.0);
    }
}
