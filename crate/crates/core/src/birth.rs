//! Birth eigenspaces B± = ker(S±1) ∩ ker(C+1) and their explicit witnesses.
//!
//! Every element factors through a scalar tuple ψ = (ψ₁, …, ψₙ) as
//!   Ψⱼ,₁(x) = −(qⱼ/(pⱼ±1)) ψⱼ(x+eⱼ),   Ψⱼ,₂(x) = ψⱼ(x),
//! which lies in ker(S±1) for any ψ; membership in ker(C+1) is the kernel
//! condition Σⱼ( −(qⱼ/(pⱼ±1))Φ̄ⱼ,₁ψⱼ(x+eⱼ) + Φ̄ⱼ,₂ψⱼ(x) ) = 0 for x ≠ 0.
//! The per-axis recipe solves it case by case; with the decay ratio
//! rⱼ = (qⱼ/(pⱼ±1)) Φ̄ⱼ,₁/Φ̄ⱼ,₂ the nontrivial cases obey the recurrence
//! ψⱼ(x) = rⱼψⱼ(x+eⱼ) away from the origin, so an ℓ² solution exists
//! exactly when |rⱼ| ≠ 1. The multiplicity is 1 (n = 1, non-degenerate),
//! 0 (n = 1, |r| = 1), or ∞ (n ≥ 2, exhibited by a translated family of
//! finite-support kernel elements).

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::LatticeWindow;
use crate::params::{Sign, WalkParameters};
use crate::smt::apply_dtilde;
use crate::state::{FieldSpace, ScalarField, WaveFunction};
use crate::walk::{apply_evolution, apply_shift};

/// Relative tolerance of the |qⱼΦⱼ,₁| vs |(pⱼ±1)Φⱼ,₂| tie test.
pub const MOD_ONE_REL_TOL: f64 = 1e-12;

/// An assembled vector whose eigen-residual exceeds this signals a recipe
/// violation.
pub const RESIDUAL_LIMIT: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Zero,
    One,
    Infinite,
}

impl Multiplicity {
    pub fn label(self) -> &'static str {
        match self {
            Multiplicity::Zero => "0",
            Multiplicity::One => "1",
            Multiplicity::Infinite => "inf",
        }
    }
}

/// Which branch of the construction applies on one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisCase {
    BothZero,
    Phi1Zero,
    Phi2Zero,
    ModLessOne,
    ModGreaterOne,
    ModOne,
}

/// The free scalars of the recipe, sized so the assembled vector comes out
/// normalized (n = 1).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NormalizationConstants {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub t: Option<f64>,
    pub u: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct BirthSpec {
    pub sign: Sign,
    pub case_per_axis: Vec<AxisCase>,
    pub r_per_axis: Vec<Option<Complex64>>,
    /// Seed value of each component at its canonical seed site.
    pub seeds: Vec<Complex64>,
}

/// A normalized eigenvector of U with eigenvalue ±1, with its site-norm
/// profile and the measured eigen-residual.
#[derive(Clone, Debug)]
pub struct BirthVector {
    pub spec: BirthSpec,
    pub state: WaveFunction,
    pub profile: BTreeMap<Vec<i64>, f64>,
    /// ‖UΨ ∓ Ψ‖ on the construction window.
    pub residual: f64,
    /// ‖SΨ ± Ψ‖ on the construction window.
    pub shift_residual: f64,
    /// max over x ≠ 0 of |⟨Φ, Ψ(x)⟩|.
    pub defect_orthogonality: f64,
}

/// Case tag of one axis and the decay ratio rⱼ where defined.
pub fn classify_axis(
    params: &WalkParameters,
    axis: usize,
    sign: Sign,
) -> (AxisCase, Option<Complex64>) {
    let [phi1, phi2] = params.phi(axis);
    match (phi1.norm() == 0.0, phi2.norm() == 0.0) {
        (true, true) => (AxisCase::BothZero, None),
        (true, false) => (AxisCase::Phi1Zero, None),
        (false, true) => (AxisCase::Phi2Zero, None),
        (false, false) => {
            let r = params
                .decay_ratio(axis, sign)
                .expect("both components nonzero");
            let lhs = params.q(axis).norm() * phi1.norm();
            let rhs = (params.p(axis) + sign.value()).abs() * phi2.norm();
            let tie = (lhs - rhs).abs() <= MOD_ONE_REL_TOL * lhs.max(rhs);
            let case = if tie {
                AxisCase::ModOne
            } else if r.norm() < 1.0 {
                AxisCase::ModLessOne
            } else {
                AxisCase::ModGreaterOne
            };
            (case, Some(r))
        }
    }
}

/// M± = dim B±: ∞ for n ≥ 2; for n = 1, 1 unless |q₁Φ₁,₁| = |(p₁±1)Φ₁,₂|.
pub fn classify_multiplicity(params: &WalkParameters, sign: Sign) -> Multiplicity {
    if params.n() >= 2 {
        return Multiplicity::Infinite;
    }
    match classify_axis(params, 0, sign).0 {
        AxisCase::ModOne => Multiplicity::Zero,
        _ => Multiplicity::One,
    }
}

/// Support radius that keeps the excluded tail mass of a geometric profile
/// below 1e-24: the amplitude decays like |r|^R, so the squared tail needs
/// |r|^(2R) ≤ 1e-24.
pub fn truncation_radius(ratio_abs: f64) -> i64 {
    debug_assert!(ratio_abs > 0.0 && ratio_abs != 1.0);
    let decay = if ratio_abs < 1.0 { ratio_abs } else { 1.0 / ratio_abs };
    let r = (24.0 * std::f64::consts::LN_10 / (2.0 * -decay.ln())).ceil();
    (r as i64).max(1)
}

/// One recipe component ψⱼ on axis `axis`, supported on the axis line.
pub fn construct_psi_component(
    params: &WalkParameters,
    axis: usize,
    sign: Sign,
    seed: Complex64,
) -> Result<ScalarField> {
    if axis >= params.n() {
        return Err(Error::ShapeMismatch {
            what: "axis index",
            expected: params.n(),
            found: axis,
        });
    }
    if seed.norm() == 0.0 {
        return Err(Error::InvalidArgument("recipe seed must be nonzero".into()));
    }
    let n = params.n();
    let (case, ratio) = classify_axis(params, axis, sign);
    let line_window = |extent: i64| {
        let mut radii = vec![0i64; n];
        radii[axis] = extent;
        LatticeWindow::zero_padded(radii)
    };
    let place = |field: &mut ScalarField, c: i64, value: Complex64| {
        let mut site = vec![0i64; n];
        site[axis] = c;
        let idx = field.window().index_of(&site).expect("inside by construction");
        field.set(idx, value);
    };
    let field = match case {
        AxisCase::ModOne => {
            return Err(Error::CaseUnavailable {
                context: format!(
                    "axis {axis}: |r{}| = 1, only the zero component solves the recurrence",
                    sign.label()
                ),
            })
        }
        AxisCase::BothZero | AxisCase::Phi1Zero => {
            // any field works for a zero axis; the recipe pins a_j delta_0
            let mut f = ScalarField::zeros(line_window(1), FieldSpace::Full);
            place(&mut f, 0, seed);
            f
        }
        AxisCase::Phi2Zero => {
            let mut f = ScalarField::zeros(line_window(1), FieldSpace::Full);
            place(&mut f, 1, seed);
            f
        }
        AxisCase::ModLessOne => {
            let r = ratio.expect("ratio defined");
            let radius = truncation_radius(r.norm());
            let mut f = ScalarField::zeros(line_window(radius), FieldSpace::Full);
            for c in -radius..=0 {
                place(&mut f, c, r.powi((-c) as i32) * seed);
            }
            f
        }
        AxisCase::ModGreaterOne => {
            let r = ratio.expect("ratio defined");
            let radius = truncation_radius(r.norm());
            let mut f = ScalarField::zeros(line_window(radius + 1), FieldSpace::Full);
            for c in 1..=radius + 1 {
                place(&mut f, c, r.powi((-c + 1) as i32) * seed);
            }
            f
        }
    };
    Ok(field)
}

fn seed_site_value(params: &WalkParameters, axis: usize, sign: Sign, field: &ScalarField) -> Complex64 {
    let (case, _) = classify_axis(params, axis, sign);
    let mut site = vec![0i64; params.n()];
    if matches!(case, AxisCase::Phi2Zero | AxisCase::ModGreaterOne) {
        site[axis] = 1;
    }
    field.value_at(&site)
}

/// Assemble Ψⱼ,₁ = −(qⱼ/(pⱼ±1))ψⱼ(·+eⱼ), Ψⱼ,₂ = ψⱼ from the components,
/// normalize, and measure the eigen-residual and membership defects.
pub fn assemble_birth_vector(
    params: &WalkParameters,
    sign: Sign,
    components: &[Option<ScalarField>],
) -> Result<BirthVector> {
    let n = params.n();
    if components.len() != n {
        return Err(Error::ShapeMismatch {
            what: "component list",
            expected: n,
            found: components.len(),
        });
    }
    // common window: hull of the component supports plus a margin for the
    // component coupling and the U application
    let mut radii = vec![2i64; n];
    for component in components.iter().flatten() {
        for axis in 0..n {
            let reach = component.window().hi(axis).abs().max(component.window().lo(axis).abs());
            radii[axis] = radii[axis].max(reach + 2);
        }
    }
    let window = LatticeWindow::zero_padded(radii);
    let mut state = WaveFunction::zeros(window.clone(), n);
    for (axis, component) in components.iter().enumerate() {
        let Some(component) = component else { continue };
        let coupling = -params.coupling(axis, sign);
        for (i, site) in component.window().sites() {
            let value = component.get(i);
            if value == Complex64::ZERO {
                continue;
            }
            let idx = window.index_of(&site).expect("hull contains support");
            state.set(idx, axis, 1, state.get(idx, axis, 1) + value);
            let mut shifted = site.clone();
            shifted[axis] -= 1;
            let idx = window.index_of(&shifted).expect("hull has margin");
            state.set(idx, axis, 0, state.get(idx, axis, 0) + coupling * value);
        }
    }
    if state.norm_sqr() == 0.0 {
        return Err(Error::ZeroVector);
    }
    state.normalize();

    let eigenvalue = Complex64::new(sign.value(), 0.0);
    let mut walked = apply_evolution(params, &state)?;
    walked.add_scaled(-eigenvalue, &state)?;
    let residual = walked.norm();
    let mut shifted = apply_shift(params, &state)?;
    shifted.add_scaled(eigenvalue, &state)?; // S eigenvalue is the opposite sign
    let shift_residual = shifted.norm();
    let overlap_field = apply_dtilde(params, &state)?;
    let defect_orthogonality = (0..window.num_sites())
        .map(|i| overlap_field.get(i).norm())
        .fold(0.0f64, f64::max);
    if residual > RESIDUAL_LIMIT {
        return Err(Error::ResidualTooLarge {
            residual,
            limit: RESIDUAL_LIMIT,
        });
    }

    let use_closed_form = n == 1 && classify_multiplicity(params, sign) == Multiplicity::One;
    let mut profile = BTreeMap::new();
    for (i, site) in window.sites() {
        let value = if use_closed_form {
            closed_form_profile(params, sign, site[0])?
        } else {
            state.site_norm_sqr(i)
        };
        profile.insert(site, value);
    }

    let spec = BirthSpec {
        sign,
        case_per_axis: (0..n).map(|j| classify_axis(params, j, sign).0).collect(),
        r_per_axis: (0..n).map(|j| classify_axis(params, j, sign).1).collect(),
        seeds: components
            .iter()
            .enumerate()
            .map(|(j, comp)| {
                comp.as_ref()
                    .map_or(Complex64::ZERO, |f| seed_site_value(params, j, sign, f))
            })
            .collect(),
    };
    Ok(BirthVector {
        spec,
        state,
        profile,
        residual,
        shift_residual,
        defect_orthogonality,
    })
}

/// The §-standard witness: for n = 1 the recipe component seeded with the
/// normalization constant; for n ≥ 2 the first non-degenerate axis, falling
/// back to a finite-support kernel element when every axis is degenerate.
pub fn birth_vector(params: &WalkParameters, sign: Sign) -> Result<BirthVector> {
    let n = params.n();
    if n == 1 {
        let constants = normalization_constants(params, sign)?;
        let seed = [constants.a, constants.b, constants.t, constants.u]
            .into_iter()
            .flatten()
            .next()
            .expect("one constant applies when M = 1");
        let component = construct_psi_component(params, 0, sign, Complex64::new(seed, 0.0))?;
        return assemble_birth_vector(params, sign, &[Some(component)]);
    }
    for axis in 0..n {
        if classify_axis(params, axis, sign).0 != AxisCase::ModOne {
            let mut components: Vec<Option<ScalarField>> = vec![None; n];
            components[axis] =
                Some(construct_psi_component(params, axis, sign, Complex64::ONE)?);
            return assemble_birth_vector(params, sign, &components);
        }
    }
    Ok(finite_support_family(params, sign, &[(0, 0)])?.remove(0))
}

/// The constants a, b, t, u sized so the assembled Ψ± has unit norm (n = 1).
pub fn normalization_constants(
    params: &WalkParameters,
    sign: Sign,
) -> Result<NormalizationConstants> {
    if params.n() != 1 {
        return Err(Error::DimensionError {
            required: 1,
            actual: params.n(),
        });
    }
    let (case, _) = classify_axis(params, 0, sign);
    let base = 1.0 + params.coupling(0, sign).norm_sqr();
    let [phi1, phi2] = params.phi(0);
    let (phi1_sq, phi2_sq) = (phi1.norm_sqr(), phi2.norm_sqr());
    let p = params.p(0) * sign.value();
    let mut constants = NormalizationConstants::default();
    match case {
        AxisCase::Phi1Zero => constants.a = Some(1.0 / base.sqrt()),
        AxisCase::Phi2Zero => constants.b = Some(1.0 / base.sqrt()),
        AxisCase::ModLessOne => {
            let numer = -(1.0 - p) * phi1_sq + (1.0 + p) * phi2_sq;
            constants.t = Some((numer / (base * (1.0 + p) * phi2_sq)).sqrt());
        }
        AxisCase::ModGreaterOne => {
            let numer = (1.0 - p) * phi1_sq - (1.0 + p) * phi2_sq;
            constants.u = Some((numer / (base * (1.0 - p) * phi1_sq)).sqrt());
        }
        AxisCase::ModOne | AxisCase::BothZero => {
            return Err(Error::CaseUnavailable {
                context: format!("M{} = 0, no normalization constant applies", sign.label()),
            })
        }
    }
    Ok(constants)
}

/// ‖Ψ±(x)‖² in closed form (n = 1). Cases with a decay ratio use the
/// exponent 1−δ(x) and the decaying power |r±|^(−2x); see README.
pub fn closed_form_profile(params: &WalkParameters, sign: Sign, x: i64) -> Result<f64> {
    if params.n() != 1 {
        return Err(Error::DimensionError {
            required: 1,
            actual: params.n(),
        });
    }
    let (case, ratio) = classify_axis(params, 0, sign);
    let [phi1, phi2] = params.phi(0);
    let (phi1_sq, phi2_sq) = (phi1.norm_sqr(), phi2.norm_sqr());
    let p = params.p(0) * sign.value();
    let delta = |x: i64| if x == 0 { 1.0 } else { 0.0 };
    let value = match case {
        AxisCase::Phi1Zero => match x {
            -1 => (1.0 - p) / 2.0,
            0 => (1.0 + p) / 2.0,
            _ => 0.0,
        },
        AxisCase::Phi2Zero => match x {
            0 => (1.0 - p) / 2.0,
            1 => (1.0 + p) / 2.0,
            _ => 0.0,
        },
        AxisCase::ModLessOne => {
            if x > 0 {
                0.0
            } else {
                let r_abs = ratio.expect("ratio defined").norm();
                let numer = -phi1_sq + phi2_sq + p;
                let denom = 2.0 * phi1_sq.powf(1.0 - delta(x)) * phi2_sq;
                numer / denom * r_abs.powi(-2 * x as i32)
            }
        }
        AxisCase::ModGreaterOne => {
            if x < 0 {
                0.0
            } else {
                let r_abs = ratio.expect("ratio defined").norm();
                let numer = phi1_sq - phi2_sq - p;
                let denom = 2.0 * phi1_sq * phi2_sq.powf(1.0 - delta(x));
                numer / denom * r_abs.powi(-2 * x as i32)
            }
        }
        AxisCase::ModOne | AxisCase::BothZero => {
            return Err(Error::CaseUnavailable {
                context: format!("M{} = 0, no profile exists", sign.label()),
            })
        }
    };
    Ok(value)
}

/// Finite-support kernel elements near each anchor (n ≥ 2): ψ₁ carries the
/// axis-2 coin data at (a, b−1)/(a, b), ψ₂ the axis-1 data at
/// (a−1, b)/(a, b); their kernel contributions cancel sitewise, so each
/// vector is an exact eigenvector with no truncation tail.
pub fn finite_support_family(
    params: &WalkParameters,
    sign: Sign,
    anchors: &[(i64, i64)],
) -> Result<Vec<BirthVector>> {
    let n = params.n();
    if n < 2 {
        return Err(Error::DimensionError {
            required: 2,
            actual: n,
        });
    }
    let g1 = params.coupling(0, sign);
    let g2 = params.coupling(1, sign);
    let [phi11, phi12] = params.phi(0);
    let [phi21, phi22] = params.phi(1);
    let mut family = Vec::with_capacity(anchors.len());
    for &(a, b) in anchors {
        let values = [
            g2 * phi21.conj(),
            -phi22.conj(),
            -g1 * phi11.conj(),
            phi12.conj(),
        ];
        if values.iter().all(|v| v.norm() == 0.0) {
            return Err(Error::AnchorClash { a, b });
        }
        let mut radii = vec![1i64; n];
        radii[0] = a.abs().max((a - 1).abs()) + 1;
        radii[1] = b.abs().max((b - 1).abs()) + 1;
        let window = LatticeWindow::zero_padded(radii);
        let site = |x: i64, y: i64| {
            let mut s = vec![0i64; n];
            s[0] = x;
            s[1] = y;
            s
        };
        let mut psi1 = ScalarField::zeros(window.clone(), FieldSpace::Full);
        let mut psi2 = ScalarField::zeros(window.clone(), FieldSpace::Full);
        let idx = |w: &LatticeWindow, s: &[i64]| w.index_of(s).expect("anchor halo inside window");
        psi1.set(idx(&window, &site(a, b - 1)), values[0]);
        psi1.set(idx(&window, &site(a, b)), values[1]);
        psi2.set(idx(&window, &site(a - 1, b)), values[2]);
        psi2.set(idx(&window, &site(a, b)), values[3]);
        let mut components: Vec<Option<ScalarField>> = vec![None; n];
        components[0] = Some(psi1);
        components[1] = Some(psi2);
        family.push(assemble_birth_vector(params, sign, &components)?);
    }
    Ok(family)
}

/// Smallest eigenvalue of the Gram matrix ⟨Ψᵢ, Ψⱼ⟩ of a family; positive
/// values witness linear independence.
pub fn gram_smallest_eigenvalue(family: &[BirthVector]) -> Result<f64> {
    if family.is_empty() {
        return Err(Error::Inconclusive("empty family has no Gram matrix".into()));
    }
    let m = family.len();
    let mut gram = DMatrix::<Complex64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            gram[(i, j)] = family[i].state.inner_by_sites(&family[j].state);
        }
    }
    let eigen = gram
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or_else(|| Error::EigensolverFailure {
            context: "Gram matrix".into(),
        })?;
    Ok(eigen.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reference_params() -> WalkParameters {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        WalkParameters::new(vec![0.6], vec![c(0.8, 0.0)], vec![[c(s, 0.0), c(s, 0.0)]]).unwrap()
    }

    fn balanced_params() -> WalkParameters {
        // p = 0 makes |r| = 1 on both branches
        let s = std::f64::consts::FRAC_1_SQRT_2;
        WalkParameters::new(vec![0.0], vec![c(1.0, 0.0)], vec![[c(s, 0.0), c(s, 0.0)]]).unwrap()
    }

    fn params_2d() -> WalkParameters {
        WalkParameters::new(
            vec![0.6, 0.6],
            vec![c(0.8, 0.0), c(0.8, 0.0)],
            vec![[c(0.5, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.5, 0.0)]],
        )
        .unwrap()
    }

    #[test]
    fn multiplicity_at_reference_point() {
        let params = reference_params();
        assert_eq!(classify_multiplicity(&params, Sign::Plus), Multiplicity::One);
        assert_eq!(classify_multiplicity(&params, Sign::Minus), Multiplicity::One);
    }

    #[test]
    fn multiplicity_vanishes_on_tie() {
        let params = balanced_params();
        assert_eq!(classify_multiplicity(&params, Sign::Plus), Multiplicity::Zero);
        assert_eq!(classify_multiplicity(&params, Sign::Minus), Multiplicity::Zero);
        assert!(matches!(
            construct_psi_component(&params, 0, Sign::Plus, Complex64::ONE),
            Err(Error::CaseUnavailable { .. })
        ));
    }

    #[test]
    fn multiplicity_is_infinite_in_higher_dimension() {
        assert_eq!(
            classify_multiplicity(&params_2d(), Sign::Plus),
            Multiplicity::Infinite
        );
    }

    #[test]
    fn recipe_component_cases() {
        let params = reference_params();
        // |r_+| = 1/2 < 1: support on x <= 0 with psi(x) = r^{-x} t
        let f = construct_psi_component(&params, 0, Sign::Plus, Complex64::ONE).unwrap();
        assert!((f.value_at(&[0]) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((f.value_at(&[-1]) - c(0.5, 0.0)).norm() < 1e-15);
        assert!(f.value_at(&[1]).norm() == 0.0);
        // r_- = -2: support on x > 0 with psi(x) = r^{-x+1} u
        let f = construct_psi_component(&params, 0, Sign::Minus, Complex64::ONE).unwrap();
        assert!((f.value_at(&[1]) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((f.value_at(&[2]) - c(-0.5, 0.0)).norm() < 1e-15);
        assert!(f.value_at(&[0]).norm() == 0.0);
        // recurrence psi(x) = r psi(x+1) holds away from the origin
        let r = params.decay_ratio(0, Sign::Minus).unwrap();
        for x in 1..5 {
            let lhs = f.value_at(&[x]);
            let rhs = r * f.value_at(&[x + 1]);
            assert!((lhs - rhs).norm() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn recipe_component_for_vanishing_phi1() {
        let params = WalkParameters::new(
            vec![0.6],
            vec![c(0.8, 0.0)],
            vec![[c(0.0, 0.0), c(1.0, 0.0)]],
        )
        .unwrap();
        let f = construct_psi_component(&params, 0, Sign::Plus, c(0.7, 0.0)).unwrap();
        assert!((f.value_at(&[0]) - c(0.7, 0.0)).norm() < 1e-15);
        assert!((f.norm() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn assembled_vector_is_an_exact_eigenvector() {
        let params = reference_params();
        for sign in [Sign::Plus, Sign::Minus] {
            let vector = birth_vector(&params, sign).unwrap();
            assert!((vector.state.norm() - 1.0).abs() < 1e-12);
            assert!(vector.residual <= 1e-10, "residual {}", vector.residual);
            assert!(vector.shift_residual <= 1e-12);
            assert!(vector.defect_orthogonality <= 1e-12);
        }
    }

    #[test]
    fn assembling_nothing_is_an_error() {
        let params = reference_params();
        assert!(matches!(
            assemble_birth_vector(&params, Sign::Plus, &[None]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn normalization_constants_at_reference_point() {
        let params = reference_params();
        let t = normalization_constants(&params, Sign::Plus).unwrap().t.unwrap();
        // geometric series oracle: sum over x <= 0 of |Psi(x)|^2 = t^2 (1 + 2/3)
        assert!((t * t - 0.6).abs() < 1e-12);
        let u = normalization_constants(&params, Sign::Minus).unwrap().u.unwrap();
        assert!((u * u - 0.15).abs() < 1e-12);
    }

    #[test]
    fn normalization_constant_for_vanishing_phi1() {
        let params = WalkParameters::new(
            vec![0.6],
            vec![c(0.8, 0.0)],
            vec![[c(0.0, 0.0), c(1.0, 0.0)]],
        )
        .unwrap();
        let a = normalization_constants(&params, Sign::Plus).unwrap().a.unwrap();
        assert!((a * a - 0.8).abs() < 1e-12); // a^2 = (1+p)/2
    }

    #[test]
    fn closed_form_profile_matches_construction() {
        let params = reference_params();
        let plus = birth_vector(&params, Sign::Plus).unwrap();
        assert!((closed_form_profile(&params, Sign::Plus, 0).unwrap() - 0.6).abs() < 1e-12);
        assert!((closed_form_profile(&params, Sign::Plus, -1).unwrap() - 0.3).abs() < 1e-12);
        assert!((closed_form_profile(&params, Sign::Plus, -2).unwrap() - 0.075).abs() < 1e-12);
        assert_eq!(closed_form_profile(&params, Sign::Plus, 1).unwrap(), 0.0);
        for (site, profile) in &plus.profile {
            let from_state = plus.state.amplitude(site, 0, 0).norm_sqr()
                + plus.state.amplitude(site, 0, 1).norm_sqr();
            assert!((profile - from_state).abs() < 1e-12);
        }
        assert!((closed_form_profile(&params, Sign::Minus, 0).unwrap() - 0.6).abs() < 1e-12);
        assert!((closed_form_profile(&params, Sign::Minus, 1).unwrap() - 0.3).abs() < 1e-12);
        let total: f64 = plus.profile.values().sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn profile_table_for_vanishing_phi1() {
        let params = WalkParameters::new(
            vec![0.6],
            vec![c(0.8, 0.0)],
            vec![[c(0.0, 0.0), c(1.0, 0.0)]],
        )
        .unwrap();
        assert!((closed_form_profile(&params, Sign::Plus, -1).unwrap() - 0.2).abs() < 1e-12);
        assert!((closed_form_profile(&params, Sign::Plus, 0).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn two_dimensional_single_axis_witness() {
        let params = params_2d();
        let vector = birth_vector(&params, Sign::Plus).unwrap();
        assert!(vector.residual <= 1e-10);
        assert!(vector.defect_orthogonality <= 1e-12);
    }

    #[test]
    fn finite_support_family_is_exact_and_independent() {
        let params = params_2d();
        let anchors: Vec<(i64, i64)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        let family = finite_support_family(&params, Sign::Plus, &anchors).unwrap();
        assert_eq!(family.len(), 9);
        for member in &family {
            assert!(member.residual <= 1e-12, "residual {}", member.residual);
        }
        let smallest = gram_smallest_eigenvalue(&family).unwrap();
        assert!(smallest > 1e-6, "gram smallest eigenvalue {smallest}");
    }

    #[test]
    fn finite_support_family_far_from_origin() {
        let params = params_2d();
        let family = finite_support_family(&params, Sign::Minus, &[(50, 50)]).unwrap();
        assert!(family[0].residual <= 1e-12);
    }

    #[test]
    fn family_requires_two_dimensions() {
        let params = reference_params();
        assert!(matches!(
            finite_support_family(&params, Sign::Plus, &[(0, 0)]),
            Err(Error::DimensionError { .. })
        ));
    }
}
