//! The operator zoo behind the spectral mapping: d̃, d, ι and adjoints, and
//! the discriminants T̃, T̃₀, T, all applied matrix-free.
//!
//! With χ(x) = Φ off the origin and χ(0) = 0:
//!   (d̃Ψ)(x) = ⟨χ(x), Ψ(x)⟩,       (d̃*ψ)(x) = χ(x)ψ(x),
//!   d = ι*d̃ (a coisometry onto K), and C = 2d̃*d̃ − 1 = 2d*d − 1.
//! The discriminant T̃ = d̃Sd̃* expands to Σⱼ(Dⱼ + Dⱼ*) + V with
//! Dⱼ = qⱼ χⱼ,₁* Lⱼ χⱼ,₂, every χ factor cutting the hops that touch the
//! defect. Its translation-invariant counterpart is
//!   (T̃₀ψ)(x) = Σⱼ ( μⱼψ(x+eⱼ) + μ̄ⱼψ(x−eⱼ) ) + V₀ψ(x),
//! and T = ι*T̃ι = ι*T̃₀ι acts on K.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::WalkParameters;
use crate::state::{FieldSpace, ScalarField, WaveFunction};
use crate::walk::apply_coin;

fn check_dim(params: &WalkParameters, dim: usize) -> Result<()> {
    if dim != params.n() {
        return Err(Error::ShapeMismatch {
            what: "field dimension",
            expected: params.n(),
            found: dim,
        });
    }
    Ok(())
}

/// (d̃Ψ)(x) = Σⱼₖ Φ̄ⱼ,ₖ Ψⱼ,ₖ(x) for x ≠ 0, and 0 at the origin.
pub fn apply_dtilde(params: &WalkParameters, psi: &WaveFunction) -> Result<ScalarField> {
    check_dim(params, psi.n())?;
    let window = psi.window().clone();
    let origin = window.origin_index();
    let mut out = ScalarField::zeros(window, FieldSpace::Full);
    for i in 0..psi.window().num_sites() {
        if i == origin {
            continue; // chi(0) = 0
        }
        let mut v = Complex64::ZERO;
        for j in 0..params.n() {
            let [phi1, phi2] = params.phi(j);
            v += phi1.conj() * psi.get(i, j, 0) + phi2.conj() * psi.get(i, j, 1);
        }
        out.set(i, v);
    }
    Ok(out)
}

/// (d̃*ψ)(x) = χ(x)ψ(x); the output vanishes at the origin.
pub fn apply_dtilde_adjoint(params: &WalkParameters, field: &ScalarField) -> Result<WaveFunction> {
    let window = field.window().clone();
    let origin = window.origin_index();
    let mut out = WaveFunction::zeros(window, params.n());
    for i in 0..field.window().num_sites() {
        if i == origin {
            continue;
        }
        let v = field.get(i);
        if v == Complex64::ZERO {
            continue;
        }
        for j in 0..params.n() {
            let [phi1, phi2] = params.phi(j);
            out.set(i, j, 0, phi1 * v);
            out.set(i, j, 1, phi2 * v);
        }
    }
    Ok(out)
}

/// ι: K → K̃, re-tagging a punctured field as a full one (origin entry 0).
pub fn iota(field: &ScalarField) -> ScalarField {
    let mut out = field.clone();
    out.set(out.window().origin_index(), Complex64::ZERO);
    ScalarField::retag(out, FieldSpace::Full)
}

/// ι*: K̃ → K, dropping the origin entry.
pub fn iota_adjoint(field: &ScalarField) -> ScalarField {
    let mut out = field.clone();
    out.set(out.window().origin_index(), Complex64::ZERO);
    ScalarField::retag(out, FieldSpace::Punctured)
}

/// d = ι*d̃, the coisometry H → K.
pub fn apply_d(params: &WalkParameters, psi: &WaveFunction) -> Result<ScalarField> {
    Ok(iota_adjoint(&apply_dtilde(params, psi)?))
}

/// d* = d̃*ι.
pub fn apply_d_adjoint(params: &WalkParameters, field: &ScalarField) -> Result<WaveFunction> {
    apply_dtilde_adjoint(params, &iota(field))
}

/// Max sitewise deviation ‖(2d̃*d̃ − 1)Ψ(x) − (CΨ)(x)‖, the identity of
/// Lemma cd. Contractually ≤ 1e-12.
pub fn coin_identity_check(params: &WalkParameters, psi: &WaveFunction) -> Result<f64> {
    let via_d = {
        let mut w = apply_dtilde_adjoint(params, &apply_dtilde(params, psi)?)?;
        w.scale(Complex64::new(2.0, 0.0));
        w.add_scaled(Complex64::new(-1.0, 0.0), psi)?;
        w
    };
    let via_coin = apply_coin(params, psi)?;
    let mut max_dev: f64 = 0.0;
    for i in 0..psi.window().num_sites() {
        let d: f64 = via_d
            .site_slice(i)
            .iter()
            .zip(via_coin.site_slice(i))
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        max_dev = max_dev.max(d.sqrt());
    }
    Ok(max_dev)
}

/// (T̃₀ψ)(x) = Σⱼ ( μⱼψ(x+eⱼ) + μ̄ⱼψ(x−eⱼ) ) + V₀ψ(x).
pub fn apply_t0tilde(params: &WalkParameters, field: &ScalarField) -> Result<ScalarField> {
    check_dim(params, field.window().dim())?;
    let window = field.window().clone();
    let v0 = Complex64::new(params.v0(), 0.0);
    let mut out = ScalarField::zeros(window, FieldSpace::Full);
    for i in 0..field.window().num_sites() {
        let mut v = v0 * field.get(i);
        for j in 0..params.n() {
            let mu = params.mu_j(j);
            if let Some(t) = field.window().step(i, j, 1) {
                v += mu * field.get(t);
            }
            if let Some(t) = field.window().step(i, j, -1) {
                v += mu.conj() * field.get(t);
            }
        }
        out.set(i, v);
    }
    Ok(out)
}

/// T̃ = Σⱼ(Dⱼ + Dⱼ*) + V with the χ factors in place: hops touching the
/// defect are cut and V(0) = 0.
pub fn apply_ttilde(params: &WalkParameters, field: &ScalarField) -> Result<ScalarField> {
    check_dim(params, field.window().dim())?;
    let window = field.window().clone();
    let origin = window.origin_index();
    let v0 = Complex64::new(params.v0(), 0.0);
    let mut out = ScalarField::zeros(window, FieldSpace::Full);
    for i in 0..field.window().num_sites() {
        if i == origin {
            continue; // every chi factor vanishes at the defect
        }
        let mut v = v0 * field.get(i);
        for j in 0..params.n() {
            let mu = params.mu_j(j);
            if let Some(t) = field.window().step(i, j, 1) {
                if t != origin {
                    v += mu * field.get(t);
                }
            }
            if let Some(t) = field.window().step(i, j, -1) {
                if t != origin {
                    v += mu.conj() * field.get(t);
                }
            }
        }
        out.set(i, v);
    }
    Ok(out)
}

/// T = ι*T̃₀ι on K; the input's origin entry is never read and the output's
/// is zero.
pub fn apply_t(params: &WalkParameters, field: &ScalarField) -> Result<ScalarField> {
    Ok(iota_adjoint(&apply_t0tilde(params, &iota(field))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeWindow;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reference_params() -> WalkParameters {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        WalkParameters::new(vec![0.6], vec![c(0.8, 0.0)], vec![[c(s, 0.0), c(s, 0.0)]]).unwrap()
    }

    #[test]
    fn dtilde_reads_phi_overlap() {
        let params = reference_params();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = WaveFunction::delta(
            LatticeWindow::zero_padded(vec![3]),
            &[1],
            &[c(s, 0.0), c(s, 0.0)],
        )
        .unwrap();
        let f = apply_dtilde(&params, &psi).unwrap();
        assert!((f.value_at(&[1]) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((f.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dtilde_kills_defect_site() {
        let params = reference_params();
        let psi = WaveFunction::delta(
            LatticeWindow::zero_padded(vec![3]),
            &[0],
            &[c(0.3, 0.4), c(-0.1, 0.2)],
        )
        .unwrap();
        let f = apply_dtilde(&params, &psi).unwrap();
        assert_eq!(f.norm(), 0.0);
    }

    #[test]
    fn dtilde_kills_orthogonal_component() {
        // <Phi, (1,-1)/sqrt(2)> = 0 by direct inner product
        let params = reference_params();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = WaveFunction::delta(
            LatticeWindow::zero_padded(vec![3]),
            &[2],
            &[c(s, 0.0), c(-s, 0.0)],
        )
        .unwrap();
        let f = apply_dtilde(&params, &psi).unwrap();
        assert!(f.norm() < 1e-15);
    }

    #[test]
    fn dtilde_adjoint_places_phi() {
        let params = reference_params();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let f = ScalarField::delta(LatticeWindow::zero_padded(vec![3]), &[1], c(1.0, 0.0)).unwrap();
        let psi = apply_dtilde_adjoint(&params, &f).unwrap();
        assert!((psi.amplitude(&[1], 0, 0) - c(s, 0.0)).norm() < 1e-15);
        assert!((psi.amplitude(&[1], 0, 1) - c(s, 0.0)).norm() < 1e-15);

        let at_origin =
            ScalarField::delta(LatticeWindow::zero_padded(vec![3]), &[0], c(1.0, 0.0)).unwrap();
        assert_eq!(apply_dtilde_adjoint(&params, &at_origin).unwrap().norm(), 0.0);
    }

    #[test]
    fn t0tilde_hops_with_mu() {
        let params = reference_params();
        let f = ScalarField::delta(LatticeWindow::zero_padded(vec![3]), &[0], c(1.0, 0.0)).unwrap();
        let out = apply_t0tilde(&params, &f).unwrap();
        assert!((out.value_at(&[1]) - c(0.4, 0.0)).norm() < 1e-15);
        assert!((out.value_at(&[-1]) - c(0.4, 0.0)).norm() < 1e-15);
        assert!(out.value_at(&[0]).norm() < 1e-15);
    }

    #[test]
    fn t0tilde_constant_on_torus_is_symbol_at_zero() {
        let params = reference_params();
        let window = LatticeWindow::torus(vec![8]);
        let mut f = ScalarField::zeros(window, FieldSpace::Full);
        for i in 0..8 {
            f.set(i, c(1.0, 0.0));
        }
        let out = apply_t0tilde(&params, &f).unwrap();
        let expected = 2.0 * 0.4 + 0.0;
        for i in 0..8 {
            assert!((out.get(i) - c(expected, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn t0tilde_is_potential_when_mu_vanishes() {
        let params = WalkParameters::new(
            vec![0.6],
            vec![c(0.8, 0.0)],
            vec![[c(1.0, 0.0), c(0.0, 0.0)]],
        )
        .unwrap();
        let f = ScalarField::delta(LatticeWindow::zero_padded(vec![3]), &[1], c(1.0, 0.0)).unwrap();
        let out = apply_t0tilde(&params, &f).unwrap();
        assert!((out.value_at(&[1]) - c(0.6, 0.0)).norm() < 1e-15);
        assert!(out.value_at(&[0]).norm() < 1e-15);
        assert!(out.value_at(&[2]).norm() < 1e-15);
    }

    #[test]
    fn ttilde_annihilates_defect_delta() {
        let params = reference_params();
        let f = ScalarField::delta(LatticeWindow::zero_padded(vec![3]), &[0], c(1.0, 0.0)).unwrap();
        let out = apply_ttilde(&params, &f).unwrap();
        assert_eq!(out.norm(), 0.0);
    }

    #[test]
    fn ttilde_matches_t0tilde_away_from_defect() {
        let params = reference_params();
        let f = ScalarField::delta(LatticeWindow::zero_padded(vec![4]), &[2], c(1.0, 0.0)).unwrap();
        let a = apply_ttilde(&params, &f).unwrap();
        let b = apply_t0tilde(&params, &f).unwrap();
        assert!(a.distance(&b).unwrap() < 1e-15);
    }

    #[test]
    fn t_discards_hops_into_the_origin() {
        let params = reference_params();
        let f = ScalarField::delta(LatticeWindow::zero_padded(vec![4]), &[1], c(1.0, 0.0)).unwrap();
        let out = apply_t(&params, &iota_adjoint(&f)).unwrap();
        assert!((out.value_at(&[2]) - c(0.4, 0.0)).norm() < 1e-15);
        assert!(out.value_at(&[1]).norm() < 1e-15);
        assert!(out.value_at(&[0]).norm() < 1e-15);
    }

    #[test]
    fn t_is_the_potential_when_mu_vanishes() {
        // Remark 4.2: T = iota^* V_0 iota
        let params = WalkParameters::new(
            vec![0.6],
            vec![c(0.8, 0.0)],
            vec![[c(1.0, 0.0), c(0.0, 0.0)]],
        )
        .unwrap();
        let window = LatticeWindow::zero_padded(vec![4]);
        let mut f = ScalarField::zeros(window, FieldSpace::Punctured);
        for i in 0..f.window().num_sites() {
            if i != f.window().origin_index() {
                f.set(i, c(0.1 * i as f64 - 0.3, 0.05 * i as f64));
            }
        }
        let out = apply_t(&params, &f).unwrap();
        let mut expected = f.clone();
        for i in 0..expected.window().num_sites() {
            let v = expected.get(i);
            expected.set(i, v * c(0.6, 0.0));
        }
        assert!(out.distance(&expected).unwrap() < 1e-15);
    }
}
