//! The evolution operator U = SC and time stepping.
//!
//! The shift acts per axis as
//!   (SⱼΨⱼ)(x) = ( pⱼΨⱼ,₁(x) + qⱼΨⱼ,₂(x+eⱼ),  q̄ⱼΨⱼ,₁(x−eⱼ) − pⱼΨⱼ,₂(x) ),
//! and the coin sitewise as C(x) = 2|χ(x)⟩⟨χ(x)| − 1 with χ = Φ away from
//! the origin and χ(0) = 0, so C(0) = −1. Both are unitary involutions.
//!
//! `evolve` runs U on a zero-padded window enlarged to the exact light cone
//! of the initial support, so no amplitude can reach the boundary and the
//! finite computation reproduces the infinite lattice without truncation
//! error.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::LatticeWindow;
use crate::params::WalkParameters;
use crate::state::WaveFunction;

/// Default cap on amplitudes a light-cone window may allocate.
pub const DEFAULT_AMPLITUDE_BUDGET: usize = 1 << 24;

fn check_dim(params: &WalkParameters, psi: &WaveFunction) -> Result<()> {
    if psi.n() != params.n() {
        return Err(Error::ShapeMismatch {
            what: "state dimension",
            expected: params.n(),
            found: psi.n(),
        });
    }
    Ok(())
}

/// SΨ = ⊕ⱼ SⱼΨⱼ on the state's window. Zero-padded windows read missing
/// neighbors as 0; tori wrap.
pub fn apply_shift(params: &WalkParameters, psi: &WaveFunction) -> Result<WaveFunction> {
    check_dim(params, psi)?;
    let window = psi.window().clone();
    let mut out = WaveFunction::zeros(window, params.n());
    for i in 0..psi.window().num_sites() {
        for j in 0..params.n() {
            let fwd = psi
                .window()
                .step(i, j, 1)
                .map_or(Complex64::ZERO, |t| psi.get(t, j, 1));
            let bwd = psi
                .window()
                .step(i, j, -1)
                .map_or(Complex64::ZERO, |t| psi.get(t, j, 0));
            let p = Complex64::new(params.p(j), 0.0);
            let q = params.q(j);
            out.set(i, j, 0, p * psi.get(i, j, 0) + q * fwd);
            out.set(i, j, 1, q.conj() * bwd - p * psi.get(i, j, 1));
        }
    }
    Ok(out)
}

fn coin_site(params: &WalkParameters, input: &[Complex64], output: &mut [Complex64]) {
    // 2⟨Φ, v⟩Φ − v
    let mut overlap = Complex64::ZERO;
    for j in 0..params.n() {
        let [phi1, phi2] = params.phi(j);
        overlap += phi1.conj() * input[2 * j] + phi2.conj() * input[2 * j + 1];
    }
    let overlap = 2.0 * overlap;
    for j in 0..params.n() {
        let [phi1, phi2] = params.phi(j);
        output[2 * j] = overlap * phi1 - input[2 * j];
        output[2 * j + 1] = overlap * phi2 - input[2 * j + 1];
    }
}

/// CΨ with the defect: (CΨ)(0) = −Ψ(0), elsewhere (2|Φ⟩⟨Φ|−1)Ψ(x).
pub fn apply_coin(params: &WalkParameters, psi: &WaveFunction) -> Result<WaveFunction> {
    check_dim(params, psi)?;
    let origin = psi.window().origin_index();
    let mut out = WaveFunction::zeros(psi.window().clone(), params.n());
    for i in 0..psi.window().num_sites() {
        if i == origin {
            for (k, v) in psi.site_slice(i).iter().enumerate() {
                out.site_slice_mut(i)[k] = -v;
            }
        } else {
            coin_site(params, psi.site_slice(i), out.site_slice_mut(i));
        }
    }
    Ok(out)
}

/// The defect-free coin 2|Φ⟩⟨Φ|−1 applied at every site, origin included.
pub fn apply_coin_homogeneous(params: &WalkParameters, psi: &WaveFunction) -> Result<WaveFunction> {
    check_dim(params, psi)?;
    let mut out = WaveFunction::zeros(psi.window().clone(), params.n());
    for i in 0..psi.window().num_sites() {
        coin_site(params, psi.site_slice(i), out.site_slice_mut(i));
    }
    Ok(out)
}

/// One walk step UΨ = S(CΨ).
pub fn apply_evolution(params: &WalkParameters, psi: &WaveFunction) -> Result<WaveFunction> {
    apply_shift(params, &apply_coin(params, psi)?)
}

/// The zero-padded window that the light cone of `psi0` cannot leave within
/// `steps` steps.
fn light_cone_window(psi0: &WaveFunction, steps: usize) -> LatticeWindow {
    let radii: Vec<i64> = psi0
        .support_radii()
        .iter()
        .map(|r| r + steps as i64 + 1)
        .collect();
    LatticeWindow::zero_padded(radii)
}

/// Run `steps` walk steps, visiting every intermediate state (t = 0 included)
/// through the fold closure. The window is sized once so support never
/// touches the boundary; the dynamics is exactly that of the infinite
/// lattice.
pub fn evolve_fold<T>(
    params: &WalkParameters,
    psi0: &WaveFunction,
    steps: usize,
    budget: usize,
    init: T,
    mut fold: impl FnMut(T, usize, &WaveFunction) -> T,
) -> Result<T> {
    check_dim(params, psi0)?;
    let window = light_cone_window(psi0, steps);
    let amplitudes = window.num_sites() * 2 * params.n();
    if amplitudes > budget {
        return Err(Error::ResourceLimit {
            requested: amplitudes,
            budget,
        });
    }
    let mut state = psi0.embedded(window);
    let mut acc = fold(init, 0, &state);
    for t in 1..=steps {
        state = apply_evolution(params, &state)?;
        acc = fold(acc, t, &state);
    }
    Ok(acc)
}

/// Final state after `steps` steps on the exact light-cone window.
pub fn evolve_with_budget(
    params: &WalkParameters,
    psi0: &WaveFunction,
    steps: usize,
    budget: usize,
) -> Result<WaveFunction> {
    evolve_fold(params, psi0, steps, budget, None, |_, _, state| {
        Some(state.clone())
    })
    .map(|last| last.expect("fold visits t = 0"))
}

pub fn evolve(params: &WalkParameters, psi0: &WaveFunction, steps: usize) -> Result<WaveFunction> {
    evolve_with_budget(params, psi0, steps, DEFAULT_AMPLITUDE_BUDGET)
}
