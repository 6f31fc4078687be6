//! States on the lattice.
//!
//! `WaveFunction` holds an element of ℓ²(ℤⁿ; ℂ²ⁿ) restricted to a window,
//! laid out site-major with component order (j, k) ↔ 2j + k, matching the
//! identification ℓ²(ℤⁿ; ℂ²ⁿ) ≅ ⊕ⱼ ℓ²(ℤⁿ; ℂ²). `ScalarField` holds an
//! element of K̃ = ℓ²(ℤⁿ) or, tagged `Punctured`, of K = ℓ²(ℤⁿ∖{0}); the
//! punctured representation stores an explicit 0 at the origin and no
//! operation reads that entry.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::LatticeWindow;

fn window_mismatch(a: &LatticeWindow, b: &LatticeWindow) -> Error {
    Error::WindowMismatch {
        left: a.describe(),
        right: b.describe(),
    }
}

/// A finitely supported state in ℓ²(ℤⁿ; ℂ²ⁿ).
#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunction {
    window: LatticeWindow,
    n: usize,
    amp: Vec<Complex64>,
}

impl WaveFunction {
    pub fn zeros(window: LatticeWindow, n: usize) -> Self {
        assert_eq!(window.dim(), n);
        let len = window.num_sites() * 2 * n;
        Self {
            window,
            n,
            amp: vec![Complex64::ZERO; len],
        }
    }

    /// δ_site ⊗ v with v ∈ ℂ²ⁿ.
    pub fn delta(window: LatticeWindow, site: &[i64], components: &[Complex64]) -> Result<Self> {
        let n = window.dim();
        if components.len() != 2 * n {
            return Err(Error::ShapeMismatch {
                what: "component vector",
                expected: 2 * n,
                found: components.len(),
            });
        }
        let idx = window.index_of(site).ok_or_else(|| Error::InvalidArgument(
            format!("site {site:?} lies outside {}", window.describe()),
        ))?;
        let mut psi = Self::zeros(window, n);
        psi.amp[idx * 2 * n..(idx + 1) * 2 * n].copy_from_slice(components);
        Ok(psi)
    }

    pub fn window(&self) -> &LatticeWindow {
        &self.window
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The ℂ²ⁿ vector at a flat site index.
    pub fn site_slice(&self, index: usize) -> &[Complex64] {
        &self.amp[index * 2 * self.n..(index + 1) * 2 * self.n]
    }

    pub fn site_slice_mut(&mut self, index: usize) -> &mut [Complex64] {
        &mut self.amp[index * 2 * self.n..(index + 1) * 2 * self.n]
    }

    /// Component (j, k) at a flat site index.
    pub fn get(&self, index: usize, j: usize, k: usize) -> Complex64 {
        self.amp[index * 2 * self.n + 2 * j + k]
    }

    pub fn set(&mut self, index: usize, j: usize, k: usize, value: Complex64) {
        self.amp[index * 2 * self.n + 2 * j + k] = value;
    }

    /// Amplitude at absolute coordinates; zero outside the window.
    pub fn amplitude(&self, site: &[i64], j: usize, k: usize) -> Complex64 {
        match self.window.index_of(site) {
            Some(i) => self.get(i, j, k),
            None => Complex64::ZERO,
        }
    }

    pub fn site_norm_sqr(&self, index: usize) -> f64 {
        self.site_slice(index).iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// ⟨self, other⟩, antilinear in `self`. Both states must share a window.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.window != other.window {
            return Err(window_mismatch(&self.window, &other.window));
        }
        Ok(self
            .amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// ⟨self, other⟩ matched by absolute site coordinates, for states on
    /// different windows.
    pub fn inner_by_sites(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (i, site) in self.window.sites() {
            for j in 0..self.n {
                for k in 0..2 {
                    let a = self.get(i, j, k);
                    if a != Complex64::ZERO {
                        acc += a.conj() * other.amplitude(&site, j, k);
                    }
                }
            }
        }
        acc
    }

    pub fn scale(&mut self, factor: Complex64) {
        for z in &mut self.amp {
            *z *= factor;
        }
    }

    /// self += factor · other.
    pub fn add_scaled(&mut self, factor: Complex64, other: &Self) -> Result<()> {
        if self.window != other.window {
            return Err(window_mismatch(&self.window, &other.window));
        }
        for (a, b) in self.amp.iter_mut().zip(&other.amp) {
            *a += factor * b;
        }
        Ok(())
    }

    /// ‖self − other‖.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        if self.window != other.window {
            return Err(window_mismatch(&self.window, &other.window));
        }
        Ok(self
            .amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Normalize to unit norm; returns the previous norm.
    pub fn normalize(&mut self) -> f64 {
        let norm = self.norm();
        if norm > 0.0 {
            self.scale(Complex64::new(1.0 / norm, 0.0));
        }
        norm
    }

    /// Copy into a different window by absolute coordinates. Amplitudes
    /// outside the target are dropped.
    pub fn embedded(&self, window: LatticeWindow) -> Self {
        let mut out = Self::zeros(window, self.n);
        for (i, site) in self.window.sites() {
            if let Some(t) = out.window.index_of(&site) {
                let src = self.site_slice(i).to_vec();
                out.site_slice_mut(t).copy_from_slice(&src);
            }
        }
        out
    }

    /// Smallest per-axis radii of a zero-padded window holding every nonzero
    /// amplitude (at least 0 per axis).
    pub fn support_radii(&self) -> Vec<i64> {
        let mut radii = vec![0i64; self.n];
        for (i, site) in self.window.sites() {
            if self.site_norm_sqr(i) > 0.0 {
                for (axis, &c) in site.iter().enumerate() {
                    radii[axis] = radii[axis].max(c.abs());
                }
            }
        }
        radii
    }
}

/// Marks whether a scalar field lives on K̃ = ℓ²(ℤⁿ) or K = ℓ²(ℤⁿ∖{0}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpace {
    Full,
    Punctured,
}

/// A finitely supported scalar field on a window.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    window: LatticeWindow,
    space: FieldSpace,
    val: Vec<Complex64>,
}

impl ScalarField {
    pub fn zeros(window: LatticeWindow, space: FieldSpace) -> Self {
        let len = window.num_sites();
        Self {
            window,
            space,
            val: vec![Complex64::ZERO; len],
        }
    }

    pub fn delta(window: LatticeWindow, site: &[i64], value: Complex64) -> Result<Self> {
        let idx = window.index_of(site).ok_or_else(|| Error::InvalidArgument(
            format!("site {site:?} lies outside {}", window.describe()),
        ))?;
        let mut f = Self::zeros(window, FieldSpace::Full);
        f.val[idx] = value;
        Ok(f)
    }

    pub fn window(&self) -> &LatticeWindow {
        &self.window
    }

    pub fn space(&self) -> FieldSpace {
        self.space
    }

    pub fn get(&self, index: usize) -> Complex64 {
        self.val[index]
    }

    pub fn set(&mut self, index: usize, value: Complex64) {
        self.val[index] = value;
    }

    /// Value at absolute coordinates; zero outside the window.
    pub fn value_at(&self, site: &[i64]) -> Complex64 {
        match self.window.index_of(site) {
            Some(i) => self.val[i],
            None => Complex64::ZERO,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.val.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.window != other.window {
            return Err(window_mismatch(&self.window, &other.window));
        }
        Ok(self
            .val
            .iter()
            .zip(&other.val)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        if self.window != other.window {
            return Err(window_mismatch(&self.window, &other.window));
        }
        Ok(self
            .val
            .iter()
            .zip(&other.val)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Copy into a different window by absolute coordinates.
    pub fn embedded(&self, window: LatticeWindow) -> Self {
        let mut out = Self::zeros(window, self.space);
        for (i, site) in self.window.sites() {
            if let Some(t) = out.window.index_of(&site) {
                out.val[t] = self.val[i];
            }
        }
        out
    }

    pub(crate) fn retag(mut field: ScalarField, space: FieldSpace) -> ScalarField {
        field.space = space;
        field
    }
}
