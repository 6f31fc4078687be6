//! Model parameters of the one-defect split-step walk.
//!
//! A model instance on ℤⁿ is fixed by (p, q, Φ): per-axis shift entries
//! pⱼ ∈ ℝ, qⱼ ∈ ℂ with pⱼ² + |qⱼ|² = 1, and a normalized coin vector
//! Φ ∈ ℂ²ⁿ split into per-axis pairs Φⱼ = (Φⱼ,₁, Φⱼ,₂). The coin is the
//! reflection 2|Φ⟩⟨Φ| − 1 everywhere except the origin, where it is −1.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for the unitarity and normalization constraints.
pub const UNITARITY_TOL: f64 = 1e-12;

/// |pⱼ| may not come closer to 1 than this.
pub const DEGENERATE_SHIFT_TOL: f64 = 1e-12;

/// Selects the +1 or −1 eigenvalue branch (the B₊ or B₋ birth space).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The eigenvalue ±1 this branch refers to.
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Validated parameters (n, p, q, Φ) of a walk instance.
///
/// Construction never renormalizes; inputs that miss the constraints by more
/// than the stated tolerances are rejected.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkParameters {
    p: Vec<f64>,
    q: Vec<Complex64>,
    phi: Vec<[Complex64; 2]>,
}

impl WalkParameters {
    pub fn new(p: Vec<f64>, q: Vec<Complex64>, phi: Vec<[Complex64; 2]>) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::ShapeMismatch {
                what: "lattice dimension n",
                expected: 1,
                found: 0,
            });
        }
        if q.len() != n {
            return Err(Error::ShapeMismatch {
                what: "q sequence",
                expected: n,
                found: q.len(),
            });
        }
        if phi.len() != n {
            return Err(Error::ShapeMismatch {
                what: "phi sequence",
                expected: n,
                found: phi.len(),
            });
        }
        for j in 0..n {
            let unit = p[j] * p[j] + q[j].norm_sqr();
            if (unit - 1.0).abs() > UNITARITY_TOL {
                return Err(Error::UnitarityViolation {
                    axis: j,
                    value: unit,
                    tol: UNITARITY_TOL,
                });
            }
            if p[j].abs() >= 1.0 - DEGENERATE_SHIFT_TOL {
                return Err(Error::DegenerateShift {
                    axis: j,
                    value: p[j].abs(),
                });
            }
        }
        let chi_norm: f64 = phi
            .iter()
            .map(|pair| pair[0].norm_sqr() + pair[1].norm_sqr())
            .sum();
        if (chi_norm - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::UnnormalizedChi {
                value: chi_norm,
                tol: UNITARITY_TOL,
            });
        }
        Ok(Self { p, q, phi })
    }

    /// Lattice dimension n.
    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self, axis: usize) -> f64 {
        self.p[axis]
    }

    pub fn q(&self, axis: usize) -> Complex64 {
        self.q[axis]
    }

    /// The coin pair Φⱼ = (Φⱼ,₁, Φⱼ,₂) of one axis.
    pub fn phi(&self, axis: usize) -> [Complex64; 2] {
        self.phi[axis]
    }

    /// μⱼ = qⱼ Φ̄ⱼ,₁ Φⱼ,₂.
    pub fn mu_j(&self, axis: usize) -> Complex64 {
        self.q[axis] * self.phi[axis][0].conj() * self.phi[axis][1]
    }

    /// μ = Σⱼ |μⱼ|.
    pub fn mu(&self) -> f64 {
        (0..self.n()).map(|j| self.mu_j(j).norm()).sum()
    }

    /// V₀ = Σⱼ pⱼ (|Φⱼ,₁|² − |Φⱼ,₂|²).
    pub fn v0(&self) -> f64 {
        (0..self.n())
            .map(|j| self.p[j] * (self.phi[j][0].norm_sqr() - self.phi[j][1].norm_sqr()))
            .sum()
    }

    /// The coefficient qⱼ/(pⱼ ± 1) coupling the two components of a birth
    /// vector on axis j.
    pub fn coupling(&self, axis: usize, sign: Sign) -> Complex64 {
        self.q[axis] / Complex64::new(self.p[axis] + sign.value(), 0.0)
    }

    /// The decay ratio rⱼ = (qⱼ/(pⱼ ± 1)) Φ̄ⱼ,₁/Φ̄ⱼ,₂, defined only when
    /// Φⱼ,₁Φⱼ,₂ ≠ 0.
    pub fn decay_ratio(&self, axis: usize, sign: Sign) -> Option<Complex64> {
        let [phi1, phi2] = self.phi[axis];
        if phi1.norm() == 0.0 || phi2.norm() == 0.0 {
            return None;
        }
        Some(self.coupling(axis, sign) * phi1.conj() / phi2.conj())
    }
}
