//! Closed-form spectral predictions and their finite-size numerical checks.
//!
//! The discriminant band is [V₀−2μ, V₀+2μ] with μ = Σⱼ|μⱼ|,
//! μⱼ = qⱼΦ̄ⱼ,₁Φⱼ,₂ and V₀ = Σⱼ pⱼ(|Φⱼ,₁|²−|Φⱼ,₂|²); the continuous
//! spectrum of U is its preimage {e^(iξ) : cos ξ ∈ band} on the unit
//! circle, plus eigenvalues ±1 of multiplicity M±. Finite-torus spectra,
//! band-coverage metrics and two quadrature probes (a resolvent integral
//! outside the band, a divergence probe inside it) quantify those
//! statements at desk scale.

use num_complex::Complex64;

use crate::birth::{classify_multiplicity, Multiplicity};
use crate::dense::{DenseOperator, OperatorKind};
use crate::error::{Error, Result};
use crate::params::{Sign, WalkParameters};

/// Default complex-distance tolerance for treating a torus eigenvalue as a
/// birth eigenvalue at ±1.
pub const DEFAULT_EXCLUSION: f64 = 1e-6;

/// A divergence probe must exceed this to support an "inside band" verdict.
pub const DIVERGENCE_THRESHOLD: f64 = 1e4;

/// Relative tolerance of the resolvent quadrature.
pub const RESOLVENT_RTOL: f64 = 1e-8;

const DIVERGENCE_BASE_LOG2: u32 = 10;
const NODE_CAP: usize = 1 << 24;

/// The arc {e^(±iξ) : ξ ∈ [xi_min, xi_max]} of the unit circle carrying the
/// continuous spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralArc {
    pub xi_min: f64,
    pub xi_max: f64,
    pub full_circle: bool,
}

#[derive(Clone, Debug)]
pub struct SpectralSummary {
    pub mu_j: Vec<Complex64>,
    pub mu: f64,
    pub v0: f64,
    /// [V₀−2μ, V₀+2μ]; degenerates to a point when μ = 0.
    pub band: (f64, f64),
    pub arc: SpectralArc,
    pub m_plus: Multiplicity,
    pub m_minus: Multiplicity,
}

impl SpectralSummary {
    pub fn point_spectrum(&self) -> [(Sign, Multiplicity); 2] {
        [(Sign::Plus, self.m_plus), (Sign::Minus, self.m_minus)]
    }
}

/// All closed-form predictions for one parameter set.
pub fn summarize(params: &WalkParameters) -> SpectralSummary {
    let mu_j: Vec<Complex64> = (0..params.n()).map(|j| params.mu_j(j)).collect();
    let mu = params.mu();
    let v0 = params.v0();
    let band = (v0 - 2.0 * mu, v0 + 2.0 * mu);
    let full_circle = band.0 <= -1.0 + 1e-12 && band.1 >= 1.0 - 1e-12;
    let arc = SpectralArc {
        xi_min: band.1.clamp(-1.0, 1.0).acos(),
        xi_max: band.0.clamp(-1.0, 1.0).acos(),
        full_circle,
    };
    SpectralSummary {
        mu_j,
        mu,
        v0,
        band,
        arc,
        m_plus: classify_multiplicity(params, Sign::Plus),
        m_minus: classify_multiplicity(params, Sign::Minus),
    }
}

/// The Fourier symbol Σⱼ 2|μⱼ| cos(kⱼ + arg μⱼ) + V₀ of the homogeneous
/// discriminant; its range over [0,2π)ⁿ is the band.
pub fn fourier_symbol(params: &WalkParameters, k: &[f64]) -> Result<f64> {
    if k.len() != params.n() {
        return Err(Error::ShapeMismatch {
            what: "momentum vector",
            expected: params.n(),
            found: k.len(),
        });
    }
    let mut value = params.v0();
    for j in 0..params.n() {
        let mu = params.mu_j(j);
        value += 2.0 * mu.norm() * (k[j] + mu.arg()).cos();
    }
    Ok(value)
}

/// Eigenvalues of a dense torus operator: complex on the unit circle for U,
/// real for T. Sorted (by principal argument, respectively ascending).
#[derive(Clone, Debug)]
pub enum Spectrum {
    Unitary(Vec<Complex64>),
    SelfAdjoint(Vec<f64>),
}

pub fn torus_spectrum(op: &DenseOperator) -> Result<Spectrum> {
    let max_iters = 100 * op.dimension().max(10);
    match op.kind() {
        OperatorKind::Evolution => {
            let schur = op
                .matrix()
                .clone()
                .try_schur(f64::EPSILON, max_iters)
                .ok_or_else(|| Error::EigensolverFailure {
                    context: format!("Schur of U, dimension {}", op.dimension()),
                })?;
            let eigs = schur.eigenvalues().ok_or_else(|| Error::EigensolverFailure {
                context: "Schur produced no eigenvalues".into(),
            })?;
            let mut values: Vec<Complex64> = eigs.iter().cloned().collect();
            for value in &values {
                if (value.norm() - 1.0).abs() > 1e-8 {
                    return Err(Error::EigensolverFailure {
                        context: format!("eigenvalue {value} left the unit circle"),
                    });
                }
            }
            values.sort_by(|a, b| {
                a.arg()
                    .total_cmp(&b.arg())
                    .then(a.re.total_cmp(&b.re))
                    .then(a.im.total_cmp(&b.im))
            });
            Ok(Spectrum::Unitary(values))
        }
        OperatorKind::Discriminant => {
            let eigen = op
                .matrix()
                .clone()
                .try_symmetric_eigen(f64::EPSILON, max_iters)
                .ok_or_else(|| Error::EigensolverFailure {
                    context: format!("Hermitian eigensolve of T, dimension {}", op.dimension()),
                })?;
            let mut values: Vec<f64> = eigen.eigenvalues.iter().cloned().collect();
            values.sort_by(f64::total_cmp);
            Ok(Spectrum::SelfAdjoint(values))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverageMetrics {
    /// Hausdorff distance between {cos arg λ} and the band interval.
    pub hausdorff: f64,
    /// Largest uncovered stretch of the band (edges included).
    pub max_gap: f64,
    /// Eigenvalues whose cosine misses the band by more than the margin.
    pub outliers: usize,
}

/// Compare a U spectrum against the predicted band. Eigenvalues within
/// `exclusion` (complex distance) of ±1 are treated as birth eigenvalues
/// and left out.
pub fn band_coverage(
    eigenvalues: &[Complex64],
    band: (f64, f64),
    exclusion: f64,
    margin: f64,
) -> Result<CoverageMetrics> {
    if eigenvalues.is_empty() {
        return Err(Error::Inconclusive("empty eigenvalue list".into()));
    }
    let one = Complex64::ONE;
    let mut cosines: Vec<f64> = eigenvalues
        .iter()
        .filter(|z| (*z - one).norm() > exclusion && (*z + one).norm() > exclusion)
        .map(|z| z.arg().cos())
        .collect();
    if cosines.is_empty() {
        return Err(Error::Inconclusive(
            "every eigenvalue sits at the exclusion points ±1".into(),
        ));
    }
    cosines.sort_by(f64::total_cmp);
    let dist_to_band = |v: f64| (band.0 - v).max(v - band.1).max(0.0);
    let to_band = cosines.iter().cloned().map(dist_to_band).fold(0.0f64, f64::max);
    let nearest = |x: f64| {
        cosines
            .iter()
            .map(|v| (v - x).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let mut from_band = nearest(band.0).max(nearest(band.1));
    for pair in cosines.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        if mid >= band.0 && mid <= band.1 {
            from_band = from_band.max(nearest(mid));
        }
    }
    let outliers = cosines.iter().filter(|v| dist_to_band(**v) > margin).count();
    Ok(CoverageMetrics {
        hausdorff: to_band.max(from_band),
        max_gap: max_gap_within(&cosines, band),
        outliers,
    })
}

/// Largest gap left by `values` inside [band.0, band.1], counting the edges.
pub fn max_gap_within(values: &[f64], band: (f64, f64)) -> f64 {
    let mut inside: Vec<f64> = values
        .iter()
        .cloned()
        .filter(|v| *v >= band.0 - 1e-12 && *v <= band.1 + 1e-12)
        .collect();
    if inside.is_empty() {
        return band.1 - band.0;
    }
    inside.sort_by(f64::total_cmp);
    let mut gap = (inside[0] - band.0).max(band.1 - inside[inside.len() - 1]);
    for pair in inside.windows(2) {
        gap = gap.max(pair[1] - pair[0]);
    }
    gap.max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    OutsideBandNonzero,
    InsideBandDivergent,
    Inconclusive,
}

impl ProbeVerdict {
    pub fn label(self) -> &'static str {
        match self {
            ProbeVerdict::OutsideBandNonzero => "outside_band_nonzero",
            ProbeVerdict::InsideBandDivergent => "inside_band_divergent",
            ProbeVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub lambda: f64,
    pub integral_value: f64,
    pub refinement_values: Vec<f64>,
    /// Quadrature nodes used per refinement level.
    pub nodes: Vec<usize>,
    pub verdict: ProbeVerdict,
}

/// Closed form of ∫₀^{2π} dk / (2μ cos k + V₀ − λ) for λ outside the closed
/// band: 2π sign(V₀−λ)/√((V₀−λ)² − 4μ²).
pub fn resolvent_closed_form(params: &WalkParameters, lambda: f64) -> Result<f64> {
    require_n1(params)?;
    let (lo, hi) = band_of(params);
    if lambda >= lo && lambda <= hi {
        return Err(probe_domain_error(params, lambda, "inside"));
    }
    let b = params.v0() - lambda;
    let a = 2.0 * params.mu();
    Ok(std::f64::consts::TAU * b.signum() / (b * b - a * a).sqrt())
}

/// Quadrature of the resolvent integrand for λ strictly outside the closed
/// band (n = 1). The integrand is smooth and periodic, so doubling
/// trapezoid sums converge fast; refinement stops at relative change
/// `RESOLVENT_RTOL`.
pub fn resolvent_integral(params: &WalkParameters, lambda: f64) -> Result<ProbeReport> {
    require_n1(params)?;
    let (lo, hi) = band_of(params);
    if lambda >= lo && lambda <= hi {
        return Err(probe_domain_error(params, lambda, "inside"));
    }
    let two_mu = 2.0 * params.mu();
    let shift = params.v0() - lambda;
    let integrand = |k: f64| 1.0 / (two_mu * k.cos() + shift);

    let mut refinement_values = Vec::new();
    let mut nodes = Vec::new();
    let mut points = 1usize << 6;
    let mut converged = false;
    while points <= 1 << 22 {
        let h = std::f64::consts::TAU / points as f64;
        let value = (0..points).map(|i| integrand(i as f64 * h)).sum::<f64>() * h;
        refinement_values.push(value);
        nodes.push(points);
        let m = refinement_values.len();
        if m >= 2 {
            let delta = (refinement_values[m - 1] - refinement_values[m - 2]).abs();
            if delta <= RESOLVENT_RTOL * refinement_values[m - 1].abs() {
                converged = true;
                break;
            }
        }
        points <<= 1;
    }
    let value = *refinement_values.last().expect("at least one level");
    let finest = *nodes.last().expect("at least one level");
    let h = std::f64::consts::TAU / finest as f64;
    let mut positive = true;
    let mut negative = true;
    for i in 0..finest {
        let f = integrand(i as f64 * h);
        positive &= f > 0.0;
        negative &= f < 0.0;
    }
    let verdict = if converged && value.abs() > 1e-6 && (positive || negative) {
        ProbeVerdict::OutsideBandNonzero
    } else {
        ProbeVerdict::Inconclusive
    };
    Ok(ProbeReport {
        lambda,
        integral_value: value,
        refinement_values,
        nodes,
        verdict,
    })
}

/// Divergence probe of the squared-resolvent integral for λ strictly inside
/// the open band.
///
/// Level ℓ sums the integrand over a uniform midpoint grid of 2^(10+ℓ)
/// points per nonzero-μ axis (total nodes capped at 2^24), keeping only the
/// nodes where the denominator exceeds one slope-cell (2Σ|μⱼ|)·(2π/M). The
/// retained domains are nested and grow toward the singular manifold, so
/// the partial values of a divergent integral increase strictly level over
/// level; `InsideBandDivergent` additionally requires the final value to
/// pass `DIVERGENCE_THRESHOLD`.
pub fn divergence_probe(
    params: &WalkParameters,
    lambda: f64,
    levels: usize,
) -> Result<ProbeReport> {
    if levels < 3 {
        return Err(Error::InvalidArgument(format!(
            "divergence probe needs at least 3 levels, got {levels}"
        )));
    }
    let axes: Vec<usize> = (0..params.n())
        .filter(|&j| params.mu_j(j).norm() > 0.0)
        .collect();
    if axes.is_empty() {
        return Err(probe_domain_error(params, lambda, "outside"));
    }
    let (lo, hi) = band_of(params);
    if !(lambda > lo && lambda < hi) {
        return Err(probe_domain_error(params, lambda, "outside"));
    }
    let weights: Vec<f64> = axes.iter().map(|&j| 2.0 * params.mu_j(j).norm()).collect();
    let slope: f64 = weights.iter().sum();
    let shift = params.v0() - lambda;
    let l = axes.len() as u32;

    let mut refinement_values = Vec::with_capacity(levels);
    let mut nodes = Vec::with_capacity(levels);
    for level in 1..=levels as u32 {
        let mut m = 1usize << (DIVERGENCE_BASE_LOG2 + level);
        while (m as f64).powi(l as i32) > NODE_CAP as f64 {
            m >>= 1;
        }
        let h = std::f64::consts::TAU / m as f64;
        let eta = slope * h;
        // per-axis tables of 2|mu_j| cos(k) at the midpoints
        let tables: Vec<Vec<f64>> = weights
            .iter()
            .map(|w| {
                (0..m)
                    .map(|i| w * ((i as f64 + 0.5) * h).cos())
                    .collect()
            })
            .collect();
        let weight = h.powi(l as i32);
        let mut total = 0.0f64;
        let mut index = vec![0usize; l as usize];
        'grid: loop {
            let g: f64 = shift + index.iter().zip(&tables).map(|(&i, t)| t[i]).sum::<f64>();
            if g.abs() >= eta {
                total += weight / (g * g);
            }
            for slot in (0..index.len()).rev() {
                index[slot] += 1;
                if index[slot] < m {
                    continue 'grid;
                }
                index[slot] = 0;
            }
            break;
        }
        refinement_values.push(total);
        nodes.push(m.pow(l));
    }
    let increasing = refinement_values.windows(2).all(|w| w[1] > w[0]);
    let final_value = *refinement_values.last().expect("levels >= 3");
    let verdict = if increasing && final_value > DIVERGENCE_THRESHOLD {
        ProbeVerdict::InsideBandDivergent
    } else {
        ProbeVerdict::Inconclusive
    };
    Ok(ProbeReport {
        lambda,
        integral_value: final_value,
        refinement_values,
        nodes,
        verdict,
    })
}

fn band_of(params: &WalkParameters) -> (f64, f64) {
    let mu = params.mu();
    let v0 = params.v0();
    (v0 - 2.0 * mu, v0 + 2.0 * mu)
}

fn probe_domain_error(params: &WalkParameters, lambda: f64, place: &'static str) -> Error {
    let (lo, hi) = band_of(params);
    Error::ProbeDomainError {
        lambda,
        lo,
        hi,
        place,
    }
}

fn require_n1(params: &WalkParameters) -> Result<()> {
    if params.n() != 1 {
        return Err(Error::DimensionError {
            required: 1,
            actual: params.n(),
        });
    }
    Ok(())
}
