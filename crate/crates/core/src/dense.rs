//! Dense finite-torus stand-ins for U and T.
//!
//! Columns are produced by the matrix-free operators, so the dense matrices
//! agree with the lattice code by construction. Bases follow the shared
//! lexicographic site enumeration: for U, index = site·2n + (2j + k); for T,
//! torus sites in order with the origin skipped.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::LatticeWindow;
use crate::params::WalkParameters;
use crate::smt::apply_t;
use crate::state::{FieldSpace, ScalarField, WaveFunction};
use crate::walk::apply_evolution;

/// Largest dense dimension the builders will allocate.
pub const DENSE_DIMENSION_BUDGET: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// The unitary walk operator U on ℂ^(2nNⁿ).
    Evolution,
    /// The self-adjoint discriminant T on ℂ^(Nⁿ−1).
    Discriminant,
}

#[derive(Clone, Debug)]
pub struct DenseOperator {
    kind: OperatorKind,
    period: i64,
    n: usize,
    matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn lattice_dim(&self) -> usize {
        self.n
    }

    /// max |(A*A − I)ᵢⱼ|.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.matrix.adjoint() * &self.matrix;
        let dim = self.dimension();
        let mut defect: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
                defect = defect.max((product[(i, j)] - expected).norm());
            }
        }
        defect
    }

    /// max |(A − A*)ᵢⱼ|.
    pub fn self_adjointness_defect(&self) -> f64 {
        let dim = self.dimension();
        let mut defect: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                defect = defect.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        defect
    }

    pub fn basis_description(&self) -> String {
        match self.kind {
            OperatorKind::Evolution => format!(
                "torus period {}, sites lexicographic, components (j,k) interleaved",
                self.period
            ),
            OperatorKind::Discriminant => format!(
                "torus period {}, sites lexicographic, origin omitted",
                self.period
            ),
        }
    }

    /// Rows `row,col,re,im` for external cross-checks.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "row,col,re,im")?;
        for i in 0..self.dimension() {
            for j in 0..self.dimension() {
                let z = self.matrix[(i, j)];
                writeln!(w, "{},{},{:.16e},{:.16e}", i, j, z.re, z.im)?;
            }
        }
        Ok(())
    }
}

fn check_period(params: &WalkParameters, period: i64, dim: usize) -> Result<()> {
    if period < 2 {
        return Err(Error::InvalidArgument(format!(
            "torus period {period} is too small (need at least 2)"
        )));
    }
    let sites = (period as usize).checked_pow(params.n() as u32);
    let ok = sites.map_or(false, |s| dim.checked_mul(s).is_some());
    if !ok || dim > DENSE_DIMENSION_BUDGET {
        return Err(Error::ResourceLimit {
            requested: dim,
            budget: DENSE_DIMENSION_BUDGET,
        });
    }
    Ok(())
}

/// Dense matrix of U on the periodic torus of the given period, defect at 0.
pub fn build_dense_u(params: &WalkParameters, period: i64) -> Result<DenseOperator> {
    let n = params.n();
    let sites = (period as usize).pow(n as u32);
    let dim = sites * 2 * n;
    check_period(params, period, dim)?;
    let window = LatticeWindow::torus(vec![period; n]);
    let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
    for site in 0..sites {
        for comp in 0..2 * n {
            let col = site * 2 * n + comp;
            let mut basis = WaveFunction::zeros(window.clone(), n);
            basis.set(site, comp / 2, comp % 2, Complex64::ONE);
            let image = apply_evolution(params, &basis)?;
            for row_site in 0..sites {
                for row_comp in 0..2 * n {
                    let v = image.get(row_site, row_comp / 2, row_comp % 2);
                    if v != Complex64::ZERO {
                        matrix[(row_site * 2 * n + row_comp, col)] = v;
                    }
                }
            }
        }
    }
    Ok(DenseOperator {
        kind: OperatorKind::Evolution,
        period,
        n,
        matrix,
    })
}

/// Dense matrix of T on the torus minus the origin.
pub fn build_dense_t(params: &WalkParameters, period: i64) -> Result<DenseOperator> {
    let n = params.n();
    let sites = (period as usize).pow(n as u32);
    let dim = sites - 1;
    check_period(params, period, dim)?;
    let window = LatticeWindow::torus(vec![period; n]);
    let origin = window.origin_index();
    // punctured basis: torus sites in order, origin skipped
    let basis_sites: Vec<usize> = (0..sites).filter(|&i| i != origin).collect();
    let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, &site) in basis_sites.iter().enumerate() {
        let mut field = ScalarField::zeros(window.clone(), FieldSpace::Punctured);
        field.set(site, Complex64::ONE);
        let image = apply_t(params, &field)?;
        for (row, &row_site) in basis_sites.iter().enumerate() {
            let v = image.get(row_site);
            if v != Complex64::ZERO {
                matrix[(row, col)] = v;
            }
        }
    }
    Ok(DenseOperator {
        kind: OperatorKind::Discriminant,
        period,
        n,
        matrix,
    })
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

    #[test]
    fn dense_u_small_dimension_and_unitarity() {
        let op = build_dense_u(&reference_params(), 4).unwrap();
        assert_eq!(op.dimension(), 8);
        assert!(op.unitarity_defect() < 1e-12);
    }

    #[test]
    fn dense_u_large_stays_unitary() {
        let op = build_dense_u(&reference_params(), 400).unwrap();
        assert_eq!(op.dimension(), 800);
        assert!(op.unitarity_defect() <= 1e-10);
    }

    #[test]
    fn dense_u_two_dimensional_count() {
        let params = WalkParameters::new(
            vec![0.6, 0.6],
            vec![c(0.8, 0.0), c(0.8, 0.0)],
            vec![[c(0.5, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.5, 0.0)]],
        )
        .unwrap();
        let op = build_dense_u(&params, 12).unwrap();
        assert_eq!(op.dimension(), 576);
        assert!(op.unitarity_defect() < 1e-10);
    }

    #[test]
    fn dense_t_dimension_and_self_adjointness() {
        let op = build_dense_t(&reference_params(), 4).unwrap();
        assert_eq!(op.dimension(), 3);
        assert!(op.self_adjointness_defect() <= 1e-12);
    }

    #[test]
    fn dense_t_is_potential_for_vanishing_mu() {
        let params = WalkParameters::new(
            vec![0.6],
            vec![c(0.8, 0.0)],
            vec![[c(1.0, 0.0), c(0.0, 0.0)]],
        )
        .unwrap();
        let op = build_dense_t(&params, 8).unwrap();
        for i in 0..op.dimension() {
            for j in 0..op.dimension() {
                let expected = if i == j { c(0.6, 0.0) } else { Complex64::ZERO };
                assert!((op.matrix()[(i, j)] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn dense_builders_reject_oversized_requests() {
        let err = build_dense_u(&reference_params(), 5000).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn csv_export_is_rectangular() {
        let op = build_dense_t(&reference_params(), 4).unwrap();
        let mut buf = Vec::new();
        op.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 9);
        assert!(text.starts_with("row,col,re,im\n"));
    }
}
