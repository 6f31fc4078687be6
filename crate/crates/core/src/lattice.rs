//! Finite truncations of ℤⁿ.
//!
//! Two truncations are used. `ZeroPadded` windows index |xⱼ| ≤ radiusⱼ and
//! treat everything outside as zero; dynamics on an exact light-cone window
//! is then identical to the infinite lattice. `PeriodicTorus` windows index
//! xⱼ ∈ {−⌊N/2⌋, …, ⌈N/2⌉−1} with arithmetic mod N and keep operators
//! exactly unitary, which is what the dense spectral computations need.
//! Both contain the defect site 0.
//!
//! Sites are enumerated lexicographically on (x₁, …, xₙ); that ordering is
//! shared by serialized states and dense matrix bases.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeWindow {
    ZeroPadded { radii: Vec<i64> },
    PeriodicTorus { periods: Vec<i64> },
}

impl LatticeWindow {
    pub fn zero_padded(radii: Vec<i64>) -> Self {
        assert!(!radii.is_empty() && radii.iter().all(|&r| r >= 0));
        LatticeWindow::ZeroPadded { radii }
    }

    /// A cube window with the same radius on every axis.
    pub fn cube(n: usize, radius: i64) -> Self {
        Self::zero_padded(vec![radius; n])
    }

    pub fn torus(periods: Vec<i64>) -> Self {
        assert!(!periods.is_empty() && periods.iter().all(|&n| n >= 2));
        LatticeWindow::PeriodicTorus { periods }
    }

    pub fn dim(&self) -> usize {
        match self {
            LatticeWindow::ZeroPadded { radii } => radii.len(),
            LatticeWindow::PeriodicTorus { periods } => periods.len(),
        }
    }

    /// Number of lattice points along one axis.
    pub fn extent(&self, axis: usize) -> i64 {
        match self {
            LatticeWindow::ZeroPadded { radii } => 2 * radii[axis] + 1,
            LatticeWindow::PeriodicTorus { periods } => periods[axis],
        }
    }

    /// Smallest coordinate along one axis.
    pub fn lo(&self, axis: usize) -> i64 {
        match self {
            LatticeWindow::ZeroPadded { radii } => -radii[axis],
            LatticeWindow::PeriodicTorus { periods } => -(periods[axis] / 2),
        }
    }

    /// Largest coordinate along one axis.
    pub fn hi(&self, axis: usize) -> i64 {
        self.lo(axis) + self.extent(axis) - 1
    }

    pub fn num_sites(&self) -> usize {
        (0..self.dim()).map(|a| self.extent(a) as usize).product()
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, LatticeWindow::PeriodicTorus { .. })
    }

    /// Flat index of a site, lexicographic on coordinates. `None` when the
    /// site falls outside a zero-padded window; tori wrap.
    pub fn index_of(&self, site: &[i64]) -> Option<usize> {
        debug_assert_eq!(site.len(), self.dim());
        let mut idx = 0usize;
        for axis in 0..self.dim() {
            let ext = self.extent(axis);
            let c = match self {
                LatticeWindow::ZeroPadded { .. } => {
                    if site[axis] < self.lo(axis) || site[axis] > self.hi(axis) {
                        return None;
                    }
                    site[axis] - self.lo(axis)
                }
                LatticeWindow::PeriodicTorus { .. } => (site[axis] - self.lo(axis)).rem_euclid(ext),
            };
            idx = idx * ext as usize + c as usize;
        }
        Some(idx)
    }

    /// Coordinates of a flat index.
    pub fn site_of(&self, index: usize) -> Vec<i64> {
        let mut site = vec![0i64; self.dim()];
        let mut rest = index;
        for axis in (0..self.dim()).rev() {
            let ext = self.extent(axis) as usize;
            site[axis] = self.lo(axis) + (rest % ext) as i64;
            rest /= ext;
        }
        site
    }

    pub fn origin_index(&self) -> usize {
        self.index_of(&vec![0; self.dim()]).expect("origin is inside every window")
    }

    /// Index of the neighbor one step along `axis` (`dir` = ±1). `None` when
    /// the step leaves a zero-padded window; tori wrap.
    pub fn step(&self, index: usize, axis: usize, dir: i64) -> Option<usize> {
        let mut stride = 1usize;
        for a in (axis + 1)..self.dim() {
            stride *= self.extent(a) as usize;
        }
        let ext = self.extent(axis) as usize;
        let coord = (index / stride) % ext;
        let next = coord as i64 + dir;
        match self {
            LatticeWindow::ZeroPadded { .. } => {
                if next < 0 || next >= ext as i64 {
                    None
                } else {
                    Some((index as i64 + dir * stride as i64) as usize)
                }
            }
            LatticeWindow::PeriodicTorus { .. } => {
                let wrapped = next.rem_euclid(ext as i64);
                Some(index - coord * stride + wrapped as usize * stride)
            }
        }
    }

    /// Iterate all (index, site) pairs in lexicographic order.
    pub fn sites(&self) -> impl Iterator<Item = (usize, Vec<i64>)> + '_ {
        (0..self.num_sites()).map(move |i| (i, self.site_of(i)))
    }

    pub fn describe(&self) -> String {
        match self {
            LatticeWindow::ZeroPadded { radii } => format!("zero-padded radii {radii:?}"),
            LatticeWindow::PeriodicTorus { periods } => format!("torus periods {periods:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_padded_round_trip() {
        let w = LatticeWindow::zero_padded(vec![2, 3]);
        assert_eq!(w.num_sites(), 5 * 7);
        for (i, site) in w.sites() {
            assert_eq!(w.index_of(&site), Some(i));
        }
        assert_eq!(w.index_of(&[3, 0]), None);
        assert_eq!(w.site_of(w.origin_index()), vec![0, 0]);
    }

    #[test]
    fn torus_wraps() {
        let w = LatticeWindow::torus(vec![4]);
        // coordinates -2..=1
        assert_eq!(w.lo(0), -2);
        assert_eq!(w.hi(0), 1);
        assert_eq!(w.index_of(&[2]), w.index_of(&[-2]));
        let i = w.index_of(&[1]).unwrap();
        let j = w.step(i, 0, 1).unwrap();
        assert_eq!(w.site_of(j), vec![-2]);
    }

    #[test]
    fn zero_padded_step_leaves_window() {
        let w = LatticeWindow::zero_padded(vec![1]);
        let edge = w.index_of(&[1]).unwrap();
        assert_eq!(w.step(edge, 0, 1), None);
        assert_eq!(w.site_of(w.step(edge, 0, -1).unwrap()), vec![0]);
    }

    #[test]
    fn lexicographic_order_is_row_major() {
        let w = LatticeWindow::zero_padded(vec![1, 1]);
        let order: Vec<Vec<i64>> = w.sites().map(|(_, s)| s).collect();
        assert_eq!(order[0], vec![-1, -1]);
        assert_eq!(order[1], vec![-1, 0]);
        assert_eq!(order[3], vec![0, -1]);
    }
}
