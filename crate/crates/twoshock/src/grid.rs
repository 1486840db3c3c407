//! Slab grid: a truncated axial interval times a periodic unit torus.
//!
//! Axial nodes are x1(i) = x1_min + i dx1, i = 0..n1-1, inclusive of both
//! ends. Transverse directions are periodic with period one and cell
//! coordinates x2(j) = j/n2, x3(k) = k/n3; n2 = n3 = 1 is the pure-1D mode
//! and shares the same code path (all transverse differences vanish).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x1_min: f64,
    pub x1_max: f64,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub dx1: f64,
    pub dx2: f64,
    pub dx3: f64,
}

impl Grid {
    pub fn new(x1_min: f64, x1_max: f64, n1: usize, n2: usize, n3: usize) -> Result<Self> {
        if !(x1_max > x1_min) {
            return Err(Error::InvalidGrid(format!(
                "need x1_max > x1_min, got [{x1_min}, {x1_max}]"
            )));
        }
        if n1 < 16 {
            return Err(Error::InvalidGrid(format!("n1 must be >= 16, got {n1}")));
        }
        if n2 * n3 > 1 && (n2 < 4 || n3 < 4) {
            return Err(Error::InvalidGrid(format!(
                "resolved transverse directions need n2, n3 >= 4, got ({n2}, {n3})"
            )));
        }
        if n2 == 0 || n3 == 0 {
            return Err(Error::InvalidGrid("transverse counts must be >= 1".to_string()));
        }
        let dx1 = (x1_max - x1_min) / (n1 - 1) as f64;
        if !(dx1 > 0.0) {
            return Err(Error::InvalidGrid("dx1 must be positive".to_string()));
        }
        Ok(Self {
            x1_min,
            x1_max,
            n1,
            n2,
            n3,
            dx1,
            dx2: 1.0 / n2 as f64,
            dx3: 1.0 / n3 as f64,
        })
    }

    pub fn new_1d(x1_min: f64, x1_max: f64, n1: usize) -> Result<Self> {
        Self::new(x1_min, x1_max, n1, 1, 1)
    }

    #[inline]
    pub fn cells(&self) -> usize {
        self.n1 * self.n2 * self.n3
    }

    /// Number of axial lines (transverse cells).
    #[inline]
    pub fn lines(&self) -> usize {
        self.n2 * self.n3
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.n1 * (j + self.n2 * k)
    }

    #[inline]
    pub fn x1(&self, i: usize) -> f64 {
        self.x1_min + i as f64 * self.dx1
    }

    #[inline]
    pub fn x2(&self, j: usize) -> f64 {
        j as f64 * self.dx2
    }

    #[inline]
    pub fn x3(&self, k: usize) -> f64 {
        k as f64 * self.dx3
    }

    pub fn is_1d(&self) -> bool {
        self.n2 == 1 && self.n3 == 1
    }

    /// Axial coordinates of all nodes.
    pub fn x1_coords(&self) -> Vec<f64> {
        (0..self.n1).map(|i| self.x1(i)).collect()
    }

    /// Transverse cell (j, k) of a flat line index.
    #[inline]
    pub fn line_jk(&self, line: usize) -> (usize, usize) {
        (line % self.n2, line / self.n2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_enforced() {
        assert!(Grid::new_1d(0.0, 1.0, 8).is_err());
        assert!(Grid::new(0.0, 1.0, 32, 2, 1).is_err());
        assert!(Grid::new(0.0, 1.0, 32, 4, 2).is_err());
        assert!(Grid::new(1.0, 0.0, 32, 1, 1).is_err());
        let g = Grid::new(0.0, 1.0, 32, 4, 4).unwrap();
        assert_eq!(g.cells(), 32 * 16);
        assert!((g.dx2 - 0.25).abs() < 1e-15);
    }

    #[test]
    fn indexing_round_trips() {
        let g = Grid::new(-1.0, 1.0, 16, 4, 8).unwrap();
        let mut seen = vec![false; g.cells()];
        for k in 0..g.n3 {
            for j in 0..g.n2 {
                for i in 0..g.n1 {
                    let id = g.idx(i, j, k);
                    assert!(!seen[id]);
                    seen[id] = true;
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(g.x1(0), -1.0);
        assert_eq!(g.x1(g.n1 - 1), 1.0);
    }
}
