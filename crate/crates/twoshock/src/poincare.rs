//! Weighted Poincare-type inequality on the unit slab [0,1] x T^2:
//!
//! ```text
//! Int |f - mean f|^2  <=  1/2 Int y(1-y) |d_y f|^2
//!                       + 1/(16 pi^2) Int |grad' f|^2 / (y(1-y)),
//! ```
//!
//! with equality attained by f(y) = y. The check evaluates both sides on a
//! tensor grid (Simpson along y, cell sums on the torus, the same centered
//! stencils as everywhere else) and reports the slack. The transverse term
//! is weighted by 1/(y(1-y)), so probes must have vanishing transverse
//! gradients at y = 0, 1; otherwise the weighted integral diverges and the
//! check refuses.

use crate::error::{Error, Result};
use crate::ops::pairwise_sum;

/// Scalar samples on the tensor grid: ny nodes inclusive of y = 0 and
/// y = 1 (ny odd so Simpson applies), n2 x n3 torus cells.
#[derive(Debug, Clone)]
pub struct SlabFn {
    pub ny: usize,
    pub n2: usize,
    pub n3: usize,
    pub values: Vec<f64>,
}

impl SlabFn {
    pub fn from_fn(ny: usize, n2: usize, n3: usize, f: impl Fn(f64, f64, f64) -> f64) -> Self {
        assert!(ny >= 3 && ny % 2 == 1, "ny must be odd and >= 3");
        assert!(n2 >= 1 && n3 >= 1);
        let mut values = vec![0.0; ny * n2 * n3];
        let hy = 1.0 / (ny - 1) as f64;
        for k in 0..n3 {
            for j in 0..n2 {
                for i in 0..ny {
                    values[i + ny * (j + n2 * k)] =
                        f(i as f64 * hy, j as f64 / n2 as f64, k as f64 / n3 as f64);
                }
            }
        }
        Self { ny, n2, n3, values }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.ny * (j + self.n2 * k)
    }

    fn hy(&self) -> f64 {
        1.0 / (self.ny - 1) as f64
    }
}

/// Simpson weights along y (ny odd), times the transverse cell measure.
fn simpson_weight(i: usize, ny: usize, hy: f64) -> f64 {
    let w = if i == 0 || i == ny - 1 {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    };
    w * hy / 3.0
}

#[derive(Debug, Clone, Copy)]
pub struct PoincareCheck {
    /// Int |f - mean|^2
    pub lhs: f64,
    /// weighted right-hand side
    pub rhs: f64,
    /// rhs - lhs
    pub slack: f64,
    pub mean: f64,
}

pub fn poincare_check(f: &SlabFn) -> Result<PoincareCheck> {
    let (ny, n2, n3) = (f.ny, f.n2, f.n3);
    let hy = f.hy();
    let cell = 1.0 / (n2 as f64 * n3 as f64);
    let scale = crate::ops::sup_norm(&f.values).max(1e-300);

    // transverse gradient magnitude squared (periodic centered differences)
    let grad_t_sq = |i: usize, j: usize, k: usize| -> f64 {
        let mut s = 0.0;
        if n2 > 1 {
            let h2 = 2.0 / n2 as f64;
            let jp = (j + 1) % n2;
            let jm = (j + n2 - 1) % n2;
            let d = (f.values[f.idx(i, jp, k)] - f.values[f.idx(i, jm, k)]) / h2;
            s += d * d;
        }
        if n3 > 1 {
            let h3 = 2.0 / n3 as f64;
            let kp = (k + 1) % n3;
            let km = (k + n3 - 1) % n3;
            let d = (f.values[f.idx(i, j, kp)] - f.values[f.idx(i, j, km)]) / h3;
            s += d * d;
        }
        s
    };

    // the weighted transverse integrand must vanish at the slab ends
    for k in 0..n3 {
        for j in 0..n2 {
            for i in [0usize, ny - 1] {
                let gsq = grad_t_sq(i, j, k);
                if gsq.sqrt() > 1e-12 * scale {
                    return Err(Error::WeightSingularity(format!(
                        "|grad' f| = {:e} at y = {} makes the weighted integral diverge",
                        gsq.sqrt(),
                        if i == 0 { 0.0 } else { 1.0 }
                    )));
                }
            }
        }
    }

    // mean with the same quadrature
    let mut terms = Vec::with_capacity(f.values.len());
    for k in 0..n3 {
        for j in 0..n2 {
            for i in 0..ny {
                terms.push(simpson_weight(i, ny, hy) * cell * f.values[f.idx(i, j, k)]);
            }
        }
    }
    let mean = pairwise_sum(&terms);

    let mut lhs_terms = Vec::with_capacity(f.values.len());
    let mut rhs_terms = Vec::with_capacity(f.values.len());
    let inv_16pi2 = 1.0 / (16.0 * std::f64::consts::PI * std::f64::consts::PI);
    for k in 0..n3 {
        for j in 0..n2 {
            for i in 0..ny {
                let w = simpson_weight(i, ny, hy) * cell;
                let y = i as f64 * hy;
                let val = f.values[f.idx(i, j, k)];
                lhs_terms.push(w * (val - mean) * (val - mean));
                // d_y f: centered interior, one-sided second order at ends
                let dy = if i == 0 {
                    (4.0 * (f.values[f.idx(1, j, k)] - val)
                        - (f.values[f.idx(2, j, k)] - val))
                        / (2.0 * hy)
                } else if i == ny - 1 {
                    (4.0 * (val - f.values[f.idx(ny - 2, j, k)])
                        - (val - f.values[f.idx(ny - 3, j, k)]))
                        / (2.0 * hy)
                } else {
                    (f.values[f.idx(i + 1, j, k)] - f.values[f.idx(i - 1, j, k)]) / (2.0 * hy)
                };
                let wgt = y * (1.0 - y);
                let mut r = 0.5 * wgt * dy * dy;
                let gsq = grad_t_sq(i, j, k);
                if gsq > 0.0 && wgt > 0.0 {
                    r += inv_16pi2 * gsq / wgt;
                }
                rhs_terms.push(w * r);
            }
        }
    }
    let lhs = pairwise_sum(&lhs_terms);
    let rhs = pairwise_sum(&rhs_terms);
    Ok(PoincareCheck {
        lhs,
        rhs,
        slack: rhs - lhs,
        mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_gives_zero_both_sides() {
        let f = SlabFn::from_fn(65, 1, 1, |_, _, _| 3.25);
        let c = poincare_check(&f).unwrap();
        assert!(c.lhs.abs() < 1e-28);
        assert_eq!(c.rhs, 0.0);
    }

    #[test]
    fn linear_profile_attains_equality_at_one_twelfth() {
        let f = SlabFn::from_fn(257, 1, 1, |y, _, _| y);
        let c = poincare_check(&f).unwrap();
        assert!((c.lhs - 1.0 / 12.0).abs() < 1e-10, "lhs {:.15}", c.lhs);
        assert!((c.rhs - 1.0 / 12.0).abs() < 1e-10, "rhs {:.15}", c.rhs);
        assert!(c.slack.abs() < 1e-10);
    }

    #[test]
    fn transverse_mode_has_positive_slack() {
        let tau = 2.0 * std::f64::consts::PI;
        let f = SlabFn::from_fn(129, 32, 1, |y, x2, _| {
            (std::f64::consts::PI * y).sin() * (tau * x2).cos()
        });
        let c = poincare_check(&f).unwrap();
        assert!(c.slack > 0.1 * c.rhs, "slack {} rhs {}", c.slack, c.rhs);
    }

    #[test]
    fn boundary_transverse_gradient_is_refused() {
        let tau = 2.0 * std::f64::consts::PI;
        let f = SlabFn::from_fn(65, 16, 1, |_y, x2, _| (tau * x2).cos());
        assert!(matches!(
            poincare_check(&f),
            Err(Error::WeightSingularity(_))
        ));
    }
}
