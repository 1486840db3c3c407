//! Discrete operators on slab fields and deterministic reductions.
//!
//! Every derivative used anywhere in the laboratory comes from here, so the
//! solver and the diagnostics see one and the same discretization: centered
//! second-order stencils (one-sided second-order at the axial ends,
//! periodic wraparound transversely) and upwind-biased second-order
//! differences for advection. Reductions use a fixed pairwise tree over a
//! fixed partition, so sums are bit-identical regardless of threading.

use crate::grid::Grid;

/// Axis of differentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
    X3,
}

/// Pairwise (tree) summation; deterministic for a fixed slice.
pub fn pairwise_sum(x: &[f64]) -> f64 {
    if x.len() <= 32 {
        let mut s = 0.0;
        for &v in x {
            s += v;
        }
        return s;
    }
    let mid = x.len() / 2;
    pairwise_sum(&x[..mid]) + pairwise_sum(&x[mid..])
}

/// Runs `f(line_index, line_out)` over the axial lines of `out`, optionally
/// on several threads. The result is identical for any thread count: each
/// line is a pure function of its index.
pub fn par_lines<F>(threads: usize, out: &mut [f64], line_len: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync,
{
    let n_lines = out.len() / line_len;
    debug_assert_eq!(out.len(), n_lines * line_len);
    if threads <= 1 || n_lines < 2 {
        for (li, chunk) in out.chunks_mut(line_len).enumerate() {
            f(li, chunk);
        }
        return;
    }
    let per = n_lines.div_ceil(threads.min(n_lines));
    std::thread::scope(|scope| {
        for (bi, batch) in out.chunks_mut(per * line_len).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (off, chunk) in batch.chunks_mut(line_len).enumerate() {
                    f(bi * per + off, chunk);
                }
            });
        }
    });
}

#[inline]
fn wrap(i: usize, d: isize, n: usize) -> usize {
    (i as isize + d).rem_euclid(n as isize) as usize
}

/// First derivative along `axis` into `out`.
pub fn ddx(grid: &Grid, f: &[f64], axis: Axis, threads: usize, out: &mut [f64]) {
    let n1 = grid.n1;
    match axis {
        Axis::X1 => {
            let h2 = 2.0 * grid.dx1;
            par_lines(threads, out, n1, |li, line| {
                let base = li * n1;
                let src = &f[base..base + n1];
                line[0] = (4.0 * (src[1] - src[0]) - (src[2] - src[0])) / h2;
                for i in 1..n1 - 1 {
                    line[i] = (src[i + 1] - src[i - 1]) / h2;
                }
                line[n1 - 1] =
                    (4.0 * (src[n1 - 1] - src[n1 - 2]) - (src[n1 - 1] - src[n1 - 3])) / h2;
            });
        }
        Axis::X2 => {
            if grid.n2 == 1 {
                out.fill(0.0);
                return;
            }
            let h2 = 2.0 * grid.dx2;
            let (n2, _n3) = (grid.n2, grid.n3);
            par_lines(threads, out, n1, |li, line| {
                let (j, k) = (li % n2, li / n2);
                let up = (wrap(j, 1, n2) + n2 * k) * n1;
                let dn = (wrap(j, -1, n2) + n2 * k) * n1;
                for i in 0..n1 {
                    line[i] = (f[up + i] - f[dn + i]) / h2;
                }
            });
        }
        Axis::X3 => {
            if grid.n3 == 1 {
                out.fill(0.0);
                return;
            }
            let h2 = 2.0 * grid.dx3;
            let (n2, n3) = (grid.n2, grid.n3);
            par_lines(threads, out, n1, |li, line| {
                let (j, k) = (li % n2, li / n2);
                let up = (j + n2 * wrap(k, 1, n3)) * n1;
                let dn = (j + n2 * wrap(k, -1, n3)) * n1;
                for i in 0..n1 {
                    line[i] = (f[up + i] - f[dn + i]) / h2;
                }
            });
        }
    }
}

/// Second derivative along `axis` into `out`.
pub fn d2dx(grid: &Grid, f: &[f64], axis: Axis, threads: usize, out: &mut [f64]) {
    let n1 = grid.n1;
    match axis {
        Axis::X1 => {
            let hh = grid.dx1 * grid.dx1;
            par_lines(threads, out, n1, |li, line| {
                let base = li * n1;
                let src = &f[base..base + n1];
                line[0] = (src[0] - 2.0 * src[1] + src[2]) / hh;
                for i in 1..n1 - 1 {
                    line[i] = (src[i + 1] - 2.0 * src[i] + src[i - 1]) / hh;
                }
                line[n1 - 1] = (src[n1 - 1] - 2.0 * src[n1 - 2] + src[n1 - 3]) / hh;
            });
        }
        Axis::X2 => {
            if grid.n2 == 1 {
                out.fill(0.0);
                return;
            }
            let hh = grid.dx2 * grid.dx2;
            let n2 = grid.n2;
            par_lines(threads, out, n1, |li, line| {
                let (j, k) = (li % n2, li / n2);
                let up = (wrap(j, 1, n2) + n2 * k) * n1;
                let dn = (wrap(j, -1, n2) + n2 * k) * n1;
                let mid = li * n1;
                for i in 0..n1 {
                    line[i] = (f[up + i] - 2.0 * f[mid + i] + f[dn + i]) / hh;
                }
            });
        }
        Axis::X3 => {
            if grid.n3 == 1 {
                out.fill(0.0);
                return;
            }
            let hh = grid.dx3 * grid.dx3;
            let (n2, n3) = (grid.n2, grid.n3);
            par_lines(threads, out, n1, |li, line| {
                let (j, k) = (li % n2, li / n2);
                let up = (j + n2 * wrap(k, 1, n3)) * n1;
                let dn = (j + n2 * wrap(k, -1, n3)) * n1;
                let mid = li * n1;
                for i in 0..n1 {
                    line[i] = (f[up + i] - 2.0 * f[mid + i] + f[dn + i]) / hh;
                }
            });
        }
    }
}

/// Upwind-biased second-order derivative of `f` along `axis`, with the bias
/// chosen pointwise by the sign of the advecting velocity `vel`.
pub fn upwind_ddx(grid: &Grid, f: &[f64], vel: &[f64], axis: Axis, threads: usize, out: &mut [f64]) {
    let n1 = grid.n1;
    match axis {
        Axis::X1 => {
            let h = grid.dx1;
            let h2 = 2.0 * h;
            par_lines(threads, out, n1, |li, line| {
                let base = li * n1;
                let src = &f[base..base + n1];
                let w = &vel[base..base + n1];
                for i in 0..n1 {
                    line[i] = if w[i] >= 0.0 {
                        if i >= 2 {
                            (4.0 * (src[i] - src[i - 1]) - (src[i] - src[i - 2])) / h2
                        } else {
                            (src[1] - src[0]) / h
                        }
                    } else if i + 2 < n1 {
                        (4.0 * (src[i + 1] - src[i]) - (src[i + 2] - src[i])) / h2
                    } else if i + 1 < n1 {
                        (src[i + 1] - src[i]) / h
                    } else {
                        (src[n1 - 1] - src[n1 - 2]) / h
                    };
                }
            });
        }
        Axis::X2 | Axis::X3 => {
            let (n2, n3) = (grid.n2, grid.n3);
            let (nt, ht) = if axis == Axis::X2 {
                (n2, grid.dx2)
            } else {
                (n3, grid.dx3)
            };
            if nt == 1 {
                out.fill(0.0);
                return;
            }
            let h2 = 2.0 * ht;
            par_lines(threads, out, n1, |li, line| {
                let (j, k) = (li % n2, li / n2);
                let at = |d: isize| -> usize {
                    match axis {
                        Axis::X2 => (wrap(j, d, n2) + n2 * k) * n1,
                        _ => (j + n2 * wrap(k, d, n3)) * n1,
                    }
                };
                let (m1, m2, p1, p2, mid) = (at(-1), at(-2), at(1), at(2), li * n1);
                let w = &vel[mid..mid + n1];
                for i in 0..n1 {
                    line[i] = if w[i] >= 0.0 {
                        (4.0 * (f[mid + i] - f[m1 + i]) - (f[mid + i] - f[m2 + i])) / h2
                    } else {
                        (4.0 * (f[p1 + i] - f[mid + i]) - (f[p2 + i] - f[mid + i])) / h2
                    };
                }
            });
        }
    }
}

/// Gradient: the three directional derivatives.
pub fn gradient(grid: &Grid, f: &[f64], threads: usize) -> [Vec<f64>; 3] {
    let mut g = [
        vec![0.0; f.len()],
        vec![0.0; f.len()],
        vec![0.0; f.len()],
    ];
    ddx(grid, f, Axis::X1, threads, &mut g[0]);
    ddx(grid, f, Axis::X2, threads, &mut g[1]);
    ddx(grid, f, Axis::X3, threads, &mut g[2]);
    g
}

/// Trapezoid integral along one axial line.
pub fn trapezoid_line(grid: &Grid, line: &[f64]) -> f64 {
    debug_assert_eq!(line.len(), grid.n1);
    let s = pairwise_sum(line);
    grid.dx1 * (s - 0.5 * (line[0] + line[grid.n1 - 1]))
}

/// Integral over the slab: trapezoid along x1, cell sums transversely.
pub fn integral_slab(grid: &Grid, f: &[f64]) -> f64 {
    let per_line: Vec<f64> = f
        .chunks(grid.n1)
        .map(|line| trapezoid_line(grid, line))
        .collect();
    pairwise_sum(&per_line) * grid.dx2 * grid.dx3
}

/// Integral along the axial direction only (for x1-line integrands).
pub fn integral_axial(grid: &Grid, line: &[f64]) -> f64 {
    trapezoid_line(grid, line)
}

/// sqrt of the slab integral of f^2.
pub fn l2_norm(grid: &Grid, f: &[f64]) -> f64 {
    let sq: Vec<f64> = f.iter().map(|x| x * x).collect();
    integral_slab(grid, &sq).max(0.0).sqrt()
}

pub fn sup_norm(f: &[f64]) -> f64 {
    f.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid3() -> Grid {
        Grid::new(-1.0, 1.0, 64, 8, 4).unwrap()
    }

    fn fill(grid: &Grid, f: impl Fn(f64, f64, f64) -> f64) -> Vec<f64> {
        let mut out = vec![0.0; grid.cells()];
        for k in 0..grid.n3 {
            for j in 0..grid.n2 {
                for i in 0..grid.n1 {
                    out[grid.idx(i, j, k)] = f(grid.x1(i), grid.x2(j), grid.x3(k));
                }
            }
        }
        out
    }

    #[test]
    fn pairwise_matches_naive_on_smooth_data() {
        let x: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin()).collect();
        let a = pairwise_sum(&x);
        let b: f64 = x.iter().sum();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn par_lines_is_thread_count_invariant() {
        let g = grid3();
        let f = fill(&g, |x, y, z| (3.0 * x).sin() + (2.0 * std::f64::consts::PI * y).cos() + z);
        let mut a = vec![0.0; g.cells()];
        let mut b = vec![0.0; g.cells()];
        ddx(&g, &f, Axis::X2, 1, &mut a);
        ddx(&g, &f, Axis::X2, 4, &mut b);
        assert_eq!(a, b);
    }

    #[test]
    fn derivatives_converge_second_order() {
        let exact = |x: f64| (1.3 * x).cos() * 1.3;
        let err_for = |n: usize| {
            let g = Grid::new_1d(-1.0, 1.0, n).unwrap();
            let f: Vec<f64> = (0..n).map(|i| (1.3 * g.x1(i)).sin()).collect();
            let mut d = vec![0.0; n];
            ddx(&g, &f, Axis::X1, 1, &mut d);
            let mut e = 0.0f64;
            for i in 0..n {
                e = e.max((d[i] - exact(g.x1(i))).abs());
            }
            e
        };
        let (e1, e2) = (err_for(101), err_for(201));
        assert!(e1 / e2 > 3.5, "ratio {}", e1 / e2);
    }

    #[test]
    fn transverse_derivative_is_periodic_and_zero_in_1d() {
        let g = grid3();
        let tau = 2.0 * std::f64::consts::PI;
        let f = fill(&g, |_x, y, _z| (tau * y).sin());
        let mut d = vec![0.0; g.cells()];
        ddx(&g, &f, Axis::X2, 1, &mut d);
        for k in 0..g.n3 {
            for j in 0..g.n2 {
                // discrete derivative of sin on n2=8 nodes: tau * cos * sin(tau h)/ (tau h)
                let h = g.dx2;
                let expect = (tau * g.x2(j)).cos() * (tau * h).sin() / h;
                let got = d[g.idx(10, j, k)];
                assert!((got - expect).abs() < 1e-12);
            }
        }
        let g1 = Grid::new_1d(0.0, 1.0, 32).unwrap();
        let f1 = vec![1.0; 32];
        let mut d1 = vec![7.0; 32];
        ddx(&g1, &f1, Axis::X2, 1, &mut d1);
        assert!(d1.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn upwind_picks_the_correct_bias() {
        let g = Grid::new_1d(0.0, 1.0, 64).unwrap();
        let f: Vec<f64> = (0..64).map(|i| g.x1(i) * g.x1(i)).collect();
        let plus = vec![1.0; 64];
        let minus = vec![-1.0; 64];
        let mut dp = vec![0.0; 64];
        let mut dm = vec![0.0; 64];
        upwind_ddx(&g, &f, &plus, Axis::X1, 1, &mut dp);
        upwind_ddx(&g, &f, &minus, Axis::X1, 1, &mut dm);
        // both are exact on quadratics in the interior (2nd order bias)
        for i in 3..61 {
            let exact = 2.0 * g.x1(i);
            assert!((dp[i] - exact).abs() < 1e-12);
            assert!((dm[i] - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn integral_and_norms() {
        let g = Grid::new_1d(0.0, 1.0, 2001).unwrap();
        let f: Vec<f64> = (0..g.n1).map(|i| g.x1(i)).collect();
        assert!((integral_slab(&g, &f) - 0.5).abs() < 1e-12);
        assert!((l2_norm(&g, &f) - (1.0f64 / 3.0).sqrt()).abs() < 1e-7);
        assert_eq!(sup_norm(&f), 1.0);
    }
}
