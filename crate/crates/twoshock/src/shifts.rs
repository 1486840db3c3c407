//! Weight functions, cutoff functions and the dynamical shift system.
//!
//! Each wave carries a weight
//!
//! ```text
//! a_i(xi) = 1 + nu_i (p(v_m) - p(v_i(xi))) / delta_i,
//! ```
//!
//! monotone across the layer with sigma_i^* a_i' > 0, and the composed
//! weight is a = a_1(x1 - sigma_1 t - X1) + a_2(x1 - sigma_2 t - X2) - 1.
//! The shifts (X1, X2) start at zero and solve
//!
//! ```text
//! Xdot_i = -(M / delta_i) [ Int a / sigma_i^* (h_i)' (p(v) - p(comp_v)) dx
//!                         - Int a (p(v_i))' (v - comp_v) dx ],
//! ```
//!
//! where the trace identity sigma_i^* h_i' = p(v_i)' removes h_i from the
//! quadrature: only profile pressure derivatives are needed. The gain is
//! M = c sigma_m^4 v_m^2 alpha_m with c = 5/4 by default (a 4/3 variant is
//! exercised by the acceptance suite).
//!
//! The engine advances the shifts through the same SSP-RK3 stages as the
//! flow, using the stage states the stepper already produced, so the flow
//! and the shifts are coupled rather than operator-split.

use crate::composite::{CompositeWave, Shifts};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::ops;
use crate::profile::ShockProfile;
use crate::solver::{lab_coords, FlowState, StepHook, StepStages};

/// Weight magnitudes for the two waves.
#[derive(Debug, Clone, Copy)]
pub struct WeightSpec {
    pub nu1: f64,
    pub nu2: f64,
}

impl WeightSpec {
    pub fn new(nu1: f64, nu2: f64) -> Result<Self> {
        for nu in [nu1, nu2] {
            if !(nu > 0.0 && nu < 0.25) {
                return Err(Error::Config(format!(
                    "weight magnitude must lie in (0, 1/4), got {nu}"
                )));
            }
        }
        Ok(Self { nu1, nu2 })
    }

    /// Default rule nu_i = sqrt(delta_i), clamped below 1/4 so the weights
    /// stay admissible at desk-scale strengths.
    pub fn defaults(delta1: f64, delta2: f64) -> Self {
        Self {
            nu1: delta1.sqrt().min(0.24),
            nu2: delta2.sqrt().min(0.24),
        }
    }

    pub fn nu(&self, family_index: usize) -> f64 {
        if family_index == 0 {
            self.nu1
        } else {
            self.nu2
        }
    }

    pub fn total(&self) -> f64 {
        self.nu1 + self.nu2
    }
}

/// Single-wave weight a_i(xi) in [1, 1 + nu].
pub fn weight_single(profile: &ShockProfile, nu: f64, xi: f64) -> f64 {
    let params = profile.params();
    let p_mid = params.pressure(profile.intermediate().v);
    1.0 + nu * (p_mid - params.pressure(profile.v(xi))) / profile.delta()
}

/// d a_i / d xi = -(nu/delta) d p(v_i)/d xi.
pub fn dweight_single(profile: &ShockProfile, nu: f64, xi: f64) -> f64 {
    -nu / profile.delta() * profile.dp(xi)
}

/// Composed weight a(t, x1) under the given shifts; continuously
/// differentiable in (x1, X1, X2) because the profile interpolants are C1.
pub fn weight_composed(
    wave: &CompositeWave,
    spec: &WeightSpec,
    t: f64,
    x1: f64,
    shifts: Shifts,
) -> f64 {
    let (xi1, xi2) = wave.xi(t, x1, shifts);
    weight_single(wave.wave1(), spec.nu1, xi1) + weight_single(wave.wave2(), spec.nu2, xi2) - 1.0
}

/// d a / d x1 of the composed weight.
pub fn dweight_composed(
    wave: &CompositeWave,
    spec: &WeightSpec,
    t: f64,
    x1: f64,
    shifts: Shifts,
) -> f64 {
    let (xi1, xi2) = wave.xi(t, x1, shifts);
    dweight_single(wave.wave1(), spec.nu1, xi1) + dweight_single(wave.wave2(), spec.nu2, xi2)
}

/// Linear partition of unity separating the two wave neighbourhoods:
/// phi1 = 1 left of (3 sigma1 + sigma2) t / 4, 0 right of
/// (sigma1 + 3 sigma2) t / 4, linear between; phi2 = 1 - phi1. At t = 0
/// the ramp degenerates to the half-open indicator of x1 <= 0.
pub fn cutoffs(t: f64, x1: f64, sigma1: f64, sigma2: f64) -> (f64, f64) {
    debug_assert!(sigma1 < sigma2);
    debug_assert!(t >= 0.0);
    if t <= 0.0 {
        return if x1 <= 0.0 { (1.0, 0.0) } else { (0.0, 1.0) };
    }
    let lo = 0.25 * (3.0 * sigma1 + sigma2) * t;
    let hi = 0.25 * (sigma1 + 3.0 * sigma2) * t;
    let phi1 = if x1 <= lo {
        1.0
    } else if x1 >= hi {
        0.0
    } else {
        (hi - x1) / (hi - lo)
    };
    (phi1, 1.0 - phi1)
}

/// Reference constants of the shift system at the intermediate state.
#[derive(Debug, Clone, Copy)]
pub struct ShiftConstants {
    pub sigma_m: f64,
    pub alpha_m: f64,
    /// coefficient c in M = c sigma_m^4 v_m^2 alpha_m
    pub coefficient: f64,
    /// the gain M itself
    pub gain: f64,
}

impl ShiftConstants {
    pub fn with_coefficient(
        params: &crate::fluid::FluidParams,
        v_m: f64,
        coefficient: f64,
    ) -> Self {
        let sigma_m = params.sigma_ref(v_m);
        let alpha_m = params.alpha_ref(v_m);
        Self {
            sigma_m,
            alpha_m,
            coefficient,
            gain: coefficient * sigma_m.powi(4) * v_m * v_m * alpha_m,
        }
    }

    /// The default gain coefficient 5/4.
    pub fn standard(params: &crate::fluid::FluidParams, v_m: f64) -> Self {
        Self::with_coefficient(params, v_m, 1.25)
    }
}

/// Current shifts, their rates, and the constants of the system.
#[derive(Debug, Clone, Copy)]
pub struct ShiftState {
    pub x1: f64,
    pub x2: f64,
    pub xdot1: f64,
    pub xdot2: f64,
    pub constants: ShiftConstants,
}

impl ShiftState {
    pub fn at_rest(constants: ShiftConstants) -> Self {
        Self {
            x1: 0.0,
            x2: 0.0,
            xdot1: 0.0,
            xdot2: 0.0,
            constants,
        }
    }

    pub fn shifts(&self) -> Shifts {
        (self.x1, self.x2)
    }
}

/// Quadrature context for the shift right-hand side.
pub struct ShiftQuadrature<'a> {
    pub wave: &'a CompositeWave,
    pub grid: &'a Grid,
    pub weights: WeightSpec,
    pub constants: ShiftConstants,
    pub frame_speed: f64,
    buf_line: Vec<f64>,
}

impl<'a> ShiftQuadrature<'a> {
    pub fn new(
        wave: &'a CompositeWave,
        grid: &'a Grid,
        weights: WeightSpec,
        constants: ShiftConstants,
        frame_speed: f64,
    ) -> Result<Self> {
        // each layer must span at least eight axial cells
        for prof in [wave.wave1(), wave.wave2()] {
            let (rl, rr) = prof.tail_rates();
            let layer = 1.0 / rl.max(rr);
            let cells = layer / grid.dx1;
            if cells < 8.0 {
                return Err(Error::QuadratureUnderresolved(format!(
                    "a {}-shock layer of width {layer:.3} spans only {cells:.1} cells of dx1 = {}",
                    prof.family(),
                    grid.dx1
                )));
            }
        }
        Ok(Self {
            wave,
            grid,
            weights,
            constants,
            frame_speed,
            buf_line: vec![0.0; grid.n1],
        })
    }

    /// (Xdot1, Xdot2) for the given flow state and shifts. The state's own
    /// time stamp selects the wave positions.
    pub fn shift_rhs(&mut self, state: &FlowState, shifts: Shifts) -> (f64, f64) {
        let g = self.grid;
        let t = state.t;
        let n1 = g.n1;
        let wave = self.wave;
        let params = wave.params();
        let x_lab = lab_coords(g, self.frame_speed, t);

        // axial precomputation
        let mut comp_v = vec![0.0; n1];
        let mut a_w = vec![0.0; n1];
        let mut dp = [vec![0.0; n1], vec![0.0; n1]];
        for i in 0..n1 {
            let x = x_lab[i];
            comp_v[i] = wave.v(t, x, shifts);
            a_w[i] = weight_composed(wave, &self.weights, t, x, shifts);
            let (xi1, xi2) = wave.xi(t, x, shifts);
            dp[0][i] = wave.wave1().dp(xi1);
            dp[1][i] = wave.wave2().dp(xi2);
        }

        let mut out = [0.0f64; 2];
        for fam in 0..2 {
            let prof = if fam == 0 { wave.wave1() } else { wave.wave2() };
            let s_star = prof.sigma_star();
            let inv_ss2 = 1.0 / (s_star * s_star);
            // both integrals in one pass: I = I1 - I2 with
            // I1 = Int (a / sigma*^2) p(v_i)' (p(v) - p(comp)),
            // I2 = Int a p(v_i)' (v - comp)
            let mut per_line = Vec::with_capacity(g.lines());
            for line in 0..g.lines() {
                let base = line * n1;
                let buf = &mut self.buf_line;
                for i in 0..n1 {
                    let v = state.v[base + i];
                    let dpv = params.pressure(v) - params.pressure(comp_v[i]);
                    let dv = v - comp_v[i];
                    buf[i] = a_w[i] * dp[fam][i] * (inv_ss2 * dpv - dv);
                }
                per_line.push(ops::trapezoid_line(g, buf));
            }
            let integral = ops::pairwise_sum(&per_line) * g.dx2 * g.dx3;
            out[fam] = -self.constants.gain / prof.delta() * integral;
        }
        (out[0], out[1])
    }

    /// Sup-norm deviation of (v, u) from the shifted composite.
    pub fn sup_deviation(&self, state: &FlowState, shifts: Shifts) -> (f64, f64) {
        let g = self.grid;
        let x_lab = lab_coords(g, self.frame_speed, state.t);
        let mut comp = vec![(0.0, 0.0); g.n1];
        for i in 0..g.n1 {
            let (v, u, _) = self.wave.eval(state.t, x_lab[i], shifts);
            comp[i] = (v, u);
        }
        let mut sv = 0.0f64;
        let mut su = 0.0f64;
        for line in 0..g.lines() {
            let base = line * g.n1;
            for i in 0..g.n1 {
                sv = sv.max((state.v[base + i] - comp[i].0).abs());
                su = su
                    .max((state.u[0][base + i] - comp[i].1).abs())
                    .max(state.u[1][base + i].abs())
                    .max(state.u[2][base + i].abs());
            }
        }
        (sv, su)
    }

    /// Separation margins of the shifted wave positions against the cutoff
    /// breakpoints: both nonnegative while the shifts stay admissible.
    pub fn separation_margins(&self, t: f64, shifts: Shifts) -> (f64, f64) {
        let (s1, s2) = (self.wave.sigma1(), self.wave.sigma2());
        let left = 0.25 * (3.0 * s1 + s2) * t - (shifts.0 + s1 * t);
        let right = (shifts.1 + s2 * t) - 0.25 * (s1 + 3.0 * s2) * t;
        (left, right)
    }
}

/// One row of the per-step shift log.
#[derive(Debug, Clone, Copy)]
pub struct ShiftLogRow {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    pub xdot1: f64,
    pub xdot2: f64,
    pub sep_margin_left: f64,
    pub sep_margin_right: f64,
    pub sup_perturbation: f64,
}

/// Step hook that co-integrates the shift system with the flow.
pub struct ShiftEngine<'a> {
    pub quad: ShiftQuadrature<'a>,
    pub state: ShiftState,
    pub log: Vec<ShiftLogRow>,
    pub max_xdot: f64,
    pub separation_violations: usize,
}

impl<'a> ShiftEngine<'a> {
    pub fn new(quad: ShiftQuadrature<'a>, constants: ShiftConstants) -> Self {
        Self {
            quad,
            state: ShiftState::at_rest(constants),
            log: Vec::new(),
            max_xdot: 0.0,
            separation_violations: 0,
        }
    }

    /// Records the t = 0 row; call once with the initial state.
    pub fn record_initial(&mut self, state0: &FlowState) {
        let (xd1, xd2) = self.quad.shift_rhs(state0, self.state.shifts());
        self.state.xdot1 = xd1;
        self.state.xdot2 = xd2;
        self.push_row(state0);
    }

    fn push_row(&mut self, state: &FlowState) {
        let shifts = self.state.shifts();
        let (ml, mr) = self.quad.separation_margins(state.t, shifts);
        let (sv, su) = self.quad.sup_deviation(state, shifts);
        let tol = 1e-12 * (1.0 + state.t.abs());
        if ml < -tol || mr < -tol {
            self.separation_violations += 1;
        }
        self.max_xdot = self
            .max_xdot
            .max(self.state.xdot1.abs())
            .max(self.state.xdot2.abs());
        self.log.push(ShiftLogRow {
            t: state.t,
            x1: self.state.x1,
            x2: self.state.x2,
            xdot1: self.state.xdot1,
            xdot2: self.state.xdot2,
            sep_margin_left: ml,
            sep_margin_right: mr,
            sup_perturbation: sv.max(su),
        });
    }
}

impl StepHook for ShiftEngine<'_> {
    fn on_step(&mut self, stages: &StepStages<'_>) -> Result<()> {
        let dt = stages.dt;
        let x0 = [self.state.x1, self.state.x2];
        // same Shu-Osher combination as the flow, on the flow's stage states
        let k0 = self.quad.shift_rhs(stages.s0, (x0[0], x0[1]));
        let xa = [x0[0] + dt * k0.0, x0[1] + dt * k0.1];
        let k1 = self.quad.shift_rhs(stages.s1, (xa[0], xa[1]));
        let xb = [
            0.75 * x0[0] + 0.25 * (xa[0] + dt * k1.0),
            0.75 * x0[1] + 0.25 * (xa[1] + dt * k1.1),
        ];
        let k2 = self.quad.shift_rhs(stages.s2, (xb[0], xb[1]));
        self.state.x1 = x0[0] / 3.0 + 2.0 / 3.0 * (xb[0] + dt * k2.0);
        self.state.x2 = x0[1] / 3.0 + 2.0 / 3.0 * (xb[1] + dt * k2.1);
        let (xd1, xd2) = self
            .quad
            .shift_rhs(stages.s_new, (self.state.x1, self.state.x2));
        self.state.xdot1 = xd1;
        self.state.xdot2 = xd2;
        self.push_row(stages.s_new);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fluid::FluidParams;
    use crate::profile::solve_profile;
    use crate::riemann::{hugoniot_velocity, solve_intermediate_state, EndState, Family};

    fn setup() -> (FluidParams, CompositeWave) {
        let p = FluidParams::gamma_law(2.0, 0.1, 0.0).unwrap();
        let left = EndState::new(1.0, 0.0);
        let u_m = hugoniot_velocity(Family::One, left, 0.9, &p);
        let dp = p.pressure(0.9) - 1.0;
        let right = EndState::new(1.0, u_m - (dp * 0.1).sqrt());
        let cfg = solve_intermediate_state(left, right, &p).unwrap();
        let w1 = solve_profile(Family::One, &cfg, &p, 30.0, 6001).unwrap();
        let w2 = solve_profile(Family::Two, &cfg, &p, 30.0, 6001).unwrap();
        (p, CompositeWave::new(w1, w2).unwrap())
    }

    #[test]
    fn weight_endpoints() {
        let (_p, cw) = setup();
        let spec = WeightSpec::new(0.1, 0.2).unwrap();
        // 1-shock: left end 1 + nu, right end 1
        let a1l = weight_single(cw.wave1(), spec.nu1, -1e9);
        let a1r = weight_single(cw.wave1(), spec.nu1, 1e9);
        assert!((a1l - 1.1).abs() < 1e-7);
        assert!((a1r - 1.0).abs() < 1e-7);
        // 2-shock: left end 1, right end 1 + nu
        let a2l = weight_single(cw.wave2(), spec.nu2, -1e9);
        let a2r = weight_single(cw.wave2(), spec.nu2, 1e9);
        assert!((a2l - 1.0).abs() < 1e-7);
        assert!((a2r - 1.2).abs() < 1e-7);
        // composed: far left 1+nu1, far right 1+nu2, middle 1
        let far_l = weight_composed(&cw, &spec, 0.0, -1e9, (0.0, 0.0));
        let far_r = weight_composed(&cw, &spec, 0.0, 1e9, (0.0, 0.0));
        assert!((far_l - 1.1).abs() < 1e-7);
        assert!((far_r - 1.2).abs() < 1e-7);
        let mid = weight_composed(&cw, &spec, 20.0, 0.5 * (cw.sigma1() + cw.sigma2()) * 20.0, (0.0, 0.0));
        assert!((mid - 1.0).abs() < 1e-3);
    }

    #[test]
    fn weight_slope_sign_and_mass() {
        let (_p, cw) = setup();
        let nu = 0.15;
        for prof in [cw.wave1(), cw.wave2()] {
            // sigma* a' > 0 across the layer
            for xi in [-3.0, -1.0, 0.0, 1.0, 3.0] {
                let da = dweight_single(prof, nu, xi);
                assert!(prof.sigma_star() * da > 0.0, "family {}", prof.family());
            }
            // the L1 mass of a' is exactly nu (a is monotone between its limits)
            let mut mass = 0.0;
            let m = 60_000;
            let h = 60.0 / m as f64;
            for i in 0..m {
                let xi = -30.0 + (i as f64 + 0.5) * h;
                mass += dweight_single(prof, nu, xi).abs() * h;
            }
            assert!((mass - nu).abs() < 1e-6, "mass {mass}");
        }
    }

    #[test]
    fn composed_weight_derivative_matches_finite_differences() {
        let (_p, cw) = setup();
        let spec = WeightSpec::defaults(cw.wave1().delta(), cw.wave2().delta());
        let t = 3.0;
        let shifts = (0.3, -0.2);
        for x in [-5.0, -1.0, 0.0, 0.7, 4.0] {
            let h = 1e-6;
            let fd = (weight_composed(&cw, &spec, t, x + h, shifts)
                - weight_composed(&cw, &spec, t, x - h, shifts))
                / (2.0 * h);
            let an = dweight_composed(&cw, &spec, t, x, shifts);
            assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "x = {x}");
        }
    }

    #[test]
    fn cutoff_partition_and_ramp() {
        let (s1, s2) = (-1.5315609724544690, 1.2252487779635752);
        // breakpoint (3 s1 + s2)/4 = -0.84235853...; x = -1 sits left of it
        let (p1, p2) = cutoffs(1.0, -1.0, s1, s2);
        assert_eq!(p1, 1.0);
        assert_eq!(p2, 0.0);
        // partition of unity and ramp slope 2/((s2-s1) t)
        let t = 2.0;
        let mut prev = f64::INFINITY;
        let mut x = -3.0;
        while x < 3.0 {
            let (a, b) = cutoffs(t, x, s1, s2);
            assert!((a + b - 1.0).abs() < 1e-15);
            assert!(a <= prev + 1e-15);
            prev = a;
            x += 0.01;
        }
        let xm = 0.25 * (3.0 * s1 + s2) * t + 0.1;
        let h = 1e-6;
        let slope = (cutoffs(t, xm + h, s1, s2).0 - cutoffs(t, xm - h, s1, s2).0) / (2.0 * h);
        let expect = -2.0 / ((s2 - s1) * t);
        assert!((slope - expect).abs() < 1e-6);
        // degenerate ramp at t = 0: half-open indicator with phi1(0,0) = 1
        assert_eq!(cutoffs(0.0, 0.0, s1, s2).0, 1.0);
        assert_eq!(cutoffs(0.0, 1e-9, s1, s2).0, 0.0);
        assert_eq!(cutoffs(0.0, -1e-9, s1, s2).0, 1.0);
    }

    #[test]
    fn zero_perturbation_rhs_is_exactly_zero() {
        let (p, cw) = setup();
        let grid = Grid::new_1d(-20.0, 20.0, 900).unwrap();
        let constants = ShiftConstants::standard(&p, cw.mid().v);
        let weights = WeightSpec::defaults(cw.wave1().delta(), cw.wave2().delta());
        let mut quad = ShiftQuadrature::new(&cw, &grid, weights, constants, 0.0).unwrap();
        for &(t, shifts) in &[(0.0, (0.0, 0.0)), (2.5, (0.4, -0.7))] {
            let n = grid.cells();
            let mut state = FlowState {
                t,
                v: vec![0.0; n],
                u: [vec![0.0; n], vec![0.0; n], vec![0.0; n]],
            };
            for i in 0..grid.n1 {
                let (v, u, _) = cw.eval(t, grid.x1(i), shifts);
                state.v[i] = v;
                state.u[0][i] = u;
            }
            let (xd1, xd2) = quad.shift_rhs(&state, shifts);
            assert_eq!(xd1, 0.0);
            assert_eq!(xd2, 0.0);
        }
    }

    #[test]
    fn distant_perturbation_moves_nothing() {
        let (p, cw) = setup();
        let grid = Grid::new_1d(-60.0, 60.0, 2400).unwrap();
        let constants = ShiftConstants::standard(&p, cw.mid().v);
        let weights = WeightSpec::defaults(cw.wave1().delta(), cw.wave2().delta());
        let mut quad = ShiftQuadrature::new(&cw, &grid, weights, constants, 0.0).unwrap();
        let n = grid.cells();
        let mut state = FlowState {
            t: 0.0,
            v: vec![0.0; n],
            u: [vec![0.0; n], vec![0.0; n], vec![0.0; n]],
        };
        let mut near = state.clone();
        for i in 0..grid.n1 {
            let x = grid.x1(i);
            let (v, u, _) = cw.eval(0.0, x, (0.0, 0.0));
            state.v[i] = v;
            state.u[0][i] = u;
            near.v[i] = v;
            near.u[0][i] = u;
            // bump far outside both layers' e-folding regions vs one on top
            let bump = |c: f64| {
                let r: f64 = (x - c) / 2.0;
                if r.abs() < 1.0 {
                    0.01 * (1.0 - 1.0 / (1.0 - r * r)).exp()
                } else {
                    0.0
                }
            };
            state.v[i] += bump(45.0);
            near.v[i] += bump(0.0);
        }
        let (fd1, fd2) = quad.shift_rhs(&state, (0.0, 0.0));
        let (nd1, nd2) = quad.shift_rhs(&near, (0.0, 0.0));
        let far = fd1.abs().max(fd2.abs());
        let close = nd1.abs().max(nd2.abs());
        assert!(far < 1e-12, "far bump gave {far:e}");
        assert!(close > 1e-4, "near bump gave {close:e}");
    }

    #[test]
    fn shift_rhs_is_translation_consistent() {
        let (p, cw) = setup();
        let grid = Grid::new_1d(-40.0, 40.0, 1600).unwrap();
        let dx = grid.dx1;
        let s = 20.0 * dx; // a whole number of cells
        let constants = ShiftConstants::standard(&p, cw.mid().v);
        let weights = WeightSpec::defaults(cw.wave1().delta(), cw.wave2().delta());
        let mut quad = ShiftQuadrature::new(&cw, &grid, weights, constants, 0.0).unwrap();
        let build = |shift: f64| {
            let n = grid.cells();
            let mut st = FlowState {
                t: 0.0,
                v: vec![0.0; n],
                u: [vec![0.0; n], vec![0.0; n], vec![0.0; n]],
            };
            for i in 0..grid.n1 {
                let x = grid.x1(i);
                let (v, u, _) = cw.eval(0.0, x, (shift, shift));
                st.v[i] = v;
                st.u[0][i] = u;
                let r: f64 = (x - 1.5 - shift) / 2.0;
                if r.abs() < 1.0 {
                    st.v[i] += 0.01 * (1.0 - 1.0 / (1.0 - r * r)).exp();
                }
            }
            st
        };
        let (a1, a2) = quad.shift_rhs(&build(0.0), (0.0, 0.0));
        let (b1, b2) = quad.shift_rhs(&build(s), (s, s));
        assert!((a1 - b1).abs() < 1e-10 * (1.0 + a1.abs()), "{a1} vs {b1}");
        assert!((a2 - b2).abs() < 1e-10 * (1.0 + a2.abs()), "{a2} vs {b2}");
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let (p, cw) = setup();
        let grid = Grid::new_1d(-40.0, 40.0, 64).unwrap();
        let constants = ShiftConstants::standard(&p, cw.mid().v);
        let weights = WeightSpec::defaults(cw.wave1().delta(), cw.wave2().delta());
        assert!(matches!(
            ShiftQuadrature::new(&cw, &grid, weights, constants, 0.0),
            Err(Error::QuadratureUnderresolved(_))
        ));
    }

    #[test]
    fn gain_constant_variants() {
        let p = FluidParams::gamma_law(2.0, 0.1, 0.0).unwrap();
        let std = ShiftConstants::standard(&p, 0.9);
        let alt = ShiftConstants::with_coefficient(&p, 0.9, 4.0 / 3.0);
        assert!(std.gain > 0.0 && std.sigma_m > 0.0 && std.alpha_m > 0.0);
        assert!((alt.gain / std.gain - (4.0 / 3.0) / 1.25).abs() < 1e-14);
    }
}
