//! Method-of-lines solver for the barotropic system in specific-volume
//! form on the slab,
//!
//! ```text
//! rho (v_t + u . grad v) = div u,
//! rho (u_t + u . grad u) + grad p(v) = (2mu+lambda) grad div u - mu curl curl u,
//! ```
//!
//! with rho = 1/v. The viscous operator is assembled as
//! (mu+lambda) grad div u + mu Lap u, which is the same decomposition with
//! the rotational part carried implicitly. Spatial discretization is
//! second-order centered for pressure and viscous terms and upwind-biased
//! second-order for advection; time stepping is explicit SSP-RK3. The outer
//! tenth of the axial domain relaxes toward the prescribed far-field states
//! (sponge), and an optional Galilean reframing subtracts a constant speed
//! from the advecting velocity.
//!
//! Everything is deterministic: identical inputs produce bit-identical
//! trajectories for a fixed grid, and the thread count only changes who
//! computes which axial line, not any arithmetic.

use crate::composite::CompositeWave;
use crate::error::{Error, Result};
use crate::fluid::FluidParams;
use crate::grid::Grid;
use crate::ops::{self, Axis};
use crate::profile::ShockProfile;
use crate::riemann::EndState;

/// Discrete fields at one time instant.
#[derive(Debug, Clone)]
pub struct FlowState {
    pub t: f64,
    pub v: Vec<f64>,
    pub u: [Vec<f64>; 3],
}

impl FlowState {
    pub fn constant(grid: &Grid, state: EndState) -> Self {
        let n = grid.cells();
        Self {
            t: 0.0,
            v: vec![state.v; n],
            u: [vec![state.u; n], vec![0.0; n], vec![0.0; n]],
        }
    }

    pub fn min_v(&self) -> f64 {
        self.v.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_v(&self) -> f64 {
        self.v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Sponge zone: relaxation toward the far-field states over the outer
/// fraction of the axial domain, with a quadratic ramp.
#[derive(Debug, Clone, Copy)]
pub struct SpongeSpec {
    pub fraction: f64,
    /// 0 selects an automatic strength of four crossing rates of the zone.
    pub strength: f64,
}

impl Default for SpongeSpec {
    fn default() -> Self {
        Self {
            fraction: 0.10,
            strength: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub params: FluidParams,
    pub grid: Grid,
    pub far_left: EndState,
    pub far_right: EndState,
    pub cfl_safety: f64,
    pub sponge: SpongeSpec,
    /// Galilean reframing speed; grid coordinates then satisfy
    /// x1_lab = x1 + frame_speed * t. Default 0.
    pub frame_speed: f64,
    pub threads: usize,
}

impl SolverConfig {
    pub fn new(params: FluidParams, grid: Grid, far_left: EndState, far_right: EndState) -> Self {
        Self {
            params,
            grid,
            far_left,
            far_right,
            cfl_safety: 0.4,
            sponge: SpongeSpec::default(),
            frame_speed: 0.0,
            threads: 1,
        }
    }
}

/// Time derivative of a [`FlowState`].
#[derive(Debug, Clone)]
pub struct FlowDeriv {
    pub dv: Vec<f64>,
    pub du: [Vec<f64>; 3],
}

struct Workspace {
    p: Vec<f64>,
    divu: Vec<f64>,
    w1: Vec<f64>,
    scratch_a: Vec<f64>,
    scratch_b: Vec<f64>,
    scratch_c: Vec<f64>,
    adv: Vec<f64>,
}

/// Axial sponge profile: strength and target state per axial node.
struct Sponge {
    s: Vec<f64>,
    v_tgt: Vec<f64>,
    u_tgt: Vec<f64>,
    s_max: f64,
}

pub struct Solver {
    pub cfg: SolverConfig,
    ws: Workspace,
    sponge: Sponge,
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Result<Self> {
        if !(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0) {
            return Err(Error::Config(format!(
                "cfl_safety must lie in (0, 1], got {}",
                cfg.cfl_safety
            )));
        }
        if !(cfg.sponge.fraction >= 0.0 && cfg.sponge.fraction < 0.5) {
            return Err(Error::Config(format!(
                "sponge fraction must lie in [0, 0.5), got {}",
                cfg.sponge.fraction
            )));
        }
        let n = cfg.grid.cells();
        let ws = Workspace {
            p: vec![0.0; n],
            divu: vec![0.0; n],
            w1: vec![0.0; n],
            scratch_a: vec![0.0; n],
            scratch_b: vec![0.0; n],
            scratch_c: vec![0.0; n],
            adv: vec![0.0; n],
        };
        let sponge = build_sponge(&cfg)?;
        Ok(Self { cfg, ws, sponge })
    }

    pub fn grid(&self) -> &Grid {
        &self.cfg.grid
    }

    /// Largest stable step for the current state, with the configured
    /// safety factor applied.
    pub fn stable_dt(&self, state: &FlowState) -> f64 {
        let g = &self.cfg.grid;
        let p = &self.cfg.params;
        let vmax = state.max_v().max(1e-300);
        let cmax = p.sound_speed(state.min_v().max(1e-300)).max(p.sound_speed(vmax));
        let mut speed1 = 0.0f64;
        for &u in &state.u[0] {
            speed1 = speed1.max((u - self.cfg.frame_speed).abs());
        }
        let speed2 = ops::sup_norm(&state.u[1]);
        let speed3 = ops::sup_norm(&state.u[2]);
        let mut inv_adv = (speed1 + cmax) / g.dx1;
        if g.n2 > 1 {
            inv_adv += (speed2 + cmax) / g.dx2;
        }
        if g.n3 > 1 {
            inv_adv += (speed3 + cmax) / g.dx3;
        }
        let nu = vmax * self.cfg.params.eff_visc();
        let mut inv_diff = 1.0 / (g.dx1 * g.dx1);
        if g.n2 > 1 {
            inv_diff += 1.0 / (g.dx2 * g.dx2);
        }
        if g.n3 > 1 {
            inv_diff += 1.0 / (g.dx3 * g.dx3);
        }
        let dt_adv = 1.0 / inv_adv.max(1e-300);
        let dt_diff = 1.0 / (2.0 * nu * inv_diff).max(1e-300);
        let dt_sponge = if self.sponge.s_max > 0.0 {
            1.0 / self.sponge.s_max
        } else {
            f64::INFINITY
        };
        self.cfg.cfl_safety * dt_adv.min(dt_diff).min(dt_sponge)
    }

    /// Semi-discrete spatial operator.
    pub fn rhs(&mut self, state: &FlowState) -> FlowDeriv {
        let g = self.cfg.grid;
        let params = self.cfg.params;
        let threads = self.cfg.threads;
        let n = g.cells();
        let n1 = g.n1;
        let (mu, lam) = (params.mu(), params.lambda_visc());

        let ws = &mut self.ws;
        // pressure and advecting axial velocity
        ops::par_lines(threads, &mut ws.p, n1, |li, line| {
            let base = li * n1;
            for i in 0..n1 {
                line[i] = params.pressure(state.v[base + i]);
            }
        });
        let frame = self.cfg.frame_speed;
        ops::par_lines(threads, &mut ws.w1, n1, |li, line| {
            let base = li * n1;
            for i in 0..n1 {
                line[i] = state.u[0][base + i] - frame;
            }
        });

        // div u
        ops::ddx(&g, &state.u[0], Axis::X1, threads, &mut ws.scratch_a);
        ops::ddx(&g, &state.u[1], Axis::X2, threads, &mut ws.scratch_b);
        ops::ddx(&g, &state.u[2], Axis::X3, threads, &mut ws.scratch_c);
        for i in 0..n {
            ws.divu[i] = ws.scratch_a[i] + ws.scratch_b[i] + ws.scratch_c[i];
        }

        let advect = |ws: &mut Workspace, f: &[f64], state: &FlowState| {
            ops::upwind_ddx(&g, f, &ws.w1, Axis::X1, threads, &mut ws.scratch_a);
            ops::upwind_ddx(&g, f, &state.u[1], Axis::X2, threads, &mut ws.scratch_b);
            ops::upwind_ddx(&g, f, &state.u[2], Axis::X3, threads, &mut ws.scratch_c);
            for i in 0..ws.adv.len() {
                ws.adv[i] = ws.w1[i] * ws.scratch_a[i]
                    + state.u[1][i] * ws.scratch_b[i]
                    + state.u[2][i] * ws.scratch_c[i];
            }
        };

        // volume equation: v_t = -u.grad v + v div u - sponge
        let mut dv = vec![0.0; n];
        advect(ws, &state.v, state);
        {
            let sponge = &self.sponge;
            let ws = &*ws;
            ops::par_lines(threads, &mut dv, n1, |li, line| {
                let base = li * n1;
                for i in 0..n1 {
                    let id = base + i;
                    line[i] = -ws.adv[id] + state.v[id] * ws.divu[id]
                        - sponge.s[i] * (state.v[id] - sponge.v_tgt[i]);
                }
            });
        }

        // momentum: u_t = -u.grad u + v(-grad p + (mu+lam) grad div u + mu Lap u) - sponge
        let mut du = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        for comp in 0..3 {
            let axis = [Axis::X1, Axis::X2, Axis::X3][comp];
            advect(ws, &state.u[comp], state);
            // grad_j p and grad_j div u share scratch buffers after advection
            ops::ddx(&g, &ws.p, axis, threads, &mut ws.scratch_a);
            ops::ddx(&g, &ws.divu, axis, threads, &mut ws.scratch_b);
            // laplacian of u_comp accumulated in scratch_c
            let mut lap = vec![0.0; n];
            ops::d2dx(&g, &state.u[comp], Axis::X1, threads, &mut ws.scratch_c);
            for i in 0..n {
                lap[i] = ws.scratch_c[i];
            }
            ops::d2dx(&g, &state.u[comp], Axis::X2, threads, &mut ws.scratch_c);
            for i in 0..n {
                lap[i] += ws.scratch_c[i];
            }
            ops::d2dx(&g, &state.u[comp], Axis::X3, threads, &mut ws.scratch_c);
            for i in 0..n {
                lap[i] += ws.scratch_c[i];
            }
            let sponge = &self.sponge;
            let ws = &*ws;
            let out = &mut du[comp];
            ops::par_lines(threads, out, n1, |li, line| {
                let base = li * n1;
                for i in 0..n1 {
                    let id = base + i;
                    let visc = (mu + lam) * ws.scratch_b[id] + mu * lap[id];
                    let target = if comp == 0 { sponge.u_tgt[i] } else { 0.0 };
                    line[i] = -ws.adv[id] + state.v[id] * (-ws.scratch_a[id] + visc)
                        - sponge.s[i] * (state.u[comp][id] - target);
                }
            });
        }

        FlowDeriv { dv, du }
    }

    /// The rotational part of the viscous operator, mu curl curl u,
    /// assembled from two discrete curls. Identically zero for planar
    /// axial flow, where every centered curl component vanishes exactly.
    pub fn rotational_viscous_part(&mut self, state: &FlowState) -> [Vec<f64>; 3] {
        let g = self.cfg.grid;
        let threads = self.cfg.threads;
        let mu = self.cfg.params.mu();
        let curl = |f: &[Vec<f64>; 3]| -> [Vec<f64>; 3] {
            let n = g.cells();
            let mut out = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
            let mut a = vec![0.0; n];
            let mut b = vec![0.0; n];
            ops::ddx(&g, &f[2], Axis::X2, threads, &mut a);
            ops::ddx(&g, &f[1], Axis::X3, threads, &mut b);
            for i in 0..n {
                out[0][i] = a[i] - b[i];
            }
            ops::ddx(&g, &f[0], Axis::X3, threads, &mut a);
            ops::ddx(&g, &f[2], Axis::X1, threads, &mut b);
            for i in 0..n {
                out[1][i] = a[i] - b[i];
            }
            ops::ddx(&g, &f[1], Axis::X1, threads, &mut a);
            ops::ddx(&g, &f[0], Axis::X2, threads, &mut b);
            for i in 0..n {
                out[2][i] = a[i] - b[i];
            }
            out
        };
        let mut out = curl(&curl(&state.u));
        for c in 0..3 {
            for x in out[c].iter_mut() {
                *x *= mu;
            }
        }
        out
    }

    fn euler_combine(a: &FlowState, deriv: &FlowDeriv, dt: f64, t_new: f64) -> FlowState {
        let n = a.v.len();
        let mut v = vec![0.0; n];
        let mut u = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        for i in 0..n {
            v[i] = a.v[i] + dt * deriv.dv[i];
        }
        for c in 0..3 {
            for i in 0..n {
                u[c][i] = a.u[c][i] + dt * deriv.du[c][i];
            }
        }
        FlowState { t: t_new, v, u }
    }

    fn convex_combine(w0: f64, s0: &FlowState, w1: f64, s1: &FlowState, t_new: f64) -> FlowState {
        let n = s0.v.len();
        let mut v = vec![0.0; n];
        let mut u = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        for i in 0..n {
            v[i] = w0 * s0.v[i] + w1 * s1.v[i];
        }
        for c in 0..3 {
            for i in 0..n {
                u[c][i] = w0 * s0.u[c][i] + w1 * s1.u[c][i];
            }
        }
        FlowState { t: t_new, v, u }
    }

    fn check_positive(state: &FlowState) -> Result<()> {
        let mv = state.min_v();
        if !(mv > 0.0) || !mv.is_finite() {
            return Err(Error::PositivityLoss {
                t: state.t,
                min_v: mv,
            });
        }
        Ok(())
    }

    /// One SSP-RK3 step. Returns the new state together with the two
    /// internal stages (at t+dt and t+dt/2) so that co-integrated equations
    /// can reuse them.
    pub fn step_with_stages(
        &mut self,
        state: &FlowState,
        dt: f64,
    ) -> Result<(FlowState, FlowState, FlowState)> {
        let t = state.t;
        let k0 = self.rhs(state);
        let s1 = Self::euler_combine(state, &k0, dt, t + dt);
        Self::check_positive(&s1)?;
        let k1 = self.rhs(&s1);
        let e1 = Self::euler_combine(&s1, &k1, dt, 0.0);
        let s2 = Self::convex_combine(0.75, state, 0.25, &e1, t + 0.5 * dt);
        Self::check_positive(&s2)?;
        let k2 = self.rhs(&s2);
        let e2 = Self::euler_combine(&s2, &k2, dt, 0.0);
        let new = Self::convex_combine(1.0 / 3.0, state, 2.0 / 3.0, &e2, t + dt);
        Self::check_positive(&new)?;
        Ok((new, s1, s2))
    }

    /// One SSP-RK3 step, stages discarded.
    pub fn step(&mut self, state: &FlowState, dt: f64) -> Result<FlowState> {
        Ok(self.step_with_stages(state, dt)?.0)
    }
}

fn build_sponge(cfg: &SolverConfig) -> Result<Sponge> {
    let g = &cfg.grid;
    let n1 = g.n1;
    let width = cfg.sponge.fraction * (g.x1_max - g.x1_min);
    let mut s = vec![0.0; n1];
    let mut v_tgt = vec![0.0; n1];
    let mut u_tgt = vec![0.0; n1];
    let s_max = if cfg.sponge.fraction == 0.0 {
        0.0
    } else if cfg.sponge.strength > 0.0 {
        cfg.sponge.strength
    } else {
        let c = cfg
            .params
            .sound_speed(cfg.far_left.v)
            .max(cfg.params.sound_speed(cfg.far_right.v));
        let umax = cfg
            .far_left
            .u
            .abs()
            .max(cfg.far_right.u.abs())
            .max(cfg.frame_speed.abs());
        4.0 * (c + umax) / width
    };
    let (xl, xr) = (g.x1_min + width, g.x1_max - width);
    for i in 0..n1 {
        let x = g.x1(i);
        if cfg.sponge.fraction > 0.0 && x < xl {
            let r = (xl - x) / width;
            s[i] = s_max * r * r;
            v_tgt[i] = cfg.far_left.v;
            u_tgt[i] = cfg.far_left.u;
        } else if cfg.sponge.fraction > 0.0 && x > xr {
            let r = (x - xr) / width;
            s[i] = s_max * r * r;
            v_tgt[i] = cfg.far_right.v;
            u_tgt[i] = cfg.far_right.u;
        }
    }
    Ok(Sponge {
        s,
        v_tgt,
        u_tgt,
        s_max,
    })
}

/// Which field a perturbation bump targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTarget {
    V,
    U1,
    U2,
    U3,
}

impl FieldTarget {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "v" => Ok(Self::V),
            "u1" => Ok(Self::U1),
            "u2" => Ok(Self::U2),
            "u3" => Ok(Self::U3),
            other => Err(Error::Config(format!(
                "unknown perturbation target '{other}' (expected v, u1, u2 or u3)"
            ))),
        }
    }
}

/// Compactly supported smooth bump, optionally modulated transversely:
/// amplitude * exp(1 - 1/(1-r^2)) * cos(2 pi k2 x2) cos(2 pi k3 x3) with
/// r = (x1-center)/width, zero for |r| >= 1.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    pub target: FieldTarget,
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
    pub mode2: u32,
    pub mode3: u32,
}

impl Bump {
    pub fn eval(&self, x1: f64, x2: f64, x3: f64) -> f64 {
        let r = (x1 - self.center) / self.width;
        if r.abs() >= 1.0 {
            return 0.0;
        }
        let shape = (1.0 - 1.0 / (1.0 - r * r)).exp();
        let tau = 2.0 * std::f64::consts::PI;
        let m2 = if self.mode2 == 0 {
            1.0
        } else {
            (tau * self.mode2 as f64 * x2).cos()
        };
        let m3 = if self.mode3 == 0 {
            1.0
        } else {
            (tau * self.mode3 as f64 * x3).cos()
        };
        self.amplitude * shape * m2 * m3
    }
}

/// Discrete surrogates of the perturbation norms: L2 of (v0 - base_v,
/// u0 - base_u) and of their gradients.
#[derive(Debug, Clone, Copy)]
pub struct PerturbationNorms {
    pub l2_v: f64,
    pub l2_u: f64,
    pub l2_grad_v: f64,
    pub l2_grad_u: f64,
}

/// Base wave under the perturbation.
pub enum BaseWave<'a> {
    Composite(&'a CompositeWave),
    Single(&'a ShockProfile),
    Constant(EndState),
}

impl BaseWave<'_> {
    fn eval(&self, x1: f64) -> (f64, f64) {
        match self {
            BaseWave::Composite(cw) => {
                let (v, u, _) = cw.eval(0.0, x1, (0.0, 0.0));
                (v, u)
            }
            BaseWave::Single(p) => (p.v(x1), p.u(x1)),
            BaseWave::Constant(s) => (s.v, s.u),
        }
    }
}

/// Initial data: the base wave at t = 0 plus the listed bumps.
pub fn make_initial_data(
    base: &BaseWave,
    bumps: &[Bump],
    grid: &Grid,
    threads: usize,
) -> Result<(FlowState, PerturbationNorms)> {
    for b in bumps {
        if !(b.width > 0.0) {
            return Err(Error::Config(format!("bump width must be > 0, got {}", b.width)));
        }
        if grid.is_1d() && (b.mode2 != 0 || b.mode3 != 0) {
            return Err(Error::Config(
                "transverse perturbation modes require a resolved transverse grid (n2, n3 > 1)"
                    .to_string(),
            ));
        }
    }
    let n = grid.cells();
    let mut state = FlowState {
        t: 0.0,
        v: vec![0.0; n],
        u: [vec![0.0; n], vec![0.0; n], vec![0.0; n]],
    };
    // perturbation-only fields, for the reported norms
    let mut pert_v = vec![0.0; n];
    let mut pert_u = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for k in 0..grid.n3 {
        for j in 0..grid.n2 {
            for i in 0..grid.n1 {
                let id = grid.idx(i, j, k);
                let (x1, x2, x3) = (grid.x1(i), grid.x2(j), grid.x3(k));
                let (bv, bu) = base.eval(x1);
                state.v[id] = bv;
                state.u[0][id] = bu;
                for b in bumps {
                    let val = b.eval(x1, x2, x3);
                    match b.target {
                        FieldTarget::V => {
                            state.v[id] += val;
                            pert_v[id] += val;
                        }
                        FieldTarget::U1 => {
                            state.u[0][id] += val;
                            pert_u[0][id] += val;
                        }
                        FieldTarget::U2 => {
                            state.u[1][id] += val;
                            pert_u[1][id] += val;
                        }
                        FieldTarget::U3 => {
                            state.u[2][id] += val;
                            pert_u[2][id] += val;
                        }
                    }
                }
            }
        }
    }
    let mv = state.min_v();
    if !(mv > 0.0) {
        return Err(Error::PerturbationTooLarge { min_v: mv });
    }
    let l2_v = ops::l2_norm(grid, &pert_v);
    let l2_u = {
        let mut sq = vec![0.0; n];
        for c in 0..3 {
            for i in 0..n {
                sq[i] += pert_u[c][i] * pert_u[c][i];
            }
        }
        ops::integral_slab(grid, &sq).max(0.0).sqrt()
    };
    let grad_sq = |f: &[f64]| -> f64 {
        let g = ops::gradient(grid, f, threads);
        let mut sq = vec![0.0; n];
        for c in 0..3 {
            for i in 0..n {
                sq[i] += g[c][i] * g[c][i];
            }
        }
        ops::integral_slab(grid, &sq).max(0.0)
    };
    let l2_grad_v = grad_sq(&pert_v).sqrt();
    let l2_grad_u = (grad_sq(&pert_u[0]) + grad_sq(&pert_u[1]) + grad_sq(&pert_u[2])).sqrt();
    Ok((
        state,
        PerturbationNorms {
            l2_v,
            l2_u,
            l2_grad_v,
            l2_grad_u,
        },
    ))
}

/// Axial lab coordinates of the grid nodes at time t (identity unless the
/// solver runs in a moving frame).
pub fn lab_coords(grid: &Grid, frame_speed: f64, t: f64) -> Vec<f64> {
    let off = frame_speed * t;
    (0..grid.n1).map(|i| grid.x1(i) + off).collect()
}

/// Hook invoked after every accepted step with the step's internal stages.
pub trait StepHook {
    fn on_step(&mut self, stages: &StepStages<'_>) -> Result<()>;
}

/// The three stage states an SSP-RK3 step evaluates the right-hand side
/// at (t, t+dt, t+dt/2), plus the accepted new state.
pub struct StepStages<'a> {
    pub dt: f64,
    pub s0: &'a FlowState,
    pub s1: &'a FlowState,
    pub s2: &'a FlowState,
    pub s_new: &'a FlowState,
}

/// A no-op hook; a run with it is identical to a run without one.
pub struct NoopHook;

impl StepHook for NoopHook {
    fn on_step(&mut self, _stages: &StepStages<'_>) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub t_end: f64,
    /// time between stored snapshots; 0 keeps only initial and final
    pub output_interval: f64,
    /// overrides the CFL-derived step when set
    pub fixed_dt: Option<f64>,
    pub max_steps: usize,
}

impl RunConfig {
    pub fn to_time(t_end: f64) -> Self {
        Self {
            t_end,
            output_interval: 0.0,
            fixed_dt: None,
            max_steps: 100_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub snapshots: Vec<FlowState>,
    pub steps: usize,
    pub dt_first: f64,
    pub dt_last: f64,
    pub wall_seconds: f64,
}

impl Trajectory {
    pub fn final_state(&self) -> &FlowState {
        self.snapshots.last().expect("trajectory holds at least the initial state")
    }
}

/// Advances `state0` to `t_end`, storing snapshots at the configured
/// cadence and invoking the hook after each accepted step.
pub fn run(
    solver: &mut Solver,
    state0: FlowState,
    cfg: &RunConfig,
    mut hook: Option<&mut dyn StepHook>,
) -> Result<Trajectory> {
    let start = std::time::Instant::now();
    Solver::check_positive(&state0)?;
    let mut snapshots = vec![state0.clone()];
    let mut state = state0;
    let mut steps = 0usize;
    let mut dt_first = 0.0;
    let mut dt_last = 0.0;
    let mut next_output = if cfg.output_interval > 0.0 {
        state.t + cfg.output_interval
    } else {
        f64::INFINITY
    };
    while state.t < cfg.t_end - 1e-14 * cfg.t_end.abs().max(1.0) {
        let mut dt = cfg.fixed_dt.unwrap_or_else(|| solver.stable_dt(&state));
        if state.t + dt > cfg.t_end {
            dt = cfg.t_end - state.t;
        }
        let (new, s1, s2) = solver.step_with_stages(&state, dt)?;
        if let Some(h) = hook.as_deref_mut() {
            h.on_step(&StepStages {
                dt,
                s0: &state,
                s1: &s1,
                s2: &s2,
                s_new: &new,
            })
            .map_err(|e| match e {
                err @ Error::HookFailure { .. } => err,
                other => Error::HookFailure {
                    t: new.t,
                    message: other.to_string(),
                },
            })?;
        }
        state = new;
        if steps == 0 {
            dt_first = dt;
        }
        dt_last = dt;
        steps += 1;
        if state.t >= next_output {
            snapshots.push(state.clone());
            while next_output <= state.t {
                next_output += cfg.output_interval;
            }
        }
        if steps >= cfg.max_steps {
            break;
        }
    }
    if snapshots.last().map(|s| s.t) != Some(state.t) {
        snapshots.push(state.clone());
    }
    Ok(Trajectory {
        snapshots,
        steps,
        dt_first,
        dt_last,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}
