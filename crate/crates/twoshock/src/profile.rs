//! Viscous shock profiles: the traveling-wave connection between two
//! constant states.
//!
//! The second-order traveling-wave system integrates once (from the left
//! far field) to the algebraic relation u - u_l = -sigma^* (v - v_l) and
//! the scalar first-order equation
//!
//! ```text
//! -(2mu+lambda) sigma^* v' = sigma^*^2 (v - v_l) + p(v) - p(v_l),
//! ```
//!
//! whose right-hand side is a convex function of v vanishing exactly at the
//! two end states, so the heteroclinic orbit is monotone and its tails decay
//! exponentially at the linearized rates
//! |sigma^*^2 + p'(v_end)| / ((2mu+lambda) |sigma^*|).
//!
//! Profiles are tabulated on a uniform grid centred at the arithmetic-mean
//! normalization v(0) = (v_l + v_r)/2 by integrating outward in both
//! directions with an embedded Dormand-Prince 5(4) pair, then wrapped in
//! shape-preserving interpolants. The effective-velocity trace
//! h = u - (2mu+lambda) v' is tabulated alongside.

use crate::error::{Error, Result};
use crate::fluid::FluidParams;
use crate::interp::MonotoneCubic;
use crate::riemann::{shock_speeds, EndState, Family, RiemannConfig};
use crate::stats::{log_linear_fit, LinFit};

/// Endpoint tolerance required of a tabulated profile at |xi| = halfwidth.
pub const ENDPOINT_TOL: f64 = 1e-8;

/// One tabulated viscous shock.
#[derive(Debug, Clone)]
pub struct ShockProfile {
    family: Family,
    sigma_star: f64,
    sigma: f64,
    delta: f64,
    left: EndState,
    right: EndState,
    params: FluidParams,
    xi0: f64,
    dxi: f64,
    v_tab: Vec<f64>,
    u_tab: Vec<f64>,
    h_tab: Vec<f64>,
    v_interp: MonotoneCubic,
    u_interp: MonotoneCubic,
    h_interp: MonotoneCubic,
}

/// Scalar profile equation v' = G(v) for a shock of chord speed
/// `sigma_star` anchored at the left state.
#[derive(Debug, Clone, Copy)]
pub struct ProfileOde {
    pub sigma_star: f64,
    pub v_left: f64,
    pub p_left: f64,
    pub eff_visc: f64,
    pub params: FluidParams,
}

impl ProfileOde {
    pub fn new(sigma_star: f64, left: EndState, params: &FluidParams) -> Self {
        Self {
            sigma_star,
            v_left: left.v,
            p_left: params.pressure(left.v),
            eff_visc: params.eff_visc(),
            params: *params,
        }
    }

    /// G(v) = -[sigma*^2 (v - v_l) + p(v) - p(v_l)] / ((2mu+lambda) sigma*).
    pub fn rhs(&self, v: f64) -> f64 {
        -(self.sigma_star * self.sigma_star * (v - self.v_left) + self.params.pressure(v)
            - self.p_left)
            / (self.eff_visc * self.sigma_star)
    }

    /// Linearized decay rate of the orbit at a rest state v_end.
    pub fn tail_rate(&self, v_end: f64) -> f64 {
        (self.sigma_star * self.sigma_star + self.params.dpressure(v_end)).abs()
            / (self.eff_visc * self.sigma_star.abs())
    }
}

// Dormand-Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One adaptive march of the scalar ODE from xi to xi_target. Direction is
/// carried by the sign of (xi_target - xi).
fn march(ode: &ProfileOde, mut v: f64, xi: f64, xi_target: f64, scale: f64) -> Result<f64> {
    let span = xi_target - xi;
    if span == 0.0 {
        return Ok(v);
    }
    let rtol = 1e-12;
    let atol = 1e-14 * scale;
    let mut h = span;
    let mut x = 0.0f64; // progress in [0, span]
    let total = span.abs();
    let min_step = total * 1e-13 + f64::EPSILON;
    let mut guard = 0usize;
    loop {
        let rem = span - x;
        if rem.abs() <= total * 1e-15 {
            break;
        }
        if rem.abs() < h.abs() {
            h = rem;
        }
        let mut k = [0.0f64; 7];
        k[0] = ode.rhs(v);
        for s in 1..7 {
            let mut vi = v;
            for (j, kj) in k.iter().enumerate().take(s) {
                vi += h * A[s - 1][j] * kj;
            }
            k[s] = ode.rhs(vi);
        }
        let mut v5 = v;
        let mut v4 = v;
        for j in 0..7 {
            v5 += h * B5[j] * k[j];
            v4 += h * B4[j] * k[j];
        }
        let err = (v5 - v4).abs();
        let tol = atol + rtol * v5.abs().max(v.abs());
        if err <= tol {
            v = v5;
            x += h;
            let grow = if err == 0.0 {
                5.0
            } else {
                (0.9 * (tol / err).powf(0.2)).min(5.0)
            };
            h *= grow;
        } else {
            h *= (0.9 * (tol / err).powf(0.2)).max(0.1);
        }
        if h.abs() < min_step {
            return Err(Error::StiffnessFailure {
                xi: xi + x,
                step: h,
            });
        }
        guard += 1;
        if guard > 1_000_000 {
            return Err(Error::StiffnessFailure {
                xi: xi + x,
                step: h,
            });
        }
    }
    Ok(v)
}

impl ShockProfile {
    pub fn family(&self) -> Family {
        self.family
    }
    pub fn sigma_star(&self) -> f64 {
        self.sigma_star
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn left(&self) -> EndState {
        self.left
    }
    pub fn right(&self) -> EndState {
        self.right
    }
    pub fn params(&self) -> &FluidParams {
        &self.params
    }

    /// The shared intermediate state of a composite wave: the downstream
    /// state of a 1-shock, the upstream state of a 2-shock.
    pub fn intermediate(&self) -> EndState {
        match self.family {
            Family::One => self.right,
            Family::Two => self.left,
        }
    }

    pub fn xi_min(&self) -> f64 {
        self.xi0
    }
    pub fn xi_max(&self) -> f64 {
        self.xi0 + self.dxi * (self.v_tab.len() - 1) as f64
    }
    pub fn dxi(&self) -> f64 {
        self.dxi
    }
    pub fn len(&self) -> usize {
        self.v_tab.len()
    }
    pub fn is_empty(&self) -> bool {
        self.v_tab.is_empty()
    }
    pub fn xi_at(&self, i: usize) -> f64 {
        let half = (self.v_tab.len() - 1) / 2;
        (i as isize - half as isize) as f64 * self.dxi
    }
    pub fn v_tab(&self) -> &[f64] {
        &self.v_tab
    }
    pub fn u_tab(&self) -> &[f64] {
        &self.u_tab
    }
    pub fn h_tab(&self) -> &[f64] {
        &self.h_tab
    }

    pub fn ode(&self) -> ProfileOde {
        ProfileOde::new(self.sigma_star, self.left, &self.params)
    }

    pub fn v(&self, xi: f64) -> f64 {
        self.v_interp.eval(xi)
    }
    pub fn u(&self, xi: f64) -> f64 {
        self.u_interp.eval(xi)
    }
    pub fn h(&self, xi: f64) -> f64 {
        self.h_interp.eval(xi)
    }

    /// dv/dxi along the orbit, evaluated through the profile equation.
    pub fn dv(&self, xi: f64) -> f64 {
        self.ode().rhs(self.v(xi))
    }

    /// d/dxi of p(v(xi)).
    pub fn dp(&self, xi: f64) -> f64 {
        let v = self.v(xi);
        self.params.dpressure(v) * self.ode().rhs(v)
    }

    /// Linearized tail decay rates (left side, right side).
    pub fn tail_rates(&self) -> (f64, f64) {
        let ode = self.ode();
        (ode.tail_rate(self.left.v), ode.tail_rate(self.right.v))
    }
}

/// Default tabulation halfwidth: sixty e-foldings of the slower tail.
pub fn default_halfwidth(family: Family, config: &RiemannConfig, params: &FluidParams) -> Result<f64> {
    let (left, right) = config.endpoints(family);
    let (sigma_star, _) = shock_speeds(family, left.v, right.v, left, params)?;
    let ode = ProfileOde::new(sigma_star, left, params);
    let rate = ode.tail_rate(left.v).min(ode.tail_rate(right.v));
    Ok(60.0 / rate)
}

/// Default node count for a given halfwidth: resolves the faster tail with
/// about fifty nodes per e-folding, capped to keep tables light.
pub fn default_n_points(halfwidth: f64, max_rate: f64) -> usize {
    let dxi = (0.02 / max_rate).min(0.01);
    let half = ((halfwidth / dxi).ceil() as usize).clamp(16, 400_000);
    2 * half + 1
}

/// Solves the profile between the two endpoint states of one shock of a
/// closed Riemann configuration.
pub fn solve_profile(
    family: Family,
    config: &RiemannConfig,
    params: &FluidParams,
    domain_halfwidth: f64,
    n_points: usize,
) -> Result<ShockProfile> {
    let (left, right) = config.endpoints(family);
    solve_profile_between(family, left, right, params, domain_halfwidth, n_points)
}

/// Core constructor from the two endpoint states of a single shock.
pub fn solve_profile_between(
    family: Family,
    left: EndState,
    right: EndState,
    params: &FluidParams,
    domain_halfwidth: f64,
    n_points: usize,
) -> Result<ShockProfile> {
    let delta = (params.pressure(left.v) - params.pressure(right.v)).abs();
    let jump = (left.v - right.v).abs();
    if jump < 1e-11 || delta < 1e-11 {
        return Err(Error::InvalidStates(format!(
            "degenerate shock strength (|v_l - v_r| = {jump:e}): the profile is constant"
        )));
    }
    match family {
        Family::One if !(left.v > right.v) => {
            return Err(Error::InvalidStates(
                "a 1-shock needs v decreasing across the wave".to_string(),
            ))
        }
        Family::Two if !(left.v < right.v) => {
            return Err(Error::InvalidStates(
                "a 2-shock needs v increasing across the wave".to_string(),
            ))
        }
        _ => {}
    }
    if !(domain_halfwidth > 0.0) {
        return Err(Error::InvalidStates(format!(
            "halfwidth must be positive, got {domain_halfwidth}"
        )));
    }
    let (sigma_star, sigma) = shock_speeds(family, left.v, right.v, left, params)?;
    let ode = ProfileOde::new(sigma_star, left, params);

    let n = if n_points < 33 {
        33
    } else if n_points % 2 == 0 {
        n_points + 1
    } else {
        n_points
    };
    let half = (n - 1) / 2;
    let dxi = domain_halfwidth / half as f64;

    let mut v_tab = vec![0.0f64; n];
    v_tab[half] = 0.5 * (left.v + right.v);
    // outward, both directions, one grid interval at a time
    for i in half..n - 1 {
        let xi = (i as isize - half as isize) as f64 * dxi;
        v_tab[i + 1] = march(&ode, v_tab[i], xi, xi + dxi, jump)?;
    }
    for i in (1..=half).rev() {
        let xi = (i as isize - half as isize) as f64 * dxi;
        v_tab[i - 1] = march(&ode, v_tab[i], xi, xi - dxi, jump)?;
    }

    let dev = (v_tab[0] - left.v)
        .abs()
        .max((v_tab[n - 1] - right.v).abs());
    let u_of = |v: f64| left.u - sigma_star * (v - left.v);
    let dev_u = (u_of(v_tab[0]) - left.u)
        .abs()
        .max((u_of(v_tab[n - 1]) - right.u).abs());
    let dev = dev.max(dev_u);
    if dev >= ENDPOINT_TOL {
        let min_rate = ode.tail_rate(left.v).min(ode.tail_rate(right.v));
        return Err(Error::DomainTooShort {
            deviation: dev,
            tolerance: ENDPOINT_TOL,
            suggested: ((jump / ENDPOINT_TOL).ln() + 2.0) / min_rate,
        });
    }

    let u_tab: Vec<f64> = v_tab.iter().map(|&v| u_of(v)).collect();
    let h_tab: Vec<f64> = v_tab
        .iter()
        .map(|&v| u_of(v) - params.eff_visc() * ode.rhs(v))
        .collect();

    let xi0 = -(half as f64) * dxi;
    Ok(ShockProfile {
        family,
        sigma_star,
        sigma,
        delta,
        left,
        right,
        params: *params,
        xi0,
        dxi,
        v_interp: MonotoneCubic::from_uniform(xi0, dxi, v_tab.clone()),
        u_interp: MonotoneCubic::from_uniform(xi0, dxi, u_tab.clone()),
        h_interp: MonotoneCubic::from_uniform(xi0, dxi, h_tab.clone()),
        v_tab,
        u_tab,
        h_tab,
    })
}

/// Per-side tail fit of |v'|.
#[derive(Debug, Clone, Copy)]
pub struct SideFit {
    /// fitted exponential decay rate (positive)
    pub rate: f64,
    pub r2: f64,
    /// fitted rate divided by the shock strength
    pub rate_per_delta: f64,
    /// linearized rate from the profile equation, for reference
    pub analytic_rate: f64,
    pub samples: usize,
}

/// Certification report for one tabulated profile: comparability of u' and
/// v', exponential tail rates, and curvature-over-slope bounds. All
/// derivatives are finite differences on the tabulated grid.
#[derive(Debug, Clone, Copy)]
pub struct TailReport {
    /// max over the resolved grid of max(|u'|/|v'|, |v'|/|u'|)
    pub c_ratio: f64,
    pub left: SideFit,
    pub right: SideFit,
    /// sup |v''| / (delta |v'|)
    pub sup_d2_ratio: f64,
    /// sup |v'''| / (delta^2 |v'|)
    pub sup_d3_ratio: f64,
    /// location of the maximum of |v'|
    pub xi_at_max_slope: f64,
    /// |v'| decays monotonically outward from its maximum
    pub monotone_decay: bool,
}

pub fn certify_tail_bounds(profile: &ShockProfile) -> Result<TailReport> {
    let n = profile.len();
    let h = profile.dxi();
    let v = profile.v_tab();
    let u = profile.u_tab();
    let (rate_l, rate_r) = profile.tail_rates();
    let max_rate = rate_l.max(rate_r);
    let limit = 0.1 / max_rate;
    if h > limit {
        return Err(Error::UnresolvedDerivatives { spacing: h, limit });
    }

    let mut dv = vec![0.0; n];
    let mut du = vec![0.0; n];
    let mut d2v = vec![0.0; n];
    let mut d3v = vec![0.0; n];
    for i in 1..n - 1 {
        dv[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
        du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
        d2v[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
    }
    for i in 2..n - 2 {
        d3v[i] = (v[i + 2] - v[i - 2] - 2.0 * (v[i + 1] - v[i - 1])) / (2.0 * h * h * h);
    }

    let max_dv = dv.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if max_dv == 0.0 {
        return Err(Error::NotApplicable(
            "tabulated profile has no resolved slope".to_string(),
        ));
    }
    let i_max = (1..n - 1)
        .max_by(|&a, &b| dv[a].abs().partial_cmp(&dv[b].abs()).unwrap())
        .unwrap();

    // comparability of u' and v' over the resolved slope (below about
    // 1e-6 of the peak slope the finite differences are rounding noise)
    let mut c_ratio = 0.0f64;
    for i in 1..n - 1 {
        if dv[i].abs() >= 1e-6 * max_dv && du[i].abs() > 0.0 {
            let r = (du[i] / dv[i]).abs();
            c_ratio = c_ratio.max(r.max(1.0 / r));
        }
    }

    // curvature bounds relative to the slope; third differences carry a
    // wider rounding floor (eps/h^3), so their mask sits higher
    let delta = profile.delta();
    let mut sup_d2 = 0.0f64;
    let mut sup_d3 = 0.0f64;
    for i in 2..n - 2 {
        if dv[i].abs() >= 1e-6 * max_dv {
            sup_d2 = sup_d2.max(d2v[i].abs() / (delta * dv[i].abs()));
        }
        if dv[i].abs() >= 1e-3 * max_dv {
            sup_d3 = sup_d3.max(d3v[i].abs() / (delta * delta * dv[i].abs()));
        }
    }

    // monotone decay of |v'| outward from its maximum (over the resolved range)
    let floor = (1e-10 * max_dv).max(1e-12);
    let mut monotone = true;
    let mut prev = dv[i_max].abs();
    for i in i_max + 1..n - 1 {
        let cur = dv[i].abs();
        if cur < floor {
            break;
        }
        if cur > prev * (1.0 + 1e-9) + 1e-13 {
            monotone = false;
            break;
        }
        prev = cur;
    }
    prev = dv[i_max].abs();
    for i in (1..i_max).rev() {
        let cur = dv[i].abs();
        if cur < floor {
            break;
        }
        if cur > prev * (1.0 + 1e-9) + 1e-13 {
            monotone = false;
            break;
        }
        prev = cur;
    }

    let fit_side = |range: Vec<usize>, analytic: f64| -> Result<SideFit> {
        let resolved: Vec<usize> = range
            .into_iter()
            .filter(|&i| dv[i].abs() >= floor)
            .collect();
        if resolved.len() < 8 {
            return Err(Error::NotApplicable(
                "too few resolved tail samples for the regression".to_string(),
            ));
        }
        // outer quarter of the resolved span on this side
        let take = (resolved.len() / 4).max(8).min(resolved.len());
        let window = &resolved[..take];
        let xs: Vec<f64> = window.iter().map(|&i| profile.xi_at(i)).collect();
        let ys: Vec<f64> = window.iter().map(|&i| dv[i].abs()).collect();
        let fit: LinFit = log_linear_fit(&xs, &ys, 0.0).ok_or_else(|| {
            Error::NotApplicable("tail regression degenerate".to_string())
        })?;
        Ok(SideFit {
            rate: fit.slope.abs(),
            r2: fit.r2,
            rate_per_delta: fit.slope.abs() / delta,
            analytic_rate: analytic,
            samples: fit.n,
        })
    };
    // left side: indices from the outermost inward; right side mirrored
    let left = fit_side((1..i_max).collect(), rate_l)?;
    let right = fit_side((i_max + 1..n - 1).rev().collect(), rate_r)?;

    Ok(TailReport {
        c_ratio,
        left,
        right,
        sup_d2_ratio: sup_d2,
        sup_d3_ratio: sup_d3,
        xi_at_max_slope: profile.xi_at(i_max),
        monotone_decay: monotone,
    })
}
