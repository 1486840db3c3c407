//! Rankine-Hugoniot algebra for the two-shock Riemann problem in the
//! specific-volume variables.
//!
//! Given outer states (v_-, u_-) and (v_+, u_+), an admissible two-shock
//! connection runs through a unique intermediate state (v_m, u_m) with
//! v_m < min(v_-, v_+) and u_- > u_m > u_+. Along the 1-family the jump
//! relations read
//!
//! ```text
//! -sigma_1^* (v_m - v_-) = u_m - u_-,
//! -sigma_1^* (u_m - u_-) + p(v_m) - p(v_-) = 0,
//! ```
//!
//! with the chord slope sigma_1^* = -sqrt(-(p(v_m)-p(v_-))/(v_m-v_-)), and
//! symmetrically for the 2-family. The Eulerian speed is recovered from
//! sigma^* = sigma rho_ref - rho_ref u_ref with the reference taken at the
//! left state of each family.

use crate::error::{Error, Result};
use crate::fluid::FluidParams;

/// Constant far-field state (specific volume, axial velocity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndState {
    pub v: f64,
    pub u: f64,
}

impl EndState {
    pub fn new(v: f64, u: f64) -> Self {
        Self { v, u }
    }

    pub fn density(&self) -> f64 {
        1.0 / self.v
    }
}

/// Shock family. A 1-shock moves left relative to the flow, a 2-shock right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    One,
    Two,
}

impl Family {
    pub fn index(&self) -> usize {
        match self {
            Family::One => 0,
            Family::Two => 1,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

/// The closed Riemann data: outer states, intermediate state, and the two
/// shock strengths measured in pressure units.
#[derive(Debug, Clone, Copy)]
pub struct RiemannConfig {
    pub left: EndState,
    pub mid: EndState,
    pub right: EndState,
    /// |p(v_-) - p(v_m)|
    pub delta1: f64,
    /// |p(v_m) - p(v_+)|
    pub delta2: f64,
}

/// Tolerance on the four jump-relation residuals accepted at construction.
pub const RH_RESIDUAL_TOL: f64 = 1e-12;

impl RiemannConfig {
    /// Validates orderings, Lax admissibility and the jump-relation
    /// residuals before accepting the triple.
    pub fn new(left: EndState, mid: EndState, right: EndState, params: &FluidParams) -> Result<Self> {
        for (name, s) in [("left", left), ("mid", mid), ("right", right)] {
            if !(s.v > 0.0) || !s.v.is_finite() || !s.u.is_finite() {
                return Err(Error::InvalidStates(format!(
                    "{name} state must have finite u and v > 0, got (v, u) = ({}, {})",
                    s.v, s.u
                )));
            }
        }
        if !(left.v > mid.v) {
            return Err(Error::InvalidStates(format!(
                "need v_- > v_m, got v_- = {}, v_m = {}",
                left.v, mid.v
            )));
        }
        if !(mid.v < right.v) {
            return Err(Error::InvalidStates(format!(
                "need v_m < v_+, got v_m = {}, v_+ = {}",
                mid.v, right.v
            )));
        }
        if !(left.u > mid.u && mid.u > right.u) {
            return Err(Error::InvalidStates(format!(
                "need u_- > u_m > u_+, got {} , {} , {}",
                left.u, mid.u, right.u
            )));
        }
        let res = rh_residuals(left, mid, right, params)?;
        let max_res = res.iter().fold(0.0f64, |a, r| a.max(r.abs()));
        if max_res >= RH_RESIDUAL_TOL {
            return Err(Error::InvalidStates(format!(
                "jump-relation residuals too large: max |r| = {max_res:e}"
            )));
        }
        Ok(Self {
            left,
            mid,
            right,
            delta1: (params.pressure(left.v) - params.pressure(mid.v)).abs(),
            delta2: (params.pressure(mid.v) - params.pressure(right.v)).abs(),
        })
    }

    /// ((sigma_1^*, sigma_1), (sigma_2^*, sigma_2)).
    pub fn speeds(&self, params: &FluidParams) -> Result<((f64, f64), (f64, f64))> {
        let s1 = shock_speeds(Family::One, self.left.v, self.mid.v, self.left, params)?;
        let s2 = shock_speeds(Family::Two, self.mid.v, self.right.v, self.mid, params)?;
        Ok((s1, s2))
    }

    pub fn endpoints(&self, family: Family) -> (EndState, EndState) {
        match family {
            Family::One => (self.left, self.mid),
            Family::Two => (self.mid, self.right),
        }
    }

    pub fn delta(&self, family: Family) -> f64 {
        match family {
            Family::One => self.delta1,
            Family::Two => self.delta2,
        }
    }
}

/// The four jump-relation residuals (two per family); all vanish for an
/// exact two-shock triple.
pub fn rh_residuals(
    left: EndState,
    mid: EndState,
    right: EndState,
    params: &FluidParams,
) -> Result<[f64; 4]> {
    let (s1, _) = shock_speeds(Family::One, left.v, mid.v, left, params)?;
    let (s2, _) = shock_speeds(Family::Two, mid.v, right.v, mid, params)?;
    Ok([
        -s1 * (mid.v - left.v) - (mid.u - left.u),
        -s1 * (mid.u - left.u) + params.pressure(mid.v) - params.pressure(left.v),
        -s2 * (right.v - mid.v) - (right.u - mid.u),
        -s2 * (right.u - mid.u) + params.pressure(right.v) - params.pressure(mid.v),
    ])
}

/// Chord-slope speed sigma^* and Eulerian speed sigma for one family.
///
/// The sign convention is sigma_1^* < 0, sigma_2^* > 0; the Eulerian speed
/// follows from sigma^* = sigma rho_ref - rho_ref u_ref, i.e.
/// sigma = sigma^* v_ref + u_ref, with `reference` the left state of the
/// family.
pub fn shock_speeds(
    family: Family,
    v_left: f64,
    v_right: f64,
    reference: EndState,
    params: &FluidParams,
) -> Result<(f64, f64)> {
    if !(v_left > 0.0 && v_right > 0.0) {
        return Err(Error::InvalidStates(format!(
            "specific volumes must be positive, got {v_left}, {v_right}"
        )));
    }
    if v_left == v_right {
        return Err(Error::InvalidStates(
            "degenerate jump: v_left == v_right".to_string(),
        ));
    }
    let radicand =
        -(params.pressure(v_right) - params.pressure(v_left)) / (v_right - v_left);
    if !(radicand > 0.0) {
        return Err(Error::NonHyperbolic { radicand });
    }
    let sigma_star = match family {
        Family::One => -radicand.sqrt(),
        Family::Two => radicand.sqrt(),
    };
    let sigma = sigma_star * reference.v + reference.u;
    Ok((sigma_star, sigma))
}

/// Velocity reached from `from` along the `family` shock curve at specific
/// volume `v` (compressive branch, v < from.v).
pub fn hugoniot_velocity(family: Family, from: EndState, v: f64, params: &FluidParams) -> f64 {
    let dp = params.pressure(v) - params.pressure(from.v);
    let root = (dp * (from.v - v)).max(0.0).sqrt();
    match family {
        // forward along the 1-curve: u decreases
        Family::One => from.u - root,
        // backward along the 2-curve from the downstream state: u increases
        Family::Two => from.u + root,
    }
}

/// Mismatch between the 1-curve from the left state and the backward
/// 2-curve from the right state, as a function of the candidate v_m.
/// Strictly increasing on (0, min(v_-, v_+)), -inf at 0+.
fn curve_mismatch(v: f64, left: EndState, right: EndState, params: &FluidParams) -> f64 {
    hugoniot_velocity(Family::One, left, v, params)
        - hugoniot_velocity(Family::Two, right, v, params)
}

fn curve_mismatch_derivative(v: f64, left: EndState, right: EndState, params: &FluidParams) -> f64 {
    let branch = |from: EndState| -> f64 {
        let g = (params.pressure(v) - params.pressure(from.v)) * (from.v - v);
        let dg = params.dpressure(v) * (from.v - v) - (params.pressure(v) - params.pressure(from.v));
        dg / (2.0 * g.sqrt())
    };
    // d/dv [u_- - sqrt(g1)] - d/dv [u_+ + sqrt(g2)]
    -branch(left) - branch(right)
}

/// Closes the Riemann data: finds the unique intermediate state (v_m, u_m)
/// joining the outer states by an entropy-admissible 1-shock and 2-shock.
///
/// Safeguarded Newton iteration on the curve mismatch, bracketed inside
/// (0, min(v_-, v_+)); the returned configuration has all four residuals
/// below [`RH_RESIDUAL_TOL`].
pub fn solve_intermediate_state(
    left: EndState,
    right: EndState,
    params: &FluidParams,
) -> Result<RiemannConfig> {
    if !(left.v > 0.0 && right.v > 0.0) {
        return Err(Error::InvalidStates(
            "outer specific volumes must be positive".to_string(),
        ));
    }
    let v_cap = left.v.min(right.v);
    let mut hi = v_cap * (1.0 - 1e-12);
    if curve_mismatch(hi, left, right, params) <= 0.0 {
        return Err(Error::NoTwoShockConnection(format!(
            "velocity jump u_- - u_+ = {:e} cannot be carried by two compressive shocks \
             (requires v_m < min(v_-, v_+) = {v_cap} with u_- > u_m > u_+)",
            left.u - right.u
        )));
    }
    // Walk down until the mismatch changes sign; the mismatch tends to
    // -inf as v -> 0+, so this always brackets.
    let mut lo = hi;
    let mut flo;
    loop {
        lo *= 0.5;
        flo = curve_mismatch(lo, left, right, params);
        if flo < 0.0 {
            break;
        }
        hi = lo;
        if lo < 1e-300 {
            return Err(Error::NoTwoShockConnection(
                "mismatch never changes sign; pressure law not compressive enough".to_string(),
            ));
        }
    }

    let mut v = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = curve_mismatch(v, left, right, params);
        if f > 0.0 {
            hi = v;
        } else {
            lo = v;
        }
        let df = curve_mismatch_derivative(v, left, right, params);
        let mut next = v - f / df;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - v).abs() <= 1e-16 * v.abs() {
            v = next;
            break;
        }
        v = next;
    }

    let u_m = hugoniot_velocity(Family::One, left, v, params);
    let mid = EndState::new(v, u_m);
    if !(v < left.v && v < right.v && left.u > u_m && u_m > right.u) {
        return Err(Error::NoTwoShockConnection(format!(
            "root violates the admissible ordering: v_m = {v}, u_m = {u_m}"
        )));
    }
    RiemannConfig::new(left, mid, right, params)
}
