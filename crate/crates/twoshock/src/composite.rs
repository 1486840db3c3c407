//! Superposition of a 1-shock and a 2-shock around their shared
//! intermediate state:
//!
//! ```text
//! v(t, x1) = v1(x1 - sigma1 t - X1) + v2(x1 - sigma2 t - X2) - v_m,
//! ```
//!
//! identically for u (minus u_m) and for the effective-velocity trace h.
//! Evaluation is total: the tabulated profiles clamp to their end values
//! outside the tables.

use crate::error::{Error, Result};
use crate::fluid::FluidParams;
use crate::profile::ShockProfile;
use crate::riemann::{EndState, Family};

/// Pair of shifts applied to the two waves.
pub type Shifts = (f64, f64);

#[derive(Debug, Clone)]
pub struct CompositeWave {
    wave1: ShockProfile,
    wave2: ShockProfile,
    mid: EndState,
}

impl CompositeWave {
    pub fn new(wave1: ShockProfile, wave2: ShockProfile) -> Result<Self> {
        if wave1.family() != Family::One || wave2.family() != Family::Two {
            return Err(Error::InvalidStates(
                "composite needs a 1-shock followed by a 2-shock".to_string(),
            ));
        }
        if wave1.params() != wave2.params() {
            return Err(Error::InvalidStates(
                "profiles must share fluid parameters".to_string(),
            ));
        }
        let m1 = wave1.intermediate();
        let m2 = wave2.intermediate();
        if (m1.v - m2.v).abs() > 1e-10 || (m1.u - m2.u).abs() > 1e-10 {
            return Err(Error::InvalidStates(format!(
                "intermediate states disagree: ({}, {}) vs ({}, {})",
                m1.v, m1.u, m2.v, m2.u
            )));
        }
        if !(wave1.sigma() < wave2.sigma()) {
            return Err(Error::InvalidStates(format!(
                "wave speeds must be ordered, got sigma1 = {} >= sigma2 = {}",
                wave1.sigma(),
                wave2.sigma()
            )));
        }
        Ok(Self {
            wave1,
            wave2,
            mid: m1,
        })
    }

    pub fn wave1(&self) -> &ShockProfile {
        &self.wave1
    }
    pub fn wave2(&self) -> &ShockProfile {
        &self.wave2
    }
    pub fn wave(&self, family: Family) -> &ShockProfile {
        match family {
            Family::One => &self.wave1,
            Family::Two => &self.wave2,
        }
    }
    pub fn mid(&self) -> EndState {
        self.mid
    }
    pub fn params(&self) -> &FluidParams {
        self.wave1.params()
    }
    pub fn sigma1(&self) -> f64 {
        self.wave1.sigma()
    }
    pub fn sigma2(&self) -> f64 {
        self.wave2.sigma()
    }
    /// Far fields of the composite.
    pub fn far_left(&self) -> EndState {
        self.wave1.left()
    }
    pub fn far_right(&self) -> EndState {
        self.wave2.right()
    }

    /// Profile coordinates of the two waves at (t, x1) under the given shifts.
    pub fn xi(&self, t: f64, x1: f64, shifts: Shifts) -> (f64, f64) {
        (
            x1 - self.sigma1() * t - shifts.0,
            x1 - self.sigma2() * t - shifts.1,
        )
    }

    pub fn v(&self, t: f64, x1: f64, shifts: Shifts) -> f64 {
        let (xi1, xi2) = self.xi(t, x1, shifts);
        self.wave1.v(xi1) + self.wave2.v(xi2) - self.mid.v
    }

    pub fn u(&self, t: f64, x1: f64, shifts: Shifts) -> f64 {
        let (xi1, xi2) = self.xi(t, x1, shifts);
        self.wave1.u(xi1) + self.wave2.u(xi2) - self.mid.u
    }

    pub fn h(&self, t: f64, x1: f64, shifts: Shifts) -> f64 {
        let (xi1, xi2) = self.xi(t, x1, shifts);
        self.wave1.h(xi1) + self.wave2.h(xi2) - self.mid.u
    }

    /// (v, u, h) in one evaluation.
    pub fn eval(&self, t: f64, x1: f64, shifts: Shifts) -> (f64, f64, f64) {
        let (xi1, xi2) = self.xi(t, x1, shifts);
        (
            self.wave1.v(xi1) + self.wave2.v(xi2) - self.mid.v,
            self.wave1.u(xi1) + self.wave2.u(xi2) - self.mid.u,
            self.wave1.h(xi1) + self.wave2.h(xi2) - self.mid.u,
        )
    }

    /// d/dx1 of the composite v.
    pub fn dv_dx1(&self, t: f64, x1: f64, shifts: Shifts) -> f64 {
        let (xi1, xi2) = self.xi(t, x1, shifts);
        self.wave1.dv(xi1) + self.wave2.dv(xi2)
    }
}

/// Composite fields sampled on a set of axial coordinates.
pub fn sample_composite(
    wave: &CompositeWave,
    t: f64,
    shifts: Shifts,
    x1: &[f64],
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut v = Vec::with_capacity(x1.len());
    let mut u = Vec::with_capacity(x1.len());
    let mut h = Vec::with_capacity(x1.len());
    for &x in x1 {
        let (vv, uu, hh) = wave.eval(t, x, shifts);
        v.push(vv);
        u.push(uu);
        h.push(hh);
    }
    (v, u, h)
}
