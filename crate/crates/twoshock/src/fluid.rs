//! Gamma-law barotropic fluid: pressure, its convex entropy, and viscosity.
//!
//! Everything downstream works in the specific volume v = 1/rho, where the
//! pressure is p(v) = b v^{-gamma} and the entropy Q is chosen with Q' = -p,
//! i.e. Q(v) = b v^{1-gamma}/(gamma-1), so that the relative quantities
//! p(v|w) and Q(v|w) are nonnegative by convexity.

use crate::error::{Error, Result};

/// Adiabatic exponent, pressure coefficient and the two viscosity
/// coefficients. The combination that enters every equation is the
/// effective viscosity 2*mu + lambda.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    gamma: f64,
    pressure_coeff: f64,
    mu: f64,
    lambda_visc: f64,
}

impl FluidParams {
    pub fn new(gamma: f64, pressure_coeff: f64, mu: f64, lambda_visc: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidFluidParams(format!(
                "gamma must be > 1, got {gamma}"
            )));
        }
        if !(pressure_coeff > 0.0) || !pressure_coeff.is_finite() {
            return Err(Error::InvalidFluidParams(format!(
                "pressure coefficient must be > 0, got {pressure_coeff}"
            )));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidFluidParams(format!("mu must be > 0, got {mu}")));
        }
        if !(2.0 * mu + 3.0 * lambda_visc >= 0.0) || !lambda_visc.is_finite() {
            return Err(Error::InvalidFluidParams(format!(
                "2*mu + 3*lambda must be >= 0, got {}",
                2.0 * mu + 3.0 * lambda_visc
            )));
        }
        let p = Self {
            gamma,
            pressure_coeff,
            mu,
            lambda_visc,
        };
        debug_assert!(p.eff_visc() > 0.0);
        Ok(p)
    }

    /// gamma-law with coefficient b = 1.
    pub fn gamma_law(gamma: f64, mu: f64, lambda_visc: f64) -> Result<Self> {
        Self::new(gamma, 1.0, mu, lambda_visc)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn pressure_coeff(&self) -> f64 {
        self.pressure_coeff
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda_visc(&self) -> f64 {
        self.lambda_visc
    }

    /// 2*mu + lambda, the only viscosity combination that appears in the
    /// axial dynamics and in the effective velocity.
    pub fn eff_visc(&self) -> f64 {
        2.0 * self.mu + self.lambda_visc
    }

    /// p(v) = b v^{-gamma}.
    pub fn pressure(&self, v: f64) -> f64 {
        self.pressure_coeff * v.powf(-self.gamma)
    }

    /// p'(v) = -gamma b v^{-gamma-1} < 0.
    pub fn dpressure(&self, v: f64) -> f64 {
        -self.gamma * self.pressure_coeff * v.powf(-self.gamma - 1.0)
    }

    /// p''(v) = gamma (gamma+1) b v^{-gamma-2} > 0.
    pub fn d2pressure(&self, v: f64) -> f64 {
        self.gamma * (self.gamma + 1.0) * self.pressure_coeff * v.powf(-self.gamma - 2.0)
    }

    /// Pressure as a function of density, p = b rho^gamma (conservative
    /// cross-check mode works in density variables).
    pub fn pressure_of_density(&self, rho: f64) -> f64 {
        self.pressure_coeff * rho.powf(self.gamma)
    }

    /// Convex entropy with Q'(v) = -p(v): Q(v) = b v^{1-gamma}/(gamma-1).
    pub fn entropy(&self, v: f64) -> f64 {
        self.pressure_coeff * v.powf(1.0 - self.gamma) / (self.gamma - 1.0)
    }

    /// Eulerian sound speed c(v) = sqrt(gamma p v) = sqrt(gamma b v^{1-gamma}).
    pub fn sound_speed(&self, v: f64) -> f64 {
        (self.gamma * self.pressure(v) * v).sqrt()
    }

    /// sigma_m = sqrt(-p'(v_m)), the reference chord slope at a state v_m.
    pub fn sigma_ref(&self, v_m: f64) -> f64 {
        (-self.dpressure(v_m)).sqrt()
    }

    /// alpha_m = (gamma+1)/(2 gamma sigma_m p(v_m)) = p''(v_m)/(2 sigma_m p'(v_m)^2).
    pub fn alpha_ref(&self, v_m: f64) -> f64 {
        let sm = self.sigma_ref(v_m);
        self.d2pressure(v_m) / (2.0 * sm * self.dpressure(v_m).powi(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(FluidParams::new(1.0, 1.0, 0.1, 0.0).is_err());
        assert!(FluidParams::new(2.0, 0.0, 0.1, 0.0).is_err());
        assert!(FluidParams::new(2.0, 1.0, 0.0, 0.0).is_err());
        assert!(FluidParams::new(2.0, 1.0, 0.1, -0.1).is_err());
        // 2 mu + 3 lambda = 0 is allowed and still gives eff_visc > 0.
        let p = FluidParams::new(2.0, 1.0, 0.375, -0.25).unwrap();
        assert!(p.eff_visc() > 0.0);
    }

    #[test]
    fn gamma_two_pressure_values() {
        let p = FluidParams::gamma_law(2.0, 0.1, 0.0).unwrap();
        assert!((p.pressure(0.9) - 1.0 / 0.81).abs() < 1e-15);
        assert!((p.dpressure(1.0) + 2.0).abs() < 1e-15);
        assert!((p.d2pressure(1.0) - 6.0).abs() < 1e-15);
        assert!((p.entropy(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_ref_matches_both_closed_forms() {
        let p = FluidParams::gamma_law(1.4, 0.05, 0.01).unwrap();
        let vm = 0.87;
        let sm = p.sigma_ref(vm);
        let direct = (p.gamma() + 1.0) / (2.0 * p.gamma() * sm * p.pressure(vm));
        assert!((p.alpha_ref(vm) - direct).abs() < 1e-14 * direct.abs());
    }
}
