use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes across the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid fluid parameters: {0}")]
    InvalidFluidParams(String),

    #[error("invalid states: {0}")]
    InvalidStates(String),

    #[error("no entropy-admissible two-shock connection: {0}")]
    NoTwoShockConnection(String),

    #[error("non-hyperbolic state pair: chord-slope radicand {radicand:e} is not positive")]
    NonHyperbolic { radicand: f64 },

    #[error(
        "profile domain too short: endpoint deviation {deviation:e} exceeds {tolerance:e}; \
         use halfwidth >= {suggested:.1}"
    )]
    DomainTooShort {
        deviation: f64,
        tolerance: f64,
        suggested: f64,
    },

    #[error("profile integrator step control collapsed at xi = {xi} (step {step:e})")]
    StiffnessFailure { xi: f64, step: f64 },

    #[error("grid spacing {spacing:e} exceeds the derivative-resolution limit {limit:e}")]
    UnresolvedDerivatives { spacing: f64, limit: f64 },

    #[error("perturbation too large: min specific volume {min_v:e} after superposition")]
    PerturbationTooLarge { min_v: f64 },

    #[error("positivity loss: min specific volume {min_v:e} at t = {t}")]
    PositivityLoss { t: f64, min_v: f64 },

    #[error("step hook failed at t = {t}: {message}")]
    HookFailure { t: f64, message: String },

    #[error("quadrature under-resolved: {0}")]
    QuadratureUnderresolved(String),

    #[error("weighted integrand singular at slab boundary: {0}")]
    WeightSingularity(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
