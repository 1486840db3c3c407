//! twoshock: a simulation laboratory for composite two-shock waves of the
//! barotropic Navier-Stokes system.
//!
//! The crate builds viscous shock profiles from the Rankine-Hugoniot
//! algebra, evolves perturbed composite waves on a slab (axial interval
//! times a periodic torus), co-integrates the dynamical wave shifts with
//! weight functions, and evaluates the entropy, dissipation and interaction
//! functionals that quantify the stability of the composite wave.
//!
//! Start with the guide in `book/`, or with
//! [`riemann::solve_intermediate_state`], [`profile::solve_profile`] and
//! [`solver::run`].

pub mod composite;
pub mod conservative;
pub mod csvio;
pub mod diagnostics;
pub mod error;
pub mod fluid;
pub mod grid;
pub mod interp;
pub mod ops;
pub mod poincare;
pub mod probes;
pub mod profile;
pub mod recorder;
pub mod riemann;
pub mod shifts;
pub mod solver;
pub mod stats;

pub use composite::CompositeWave;
pub use error::{Error, Result};
pub use fluid::FluidParams;
pub use grid::Grid;
pub use profile::{certify_tail_bounds, solve_profile, ShockProfile, TailReport};
pub use riemann::{
    rh_residuals, shock_speeds, solve_intermediate_state, EndState, Family, RiemannConfig,
};
pub use shifts::{cutoffs, weight_composed, weight_single, ShiftEngine, ShiftState, WeightSpec};
pub use solver::{make_initial_data, run, BaseWave, Bump, FlowState, RunConfig, Solver, SolverConfig};

/// Book chapters double as documentation tests: every fenced Rust block in
/// the guide compiles and runs under `cargo test`.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(shock_profiles, "../../../book/src/shock-profiles.md");
    chapter!(composite_waves, "../../../book/src/composite-waves.md");
    chapter!(flow_solver, "../../../book/src/flow-solver.md");
    chapter!(weights_and_shifts, "../../../book/src/weights-and-shifts.md");
    chapter!(diagnostics, "../../../book/src/diagnostics.md");
    chapter!(scenarios, "../../../book/src/scenarios.md");
}
