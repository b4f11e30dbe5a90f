//! Mixed-mode cohesive zone laws with loading/unloading history, hypothesis
//! validators, opening-path simulation, and a quasistatic two-laminate
//! solver.

pub mod config;
pub mod error;
pub mod laminate;
pub mod laws1d;
pub mod mixedmode;
pub mod pathsim;
pub mod plot;
pub mod validate;

pub use error::{ConfigError, LawError, SolverError};
pub use laws1d::{ppr_parameters, CohesiveLaw1D, PprParams};
pub use mixedmode::{
    classify_region, CouplingF, CouplingMode, HistoryPair, LoadingDensity, MixedModeLaw, PsiEval,
    Region,
};
pub use laminate::{
    assemble, energetic_step, equilibrium_step, run_evolution, Evolution, LaminateProblem,
    QuasistaticState, Scheme, SolverOptions,
};
pub use pathsim::{run_case, simulate_path, LoadingPath, PathTrace};
pub use validate::{CheckReport, CheckStatus, GridSpec};
