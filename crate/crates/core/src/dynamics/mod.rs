//! Pulse schedules, closed and open evolution, fidelity, and the
//! alternation experiment.

mod experiment;
mod fidelity;
mod lindblad;
mod schedule;

pub use experiment::{
    run_alternation_experiment, sweep_alternation, ExperimentConfig, ExperimentResult, InitialState,
    DEFAULT_STEPS_PER_SEGMENT,
};
pub use fidelity::fidelity;
pub use lindblad::{
    dissipator, integrate_lindblad, lindblad_rhs, LindbladModel, Trajectory, DENSITY_TOL, MAX_TRACE_DRIFT,
};
pub use schedule::{alternation_schedule, evolve_closed, PulseSchedule, PulseSegment};
