use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::fidelity::fidelity;
use super::lindblad::{integrate_lindblad, validate_density, LindbladModel};
use super::schedule::alternation_schedule;
use crate::codes::CodeSpace;
use crate::error::{Error, Result};
use crate::hamiltonians::{h_xy, MAX_QUBITS};
use crate::linalg::{expm_hermitian, ComplexMatrix};

pub const DEFAULT_STEPS_PER_SEGMENT: usize = 200;

/// Named initial states for the three-qubit experiments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialState {
    /// A computational basis ket given by its label, e.g. `001`.
    Basis(String),
    /// `(|001⟩ + |010⟩)/√2`.
    Plus,
}

impl InitialState {
    pub fn density(&self, n_qubits: usize) -> Result<ComplexMatrix> {
        let dim = 1usize << n_qubits;
        let ket = match self {
            InitialState::Basis(label) => {
                if label.len() != n_qubits {
                    return Err(Error::InvalidState(format!(
                        "state |{label}> does not have {n_qubits} qubits"
                    )));
                }
                let index = usize::from_str_radix(label, 2)
                    .map_err(|_| Error::InvalidState(format!("state label {label:?} is not a bitstring")))?;
                ComplexMatrix::basis_ket(dim, index)
            }
            InitialState::Plus => {
                if n_qubits != 3 {
                    return Err(Error::InvalidState("state `plus` is defined on 3 qubits".into()));
                }
                let mut psi = ComplexMatrix::zeros(dim, 1);
                let amp = std::f64::consts::FRAC_1_SQRT_2;
                psi[(0b001, 0)] = amp.into();
                psi[(0b010, 0)] = amp.into();
                psi
            }
        };
        Ok(ComplexMatrix::outer(&ket))
    }
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "plus" {
            return Ok(InitialState::Plus);
        }
        if !s.is_empty() && s.len() <= MAX_QUBITS && s.bytes().all(|b| b == b'0' || b == b'1') {
            return Ok(InitialState::Basis(s.to_string()));
        }
        Err(Error::InvalidState(format!("unknown state {s:?} (expected a bitstring or `plus`)")))
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialState::Basis(label) => f.write_str(label),
            InitialState::Plus => f.write_str("plus"),
        }
    }
}

/// Parameters of one alternation run. Defaults: `γ = g = 1`, `T = π`,
/// pair (0, 1) on three qubits, 200 RK4 steps per segment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub gamma: f64,
    pub g: f64,
    pub total_time: f64,
    pub pair: (usize, usize),
    pub n_qubits: usize,
    pub steps_per_segment: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 1,
            gamma: 1.0,
            g: 1.0,
            total_time: PI,
            pair: (0, 1),
            n_qubits: 3,
            steps_per_segment: DEFAULT_STEPS_PER_SEGMENT,
        }
    }
}

impl ExperimentConfig {
    /// RK4 step: each segment of length `T/n` is split into `steps_per_segment` steps.
    pub fn step(&self) -> f64 {
        self.total_time / self.n as f64 / self.steps_per_segment as f64
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..self.clone() }
    }
}

/// Output of [`run_alternation_experiment`].
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub n: usize,
    pub times: Vec<f64>,
    pub leakage_series: Vec<f64>,
    pub final_rho: ComplexMatrix,
    /// `exp(−i h_xy T) ρ0 exp(+i h_xy T)`.
    pub target_rho: ComplexMatrix,
    pub fidelity_vs_target: f64,
    pub one_minus_f: f64,
    pub integrated_leakage: f64,
    pub max_trace_drift: f64,
}

/// Integrates the alternating σxσx/σyσy schedule under collective dephasing
/// (`L = S_z`, rate `γ`) and compares the result with direct XY evolution.
pub fn run_alternation_experiment(
    config: &ExperimentConfig,
    rho0: &ComplexMatrix,
    code: &CodeSpace,
) -> Result<ExperimentResult> {
    if config.steps_per_segment == 0 {
        return Err(Error::InvalidParameter("steps_per_segment must be >= 1".into()));
    }
    let (i, j) = config.pair;
    let schedule = alternation_schedule(i, j, config.g, config.total_time, config.n, config.n_qubits)?;
    validate_density(rho0, 1 << config.n_qubits)?;
    let model = LindbladModel::collective_dephasing(schedule, config.n_qubits, config.gamma)?;
    let trajectory = integrate_lindblad(rho0, &model, config.step(), code)?;

    let direct = expm_hermitian(&h_xy(i, j, config.g, config.n_qubits)?, config.total_time)?;
    let target_rho = rho0.conjugate_by(&direct);
    let f = fidelity(&target_rho, &trajectory.final_rho)?;

    Ok(ExperimentResult {
        n: config.n,
        times: trajectory.times,
        leakage_series: trajectory.leakage,
        final_rho: trajectory.final_rho,
        target_rho,
        fidelity_vs_target: f,
        one_minus_f: 1.0 - f,
        integrated_leakage: trajectory.integrated_leakage,
        max_trace_drift: trajectory.max_trace_drift,
    })
}

/// Runs one experiment per `n`, optionally in parallel; results are sorted by `n`.
pub fn sweep_alternation(
    base: &ExperimentConfig,
    ns: &[usize],
    rho0: &ComplexMatrix,
    code: &CodeSpace,
    parallel: bool,
) -> Result<Vec<ExperimentResult>> {
    let run = |&n: &usize| run_alternation_experiment(&base.with_n(n), rho0, code);
    let mut results: Vec<ExperimentResult> = if parallel {
        ns.par_iter().map(run).collect::<Result<_>>()?
    } else {
        ns.iter().map(run).collect::<Result<_>>()?
    };
    results.sort_by_key(|r| r.n);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analytic_total_population;
    use crate::codes::StandardCode;
    use approx::assert_relative_eq;

    fn rho_001() -> ComplexMatrix {
        InitialState::Basis("001".into()).density(3).unwrap()
    }

    #[test]
    fn noiseless_runs_hit_target() {
        let ci = StandardCode::CI.build();
        for state in [InitialState::Basis("001".into()), InitialState::Plus] {
            let rho0 = state.density(3).unwrap();
            for n in [1, 3] {
                let cfg = ExperimentConfig {
                    n,
                    gamma: 0.0,
                    ..Default::default()
                };
                let r = run_alternation_experiment(&cfg, &rho0, &ci).unwrap();
                assert!(r.one_minus_f.abs() <= 1e-8, "n={n}: {}", r.one_minus_f);
            }
        }
    }

    #[test]
    fn integrated_leakage_follows_population_model() {
        let ci = StandardCode::CI.build();
        for n in [1, 2, 5] {
            let cfg = ExperimentConfig {
                n,
                gamma: 0.0,
                ..Default::default()
            };
            let r = run_alternation_experiment(&cfg, &rho_001(), &ci).unwrap();
            let model = analytic_total_population(PI, n);
            assert_relative_eq!(r.integrated_leakage, model, max_relative = 5e-3);
        }
    }

    #[test]
    fn more_alternations_reduce_error() {
        let ci = StandardCode::CI.build();
        let base = ExperimentConfig {
            steps_per_segment: 50,
            ..Default::default()
        };
        let results = sweep_alternation(&base, &[8, 1], &rho_001(), &ci, true).unwrap();
        assert_eq!(results[0].n, 1);
        assert!(results[0].one_minus_f > results[1].one_minus_f);
    }

    #[test]
    fn parse_states() {
        assert_eq!("plus".parse::<InitialState>().unwrap(), InitialState::Plus);
        assert_eq!(
            "010".parse::<InitialState>().unwrap(),
            InitialState::Basis("010".into())
        );
        assert!("0x1".parse::<InitialState>().is_err());
        assert!(InitialState::Basis("01".into()).density(3).is_err());
    }
}
