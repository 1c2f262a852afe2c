use crate::error::{Error, Result};
use crate::hamiltonians::{h_xx, h_yy};
use crate::linalg::{expm_hermitian, ComplexMatrix};

/// A Hamiltonian held constant for `duration` (in units of `1/g`).
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSegment {
    hamiltonian: ComplexMatrix,
    duration: f64,
}

impl PulseSegment {
    pub fn new(hamiltonian: ComplexMatrix, duration: f64) -> Result<Self> {
        if !(duration >= 0.0 && duration.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "segment duration must be finite and nonnegative, got {duration}"
            )));
        }
        if !hamiltonian.is_hermitian() {
            return Err(Error::NotHermitian {
                deviation: hamiltonian.hermiticity_error(),
            });
        }
        Ok(Self {
            hamiltonian,
            duration,
        })
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// `exp(−i H τ)`.
    pub fn unitary(&self) -> ComplexMatrix {
        expm_hermitian(&self.hamiltonian, self.duration).expect("segment Hamiltonian is Hermitian")
    }

    /// Same Hamiltonian, different duration.
    pub fn with_duration(&self, duration: f64) -> Result<Self> {
        Self::new(self.hamiltonian.clone(), duration)
    }
}

/// Ordered list of pulse segments applied left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    segments: Vec<PulseSegment>,
    n_alternations: usize,
}

impl PulseSchedule {
    pub fn new(segments: Vec<PulseSegment>, n_alternations: usize) -> Result<Self> {
        if let Some(first) = segments.first() {
            let d = first.hamiltonian.rows();
            if let Some(bad) = segments.iter().find(|s| s.hamiltonian.rows() != d) {
                return Err(Error::DimensionMismatch {
                    expected: format!("{d}x{d}"),
                    found: bad.hamiltonian.shape_string(),
                });
            }
        }
        Ok(Self {
            segments,
            n_alternations: n_alternations.max(1),
        })
    }

    /// A single segment.
    pub fn single(hamiltonian: ComplexMatrix, duration: f64) -> Result<Self> {
        Self::new(vec![PulseSegment::new(hamiltonian, duration)?], 1)
    }

    pub fn empty() -> Self {
        Self {
            segments: Vec::new(),
            n_alternations: 1,
        }
    }

    pub fn segments(&self) -> &[PulseSegment] {
        &self.segments
    }

    pub fn n_alternations(&self) -> usize {
        self.n_alternations
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Hilbert-space dimension, or `None` for an empty schedule.
    pub fn dim(&self) -> Option<usize> {
        self.segments.first().map(|s| s.hamiltonian.rows())
    }

    /// Ordered product `U_last ⋯ U_first` of the segment propagators.
    pub fn unitary(&self, dim: usize) -> ComplexMatrix {
        self.segments
            .iter()
            .fold(ComplexMatrix::identity(dim), |acc, s| s.unitary().matmul(&acc))
    }
}

/// `2n` segments alternating `g σx^iσx^j` and `g σy^iσy^j`, each lasting `T/n`,
/// σxσx first in every period. For a closed system the product equals
/// `exp(−i h_xy T)` exactly because the two terms commute.
pub fn alternation_schedule(
    i: usize,
    j: usize,
    g: f64,
    total_time: f64,
    n: usize,
    n_qubits: usize,
) -> Result<PulseSchedule> {
    if n == 0 {
        return Err(Error::InvalidParameter("alternation count must be >= 1".into()));
    }
    if !(total_time > 0.0 && total_time.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "total time must be positive, got {total_time}"
        )));
    }
    let tau = total_time / n as f64;
    let xx = PulseSegment::new(h_xx(i, j, g, n_qubits)?, tau)?;
    let yy = PulseSegment::new(h_yy(i, j, g, n_qubits)?, tau)?;
    let segments = (0..n).flat_map(|_| [xx.clone(), yy.clone()]).collect();
    PulseSchedule::new(segments, n)
}

/// Applies the schedule to a ket (`d × 1`) or a density matrix (`d × d`).
pub fn evolve_closed(state: &ComplexMatrix, schedule: &PulseSchedule) -> Result<ComplexMatrix> {
    let Some(dim) = schedule.dim() else {
        return Ok(state.clone());
    };
    let is_ket = state.cols() == 1 && state.rows() == dim;
    let is_rho = state.rows() == dim && state.cols() == dim;
    if !is_ket && !is_rho {
        return Err(Error::DimensionMismatch {
            expected: format!("{dim}x1 or {dim}x{dim}"),
            found: state.shape_string(),
        });
    }
    let mut out = state.clone();
    for segment in &schedule.segments {
        let u = segment.unitary();
        out = if is_ket {
            u.matmul(&out)
        } else {
            out.conjugate_by(&u)
        };
    }
    Ok(out)
}
