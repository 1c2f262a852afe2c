use num_complex::Complex64;

use super::schedule::PulseSchedule;
use crate::analysis::trapezoid;
use crate::codes::{leakage, CodeSpace};
use crate::error::{Error, Result};
use crate::hamiltonians::collective_sz;
use crate::linalg::{ComplexMatrix, I, ZERO};

/// Trace drift that aborts an integration.
pub const MAX_TRACE_DRIFT: f64 = 1e-6;

/// Tolerance used when validating initial density operators.
pub const DENSITY_TOL: f64 = 1e-10;

/// Piecewise-constant Hamiltonian schedule plus time-independent jump operators.
#[derive(Debug, Clone)]
pub struct LindbladModel {
    schedule: PulseSchedule,
    jumps: Vec<ComplexMatrix>,
    rates: Vec<f64>,
}

impl LindbladModel {
    pub fn new(schedule: PulseSchedule, jumps: Vec<ComplexMatrix>, rates: Vec<f64>) -> Result<Self> {
        if jumps.len() != rates.len() {
            return Err(Error::InvalidParameter(format!(
                "{} jump operators but {} rates",
                jumps.len(),
                rates.len()
            )));
        }
        if let Some(&bad) = rates.iter().find(|&&r| !(r >= 0.0 && r.is_finite())) {
            return Err(Error::InvalidParameter(format!(
                "rates must be finite and nonnegative, got {bad}"
            )));
        }
        if let Some(dim) = schedule.dim() {
            if let Some(bad) = jumps.iter().find(|l| l.rows() != dim || l.cols() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: format!("{dim}x{dim}"),
                    found: bad.shape_string(),
                });
            }
        }
        Ok(Self {
            schedule,
            jumps,
            rates,
        })
    }

    /// Single collective jump `L = S_z` at rate `gamma`.
    pub fn collective_dephasing(schedule: PulseSchedule, n_qubits: usize, gamma: f64) -> Result<Self> {
        Self::new(schedule, vec![collective_sz(n_qubits)?], vec![gamma])
    }

    pub fn schedule(&self) -> &PulseSchedule {
        &self.schedule
    }

    pub fn jumps(&self) -> &[ComplexMatrix] {
        &self.jumps
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }
}

/// `Σ_k γ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})`.
pub fn dissipator(rho: &ComplexMatrix, jumps: &[ComplexMatrix], rates: &[f64]) -> Result<ComplexMatrix> {
    let d = rho.rows();
    let mut out = ComplexMatrix::zeros(d, d);
    for (l, &gamma) in jumps.iter().zip(rates) {
        check_square(l, d)?;
        if gamma == 0.0 {
            continue;
        }
        let l_dag = l.adjoint();
        let sandwich = l.matmul(rho).matmul(&l_dag);
        let anti = l_dag.matmul(l).anticommutator(rho);
        out += &(&sandwich - &anti.scale_real(0.5)).scale_real(gamma);
    }
    Ok(out)
}

/// `dρ/dt = −i[H, ρ] + Σ_k γ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})`, dense reference form.
pub fn lindblad_rhs(
    rho: &ComplexMatrix,
    h: &ComplexMatrix,
    jumps: &[ComplexMatrix],
    rates: &[f64],
) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::InvalidShape(rho.shape_string()));
    }
    check_square(h, rho.rows())?;
    if jumps.len() != rates.len() {
        return Err(Error::InvalidParameter("jump and rate counts differ".into()));
    }
    let mut out = h.commutator(rho).scale(-I);
    out += &dissipator(rho, jumps, rates)?;
    Ok(out)
}

fn check_square(m: &ComplexMatrix, d: usize) -> Result<()> {
    if m.rows() != d || m.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: format!("{d}x{d}"),
            found: m.shape_string(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct SparseOp {
    // (row, col, value)
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOp {
    fn from_dense(m: &ComplexMatrix) -> Self {
        let cols = m.cols();
        let entries = m
            .as_slice()
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .map(|(k, &z)| (k / cols, k % cols, z))
            .collect();
        Self { entries }
    }
}

#[derive(Debug, Clone)]
struct GeneralJump {
    rate: f64,
    op: SparseOp,
    op_dag_op: SparseOp,
}

/// Liouvillian of one pulse segment, laid out for repeated application.
///
/// Diagonal jump operators collapse to an elementwise factor on ρ; the
/// Hamiltonian and any non-diagonal jumps are applied as sparse products.
#[derive(Debug, Clone)]
pub(crate) struct SegmentGenerator {
    dim: usize,
    hamiltonian: SparseOp,
    diagonal_factor: Option<Vec<Complex64>>,
    general: Vec<GeneralJump>,
}

impl SegmentGenerator {
    pub(crate) fn new(h: &ComplexMatrix, jumps: &[ComplexMatrix], rates: &[f64]) -> Self {
        let dim = h.rows();
        let mut diagonal_factor: Option<Vec<Complex64>> = None;
        let mut general = Vec::new();
        for (l, &rate) in jumps.iter().zip(rates) {
            if rate == 0.0 {
                continue;
            }
            let is_diagonal = (0..dim).all(|r| (0..dim).all(|c| r == c || l[(r, c)] == ZERO));
            if is_diagonal {
                let factor = diagonal_factor.get_or_insert_with(|| vec![ZERO; dim * dim]);
                for a in 0..dim {
                    let la = l[(a, a)];
                    for b in 0..dim {
                        let lb = l[(b, b)];
                        factor[a * dim + b] +=
                            rate * (la * lb.conj() - 0.5 * (la.norm_sqr() + lb.norm_sqr()));
                    }
                }
            } else {
                general.push(GeneralJump {
                    rate,
                    op: SparseOp::from_dense(l),
                    op_dag_op: SparseOp::from_dense(&l.adjoint().matmul(l)),
                });
            }
        }
        Self {
            dim,
            hamiltonian: SparseOp::from_dense(h),
            diagonal_factor,
            general,
        }
    }

    /// `out ← L[ρ]` for a row-major ρ.
    pub(crate) fn apply(&self, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        out.fill(ZERO);
        // −i H ρ + i ρ H
        for &(r, c, v) in &self.hamiltonian.entries {
            let w = -I * v;
            for x in 0..d {
                out[r * d + x] += w * rho[c * d + x];
            }
            for y in 0..d {
                out[y * d + c] -= w * rho[y * d + r];
            }
        }
        if let Some(factor) = &self.diagonal_factor {
            for ((o, &f), &p) in out.iter_mut().zip(factor).zip(rho) {
                *o += f * p;
            }
        }
        if self.general.is_empty() {
            return;
        }
        let mut l_rho = vec![ZERO; d * d];
        for jump in &self.general {
            l_rho.fill(ZERO);
            for &(r, c, v) in &jump.op.entries {
                for x in 0..d {
                    l_rho[r * d + x] += v * rho[c * d + x];
                }
            }
            // (Lρ) L†: column r of the result gathers conj(L[r][c]) · (Lρ)[·][c]
            for &(r, c, v) in &jump.op.entries {
                let w = jump.rate * v.conj();
                for y in 0..d {
                    out[y * d + r] += w * l_rho[y * d + c];
                }
            }
            for &(r, c, v) in &jump.op_dag_op.entries {
                let w = 0.5 * jump.rate * v;
                for x in 0..d {
                    out[r * d + x] -= w * rho[c * d + x];
                }
                for y in 0..d {
                    out[y * d + c] -= w * rho[y * d + r];
                }
            }
        }
    }
}

/// Time series produced by [`integrate_lindblad`].
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub leakage: Vec<f64>,
    pub final_rho: ComplexMatrix,
    /// Trapezoid integral of `leakage` over `times`.
    pub integrated_leakage: f64,
    /// Largest `|tr ρ − 1|` seen at any step.
    pub max_trace_drift: f64,
}

pub(crate) fn validate_density(rho: &ComplexMatrix, dim: usize) -> Result<()> {
    check_square(rho, dim)?;
    let herm = rho.hermiticity_error();
    if herm > DENSITY_TOL {
        return Err(Error::InvalidState(format!(
            "initial state is not Hermitian (deviation {herm:.3e})"
        )));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidState(format!("initial state has trace {tr}")));
    }
    let min = rho.min_eigenvalue()?;
    if min < -DENSITY_TOL {
        return Err(Error::InvalidState(format!(
            "initial state has negative eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

/// Integrates the master equation with fixed-step classical RK4.
///
/// Each segment of the schedule is split into `ceil(duration / step)` equal
/// steps so segment boundaries fall on the grid. Leakage out of `code` is
/// recorded at `t = 0` and after every step.
pub fn integrate_lindblad(
    rho0: &ComplexMatrix,
    model: &LindbladModel,
    step: f64,
    code: &CodeSpace,
) -> Result<Trajectory> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidStep(step));
    }
    let dim = model.schedule.dim().unwrap_or(rho0.rows());
    validate_density(rho0, dim)?;
    if code.hilbert_dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: format!("code on {dim}-dimensional space"),
            found: format!("code on {}-dimensional space", code.hilbert_dim()),
        });
    }

    let mut rho = rho0.clone();
    let mut t = 0.0;
    let mut times = vec![0.0];
    let mut leak = vec![leakage(&rho, code)?];
    let mut max_drift = (rho.trace().re - 1.0).abs();

    let n = dim * dim;
    let mut k1 = vec![ZERO; n];
    let mut k2 = vec![ZERO; n];
    let mut k3 = vec![ZERO; n];
    let mut k4 = vec![ZERO; n];
    let mut scratch = vec![ZERO; n];

    for segment in model.schedule.segments() {
        if segment.duration() == 0.0 {
            continue;
        }
        let generator = SegmentGenerator::new(segment.hamiltonian(), &model.jumps, &model.rates);
        let n_steps = (segment.duration() / step - 1e-9).ceil().max(1.0) as usize;
        let h = segment.duration() / n_steps as f64;
        let start = t;
        for k in 0..n_steps {
            let y = rho.as_mut_slice();
            generator.apply(y, &mut k1);
            axpy_into(&mut scratch, y, 0.5 * h, &k1);
            generator.apply(&scratch, &mut k2);
            axpy_into(&mut scratch, y, 0.5 * h, &k2);
            generator.apply(&scratch, &mut k3);
            axpy_into(&mut scratch, y, h, &k3);
            generator.apply(&scratch, &mut k4);
            let w = h / 6.0;
            for i in 0..n {
                y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }

            t = start + (k + 1) as f64 * h;
            let drift = (rho.trace().re - 1.0).abs();
            if drift.is_nan() || drift > MAX_TRACE_DRIFT {
                return Err(Error::StepTooLarge { drift, time: t });
            }
            max_drift = max_drift.max(drift);
            times.push(t);
            leak.push(leakage(&rho, code)?);
        }
    }

    let integrated_leakage = trapezoid(&times, &leak);
    Ok(Trajectory {
        times,
        leakage: leak,
        final_rho: rho,
        integrated_leakage,
        max_trace_drift: max_drift,
    })
}

fn axpy_into(out: &mut [Complex64], y: &[Complex64], a: f64, x: &[Complex64]) {
    for ((o, &yi), &xi) in out.iter_mut().zip(y).zip(x) {
        *o = yi + a * xi;
    }
}
