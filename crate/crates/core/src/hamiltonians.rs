//! Pauli strings, Sørensen–Mølmer pair Hamiltonians and trap helpers.
//!
//! Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of
//! the basis index and the first character of a ket label: `|011⟩` has index 3.
//! Single-qubit conventions: `σz|0⟩ = |0⟩`, `σx|0⟩ = |1⟩`, `σy|0⟩ = i|1⟩`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, ONE, ZERO};

pub const MAX_QUBITS: usize = 6;

/// Reduced Planck constant in J·s. Used only by [`lamb_dicke`].
pub const HBAR_SI: f64 = 1.0545718e-34;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn matrix(self) -> ComplexMatrix {
        let entries = match self {
            Axis::X => vec![ZERO, ONE, ONE, ZERO],
            Axis::Y => vec![ZERO, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), ZERO],
            Axis::Z => vec![ONE, ZERO, ZERO, -ONE],
        };
        ComplexMatrix::new(2, 2, entries).expect("2x2 Pauli")
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        };
        f.write_str(s)
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(format!("unknown Pauli axis {other:?}")),
        }
    }
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(n_qubits));
    }
    Ok(())
}

fn check_index(index: usize, n_qubits: usize) -> Result<()> {
    if index >= n_qubits {
        return Err(Error::IndexOutOfRange { index, n_qubits });
    }
    Ok(())
}

fn check_pair(i: usize, j: usize, n_qubits: usize) -> Result<()> {
    check_qubit_count(n_qubits)?;
    check_index(i, n_qubits)?;
    check_index(j, n_qubits)?;
    if i == j {
        return Err(Error::SameQubit(i));
    }
    Ok(())
}

/// `I ⊗ … ⊗ σ_axis ⊗ … ⊗ I` with the Pauli on `qubit`.
pub fn pauli(axis: Axis, qubit: usize, n_qubits: usize) -> Result<ComplexMatrix> {
    check_qubit_count(n_qubits)?;
    check_index(qubit, n_qubits)?;
    let single = axis.matrix();
    let id = ComplexMatrix::identity(2);
    let mut out = if qubit == 0 { single.clone() } else { id.clone() };
    for k in 1..n_qubits {
        out = kron(&out, if k == qubit { &single } else { &id });
    }
    Ok(out)
}

/// `S_z = Σ_k σz^k`; the diagonal entry of `|b⟩` is `#zeros(b) − #ones(b)`.
pub fn collective_sz(n_qubits: usize) -> Result<ComplexMatrix> {
    check_qubit_count(n_qubits)?;
    let dim = 1usize << n_qubits;
    let diag: Vec<f64> = (0..dim)
        .map(|b| {
            let ones = (b as u32).count_ones() as f64;
            n_qubits as f64 - 2.0 * ones
        })
        .collect();
    Ok(ComplexMatrix::from_real_diag(&diag))
}

/// Total excitation count `Σ_k |1⟩⟨1|_k`.
pub fn excitation_number(n_qubits: usize) -> Result<ComplexMatrix> {
    check_qubit_count(n_qubits)?;
    let dim = 1usize << n_qubits;
    let diag: Vec<f64> = (0..dim).map(|b| (b as u32).count_ones() as f64).collect();
    Ok(ComplexMatrix::from_real_diag(&diag))
}

fn pair_product(axis: Axis, i: usize, j: usize, g: f64, n_qubits: usize) -> Result<ComplexMatrix> {
    check_pair(i, j, n_qubits)?;
    Ok(pauli(axis, i, n_qubits)?
        .matmul(&pauli(axis, j, n_qubits)?)
        .scale_real(g))
}

/// `g σx^i σx^j`, the Sørensen–Mølmer interaction.
pub fn h_xx(i: usize, j: usize, g: f64, n_qubits: usize) -> Result<ComplexMatrix> {
    pair_product(Axis::X, i, j, g, n_qubits)
}

/// `g σy^i σy^j`, the same interaction with the laser phases shifted by π/2.
pub fn h_yy(i: usize, j: usize, g: f64, n_qubits: usize) -> Result<ComplexMatrix> {
    pair_product(Axis::Y, i, j, g, n_qubits)
}

/// `g (σx^i σx^j + σy^i σy^j)`, the XY exchange Hamiltonian.
pub fn h_xy(i: usize, j: usize, g: f64, n_qubits: usize) -> Result<ComplexMatrix> {
    Ok(&h_xx(i, j, g, n_qubits)? + &h_yy(i, j, g, n_qubits)?)
}

/// Laser/detuning parameters of one Sørensen–Mølmer drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParameters {
    /// On-resonance Rabi frequency Ω.
    pub rabi_frequency: f64,
    /// Lamb–Dicke parameter η.
    pub lamb_dicke: f64,
    /// Detuning Δ; may be negative.
    pub detuning: f64,
}

impl PulseParameters {
    pub fn new(rabi_frequency: f64, lamb_dicke: f64, detuning: f64) -> Result<Self> {
        let p = Self {
            rabi_frequency,
            lamb_dicke,
            detuning,
        };
        coupling_strength(&p)?;
        Ok(p)
    }
}

/// `g = η²Ω²/Δ`. A negative detuning yields a negative coupling.
pub fn coupling_strength(p: &PulseParameters) -> Result<f64> {
    if p.detuning == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    let g = p.lamb_dicke.powi(2) * p.rabi_frequency.powi(2) / p.detuning;
    if !g.is_finite() || g == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "coupling η²Ω²/Δ = {g} must be finite and nonzero"
        )));
    }
    Ok(g)
}

/// Linear-trap geometry entering the Lamb–Dicke parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapParameters {
    pub ion_count: u32,
    /// Ion mass in kg.
    pub ion_mass: f64,
    /// Trap angular frequency in rad/s.
    pub trap_frequency: f64,
    /// Drive wavelength in m.
    pub drive_wavelength: f64,
    /// Angle between the drive wavevector and the trap axis, in rad.
    pub beam_angle: f64,
}

impl TrapParameters {
    pub fn new(
        ion_count: u32,
        ion_mass: f64,
        trap_frequency: f64,
        drive_wavelength: f64,
        beam_angle: f64,
    ) -> Result<Self> {
        if ion_count == 0 {
            return Err(Error::InvalidParameter("ion_count must be positive".into()));
        }
        for (name, value) in [
            ("ion_mass", ion_mass),
            ("trap_frequency", trap_frequency),
            ("drive_wavelength", drive_wavelength),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if !beam_angle.is_finite() {
            return Err(Error::InvalidParameter("beam_angle must be finite".into()));
        }
        Ok(Self {
            ion_count,
            ion_mass,
            trap_frequency,
            drive_wavelength,
            beam_angle,
        })
    }
}

/// `η = √(ħ / 2NMω) · cos θ / λ`, with ħ in SI units.
///
/// The wavelength enters as `1/λ`; conventions that use the
/// wavevector `2π/λ` give a value larger by `2π`.
pub fn lamb_dicke(trap: &TrapParameters) -> f64 {
    let zero_point = (HBAR_SI
        / (2.0 * trap.ion_count as f64 * trap.ion_mass * trap.trap_frequency))
        .sqrt();
    let eta = zero_point / trap.drive_wavelength * trap.beam_angle.cos();
    if !(0.0..1.0).contains(&eta.abs()) {
        log::warn!("Lamb-Dicke parameter {eta} is outside the Lamb-Dicke regime");
    }
    eta
}

/// Physical duration of a dimensionless time `τ` for coupling `g`: `t = τ/|g|`.
pub fn physical_time(dimensionless: f64, g: f64) -> f64 {
    dimensionless / g.abs()
}
