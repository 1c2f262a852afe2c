//! Decoherence-free code spaces for collective dephasing.
//!
//! A [`CodeSpace`] is an explicit, ordered list of computational basis kets.
//! The standard codes are the qutrit codes `C_I` (single excitation) and
//! `C_II` (double excitation) on three qubits, the two-qubit pair
//! `{|01⟩, |10⟩}`, and the qubit `{|001⟩, |010⟩}` carved out of `C_I`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonians::{collective_sz, MAX_QUBITS};
use crate::linalg::{expm_hermitian, ComplexMatrix, ONE};

/// Leakage below this (negative) value signals a broken state rather than roundoff.
pub const LEAKAGE_ROUNDOFF: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardCode {
    /// `{|001⟩, |010⟩, |100⟩}`
    CI,
    /// `{|110⟩, |101⟩, |011⟩}`
    CII,
    /// `{|01⟩, |10⟩}`
    PairDfs,
    /// `{|001⟩, |010⟩}`
    QubitInCI,
}

impl StandardCode {
    pub const ALL: [StandardCode; 4] = [
        StandardCode::CI,
        StandardCode::CII,
        StandardCode::PairDfs,
        StandardCode::QubitInCI,
    ];

    /// CLI-facing name.
    pub fn name(self) -> &'static str {
        match self {
            StandardCode::CI => "CI",
            StandardCode::CII => "CII",
            StandardCode::PairDfs => "PAIR",
            StandardCode::QubitInCI => "QUBIT_CI",
        }
    }

    pub fn kets(self) -> &'static [&'static str] {
        match self {
            StandardCode::CI => &["001", "010", "100"],
            StandardCode::CII => &["110", "101", "011"],
            StandardCode::PairDfs => &["01", "10"],
            StandardCode::QubitInCI => &["001", "010"],
        }
    }

    pub fn build(self) -> CodeSpace {
        CodeSpace::new(self.kets()).expect("standard codes are well formed")
    }
}

impl fmt::Display for StandardCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StandardCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "CI" => Ok(StandardCode::CI),
            "CII" => Ok(StandardCode::CII),
            "PAIR" => Ok(StandardCode::PairDfs),
            "QUBIT_CI" => Ok(StandardCode::QubitInCI),
            other => Err(Error::UnknownCode(other.to_string())),
        }
    }
}

/// Looks up a standard code by its CLI name.
pub fn standard_code(name: &str) -> Result<CodeSpace> {
    Ok(name.parse::<StandardCode>()?.build())
}

/// Ordered set of computational basis kets spanning a code, with its projector.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpace {
    n_qubits: usize,
    labels: Vec<String>,
    indices: Vec<usize>,
    projector: ComplexMatrix,
}

impl CodeSpace {
    /// Builds a code from ket labels such as `"001"`. Labels must be
    /// distinct bitstrings of equal length; a common `S_z` eigenvalue is not
    /// required here (see [`CodeSpace::sz_eigenvalue`]).
    pub fn new<S: AsRef<str>>(kets: &[S]) -> Result<Self> {
        let first = kets
            .first()
            .ok_or_else(|| Error::InvalidCode("no basis kets".into()))?;
        let n_qubits = first.as_ref().len();
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let mut labels = Vec::with_capacity(kets.len());
        let mut indices = Vec::with_capacity(kets.len());
        for ket in kets {
            let label = ket.as_ref();
            if label.len() != n_qubits {
                return Err(Error::InvalidCode(format!(
                    "ket {label:?} has length {} (expected {n_qubits})",
                    label.len()
                )));
            }
            let index = usize::from_str_radix(label, 2)
                .ok()
                .filter(|_| label.bytes().all(|b| b == b'0' || b == b'1'))
                .ok_or_else(|| Error::InvalidCode(format!("ket {label:?} is not a bitstring")))?;
            if indices.contains(&index) {
                return Err(Error::InvalidCode(format!("duplicate ket {label:?}")));
            }
            labels.push(label.to_string());
            indices.push(index);
        }

        let dim = 1usize << n_qubits;
        let mut projector = ComplexMatrix::zeros(dim, dim);
        for &k in &indices {
            projector[(k, k)] = ONE;
        }
        Ok(Self {
            n_qubits,
            labels,
            indices,
            projector,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Hilbert-space dimension `2^n`.
    pub fn hilbert_dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Number of code kets.
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Basis indices of the code kets, in code order.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector
    }

    /// `k`-th code ket as a column vector in the full space.
    pub fn ket(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::basis_ket(self.hilbert_dim(), self.indices[k])
    }

    /// Equal-weight superposition of the code kets `which`.
    pub fn superposition(&self, which: &[usize]) -> ComplexMatrix {
        let mut psi = ComplexMatrix::zeros(self.hilbert_dim(), 1);
        let amp = Complex64::new(1.0 / (which.len() as f64).sqrt(), 0.0);
        for &k in which {
            psi[(self.indices[k], 0)] += amp;
        }
        psi
    }

    /// Common `S_z` eigenvalue of all code kets, or `None` if they differ.
    pub fn sz_eigenvalue(&self) -> Option<f64> {
        let values: Vec<f64> = self
            .indices
            .iter()
            .map(|&b| self.n_qubits as f64 - 2.0 * (b as u32).count_ones() as f64)
            .collect();
        let first = values[0];
        values.iter().all(|&v| v == first).then_some(first)
    }

    /// Whether the code is a decoherence-free subspace for collective dephasing.
    pub fn is_dfs(&self) -> bool {
        self.sz_eigenvalue().is_some()
    }

    fn check_dims(&self, m: &ComplexMatrix) -> Result<()> {
        let d = self.hilbert_dim();
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: format!("{d}x{d}"),
                found: m.shape_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for CodeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kets: Vec<String> = self.labels.iter().map(|l| format!("|{l}>")).collect();
        write!(f, "{{{}}}", kets.join(", "))
    }
}

/// Population outside the code, `1 − tr(P ρ)`, clamped to `[0, 1]` against roundoff.
pub fn leakage(rho: &ComplexMatrix, code: &CodeSpace) -> Result<f64> {
    code.check_dims(rho)?;
    let inside: f64 = code.indices.iter().map(|&k| rho[(k, k)].re).sum();
    let value = 1.0 - inside;
    if !(-LEAKAGE_ROUNDOFF..=1.0 + LEAKAGE_ROUNDOFF).contains(&value) {
        return Err(Error::LeakageOutOfRange(value));
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Matrix elements `⟨b_r|H|b_s⟩` over the code basis, in code order.
pub fn project_operator(h: &ComplexMatrix, code: &CodeSpace) -> Result<ComplexMatrix> {
    code.check_dims(h)?;
    let k = code.dim();
    let mut out = ComplexMatrix::zeros(k, k);
    for (r, &br) in code.indices.iter().enumerate() {
        for (s, &bs) in code.indices.iter().enumerate() {
            out[(r, s)] = h[(br, bs)];
        }
    }
    Ok(out)
}

/// `max_{r,s} ‖e^{−iφS_z} |b_r⟩⟨b_s| e^{iφS_z} − |b_r⟩⟨b_s|‖_max` over all code
/// matrix units, including coherences. Zero (to roundoff) for a DFS.
pub fn dephasing_invariance_check(code: &CodeSpace, phi: f64) -> f64 {
    let sz = collective_sz(code.n_qubits).expect("code qubit count already validated");
    let kick = expm_hermitian(&sz, phi).expect("S_z is Hermitian");
    let d = code.hilbert_dim();
    let mut worst = 0.0_f64;
    for &br in &code.indices {
        for &bs in &code.indices {
            let mut unit = ComplexMatrix::zeros(d, d);
            unit[(br, bs)] = ONE;
            worst = worst.max(unit.conjugate_by(&kick).max_abs_diff(&unit));
        }
    }
    worst
}
