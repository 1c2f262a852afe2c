//! Lie closure of projected exchange generators.
//!
//! Each Hermitian generator `H` is mapped to the anti-Hermitian, traceless
//! element `i(H − tr H/k)` of `su(k)`. The span is grown by commutators and
//! kept orthonormal under `⟨A, B⟩ = Re tr(A†B)` with modified Gram–Schmidt.
//! For a qutrit code a closure of dimension 8 is all of `su(3)`.

use crate::codes::{project_operator, CodeSpace};
use crate::error::{Error, Result};
use crate::hamiltonians::h_xy;
use crate::linalg::{ComplexMatrix, I};

/// Gram–Schmidt residual norm below which a candidate is considered dependent.
pub const RANK_TOL: f64 = 1e-9;

/// Candidates with norm below this before normalisation are treated as zero.
const ZERO_NORM: f64 = 1e-12;

pub const MAX_ROUNDS: usize = 20;

#[derive(Debug, Clone)]
pub struct LieClosureReport {
    pub generator_count: usize,
    pub closure_dimension: usize,
    /// Number of commutator rounds run, including the final one that added nothing.
    pub iterations: usize,
    /// Orthonormal anti-Hermitian traceless basis of the closure.
    pub basis: Vec<ComplexMatrix>,
}

impl LieClosureReport {
    /// Dimension of the matrices the algebra acts on.
    pub fn matrix_dim(&self) -> Option<usize> {
        self.basis.first().map(|b| b.rows())
    }

    /// Whether the closure is all of `su(k)` for `k × k` generators.
    pub fn is_full_su(&self, k: usize) -> bool {
        self.closure_dimension == k * k - 1
    }
}

struct Span {
    basis: Vec<ComplexMatrix>,
}

impl Span {
    // Adds `candidate` if it is independent of the current basis; returns whether it was added.
    fn try_insert(&mut self, candidate: ComplexMatrix) -> bool {
        let norm = candidate.frobenius_norm();
        if norm < ZERO_NORM {
            return false;
        }
        let mut v = candidate.scale_real(1.0 / norm);
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for b in &self.basis {
                let overlap = b.hs_inner(&v);
                v = &v - &b.scale_real(overlap);
            }
        }
        let residual = v.frobenius_norm();
        if residual <= RANK_TOL {
            return false;
        }
        self.basis.push(v.scale_real(1.0 / residual));
        true
    }
}

fn to_su(h: &ComplexMatrix) -> ComplexMatrix {
    let k = h.rows();
    let shift = h.trace() / k as f64;
    let traceless = h - &ComplexMatrix::identity(k).scale(shift);
    traceless.scale(I)
}

/// Smallest Lie algebra containing `i·H` (traceless part) for every generator `H`.
pub fn lie_closure(generators: &[ComplexMatrix]) -> Result<LieClosureReport> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let k = first.rows();
    for g in generators {
        if g.rows() != k || g.cols() != k {
            return Err(Error::DimensionMismatch {
                expected: format!("{k}x{k}"),
                found: g.shape_string(),
            });
        }
        if !g.is_hermitian() {
            return Err(Error::NotHermitian {
                deviation: g.hermiticity_error(),
            });
        }
    }

    let mut span = Span { basis: Vec::new() };
    for g in generators {
        span.try_insert(to_su(g));
    }

    // Each round commutes every basis element with every element added in the
    // previous round, in lexicographic index order.
    let mut fresh_start = 0;
    let mut iterations = 0;
    loop {
        if iterations == MAX_ROUNDS {
            return Err(Error::ClosureDidNotConverge(MAX_ROUNDS));
        }
        iterations += 1;
        let current = span.basis.len();
        let mut added = false;
        for a in 0..current {
            for b in (a + 1).max(fresh_start)..current {
                let comm = span.basis[a].commutator(&span.basis[b]);
                added |= span.try_insert(comm);
            }
        }
        if !added {
            break;
        }
        fresh_start = current;
    }

    Ok(LieClosureReport {
        generator_count: generators.len(),
        closure_dimension: span.basis.len(),
        iterations,
        basis: span.basis,
    })
}

/// Projects `h_xy(i, j)` for each pair onto a qutrit code and closes the set.
pub fn check_encoded_universality(code: &CodeSpace, pairs: &[(usize, usize)]) -> Result<LieClosureReport> {
    if code.dim() != 3 {
        return Err(Error::CodeDimensionUnsupported(code.dim()));
    }
    if pairs.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let generators = pairs
        .iter()
        .map(|&(i, j)| project_operator(&h_xy(i, j, 1.0, code.n_qubits())?, code))
        .collect::<Result<Vec<_>>>()?;
    lie_closure(&generators)
}

/// All unordered qubit pairs `(i, j)` with `i < j`.
pub fn all_pairs(n_qubits: usize) -> Vec<(usize, usize)> {
    (0..n_qubits)
        .flat_map(|i| (i + 1..n_qubits).map(move |j| (i, j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::StandardCode;
    use crate::hamiltonians::Axis;

    #[test]
    fn su2_from_paulis() {
        let r = lie_closure(&[Axis::X.matrix()]).unwrap();
        assert_eq!(r.closure_dimension, 1);
        let r = lie_closure(&[Axis::X.matrix(), Axis::Y.matrix()]).unwrap();
        assert_eq!(r.closure_dimension, 3);
        assert!(r.is_full_su(2));
    }

    #[test]
    fn identity_generators_vanish() {
        let r = lie_closure(&[ComplexMatrix::identity(3)]).unwrap();
        assert_eq!(r.closure_dimension, 0);
        assert!(matches!(lie_closure(&[]), Err(Error::EmptyGenerators)));
    }

    #[test]
    fn qutrit_codes_are_universal() {
        for code in [StandardCode::CI, StandardCode::CII] {
            let report = check_encoded_universality(&code.build(), &all_pairs(3)).unwrap();
            assert_eq!(report.closure_dimension, 8, "{code}");
            assert!(report.iterations <= 4);
            for pair in all_pairs(3) {
                let single = check_encoded_universality(&code.build(), &[pair]).unwrap();
                assert_eq!(single.closure_dimension, 1);
            }
        }
    }

    #[test]
    fn basis_is_orthonormal_antihermitian_traceless() {
        let report = check_encoded_universality(&StandardCode::CI.build(), &all_pairs(3)).unwrap();
        for (a, ba) in report.basis.iter().enumerate() {
            assert!((&ba.adjoint() + ba).max_abs() <= 1e-10);
            assert!(ba.trace().norm() <= 1e-10);
            for (b, bb) in report.basis.iter().enumerate() {
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((ba.hs_inner(bb) - expected).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn rejects_non_qutrit_codes() {
        let err = check_encoded_universality(&StandardCode::PairDfs.build(), &[(0, 1)]).unwrap_err();
        assert_eq!(err, Error::CodeDimensionUnsupported(2));
    }
}
