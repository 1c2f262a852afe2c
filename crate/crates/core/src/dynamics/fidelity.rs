use crate::error::{Error, Result};
use crate::linalg::{herm_eig, roundoff_floor, sqrtm_psd, ComplexMatrix, PSD_FLOOR};

/// Uhlmann fidelity `tr √(√ρa ρb √ρa)`.
///
/// Inputs are symmetrised to their Hermitian parts first. Eigenvalues of the
/// inner product matrix at the roundoff floor are dropped instead of being
/// square-rooted, which would otherwise inflate the result by `O(√ε)`.
pub fn fidelity(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<f64> {
    if !rho_a.is_square() || rho_a.rows() != rho_b.rows() || rho_a.cols() != rho_b.cols() {
        return Err(Error::DimensionMismatch {
            expected: rho_a.shape_string(),
            found: rho_b.shape_string(),
        });
    }
    let root_a = sqrtm_psd(&rho_a.hermitian_part())?;
    let inner = root_a
        .matmul(&rho_b.hermitian_part())
        .matmul(&root_a)
        .hermitian_part();
    let eig = herm_eig(&inner)?;
    if eig.values[0] < PSD_FLOOR {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.values[0],
        });
    }
    let floor = roundoff_floor(&eig);
    Ok(eig
        .values
        .iter()
        .filter(|&&lambda| lambda > floor)
        .map(|lambda| lambda.sqrt())
        .sum())
}
