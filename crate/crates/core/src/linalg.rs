//! Dense complex linear algebra for Hilbert spaces of at most 64 dimensions.
//!
//! Everything here works on [`ComplexMatrix`], a row-major dense matrix of
//! `Complex64`. Functions of Hermitian matrices (exponentials, square roots)
//! go through a cyclic complex Jacobi eigendecomposition, which is exact up to
//! roundoff and unconditionally stable at these sizes.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance (scaled by `max(1, ‖A‖_max)`) for treating a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues below this are rejected by [`sqrtm_psd`].
pub const PSD_FLOOR: f64 = -1e-8;

const MAX_JACOBI_SWEEPS: usize = 100;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense row-major complex matrix. Column vectors (kets) are `d × 1` matrices.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!("{rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            data: entries,
        })
    }

    /// Builds a matrix from real entries in row-major order.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for k in 0..dim {
            m.data[k * dim + k] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim, dim);
        for (k, &z) in diag.iter().enumerate() {
            m.data[k * dim + k] = z;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let diag: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&diag)
    }

    /// Computational basis ket `|index⟩` as a `dim × 1` column.
    pub fn basis_ket(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut m = Self::zeros(dim, 1);
        m.data[index] = ONE;
        m
    }

    /// `|ψ⟩⟨ψ|` for a column vector `ψ`.
    pub fn outer(ket: &ComplexMatrix) -> Self {
        assert_eq!(ket.cols, 1, "outer product expects a column vector");
        let d = ket.rows;
        let mut m = Self::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                m.data[r * d + c] = ket.data[r] * ket.data[c].conj();
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major view of the entries.
    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn shape_string(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|k| self.data[k * self.cols + k]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Re tr(A† B)`, the real Hilbert–Schmidt inner product.
    pub fn hs_inner(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "inner product shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// `‖A − B‖_max`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "difference shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖A − A†‖_max`.
    pub fn hermiticity_error(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of non-square matrix");
        let n = self.rows;
        let mut worst = 0.0_f64;
        for r in 0..n {
            for c in r..n {
                let d = (self.data[r * n + c] - self.data[c * n + r].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.hermiticity_error() <= HERMITIAN_TOL * self.max_abs().max(1.0)
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square(), "hermitian part of non-square matrix");
        let n = self.rows;
        let mut out = self.clone();
        for r in 0..n {
            for c in 0..n {
                out.data[r * n + c] = 0.5 * (self.data[r * n + c] + self.data[c * n + r].conj());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {} * {}",
            self.shape_string(),
            rhs.shape_string()
        );
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = Self::zeros(n, m);
        for r in 0..n {
            let out_row = &mut out.data[r * m..(r + 1) * m];
            for (l, &a) in self.data[r * k..(r + 1) * k].iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[l * m..(l + 1) * m];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &ComplexMatrix) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &ComplexMatrix) -> Self {
        &self.matmul(other) + &other.matmul(self)
    }

    /// `U X U†`.
    pub fn conjugate_by(&self, unitary: &ComplexMatrix) -> Self {
        unitary.matmul(self).matmul(&unitary.adjoint())
    }

    /// Minimum eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let eig = herm_eig(&self.hermitian_part())?;
        Ok(eig.values[0])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.data[r * self.cols + c];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`; `a` is the left (more significant) factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a.data[ar * a.cols + ac];
            if x == ZERO {
                continue;
            }
            for br in 0..b.rows {
                let row = ar * b.rows + br;
                for bc in 0..b.cols {
                    out.data[row * cols + ac * b.cols + bc] = x * b.data[br * b.cols + bc];
                }
            }
        }
    }
    out
}

/// Spectral decomposition `h = V diag(values) V†` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let weights: Vec<Complex64> = self.values.iter().map(|&x| f(x)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += v.data[r * n + k] * weights[k] * v.data[c * n + k].conj();
                }
                out.data[r * n + c] = acc;
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn herm_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::InvalidShape(format!(
            "eigendecomposition needs a square matrix, got {}",
            h.shape_string()
        )));
    }
    let deviation = h.hermiticity_error();
    if deviation > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }

    let n = h.rows;
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    for k in 0..n {
        a.data[k * n + k].im = 0.0;
    }

    let scale = a.frobenius_norm();
    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a.data[p * n + q].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-16 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| a.data[k * n + k].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));

    let values = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.data[r * n + new_col] = v.data[r * n + old_col];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

// One Jacobi rotation zeroing a[p][q]. The rotation is G = W R with
// W = diag(1, e^{-iφ}) on (p, q) making the pivot real and R a real Givens
// rotation; a ← G† a G, v ← v G.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows;
    let apq = a.data[p * n + q];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let app = a.data[p * n + p].re;
    let aqq = a.data[q * n + q].re;
    if magnitude <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a.data[p * n + q] = ZERO;
        a.data[q * n + p] = ZERO;
        return;
    }
    let phase = apq / magnitude;
    let theta = (aqq - app) / (2.0 * magnitude);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    // signum(0) is +1 in Rust, which is the choice we want.
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let phase_conj = phase.conj();

    // columns: a ← a G
    for k in 0..n {
        let akp = a.data[k * n + p];
        let akq = a.data[k * n + q];
        a.data[k * n + p] = c * akp - s * phase_conj * akq;
        a.data[k * n + q] = s * akp + c * phase_conj * akq;
    }
    // rows: a ← G† a
    for k in 0..n {
        let apk = a.data[p * n + k];
        let aqk = a.data[q * n + k];
        a.data[p * n + k] = c * apk - s * phase * aqk;
        a.data[q * n + k] = s * apk + c * phase * aqk;
    }
    a.data[p * n + q] = ZERO;
    a.data[q * n + p] = ZERO;
    a.data[p * n + p].im = 0.0;
    a.data[q * n + q].im = 0.0;

    for k in 0..n {
        let vkp = v.data[k * n + p];
        let vkq = v.data[k * n + q];
        v.data[k * n + p] = c * vkp - s * phase_conj * vkq;
        v.data[k * n + q] = s * vkp + c * phase_conj * vkq;
    }
}

/// `exp(-i · scale · h)` for Hermitian `h`.
pub fn expm_hermitian(h: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    if scale == 0.0 {
        if !h.is_square() {
            return Err(Error::InvalidShape(h.shape_string()));
        }
        return Ok(ComplexMatrix::identity(h.rows));
    }
    let eig = herm_eig(h)?;
    Ok(eig.map(|lambda| Complex64::from_polar(1.0, -scale * lambda)))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[PSD_FLOOR, roundoff floor]` are treated as zero, where the
/// roundoff floor is `dim · ε · λ_max`; anything more negative is an error.
pub fn sqrtm_psd(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = herm_eig(rho)?;
    let min = eig.values[0];
    if min < PSD_FLOOR {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let floor = roundoff_floor(&eig);
    Ok(eig.map(|lambda| {
        if lambda <= floor {
            ZERO
        } else {
            Complex64::new(lambda.sqrt(), 0.0)
        }
    }))
}

pub(crate) fn roundoff_floor(eig: &HermitianEigen) -> f64 {
    let largest = eig
        .values
        .iter()
        .fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    eig.values.len() as f64 * f64::EPSILON * largest
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).unwrap()
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&[1.0, -1.0])
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ComplexMatrix::new(2, 2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));

        let zz = kron(&sigma_z(), &sigma_z());
        let diag: Vec<f64> = (0..4).map(|k| zz[(k, k)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);

        // σx ⊗ σy: block (0,1) of σx is 1, entry (0,1) of σy is -i.
        let xy = kron(&sigma_x(), &sigma_y());
        assert_eq!(xy[(0, 3)], c(0.0, -1.0));
    }

    #[test]
    fn eig_of_paulis() {
        let e = herm_eig(&sigma_z()).unwrap();
        assert_eq!(e.values, vec![-1.0, 1.0]);

        let e = herm_eig(&sigma_x()).unwrap();
        assert_abs_diff_eq!(e.values[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.values[1], 1.0, epsilon = 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        // columns are (|0> - |1>)/√2 and (|0> + |1>)/√2 up to phase
        let v = &e.vectors;
        let overlap_minus = (v[(0, 0)] * r - v[(1, 0)] * r).norm();
        let overlap_plus = (v[(0, 1)] * r + v[(1, 1)] * r).norm();
        assert_abs_diff_eq!(overlap_minus, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(overlap_plus, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn eig_of_two_qubit_xy() {
        let h = &kron(&sigma_x(), &sigma_x()) + &kron(&sigma_y(), &sigma_y());
        let e = herm_eig(&h).unwrap();
        let expected = [-2.0, 0.0, 0.0, 2.0];
        for (got, want) in e.values.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
        // eigenvalue -2 ↔ (|01> - |10>)/√2
        let v = &e.vectors;
        assert_abs_diff_eq!(v[(0, 0)].norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!((v[(1, 0)] + v[(2, 0)]).norm(), 0.0, epsilon = 1e-14);
        // eigenvalue +2 ↔ (|01> + |10>)/√2
        assert_abs_diff_eq!((v[(1, 3)] - v[(2, 3)]).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn exponential_cases() {
        let u = expm_hermitian(&sigma_x(), 0.0).unwrap();
        assert_eq!(u, ComplexMatrix::identity(2));

        let half_pi = std::f64::consts::FRAC_PI_2;
        let u = expm_hermitian(&sigma_z(), half_pi).unwrap();
        assert_abs_diff_eq!((u[(0, 0)] - c(0.0, -1.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((u[(1, 1)] - c(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15);

        let yy = kron(&sigma_y(), &sigma_y());
        for &t in &[0.3, 1.1, 2.9] {
            let u = expm_hermitian(&yy, t).unwrap();
            let expected = &ComplexMatrix::identity(4).scale_real(t.cos()) - &yy.scale(c(0.0, t.sin()));
            assert!(u.max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            sqrtm_psd(&ComplexMatrix::identity(3)).unwrap(),
            ComplexMatrix::identity(3)
        );
        let s = sqrtm_psd(&ComplexMatrix::from_real_diag(&[4.0, 9.0])).unwrap();
        assert!(s.max_abs_diff(&ComplexMatrix::from_real_diag(&[2.0, 3.0])) < 1e-15);

        let plus = ComplexMatrix::from_real(2, 1, &[1.0, 1.0]).unwrap().scale_real(std::f64::consts::FRAC_1_SQRT_2);
        let proj = ComplexMatrix::outer(&plus);
        assert!(sqrtm_psd(&proj).unwrap().max_abs_diff(&proj) < 1e-15);
    }

    #[test]
    fn sqrtm_rejects_negative() {
        let m = ComplexMatrix::from_real_diag(&[1.0, -1e-6]);
        assert!(matches!(sqrtm_psd(&m), Err(Error::NotPsd { .. })));
        // roundoff-level negatives are clamped
        let m = ComplexMatrix::from_real_diag(&[1.0, -1e-12]);
        let s = sqrtm_psd(&m).unwrap();
        assert_eq!(s[(1, 1)], ZERO);
    }

    #[test]
    fn commutator_of_paulis() {
        let comm = sigma_x().commutator(&sigma_y());
        assert!(comm.max_abs_diff(&sigma_z().scale(c(0.0, 2.0))) < 1e-15);
    }
}
