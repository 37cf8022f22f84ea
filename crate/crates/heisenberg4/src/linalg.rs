//! Dense complex linear algebra sized for a four-qubit register.
//!
//! Everything a 16-dimensional Hilbert space needs and nothing more:
//! tensor products, a cyclic Jacobi eigensolver for Hermitian matrices,
//! spectral matrix functions, and the partial trace. Determinism is part
//! of the contract — identical inputs produce identical decompositions
//! (fixed sweep order, eigenvalues ascending, eigenvector phases fixed by
//! making the first significant component real and positive).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max-entry tolerance for accepting a matrix as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps before reporting failure.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as round-off and clamped to 0;
/// anything more negative is a genuine error, not noise.
pub const PSD_CLAMP: f64 = 1e-12;
/// Magnitude above which a component may anchor an eigenvector's phase.
pub const PHASE_FIX_TOL: f64 = 1e-10;

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from nested rows; every row must match the outer length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            for (j, z) in row.iter().enumerate() {
                m[(i, j)] = *z;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        Ok(out)
    }

    /// Entry-wise `self + factor * rhs` in a single fused pass, so exact
    /// inputs stay exact (one rounding per entry).
    pub fn add_scaled(&self, rhs: &Self, factor: f64) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += factor * b;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= factor;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    /// Entry-wise complex conjugate (no transpose).
    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.conj();
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// max_ij |M_ij - conj(M_ji)|. Any non-finite entry counts as an
    /// infinite deviation (NaN would otherwise slip through comparisons),
    /// so the eigensolver's Hermiticity gate also rejects it.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let dev = (self[(i, j)] - self[(j, i)].conj()).norm();
                if !dev.is_finite() {
                    return f64::INFINITY;
                }
                worst = worst.max(dev);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.dim, rhs.dim, "max_abs_diff on mismatched dimensions");
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.dim != v.dim() {
            return Err(Error::DimensionMismatch(self.dim, v.dim()));
        }
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n {
                out[i] += self[(i, j)] * v[j];
            }
        }
        Ok(StateVector::new(out))
    }

    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Complex amplitude vector over a computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    data: Vec<Complex64>,
}

impl StateVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        Self { data }
    }

    /// |index> in a `dim`-dimensional space.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim];
        data[index] = Complex64::new(1.0, 0.0);
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// <self|other>, conjugating self.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |self><self| as a density matrix.
    pub fn outer(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.data[i] * self.data[j].conj();
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for StateVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

/// Result of [`hermitian_eigen`]: real eigenvalues ascending, orthonormal
/// eigenvectors as matching columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// V diag(f(lambda)) V(dagger).
    pub fn compose<F>(&self, f: F) -> ComplexMatrix
    where
        F: Fn(f64) -> Complex64,
    {
        let n = self.values.len();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let fk = f(self.values[k]);
            if fk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * fk;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Reassemble the original matrix, V diag(lambda) V(dagger).
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.compose(|x| Complex64::new(x, 0.0))
    }
}

/// Kronecker product with the left factor as the slow (most significant) index:
/// block (i, j) of the result equals `A[i][j] * B`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(na * nb);
    for ia in 0..na {
        for ja in 0..na {
            let aij = a[(ia, ja)];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for ib in 0..nb {
                for jb in 0..nb {
                    out[(ia * nb + ib, ja * nb + jb)] = aij * b[(ib, jb)];
                }
            }
        }
    }
    out
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.
///
/// Each rotation annihilates one off-diagonal pair with a complex Givens
/// rotation whose phase absorbs arg(M_pq). Sweeps run in a fixed (p, q)
/// order until the off-diagonal Frobenius norm drops below
/// [`JACOBI_OFF_TOL`]; ties at equal diagonal entries take the rotation
/// angle pi/4. Eigenvalues are returned ascending and each eigenvector is
/// rescaled so its first component with magnitude above
/// [`PHASE_FIX_TOL`] is real and positive.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let dev = m.hermiticity_error();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.dim();

    // Work on the Hermitian average so the sweep sees an exactly
    // Hermitian matrix regardless of input round-off.
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > JACOBI_OFF_TOL {
        if sweeps >= JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                norm: off_diagonal_norm(&a),
                sweeps,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // Unitary 2x2 block [[c, -s], [conj(s), c]] with
                // s = e^{i arg(apq)} sin(theta), tan(2 theta) = 2|apq| / (app - aqq).
                let phase = apq / mag;
                let tau = (a[(p, p)].re - a[(q, q)].re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * c);

                // Right-multiply columns p, q by the rotation.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * s.conj();
                    a[(k, q)] = -(akp * s) + akq * c;
                }
                // Left-multiply rows p, q by the adjoint rotation.
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * s;
                    a[(q, k)] = -(apk * s.conj()) + aqk * c;
                }
                // The rotated pair is zero analytically; make it exact.
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                // Accumulate eigenvectors.
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * s.conj();
                    v[(k, q)] = -(vkp * s) + vkq * c;
                }
            }
        }
        sweeps += 1;
    }

    // Ascending eigenvalues with the column permutation applied to V.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let mut values = Vec::with_capacity(n);
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        values.push(a[(src, src)].re);
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }

    // Phase fix: first significant component real-positive.
    for col in 0..n {
        let anchor = (0..n).find(|&row| vectors[(row, col)].norm() > PHASE_FIX_TOL);
        if let Some(row) = anchor {
            let z = vectors[(row, col)];
            let correction = z.conj() / z.norm();
            for r in 0..n {
                vectors[(r, col)] *= correction;
            }
        }
    }

    Ok(EigenDecomposition { values, vectors })
}

/// Apply a scalar function to a Hermitian matrix through its spectrum:
/// V diag(f(lambda)) V(dagger).
pub fn function_of_hermitian<F>(m: &ComplexMatrix, f: F) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> Complex64,
{
    Ok(hermitian_eigen(m)?.compose(f))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues inside the round-off window `[-PSD_CLAMP, PSD_CLAMP]` are
/// zeros (the square root would otherwise amplify eigenvalue noise of
/// size eps into sqrt(eps)); anything below the window is rejected.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    if let Some(&lo) = eig.values.iter().find(|&&x| x < -PSD_CLAMP) {
        return Err(Error::NegativeEigenvalue(lo));
    }
    Ok(eig.compose(|x| Complex64::new(if x <= PSD_CLAMP { 0.0 } else { x.sqrt() }, 0.0)))
}

/// exp(-iHt) for Hermitian H.
pub fn evolution_operator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    function_of_hermitian(h, |lambda| Complex64::new(0.0, -lambda * t).exp())
}

/// Trace out every qubit not listed in `keep` (1-based positions, qubit 1
/// most significant). Kept qubits keep their relative order in the
/// reduced matrix.
pub fn partial_trace(
    rho: &ComplexMatrix,
    keep: &[usize],
    n_qubits: usize,
) -> Result<ComplexMatrix> {
    let dim = 1usize << n_qubits;
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch(rho.dim(), dim));
    }
    if keep.is_empty() {
        return Err(Error::BadSubset("keep set is empty".into()));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(Error::BadSubset(format!("duplicate positions in {keep:?}")));
    }
    if kept.iter().any(|&s| s < 1 || s > n_qubits) {
        return Err(Error::BadSubset(format!(
            "positions {keep:?} outside 1..={n_qubits}"
        )));
    }
    if kept.len() == n_qubits {
        return Err(Error::BadSubset(
            "keep set must be a strict subset of the register".into(),
        ));
    }

    // Bit of qubit s (1-based, MSB first) inside a basis index.
    let bit = |index: usize, site: usize| (index >> (n_qubits - site)) & 1;
    let traced: Vec<usize> = (1..=n_qubits).filter(|s| !kept.contains(s)).collect();

    let m = kept.len();
    let mut out = ComplexMatrix::zeros(1 << m);
    for i in 0..dim {
        for j in 0..dim {
            if traced.iter().any(|&s| bit(i, s) != bit(j, s)) {
                continue;
            }
            let mut ri = 0usize;
            let mut rj = 0usize;
            for (pos, &s) in kept.iter().enumerate() {
                ri |= bit(i, s) << (m - 1 - pos);
                rj |= bit(j, s) << (m - 1 - pos);
            }
            let z = rho[(i, j)];
            out[(ri, rj)] += z;
        }
    }
    Ok(out)
}
