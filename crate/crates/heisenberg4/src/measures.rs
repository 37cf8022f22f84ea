//! State-comparison and resource measures: Uhlmann fidelity in both
//! conventions, trace distance with its fidelity bounds, l1 coherence,
//! Wootters concurrence (with an X-state fast path), and entanglement of
//! formation.
//!
//! Clamping policy: concurrences and entropy arguments are clamped into
//! [0, 1], but only inside a 1e-9 window — larger excursions are treated
//! as errors, never silently saturated.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, sqrt_psd, tensor_product, ComplexMatrix, StateVector, PSD_CLAMP,
};
use crate::spin::{pauli, Axis};

/// Window within which out-of-range values are attributed to round-off.
pub const CLAMP_TOL: f64 = 1e-9;
/// Tolerance of the Fuchs-van de Graaf bound check.
pub const FVDG_TOL: f64 = 1e-10;

/// Which fidelity is reported: F = Tr sqrt(sqrt(rho) sigma sqrt(rho))
/// or its square. The square-root convention is the default throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FidelityConvention {
    #[default]
    Sqrt,
    Squared,
}

fn clamp_unit(x: f64, what: &'static str) -> Result<f64> {
    if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&x) {
        return Err(Error::Domain {
            value: x,
            domain: what,
        });
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), optionally squared.
///
/// Both inputs must be Hermitian, positive semidefinite and trace one; the
/// positivity gate is the same round-off clamp used by the matrix square
/// root.
pub fn uhlmann_fidelity(
    rho: &ComplexMatrix,
    sigma: &ComplexMatrix,
    convention: FidelityConvention,
) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let root = sqrt_psd(rho)?;
    let inner = root.matmul(sigma)?.matmul(&root)?;
    let eig = hermitian_eigen(&inner)?;
    if let Some(&lo) = eig.values.iter().find(|&&x| x < -PSD_CLAMP) {
        return Err(Error::NegativeEigenvalue(lo));
    }
    // Eigenvalues inside the round-off window are zeros of the (generally
    // rank-deficient) product; keeping them would turn eps noise into
    // sqrt(eps) contributions.
    let f = eig
        .values
        .iter()
        .filter(|&&x| x > PSD_CLAMP)
        .map(|&x| x.sqrt())
        .sum::<f64>();
    let f = clamp_unit(f, "fidelity")?;
    Ok(match convention {
        FidelityConvention::Sqrt => f,
        FidelityConvention::Squared => f * f,
    })
}

/// |<psi|phi>| — the square-root-convention fidelity of two pure states.
pub fn pure_overlap_fidelity(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(psi.inner(phi)?.norm())
}

/// Trace distance (1/2) sum |eigenvalues of rho - sigma|.
pub fn trace_distance(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let eig = hermitian_eigen(&rho.sub(sigma)?)?;
    Ok(0.5 * eig.values.iter().map(|x| x.abs()).sum::<f64>())
}

/// The two-sided fidelity bound on the trace distance,
/// 1 - sqrt(F_sq) <= T <= sqrt(1 - F_sq), evaluated with the
/// squared-convention fidelity F_sq.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FvdgBounds {
    pub lower: f64,
    pub trace_distance: f64,
    pub upper: f64,
    pub satisfied: bool,
}

pub fn fvdg_check(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<FvdgBounds> {
    let f_sq = uhlmann_fidelity(rho, sigma, FidelityConvention::Squared)?;
    let t = trace_distance(rho, sigma)?;
    let lower = 1.0 - f_sq.sqrt();
    let upper = (1.0 - f_sq).max(0.0).sqrt();
    Ok(FvdgBounds {
        lower,
        trace_distance: t,
        upper,
        satisfied: lower - FVDG_TOL <= t && t <= upper + FVDG_TOL,
    })
}

/// l1 coherence: the sum of the magnitudes of all off-diagonal entries.
/// Bounded by d - 1 for a valid d-dimensional state.
pub fn coherence_l1(rho: &ComplexMatrix) -> f64 {
    let n = rho.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += rho[(i, j)].norm();
            }
        }
    }
    sum
}

/// Pure-state shortcut for the l1 coherence: (sum_i |c_i|)^2 - 1.
pub fn pure_state_coherence(psi: &StateVector) -> f64 {
    let s: f64 = psi.amplitudes().iter().map(|z| z.norm()).sum();
    s * s - 1.0
}

/// (sy (x) sy) conj(rho) (sy (x) sy) — the spin-flipped state entering the
/// concurrence, with conjugation taken in the computational basis.
pub fn spin_flipped(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let yy = tensor_product(&pauli(Axis::Y), &pauli(Axis::Y));
    yy.matmul(&rho.conjugate())?.matmul(&yy)
}

fn validate_two_qubit_state(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::InvalidState(format!(
            "expected a 4x4 two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    let herm = rho.hermiticity_error();
    if herm > 1e-12 {
        return Err(Error::InvalidState(format!(
            "not Hermitian: deviation {herm:.3e}"
        )));
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > CLAMP_TOL {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    Ok(())
}

/// Wootters concurrence max{0, r1 - r2 - r3 - r4}, where the r_i are the
/// decreasing square roots of the eigenvalues of rho * spin_flipped(rho).
///
/// The non-Hermitian product is never diagonalized directly. Its root
/// spectrum equals the singular values of sqrt(rho) sqrt(spin_flipped(rho)),
/// which come out of the Jacobi kernel through the Hermitian embedding
/// [[0, M], [M+, 0]] — eigenvalue pairs +-r_i. Working at the level of the
/// roots instead of their squares keeps the near-zero r_i at absolute
/// round-off accuracy, which the tightest cross-checks here need.
pub fn wootters_concurrence(rho: &ComplexMatrix) -> Result<f64> {
    validate_two_qubit_state(rho)?;
    let demote = |e: Error| match e {
        Error::NegativeEigenvalue(x) => Error::InvalidState(format!("negative eigenvalue {x:.3e}")),
        other => other,
    };
    let root = sqrt_psd(rho).map_err(demote)?;
    let flipped_root = sqrt_psd(&spin_flipped(rho)?).map_err(demote)?;
    let m = root.matmul(&flipped_root)?;

    let n = m.dim();
    let mut embedding = ComplexMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            embedding[(i, n + j)] = m[(i, j)];
            embedding[(n + j, i)] = m[(i, j)].conj();
        }
    }
    let eig = hermitian_eigen(&embedding)?;
    // Ascending spectrum is (-r_n .. -r_1, r_1 .. r_n): the top half holds
    // the roots; exact zeros may land on either sign of the pair.
    let mut roots: Vec<f64> = eig.values[n..].iter().map(|&x| x.max(0.0)).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    clamp_unit(c.max(0.0), "concurrence")
}

/// The (a, b, c, d) parameterization of a two-qubit state whose only
/// nonzero entries are the diagonal (a, b, b, d) and the symmetric inner
/// off-diagonal pair c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl XStateParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let trace = a + 2.0 * b + d;
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!(
                "X-state trace {trace} is not 1"
            )));
        }
        if a < -PSD_CLAMP || b < -PSD_CLAMP || d < -PSD_CLAMP {
            return Err(Error::InvalidState(
                "X-state diagonal has a negative entry".into(),
            ));
        }
        if c.abs() > b + PSD_CLAMP {
            return Err(Error::InvalidState(format!(
                "inner coherence |{c}| exceeds the diagonal {b}"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    /// Materialize the 4x4 matrix.
    pub fn to_matrix(self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4);
        m[(0, 0)] = Complex64::new(self.a, 0.0);
        m[(1, 1)] = Complex64::new(self.b, 0.0);
        m[(2, 2)] = Complex64::new(self.b, 0.0);
        m[(3, 3)] = Complex64::new(self.d, 0.0);
        m[(1, 2)] = Complex64::new(self.c, 0.0);
        m[(2, 1)] = Complex64::new(self.c, 0.0);
        m
    }
}

/// Concurrence of an X-shaped state: 2 max{0, |c| - sqrt(a d)}.
pub fn x_state_concurrence(p: &XStateParams) -> f64 {
    2.0 * (p.c.abs() - (p.a.max(0.0) * p.d.max(0.0)).sqrt()).max(0.0)
}

/// Binary entropy in bits, with h(0) = h(1) = 0 by continuous extension.
pub fn binary_entropy(x: f64) -> Result<f64> {
    let x = clamp_unit(x, "entropy argument")?;
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// Entanglement of formation h((1 + sqrt(1 - C^2)) / 2) for a two-qubit
/// concurrence C.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    let c = clamp_unit(c, "concurrence")?;
    binary_entropy((1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0)
}
