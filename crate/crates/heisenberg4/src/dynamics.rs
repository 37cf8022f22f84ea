//! Time evolution of the Bell-seeded register along two independent paths.
//!
//! The closed-form path writes the evolved state directly in terms of two
//! amplitudes beta(t), gamma(t) that live on the four single-flip basis
//! states; everything observable about them depends only on the phase
//! phi = (alpha + 1) t. The numerical path diagonalizes the full 16x16
//! Hamiltonian and applies exp(-iHt) to the initial state. The second path
//! is the project-wide oracle: it never touches the closed forms.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{
    hermitian_eigen, partial_trace, ComplexMatrix, EigenDecomposition, StateVector,
};
use crate::spin::{build_hamiltonian, ChainParams, DIM};

/// Basis index of |0001> (0-based).
pub const IDX_0001: usize = 0b0001;
/// Basis index of |0010>.
pub const IDX_0010: usize = 0b0010;
/// Basis index of |0100>.
pub const IDX_0100: usize = 0b0100;
/// Basis index of |1000>.
pub const IDX_1000: usize = 0b1000;

/// A point of the (alpha, t) control plane together with the derived
/// phase phi = (alpha + 1) t that governs every diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub alpha: f64,
    pub t: f64,
    pub phi: f64,
}

impl PhasePoint {
    pub fn new(alpha: f64, t: f64) -> Self {
        Self {
            alpha,
            t,
            phi: (alpha + 1.0) * t,
        }
    }
}

/// The two closed-form amplitudes of the evolved state.
///
/// Normalization fixes 2|beta|^2 + 2|gamma|^2 = 1, with
/// |beta|^2 = sin^2(phi/2)/2 and |gamma|^2 = cos^2(phi/2)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    pub beta: Complex64,
    pub gamma: Complex64,
}

/// (|0100> + |1000>)/sqrt(2): a Bell pair on qubits 1,2 with qubits 3,4
/// spectating in |00>.
pub fn initial_state() -> StateVector {
    let amp = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
    let mut data = vec![Complex64::new(0.0, 0.0); DIM];
    data[IDX_0100] = amp;
    data[IDX_1000] = amp;
    StateVector::new(data)
}

/// The closed-form amplitudes evaluated verbatim:
///
/// beta  = -(i sin(at/2) + i sin((a+2)t/2) + cos(at/2) - cos((a+2)t/2)) / (2 sqrt 2)
/// gamma =  (i sin(at/2) - i sin((a+2)t/2) + cos(at/2) + cos((a+2)t/2)) / (2 sqrt 2)
pub fn amplitudes(p: &PhasePoint) -> Amplitudes {
    let half_a = 0.5 * p.alpha * p.t;
    let half_b = 0.5 * (p.alpha + 2.0) * p.t;
    let denom = 2.0 * 2.0f64.sqrt();
    let i = Complex64::new(0.0, 1.0);

    let beta =
        -(i * half_a.sin() + i * half_b.sin() + Complex64::new(half_a.cos() - half_b.cos(), 0.0))
            / denom;
    let gamma = (i * half_a.sin() - i * half_b.sin()
        + Complex64::new(half_a.cos() + half_b.cos(), 0.0))
        / denom;
    Amplitudes { beta, gamma }
}

/// Closed-form evolved state beta (|0001> + |0010>) + gamma (|0100> + |1000>).
pub fn analytic_state(p: &PhasePoint) -> StateVector {
    let Amplitudes { beta, gamma } = amplitudes(p);
    let mut data = vec![Complex64::new(0.0, 0.0); DIM];
    data[IDX_0001] = beta;
    data[IDX_0010] = beta;
    data[IDX_0100] = gamma;
    data[IDX_1000] = gamma;
    StateVector::new(data)
}

/// Closed-form density matrix, populated entry by entry:
/// sin^2(phi/2)/2 on the beta block, cos^2(phi/2)/2 on the gamma block,
/// -i sin(phi)/4 and +i sin(phi)/4 on the cross blocks.
pub fn analytic_density(p: &PhasePoint) -> ComplexMatrix {
    let phi = p.phi;
    let beta_block = Complex64::new(0.5 * (0.5 * phi).sin().powi(2), 0.0);
    let gamma_block = Complex64::new(0.5 * (0.5 * phi).cos().powi(2), 0.0);
    let cross = Complex64::new(0.0, -0.25 * phi.sin());

    let beta_states = [IDX_0001, IDX_0010];
    let gamma_states = [IDX_0100, IDX_1000];

    let mut rho = ComplexMatrix::zeros(DIM);
    for &i in &beta_states {
        for &j in &beta_states {
            rho[(i, j)] = beta_block;
        }
    }
    for &i in &gamma_states {
        for &j in &gamma_states {
            rho[(i, j)] = gamma_block;
        }
    }
    for &i in &beta_states {
        for &j in &gamma_states {
            rho[(i, j)] = cross;
            rho[(j, i)] = cross.conj();
        }
    }
    rho
}

/// Numerical propagator for a fixed alpha: one eigendecomposition of the
/// full 16x16 Hamiltonian, reused for every evolution time.
#[derive(Debug, Clone)]
pub struct Propagator {
    alpha: f64,
    eigen: EigenDecomposition,
}

impl Propagator {
    pub fn new(alpha: f64) -> Result<Self> {
        let h = build_hamiltonian(&ChainParams::new(alpha));
        Ok(Self {
            alpha,
            eigen: hermitian_eigen(&h)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// exp(-iHt) |psi(0)> through the eigenbasis.
    pub fn evolve(&self, t: f64) -> StateVector {
        let v = &self.eigen.vectors;
        let psi0 = initial_state();
        let n = v.dim();

        // Coefficients in the eigenbasis, phase-rotated, mapped back.
        let mut coeff = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            for i in 0..n {
                coeff[k] += v[(i, k)].conj() * psi0[i];
            }
            coeff[k] *= Complex64::new(0.0, -self.eigen.values[k] * t).exp();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for k in 0..n {
                out[i] += v[(i, k)] * coeff[k];
            }
        }
        StateVector::new(out)
    }

    /// The full unitary exp(-iHt), for structural checks.
    pub fn operator(&self, t: f64) -> ComplexMatrix {
        self.eigen
            .compose(|lambda| Complex64::new(0.0, -lambda * t).exp())
    }
}

/// One-shot numerical evolution at a phase point. This is the oracle the
/// closed forms are tested against.
pub fn numeric_evolve(p: &PhasePoint) -> Result<StateVector> {
    Ok(Propagator::new(p.alpha)?.evolve(p.t))
}

/// Closed-form reduced state of qubits 1,2 in the |00>,|01>,|10>,|11> basis:
/// diag entry a = (1 - cos phi)/2, inner block b = c = (1 + cos phi)/4, d = 0.
pub fn rho12(p: &PhasePoint) -> ComplexMatrix {
    let cos_phi = p.phi.cos();
    x_block(
        0.5 - 0.5 * cos_phi,
        0.25 * cos_phi + 0.25,
        0.25 * cos_phi + 0.25,
    )
}

/// Closed-form reduced state of qubits 3,4:
/// a = (1 + cos phi)/2, b = c = (1 - cos phi)/4, d = 0.
pub fn rho34(p: &PhasePoint) -> ComplexMatrix {
    let cos_phi = p.phi.cos();
    x_block(
        0.5 * cos_phi + 0.5,
        0.25 - 0.25 * cos_phi,
        0.25 - 0.25 * cos_phi,
    )
}

fn x_block(a: f64, b: f64, c: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = Complex64::new(a, 0.0);
    m[(1, 1)] = Complex64::new(b, 0.0);
    m[(2, 2)] = Complex64::new(b, 0.0);
    m[(1, 2)] = Complex64::new(c, 0.0);
    m[(2, 1)] = Complex64::new(c, 0.0);
    m
}

/// Reduced states computed from a full density matrix by tracing the
/// complementary pair — the oracle route for [`rho12`] / [`rho34`].
pub fn reduced_from_density(rho: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let r12 = partial_trace(rho, &[1, 2], 4)?;
    let r34 = partial_trace(rho, &[3, 4], 4)?;
    Ok((r12, r34))
}

#[cfg(test)]
#[allow(clippy::approx_constant)] // pinned reference digits appear verbatim
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn initial_state_puts_equal_weight_on_the_bell_pair() {
        let psi = initial_state();
        assert!((psi[IDX_0100].re - SQRT_HALF).abs() < 1e-15);
        assert!((psi[IDX_1000].re - SQRT_HALF).abs() < 1e-15);
        let weight: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((weight - 1.0).abs() < 1e-15);
        for (k, z) in psi.amplitudes().iter().enumerate() {
            if k != IDX_0100 && k != IDX_1000 {
                assert_eq!(z.norm(), 0.0);
            }
        }
    }

    #[test]
    fn amplitudes_at_time_zero() {
        for alpha in [-2.0, -1.0, 0.0, 1.0] {
            let a = amplitudes(&PhasePoint::new(alpha, 0.0));
            assert!(a.beta.norm() < 1e-15);
            assert!((a.gamma - Complex64::new(SQRT_HALF, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn amplitudes_freeze_at_alpha_minus_one() {
        for t in [0.1, 1.0, 5.0, 50.0] {
            let a = amplitudes(&PhasePoint::new(-1.0, t));
            assert!(a.beta.norm() < 1e-12, "t = {t}");
            assert!((a.gamma.norm() - SQRT_HALF).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn amplitude_moduli_follow_the_phase() {
        for (alpha, t) in [(0.0, PI / 2.0), (-0.5, 2.0), (0.7, 3.1), (2.0, 0.4)] {
            let p = PhasePoint::new(alpha, t);
            let a = amplitudes(&p);
            let norm = 2.0 * a.beta.norm_sqr() + 2.0 * a.gamma.norm_sqr();
            assert!((norm - 1.0).abs() < 1e-12);
            assert!((a.beta.norm_sqr() - 0.5 * (0.5 * p.phi).sin().powi(2)).abs() < 1e-12);
            assert!((a.gamma.norm_sqr() - 0.5 * (0.5 * p.phi).cos().powi(2)).abs() < 1e-12);
        }
        // Overlap magnitude at (0, pi/2): sqrt(2)|gamma| = 1/sqrt(2).
        let a = amplitudes(&PhasePoint::new(0.0, PI / 2.0));
        assert!((2.0f64.sqrt() * a.gamma.norm() - 0.707106781).abs() < 1e-9);
    }

    #[test]
    fn analytic_state_reduces_to_the_initial_state_at_t_zero() {
        let p = PhasePoint::new(0.3, 0.0);
        assert!(analytic_state(&p).max_abs_diff(&initial_state()) < 1e-15);
    }

    #[test]
    fn analytic_state_matches_the_numeric_oracle_on_a_grid() {
        let mut worst = 0.0f64;
        for ia in 0..21 {
            let alpha = -3.0 + 4.0 * ia as f64 / 20.0;
            let prop = Propagator::new(alpha).unwrap();
            for it in 0..21 {
                let t = 10.0 * it as f64 / 20.0;
                let p = PhasePoint::new(alpha, t);
                let diff = analytic_state(&p).max_abs_diff(&prop.evolve(t));
                worst = worst.max(diff);
            }
        }
        assert!(worst <= 1e-12, "max amplitude difference {worst:.3e}");
    }

    #[test]
    fn analytic_state_at_half_period_sits_on_the_beta_pair() {
        // phi = pi: the overlap with the initial state vanishes and all
        // weight moves to |0001>, |0010>.
        let p = PhasePoint::new(0.0, PI);
        let psi = analytic_state(&p);
        assert!(psi[IDX_0100].norm() < 1e-15);
        assert!(psi[IDX_1000].norm() < 1e-15);
        assert!((psi[IDX_0001].norm_sqr() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn density_entries_at_the_quarter_period() {
        // At (0, pi/2): gamma-block entries cos^2(pi/4)/2 = 1/4 and cross
        // entries -i sin(pi/2)/4 = -i/4.
        let p = PhasePoint::new(0.0, PI / 2.0);
        let rho = analytic_density(&p);
        assert!((rho[(IDX_0100, IDX_0100)] - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        assert!((rho[(IDX_0001, IDX_0100)] - Complex64::new(0.0, -0.25)).norm() < 1e-15);
        assert!((rho[(IDX_0100, IDX_0001)] - Complex64::new(0.0, 0.25)).norm() < 1e-15);
        assert!((rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn analytic_density_is_the_outer_product_of_the_analytic_state() {
        for (alpha, t) in [(0.0, PI / 2.0), (-0.5, 2.0), (0.9, 4.2), (-2.2, 7.7)] {
            let p = PhasePoint::new(alpha, t);
            let from_state = analytic_state(&p).outer();
            assert!(analytic_density(&p).max_abs_diff(&from_state) <= 1e-12);
        }
    }

    #[test]
    fn numeric_evolution_preserves_norm_and_the_sector() {
        for (alpha, t) in [(0.0, 1.0), (-1.7, 3.3), (0.8, 9.9)] {
            let psi = numeric_evolve(&PhasePoint::new(alpha, t)).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12);
            let leak: f64 = psi
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|(k, _)| ![IDX_0001, IDX_0010, IDX_0100, IDX_1000].contains(k))
                .map(|(_, z)| z.norm())
                .fold(0.0, f64::max);
            assert!(leak <= 1e-13);
        }
    }

    #[test]
    fn numeric_evolution_examples() {
        // t = 0 returns the initial state.
        let psi = numeric_evolve(&PhasePoint::new(0.4, 0.0)).unwrap();
        assert!(psi.max_abs_diff(&initial_state()) < 1e-13);

        // Overlap magnitude at (0, pi/2).
        let psi = numeric_evolve(&PhasePoint::new(0.0, PI / 2.0)).unwrap();
        let overlap = initial_state().inner(&psi).unwrap().norm();
        assert!((overlap - 0.707106781).abs() < 1e-9);

        // Frozen line: alpha = -1 leaves the physical state untouched.
        // The initial state is an eigenvector there, so the amplitudes only
        // pick up a global phase exp(-it/2); the density matrix is constant.
        let psi = numeric_evolve(&PhasePoint::new(-1.0, 5.0)).unwrap();
        assert!(psi.outer().max_abs_diff(&initial_state().outer()) < 1e-12);
        assert!((initial_state().inner(&psi).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frozen_line_holds_for_long_times() {
        let prop = Propagator::new(-1.0).unwrap();
        let rho0 = initial_state().outer();
        for t in [0.1, 1.0, 5.0, 50.0] {
            let psi = prop.evolve(t);
            assert!(psi.outer().max_abs_diff(&rho0) < 1e-11, "t = {t}");
            assert!(
                (initial_state().inner(&psi).unwrap().norm() - 1.0).abs() < 1e-11,
                "t = {t}"
            );
            // The global phase is the one the closed form carries too.
            assert!(psi.max_abs_diff(&analytic_state(&PhasePoint::new(-1.0, t))) < 1e-11);
        }
    }

    #[test]
    fn analytic_density_is_pure() {
        for (alpha, t) in [(0.0, 0.7), (-0.5, 2.0), (1.0, 5.5)] {
            let rho = analytic_density(&PhasePoint::new(alpha, t));
            let purity = rho.matmul(&rho).unwrap().trace();
            assert!((purity - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn reduced_matrices_match_the_partial_trace_oracle() {
        for (alpha, t) in [(0.0, PI / 2.0), (-0.5, 2.0), (0.6, 1.9), (-2.0, 8.0)] {
            let p = PhasePoint::new(alpha, t);
            let rho = analytic_density(&p);
            let (r12, r34) = reduced_from_density(&rho).unwrap();
            assert!(rho12(&p).max_abs_diff(&r12) <= 1e-12);
            assert!(rho34(&p).max_abs_diff(&r34) <= 1e-12);
        }
    }

    #[test]
    fn reduced_matrices_at_the_phase_extremes() {
        // phi = 0: qubits 1,2 hold the Bell block, qubits 3,4 sit in |00>.
        let p0 = PhasePoint::new(0.0, 0.0);
        let r12 = rho12(&p0);
        assert!(r12[(0, 0)].norm() < 1e-15);
        assert!((r12[(1, 1)] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((r12[(1, 2)] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        let r34 = rho34(&p0);
        assert!((r34[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(
            r34.max_abs_diff(&{
                let mut m = ComplexMatrix::zeros(4);
                m[(0, 0)] = Complex64::new(1.0, 0.0);
                m
            }) < 1e-15
        );

        // phi = pi: the roles swap.
        let p1 = PhasePoint::new(0.0, PI);
        let r12 = rho12(&p1);
        assert!((r12[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(r12[(1, 1)].norm() < 1e-12);
        let r34 = rho34(&p1);
        assert!((r34[(1, 2)] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn sector_block_evolution_reproduces_the_closed_form_amplitudes() {
        // Diagonalizing the 4x4 magnetization block and evolving inside it
        // gives the same beta/gamma pair as the closed forms.
        use crate::linalg::evolution_operator;
        use crate::spin::{build_hamiltonian, sector_block, ChainParams, SectorBasis};

        let amp = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        let basis = SectorBasis::sz_plus_one();
        for (alpha, t) in [(0.0, 0.9), (-0.5, 2.0), (1.3, 4.4)] {
            let block = sector_block(&build_hamiltonian(&ChainParams::new(alpha)), &basis).unwrap();
            let small0 = StateVector::new(vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                amp,
                amp,
            ]);
            let small_t = evolution_operator(&block, t)
                .unwrap()
                .apply(&small0)
                .unwrap();

            let a = amplitudes(&PhasePoint::new(alpha, t));
            assert!((small_t[0] - a.beta).norm() <= 1e-12);
            assert!((small_t[1] - a.beta).norm() <= 1e-12);
            assert!((small_t[2] - a.gamma).norm() <= 1e-12);
            assert!((small_t[3] - a.gamma).norm() <= 1e-12);
        }
    }

    #[test]
    fn equal_phases_collapse_to_equal_densities() {
        // (alpha, t) pairs sharing phi = (alpha+1)t give identical
        // densities up to the sin(phi) cross terms, which also agree.
        let pairs = [
            (PhasePoint::new(0.0, 1.0), PhasePoint::new(1.0, 0.5)),
            (PhasePoint::new(-0.5, 2.0), PhasePoint::new(0.0, 1.0)),
            (PhasePoint::new(3.0, 0.25), PhasePoint::new(0.0, 1.0)),
        ];
        for (a, b) in pairs {
            assert!((a.phi - b.phi).abs() < 1e-15);
            assert!(analytic_density(&a).max_abs_diff(&analytic_density(&b)) <= 1e-12);
        }
    }

    #[test]
    fn reduced_states_are_psd_with_unit_trace() {
        for (alpha, t) in [(0.0, 0.3), (-0.5, 2.0), (1.0, 6.0)] {
            let p = PhasePoint::new(alpha, t);
            for r in [rho12(&p), rho34(&p)] {
                assert!((r.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-13);
                let eig = hermitian_eigen(&r).unwrap();
                assert!(eig.values.iter().all(|&x| x >= -1e-12));
            }
        }
    }
}
