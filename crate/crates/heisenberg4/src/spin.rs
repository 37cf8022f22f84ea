//! The four-qubit isotropic exchange model and its magnetization sectors.
//!
//! Sites are numbered 1..=4 with qubit 1 as the most significant bit of the
//! basis index and |0> the S^z = +1/2 state. Exchange bonds run around the
//! ring — (1,2), (2,3), (3,4), (4,1) at unit coupling — plus the two
//! diagonals (1,3) and (2,4) at coupling alpha. Every bond carries the
//! isotropic 1/4 (sx sx + sy sy + sz sz) exchange, so total S^z is conserved
//! and the dynamics of a single flipped spin closes on a four-state sector.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{tensor_product, ComplexMatrix};

/// Number of sites in the register.
pub const N_SITES: usize = 4;
/// Hilbert-space dimension, 2^N_SITES.
pub const DIM: usize = 16;
/// Exchange coupling on the ring bonds (fixed; alpha scales the diagonals).
pub const NEAREST_COUPLING: f64 = 1.0;

const RING_BONDS: [(usize, usize); 4] = [(1, 2), (2, 3), (3, 4), (4, 1)];
const DIAGONAL_BONDS: [(usize, usize); 2] = [(1, 3), (2, 4)];

/// Model parameters. Only the diagonal coupling is tunable; the ring
/// coupling is pinned to [`NEAREST_COUPLING`] and hbar = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    pub alpha: f64,
}

impl ChainParams {
    pub fn new(alpha: f64) -> Self {
        Self { alpha }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// The 2x2 Pauli matrix for one axis, in the basis where |0> is spin-up.
pub fn pauli(axis: Axis) -> ComplexMatrix {
    let c = Complex64::new;
    let rows = match axis {
        Axis::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        Axis::Y => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        Axis::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
    };
    ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).unwrap()
}

/// Pauli operator acting on one site of the register, identity elsewhere.
pub fn site_operator(axis: Axis, site: usize) -> Result<ComplexMatrix> {
    if !(1..=N_SITES).contains(&site) {
        return Err(Error::BadSite(site, N_SITES));
    }
    let mut out = ComplexMatrix::identity(1);
    for s in 1..=N_SITES {
        let factor = if s == site {
            pauli(axis)
        } else {
            ComplexMatrix::identity(2)
        };
        out = tensor_product(&out, &factor);
    }
    Ok(out)
}

/// 1/4 (sx sx + sy sy + sz sz) between two sites.
fn exchange_bond(a: usize, b: usize) -> ComplexMatrix {
    let mut bond = ComplexMatrix::zeros(DIM);
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        let term = site_operator(axis, a)
            .unwrap()
            .matmul(&site_operator(axis, b).unwrap())
            .unwrap();
        bond = bond.add(&term).unwrap();
    }
    bond.scale(Complex64::new(0.25, 0.0))
}

fn ring_part() -> ComplexMatrix {
    RING_BONDS
        .iter()
        .fold(ComplexMatrix::zeros(DIM), |acc, &(a, b)| {
            acc.add(&exchange_bond(a, b)).unwrap()
        })
}

fn diagonal_part() -> ComplexMatrix {
    DIAGONAL_BONDS
        .iter()
        .fold(ComplexMatrix::zeros(DIM), |acc, &(a, b)| {
            acc.add(&exchange_bond(a, b)).unwrap()
        })
}

/// The full 16x16 Hamiltonian: ring bonds at unit coupling plus diagonal
/// bonds scaled by alpha. Real symmetric by construction, and exactly
/// linear in alpha entry by entry.
pub fn build_hamiltonian(params: &ChainParams) -> ComplexMatrix {
    ring_part()
        .add_scaled(&diagonal_part(), params.alpha)
        .unwrap()
}

/// Total magnetization sum_i (1/2) sz_i as a diagonal matrix.
pub fn total_sz(n_qubits: usize) -> ComplexMatrix {
    let dim = 1usize << n_qubits;
    let mut m = ComplexMatrix::zeros(dim);
    for index in 0..dim {
        let ones = (index as u32).count_ones() as f64;
        let value = 0.5 * (n_qubits as f64 - ones) - 0.5 * ones;
        m[(index, index)] = Complex64::new(value, 0.0);
    }
    m
}

/// An eigenspace of total S^z, listed by full-space basis indices
/// (0-based internally; 1-based only at reporting boundaries).
#[derive(Debug, Clone, PartialEq)]
pub struct SectorBasis {
    pub total_sz: f64,
    pub member_indices: Vec<usize>,
}

impl SectorBasis {
    /// The S^z = +1 sector of the four-site register: exactly the four
    /// single-flip states |0001>, |0010>, |0100>, |1000>.
    pub fn sz_plus_one() -> Self {
        Self {
            total_sz: 1.0,
            member_indices: vec![0b0001, 0b0010, 0b0100, 0b1000],
        }
    }

    /// Decimal indices in the 1-based reporting convention.
    pub fn one_based_indices(&self) -> Vec<usize> {
        self.member_indices.iter().map(|&i| i + 1).collect()
    }
}

/// Restrict a Hamiltonian to a sector: the |basis| x |basis| submatrix
/// H[b_i][b_j].
pub fn sector_block(h: &ComplexMatrix, basis: &SectorBasis) -> Result<ComplexMatrix> {
    let n = basis.member_indices.len();
    for &idx in &basis.member_indices {
        if idx >= h.dim() {
            return Err(Error::BadIndex(idx, h.dim()));
        }
    }
    let mut block = ComplexMatrix::zeros(n);
    for (i, &bi) in basis.member_indices.iter().enumerate() {
        for (j, &bj) in basis.member_indices.iter().enumerate() {
            block[(i, j)] = h[(bi, bj)];
        }
    }
    Ok(block)
}
