//! Dense unitary arithmetic, the global-phase-invariant distance and
//! Pauli-basis spectra.
//!
//! Matrices are row-major `Vec<Complex64>` of size `2^n x 2^n`. Qubit 0 is the
//! most significant bit of a basis index (first tensor factor), so
//! `kron(a, b)` puts `a` on the lower-numbered qubits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{enumerate_paulis, trace_with_pauli, PauliOp};

/// Default construction tolerance on `max |U^dag U - I|`.
pub const UNITARITY_TOL: f64 = 1e-10;

/// A `2^n x 2^n` complex matrix validated as unitary on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    /// Builds a unitary from row-major entries, checking `max |U^dag U - I|`
    /// against [`UNITARITY_TOL`].
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(n, data, UNITARITY_TOL)
    }

    /// Same as [`DenseUnitary::new`] with a caller-chosen tolerance.
    pub fn with_tolerance(n: usize, data: Vec<Complex64>, tol: f64) -> Result<Self> {
        let dim = 1usize << n;
        assert_eq!(data.len(), dim * dim, "entry count must be 4^n");
        let u = Self { n, data };
        let dev = u.unitarity_defect();
        if dev > tol {
            return Err(Error::NotUnitary { max_dev: dev, tol });
        }
        Ok(u)
    }

    /// Internal constructor for values already known unitary (products,
    /// adjoints, tensor products of unitaries).
    pub(crate) fn from_raw(n: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), (1usize << n) * (1usize << n));
        Self { n, data }
    }

    pub fn identity(n: usize) -> Self {
        let dim = 1usize << n;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { n, data }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1usize << self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    /// `max |(U^dag U - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                // (U^dag U)_{ij} = sum_k conj(U_{ki}) U_{kj}
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += self.data[k * dim + i].conj() * self.data[k * dim + j];
                }
                if i == j {
                    acc -= Complex64::new(1.0, 0.0);
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Standard matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in mul");
        let dim = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            let row = &self.data[i * dim..(i + 1) * dim];
            for (k, &aik) in row.iter().enumerate() {
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                let rrow = &rhs.data[k * dim..(k + 1) * dim];
                let orow = &mut out[i * dim..(i + 1) * dim];
                for (o, &b) in orow.iter_mut().zip(rrow.iter()) {
                    *o += aik * b;
                }
            }
        }
        Self::from_raw(self.n, out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let dim = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                out[j * dim + i] = self.data[i * dim + j].conj();
            }
        }
        Self::from_raw(self.n, out)
    }

    /// Kronecker product; `self` lands on the lower-numbered qubits.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (da, db) = (self.dim(), rhs.dim());
        let dim = da * db;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for ia in 0..da {
            for ja in 0..da {
                let a = self.data[ia * da + ja];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for ib in 0..db {
                    for jb in 0..db {
                        out[(ia * db + ib) * dim + (ja * db + jb)] = a * rhs.data[ib * db + jb];
                    }
                }
            }
        }
        Self::from_raw(self.n + rhs.n, out)
    }

    /// `self * P` for a Pauli `P`, using the single nonzero per column.
    pub fn mul_pauli_right(&self, p: &PauliOp) -> Self {
        assert_eq!(self.n, p.qubits(), "dimension mismatch in mul_pauli_right");
        let dim = self.dim();
        let mx = p.col_permutation_mask();
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for c in 0..dim {
            let v = p.column_value(c);
            let k = c ^ mx;
            for r in 0..dim {
                out[r * dim + c] = self.data[r * dim + k] * v;
            }
        }
        Self::from_raw(self.n, out)
    }

    /// `Tr(self * rhs)` in `O(dim^2)`.
    pub fn trace_mul(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.n, rhs.n, "dimension mismatch in trace_mul");
        let dim = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            for k in 0..dim {
                acc += self.data[i * dim + k] * rhs.data[k * dim + i];
            }
        }
        acc
    }

    /// `max |self_{ij} - rhs_{ij}|`.
    pub fn max_norm_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.n, rhs.n);
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Multiplies every entry by a unit scalar.
    pub fn scaled(&self, s: Complex64) -> Self {
        Self::from_raw(self.n, self.data.iter().map(|e| e * s).collect())
    }
}

/// Entrywise `max |s a - b|` after aligning the global phase `s` at b's
/// largest entry. Unlike [`distance`], whose square root amplifies trace
/// rounding near zero to ~1e-7, this stays at the underlying float noise, so
/// it is the right check for "equal up to global phase" contracts.
pub fn phase_aligned_diff(a: &DenseUnitary, b: &DenseUnitary) -> Result<f64> {
    if a.qubits() != b.qubits() {
        return Err(Error::DimensionMismatch {
            left: a.qubits(),
            right: b.qubits(),
        });
    }
    let pivot = (0..b.entries().len())
        .max_by(|&i, &j| {
            b.entries()[i]
                .norm()
                .partial_cmp(&b.entries()[j].norm())
                .unwrap()
        })
        .expect("nonempty matrix");
    let (ap, bp) = (a.entries()[pivot], b.entries()[pivot]);
    if ap.norm() < 1e-12 {
        return Ok(a.max_norm_diff(b).max(1.0));
    }
    let s = (bp / ap) / (bp / ap).norm();
    Ok(a.scaled(s).max_norm_diff(b))
}

/// Global-phase-invariant distance `sqrt(1 - |Tr(U^dag W)| / N)`, clamped to
/// `[0, 1]` against rounding.
pub fn distance(u: &DenseUnitary, w: &DenseUnitary) -> Result<f64> {
    if u.qubits() != w.qubits() {
        return Err(Error::DimensionMismatch {
            left: u.qubits(),
            right: w.qubits(),
        });
    }
    let dim = u.dim();
    // Tr(U^dag W) = sum_{ij} conj(U_{ij}) W_{ij}
    let mut tr = Complex64::new(0.0, 0.0);
    for (a, b) in u.entries().iter().zip(w.entries().iter()) {
        tr += a.conj() * b;
    }
    let inner = 1.0 - tr.norm() / dim as f64;
    Ok(inner.clamp(0.0, 1.0).sqrt())
}

/// Pauli-basis expansion of a unitary: `q_P = Tr(QP) / N` over all bare
/// Paulis, in canonical order.
#[derive(Debug, Clone)]
pub struct PauliSpectrum {
    pub n: usize,
    /// `(P, q_P)` in canonical Pauli order.
    pub coeffs: Vec<(PauliOp, Complex64)>,
    /// Count of coefficients with `|q_P| > SUPPORT_TOL`.
    pub m_support: usize,
    /// Common modulus of the support when all support moduli agree within
    /// `SUPPORT_TOL` (the flat spectrum of a Clifford).
    pub r_value: Option<f64>,
}

/// Threshold below which a spectral coefficient counts as zero at float
/// precision. Interval logic against epsilon-widened bounds lives in the
/// certification tests, not here.
pub const SUPPORT_TOL: f64 = 1e-8;

impl PauliSpectrum {
    pub fn coefficient(&self, p: &PauliOp) -> Option<Complex64> {
        self.coeffs
            .iter()
            .find(|(q, _)| q.same_bare(p))
            .map(|(_, c)| *c)
    }

    /// `sum q_P * P` back into a dense matrix.
    pub fn reconstruct(&self) -> DenseUnitary {
        let dim = 1usize << self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (p, c) in &self.coeffs {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let mx = p.col_permutation_mask();
            for col in 0..dim {
                data[(col ^ mx) * dim + col] += c * p.column_value(col);
            }
        }
        DenseUnitary::from_raw(self.n, data)
    }
}

/// Expands `u` in the Pauli basis (Fact: `q_P = Tr(QP) / N`) and verifies the
/// normalization `sum |q_P|^2 = 1` expected of a unitary.
pub fn pauli_spectrum(u: &DenseUnitary) -> Result<PauliSpectrum> {
    let n = u.qubits();
    let norm = u.dim() as f64;
    let mut coeffs = Vec::with_capacity(1 << (2 * n));
    let mut total = 0.0f64;
    for p in enumerate_paulis(n, false) {
        let q = trace_with_pauli(u, &p)? / norm;
        total += q.norm_sqr();
        coeffs.push((p, q));
    }
    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnitary {
            max_dev: (total - 1.0).abs(),
            tol: 1e-8,
        });
    }
    let m_support = coeffs.iter().filter(|(_, c)| c.norm() > SUPPORT_TOL).count();
    let mut r_value = None;
    if m_support > 0 {
        let mods: Vec<f64> = coeffs
            .iter()
            .map(|(_, c)| c.norm())
            .filter(|m| *m > SUPPORT_TOL)
            .collect();
        let mean = mods.iter().sum::<f64>() / mods.len() as f64;
        if mods.iter().all(|m| (m - mean).abs() <= SUPPORT_TOL) {
            r_value = Some(mean);
        }
    }
    Ok(PauliSpectrum {
        n,
        coeffs,
        m_support,
        r_value,
    })
}
