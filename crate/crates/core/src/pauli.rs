//! Signed n-qubit Pauli operators as two bitmasks plus an exact fourth-root
//! phase.
//!
//! A `PauliOp` stores `i^k * X^x * Z^z` with per-qubit factor order `X` then
//! `Z`, so `Y = i * X * Z` holds internally while every materialized matrix
//! matches the usual `Y = [[0, -i], [i, 0]]`. Bit `q` of a mask refers to
//! qubit `q`; qubit 0 is the first tensor factor (most significant bit of a
//! basis index).

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseUnitary;

/// Power of `i`, exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(k: u8) -> Self {
        Phase(k & 3)
    }

    pub fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) & 3)
    }

    pub fn conj(self) -> Phase {
        Phase(self.0.wrapping_neg() & 3)
    }

    pub fn value(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn exponent(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// Signed Pauli operator on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOp {
    n: usize,
    x: u64,
    z: u64,
    phase: Phase,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            n,
            x: 0,
            z: 0,
            phase: Phase::ONE,
        }
    }

    /// The Hermitian tensor-of-letters Pauli with the given masks: the phase
    /// is fixed to `i^{|x & z|}` so each overlapping bit contributes one `Y`.
    pub fn bare(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= 64 && x < (1u64 << n) && z < (1u64 << n));
        PauliOp {
            n,
            x,
            z,
            phase: Phase::new(((x & z).count_ones() & 3) as u8),
        }
    }

    /// `bare` times an explicit sign.
    pub fn signed_bare(n: usize, x: u64, z: u64, negative: bool) -> Self {
        let mut p = Self::bare(n, x, z);
        if negative {
            p.phase = p.phase.mul(Phase::MINUS_ONE);
        }
        p
    }

    pub(crate) fn raw(n: usize, x: u64, z: u64, phase: Phase) -> Self {
        PauliOp { n, x, z, phase }
    }

    /// Parses strings like `"XZ"`, `"-IY"`, `"+ZZ"`; qubit 0 is the first
    /// letter.
    pub fn from_letters(s: &str) -> Result<Self> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let n = body.chars().count();
        let mut x = 0u64;
        let mut z = 0u64;
        for (q, letter) in body.chars().enumerate() {
            match letter {
                'I' => {}
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                }
                other => {
                    return Err(Error::Parse {
                        path: "<pauli literal>".into(),
                        line: 1,
                        what: format!("unknown Pauli letter {other:?}"),
                    })
                }
            }
        }
        Ok(Self::signed_bare(n, x, z, neg))
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// True when the operator is `phase * I`.
    pub fn is_identity_class(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// True for `+/- (tensor of letters)`; these are the valid rotation axes.
    pub fn is_hermitian(&self) -> bool {
        let bare = ((self.x & self.z).count_ones() & 3) as u8;
        (self.phase.exponent() + 4 - bare) & 1 == 0
    }

    /// Sign relative to the bare letters; requires [`Self::is_hermitian`].
    pub fn sign(&self) -> i8 {
        let bare = ((self.x & self.z).count_ones() & 3) as u8;
        debug_assert!(self.is_hermitian());
        if (self.phase.exponent() + 4 - bare) & 3 == 0 {
            1
        } else {
            -1
        }
    }

    /// Same bare letters, ignoring phase.
    pub fn same_bare(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Position in the canonical enumeration of bare Paulis: lexicographic on
    /// `(x_mask, z_mask)`, identity first.
    pub fn canonical_index(&self) -> usize {
        ((self.x as usize) << self.n) | self.z as usize
    }

    /// Qubits on which the operator acts nontrivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|q| (self.x | self.z) >> q & 1 == 1).collect()
    }

    pub fn lowest_active_qubit(&self) -> Option<usize> {
        let m = self.x | self.z;
        if m == 0 {
            None
        } else {
            Some(m.trailing_zeros() as usize)
        }
    }

    /// Letter at qubit `q` as one of `'I'`, `'X'`, `'Y'`, `'Z'`.
    pub fn letter(&self, q: usize) -> char {
        match ((self.x >> q) & 1, (self.z >> q) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }

    /// Exact product. `X^x Z^z * X^x' Z^z'` picks up `(-1)^{|z & x'|}` from
    /// moving the right factor's X part through the left factor's Z part.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        let mut phase = self.phase.mul(rhs.phase);
        if (self.z & rhs.x).count_ones() & 1 == 1 {
            phase = phase.mul(Phase::MINUS_ONE);
        }
        Ok(PauliOp {
            n: self.n,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase,
        })
    }

    pub fn negated(&self) -> Self {
        PauliOp {
            phase: self.phase.mul(Phase::MINUS_ONE),
            ..*self
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.z & other.x).count_ones() + (self.x & other.z).count_ones()) & 1 == 0
    }

    /// Index-space column permutation: column `c` maps to row `c ^ mask`.
    /// Qubit `q` occupies index bit `n - 1 - q`.
    pub fn col_permutation_mask(&self) -> usize {
        reverse_mask(self.x, self.n)
    }

    /// Both index-space masks `(x, z)` at once, for hot loops that only need
    /// coefficient moduli (the bare phase drops out there).
    pub fn index_masks(&self) -> (usize, usize) {
        (reverse_mask(self.x, self.n), reverse_mask(self.z, self.n))
    }

    /// Value of the single nonzero entry in column `c` (at row
    /// `c ^ col_permutation_mask()`).
    pub fn column_value(&self, c: usize) -> Complex64 {
        let mz = reverse_mask(self.z, self.n);
        let mut v = self.phase.value();
        if (mz & c).count_ones() & 1 == 1 {
            v = -v;
        }
        v
    }

    /// Dense matrix of the operator: one nonzero per row and column, each in
    /// `{1, -1, i, -i} * phase`.
    pub fn materialize(&self) -> DenseUnitary {
        let dim = 1usize << self.n;
        let mx = self.col_permutation_mask();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for c in 0..dim {
            data[(c ^ mx) * dim + c] = self.column_value(c);
        }
        DenseUnitary::from_raw(self.n, data)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bare = ((self.x & self.z).count_ones() & 3) as u8;
        let rel = Phase::new(self.phase.exponent() + 4 - bare);
        write!(f, "{}", rel)?;
        for q in 0..self.n {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

fn reverse_mask(mask: u64, n: usize) -> usize {
    let mut out = 0usize;
    for q in 0..n {
        if mask >> q & 1 == 1 {
            out |= 1 << (n - 1 - q);
        }
    }
    out
}

/// All bare Paulis (or all `+/-` signed ones) in canonical order:
/// lexicographic on `(x_mask, z_mask)`, sign-positive before negative,
/// identity first.
pub fn enumerate_paulis(n: usize, signed: bool) -> Vec<PauliOp> {
    assert!(n >= 1, "need at least one qubit");
    let side = 1u64 << n;
    let mut out = Vec::with_capacity((if signed { 2 } else { 1 }) << (2 * n));
    for x in 0..side {
        for z in 0..side {
            out.push(PauliOp::bare(n, x, z));
            if signed {
                out.push(PauliOp::signed_bare(n, x, z, true));
            }
        }
    }
    out
}

/// `Tr(U * P)` in `O(N)` using the single nonzero per column of `P`.
pub fn trace_with_pauli(u: &DenseUnitary, p: &PauliOp) -> Result<Complex64> {
    if u.qubits() != p.qubits() {
        return Err(Error::DimensionMismatch {
            left: u.qubits(),
            right: p.qubits(),
        });
    }
    let dim = u.dim();
    let mx = p.col_permutation_mask();
    let mut acc = Complex64::new(0.0, 0.0);
    for c in 0..dim {
        // P[k][c] is nonzero only at k = c ^ mx
        acc += u.at(c, c ^ mx) * p.column_value(c);
    }
    Ok(acc)
}
