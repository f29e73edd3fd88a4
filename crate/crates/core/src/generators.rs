//! Generator families for the search: the T-count-1 rotations `R(P)`, the
//! T-depth-1 block set `V_n`, and the Clifford conjugators that map `Z_(q)`
//! onto an arbitrary signed Pauli.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::matrix::DenseUnitary;
use crate::pauli::{enumerate_paulis, PauliOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    RCount,
    RDaggerCount,
    DepthBlock,
}

/// One `R`/`R^dag` factor of a generator.
#[derive(Debug, Clone, Copy)]
pub struct RFactor {
    pub pauli: PauliOp,
    pub dagger: bool,
}

/// A search generator: either a single `R(P)` (T-count mode) or a product of
/// commuting `R`-factors forming one parallel T-stage (T-depth mode).
#[derive(Debug, Clone)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub factors: Vec<RFactor>,
    pub matrix: DenseUnitary,
    pub index: usize,
    /// Depth blocks carry the shared Clifford frame `C` with
    /// `C Z_(q) C^dag = P_q` for every factor, so all T gates of the block
    /// can be emitted in a single stage between `C^dag` and `C`.
    pub conjugator: Option<Circuit>,
    /// `(qubit, dagger)` T-gate placements of a depth block.
    pub stage: Vec<(usize, bool)>,
}

/// `R(P) = (1 + w)/2 * I + (1 - w)/2 * P` with `w = e^{i pi/4}`; the dagger
/// variant conjugates `w`. `R(Z) = T` exactly.
pub fn r_of_pauli(p: &PauliOp, dagger: bool) -> Result<Generator> {
    if p.is_identity_class() {
        return Err(Error::IdentityPauli);
    }
    if !p.is_hermitian() {
        return Err(Error::NonHermitianPauli {
            phase: p.phase().to_string(),
        });
    }
    let omega = Complex64::from_polar(1.0, if dagger { -1.0 } else { 1.0 } * std::f64::consts::FRAC_PI_4);
    let half = Complex64::new(0.5, 0.0);
    let a = half * (Complex64::new(1.0, 0.0) + omega);
    let b = half * (Complex64::new(1.0, 0.0) - omega);
    let dim = 1usize << p.qubits();
    let mx = p.col_permutation_mask();
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for c in 0..dim {
        data[c * dim + c] += a;
        data[(c ^ mx) * dim + c] += b * p.column_value(c);
    }
    Ok(Generator {
        kind: if dagger { GeneratorKind::RDaggerCount } else { GeneratorKind::RCount },
        factors: vec![RFactor { pauli: *p, dagger }],
        matrix: DenseUnitary::from_raw(p.qubits(), data),
        index: 0,
        conjugator: None,
        stage: Vec::new(),
    })
}

/// The T-count generator family `{R(P) : P bare, P != I}` in canonical Pauli
/// order, `4^n - 1` entries with indices assigned.
pub fn tcount_generators(n: usize) -> Vec<Generator> {
    let mut out = Vec::with_capacity((1 << (2 * n)) - 1);
    for p in enumerate_paulis(n, false).into_iter().skip(1) {
        let mut g = r_of_pauli(&p, false).expect("non-identity bare Pauli");
        g.index = out.len();
        out.push(g);
    }
    out
}

/// Builds a Clifford circuit `C` with `C Z_(q) C^dag = P` exactly, including
/// the sign.
///
/// Layout: an `X_(a)` layer absorbs a negative sign, a CNOT parity ladder
/// fans `Z_(a)` out over the support, per-qubit basis changes turn each `Z`
/// into the required letter, and a leading SWAP reroutes when `q` is outside
/// the support.
pub fn conjugator_circuit(p: &PauliOp, q: usize) -> Result<Circuit> {
    if p.is_identity_class() {
        return Err(Error::IdentityPauli);
    }
    if !p.is_hermitian() {
        return Err(Error::NonHermitianPauli {
            phase: p.phase().to_string(),
        });
    }
    let n = p.qubits();
    assert!(q < n, "target qubit out of range");
    let support = p.support();
    let anchor = if support.contains(&q) {
        q
    } else {
        support[0]
    };
    let mut circ = Circuit::new(n);
    if anchor != q {
        // SWAP(q, anchor) applied first so the ladder can anchor inside the
        // support
        circ.push(Gate::Cnot(q, anchor));
        circ.push(Gate::Cnot(anchor, q));
        circ.push(Gate::Cnot(q, anchor));
    }
    if p.sign() < 0 {
        circ.push(Gate::X(anchor));
    }
    for &j in &support {
        if j != anchor {
            circ.push(Gate::Cnot(j, anchor));
        }
    }
    for &j in &support {
        match p.letter(j) {
            'X' => circ.push(Gate::H(j)),
            'Y' => {
                // (S H) Z (S H)^dag = Y
                circ.push(Gate::H(j));
                circ.push(Gate::S(j));
            }
            _ => {}
        }
    }
    debug_assert_eq!(
        circ.clifford_conjugate(&PauliOp::signed_bare(n, 0, 1 << q, false))
            .expect("clifford gates only"),
        *p
    );
    Ok(circ)
}

/// Multiplies by the unit scalar that makes the first nonzero entry
/// (row-major scan) real and positive; idempotent, and equal matrices up to
/// global phase map to the same representative.
pub fn canonical_phase(u: &DenseUnitary) -> DenseUnitary {
    let pivot = u
        .entries()
        .iter()
        .find(|e| e.norm() > 1e-12)
        .expect("unitary cannot be the zero matrix");
    u.scaled(pivot.conj() / pivot.norm())
}

fn quantized_key(u: &DenseUnitary) -> Vec<(i64, i64)> {
    u.entries()
        .iter()
        .map(|e| ((e.re / 1e-9).round() as i64, (e.im / 1e-9).round() as i64))
        .collect()
}

/// The T-depth-1 block set `V_n`, built constructively: for each signed
/// `P != +/-I`, target qubit `q` and `R`/`R^dag` choice, fix the canonical
/// conjugator `C`, then extend by every `T`/`Tdg`/`I` configuration on the
/// remaining qubits using the induced Paulis `C Z_(i) C^dag`. Deduplication
/// is up to global phase. Supported for n in {1, 2}; the family obeys
/// `|V_n| <= 2n * 12^n`.
pub fn build_vn(n: usize) -> Result<Vec<Generator>> {
    if !(1..=2).contains(&n) {
        return Err(Error::UnsupportedQubitCount {
            n,
            what: "V_n depth blocks",
            supported: "1..=2",
        });
    }
    let mut seen: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
    let mut out: Vec<Generator> = Vec::new();
    for p in enumerate_paulis(n, true) {
        if p.is_identity_class() {
            continue;
        }
        for q in 0..n {
            let conj = conjugator_circuit(&p, q)?;
            let others: Vec<usize> = (0..n).filter(|i| *i != q).collect();
            for dagger0 in [false, true] {
                // base-3 counter over the remaining qubits: 0 = I, 1 = T,
                // 2 = Tdg
                let configs = 3usize.pow(others.len() as u32);
                for cfg in 0..configs {
                    let base = r_of_pauli(&p, dagger0)?;
                    let mut matrix = base.matrix;
                    let mut factors = vec![RFactor { pauli: p, dagger: dagger0 }];
                    let mut stage = vec![(q, dagger0)];
                    let mut digits = cfg;
                    for &i in &others {
                        let choice = digits % 3;
                        digits /= 3;
                        if choice == 0 {
                            continue;
                        }
                        let dagger = choice == 2;
                        let p_i = conj
                            .clifford_conjugate(&PauliOp::signed_bare(n, 0, 1 << i, false))
                            .expect("conjugator is Clifford");
                        matrix = matrix.mul(&r_of_pauli(&p_i, dagger)?.matrix);
                        factors.push(RFactor { pauli: p_i, dagger });
                        stage.push((i, dagger));
                    }
                    let key = quantized_key(&canonical_phase(&matrix));
                    if seen.contains_key(&key) {
                        continue;
                    }
                    seen.insert(key, out.len());
                    out.push(Generator {
                        kind: GeneratorKind::DepthBlock,
                        factors,
                        matrix,
                        index: out.len(),
                        conjugator: Some(conj.clone()),
                        stage,
                    });
                }
            }
        }
    }
    debug_assert!(out.len() <= 2 * n * 12usize.pow(n as u32));
    Ok(out)
}
