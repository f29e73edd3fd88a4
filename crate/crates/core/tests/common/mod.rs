#![allow(dead_code)] // each test binary uses a different subset

//! Shared fixtures for the integration suites: seeded random Cliffords,
//! near-identity perturbations, Haar-ish random unitaries, and an exhaustive
//! enumeration of the Clifford group up to global phase (the independent
//! oracle for optimality checks).

use num_complex::Complex64;
use rand::Rng;

use tsynth::circuit::{Circuit, Gate};
use tsynth::generators::canonical_phase;
use tsynth::matrix::DenseUnitary;
use tsynth::pauli::{enumerate_paulis, PauliOp};

pub fn random_clifford_circuit<R: Rng>(n: usize, len: usize, rng: &mut R) -> Circuit {
    let mut circ = Circuit::new(n);
    for _ in 0..len {
        let q = rng.gen_range(0..n);
        match rng.gen_range(0..if n > 1 { 3 } else { 2 }) {
            0 => circ.push(Gate::H(q)),
            1 => circ.push(Gate::S(q)),
            _ => {
                let mut t = rng.gen_range(0..n);
                while t == q {
                    t = rng.gen_range(0..n);
                }
                circ.push(Gate::Cnot(q, t));
            }
        }
    }
    circ
}

pub fn random_clifford<R: Rng>(n: usize, rng: &mut R) -> DenseUnitary {
    random_clifford_circuit(n, 25, rng).unitary()
}

/// `e^{i theta P} = cos(theta) I + i sin(theta) P` for a bare Pauli.
pub fn pauli_rotation(p: &PauliOp, theta: f64) -> DenseUnitary {
    let n = p.qubits();
    let dim = 1usize << n;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mx = p.col_permutation_mask();
    let isin = Complex64::new(0.0, theta.sin());
    for c in 0..dim {
        data[c * dim + c] += Complex64::new(theta.cos(), 0.0);
        data[(c ^ mx) * dim + c] += isin * p.column_value(c);
    }
    DenseUnitary::new(n, data).expect("rotation is unitary")
}

/// A random unitary within global-phase distance `eps` of the identity,
/// with its measured distance returned.
pub fn random_near_identity<R: Rng>(n: usize, eps: f64, rng: &mut R) -> (DenseUnitary, f64) {
    let paulis = enumerate_paulis(n, false);
    let mut scale = eps / 3.0;
    loop {
        let mut e = DenseUnitary::identity(n);
        for _ in 0..3 {
            let p = &paulis[rng.gen_range(1..paulis.len())];
            let theta = rng.gen_range(-scale..scale);
            e = e.mul(&pauli_rotation(p, theta));
        }
        let d = tsynth::matrix::distance(&e, &DenseUnitary::identity(n)).unwrap();
        if d <= eps {
            return (e, d);
        }
        scale *= 0.5;
    }
}

/// Gram-Schmidt on a random complex matrix; any unitary works for checking
/// theorem bounds.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> DenseUnitary {
    let dim = 1usize << n;
    loop {
        let mut cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect()
            })
            .collect();
        let mut ok = true;
        for i in 0..dim {
            for j in 0..i {
                let proj: Complex64 = (0..dim).map(|k| cols[j][k].conj() * cols[i][k]).sum();
                for k in 0..dim {
                    let v = cols[j][k];
                    cols[i][k] -= proj * v;
                }
            }
            let norm: f64 = cols[i].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            for v in cols[i].iter_mut() {
                *v /= norm;
            }
        }
        if !ok {
            continue;
        }
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..dim {
                data[r * dim + c] = col[r];
            }
        }
        if let Ok(u) = DenseUnitary::new(n, data) {
            return u;
        }
    }
}

fn quantized_key(u: &DenseUnitary) -> Vec<(i64, i64)> {
    u.entries()
        .iter()
        .map(|e| ((e.re / 1e-9).round() as i64, (e.im / 1e-9).round() as i64))
        .collect()
}

/// Every Clifford on `n` qubits up to global phase, by closure under the
/// generators (24 matrices for n = 1, 11520 for n = 2).
pub fn all_cliffords_up_to_phase(n: usize) -> Vec<DenseUnitary> {
    let mut gens: Vec<DenseUnitary> = Vec::new();
    for q in 0..n {
        for gate in [Gate::H(q), Gate::S(q)] {
            let mut c = Circuit::new(n);
            c.push(gate);
            gens.push(c.unitary());
        }
        for t in 0..n {
            if t != q {
                let mut c = Circuit::new(n);
                c.push(Gate::Cnot(q, t));
                gens.push(c.unitary());
            }
        }
    }
    let mut seen = std::collections::HashMap::new();
    let mut out = vec![canonical_phase(&DenseUnitary::identity(n))];
    seen.insert(quantized_key(&out[0]), ());
    let mut frontier = 0usize;
    while frontier < out.len() {
        let base = out[frontier].clone();
        frontier += 1;
        for g in &gens {
            let next = canonical_phase(&g.mul(&base));
            let key = quantized_key(&next);
            if !seen.contains_key(&key) {
                seen.insert(key, ());
                out.push(next);
            }
        }
    }
    out
}

/// Smallest word length `l <= l_max` such that some adjacent-distinct
/// generator word of length `l` times some Clifford lands within `eps` of
/// `w`; `None` if every length fails. Exhaustive over the supplied Clifford
/// list, independent of the certification tests.
pub fn brute_force_min_length(
    w: &DenseUnitary,
    generators: &[DenseUnitary],
    cliffords: &[DenseUnitary],
    eps: f64,
    l_max: usize,
) -> Option<usize> {
    let dim = w.dim() as f64;
    let reachable = |u: &DenseUnitary| {
        // d(U C, W) <= eps for some Clifford C, via |Tr(C^dag U^dag W)|
        let residual = u.adjoint().mul(w);
        cliffords.iter().any(|c| {
            let mut tr = Complex64::new(0.0, 0.0);
            for (a, b) in c.entries().iter().zip(residual.entries().iter()) {
                tr += a.conj() * b;
            }
            tr.norm() >= dim * (1.0 - eps * eps)
        })
    };
    if reachable(&DenseUnitary::identity(w.qubits())) {
        return Some(0);
    }
    let mut words: Vec<(usize, DenseUnitary)> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (i, g.clone()))
        .collect();
    for l in 1..=l_max {
        if words.iter().any(|(_, u)| reachable(u)) {
            return Some(l);
        }
        if l < l_max {
            words = words
                .iter()
                .flat_map(|(last, u)| {
                    generators
                        .iter()
                        .enumerate()
                        .filter(move |(j, _)| j != last)
                        .map(move |(j, g)| (j, u.mul(g)))
                        .collect::<Vec<_>>()
                })
                .collect();
        }
    }
    None
}
