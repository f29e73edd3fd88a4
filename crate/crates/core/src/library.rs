//! Built-in target unitaries (controlled z-rotation, Givens rotation, QFT)
//! and the matrix-file format.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseUnitary;

/// Controlled z-rotation `diag(1, 1, e^{-i theta/2}, e^{i theta/2})`.
pub fn crz(theta: f64) -> DenseUnitary {
    let mut data = vec![Complex64::new(0.0, 0.0); 16];
    data[0] = Complex64::new(1.0, 0.0);
    data[5] = Complex64::new(1.0, 0.0);
    data[10] = Complex64::from_polar(1.0, -theta / 2.0);
    data[15] = Complex64::from_polar(1.0, theta / 2.0);
    DenseUnitary::from_raw(2, data)
}

/// Givens rotation: cos/sin block on the middle two basis states.
pub fn givens(theta: f64) -> DenseUnitary {
    let (s, c) = theta.sin_cos();
    let mut data = vec![Complex64::new(0.0, 0.0); 16];
    data[0] = Complex64::new(1.0, 0.0);
    data[5] = Complex64::new(c, 0.0);
    data[6] = Complex64::new(-s, 0.0);
    data[9] = Complex64::new(s, 0.0);
    data[10] = Complex64::new(c, 0.0);
    data[15] = Complex64::new(1.0, 0.0);
    DenseUnitary::from_raw(2, data)
}

/// Qubit-order convention for the QFT matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QftConvention {
    /// The plain DFT matrix: the circuit including its final swap layer.
    Swap,
    /// The circuit without the swap layer: rows in bit-reversed order. The
    /// two differ by a Clifford permutation, so T-counts agree.
    NoSwap,
}

/// The n-qubit QFT matrix, entry `(j, k) = e^{2 pi i j k / N} / sqrt(N)`
/// under the `Swap` convention.
pub fn qft(n: usize, convention: QftConvention) -> Result<DenseUnitary> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedQubitCount {
            n,
            what: "built-in QFT",
            supported: "1..=4",
        });
    }
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    let rev = |j: usize| (0..n).fold(0usize, |acc, b| acc | (((j >> b) & 1) << (n - 1 - b)));
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        let row = match convention {
            QftConvention::Swap => j,
            QftConvention::NoSwap => rev(j),
        };
        for k in 0..dim {
            let angle = 2.0 * std::f64::consts::PI * (row * k) as f64 / dim as f64;
            data[j * dim + k] = Complex64::from_polar(scale, angle);
        }
    }
    Ok(DenseUnitary::from_raw(n, data))
}

/// The paper's sweep grid: `theta = 2 pi k / 1000` for
/// `k = 1, 51, ..., 951`.
pub fn theta_grid() -> Vec<f64> {
    (0..20)
        .map(|j| 2.0 * std::f64::consts::PI * (1 + 50 * j) as f64 / 1000.0)
        .collect()
}

#[derive(Debug, Clone)]
pub enum TargetSource {
    Builtin { name: String, theta: Option<f64> },
    File(String),
}

/// A synthesis target: where it came from plus the validated matrix.
#[derive(Debug, Clone)]
pub struct TargetSpec {
    pub source: TargetSource,
    pub n: usize,
    pub matrix: DenseUnitary,
}

/// Text form of the matrix-file format: `qubits <n>` header, then `N^2`
/// lines `row col re im` in row-major order.
pub fn matrix_to_text(u: &DenseUnitary) -> String {
    let dim = u.dim();
    let mut out = format!("qubits {}\n", u.qubits());
    for r in 0..dim {
        for c in 0..dim {
            let e = u.at(r, c);
            out.push_str(&format!("{r} {c} {:.17e} {:.17e}\n", e.re, e.im));
        }
    }
    out
}

/// Reads and validates a matrix file; rejects non-unitary contents with the
/// max deviation reported.
pub fn load_matrix(path: &Path) -> Result<TargetSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let spec = parse_matrix_text(&text, &path.display().to_string())?;
    Ok(spec)
}

pub fn parse_matrix_text(text: &str, path: &str) -> Result<TargetSpec> {
    let err = |line: usize, what: String| Error::Parse {
        path: path.to_string(),
        line: line + 1,
        what,
    };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hdr_idx, header) = lines.next().ok_or_else(|| err(0, "empty matrix file".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["qubits", count] => count
            .parse::<usize>()
            .map_err(|e| err(hdr_idx, format!("bad qubit count: {e}")))?,
        _ => return Err(err(hdr_idx, format!("expected `qubits <n>`, got {header:?}"))),
    };
    if n == 0 || n > 12 {
        return Err(err(hdr_idx, format!("qubit count {n} out of supported range 1..=12")));
    }
    let dim = 1usize << n;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut filled = vec![false; dim * dim];
    let mut count = 0usize;
    for (idx, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(err(idx, format!("expected `row col re im`, got {line:?}")));
        }
        let row: usize = toks[0].parse().map_err(|e| err(idx, format!("bad row: {e}")))?;
        let col: usize = toks[1].parse().map_err(|e| err(idx, format!("bad col: {e}")))?;
        let re: f64 = toks[2].parse().map_err(|e| err(idx, format!("bad re: {e}")))?;
        let im: f64 = toks[3].parse().map_err(|e| err(idx, format!("bad im: {e}")))?;
        if row >= dim || col >= dim {
            return Err(err(idx, format!("entry ({row}, {col}) out of range for N = {dim}")));
        }
        if filled[row * dim + col] {
            return Err(err(idx, format!("duplicate entry ({row}, {col})")));
        }
        filled[row * dim + col] = true;
        data[row * dim + col] = Complex64::new(re, im);
        count += 1;
    }
    if count != dim * dim {
        return Err(err(0, format!("expected {} entries, found {count}", dim * dim)));
    }
    let matrix = DenseUnitary::new(n, data)?;
    Ok(TargetSpec {
        source: TargetSource::File(path.to_string()),
        n,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::distance;

    #[test]
    fn crz_special_angles() {
        assert!(crz(0.0).max_norm_diff(&DenseUnitary::identity(2)) < 1e-15);
        // theta = 2 pi: diag(1, 1, -1, -1)
        let u = crz(2.0 * std::f64::consts::PI);
        assert!((u.at(2, 2) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((u.at(3, 3) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        // theta = pi/2: diag(1, 1, e^{-i pi/4}, e^{i pi/4})
        let u = crz(std::f64::consts::FRAC_PI_2);
        assert!((u.at(2, 2) - Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)).norm() < 1e-15);
        assert!((u.at(3, 3) - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-15);
    }

    #[test]
    fn givens_special_angles() {
        assert!(givens(0.0).max_norm_diff(&DenseUnitary::identity(2)) < 1e-15);
        let u = givens(std::f64::consts::FRAC_PI_2);
        assert!((u.at(1, 2) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((u.at(2, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let u = givens(std::f64::consts::PI);
        for (i, v) in [1.0, -1.0, -1.0, 1.0].iter().enumerate() {
            assert!((u.at(i, i) - Complex64::new(*v, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_inverses() {
        for theta in [0.3, 1.1, 2.9] {
            assert!(crz(theta).mul(&crz(-theta)).max_norm_diff(&DenseUnitary::identity(2)) < 1e-12);
            assert!(givens(theta).mul(&givens(-theta)).max_norm_diff(&DenseUnitary::identity(2)) < 1e-12);
        }
    }

    #[test]
    fn qft_one_qubit_is_hadamard() {
        let q = qft(1, QftConvention::Swap).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((q.at(0, 0) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((q.at(1, 1) - Complex64::new(-s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn qft_two_qubits_entries_and_unitarity() {
        let q = qft(2, QftConvention::Swap).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                let expect = Complex64::new(0.0, 1.0).powu((j * k) as u32) * 0.5;
                assert!((q.at(j, k) - expect).norm() < 1e-12);
            }
        }
        let q3 = qft(3, QftConvention::Swap).unwrap();
        assert!(q3.mul(&q3.adjoint()).max_norm_diff(&DenseUnitary::identity(3)) < 1e-12);
        assert!(qft(5, QftConvention::Swap).is_err());
    }

    #[test]
    fn qft_matches_gate_construction() {
        // H on qubit 0, controlled-S between the qubits, H on qubit 1, swap
        use crate::circuit::{Circuit, Gate};
        let mut pre = Circuit::new(2);
        pre.push(Gate::H(0));
        let mut cs = vec![Complex64::new(0.0, 0.0); 16];
        for (i, v) in [
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
        ]
        .iter()
        .enumerate()
        {
            cs[i * 4 + i] = *v;
        }
        let cs = DenseUnitary::from_raw(2, cs);
        let mut post = Circuit::new(2);
        post.push(Gate::H(1));
        let mut swap = Circuit::new(2);
        swap.push(Gate::Cnot(0, 1));
        swap.push(Gate::Cnot(1, 0));
        swap.push(Gate::Cnot(0, 1));
        let circuit_u = swap
            .unitary()
            .mul(&post.unitary())
            .mul(&cs)
            .mul(&pre.unitary());
        let q = qft(2, QftConvention::Swap).unwrap();
        assert!(distance(&circuit_u, &q).unwrap() < 1e-10);
        // the no-swap convention matches the circuit without its swap layer
        let no_swap_u = post.unitary().mul(&cs).mul(&pre.unitary());
        let q_ns = qft(2, QftConvention::NoSwap).unwrap();
        assert!(distance(&no_swap_u, &q_ns).unwrap() < 1e-10);
    }

    #[test]
    fn matrix_file_round_trip_and_errors() {
        let t = {
            let mut c = crate::circuit::Circuit::new(1);
            c.push(crate::circuit::Gate::T(0));
            c.unitary()
        };
        let text = matrix_to_text(&t);
        let spec = parse_matrix_text(&text, "t.mat").unwrap();
        assert_eq!(spec.n, 1);
        assert!(spec.matrix.max_norm_diff(&t) < 1e-15);

        let id_text = matrix_to_text(&DenseUnitary::identity(1));
        let spec = parse_matrix_text(&id_text, "id.mat").unwrap();
        assert!(spec.matrix.max_norm_diff(&DenseUnitary::identity(1)) < 1e-15);

        // non-unitary contents are rejected with the deviation reported
        let bad = "qubits 1\n0 0 1.0 0\n0 1 0 0\n1 0 0 0\n1 1 0.9 0\n";
        match parse_matrix_text(bad, "bad.mat") {
            Err(Error::NotUnitary { max_dev, .. }) => assert!(max_dev > 0.05),
            other => panic!("expected NotUnitary, got {other:?}"),
        }

        assert!(parse_matrix_text("qubits 1\n0 0 1 0\n", "short.mat").is_err());
        assert!(parse_matrix_text("dim 2\n", "hdr.mat").is_err());
    }
}
