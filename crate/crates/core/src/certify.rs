//! Certification that a residual unitary is within epsilon of a Clifford:
//! the amplitude test (flat Pauli spectrum inside epsilon-widened intervals)
//! and the conjugation test (single spike per conjugated Pauli).

use crate::error::{Error, Result};
use crate::matrix::DenseUnitary;
use crate::pauli::{enumerate_paulis, trace_with_pauli, PauliOp};

/// Largest epsilon for which the S_0 / S_1 interval families stay separable.
pub const EPSILON_SEPARABILITY: f64 = 0.3249196962;

/// Additive float slack applied to every interval bound.
pub const ETA: f64 = 1e-9;

/// Exact synthesis (`epsilon = 0`) runs with this effective epsilon so the
/// intervals stay wider than double rounding.
pub const EPSILON_EXACT: f64 = 1e-8;

/// True iff `eps` is inside the separability regime (boundary inclusive).
pub fn check_epsilon_regime(eps: f64) -> bool {
    eps >= 0.0 && eps <= EPSILON_SEPARABILITY
}

pub(crate) fn effective_epsilon(eps: f64) -> f64 {
    eps.max(EPSILON_EXACT)
}

/// Outcome of the amplitude test, feeding the conjugation test and the
/// Clifford recovery.
#[derive(Debug, Clone)]
pub struct TestReport {
    /// Accepted support size M.
    pub m_support: usize,
    /// Top-M entries `(P, |Tr(Wp P)| / N)`, sorted descending; ties broken by
    /// canonical Pauli index.
    pub s1: Vec<(PauliOp, f64)>,
    /// The remaining entries, same order continuation.
    pub s0: Vec<(PauliOp, f64)>,
    pub pass_amplitude: bool,
    pub pass_conjugation: bool,
    pub epsilon_used: f64,
}

fn spread(m: usize, eps: f64) -> f64 {
    (m as f64 * (2.0 * eps * eps - eps.powi(4))).sqrt()
}

/// Sorted coefficient moduli of `wp` in the Pauli basis, descending with
/// canonical-index tie-breaking.
fn sorted_amplitudes(wp: &DenseUnitary) -> Vec<(PauliOp, f64)> {
    let norm = wp.dim() as f64;
    let mut values: Vec<(PauliOp, f64)> = enumerate_paulis(wp.qubits(), false)
        .into_iter()
        .map(|p| {
            let t = trace_with_pauli(wp, &p).expect("dimensions agree").norm() / norm;
            (p, t)
        })
        .collect();
    values.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap()
            .then(a.0.canonical_index().cmp(&b.0.canonical_index()))
    });
    values
}

/// The amplitude test: scans `M = 1..N^2` over the descending coefficient
/// moduli of `wp` and accepts the first M whose top-M values all lie in
/// `[(1 - eps^2)/sqrt(M) - sqrt(M (2 eps^2 - eps^4)),
///   1/sqrt(M) + sqrt(M (2 eps^2 - eps^4))]`
/// while the rest stay below `sqrt(M (2 eps^2 - eps^4))`, every bound padded
/// by [`ETA`]. Returns `None` if no M accepts.
pub fn amplitude_test(wp: &DenseUnitary, eps: f64) -> Option<TestReport> {
    let values = sorted_amplitudes(wp);
    amplitude_test_sorted(&values, eps)
}

/// Core of the amplitude test on descending-sorted moduli. Because the list
/// is sorted, each M needs only three comparisons: the largest and smallest
/// of the top M against the S_1 interval and the next value against the S_0
/// ceiling. Returns the first accepted M.
pub(crate) fn amplitude_scan(sorted_desc: &[f64], eps: f64) -> Option<usize> {
    let eps = effective_epsilon(eps);
    let total = sorted_desc.len();
    for m in 1..=total {
        let w = spread(m, eps);
        let lo = (1.0 - eps * eps) / (m as f64).sqrt() - w - ETA;
        let hi = 1.0 / (m as f64).sqrt() + w + ETA;
        let s0_hi = w + ETA;
        if sorted_desc[0] <= hi
            && sorted_desc[m - 1] >= lo
            && (m == total || sorted_desc[m] <= s0_hi)
        {
            return Some(m);
        }
    }
    None
}

pub(crate) fn amplitude_test_sorted(values: &[(PauliOp, f64)], eps: f64) -> Option<TestReport> {
    let sorted: Vec<f64> = values.iter().map(|(_, v)| *v).collect();
    let m = amplitude_scan(&sorted, eps)?;
    Some(TestReport {
        m_support: m,
        s1: values[..m].to_vec(),
        s0: values[m..].to_vec(),
        pass_amplitude: true,
        pass_conjugation: false,
        epsilon_used: effective_epsilon(eps),
    })
}

/// The conjugation test: for every bare `P' != I`, expands
/// `Wp P' Wp^dag` in the Pauli basis (with `Wp` close to `E^dag C0^dag` this
/// realizes `E^dag (C0^dag P' C0) E`) and demands exactly one coefficient
/// modulus in `[2 (1 - eps^2)^2 - 1 - eta, 1 + eta]` with all others below
/// `2 sqrt(2 eps^2 - eps^4) + (2 eps^2 - eps^4) + eta`. Fails on the first
/// violating `P'`.
///
/// The interval edges are the tight ones for `|Tr(E)| >= N (1 - eps^2)`:
/// writing `E = sum e_P P`, the spike keeps `|e_I|^2 - sum_{P != I} |e_P|^2
/// >= 2 (1 - eps^2)^2 - 1` (a z-rotation with `e_I = 1 - eps^2` attains it),
/// and each off-spike coefficient is a matched cross sum whose two
/// identity-paired terms contribute up to `2 |e_I| sqrt(2 eps^2 - eps^4)`,
/// so it is order eps rather than eps^2.
pub fn conjugation_test(wp: &DenseUnitary, eps: f64, report: &TestReport) -> bool {
    debug_assert!(report.pass_amplitude);
    let eps = effective_epsilon(eps);
    let e2 = 2.0 * eps * eps - eps.powi(4);
    let spike_lo = 2.0 * (1.0 - eps * eps) * (1.0 - eps * eps) - 1.0 - ETA;
    let rest_hi = 2.0 * e2.sqrt() + e2 + ETA;
    let n = wp.qubits();
    let norm = wp.dim() as f64;
    let wp_dag = wp.adjoint();
    let paulis = enumerate_paulis(n, false);
    for p_prime in paulis.iter().skip(1) {
        let conj = wp.mul_pauli_right(p_prime).mul(&wp_dag);
        let mut spikes = 0usize;
        for p_bar in &paulis {
            let c = trace_with_pauli(&conj, p_bar).expect("dimensions agree").norm() / norm;
            if c >= spike_lo {
                if c > 1.0 + ETA {
                    return false;
                }
                spikes += 1;
                if spikes > 1 {
                    return false;
                }
            } else if c > rest_hi {
                return false;
            }
        }
        if spikes != 1 {
            return false;
        }
    }
    true
}

/// Convenience wrapper running both tests; `Ok` reports have
/// `pass_conjugation` set.
pub fn certify_near_clifford(wp: &DenseUnitary, eps: f64) -> Option<TestReport> {
    let mut report = amplitude_test(wp, eps)?;
    if conjugation_test(wp, eps, &report) {
        report.pass_conjugation = true;
        Some(report)
    } else {
        None
    }
}

/// Epsilon-regime gate for synthesis entry points.
pub fn require_epsilon_regime(eps: f64) -> Result<()> {
    if check_epsilon_regime(eps) {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange {
            eps,
            max: EPSILON_SEPARABILITY,
        })
    }
}
