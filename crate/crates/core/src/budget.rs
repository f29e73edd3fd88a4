//! Distance-composability calculus: how per-block approximation errors add
//! up under tensor products and matrix products, used to allocate epsilon
//! when a large unitary is split into synthesizable pieces.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeRule {
    Tensor,
    Mult2,
    Sequence,
}

#[derive(Debug, Clone)]
pub struct ErrorBudget {
    pub rule: ComposeRule,
    pub block_epsilons: Vec<f64>,
    pub composed_epsilon: f64,
}

impl ErrorBudget {
    pub fn compose(rule: ComposeRule, eps: &[f64]) -> Result<Self> {
        let composed = match rule {
            ComposeRule::Tensor => compose_tensor(eps)?,
            ComposeRule::Sequence => compose_sequence(eps)?,
            ComposeRule::Mult2 => {
                if eps.len() != 2 {
                    return Err(Error::Parse {
                        path: "<epsilon list>".into(),
                        line: 1,
                        what: format!("mult2 composes exactly two blocks, got {}", eps.len()),
                    });
                }
                compose_mult2(eps[0], eps[1])?
            }
        };
        Ok(ErrorBudget {
            rule,
            block_epsilons: eps.to_vec(),
            composed_epsilon: composed,
        })
    }
}

fn check_range(eps: &[f64]) -> Result<()> {
    for &e in eps {
        if !(0.0..1.0).contains(&e) {
            return Err(Error::BudgetEpsilonRange { eps: e });
        }
    }
    Ok(())
}

/// Tensor-product bound: `sqrt(1 - prod (1 - eps_i^2))`, always below the
/// plain sum.
pub fn compose_tensor(eps: &[f64]) -> Result<f64> {
    check_range(eps)?;
    let prod: f64 = eps.iter().map(|e| 1.0 - e * e).product();
    Ok((1.0 - prod).max(0.0).sqrt())
}

/// Two-factor product bound:
/// `min{1, sqrt(1 - (1-e1^2)(1-e2^2) + 2 e1 e2 sqrt((1-e1^2/2)(1-e2^2/2)))}`.
pub fn compose_mult2(eps1: f64, eps2: f64) -> Result<f64> {
    check_range(&[eps1, eps2])?;
    let inner = 1.0 - (1.0 - eps1 * eps1) * (1.0 - eps2 * eps2)
        + 2.0 * eps1 * eps2 * ((1.0 - eps1 * eps1 / 2.0) * (1.0 - eps2 * eps2 / 2.0)).sqrt();
    Ok(inner.max(0.0).sqrt().min(1.0))
}

/// Many-factor sequence estimate:
/// `eps^2 ~ sum eps_i^2
///        + 2 sum_{i>=2} eps_i (sum_{j<i} eps_j)
///          sqrt(max{0, 1 - eps_i^2 - (sum_{j<i} eps_j)^2})`,
/// clamped to `[0, 1]`. This is the printed approximation, an upper estimate
/// rather than a proven bound; the proven bounds are [`compose_tensor`] and
/// [`compose_mult2`].
pub fn compose_sequence(eps: &[f64]) -> Result<f64> {
    check_range(eps)?;
    let mut total = 0.0f64;
    let mut prefix_sum = 0.0f64;
    for (i, &e) in eps.iter().enumerate() {
        total += e * e;
        if i > 0 {
            let head = (1.0 - e * e - prefix_sum * prefix_sum).max(0.0).sqrt();
            total += 2.0 * e * prefix_sum * head;
        }
        prefix_sum += e;
    }
    Ok(total.max(0.0).sqrt().min(1.0))
}

/// Error budget of the textbook n-qubit QFT circuit: `N_R = n(n-1)/2`
/// two-qubit controlled rotations, each allotted `eps_r`, composed in
/// sequence.
pub fn qft_budget(n: usize, eps_r: f64) -> Result<(usize, f64)> {
    if n < 2 {
        return Err(Error::UnsupportedQubitCount {
            n,
            what: "QFT budget",
            supported: "2..",
        });
    }
    let n_r = n * (n - 1) / 2;
    let eps = compose_sequence(&vec![eps_r; n_r])?;
    Ok((n_r, eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_examples() {
        assert_eq!(compose_tensor(&[0.0]).unwrap(), 0.0);
        let e = 0.07;
        assert!((compose_tensor(&[e, 0.0, 0.0]).unwrap() - e).abs() < 1e-15);
        let v = compose_tensor(&[0.1, 0.1]).unwrap();
        assert!((v - (1.0f64 - 0.99 * 0.99).sqrt()).abs() < 1e-15);
        assert!((v - 0.141067).abs() < 1e-6);
        assert!(v < 0.2);
    }

    #[test]
    fn mult2_examples() {
        let e = 0.05;
        assert!((compose_mult2(0.0, e).unwrap() - e).abs() < 1e-15);
        let v = compose_mult2(0.1, 0.1).unwrap();
        assert!(v < 0.2, "strictly below the sum");
        // direct formula evaluation as the oracle
        let inner = 1.0 - 0.99f64 * 0.99 + 2.0 * 0.01 * (0.995f64 * 0.995).sqrt();
        assert!((v - inner.sqrt()).abs() < 1e-15);
        assert_eq!(compose_mult2(0.9, 0.9).unwrap(), 1.0, "clamp engages");
    }

    #[test]
    fn sequence_examples() {
        let e = 0.123;
        assert!((compose_sequence(&[e]).unwrap() - e).abs() < 1e-15);
        // two-block case collapses to the printed m = 2 instance
        let (a, b) = (0.04, 0.09);
        let direct = (a * a + b * b + 2.0 * a * b * (1.0f64 - b * b - a * a).sqrt()).sqrt();
        assert!((compose_sequence(&[a, b]).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn qft_twenty_qubits_matches_published_value() {
        let (n_r, eps) = qft_budget(20, 3e-3).unwrap();
        assert_eq!(n_r, 190);
        assert!((eps - 0.545137).abs() < 1e-5, "eps = {eps}");
    }

    #[test]
    fn qft_two_qubits_is_a_single_block() {
        let (n_r, eps) = qft_budget(2, 0.123).unwrap();
        assert_eq!(n_r, 1);
        assert!((eps - 0.123).abs() < 1e-15);
    }

    #[test]
    fn out_of_range_epsilon_rejected() {
        assert!(compose_tensor(&[1.0]).is_err());
        assert!(compose_sequence(&[0.5, -0.1]).is_err());
        assert!(compose_mult2(0.5, 2.0).is_err());
        assert!(ErrorBudget::compose(ComposeRule::Mult2, &[0.1]).is_err());
    }

    #[test]
    fn composition_below_plain_sum() {
        let lists: [&[f64]; 3] = [&[0.1, 0.2], &[0.05, 0.05, 0.05], &[0.3, 0.2, 0.1, 0.05]];
        for eps in lists {
            let sum: f64 = eps.iter().sum();
            if sum < 1.0 {
                assert!(compose_tensor(eps).unwrap() < sum);
                assert!(compose_sequence(eps).unwrap() < sum);
            }
        }
    }
}
