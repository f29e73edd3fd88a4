use tsynth::library::{crz, givens, theta_grid};
use tsynth::certify::certify_near_clifford;
use tsynth::search::{decide, SearchConfig};

fn min_m(w: &tsynth::matrix::DenseUnitary, eps: f64, cap: usize) -> Option<usize> {
    let cfg = SearchConfig::count(2, eps).unwrap();
    if certify_near_clifford(&w.adjoint(), eps).is_some() {
        return Some(0);
    }
    for m in 1..=cap {
        if decide(w, m, &cfg).unwrap().candidate.is_some() {
            return Some(m);
        }
    }
    None
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    // paper epsilons reinterpreted as bounds on 1 - |Tr|/N, i.e. d <= sqrt(eps)
    for (label, eps) in [("1e-2", 0.1f64), ("5e-3", 0.07071), ("3e-3", 0.054772)] {
        let mut total = 0usize;
        let mut ms = Vec::new();
        for theta in theta_grid() {
            let w = if which == "givens" { givens(theta) } else { crz(theta) };
            let m = min_m(&w, eps, 6).unwrap_or(99);
            ms.push(m);
            total += m;
        }
        println!("paper eps {label} (d <= {eps}): ms = {ms:?}, avg = {}", total as f64 / 20.0);
    }
}
