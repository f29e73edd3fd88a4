use std::time::Instant;
use tsynth::library::{crz, theta_grid};
use tsynth::search::{decide, SearchConfig};
use tsynth::certify::certify_near_clifford;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(0);
    let eps = 1e-2;
    let theta = theta_grid()[which];
    let w = crz(theta);
    let cfg = SearchConfig::count(2, eps).unwrap();
    let t0 = Instant::now();
    if certify_near_clifford(&w.adjoint(), eps).is_some() {
        println!("theta {theta:.5}: m = 0  ({:?})", t0.elapsed());
        return;
    }
    for m in 1..=8 {
        let t = Instant::now();
        let out = decide(&w, m, &cfg).unwrap();
        println!(
            "theta {theta:.5} level {m}: visited {} in {:?} -> {}",
            out.visited,
            t.elapsed(),
            out.candidate.as_ref().map(|c| format!("{:?}", c.indices)).unwrap_or("no".into())
        );
        if out.candidate.is_some() {
            break;
        }
    }
    println!("total {:?}", t0.elapsed());
}
