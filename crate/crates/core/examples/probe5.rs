use tsynth::library::{crz, theta_grid};
use tsynth::search::{decide, SearchConfig};

fn main() {
    let eps = 0.1f64; // d <= sqrt(1e-2)
    let cfg = SearchConfig::count(2, eps).unwrap();
    for idx in [2usize, 8, 12, 18] {
        let theta = theta_grid()[idx];
        let w = crz(theta);
        let mut res = None;
        for m in 7..=7 {
            let t = std::time::Instant::now();
            let out = decide(&w, m, &cfg).unwrap();
            println!("idx {idx} theta {theta:.4} m {m}: {:?} ({:?})",
                out.candidate.as_ref().map(|c| c.indices.clone()), t.elapsed());
            if out.candidate.is_some() { res = Some(m); break; }
        }
        println!("idx {idx}: min m (<=7) = {res:?}");
    }
}
