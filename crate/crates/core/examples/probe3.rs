use tsynth::library::crz;
use tsynth::certify::certify_near_clifford;
use tsynth::search::{decide, SearchConfig};

fn main() {
    let theta = 1.26292;
    let w = crz(theta);
    for eps in [0.01, 0.02, 0.0316, 0.05, 0.1, 0.2] {
        let cfg = SearchConfig::count(2, eps).unwrap();
        if certify_near_clifford(&w.adjoint(), eps).is_some() {
            println!("eps {eps}: m = 0");
            continue;
        }
        let mut found = None;
        for m in 1..=5 {
            let out = decide(&w, m, &cfg).unwrap();
            if let Some(c) = out.candidate {
                found = Some((m, c.indices));
                break;
            }
        }
        println!("eps {eps}: {found:?}");
    }
}
