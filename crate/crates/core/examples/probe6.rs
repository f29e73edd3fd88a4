use tsynth::certify::certify_near_clifford;
use tsynth::library::{qft, QftConvention};
use tsynth::search::{decide, SearchConfig};

fn main() {
    let q3 = qft(3, QftConvention::Swap).unwrap();
    let q3ns = qft(3, QftConvention::NoSwap).unwrap();
    println!("-- m = 0 certification of QFT3 (both conventions) over eps grid --");
    for eps in [0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.3249] {
        let a = certify_near_clifford(&q3.adjoint(), eps).map(|r| r.m_support);
        let b = certify_near_clifford(&q3ns.adjoint(), eps).map(|r| r.m_support);
        println!("eps {eps}: swap {a:?}  noswap {b:?}");
    }
    println!("-- decide(QFT3, m, eps) small m --");
    for eps in [0.01f64, 0.0316, 0.05, 0.1] {
        let cfg = SearchConfig::count(3, eps).unwrap();
        for m in 1..=3 {
            let t = std::time::Instant::now();
            let out = decide(&q3, m, &cfg).unwrap();
            println!(
                "eps {eps} m {m}: {:?} (visited {}, {:?})",
                out.candidate.as_ref().map(|c| c.indices.clone()),
                out.visited,
                t.elapsed()
            );
            if out.candidate.is_some() {
                break;
            }
        }
    }
}
