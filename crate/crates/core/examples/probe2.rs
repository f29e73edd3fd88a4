use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsynth::certify::{amplitude_test, certify_near_clifford, conjugation_test};
use tsynth::generators::tcount_generators;
use tsynth::matrix::{distance, DenseUnitary};
use tsynth::pauli::enumerate_paulis;
use tsynth::search::{decide, SearchConfig};
use num_complex::Complex64;

fn pauli_rotation(p: &tsynth::pauli::PauliOp, theta: f64) -> DenseUnitary {
    let n = p.qubits();
    let dim = 1usize << n;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mx = p.col_permutation_mask();
    let isin = Complex64::new(0.0, theta.sin());
    for c in 0..dim {
        data[c * dim + c] += Complex64::new(theta.cos(), 0.0);
        data[(c ^ mx) * dim + c] += isin * p.column_value(c);
    }
    DenseUnitary::new(n, data).unwrap()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let eps = 1e-2;
    let gens = tcount_generators(2);
    let paulis = enumerate_paulis(2, false);
    // planted approximate instance: U = G_a G_b G_c, W = U * E
    for trial in 0..5 {
        let (a, b, c) = (rng.gen_range(0..15), rng.gen_range(0..15), rng.gen_range(0..15));
        if a == b || b == c { continue; }
        let u = gens[a].matrix.mul(&gens[b].matrix).mul(&gens[c].matrix);
        let mut e = DenseUnitary::identity(2);
        for _ in 0..2 {
            let p = &paulis[rng.gen_range(1..16)];
            e = e.mul(&pauli_rotation(p, rng.gen_range(-0.005..0.005)));
        }
        let de = distance(&e, &DenseUnitary::identity(2)).unwrap();
        let w = u.mul(&e);
        // the true residual for the planted witness
        let wp = w.adjoint().mul(&u);
        let amp = amplitude_test(&wp, eps);
        let conj = amp.as_ref().map(|r| conjugation_test(&wp, eps, r));
        println!("trial {trial}: d(E,I) = {de:.5}, amplitude pass = {}, conjugation = {conj:?}",
                 amp.is_some());
        let cfg = SearchConfig::count(2, eps).unwrap();
        let out = decide(&w, 3, &cfg).unwrap();
        println!("          decide(3) -> {:?} (visited {})",
                 out.candidate.as_ref().map(|c| c.indices.clone()), out.visited);
    }
    // residual certification exactly as in the failing sweep point:
    let w = tsynth::library::crz(1.26292);
    println!("crz residual certify at m=0: {:?}", certify_near_clifford(&w.adjoint(), eps).map(|r| r.m_support));
}
