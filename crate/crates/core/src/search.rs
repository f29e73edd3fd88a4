//! Exhaustive optimal search: `decide` scans all adjacent-distinct generator
//! sequences of a fixed length, `min_resource` wraps it with the Clifford
//! pre-check and increasing lengths until a certified residual appears.
//!
//! Candidates are index tuples `(j_1, ..., j_m)` enumerated lexicographically;
//! the candidate unitary is `G_{j_1} * ... * G_{j_m}` and the residual is
//! `W^dag * G_{j_1} * ... * G_{j_m}`. Workers split the top-level index and
//! merge by lexicographic minimum, so results are identical for every thread
//! count.
//!
//! The inner loop never allocates: prefix products live in a per-worker
//! stack, `R(P) = a I + b P` applies in `O(N^2)` through the Pauli's column
//! permutation, and the amplitude scan works on a sorted scratch buffer. The
//! rare amplitude-passing leaf is re-certified through the canonical
//! [`certify`](crate::certify) path.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use num_complex::Complex64;

use crate::certify::{
    amplitude_scan, certify_near_clifford, require_epsilon_regime, TestReport,
};
use crate::error::{Error, Result};
use crate::generators::{build_vn, tcount_generators, Generator, GeneratorKind};
use crate::matrix::DenseUnitary;
use crate::pauli::enumerate_paulis;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Generators are the `4^n - 1` rotations `R(P)`; the result is the
    /// epsilon-T-count.
    Count,
    /// Generators are the depth-1 blocks `V_n`; the result is the
    /// epsilon-T-depth.
    Depth,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Count => "count",
            Mode::Depth => "depth",
        })
    }
}

/// Default sequence-length budget; level m enumerates
/// `|S| (|S| - 1)^{m-1}` candidates, which passes desk scale well before 8.
pub const DEFAULT_M_MAX: usize = 8;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub mode: Mode,
    pub epsilon: f64,
    pub m_max: usize,
    pub thread_count: usize,
    pub generators: Vec<Generator>,
}

impl SearchConfig {
    /// T-count search over `R(P)` for `n` qubits.
    pub fn count(n: usize, epsilon: f64) -> Result<Self> {
        require_epsilon_regime(epsilon)?;
        Ok(SearchConfig {
            mode: Mode::Count,
            epsilon,
            m_max: DEFAULT_M_MAX,
            thread_count: 1,
            generators: tcount_generators(n),
        })
    }

    /// T-depth search over `V_n`; supported for n in {1, 2}.
    pub fn depth(n: usize, epsilon: f64) -> Result<Self> {
        require_epsilon_regime(epsilon)?;
        Ok(SearchConfig {
            mode: Mode::Depth,
            epsilon,
            m_max: DEFAULT_M_MAX,
            thread_count: 1,
            generators: build_vn(n)?,
        })
    }

    pub fn with_m_max(mut self, m_max: usize) -> Self {
        self.m_max = m_max;
        self
    }

    /// `0` selects the machine's available parallelism.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.thread_count = threads;
        self
    }

    fn effective_threads(&self) -> usize {
        match self.thread_count {
            0 => std::thread::available_parallelism().map_or(1, |p| p.get()),
            t => t,
        }
    }

    fn qubits(&self) -> usize {
        self.generators
            .first()
            .map(|g| g.matrix.qubits())
            .unwrap_or(0)
    }
}

/// A passing candidate: generator indices (adjacent entries distinct), the
/// certified residual `W' = W^dag * product`, and its amplitude report.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub indices: Vec<usize>,
    pub residual: DenseUnitary,
    pub report: TestReport,
}

/// Result of one `decide` level: the lexicographically smallest passing
/// candidate, if any, and the number of leaf sequences evaluated (equals
/// `|S| (|S| - 1)^{m-1}` when nothing passes and no early exit kicks in).
#[derive(Debug)]
pub struct DecideOutcome {
    pub candidate: Option<Candidate>,
    pub visited: u64,
}

/// Right-multiplication kernel for one generator.
enum GenApply {
    /// `U <- U (a I + b P)`: `dest[r][c] = a src[r][c] + bvals[c] src[r][c ^ mx]`.
    Axial {
        mx: usize,
        a: Complex64,
        bvals: Vec<Complex64>,
    },
    /// Plain dense product for depth blocks.
    Dense(Vec<Complex64>),
}

impl GenApply {
    fn from_generator(g: &Generator, dim: usize) -> Self {
        match g.kind {
            GeneratorKind::RCount | GeneratorKind::RDaggerCount => {
                let f = &g.factors[0];
                let omega = Complex64::from_polar(
                    1.0,
                    if f.dagger { -1.0 } else { 1.0 } * std::f64::consts::FRAC_PI_4,
                );
                let a = (Complex64::new(1.0, 0.0) + omega) * 0.5;
                let b = (Complex64::new(1.0, 0.0) - omega) * 0.5;
                let mx = f.pauli.col_permutation_mask();
                let bvals = (0..dim).map(|c| b * f.pauli.column_value(c)).collect();
                GenApply::Axial { mx, a, bvals }
            }
            GeneratorKind::DepthBlock => GenApply::Dense(g.matrix.entries().to_vec()),
        }
    }

    fn apply(&self, src: &[Complex64], dest: &mut [Complex64], dim: usize) {
        match self {
            GenApply::Axial { mx, a, bvals } => {
                for r in 0..dim {
                    let row = &src[r * dim..(r + 1) * dim];
                    let out = &mut dest[r * dim..(r + 1) * dim];
                    for c in 0..dim {
                        out[c] = a * row[c] + bvals[c] * row[c ^ mx];
                    }
                }
            }
            GenApply::Dense(g) => {
                for r in 0..dim {
                    let row = &src[r * dim..(r + 1) * dim];
                    let out = &mut dest[r * dim..(r + 1) * dim];
                    out.fill(Complex64::new(0.0, 0.0));
                    for (k, &aik) in row.iter().enumerate() {
                        if aik.norm_sqr() == 0.0 {
                            continue;
                        }
                        let gr = &g[k * dim..(k + 1) * dim];
                        for c in 0..dim {
                            out[c] += aik * gr[c];
                        }
                    }
                }
            }
        }
    }
}

struct Walker<'a> {
    kernels: &'a [GenApply],
    /// `(mx, mz)` index-space masks per bare Pauli; the bare phase never
    /// changes a modulus.
    masks: &'a [(usize, usize)],
    n: usize,
    dim: usize,
    m: usize,
    eps: f64,
    visited: u64,
    stack: Vec<Vec<Complex64>>,
    moduli: Vec<f64>,
}

impl<'a> Walker<'a> {
    fn new(kernels: &'a [GenApply], masks: &'a [(usize, usize)], n: usize, m: usize, eps: f64) -> Self {
        let dim = 1usize << n;
        Walker {
            kernels,
            masks,
            n,
            dim,
            m,
            eps,
            visited: 0,
            stack: (0..m).map(|_| vec![Complex64::new(0.0, 0.0); dim * dim]).collect(),
            moduli: Vec::with_capacity(masks.len()),
        }
    }

    fn leaf_passes_amplitude(&mut self) -> bool {
        self.visited += 1;
        let src = &self.stack[self.m - 1];
        let dim = self.dim;
        let norm = dim as f64;
        self.moduli.clear();
        for &(mx, mz) in self.masks {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..dim {
                let v = src[c * dim + (c ^ mx)];
                if (mz & c).count_ones() & 1 == 1 {
                    acc -= v;
                } else {
                    acc += v;
                }
            }
            self.moduli.push(acc.norm() / norm);
        }
        self.moduli.sort_unstable_by(|a, b| b.total_cmp(a));
        amplitude_scan(&self.moduli, self.eps).is_some()
    }

    /// Certifies the current leaf through the canonical path and builds the
    /// candidate. Only called on amplitude-passing leaves.
    fn finish_leaf(&self, path: &[usize]) -> Option<Candidate> {
        let residual = DenseUnitary::from_raw(self.n, self.stack[self.m - 1].clone());
        let report = certify_near_clifford(&residual, self.eps)?;
        Some(Candidate {
            indices: path.to_vec(),
            residual,
            report,
        })
    }

    fn walk(&mut self, depth: usize, path: &mut Vec<usize>) -> Option<Candidate> {
        if depth == self.m {
            if self.leaf_passes_amplitude() {
                return self.finish_leaf(path);
            }
            return None;
        }
        let last = *path.last().expect("walk starts below a root");
        for j in 0..self.kernels.len() {
            if j == last {
                continue;
            }
            let (lo, hi) = self.stack.split_at_mut(depth);
            self.kernels[j].apply(&lo[depth - 1], &mut hi[0], self.dim);
            path.push(j);
            let found = self.walk(depth + 1, path);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn run_root(&mut self, wdag: &[Complex64], root: usize) -> Option<Candidate> {
        {
            let dest = &mut self.stack[0];
            self.kernels[root].apply(wdag, dest, self.dim);
        }
        let mut path = vec![root];
        if self.m == 1 {
            if self.leaf_passes_amplitude() {
                return self.finish_leaf(&path);
            }
            return None;
        }
        self.walk(1, &mut path)
    }
}

fn index_masks(n: usize) -> Vec<(usize, usize)> {
    enumerate_paulis(n, false)
        .iter()
        .map(|p| p.index_masks())
        .collect()
}

/// Decision procedure for one sequence length: enumerates every
/// adjacent-distinct index sequence of length `m` in lexicographic order,
/// certifies each residual, and returns the smallest passing candidate.
pub fn decide(w: &DenseUnitary, m: usize, cfg: &SearchConfig) -> Result<DecideOutcome> {
    assert!(m >= 1, "decide needs m >= 1; the m = 0 check lives in min_resource");
    if w.qubits() != cfg.qubits() {
        return Err(Error::DimensionMismatch {
            left: w.qubits(),
            right: cfg.qubits(),
        });
    }
    let n = w.qubits();
    let dim = 1usize << n;
    let wdag = w.adjoint();
    let wdag_entries = wdag.entries().to_vec();
    let kernels: Vec<GenApply> = cfg
        .generators
        .iter()
        .map(|g| GenApply::from_generator(g, dim))
        .collect();
    let masks = index_masks(n);
    let threads = cfg.effective_threads().min(kernels.len().max(1));

    if threads <= 1 {
        let mut walker = Walker::new(&kernels, &masks, n, m, cfg.epsilon);
        let mut found = None;
        for root in 0..kernels.len() {
            if let Some(c) = walker.run_root(&wdag_entries, root) {
                found = Some(c);
                break;
            }
        }
        return Ok(DecideOutcome { candidate: found, visited: walker.visited });
    }

    let best_root = AtomicUsize::new(usize::MAX);
    let visited = AtomicU64::new(0);
    let results: Vec<Option<Candidate>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|worker| {
                let wdag_entries = &wdag_entries;
                let kernels = &kernels;
                let masks = &masks;
                let best_root = &best_root;
                let visited = &visited;
                scope.spawn(move || {
                    let mut walker = Walker::new(kernels, masks, n, m, cfg.epsilon);
                    let mut found: Option<Candidate> = None;
                    let mut root = worker;
                    while root < kernels.len() {
                        // a passing candidate at a smaller root beats
                        // everything in this worker's remaining range
                        if best_root.load(Ordering::Relaxed) < root {
                            break;
                        }
                        if let Some(c) = walker.run_root(wdag_entries, root) {
                            best_root.fetch_min(root, Ordering::Relaxed);
                            found = Some(c);
                            break;
                        }
                        root += threads;
                    }
                    visited.fetch_add(walker.visited, Ordering::Relaxed);
                    found
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let candidate = results
        .into_iter()
        .flatten()
        .min_by(|a, b| a.indices.cmp(&b.indices));
    Ok(DecideOutcome { candidate, visited: visited.load(Ordering::Relaxed) })
}

/// The optimizer: runs the `m = 0` Clifford pre-check on `W^dag`, then
/// `decide` at m = 1, 2, ... until a witness appears. The returned
/// candidate's `indices.len()` is the epsilon-T-count (Count mode) or
/// epsilon-T-depth (Depth mode).
pub fn min_resource(w: &DenseUnitary, cfg: &SearchConfig) -> Result<Candidate> {
    require_epsilon_regime(cfg.epsilon)?;
    if w.qubits() != cfg.qubits() {
        return Err(Error::DimensionMismatch {
            left: w.qubits(),
            right: cfg.qubits(),
        });
    }
    let wdag = w.adjoint();
    if let Some(report) = certify_near_clifford(&wdag, cfg.epsilon) {
        return Ok(Candidate {
            indices: Vec::new(),
            residual: wdag,
            report,
        });
    }
    for m in 1..=cfg.m_max {
        if let Some(candidate) = decide(w, m, cfg)?.candidate {
            return Ok(candidate);
        }
    }
    Err(Error::BudgetExceeded { m_max: cfg.m_max })
}
