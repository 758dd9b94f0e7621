//! Random graph helpers shared by the acceptance runner.

use gamma_cone::rng::XorShift64;
use gamma_cone::Graph;

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(rng: &mut XorShift64, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// `G(n, p)` resampled until connected, with `p` drawn from `[0.3, 0.8)`.
pub fn random_connected(rng: &mut XorShift64, n: usize) -> Graph {
    loop {
        let p = rng.uniform(0.3, 0.8);
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Nonempty random subset of `0..n`.
pub fn random_subset(rng: &mut XorShift64, n: usize) -> Vec<usize> {
    let mut set: Vec<usize> = (0..n).filter(|_| rng.bernoulli(0.5)).collect();
    if set.is_empty() {
        set.push(rng.below(n));
    }
    set
}
