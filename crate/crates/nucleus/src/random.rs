//! Seeded Erdős–Rényi graphs.

use nucleus_core::Graph;
use rand::Rng;

/// G(n, p): every pair is an edge independently with probability `p`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for w in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, w));
            }
        }
    }
    Graph::from_edges(n, edges).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_and_extreme_probabilities() {
        let a = gnp(30, 0.3, &mut ChaCha8Rng::seed_from_u64(5));
        let b = gnp(30, 0.3, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
        assert_eq!(gnp(10, 0.0, &mut ChaCha8Rng::seed_from_u64(1)).edge_count(), 0);
        assert_eq!(gnp(10, 1.0, &mut ChaCha8Rng::seed_from_u64(1)).edge_count(), 45);
    }
}
