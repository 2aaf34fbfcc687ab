//! Seeded random graphs.
//!
//! All randomness in the crate comes from [`GraphRng`], which is ChaCha8
//! (`rand_chacha::ChaCha8Rng`) seeded through `SeedableRng::seed_from_u64`.
//! Both the stream cipher and the seed expansion are specified by their
//! crates independently of platform, so a seed names the same graph
//! everywhere (up to `f64::ln` rounding in the skip computation below).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::Graph;

pub type GraphRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> GraphRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a `(n, trial)` key into an independent job seed
/// using the splitmix64 finalizer.
pub fn derive_seed(seed: u64, n: u64, trial: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(mix(seed) ^ n) ^ trial)
}

/// `G(n, p)`: every pair is an edge independently with probability `p`.
///
/// Uses geometric skipping over the pairs `(w, v)`, `w < v`, in order of
/// `v` then `w` (Batagelj and Brandes), so the cost is `O(n + m)`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} is outside [0, 1]")));
    }
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = seeded_rng(seed);
    let log_q = (1.0 - p).ln();
    let n = n as i64;
    let mut edges = Vec::new();
    let (mut v, mut w) = (1i64, -1i64);
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor() as i64;
        w = w.saturating_add(1).saturating_add(skip);
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v as usize));
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(n as usize, edges))
}

/// A uniformly random labeled connected graph on `n` vertices, by rejection
/// from `G(n, 1/2)`.
pub fn random_connected(n: usize, seed: u64) -> Graph {
    let mut attempt = 0u64;
    loop {
        let g = erdos_renyi(n, 0.5, derive_seed(seed, n as u64, attempt)).expect("p = 1/2 is valid");
        if g.is_connected() {
            return g;
        }
        attempt += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        assert_eq!(erdos_renyi(5, 0.0, 17).unwrap(), Graph::empty(5));
        assert_eq!(erdos_renyi(5, 1.0, 17).unwrap(), Graph::complete(5));
        assert!(erdos_renyi(5, 1.5, 0).is_err());
        assert!(erdos_renyi(5, -0.1, 0).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let a = erdos_renyi(100, 0.5, 42).unwrap();
        let b = erdos_renyi(100, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, erdos_renyi(100, 0.5, 43).unwrap());
    }

    #[test]
    fn edge_count_mean_within_five_sigma() {
        let (n, p, trials) = (50usize, 0.3, 1000u64);
        let pairs = (n * (n - 1) / 2) as f64;
        let total: usize = (0..trials).map(|t| erdos_renyi(n, p, derive_seed(7, n as u64, t)).unwrap().num_edges()).sum();
        let mean = total as f64 / trials as f64;
        let sd_of_mean = (pairs * p * (1.0 - p) / trials as f64).sqrt();
        assert!((mean - p * pairs).abs() < 5.0 * sd_of_mean, "mean {mean}");
    }

    #[test]
    fn pairs_are_hit_uniformly() {
        // each of the 10 pairs of K5 should appear about p * trials times
        let (n, p, trials) = (5usize, 0.2, 4000u64);
        let mut hits = [[0u32; 5]; 5];
        for t in 0..trials {
            for &(u, v) in erdos_renyi(n, p, derive_seed(1, 5, t)).unwrap().edges() {
                hits[u][v] += 1;
            }
        }
        let expect = p * trials as f64;
        let sd = (trials as f64 * p * (1.0 - p)).sqrt();
        for u in 0..n {
            for v in u + 1..n {
                assert!((hits[u][v] as f64 - expect).abs() < 5.0 * sd, "pair ({u},{v}) hit {}", hits[u][v]);
            }
        }
    }

    #[test]
    fn random_connected_is_connected_and_reproducible() {
        for s in 0..20 {
            let g = random_connected(7, s);
            assert!(g.is_connected());
            assert_eq!(g, random_connected(7, s));
        }
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(42, 1000, 0), derive_seed(42, 1000, 1));
        assert_ne!(derive_seed(42, 1000, 0), derive_seed(42, 10_000, 0));
        assert_eq!(derive_seed(42, 1000, 3), derive_seed(42, 1000, 3));
    }
}
