//! Oracles and generators shared by the integration suites. Everything
//! here recomputes results from first principles, independent of the
//! library's enumeration and search paths.

// each suite uses its own subset of the helpers
#![allow(dead_code)]

use ekr_core::family::{MatchingParams, VertexSet};
use ekr_core::search::IntersectionGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every valid parameter triple with `n <= max_n`, in `(n, p, s)` order.
pub fn valid_params(max_n: usize) -> Vec<MatchingParams> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for p in 0..=n {
            for s in 0..=n - p {
                if let Ok(params) = MatchingParams::new(n, p, s) {
                    out.push(params);
                }
            }
        }
    }
    out
}

/// Brute-force family enumeration: filter every subset of the `2n`
/// vertices by size and profile. Independent of the constructive path.
pub fn filter_enumerate(params: MatchingParams) -> Vec<u64> {
    let width = params.vertex_count();
    assert!(width <= 20, "filter oracle is exponential in 2n");
    (0u64..1 << width)
        .filter(|bits| bits.count_ones() as usize == params.member_size())
        .filter(|&bits| {
            let set = VertexSet::from_bits(bits, params.n()).unwrap();
            set.classify(params.n()) == (params.p(), params.s())
        })
        .collect()
}

/// Erdős–Rényi graph with the given order and edge density.
pub fn random_graph(order: usize, density: f64, seed: u64) -> IntersectionGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..order {
        for v in u + 1..order {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    IntersectionGraph::from_edges(order, &edges)
}
