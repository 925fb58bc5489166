//! Seeded builders for the random and block-structured instances used by
//! lemma checks, pair experiments, and the CLI. All randomness flows from
//! the explicit seed (ChaCha8), so instances are bit-reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_prob(p: f64) -> Result<(), InstanceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(InstanceError::BadProbability(p));
    }
    Ok(())
}

/// Erdos-Renyi graph: every pair becomes an edge independently with the
/// given probability.
pub fn random_graph(n: usize, density: f64, seed: u64) -> Result<Graph, InstanceError> {
    check_prob(density)?;
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(density) {
                g.set_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Bipartite instance: edges between the two sides independently with the
/// given probability, no edges inside a side.
pub fn random_bipartite(
    a_size: usize,
    b_size: usize,
    density: f64,
    seed: u64,
) -> Result<(Graph, VertexSet, VertexSet), InstanceError> {
    check_prob(density)?;
    let n = a_size + b_size;
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..a_size {
        for v in a_size..n {
            if rng.gen_bool(density) {
                g.set_edge(u, v);
            }
        }
    }
    let a = VertexSet::from_range(n, 0, a_size as u32)?;
    let b = VertexSet::from_range(n, a_size as u32, n as u32)?;
    Ok((g, a, b))
}

/// Tripartite instance `(A1, A2, B)`: edges `A1-B` with probability `d1`,
/// `A2-B` with probability `d2`, nothing else.
pub fn random_tripartite(
    a1_size: usize,
    a2_size: usize,
    b_size: usize,
    d1: f64,
    d2: f64,
    seed: u64,
) -> Result<(Graph, VertexSet, VertexSet, VertexSet), InstanceError> {
    check_prob(d1)?;
    check_prob(d2)?;
    let n = a1_size + a2_size + b_size;
    let b_start = a1_size + a2_size;
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..a1_size {
        for v in b_start..n {
            if rng.gen_bool(d1) {
                g.set_edge(u, v);
            }
        }
    }
    for u in a1_size..b_start {
        for v in b_start..n {
            if rng.gen_bool(d2) {
                g.set_edge(u, v);
            }
        }
    }
    let a1 = VertexSet::from_range(n, 0, a1_size as u32)?;
    let a2 = VertexSet::from_range(n, a1_size as u32, b_start as u32)?;
    let b = VertexSet::from_range(n, b_start as u32, n as u32)?;
    Ok((g, a1, a2, b))
}

/// A center class `A` plus `p` blocks `B1..Bp`, all of size `t`; each pair
/// `(A, Bi)` gets an edge probability drawn from `{0.3, 0.7}`.
pub struct CenterBlocksInstance {
    pub graph: Graph,
    pub center: VertexSet,
    pub blocks: Vec<VertexSet>,
    pub densities: Vec<f64>,
}

pub fn random_center_blocks(
    t: usize,
    p: usize,
    seed: u64,
) -> Result<CenterBlocksInstance, InstanceError> {
    let n = t * (p + 1);
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut densities = Vec::with_capacity(p);
    for i in 0..p {
        let d = if rng.gen_bool(0.5) { 0.7 } else { 0.3 };
        densities.push(d);
        let start = t * (i + 1);
        for u in 0..t {
            for v in start..start + t {
                if rng.gen_bool(d) {
                    g.set_edge(u, v);
                }
            }
        }
    }
    let center = VertexSet::from_range(n, 0, t as u32)?;
    let blocks = (0..p)
        .map(|i| VertexSet::from_range(n, (t * (i + 1)) as u32, (t * (i + 2)) as u32))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CenterBlocksInstance { graph: g, center, blocks, densities })
}

/// Two center classes `A1, A2` plus `p` blocks, all of size `t`; each pair
/// `(A1, Bi)` and `(A2, Bi)` gets an edge probability drawn from `{0.3, 0.7}`.
pub struct TwinBlocksInstance {
    pub graph: Graph,
    pub a1: VertexSet,
    pub a2: VertexSet,
    pub blocks: Vec<VertexSet>,
    pub densities: Vec<(f64, f64)>,
}

pub fn random_twin_blocks(
    t: usize,
    p: usize,
    seed: u64,
) -> Result<TwinBlocksInstance, InstanceError> {
    let n = t * (p + 2);
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut densities = Vec::with_capacity(p);
    for i in 0..p {
        let d1 = if rng.gen_bool(0.5) { 0.7 } else { 0.3 };
        let d2 = if rng.gen_bool(0.5) { 0.7 } else { 0.3 };
        densities.push((d1, d2));
        let start = t * (i + 2);
        for u in 0..t {
            for v in start..start + t {
                if rng.gen_bool(d1) {
                    g.set_edge(u, v);
                }
            }
        }
        for u in t..2 * t {
            for v in start..start + t {
                if rng.gen_bool(d2) {
                    g.set_edge(u, v);
                }
            }
        }
    }
    let a1 = VertexSet::from_range(n, 0, t as u32)?;
    let a2 = VertexSet::from_range(n, t as u32, (2 * t) as u32)?;
    let blocks = (0..p)
        .map(|i| VertexSet::from_range(n, (t * (i + 2)) as u32, (t * (i + 3)) as u32))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TwinBlocksInstance { graph: g, a1, a2, blocks, densities })
}

/// The canonical non-uniform pair: `A = A1 u A2`, `B = B1 u B2`, complete
/// between `A1` and `B1` (the first halves), empty elsewhere. Pair density
/// is 1/4 when the halves are equal, while `(A1, B1)` has density 1.
pub fn two_block_pair(a_half: usize, b_half: usize) -> (Graph, VertexSet, VertexSet) {
    let a_size = 2 * a_half;
    let n = a_size + 2 * b_half;
    let mut g = Graph::empty(n).expect("valid order");
    for u in 0..a_half {
        for v in a_size..a_size + b_half {
            g.set_edge(u, v);
        }
    }
    let a = VertexSet::from_range(n, 0, a_size as u32).expect("range");
    let b = VertexSet::from_range(n, a_size as u32, n as u32).expect("range");
    (g, a, b)
}

/// Seeded block-structured pair: both sides split at a random point, each
/// of the four blocks wired with a density drawn from a spread of levels.
/// Most draws are far from uniform, which is what witness re-validation
/// tests want to exercise.
pub fn random_block_pair(
    a_size: usize,
    b_size: usize,
    seed: u64,
) -> (Graph, VertexSet, VertexSet) {
    const LEVELS: [f64; 5] = [0.0, 0.15, 0.5, 0.85, 1.0];
    let n = a_size + b_size;
    let mut g = Graph::empty(n).expect("valid order");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a_split = rng.gen_range(a_size / 4..=3 * a_size / 4);
    let b_split = rng.gen_range(b_size / 4..=3 * b_size / 4);
    let d: [f64; 4] = std::array::from_fn(|_| LEVELS[rng.gen_range(0..LEVELS.len())]);
    for u in 0..a_size {
        for v in 0..b_size {
            let block = (u >= a_split) as usize * 2 + (v >= b_split) as usize;
            if rng.gen_bool(d[block]) {
                g.set_edge(u, a_size + v);
            }
        }
    }
    let a = VertexSet::from_range(n, 0, a_size as u32).expect("range");
    let b = VertexSet::from_range(n, a_size as u32, n as u32).expect("range");
    (g, a, b)
}

/// A seeded family of 2-subsets of `a`: each unordered pair independently
/// with probability `prob`, returned in ascending order.
pub fn random_pair_family(a: &VertexSet, prob: f64, seed: u64) -> Vec<(u32, u32)> {
    let members = a.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            if rng.gen_bool(prob) {
                out.push((members[i], members[j]));
            }
        }
    }
    out
}

/// A seeded subset of the ordered pairs `a1 x a2`, each kept with
/// probability `prob`.
pub fn random_cross_pairs(a1: &VertexSet, a2: &VertexSet, prob: f64, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for u in a1.iter() {
        for v in a2.iter() {
            if rng.gen_bool(prob) {
                out.push((u, v));
            }
        }
    }
    out
}
