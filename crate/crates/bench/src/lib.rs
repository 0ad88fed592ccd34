//! Seeded instance generators shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcaug_core::augmentation::unrestricted_candidates;
use tcaug_core::{AugmentationProblem, BinaryMatrix, PairDemands, Requirement, TemporalEdge, TemporalGraph};

/// Each temporal edge `{u,v}@t` is present with probability `p`.
pub fn random_graph(n: usize, lifespan: u32, p: f64, seed: u64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::new();
    for t in 1..=lifespan {
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    triples.push((u, v, t));
                }
            }
        }
    }
    TemporalGraph::from_triples(n, triples)
        .and_then(|g| g.with_lifespan(lifespan))
        .expect("generated edges are valid")
}

/// Pair-demand instance with `cands` candidates drawn from the missing
/// temporal edges and `pairs` distinct demanded pairs.
pub fn pair_demand_instance(n: usize, lifespan: u32, cands: usize, pairs: usize, seed: u64) -> AugmentationProblem {
    let base = random_graph(n, lifespan, 1.0 / n as f64, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut missing = unrestricted_candidates(&base);
    let mut chosen: Vec<TemporalEdge> = Vec::new();
    while chosen.len() < cands && !missing.is_empty() {
        chosen.push(missing.swap_remove(rng.gen_range(0..missing.len())));
    }
    let mut demanded = Vec::new();
    while demanded.len() < pairs.min(n * (n - 1)) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && !demanded.contains(&(a, b)) {
            demanded.push((a, b));
        }
    }
    let req = Requirement::Pairs(PairDemands::all(demanded).expect("pairs are distinct"));
    AugmentationProblem::new(base, chosen, req).expect("candidates are new")
}

/// `rows x cols` matrix with ones at the given density, patched so that
/// no row or column is all zeros.
pub fn octo_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> BinaryMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_bool(density)).collect()).collect();
    for row in b.iter_mut() {
        if !row.contains(&true) {
            row[rng.gen_range(0..cols)] = true;
        }
    }
    for j in 0..cols {
        if !b.iter().any(|row| row[j]) {
            b[rng.gen_range(0..rows)][j] = true;
        }
    }
    BinaryMatrix::from_rows(b).expect("nonempty rectangular matrix")
}
