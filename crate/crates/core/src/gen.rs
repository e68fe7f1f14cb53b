//! Generation of the benchmark test set: Erdős–Rényi-style graphs with a
//! planted proper coloring, at the edge density where k-colorability flips
//! and instances are empirically hardest (c = m/n ≈ 4.5 for k = 3).
//!
//! Planting scheme: every vertex draws a class uniformly from
//! `0..k_induced`, and each cross-class pair receives an edge independently
//! with probability `p' = c·n / #cross-class-pairs` (clamped to 1), so that
//! the expected edge count is `c·n`: the density parameter is preserved even
//! though in-class edges are forbidden. In-class pairs never receive edges,
//! which is what guarantees the planted coloring stays proper.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

use crate::color::Coloring;
use crate::graph::Graph;

/// How many times to re-draw a class assignment that produced no cross-class
/// pair (only possible when all vertices land in one class).
const CLASS_REROLL_LIMIT: usize = 64;

// ============================================================================
// Errors
// ============================================================================

#[derive(Clone, Debug, PartialEq)]
pub enum GenError {
    /// Edge probability is undefined on an empty graph.
    ZeroVertices,
    /// Need `n >= k_induced >= 2`.
    BadParameters { n: usize, k_induced: usize },
    /// Class rerolls exhausted without a cross-class pair.
    NoCrossClassPairs { attempts: usize },
    /// Bipartite-rejection retries exhausted.
    RejectionExhausted { attempts: usize },
    /// The test-set size list was empty.
    EmptySizes,
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::ZeroVertices => write!(f, "edge probability needs at least one vertex"),
            GenError::BadParameters { n, k_induced } => {
                write!(
                    f,
                    "need n >= k_induced >= 2, got n={n}, k_induced={k_induced}"
                )
            }
            GenError::NoCrossClassPairs { attempts } => {
                write!(f, "no cross-class pair after {attempts} class draws")
            }
            GenError::RejectionExhausted { attempts } => {
                write!(f, "bipartite rejection exhausted after {attempts} attempts")
            }
            GenError::EmptySizes => write!(f, "test set needs at least one graph size"),
        }
    }
}

impl std::error::Error for GenError {}

// ============================================================================
// Types
// ============================================================================

/// One generated benchmark instance.
#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub graph: Graph,
    /// Proper coloring built into the instance; uses at most `k_induced`
    /// colors.
    pub planted_coloring: Coloring,
    pub n: usize,
    /// Edge-density parameter c = m/n (expected, dimensionless).
    pub c: f64,
    pub k_induced: usize,
    pub seed: u64,
    pub instance_id: String,
}

/// Generation knobs beyond the core parameters. Defaults match the benchmark
/// methodology; the flags exist for sensitivity checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct GenOptions {
    /// Assign classes as a balanced partition (round-robin over a shuffle)
    /// instead of independent uniform draws.
    pub balanced_classes: bool,
    /// Reject bipartite outcomes and redraw, for strict χ = 3 sets. Off by
    /// default: success is defined as "k colors or better", so χ < 3
    /// instances cannot create false failures.
    pub reject_bipartite: bool,
}

/// A full test set plus the parameters that reproduce it.
#[derive(Clone, Debug)]
pub struct InstanceSet {
    pub instances: Vec<PlantedInstance>,
    pub sizes: Vec<usize>,
    pub per_size: usize,
    pub k_induced: usize,
    pub c: f64,
    pub master_seed: u64,
}

// ============================================================================
// Seed derivation
// ============================================================================

/// SplitMix64 mixing step. Used for all seed derivation in this crate so any
/// implementation can reproduce a test set from its master seed.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// FNV-1a over a byte string, for folding identifiers into seeds.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Per-instance seed: `splitmix(splitmix(splitmix(master) ^ size) ^ index)`.
pub fn derive_instance_seed(master_seed: u64, size: usize, index: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master_seed) ^ size as u64) ^ index as u64)
}

// ============================================================================
// Operations
// ============================================================================

/// The plain Erdős–Rényi edge probability for density `c`: `c/n`, clamped
/// to [0, 1].
pub fn edge_probability(n: usize, c: f64) -> Result<f64, GenError> {
    if n == 0 {
        return Err(GenError::ZeroVertices);
    }
    Ok((c / n as f64).clamp(0.0, 1.0))
}

/// Generates one planted instance; deterministic given the seed.
pub fn generate_planted(
    n: usize,
    k_induced: usize,
    c: f64,
    seed: u64,
) -> Result<PlantedInstance, GenError> {
    generate_planted_with(n, k_induced, c, seed, &GenOptions::default())
}

pub fn generate_planted_with(
    n: usize,
    k_induced: usize,
    c: f64,
    seed: u64,
    options: &GenOptions,
) -> Result<PlantedInstance, GenError> {
    if k_induced < 2 || n < k_induced {
        return Err(GenError::BadParameters { n, k_induced });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        let instance = plant_once(n, k_induced, c, seed, &mut rng, options)?;
        if options.reject_bipartite && instance.graph.is_bipartite() {
            if attempts >= CLASS_REROLL_LIMIT {
                return Err(GenError::RejectionExhausted { attempts });
            }
            continue;
        }
        return Ok(instance);
    }
}

fn plant_once(
    n: usize,
    k_induced: usize,
    c: f64,
    seed: u64,
    rng: &mut ChaCha8Rng,
    options: &GenOptions,
) -> Result<PlantedInstance, GenError> {
    // Draw classes until at least one cross-class pair exists.
    let mut classes;
    let mut cross_pairs;
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        classes = if options.balanced_classes {
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.random_range(0..=i);
                order.swap(i, j);
            }
            let mut assignment = vec![0usize; n];
            for (pos, &v) in order.iter().enumerate() {
                assignment[v] = pos % k_induced;
            }
            assignment
        } else {
            (0..n).map(|_| rng.random_range(0..k_induced)).collect()
        };
        cross_pairs = 0u64;
        for u in 0..n {
            for v in (u + 1)..n {
                if classes[u] != classes[v] {
                    cross_pairs += 1;
                }
            }
        }
        if cross_pairs > 0 {
            break;
        }
        if attempts >= CLASS_REROLL_LIMIT {
            return Err(GenError::NoCrossClassPairs { attempts });
        }
    }

    // Inflate the cross-pair probability so E[m] = c·n despite the forbidden
    // in-class pairs.
    let p_cross = ((c * n as f64) / cross_pairs as f64).clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if classes[u] != classes[v] && rng.random_bool(p_cross) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("generated edges are valid by construction");
    let planted_coloring = Coloring::compacted(&classes);
    debug_assert!(planted_coloring.is_proper(&graph).unwrap());
    Ok(PlantedInstance {
        instance_id: format_instance_id(n, k_induced, c, 0),
        graph,
        planted_coloring,
        n,
        c,
        k_induced,
        seed,
    })
}

fn format_instance_id(n: usize, k_induced: usize, c: f64, index: usize) -> String {
    format!("n{n:03}_k{k_induced}_c{c}_i{index:02}")
}

/// Generates `per_size` instances for every size, with per-instance seeds
/// derived deterministically from the master seed.
pub fn generate_test_set(
    sizes: &[usize],
    per_size: usize,
    k_induced: usize,
    c: f64,
    master_seed: u64,
) -> Result<InstanceSet, GenError> {
    generate_test_set_with(
        sizes,
        per_size,
        k_induced,
        c,
        master_seed,
        &GenOptions::default(),
    )
}

pub fn generate_test_set_with(
    sizes: &[usize],
    per_size: usize,
    k_induced: usize,
    c: f64,
    master_seed: u64,
    options: &GenOptions,
) -> Result<InstanceSet, GenError> {
    if sizes.is_empty() {
        return Err(GenError::EmptySizes);
    }
    let mut instances = Vec::with_capacity(sizes.len() * per_size);
    for &n in sizes {
        for index in 0..per_size {
            let seed = derive_instance_seed(master_seed, n, index);
            let mut instance = generate_planted_with(n, k_induced, c, seed, options)?;
            instance.instance_id = format_instance_id(n, k_induced, c, index);
            instances.push(instance);
        }
    }
    Ok(InstanceSet {
        instances,
        sizes: sizes.to_vec(),
        per_size,
        k_induced,
        c,
        master_seed,
    })
}

// ============================================================================
// Tests
// ============================================================================
