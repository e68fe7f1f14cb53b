//! Classical independent-set sampling: a recursive Ramsey split, exhaustive
//! clique removal built on it, and the randomized sampler that recurses into
//! non-neighborhoods, falling back to clique removal when its size thresholds
//! are not met.
//!
//! All routines work on vertex subsets of one immutable parent graph, so
//! every returned set is already expressed in the caller's vertex ids.

use rand::Rng;

use crate::graph::{Graph, VertexSet};

/// Pivot selection for the Ramsey recursion.
///
/// `Random` keeps the routine stochastic, which is its whole point as a
/// sampler; `LowestId` makes runs reproducible without an rng trace, for
/// tests and debugging.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    #[default]
    Random,
    LowestId,
}

/// The clique and independent set accumulated by one Ramsey recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyResult {
    pub clique: VertexSet,
    pub independent_set: VertexSet,
}

/// Parameters of the randomized sampler.
#[derive(Clone, Copy, Debug)]
pub struct SamplerParams {
    /// Assumed colorability of the input; controls the seed-set size
    /// `ceil(log_k n)` and the recursion threshold.
    pub k: usize,
    /// How many seed-set draws to attempt before falling back to clique
    /// removal on the whole graph. The sampler's acceptance loop has no
    /// inherent bound: on a clique no random seed pair is ever independent,
    /// so an explicit cap is what guarantees termination.
    pub max_retries: usize,
    pub pivot: PivotRule,
}

impl SamplerParams {
    pub fn new(k: usize) -> SamplerParams {
        assert!(k >= 2, "colorability parameter must be at least 2");
        SamplerParams {
            k,
            max_retries: 64,
            pivot: PivotRule::Random,
        }
    }
}

impl Default for SamplerParams {
    fn default() -> Self {
        SamplerParams::new(3)
    }
}

// ============================================================================
// Ramsey
// ============================================================================

/// Recursively splits on a pivot's neighborhood / non-neighborhood and
/// returns the larger clique of (C₁∪{v}, C₂) and the larger independent set
/// of (I₁, I₂∪{v}). The empty graph yields (∅, ∅); any nonempty graph yields
/// a nonempty clique and a nonempty independent set.
pub fn ramsey(g: &Graph, rng: &mut impl Rng) -> RamseyResult {
    ramsey_with(g, PivotRule::Random, rng)
}

pub fn ramsey_with(g: &Graph, rule: PivotRule, rng: &mut impl Rng) -> RamseyResult {
    let all: Vec<usize> = (0..g.n()).collect();
    ramsey_on(g, &all, rule, rng)
}

/// Ramsey restricted to `subset` (sorted parent-graph ids).
fn ramsey_on(g: &Graph, subset: &[usize], rule: PivotRule, rng: &mut impl Rng) -> RamseyResult {
    if subset.is_empty() {
        return RamseyResult {
            clique: VertexSet::new(),
            independent_set: VertexSet::new(),
        };
    }
    let pivot = match rule {
        PivotRule::Random => subset[rng.random_range(0..subset.len())],
        PivotRule::LowestId => subset[0],
    };
    let mut nbrs = Vec::new();
    let mut non = Vec::new();
    for &v in subset {
        if v == pivot {
            continue;
        }
        if g.has_edge(pivot, v) {
            nbrs.push(v);
        } else {
            non.push(v);
        }
    }
    let in_nbrs = ramsey_on(g, &nbrs, rule, rng);
    let in_non = ramsey_on(g, &non, rule, rng);

    let with_pivot_clique = in_nbrs.clique.union(&VertexSet::singleton(pivot));
    let with_pivot_iset = in_non.independent_set.union(&VertexSet::singleton(pivot));

    // Ties prefer the first argument: the pivot branch for cliques, the
    // pivot-free branch for independent sets.
    let clique = if with_pivot_clique.len() >= in_non.clique.len() {
        with_pivot_clique
    } else {
        in_non.clique
    };
    let independent_set = if in_nbrs.independent_set.len() >= with_pivot_iset.len() {
        in_nbrs.independent_set
    } else {
        with_pivot_iset
    };
    RamseyResult {
        clique,
        independent_set,
    }
}

// ============================================================================
// CliqueRemoval
// ============================================================================

/// Runs [`ramsey`] repeatedly, removing each returned clique, until the graph
/// is exhausted. Returns the largest independent set observed and the clique
/// sequence; the cliques are pairwise disjoint and cover every vertex.
pub fn clique_removal(g: &Graph, rng: &mut impl Rng) -> (VertexSet, Vec<VertexSet>) {
    clique_removal_with(g, PivotRule::Random, rng)
}

pub fn clique_removal_with(
    g: &Graph,
    rule: PivotRule,
    rng: &mut impl Rng,
) -> (VertexSet, Vec<VertexSet>) {
    let all: Vec<usize> = (0..g.n()).collect();
    clique_removal_on(g, &all, rule, rng)
}

fn clique_removal_on(
    g: &Graph,
    subset: &[usize],
    rule: PivotRule,
    rng: &mut impl Rng,
) -> (VertexSet, Vec<VertexSet>) {
    let mut residual = subset.to_vec();
    let mut best = VertexSet::new();
    let mut cliques = Vec::new();
    while !residual.is_empty() {
        let found = ramsey_on(g, &residual, rule, rng);
        if found.independent_set.len() > best.len() {
            best = found.independent_set;
        }
        residual.retain(|&v| !found.clique.contains(v));
        cliques.push(found.clique);
    }
    (best, cliques)
}

// ============================================================================
// SampleIS
// ============================================================================

/// Draws one independent set.
///
/// Seeds with `ceil(log_k n)` random nodes; if they are independent and their
/// non-neighborhood is large (≥ n/k · ln n / (2 ln ln n)), recurses into the
/// non-neighborhood and unions the results. Otherwise runs clique removal on
/// the non-neighborhood and accepts the combined set when it reaches
/// ln³n / (6 ln ln n). After `max_retries` failed draws, falls back to the
/// best clique-removal set of the whole graph, so the result is always a
/// nonempty independent set on nonempty input.
///
/// The size thresholds are asymptotic; below n = 3 (where ln ln n stops being
/// positive) the seed/threshold machinery is skipped entirely in favor of
/// clique removal.
pub fn sample_is(g: &Graph, params: &SamplerParams, rng: &mut impl Rng) -> VertexSet {
    let all: Vec<usize> = (0..g.n()).collect();
    sample_is_on(g, &all, params, rng)
}

fn sample_is_on(
    g: &Graph,
    subset: &[usize],
    params: &SamplerParams,
    rng: &mut impl Rng,
) -> VertexSet {
    let n = subset.len();
    if n <= 1 {
        return VertexSet::from_vec(subset.to_vec());
    }
    if n < 3 {
        return clique_removal_on(g, subset, params.pivot, rng).0;
    }
    let nf = n as f64;
    let kf = params.k as f64;
    // Guard the integer log against float noise (ln 9 / ln 3 may land a hair
    // above 2.0).
    let seed_count = ((nf.ln() / kf.ln() - 1e-9).ceil() as usize).clamp(1, n);
    let log_log_n = nf.ln().ln();
    let recurse_threshold = nf / kf * nf.ln() / (2.0 * log_log_n);
    let accept_threshold = nf.ln().powi(3) / (6.0 * log_log_n);
    if recurse_threshold <= 0.0
        || accept_threshold <= 0.0
        || !recurse_threshold.is_finite()
        || !accept_threshold.is_finite()
    {
        return clique_removal_on(g, subset, params.pivot, rng).0;
    }

    for _ in 0..params.max_retries {
        let seed = sample_distinct(subset, seed_count, rng);
        if !g.is_independent(&seed) {
            continue;
        }
        let non = non_neighborhood_within(g, subset, &seed);
        if non.len() as f64 >= recurse_threshold {
            let deeper = sample_is_on(g, non.as_slice(), params, rng);
            return seed.union(&deeper);
        }
        let (removal_set, _) = clique_removal_on(g, non.as_slice(), params.pivot, rng);
        let candidate = seed.union(&removal_set);
        if candidate.len() as f64 >= accept_threshold {
            return candidate;
        }
    }
    clique_removal_on(g, subset, params.pivot, rng).0
}

/// Draws `s` independent sets by repeated [`sample_is`] calls on an advancing
/// rng stream.
pub fn classical_sample_batch(
    g: &Graph,
    s: usize,
    params: &SamplerParams,
    rng: &mut impl Rng,
) -> Vec<VertexSet> {
    assert!(s >= 1, "sample count must be at least 1");
    (0..s).map(|_| sample_is(g, params, rng)).collect()
}

/// `count` distinct members of `subset`, uniformly, by partial Fisher-Yates.
fn sample_distinct(subset: &[usize], count: usize, rng: &mut impl Rng) -> VertexSet {
    debug_assert!(count <= subset.len());
    let mut pool = subset.to_vec();
    for i in 0..count {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(count);
    VertexSet::from_vec(pool)
}

/// Members of `subset` not in `seed` and not adjacent to any of its members.
fn non_neighborhood_within(g: &Graph, subset: &[usize], seed: &VertexSet) -> VertexSet {
    VertexSet::from_vec(
        subset
            .iter()
            .copied()
            .filter(|&v| !seed.contains(v) && !seed.iter().any(|u| g.has_edge(u, v)))
            .collect(),
    )
}

// ============================================================================
// Tests
// ============================================================================
