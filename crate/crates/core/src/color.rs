//! The greedy coloring driver, parameterized over an independent-set sampler,
//! plus an exact chromatic-number oracle for ground truth.
//!
//! One iteration of the driver: draw `s` candidate sets from the sampler on
//! the residual graph, keep only valid nonempty independent sets, pick
//! uniformly among the largest, assign them the next color and peel them off.
//! Rounds yielding no usable candidate are counted (`r_a`) and retried up to
//! a cap, after which a single residual vertex is colored so the run always
//! terminates with a proper, total coloring at the price of a worse color
//! count, which is the natural failure signature.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::anneal::{self, Backend, RandomBackend, SaBackend, SaSchedule, TimingConstants};
use crate::classical::{classical_sample_batch, SamplerParams};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::qubo::mis_qubo;

/// Exact chromatic-number search refuses graphs larger than this.
pub const CHROMATIC_VERTEX_CAP: usize = 30;

// ============================================================================
// Errors
// ============================================================================

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorError {
    /// Assignment is not a dense total coloring.
    NotDense { missing_color: usize },
    /// The exact search refuses graphs above its vertex cap.
    SizeCapExceeded { n: usize, cap: usize },
}

impl fmt::Display for ColorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorError::NotDense { missing_color } => {
                write!(f, "coloring skips color index {missing_color}")
            }
            ColorError::SizeCapExceeded { n, cap } => {
                write!(f, "graph has {n} vertices, exact search is capped at {cap}")
            }
        }
    }
}

impl std::error::Error for ColorError {}

// ============================================================================
// Coloring
// ============================================================================

/// A total vertex coloring with dense color indices `0..num_colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    /// Validates that every color in `0..=max` is actually used.
    pub fn from_assignment(assignment: Vec<usize>) -> Result<Coloring, ColorError> {
        let num_colors = assignment.iter().max().map_or(0, |&m| m + 1);
        let mut used = vec![false; num_colors];
        for &c in &assignment {
            used[c] = true;
        }
        if let Some(missing_color) = used.iter().position(|&u| !u) {
            return Err(ColorError::NotDense { missing_color });
        }
        Ok(Coloring {
            assignment,
            num_colors,
        })
    }

    /// Re-labels an arbitrary assignment into dense indices, in order of
    /// first appearance. The partition into classes is unchanged.
    pub fn compacted(raw: &[usize]) -> Coloring {
        let mut remap: Vec<(usize, usize)> = Vec::new();
        let mut assignment = Vec::with_capacity(raw.len());
        for &c in raw {
            let dense = match remap.iter().find(|&&(orig, _)| orig == c) {
                Some(&(_, d)) => d,
                None => {
                    let d = remap.len();
                    remap.push((c, d));
                    d
                }
            };
            assignment.push(dense);
        }
        Coloring {
            assignment,
            num_colors: remap.len(),
        }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn color_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Vertices of each color class, indexed by color.
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut classes = vec![Vec::new(); self.num_colors];
        for (v, &c) in self.assignment.iter().enumerate() {
            classes[c].push(v);
        }
        classes.into_iter().map(VertexSet::from_vec).collect()
    }

    pub fn is_proper(&self, g: &Graph) -> Result<bool, GraphError> {
        g.is_proper_coloring(&self.assignment)
    }
}

// ============================================================================
// Samplers
// ============================================================================

/// What one sampler call returned for the residual graph.
pub struct SamplerOutput {
    /// Candidate sets in the residual graph's local ids. May contain
    /// duplicates, empty sets, or (from a misbehaving backend) sets that are
    /// not independent; the driver re-validates everything.
    pub sets: Vec<VertexSet>,
    /// Modeled sampling time of this batch (hybrid samplers only).
    pub modeled_sampling_us: Option<f64>,
    /// Real compute time spent emulating hardware; excluded from the
    /// driver's classical stopwatch.
    pub stand_in_compute: Duration,
}

/// An independent-set sampler callable on any induced subgraph. Samplers only
/// ever see residual-local vertex ids; the driver maps results back.
pub trait IsSampler: Send + Sync {
    fn kind(&self) -> &'static str;
    fn sample_sets(&self, g: &Graph, s: usize, rng: &mut ChaCha8Rng) -> SamplerOutput;
    /// One-time modeled programming overhead per run; `Some` marks the
    /// sampler as hybrid.
    fn modeled_program_us(&self) -> Option<f64> {
        None
    }
}

/// The classical Ramsey / clique-removal sampler.
#[derive(Clone, Debug, Default)]
pub struct ClassicalSampler {
    pub params: SamplerParams,
}

impl IsSampler for ClassicalSampler {
    fn kind(&self) -> &'static str {
        "classical"
    }

    fn sample_sets(&self, g: &Graph, s: usize, rng: &mut ChaCha8Rng) -> SamplerOutput {
        SamplerOutput {
            sets: classical_sample_batch(g, s, &self.params, rng),
            modeled_sampling_us: None,
            stand_in_compute: Duration::ZERO,
        }
    }
}

/// QUBO sampler: builds the MIS objective for the residual graph, asks an
/// annealing backend for `s` reads, and decodes them into independent sets.
pub struct QuboAnnealSampler {
    kind: &'static str,
    alpha: f64,
    backend: Box<dyn Backend>,
}

impl QuboAnnealSampler {
    /// Simulated-annealing backend (the default hybrid configuration).
    pub fn sa(alpha: f64, schedule: SaSchedule, timing: TimingConstants) -> QuboAnnealSampler {
        assert!(alpha >= 2.0, "MIS penalty weight must be at least 2");
        QuboAnnealSampler {
            kind: "qubo",
            alpha,
            backend: Box::new(SaBackend { schedule, timing }),
        }
    }

    /// Uniform-random backend, for adversarial contract tests.
    pub fn random(alpha: f64, timing: TimingConstants) -> QuboAnnealSampler {
        assert!(alpha >= 2.0, "MIS penalty weight must be at least 2");
        QuboAnnealSampler {
            kind: "random",
            alpha,
            backend: Box::new(RandomBackend { timing }),
        }
    }

    /// Any other backend honoring the contract.
    pub fn with_backend(alpha: f64, backend: Box<dyn Backend>) -> QuboAnnealSampler {
        assert!(alpha >= 2.0, "MIS penalty weight must be at least 2");
        QuboAnnealSampler {
            kind: "qubo",
            alpha,
            backend,
        }
    }
}

impl IsSampler for QuboAnnealSampler {
    fn kind(&self) -> &'static str {
        self.kind
    }

    fn sample_sets(&self, g: &Graph, s: usize, rng: &mut ChaCha8Rng) -> SamplerOutput {
        let q = mis_qubo(g, self.alpha).expect("penalty validated at construction");
        let batch = anneal::sample(self.backend.as_ref(), &q, s, rng);
        let (sets, _invalid) =
            anneal::decode_independent_sets(g, &batch).expect("reads sized to the residual graph");
        SamplerOutput {
            sets,
            modeled_sampling_us: Some(batch.timing.sampling_total_us),
            stand_in_compute: batch.compute,
        }
    }

    fn modeled_program_us(&self) -> Option<f64> {
        Some(self.backend.timing().t_program_us)
    }
}

// ============================================================================
// Run results
// ============================================================================

/// Per-iteration audit record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationLog {
    /// Size of the set that received this iteration's color.
    pub chosen_size: usize,
    /// Usable (valid, nonempty) candidates in the round that produced it;
    /// 0 marks a fallback vertex.
    pub candidates: usize,
    /// Sampling rounds of this iteration that yielded nothing usable.
    pub retries: usize,
}

/// Everything one driver run produced.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub coloring: Coloring,
    /// Iterations that selected a set; always equals `coloring.num_colors()`.
    pub k_used: usize,
    /// Sampling rounds that yielded no valid independent set.
    pub r_a: usize,
    /// Measured real time of the classical outer loop. Hybrid runs exclude
    /// the backend's stand-in compute time from this number.
    pub wallclock: Duration,
    /// Modeled processor time in μs, present for hybrid runs only:
    /// aggregate batch sampling time plus one programming overhead.
    pub qpu_modeled_us: Option<f64>,
    pub per_iteration: Vec<IterationLog>,
}

impl RunResult {
    /// The run's contribution to mean-wallclock aggregation: measured
    /// classical time plus modeled processor time when present.
    pub fn total_time_us(&self) -> f64 {
        self.wallclock.as_secs_f64() * 1e6 + self.qpu_modeled_us.unwrap_or(0.0)
    }
}

// ============================================================================
// Driver
// ============================================================================

/// Runs the greedy peeling loop until the residual graph is empty.
///
/// The result is always a proper, total coloring reported against the
/// original vertex ids, and is a deterministic function of
/// (graph, sampler, s, retry_cap, rng seed); only `wallclock` varies between
/// identical runs.
pub fn greedy_color(
    g: &Graph,
    sampler: &dyn IsSampler,
    s: usize,
    retry_cap: usize,
    rng: &mut ChaCha8Rng,
) -> RunResult {
    assert!(s >= 1, "sample count must be at least 1");
    assert!(retry_cap >= 1, "retry cap must be at least 1");

    let start = Instant::now();
    let mut stand_in = Duration::ZERO;
    let mut assignment = vec![usize::MAX; g.n()];
    let mut residual = g.vertex_set();
    let mut next_color = 0usize;
    let mut r_a = 0usize;
    let mut modeled_sampling_us = 0.0f64;
    let mut saw_modeled = false;
    let mut per_iteration = Vec::new();

    while !residual.is_empty() {
        let (sub, map) = g.induced_subgraph(&residual);
        let mut chosen_local: Option<VertexSet> = None;
        let mut candidates = 0usize;
        let mut retries = 0usize;

        for _attempt in 0..retry_cap {
            let out = sampler.sample_sets(&sub, s, rng);
            stand_in += out.stand_in_compute;
            if let Some(us) = out.modeled_sampling_us {
                modeled_sampling_us += us;
                saw_modeled = true;
            }
            // Never trust the sampler: re-validate, and drop empty sets. An
            // empty candidate is "valid" but cannot make progress.
            let valid: Vec<VertexSet> = out
                .sets
                .into_iter()
                .filter(|set| !set.is_empty() && sub.is_independent(set))
                .collect();
            if valid.is_empty() {
                r_a += 1;
                retries += 1;
                continue;
            }
            let best = valid.iter().map(VertexSet::len).max().unwrap();
            // Duplicates among the maxima are kept deliberately: the random
            // pick is over the sampled multiset.
            let maxima: Vec<&VertexSet> = valid.iter().filter(|v| v.len() == best).collect();
            let pick = rng.random_range(0..maxima.len());
            candidates = valid.len();
            chosen_local = Some(maxima[pick].clone());
            break;
        }

        // Retry budget exhausted: color one arbitrary residual vertex
        // (local id 0 = lowest remaining original id) to guarantee progress.
        let chosen_local = chosen_local.unwrap_or_else(|| VertexSet::singleton(0));

        let chosen: VertexSet = chosen_local.iter().map(|v| map[v]).collect();
        for v in chosen.iter() {
            assignment[v] = next_color;
        }
        per_iteration.push(IterationLog {
            chosen_size: chosen.len(),
            candidates,
            retries,
        });
        residual = residual.difference(&chosen);
        next_color += 1;
    }

    let wallclock = start
        .elapsed()
        .saturating_sub(stand_in)
        .max(Duration::from_nanos(1));
    let coloring = Coloring::from_assignment(assignment)
        .expect("driver assigns consecutive colors to nonempty classes");
    RunResult {
        k_used: next_color,
        qpu_modeled_us: if saw_modeled {
            Some(modeled_sampling_us + sampler.modeled_program_us().unwrap_or(0.0))
        } else {
            None
        },
        coloring,
        r_a,
        wallclock,
        per_iteration,
    }
}

// ============================================================================
// Exact chromatic number
// ============================================================================

/// Exact χ(G) by backtracking with symmetry pruning: a vertex may only use a
/// color at most one past the highest color used so far.
pub fn exact_chromatic_number(g: &Graph) -> Result<usize, ColorError> {
    if g.n() > CHROMATIC_VERTEX_CAP {
        return Err(ColorError::SizeCapExceeded {
            n: g.n(),
            cap: CHROMATIC_VERTEX_CAP,
        });
    }
    if g.n() == 0 {
        return Ok(0);
    }
    if g.m() == 0 {
        return Ok(1);
    }
    // Highest-degree-first order tightens the search considerably.
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    for k in 2..=g.n() {
        let mut colors = vec![usize::MAX; g.n()];
        colors[order[0]] = 0;
        if colorable(g, k, &order, &mut colors, 1, 0) {
            return Ok(k);
        }
    }
    unreachable!("every graph is n-colorable");
}

fn colorable(
    g: &Graph,
    k: usize,
    order: &[usize],
    colors: &mut [usize],
    pos: usize,
    max_used: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let limit = (max_used + 1).min(k - 1);
    for c in 0..=limit {
        if g.adjacency(v).iter().any(|&u| colors[u] == c) {
            continue;
        }
        colors[v] = c;
        if colorable(g, k, order, colors, pos + 1, max_used.max(c)) {
            return true;
        }
        colors[v] = usize::MAX;
    }
    false
}

// ============================================================================
// Stopwatch
// ============================================================================

/// Monotonic-clock elapsed real time around a single closure call.
pub fn run_timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let result = f();
    (result, start.elapsed())
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::sync::Mutex;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::new(n, &edges).unwrap()
    }

    fn samplers() -> Vec<Box<dyn IsSampler>> {
        vec![
            Box::new(ClassicalSampler::default()),
            Box::new(QuboAnnealSampler::sa(
                2.0,
                SaSchedule::default(),
                TimingConstants::default(),
            )),
            Box::new(QuboAnnealSampler::random(2.0, TimingConstants::default())),
        ]
    }

    #[test]
    fn coloring_validation() {
        let c = Coloring::from_assignment(vec![0, 1, 0, 2]).unwrap();
        assert_eq!(c.num_colors(), 3);
        assert_eq!(c.color_of(3), 2);
        assert_eq!(c.classes().len(), 3);
        assert_eq!(c.classes()[0].as_slice(), &[0, 2]);

        assert_eq!(
            Coloring::from_assignment(vec![0, 2]),
            Err(ColorError::NotDense { missing_color: 1 })
        );

        let compact = Coloring::compacted(&[7, 3, 7, 9]);
        assert_eq!(compact.assignment(), &[0, 1, 0, 2]);
        assert_eq!(compact.num_colors(), 3);
    }

    #[test]
    fn edgeless_graph_gets_one_color_classically() {
        let g = Graph::edgeless(7);
        let sampler = ClassicalSampler::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let run = greedy_color(&g, &sampler, 1, 10, &mut rng);
            assert!(run.coloring.num_colors() <= 2);
            assert!(run.coloring.is_proper(&g).unwrap());
        }
        // The classical sampler accumulates the whole vertex set here.
        let run = greedy_color(&g, &sampler, 1, 10, &mut ChaCha8Rng::seed_from_u64(2));
        assert_eq!(run.coloring.num_colors(), 1);
    }

    #[test]
    fn complete_graph_needs_n_colors() {
        let k4 = Graph::complete(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sampler in samplers() {
            let run = greedy_color(&k4, sampler.as_ref(), 3, 10, &mut rng);
            assert_eq!(run.coloring.num_colors(), 4);
            assert_eq!(run.k_used, 4);
            assert!(run.coloring.is_proper(&k4).unwrap());
        }
    }

    #[test]
    fn every_sampler_yields_proper_total_colorings() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for sampler in samplers() {
            for _ in 0..30 {
                let n = rng.random_range(1..=16);
                let g = random_graph(&mut rng, n, 0.4);
                let run = greedy_color(&g, sampler.as_ref(), 3, 5, &mut rng);
                assert!(
                    run.coloring.is_proper(&g).unwrap(),
                    "{} sampler",
                    sampler.kind()
                );
                assert_eq!(run.coloring.assignment().len(), n);
                assert_eq!(run.k_used, run.coloring.num_colors());
                assert!(run.wallclock > Duration::ZERO);
            }
        }
    }

    #[test]
    fn runs_are_deterministic_given_seed() {
        let mut build = ChaCha8Rng::seed_from_u64(5);
        let g = random_graph(&mut build, 14, 0.4);
        for sampler in samplers() {
            let run_a = greedy_color(
                &g,
                sampler.as_ref(),
                4,
                10,
                &mut ChaCha8Rng::seed_from_u64(7),
            );
            let run_b = greedy_color(
                &g,
                sampler.as_ref(),
                4,
                10,
                &mut ChaCha8Rng::seed_from_u64(7),
            );
            assert_eq!(run_a.coloring, run_b.coloring);
            assert_eq!(run_a.r_a, run_b.r_a);
            assert_eq!(run_a.qpu_modeled_us, run_b.qpu_modeled_us);
            // Wallclock is measured, not derived; it may legitimately differ.
        }
    }

    #[test]
    fn classical_runs_report_no_modeled_time() {
        let g = Graph::complete(5);
        let run = greedy_color(
            &g,
            &ClassicalSampler::default(),
            2,
            10,
            &mut ChaCha8Rng::seed_from_u64(8),
        );
        assert_eq!(run.qpu_modeled_us, None);
        assert!(run.total_time_us() > 0.0);
    }

    #[test]
    fn hybrid_modeled_time_matches_read_accounting() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = random_graph(&mut rng, 12, 0.35);
        let s = 7;
        let sampler = QuboAnnealSampler::sa(2.0, SaSchedule::default(), TimingConstants::default());
        let run = greedy_color(&g, &sampler, s, 10, &mut rng);
        let total_reads = s * (run.k_used + run.r_a);
        let expected = anneal::modeled_qpu_time_us(total_reads, &TimingConstants::default());
        assert_eq!(run.qpu_modeled_us, Some(expected));

        // And the aggregation rule: total time = measured + modeled.
        let total = run.total_time_us();
        assert_eq!(total, run.wallclock.as_secs_f64() * 1e6 + expected);
    }

    /// A sampler that records what it returned, to audit the argmax rule.
    struct Recording {
        inner: ClassicalSampler,
        rounds: Mutex<Vec<Vec<usize>>>,
    }

    impl IsSampler for Recording {
        fn kind(&self) -> &'static str {
            "recording"
        }

        fn sample_sets(&self, g: &Graph, s: usize, rng: &mut ChaCha8Rng) -> SamplerOutput {
            let out = self.inner.sample_sets(g, s, rng);
            self.rounds
                .lock()
                .unwrap()
                .push(out.sets.iter().map(VertexSet::len).collect());
            out
        }
    }

    #[test]
    fn driver_always_picks_a_largest_candidate() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let g = random_graph(&mut rng, 18, 0.3);
        let sampler = Recording {
            inner: ClassicalSampler::default(),
            rounds: Mutex::new(Vec::new()),
        };
        let run = greedy_color(&g, &sampler, 6, 10, &mut rng);
        let rounds = sampler.rounds.lock().unwrap();
        // The classical sampler never fails a round on nonempty graphs, so
        // rounds and iterations line up one to one.
        assert_eq!(rounds.len(), run.per_iteration.len());
        for (log, sizes) in run.per_iteration.iter().zip(rounds.iter()) {
            let max = sizes.iter().copied().max().unwrap();
            assert_eq!(log.chosen_size, max);
            assert_eq!(log.retries, 0);
        }
    }

    /// A sampler that never returns anything usable.
    struct Useless;

    impl IsSampler for Useless {
        fn kind(&self) -> &'static str {
            "useless"
        }

        fn sample_sets(&self, _g: &Graph, s: usize, _rng: &mut ChaCha8Rng) -> SamplerOutput {
            SamplerOutput {
                sets: vec![VertexSet::new(); s],
                modeled_sampling_us: None,
                stand_in_compute: Duration::ZERO,
            }
        }
    }

    #[test]
    fn starved_driver_falls_back_to_single_vertices() {
        let g = Graph::complete(3);
        let retry_cap = 4;
        let run = greedy_color(
            &g,
            &Useless,
            2,
            retry_cap,
            &mut ChaCha8Rng::seed_from_u64(11),
        );
        assert!(run.coloring.is_proper(&g).unwrap());
        assert_eq!(run.coloring.num_colors(), 3);
        // Every iteration burned the full retry budget.
        assert_eq!(run.r_a, 3 * retry_cap);
        assert!(run.per_iteration.iter().all(|l| l.candidates == 0));
    }

    #[test]
    fn hybrid_sampler_recovers_planted_bound_at_recommended_s() {
        // Planted n=20 instances with the hybrid sampler at s=30 should hit
        // the planted 3-color bound on nearly every seed.
        let sampler = QuboAnnealSampler::sa(2.0, SaSchedule::default(), TimingConstants::default());
        let mut hits = 0;
        for seed in 0..5u64 {
            let inst = crate::gen::generate_planted(20, 3, 4.5, seed).unwrap();
            let run = greedy_color(
                &inst.graph,
                &sampler,
                30,
                10,
                &mut ChaCha8Rng::seed_from_u64(seed),
            );
            assert!(run.coloring.is_proper(&inst.graph).unwrap());
            if run.coloring.num_colors() <= 3 {
                hits += 1;
            }
        }
        assert!(
            hits >= 4,
            "only {hits}/5 planted instances reached 3 colors"
        );
    }

    #[test]
    fn chromatic_number_examples() {
        assert_eq!(exact_chromatic_number(&Graph::complete(4)), Ok(4));
        assert_eq!(exact_chromatic_number(&cycle(5)), Ok(3));
        assert_eq!(exact_chromatic_number(&cycle(6)), Ok(2));
        assert_eq!(exact_chromatic_number(&Graph::edgeless(0)), Ok(0));
        assert_eq!(exact_chromatic_number(&Graph::edgeless(9)), Ok(1));

        let big = Graph::edgeless(CHROMATIC_VERTEX_CAP + 1);
        assert_eq!(
            exact_chromatic_number(&big),
            Err(ColorError::SizeCapExceeded {
                n: CHROMATIC_VERTEX_CAP + 1,
                cap: CHROMATIC_VERTEX_CAP
            })
        );
    }

    #[test]
    fn heuristic_never_beats_chromatic_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for sampler in samplers() {
            for _ in 0..20 {
                let n = rng.random_range(1..=12);
                let g = random_graph(&mut rng, n, 0.45);
                let chi = exact_chromatic_number(&g).unwrap();
                let run = greedy_color(&g, sampler.as_ref(), 3, 5, &mut rng);
                assert!(
                    run.coloring.num_colors() >= chi,
                    "{} colors under χ={chi}",
                    run.coloring.num_colors()
                );
            }
        }
    }

    #[test]
    fn run_timed_measures_elapsed_time() {
        let ((), elapsed) = run_timed(|| std::thread::sleep(Duration::from_millis(5)));
        assert!(elapsed >= Duration::from_millis(5));
    }
}
